// Generated by gen_oracles.py: [x, gelu_tanh(x), silu(x)] at 60 digits.
pub const ACTIVATION_CASES: [[f64; 3]; 81] = [
    [-5.0, -2.291796196629506e-07, -0.03346425462142428],
    [-4.875, -5.237562029059219e-07, -0.03693905118082145],
    [-4.75, -1.157800580935831e-06, -0.040743055715131926],
    [-4.625, -2.477636707838878e-06, -0.04490170372681756],
    [-4.5, -5.13673741195865e-06, -0.04944124183766931],
    [-4.375, -1.0325904852844501e-05, -0.05438847248268796],
    [-4.25, -2.014203584494015e-05, -0.059770414933793266],
    [-4.125, -3.81552807672411e-05, -0.06561386581123568],
    [-4.0, -7.024594819237268e-05, -0.07194483984836623],
    [-3.875, -0.00012578818306672836, -0.07878786920280267],
    [-3.75, -0.0002192520724416574, -0.08616513716259605],
    [-3.625, -0.000372273623019916, -0.09409541984201358],
    [-3.5, -0.0006161976553736633, -0.10259280762974711],
    [-3.375, -0.0009950285050454085, -0.11166517706187644],
    [-3.25, -0.0015686271447474687, -0.12131238386842075],
    [-3.125, -0.002415874897777789, -0.13152414973630888],
    [-3.0, -0.003637392081773019, -0.14227761953270035],
    [-2.875, -0.00535726804552451, -0.15353457317449468],
    [-2.75, -0.007723144073617969, -0.16523828797852097],
    [-2.625, -0.010903911696491, -0.1773100642415264],
    [-2.5, -0.015084266089998582, -0.18964545005310887],
    [-2.375, -0.020455407311739057, -0.20211023189167307],
    [-2.25, -0.02720132989728861, -0.21453629602299637],
    [-2.125, -0.03548040048286821, -0.22671751213450878],
    [-2.0, -0.04540230591222498, -0.23840584404423512],
    [-1.875, -0.05700096436362803, -0.24930795037092984],
    [-1.75, -0.07020461765874868, -0.25908259655545657],
    [-1.625, -0.08480502839721132, -0.2673392522069151],
    [-1.5, -0.10042842301976708, -0.2736382857095345],
    [-1.375, -0.11651144716571996, -0.2774931806080209],
    [-1.25, -0.1322857970302854, -0.27837517353163604],
    [-1.125, -0.14677521018757395, -0.2757206397739182],
    [-1.0, -0.1588080093917233, -0.2689414213699951],
    [-0.875, -0.16704731946154497, -0.2574381006426152],
    [-0.75, -0.1700394448343797, -0.24061597561845527],
    [-0.625, -0.16627885004239948, -0.2179032095837161],
    [-0.5, -0.15428599017485609, -0.18877033439907273],
    [-0.375, -0.1326922331084884, -0.15275002501722384],
    [-0.25, -0.100324649298315, -0.10945587477855047],
    [-0.125, -0.05628280137577661, -0.05859882832828047],
    [0.0, 0.0, 0.0],
    [0.125, 0.06871719862422339, 0.06640117167171954],
    [0.25, 0.149675350701685, 0.14054412522144952],
    [0.375, 0.2423077668915116, 0.22224997498277616],
    [0.5, 0.34571400982514394, 0.3112296656009273],
    [0.625, 0.4587211499576005, 0.4070967904162839],
    [0.75, 0.5799605551656203, 0.5093840243815447],
    [0.875, 0.7079526805384551, 0.6175618993573848],
    [1.0, 0.8411919906082767, 0.7310585786300049],
    [1.125, 0.978224789812426, 0.8492793602260819],
    [1.25, 1.1177142029697147, 0.9716248264683639],
    [1.375, 1.25848855283428, 1.097506819391979],
    [1.5, 1.3995715769802328, 1.2263617142904655],
    [1.625, 1.5401949716027887, 1.3576607477930849],
    [1.75, 1.6797953823412513, 1.4909174034445434],
    [1.875, 1.817999035636372, 1.62569204962907],
    [2.0, 1.954597694087775, 1.7615941559557649],
    [2.125, 2.0895195995171316, 1.8982824878654911],
    [2.25, 2.2227986701027116, 2.035463703977004],
    [2.375, 2.354544592688261, 2.172889768108327],
    [2.5, 2.484915733910001, 2.310354549946891],
    [2.625, 2.614096088303509, 2.447689935758474],
    [2.75, 2.742276855926382, 2.584761712021479],
    [2.875, 2.8696427319544755, 2.7214654268255054],
    [3.0, 2.996362607918227, 2.8577223804672998],
    [3.125, 3.122584125102222, 2.993475850263691],
    [3.25, 3.2484313728552525, 3.1286876161315793],
    [3.375, 3.3740049714949545, 3.2633348229381234],
    [3.5, 3.499383802344626, 3.397407192370253],
    [3.625, 3.62462772637698, 3.5309045801579866],
    [3.75, 3.7497807479275584, 3.663834862837404],
    [3.875, 3.8748742118169335, 3.796212130797197],
    [4.0, 3.9999297540518075, 3.928055160151634],
    [4.125, 4.124961844719233, 4.059386134188764],
    [4.25, 4.2499798579641554, 4.190229585066207],
    [4.375, 4.374989674095147, 4.320611527517312],
    [4.5, 4.499994863262588, 4.45055875816233],
    [4.625, 4.624997522363292, 4.580098296273182],
    [4.75, 4.749998842199419, 4.709256944284868],
    [4.875, 4.874999476243797, 4.838060948819178],
    [5.0, 4.999999770820381, 4.966535745378576],
];
