// Generated by gen_oracles.py: [a, delta, b, a_bar, b_bar] at 60 digits.
pub const ZOH_CASES: [[f64; 5]; 100] = [
    [-5.0, 1e-09, 0.75, 0.999999995, 7.49999998125e-10],
    [-5.0, 1e-06, -1.3, 0.9999950000125, -1.2999967500054167e-06],
    [-5.0, 0.0001, 2.0, 0.9995001249791693, 0.0001999500083322918],
    [-5.0, 0.01, 0.75, 0.951229424500714, 0.007315586324892899],
    [-5.0, 0.1, -1.3, 0.6065306597126334, -0.10230202847471531],
    [-5.0, 0.5, 2.0, 0.0820849986238988, 0.36716600055044046],
    [-5.0, 1.0, 0.75, 0.006737946999085467, 0.14898930795013718],
    [-5.0, 2.0, -1.3, 4.5399929762484854e-05, -0.2599881960182618],
    [-5.0, 5.0, 2.0, 1.3887943864964021e-11, 0.3999999999944448],
    [-5.0, 10.0, 0.75, 1.9287498479639178e-22, 0.15],
    [-2.0, 1e-09, -1.3, 0.9999999980000001, -1.2999999987000001e-09],
    [-2.0, 1e-06, 2.0, 0.999998000002, 1.999998000001333e-06],
    [-2.0, 0.0001, 0.75, 0.9998000199986667, 7.4992500499975e-05],
    [-2.0, 0.01, -1.3, 0.9801986733067553, -0.012870862350609054],
    [-2.0, 0.1, 2.0, 0.8187307530779818, 0.18126924692201815],
    [-2.0, 0.5, 0.75, 0.36787944117144233, 0.23704520956070912],
    [-2.0, 1.0, -1.3, 0.1353352832366127, -0.5620320658962018],
    [-2.0, 2.0, 2.0, 0.01831563888873418, 0.9816843611112658],
    [-2.0, 5.0, 0.75, 4.5399929762484854e-05, 0.3749829750263391],
    [-2.0, 10.0, -1.3, 2.061153622438558e-09, -0.6499999986602502],
    [-1.0, 1e-09, 2.0, 0.999999999, 1.999999999e-09],
    [-1.0, 1e-06, 0.75, 0.9999990000005, 7.49999625000125e-07],
    [-1.0, 0.0001, -1.3, 0.9999000049998333, -0.00012999350021666126],
    [-1.0, 0.01, 2.0, 0.9900498337491681, 0.019900332501663894],
    [-1.0, 0.1, 0.75, 0.9048374180359595, 0.07137193647303032],
    [-1.0, 0.5, -1.3, 0.6065306597126334, -0.5115101423735766],
    [-1.0, 1.0, 2.0, 0.36787944117144233, 1.2642411176571153],
    [-1.0, 2.0, 0.75, 0.1353352832366127, 0.6484985375725405],
    [-1.0, 5.0, -1.3, 0.006737946999085467, -1.2912406689011888],
    [-1.0, 10.0, 2.0, 4.5399929762484854e-05, 1.999909200140475],
    [-0.5, 1e-09, 0.75, 0.9999999995, 7.499999998125001e-10],
    [-0.5, 1e-06, -1.3, 0.999999500000125, -1.2999996750000542e-06],
    [-0.5, 0.0001, 2.0, 0.9999500012499791, 0.0001999950000833323],
    [-0.5, 0.01, 0.75, 0.9950124791926823, 0.00748128121097653],
    [-0.5, 0.1, -1.3, 0.951229424500714, -0.12680349629814358],
    [-0.5, 0.5, 2.0, 0.7788007830714049, 0.8847968677143805],
    [-0.5, 1.0, 0.75, 0.6065306597126334, 0.5902040104310499],
    [-0.5, 2.0, -1.3, 0.36787944117144233, -1.64351345295425],
    [-0.5, 5.0, 2.0, 0.0820849986238988, 3.6716600055044046],
    [-0.5, 10.0, 0.75, 0.006737946999085467, 1.4898930795013718],
    [-0.1, 1e-09, -1.3, 0.9999999999, -1.2999999999350002e-09],
    [-0.1, 1e-06, 2.0, 0.999999900000005, 1.9999999000000034e-06],
    [-0.1, 0.0001, 0.75, 0.9999900000499998, 7.499962500125e-05],
    [-0.1, 0.01, -1.3, 0.999000499833375, -0.012993502166125109],
    [-0.1, 0.1, 2.0, 0.9900498337491681, 0.19900332501663895],
    [-0.1, 0.5, 0.75, 0.951229424500714, 0.36577931624464494],
    [-0.1, 1.0, -1.3, 0.9048374180359595, -1.2371135655325256],
    [-0.1, 2.0, 2.0, 0.8187307530779818, 3.6253849384403627],
    [-0.1, 5.0, 0.75, 0.6065306597126334, 2.951020052155249],
    [-0.1, 10.0, -1.3, 0.3678794411714423, -8.21756726477125],
    [-0.001, 1e-09, 2.0, 0.999999999999, 1.999999999999e-09],
    [-0.001, 1e-06, 0.75, 0.999999999, 7.49999999625e-07],
    [-0.001, 0.0001, -1.3, 0.999999900000005, -0.00012999999350000023],
    [-0.001, 0.01, 2.0, 0.9999900000499998, 0.01999990000033333],
    [-0.001, 0.1, 0.75, 0.9999000049998333, 0.07499625012499687],
    [-0.001, 0.5, -1.3, 0.9995001249791693, -0.6498375270799482],
    [-0.001, 1.0, 2.0, 0.999000499833375, 1.9990003332500166],
    [-0.001, 2.0, 0.75, 0.9980019986673331, 1.4985009995001999],
    [-0.001, 5.0, -1.3, 0.9950124791926823, -6.483777049512993],
    [-0.001, 10.0, 2.0, 0.9900498337491681, 19.900332501663893],
    [-1e-06, 1e-09, 0.75, 0.999999999999999, 7.499999999999997e-10],
    [-1e-06, 1e-06, -1.3, 0.999999999999, -1.29999999999935e-06],
    [-1e-06, 0.0001, 2.0, 0.9999999999, 0.00019999999999],
    [-1e-06, 0.01, 0.75, 0.9999999900000001, 0.0074999999625],
    [-1e-06, 0.1, -1.3, 0.999999900000005, -0.12999999350000022],
    [-1e-06, 0.5, 2.0, 0.999999500000125, 0.9999997500000417],
    [-1e-06, 1.0, 0.75, 0.9999990000005, 0.749999625000125],
    [-1e-06, 2.0, -1.3, 0.999998000002, -2.5999974000017336],
    [-1e-06, 5.0, 2.0, 0.9999950000125, 9.999975000041667],
    [-1e-06, 10.0, 0.75, 0.9999900000499998, 7.499962500125],
    [-1e-09, 1e-09, -1.3, 1.0, -1.3e-09],
    [-1e-09, 1e-06, 2.0, 0.999999999999999, 1.999999999999999e-06],
    [-1e-09, 0.0001, 0.75, 0.9999999999999, 7.499999999999625e-05],
    [-1e-09, 0.01, -1.3, 0.99999999999, -0.012999999999935001],
    [-1e-09, 0.1, 2.0, 0.9999999999, 0.19999999999],
    [-1e-09, 0.5, 0.75, 0.9999999995, 0.37499999990625],
    [-1e-09, 1.0, -1.3, 0.999999999, -1.29999999935],
    [-1e-09, 2.0, 2.0, 0.9999999980000001, 3.999999996],
    [-1e-09, 5.0, 0.75, 0.999999995, 3.749999990625],
    [-1e-09, 10.0, -1.3, 0.9999999900000001, -12.999999935],
    [0.0, 1e-09, 2.0, 1.0, 2e-09],
    [0.0, 1e-06, 0.75, 1.0, 7.5e-07],
    [0.0, 0.0001, -1.3, 1.0, -0.00013000000000000002],
    [0.0, 0.01, 2.0, 1.0, 0.02],
    [0.0, 0.1, 0.75, 1.0, 0.07500000000000001],
    [0.0, 0.5, -1.3, 1.0, -0.65],
    [0.0, 1.0, 2.0, 1.0, 2.0],
    [0.0, 2.0, 0.75, 1.0, 1.5],
    [0.0, 5.0, -1.3, 1.0, -6.5],
    [0.0, 10.0, 2.0, 1.0, 20.0],
    [3e-07, 1e-09, 0.75, 1.0000000000000002, 7.500000000000002e-10],
    [3e-07, 1e-06, -1.3, 1.0000000000003, -1.300000000000195e-06],
    [3e-07, 0.0001, 2.0, 1.00000000003, 0.000200000000003],
    [3e-07, 0.01, 0.75, 1.000000003, 0.00750000001125],
    [3e-07, 0.1, -1.3, 1.0000000300000005, -0.13000000195000003],
    [3e-07, 0.5, 2.0, 1.0000001500000113, 1.0000000750000038],
    [3e-07, 1.0, 0.75, 1.000000300000045, 0.7500001125000112],
    [3e-07, 2.0, -1.3, 1.00000060000018, -2.600000780000156],
    [3e-07, 5.0, 2.0, 1.000001500001125, 10.00000750000375],
    [3e-07, 10.0, 0.75, 1.0000030000045, 7.50001125001125],
];
