//! Taylor coefficients at x = 1, indexed by power of (x - 1), and the
//! closed forms of the cascade functions.
//!
//! Generated by scripts/derive_series.py. Do not edit by hand.

pub(crate) const Z6_H: [f64; 32] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0036458333333333334,
    -0.007291666666666667,
    0.01017485119047619,
    -0.012295386904761904,
    0.013798711867559524,
    -0.014830264136904761,
    0.015507321048092533,
    -0.015918999213676947,
    0.016131863570176645,
    -0.01619553642478011,
    0.0161471596007331,
    -0.016014709681408137,
    0.015819406086358092,
    -0.015577451712655784,
    0.015301294845115233,
    -0.015000550009283919,
    0.01468267543832959,
    -0.014353475849120221,
    0.014017478860918408,
    -0.013678219229189183,
    0.013338455227744109,
    -0.013000334649189699,
    0.012665523075358082,
    -0.01233530366046727,
    0.012010655237714708,
    -0.011692313809987137,
    0.011380821215320733,
    -0.010320515441192718,
];

pub(crate) const Z6_H1: [f64; 32] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.9333333333333333,
    -1.4,
    1.5738095238095238,
    -1.6011904761904763,
    1.5595238095238095,
    -1.4875,
    1.4043506493506495,
    -1.319577922077922,
    1.2377556411842126,
    -1.1609298360369789,
    1.0898443461300604,
    -1.0245789527932385,
    0.9648865599075683,
    -0.9103726841552472,
    0.860590739091671,
    -0.8150917092067737,
    0.7734489102232228,
    -0.7352691260600447,
    0.7001963638125186,
    -0.6679117070831085,
    0.6381312146023828,
    -0.61060294898104,
    0.5851037315468962,
    -0.5614359407492829,
    0.539424513127815,
];

pub(crate) const Z6_H2: [f64; 32] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    6.533333333333333,
    -4.666666666666667,
    2.9642857142857144,
    -1.8476190476190477,
    1.1428571428571428,
    -0.6952380952380952,
    0.40655844155844156,
    -0.21753246753246752,
    0.0922437086722801,
    -0.008542758828473114,
    -0.04752349238063524,
    0.08493273393273393,
    -0.10957651203449523,
    0.1253909551388543,
    -0.1350481621798517,
    0.14038791837607154,
    -0.14269266741489553,
    0.14286590969305205,
    -0.14154993012810765,
    0.13920471115214206,
    -0.13616158989648935,
    0.1326602227952136,
    -0.12887435660912866,
    0.12492999238150221,
    -0.12091831551622377,
    0.1169049835475001,
];

pub(crate) const Z6_H3: [f64; 32] = [
    0.0,
    0.0,
    0.0,
    0.0,
    196.0,
    0.0,
    -30.0,
    32.97142857142857,
    -30.17142857142857,
    26.38095238095238,
    -22.81047619047619,
    19.73064935064935,
    -17.146709956709955,
    14.994375624375625,
    -13.199617525331812,
    11.696065458351173,
    -10.42870905285191,
    9.35329397493263,
    -8.434594970855475,
    7.644624089606398,
    -6.961086627731696,
    6.3661379590025895,
    -5.845411126031096,
    5.387265260569817,
    -4.9822067414328375,
    4.622442969521881,
    -4.301537194261298,
    4.01414021727854,
    -3.755780685334888,
    3.5227002000604117,
    -3.3117228746422387,
    3.1201515111825784,
];

pub(crate) const Z6_H4: [f64; 32] = [
    0.0,
    0.0,
    0.0,
    784.0,
    784.0,
    -180.0,
    50.8,
    -10.571428571428571,
    -3.942857142857143,
    9.323809523809524,
    -11.067619047619047,
    11.276623376623377,
    -10.833636363636364,
    10.132237762237763,
    -9.353663479377765,
    8.58163702963703,
    -7.853347271775843,
    7.183288098456166,
    -6.574851772876983,
    6.026125147887642,
    -5.532835415579555,
    5.0898523663702475,
    -4.691943779578345,
    4.3341391987176845,
    -4.011887556341078,
    3.7211071872532675,
    -3.4581811842731707,
    3.219926677143714,
    -3.0035533876249185,
    2.806619562484781,
    -2.626989392607235,
    2.462793832034988,
];

pub(crate) const Z6_H5: [f64; 32] = [
    0.0,
    4704.0,
    14112.0,
    5808.0,
    -2076.0,
    1080.0,
    -664.8,
    450.51428571428573,
    -324.77142857142854,
    244.34285714285716,
    -189.61142857142858,
    150.5890909090909,
    -121.73766233766234,
    99.77702297702298,
    -82.65956900242614,
    69.0510175538747,
    -58.05027972027972,
    49.0301580772169,
    -41.54265734265734,
    35.2605359552728,
    -29.940032289691732,
    25.396408385952835,
    -21.48749654912656,
    18.102381251685575,
    -15.15345742560038,
    12.570757577326429,
    -10.297833689550972,
    8.288723693203849,
    -6.505686830652313,
    4.917492224244368,
    -3.498110896377076,
    2.2257057182200652,
];

pub(crate) const Z6_H6: [f64; 32] = [
    4704.0,
    32928.0,
    45648.0,
    9120.0,
    -2904.0,
    1411.2,
    -835.2,
    555.4285714285714,
    -399.0857142857143,
    302.9714285714286,
    -239.6342857142857,
    195.62805194805196,
    -163.75064935064935,
    139.86733266733268,
    -121.46870272584559,
    106.96078778364493,
    -95.29178821178822,
    85.74485514485515,
    -77.81764901764902,
    71.1495373563485,
    -65.4760696888251,
    60.59965202422522,
    -56.37015529201609,
    52.671790574359136,
    -49.414038781248365,
    46.52526350483545,
    -43.94813621182136,
    41.63630845823914,
    -39.55195675517811,
    37.66394761177439,
    -35.94644962649025,
    34.37787207232609,
];

pub(crate) const Z6_H7: [f64; 32] = [
    32928.0,
    124224.0,
    118656.0,
    15744.0,
    -4560.0,
    2044.8,
    -1123.2,
    695.3142857142857,
    -465.9428571428571,
    330.4,
    -244.43428571428572,
    186.9007792207792,
    -146.73246753246752,
    117.71348651348652,
    -96.15002140716426,
    79.74320536606251,
    -67.00607392607392,
    56.94485514485515,
    -48.876472547060786,
    42.3198159941194,
    -36.928701267772475,
    32.4492760843756,
    -28.692233214094017,
    25.51425246029928,
    -22.80534312907445,
    20.480046113531106,
    -18.471213134898278,
    16.725539227469916,
    -15.200308403529757,
    13.860991946749758,
    -12.679454552598624,
    11.632599547298284,
];

pub(crate) const Z6_H8: [f64; 32] = [
    237312.0,
    331776.0,
    39744.0,
    -13824.0,
    7200.0,
    -4492.8,
    3110.4,
    -2304.0,
    1789.7142857142858,
    -1440.0,
    1190.4,
    -1005.3818181818182,
    864.0,
    -753.2307692307693,
    664.6153846153846,
    -592.4571428571429,
    532.8,
    -482.8235294117647,
    440.47058823529414,
    -404.2105263157895,
    372.88421052631577,
    -345.6,
    321.6623376623377,
    -300.5217391304348,
    281.7391304347826,
    -264.96,
    249.89538461538461,
    -236.30769230769232,
    224.0,
    -212.807881773399,
    202.59310344827585,
    -193.23870967741937,
];

pub(crate) const Z4_H: [f64; 32] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0140625,
    -0.028125,
    0.0408268573633157,
    -0.05216807208994709,
    0.06239676769868827,
    -0.07176106770833333,
    0.080464762213216,
    -0.08866730788320958,
    0.09649236916705418,
    -0.10403635949568377,
    0.11137527582388156,
    -0.11856982651026368,
    0.12566920380055135,
    -0.13271385217909173,
    0.13973750992360692,
    -0.1467687272681698,
    0.15383200648828735,
    -0.16094866696971763,
    0.16813750846659603,
    -0.1754153248519396,
    0.18279730602926142,
    -0.1902973553797599,
    0.1979283428262802,
    -0.2057023083846393,
    0.21363062731683985,
    -0.22172414526838347,
    0.22999328976626107,
    -0.23769211458181158,
];

pub(crate) const Z4_H1: [f64; 32] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.576,
    -0.864,
    0.9724021164021164,
    -0.991005291005291,
    0.9670687830687831,
    -0.9242222222222222,
    0.8742453102453103,
    -0.8229927849927849,
    0.7733119367405081,
    -0.7265013663585093,
    0.6830569219140648,
    -0.643061224489796,
    0.6063903870794627,
    -0.5728247284927958,
    0.5421080507971475,
    -0.5139789321219683,
    0.4881866434979508,
    -0.4644985920223379,
    0.44270312280035873,
    -0.42260982869255803,
    0.40404857868990046,
    -0.38686794598820257,
    0.3709334148216756,
    -0.3561255719497166,
    0.34233838930479854,
];

pub(crate) const Z4_H2: [f64; 32] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    4.032,
    -2.88,
    1.8396190476190477,
    -1.1584338624338624,
    0.7277037037037037,
    -0.45291005291005293,
    0.2745223665223665,
    -0.15670995670995672,
    0.07778006120863264,
    -0.024342810628524916,
    -0.01205418919704634,
    0.03686563172277458,
    -0.05368468630653504,
    0.06492278465387709,
    -0.07222550311581713,
    0.07673256005679502,
    -0.07924370623043393,
    0.08032659191675909,
    -0.0803881385271407,
    0.07972252400245948,
    -0.07854392137919587,
    0.07700913695764096,
    -0.07523345784108001,
    0.07330187133709452,
    -0.07127709004274271,
    0.06920534638050141,
];

pub(crate) const Z4_H3: [f64; 32] = [
    0.0,
    0.0,
    0.0,
    0.0,
    120.96,
    0.0,
    -17.941333333333333,
    19.611428571428572,
    -17.91390476190476,
    15.673227513227513,
    -13.583153439153438,
    11.790199134199135,
    -10.290782106782107,
    9.043980907980908,
    -8.004995639281354,
    7.134446421303564,
    -6.400062181205039,
    5.776078341826241,
    -5.2420988323845465,
    4.781984039843394,
    -4.3829170546065725,
    4.034663231419618,
    -3.728996957101573,
    3.459261934494021,
    -3.2200344950016238,
    3.0068652477866356,
    -2.8160799835925454,
    2.644625397864256,
    -2.489948811465405,
    2.3499037966801586,
    -2.2226756499783606,
    2.1067221604393565,
];

pub(crate) const Z4_H4: [f64; 32] = [
    0.0,
    0.0,
    0.0,
    483.84,
    483.84,
    -107.648,
    29.632,
    -6.031238095238095,
    -2.252190476190476,
    5.227513227513228,
    -6.1393439153439155,
    6.202805194805195,
    -5.917633477633478,
    5.5018128538128535,
    -5.053242630385488,
    4.615701420272849,
    -4.207663088234517,
    3.8355528281242566,
    -3.500082225897352,
    3.1993556648930377,
    -2.9304132323194687,
    2.6899948035773735,
    -2.4749085628721312,
    2.282196613323503,
    -2.1091966853730804,
    1.95355162125971,
    -1.8131938310712625,
    1.686319021303579,
    -1.5713566173067492,
    1.466940604373773,
    -1.3718825257307719,
    1.2851473182304263,
];

pub(crate) const Z4_H5: [f64; 32] = [
    0.0,
    2903.04,
    8709.12,
    3653.12,
    -1264.0,
    635.648,
    -379.43466666666666,
    250.2582857142857,
    -176.16,
    129.76761904761904,
    -98.81904761904762,
    77.15518614718614,
    -61.407353535353536,
    49.60713952713953,
    -40.54184291898578,
    33.431228073513786,
    -27.754791874791874,
    23.15447626882921,
    -19.377390887979125,
    16.24078922109882,
    -13.609938544427708,
    11.383730294767888,
    -9.48508398424783,
    7.854402429885733,
    -6.445017440494625,
    5.219962758791888,
    -4.149649728789905,
    3.2101680676012703,
    -2.382026634267774,
    1.6492085685249422,
    -0.9984541462650532,
    0.4187106835233048,
];

pub(crate) const Z4_H6: [f64; 32] = [
    2903.04,
    20321.28,
    28377.6,
    5903.36,
    -1877.76,
    901.632,
    -524.8,
    342.528,
    -241.37142857142857,
    179.71809523809523,
    -139.48342857142856,
    111.8188051948052,
    -91.99542857142858,
    77.30701298701298,
    -66.11737976309405,
    57.39175110603682,
    -50.45057342657343,
    44.83306058647235,
    -40.21804078274666,
    36.37622431232338,
    -33.14043469842851,
    30.38648853667341,
    -28.020591766080408,
    25.97083731550086,
    -24.18134960207379,
    22.608176021259666,
    -21.216355123303238,
    19.977792065736615,
    -18.869697272274355,
    17.873424099271727,
    -16.973593198729144,
    16.157425577771885,
];

pub(crate) const Z4_H7: [f64; 32] = [
    56755.2,
    148930.56,
    105062.4,
    8386.56,
    -2211.84,
    930.816,
    -488.448,
    292.27885714285713,
    -190.90285714285713,
    132.75428571428571,
    -96.768,
    73.16945454545454,
    -56.971636363636364,
    45.435524475524474,
    -36.965274725274725,
    30.584967032967032,
    -25.673142857142857,
    21.820235294117648,
    -18.74823529411765,
    16.263529411764704,
    -14.22821052631579,
    12.542075187969925,
    -11.131012987012987,
    9.939333709768492,
    -8.924584980237155,
    8.053982608695652,
    -7.301907692307692,
    6.648123076923077,
    -6.076483516483517,
    5.573990147783252,
    -5.130088669950739,
    4.736142380422692,
];

pub(crate) const Z4_H8: [f64; 32] = [
    210124.8,
    260444.16,
    23777.28,
    -7925.76,
    3962.88,
    -2377.728,
    1585.152,
    -1132.2514285714285,
    849.1885714285714,
    -660.48,
    528.384,
    -432.3141818181818,
    360.26181818181817,
    -304.8369230769231,
    261.2887912087912,
    -226.4502857142857,
    198.144,
    -174.8329411764706,
    155.4070588235294,
    -139.04842105263157,
    125.14357894736843,
    -113.22514285714286,
    102.93194805194805,
    -93.98134387351779,
    86.1495652173913,
    -79.2576,
    73.16086153846153,
    -67.74153846153847,
    62.902857142857144,
    -58.56472906403941,
    54.66041379310345,
    -51.13393548387097,
];

/// Z6 chain closed forms as `(coefficient, power of x, power of log x)`.
pub(crate) const Z6_TERMS: [&[(f64, i32, i32)]; 8] = [
    &[
        (11.0, 4, 1),
        (-12.0, 4, 0),
        (-24.0, 3, 2),
        (-8.0, 3, 1),
        (24.0, 3, 0),
        (36.0, 2, 3),
        (-6.0, 2, 1),
        (24.0, 1, 2),
        (-8.0, 1, 1),
        (-24.0, 1, 0),
        (11.0, 0, 1),
        (12.0, 0, 0),
    ],
    &[
        (44.0, 4, 1),
        (-37.0, 4, 0),
        (-72.0, 3, 2),
        (-72.0, 3, 1),
        (64.0, 3, 0),
        (72.0, 2, 3),
        (108.0, 2, 2),
        (-12.0, 2, 1),
        (-6.0, 2, 0),
        (24.0, 1, 2),
        (40.0, 1, 1),
        (-32.0, 1, 0),
        (11.0, 0, 0),
    ],
    &[
        (528.0, 3, 1),
        (-136.0, 3, 0),
        (-432.0, 2, 2),
        (-1152.0, 2, 1),
        (-120.0, 2, 0),
        (144.0, 1, 3),
        (864.0, 1, 2),
        (1056.0, 1, 1),
        (168.0, 1, 0),
        (48.0, 0, 1),
        (88.0, 0, 0),
    ],
    &[
        (1584.0, 3, 1),
        (120.0, 3, 0),
        (-864.0, 2, 2),
        (-3168.0, 2, 1),
        (-1392.0, 2, 0),
        (144.0, 1, 3),
        (1296.0, 1, 2),
        (2784.0, 1, 1),
        (1224.0, 1, 0),
        (48.0, 0, 0),
    ],
    &[
        (9504.0, 2, 1),
        (8640.0, 2, 0),
        (-1728.0, 1, 2),
        (-11520.0, 1, 1),
        (-14016.0, 1, 0),
        (432.0, 0, 2),
        (3456.0, 0, 1),
        (5376.0, 0, 0),
    ],
    &[
        (19008.0, 2, 1),
        (26784.0, 2, 0),
        (-1728.0, 1, 2),
        (-14976.0, 1, 1),
        (-25536.0, 1, 0),
        (864.0, 0, 1),
        (3456.0, 0, 0),
    ],
    &[
        (38016.0, 2, 1),
        (72576.0, 2, 0),
        (-1728.0, 1, 2),
        (-18432.0, 1, 1),
        (-40512.0, 1, 0),
        (864.0, 0, 0),
    ],
    &[
        (76032.0, 1, 1),
        (259200.0, 1, 0),
        (-3456.0, 0, 1),
        (-21888.0, 0, 0),
    ],
];

/// Z4 chain closed forms as `(coefficient, power of x, power of log x)`.
pub(crate) const Z4_TERMS: [&[(f64, i32, i32)]; 8] = [
    &[
        (16.0, 2, 3),
        (-19.2, 3, 2),
        (19.2, 1, 2),
        (6.88, 4, 1),
        (8.96, 3, 1),
        (-31.68, 2, 1),
        (8.96, 1, 1),
        (6.88, 0, 1),
        (-7.04, 4, 0),
        (14.08, 3, 0),
        (-14.08, 1, 0),
        (7.04, 0, 0),
    ],
    &[
        (32.0, 2, 3),
        (-57.6, 3, 2),
        (48.0, 2, 2),
        (19.2, 1, 2),
        (27.52, 4, 1),
        (-11.52, 3, 1),
        (-63.36, 2, 1),
        (47.36, 1, 1),
        (-21.28, 4, 0),
        (51.2, 3, 0),
        (-31.68, 2, 0),
        (-5.12, 1, 0),
        (6.88, 0, 0),
    ],
    &[
        (64.0, 1, 3),
        (-345.6, 2, 2),
        (384.0, 1, 2),
        (330.24, 3, 1),
        (-645.12, 2, 1),
        (353.28, 1, 1),
        (38.4, 0, 1),
        (-62.72, 3, 0),
        (134.4, 2, 0),
        (-157.44, 1, 0),
        (85.76, 0, 0),
    ],
    &[
        (64.0, 1, 3),
        (-691.2, 2, 2),
        (576.0, 1, 2),
        (990.72, 3, 1),
        (-1981.44, 2, 1),
        (1121.28, 1, 1),
        (142.08, 3, 0),
        (-376.32, 2, 0),
        (195.84, 1, 0),
        (38.4, 0, 0),
    ],
    &[
        (-1382.4, 1, 2),
        (192.0, 0, 2),
        (5944.32, 2, 1),
        (-8110.08, 1, 1),
        (1536.0, 0, 1),
        (5806.08, 2, 0),
        (-8079.36, 1, 0),
        (2273.28, 0, 0),
    ],
    &[
        (-1382.4, 1, 2),
        (11888.64, 2, 1),
        (-10874.88, 1, 1),
        (384.0, 0, 1),
        (17556.48, 2, 0),
        (-16189.44, 1, 0),
        (1536.0, 0, 0),
    ],
    &[
        (23777.28, 2, 1),
        (-2764.8, 1, 1),
        (70778.88, 2, 0),
        (-13639.68, 1, 0),
        (-384.0, 0, 0),
    ],
    &[(47554.56, 1, 1), (212889.6, 1, 0), (-2764.8, 0, 0)],
];
