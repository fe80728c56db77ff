#![allow(clippy::excessive_precision)]

// Generated with mpmath at 40 significant digits.
pub const J_VALUES: &[(f64, f64, f64, f64)] = &[
    (0.0, 2.5, -4.83837764681979963e-2, -4.97094102464274038e-1),
    (0.03, 320.0, 1.29864285371899026e-2, 4.26504419565902612e-2),
    (
        0.30883,
        9.1329,
        1.0019997694277136e-6,
        -2.64139576631044623e-1,
    ),
    (1.0, 0.001, 4.99999937500002615e-4, 4.99999812500013021e-1),
    (2.7, 0.5, 5.58322077651744717e-3, 2.97707836323836985e-2),
    (5.3, 300.0, -1.52967406452215467e-2, -4.34235456407800975e-2),
    (10.0, 12.0, 3.00476035271269311e-1, -2.00157864915733917e-2),
    (30.5, 31.0, 1.63346925628395962e-1, 3.92282984319787477e-2),
    (
        100.0,
        50.0,
        1.11592736908380928e-21,
        1.93650320924647064e-21,
    ),
    (150.2, 151.0, 9.55579736953266819e-2, 1.39633726251461706e-2),
    (
        307.03,
        200.0,
        1.41172195950810791e-33,
        1.64690944603740608e-33,
    ),
    (
        307.03,
        319.7,
        5.83653637708068322e-5,
        -2.36804637001298666e-2,
    ),
    (
        307.03,
        330.0,
        1.60946620287186694e-2,
        2.57750233357846219e-2,
    ),
    (
        520.0,
        1000.0,
        2.41318358302638497e-2,
        -1.0920649188487537e-2,
    ),
    (
        600.0,
        1199.0,
        1.62803076902803772e-2,
        -1.61651802708370826e-2,
    ),
    (600.0, 550.0, 1.83565528129571294e-8, 8.08837181807490305e-9),
    (0.5, 1000.0, 2.08632666050938277e-2, 1.41791377376247474e-2),
    (
        194.299659,
        181.443584,
        1.88521515422526401e-3,
        7.53746109226153066e-4,
    ),
    (
        390.560684,
        87.387326,
        1.835559890356806e-206,
        7.99624207848007096e-206,
    ),
    (
        321.529203,
        439.143856,
        3.02614893014581562e-2,
        -2.37927960170821112e-2,
    ),
    (
        34.799355,
        609.169162,
        -7.18674879640867875e-3,
        -3.14881334872693298e-2,
    ),
    (
        22.497395,
        520.657998,
        1.22060917500837915e-2,
        -3.27664308333184346e-2,
    ),
    (
        41.913254,
        109.31026,
        6.73140945985415115e-2,
        -3.92681017662862028e-2,
    ),
    (
        254.711513,
        992.309124,
        -1.64211561430321799e-2,
        -1.91789272751831573e-2,
    ),
    (
        74.281177,
        268.275138,
        -2.93785381138407266e-2,
        3.85730196243362989e-2,
    ),
    (
        376.459933,
        1137.276876,
        3.58035274803925501e-3,
        2.27315452579592665e-2,
    ),
    (
        346.261769,
        476.318229,
        8.7946649396422552e-3,
        -2.97067262740274654e-2,
    ),
    (
        585.753063,
        56.375925,
        1.58302099463196642e-520,
        1.63715650851714185e-519,
    ),
    (
        515.081075,
        347.886339,
        8.171956867093691e-49,
        8.93251763335260411e-49,
    ),
    (
        86.55305,
        141.79179,
        4.19785618987154877e-2,
        -4.97412958145464775e-2,
    ),
    (
        185.089094,
        979.443568,
        -4.46190501696760984e-3,
        -2.48788006233959277e-2,
    ),
    (
        108.435828,
        698.129396,
        5.7372205797641659e-3,
        -2.94780172975806385e-2,
    ),
    (
        383.348081,
        447.190852,
        -5.21368081886227551e-2,
        3.71501985288618236e-3,
    ),
    (
        328.646679,
        75.815375,
        7.84820388080204115e-170,
        3.31058957121866659e-169,
    ),
    (
        35.760702,
        247.547476,
        -1.61389688472352876e-3,
        5.04234433218442794e-2,
    ),
    (
        408.239984,
        513.396971,
        3.79243549899226068e-2,
        -1.5035857993977803e-2,
    ),
    (
        188.488302,
        702.881455,
        -1.52898397024395239e-2,
        2.56161523317904235e-2,
    ),
    (
        271.910626,
        360.070513,
        -5.19165953427498846e-2,
        1.00515949140060336e-3,
    ),
    (
        476.627689,
        838.943823,
        -2.78007701034684819e-2,
        -1.00281623560320327e-2,
    ),
    (
        146.457906,
        689.52124,
        -3.06222380988884993e-2,
        -2.58341959038774753e-3,
    ),
    (
        315.117902,
        1050.227426,
        1.16549964803879551e-2,
        2.13160478538751889e-2,
    ),
    (
        437.667174,
        345.881349,
        1.87260737689882715e-21,
        1.45636459801568181e-21,
    ),
    (
        588.104908,
        142.119901,
        1.24863496860335862e-290,
        5.01409516802122277e-290,
    ),
    (
        250.873693,
        908.690545,
        -1.25081650697198229e-2,
        -2.29889008985750207e-2,
    ),
    (
        91.190721,
        587.011239,
        -2.22805014117444662e-2,
        2.42455412137620237e-2,
    ),
    (
        23.524354,
        802.02492,
        -9.54071343395710234e-3,
        2.65102408478678665e-2,
    ),
    (
        458.74252,
        687.844615,
        3.2385491810299614e-2,
        -1.04018008110515176e-2,
    ),
    (
        525.286687,
        376.840142,
        7.5413825627723261e-40,
        7.33394234998414765e-40,
    ),
    (
        417.17722,
        713.446668,
        1.74668396621253224e-2,
        -2.28898398261913384e-2,
    ),
    (
        347.937123,
        547.718295,
        -1.89466088272228863e-2,
        -2.61158315285374807e-2,
    ),
    (
        503.980668,
        1133.644974,
        -2.36816004370736385e-2,
        -7.27014521706689382e-3,
    ),
    (
        284.459002,
        797.15057,
        8.61278946195968137e-3,
        2.60956712972992752e-2,
    ),
    (
        36.401657,
        841.93968,
        2.21223975718189927e-2,
        1.6325195261365955e-2,
    ),
    (
        388.277313,
        1191.718579,
        -1.59872643922442964e-2,
        1.66386047372821373e-2,
    ),
    (
        493.154872,
        341.872341,
        9.37789128526178461e-43,
        9.76219407399184722e-43,
    ),
    (
        231.474865,
        802.548933,
        2.46350837018196939e-2,
        -1.42692875202925323e-2,
    ),
    (
        13.537757,
        554.303496,
        -2.77006920075448297e-3,
        3.37736884298843436e-2,
    ),
];

pub const ZEROS: &[(f64, u32, f64)] = &[
    (0.0, 1, 2.40482555769577277),
    (0.0, 3, 8.65372791291101222),
    (0.0, 164, 514.436040009381616),
    (0.03, 102, 319.704565969001505),
    (0.30883, 3, 9.13290379344886566),
    (1.0, 300, 943.262796684302334),
    (5.17, 1, 8.9706401708942909),
    (5.17, 2, 12.5527139370382085),
    (20.0, 7, 48.4342391952056765),
    (49.5, 20, 130.280049275285724),
    (150.0, 50, 360.205167452731897),
    (307.026, 1, 319.69841101141477),
    (307.026, 2, 329.382552271899393),
    (500.0, 1, 514.859311690493976),
    (520.0, 30, 709.26428060044751),
    (600.0, 1, 615.774546191582152),
    (600.0, 200, 1443.40965142084043),
    (87.38516, 30, 212.492287782742582),
    (256.72036, 56, 512.665090689334122),
    (399.48115, 34, 593.006618444793946),
    (383.94896, 102, 832.54956872572923),
    (203.29385, 128, 690.524560469359783),
    (41.90228, 115, 424.247003652471673),
    (208.85501, 72, 510.090961659753133),
    (459.35959, 111, 956.96065014664069),
    (449.27192, 72, 801.556115983189632),
    (367.32629, 92, 776.627394494485937),
    (355.01599, 98, 782.767913780187622),
    (498.02023, 39, 725.030517548193136),
    (43.15204, 39, 184.449413414913993),
    (120.61757, 60, 356.574157949540278),
    (6.27279, 151, 483.407927685668639),
    (94.81829, 73, 365.108746762397816),
    (2.12867, 108, 341.844053476661721),
    (277.9873, 157, 885.080973861052612),
    (294.49744, 33, 469.697716261584792),
    (359.0567, 132, 905.763261058402012),
    (494.11645, 168, 1199.90392709636413),
    (351.62404, 14, 448.94170956425206),
    (237.45474, 200, 971.355361816581683),
    (494.98083, 175, 1225.07923909356372),
    (414.89402, 101, 866.906872695260919),
];
