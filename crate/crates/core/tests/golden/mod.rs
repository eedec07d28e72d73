#![allow(clippy::excessive_precision)]

// Reference values computed with mpmath at 40 significant digits.
pub const BESSEL_K: &[(f64, f64, f64)] = &[
    (0.0, 0.01, 4.7212447301610949),
    (0.0, 0.5, 9.2441907122766586e-1),
    (0.0, 1.5, 2.1380556264752574e-1),
    (0.0, 2.0, 1.1389387274953344e-1),
    (0.0, 3.7000000000000002, 1.5630659921626658e-2),
    (0.0, 9.5, 3.0057884957934335e-5),
    (0.0, 12.0, 2.2008253973114914e-6),
    (0.0, 30.0, 2.1324774964630564e-14),
    (0.0, 120.0, 8.7635680998255777e-54),
    (0.25, 0.01, 6.1657412641392401),
    (0.25, 0.5, 9.6031632493188602e-1),
    (0.25, 1.5, 2.1735815698180043e-1),
    (0.25, 2.0, 1.1537827684085676e-1),
    (0.25, 3.7000000000000002, 1.5748986212094449e-2),
    (0.25, 9.5, 3.0152209354517106e-5),
    (0.25, 12.0, 2.2063437300590882e-6),
    (0.25, 30.0, 2.1346641833090355e-14),
    (0.25, 120.0, 8.7658411485780314e-54),
    (0.5, 0.01, 1.240843453284693e1),
    (0.5, 0.5, 1.0750476034999202),
    (0.5, 1.5, 2.2833505222826546e-1),
    (0.5, 2.0, 1.1993777196806145e-1),
    (0.5, 3.7000000000000002, 1.6109033825487323e-2),
    (0.5, 9.5, 3.0436909836687416e-5),
    (0.5, 12.0, 2.2229798835703494e-6),
    (0.5, 30.0, 2.1412375659560114e-14),
    (0.5, 120.0, 8.7726638232031407e-54),
    (1.0, 0.01, 9.9973894118296246e1),
    (1.0, 0.5, 1.6564411200033009),
    (1.0, 1.5, 2.7738780045684382e-1),
    (1.0, 2.0, 1.3986588181652243e-1),
    (1.0, 3.7000000000000002, 1.7628035102223263e-2),
    (1.0, 9.5, 3.1602034110426746e-5),
    (1.0, 12.0, 2.2907574647671878e-6),
    (1.0, 30.0, 2.1677320018915494e-14),
    (1.0, 120.0, 8.8000075200927614e-54),
    (1.0000001000000001, 0.01, 9.997394133075554e1),
    (1.0000001000000001, 0.5, 1.6564413048871333),
    (1.0000001000000001, 1.5, 2.7738781471054904e-1),
    (1.0000001000000001, 2.0, 1.3986588751121646e-1),
    (
        1.0000001000000001,
        3.7000000000000002,
        1.7628035524673557e-2,
    ),
    (1.0000001000000001, 9.5, 3.1602034426825552e-5),
    (1.0000001000000001, 12.0, 2.2907574831074005e-6),
    (1.0000001000000001, 30.0, 2.1677320089998081e-14),
    (1.0000001000000001, 120.0, 8.8000075273957351e-54),
    (1.5, 0.01, 1.2532518878175399e3),
    (1.5, 0.5, 3.2251428104997607),
    (1.5, 1.5, 3.8055842038044243e-1),
    (1.5, 2.0, 1.7990665795209217e-1),
    (1.5, 3.7000000000000002, 2.0462826751294708e-2),
    (1.5, 9.5, 3.3640795082654512e-5),
    (1.5, 12.0, 2.4082282072012118e-6),
    (1.5, 30.0, 2.2126121514878784e-14),
    (1.5, 120.0, 8.8457693550631668e-54),
    (2.2999999999999998, 0.01, 1.1436529966112098e5),
    (2.2999999999999998, 0.5, 1.350965388130364e1),
    (2.2999999999999998, 1.5, 7.9212375201532169e-1),
    (2.2999999999999998, 2.0, 3.2510864704247955e-1),
    (
        2.2999999999999998,
        3.7000000000000002,
        2.9253547893152784e-2,
    ),
    (2.2999999999999998, 9.5, 3.9146592028753611e-5),
    (2.2999999999999998, 12.0, 2.7190026097173327e-6),
    (2.2999999999999998, 30.0, 2.3256344452638287e-14),
    (2.2999999999999998, 120.0, 8.958054983233673e-54),
    (3.0, 0.01, 7.999900001249882e6),
    (3.0, 0.5, 6.2057909529930256e1),
    (3.0, 1.5, 1.8338037024745793),
    (3.0, 2.0, 6.4738539094863415e-1),
    (3.0, 3.7000000000000002, 4.4827308123250336e-2),
    (3.0, 9.5, 4.7059274013860748e-5),
    (3.0, 12.0, 3.1516302341358621e-6),
    (3.0, 30.0, 2.4713310636589929e-14),
    (3.0, 120.0, 9.0970153498203321e-54),
    (4.0, 0.01, 4.7999600002499975e9),
    (4.0, 0.5, 7.5224509791040395e2),
    (4.0, 1.5, 7.9188707731549682),
    (4.0, 2.0, 2.1959159274119583),
    (4.0, 3.7000000000000002, 9.7852259636207341e-2),
    (4.0, 9.5, 6.6432591516252017e-5),
    (4.0, 12.0, 4.1584334251739537e-6),
    (4.0, 30.0, 2.7712591759876249e-14),
    (4.0, 120.0, 9.3650856593181404e-54),
    (-0.69999999999999996, 0.01, 2.6433878465829248e1),
    (-0.69999999999999996, 0.5, 1.2384579270729807),
    (-0.69999999999999996, 1.5, 2.4310893192433203e-1),
    (-0.69999999999999996, 2.0, 1.2601327130661064e-1),
    (
        -0.69999999999999996,
        3.7000000000000002,
        1.6581185393573799e-2,
    ),
    (-0.69999999999999996, 9.5, 3.0805136504649154e-5),
    (-0.69999999999999996, 12.0, 2.2444529055190678e-6),
    (-0.69999999999999996, 30.0, 2.1496807317919461e-14),
    (-0.69999999999999996, 120.0, 8.7814045748223482e-54),
];

pub const BESSEL_I: &[(f64, f64, f64)] = &[
    (-2.5, 0.10000000000000001, 7.556813495194071e2),
    (-2.5, 1.0, 2.1117761936354068),
    (-2.5, 4.0, 4.7717839601424545),
    (-2.5, 17.0, 1.9489962221707115e6),
    (-2.5, 29.0, 2.6215064208521074e11),
    (-0.5, 0.10000000000000001, 2.5357587011874124),
    (-0.5, 1.0, 1.2312002145929674),
    (-0.5, 4.0, 1.08944086813337e1),
    (-0.5, 17.0, 2.3371780423540881e6),
    (-0.5, 29.0, 2.9124001320166741e11),
    (0.0, 0.10000000000000001, 1.0025015629340956),
    (0.0, 1.0, 1.2660658777520083),
    (0.0, 4.0, 1.130192195213633e1),
    (0.0, 17.0, 2.3549702231682934e6),
    (0.0, 29.0, 2.9252063178569087e11),
    (
        0.29999999999999999,
        0.10000000000000001,
        4.5447035229197417e-1,
    ),
    (0.29999999999999999, 1.0, 1.0887949490168029),
    (0.29999999999999999, 4.0, 1.1148917207802894e1),
    (0.29999999999999999, 17.0, 2.3485491404568575e6),
    (0.29999999999999999, 29.0, 2.9205895367952862e11),
    (1.0, 0.10000000000000001, 5.0062526047092695e-2),
    (1.0, 1.0, 5.6515910399248503e-1),
    (1.0, 4.0, 9.7594651537044499),
    (1.0, 17.0, 2.2846215838080798e6),
    (1.0, 29.0, 2.8743210812625481e11),
    (2.5, 0.10000000000000001, 1.6832901734888535e-4),
    (2.5, 1.0, 5.7098909203048247e-2),
    (2.5, 4.0, 4.757626874823473),
    (2.5, 17.0, 1.948996222170702e6),
    (2.5, 29.0, 2.6215064208521074e11),
    (6.0, 0.10000000000000001, 2.1709140596047785e-11),
    (6.0, 1.0, 2.2488661477147573e-5),
    (6.0, 4.0, 1.5446479987067302e-1),
    (6.0, 17.0, 8.0019577597826972e5),
    (6.0, 29.0, 1.5589040983045109e11),
];

pub const BESSEL_I_SCALED: &[(f64, f64, f64)] = &[
    (0.0, 31.0, 7.1946496696983833e-2),
    (0.0, 75.0, 4.6143247062816963e-2),
    (0.0, 500.0, 1.7845706500153167e-2),
    (0.5, 31.0, 7.1652148762749637e-2),
    (0.5, 75.0, 4.6065886596178064e-2),
    (0.5, 500.0, 1.7841241161527711e-2),
    (1.7, 31.0, 6.8617196960102658e-2),
    (1.7, 75.0, 4.5256869733350502e-2),
    (1.7, 500.0, 1.7794155374062405e-2),
];

pub const GAMMA: &[(f64, f64)] = &[
    (0.001, 9.9942377248459545e2),
    (0.10000000000000001, 9.5135076986687313),
    (0.5, 1.772453850905516),
    (1.5, 8.8622692545275801e-1),
    (2.75, 1.6083594219855457),
    (7.2000000000000002, 1.050317816662683e3),
    (23.5, 5.3613035875444147e21),
    (57.100000000000001, 1.0644188555680015e75),
    (99.900000000000006, 5.8917321516445157e155),
    (142.30000000000001, 8.3886933931012492e243),
    (169.90000000000001, 2.5552232692967771e304),
    (-0.29999999999999999, -4.3268511088251927),
    (-2.6000000000000001, -8.886857146465097e-1),
    (-7.9000000000000004, 3.1214593597195314e-4),
];

pub const LOG_GAMMA: &[(f64, f64)] = &[
    (0.01, 4.5994798780420217),
    (0.90000000000000002, 6.6376239734742954e-2),
    (3.2999999999999998, 9.870985778947344e-1),
    (14.9, 2.4924132002217278e1),
    (15.1, 2.5458999750992663e1),
    (260.0, 1.1839161422943966e3),
    (10000.0, 8.2099717496442377e4),
];

// (nu, re z, im z, re F, im F)
pub const HYP0F1: &[(f64, f64, f64, f64, f64)] = &[
    (
        0.29999999999999999,
        1.0,
        2.0,
        -1.6259422841930201,
        1.1061595880223472e1,
    ),
    (1.7, -3.0, 0.5, -2.2210706719237601e-2, 7.43932486601955e-2),
    (2.5, 10.0, -4.0, 1.1674780171106082e1, -1.4549767503160402e1),
    (0.5, -20.0, 0.0, -8.8676112550770194e-1, 0.0),
    (4.0, 0.0, 7.0, -1.0858310405729653e-1, 1.2941843402849008),
];
