#![allow(dead_code)]
#![allow(clippy::approx_constant, clippy::excessive_precision, clippy::unreadable_literal)]
//! High-precision reference values produced by tests/oracle/gen_reference.py.

// (nu, x, I_nu(x), K_nu(x))
pub const BESSEL_TABLE: &[(f64, f64, f64, f64)] = &[
    (-2.4, 1e-3, 31456411.103616572934, 51954446.627624562859),
    (-2.4, 0.01, 125228.01438023138334, 206830.72102274196674),
    (-2.4, 0.3, 35.138545218499283291, 58.030105779787007916),
    (-2.4, 1.0, 1.757095786748356496, 2.7891703907643500287),
    (-2.4, 1.9, 0.6389636016138629251, 0.42135941943645795374),
    (-2.4, 2.1, 0.69815991068474363871, 0.30119880836411314928),
    (-2.4, 5.0, 14.503787371145329246, 0.0062175271490115831906),
    (-2.4, 12.0, 14757.36972696257877, 2.7704204318171738402e-6),
    (-2.4, 30.0, 708982760231.8986951, 2.3436109278622505535e-14),
    (-2.4, 50.0, 2.7668140490355629191e+20, 3.6102865710984632111e-23),
    (-1.3, 1e-3, -4520.2939921098090936, 8776.6527984511158197),
    (-1.3, 0.01, -226.53267326853679881, 439.84003676339543964),
    (-1.3, 0.3, -2.5146777924657816828, 5.0252049759614897255),
    (-1.3, 1.0, -0.0059134524308482552117, 0.76364688950466245511),
    (-1.3, 1.9, 1.06749356224043836, 0.1846837095199114558),
    (-1.3, 2.1, 1.3584098106686237137, 0.14036645784977471153),
    (-1.3, 5.0, 22.533942065129413151, 0.0043070788241686094574),
    (-1.3, 12.0, 17604.932030281858036, 2.3548917091557472272e-6),
    (-1.3, 30.0, 759595793990.45512295, 2.1923932723584679932e-14),
    (-1.3, 50.0, 2.8829148100870373402e+20, 3.467712427867407641e-23),
    (-0.7, 1e-3, 68.363192619651097304, 132.7242810264990428),
    (-0.7, 0.01, 13.641375527126916806, 26.433878465829253192),
    (-0.7, 0.3, 1.3567772270984166962, 2.0605226512839310712),
    (-0.7, 1.0, 1.0406693203938781626, 0.5026012749793812405),
    (-0.7, 1.9, 1.8013814559845605196, 0.14319546995810144826),
    (-0.7, 2.1, 2.1011880232036730968, 0.11105158058275573288),
    (-0.7, 5.0, 25.771611620236413395, 0.0038604785047037983975),
    (-0.7, 12.0, 18548.669285468097146, 2.2444529055190678503e-6),
    (-0.7, 30.0, 775205402418.45179354, 2.1496807317919460956e-14),
    (-0.7, 50.0, 2.9180734747444511144e+20, 3.4267539294729654047e-23),
    (-0.5, 1e-3, 25.231337835865261889, 39.593659513116643614),
    (-0.5, 0.01, 7.9792445536335850766, 12.408434532846930048),
    (-0.5, 0.3, 1.5227772707319231953, 1.6951610563392830856),
    (-0.5, 1.0, 1.2312002145929674465, 0.46106850444789455844),
    (-0.5, 1.9, 1.9783412482067803487, 0.13599521326566795789),
    (-0.5, 2.1, 2.2818283947188593998, 0.10590875899695359003),
    (-0.5, 5.0, 26.47995176430595072, 0.0037766133746428825595),
    (-0.5, 12.0, 18743.609411938719695, 2.222979883570349352e-6),
    (-0.5, 30.0, 778366068840.44640419, 2.1412375659560113993e-14),
    (-0.5, 50.0, 2.925156852991290042e+20, 3.4186200954570746356e-23),
    (-0.2, 1e-3, 3.9279636092767241727, 9.8606209510981588608),
    (-0.2, 0.01, 2.4784541634414452078, 5.6146709749639064281),
    (-0.2, 0.3, 1.2908133068560388307, 1.4204576140205965557),
    (-0.2, 1.0, 1.3170503795983760641, 0.42721999513673499151),
    (-0.2, 1.9, 2.1201933978596562975, 0.12996643162776292933),
    (-0.2, 2.1, 2.4325167698130585113, 0.10158822557266125956),
    (-0.2, 5.0, 27.117138854016130294, 0.0037046558357275392987),
    (-0.2, 12.0, 18915.919201678669459, 2.2043555762546922616e-6),
    (-0.2, 30.0, 781142347749.74439277, 2.1338767205475028046e-14),
    (-0.2, 50.0, 2.931369010444065815e+20, 3.4115187284196453918e-23),
    (0.0, 1e-3, 1.000000250000015625, 7.0236888005623813436),
    (0.0, 0.01, 1.000025000156250434, 4.7212447301610949651),
    (0.0, 0.3, 1.0226268793515969911, 1.3724600605442973766),
    (0.0, 1.0, 1.2660658777520083356, 0.42102443824070833334),
    (0.0, 1.9, 2.1277401940538878569, 0.12884597927604747986),
    (0.0, 2.1, 2.4462831294361822913, 0.10078374088996694581),
    (0.0, 5.0, 27.239871823604446895, 0.0036910983340425942747),
    (0.0, 12.0, 18948.925349296308861, 2.2008253973114914005e-6),
    (0.0, 30.0, 781672297823.97748972, 2.1324774964630563712e-14),
    (0.0, 50.0, 2.9325537838493363267e+20, 3.4101677497894955139e-23),
    (0.2, 1e-3, 0.23816151677509806506, 9.8606209510981588608),
    (0.2, 0.01, 0.3774683518103074219, 5.6146709749639064281),
    (0.2, 0.3, 0.7592841564591400553, 1.4204576140205965557),
    (0.2, 1.0, 1.1571864886901160369, 0.42721999513673499151),
    (0.2, 1.9, 2.0715605162436478708, 0.12996643162776292933),
    (0.2, 2.1, 2.3945028912601274769, 0.10158822557266125956),
    (0.2, 5.0, 27.115752587682351031, 0.0037046558357275392987),
    (0.2, 12.0, 18915.919200853809051, 2.2043555762546922616e-6),
    (0.2, 30.0, 781142347749.74439277, 2.1338767205475028046e-14),
    (0.2, 50.0, 2.931369010444065815e+20, 3.4115187284196453918e-23),
    (0.3, 1e-3, 0.11393858132853913531, 14.406547529041027961),
    (0.3, 0.01, 0.22734168572231436642, 6.8901026382927697742),
    (0.3, 0.3, 0.64164623507421809969, 1.4823411623387793272),
    (0.3, 1.0, 1.0887949490168028633, 0.43507602420880202435),
    (0.3, 1.9, 2.0227688010159704413, 0.13137942527906502387),
    (0.3, 2.1, 2.3466954118970241258, 0.10260207043456642528),
    (0.3, 5.0, 26.962093779437942705, 0.0037216693288734254993),
    (0.3, 12.0, 18874.745079467691949, 2.2087760727335875381e-6),
    (0.3, 30.0, 780480421399.83352905, 2.1356270283260948774e-14),
    (0.3, 50.0, 2.9298887214511478474e+20, 3.4132081995368530188e-23),
    (0.5, 1e-3, 0.025231329425422680777, 39.593659513116643614),
    (0.5, 0.01, 0.079789785894536927535, 12.408434532846930048),
    (0.5, 0.3, 0.44360422491882006485, 1.6951610563392830856),
    (0.5, 1.0, 0.93767488824548764672, 0.46106850444789455844),
    (0.5, 1.9, 1.8917640064945101348, 0.13599521326566795789),
    (0.5, 2.1, 2.2144047846744857727, 0.10590875899695359003),
    (0.5, 5.0, 26.477547497559065205, 0.0037766133746428825595),
    (0.5, 12.0, 18743.609410523526747, 2.222979883570349352e-6),
    (0.5, 30.0, 778366068840.44640419, 2.1412375659560113993e-14),
    (0.5, 50.0, 2.925156852991290042e+20, 3.4186200954570746356e-23),
    (0.8, 1e-3, 0.0024549768295867186128, 254.57868042422376779),
    (0.8, 0.01, 0.015490069598023565144, 40.312639156131928389),
    (0.8, 0.3, 0.2383202563220426904, 2.320095008905382451),
    (0.8, 1.0, 0.70621824422956145304, 0.53019190150319913336),
    (0.8, 1.9, 1.6373701765102274103, 0.14786982673157169202),
    (0.8, 2.1, 1.9486265358439743401, 0.11438069721166507382),
    (0.8, 5.0, 25.338167795044327775, 0.0039137908089343703148),
    (0.8, 12.0, 18427.897100861618775, 2.2579762127875314189e-6),
    (0.8, 30.0, 773236584148.19577906, 2.1549744317320286506e-14),
    (0.8, 50.0, 2.9136551367423362638e+20, 3.431847337201484193e-23),
    (1.2, 1e-3, 0.000099233955925802943596, 4198.8270608634873121),
    (1.2, 0.01, 0.0015727699056080942019, 264.89947815468818551),
    (1.2, 0.3, 0.094110988324186214813, 4.2140384942661778585),
    (1.2, 1.0, 0.44173918563662080153, 0.70107989955789312996),
    (1.2, 1.9, 1.2565844284117393302, 0.17523118075846915083),
    (1.2, 2.1, 1.5353315136380357841, 0.13373083541598150421),
    (1.2, 5.0, 23.170372111774039121, 0.0042101632757925734587),
    (1.2, 12.0, 17797.366461678083493, 2.3314547319960211609e-6),
    (1.2, 30.0, 762821352844.86585382, 2.183426121339328688e-14),
    (1.2, 50.0, 2.8902041846587837373e+20, 3.4591394870288413561e-23),
    (1.7, 1e-3, 1.5827374571328374942e-6, 185828.39998462770095),
    (1.7, 0.01, 0.000079325507916104560311, 3707.6330878543882167),
    (1.7, 0.3, 0.025949561772543081202, 11.098113534997124326),
    (1.7, 1.0, 0.21833881063130722782, 1.1387178091799357611),
    (1.7, 1.9, 0.81744299216432679638, 0.23689187682713977522),
    (1.7, 2.1, 1.0368775688891894061, 0.17663645748973691386),
    (1.7, 5.0, 19.748516040401815738, 0.0048026033101904890506),
    (1.7, 12.0, 16710.733664102210645, 2.4706289117108121206e-6),
    (1.7, 30.0, 744304169286.97244536, 2.2359454624763856952e-14),
    (1.7, 50.0, 2.8481826641583032162e+20, 3.5091573095620960501e-23),
    (2.5, 1e-3, 1.6820884681626110849e-9, 118899799.11154879389),
    (2.5, 0.01, 5.3192683999608715261e-7, 375987.97477979482738),
    (2.5, 0.3, 0.002639014893590273704, 75.152140164374883462),
    (2.5, 1.0, 0.057098909203048247351, 3.2274795311352619091),
    (2.5, 1.9, 0.34017035128810637209, 0.46373991005550486473),
    (2.5, 2.1, 0.4610477477798470198, 0.32925376096331830368),
    (2.5, 5.0, 13.766882138682582598, 0.0064957750043857580024),
    (2.5, 12.0, 14448.198920258086964, 2.8250369353706523016e-6),
    (2.5, 30.0, 703124015519.20325179, 2.3624987811047992439e-14),
    (2.5, 50.0, 2.7531576300354021875e+20, 3.6278396452990476033e-23),
];
pub const K_0P2_AT_1: f64 = 0.42721999513673499151;
pub const GAMMA_0P8_TIMES_GAMMA_0P2: f64 = 5.3447966605779755671;
pub const PI_SEC_0P3PI: f64 = 5.3447966605779755671;
pub const GAMMA_TABLE: &[(f64, f64)] = &[
    (0.1, 9.5135076986687318363),
    (0.5, 1.7724538509055160273),
    (0.8, 1.1642297137253033736),
    (1.0, 1.0),
    (1.5, 0.88622692545275801365),
    (2.5, 1.3293403881791370205),
    (3.7, 4.1706517837966031654),
    (7.25, 1155.3810139199896872),
    (10.0, 362880.0),
    (-0.5, -3.5449077018110320546),
    (-1.5, 2.3632718012073547031),
    (-2.3, -1.4471073942559172639),
    (-7.6, 0.0001910479191411735605),
    (-9.9, 3.5426845530808342627e-6),
    (0.001, 999.42377248459546611),
];
pub const PHI_S_NORM_SQ_A03: f64 = 1.0689593321155951134;
pub const PHI_D_NORM_SQ_A03: f64 = 2.6723983302889877835;
// (alpha, lambda, c, ||Phi^(D)||^2) at m = 1
pub const PHI_D_NORM_TABLE: &[(f64, f64, f64, f64)] = &[
    (-0.4, 1.0, 1.0, 5.0832036923152598158),
    (-0.4, 0.5, 10.0, 207.91449688868431127),
    (-0.4, 1.5, 3.0, 3.6968754125929162064),
    (0.0, 1.0, 1.0, 1.5707963267948966192),
    (0.0, 0.5, 10.0, 314.94663193882638983),
    (0.0, 1.5, 3.0, 3.4271919857343198705),
    (0.4, 1.0, 1.0, 5.0832036923152598158),
    (0.4, 0.5, 10.0, 1830.462923588612858),
    (0.4, 1.5, 3.0, 18.484377062964581111),
];
// (alpha, theta, E) at m = 1
pub const SCHROD_BOUND_TABLE: &[(f64, f64, f64)] = &[
    (0.0, -1.0, -0.5),
    (0.3, -1.0, -0.27231727544539243467),
    (-0.3, -2.0, -19.52536210655221095),
    (0.0, -2.0, -2.0),
];
// (alpha, m, c, gamma, lambda*) gap eigenvalue shifts
pub const DIRAC_GAP_TABLE: &[(f64, f64, f64, f64, f64)] = &[
    (0.3, 1.0, 1.0, -0.7, 0.22372040275273683993),
    (-0.3, 1.0, 1.0, -2.0, 1.851559591919700847),
    (0.0, 1.0, 1.0, -0.7, 0.65771812080536912752),
    (0.0, 1.0, 1e4, -0.00005, 0.49999999875000000312),
    (0.3, 1.0, 1e4, -0.00008, 0.27231727535269656152),
    (-0.3, 1.0, 1e4, -0.00004, 19.525354481760997222),
];
