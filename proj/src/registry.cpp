#include "eisglm/tableau.hpp"

// Built-in method coefficients, transcribed digit for digit from the
// published tables. Row-replicated D matrices are expanded here; abscissas
// are recovered from the first-order condition at construction.

namespace eisglm {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd mat(int s, std::initializer_list<double> vals) {
    MatrixXd m(s, s);
    auto it = vals.begin();
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) m(i, j) = *it++;
    return m;
}

// D with every row equal to `row`
MatrixXd drows(std::initializer_list<double> row) {
    const int s = static_cast<int>(row.size());
    MatrixXd m(s, s);
    int j = 0;
    for (double v : row) m.col(j++).setConstant(v);
    return m;
}

VectorXd vec(std::initializer_list<double> vals) {
    VectorXd v(static_cast<int>(vals.size()));
    int i = 0;
    for (double x : vals) v(i++) = x;
    return v;
}

MethodTableau make(std::string name, MethodKind kind, MethodFamily family,
                   int p, int P, MatrixXd D, MatrixXd A, MatrixXd Ahat,
                   MatrixXd R, MatrixXd Rhat,
                   std::optional<VectorXd> tau = std::nullopt,
                   std::optional<double> ssp = std::nullopt) {
    MethodTableau t;
    t.name = std::move(name);
    t.s = static_cast<int>(D.rows());
    t.D = std::move(D);
    t.A = std::move(A);
    t.Ahat = std::move(Ahat);
    t.R = std::move(R);
    t.Rhat = std::move(Rhat);
    t.p = p;
    t.P = P;
    t.kind = kind;
    t.family = family;
    t.ssp_coefficient = ssp;
    t.stored_tau = std::move(tau);
    t.c = recover_abscissas(t.D, t.A, t.R);
    return t;
}

std::vector<MethodTableau> build_registry() {
    std::vector<MethodTableau> reg;

    reg.push_back(make(
        "eEIS(2,3)_2", MethodKind::Eis, MethodFamily::Explicit, 2, 3,
        drows({1.347635863512091, -0.347635863512091}),
        mat(2, {1.110588320380528, 0.206278390370703,
                1.160801319467423, 0.191968442856969}),
        mat(2, {0.376508598017949, 0.079881117612918,
                0.424704932282709, 0.083778591655645}),
        mat(2, {0, 0, 0.875587228946215, 0}),
        mat(2, {0, 0, 0.412259887079832, 0})));

    reg.push_back(make(
        "eEIS+(2,5)_2", MethodKind::EisPlus, MethodFamily::Explicit, 3, 5,
        drows({0.500023658051142, 0.499976341948858}),
        mat(2, {0.627069692131650, 0.151022064558538,
                0.709712162750524, 0.848963643214302}),
        mat(2, {0.058142153689242, 0.325582994094698,
                0.108273930132603, 0.477624731406111}),
        mat(2, {0, 0, -0.336746561995068, 0}),
        mat(2, {0, 0, 0.367133756538675, 0}),
        vec({-0.039533847641586, 0.039537588993770})));

    reg.push_back(make(
        "eEIS+(2,6)_2", MethodKind::EisPlus, MethodFamily::Explicit, 4, 6,
        drows({0.193021555206000, 0.806978444794000}),
        mat(2, {1.089589263420254, -0.469532861646008,
                1.011690204056872, 1.112307786855907}),
        mat(2, {0.196914195858807, 0.434709438834146,
                0.130811273979010, 0.871687677021200}),
        mat(2, {0, 0, -1.033119102271808, 0}),
        mat(2, {0, 0, 0.499137031946415, 0}),
        vec({-0.037857689452761, 0.009055198613815})));

    reg.push_back(make(
        "eEIS+(3,7)_2", MethodKind::EisPlus, MethodFamily::Explicit, 5, 7,
        drows({1.581021525561460, -0.598751979308602, 0.017730453747142}),
        mat(3, {0.931591460185742, 0.379244369981835, -0.172141957956410,
                0.938547162180577, 0.508131122095280, -0.363857858559788,
                0.504648760586788, 1.046850936001111, -0.659275924405796}),
        mat(3, {0.057154143906362, 0.302522642478094, 0.175689200743141,
                0.045099335357263, 0.359020777972142, 0.164798140168151,
                -0.060217523878309, 0.456569929293375, -0.005615338892051}),
        mat(3, {0, 0, 0,
                0.307438691150295, 0, 0,
                1.789973573982305, -0.870575633439973, 0}),
        mat(3, {0, 0, 0,
                0.038804362951013, 0, 0,
                0.227157707727078, 0.276283023303938, 0}),
        vec({-0.003599790543666, -0.012406980352919, -0.097987210664809})));

    reg.push_back(make(
        "eEIS+(4,8)_2", MethodKind::EisPlus, MethodFamily::Explicit, 6, 8,
        drows({1.126765222628176, 0.808129178515260, -0.107647150078402,
               -0.827247251065033}),
        mat(4, {0.567574025309926, 0.723999455772069, 0.208196137734782, 0.023532165559543,
                0.749691669482323, 0.430151531239573, 0.359568096205409, -0.030974711893773,
                0.602555996794216, 0.745759221902972, 0.048559187429251, -0.267889537378177,
                1.051588361923041, -0.047355340428569, 0.863960642835203, 0.214102220881218}),
        mat(4, {0.041975696597772, 0.205746598967380, 0.137652258393657, 0.039122406247340,
                0.064927843091523, 0.213465637934016, 0.160720650985361, -0.047428374982532,
                0.056975020786010, 0.171669459177575, 0.226994033551341, -0.021617692260293,
                0.095018403341495, 0.263066907087928, 0.147903147440657, -0.036525606967693}),
        mat(4, {0, 0, 0, 0,
                0.296825313241825, 0, 0, 0,
                0.379857836431130, 0.610459020171445, 0, 0,
                0.079086170545983, 0.114409044614819, 0.077980998192235, 0}),
        mat(4, {0, 0, 0, 0,
                0.095598816350501, 0, 0, 0,
                -0.143446089841412, 0.076113483149991, 0, 0,
                0.309290513515929, 0.063106409144583, 0.076129207423402, 0}),
        vec({-0.000997109517747, -0.006485724807936, -0.023117224006582,
             -0.004685791946531})));

    reg.push_back(make(
        "eSSP-EIS(2,3)_2", MethodKind::Eis, MethodFamily::ExplicitSsp, 2, 3,
        drows({7.0 / 16.0, 9.0 / 16.0}),
        mat(2, {2.0 / 8.0, 3.0 / 8.0, 2.0 / 8.0, 3.0 / 8.0}),
        mat(2, {0, 1.0 / 8.0, 0, 1.0 / 8.0}),
        mat(2, {0, 0, 2.0 / 3.0, 0}),
        mat(2, {0, 0, 2.0 / 9.0, 0}),
        std::nullopt, 1.5));

    reg.push_back(make(
        "eSSP-EIS+(2,4)_2", MethodKind::EisPlus, MethodFamily::ExplicitSsp, 2, 4,
        drows({0.435605756635718, 0.564394243364282}),
        mat(2, {0.232303428413552, 0.564394243364282,
                0.216263460427852, 0.564394243364282}),
        mat(2, {0.000000005124887, 0.260081562620613,
                0.000000001928255, 0.146835746492061}),
        mat(2, {0, 0, 0.376253295127924, 0}),
        mat(2, {0, 0, 0.162082671864920, 0}),
        vec({-0.063938362828511, 0.049348339827035}), 1.0));

    reg.push_back(make(
        "eSSP-EIS+(3,6)_2", MethodKind::EisPlus, MethodFamily::ExplicitSsp, 4, 6,
        drows({0.235787420033905, 0.332249926343388, 0.431962653622707}),
        mat(3, {0.179040619183497, 0, 0.400647796399945,
                0.147616987633695, 0.118289307755180, 0.400647796399945,
                0.194101834261448, 0.212027154638658, 0.400647796399945}),
        mat(3, {0.032860477842919, 0, 0.068024553668439,
                0.024965463148830, 0.034155124171981, 0.021087452933654,
                0.011487692416560, 0.092903917927740, 0.124915188800131}),
        mat(3, {0, 0, 0,
                0.287524583705647, 0, 0,
                0.214948333287866, 0.243023557774243, 0}),
        mat(3, {0, 0, 0,
                0.133340336145235, 0, 0,
                0.050250968106130, 0.112702859933545, 0}),
        vec({-0.010752778908703, -0.021534888908005, 0.022433270953649}),
        1.0782));

    reg.push_back(make(
        "iEIS+(2,4)_2", MethodKind::EisPlus, MethodFamily::Implicit, 2, 4,
        drows({0.594710614896760, 0.405289385103240}),
        mat(2, {-2.187376304427630, -0.964459220078949,
                -1.117865907067007, 2.067845436796621}),
        mat(2, {0.778080609332642, -1.088765766927099,
                -2.898999040140121, 1.440243113199464}),
        mat(2, {3.949190831954959, 0, 0, 0.347375777718766}),
        mat(2, {-2.706937237458932, 0, 0, 0.978108368826293}),
        vec({-3.111010490530440, 4.565012136457357})));

    reg.push_back(make(
        "iEIS+(3,5)_2", MethodKind::EisPlus, MethodFamily::Implicit, 3, 5,
        drows({0.439087264857344, 0.700945256500558, -0.140032521357901}),
        mat(3, {2.507826539020301, 3.279683213077780, -1.170881137598611,
                -0.334032190141782, -4.031402321497854, 0.685583668720811,
                -1.750770284075905, -4.999999998880823, 3.295317723260540}),
        mat(3, {2.333968082671988, 0.419378200972933, -2.408406401605122,
                -2.145600247202041, 0.897829295036851, -0.721006948644857,
                -4.988816152192916, 3.020756581381562, -1.533772624102988}),
        mat(3, {-3.756922019094389, 0, 0,
                0, 4.872890771657239, 0,
                0, 0, 4.981825821767937}),
        mat(3, {3.591518759368352, 0, 0,
                0, -2.760598976218027, 0,
                0, 0, -3.950356833416136}),
        vec({3.466008686399261, -4.575755330149971, -12.036302018622621})));

    return reg;
}

} // namespace

const std::vector<MethodTableau>& registry() {
    static const std::vector<MethodTableau> reg = build_registry();
    return reg;
}

const MethodTableau& find_method(const std::string& name) {
    for (const auto& t : registry())
        if (t.name == name) return t;
    throw UnknownMethod("no built-in method named '" + name +
                        "' (see the list subcommand)");
}

} // namespace eisglm
