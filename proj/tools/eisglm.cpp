// eisglm: verification, integration, stability and convergence studies for
// error-inhibiting two-derivative general linear methods.
//
// Subcommands: list, verify, converge, stability, astable, ssp,
// tableau-dump. All numeric output is CSV with 17 significant digits so
// repeated invocations are byte-identical. Exit codes: 0 success, 1 a check
// or computation failed, 2 usage error. EISGLM_THREADS caps parallel scans
// (0 = serial).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "eisglm/harness.hpp"
#include "eisglm/postproc.hpp"
#include "eisglm/sspharness.hpp"
#include "eisglm/stability.hpp"
#include "eisglm/stepper.hpp"
#include "eisglm/tableau.hpp"

namespace {

using namespace eisglm;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Resolve a method argument: registry name first, then coefficient file.
MethodTableau resolve(const std::string& arg) {
    try {
        return find_method(arg);
    } catch (const UnknownMethod&) {
    }
    std::ifstream in(arg);
    if (!in)
        throw UnknownMethod("'" + arg +
                            "' is neither a built-in method nor a readable "
                            "coefficient file");
    std::ostringstream text;
    text << in.rdbuf();
    return load_tableau(text.str());
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw Error("cannot open output file '" + path + "'");
    return file;
}

int cmd_list() {
    std::printf("%-18s %2s %2s %2s %-5s %-9s %s\n", "name", "s", "p", "P",
                "kind", "family", "ssp_coeff");
    for (const auto& t : registry()) {
        std::printf("%-18s %2d %2d %2d %-5s %-9s %s\n", t.name.c_str(), t.s,
                    t.p, t.P, to_string(t.kind).c_str(),
                    to_string(t.family).c_str(),
                    t.ssp_coefficient ? fmt17(*t.ssp_coefficient).c_str()
                                      : "-");
    }
    return 0;
}

int cmd_verify(const std::string& method) {
    const MethodTableau t = resolve(method);
    std::printf("method %s: s=%d p=%d P=%d kind=%s family=%s\n",
                t.name.c_str(), t.s, t.p, t.P, to_string(t.kind).c_str(),
                to_string(t.family).c_str());
    std::printf("abscissas:");
    for (int j = 0; j < t.s; ++j) std::printf(" %s", fmt17(t.c(j)).c_str());
    std::printf("\n");

    int failures = 0;
    try {
        validate(t);
        std::printf("structural invariants: ok\n");
    } catch (const Error& e) {
        std::printf("structural invariants: FAIL (%s)\n", e.what());
        ++failures;
    }
    try {
        const OrderReport report = verify_order(t);
        std::printf("order check: ok, p_observed=%d\n", report.p_observed);
        for (const auto& [j, r] : report.residuals)
            std::printf("  |tau_%d| = %.3e\n", j, r);
    } catch (const OrderShortfall& e) {
        std::printf("order check: FAIL (%s)\n", e.what());
        ++failures;
    }
    try {
        const EisReport r = verify_eis(t);
        std::printf("EIS check (%s): ok  r1=%.3e r2=%.3e r3=%.3e\n",
                    to_string(t.kind).c_str(), r.con1, r.con2, r.con3);
    } catch (const EisViolation& e) {
        std::printf("EIS check: FAIL (%s)\n", e.what());
        ++failures;
    }
    {
        const Eigen::VectorXcd eig =
            Eigen::EigenSolver<Eigen::MatrixXd>(t.D, false).eigenvalues();
        std::printf("zero-stability eigenvalues of D:");
        for (int j = 0; j < t.s; ++j)
            std::printf(" (%.3e,%.3e)", eig(j).real(), eig(j).imag());
        std::printf("\n");
    }
    std::printf(failures ? "verify: FAIL\n" : "verify: pass\n");
    return failures ? 1 : 0;
}

int cmd_converge(const std::string& method, double tf, int m_opt,
                 const std::vector<double>& dts_opt, bool fd_jacobian,
                 const std::string& out_path) {
    const MethodTableau t = resolve(method);
    OdeProblem problem = vdp_problem(2.0);
    if (fd_jacobian) {
        problem.jac_f = nullptr;
        problem.jac_fdot = nullptr;
    }
    Eigen::VectorXd u0(2);
    u0 << 2.0, 0.0;
    const int m = m_opt > 0 ? m_opt : default_window(t);
    const std::vector<double> dts =
        dts_opt.empty() ? default_dts(t, 0.0, tf) : dts_opt;

    const ConvergenceResult result =
        convergence_study(t, problem, 0.0, u0, tf, dts, m);

    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    os << "method,dt,raw_error,post_error\n";
    for (const auto& pt : result.points)
        os << t.name << "," << fmt17(pt.dt) << "," << fmt17(pt.raw_error)
           << "," << fmt17(pt.post_error) << "\n";

    static const std::map<std::string, std::pair<double, double>> published = {
        {"eEIS+(2,6)_2", {4.7, 5.8}}, {"eEIS+(3,7)_2", {5.8, 6.6}},
        {"eEIS+(4,8)_2", {7.0, 7.7}}, {"iEIS+(2,4)_2", {3.0, 4.0}},
        {"iEIS+(3,5)_2", {3.9, 5.0}}, {"eEIS(2,3)_2", {3.0, 0.0}},
    };
    os << "method,slope_raw,slope_post,paper_raw,paper_post\n";
    os << t.name << "," << fmt17(result.slope_raw) << ","
       << fmt17(result.slope_post);
    if (auto it = published.find(t.name); it != published.end()) {
        os << "," << (it->second.first > 0 ? fmt17(it->second.first) : "");
        os << "," << (it->second.second > 0 ? fmt17(it->second.second) : "");
    } else {
        os << ",,";
    }
    os << "\n";
    return 0;
}

int cmd_stability(const std::string& method, double window, int n,
                  const std::string& out_path) {
    const MethodTableau t = resolve(method);
    GridSpec spec = GridSpec::default_window(t, n);
    if (window > 0) spec = {-window, window, -window, window, n, n};
    const StabilityGrid grid = scan_region(t, spec);

    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    os << "re,im,rho,stable\n";
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix)
            os << fmt17(grid.re(ix)) << "," << fmt17(grid.im(iy)) << ","
               << fmt17(grid.at(ix, iy)) << ","
               << int(grid.stable[static_cast<std::size_t>(iy) * spec.nx + ix])
               << "\n";
    return 0;
}

int cmd_astable(const std::string& method) {
    const MethodTableau t = resolve(method);
    const AStabilityReport report = check_a_stability(t);
    std::printf("sampled A-stability evidence for %s (not a proof)\n",
                t.name.c_str());
    std::printf("samples: %zu, max rho = %s at z = (%s, %s)\n", report.samples,
                fmt17(report.max_rho).c_str(),
                fmt17(report.argmax_z.real()).c_str(),
                fmt17(report.argmax_z.imag()).c_str());
    if (report.violations.empty()) {
        std::printf("no violations (rho <= 1 + 1e-9 everywhere sampled)\n");
        return 0;
    }
    std::printf("%zu violations, first few:\n", report.violations.size());
    for (std::size_t i = 0; i < std::min<std::size_t>(10, report.violations.size()); ++i) {
        const auto& v = report.violations[i];
        std::printf("  z = (%s, %s): rho = %s\n", fmt17(v.z.real()).c_str(),
                    fmt17(v.z.imag()).c_str(), fmt17(v.rho).c_str());
    }
    return 1;
}

int cmd_ssp(const std::string& method, std::vector<double> lambdas, int steps,
            int n, int m_opt, const std::string& out_path) {
    const MethodTableau t = resolve(method);
    if (t.family != MethodFamily::ExplicitSsp)
        std::cerr << "warning: " << t.name
                  << " is not an SSP method; TV bounds are not guaranteed\n";
    if (lambdas.empty()) {
        // 40-point grid through (0, C] plus a tail beyond the guarantee
        const double c = t.ssp_coefficient.value_or(1.0);
        for (int i = 1; i <= 40; ++i) lambdas.push_back(c * i / 40.0);
        for (int i = 1; i <= 8; ++i) lambdas.push_back(c + 0.1 * i);
    }
    for (double lam : lambdas)
        if (lam <= 0) throw CLI::ValidationError("--lambdas must be positive");

    const int m = m_opt > 0 ? m_opt : default_window(t);
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    os << "lambda,max_tv_rise,tv_postproc_gap\n";
    for (double lam : lambdas) {
        AdvectionSetup setup{n, lam, steps};
        const double rise = max_tv_rise(t, setup);
        double gap = std::numeric_limits<double>::quiet_NaN();
        if (t.kind == MethodKind::EisPlus)
            gap = tv_postproc_gap(t, setup, m);
        os << fmt17(lam) << "," << fmt17(rise) << "," << fmt17(gap) << "\n";
    }
    return 0;
}

int cmd_tableau_dump(const std::string& method, const std::string& out_path) {
    const MethodTableau t = resolve(method);
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    os << save_tableau(t);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"error-inhibiting two-derivative GLM toolkit"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "print the built-in methods");

    std::string method;
    auto* verify = app.add_subcommand(
        "verify", "order, EIS and structural checks for a method");
    verify->add_option("method", method, "registry name or coefficient file")
        ->required();

    double tf = 3.0;
    int m_opt = 0, grid_n = 401, ssp_steps = 10, ssp_n = 200;
    double window = 0.0;
    std::vector<double> dts, lambdas;
    bool fd_jacobian = false;
    std::string out_path;

    auto* converge = app.add_subcommand(
        "converge", "Van der Pol convergence study with post-processing");
    converge->add_option("method", method)->required();
    converge->add_option("--tf", tf, "final time (default 3.0)");
    converge->add_option("--m", m_opt, "post-processing window length");
    converge->add_option("--dts", dts, "explicit list of step sizes");
    converge->add_flag("--fd-jacobian", fd_jacobian,
                       "force finite-difference Jacobians in Newton");
    converge->add_option("-o,--output", out_path, "CSV output path");

    auto* stability = app.add_subcommand(
        "stability", "sample the linear stability region to CSV");
    stability->add_option("method", method)->required();
    stability->add_option("--window", window,
                          "half-width of the square window (default s)");
    stability->add_option("--n", grid_n, "samples per axis (default 401)");
    stability->add_option("-o,--output", out_path, "CSV output path");

    auto* astable =
        app.add_subcommand("astable", "sampled A-stability report");
    astable->add_option("method", method)->required();

    auto* ssp = app.add_subcommand(
        "ssp", "advection total-variation study (step initial data)");
    ssp->add_option("method", method)->required();
    ssp->add_option("--lambdas", lambdas, "CFL numbers to test");
    ssp->add_option("--steps", ssp_steps, "time steps (default 10)");
    ssp->add_option("--n", ssp_n, "spatial points (default 200)");
    ssp->add_option("--m", m_opt, "post-processing window length");
    ssp->add_option("-o,--output", out_path, "CSV output path");

    auto* dump = app.add_subcommand(
        "tableau-dump", "write a method in the coefficient file format");
    dump->add_option("method", method)->required();
    dump->add_option("-o,--output", out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2, --help exits 0
    }

    try {
        if (list->parsed()) return cmd_list();
        if (verify->parsed()) return cmd_verify(method);
        if (converge->parsed())
            return cmd_converge(method, tf, m_opt, dts, fd_jacobian, out_path);
        if (stability->parsed())
            return cmd_stability(method, window, grid_n, out_path);
        if (astable->parsed()) return cmd_astable(method);
        if (ssp->parsed())
            return cmd_ssp(method, lambdas, ssp_steps, ssp_n, m_opt, out_path);
        if (dump->parsed()) return cmd_tableau_dump(method, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownMethod& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
