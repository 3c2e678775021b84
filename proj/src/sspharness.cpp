#include "eisglm/sspharness.hpp"

#include <cmath>

#include "eisglm/postproc.hpp"

namespace eisglm {

namespace {

using Eigen::VectorXd;

StageVector advected_start(const MethodTableau& t, const AdvectionSetup& setup) {
    StageVector v;
    v.n = 0;
    v.t_base = 0.0;
    v.dt = setup.dt();
    v.values.resize(setup.n, t.s);
    for (int j = 0; j < t.s; ++j)
        v.values.col(j) = translated_step(setup.n, t.c(j) * v.dt);
    return v;
}

StageVector advance(const OdeProblem& problem, const MethodTableau& t,
                    const StageVector& v) {
    return t.is_explicit() ? step_explicit(problem, t, v)
                           : step_implicit(problem, t, v);
}

} // namespace

VectorXd upwind_f(const VectorXd& u, double dx) {
    const auto n = u.size();
    VectorXd out(n);
    for (Eigen::Index j = 0; j < n; ++j)
        out(j) = -(u(j) - u((j + n - 1) % n)) / dx;
    return out;
}

VectorXd upwind_fdot(const VectorXd& u, double dx) {
    const auto n = u.size();
    VectorXd out(n);
    for (Eigen::Index j = 0; j < n; ++j)
        out(j) = (u(j) - 2.0 * u((j + n - 1) % n) + u((j + n - 2) % n)) /
                 (dx * dx);
    return out;
}

OdeProblem advection_problem(int n) {
    OdeProblem problem;
    problem.dim = n;
    const double dx = 2.0 / n;
    problem.f = [dx](const VectorXd& u) { return upwind_f(u, dx); };
    problem.fdot = [dx](const VectorXd& u) { return upwind_fdot(u, dx); };
    return problem;
}

VectorXd step_initial(int n) {
    if (n < 4) throw Error("step_initial: need at least 4 grid points");
    return translated_step(n, 0.0);
}

VectorXd translated_step(int n, double shift) {
    const double dx = 2.0 / n;
    VectorXd u(n);
    for (int j = 0; j < n; ++j) {
        double x = -1.0 + j * dx - shift;
        x -= 2.0 * std::floor((x + 1.0) / 2.0); // wrap into [-1, 1)
        u(j) = (x >= 0.0 && x <= 0.5) ? 0.0 : 1.0;
    }
    return u;
}

double total_variation(const VectorXd& u) {
    const auto n = u.size();
    double tv = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
        tv += std::abs(u((j + 1) % n) - u(j));
    return tv;
}

double max_tv_rise(const MethodTableau& t, const AdvectionSetup& setup) {
    if (setup.lambda <= 0) throw Error("max_tv_rise: lambda must be positive");
    const OdeProblem problem = advection_problem(setup.n);
    StageVector v = advected_start(t, setup);
    double tv_prev = total_variation(v.values.col(0));
    double rise = 0.0;
    for (int step = 0; step < setup.steps; ++step) {
        v = advance(problem, t, v);
        const double tv = total_variation(v.values.col(0));
        rise = std::max(rise, std::max(0.0, tv - tv_prev));
        tv_prev = tv;
    }
    return rise;
}

double tv_postproc_gap(const MethodTableau& t, const AdvectionSetup& setup,
                       int m) {
    const OdeProblem problem = advection_problem(setup.n);
    StageVector v = advected_start(t, setup);
    SolutionWindow window(m);
    window.push(v);
    for (int step = 0; step < setup.steps; ++step) {
        v = advance(problem, t, v);
        window.push(v);
    }
    const FilterResult post = postprocess(t, window);
    return total_variation(v.values.col(0)) -
           total_variation(post.value_at_tf);
}

} // namespace eisglm
