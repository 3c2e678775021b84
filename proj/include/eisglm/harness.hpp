#ifndef EISGLM_HARNESS_HPP
#define EISGLM_HARNESS_HPP

#include "eisglm/stepper.hpp"
#include "eisglm/tableau.hpp"

namespace eisglm {

/// Van der Pol oscillator (y1, y2)' = (y2, a (1 - y1^2) y2 - y1) with
/// analytic Jacobians for both F and Fdot.
OdeProblem vdp_problem(double a = 2.0);

/// High-accuracy terminal state: eEIS+(4,8)_2 at dt = (Tf - t0)/2^14,
/// certified against the dt/2 rerun. Throws ReferenceUnconverged if the two
/// resolutions disagree beyond 1e-10 relative.
Eigen::VectorXd reference_solution(const OdeProblem& problem, double t0,
                                   const Eigen::VectorXd& u0, double Tf);

struct ConvergencePoint {
    double dt = 0;
    double raw_error = 0;
    double post_error = 0;
};

struct ConvergenceResult {
    std::string method;
    std::vector<ConvergencePoint> points;
    double slope_raw = 0;
    double slope_post = 0;
};

/// Error-versus-dt sweep against reference_solution, with least-squares
/// slopes fitted on log10-log10 points whose error lies in [1e-13, 1e-1]
/// (roundoff floor and pre-asymptotic cap excluded). Raw errors are taken
/// at block 1 of the final stage vector, post errors at the post-processed
/// value at Tf. Throws InsufficientPoints if fewer than 3 points survive
/// the filter.
ConvergenceResult convergence_study(const MethodTableau& t,
                                    const OdeProblem& problem, double t0,
                                    const Eigen::VectorXd& u0, double Tf,
                                    const std::vector<double>& dts, int m);

/// Per-method step-count ladders placing every dt inside the method's
/// asymptotic window on the Van der Pol benchmark; unknown methods fall
/// back to Tf/2^k for k = 4..10.
std::vector<double> default_dts(const MethodTableau& t, double t0, double Tf);

/// Least-squares slope of log10(err) against log10(dt) over the filtered
/// points; shared by convergence_study and the tests.
double fit_slope(const std::vector<std::pair<double, double>>& dt_err);

} // namespace eisglm

#endif
