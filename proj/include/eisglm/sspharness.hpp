#ifndef EISGLM_SSPHARNESS_HPP
#define EISGLM_SSPHARNESS_HPP

#include "eisglm/stepper.hpp"
#include "eisglm/tableau.hpp"

namespace eisglm {

/// First-order upwind semi-discretization of u_t + u_x = 0 on the periodic
/// domain [-1, 1], driven with step-function initial data.
struct AdvectionSetup {
    int n = 200;       //< spatial points
    double lambda = 1; //< CFL number dt / dx
    int steps = 10;    //< time steps

    double dx() const { return 2.0 / n; }
    double dt() const { return lambda * dx(); }
};

/// F_j = -(u_j - u_{j-1}) / dx, periodic indices.
Eigen::VectorXd upwind_f(const Eigen::VectorXd& u, double dx);

/// Fdot_j = (u_j - 2 u_{j-1} + u_{j-2}) / dx^2, from u_tt = u_xx.
Eigen::VectorXd upwind_fdot(const Eigen::VectorXd& u, double dx);

/// The upwind discretization packaged for the steppers.
OdeProblem advection_problem(int n);

/// Square wave on x_j = -1 + j dx: 0 on [0, 1/2], 1 elsewhere. TV = 2.
Eigen::VectorXd step_initial(int n);

/// Periodic total variation, including the wrap-around difference.
double total_variation(const Eigen::VectorXd& u);

/// Exact advected profile u0(x - shift) sampled on the grid (the PDE
/// solution is pure translation); used for stage startup so the TV
/// measurement reflects the method alone.
Eigen::VectorXd translated_step(int n, double shift);

/// Largest single-step TV increase, floored at zero, over `steps` steps.
double max_tv_rise(const MethodTableau& t, const AdvectionSetup& setup);

/// TV(u^n) - TV(postprocessed u^n) at the final step. May be negative.
double tv_postproc_gap(const MethodTableau& t, const AdvectionSetup& setup,
                       int m);

} // namespace eisglm

#endif
