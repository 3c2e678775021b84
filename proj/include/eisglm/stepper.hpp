#ifndef EISGLM_STEPPER_HPP
#define EISGLM_STEPPER_HPP

#include <deque>
#include <functional>

#include "eisglm/tableau.hpp"

namespace eisglm {

/// Autonomous system u' = F(u) together with the trajectory derivative
/// Fdot = dF/dt (for autonomous systems Fdot(u) = J_F(u) F(u)).
/// Jacobians are optional; the implicit stage solver falls back to central
/// finite differences when they are absent. `exact`, when given, is used
/// for stage startup and by tests.
struct OdeProblem {
    int dim = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> f;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> fdot;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac_f;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac_fdot;
    std::function<Eigen::VectorXd(double)> exact;
};

/// One multi-value solution vector: column j approximates u(t_base + c_j dt).
struct StageVector {
    long n = 0;          //< step index
    double t_base = 0;   //< t_n
    double dt = 0;
    Eigen::MatrixXd values; //< dim x s

    Eigen::VectorXd block(int j) const { return values.col(j); }
};

/// Ring buffer of the most recent stage vectors, feeding the post-processor.
class SolutionWindow {
public:
    explicit SolutionWindow(int capacity) : capacity_(capacity) {}

    void push(StageVector v);
    int capacity() const { return capacity_; }
    int size() const { return static_cast<int>(entries_.size()); }
    const StageVector& operator[](int i) const { return entries_[i]; }
    const StageVector& back() const { return entries_.back(); }

    /// Concatenated stage times of the retained steps, oldest first.
    Eigen::VectorXd time_grid(const Eigen::VectorXd& c) const;

private:
    int capacity_;
    std::deque<StageVector> entries_;
};

struct NewtonConfig {
    double tol = 1e-13;
    int max_iter = 25;
};

/// Builds V^0. Block 1 is u0 exactly; further blocks come from
/// problem.exact when available, otherwise from a refined two-derivative
/// Taylor integration whose accumulated local error is kept below the
/// method's asymptotic error (and above extended-precision roundoff).
StageVector initialize(const OdeProblem& problem, const MethodTableau& t,
                       double t0, const Eigen::VectorXd& u0, double dt);

/// One step of an explicit method (strictly lower triangular R, Rhat),
/// stages computed in increasing order with F/Fdot cached per stage.
StageVector step_explicit(const OdeProblem& problem, const MethodTableau& t,
                          const StageVector& v);

/// One step of an implicit method with diagonal R, Rhat: each stage is an
/// independent d-dimensional Newton solve seeded by a Taylor predictor.
StageVector step_implicit(const OdeProblem& problem, const MethodTableau& t,
                          const StageVector& v, const NewtonConfig& cfg = {});

struct IntegrationResult {
    StageVector final;
    SolutionWindow window;
};

/// Drives initialize + N steps to Tf ((Tf - t0)/dt must be integral),
/// retaining the last window_m stage vectors.
IntegrationResult integrate(const OdeProblem& problem, const MethodTableau& t,
                            double t0, const Eigen::VectorXd& u0, double Tf,
                            double dt, int window_m,
                            const NewtonConfig& cfg = {});

} // namespace eisglm

#endif
