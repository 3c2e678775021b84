#include "eisglm/stepper.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace eisglm {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using VectorXld = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

void check_finite(const MatrixXd& m, const MethodTableau& t, long n) {
    if (!m.allFinite()) {
        std::ostringstream msg;
        msg << t.name << ": non-finite stage value at step " << n;
        throw NonFinite(msg.str());
    }
}

// Two-derivative Taylor integration over `span`, accumulated in extended
// precision; the callbacks stay in double. Substep count is the smallest
// power of two keeping the accumulated local error span^3/N^2 below
// `target`.
VectorXd taylor_startup(const OdeProblem& problem, const VectorXd& u0,
                        double span, double target) {
    long N = 1;
    const double s3 = span * span * span;
    while (s3 / (static_cast<double>(N) * static_cast<double>(N)) > target) {
        N <<= 1;
        if (N > (1L << 24))
            throw StartupFailure("startup would need more than 2^24 substeps "
                                 "(span " + std::to_string(span) + ")");
    }
    VectorXld u = u0.cast<long double>();
    const long double h = static_cast<long double>(span) / N;
    const long double half_h2 = 0.5L * h * h;
    for (long k = 0; k < N; ++k) {
        const VectorXd ud = u.cast<double>();
        u += h * problem.f(ud).cast<long double>() +
             half_h2 * problem.fdot(ud).cast<long double>();
    }
    return u.cast<double>();
}

MatrixXd fd_jacobian(const std::function<VectorXd(const VectorXd&)>& fn,
                     const VectorXd& v) {
    const int d = static_cast<int>(v.size());
    const double eps =
        std::sqrt(std::numeric_limits<double>::epsilon()) *
        (1.0 + v.lpNorm<Eigen::Infinity>());
    MatrixXd jac(d, d);
    VectorXd vp = v, vm = v;
    for (int k = 0; k < d; ++k) {
        vp(k) += eps;
        vm(k) -= eps;
        jac.col(k) = (fn(vp) - fn(vm)) / (2.0 * eps);
        vp(k) = v(k);
        vm(k) = v(k);
    }
    return jac;
}

// Explicit (previous-step) contribution D V + dt A F(V) + dt^2 Ahat Fdot(V),
// one row of coefficients per new stage: returns a dim x s matrix B with
// column i = b_i.
MatrixXd explicit_part(const OdeProblem& problem, const MethodTableau& t,
                       const StageVector& v, MatrixXd& f_old,
                       MatrixXd& fdot_old) {
    const int d = problem.dim;
    f_old.resize(d, t.s);
    fdot_old.resize(d, t.s);
    for (int j = 0; j < t.s; ++j) {
        f_old.col(j) = problem.f(v.values.col(j));
        fdot_old.col(j) = problem.fdot(v.values.col(j));
    }
    const double dt = v.dt;
    return v.values * t.D.transpose() + dt * (f_old * t.A.transpose()) +
           dt * dt * (fdot_old * t.Ahat.transpose());
}

} // namespace

void SolutionWindow::push(StageVector v) {
    if (!entries_.empty() && v.n != entries_.back().n + 1)
        throw InvalidWindow("window entries must have consecutive step indices");
    entries_.push_back(std::move(v));
    if (static_cast<int>(entries_.size()) > capacity_) entries_.pop_front();
}

Eigen::VectorXd SolutionWindow::time_grid(const Eigen::VectorXd& c) const {
    const int s = static_cast<int>(c.size());
    Eigen::VectorXd grid(size() * s);
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < s; ++j)
            grid(i * s + j) = entries_[i].t_base + c(j) * entries_[i].dt;
    return grid;
}

StageVector initialize(const OdeProblem& problem, const MethodTableau& t,
                       double t0, const Eigen::VectorXd& u0, double dt) {
    if (dt <= 0) throw Error("initialize: dt must be positive");
    StageVector v;
    v.n = 0;
    v.t_base = t0;
    v.dt = dt;
    v.values.resize(problem.dim, t.s);
    v.values.col(0) = u0;
    if (t.s == 1) return v;
    if (problem.exact) {
        for (int j = 1; j < t.s; ++j)
            v.values.col(j) = problem.exact(t0 + t.c(j) * dt);
        return v;
    }
    // Error budget: the method's asymptotic error with a safety factor,
    // floored at extended-precision roundoff where dt^{P+2} is
    // sub-representable.
    const double floor =
        1e-18 * std::max(1.0, u0.lpNorm<Eigen::Infinity>());
    const double target =
        std::max(std::pow(dt, t.P + 2) / 1024.0, floor);
    for (int j = 1; j < t.s; ++j) {
        const double span = t.c(j) * dt;
        v.values.col(j) =
            span == 0.0 ? u0 : taylor_startup(problem, u0, span, target);
    }
    return v;
}

StageVector step_explicit(const OdeProblem& problem, const MethodTableau& t,
                          const StageVector& v) {
    if (!t.is_explicit())
        throw InvariantViolation(t.name + ": step_explicit requires an "
                                          "explicit family");
    MatrixXd f_old, fdot_old;
    StageVector next;
    next.n = v.n + 1;
    next.dt = v.dt;
    next.t_base = v.t_base + v.dt;
    next.values = explicit_part(problem, t, v, f_old, fdot_old);

    const double dt = v.dt;
    MatrixXd f_new(problem.dim, t.s), fdot_new(problem.dim, t.s);
    for (int i = 0; i < t.s; ++i) {
        for (int j = 0; j < i; ++j) {
            if (t.R(i, j) != 0.0)
                next.values.col(i) += dt * t.R(i, j) * f_new.col(j);
            if (t.Rhat(i, j) != 0.0)
                next.values.col(i) += dt * dt * t.Rhat(i, j) * fdot_new.col(j);
        }
        f_new.col(i) = problem.f(next.values.col(i));
        fdot_new.col(i) = problem.fdot(next.values.col(i));
    }
    check_finite(next.values, t, next.n);
    return next;
}

StageVector step_implicit(const OdeProblem& problem, const MethodTableau& t,
                          const StageVector& v, const NewtonConfig& cfg) {
    for (int i = 0; i < t.s; ++i)
        for (int j = 0; j < t.s; ++j)
            if (i != j && (t.R(i, j) != 0.0 || t.Rhat(i, j) != 0.0))
                throw InvariantViolation(
                    t.name + ": step_implicit requires diagonal R, Rhat");

    MatrixXd f_old, fdot_old;
    const MatrixXd b = explicit_part(problem, t, v, f_old, fdot_old);
    const double dt = v.dt;
    const int d = problem.dim;

    StageVector next;
    next.n = v.n + 1;
    next.dt = dt;
    next.t_base = v.t_base + dt;
    next.values.resize(d, t.s);

    for (int i = 0; i < t.s; ++i) {
        const double r = t.R(i, i);
        const double rh = t.Rhat(i, i);
        const VectorXd bi = b.col(i);
        // Taylor predictor from the old stage value
        VectorXd x = v.values.col(i) + dt * f_old.col(i) +
                     0.5 * dt * dt * fdot_old.col(i);
        bool converged = false;
        double resid = std::numeric_limits<double>::infinity();
        for (int it = 0; it <= cfg.max_iter; ++it) {
            const VectorXd rf = dt * r * problem.f(x);
            const VectorXd rfd = dt * dt * rh * problem.fdot(x);
            const VectorXd g = x - rf - rfd - bi;
            // backward-error scale: the residual cannot beat roundoff of
            // the largest participating term
            const double scale = std::max(
                {1.0, x.lpNorm<Eigen::Infinity>(), bi.lpNorm<Eigen::Infinity>(),
                 rf.lpNorm<Eigen::Infinity>(), rfd.lpNorm<Eigen::Infinity>()});
            resid = g.lpNorm<Eigen::Infinity>();
            if (resid <= cfg.tol * scale) {
                converged = true;
                break;
            }
            if (it == cfg.max_iter) break;
            const MatrixXd jf =
                problem.jac_f ? problem.jac_f(x) : fd_jacobian(problem.f, x);
            const MatrixXd jfd = problem.jac_fdot
                                     ? problem.jac_fdot(x)
                                     : fd_jacobian(problem.fdot, x);
            const MatrixXd jac =
                MatrixXd::Identity(d, d) - dt * r * jf - dt * dt * rh * jfd;
            Eigen::FullPivLU<MatrixXd> lu(jac);
            if (!lu.isInvertible())
                throw SingularJacobian(t.name + ": singular Newton matrix at "
                                                "stage " + std::to_string(i));
            x -= lu.solve(g);
            if (!x.allFinite())
                throw NonFinite(t.name + ": Newton iterate diverged to "
                                         "non-finite values");
        }
        if (!converged) {
            std::ostringstream msg;
            msg << t.name << ": Newton stalled at stage " << i << ", step "
                << next.n << " (residual " << resid << ")";
            throw NewtonDivergence(msg.str());
        }
        next.values.col(i) = x;
    }
    check_finite(next.values, t, next.n);
    return next;
}

IntegrationResult integrate(const OdeProblem& problem, const MethodTableau& t,
                            double t0, const Eigen::VectorXd& u0, double Tf,
                            double dt, int window_m, const NewtonConfig& cfg) {
    if (window_m < 1) throw InvalidWindow("window_m must be at least 1");
    const double nsteps_real = (Tf - t0) / dt;
    const long nsteps = std::lround(nsteps_real);
    if (std::abs(nsteps_real - static_cast<double>(nsteps)) > 1e-9)
        throw Error("integrate: (Tf - t0)/dt must be an integer");

    IntegrationResult result{initialize(problem, t, t0, u0, dt),
                             SolutionWindow(window_m)};
    result.window.push(result.final);
    for (long n = 0; n < nsteps; ++n) {
        result.final = t.is_explicit()
                           ? step_explicit(problem, t, result.final)
                           : step_implicit(problem, t, result.final, cfg);
        // keep the time grid exact at the final step
        result.final.t_base = t0 + static_cast<double>(n + 1) * dt;
        result.window.push(result.final);
    }
    return result;
}

} // namespace eisglm
