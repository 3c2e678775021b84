#include "eisglm/postproc.hpp"

#include <cmath>
#include <sstream>

namespace eisglm {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double inf_norm(const MatrixXd& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

} // namespace

PostFilter build_filter(const MethodTableau& t, const VectorXd& t_grid,
                        int m) {
    const int ms = m * t.s;
    if (ms < t.p + 3) {
        std::ostringstream msg;
        msg << t.name << ": window m*s = " << ms << " below p+3 = " << t.p + 3;
        throw InvalidWindow(msg.str());
    }
    if (t_grid.size() != ms)
        throw DimensionMismatch("time grid length does not match m*s");

    const double lo = t_grid.minCoeff();
    const double hi = t_grid.maxCoeff();
    const double span = hi - lo;
    for (int i = 1; i < ms; ++i)
        if (t_grid(i) - t_grid(i - 1) <= 1e-14 * std::max(1.0, span))
            throw SingularT("coincident grid points at index " +
                            std::to_string(i) +
                            " make the Vandermonde matrix singular");

    // rescale times to [-1,1]; raw Vandermonde powers of t near Tf destroy
    // the conditioning and Phi does not depend on the affine basis
    const VectorXd xi =
        (2.0 * t_grid.array() - (lo + hi)) / span;

    PostFilter filter;
    filter.m = m;
    filter.ms = ms;
    filter.t_grid = t_grid;
    filter.T.resize(ms, ms);

    const VectorXd tau = compute_tau(t, t.p + 1).values;
    for (int i = 0; i < ms; ++i) filter.T(i, 0) = tau(i % t.s);
    filter.T.col(ms - 1).setOnes();
    for (int k = ms - 2; k >= 1; --k)
        filter.T.col(k) = filter.T.col(k + 1).cwiseProduct(xi);

    Eigen::PartialPivLU<MatrixXd> lu(filter.T);
    const VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
    if (diag.minCoeff() < 1e-14 * diag.maxCoeff())
        throw SingularT(t.name + ": T is numerically singular (pivot ratio " +
                        std::to_string(diag.minCoeff() / diag.maxCoeff()) +
                        ")");
    const MatrixXd t_inv = lu.solve(MatrixXd::Identity(ms, ms));

    // Phi = T diag(0,1,...,1) T^{-1} = I - T e_0 e_0^T T^{-1}
    filter.Phi = MatrixXd::Identity(ms, ms) -
                 filter.T.col(0) * t_inv.row(0);
    filter.cond_T = inf_norm(filter.T) * inf_norm(t_inv);
    filter.norm_Phi = inf_norm(filter.Phi);
    filter.ill_conditioned = filter.cond_T > 1e12 || filter.norm_Phi > 1e4;
    return filter;
}

FilterResult apply_filter(const PostFilter& filter, const MethodTableau& t,
                          const SolutionWindow& window) {
    if (window.size() != filter.m)
        throw DimensionMismatch("window holds " +
                                std::to_string(window.size()) +
                                " steps, filter expects " +
                                std::to_string(filter.m));
    const VectorXd grid = window.time_grid(t.c);
    const double scale = std::max(1.0, filter.t_grid.cwiseAbs().maxCoeff());
    if ((grid - filter.t_grid).lpNorm<Eigen::Infinity>() > 1e-9 * scale)
        throw DimensionMismatch("window time grid differs from the filter's");

    const int d = static_cast<int>(window[0].values.rows());
    MatrixXd stacked(filter.ms, d);
    for (int i = 0; i < filter.m; ++i)
        stacked.middleRows(i * t.s, t.s) = window[i].values.transpose();

    FilterResult result;
    result.filtered = filter.Phi * stacked;
    result.value_at_tf = result.filtered.row((filter.m - 1) * t.s);
    return result;
}

FilterResult postprocess(const MethodTableau& t, const SolutionWindow& window) {
    const PostFilter filter =
        build_filter(t, window.time_grid(t.c), window.size());
    return apply_filter(filter, t, window);
}

int default_window(const MethodTableau& t) {
    const int needed = (t.p + 3 + t.s - 1) / t.s;
    return std::max(3, needed);
}

} // namespace eisglm
