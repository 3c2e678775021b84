#ifndef EISGLM_POSTPROC_HPP
#define EISGLM_POSTPROC_HPP

#include "eisglm/stepper.hpp"
#include "eisglm/tableau.hpp"

namespace eisglm {

/// The post-processing projector Phi = T diag(0,1,...,1) T^{-1}, where T is
/// the flipped Vandermonde matrix on the window's time grid with its highest
/// power column replaced by the stacked tau_{p+1}. Phi annihilates the
/// leading error direction while fixing polynomials up to degree ms-2.
struct PostFilter {
    int m = 0;
    int ms = 0;
    Eigen::VectorXd t_grid;      //< original (unscaled) stage times
    Eigen::MatrixXd T;           //< in the rescaled basis
    Eigen::MatrixXd Phi;
    double cond_T = 0;           //< infinity-norm condition estimate of T
    double norm_Phi = 0;         //< infinity norm of Phi
    bool ill_conditioned = false;
};

/// Assembles the filter for a window of m steps. The time grid is rescaled
/// affinely to [-1,1] before exponentiation (Phi is invariant to that basis
/// change). Throws InvalidWindow if m*s < p+3 and SingularT on coincident
/// grid points or a numerically singular T; an ill-conditioned T only sets
/// the warning flag.
PostFilter build_filter(const MethodTableau& t, const Eigen::VectorXd& t_grid,
                        int m);

struct FilterResult {
    Eigen::MatrixXd filtered;    //< ms x dim, same layout as the stacked window
    Eigen::VectorXd value_at_tf; //< the c_1 = 0 entry of the final step
};

/// Applies Phi componentwise over the problem dimension. The window must
/// hold exactly m stage vectors on the filter's grid.
FilterResult apply_filter(const PostFilter& filter, const MethodTableau& t,
                          const SolutionWindow& window);

/// Convenience: build on the window's own grid, then apply.
FilterResult postprocess(const MethodTableau& t, const SolutionWindow& window);

/// Smallest window satisfying m*s >= p+3, but never below the published
/// experiment default of 3 (4 results for eEIS+(2,6)_2).
int default_window(const MethodTableau& t);

} // namespace eisglm

#endif
