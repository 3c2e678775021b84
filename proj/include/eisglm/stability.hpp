#ifndef EISGLM_STABILITY_HPP
#define EISGLM_STABILITY_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "eisglm/tableau.hpp"

namespace eisglm {

/// Amplification matrix of the method on y' = lambda y (so y'' = lambda^2 y):
///   M(z) = (I - z R - z^2 Rhat)^{-1} (D + z A + z^2 Ahat),  z = lambda dt.
/// Throws SingularAmplification at resolvent poles (implicit methods only;
/// for explicit families the left factor is unit lower triangular).
Eigen::MatrixXcd amplification(const MethodTableau& t, std::complex<double> z);

/// Spectral radius of M(z) by dense eigenvalue computation.
double spectral_radius(const MethodTableau& t, std::complex<double> z);

struct GridSpec {
    double re_min, re_max, im_min, im_max;
    int nx = 401;
    int ny = 401;

    /// The published plotting window (-s,s) x (-s,s).
    static GridSpec default_window(const MethodTableau& t, int n = 401) {
        const double s = static_cast<double>(t.s);
        return {-s, s, -s, s, n, n};
    }
};

struct StabilityGrid {
    GridSpec spec;
    std::vector<double> rho;     //< ny rows of nx values, row-major
    std::vector<std::uint8_t> stable; //< rho <= 1 + 1e-12

    double re(int ix) const;
    double im(int iy) const;
    const double& at(int ix, int iy) const { return rho[static_cast<std::size_t>(iy) * spec.nx + ix]; }
};

/// Samples rho over the rectangle; resolvent poles are recorded as
/// unstable with rho = +inf.
StabilityGrid scan_region(const MethodTableau& t, const GridSpec& spec);

struct AStabilitySample {
    std::complex<double> z;
    double rho;
};

struct AStabilityReport {
    double max_rho = 0;
    std::complex<double> argmax_z;
    std::size_t samples = 0;
    std::vector<AStabilitySample> violations; //< rho > 1 + 1e-9
    bool a_stable_evidence() const { return violations.empty(); }
};

/// Sampled A-stability evidence (not a proof): a log-radial grid over the
/// left half plane with radii in [1e-6, 1e6] plus log-spaced points on the
/// imaginary axis.
AStabilityReport check_a_stability(const MethodTableau& t, int n_radial = 200,
                                   int n_angle = 200, int n_imag = 400);

} // namespace eisglm

#endif
