#include "eisglm/stability.hpp"

#include <cmath>
#include <limits>

#include "eisglm/parallel.hpp"

namespace eisglm {

namespace {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;

constexpr double kStableTol = 1e-12; //< rho = 1 at z = 0 must classify stable
constexpr double kAStableTol = 1e-9;

} // namespace

MatrixXcd amplification(const MethodTableau& t, Complex z) {
    const Complex z2 = z * z;
    const MatrixXcd num =
        t.D.cast<Complex>() + z * t.A.cast<Complex>() + z2 * t.Ahat.cast<Complex>();
    const MatrixXcd den = MatrixXcd::Identity(t.s, t.s) -
                          z * t.R.cast<Complex>() - z2 * t.Rhat.cast<Complex>();
    Eigen::FullPivLU<MatrixXcd> lu(den);
    const Eigen::VectorXd piv = lu.matrixLU().diagonal().cwiseAbs();
    if (piv.minCoeff() < 1e-14 * piv.maxCoeff())
        throw SingularAmplification(t.name + ": I - zR - z^2 Rhat singular at z = (" +
                                    std::to_string(z.real()) + ", " +
                                    std::to_string(z.imag()) + ")");
    return lu.solve(num);
}

double spectral_radius(const MethodTableau& t, Complex z) {
    const Eigen::ComplexEigenSolver<MatrixXcd> eig(amplification(t, z), false);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double StabilityGrid::re(int ix) const {
    return spec.nx == 1 ? spec.re_min
                        : spec.re_min + (spec.re_max - spec.re_min) * ix /
                              (spec.nx - 1);
}

double StabilityGrid::im(int iy) const {
    return spec.ny == 1 ? spec.im_min
                        : spec.im_min + (spec.im_max - spec.im_min) * iy /
                              (spec.ny - 1);
}

StabilityGrid scan_region(const MethodTableau& t, const GridSpec& spec) {
    if (spec.nx < 2 || spec.ny < 2)
        throw Error("scan_region: nx, ny must be at least 2");
    StabilityGrid grid;
    grid.spec = spec;
    grid.rho.assign(static_cast<std::size_t>(spec.nx) * spec.ny, 0.0);
    grid.stable.assign(grid.rho.size(), 0);
    parallel_for(spec.ny, [&](int iy) {
        for (int ix = 0; ix < spec.nx; ++ix) {
            const Complex z(grid.re(ix), grid.im(iy));
            double r;
            try {
                r = spectral_radius(t, z);
            } catch (const SingularAmplification&) {
                r = std::numeric_limits<double>::infinity();
            }
            const auto idx = static_cast<std::size_t>(iy) * spec.nx + ix;
            grid.rho[idx] = r;
            grid.stable[idx] = r <= 1.0 + kStableTol ? 1 : 0;
        }
    });
    return grid;
}

AStabilityReport check_a_stability(const MethodTableau& t, int n_radial,
                                   int n_angle, int n_imag) {
    std::vector<Complex> samples;
    samples.reserve(static_cast<std::size_t>(n_radial) * n_angle + n_imag);
    const double log_lo = -6.0, log_hi = 6.0;
    for (int i = 0; i < n_radial; ++i) {
        const double r =
            std::pow(10.0, log_lo + (log_hi - log_lo) * i / (n_radial - 1));
        for (int k = 0; k < n_angle; ++k) {
            const double theta =
                M_PI / 2 + M_PI * static_cast<double>(k) / (n_angle - 1);
            samples.emplace_back(r * std::cos(theta), r * std::sin(theta));
        }
    }
    for (int i = 0; i < n_imag / 2; ++i) {
        const double y = std::pow(
            10.0, log_lo + (log_hi - log_lo) * i / (n_imag / 2 - 1));
        samples.emplace_back(0.0, y);
        samples.emplace_back(0.0, -y);
    }

    const int n = static_cast<int>(samples.size());
    std::vector<double> rho(n);
    parallel_for(n, [&](int i) {
        try {
            rho[i] = spectral_radius(t, samples[i]);
        } catch (const SingularAmplification&) {
            rho[i] = std::numeric_limits<double>::infinity();
        }
    });

    AStabilityReport report;
    report.samples = samples.size();
    for (int i = 0; i < n; ++i) {
        if (rho[i] > report.max_rho) {
            report.max_rho = rho[i];
            report.argmax_z = samples[i];
        }
        if (rho[i] > 1.0 + kAStableTol)
            report.violations.push_back({samples[i], rho[i]});
    }
    return report;
}

} // namespace eisglm
