#ifndef EISGLM_TABLEAU_HPP
#define EISGLM_TABLEAU_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "eisglm/errors.hpp"

namespace eisglm {

enum class MethodKind { Eis, EisPlus };
enum class MethodFamily { Explicit, ExplicitSsp, Implicit };

std::string to_string(MethodKind kind);
std::string to_string(MethodFamily family);

/// Coefficients of a two-derivative general linear method
///
///   V^{n+1} = D V^n + dt A F(V^n) + dt^2 Ahat Fdot(V^n)
///           + dt R F(V^{n+1}) + dt^2 Rhat Fdot(V^{n+1})
///
/// The abscissa vector c is recovered from the first-order condition
/// (it is not part of the published coefficient sets); stored_tau, when
/// present, holds the published leading truncation-error vector in the
/// publication's normalization, which is p! times tau_{p+1} as returned
/// by compute_tau.
struct MethodTableau {
    std::string name;
    int s = 0;                //< stage count
    Eigen::MatrixXd D;        //< step-transfer coefficients (rank one, row sum 1)
    Eigen::MatrixXd A;        //< previous-step F weights
    Eigen::MatrixXd Ahat;     //< previous-step Fdot weights
    Eigen::MatrixXd R;        //< current-step F weights
    Eigen::MatrixXd Rhat;     //< current-step Fdot weights
    Eigen::VectorXd c;        //< abscissas, c(0) = 0, non-decreasing
    int p = 0;                //< truncation-error order (tau_j = 0 for j <= p)
    int P = 0;                //< delivered order (p+1 for EIS, p+2 for EIS+)
    MethodKind kind = MethodKind::Eis;
    MethodFamily family = MethodFamily::Explicit;
    std::optional<double> ssp_coefficient;
    std::optional<Eigen::VectorXd> stored_tau;

    bool is_explicit() const { return family != MethodFamily::Implicit; }
};

struct TauVector {
    int j = 0;
    Eigen::VectorXd values;
};

/// Solves (I - D) c = (A + R) 1 - 1 for the abscissas with c(0) = 0.
/// The system is rank-deficient by exactly one (D has row sum one), so the
/// first unknown is pinned and the rest solved by least squares.
/// Throws NonUniqueAbscissas if the reduced system is rank deficient and
/// InconsistentAbscissas if the residual exceeds 1e-9.
Eigen::VectorXd recover_abscissas(const Eigen::MatrixXd& D,
                                  const Eigen::MatrixXd& A,
                                  const Eigen::MatrixXd& R);

/// Truncation-error vector tau_j. j = 0 gives (D - I)1; j >= 1 gives
///   1/(j-1)! [ D(c-1)^j / j + A(c-1)^{j-1} + (j-1) Ahat (c-1)^{j-2}
///              + R c^{j-1} + (j-1) Rhat c^{j-2} - c^j / j ]
/// with componentwise powers and 0^0 = 1.
TauVector compute_tau(const MethodTableau& t, int j);

struct OrderReport {
    int p_observed = 0;
    std::vector<std::pair<int, double>> residuals; //< (j, max-norm of tau_j)
};

/// Largest p_observed with max|tau_j| <= 1e-9 for all j <= p_observed,
/// plus the residual table up to p_observed + 2.
/// Throws OrderShortfall if p_observed < t.p.
OrderReport verify_order(const MethodTableau& t);

struct EisReport {
    double con1 = 0; //< max-norm of D tau_{p+1}
    double con2 = 0; //< max-norm of D tau_{p+2}
    double con3 = 0; //< max-norm of D (A + R) tau_{p+1}
};

/// Error-inhibiting condition residuals. EIS methods require con1 <= 1e-9;
/// EIS+ methods require all three. Throws EisViolation naming what failed.
EisReport verify_eis(const MethodTableau& t);

/// Checks every structural invariant (consistency, rank-one D, abscissa
/// ordering, triangular/diagonal R and Rhat per family, stored_tau match).
/// Throws InvariantViolation naming the first failure.
void validate(const MethodTableau& t);

/// The ten built-in methods with coefficients as published.
const std::vector<MethodTableau>& registry();

/// Registry lookup by exact name, e.g. "eEIS+(3,7)_2".
/// Throws UnknownMethod if absent.
const MethodTableau& find_method(const std::string& name);

/// Parses the line-oriented coefficient file format; recomputes c and
/// validates all invariants.
MethodTableau load_tableau(const std::string& text);

/// Inverse of load_tableau; round-trips bit-exactly.
std::string save_tableau(const MethodTableau& t);

} // namespace eisglm

#endif
