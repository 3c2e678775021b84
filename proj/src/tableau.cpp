#include "eisglm/tableau.hpp"

#include <cmath>
#include <sstream>

namespace eisglm {

namespace {

constexpr double kOrderTol = 1e-9;
constexpr double kEisTol = 1e-9;
constexpr double kStructTol = 1e-12;

// componentwise v^j with 0^0 = 1
Eigen::VectorXd comp_pow(const Eigen::VectorXd& v, int j) {
    Eigen::VectorXd out = Eigen::VectorXd::Ones(v.size());
    for (int k = 0; k < j; ++k) out = out.cwiseProduct(v);
    return out;
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace

std::string to_string(MethodKind kind) {
    return kind == MethodKind::Eis ? "EIS" : "EIS+";
}

std::string to_string(MethodFamily family) {
    switch (family) {
    case MethodFamily::Explicit: return "explicit";
    case MethodFamily::ExplicitSsp: return "ssp";
    case MethodFamily::Implicit: return "implicit";
    }
    return "?";
}

Eigen::VectorXd recover_abscissas(const Eigen::MatrixXd& D,
                                  const Eigen::MatrixXd& A,
                                  const Eigen::MatrixXd& R) {
    const auto s = D.rows();
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(s);
    const Eigen::VectorXd rhs = (A + R) * one - one;
    // pin c(0) = 0, least-squares solve for the remaining s-1 unknowns
    const Eigen::MatrixXd M =
        (Eigen::MatrixXd::Identity(s, s) - D).rightCols(s - 1);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
    qr.setThreshold(1e-10);
    if (qr.rank() < s - 1)
        throw NonUniqueAbscissas("abscissa system has rank " +
                                 std::to_string(qr.rank()) + " < " +
                                 std::to_string(s - 1));
    const Eigen::VectorXd tail = qr.solve(rhs);
    const double resid = (M * tail - rhs).lpNorm<Eigen::Infinity>();
    if (resid > 1e-9)
        throw InconsistentAbscissas("tau_1 = 0 unsatisfiable, residual " +
                                    std::to_string(resid));
    Eigen::VectorXd c(s);
    c(0) = 0.0;
    c.tail(s - 1) = tail;
    return c;
}

TauVector compute_tau(const MethodTableau& t, int j) {
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(t.s);
    if (j == 0)
        return {0, t.D * one - one};
    const Eigen::VectorXd cm = t.c - one;
    Eigen::VectorXd v = t.D * comp_pow(cm, j) / j + t.A * comp_pow(cm, j - 1) +
                        t.R * comp_pow(t.c, j - 1) - comp_pow(t.c, j) / j;
    if (j >= 2)
        v += (j - 1) * (t.Ahat * comp_pow(cm, j - 2) +
                        t.Rhat * comp_pow(t.c, j - 2));
    return {j, v / factorial(j - 1)};
}

OrderReport verify_order(const MethodTableau& t) {
    OrderReport report;
    int j = 0;
    while (true) {
        const double r = compute_tau(t, j).values.lpNorm<Eigen::Infinity>();
        report.residuals.emplace_back(j, r);
        if (r > kOrderTol) break;
        ++j;
    }
    report.p_observed = j - 1;
    for (int k = j + 1; k <= report.p_observed + 2; ++k)
        report.residuals.emplace_back(
            k, compute_tau(t, k).values.lpNorm<Eigen::Infinity>());
    if (report.p_observed < t.p) {
        std::ostringstream msg;
        msg << t.name << ": observed order " << report.p_observed
            << " below declared p = " << t.p << " (|tau_"
            << report.p_observed + 1
            << "| = " << report.residuals[report.p_observed + 1].second << ")";
        throw OrderShortfall(msg.str());
    }
    return report;
}

EisReport verify_eis(const MethodTableau& t) {
    const Eigen::VectorXd tau1 = compute_tau(t, t.p + 1).values;
    const Eigen::VectorXd tau2 = compute_tau(t, t.p + 2).values;
    EisReport r;
    r.con1 = (t.D * tau1).lpNorm<Eigen::Infinity>();
    r.con2 = (t.D * tau2).lpNorm<Eigen::Infinity>();
    r.con3 = (t.D * (t.A + t.R) * tau1).lpNorm<Eigen::Infinity>();
    std::string failed;
    if (r.con1 > kEisTol) failed += " D*tau_{p+1}";
    if (t.kind == MethodKind::EisPlus) {
        if (r.con2 > kEisTol) failed += " D*tau_{p+2}";
        if (r.con3 > kEisTol) failed += " D*(A+R)*tau_{p+1}";
    }
    if (!failed.empty()) {
        std::ostringstream msg;
        msg << t.name << ": EIS condition(s) violated:" << failed << " (r1="
            << r.con1 << " r2=" << r.con2 << " r3=" << r.con3 << ")";
        throw EisViolation(msg.str());
    }
    return r;
}

void validate(const MethodTableau& t) {
    auto fail = [&](const std::string& what) {
        throw InvariantViolation(t.name + ": " + what);
    };
    if (t.s < 1) fail("stage count must be positive");
    const auto dims_ok = [&](const Eigen::MatrixXd& m) {
        return m.rows() == t.s && m.cols() == t.s;
    };
    if (!dims_ok(t.D) || !dims_ok(t.A) || !dims_ok(t.Ahat) || !dims_ok(t.R) ||
        !dims_ok(t.Rhat))
        fail("coefficient matrix dimensions do not match s");
    if (t.c.size() != t.s) fail("abscissa vector length does not match s");

    const Eigen::VectorXd one = Eigen::VectorXd::Ones(t.s);
    if ((t.D * one - one).lpNorm<Eigen::Infinity>() > kStructTol)
        fail("consistency: D row sums differ from 1 by more than 1e-12");
    for (int i = 0; i < t.s; ++i)
        for (int k = i + 1; k < t.s; ++k)
            if ((t.D.row(i) - t.D.row(k)).lpNorm<Eigen::Infinity>() >
                kStructTol)
                fail("zero-stability: D is not rank one (rows differ)");
    if (std::abs(t.c(0)) > kStructTol) fail("c(0) must be 0");
    for (int i = 1; i < t.s; ++i)
        if (t.c(i) < t.c(i - 1) - kStructTol) fail("abscissas must be non-decreasing");

    if (t.is_explicit()) {
        for (int i = 0; i < t.s; ++i)
            for (int k = i; k < t.s; ++k)
                if (t.R(i, k) != 0.0 || t.Rhat(i, k) != 0.0)
                    fail("explicit family requires strictly lower triangular R, Rhat");
    } else {
        for (int i = 0; i < t.s; ++i)
            for (int k = 0; k < t.s; ++k)
                if (i != k && (t.R(i, k) != 0.0 || t.Rhat(i, k) != 0.0))
                    fail("implicit family requires diagonal R, Rhat");
    }

    if (t.kind == MethodKind::EisPlus && t.P != t.p + 2)
        fail("EIS+ requires P = p + 2");
    if (t.kind == MethodKind::Eis && t.P != t.p + 1)
        fail("EIS requires P = p + 1");

    if (t.stored_tau) {
        if (t.stored_tau->size() != t.s) fail("stored tau length does not match s");
        // published vectors carry the (j-1)! = p! normalization
        const Eigen::VectorXd computed =
            factorial(t.p) * compute_tau(t, t.p + 1).values;
        if ((computed - *t.stored_tau).lpNorm<Eigen::Infinity>() > kOrderTol)
            fail("stored tau_{p+1} disagrees with computed value beyond 1e-9");
    }
}

} // namespace eisglm
