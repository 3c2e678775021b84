#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "eisglm/tableau.hpp"

using namespace eisglm;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

double factorial(int n) {
    double f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

MethodTableau copy_of(const std::string& name) { return find_method(name); }

} // namespace

TEST_SUITE_BEGIN("tableau");

TEST_CASE("abscissa recovery: eSSP-EIS(2,3)_2 against the hand solution") {
    // Independent oracle: with c1 = 0 the reduced system is scalar,
    //   (1 - D_22) c2 = (A + R) row sums - 1, solved directly per row.
    const MethodTableau& t = find_method("eSSP-EIS(2,3)_2");
    const double rhs0 = (2.0 / 8.0 + 3.0 / 8.0) - 1.0;
    const double rhs1 = (2.0 / 8.0 + 3.0 / 8.0 + 2.0 / 3.0) - 1.0;
    const double c2_row0 = rhs0 / -(9.0 / 16.0);
    const double c2_row1 = rhs1 / (1.0 - 9.0 / 16.0);
    CHECK(c2_row0 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(c2_row1 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    const VectorXd c = recover_abscissas(t.D, t.A, t.R);
    CHECK(c(0) == 0.0);
    CHECK(c(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));

    // and tau_1 vanishes for the recovered c: D(c-1) + (A+R)1 - c = 0
    const VectorXd one = VectorXd::Ones(2);
    const VectorXd tau1 = t.D * (c - one) + (t.A + t.R) * one - c;
    CHECK(tau1.lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("abscissa recovery failure modes") {
    MatrixXd D(2, 2), A = MatrixXd::Zero(2, 2), R = MatrixXd::Zero(2, 2);
    D << 1, 0, 1, 0; // consistent, rank one, but tau_1 = 0 has no solution
    CHECK_THROWS_AS(recover_abscissas(D, A, R), InconsistentAbscissas);

    const MatrixXd I2 = MatrixXd::Identity(2, 2); // malformed: not rank one
    CHECK_THROWS_AS(recover_abscissas(I2, A, R), NonUniqueAbscissas);
}

TEST_CASE("tau_0 vanishes for every consistent method") {
    for (const auto& t : registry())
        CHECK(compute_tau(t, 0).values.lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("computed tau matches the published vectors") {
    // the published vectors carry the (j-1)! normalization of the bracket
    for (const char* name :
         {"eEIS+(2,5)_2", "eEIS+(2,6)_2", "eEIS+(3,7)_2", "eEIS+(4,8)_2",
          "eSSP-EIS+(2,4)_2", "eSSP-EIS+(3,6)_2", "iEIS+(2,4)_2",
          "iEIS+(3,5)_2"}) {
        const MethodTableau& t = find_method(name);
        REQUIRE(t.stored_tau.has_value());
        const VectorXd computed =
            factorial(t.p) * compute_tau(t, t.p + 1).values;
        CHECK_MESSAGE(
            (computed - *t.stored_tau).lpNorm<Eigen::Infinity>() < 1e-9,
            name);
    }
}

TEST_CASE("eEIS+(4,8)_2 satisfies tau_j = 0 through j = 6") {
    const MethodTableau& t = find_method("eEIS+(4,8)_2");
    for (int j = 0; j <= 6; ++j)
        CHECK(compute_tau(t, j).values.lpNorm<Eigen::Infinity>() < 1e-9);
    CHECK(compute_tau(t, 7).values.lpNorm<Eigen::Infinity>() > 1e-9);
}

TEST_CASE("compute_tau is linear in each coefficient matrix") {
    MethodTableau t = copy_of("eEIS+(3,7)_2");
    MethodTableau t2 = t, t0 = t;
    t2.A *= 2.0;
    t0.A.setZero();
    for (int j = 1; j <= 7; ++j) {
        const VectorXd base = compute_tau(t, j).values;
        const VectorXd doubled = compute_tau(t2, j).values;
        const VectorXd zeroed = compute_tau(t0, j).values;
        // the A-contribution scales: tau(2A) - tau(0) = 2 (tau(A) - tau(0))
        const VectorXd lhs = doubled - zeroed;
        const VectorXd rhs = 2.0 * (base - zeroed);
        CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <
              1e-12 * (1.0 + rhs.lpNorm<Eigen::Infinity>()));
    }
}

TEST_CASE("verify_order reports the declared orders") {
    CHECK(verify_order(find_method("eSSP-EIS(2,3)_2")).p_observed == 2);
    CHECK(verify_order(find_method("iEIS+(2,4)_2")).p_observed == 2);
    CHECK(verify_order(find_method("eEIS+(4,8)_2")).p_observed == 6);

    MethodTableau bad = copy_of("eEIS(2,3)_2");
    bad.A(0, 0) += 1e-3;
    CHECK_THROWS_AS(verify_order(bad), OrderShortfall);
}

TEST_CASE("verify_eis distinguishes EIS from EIS+") {
    const EisReport eis = verify_eis(find_method("eEIS(2,3)_2"));
    CHECK(eis.con1 <= 1e-9);
    CHECK(eis.con2 > 1e-9); // reported but not required for plain EIS

    const EisReport plus = verify_eis(find_method("eEIS+(3,7)_2"));
    CHECK(plus.con1 <= 1e-9);
    CHECK(plus.con2 <= 1e-9);
    CHECK(plus.con3 <= 1e-9);

    // declaring an EIS method as EIS+ trips conditions 2 and 3
    MethodTableau fake = copy_of("eEIS(2,3)_2");
    fake.kind = MethodKind::EisPlus;
    fake.P = fake.p + 2;
    CHECK_THROWS_AS(verify_eis(fake), EisViolation);

    // D 1 = 1, so an error direction along 1 cannot be inhibited
    const MethodTableau& t = find_method("eSSP-EIS(2,3)_2");
    CHECK((t.D * VectorXd::Ones(2)).lpNorm<Eigen::Infinity>() ==
          doctest::Approx(1.0));
}

TEST_CASE("registry: ten methods, all verified") {
    const auto& reg = registry();
    REQUIRE(reg.size() == 10);

    const MethodTableau& e48 = find_method("eEIS+(4,8)_2");
    CHECK(e48.D(0, 0) == 1.126765222628176);
    CHECK(e48.D(0, 1) == 0.808129178515260);
    CHECK(e48.D(0, 2) == -0.107647150078402);
    CHECK(e48.D(0, 3) == -0.827247251065033);

    for (const auto& t : reg) {
        CAPTURE(t.name);
        CHECK_NOTHROW(validate(t));
        CHECK(verify_order(t).p_observed >= t.p);
        CHECK_NOTHROW(verify_eis(t));
        CHECK((t.D * VectorXd::Ones(t.s) - VectorXd::Ones(t.s))
                  .lpNorm<Eigen::Infinity>() < 1e-12);
    }
}

TEST_CASE("zero-stability: eigenvalues of D are {1, 0, ..., 0}") {
    for (const auto& t : registry()) {
        Eigen::VectorXcd eig =
            Eigen::EigenSolver<MatrixXd>(t.D, false).eigenvalues();
        std::vector<double> mags(t.s);
        for (int i = 0; i < t.s; ++i) mags[i] = std::abs(eig(i));
        std::sort(mags.begin(), mags.end());
        CHECK(std::abs(mags.back() - 1.0) < 1e-9);
        for (int i = 0; i + 1 < t.s; ++i) CHECK(mags[i] < 1e-9);
    }
}

TEST_CASE("validate rejects structural breakage") {
    MethodTableau t = copy_of("eEIS+(2,5)_2");
    SUBCASE("broken consistency") {
        t.D(0, 0) += 1e-6;
        CHECK_THROWS_AS(validate(t), InvariantViolation);
    }
    SUBCASE("rank-one violated") {
        t.D(1, 0) += 1e-6;
        t.D(1, 1) -= 1e-6; // row sums stay 1
        CHECK_THROWS_AS(validate(t), InvariantViolation);
    }
    SUBCASE("upper triangular R entry on an explicit method") {
        t.R(0, 1) = 0.1;
        CHECK_THROWS_AS(validate(t), InvariantViolation);
    }
    SUBCASE("stored tau mismatch") {
        (*t.stored_tau)(0) += 1e-6;
        CHECK_THROWS_AS(validate(t), InvariantViolation);
    }
}

TEST_SUITE_END();
