#include <catch2/catch_amalgamated.hpp>

#include <tracksyn/bernstein.hpp>

#include "test_util.hpp"

#include <random>

using namespace tracksyn;

TEST_CASE("bernstein basis endpoint and symmetry values") {
    const Vector b20 = bernstein_basis(2, 0.0);
    CHECK(b20[0] == 1.0);
    CHECK(b20[1] == 0.0);
    CHECK(b20[2] == 0.0);

    const Vector b1 = bernstein_basis(1, 0.5);
    CHECK(b1[0] == Catch::Approx(0.5));
    CHECK(b1[1] == Catch::Approx(0.5));

    const Vector b3 = bernstein_basis(3, 0.5);
    CHECK(b3[0] == Catch::Approx(0.125));
    CHECK(b3[1] == Catch::Approx(0.375));
    CHECK(b3[2] == Catch::Approx(0.375));
    CHECK(b3[3] == Catch::Approx(0.125));

    CHECK(bernstein_basis(0, 0.3).size() == 1);
    CHECK(bernstein_basis(0, 0.3)[0] == 1.0);
}

TEST_CASE("bernstein basis rejects bad arguments") {
    CHECK_THROWS_AS(bernstein_basis(3, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(bernstein_basis(3, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(bernstein_basis(-1, 0.5), std::invalid_argument);
}

TEST_CASE("partition of unity up to degree 10") {
    std::mt19937_64 rng(11);
    for (int n = 0; n <= 10; ++n) {
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const double t = testutil::uniform(rng, 0.0, 1.0);
            worst = std::max(worst, std::abs(bernstein_basis(n, t).sum() - 1.0));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("basis transform for n = 1") {
    const Matrix D = bernstein_to_monomial(1);
    Matrix expect(2, 2);
    expect << 1, -1, 0, 1;
    CHECK((D - expect).norm() == 0.0);
}

TEST_CASE("cubic coefficient relations hold exactly for integer points") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> pick(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix P(1, 4);
        for (int i = 0; i < 4; ++i) P(0, i) = pick(rng);
        const Matrix A = coeffs_from_control_points(ControlPoints(P));
        CHECK(A(0, 3) == P(0, 3) - 3 * P(0, 2) + 3 * P(0, 1) - P(0, 0));
        CHECK(A(0, 2) == 3 * P(0, 2) - 6 * P(0, 1) + 3 * P(0, 0));
        CHECK(A(0, 1) == 3 * P(0, 1) - 3 * P(0, 0));
        CHECK(A(0, 0) == P(0, 0));
    }
}

TEST_CASE("constant control points give a constant polynomial") {
    for (int n : {1, 3, 6}) {
        Matrix P = Matrix::Constant(2, n + 1, 2.5);
        const Matrix A = coeffs_from_control_points(ControlPoints(P));
        CHECK(A(0, 0) == Catch::Approx(2.5));
        CHECK(A(1, 0) == Catch::Approx(2.5));
        CHECK(A.rightCols(n).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("coefficients of p(t) = t") {
    Matrix P(1, 2);
    P << 0, 1;
    const Matrix A = coeffs_from_control_points(ControlPoints(P));
    CHECK(A(0, 0) == 0.0);
    CHECK(A(0, 1) == 1.0);
}

TEST_CASE("coefficient round trip") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix P = testutil::random_matrix(rng, 3, 6, -5.0, 5.0);
        const Matrix A = coeffs_from_control_points(ControlPoints(P));
        const Matrix back = A * monomial_to_bernstein(5);
        CHECK((back - P).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("derivative matrices") {
    const Matrix H11 = derivative_matrix(1, 1);
    CHECK(H11.rows() == 2);
    CHECK(H11.cols() == 1);
    CHECK(H11(0, 0) == -1.0);
    CHECK(H11(1, 0) == 1.0);

    Matrix expect(4, 3);
    expect << -3, 0, 0, 3, -3, 0, 0, 3, -3, 0, 0, 3;
    CHECK((derivative_matrix(3, 1) - expect).norm() == 0.0);

    CHECK_THROWS_AS(derivative_matrix(3, 4), std::invalid_argument);
    CHECK((derivative_matrix(4, 0) - Matrix::Identity(5, 5)).norm() == 0.0);
}

TEST_CASE("third derivative of a cubic is 6 a3") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix P = testutil::random_matrix(rng, 2, 4, -4.0, 4.0);
        const Matrix V3 = P * derivative_matrix(3, 3);
        const Matrix A = coeffs_from_control_points(ControlPoints(P));
        REQUIRE(V3.cols() == 1);
        CHECK((V3.col(0) - 6.0 * A.col(3)).norm() <= 1e-12);
    }
}

TEST_CASE("derivative matrices reproduce basis derivatives") {
    std::mt19937_64 rng(29);
    for (int n : {2, 3, 5}) {
        const Matrix H1 = derivative_matrix(n, 1);
        const Matrix H2 = derivative_matrix(n, 2);
        for (int k = 0; k < 5; ++k) {
            const double t = testutil::uniform(rng, 0.05, 0.95);
            const double dh = 1e-5;
            const Vector lo = bernstein_basis(n, t - dh);
            const Vector hi = bernstein_basis(n, t + dh);
            const Vector fd1 = (hi - lo) / (2.0 * dh);
            CHECK((fd1 - H1 * bernstein_basis(n - 1, t)).cwiseAbs().maxCoeff() <= 2e-4);
            const Vector fd2 = (hi - 2.0 * bernstein_basis(n, t) + lo) / (dh * dh);
            CHECK((fd2 - H2 * bernstein_basis(n - 2, t)).cwiseAbs().maxCoeff() <= 2e-2);
        }
    }
}

TEST_CASE("eval endpoints and first derivative of the line") {
    std::mt19937_64 rng(31);
    const Matrix P = testutil::random_matrix(rng, 2, 4, -2.0, 2.0);
    const ControlPoints cp(P);
    CHECK((eval(cp, 0.0) - P.col(0)).norm() <= 1e-14);
    CHECK((eval(cp, 1.0) - P.col(3)).norm() <= 1e-14);

    Matrix line(1, 2);
    line << 0, 1;
    const ControlPoints lcp(line);
    for (double t : {0.0, 0.3, 0.77, 1.0})
        CHECK(eval(lcp, t, 1)[0] == Catch::Approx(1.0).margin(1e-13));

    CHECK_THROWS_AS(eval(cp, 1.2), std::invalid_argument);
    CHECK_THROWS_AS(eval(cp, 0.5, 7), std::invalid_argument);
}

TEST_CASE("hull bounds: V0 is P; line-segment velocity hull") {
    Matrix P(1, 4);
    P << 0, 0, 1, 1;
    const auto hb = hull_bounds(ControlPoints(P));
    CHECK((hb.vertices(0) - P).norm() == 0.0);
    Matrix expect(1, 3);
    expect << 0, 3, 0;
    CHECK((hb.vertices(1) - expect).norm() == 0.0);
}

TEST_CASE("sampled derivatives stay in their hulls (LP membership)") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const Matrix P = testutil::random_matrix(rng, 2, n + 1, -3.0, 3.0);
        const ControlPoints cp(P);
        const auto hb = hull_bounds(cp);
        const int q = static_cast<int>(rng() % (n + 1));
        const double t = testutil::uniform(rng, 0.0, 1.0);
        const double dist = testutil::hull_distance(hb.vertices(q), eval(cp, t, q));
        CHECK(dist <= 1e-8);
    }
}

TEST_CASE("basis change consistency") {
    std::mt19937_64 rng(41);
    const int n = 4;
    const Matrix P = testutil::random_matrix(rng, 3, n + 1, -2.0, 2.0);
    const Matrix A = P * bernstein_to_monomial(n);
    for (int k = 0; k < 200; ++k) {
        const double t = testutil::uniform(rng, 0.0, 1.0);
        Vector tv(n + 1);
        for (int i = 0; i <= n; ++i) tv[i] = std::pow(t, i);
        CHECK((P * bernstein_basis(n, t) - A * tv).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("first derivative matches central differences") {
    std::mt19937_64 rng(43);
    const Matrix P = testutil::random_matrix(rng, 2, 5, -3.0, 3.0);
    const ControlPoints cp(P);
    for (int k = 0; k < 100; ++k) {
        const double t = testutil::uniform(rng, 0.01, 0.99);
        const double dh = 1e-5;
        const Vector fd = (eval(cp, t + dh) - eval(cp, t - dh)) / (2.0 * dh);
        CHECK((fd - eval(cp, t, 1)).cwiseAbs().maxCoeff() <= 1e-5);
    }
}

TEST_CASE("closest parameter recovers on-curve points") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix P = testutil::random_matrix(rng, 2, 4, -3.0, 3.0);
        const ControlPoints cp(P);
        const double t = closest_parameter(cp, eval(cp, 0.3));
        CHECK(std::abs(t - 0.3) <= 1e-3);
    }
}

TEST_CASE("closest parameter clamps to the endpoint") {
    Matrix P(1, 2);
    P << 0, 1;
    Vector far(1);
    far << 2.0;
    CHECK(closest_parameter(ControlPoints(P), far) == Catch::Approx(1.0));
}

TEST_CASE("closest parameter matches a fine brute-force grid") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix P = testutil::random_matrix(rng, 2, 4, -3.0, 3.0);
        const ControlPoints cp(P);
        Vector pt(2);
        pt << testutil::uniform(rng, -4.0, 4.0), testutil::uniform(rng, -4.0, 4.0);
        const double t = closest_parameter(cp, pt);
        double bt = 0.0, bd = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 100000; ++i) {
            const double g = i * 1e-5;
            const double d = (eval(cp, g) - pt).squaredNorm();
            if (d < bd) {
                bd = d;
                bt = g;
            }
        }
        // accept either agreement with the oracle minimizer or an equally
        // good distance (multiple global minima can tie)
        const double dt = (eval(cp, t) - pt).norm();
        const double dref = std::sqrt(bd);
        CHECK((std::abs(t - bt) <= 1e-3 || dt <= dref + 1e-9));
    }
}

TEST_CASE("control points validate their entries") {
    Matrix bad(1, 2);
    bad << 0.0, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ControlPoints(bad), std::invalid_argument);
    Matrix c0(2, 1);
    c0 << 1.0, 2.0;
    CHECK(ControlPoints(c0).constant());
}
