#include <catch2/catch_amalgamated.hpp>

#include <tracksyn/bernstein.hpp>
#include <tracksyn/reference.hpp>

#include "test_util.hpp"

#include <random>

using namespace tracksyn;

TEST_CASE("reference system for p(t) = t^2") {
    Matrix coeffs(1, 3);
    coeffs << 0, 0, 1;
    const auto ref = build_reference(coeffs);
    REQUIRE(ref.x0.size() == 3);
    CHECK(ref.x0[0] == 0.0);
    CHECK(ref.x0[1] == 0.0);
    CHECK(ref.x0[2] == 2.0);  // a_2 * 2!

    // integrate xdot = A_p x and compare the output with t^2
    Vector x = ref.x0;
    const double dt = 1e-3;
    auto f = [&](const Vector& v) { return Vector(ref.A_p * v); };
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        x = testutil::rk4_step(f, x, dt);
        const double t = (k + 1) * dt;
        worst = std::max(worst, std::abs(x[0] - t * t));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("constant reference stays constant") {
    Matrix coeffs(1, 1);
    coeffs << 4.2;
    const auto ref = build_reference(coeffs);
    CHECK(ref.x0[0] == 4.2);
    CHECK(ref.A_p.norm() == 0.0);
}

TEST_CASE("multi-axis systems are block diagonal with identical blocks") {
    Matrix coeffs(2, 4);
    coeffs << 1, 2, 3, 4, -1, 0, 2, 1;
    const auto ref = build_reference(coeffs);
    REQUIRE(ref.A_p.rows() == 8);
    const Matrix blk0 = ref.A_p.block(0, 0, 4, 4);
    const Matrix blk1 = ref.A_p.block(4, 4, 4, 4);
    CHECK((blk0 - blk1).norm() == 0.0);
    CHECK(ref.A_p.block(0, 4, 4, 4).norm() == 0.0);
    CHECK(ref.A_p.block(4, 0, 4, 4).norm() == 0.0);
    CHECK(ref.C_p(0, 0) == 1.0);
    CHECK(ref.C_p(1, 4) == 1.0);
    CHECK(ref.C_p.row(0).tail(7).norm() == 0.0);
}

TEST_CASE("initial conditions are a_i times i factorial") {
    Matrix coeffs(1, 4);
    coeffs << 2, -3, 5, 7;
    const auto ref = build_reference(coeffs);
    CHECK(ref.x0[0] == 2.0);
    CHECK(ref.x0[1] == -3.0);
    CHECK(ref.x0[2] == 10.0);
    CHECK(ref.x0[3] == 42.0);
}

TEST_CASE("nilpotency of the reference dynamics") {
    std::mt19937_64 rng(3);
    const Matrix P = testutil::random_matrix(rng, 2, 4, -3.0, 3.0);
    const auto ref = build_reference(coeffs_from_control_points(ControlPoints(P)));
    Matrix power = Matrix::Identity(8, 8);
    for (int i = 0; i < 4; ++i) power = (power * ref.A_p).eval();
    CHECK(power.norm() == 0.0);
}

TEST_CASE("reference state entries are the polynomial derivatives") {
    Matrix coeffs(1, 3);
    coeffs << 0, 0, 1;
    const auto ref = build_reference(coeffs);
    const auto cp = control_points_from_coeffs(coeffs);

    const Vector at0 = reference_state_at(ref, cp, 0.0);
    CHECK((at0 - ref.x0).cwiseAbs().maxCoeff() <= 1e-12);

    const Vector at = reference_state_at(ref, cp, 0.5);
    CHECK(at[0] == Catch::Approx(0.25).margin(1e-12));
    CHECK(at[1] == Catch::Approx(1.0).margin(1e-12));
    CHECK(at[2] == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("reference state matches nilpotent matrix-exponential propagation") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix P = testutil::random_matrix(rng, 2, 4, -4.0, 4.0);
        const ControlPoints cp(P);
        const auto ref = build_reference(coeffs_from_control_points(cp));
        const double t = testutil::uniform(rng, 0.0, 1.0);
        const Vector via_expm = testutil::nilpotent_expm(ref.A_p, t, 3) * ref.x0;
        const Vector direct = reference_state_at(ref, cp, t);
        CHECK((via_expm - direct).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("RK4 end-to-end reproduction of random cubics") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        const Matrix P = testutil::random_matrix(rng, 2, 4, -4.0, 4.0);
        const ControlPoints cp(P);
        const auto ref = build_reference(coeffs_from_control_points(cp));
        Vector x = ref.x0;
        auto f = [&](const Vector& v) { return Vector(ref.A_p * v); };
        const double dt = 1e-3;
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            x = testutil::rk4_step(f, x, dt);
            const double t = (k + 1) * dt;
            worst = std::max(worst, (ref.C_p * x - eval(cp, t)).cwiseAbs().maxCoeff());
        }
        CHECK(worst <= 1e-6);
    }
}
