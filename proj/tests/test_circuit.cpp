#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "bcs/circuit.hpp"
#include "doctest.h"

using namespace bcs;

namespace {
bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }
}

TEST_CASE("effective_drive_params: no drive coupling") {
    DrivenCircuitParams p{1e-9, 1e-6, 0.0, 0.0, 1.0, 1.0};
    const auto e = effective_drive_params(p);
    CHECK(e.G_x == 0.0);
    CHECK(e.G_y == 0.0);
    CHECK(e.C_prime == p.C);
    CHECK(close(e.omega0, 1.0 / std::sqrt(p.L * p.C), 1e-15));
}

TEST_CASE("effective_drive_params: C_d = C doubles the capacitance") {
    DrivenCircuitParams p{1e-9, 1e-6, 1e-9, 0.0, 0.0, 0.0};
    const auto e = effective_drive_params(p);
    CHECK(e.C_prime == 2e-9);
    CHECK(close(e.omega0, 1.0 / std::sqrt(2e-9 * 1e-6), 1e-15));
}

TEST_CASE("effective_drive_params: frozen reference record") {
    // independently evaluated with 40-digit arithmetic
    DrivenCircuitParams p{1e-9, 1e-6, 0.1e-9, 10e-9, 1e-6, 1e-6};
    const auto e = effective_drive_params(p, 1.054e-34);
    CHECK(close(e.C_prime, 1.1e-9, 1e-14));
    CHECK(close(e.omega0, 30151134.457776362265, 1e-13));
    CHECK(close(e.Z_prime, 30.151134457776362265, 1e-13));
    CHECK(close(e.phi_zpf, 3.9861821156650812149e-17, 1e-13));
    CHECK(close(e.q_zpf, 1.3220670423686144217e-18, 1e-13));
    CHECK(close(e.G_x, 3.9861821156650812149e-25, 1e-13));
    CHECK(close(e.G_y, 1.2018791294260131107e-25, 1e-13));
}

TEST_CASE("effective_drive_params: domain errors name the bad parameter") {
    CHECK_THROWS_AS(effective_drive_params({-1e-9, 1e-6, 0, 0, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(effective_drive_params({1e-9, 1e-6, 0, 2e-6, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(effective_drive_params({1e-9, 1e-6, 0, 0, 0, 0}, -1.0), std::domain_error);
}

TEST_CASE("normalize_coupled: decoupled circuit") {
    CoupledCircuitParams p{0.3e-12, 0.5e-12, 2e-9, 3e-9, 0.0, 0.0};
    const auto n = normalize_coupled(p);
    CHECK(n.L_a_prime == p.L_a);
    CHECK(n.C_a_prime == p.C_a);
    CHECK(n.g_c == 0.0);
    CHECK(n.g_l == 0.0);
    CHECK(close(n.omega_a_prime, 1.0 / std::sqrt(p.L_a * p.C_a), 1e-14));
}

TEST_CASE("normalize_coupled: symmetric circuit") {
    CoupledCircuitParams p{0.4e-12, 0.4e-12, 2e-9, 2e-9, 10e-15, -50e-12};
    const auto n = normalize_coupled(p);
    CHECK(n.Z_a_prime == n.Z_b_prime);
    CHECK(n.omega_a_prime == n.omega_b_prime);
}

TEST_CASE("normalize_coupled: frozen reference record") {
    CoupledCircuitParams p{0.4e-12, 0.4e-12, 2e-9, 2e-9, 10e-15, -50e-12};
    const auto n = normalize_coupled(p);
    CHECK(close(n.L_a_prime, 1.99875e-9, 1e-13));
    CHECK(close(n.inv_L_g_prime, -12507817.385866166354, 1e-13));
    CHECK(close(n.C_a_prime, 4.0975609756097560976e-13, 1e-13));
    CHECK(close(n.inv_C_g_prime, 59523809523.80952381, 1e-13));
    CHECK(close(n.Z_a_prime, 69.841977246597806456, 1e-13));
    CHECK(close(n.omega_a_prime, 34942827890.730609859, 1e-13));
    CHECK(close(n.g_c, 426132047.44793426657, 1e-12));
    CHECK(close(n.g_l, -436785348.63413262324, 1e-12));
    CHECK(close(n.g_plus, -10653301.186198356664, 1e-9));
    CHECK(close(n.g_minus, 862917396.08206688981, 1e-12));
    CHECK(close(balance_residual(n), -0.017458096301883189338, 1e-9));
}

TEST_CASE("normalize_coupled agrees with a generic matrix-inversion oracle") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        CoupledCircuitParams p;
        p.C_a = u(rng) * 1e-12;
        p.C_b = u(rng) * 1e-12;
        p.L_a = u(rng) * 1e-9;
        p.L_b = u(rng) * 1e-9;
        p.C_g = 0.3 * u(rng) * 1e-13;
        p.L_g = (u(rng) - 1.6) * 0.2 * std::sqrt(p.L_a * p.L_b);
        const auto n = normalize_coupled(p);

        Eigen::Matrix2d tl, tc;
        tl << p.L_a, p.L_g, p.L_g, p.L_b;
        tc << p.C_a + p.C_g, -p.C_g, -p.C_g, p.C_b + p.C_g;
        const Eigen::Matrix2d tli = tl.inverse();
        const Eigen::Matrix2d tci = tc.inverse();
        CHECK(close(1.0 / n.L_a_prime, tli(0, 0), 1e-12));
        CHECK(close(1.0 / n.L_b_prime, tli(1, 1), 1e-12));
        CHECK(std::abs(-n.inv_L_g_prime - tli(0, 1)) <= 1e-12 * std::abs(tli(0, 0)));
        CHECK(close(1.0 / n.C_a_prime, tci(0, 0), 1e-12));
        CHECK(std::abs(n.inv_C_g_prime - tci(0, 1)) <= 1e-12 * std::abs(tci(0, 0)));
    }
}

TEST_CASE("round trip: inverse matrices multiply back to identity") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        CoupledCircuitParams p;
        p.C_a = u(rng) * 1e-12;
        p.C_b = u(rng) * 1e-12;
        p.L_a = u(rng) * 1e-9;
        p.L_b = u(rng) * 1e-9;
        p.C_g = u(rng) * 1e-13;
        p.L_g = (u(rng) - 1.6) * 0.3 * std::sqrt(p.L_a * p.L_b);
        const auto n = normalize_coupled(p);
        Eigen::Matrix2d tl, tc, tli, tci;
        tl << p.L_a, p.L_g, p.L_g, p.L_b;
        tc << p.C_a + p.C_g, -p.C_g, -p.C_g, p.C_b + p.C_g;
        tli << 1.0 / n.L_a_prime, -n.inv_L_g_prime, -n.inv_L_g_prime, 1.0 / n.L_b_prime;
        tci << 1.0 / n.C_a_prime, n.inv_C_g_prime, n.inv_C_g_prime, 1.0 / n.C_b_prime;
        CHECK(((tli * tl) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(((tci * tc) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("balance_residual limiting values") {
    NormalizedCoupled n;
    n.g_c = 1e8;
    n.g_l = -1e8;
    n.g_plus = 0.0;
    n.g_minus = 2e8;
    CHECK(balance_residual(n) == 0.0);
    n.g_l = 0.0;
    n.g_plus = n.g_c;
    CHECK(balance_residual(n) == 1.0);
    NormalizedCoupled zero;
    CHECK(balance_residual(zero) == 0.0);
}

TEST_CASE("balanced coupling is the impedance-matching condition") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.3, 2.5);
    for (int trial = 0; trial < 100; ++trial) {
        CoupledCircuitParams p;
        p.C_a = u(rng) * 1e-12;
        p.C_b = u(rng) * 1e-12;
        p.L_a = u(rng) * 1e-9;
        p.L_b = u(rng) * 1e-9;
        p.C_g = u(rng) * 2e-14;
        p.L_g = solve_balanced_mutual(p);
        CHECK(p.L_g < 0.0);  // positive C_g forces a negative mutual
        const auto n = normalize_coupled(p);
        CHECK(std::abs(balance_residual(n)) < 1e-10);
        // -L_g'/C_g' = Z_a' Z_b' at balance
        const double lhs = -n.L_g_prime() / n.C_g_prime();
        const double rhs = n.Z_a_prime * n.Z_b_prime;
        CHECK(close(lhs, rhs, 1e-10));
        // and conversely, detuning the mutual breaks both conditions
        CoupledCircuitParams q = p;
        q.L_g *= 1.05;
        const auto m = normalize_coupled(q);
        CHECK(std::abs(balance_residual(m)) > 1e-4);
        CHECK(std::abs(-m.L_g_prime() / m.C_g_prime() - m.Z_a_prime * m.Z_b_prime) >
              1e-4 * m.Z_a_prime * m.Z_b_prime);
    }
}

TEST_CASE("solve_balanced_mutual small-coupling limit") {
    CoupledCircuitParams p{0.4e-12, 0.4e-12, 2e-9, 2e-9, 1e-16, 0.0};
    const double lg = solve_balanced_mutual(p);
    p.L_g = lg;
    const auto n = normalize_coupled(p);
    // leading order: L_g ~ -C_g Z_a' Z_b'
    CHECK(close(lg, -p.C_g * n.Z_a_prime * n.Z_b_prime, 1e-3));
}

TEST_CASE("solve_balanced_mutual requires capacitive coupling") {
    CoupledCircuitParams p{0.4e-12, 0.4e-12, 2e-9, 2e-9, 0.0, 0.0};
    CHECK_THROWS_AS(solve_balanced_mutual(p), std::domain_error);
}

TEST_CASE("solve_balanced_mutual reproduces balance on the reference circuit") {
    CoupledCircuitParams p{0.4e-12, 0.4e-12, 2e-9, 2e-9, 10e-15, 0.0};
    p.L_g = solve_balanced_mutual(p);
    CHECK(std::abs(balance_residual(normalize_coupled(p))) < 1e-10);
}

TEST_CASE("decoupling limit: rates vanish and partial frequencies go bare") {
    CoupledCircuitParams base{0.4e-12, 0.5e-12, 2e-9, 3e-9, 2e-14, -60e-12};
    const double w_bare_a = 1.0 / std::sqrt(base.L_a * base.C_a);
    double prev_gc = 1e300, prev_gl = 1e300, prev_dev = 1e300;
    for (double s : {1.0, 0.5, 0.25, 0.125, 0.0625}) {
        CoupledCircuitParams p = base;
        p.C_g = base.C_g * s;
        p.L_g = base.L_g * s;
        const auto n = normalize_coupled(p);
        CHECK(std::abs(n.g_c) < prev_gc);
        CHECK(std::abs(n.g_l) < prev_gl);
        const double dev = std::abs(n.omega_a_prime - w_bare_a) / w_bare_a;
        CHECK(dev <= prev_dev);
        prev_gc = std::abs(n.g_c);
        prev_gl = std::abs(n.g_l);
        prev_dev = dev;
    }
}

TEST_CASE("normalize_coupled rejects a singular inductance matrix") {
    CoupledCircuitParams p{0.4e-12, 0.4e-12, 2e-9, 2e-9, 0.0, 2e-9};
    CHECK_THROWS_AS(normalize_coupled(p), std::domain_error);
}
