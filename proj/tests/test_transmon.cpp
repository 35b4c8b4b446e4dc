#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "bcs/constants.hpp"
#include "bcs/transmon.hpp"
#include "doctest.h"

using namespace bcs;

namespace {
bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

Eigen::MatrixXd lowering(int dim) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}
}  // namespace

TEST_CASE("plasma_lambda closed forms") {
    SUBCASE("E_J = E_C") {
        const auto p = plasma_lambda(1.0, 1.0, 1.0);
        CHECK(close(p.lambda, 1.0 / (3.0 * std::sqrt(8.0)), 1e-14));
        CHECK(close(p.omega_p, std::sqrt(8.0), 1e-14));
    }
    SUBCASE("doubling E_J divides lambda by sqrt(2)") {
        const auto p1 = plasma_lambda(50.0, 1.0, 1.0);
        const auto p2 = plasma_lambda(100.0, 1.0, 1.0);
        CHECK(close(p1.lambda / p2.lambda, std::sqrt(2.0), 1e-14));
    }
    SUBCASE("inverting lambda = 0.013 gives E_J/E_C = 1/(72 lambda^2)") {
        const auto m = TransmonModel::from_lambda(0.013);
        CHECK(close(m.E_J / m.E_C, 1.0 / (72.0 * 0.013 * 0.013), 1e-13));
        CHECK(close(m.E_J / m.E_C, 82.18, 2e-4));
        CHECK(close(m.lambda(), 0.013, 1e-13));
    }
    SUBCASE("rejects nonpositive energies") {
        CHECK_THROWS_AS(plasma_lambda(-1.0, 1.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(plasma_lambda(1.0, 0.0, 1.0), std::domain_error);
    }
}

TEST_CASE("dressed operators reduce to bare ones as lambda -> 0") {
    const auto m = TransmonModel::from_lambda(1e-12);
    const auto d = dressed_operators(m);
    const Eigen::MatrixXd b = lowering(m.dim);
    CHECK((d.b_bar.real() - b).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(d.b_bar.imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dressed operator matrix elements match the printed expansions") {
    const double lam = 0.013;
    const auto m = TransmonModel::from_lambda(lam);
    const auto d = dressed_operators(m);
    SUBCASE("<1|phi|0> = 1 + 3 lambda/2") {
        CHECK(close(d.phi_bar(1, 0).real(), 1.0 + 1.5 * lam, 1e-14));
    }
    SUBCASE("<3|phi|0> = -lambda/4 sqrt(6)") {
        CHECK(close(d.phi_bar(3, 0).real(), -lam / 4.0 * std::sqrt(6.0), 1e-14));
    }
    SUBCASE("general k: <k+1|phi|k> and <k+3|phi|k>") {
        for (int k = 0; k < 6; ++k) {
            const double e1 = std::sqrt(k + 1.0) + 1.5 * lam * std::pow(k + 1.0, 1.5);
            CHECK(close(d.phi_bar(k + 1, k).real(), e1, 1e-13));
            const double e3 = -lam / 4.0 * std::sqrt((k + 1.0) * (k + 2.0) * (k + 3.0));
            CHECK(close(d.phi_bar(k + 3, k).real(), e3, 1e-13));
        }
    }
    SUBCASE("phi is symmetric, q is Hermitian") {
        CHECK((d.phi_bar - d.phi_bar.transpose()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((d.q_bar - d.q_bar.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("strip matrix elements") {
    const double lam = 0.013;
    const auto m = TransmonModel::from_lambda(lam);
    SUBCASE("harmonic balanced coupling cancels the k+1 amplitude") {
        const auto tiny = TransmonModel::from_lambda(1e-13);
        const auto e = strip_matrix_elements(tiny, 2, 7, {0.5, -0.5});
        CHECK(std::abs(e.elem_k1_n1) < 1e-10);
    }
    SUBCASE("closed forms at lambda = 0.013") {
        const int k = 3, n = 20;
        const double gc = 0.4, gl = -0.15;
        const auto e = strip_matrix_elements(m, k, n, {gc, gl});
        const double phi1 = std::sqrt(k + 1.0) + 1.5 * lam * std::pow(k + 1.0, 1.5);
        const double iq1 = -std::sqrt(k + 1.0) + 1.5 * lam * std::pow(k + 1.0, 1.5);
        const double expect1 = std::sqrt(n + 1.0) * (-gl * phi1 + gc * iq1);
        CHECK(close(e.elem_k1_n1.real(), expect1, 1e-12));
        const double root = std::sqrt((k + 1.0) * (k + 2.0) * (k + 3.0));
        const double expect3 = std::sqrt(static_cast<double>(n)) * (-gl * (-lam / 4.0 * root) - gc * (0.75 * lam * root));
        CHECK(close(e.elem_k3_nm1.real(), expect3, 1e-12));
    }
    SUBCASE("photon number only rescales the amplitudes") {
        const auto e1 = strip_matrix_elements(m, 3, 5, {0.3, -0.2});
        const auto e2 = strip_matrix_elements(m, 3, 50, {0.3, -0.2});
        CHECK(close(std::abs(e2.elem_k1_n1) / std::abs(e1.elem_k1_n1), std::sqrt(51.0 / 6.0), 1e-12));
        CHECK(close(std::abs(e2.elem_k3_nm1) / std::abs(e1.elem_k3_nm1), std::sqrt(50.0 / 5.0), 1e-12));
    }
    SUBCASE("truncation guard") {
        TransmonModel small = m;
        small.dim = 8;
        CHECK_THROWS_AS(strip_matrix_elements(small, 5, 1, {0.1, 0.0}), std::domain_error);
    }
}

TEST_CASE("zero crossing ratios") {
    const auto m = TransmonModel::from_lambda(0.013);
    SUBCASE("k+1 transition at k = 3 sits near -0.9") {
        const double r = zero_crossing_ratio(m, 3, StripTransition::k_plus_1);
        CHECK(std::abs(r - (-0.9)) < 0.1);
        const double expect = (1.5 * 0.013 * 4.0 - 1.0) / (1.5 * 0.013 * 4.0 + 1.0);
        CHECK(close(r, expect, 1e-12));
    }
    SUBCASE("k+3 transition is exactly 3") {
        const double r = zero_crossing_ratio(m, 3, StripTransition::k_plus_3);
        CHECK(std::abs(r - 3.0) < 1e-12);
        CHECK(std::abs(r - 3.0) < 0.3);
    }
    SUBCASE("harmonic limit recovers the balanced ratio -1") {
        const auto h = TransmonModel::from_lambda(1e-8);
        CHECK(std::abs(zero_crossing_ratio(h, 3, StripTransition::k_plus_1) + 1.0) < 1e-6);
    }
    SUBCASE("ratio is independent of n by construction") {
        // the same null shows up in the strip amplitudes at any photon number
        const double r = zero_crossing_ratio(m, 3, StripTransition::k_plus_1);
        for (int n : {2, 40}) {
            const auto e = strip_matrix_elements(m, 3, n, {1.0, r});
            CHECK(std::abs(e.elem_k1_n1) < 1e-12);
        }
    }
    SUBCASE("no ratio nulls both amplitudes at once") {
        const double r1 = zero_crossing_ratio(m, 3, StripTransition::k_plus_1);
        const double r3 = zero_crossing_ratio(m, 3, StripTransition::k_plus_3);
        CHECK(std::abs(r1 - r3) > 1.0);
    }
}

TEST_CASE("balanced-coupling residual terms") {
    const auto d = non_rwa_terms(0.013, 2.0);
    auto coeff = [&](const std::vector<CouplingTerm>& v, const std::string& q, const std::string& r) {
        for (const auto& t : v)
            if (t.qubit_op == q && t.resonator_op == r) return t.coeff;
        return 0.0;
    };
    CHECK(close(coeff(d.h_nonrwa_4, "bd^3", "ad"), 2.0 * 0.013 / 4.0, 1e-14));
    CHECK(close(coeff(d.h_nonrwa_2, "(bd b) bd", "ad"), 1.5 * 2.0 * 0.013, 1e-14));
    CHECK(close(coeff(d.h_nonrwa_2, "bd^3", "a"), -0.5 * 2.0 * 0.013, 1e-14));
    CHECK(close(coeff(d.h_rwa, "b", "ad"), 2.0, 1e-14));
    SUBCASE("harmonic limit leaves only the hopping part") {
        const auto h = non_rwa_terms(0.0, 2.0);
        CHECK(h.h_nonrwa_2.empty());
        CHECK(h.h_nonrwa_4.empty());
        CHECK(h.h_rwa.size() == 2);
    }
}

TEST_CASE("assembled coupling Hamiltonian is Hermitian on the joint space") {
    const auto m = TransmonModel::from_lambda(0.013);
    const auto d = dressed_operators(m);
    for (double gc : {0.3, -0.7}) {
        for (double gl : {0.25, -0.4}) {
            const std::complex<double> I(0, 1);
            const Eigen::MatrixXcd a_op = -gl * d.phi_bar - I * gc * d.q_bar;
            const Eigen::MatrixXcd b_op = -gl * d.phi_bar + I * gc * d.q_bar;
            // joint space: transmon (x) 4 photon states
            const int np = 4;
            Eigen::MatrixXcd photon_a = Eigen::MatrixXcd::Zero(np, np);
            for (int n = 1; n < np; ++n) photon_a(n - 1, n) = std::sqrt(static_cast<double>(n));
            const int dj = m.dim * np;
            Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dj, dj);
            auto kron_add = [&](const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& r) {
                for (int i = 0; i < m.dim; ++i)
                    for (int j = 0; j < m.dim; ++j)
                        for (int a = 0; a < np; ++a)
                            for (int b = 0; b < np; ++b) h(i * np + a, j * np + b) += q(i, j) * r(a, b);
            };
            kron_add(a_op, photon_a);
            kron_add(b_op, photon_a.adjoint());
            CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * h.cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("charge-basis transmon spectrum") {
    SUBCASE("level spacing approaches the plasma frequency minus E_C") {
        for (double ratio : {82.1828, 163.0}) {
            TransmonModel m{ratio, 1.0, 1.0, 0.0, 30, 25};
            const auto r = charge_basis_spectrum(m, 6);
            const double e01 = r.energies[1] - r.energies[0];
            const double expect = std::sqrt(8.0 * ratio) - 1.0;
            CHECK(close(e01, expect, 0.05));
        }
    }
    SUBCASE("charge dispersion of the ground state is negligible at E_J/E_C = 163") {
        TransmonModel m0{163.0, 1.0, 1.0, 0.0, 30, 25};
        TransmonModel m5{163.0, 1.0, 1.0, 0.5, 30, 25};
        const auto r0 = charge_basis_spectrum(m0, 4);
        const auto r5 = charge_basis_spectrum(m5, 4);
        CHECK(std::abs((r5.energies[0] - r0.energies[0]) / r0.energies[0]) < 1e-4);
    }
    SUBCASE("charge matrix element matches the perturbative dressed charge") {
        const auto m = TransmonModel::from_lambda(0.013, 0.0, 30, 30);
        const auto r = charge_basis_spectrum(m, 8);
        const double pert = m.n_zpf() * std::abs(-1.0 + 1.5 * 0.013);
        CHECK(close(std::abs(r.n_matrix(1, 0)), pert, 0.03));
    }
    SUBCASE("phase operator matches the perturbative dressed flux") {
        const auto m = TransmonModel::from_lambda(0.013, 0.0, 30, 30);
        const auto r = charge_basis_spectrum(m, 8);
        const double pert = m.phi_zpf() * (1.0 + 1.5 * 0.013);
        CHECK(close(std::abs(r.phi_matrix(1, 0)), pert, 0.03));
    }
    SUBCASE("truncation failure raises an error") {
        TransmonModel m{400.0, 1.0, 1.0, 0.0, 30, 10};
        CHECK_THROWS_AS(charge_basis_spectrum(m, 18), std::domain_error);
    }
}

TEST_CASE("first-order states overlap the exact quartic eigenstates") {
    // exact diagonalization of the quartic Hamiltonian, test-local oracle
    const double lam = 0.013;
    const int dim = 40;
    const Eigen::MatrixXd b = lowering(dim);
    const Eigen::MatrixXd bd = b.transpose();
    const Eigen::MatrixXd x = (b + bd) / std::sqrt(2.0);
    const Eigen::MatrixXd x4 = x * x * x * x;
    Eigen::MatrixXd h = bd * b - lam * x4;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);

    const Eigen::MatrixXd b2 = b * b, bd2 = bd * bd;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
    const Eigen::MatrixXd u = id - (lam / 4.0) * ((b2 * b2) / 4.0 - (bd2 * bd2) / 4.0 +
                                                  b2 * (2.0 * b * bd - 3.0 * id) - (2.0 * b * bd - 3.0 * id) * bd2);
    for (int k = 0; k <= 4; ++k) {
        Eigen::VectorXd pert = u.col(k);
        pert.normalize();
        // first-order displaced weight bounds the admissible overlap deficit
        const double c_p2 = (lam / 4.0) * (2.0 * k + 3.0) * std::sqrt((k + 1.0) * (k + 2.0));
        const double c_m2 = (k >= 2) ? (lam / 4.0) * (2.0 * k - 1.0) * std::sqrt(k * (k - 1.0)) : 0.0;
        const double c_p4 = (lam / 16.0) * std::sqrt((k + 1.0) * (k + 2.0) * (k + 3.0) * (k + 4.0));
        const double c_m4 = (k >= 4) ? (lam / 16.0) * std::sqrt(k * (k - 1.0) * (k - 2.0) * (k - 3.0)) : 0.0;
        const double weight = c_p2 * c_p2 + c_m2 * c_m2 + c_p4 * c_p4 + c_m4 * c_m4;
        double best = 0.0;
        for (int j = 0; j < dim; ++j) best = std::max(best, std::abs(solver.eigenvectors().col(j).dot(pert)));
        CHECK(best > 1.0 - 2.0 * weight - 1e-6);
    }
}

TEST_CASE("coupling ratio sweep brackets the printed zero crossings") {
    const auto m = TransmonModel::from_lambda(0.013);
    std::vector<double> ratios;
    for (int i = 0; i <= 80; ++i) ratios.push_back(-3.0 + 8.0 * i / 80.0);
    const auto rows = sweep_coupling_ratio(m, 3, 20, two_pi * 180e6, ratios);
    REQUIRE(rows.size() == ratios.size());
    // minima of the two amplitudes sit near -0.9 and 3
    double min1 = 1e300, min3 = 1e300, at1 = 0, at3 = 0;
    for (const auto& r : rows) {
        if (r.abs_elem_k1_n1 < min1) { min1 = r.abs_elem_k1_n1; at1 = r.ratio; }
        if (r.abs_elem_k3_nm1 < min3) { min3 = r.abs_elem_k3_nm1; at3 = r.ratio; }
    }
    CHECK(std::abs(at1 + 0.9) < 0.15);
    CHECK(std::abs(at3 - 3.0) < 0.15);
}

TEST_CASE("model validation floors") {
    TransmonModel m = TransmonModel::from_lambda(0.013);
    m.dim = 4;
    CHECK_THROWS_AS(m.validate(), std::domain_error);
    m.dim = 30;
    m.n_max = 5;
    CHECK_THROWS_AS(m.validate(), std::domain_error);
}
