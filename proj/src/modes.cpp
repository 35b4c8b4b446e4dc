#include "bcs/modes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bcs/parallel.hpp"

namespace bcs {

namespace {
const std::complex<double> I(0.0, 1.0);

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}
}  // namespace

ModeMatrix build_m(const NormalizedCoupled& n) {
    const double wa = n.omega_a_prime, wb = n.omega_b_prime;
    const double gm = n.g_minus, gp = n.g_plus;
    Eigen::Matrix4d m_real;
    m_real << wa, gm, 0.0, -gp,
              gm, wb, -gp, 0.0,
              0.0, gp, -wa, -gm,
              gp, 0.0, -gm, -wb;
    return {-I * m_real.cast<std::complex<double>>()};
}

ModeMatrix build_m_algebraic(double S, double Delta, double g_minus, double g_plus) {
    Eigen::Matrix2cd sx, sy, sz, id;
    sx << 0, 1, 1, 0;
    sy << 0, -I, I, 0;
    sz << 1, 0, 0, -1;
    id.setIdentity();
    const Eigen::Matrix2cd inner = g_minus * sx + (Delta / 2.0) * sz + (S / 2.0) * id;
    const Eigen::Matrix4cd bracket = kron2(sz, inner) - I * g_plus * kron2(sy, sx);
    return {-I * bracket};
}

Spectrum eigenvalues_full(const ModeMatrix& mm) {
    if (!mm.m.allFinite()) throw std::domain_error("eigenvalues_full: non-finite mode matrix");
    const Eigen::Matrix4cd im = I * mm.m;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(im, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues_full: eigensolver failed");
    const auto ev = solver.eigenvalues();
    double scale = 0.0;
    for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(ev[i]));
    Spectrum s;
    for (int i = 0; i < 4; ++i) {
        if (std::abs(ev[i].imag()) > 1e-9 * std::max(scale, 1e-300))
            throw std::domain_error("eigenvalues_full: complex mode frequencies (unstable circuit), Im = " +
                                    std::to_string(ev[i].imag()));
        s.omegas[i] = ev[i].real();
    }
    std::sort(s.omegas.begin(), s.omegas.end());
    return s;
}

Spectrum eigenvalues_rwa(double S, double Delta, double g_minus) {
    const double split = std::sqrt(g_minus * g_minus + 0.25 * Delta * Delta);
    Spectrum s;
    s.omegas = {-(S / 2.0 + split), -(S / 2.0 - split), S / 2.0 - split, S / 2.0 + split};
    std::sort(s.omegas.begin(), s.omegas.end());
    return s;
}

double rwa_relative_error(double S, double Delta, double g_minus, double g_plus) {
    const Spectrum full = eigenvalues_full(build_m_algebraic(S, Delta, g_minus, g_plus));
    const Spectrum rwa = eigenvalues_rwa(S, Delta, g_minus);
    // positive branches are the upper two of the sorted spectrum
    double err = 0.0;
    for (int i = 2; i < 4; ++i)
        err = std::max(err, std::abs(full.omegas[i] - rwa.omegas[i]) / std::abs(full.omegas[i]));
    return err;
}

double rwa_relative_error(const NormalizedCoupled& n) {
    return rwa_relative_error(n.omega_a_prime + n.omega_b_prime, n.omega_a_prime - n.omega_b_prime,
                              n.g_minus, n.g_plus);
}

namespace {
EigenSweepRow make_row(double x, double S, double Delta, double g_minus, double g_plus) {
    EigenSweepRow row;
    row.x = x;
    const Spectrum full = eigenvalues_full(build_m_algebraic(S, Delta, g_minus, g_plus));
    const Spectrum rwa = eigenvalues_rwa(S, Delta, g_minus);
    row.w_minus_full = full.omegas[2];
    row.w_plus_full = full.omegas[3];
    row.w_minus_rwa = rwa.omegas[2];
    row.w_plus_rwa = rwa.omegas[3];
    row.rel_err = std::max(std::abs(full.omegas[2] - rwa.omegas[2]) / std::abs(full.omegas[2]),
                           std::abs(full.omegas[3] - rwa.omegas[3]) / std::abs(full.omegas[3]));
    return row;
}
}  // namespace

std::vector<EigenSweepRow> sweep_coupling(double omega, const std::vector<double>& gs) {
    std::vector<EigenSweepRow> rows(gs.size());
    parallel_for(gs.size(), [&](std::size_t i) {
        rows[i] = make_row(gs[i], 2.0 * omega, 0.0, gs[i], gs[i]);
    });
    return rows;
}

std::vector<EigenSweepRow> sweep_partial_frequency(double omega_a, double g, const std::vector<double>& omega_bs) {
    std::vector<EigenSweepRow> rows(omega_bs.size());
    parallel_for(omega_bs.size(), [&](std::size_t i) {
        rows[i] = make_row(omega_bs[i], omega_a + omega_bs[i], omega_a - omega_bs[i], g, g);
    });
    return rows;
}

}  // namespace bcs
