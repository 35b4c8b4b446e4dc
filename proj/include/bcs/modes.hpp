#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "bcs/circuit.hpp"

namespace bcs {

// Generator of the coupled-mode dynamics over the basis (a, b, a*, b*):
// d/dt v = m v.  m = -i M with M real; the g_minus coupling lives in the
// diagonal 2x2 blocks, g_plus on the antidiagonal.
struct ModeMatrix {
    Eigen::Matrix4cd m;
};

ModeMatrix build_m(const NormalizedCoupled& n);

// Same generator assembled from Kronecker products:
//   m = -i [ sigma_z (x) (g_minus sigma_x + (Delta/2) sigma_z + (S/2) I)
//            - i g_plus (sigma_y (x) sigma_x) ]
// with S = omega_a' + omega_b', Delta = omega_a' - omega_b'.
ModeMatrix build_m_algebraic(double S, double Delta, double g_minus, double g_plus);

// Four real normal-mode frequencies, sorted ascending; closed under negation.
struct Spectrum {
    std::array<double, 4> omegas{};
};

// Eigenvalues of i m (real for stable circuits).  Throws if the imaginary
// parts exceed 1e-9 of the spectral scale, which signals parameters outside
// the stable regime.
Spectrum eigenvalues_full(const ModeMatrix& m);

// Rotating-wave spectrum: +-( S/2 +- sqrt(g_minus^2 + (Delta/2)^2) ).
Spectrum eigenvalues_rwa(double S, double Delta, double g_minus);

// Max over the two positive branches of |omega_full - omega_rwa| / omega_full,
// with branches matched by sorted order.
double rwa_relative_error(double S, double Delta, double g_minus, double g_plus);
double rwa_relative_error(const NormalizedCoupled& n);

struct EigenSweepRow {
    double x = 0.0;  // swept quantity: g or omega_b'
    double w_plus_full = 0.0, w_minus_full = 0.0;
    double w_plus_rwa = 0.0, w_minus_rwa = 0.0;
    double rel_err = 0.0;
};

// Resonant coupling sweep (omega_a' = omega_b' = omega) with single-type
// coupling g_plus = g_minus = g, evaluated at each g in gs.
std::vector<EigenSweepRow> sweep_coupling(double omega, const std::vector<double>& gs);

// Partial-frequency sweep at fixed omega_a' and single-type coupling g.
std::vector<EigenSweepRow> sweep_partial_frequency(double omega_a, double g, const std::vector<double>& omega_bs);

}  // namespace bcs
