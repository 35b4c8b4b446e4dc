#pragma once

#include <limits>

#include "bcs/constants.hpp"

namespace bcs {

// Lumped-element values for a single resonator driven through a coupling
// capacitor C_d and a drive mutual inductance M_d (signed).  SI units.
struct DrivenCircuitParams {
    double C = 0.0;    // resonator capacitance, F
    double L = 0.0;    // resonator inductance, H
    double C_d = 0.0;  // drive capacitance, F
    double M_d = 0.0;  // drive mutual inductance, H (signed)
    double V_d = 0.0;  // drive voltage scale, V
    double I_d = 0.0;  // drive current scale, A

    void validate() const;
};

// Normalized drive quantities.  G_x (magnetic) and G_y (electric) are the
// drive strengths in energy units; dividing by hbar gives angular rates.
struct EffectiveDriveParams {
    double C_prime = 0.0;   // C + C_d, F
    double omega0 = 0.0;    // 1/sqrt(L C'), rad/s
    double Z_prime = 0.0;   // sqrt(L/C'), ohm
    double phi_zpf = 0.0;   // sqrt(hbar Z'/2)
    double q_zpf = 0.0;     // sqrt(hbar/(2 Z'))
    double G_x = 0.0;       // (M_d/L) phi_zpf I_d, J
    double G_y = 0.0;       // (C_d/C') q_zpf V_d, J
};

EffectiveDriveParams effective_drive_params(const DrivenCircuitParams& p, double hbar = hbar_si);

// Two LC resonators coupled by a capacitance C_g and a mutual inductance L_g.
// The sign of L_g is such that a positive dI_a/dt induces a positive
// contribution to V_b.
struct CoupledCircuitParams {
    double C_a = 0.0, C_b = 0.0;  // F
    double L_a = 0.0, L_b = 0.0;  // H
    double C_g = 0.0;             // F, >= 0
    double L_g = 0.0;             // H, signed

    void validate() const;
};

// Quantities entering the normal-form Hamiltonian: loaded inductances and
// capacitances from the inverted T_L and T_C matrices, partial frequencies
// omega_i' = 1/sqrt(L_i' C_i'), impedances Z_i' = sqrt(L_i'/C_i'), and the
// four coupling rates.  The off-diagonal entries are stored as inverses
// (1/L_g', 1/C_g') so the decoupled circuit C_g = L_g = 0 stays regular.
struct NormalizedCoupled {
    double L_a_prime = 0.0, L_b_prime = 0.0;
    double inv_L_g_prime = 0.0;  // 1/L_g', 1/H, signed
    double C_a_prime = 0.0, C_b_prime = 0.0;
    double inv_C_g_prime = 0.0;  // 1/C_g', 1/F, signed
    double Z_a_prime = 0.0, Z_b_prime = 0.0;        // ohm
    double omega_a_prime = 0.0, omega_b_prime = 0.0;  // rad/s
    double g_c = 0.0, g_l = 0.0;                    // rad/s
    double g_plus = 0.0, g_minus = 0.0;             // rad/s

    double L_g_prime() const {
        return inv_L_g_prime != 0.0 ? 1.0 / inv_L_g_prime : std::numeric_limits<double>::infinity();
    }
    double C_g_prime() const {
        return inv_C_g_prime != 0.0 ? 1.0 / inv_C_g_prime : std::numeric_limits<double>::infinity();
    }
};

NormalizedCoupled normalize_coupled(const CoupledCircuitParams& p);

// g_plus / sqrt(g_c^2 + g_l^2); zero iff the coupling is balanced
// (g_c = -g_l, equivalently -L_g'/C_g' = Z_a' Z_b').  Returns 0 for a
// fully decoupled circuit.
double balance_residual(const NormalizedCoupled& n);

// Finds the mutual inductance L_g in (-sqrt(L_a L_b), 0) that balances the
// given capacitive coupling.  p.L_g is ignored.  Requires C_g > 0.
double solve_balanced_mutual(const CoupledCircuitParams& p);

}  // namespace bcs
