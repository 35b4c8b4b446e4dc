#include "bcs/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bcs/numeric/roots.hpp"

namespace bcs {

void DrivenCircuitParams::validate() const {
    if (!(C > 0.0)) throw std::domain_error("DrivenCircuitParams: C must be positive, got " + std::to_string(C));
    if (!(L > 0.0)) throw std::domain_error("DrivenCircuitParams: L must be positive, got " + std::to_string(L));
    if (C_d < 0.0) throw std::domain_error("DrivenCircuitParams: C_d must be nonnegative, got " + std::to_string(C_d));
    if (std::abs(M_d) >= L)
        throw std::domain_error("DrivenCircuitParams: |M_d| must be smaller than L (|" + std::to_string(M_d) +
                                "| >= " + std::to_string(L) + ")");
}

EffectiveDriveParams effective_drive_params(const DrivenCircuitParams& p, double hbar) {
    p.validate();
    if (!(hbar > 0.0)) throw std::domain_error("effective_drive_params: hbar must be positive");
    EffectiveDriveParams e;
    e.C_prime = p.C + p.C_d;
    e.omega0 = 1.0 / std::sqrt(p.L * e.C_prime);
    e.Z_prime = std::sqrt(p.L / e.C_prime);
    e.phi_zpf = std::sqrt(hbar * e.Z_prime / 2.0);
    e.q_zpf = std::sqrt(hbar / (2.0 * e.Z_prime));
    e.G_x = (p.M_d / p.L) * e.phi_zpf * p.I_d;
    e.G_y = (p.C_d / e.C_prime) * e.q_zpf * p.V_d;
    return e;
}

void CoupledCircuitParams::validate() const {
    if (!(C_a > 0.0) || !(C_b > 0.0))
        throw std::domain_error("CoupledCircuitParams: capacitances must be positive");
    if (!(L_a > 0.0) || !(L_b > 0.0))
        throw std::domain_error("CoupledCircuitParams: inductances must be positive");
    if (C_g < 0.0) throw std::domain_error("CoupledCircuitParams: C_g must be nonnegative");
    if (L_g * L_g >= L_a * L_b)
        throw std::domain_error("CoupledCircuitParams: inductance matrix not positive definite, det = " +
                                std::to_string(L_a * L_b - L_g * L_g));
}

NormalizedCoupled normalize_coupled(const CoupledCircuitParams& p) {
    p.validate();
    NormalizedCoupled n;

    // T_L = [[L_a, L_g], [L_g, L_b]].  Work with the dimensionless ratio
    // r = L_g^2/(L_a L_b) so that pF/nH-scale values never meet the
    // determinant in absolute units.
    const double r = (p.L_g * p.L_g) / (p.L_a * p.L_b);
    const double det_l = p.L_a * p.L_b * (1.0 - r);
    if (!(det_l > 0.0))
        throw std::domain_error("normalize_coupled: singular T_L, determinant = " + std::to_string(det_l));
    n.L_a_prime = p.L_a * (1.0 - r);
    n.L_b_prime = p.L_b * (1.0 - r);
    n.inv_L_g_prime = p.L_g / det_l;

    // T_C = [[C_a + C_g, -C_g], [-C_g, C_b + C_g]]; all determinant terms are
    // positive, no cancellation.
    const double det_c = p.C_a * p.C_b + p.C_g * (p.C_a + p.C_b);
    if (!(det_c > 0.0))
        throw std::domain_error("normalize_coupled: singular T_C, determinant = " + std::to_string(det_c));
    n.C_a_prime = det_c / (p.C_b + p.C_g);
    n.C_b_prime = det_c / (p.C_a + p.C_g);
    n.inv_C_g_prime = p.C_g / det_c;

    n.Z_a_prime = std::sqrt(n.L_a_prime / n.C_a_prime);
    n.Z_b_prime = std::sqrt(n.L_b_prime / n.C_b_prime);
    n.omega_a_prime = 1.0 / std::sqrt(n.L_a_prime * n.C_a_prime);
    n.omega_b_prime = 1.0 / std::sqrt(n.L_b_prime * n.C_b_prime);

    const double zg = std::sqrt(n.Z_a_prime * n.Z_b_prime);
    n.g_c = 0.5 * n.inv_C_g_prime / zg;
    n.g_l = 0.5 * zg * n.inv_L_g_prime;
    n.g_plus = n.g_c + n.g_l;
    n.g_minus = n.g_c - n.g_l;
    return n;
}

double balance_residual(const NormalizedCoupled& n) {
    const double mag = std::sqrt(n.g_c * n.g_c + n.g_l * n.g_l);
    if (mag == 0.0) return 0.0;
    return n.g_plus / mag;
}

double solve_balanced_mutual(const CoupledCircuitParams& p) {
    if (!(p.C_g > 0.0))
        throw std::domain_error("solve_balanced_mutual: no capacitive coupling to balance (C_g = " +
                                std::to_string(p.C_g) + ")");
    CoupledCircuitParams q = p;
    auto residual = [&q](double lg) {
        q.L_g = lg;
        return balance_residual(normalize_coupled(q));
    };
    const double lim = std::sqrt(p.L_a * p.L_b);
    // residual -> +1 as L_g -> 0- (purely capacitive) and -> -1 as the
    // inductance matrix approaches singularity, so a root is bracketed.
    const double lo = -lim * (1.0 - 1e-12);
    const double hi = -lim * 1e-14;
    return find_root_brent(residual, lo, hi, 0.0, 1e-15, 300);
}

}  // namespace bcs
