#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace bcs {

// Two coupled transmission lines described per unit length.  L_g couples the
// line currents, C_g bridges the line voltages.
struct LineParams {
    double L_a = 0.0, C_a = 0.0;  // H/m, F/m
    double L_b = 0.0, C_b = 0.0;
    double L_g = 0.0, C_g = 0.0;  // H/m >= 0, F/m >= 0

    void validate() const;

    // Bare single-line quantities.
    double z_a_bare() const;
    double z_b_bare() const;
    double v_a_bare() const;
    double v_b_bare() const;

    // Loaded quantities including the bridge capacitance, C_i + C_g.  These
    // are the impedances that make the wave-basis generator exactly the
    // diagonal-beta / chi / kappa form, mirroring the primed quantities of
    // the coupled-resonator analysis.
    double z_a() const;
    double z_b() const;
    double v_a() const;
    double v_b() const;
};

struct KappaChi {
    double kappa = 0.0;   // rad/m, couples counter-propagating waves
    double chi = 0.0;     // rad/m, couples co-propagating waves
    double beta_a = 0.0;  // rad/m
    double beta_b = 0.0;
};

// kappa = (omega/2)(L_g/sqrt(Za Zb) - C_g sqrt(Za Zb)),
// chi   = (omega/2)(L_g/sqrt(Za Zb) + C_g sqrt(Za Zb)),  beta_i = omega/v_i.
// kappa vanishes iff Z_g = sqrt(L_g/C_g) equals sqrt(Za Zb), which is the
// directional-coupler condition.
KappaChi kappa_chi(const LineParams& p, double omega);

// Generator over (V_a, I_a, V_b, I_b): d/dx X = K X, with time convention
// e^{-i omega t} so +beta is right-moving.  The capacitance entries carry the
// C_g sums from Kirchhoff's laws.
Eigen::Matrix4cd vi_generator(const LineParams& p, double omega);

// Generator over the wave amplitudes (a+, b+, a-, b-) with
// a+- = V_a/sqrt(Za) +- sqrt(Za) I_a, b+- = V_b/sqrt(Zb) -+ sqrt(Zb) I_b.
Eigen::Matrix4cd wave_generator(const LineParams& p, double omega);

// Basis change B with (a+, b+, a-, b-) = B (V_a, I_a, V_b, I_b); satisfies
// wave_generator = B vi_generator B^-1.
Eigen::Matrix4d wave_basis_change(const LineParams& p);

struct WaveState {
    std::array<std::complex<double>, 4> v{};  // a+, b+, a-, b-
};

// exp(generator * length) applied to the state (dense matrix exponential).
WaveState propagate(const WaveState& s0, const LineParams& p, double omega, double length);

// Response of a length-x coupler section to unit a+ injection with all four
// ports terminated in matched loads: through = a+(x), coupled = b+(0)
// (backward wave in line b), isolated = b-(x), reflected = a-(0).
struct CouplerResponse {
    std::complex<double> through, coupled, isolated, reflected;
    double isolation_db() const;
};

CouplerResponse coupler_response(const LineParams& p, double omega, double length);

}  // namespace bcs
