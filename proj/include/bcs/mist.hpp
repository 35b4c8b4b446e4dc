#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "bcs/constants.hpp"
#include "bcs/transmon.hpp"

namespace bcs {

enum class CouplingMode {
    balanced,            // g_l = ratio_gl_gc * g_c, |g_c| + |g_l| = g_total
    capacitive,          // g_c = g_total, g_l = 0
    capacitive_matched,  // purely capacitive, g_c adjusted to the balanced dispersive shift
};

// Semiclassical readout simulation parameters.  All rates are angular (rad/s)
// and energies use hbar = 1 units.  The photon-number list is the drive axis:
// each entry fixes the steady-state resonator population of the pulse.
struct ReadoutConfig {
    double omega_r = two_pi * 6e9;
    double kappa = 1.0 / 15e-9;
    double theta = 0.05;            // coupling efficiency, g_total = (theta/2) sqrt(omega_q omega_r)
    double ratio_gl_gc = -1.0;
    double E_C = two_pi * 0.2e9;
    double drive_frequency = two_pi * 6e9;
    double drive_duration = 200e-9;
    double drive_ramp = 2e-9;       // cosine ramps on both pulse edges
    std::vector<double> photon_numbers{1.0, 5.0, 10.0, 20.0, 40.0, 80.0};
    std::vector<double> qubit_freqs;  // rad/s; default 10 points in 2pi*[4, 5] GHz
    std::vector<double> n_g_grid;     // default 20 points in [-0.5, 0]
    int levels = 14;                  // transmon eigenlevels kept (>= 10)
    int n_max = 25;                   // charge basis truncation
    CouplingMode mode = CouplingMode::capacitive;
    bool strip_k1 = false;  // drop the counter-rotating part of the (k+1, k) drive elements
    bool strip_k3 = false;  // drop the (k+3, k) drive elements entirely (all parts change strip)
    bool initial_state_0 = true;
    bool initial_state_1 = true;
    double ode_rtol = 2e-9;  // keeps the norm drift safely under the 1e-6 guard
    double ode_atol = 1e-11;

    ReadoutConfig();  // fills the default grids

    double g_total(double omega_q) const { return 0.5 * theta * std::sqrt(omega_q * omega_r); }
    CouplingSpec balanced_coupling(double omega_q) const;
    CouplingSpec capacitive_coupling(double omega_q) const;
    void validate() const;
};

struct ResonatorResponse {
    std::vector<double> t;
    std::vector<std::complex<double>> alpha;  // lab frame
    double steady_state_photons = 0.0;
};

// Drive amplitude (rad/s) whose flat-top steady state holds nbar photons.
double drive_amplitude_for_photons(const ReadoutConfig& cfg, double nbar);

// Classical resonator under the readout pulse:
//   d(alpha)/dt = -i omega_r alpha - (kappa/2) alpha - i eps(t),
// with eps(t) = amplitude * envelope(t) * exp(-i omega_d t).
ResonatorResponse resonator_response(const ReadoutConfig& cfg, double amplitude, double dt_sample);

// Classical-drive Hamiltonian for the transmon in its eigenbasis:
//   H_d(alpha)/hbar = alpha C_minus + alpha* C_plus,
// with C_minus = -i g_c Q - g_l F, C_plus = +i g_c Q - g_l F, where
// Q = n_matrix / n_zpf and F = phi_matrix / phi_zpf.  Stripping zeroes the
// requested strip-changing parts while preserving Hermiticity.
struct EffectiveDrive {
    Eigen::MatrixXcd c_minus, c_plus;
    Eigen::VectorXd energies;  // eigenenergies relative to the ground state
};

EffectiveDrive effective_qubit_drive(const CouplingSpec& c, const ChargeBasisResult& basis,
                                     bool strip_k1 = false, bool strip_k3 = false);

Eigen::MatrixXcd drive_hamiltonian(const EffectiveDrive& d, std::complex<double> alpha);

struct DispersiveOptions {
    int level_cap = -1;                   // restrict the sum to this many levels (-1 = all)
    bool include_counter_rotating = true;
};

struct DispersiveShift {
    double chi = 0.0;        // rad/s; half the per-photon shift of the 0-1 transition
    bool regime_warning = false;  // some virtual denominator was below 10 g
};

// Second-order shift of the 0-1 transition per resonator photon (divided by
// two, i.e. the coefficient of sigma_z a^dag a), summed over transmon levels
// with both photon-creating and photon-annihilating virtual paths.
DispersiveShift dispersive_shift(const ReadoutConfig& cfg, const ChargeBasisResult& basis,
                                 const CouplingSpec& c, const DispersiveOptions& opt = {});

// Purely capacitive g_c whose dispersive shift matches target_chi to 0.1%.
// chi is exactly quadratic in g_c, so the root is solved in closed form and
// verified; throws BracketError if the signs make a match impossible.
double match_capacitive_coupling(const ReadoutConfig& cfg, const ChargeBasisResult& basis, double target_chi);

struct LeakagePoint {
    double omega_q = 0.0, n_g = 0.0, photons = 0.0;
    double leak0 = -1.0, leak1 = -1.0;  // -1 = not computed
    double norm_err = 0.0;
};

struct LeakageMap {
    struct Row {
        double omega_q = 0.0, photons = 0.0;
        double leak_mean0 = 0.0, leak_std0 = 0.0;
        double leak_mean1 = 0.0, leak_std1 = 0.0;
    };
    std::vector<LeakagePoint> points;  // full grid, deterministic order
    std::vector<Row> rows;             // n_g-averaged, (freq, photon) order
    std::vector<double> matched_gc;    // per-frequency coupling actually used
    std::vector<double> chi_target;    // per-frequency dispersive shift target
    std::vector<double> chi_actual;
    double max_norm_err = 0.0;
};

// Full (qubit frequency x gate charge x photon number) leakage sweep for one
// coupling mode.  Grid cells run as independent parallel tasks with results
// written into fixed slots; optional per-cell checkpoint file.
LeakageMap simulate_leakage(const ReadoutConfig& cfg, const std::string& checkpoint_path = "");

struct Panel {
    std::string name;
    ReadoutConfig cfg;
};

// Runs several panels, writing one CSV per panel plus a JSON manifest with
// parameter provenance and content hashes.  On a partial failure the
// manifest of completed points is still written before the error propagates.
std::vector<LeakageMap> run_mist_sweep(const std::vector<Panel>& panels, const std::string& out_dir);

}  // namespace bcs
