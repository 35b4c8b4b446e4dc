#include "bcs/mist.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <stdexcept>

#include "bcs/driven.hpp"
#include "bcs/io/csv.hpp"
#include "bcs/io/manifest.hpp"
#include "bcs/numeric/ode.hpp"
#include "bcs/numeric/roots.hpp"
#include "bcs/parallel.hpp"

namespace bcs {

namespace {
const std::complex<double> I(0.0, 1.0);
}

ReadoutConfig::ReadoutConfig() {
    qubit_freqs.resize(10);
    for (int i = 0; i < 10; ++i)
        qubit_freqs[i] = two_pi * (4e9 + 1e9 * static_cast<double>(i) / 9.0);
    n_g_grid.resize(20);
    for (int i = 0; i < 20; ++i)
        n_g_grid[i] = -0.5 + 0.5 * static_cast<double>(i) / 19.0;
}

CouplingSpec ReadoutConfig::balanced_coupling(double omega_q) const {
    const double g_tot = g_total(omega_q);
    const double g_c = g_tot / (1.0 + std::abs(ratio_gl_gc));
    return {g_c, ratio_gl_gc * g_c};
}

CouplingSpec ReadoutConfig::capacitive_coupling(double omega_q) const {
    return {g_total(omega_q), 0.0};
}

void ReadoutConfig::validate() const {
    if (!(omega_r > 0.0) || !(kappa > 0.0)) throw std::domain_error("ReadoutConfig: omega_r and kappa must be positive");
    if (!(drive_duration > 0.0)) throw std::domain_error("ReadoutConfig: drive duration must be positive");
    if (levels < 10) throw std::domain_error("ReadoutConfig: need at least 10 transmon levels");
    if (qubit_freqs.empty() || n_g_grid.empty() || photon_numbers.empty())
        throw std::domain_error("ReadoutConfig: empty sweep grid");
    if (!initial_state_0 && !initial_state_1)
        throw std::domain_error("ReadoutConfig: at least one initial state must be enabled");
}

double drive_amplitude_for_photons(const ReadoutConfig& cfg, double nbar) {
    if (nbar < 0.0) throw std::domain_error("drive_amplitude_for_photons: photon number must be nonnegative");
    const double det = cfg.omega_r - cfg.drive_frequency;
    return std::sqrt(nbar) * std::sqrt(det * det + 0.25 * cfg.kappa * cfg.kappa);
}

ResonatorResponse resonator_response(const ReadoutConfig& cfg, double amplitude, double dt_sample) {
    cfg.validate();
    const double det = cfg.omega_r - cfg.drive_frequency;
    const Envelope env = Envelope::cosine_pulse(cfg.drive_ramp, cfg.drive_duration);
    using State = Eigen::Vector<std::complex<double>, 1>;
    State y;
    y[0] = 0.0;
    // frame rotating with the drive; alpha = y exp(-i omega_d t)
    auto rhs = [&](double t, const State& s, State& ds) {
        ds[0] = -(I * det + 0.5 * cfg.kappa) * s[0] - I * amplitude * env(t);
    };
    ResonatorResponse out;
    const double ss_amp = amplitude / std::sqrt(det * det + 0.25 * cfg.kappa * cfg.kappa);
    out.steady_state_photons = ss_amp * ss_amp;
    Dopri5<State> stepper({.rtol = 1e-10, .atol = 1e-14});
    stepper.integrate_sampled(rhs, y, 0.0, cfg.drive_duration, dt_sample, [&](double t, const State& s) {
        out.t.push_back(t);
        out.alpha.push_back(s[0] * std::polar(1.0, -cfg.drive_frequency * t));
    });
    return out;
}

EffectiveDrive effective_qubit_drive(const CouplingSpec& c, const ChargeBasisResult& basis,
                                     bool strip_k1, bool strip_k3) {
    const int d = static_cast<int>(basis.energies.size());
    const Eigen::MatrixXcd q = basis.n_matrix.cast<std::complex<double>>() / basis.n_zpf;
    const Eigen::MatrixXcd f = basis.phi_matrix / basis.phi_zpf;
    EffectiveDrive out;
    out.c_minus = -I * c.g_c * q - c.g_l * f;
    out.c_plus = I * c.g_c * q - c.g_l * f;
    // Stripping acts on conjugate pairs so H stays Hermitian.  For the
    // (k+1, k) elements only the photon-creating (counter-rotating) part is
    // strip-changing; every part of the (k+3, k) elements changes strip.
    if (strip_k1) {
        for (int k = 0; k + 1 < d; ++k) {
            out.c_plus(k + 1, k) = 0.0;
            out.c_minus(k, k + 1) = 0.0;
        }
    }
    if (strip_k3) {
        for (int k = 0; k + 3 < d; ++k) {
            out.c_minus(k + 3, k) = 0.0;
            out.c_plus(k + 3, k) = 0.0;
            out.c_minus(k, k + 3) = 0.0;
            out.c_plus(k, k + 3) = 0.0;
        }
    }
    out.energies = basis.energies - Eigen::VectorXd::Constant(d, basis.energies[0]);
    return out;
}

Eigen::MatrixXcd drive_hamiltonian(const EffectiveDrive& d, std::complex<double> alpha) {
    return alpha * d.c_minus + std::conj(alpha) * d.c_plus;
}

DispersiveShift dispersive_shift(const ReadoutConfig& cfg, const ChargeBasisResult& basis,
                                 const CouplingSpec& c, const DispersiveOptions& opt) {
    const int d = static_cast<int>(basis.energies.size());
    const int cap = (opt.level_cap > 0 && opt.level_cap < d) ? opt.level_cap : d;
    const EffectiveDrive drv = effective_qubit_drive(c, basis);
    const double g_scale = std::sqrt(c.g_c * c.g_c + c.g_l * c.g_l);

    DispersiveShift out;
    // d/dn of the second-order shift of level k: the photon-creating leg
    // carries C_plus and a detuning E_k - E_j - omega_r; the annihilating leg
    // carries C_minus and E_k - E_j + omega_r.
    auto level_shift_rate = [&](int k) {
        double s = 0.0;
        for (int j = 0; j < cap; ++j) {
            const double dkj = drv.energies[k] - drv.energies[j];
            const double den_plus = dkj - cfg.omega_r;
            const double den_minus = dkj + cfg.omega_r;
            if (std::abs(den_plus) < 10.0 * g_scale || std::abs(den_minus) < 10.0 * g_scale)
                out.regime_warning = true;
            const bool keep_plus = opt.include_counter_rotating || j < k;
            const bool keep_minus = opt.include_counter_rotating || j > k;
            if (keep_plus) s += std::norm(drv.c_plus(j, k)) / den_plus;
            if (keep_minus) s += std::norm(drv.c_minus(j, k)) / den_minus;
        }
        return s;
    };
    out.chi = 0.5 * (level_shift_rate(1) - level_shift_rate(0));
    return out;
}

double match_capacitive_coupling(const ReadoutConfig& cfg, const ChargeBasisResult& basis, double target_chi) {
    const double g_ref = cfg.g_total(two_pi * 5e9);
    const double chi_ref = dispersive_shift(cfg, basis, {g_ref, 0.0}).chi;
    if (chi_ref == 0.0 || target_chi / chi_ref <= 0.0)
        throw BracketError("match_capacitive_coupling: no purely capacitive coupling reaches the target shift (signs differ)");
    // chi is exactly quadratic in g_c for a purely capacitive coupling
    const double g = g_ref * std::sqrt(target_chi / chi_ref);
    const double chi = dispersive_shift(cfg, basis, {g, 0.0}).chi;
    if (std::abs(chi - target_chi) > 1e-3 * std::abs(target_chi))
        return find_root_brent([&](double x) { return dispersive_shift(cfg, basis, {x, 0.0}).chi - target_chi; },
                               0.1 * g, 10.0 * g, 0.0, 1e-12, 200);
    return g;
}

namespace {

struct CellResult {
    std::vector<double> leak0, leak1, norm_err;  // per photon number
};

// One (qubit frequency, gate charge) cell: fixed transmon and drive
// operators, integrated once per photon number and initial state.
CellResult run_cell(const ReadoutConfig& cfg, double ej, const CouplingSpec& coupling, double n_g) {
    TransmonModel tm{ej, cfg.E_C, 1.0, n_g, 30, cfg.n_max};
    const ChargeBasisResult basis = charge_basis_spectrum(tm, cfg.levels);
    const EffectiveDrive drv = effective_qubit_drive(coupling, basis, cfg.strip_k1, cfg.strip_k3);

    const int d = cfg.levels;
    const double det = cfg.omega_r - cfg.drive_frequency;
    const Envelope env = Envelope::cosine_pulse(cfg.drive_ramp, cfg.drive_duration);

    using Vec = Eigen::VectorXcd;
    Vec psi(d), w1(d), w2(d), phase(d);
    double rhs_eps = 0.0;  // set per photon number below
    auto rhs = [&](double t, const Vec& y, Vec& dy) {
        const double e = env(t);
        dy[d] = -(I * det + 0.5 * cfg.kappa) * y[d] - I * rhs_eps * e;
        const std::complex<double> alpha = y[d] * std::polar(1.0, -cfg.drive_frequency * t);
        for (int j = 0; j < d; ++j) {
            phase[j] = std::polar(1.0, drv.energies[j] * t);
            psi[j] = std::conj(phase[j]) * y[j];
        }
        w1.noalias() = drv.c_minus * psi;
        w2.noalias() = drv.c_plus * psi;
        const std::complex<double> ac = std::conj(alpha);
        for (int j = 0; j < d; ++j) dy[j] = -I * phase[j] * (alpha * w1[j] + ac * w2[j]);
    };

    CellResult res;
    for (double nbar : cfg.photon_numbers) {
        rhs_eps = drive_amplitude_for_photons(cfg, nbar);
        double worst_norm = 0.0;
        auto run_one = [&](int k0) {
            Vec y = Vec::Zero(d + 1);
            y[k0] = 1.0;
            Dopri5<Vec> stepper({.rtol = cfg.ode_rtol, .atol = cfg.ode_atol});
            stepper.integrate(rhs, y, 0.0, cfg.drive_duration);
            double norm2 = 0.0;
            for (int j = 0; j < d; ++j) norm2 += std::norm(y[j]);
            const double nerr = std::abs(std::sqrt(norm2) - 1.0);
            worst_norm = std::max(worst_norm, nerr);
            if (nerr > 1e-6)
                throw OdeError("simulate_leakage: norm drift " + std::to_string(nerr) + " exceeds 1e-6");
            return 1.0 - (std::norm(y[0]) + std::norm(y[1])) / norm2;
        };
        res.leak0.push_back(cfg.initial_state_0 ? run_one(0) : -1.0);
        res.leak1.push_back(cfg.initial_state_1 ? run_one(1) : -1.0);
        res.norm_err.push_back(worst_norm);
    }
    return res;
}

}  // namespace

LeakageMap simulate_leakage(const ReadoutConfig& cfg, const std::string& checkpoint_path) {
    cfg.validate();
    const std::size_t nf = cfg.qubit_freqs.size();
    const std::size_t ng = cfg.n_g_grid.size();
    const std::size_t np = cfg.photon_numbers.size();

    LeakageMap map;
    map.points.resize(nf * ng * np);
    map.matched_gc.resize(nf);
    map.chi_target.resize(nf);
    map.chi_actual.resize(nf);

    // per-frequency setup: transmon E_J and the coupling for this panel
    std::vector<double> ejs(nf);
    std::vector<CouplingSpec> couplings(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        const double wq = cfg.qubit_freqs[i];
        ejs[i] = solve_ej_for_frequency(wq, cfg.E_C, 0.0, cfg.n_max);
        TransmonModel tm{ejs[i], cfg.E_C, 1.0, 0.0, 30, cfg.n_max};
        const ChargeBasisResult basis = charge_basis_spectrum(tm, cfg.levels);
        const double chi_bal = dispersive_shift(cfg, basis, cfg.balanced_coupling(wq)).chi;
        map.chi_target[i] = chi_bal;
        switch (cfg.mode) {
            case CouplingMode::balanced:
                couplings[i] = cfg.balanced_coupling(wq);
                break;
            case CouplingMode::capacitive:
                couplings[i] = cfg.capacitive_coupling(wq);
                break;
            case CouplingMode::capacitive_matched:
                couplings[i] = {match_capacitive_coupling(cfg, basis, chi_bal), 0.0};
                break;
        }
        map.matched_gc[i] = couplings[i].g_c;
        map.chi_actual[i] = dispersive_shift(cfg, basis, couplings[i]).chi;
    }

    std::FILE* ckpt = nullptr;
    if (!checkpoint_path.empty()) {
        ckpt = std::fopen(checkpoint_path.c_str(), "w");
        if (!ckpt) throw std::runtime_error("simulate_leakage: cannot open checkpoint " + checkpoint_path);
    }
    std::mutex ckpt_mutex;
    std::vector<char> cell_done(nf * ng, 0);

    auto run_cells = [&]() {
        parallel_for(nf * ng, [&](std::size_t cell) {
            const std::size_t i = cell / ng;
            const std::size_t j = cell % ng;
            const CellResult res = run_cell(cfg, ejs[i], couplings[i], cfg.n_g_grid[j]);
            for (std::size_t p = 0; p < np; ++p) {
                LeakagePoint& pt = map.points[(i * ng + j) * np + p];
                pt.omega_q = cfg.qubit_freqs[i];
                pt.n_g = cfg.n_g_grid[j];
                pt.photons = cfg.photon_numbers[p];
                pt.leak0 = res.leak0[p];
                pt.leak1 = res.leak1[p];
                pt.norm_err = res.norm_err[p];
            }
            cell_done[cell] = 1;
            if (ckpt) {
                std::lock_guard<std::mutex> lock(ckpt_mutex);
                for (std::size_t p = 0; p < np; ++p) {
                    const LeakagePoint& pt = map.points[(i * ng + j) * np + p];
                    std::fprintf(ckpt, "%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", i, j, pt.photons, pt.leak0, pt.leak1,
                                 pt.norm_err);
                }
                std::fflush(ckpt);
            }
        });
    };

    try {
        run_cells();
    } catch (...) {
        if (ckpt) {
            std::size_t done = 0;
            for (char c : cell_done) done += (c != 0);
            std::fprintf(ckpt, "# PARTIAL FAILURE: %zu of %zu cells completed\n", done, nf * ng);
            std::fclose(ckpt);
        }
        throw;
    }
    if (ckpt) std::fclose(ckpt);

    // n_g average in fixed index order (deterministic for any thread count)
    for (std::size_t i = 0; i < nf; ++i) {
        for (std::size_t p = 0; p < np; ++p) {
            LeakageMap::Row row;
            row.omega_q = cfg.qubit_freqs[i];
            row.photons = cfg.photon_numbers[p];
            double s0 = 0.0, s1 = 0.0, ss0 = 0.0, ss1 = 0.0;
            for (std::size_t j = 0; j < ng; ++j) {
                const LeakagePoint& pt = map.points[(i * ng + j) * np + p];
                map.max_norm_err = std::max(map.max_norm_err, pt.norm_err);
                s0 += pt.leak0;
                ss0 += pt.leak0 * pt.leak0;
                s1 += pt.leak1;
                ss1 += pt.leak1 * pt.leak1;
            }
            const double inv = 1.0 / static_cast<double>(ng);
            row.leak_mean0 = s0 * inv;
            row.leak_std0 = std::sqrt(std::max(0.0, ss0 * inv - row.leak_mean0 * row.leak_mean0));
            row.leak_mean1 = s1 * inv;
            row.leak_std1 = std::sqrt(std::max(0.0, ss1 * inv - row.leak_mean1 * row.leak_mean1));
            map.rows.push_back(row);
        }
    }
    return map;
}

std::vector<LeakageMap> run_mist_sweep(const std::vector<Panel>& panels, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<LeakageMap> maps;
    RunManifest manifest;
    manifest.subcommand = "mist";
    const auto t_start = std::chrono::steady_clock::now();

    for (const auto& panel : panels) {
        const std::string csv_path = out_dir + "/" + panel.name + ".csv";
        const std::string ckpt_path = out_dir + "/" + panel.name + "_checkpoint.csv";
        LeakageMap map = simulate_leakage(panel.cfg, ckpt_path);

        std::map<std::string, std::string> params;
        params["panel"] = panel.name;
        params["omega_r"] = format_g17(panel.cfg.omega_r);
        params["kappa"] = format_g17(panel.cfg.kappa);
        params["theta"] = format_g17(panel.cfg.theta);
        params["ratio_gl_gc"] = format_g17(panel.cfg.ratio_gl_gc);
        params["e_c"] = format_g17(panel.cfg.E_C);
        params["drive_duration"] = format_g17(panel.cfg.drive_duration);
        params["levels"] = std::to_string(panel.cfg.levels);
        params["strip_k1"] = panel.cfg.strip_k1 ? "1" : "0";
        params["strip_k3"] = panel.cfg.strip_k3 ? "1" : "0";
        CsvWriter csv(csv_path,
                      {"omega_q_over_2pi", "photon_number", "leakage_mean_0", "leakage_std_over_ng_0",
                       "leakage_mean_1", "leakage_std_over_ng_1"},
                      params);
        for (const auto& row : map.rows)
            csv.row({row.omega_q / two_pi, row.photons, row.leak_mean0, row.leak_std0, row.leak_mean1, row.leak_std1});
        csv.close();
        manifest.output_files.push_back(csv_path);
        for (const auto& [k, v] : params) manifest.parameters[panel.name + "." + k] = v;
        maps.push_back(std::move(map));
    }

    manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    manifest.write(out_dir + "/manifest.json");
    return maps;
}

}  // namespace bcs
