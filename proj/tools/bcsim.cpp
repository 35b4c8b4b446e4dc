// bcsim: balanced-circuit simulation CLI.
//
// Subcommands emit CSV data files plus a JSON manifest with the resolved
// parameters and content hashes.  Frequencies on the command line are in
// cycles per unit time (multiplied by 2*pi internally); config files use SI
// units throughout.  Thread count follows OMP_NUM_THREADS.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bcs/bloch.hpp"
#include "bcs/circuit.hpp"
#include "bcs/constants.hpp"
#include "bcs/driven.hpp"
#include "bcs/io/config.hpp"
#include "bcs/io/csv.hpp"
#include "bcs/io/manifest.hpp"
#include "bcs/lines.hpp"
#include "bcs/mist.hpp"
#include "bcs/modes.hpp"
#include "bcs/transmon.hpp"

namespace {

using namespace bcs;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void write_manifest(const std::string& out_dir, const std::string& sub,
                    const std::map<std::string, std::string>& params,
                    const std::vector<std::string>& files, double seconds) {
    RunManifest m;
    m.subcommand = sub;
    m.parameters = params;
    m.output_files = files;
    m.wall_seconds = seconds;
    m.write(join_path(out_dir, sub + "_manifest.json"));
}

int cmd_drive(const std::string& out_dir, bool balanced, double f0, double g, double periods, double phi_d,
              int samples_per_period) {
    Timer timer;
    std::filesystem::create_directories(out_dir);
    const double omega0 = two_pi * f0;
    const double G = two_pi * g;
    const double t1 = periods / f0;
    const double dt = 1.0 / (f0 * samples_per_period);

    DriveWaveform w;
    w.omega_d = omega0;
    w.phi_d = phi_d;
    if (balanced) {
        // co-rotating strength G/2, the secular half of the unbalanced drive
        w.G_x = w.G_y = 0.5 * G;
    } else {
        w.G_x = G;
        w.G_y = 0.0;
    }
    const ModeTrajectory traj = evolve(0.0, omega0, w, FrameSpec{omega0}, 0.0, t1, dt);

    std::map<std::string, std::string> params{{"balanced", balanced ? "1" : "0"},
                                              {"omega0", format_g17(omega0)},
                                              {"G", format_g17(G)},
                                              {"phi_d", format_g17(phi_d)},
                                              {"frame_omega_r", format_g17(omega0)},
                                              {"t_end", format_g17(t1)}};
    const std::string path = join_path(out_dir, "drive.csv");
    CsvWriter csv(path, {"t", "re_a", "im_a", "abs_a"}, params);
    for (std::size_t i = 0; i < traj.t.size(); ++i)
        csv.row({traj.t[i], traj.a[i].real(), traj.a[i].imag(), std::abs(traj.a[i])});
    csv.close();
    write_manifest(out_dir, "drive", params, {path}, timer.seconds());
    return 0;
}

int cmd_tls(const std::string& out_dir, const std::string& variant, double f0, double g, double periods,
            double phi_d, int samples_per_period) {
    Timer timer;
    std::filesystem::create_directories(out_dir);
    const double omega0 = two_pi * f0;
    const double G = two_pi * g;
    const double t1 = periods / f0;
    const double dt = 1.0 / (f0 * samples_per_period);
    const Vec3 rho0 = Vec3::UnitZ();

    DriveWaveform w;
    w.omega_d = omega0;
    w.phi_d = phi_d;
    BlochTrajectory traj;
    if (variant == "unbalanced") {
        w.G_x = G;
        w.G_y = 0.0;
        traj = tls_drive(rho0, omega0, w, FrameSpec{omega0}, 0.0, t1, dt);
    } else if (variant == "balanced") {
        w.G_x = w.G_y = 0.5 * G;
        traj = tls_drive(rho0, omega0, w, FrameSpec{omega0}, 0.0, t1, dt);
    } else if (variant == "rwa") {
        w.G_x = w.G_y = 0.5 * G;
        traj.omega0 = omega0;
        traj.omega_r = omega0;
        traj.drive = w;
        traj.rho0 = rho0;
        long n = static_cast<long>(std::llround(t1 / dt));
        for (long i = 0; i <= n; ++i) {
            const double t = std::min(t1, i * dt);
            traj.t.push_back(t);
            traj.rho.push_back(rwa_rabi(rho0, 0.5 * G, phi_d, 0.0, t));
        }
    } else {
        throw std::runtime_error("tls: unknown variant '" + variant + "' (balanced|unbalanced|rwa)");
    }

    std::map<std::string, std::string> params{{"variant", variant},
                                              {"omega0", format_g17(omega0)},
                                              {"G", format_g17(G)},
                                              {"phi_d", format_g17(phi_d)},
                                              {"t_end", format_g17(t1)}};
    const std::string path = join_path(out_dir, "tls.csv");
    CsvWriter csv(path, {"t", "rho_x", "rho_y", "rho_z"}, params);
    for (std::size_t i = 0; i < traj.t.size(); ++i)
        csv.row({traj.t[i], traj.rho[i][0], traj.rho[i][1], traj.rho[i][2]});
    csv.close();
    write_manifest(out_dir, "tls", params, {path}, timer.seconds());
    return 0;
}

int cmd_eigen(const std::string& out_dir, const std::string& sweep, double omega, double g, double lo, double hi,
              int points, const std::string& circuit_path) {
    Timer timer;
    std::filesystem::create_directories(out_dir);
    std::map<std::string, std::string> params{{"sweep", sweep}, {"omega_a", format_g17(omega)},
                                              {"g", format_g17(g)}, {"lo", format_g17(lo)},
                                              {"hi", format_g17(hi)}, {"points", std::to_string(points)}};

    std::vector<EigenSweepRow> rows;
    if (!circuit_path.empty()) {
        // lumped-element circuit from a flat key-value file, SI units
        const Config cfg = Config::from_file(circuit_path);
        cfg.require_known({"c_a", "c_b", "l_a", "l_b", "c_g", "l_g"});
        CoupledCircuitParams p;
        p.C_a = cfg.get_double("c_a");
        p.C_b = cfg.get_double("c_b");
        p.L_a = cfg.get_double("l_a");
        p.L_b = cfg.get_double("l_b");
        p.C_g = cfg.get_double("c_g", 0.0);
        p.L_g = cfg.get_double("l_g", 0.0);
        const NormalizedCoupled n = normalize_coupled(p);
        const Spectrum full = eigenvalues_full(build_m(n));
        const Spectrum rwa = eigenvalues_rwa(n.omega_a_prime + n.omega_b_prime,
                                             n.omega_a_prime - n.omega_b_prime, n.g_minus);
        EigenSweepRow row;
        row.x = n.g_minus;
        row.w_minus_full = full.omegas[2];
        row.w_plus_full = full.omegas[3];
        row.w_minus_rwa = rwa.omegas[2];
        row.w_plus_rwa = rwa.omegas[3];
        row.rel_err = rwa_relative_error(n);
        rows.push_back(row);
        // echo the raw and normalized circuit values for provenance
        for (const auto& [k, v] : cfg.items()) params["circuit." + k] = v;
        params["omega_a_prime"] = format_g17(n.omega_a_prime);
        params["omega_b_prime"] = format_g17(n.omega_b_prime);
        params["g_c"] = format_g17(n.g_c);
        params["g_l"] = format_g17(n.g_l);
        params["g_plus"] = format_g17(n.g_plus);
        params["g_minus"] = format_g17(n.g_minus);
        params["balance_residual"] = format_g17(balance_residual(n));
    } else if (sweep == "g") {
        std::vector<double> xs(points);
        for (int i = 0; i < points; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
        rows = sweep_coupling(omega, xs);
    } else if (sweep == "wb") {
        std::vector<double> xs(points);
        for (int i = 0; i < points; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
        rows = sweep_partial_frequency(omega, g, xs);
    } else {
        throw std::runtime_error("eigen: unknown sweep '" + sweep + "' (g|wb)");
    }

    const std::string path = join_path(out_dir, "eigen.csv");
    CsvWriter csv(path, {sweep == "g" ? "g" : "omega_b", "omega_plus_full", "omega_minus_full", "omega_plus_rwa",
                         "omega_minus_rwa", "rel_err"},
                  params);
    for (const auto& r : rows)
        csv.row({r.x, r.w_plus_full, r.w_minus_full, r.w_plus_rwa, r.w_minus_rwa, r.rel_err});
    csv.close();
    write_manifest(out_dir, "eigen", params, {path}, timer.seconds());
    return 0;
}

int cmd_fig5(const std::string& out_dir, int k, int n, double lambda, double gc_hz, double lo, double hi,
             int points) {
    Timer timer;
    std::filesystem::create_directories(out_dir);
    TransmonModel m;
    m.E_C = two_pi * 0.2e9;
    m.E_J = m.E_C / (72.0 * lambda * lambda);
    m.hbar = 1.0;
    const double g_c = two_pi * gc_hz;

    std::vector<double> ratios(points);
    for (int i = 0; i < points; ++i) ratios[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    const auto rows = sweep_coupling_ratio(m, k, n, g_c, ratios);

    std::map<std::string, std::string> params{{"k", std::to_string(k)},     {"n", std::to_string(n)},
                                              {"lambda", format_g17(lambda)}, {"g_c", format_g17(g_c)},
                                              {"lo", format_g17(lo)},        {"hi", format_g17(hi)}};
    const std::string path = join_path(out_dir, "fig5.csv");
    CsvWriter csv(path, {"ratio", "abs_elem_k1_n1", "abs_elem_k3_nm1"}, params);
    for (const auto& r : rows) csv.row({r.ratio, r.abs_elem_k1_n1, r.abs_elem_k3_nm1});
    csv.close();
    write_manifest(out_dir, "fig5", params, {path}, timer.seconds());
    return 0;
}

int cmd_coupler(const std::string& out_dir, double z, double v, double lg, double cg, double length, double fmin,
                double fmax, int points) {
    Timer timer;
    std::filesystem::create_directories(out_dir);
    // z and v are the loaded characteristic impedance and velocity of each line
    LineParams p;
    p.L_a = p.L_b = z / v;
    const double c_loaded = 1.0 / (z * v);
    if (cg >= c_loaded)
        throw std::runtime_error("coupler: c_g exceeds the total line capacitance implied by --z and --v");
    p.C_a = p.C_b = c_loaded - cg;
    p.C_g = cg;
    p.L_g = lg;
    p.validate();

    std::map<std::string, std::string> params{{"z", format_g17(z)},   {"v", format_g17(v)},
                                              {"l_g", format_g17(lg)}, {"c_g", format_g17(cg)},
                                              {"length", format_g17(length)}};
    const std::string path = join_path(out_dir, "coupler.csv");
    CsvWriter csv(path, {"freq", "through_db", "coupled_db", "isolated_db"}, params);
    for (int i = 0; i < points; ++i) {
        const double f = fmin + (fmax - fmin) * static_cast<double>(i) / (points - 1);
        const CouplerResponse r = coupler_response(p, two_pi * f, length);
        auto db = [](std::complex<double> x) { return 20.0 * std::log10(std::max(std::abs(x), 1e-300)); };
        csv.row({f, db(r.through), db(r.coupled), db(r.isolated)});
    }
    csv.close();
    write_manifest(out_dir, "coupler", params, {path}, timer.seconds());
    return 0;
}

ReadoutConfig mist_config_from(const Config& cfg) {
    cfg.require_known({"omega_r", "kappa", "theta", "ratio_gl_gc", "e_c", "drive_frequency", "drive_duration",
                       "drive_ramp", "photon_numbers", "qubit_freqs", "n_g_grid", "levels", "n_max", "ode_rtol",
                       "ode_atol", "initial_state_0", "initial_state_1", "panels"});
    ReadoutConfig r;
    r.omega_r = cfg.get_double("omega_r", r.omega_r);
    r.kappa = cfg.get_double("kappa", r.kappa);
    r.theta = cfg.get_double("theta", r.theta);
    r.ratio_gl_gc = cfg.get_double("ratio_gl_gc", r.ratio_gl_gc);
    r.E_C = cfg.get_double("e_c", r.E_C);
    r.drive_frequency = cfg.get_double("drive_frequency", r.omega_r);
    r.drive_duration = cfg.get_double("drive_duration", r.drive_duration);
    r.drive_ramp = cfg.get_double("drive_ramp", r.drive_ramp);
    r.photon_numbers = cfg.get_list("photon_numbers", r.photon_numbers);
    r.qubit_freqs = cfg.get_list("qubit_freqs", r.qubit_freqs);
    r.n_g_grid = cfg.get_list("n_g_grid", r.n_g_grid);
    r.levels = cfg.get_int("levels", r.levels);
    r.n_max = cfg.get_int("n_max", r.n_max);
    r.ode_rtol = cfg.get_double("ode_rtol", r.ode_rtol);
    r.ode_atol = cfg.get_double("ode_atol", r.ode_atol);
    r.initial_state_0 = cfg.get_bool("initial_state_0", r.initial_state_0);
    r.initial_state_1 = cfg.get_bool("initial_state_1", r.initial_state_1);
    return r;
}

Panel make_panel(const std::string& name, const ReadoutConfig& base) {
    Panel p{name, base};
    if (name == "balanced") {
        p.cfg.mode = CouplingMode::balanced;
    } else if (name == "capacitive") {
        p.cfg.mode = CouplingMode::capacitive;
    } else if (name == "capacitive_matched") {
        p.cfg.mode = CouplingMode::capacitive_matched;
    } else if (name == "capacitive_stripped") {
        p.cfg.mode = CouplingMode::capacitive;
        p.cfg.strip_k1 = true;
        p.cfg.strip_k3 = true;
    } else {
        throw std::runtime_error("mist: unknown panel '" + name +
                                 "' (balanced|capacitive|capacitive_matched|capacitive_stripped)");
    }
    return p;
}

int cmd_mist(const std::string& out_dir, const std::string& config_path, const std::string& panels_csv) {
    Timer timer;
    Config cfg = config_path.empty() ? Config{} : Config::from_file(config_path);
    ReadoutConfig base = mist_config_from(cfg);

    std::string panel_spec = panels_csv.empty() ? cfg.get_string("panels", "balanced,capacitive_matched") : panels_csv;
    std::vector<Panel> panels;
    std::stringstream ss(panel_spec);
    std::string name;
    while (std::getline(ss, name, ',')) {
        const auto b = name.find_first_not_of(" \t");
        const auto e = name.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        panels.push_back(make_panel(name.substr(b, e - b + 1), base));
    }
    if (panels.empty()) throw std::runtime_error("mist: no panels requested");

    run_mist_sweep(panels, out_dir);
    std::fprintf(stderr, "mist: %zu panel(s) finished in %.1f s\n", panels.size(), timer.seconds());
    return 0;
}

#define SELF_CHECK(label, expr)                                         \
    do {                                                                \
        const bool ok_ = (expr);                                        \
        std::printf("%-58s %s\n", label, ok_ ? "ok" : "FAIL");          \
        if (!ok_) failures += 1;                                        \
    } while (0)

int cmd_selftest() {
    int failures = 0;
    const double tol = 1e-12;

    {  // circuit
        DrivenCircuitParams p{1e-9, 1e-6, 0.0, 0.0, 1e-6, 1e-6};
        auto e = effective_drive_params(p);
        SELF_CHECK("no drive coupling gives G_x = G_y = 0", e.G_x == 0.0 && e.G_y == 0.0);
        SELF_CHECK("C' = C with C_d = 0", e.C_prime == p.C);
        CoupledCircuitParams c{0.4e-12, 0.4e-12, 2e-9, 2e-9, 0.0, 0.0};
        auto n = normalize_coupled(c);
        SELF_CHECK("decoupled circuit has g_c = g_l = 0", n.g_c == 0.0 && n.g_l == 0.0);
        SELF_CHECK("symmetric circuit has equal impedances",
                   std::abs(n.Z_a_prime - n.Z_b_prime) < tol * n.Z_a_prime);
    }
    {  // driven mode
        DriveWaveform w{0.1, 0.1, two_pi, 0.0, Envelope::unit_step()};
        SELF_CHECK("balanced drive at t = 0 is purely real",
                   std::abs(drive_z(0.0, w) - std::complex<double>(0.1, 0.0)) < tol);
        SELF_CHECK("analytic unbalanced solution starts at zero", std::abs(analytic_unbalanced(0.0, 0.1, two_pi)) == 0.0);
        const auto a1 = analytic_unbalanced(1.0, 0.2 * pi, two_pi);
        SELF_CHECK("secular term after a whole fast period",
                   std::abs(a1 - std::complex<double>(0.0, 0.1 * pi)) < 1e-12);
    }
    {  // spectra
        auto full = eigenvalues_full(build_m_algebraic(20.0, 0.0, 0.2, 0.0));
        auto rwa = eigenvalues_rwa(20.0, 0.0, 0.2);
        double diff = 0.0;
        for (int i = 0; i < 4; ++i) diff = std::max(diff, std::abs(full.omegas[i] - rwa.omegas[i]));
        SELF_CHECK("g_plus = 0 makes the RWA spectrum exact", diff < 1e-12 * 20.0);
        auto dec = eigenvalues_rwa(20.0, 0.0, 0.0);
        SELF_CHECK("decoupled spectrum is +-omega", std::abs(dec.omegas[3] - 10.0) < tol);
    }
    {  // transmon
        auto pl = plasma_lambda(1.0, 1.0, 1.0);
        SELF_CHECK("lambda at E_J = E_C is 1/(3 sqrt 8)", std::abs(pl.lambda - 1.0 / (3.0 * std::sqrt(8.0))) < tol);
        TransmonModel m = TransmonModel::from_lambda(1e-9);
        auto d = dressed_operators(m);
        SELF_CHECK("dressed lowering operator is bare at lambda -> 0",
                   std::abs(d.b_bar(0, 1).real() - 1.0) < 1e-8);
    }
    {  // lines
        LineParams p;
        p.L_a = p.L_b = 4e-7;
        p.C_a = p.C_b = 6e-11;
        p.C_g = 1e-10;
        p.L_g = 2.5e-7;
        auto kc = kappa_chi(p, two_pi * 5e9);
        SELF_CHECK("matched coupling impedance nulls kappa", std::abs(kc.kappa) < 1e-9 * std::abs(kc.chi));
        WaveState s;
        s.v[0] = 1.0;
        auto out = propagate(s, p, two_pi * 5e9, 0.0);
        SELF_CHECK("zero-length propagation is the identity", std::abs(out.v[0] - 1.0) < tol);
    }

    std::printf("%s\n", failures == 0 ? "selftest passed" : "selftest FAILED");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"balanced-drive and balanced-coupling resonator simulations"};
    app.require_subcommand(1);
    std::string out_dir = ".";
    app.add_option("--out", out_dir, "output directory for CSV and manifest files");

    auto* drive = app.add_subcommand("drive", "driven-resonator trajectory in the co-rotating frame");
    bool drive_balanced = false;
    double f0 = 1.0, g = 0.1, periods = 10.0, phi_d = 0.0;
    int spp = 64;
    drive->add_flag("--balanced", drive_balanced, "balanced drive (co-rotating strength g/2)");
    drive->add_option("--omega0", f0, "resonator frequency, cycles per unit time");
    drive->add_option("--g", g, "drive strength, cycles per unit time");
    drive->add_option("--periods", periods, "number of resonator periods to integrate");
    drive->add_option("--phi", phi_d, "drive phase, rad");
    drive->add_option("--samples-per-period", spp, "output samples per resonator period");

    auto* tls = app.add_subcommand("tls", "driven two-level system on the Bloch sphere");
    std::string variant = "unbalanced";
    tls->add_option("--variant", variant, "balanced | unbalanced | rwa");
    tls->add_option("--omega0", f0, "level splitting, cycles per unit time");
    tls->add_option("--g", g, "drive strength, cycles per unit time");
    tls->add_option("--periods", periods, "number of periods to integrate");
    tls->add_option("--phi", phi_d, "drive phase, rad");
    tls->add_option("--samples-per-period", spp, "output samples per period");

    auto* eigen = app.add_subcommand("eigen", "coupled-resonator normal modes, full vs RWA");
    std::string sweep = "g", circuit_path;
    double omega_a = 10.0, g_line = 0.2, lo = 0.01, hi = 2.0;
    int points = 100;
    eigen->add_option("--sweep", sweep, "sweep variable: g (resonant coupling) or wb (partial frequency)");
    eigen->add_option("--omega", omega_a, "partial frequency omega_a'");
    eigen->add_option("--g", g_line, "coupling for the wb sweep");
    eigen->add_option("--min", lo, "sweep start");
    eigen->add_option("--max", hi, "sweep end");
    eigen->add_option("--points", points, "number of sweep points");
    eigen->add_option("--circuit", circuit_path,
                      "lumped-element circuit file (c_a, c_b, l_a, l_b, c_g, l_g in SI units); "
                      "emits the normalized record and spectra for that circuit");

    auto* fig5 = app.add_subcommand("fig5", "transmon strip matrix elements vs coupling ratio g_l/g_c");
    int k = 3, nphot = 20, rpoints = 321;
    double lambda = 0.013, gc_hz = 180e6, rlo = -3.0, rhi = 5.0;
    fig5->add_option("--k", k, "initial transmon level");
    fig5->add_option("--n", nphot, "initial photon number");
    fig5->add_option("--lambda", lambda, "transmon nonlinearity parameter");
    fig5->add_option("--gc", gc_hz, "capacitive coupling, Hz");
    fig5->add_option("--min", rlo, "ratio sweep start");
    fig5->add_option("--max", rhi, "ratio sweep end");
    fig5->add_option("--points", rpoints, "number of ratio points");

    auto* coupler = app.add_subcommand("coupler", "coupled-line directional coupler frequency response");
    double z = 50.0, vph = 1.2e8, lg = 2.5e-7, cg = 1e-10, length = 1e-3, fmin = 1e9, fmax = 10e9;
    int fpoints = 181;
    coupler->add_option("--z", z, "loaded line impedance, ohm");
    coupler->add_option("--v", vph, "loaded phase velocity, m/s");
    coupler->add_option("--lg", lg, "coupling inductance per length, H/m");
    coupler->add_option("--cg", cg, "coupling capacitance per length, F/m");
    coupler->add_option("--length", length, "coupler section length, m");
    coupler->add_option("--fmin", fmin, "sweep start, Hz");
    coupler->add_option("--fmax", fmax, "sweep end, Hz");
    coupler->add_option("--points", fpoints, "number of frequency points");

    auto* mist = app.add_subcommand("mist", "semiclassical readout leakage sweep");
    std::string config_path, panels_csv;
    mist->add_option("--config", config_path, "flat key = value config file (SI units)");
    mist->add_option("--panels", panels_csv,
                     "comma list: balanced, capacitive, capacitive_matched, capacitive_stripped");

    auto* selftest = app.add_subcommand("selftest", "quick built-in checks");
    (void)selftest;

    CLI11_PARSE(app, argc, argv);

    try {
        if (drive->parsed()) return cmd_drive(out_dir, drive_balanced, f0, g, periods, phi_d, spp);
        if (tls->parsed()) return cmd_tls(out_dir, variant, f0, g, periods, phi_d, spp);
        if (eigen->parsed()) return cmd_eigen(out_dir, sweep, omega_a, g_line, lo, hi, points, circuit_path);
        if (fig5->parsed()) return cmd_fig5(out_dir, k, nphot, lambda, gc_hz, rlo, rhi, rpoints);
        if (coupler->parsed()) return cmd_coupler(out_dir, z, vph, lg, cg, length, fmin, fmax, fpoints);
        if (mist->parsed()) return cmd_mist(out_dir, config_path, panels_csv);
        if (selftest->parsed()) return cmd_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
