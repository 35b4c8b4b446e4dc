// Compares the serial reference sweeps against the OpenMP path and checks
// that both produce identical output.  Usage: bench_sweep [--quick]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "bcs/constants.hpp"
#include "bcs/mist.hpp"
#include "bcs/modes.hpp"
#include "bcs/parallel.hpp"

using namespace bcs;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

template <class F>
double timed(F&& f) {
    const double t0 = now_seconds();
    f();
    return now_seconds() - t0;
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;

    std::printf("threads available: %d\n\n", max_threads());
    std::printf("%-28s %10s %10s %8s %s\n", "benchmark", "serial[s]", "openmp[s]", "speedup", "identical");

    {  // eigenvalue sweep
        std::vector<double> gs;
        const int n = quick ? 2000 : 20000;
        for (int i = 0; i < n; ++i) gs.push_back(0.001 + 1.5 * i / (n - 1.0));
        std::vector<EigenSweepRow> serial_rows, parallel_rows;
        parallel_enabled() = false;
        const double ts = timed([&] { serial_rows = sweep_coupling(10.0, gs); });
        parallel_enabled() = true;
        const double tp = timed([&] { parallel_rows = sweep_coupling(10.0, gs); });
        bool same = serial_rows.size() == parallel_rows.size();
        for (std::size_t i = 0; same && i < serial_rows.size(); ++i)
            same = serial_rows[i].w_plus_full == parallel_rows[i].w_plus_full &&
                   serial_rows[i].rel_err == parallel_rows[i].rel_err;
        std::printf("%-28s %10.3f %10.3f %8.2f %s\n", "eigen sweep", ts, tp, ts / tp, same ? "yes" : "NO");
    }

    {  // readout leakage cells
        ReadoutConfig cfg;
        cfg.qubit_freqs = {two_pi * 4.2e9, two_pi * 4.6e9};
        cfg.n_g_grid = quick ? std::vector<double>{-0.25, 0.0} : std::vector<double>{-0.5, -0.375, -0.25, -0.125, 0.0};
        cfg.photon_numbers = {5.0, 20.0};
        cfg.drive_duration = quick ? 30e-9 : 100e-9;
        cfg.levels = 12;
        cfg.initial_state_1 = false;
        LeakageMap ms, mp;
        parallel_enabled() = false;
        const double ts = timed([&] { ms = simulate_leakage(cfg); });
        parallel_enabled() = true;
        const double tp = timed([&] { mp = simulate_leakage(cfg); });
        bool same = ms.points.size() == mp.points.size();
        for (std::size_t i = 0; same && i < ms.points.size(); ++i) same = ms.points[i].leak0 == mp.points[i].leak0;
        std::printf("%-28s %10.3f %10.3f %8.2f %s\n", "readout leakage cells", ts, tp, ts / tp, same ? "yes" : "NO");
    }

    return 0;
}
