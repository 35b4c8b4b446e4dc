#include "bcs/driven.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "bcs/constants.hpp"

namespace bcs {

double Envelope::operator()(double t) const {
    if (t < 0.0) return 0.0;
    if (duration >= 0.0 && t >= duration) return 0.0;
    if (ramp > 0.0) {
        if (t < ramp) return 0.5 * (1.0 - std::cos(pi * t / ramp));
        if (duration >= 0.0 && t > duration - ramp)
            return 0.5 * (1.0 - std::cos(pi * (duration - t) / ramp));
    }
    return 1.0;
}

bool DriveWaveform::balanced(double rel_tol) const {
    const double scale = std::max(std::abs(G_x), std::abs(G_y));
    if (scale == 0.0) return true;
    return std::abs(G_x - G_y) <= rel_tol * scale;
}

std::complex<double> drive_z(double t, const DriveWaveform& w) {
    const double phase = w.omega_d * t + w.phi_d;
    return w.envelope(t) * std::complex<double>(w.G_x * std::cos(phase), w.G_y * std::sin(phase));
}

ModeTrajectory evolve(std::complex<double> a0, double omega0, const DriveWaveform& w, FrameSpec frame,
                      double t0, double t1, double dt_sample, const OdeOptions& opt) {
    if (!(dt_sample > 0.0)) throw std::invalid_argument("evolve: dt_sample must be positive");
    const double detuning = omega0 - frame.omega_r;
    const double wr = frame.omega_r;

    using State = Eigen::Vector<std::complex<double>, 1>;
    State y;
    y[0] = a0;
    auto rhs = [&](double t, const State& s, State& ds) {
        const std::complex<double> zc = std::conj(drive_z(t, w));
        const std::complex<double> rot = std::polar(1.0, wr * t);
        ds[0] = std::complex<double>(0.0, -1.0) * detuning * s[0] + std::complex<double>(0.0, 1.0) * zc * rot;
    };

    ModeTrajectory traj;
    traj.omega0 = omega0;
    traj.omega_r = wr;
    traj.drive = w;
    Dopri5<State> stepper(opt);
    stepper.integrate_sampled(rhs, y, t0, t1, dt_sample, [&](double t, const State& s) {
        traj.t.push_back(t);
        traj.a.push_back(s[0]);
    });
    return traj;
}

std::complex<double> analytic_unbalanced(double t, double G, double omega0) {
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> fast = (std::exp(i * (2.0 * omega0 * t)) - 1.0) / (i * (2.0 * omega0));
    return (i * G / 2.0) * (t + fast);
}

std::complex<double> analytic_balanced(double t, double G_d, double detuning, double phi_d) {
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> ph = std::exp(-i * phi_d);
    if (detuning == 0.0) return i * G_d * t * ph;
    return G_d * ph * (1.0 - std::exp(-i * detuning * t)) / detuning;
}

RippleMetrics ripple_metrics(const ModeTrajectory& traj) {
    const std::size_t n = traj.t.size();
    if (n < 16) throw std::invalid_argument("ripple_metrics: trajectory too short");
    // the ripple sits at twice the mode frequency; need at least four periods
    if (traj.omega0 > 0.0) {
        const double span = traj.t.back() - traj.t.front();
        if (span < 4.0 * pi / traj.omega0)
            throw std::invalid_argument("ripple_metrics: trajectory shorter than four ripple periods");
    }

    // least-squares line through Re(abar)
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = traj.t[i], y = traj.a[i].real();
        st += t; sy += y; stt += t * t; sty += t * y;
    }
    const double denom = n * stt - st * st;
    const double slope = (n * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / n;

    std::vector<double> resid(n);
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        resid[i] = traj.a[i].real() - (intercept + slope * traj.t[i]);
        lo = std::min(lo, resid[i]);
        hi = std::max(hi, resid[i]);
    }

    RippleMetrics m;
    m.amplitude = hi - lo;

    // interpolated zero crossings of the residual
    double first = 0.0, last = 0.0;
    int crossings = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if ((resid[i - 1] < 0.0) != (resid[i] < 0.0)) {
            const double frac = resid[i - 1] / (resid[i - 1] - resid[i]);
            const double tc = traj.t[i - 1] + frac * (traj.t[i] - traj.t[i - 1]);
            if (crossings == 0) first = tc;
            last = tc;
            ++crossings;
        }
    }
    if (crossings >= 3 && last > first)
        m.frequency = 0.5 * (crossings - 1) / (last - first);
    return m;
}

}  // namespace bcs
