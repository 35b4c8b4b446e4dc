#pragma once

#include <complex>
#include <vector>

#include "bcs/numeric/ode.hpp"

namespace bcs {

// Drive envelope: unit step at t = 0 by default, optionally with cosine
// ramps on both ends of a finite pulse.
struct Envelope {
    double ramp = 0.0;       // ramp time; 0 = hard step
    double duration = -1.0;  // pulse length; < 0 = stays on

    double operator()(double t) const;

    static Envelope unit_step() { return {}; }
    static Envelope cosine_pulse(double ramp_time, double pulse_duration) {
        return {ramp_time, pulse_duration};
    }
};

// Simultaneous magnetic (G_x) and electric (G_y) drive.  Strengths are
// angular rates (hbar = 1 units); x(t) = cos(omega_d t + phi_d) and
// y(t) = sin(omega_d t + phi_d).  The drive is balanced when G_x = G_y,
// which makes z(t) a pure rotating field G_d exp(i(omega_d t + phi_d)).
struct DriveWaveform {
    double G_x = 0.0;
    double G_y = 0.0;
    double omega_d = 0.0;
    double phi_d = 0.0;
    Envelope envelope = Envelope::unit_step();

    bool balanced(double rel_tol = 1e-12) const;
    // co-rotating strength: G_d for balanced drive, G_x/2 for a purely
    // magnetic drive (the "with frame" half of the linear decomposition)
    double co_rotating_strength() const { return 0.5 * (G_x + G_y); }
};

// z(t) = envelope(t) * (G_x x(t) + i G_y y(t))
std::complex<double> drive_z(double t, const DriveWaveform& w);

struct FrameSpec {
    double omega_r = 0.0;  // 0 = lab frame
};

struct ModeTrajectory {
    std::vector<double> t;
    std::vector<std::complex<double>> a;
    // run metadata
    double omega0 = 0.0;
    double omega_r = 0.0;
    DriveWaveform drive;
};

// Integrates the driven-mode equation of motion
//   d/dt abar = -i (omega0 - omega_r) abar + i z*(t) exp(i omega_r t)
// from Hamilton's equations for H_r = (omega0 - omega_r)|abar|^2
// - z abar e^{-i omega_r t} - c.c. (hbar = 1).  With omega_r = 0 this is the
// lab-frame motion.  Samples every dt_sample.
ModeTrajectory evolve(std::complex<double> a0, double omega0, const DriveWaveform& w, FrameSpec frame,
                      double t0, double t1, double dt_sample, const OdeOptions& opt = {.rtol = 1e-10, .atol = 1e-14});

// Closed form for an unbalanced magnetic drive z(t) = G cos(omega0 t)
// switched on at t = 0, in the frame co-rotating at omega0:
//   abar(t) = (i G / 2) (t + (e^{i 2 omega0 t} - 1)/(i 2 omega0))
std::complex<double> analytic_unbalanced(double t, double G, double omega0);

// Exact solution for a balanced drive in the frame rotating with the drive;
// detuning = omega0 - omega_d.  Resonant limit: i G_d t e^{-i phi_d}.
std::complex<double> analytic_balanced(double t, double G_d, double detuning, double phi_d = 0.0);

struct RippleMetrics {
    double amplitude = 0.0;  // excursion of Re(abar) about its linear trend
    double frequency = 0.0;  // cycles per unit time, from zero crossings
};

// Quantifies the fast residual oscillation of a rotating-frame trajectory.
// The secular part is removed by a least-squares linear fit of Re(abar);
// the amplitude is the peak-to-peak excursion of the residual and the
// frequency comes from interpolated zero crossings.  Throws if the
// trajectory is too short to hold at least four ripple periods.
RippleMetrics ripple_metrics(const ModeTrajectory& traj);

}  // namespace bcs
