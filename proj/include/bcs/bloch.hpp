#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "bcs/driven.hpp"
#include "bcs/numeric/ode.hpp"

namespace bcs {

using Vec3 = Eigen::Vector3d;

struct BlochTrajectory {
    std::vector<double> t;
    std::vector<Vec3> rho;
    // run metadata, used by nutation_amplitude
    double omega0 = 0.0;
    double omega_r = 0.0;
    DriveWaveform drive;
    Vec3 rho0 = Vec3::UnitZ();
};

// Classical magnetic-moment precession d(rho)/dt = rho x Omega(t).
BlochTrajectory precess(const Vec3& rho0, const std::function<Vec3(double)>& field,
                        double t0, double t1, double dt_sample, const OdeOptions& opt = {.rtol = 1e-11, .atol = 1e-13});

// Static field along z plus a transverse drive taken from a DriveWaveform.
// field() returns the classical field equivalent to the two-level
// Hamiltonian H = Omega0 |e><e| - z sigma- - z* sigma+ under the moment
// convention d(rho)/dt = rho x Omega.  The two conventions precess in
// opposite senses, hence the sign flip relative to the quantum generator:
//   Omega(t) = (2 Re z(t), 2 Im z(t), -Omega0).
struct FieldSpec {
    double Omega0 = 0.0;
    DriveWaveform drive;

    std::function<Vec3(double)> field() const;
};

// Two-level evolution of H(t) = (omega0 - omega_r) sigma+ sigma-
// - ztilde(t) sigma- - ztilde*(t) sigma+ with ztilde = z e^{-i omega_r t}
// (the driven-mode Hamiltonian with abar -> sigma-).  Returns the Bloch
// vector (<sigma_x>, <sigma_y>, <sigma_z>) in the requested frame.
// rho0 must be a unit vector (pure state).
BlochTrajectory tls_drive(const Vec3& rho0, double omega0, const DriveWaveform& w, FrameSpec frame,
                          double t0, double t1, double dt_sample, const OdeOptions& opt = {.rtol = 1e-11, .atol = 1e-13});

// Analytic rotating-frame solution when the drive is a pure rotating field:
// constant-rate rotation about the fixed axis (-cos phi_d, -sin phi_d, 0)
// scaled by 2 G_d, tilted by the detuning omega0 - omega_d along z.
Vec3 rwa_rabi(const Vec3& rho0, double G_d, double phi_d, double detuning, double t);

// Transforms a trajectory between frames rotating at different rates.
BlochTrajectory to_frame(const BlochTrajectory& traj, double omega_r_new);

// RMS deviation of a trajectory from its rotating-wave counterpart: the
// analytic solution for a balanced drive with the co-rotating strength
// (G_x + G_y)/2 of the actual drive.  The comparison is frame-invariant.
// Requires at least two Rabi periods of data; returns 0 for zero drive.
double nutation_amplitude(const BlochTrajectory& traj);

}  // namespace bcs
