#include "bcs/bloch.hpp"

#include <cmath>
#include <stdexcept>

#include "bcs/constants.hpp"

namespace bcs {

namespace {

using State2 = Eigen::Vector2cd;

// Basis |e> = (1,0), |g> = (0,1); sigma_z = diag(1,-1), sigma- = |g><e|.
// rho_x + i rho_y = 2 <sigma+> = 2 conj(psi_e) psi_g.
Vec3 bloch_of(const State2& psi) {
    const std::complex<double> c = std::conj(psi[0]) * psi[1];
    return Vec3(2.0 * c.real(), 2.0 * c.imag(), std::norm(psi[0]) - std::norm(psi[1]));
}

State2 state_of(const Vec3& rho) {
    const double norm = rho.norm();
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("tls_drive: initial Bloch vector must be unit length for a pure state");
    const double theta = std::acos(std::clamp(rho[2] / norm, -1.0, 1.0));
    const double phi = std::atan2(rho[1], rho[0]);
    State2 psi;
    psi[0] = std::cos(theta / 2.0);
    psi[1] = std::sin(theta / 2.0) * std::polar(1.0, phi);
    return psi;
}

}  // namespace

BlochTrajectory precess(const Vec3& rho0, const std::function<Vec3(double)>& field,
                        double t0, double t1, double dt_sample, const OdeOptions& opt) {
    Vec3 y = rho0;
    auto rhs = [&](double t, const Vec3& r, Vec3& dr) { dr = r.cross(field(t)); };
    BlochTrajectory traj;
    traj.rho0 = rho0;
    Dopri5<Vec3> stepper(opt);
    stepper.integrate_sampled(rhs, y, t0, t1, dt_sample, [&](double t, const Vec3& r) {
        traj.t.push_back(t);
        traj.rho.push_back(r);
    });
    return traj;
}

std::function<Vec3(double)> FieldSpec::field() const {
    const double w0 = Omega0;
    const DriveWaveform w = drive;
    return [w0, w](double t) {
        const std::complex<double> z = drive_z(t, w);
        return Vec3(2.0 * z.real(), 2.0 * z.imag(), -w0);
    };
}

BlochTrajectory tls_drive(const Vec3& rho0, double omega0, const DriveWaveform& w, FrameSpec frame,
                          double t0, double t1, double dt_sample, const OdeOptions& opt) {
    State2 psi = state_of(rho0);
    const double delta = omega0 - frame.omega_r;
    const double wr = frame.omega_r;
    auto rhs = [&](double t, const State2& s, State2& ds) {
        const std::complex<double> zt = drive_z(t, w) * std::polar(1.0, -wr * t);
        // H = delta |e><e| - zt |g><e| - zt* |e><g|
        ds[0] = std::complex<double>(0.0, -1.0) * (delta * s[0] - std::conj(zt) * s[1]);
        ds[1] = std::complex<double>(0.0, -1.0) * (-zt * s[0]);
    };
    BlochTrajectory traj;
    traj.omega0 = omega0;
    traj.omega_r = wr;
    traj.drive = w;
    traj.rho0 = rho0;
    Dopri5<State2> stepper(opt);
    stepper.integrate_sampled(rhs, psi, t0, t1, dt_sample, [&](double t, const State2& s) {
        traj.t.push_back(t);
        traj.rho.push_back(bloch_of(s));
    });
    return traj;
}

Vec3 rwa_rabi(const Vec3& rho0, double G_d, double phi_d, double detuning, double t) {
    // H_r = detuning sigma+ sigma- - G_d (e^{i phi} sigma- + e^{-i phi} sigma+)
    //     = (hbar/2) Omega . sigma  (up to identity) with
    // Omega = (-2 G_d cos phi, -2 G_d sin phi, detuning), and the Bloch vector
    // obeys d(rho)/dt = Omega x rho.  Constant axis: Rodrigues rotation.
    Vec3 omega(-2.0 * G_d * std::cos(phi_d), -2.0 * G_d * std::sin(phi_d), detuning);
    const double rate = omega.norm();
    if (rate == 0.0) return rho0;
    const Vec3 n = omega / rate;
    const double ang = rate * t;
    return rho0 * std::cos(ang) + n.cross(rho0) * std::sin(ang) + n * (n.dot(rho0)) * (1.0 - std::cos(ang));
}

BlochTrajectory to_frame(const BlochTrajectory& traj, double omega_r_new) {
    BlochTrajectory out = traj;
    const double dw = omega_r_new - traj.omega_r;
    if (dw == 0.0) return out;
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        // (x + iy)_new = e^{-i dw t} (x + iy)_old, from <sigma+> in the
        // frame rotated by e^{i omega_r t |e><e|}
        const double c = std::cos(dw * traj.t[i]), s = std::sin(dw * traj.t[i]);
        const Vec3& r = traj.rho[i];
        out.rho[i] = Vec3(c * r[0] + s * r[1], -s * r[0] + c * r[1], r[2]);
    }
    out.omega_r = omega_r_new;
    return out;
}

double nutation_amplitude(const BlochTrajectory& traj) {
    const double gd = traj.drive.co_rotating_strength();
    if (gd == 0.0) return 0.0;
    if (traj.t.size() < 4) throw std::invalid_argument("nutation_amplitude: trajectory too short");
    const double span = traj.t.back() - traj.t.front();
    if (span < two_pi / gd)  // two Rabi periods at rate 2 G_d
        throw std::invalid_argument("nutation_amplitude: need at least two Rabi periods of data");

    // compare in the frame rotating with the drive, where the RWA solution
    // is a constant-axis rotation
    const BlochTrajectory rot = to_frame(traj, traj.drive.omega_d);
    const double detuning = traj.omega0 - traj.drive.omega_d;
    double acc = 0.0;
    for (std::size_t i = 0; i < rot.t.size(); ++i) {
        const Vec3 ref = rwa_rabi(rot.rho.front(), gd, traj.drive.phi_d, detuning, rot.t[i] - rot.t.front());
        acc += (rot.rho[i] - ref).squaredNorm();
    }
    return std::sqrt(acc / static_cast<double>(rot.t.size()));
}

}  // namespace bcs
