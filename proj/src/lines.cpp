#include "bcs/lines.hpp"

#include <cmath>
#include <stdexcept>

#include "bcs/numeric/expm.hpp"

namespace bcs {

namespace {
const std::complex<double> I(0.0, 1.0);
}

void LineParams::validate() const {
    if (!(L_a > 0.0) || !(L_b > 0.0) || !(C_a > 0.0) || !(C_b > 0.0))
        throw std::domain_error("LineParams: per-length self inductances and capacitances must be positive");
    if (L_g < 0.0 || C_g < 0.0)
        throw std::domain_error("LineParams: coupling quantities must be nonnegative");
    if (L_g * L_g >= L_a * L_b)
        throw std::domain_error("LineParams: coupling inductance exceeds the geometric mean of the self inductances");
}

double LineParams::z_a_bare() const { return std::sqrt(L_a / C_a); }
double LineParams::z_b_bare() const { return std::sqrt(L_b / C_b); }
double LineParams::v_a_bare() const { return 1.0 / std::sqrt(L_a * C_a); }
double LineParams::v_b_bare() const { return 1.0 / std::sqrt(L_b * C_b); }
double LineParams::z_a() const { return std::sqrt(L_a / (C_a + C_g)); }
double LineParams::z_b() const { return std::sqrt(L_b / (C_b + C_g)); }
double LineParams::v_a() const { return 1.0 / std::sqrt(L_a * (C_a + C_g)); }
double LineParams::v_b() const { return 1.0 / std::sqrt(L_b * (C_b + C_g)); }

KappaChi kappa_chi(const LineParams& p, double omega) {
    p.validate();
    if (!(omega > 0.0)) throw std::domain_error("kappa_chi: omega must be positive");
    const double zg = std::sqrt(p.z_a() * p.z_b());
    KappaChi k;
    k.kappa = 0.5 * omega * (p.L_g / zg - p.C_g * zg);
    k.chi = 0.5 * omega * (p.L_g / zg + p.C_g * zg);
    k.beta_a = omega / p.v_a();
    k.beta_b = omega / p.v_b();
    return k;
}

Eigen::Matrix4cd vi_generator(const LineParams& p, double omega) {
    p.validate();
    if (!(omega > 0.0)) throw std::domain_error("vi_generator: omega must be positive");
    Eigen::Matrix4d k;
    k << 0.0, p.L_a, 0.0, p.L_g,
         p.C_a + p.C_g, 0.0, -p.C_g, 0.0,
         0.0, p.L_g, 0.0, p.L_b,
         -p.C_g, 0.0, p.C_b + p.C_g, 0.0;
    return I * omega * k.cast<std::complex<double>>();
}

Eigen::Matrix4d wave_basis_change(const LineParams& p) {
    const double ra = std::sqrt(p.z_a()), rb = std::sqrt(p.z_b());
    Eigen::Matrix4d b;
    b << 1.0 / ra, ra, 0.0, 0.0,
         0.0, 0.0, 1.0 / rb, -rb,
         1.0 / ra, -ra, 0.0, 0.0,
         0.0, 0.0, 1.0 / rb, rb;
    return b;
}

Eigen::Matrix4cd wave_generator(const LineParams& p, double omega) {
    const KappaChi k = kappa_chi(p, omega);
    Eigen::Matrix4d m;
    m << k.beta_a, -k.chi, 0.0, k.kappa,
         k.chi, -k.beta_b, -k.kappa, 0.0,
         0.0, -k.kappa, -k.beta_a, k.chi,
         k.kappa, 0.0, -k.chi, k.beta_b;
    return I * m.cast<std::complex<double>>();
}

WaveState propagate(const WaveState& s0, const LineParams& p, double omega, double length) {
    if (length < 0.0) throw std::domain_error("propagate: length must be nonnegative");
    if (length == 0.0) return s0;
    const Eigen::Matrix4cd t = expm(wave_generator(p, omega) * length);
    Eigen::Vector4cd x;
    for (int i = 0; i < 4; ++i) x[i] = s0.v[i];
    const Eigen::Vector4cd y = t * x;
    WaveState out;
    for (int i = 0; i < 4; ++i) out.v[i] = y[i];
    return out;
}

double CouplerResponse::isolation_db() const { return 20.0 * std::log10(std::abs(isolated)); }

CouplerResponse coupler_response(const LineParams& p, double omega, double length) {
    const Eigen::Matrix4cd t = expm(wave_generator(p, omega) * length);
    // Matched terminations: the only incoming wave is a+ = 1 at x = 0.
    // X(0) = (1, b+0, a-0, 0), X(L) = (a+L, 0, 0, b-L); T X(0) = X(L) gives a
    // linear system for u = (a+L, b+0, a-0, b-L).
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    Eigen::Vector4cd rhs;
    for (int i = 0; i < 4; ++i) {
        a(i, 0) = (i == 0) ? -1.0 : 0.0;
        a(i, 1) = t(i, 1);
        a(i, 2) = t(i, 2);
        a(i, 3) = (i == 3) ? -1.0 : 0.0;
        rhs[i] = -t(i, 0);
    }
    const Eigen::Vector4cd u = a.partialPivLu().solve(rhs);
    CouplerResponse r;
    r.through = u[0];
    r.coupled = u[1];
    r.reflected = u[2];
    r.isolated = u[3];
    return r;
}

}  // namespace bcs
