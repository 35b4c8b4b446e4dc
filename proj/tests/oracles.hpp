#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace oracle {

// Characteristic polynomial of a 4x4 real matrix by cofactor expansion of
// det(xI - A), coefficients for x^4 + c3 x^3 + c2 x^2 + c1 x + c0.
inline std::array<double, 4> charpoly4(const Eigen::Matrix4d& a) {
    // Leverrier: traces of powers
    const Eigen::Matrix4d a2 = a * a;
    const Eigen::Matrix4d a3 = a2 * a;
    const Eigen::Matrix4d a4 = a3 * a;
    const double p1 = a.trace(), p2 = a2.trace(), p3 = a3.trace(), p4 = a4.trace();
    const double c3 = -p1;
    const double c2 = (p1 * p1 - p2) / 2.0;
    const double c1 = -(p1 * p1 * p1 - 3.0 * p1 * p2 + 2.0 * p3) / 6.0;
    const double c0 = (p1 * p1 * p1 * p1 - 6.0 * p1 * p1 * p2 + 3.0 * p2 * p2 + 8.0 * p1 * p3 - 6.0 * p4) / 24.0;
    return {c0, c1, c2, c3};
}

// Durand-Kerner root finder for x^4 + c3 x^3 + c2 x^2 + c1 x + c0.
inline std::array<std::complex<double>, 4> quartic_roots(const std::array<double, 4>& c) {
    using C = std::complex<double>;
    auto p = [&](C x) { return (((x + c[3]) * x + c[2]) * x + c[1]) * x + c[0]; };
    std::array<C, 4> r{C(1.0, 0.3), C(-0.6, 1.1), C(-1.1, -0.7), C(0.4, -1.3)};
    // scale initial guesses to the coefficient magnitude
    double scale = 1.0;
    for (double ci : c) scale = std::max(scale, std::abs(ci));
    scale = std::pow(scale, 0.25);
    for (auto& x : r) x *= scale;
    for (int it = 0; it < 500; ++it) {
        double moved = 0.0;
        for (int i = 0; i < 4; ++i) {
            C denom = 1.0;
            for (int j = 0; j < 4; ++j)
                if (j != i) denom *= (r[i] - r[j]);
            const C step = p(r[i]) / denom;
            r[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14 * scale) break;
    }
    return r;
}

// Fixed-step RK4 for a linear complex system dX/dx = G X.
inline Eigen::VectorXcd rk4_linear(const Eigen::MatrixXcd& g, Eigen::VectorXcd x, double length, int steps) {
    const double h = length / steps;
    for (int i = 0; i < steps; ++i) {
        const Eigen::VectorXcd k1 = g * x;
        const Eigen::VectorXcd k2 = g * (x + 0.5 * h * k1);
        const Eigen::VectorXcd k3 = g * (x + 0.5 * h * k2);
        const Eigen::VectorXcd k4 = g * (x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

// Matrix exponential by plain Taylor series with scaling (slow, independent
// of the Pade path).
inline Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    int s = 0;
    double nrm = a.cwiseAbs().sum();
    while (nrm > 0.5) {
        nrm /= 2.0;
        ++s;
    }
    const Eigen::MatrixXcd b = a / std::pow(2.0, s);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k < 40; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

}  // namespace oracle
