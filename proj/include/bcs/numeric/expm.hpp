#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace bcs {

namespace detail {

inline Eigen::MatrixXcd pade13(const Eigen::MatrixXcd& a) {
    // Higham (2005) degree-13 Pade coefficients
    static const double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0, 129060195264000.0, 10559470521600.0,
        670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
        960960.0, 16380.0, 182.0, 1.0};
    const long n = a.rows();
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd a2 = a * a;
    Eigen::MatrixXcd a4 = a2 * a2;
    Eigen::MatrixXcd a6 = a2 * a4;
    Eigen::MatrixXcd u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    Eigen::MatrixXcd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return (v - u).partialPivLu().solve(v + u);
}

}  // namespace detail

// Dense matrix exponential by scaling-and-squaring with a degree-13 Pade
// approximant.  Intended for small matrices (4x4 propagators and the like).
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
    const double theta13 = 5.371920351148152;
    double nrm = a.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
    int s = 0;
    if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    Eigen::MatrixXcd r = detail::pade13(a / std::pow(2.0, s));
    for (int i = 0; i < s; ++i) r = r * r;
    return r;
}

}  // namespace bcs
