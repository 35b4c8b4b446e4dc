#include "bcs/transmon.hpp"

#include <cmath>
#include <stdexcept>

#include "bcs/numeric/roots.hpp"
#include "bcs/parallel.hpp"

namespace bcs {

void TransmonModel::validate() const {
    if (!(E_J > 0.0) || !(E_C > 0.0))
        throw std::domain_error("TransmonModel: E_J and E_C must be positive");
    if (!(hbar > 0.0)) throw std::domain_error("TransmonModel: hbar must be positive");
    if (dim < 8) throw std::domain_error("TransmonModel: dim must be at least 8");
    if (n_max < 10) throw std::domain_error("TransmonModel: n_max must be at least 10");
}

double TransmonModel::omega_p() const { return std::sqrt(8.0 * E_C * E_J) / hbar; }
double TransmonModel::lambda() const { return E_C / (3.0 * hbar * omega_p()); }
double TransmonModel::n_zpf() const { return std::pow(E_J / (32.0 * E_C), 0.25); }
double TransmonModel::phi_zpf() const { return std::pow(2.0 * E_C / E_J, 0.25); }

TransmonModel TransmonModel::from_lambda(double lambda, double n_g, int dim, int n_max) {
    if (!(lambda > 0.0)) throw std::domain_error("TransmonModel::from_lambda: lambda must be positive");
    TransmonModel m;
    m.E_C = 1.0;
    m.E_J = 1.0 / (72.0 * lambda * lambda);  // from lambda = E_C/(3 sqrt(8 E_J E_C))
    m.hbar = 1.0;
    m.n_g = n_g;
    m.dim = dim;
    m.n_max = n_max;
    return m;
}

PlasmaLambda plasma_lambda(double E_J, double E_C, double hbar) {
    if (!(E_J > 0.0) || !(E_C > 0.0)) throw std::domain_error("plasma_lambda: energies must be positive");
    if (!(hbar > 0.0)) throw std::domain_error("plasma_lambda: hbar must be positive");
    PlasmaLambda out;
    out.omega_p = std::sqrt(8.0 * E_C * E_J) / hbar;
    out.lambda = E_C / (3.0 * hbar * out.omega_p);
    out.ej_over_ec = E_J / E_C;
    return out;
}

namespace {

Eigen::MatrixXd lowering(int dim) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}

struct DressedReal {
    Eigen::MatrixXd b_bar;  // real
    Eigen::MatrixXd phi;    // b_bar + b_bar^T
    Eigen::MatrixXd iq;     // b_bar - b_bar^T
};

DressedReal dressed_real(const TransmonModel& m) {
    m.validate();
    const double lam = m.lambda();
    const Eigen::MatrixXd b = lowering(m.dim);
    const Eigen::MatrixXd bd = b.transpose();
    const Eigen::MatrixXd b3 = b * b * b;
    const Eigen::MatrixXd bd3 = bd * bd * bd;
    DressedReal d;
    d.b_bar = b + (lam / 4.0) * bd3 - (lam / 2.0) * b3 + (1.5 * lam) * (bd * b) * bd;
    d.phi = d.b_bar + d.b_bar.transpose();
    d.iq = d.b_bar - d.b_bar.transpose();
    return d;
}

}  // namespace

DressedOperators dressed_operators(const TransmonModel& m) {
    const DressedReal d = dressed_real(m);
    DressedOperators out;
    out.b_bar = d.b_bar.cast<std::complex<double>>();
    out.phi_bar = d.phi.cast<std::complex<double>>();
    out.q_bar = std::complex<double>(0.0, -1.0) * d.iq.cast<std::complex<double>>();
    return out;
}

StripElements strip_matrix_elements(const TransmonModel& m, int k, int n, const CouplingSpec& c) {
    if (k < 0 || n < 0) throw std::domain_error("strip_matrix_elements: k and n must be nonnegative");
    if (k + 4 >= m.dim)
        throw std::domain_error("strip_matrix_elements: requested elements touch the top of the truncated space "
                                "(need k + 4 < dim)");
    const DressedReal d = dressed_real(m);
    StripElements e;
    // a^dag leg: (-g_l phi + g_c iq), photon factor sqrt(n+1)
    e.elem_k1_n1 = std::sqrt(n + 1.0) * (-c.g_l * d.phi(k + 1, k) + c.g_c * d.iq(k + 1, k));
    // a leg: (-g_l phi - g_c iq), photon factor sqrt(n)
    e.elem_k3_nm1 = std::sqrt(static_cast<double>(n)) * (-c.g_l * d.phi(k + 3, k) - c.g_c * d.iq(k + 3, k));
    return e;
}

double zero_crossing_ratio(const TransmonModel& m, int k, StripTransition transition) {
    if (k < 0) throw std::domain_error("zero_crossing_ratio: k must be nonnegative");
    if (k + 4 >= m.dim)
        throw std::domain_error("zero_crossing_ratio: need k + 4 < dim");
    const DressedReal d = dressed_real(m);
    double phi, iq;
    if (transition == StripTransition::k_plus_1) {
        phi = d.phi(k + 1, k);
        iq = d.iq(k + 1, k);
    } else {
        phi = d.phi(k + 3, k);
        iq = -d.iq(k + 3, k);
    }
    const double scale = std::max(std::abs(phi), std::abs(iq));
    if (scale == 0.0 || std::abs(phi) < 1e-300)
        throw std::domain_error("zero_crossing_ratio: degenerate amplitude (both coefficients vanish)");
    // amplitude = -g_l*phi + g_c*iq (up to photon factors); null at g_l/g_c = iq/phi
    return iq / phi;
}

NonRwaDecomposition non_rwa_terms(double lambda, double g) {
    NonRwaDecomposition d;
    d.h_rwa = {{"b", "ad", g}, {"bd", "a", g}};
    if (lambda == 0.0) return d;
    d.h_nonrwa_2 = {{"(bd b) bd", "ad", 1.5 * g * lambda},
                    {"bd^3", "a", -0.5 * g * lambda},
                    {"b (bd b)", "a", 1.5 * g * lambda},
                    {"b^3", "ad", -0.5 * g * lambda}};
    d.h_nonrwa_4 = {{"bd^3", "ad", 0.25 * g * lambda}, {"b^3", "a", 0.25 * g * lambda}};
    return d;
}

NonRwaDecomposition non_rwa_hamiltonian(const TransmonModel& m, double g) {
    m.validate();
    return non_rwa_terms(m.lambda(), g);
}

namespace {

// One diagonalization at a given charge truncation; returns all eigenpairs.
void charge_diag(const TransmonModel& m, int n_max, Eigen::VectorXd& evals, Eigen::MatrixXd& evecs) {
    const int N = 2 * n_max + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        const double n = static_cast<double>(i - n_max);
        h(i, i) = 4.0 * m.E_C * (n - m.n_g) * (n - m.n_g);
        if (i + 1 < N) {
            h(i, i + 1) = -0.5 * m.E_J;
            h(i + 1, i) = -0.5 * m.E_J;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("charge_basis_spectrum: eigensolver failed");
    evals = solver.eigenvalues();
    evecs = solver.eigenvectors();
}

}  // namespace

ChargeBasisResult charge_basis_spectrum(const TransmonModel& m, int levels) {
    m.validate();
    if (levels < 2) throw std::domain_error("charge_basis_spectrum: need at least 2 levels");
    const int N = 2 * m.n_max + 1;
    if (levels > N) throw std::domain_error("charge_basis_spectrum: more levels requested than basis states");

    Eigen::VectorXd evals, evals_big;
    Eigen::MatrixXd evecs, evecs_big;
    charge_diag(m, m.n_max, evals, evecs);
    charge_diag(m, m.n_max + 5, evals_big, evecs_big);
    const double top = evals[levels - 1], top_big = evals_big[levels - 1];
    const double scale = std::max(std::abs(top), m.E_C);
    if (std::abs(top - top_big) > 1e-10 * scale)
        throw std::domain_error("charge_basis_spectrum: truncation not converged; top retained eigenvalue shifts by " +
                                std::to_string(std::abs(top - top_big) / scale) + " (increase n_max)");

    ChargeBasisResult out;
    out.n_max = m.n_max;
    out.n_zpf = m.n_zpf();
    out.phi_zpf = m.phi_zpf();
    out.energies = evals.head(levels);
    out.eigvecs = evecs.leftCols(levels);
    // deterministic sign: largest-magnitude component positive
    for (int k = 0; k < levels; ++k) {
        int imax = 0;
        for (int i = 1; i < N; ++i)
            if (std::abs(out.eigvecs(i, k)) > std::abs(out.eigvecs(imax, k))) imax = i;
        if (out.eigvecs(imax, k) < 0.0) out.eigvecs.col(k) *= -1.0;
    }

    Eigen::VectorXd nvals(N);
    for (int i = 0; i < N; ++i) nvals[i] = static_cast<double>(i - m.n_max);
    out.n_matrix = out.eigvecs.transpose() * nvals.asDiagonal() * out.eigvecs;

    // phase operator: <n|phi|n'> = -i (-1)^(n'-n)/(n'-n)
    Eigen::MatrixXcd phi_charge = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const int md = j - i;
            if (md != 0) {
                const double sign = (md % 2 == 0) ? 1.0 : -1.0;
                phi_charge(i, j) = std::complex<double>(0.0, -sign / static_cast<double>(md));
            }
        }
    out.phi_matrix = out.eigvecs.cast<std::complex<double>>().adjoint() * phi_charge *
                     out.eigvecs.cast<std::complex<double>>();
    return out;
}

double solve_ej_for_frequency(double omega_q_target, double E_C, double n_g, int n_max) {
    if (!(omega_q_target > 0.0) || !(E_C > 0.0))
        throw std::domain_error("solve_ej_for_frequency: omega_q and E_C must be positive");
    auto e01 = [&](double ej) {
        TransmonModel m{ej, E_C, 1.0, n_g, 30, n_max};
        Eigen::VectorXd evals;
        Eigen::MatrixXd evecs;
        charge_diag(m, n_max, evals, evecs);
        return evals[1] - evals[0] - omega_q_target;
    };
    // harmonic estimate E01 ~ sqrt(8 E_C E_J) - E_C brackets the root well
    const double guess = (omega_q_target + E_C) * (omega_q_target + E_C) / (8.0 * E_C);
    return find_root_brent(e01, 0.3 * guess, 3.0 * guess, 0.0, 1e-13, 200);
}

std::vector<RatioSweepRow> sweep_coupling_ratio(const TransmonModel& m, int k, int n, double g_c,
                                                const std::vector<double>& ratios) {
    std::vector<RatioSweepRow> rows(ratios.size());
    parallel_for(ratios.size(), [&](std::size_t i) {
        const CouplingSpec c{g_c, ratios[i] * g_c};
        const StripElements e = strip_matrix_elements(m, k, n, c);
        rows[i] = {ratios[i], std::abs(e.elem_k1_n1), std::abs(e.elem_k3_nm1)};
    });
    return rows;
}

}  // namespace bcs
