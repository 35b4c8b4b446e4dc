#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "bcs/constants.hpp"

namespace bcs {

// Weakly anharmonic oscillator defined by Josephson and charging energies.
// Energies are in units of hbar * (angular rate) when hbar = 1 is passed,
// or joules with the physical hbar.  dim truncates the oscillator (Fock)
// representation, n_max the charge representation (states -n_max..n_max).
struct TransmonModel {
    double E_J = 0.0;
    double E_C = 0.0;
    double hbar = 1.0;
    double n_g = 0.0;
    int dim = 30;
    int n_max = 20;

    void validate() const;
    double omega_p() const;  // sqrt(8 E_C E_J)/hbar
    double lambda() const;   // E_C/(3 hbar omega_p)
    double n_zpf() const;    // (E_J/(32 E_C))^(1/4)
    double phi_zpf() const;  // (2 E_C/E_J)^(1/4)

    // Model with a prescribed nonlinearity lambda at unit charging energy.
    static TransmonModel from_lambda(double lambda, double n_g = 0.0, int dim = 30, int n_max = 20);
};

struct PlasmaLambda {
    double omega_p = 0.0;
    double lambda = 0.0;
    double ej_over_ec = 0.0;
};

PlasmaLambda plasma_lambda(double E_J, double E_C, double hbar);

// First-order dressed operators on the truncated Fock space:
//   b_bar   = b + (lambda/4) bd^3 - (lambda/2) b^3 + (3 lambda/2)(bd b) bd
//   phi_bar = b_bar + b_bar^dag   (real symmetric)
//   q_bar   = -i (b_bar - b_bar^dag)  (Hermitian)
struct DressedOperators {
    Eigen::MatrixXcd b_bar, phi_bar, q_bar;
};

DressedOperators dressed_operators(const TransmonModel& m);

// Capacitive and inductive qubit-resonator coupling rates.  Balanced means
// g_c = -g_l, the condition that removes the counter-rotating coupling for
// harmonic modes.
struct CouplingSpec {
    double g_c = 0.0;
    double g_l = 0.0;

    bool balanced(double rel_tol = 1e-12) const {
        double s = std::max(std::abs(g_c), std::abs(g_l));
        return s == 0.0 || std::abs(g_c + g_l) <= rel_tol * s;
    }
};

// Strip-changing amplitudes of the dressed coupling Hamiltonian
// (-g_l phi_bar - i g_c q_bar) a + (-g_l phi_bar + i g_c q_bar) a^dag,
// divided by hbar:
//   elem_k1_n1:  <k+1, n+1| . |k, n>   (two excitations up)
//   elem_k3_nm1: <k+3, n-1| . |k, n>   (two excitations up, photon down)
struct StripElements {
    std::complex<double> elem_k1_n1;
    std::complex<double> elem_k3_nm1;
};

StripElements strip_matrix_elements(const TransmonModel& m, int k, int n, const CouplingSpec& c);

enum class StripTransition { k_plus_1, k_plus_3 };

// Ratio g_l/g_c at which the selected strip-changing amplitude vanishes.
// Independent of the photon number, which enters only as a common factor.
double zero_crossing_ratio(const TransmonModel& m, int k, StripTransition transition);

// One term of a coupling Hamiltonian written over (transmon op, resonator op)
// pairs, e.g. {"bd^3", "ad", g*lambda/4}.
struct CouplingTerm {
    std::string qubit_op;
    std::string resonator_op;
    double coeff = 0.0;
};

// Balanced coupling g_c = -g_l = g/2 split into the excitation-preserving
// part and the residual terms connecting strips 2 and 4 excitations apart.
struct NonRwaDecomposition {
    std::vector<CouplingTerm> h_rwa;
    std::vector<CouplingTerm> h_nonrwa_2;
    std::vector<CouplingTerm> h_nonrwa_4;
};

NonRwaDecomposition non_rwa_terms(double lambda, double g);
NonRwaDecomposition non_rwa_hamiltonian(const TransmonModel& m, double g);

// Exact transmon in the charge basis: H = 4 E_C (n - n_g)^2
// - (E_J/2) sum(|n><n+1| + h.c.), diagonalized with `levels` eigenpairs
// retained.  n_matrix holds <k|n|k'>; phi_matrix holds the matrix elements
// of the phase operator (multiplication by phi on (-pi, pi]), whose
// charge-basis kernel is <n|phi|n'> = -i (-1)^(n'-n)/(n'-n).
struct ChargeBasisResult {
    Eigen::VectorXd energies;     // sorted, lowest `levels`
    Eigen::MatrixXd eigvecs;      // (2 n_max + 1) x levels, deterministic phases
    Eigen::MatrixXd n_matrix;     // levels x levels, real
    Eigen::MatrixXcd phi_matrix;  // levels x levels, Hermitian
    double n_zpf = 0.0, phi_zpf = 0.0;
    int n_max = 0;
};

ChargeBasisResult charge_basis_spectrum(const TransmonModel& m, int levels);

// E_J such that the exact 0-1 transition equals omega_q_target (hbar = 1
// units: E_C and the result are angular rates).
double solve_ej_for_frequency(double omega_q_target, double E_C, double n_g = 0.0, int n_max = 25);

struct RatioSweepRow {
    double ratio = 0.0;
    double abs_elem_k1_n1 = 0.0;
    double abs_elem_k3_nm1 = 0.0;
};

// |strip amplitudes| as a function of g_l/g_c at fixed g_c.
std::vector<RatioSweepRow> sweep_coupling_ratio(const TransmonModel& m, int k, int n, double g_c,
                                                const std::vector<double>& ratios);

}  // namespace bcs
