#pragma once

#include "aldc/types.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace aldc {

using ComplexMatrix = Eigen::MatrixXcd;

struct OneQueryBound {
    double alpha = 0.0;
    double delta = 0.0;
    double bound = 0.0;  // e / (alpha^2 delta); +inf when delta == 0
    bool holds = false;  // d <= bound
};

/// 1-query length bound d <= e/(alpha^2 delta).
OneQueryBound one_query_bound_check(const CodeConfig& code, double alpha);

/// First-level Fourier-Hermite coefficient of F(x) = (e^{-i<x, v_s - v_t>}):
/// entry (s,t) = -i (v_s - v_t)_i exp(-||v_s - v_t||^2 / 2). Hermitian.
ComplexMatrix fourier_matrix(const CodeConfig& code, int i);

/// Sum of singular values. Hermitian inputs take the eigenvalue path.
double trace_norm(const ComplexMatrix& a);

/// Maximum singular value.
double spectral_norm(const ComplexMatrix& a);

/// Numerical rank with threshold max(rows,cols) * eps * sigma_max.
int numerical_rank(const Eigen::MatrixXd& a);
int numerical_rank(const ComplexMatrix& a);

struct WitnessBound {
    double witness_value = 0.0;    // <F_hat(e_i), X> for the dual witness X
    double paper_floor = 0.0;      // (alpha/e) |M_i|
    double trace_norm_value = 0.0;
    std::size_t pairs = 0;
    bool certified = false;        // trace_norm >= witness >= floor - 1e-9
};

/// Dual witness for ||F_hat(e_i)||_S1 >= (alpha/e)|M_i|: unit-modulus
/// phases on the matched positions (both (s,t) and (t,s)), zero elsewhere.
/// Requires a simple, 2-bounded code.
WitnessBound matching_witness_bound(const CodeConfig& code, int i);

struct SpectralReport {
    std::vector<double> trace_norms;     // per direction
    std::vector<double> witness_floors;  // (alpha/e)|M_i| per direction
    double alpha = 0.0;
    double delta = 0.0;
    double lhs = 0.0;           // sum_i ||F_hat(e_i)||_S1^2
    double rhs = 0.0;           // 2 ln(2 e n) n^2
    bool holds = false;
    double implied_bound = 0.0; // exp(alpha^2 delta^2 d / (2 e^2)) / (2 e)
};

/// Both sides of the trace-norm Fourier inequality with
/// E||F(x)||_S1^2 = n^2, plus the implied length bound.
SpectralReport trace_inequality_check(const CodeConfig& code);

struct NckResult {
    double estimate = 0.0;  // mean ||sum_i x_i A_i||_Sinf^2 over Gaussian x
    double std_error = 0.0;
    double bound = 0.0;     // 2 ln(2 e n) ||sum_i A_i^2||_Sinf
    bool holds = false;     // estimate <= bound + 3 std errors
};

/// Monte Carlo check of the matrix Khintchine bound for Hermitian A_i.
NckResult nck_montecarlo(const std::vector<ComplexMatrix>& matrices,
                         std::size_t samples, std::uint64_t seed);

struct BoundedCodeBound {
    int log_c_ceil = 1;
    double delta_prime = 0.0;  // delta / ceil(log2 c)
    double exponent = 0.0;     // alpha^2 delta'^2 d / (2 e^2)
    double value = 0.0;        // exp(exponent) / (2 e)
};

/// Explicit simple c-bounded code bound via the 2-bounded reduction.
BoundedCodeBound bounded_code_bound(double alpha, double delta, double c, int d);

}  // namespace aldc
