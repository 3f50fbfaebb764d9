#include "aldc/spectral.hpp"

#include "aldc/core.hpp"
#include "aldc/parallel.hpp"
#include "aldc/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace aldc {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::VectorXd singular_values(const ComplexMatrix& a) {
    // Hermitian inputs (every matrix this module produces) take the
    // eigenvalue path; anything else falls back to a full SVD.
    if (a.rows() == a.cols() && is_hermitian(a, 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
        if (solver.info() != Eigen::Success) {
            throw Error("singular_values: eigenvalue iteration failed to converge");
        }
        return solver.eigenvalues().cwiseAbs();
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    if (svd.info() != Eigen::Success) {
        throw Error("singular_values: SVD failed to converge");
    }
    return svd.singularValues();
}

}  // namespace

double trace_norm(const ComplexMatrix& a) { return singular_values(a).sum(); }

double spectral_norm(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    return singular_values(a).maxCoeff();
}

int numerical_rank(const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0) return 0;
    const double cutoff = static_cast<double>(std::max(a.rows(), a.cols())) *
                          std::numeric_limits<double>::epsilon() * sigma.maxCoeff();
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma[i] > cutoff) ++rank;
    }
    return rank;
}

int numerical_rank(const ComplexMatrix& a) {
    const Eigen::VectorXd sigma = singular_values(a);
    if (sigma.size() == 0) return 0;
    const double cutoff = static_cast<double>(std::max(a.rows(), a.cols())) *
                          std::numeric_limits<double>::epsilon() * sigma.maxCoeff();
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma[i] > cutoff) ++rank;
    }
    return rank;
}

OneQueryBound one_query_bound_check(const CodeConfig& code, double alpha) {
    if (code.q != 1) throw UnsupportedError("one_query_bound_check: 1-query codes only");
    const VerificationReport report = verify(code, alpha);
    if (!report.verified()) {
        throw PreconditionError("one_query_bound_check: code does not verify at alpha=" +
                                std::to_string(alpha));
    }
    OneQueryBound out;
    out.alpha = alpha;
    out.delta = report.density;
    if (out.delta == 0.0 || alpha == 0.0) {
        out.bound = std::numeric_limits<double>::infinity();
        out.holds = true;
    } else {
        out.bound = kE / (alpha * alpha * out.delta);
        out.holds = static_cast<double>(code.d) <= out.bound;
    }
    return out;
}

ComplexMatrix fourier_matrix(const CodeConfig& code, int i) {
    if (i < 0 || i >= code.d) throw DomainError("fourier_matrix: direction index out of range");
    const auto n = static_cast<Eigen::Index>(code.n());
    ComplexMatrix m(n, n);
    for (Eigen::Index s = 0; s < n; ++s) {
        m(s, s) = 0.0;
        for (Eigen::Index t = s + 1; t < n; ++t) {
            const RealVec diff = code.points[static_cast<std::size_t>(s)] -
                                 code.points[static_cast<std::size_t>(t)];
            const double coeff = diff[i] * std::exp(-0.5 * diff.squaredNorm());
            m(s, t) = std::complex<double>(0.0, -coeff);
            m(t, s) = std::complex<double>(0.0, coeff);
        }
    }
    return m;
}

WitnessBound matching_witness_bound(const CodeConfig& code, int i) {
    if (code.q != 2) throw UnsupportedError("matching_witness_bound: 2-query codes only");
    if (i < 0 || i >= code.d) {
        throw DomainError("matching_witness_bound: direction index out of range");
    }
    const double alpha = simple_alpha(code);
    if (alpha <= 0.0) {
        throw PreconditionError("matching_witness_bound: code is not simple at positive alpha");
    }
    if (code.total_tuples() > 0) {
        const auto [lo, hi] = boundedness(code);
        if (lo < 1.0 - 1e-9 || hi > 2.0 + 1e-9) {
            throw PreconditionError("matching_witness_bound: code is not 2-bounded (lengths [" +
                                    std::to_string(lo) + "," + std::to_string(hi) + "])");
        }
    }

    const ComplexMatrix f_hat = fourier_matrix(code, i);
    WitnessBound out;
    out.trace_norm_value = trace_norm(f_hat);
    const DirectionMatching* matching = code.matching_for(i);
    if (matching != nullptr) {
        out.pairs = matching->tuples.size();
        for (const auto& t : matching->tuples) {
            // both (s,t) and (t,s) carry unit-modulus phases; disjointness of
            // the pairs keeps the witness spectral norm at 1
            out.witness_value += 2.0 * std::abs(f_hat(static_cast<Eigen::Index>(t[0]),
                                                      static_cast<Eigen::Index>(t[1])));
        }
    }
    out.paper_floor = alpha / kE * static_cast<double>(out.pairs);
    out.certified = out.trace_norm_value >= out.witness_value - 1e-9 &&
                    out.witness_value >= out.paper_floor - 1e-9;
    return out;
}

SpectralReport trace_inequality_check(const CodeConfig& code) {
    if (code.q != 2) throw UnsupportedError("trace_inequality_check: 2-query codes only");
    code.validate();
    SpectralReport report;
    report.alpha = simple_alpha(code);
    report.delta = code.density();
    const auto n = static_cast<double>(code.n());

    report.trace_norms.assign(static_cast<std::size_t>(code.d), 0.0);
    parallel_for(static_cast<std::size_t>(code.d), [&](std::size_t i) {
        report.trace_norms[i] = trace_norm(fourier_matrix(code, static_cast<int>(i)));
    });
    for (int i = 0; i < code.d; ++i) {
        const DirectionMatching* m = code.matching_for(i);
        const double pairs = m == nullptr ? 0.0 : static_cast<double>(m->tuples.size());
        report.witness_floors.push_back(report.alpha / kE * pairs);
        report.lhs += report.trace_norms[static_cast<std::size_t>(i)] *
                      report.trace_norms[static_cast<std::size_t>(i)];
    }
    report.rhs = 2.0 * std::log(2.0 * kE * n) * n * n;
    report.holds = report.lhs <= report.rhs * (1.0 + 1e-12);
    const double exponent = report.alpha * report.alpha * report.delta * report.delta *
                            static_cast<double>(code.d) / (2.0 * kE * kE);
    report.implied_bound = std::exp(exponent) / (2.0 * kE);
    return report;
}

NckResult nck_montecarlo(const std::vector<ComplexMatrix>& matrices, std::size_t samples,
                         std::uint64_t seed) {
    if (matrices.empty()) throw ParamError("nck_montecarlo: need at least one matrix");
    if (samples < 2) throw ParamError("nck_montecarlo: need at least 2 samples");
    const Eigen::Index n = matrices[0].rows();
    for (const auto& a : matrices) {
        if (a.rows() != n || a.cols() != n) {
            throw ParamError("nck_montecarlo: matrices must share one square shape");
        }
        if (!is_hermitian(a, 1e-10)) {
            throw PreconditionError("nck_montecarlo: input matrix is not Hermitian");
        }
    }

    std::vector<double> values(samples, 0.0);
    parallel_for(samples, [&](std::size_t s) {
        rng::Engine eng(rng::derive(seed, s));
        ComplexMatrix sum = ComplexMatrix::Zero(n, n);
        for (const auto& a : matrices) sum += eng.normal() * a;
        const double norm = spectral_norm(sum);
        values[s] = norm * norm;
    });

    NckResult out;
    for (double v : values) out.estimate += v;
    out.estimate /= static_cast<double>(samples);
    double var = 0.0;
    for (double v : values) var += (v - out.estimate) * (v - out.estimate);
    var /= static_cast<double>(samples - 1);
    out.std_error = std::sqrt(var / static_cast<double>(samples));

    ComplexMatrix squares = ComplexMatrix::Zero(n, n);
    for (const auto& a : matrices) squares += a * a;
    out.bound = 2.0 * std::log(2.0 * kE * static_cast<double>(n)) * spectral_norm(squares);
    out.holds = out.estimate <= out.bound + 3.0 * out.std_error;
    return out;
}

BoundedCodeBound bounded_code_bound(double alpha, double delta, double c, int d) {
    if (alpha <= 0.0 || alpha > 1.0) throw ParamError("bounded_code_bound: alpha must be in (0,1]");
    if (delta < 0.0 || delta > 1.0) throw ParamError("bounded_code_bound: delta must be in [0,1]");
    if (c < 1.0) throw ParamError("bounded_code_bound: c must be at least 1");
    if (d < 1) throw ParamError("bounded_code_bound: d must be at least 1");
    BoundedCodeBound out;
    out.log_c_ceil = std::max(1, static_cast<int>(std::ceil(std::log2(c))));
    out.delta_prime = delta / static_cast<double>(out.log_c_ceil);
    out.exponent = alpha * alpha * out.delta_prime * out.delta_prime * static_cast<double>(d) /
                   (2.0 * kE * kE);
    out.value = std::exp(out.exponent) / (2.0 * kE);
    return out;
}

}  // namespace aldc
