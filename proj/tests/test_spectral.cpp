#include "aldc/spectral.hpp"

#include "aldc/constructions.hpp"
#include "aldc/core.hpp"
#include "aldc/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace aldc;

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

// Monte Carlo estimate of E[x_i e^{-i<x,w>}] over standard Gaussian x,
// with per-component standard errors.
struct GaussianEstimate {
    std::complex<double> mean;
    double se_re = 0.0;
    double se_im = 0.0;
};

GaussianEstimate hermite_coefficient_by_sampling(const RealVec& w, int i,
                                                 std::size_t samples, std::uint64_t seed) {
    rng::Engine eng(seed);
    const int d = static_cast<int>(w.size());
    double sum_re = 0.0, sum_im = 0.0, sq_re = 0.0, sq_im = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const RealVec x = eng.gaussian(d);
        const double phase = -x.dot(w);
        const double re = x[i] * std::cos(phase);
        const double im = x[i] * std::sin(phase);
        sum_re += re;
        sum_im += im;
        sq_re += re * re;
        sq_im += im * im;
    }
    const double n = static_cast<double>(samples);
    GaussianEstimate out;
    out.mean = {sum_re / n, sum_im / n};
    out.se_re = std::sqrt((sq_re / n - (sum_re / n) * (sum_re / n)) / n);
    out.se_im = std::sqrt((sq_im / n - (sum_im / n) * (sum_im / n)) / n);
    return out;
}

ComplexMatrix random_hermitian(int n, rng::Engine& eng) {
    ComplexMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
        a(r, r) = eng.normal();
        for (int c = r + 1; c < n; ++c) {
            a(r, c) = std::complex<double>(eng.normal(), eng.normal());
            a(c, r) = std::conj(a(r, c));
        }
    }
    return a;
}

}  // namespace

TEST_CASE("one-query bound on basis codes") {
    for (int d : {1, 4, 16, 32}) {
        const OneQueryBound bound = one_query_bound_check(basis_code(d), 1.0);
        CHECK(bound.delta == doctest::Approx(1.0 / d));
        CHECK(bound.bound == doctest::Approx(kE * d).epsilon(1e-12));
        CHECK(bound.holds);
    }
    CHECK_THROWS_AS(one_query_bound_check(hypercube(2), 1.0), UnsupportedError);
}

TEST_CASE("one-query bound holds at the achieved alpha of random codes") {
    rng::Engine eng(88);
    for (int trial = 0; trial < 30; ++trial) {
        CodeConfig code;
        code.d = 2 + static_cast<int>(eng.below(10));
        code.q = 1;
        const int n = code.d + static_cast<int>(eng.below(20));
        for (int j = 0; j < n; ++j) code.points.push_back(eng.unit_sphere(code.d));
        for (int i = 0; i < code.d; ++i) {
            code.matchings.push_back({i, {Tuple{static_cast<Index>(i % n)}}});
        }
        const double achieved = verify(code, 0.0).achieved_alpha;
        if (achieved == 0.0) continue;
        const OneQueryBound bound = one_query_bound_check(code, achieved);
        CHECK(static_cast<double>(code.d) <= bound.bound * (1.0 + 1e-9));
    }
}

TEST_CASE("fourier_matrix closed form") {
    const CodeConfig cube = hypercube(3);
    const ComplexMatrix f_hat = fourier_matrix(cube, 1);
    for (Eigen::Index s = 0; s < f_hat.rows(); ++s) CHECK(f_hat(s, s) == 0.0);
    // matched pairs differ by e_1: magnitude e^{-1/2}
    for (const auto& t : cube.matching_for(1)->tuples) {
        const auto entry = f_hat(static_cast<Eigen::Index>(t[0]),
                                 static_cast<Eigen::Index>(t[1]));
        CHECK(std::abs(entry) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
        CHECK(entry.real() == 0.0);  // -i times a real coefficient
    }
    // Hermitian structure
    CHECK((f_hat - f_hat.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fourier_matrix matches the Gaussian sampling oracle") {
    rng::Engine eng(303);
    CodeConfig code;
    code.d = 6;
    code.q = 2;
    code.points = {eng.gaussian(6) * 0.5, eng.gaussian(6) * 0.5};
    const int i = 2;
    const ComplexMatrix f_hat = fourier_matrix(code, i);
    const RealVec w = code.points[0] - code.points[1];
    const GaussianEstimate mc = hermite_coefficient_by_sampling(w, i, 100000, 7);
    const auto closed = f_hat(0, 1);
    CHECK(std::abs(closed.real() - mc.mean.real()) < 3.0 * mc.se_re + 1e-12);
    CHECK(std::abs(closed.imag() - mc.mean.imag()) < 3.0 * mc.se_im + 1e-12);
}

TEST_CASE("parseval sanity for scalar phase functions") {
    // sum_i v_i^2 e^{-||v||^2} <= E|f|^2 = 1
    rng::Engine eng(5150);
    for (int trial = 0; trial < 100; ++trial) {
        const RealVec v = eng.gaussian(8);
        const double lhs = v.squaredNorm() * std::exp(-v.squaredNorm());
        CHECK(lhs <= 1.0 + 1e-12);
    }
}

TEST_CASE("trace and spectral norms") {
    CHECK(trace_norm(ComplexMatrix::Identity(5, 5)) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(spectral_norm(ComplexMatrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-12));

    // rank-1 f f^* with ||f||^2 = n has trace norm n
    rng::Engine eng(42);
    for (int n : {4, 16, 64}) {
        Eigen::VectorXcd f(n);
        for (int s = 0; s < n; ++s) {
            const double phase = eng.uniform(0.0, 6.283185307179586);
            f[s] = std::complex<double>(std::cos(phase), std::sin(phase));
        }
        const ComplexMatrix outer = f * f.adjoint();
        CHECK(trace_norm(outer) == doctest::Approx(static_cast<double>(n)).epsilon(1e-8));
        CHECK(spectral_norm(outer) == doctest::Approx(static_cast<double>(n)).epsilon(1e-8));
    }
}

TEST_CASE("trace norm dominates trace inner products with contractions") {
    rng::Engine eng(1234);
    const int n = 12;
    const ComplexMatrix a = random_hermitian(n, eng);
    const double s1 = trace_norm(a);
    for (int trial = 0; trial < 100; ++trial) {
        ComplexMatrix x = random_hermitian(n, eng);
        x /= spectral_norm(x);  // ||X||_Sinf = 1
        const double inner = std::abs((a.adjoint() * x).trace());
        CHECK(inner <= s1 * (1.0 + 1e-9));
    }
}

TEST_CASE("matching witness bound on hypercubes") {
    for (int d : {3, 4, 5}) {
        const CodeConfig cube = hypercube(d);
        const double pairs = std::exp2(d - 1);
        for (int i = 0; i < d; ++i) {
            const WitnessBound bound = matching_witness_bound(cube, i);
            CHECK(bound.pairs == static_cast<std::size_t>(pairs));
            // every matched entry has magnitude e^{-1/2} > 1/e
            CHECK(bound.witness_value ==
                  doctest::Approx(2.0 * pairs * std::exp(-0.5)).epsilon(1e-12));
            CHECK(bound.paper_floor == doctest::Approx(pairs / kE).epsilon(1e-12));
            CHECK(bound.certified);
            CHECK(bound.trace_norm_value >= bound.witness_value - 1e-9);
        }
    }
}

TEST_CASE("matching witness bound edge cases") {
    // empty matching: vacuous certificate
    CodeConfig code = hypercube(3);
    code.matchings[2].tuples.clear();
    const WitnessBound vacuous = matching_witness_bound(code, 2);
    CHECK(vacuous.pairs == 0);
    CHECK(vacuous.witness_value == 0.0);
    CHECK(vacuous.certified);

    // non-2-bounded input is rejected
    CodeConfig wide = hypercube(3);
    for (auto& p : wide.points) p *= 3.0;
    CHECK_THROWS_AS(matching_witness_bound(wide, 0), PreconditionError);

    // matched entries clear the alpha/e floor
    const CodeConfig cube = hypercube(4);
    const ComplexMatrix f_hat = fourier_matrix(cube, 0);
    for (const auto& t : cube.matching_for(0)->tuples) {
        CHECK(std::abs(f_hat(static_cast<Eigen::Index>(t[0]),
                             static_cast<Eigen::Index>(t[1]))) >= 1.0 / kE);
    }
}

TEST_CASE("trace inequality on hypercubes") {
    for (int d : {4, 6}) {
        const SpectralReport report = trace_inequality_check(hypercube(d));
        CHECK(report.holds);
        CHECK(report.lhs <= report.rhs);
        CHECK(report.alpha == 1.0);
        CHECK(report.delta == 0.5);
        CHECK(report.implied_bound ==
              doctest::Approx(std::exp(0.25 * d / (2.0 * kE * kE)) / (2.0 * kE))
                  .epsilon(1e-12));
        for (int i = 0; i < d; ++i) {
            CHECK(report.trace_norms[static_cast<std::size_t>(i)] >=
                  report.witness_floors[static_cast<std::size_t>(i)] - 1e-9);
        }
    }
}

TEST_CASE("trace inequality on a single point") {
    CodeConfig single;
    single.d = 3;
    single.q = 2;
    single.points = {RealVec::Zero(3)};
    const SpectralReport report = trace_inequality_check(single);
    CHECK(report.lhs == 0.0);
    CHECK(report.holds);
}

TEST_CASE("trace inequality on random 2-query codes") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const CodeConfig code = random_code(6, 24, 2, 0.3, seed);
        const SpectralReport report = trace_inequality_check(code);
        CHECK(report.holds);
    }
}

TEST_CASE("nck montecarlo") {
    // d=1, A=I: E[x^2] = 1 <= 2 log(2en)
    const std::vector<ComplexMatrix> identity{ComplexMatrix::Identity(8, 8)};
    const NckResult single = nck_montecarlo(identity, 4000, 5);
    CHECK(single.estimate == doctest::Approx(1.0).epsilon(0.1));
    CHECK(single.holds);

    // diagonal projectors: max of n squared Gaussians ~ 2 ln n
    for (int n : {8, 32}) {
        std::vector<ComplexMatrix> diag;
        for (int i = 0; i < n; ++i) {
            ComplexMatrix a = ComplexMatrix::Zero(n, n);
            a(i, i) = 1.0;
            diag.push_back(std::move(a));
        }
        const NckResult result = nck_montecarlo(diag, 3000, 11);
        CHECK(result.estimate >= std::log(static_cast<double>(n)));  // loose floor
        CHECK(result.holds);
        CHECK(result.bound == doctest::Approx(2.0 * std::log(2.0 * kE * n)).epsilon(1e-12));
    }

    // commuting (diagonal) random families
    rng::Engine eng(77);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<ComplexMatrix> family;
        for (int i = 0; i < 6; ++i) {
            ComplexMatrix a = ComplexMatrix::Zero(10, 10);
            for (int r = 0; r < 10; ++r) a(r, r) = eng.normal();
            family.push_back(std::move(a));
        }
        CHECK(nck_montecarlo(family, 10000, trial).holds);
    }

    ComplexMatrix skew = ComplexMatrix::Zero(3, 3);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(nck_montecarlo({skew}, 100, 1), PreconditionError);
}

TEST_CASE("bounded code bound") {
    CHECK(bounded_code_bound(1.0, 0.5, 1.0, 30).log_c_ceil == 1);
    CHECK(bounded_code_bound(1.0, 0.5, 2.0, 30).log_c_ceil == 1);
    CHECK(bounded_code_bound(1.0, 0.5, 5.0, 30).log_c_ceil == 3);

    const BoundedCodeBound b = bounded_code_bound(1.0, 0.5, 1.0, 30);
    CHECK(b.exponent == doctest::Approx(0.25 * 30.0 / (2.0 * kE * kE)).epsilon(1e-12));
    CHECK(b.value == doctest::Approx(std::exp(b.exponent) / (2.0 * kE)).epsilon(1e-12));

    double prev = 1e300;
    for (double c : {1.0, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0, 64.0}) {
        const double value = bounded_code_bound(0.9, 0.4, c, 50).value;
        CHECK(value <= prev + 1e-15);
        prev = value;
    }
}
