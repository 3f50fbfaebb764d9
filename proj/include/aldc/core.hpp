#pragma once

#include "aldc/types.hpp"

#include <utility>
#include <vector>

namespace aldc {

/// |u_i| / ||u||_2. Throws DomainError on the zero vector.
double weight(const RealVec& u, int i);

struct SpanWeight {
    double value = 0.0;
    bool degenerate = false;  // all spanning vectors numerically zero
};

/// Largest weight_i over the span of `vectors`: the norm of the orthogonal
/// projection of e_i onto the span. Degenerate spans yield {0, true}.
SpanWeight span_weight_of(const std::vector<RealVec>& vectors, int i);

SpanWeight span_weight_detail(const CodeConfig& code, const Tuple& t, int i);
double span_weight(const CodeConfig& code, const Tuple& t, int i);

struct TupleDiagnostic {
    int direction = 0;
    Tuple tuple;
    double span_weight = 0.0;
    bool degenerate = false;
};

struct VerificationReport {
    double alpha_claim = 0.0;
    double achieved_alpha = 1.0;  // min over matched tuples; 1.0 when vacuous
    double density = 0.0;
    bool simple = false;          // q==2 only, evaluated at alpha_claim
    bool has_pair_lengths = false;
    double length_min = 0.0;      // q==2, over matched pairs
    double length_max = 0.0;
    std::vector<TupleDiagnostic> per_tuple;
    std::vector<std::size_t> flagged;  // per_tuple indices below alpha_claim - kTolerance

    static constexpr double kTolerance = 1e-9;

    bool verified() const { return achieved_alpha >= alpha_claim - kTolerance; }
};

/// Diagnostic check of the approximate-LDC property; never throws on a
/// structurally valid config.
VerificationReport verify(const CodeConfig& code, double alpha_claim);

/// True iff every matched pair's raw difference has weight_i >= alpha.
/// Throws UnsupportedError unless q == 2.
bool is_simple(const CodeConfig& code, double alpha);

/// Largest alpha at which the code is simple: min over matched pairs of
/// weight(v_{j2}-v_{j1}, i), or 1.0 when there are no pairs. Coincident
/// matched points give 0.
double simple_alpha(const CodeConfig& code);

/// (min, max) of ||v_{j2}-v_{j1}||_2 over matched pairs. The code is
/// c-bounded after rescaling by 1/min with c = max/min.
std::pair<double, double> boundedness(const CodeConfig& code);

}  // namespace aldc
