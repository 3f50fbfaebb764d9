#pragma once

#include "aldc/types.hpp"

#include <cstdint>

namespace aldc {

/// V = {0,1}^d with M_i = all pairs differing exactly in coordinate i.
/// alpha = 1, density = 1/2, simple, 1-bounded. Guarded to d <= 24.
CodeConfig hypercube(int d);

/// hypercube(d) with i.i.d. Gaussian displacement of each coordinate.
CodeConfig perturbed_hypercube(int d, double sigma, std::uint64_t seed);

/// V = {e_1,...,e_d}, q = 1, M_i = {{i}}. alpha = 1, density = 1/d.
CodeConfig basis_code(int d);

/// n points uniform on the unit sphere; per direction, a greedy
/// lexicographic scan adds disjoint tuples with span_weight >= alpha_target.
CodeConfig random_code(int d, int n, int q, double alpha_target, std::uint64_t seed);

}  // namespace aldc
