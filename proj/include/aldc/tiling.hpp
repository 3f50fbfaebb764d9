#pragma once

#include "aldc/partition.hpp"
#include "aldc/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace aldc {

/// Randomly shifted cube tiling of R^d with cell size g. round() maps a
/// point to its cell's base corner b + g*floor((x-b)/g); cell() returns the
/// integer cell coordinates. Satisfies round(x + g*z) = round(x) + g*z and
/// Pr[round(x) != round(y)] <= sum_i |x_i-y_i|/g <= sqrt(d)*||x-y||/g.
struct Tiling {
    double g = 1.0;
    RealVec shift;  // in [0,g)^d

    int dim() const { return static_cast<int>(shift.size()); }

    std::int64_t cell_coord(double x, int i) const;
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> cell(const RealVec& x) const;
    double round_coord(double x, int i) const;
    RealVec round(const RealVec& x) const;
};

/// Uniformly random shift in [0,g)^d (quantized to g/2^26 steps, below any
/// statistical resolution used here).
Tiling cube_tiling(int d, double g, std::uint64_t seed);

/// (residue j, level k): the unique pair with
/// length in [(1+eps)^(kt+j), (1+eps)^(kt+j+1)), j in [0,t).
std::pair<int, std::int64_t> edge_level(double length, double eps, int t);

struct LevelSchedule {
    double eps = 0.0;
    int t = 1;
    int residue = 0;  // argmax-populated residue of the original code
    double alpha = 1.0;
    std::int64_t k_min = 0;
    std::int64_t k_max = 0;
    std::vector<double> grids;  // g_k = (2+eps)(1+eps)^(kt)/(2 alpha), k_min..k_max

    double grid(std::int64_t k) const { return grids.at(static_cast<std::size_t>(k - k_min)); }
    std::size_t levels() const { return grids.size(); }
};

/// Keeps only edges in the most edge-populated length residue class and
/// rescales points by (1+eps)^(-j*) so retained edges sit at residue 0.
/// Density shrinks by at most a factor t. Throws on edgeless codes.
std::pair<CodeConfig, LevelSchedule> level_bucket(const CodeConfig& code, double eps, int t);

/// Probability bound that an edge is good, with tiling constant kappa
/// (kappa = 2*pi reproduces the reference bound, sqrt(d) models the cube
/// tiling). May be negative (vacuous).
double good_edge_probability_bound(double alpha, double eps, int t, double kappa);

/// Ids (into build_graph order) of edges whose endpoints round to
/// axis-adjacent cells at the edge's own level and to a common cell at
/// every higher level. `tilings[k - k_min]` must cover k_min..k_max.
std::vector<std::size_t> classify_good_edges(const CodeConfig& code,
                                             const LevelSchedule& schedule,
                                             const std::vector<Tiling>& tilings);

/// A bucketed code restricted to its good edges under fixed tilings.
struct ClassifiedCode {
    CodeConfig code;
    LevelSchedule schedule;
    std::vector<Tiling> tilings;
    CodeGraph graph;                       // good edges only
    std::vector<std::int64_t> edge_levels; // per graph edge
};

ClassifiedCode restrict_to_good(const CodeConfig& code, const LevelSchedule& schedule,
                                std::vector<Tiling> tilings);

/// Deterministic cut of Lemma-(tiled) form: picks a maximum-level internal
/// edge, splits by the rounded coordinate on its axis at the midpoint
/// between the two adjacent cells. All cut edges share that axis, so
/// |edg(S1,S2)| <= min(|S1|,|S2|). Edgeless subsets get a balanced split.
Cut tiled_cut(const ClassifiedCode& cc, std::span<const Index> subset);

struct TilingCertificate {
    LevelSchedule schedule;
    double kappa = 0.0;
    double p_bound = 0.0;       // good-edge probability bound at kappa
    int rounds_used = 0;
    double good_fraction = 0.0; // best fraction observed
    std::size_t edges_bucketed = 0;
    std::size_t edges_good = 0;
    double delta_in = 0.0;
    double delta_bucket = 0.0;
    double delta_good = 0.0;
    CutCertificate cut;         // c_param = 1
    double implied_bound = 0.0; // 2^(2 * delta_good * d)
    bool verified = false;
    std::string failure;
};

/// End-to-end Theorem-2-style pipeline: bucket levels, resample tilings up
/// to `retries` times until the good-edge fraction meets the probability
/// bound, fix them, and certify with the deterministic tiled cut.
/// kappa <= 0 selects the cube-tiling constant sqrt(d).
TilingCertificate large_alpha_certificate(const CodeConfig& code, double eps, int t,
                                          int retries, std::uint64_t seed,
                                          double kappa = -1.0);

}  // namespace aldc
