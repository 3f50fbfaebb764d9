#include "aldc/tiling.hpp"

#include "aldc/core.hpp"
#include "aldc/rng.hpp"

#include <algorithm>
#include <cmath>

namespace aldc {

namespace {

// Cell assignment nudge: keeps a cell's own representative strictly inside
// the cell under floating-point round-off. Equivalent to shifting the
// tiling by g/2^26, so the result is still a uniformly shifted cube tiling.
constexpr double kBoundaryNudge = 0x1.0p-26;

}  // namespace

std::int64_t Tiling::cell_coord(double x, int i) const {
    const double y = (x - shift[i]) / g + kBoundaryNudge;
    return static_cast<std::int64_t>(std::floor(y));
}

Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> Tiling::cell(const RealVec& x) const {
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> c(x.size());
    for (int i = 0; i < x.size(); ++i) c[i] = cell_coord(x[i], i);
    return c;
}

double Tiling::round_coord(double x, int i) const {
    return std::fma(g, static_cast<double>(cell_coord(x, i)), shift[i]);
}

RealVec Tiling::round(const RealVec& x) const {
    RealVec r(x.size());
    for (int i = 0; i < x.size(); ++i) r[i] = round_coord(x[i], i);
    return r;
}

Tiling cube_tiling(int d, double g, std::uint64_t seed) {
    if (d < 1) throw ParamError("cube_tiling: d must be at least 1");
    if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("cube_tiling: grid g must be positive");
    Tiling tiling;
    tiling.g = g;
    tiling.shift = RealVec(d);
    rng::Engine eng(seed);
    for (int i = 0; i < d; ++i) {
        // shift quantized to g/2^26 steps so lattice identities are exact
        const double steps = std::floor(eng.uniform() * 0x1.0p26);
        tiling.shift[i] = g * (steps * 0x1.0p-26);
    }
    return tiling;
}

std::pair<int, std::int64_t> edge_level(double length, double eps, int t) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw DomainError("edge_level: length must be positive");
    }
    if (eps <= 0.0 || eps >= 1.0) throw ParamError("edge_level: eps must be in (0,1)");
    if (t < 1) throw ParamError("edge_level: t must be at least 1");
    const double m_real = std::log(length) / std::log1p(eps);
    // values within 1e-9 of the next integer exponent snap up
    const auto m = static_cast<std::int64_t>(std::floor(m_real + 1e-9));
    std::int64_t k = m / t;
    std::int64_t j = m % t;
    if (j < 0) {
        j += t;
        k -= 1;
    }
    return {static_cast<int>(j), k};
}

std::pair<CodeConfig, LevelSchedule> level_bucket(const CodeConfig& code, double eps, int t) {
    if (code.q != 2) throw UnsupportedError("level_bucket: 2-query codes only");
    if (code.total_tuples() == 0) throw PreconditionError("level_bucket: code has no edges");
    const double alpha = simple_alpha(code);
    if (alpha <= 0.0) {
        throw PreconditionError("level_bucket: code is not simple at any positive alpha");
    }

    std::vector<std::size_t> residue_count(static_cast<std::size_t>(t), 0);
    for (const auto& m : code.matchings) {
        for (const auto& tuple : m.tuples) {
            const double len = (code.points[tuple[1]] - code.points[tuple[0]]).norm();
            const auto [j, k] = edge_level(len, eps, t);
            ++residue_count[static_cast<std::size_t>(j)];
        }
    }
    const int chosen = static_cast<int>(std::max_element(residue_count.begin(),
                                                         residue_count.end()) -
                                        residue_count.begin());

    // Rescale so retained edges sit at residue 0 (the most populated class).
    const double scale = std::pow(1.0 + eps, -static_cast<double>(chosen));
    CodeConfig out = code;
    for (auto& p : out.points) p *= scale;
    out.matchings.clear();

    LevelSchedule schedule;
    schedule.eps = eps;
    schedule.t = t;
    schedule.residue = chosen;
    schedule.alpha = alpha;
    bool any = false;
    for (const auto& m : code.matchings) {
        DirectionMatching kept;
        kept.direction = m.direction;
        for (const auto& tuple : m.tuples) {
            const double len = (code.points[tuple[1]] - code.points[tuple[0]]).norm();
            const auto [j, k] = edge_level(len, eps, t);
            if (j != chosen) continue;
            kept.tuples.push_back(tuple);
            if (!any) {
                schedule.k_min = schedule.k_max = k;
                any = true;
            } else {
                schedule.k_min = std::min(schedule.k_min, k);
                schedule.k_max = std::max(schedule.k_max, k);
            }
        }
        out.matchings.push_back(std::move(kept));
    }
    for (std::int64_t k = schedule.k_min; k <= schedule.k_max; ++k) {
        schedule.grids.push_back((2.0 + eps) *
                                 std::pow(1.0 + eps, static_cast<double>(k * t)) /
                                 (2.0 * alpha));
    }
    return {std::move(out), schedule};
}

double good_edge_probability_bound(double alpha, double eps, int t, double kappa) {
    if (alpha <= 0.0 || alpha > 1.0) {
        throw ParamError("good_edge_probability_bound: alpha must be in (0,1]");
    }
    if (eps <= 0.0 || eps >= 1.0) {
        throw ParamError("good_edge_probability_bound: eps must be in (0,1)");
    }
    if (t < 1) throw ParamError("good_edge_probability_bound: t must be at least 1");
    if (kappa <= 0.0) throw ParamError("good_edge_probability_bound: kappa must be positive");
    const double ratio = alpha * eps / (2.0 + eps);
    const double own_level = kappa * std::sqrt(1.0 - alpha * alpha + ratio * ratio);
    const double higher_levels = 2.0 * kappa * alpha * (1.0 + eps) /
                                 ((2.0 + eps) * (std::pow(1.0 + eps, t) - 1.0));
    return 1.0 - (own_level + higher_levels);
}

namespace {

struct OrientedEdge {
    Index tail = 0;  // <v_head - v_tail, e_dir> > 0
    Index head = 0;
    int dir = 0;
    std::int64_t level = 0;
};

bool same_cell(const Tiling& tiling, const RealVec& x, const RealVec& y) {
    for (int i = 0; i < tiling.dim(); ++i) {
        if (tiling.cell_coord(x[i], i) != tiling.cell_coord(y[i], i)) return false;
    }
    return true;
}

OrientedEdge orient(const CodeConfig& code, const LabeledEdge& edge, double eps, int t) {
    const double comp = code.points[edge.v][edge.dir] - code.points[edge.u][edge.dir];
    if (comp == 0.0) {
        throw ValidationError("edge {" + std::to_string(edge.u) + "," + std::to_string(edge.v) +
                              "} has zero component along direction " +
                              std::to_string(edge.dir));
    }
    OrientedEdge oe;
    oe.tail = comp > 0.0 ? edge.u : edge.v;
    oe.head = comp > 0.0 ? edge.v : edge.u;
    oe.dir = edge.dir;
    const double len = (code.points[edge.v] - code.points[edge.u]).norm();
    oe.level = edge_level(len, eps, t).second;
    return oe;
}

}  // namespace

std::vector<std::size_t> classify_good_edges(const CodeConfig& code,
                                             const LevelSchedule& schedule,
                                             const std::vector<Tiling>& tilings) {
    if (tilings.size() != schedule.levels()) {
        throw ValidationError("classify_good_edges: expected " +
                              std::to_string(schedule.levels()) + " tilings, got " +
                              std::to_string(tilings.size()));
    }
    for (std::size_t idx = 0; idx < tilings.size(); ++idx) {
        const double want = schedule.grids[idx];
        if (tilings[idx].dim() != code.d ||
            std::abs(tilings[idx].g - want) > 1e-12 * want) {
            throw ValidationError("classify_good_edges: tiling " + std::to_string(idx) +
                                  " does not match the schedule grid");
        }
    }
    const CodeGraph graph = build_graph(code);
    std::vector<std::size_t> good;
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const OrientedEdge oe = orient(code, graph.edges[e], schedule.eps, schedule.t);
        if (oe.level < schedule.k_min || oe.level > schedule.k_max) {
            throw ValidationError("classify_good_edges: edge level " +
                                  std::to_string(oe.level) + " outside schedule range");
        }
        bool is_good = true;
        {
            // own level: cells adjacent along the edge direction
            const Tiling& tiling = tilings[static_cast<std::size_t>(oe.level - schedule.k_min)];
            RealVec moved = code.points[oe.tail];
            moved[oe.dir] += tiling.g;
            if (!same_cell(tiling, moved, code.points[oe.head])) is_good = false;
        }
        for (std::int64_t k = oe.level + 1; is_good && k <= schedule.k_max; ++k) {
            const Tiling& tiling = tilings[static_cast<std::size_t>(k - schedule.k_min)];
            if (!same_cell(tiling, code.points[oe.tail], code.points[oe.head])) is_good = false;
        }
        if (is_good) good.push_back(e);
    }
    return good;
}

ClassifiedCode restrict_to_good(const CodeConfig& code, const LevelSchedule& schedule,
                                std::vector<Tiling> tilings) {
    const auto good = classify_good_edges(code, schedule, tilings);
    std::vector<char> keep(code.total_tuples(), 0);
    for (std::size_t e : good) keep[e] = 1;

    ClassifiedCode cc;
    cc.schedule = schedule;
    cc.tilings = std::move(tilings);
    cc.code = code;
    cc.code.matchings.clear();
    std::size_t edge_id = 0;
    for (const auto& m : code.matchings) {
        DirectionMatching kept;
        kept.direction = m.direction;
        for (const auto& tuple : m.tuples) {
            if (keep[edge_id]) kept.tuples.push_back(tuple);
            ++edge_id;
        }
        cc.code.matchings.push_back(std::move(kept));
    }
    cc.graph = build_graph(cc.code);
    for (const auto& edge : cc.graph.edges) {
        cc.edge_levels.push_back(orient(cc.code, edge, schedule.eps, schedule.t).level);
    }
    return cc;
}

Cut tiled_cut(const ClassifiedCode& cc, std::span<const Index> subset) {
    if (subset.size() < 2) throw ParamError("tiled_cut: subset needs at least 2 points");
    std::vector<char> member(cc.graph.n, 0);
    for (Index v : subset) member[v] = 1;
    std::vector<std::size_t> internal;
    for (std::size_t e = 0; e < cc.graph.edges.size(); ++e) {
        if (member[cc.graph.edges[e].u] && member[cc.graph.edges[e].v]) internal.push_back(e);
    }
    if (internal.empty()) {
        Cut cut;
        const std::size_t half = subset.size() / 2;
        cut.s1.assign(subset.begin(), subset.begin() + half);
        cut.s2.assign(subset.begin() + half, subset.end());
        return cut;
    }

    std::size_t top = internal[0];
    for (std::size_t e : internal) {
        if (cc.edge_levels[e] > cc.edge_levels[top]) top = e;
    }
    const OrientedEdge oe = orient(cc.code, cc.graph.edges[top], cc.schedule.eps,
                                   cc.schedule.t);
    const Tiling& tiling = cc.tilings[static_cast<std::size_t>(oe.level - cc.schedule.k_min)];
    const double r_tail = tiling.round_coord(cc.code.points[oe.tail][oe.dir], oe.dir);
    const double r_head = tiling.round_coord(cc.code.points[oe.head][oe.dir], oe.dir);
    const double h = 0.5 * (r_tail + r_head);

    Cut cut;
    cut.direction = oe.dir;
    cut.threshold = h;
    cut.has_plane = true;
    std::vector<char> in_s1(cc.graph.n, 0);
    for (Index v : subset) {
        const double r = tiling.round_coord(cc.code.points[v][oe.dir], oe.dir);
        if (r < h) {
            cut.s1.push_back(v);
            in_s1[v] = 1;
        } else if (r > h) {
            cut.s2.push_back(v);
        } else {
            throw Error("tiled_cut: point rounds exactly onto the separating plane");
        }
    }
    for (std::size_t e : internal) {
        const auto& edge = cc.graph.edges[e];
        if (in_s1[edge.u] != in_s1[edge.v]) {
            cut.cut_edges.push_back(e);
            if (edge.dir == oe.dir) ++cut.right_direction_count;
        }
    }
    return cut;
}

TilingCertificate large_alpha_certificate(const CodeConfig& code, double eps, int t,
                                          int retries, std::uint64_t seed, double kappa) {
    if (retries < 1) throw ParamError("large_alpha_certificate: retries must be at least 1");
    code.validate();
    auto [bucketed, schedule] = level_bucket(code, eps, t);

    TilingCertificate cert;
    cert.schedule = schedule;
    cert.kappa = kappa > 0.0 ? kappa : std::sqrt(static_cast<double>(code.d));
    cert.p_bound = good_edge_probability_bound(schedule.alpha, eps, t, cert.kappa);
    cert.delta_in = code.density();
    cert.delta_bucket = bucketed.density();
    cert.edges_bucketed = bucketed.total_tuples();

    for (int round = 0; round < retries; ++round) {
        std::vector<Tiling> tilings;
        const std::uint64_t round_seed = rng::derive(seed, static_cast<std::uint64_t>(round));
        for (std::int64_t k = schedule.k_min; k <= schedule.k_max; ++k) {
            tilings.push_back(cube_tiling(
                code.d, schedule.grid(k),
                rng::derive(round_seed, static_cast<std::uint64_t>(k - schedule.k_min))));
        }
        const auto good = classify_good_edges(bucketed, schedule, tilings);
        const double fraction = static_cast<double>(good.size()) /
                                static_cast<double>(cert.edges_bucketed);
        cert.good_fraction = std::max(cert.good_fraction, fraction);
        cert.rounds_used = round + 1;
        if (fraction < cert.p_bound) continue;

        ClassifiedCode cc = restrict_to_good(bucketed, schedule, std::move(tilings));
        cert.edges_good = cc.graph.edges.size();
        cert.delta_good = cc.code.density();
        const CutProvider provider = [&cc](std::span<const Index> subset,
                                           std::span<const std::size_t>,
                                           std::uint64_t) -> std::optional<Cut> {
            return tiled_cut(cc, subset);
        };
        cert.cut = certify_with(cc.graph, 1.0, provider, seed);
        cert.verified = cert.cut.verified;
        cert.implied_bound = std::exp2(2.0 * cert.delta_good * static_cast<double>(code.d));
        if (!cert.verified) cert.failure = cert.cut.failure;
        return cert;
    }
    cert.verified = false;
    cert.failure = "good-edge fraction never reached the probability bound " +
                   std::to_string(cert.p_bound) + " in " + std::to_string(retries) +
                   " rounds (best " + std::to_string(cert.good_fraction) + ")";
    return cert;
}

}  // namespace aldc
