#include "aldc/partition.hpp"

#include "aldc/core.hpp"
#include "aldc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace aldc {

CodeGraph build_graph(const CodeConfig& code) {
    if (code.q != 2) throw UnsupportedError("build_graph: 2-query codes only");
    CodeGraph graph;
    graph.n = code.n();
    for (const auto& m : code.matchings) {
        for (const auto& t : m.tuples) {
            graph.edges.push_back({t[0], t[1], m.direction});
        }
    }
    return graph;
}

namespace {

std::vector<std::size_t> internal_edges_of(const CodeGraph& graph,
                                           std::span<const Index> subset) {
    std::vector<char> member(graph.n, 0);
    for (Index v : subset) member[v] = 1;
    std::vector<std::size_t> ids;
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        if (member[graph.edges[e].u] && member[graph.edges[e].v]) ids.push_back(e);
    }
    return ids;
}

Cut axis_cut_with_edges(const CodeGraph& graph, const CodeConfig& code,
                        std::span<const Index> subset,
                        std::span<const std::size_t> internal_edges, std::uint64_t seed) {
    rng::Engine eng(seed);
    const int dir = static_cast<int>(eng.below(static_cast<std::uint64_t>(code.d)));
    double lo = code.points[subset[0]][dir];
    double hi = lo;
    for (Index v : subset) {
        lo = std::min(lo, code.points[v][dir]);
        hi = std::max(hi, code.points[v][dir]);
    }
    const double threshold = eng.uniform(lo, hi);

    Cut cut;
    cut.direction = dir;
    cut.threshold = threshold;
    cut.has_plane = true;
    std::vector<char> side_s1(graph.n, 0);
    for (Index v : subset) {
        // plane-coincident points go to S1
        if (code.points[v][dir] <= threshold) {
            cut.s1.push_back(v);
            side_s1[v] = 1;
        } else {
            cut.s2.push_back(v);
        }
    }
    for (std::size_t e : internal_edges) {
        const auto& edge = graph.edges[e];
        if (side_s1[edge.u] != side_s1[edge.v]) {
            cut.cut_edges.push_back(e);
            if (edge.dir == dir) ++cut.right_direction_count;
        }
    }
    return cut;
}

Cut balanced_split(std::span<const Index> subset) {
    Cut cut;
    const std::size_t half = subset.size() / 2;
    cut.s1.assign(subset.begin(), subset.begin() + half);
    cut.s2.assign(subset.begin() + half, subset.end());
    return cut;
}

std::optional<Cut> try_find_good_cut(const CodeGraph& graph, const CodeConfig& code,
                                     std::span<const Index> subset,
                                     std::span<const std::size_t> internal_edges,
                                     double max_ratio, std::size_t budget,
                                     std::uint64_t seed) {
    if (internal_edges.empty()) return balanced_split(subset);
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        Cut cut = axis_cut_with_edges(graph, code, subset, internal_edges,
                                      rng::derive(seed, attempt));
        if (!cut.nontrivial() || cut.right_direction_count == 0) continue;
        if (static_cast<double>(cut.cut_edges.size()) <=
            max_ratio * static_cast<double>(cut.min_side()) + 1e-9) {
            return cut;
        }
    }
    return std::nullopt;
}

}  // namespace

Cut sample_axis_cut(const CodeGraph& graph, const CodeConfig& code,
                    std::span<const Index> subset, std::uint64_t seed) {
    if (subset.size() < 2) throw ParamError("sample_axis_cut: subset needs at least 2 points");
    const auto ids = internal_edges_of(graph, subset);
    return axis_cut_with_edges(graph, code, subset, ids, seed);
}

std::size_t default_cut_budget(int d, std::size_t subset_size) {
    const double draws =
        64.0 * static_cast<double>(d) * std::log2(static_cast<double>(subset_size) + 1.0);
    return static_cast<std::size_t>(std::ceil(draws));
}

Cut find_good_cut(const CodeGraph& graph, const CodeConfig& code,
                  std::span<const Index> subset, double max_ratio, std::size_t budget,
                  std::uint64_t seed) {
    if (subset.size() < 2) throw ParamError("find_good_cut: subset needs at least 2 points");
    if (budget == 0) budget = default_cut_budget(code.d, subset.size());
    const auto ids = internal_edges_of(graph, subset);
    auto cut = try_find_good_cut(graph, code, subset, ids, max_ratio, budget, seed);
    if (!cut) {
        throw SearchError("find_good_cut: no cut within ratio " + std::to_string(max_ratio) +
                          " found in " + std::to_string(budget) + " samples (subset size " +
                          std::to_string(subset.size()) + ", " + std::to_string(ids.size()) +
                          " internal edges)");
    }
    return *cut;
}

CutCertificate certify_with(const CodeGraph& graph, double c_param,
                            const CutProvider& provider, std::uint64_t seed) {
    CutCertificate cert;
    cert.n = graph.n;
    cert.c_param = c_param;
    cert.total_edges = graph.edges.size();
    cert.edge_budget = c_param / 2.0 * static_cast<double>(graph.n) *
                       std::log2(static_cast<double>(graph.n));
    cert.verified = true;

    struct Frame {
        std::vector<Index> subset;
        std::vector<std::size_t> internal_edges;
        std::uint64_t seed;
    };
    std::deque<Frame> stack;
    {
        Frame root;
        root.subset.resize(graph.n);
        for (std::size_t v = 0; v < graph.n; ++v) root.subset[v] = v;
        root.internal_edges.resize(graph.edges.size());
        for (std::size_t e = 0; e < graph.edges.size(); ++e) root.internal_edges[e] = e;
        root.seed = rng::derive(seed, 1);
        stack.push_back(std::move(root));
    }

    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();
        if (frame.subset.size() <= 1) continue;

        auto cut = provider(frame.subset, frame.internal_edges, rng::derive(frame.seed, 0));
        if (!cut) {
            cert.verified = false;
            cert.failure = "cut search failed on a subset of size " +
                           std::to_string(frame.subset.size());
            cert.failed_subset = frame.subset;
            break;
        }

        CutNode node;
        node.subset_size = frame.subset.size();
        node.s1_size = cut->s1.size();
        node.s2_size = cut->s2.size();
        node.cut_edge_count = cut->cut_edges.size();
        node.direction = cut->direction;
        node.ok = static_cast<double>(node.cut_edge_count) <=
                  c_param * static_cast<double>(cut->min_side()) + 1e-9;
        cert.nodes.push_back(node);
        if (!node.ok) {
            cert.verified = false;
            cert.failure = "node-wise bound violated on a subset of size " +
                           std::to_string(frame.subset.size());
            cert.failed_subset = frame.subset;
            break;
        }

        std::vector<char> in_s1(graph.n, 0);
        for (Index v : cut->s1) in_s1[v] = 1;
        std::vector<char> cut_edge(graph.edges.size(), 0);
        for (std::size_t e : cut->cut_edges) cut_edge[e] = 1;
        Frame left, right;
        left.subset = cut->s1;
        right.subset = cut->s2;
        for (std::size_t e : frame.internal_edges) {
            if (cut_edge[e]) continue;
            (in_s1[graph.edges[e].u] ? left : right).internal_edges.push_back(e);
        }
        left.seed = rng::derive(frame.seed, 2);
        right.seed = rng::derive(frame.seed, 3);
        stack.push_back(std::move(right));
        stack.push_back(std::move(left));
    }

    if (cert.verified &&
        static_cast<double>(cert.total_edges) > cert.edge_budget + 1e-9) {
        cert.verified = false;
        cert.failure = "aggregate edge budget exceeded";
    }
    return cert;
}

CutCertificate recursive_cut_certificate(const CodeConfig& code, std::size_t budget_per_node,
                                         std::uint64_t seed) {
    code.validate();
    const CodeGraph graph = build_graph(code);
    const double alpha = simple_alpha(code);
    if (!graph.edges.empty() && alpha <= 0.0) {
        throw PreconditionError(
            "recursive_cut_certificate: code is not simple at any positive alpha");
    }
    const double c_param = 2.0 * std::sqrt(static_cast<double>(code.d)) / alpha;
    const CutProvider provider = [&](std::span<const Index> subset,
                                     std::span<const std::size_t> internal_edges,
                                     std::uint64_t node_seed) {
        const std::size_t budget =
            budget_per_node == 0 ? default_cut_budget(code.d, subset.size()) : budget_per_node;
        return try_find_good_cut(graph, code, subset, internal_edges, c_param, budget,
                                 node_seed);
    };
    return certify_with(graph, c_param, provider, seed);
}

double general_bound(double alpha, double delta, int d, bool simple_input) {
    if (alpha <= 0.0 || alpha > 1.0) throw ParamError("general_bound: alpha must be in (0,1]");
    if (delta < 0.0 || delta > 1.0) throw ParamError("general_bound: delta must be in [0,1]");
    if (d < 1) throw ParamError("general_bound: d must be at least 1");
    const double a = simple_input ? alpha : alpha / std::sqrt(2.0);
    const double dl = simple_input ? delta : delta / 2.0;
    return std::exp2(a * dl * std::sqrt(static_cast<double>(d)));
}

}  // namespace aldc
