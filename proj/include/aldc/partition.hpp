#pragma once

#include "aldc/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aldc {

/// Edge of the labeled code graph; endpoints u < v, label = direction.
struct LabeledEdge {
    Index u = 0;
    Index v = 0;
    int dir = 0;
};

/// Multigraph on point indices with direction-labeled edges. Edges sharing
/// a direction always form a matching.
struct CodeGraph {
    std::size_t n = 0;
    std::vector<LabeledEdge> edges;
};

/// One labeled edge per matched pair. Throws UnsupportedError unless q == 2.
CodeGraph build_graph(const CodeConfig& code);

struct Cut {
    std::vector<Index> s1;  // includes plane-coincident points
    std::vector<Index> s2;
    std::vector<std::size_t> cut_edges;  // ids into CodeGraph::edges
    int direction = -1;                  // cutting axis; -1 for arbitrary splits
    double threshold = 0.0;
    bool has_plane = false;
    std::size_t right_direction_count = 0;

    bool nontrivial() const { return !s1.empty() && !s2.empty(); }
    std::size_t min_side() const { return s1.size() < s2.size() ? s1.size() : s2.size(); }
};

/// One random axis-aligned hyperplane cut of `subset`: uniform direction,
/// uniform threshold within the subset's bounding interval on that axis.
/// May be trivial; the caller decides what to do with it.
Cut sample_axis_cut(const CodeGraph& graph, const CodeConfig& code,
                    std::span<const Index> subset, std::uint64_t seed);

/// Default sampling budget: 64 * d * log2(|subset|+1).
std::size_t default_cut_budget(int d, std::size_t subset_size);

/// Rejection-samples axis cuts until one is nontrivial, has at least one
/// right-direction edge, and satisfies |edg(S1,S2)| <= max_ratio*min side.
/// Edgeless subsets get an arbitrary balanced split. budget == 0 means the
/// default. Throws SearchError when the budget is exhausted.
Cut find_good_cut(const CodeGraph& graph, const CodeConfig& code,
                  std::span<const Index> subset, double max_ratio,
                  std::size_t budget, std::uint64_t seed);

struct CutNode {
    std::size_t subset_size = 0;
    std::size_t s1_size = 0;
    std::size_t s2_size = 0;
    std::size_t cut_edge_count = 0;
    int direction = -1;
    bool ok = false;  // cut_edge_count <= c_param * min(s1,s2)
};

struct CutCertificate {
    std::size_t n = 0;
    double c_param = 0.0;
    std::vector<CutNode> nodes;   // preorder
    std::size_t total_edges = 0;  // edges of the full graph
    double edge_budget = 0.0;     // (c/2) * n * log2(n)
    bool verified = false;
    std::string failure;
    std::vector<Index> failed_subset;
};

/// Supplies the cut for one recursion node; nullopt aborts the certificate.
using CutProvider = std::function<std::optional<Cut>(
    std::span<const Index> subset, std::span<const std::size_t> internal_edges,
    std::uint64_t node_seed)>;

/// Shared recursion driver: splits down to singletons, checking the
/// node-wise bound and the aggregate (c/2) n log2 n edge budget.
CutCertificate certify_with(const CodeGraph& graph, double c_param,
                            const CutProvider& provider, std::uint64_t seed);

/// Random-hyperplane cut certificate with c = 2*sqrt(d)/alpha, alpha taken
/// as the code's simple alpha. budget_per_node == 0 means the default.
CutCertificate recursive_cut_certificate(const CodeConfig& code,
                                         std::size_t budget_per_node,
                                         std::uint64_t seed);

/// Simple-code bound 2^(alpha*delta*sqrt(d)); with simple_input = false the
/// alpha/sqrt(2), delta/2 reduction losses are applied first.
double general_bound(double alpha, double delta, int d, bool simple_input = true);

}  // namespace aldc
