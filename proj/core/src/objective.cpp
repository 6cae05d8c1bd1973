#include "netgroups/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace netgroups {

namespace {

std::vector<NodeId> as_set(std::span<const NodeId> items) {
    std::vector<NodeId> out(items.begin(), items.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<bool> membership(const Graph& g, std::span<const NodeId> items) {
    std::vector<bool> in(g.node_count(), false);
    for (NodeId id : items) {
        const auto idx = g.index_of(id);
        if (!idx) throw std::domain_error("node " + std::to_string(id) + " is not in the graph");
        in[*idx] = true;
    }
    return in;
}

std::size_t count_links(const Graph& g, const std::vector<bool>& x, const std::vector<bool>& y) {
    std::size_t count = 0;
    for (const auto& [u, v] : g.links()) {
        if ((x[u] && y[v]) || (x[v] && y[u])) ++count;
    }
    return count;
}

}  // namespace

std::string_view to_string(GroupKind kind) {
    switch (kind) {
        case GroupKind::Community: return "community";
        case GroupKind::Mixture: return "mixture";
        case GroupKind::Module: return "module";
    }
    return "?";
}

std::string_view to_string(Normalization n) {
    switch (n) {
        case Normalization::SqrtPairs: return "sqrt-pairs";
        case Normalization::StandardError: return "standard-error";
        case Normalization::PooledZ: return "pooled-z";
    }
    return "?";
}

std::optional<Normalization> parse_normalization(std::string_view name) {
    if (name == "sqrt-pairs") return Normalization::SqrtPairs;
    if (name == "standard-error") return Normalization::StandardError;
    if (name == "pooled-z") return Normalization::PooledZ;
    return std::nullopt;
}

std::uint64_t admissible_pairs(std::uint64_t only_x, std::uint64_t only_y, std::uint64_t both) {
    const std::uint64_t inside = both == 0 ? 0 : both * (both - 1) / 2;
    return inside + both * (only_x + only_y) + only_x * only_y;
}

double objective_from_tally(const GroupTally& t, Normalization norm) {
    const std::uint64_t neither = t.nodes - t.s_only - t.t_only - t.both;
    const auto pairs_st = static_cast<double>(admissible_pairs(t.s_only, t.t_only, t.both));
    // S \ T∁ = S ∩ T, T∁ \ S = neither, S ∩ T∁ = S \ T
    const auto pairs_s_tc = static_cast<double>(admissible_pairs(t.both, neither, t.s_only));
    const double inside = pairs_st > 0 ? static_cast<double>(t.links_st) / pairs_st : 0.0;
    const double outside = pairs_s_tc > 0 ? static_cast<double>(t.links_s_tc) / pairs_s_tc : 0.0;
    double scale = 0.0;
    switch (norm) {
        case Normalization::SqrtPairs: scale = std::sqrt(pairs_st); break;
        case Normalization::StandardError:
            scale = pairs_st > 0 && pairs_s_tc > 0 ? std::sqrt(pairs_st * pairs_s_tc / (pairs_st + pairs_s_tc)) : 0.0;
            break;
        case Normalization::PooledZ: {
            if (pairs_st == 0 || pairs_s_tc == 0) return 0.0;
            const double pooled = static_cast<double>(t.links_st + t.links_s_tc) / (pairs_st + pairs_s_tc);
            if (pooled <= 0.0 || pooled >= 1.0) return 0.0;
            scale = std::sqrt(pairs_st * pairs_s_tc / (pairs_st + pairs_s_tc) / (pooled * (1.0 - pooled)));
            break;
        }
    }
    return scale * (inside - outside);
}

std::size_t links_between(const Graph& g, std::span<const NodeId> s, std::span<const NodeId> t) {
    return count_links(g, membership(g, s), membership(g, t));
}

double objective_w(const Graph& g, std::span<const NodeId> s, std::span<const NodeId> t, Normalization norm) {
    const auto s_set = as_set(s);
    const auto t_set = as_set(t);
    if (s_set.empty() || t_set.empty()) {
        throw std::domain_error("objective_w: S and T must be nonempty");
    }
    const auto in_s = membership(g, s_set);
    const auto in_t = membership(g, t_set);
    std::vector<bool> in_tc(g.node_count());
    GroupTally tally;
    tally.nodes = g.node_count();
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        in_tc[i] = !in_t[i];
        if (in_s[i] && in_t[i]) ++tally.both;
        else if (in_s[i]) ++tally.s_only;
        else if (in_t[i]) ++tally.t_only;
    }
    tally.links_st = count_links(g, in_s, in_t);
    tally.links_s_tc = count_links(g, in_s, in_tc);
    return objective_from_tally(tally, norm);
}

Ratio jaccard_tau(std::span<const NodeId> s, std::span<const NodeId> t) {
    const auto a = as_set(s);
    const auto b = as_set(t);
    if (a.empty() && b.empty()) {
        throw std::domain_error("jaccard_tau: S and T are both empty");
    }
    std::vector<NodeId> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return Ratio{common.size(), a.size() + b.size() - common.size()};
}

GroupKind classify(std::span<const NodeId> s, std::span<const NodeId> t) {
    const auto a = as_set(s);
    const auto b = as_set(t);
    if (a.empty() && b.empty()) {
        throw std::domain_error("classify: S and T are both empty");
    }
    if (a == b) return GroupKind::Community;
    std::vector<NodeId> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return common.empty() ? GroupKind::Module : GroupKind::Mixture;
}

}  // namespace netgroups
