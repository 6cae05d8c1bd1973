#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "netgroups/errors.hpp"

namespace netgroups {

/// External node label, as read from an edge list.
using NodeId = std::uint64_t;
/// Dense internal index in [0, node_count()).
using Index = std::uint32_t;

/// Immutable undirected simple graph.
///
/// Internal indices follow ascending label order, so index i is always the
/// i-th smallest label. Adjacency is stored in CSR form with sorted neighbor
/// lists. Two graphs compare equal iff they have the same labels and links.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from label pairs. Self-loops are dropped and repeated or
    /// reversed pairs collapse to one link. Endpoints of dropped self-loops are
    /// not added as nodes; use `extra_nodes` to declare isolated nodes.
    static Graph from_links(std::span<const std::pair<NodeId, NodeId>> links,
                            std::span<const NodeId> extra_nodes = {});

    /// Builds a graph over `sorted_labels` (strictly ascending) from index
    /// pairs into that label array. Self-loops and duplicates are removed.
    static Graph from_indexed(std::vector<NodeId> sorted_labels,
                              std::vector<std::pair<Index, Index>> links);

    std::size_t node_count() const { return labels_.size(); }
    std::size_t link_count() const { return link_count_; }
    bool empty() const { return labels_.empty(); }

    NodeId label(Index i) const { return labels_[i]; }
    std::span<const NodeId> labels() const { return labels_; }
    std::optional<Index> index_of(NodeId label) const;
    bool contains(NodeId label) const { return index_of(label).has_value(); }

    std::span<const Index> neighbors(Index i) const {
        return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
    }
    std::size_t degree(Index i) const { return offsets_[i + 1] - offsets_[i]; }
    bool adjacent(Index u, Index v) const;

    /// All links as (u, v) index pairs with u < v, in lexicographic order.
    std::vector<std::pair<Index, Index>> links() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.labels_ == b.labels_ && a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
    }

private:
    std::vector<NodeId> labels_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Index> adjacency_;
    std::size_t link_count_ = 0;
};

struct GraphStats {
    std::size_t n = 0;
    std::size_t m = 0;
    double mean_degree = 0.0;
};

/// Reads a whitespace-separated edge list. Lines whose first non-blank
/// character is '#' are comments, except "# isolated <label>..." which
/// declares degree-0 nodes (write_edge_list emits these).
Graph load_edge_list(std::istream& in);
Graph load_edge_list(const std::filesystem::path& path);

/// Canonical form: one "u v" line per link with u < v, sorted; isolated nodes
/// are listed first on "# isolated" lines.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

/// Subgraph on `keep` with every link of g whose endpoints are both kept.
/// Throws std::domain_error for labels not in g.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> keep);
Graph induced_subgraph_by_index(const Graph& g, std::span<const Index> keep);

struct ComponentLabeling {
    /// Component id per internal node index.
    std::vector<std::size_t> component;
    /// Component sizes, non-increasing.
    std::vector<std::size_t> sizes;
};

/// Component ids are contiguous from 0 in order of decreasing size; ties go to
/// the component holding the smaller label.
ComponentLabeling connected_components(const Graph& g);

Graph largest_component(const Graph& g);

GraphStats basic_stats(const Graph& g);

}  // namespace netgroups
