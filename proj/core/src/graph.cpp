#include "netgroups/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netgroups {

namespace {

constexpr std::string_view kIsolatedDirective = "isolated";

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

NodeId parse_label(std::string_view token, std::size_t line_no) {
    NodeId value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("expected a non-negative integer node label, got '" + std::string(token) + "'",
                         line_no);
    }
    return value;
}

}  // namespace

Graph Graph::from_links(std::span<const std::pair<NodeId, NodeId>> links,
                        std::span<const NodeId> extra_nodes) {
    std::vector<NodeId> labels(extra_nodes.begin(), extra_nodes.end());
    labels.reserve(labels.size() + 2 * links.size());
    for (const auto& [u, v] : links) {
        if (u == v) continue;
        labels.push_back(u);
        labels.push_back(v);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    auto index = [&labels](NodeId id) {
        return static_cast<Index>(std::lower_bound(labels.begin(), labels.end(), id) - labels.begin());
    };
    std::vector<std::pair<Index, Index>> indexed;
    indexed.reserve(links.size());
    for (const auto& [u, v] : links) {
        if (u != v) indexed.emplace_back(index(u), index(v));
    }
    return from_indexed(std::move(labels), std::move(indexed));
}

Graph Graph::from_indexed(std::vector<NodeId> sorted_labels, std::vector<std::pair<Index, Index>> links) {
    if (sorted_labels.size() > std::numeric_limits<Index>::max()) {
        throw std::length_error("graph has too many nodes for 32-bit indices");
    }
    const std::size_t n = sorted_labels.size();
    std::vector<std::pair<Index, Index>> arcs;
    arcs.reserve(2 * links.size());
    for (auto [u, v] : links) {
        if (u == v) continue;
        if (u >= n || v >= n) {
            throw std::out_of_range("link endpoint index out of range");
        }
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    Graph g;
    g.labels_ = std::move(sorted_labels);
    g.offsets_.assign(n + 1, 0);
    for (const auto& arc : arcs) ++g.offsets_[arc.first + 1];
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adjacency_.reserve(arcs.size());
    for (const auto& arc : arcs) g.adjacency_.push_back(arc.second);
    g.link_count_ = arcs.size() / 2;
    return g;
}

std::optional<Index> Graph::index_of(NodeId label) const {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<Index>(it - labels_.begin());
}

bool Graph::adjacent(Index u, Index v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<Index, Index>> Graph::links() const {
    std::vector<std::pair<Index, Index>> out;
    out.reserve(link_count_);
    for (Index u = 0; u < node_count(); ++u) {
        for (Index v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

Graph load_edge_list(std::istream& in) {
    std::vector<std::pair<NodeId, NodeId>> links;
    std::vector<NodeId> isolated;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        if (tokens.front().front() == '#') {
            // "# isolated a b c" or "#isolated a b c"
            std::string_view head = tokens.front().substr(1);
            std::size_t next = 1;
            if (head.empty() && tokens.size() > 1) {
                head = tokens[1];
                next = 2;
            }
            if (head == kIsolatedDirective) {
                for (std::size_t i = next; i < tokens.size(); ++i) {
                    isolated.push_back(parse_label(tokens[i], line_no));
                }
            }
            continue;
        }
        if (tokens.size() != 2) {
            throw ParseError("expected two node labels, found " + std::to_string(tokens.size()) + " tokens",
                             line_no);
        }
        links.emplace_back(parse_label(tokens[0], line_no), parse_label(tokens[1], line_no));
    }
    if (in.bad()) {
        throw std::runtime_error("I/O error while reading edge list");
    }
    return Graph::from_links(links, isolated);
}

Graph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    constexpr std::size_t kPerLine = 16;
    std::size_t on_line = 0;
    for (Index i = 0; i < g.node_count(); ++i) {
        if (g.degree(i) != 0) continue;
        if (on_line == 0) out << "# " << kIsolatedDirective;
        out << ' ' << g.label(i);
        if (++on_line == kPerLine) {
            out << '\n';
            on_line = 0;
        }
    }
    if (on_line != 0) out << '\n';
    for (const auto& [u, v] : g.links()) {
        out << g.label(u) << ' ' << g.label(v) << '\n';
    }
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    write_edge_list(out, g);
    if (!out) {
        throw std::runtime_error("I/O error while writing '" + path.string() + "'");
    }
}

Graph induced_subgraph_by_index(const Graph& g, std::span<const Index> keep) {
    std::vector<Index> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

    constexpr Index kAbsent = std::numeric_limits<Index>::max();
    std::vector<Index> remap(g.node_count(), kAbsent);
    std::vector<NodeId> labels;
    labels.reserve(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (kept[i] >= g.node_count()) {
            throw std::domain_error("induced_subgraph: node index out of range");
        }
        remap[kept[i]] = static_cast<Index>(i);
        labels.push_back(g.label(kept[i]));
    }
    std::vector<std::pair<Index, Index>> links;
    for (Index u : kept) {
        for (Index v : g.neighbors(u)) {
            if (u < v && remap[v] != kAbsent) links.emplace_back(remap[u], remap[v]);
        }
    }
    return Graph::from_indexed(std::move(labels), std::move(links));
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> keep) {
    std::vector<Index> indices;
    indices.reserve(keep.size());
    for (NodeId id : keep) {
        const auto idx = g.index_of(id);
        if (!idx) {
            throw std::domain_error("induced_subgraph: node " + std::to_string(id) + " is not in the graph");
        }
        indices.push_back(*idx);
    }
    return induced_subgraph_by_index(g, indices);
}

ComponentLabeling connected_components(const Graph& g) {
    const std::size_t n = g.node_count();
    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> raw(n, kUnset);
    std::vector<std::size_t> raw_sizes;
    std::vector<Index> stack;
    // Scanning in index (= label) order makes each component's discovery
    // order its smallest label, which is the tie-break for equal sizes.
    for (Index start = 0; start < n; ++start) {
        if (raw[start] != kUnset) continue;
        const std::size_t id = raw_sizes.size();
        raw_sizes.push_back(0);
        raw[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            const Index u = stack.back();
            stack.pop_back();
            ++raw_sizes[id];
            for (Index v : g.neighbors(u)) {
                if (raw[v] == kUnset) {
                    raw[v] = id;
                    stack.push_back(v);
                }
            }
        }
    }
    std::vector<std::size_t> order(raw_sizes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return raw_sizes[a] > raw_sizes[b]; });
    std::vector<std::size_t> rank(order.size());
    ComponentLabeling result;
    result.sizes.reserve(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        rank[order[r]] = r;
        result.sizes.push_back(raw_sizes[order[r]]);
    }
    result.component.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.component[i] = rank[raw[i]];
    return result;
}

Graph largest_component(const Graph& g) {
    if (g.empty()) return g;
    const auto labeling = connected_components(g);
    std::vector<Index> keep;
    keep.reserve(labeling.sizes.front());
    for (Index i = 0; i < g.node_count(); ++i) {
        if (labeling.component[i] == 0) keep.push_back(i);
    }
    return induced_subgraph_by_index(g, keep);
}

GraphStats basic_stats(const Graph& g) {
    GraphStats stats;
    stats.n = g.node_count();
    stats.m = g.link_count();
    if (stats.n > 0) stats.mean_degree = 2.0 * static_cast<double>(stats.m) / static_cast<double>(stats.n);
    return stats;
}

}  // namespace netgroups
