#include "netgroups/sampling.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace netgroups {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

void require_size(const Graph& g, std::size_t k, std::string_view who) {
    if (k == 0 || k > g.node_count()) {
        throw std::domain_error(std::string(who) + ": sample size " + std::to_string(k) +
                                " outside [1, " + std::to_string(g.node_count()) + "]");
    }
}

Sample make_sample(Technique technique, const Graph& source, const RandomSource& start, std::size_t k) {
    Sample s;
    s.technique = technique;
    s.seed = start;
    s.requested = k;
    s.source_n = source.node_count();
    s.source_m = source.link_count();
    return s;
}

// Graph on the visited node set with exactly the given links (no induction).
Graph subgraph_with_links(const Graph& g, std::vector<Index> nodes,
                          const std::vector<std::pair<Index, Index>>& links) {
    std::sort(nodes.begin(), nodes.end());
    std::vector<Index> remap(g.node_count(), 0);
    std::vector<NodeId> labels;
    labels.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        remap[nodes[i]] = static_cast<Index>(i);
        labels.push_back(g.label(nodes[i]));
    }
    std::vector<std::pair<Index, Index>> local;
    local.reserve(links.size());
    for (auto [u, v] : links) local.emplace_back(remap[u], remap[v]);
    return Graph::from_indexed(std::move(labels), std::move(local));
}

Index uniform_unmarked(const std::vector<bool>& marked, RandomSource& rng) {
    std::vector<Index> pool;
    for (Index i = 0; i < marked.size(); ++i) {
        if (!marked[i]) pool.push_back(i);
    }
    return pool[rng.uniform_index(pool.size())];
}

// Fenwick tree over non-negative integer weights.
class WeightTree {
public:
    explicit WeightTree(const std::vector<std::uint64_t>& weights) : tree_(weights.size() + 1, 0) {
        for (std::size_t i = 0; i < weights.size(); ++i) {
            total_ += weights[i];
            for (std::size_t j = i + 1; j < tree_.size(); j += j & (~j + 1)) tree_[j] += weights[i];
        }
        while ((top_ << 1) < tree_.size()) top_ <<= 1;
    }

    std::uint64_t total() const { return total_; }

    void subtract(std::size_t i, std::uint64_t w) {
        total_ -= w;
        for (std::size_t j = i + 1; j < tree_.size(); j += j & (~j + 1)) tree_[j] -= w;
    }

    /// Smallest index whose prefix sum exceeds `target` (target < total()).
    std::size_t find(std::uint64_t target) const {
        std::size_t pos = 0;
        for (std::size_t step = top_; step > 0; step >>= 1) {
            if (pos + step < tree_.size() && tree_[pos + step] <= target) {
                pos += step;
                target -= tree_[pos];
            }
        }
        return pos;
    }

private:
    std::vector<std::uint64_t> tree_;
    std::uint64_t total_ = 0;
    std::size_t top_ = 1;
};

struct LinkDraw {
    std::vector<Index> nodes;
    std::vector<std::pair<Index, Index>> links;
    bool exhausted = false;
};

LinkDraw draw_links(const Graph& g, std::size_t k, RandomSource& rng) {
    auto pool = g.links();
    if (pool.empty()) {
        throw std::domain_error("link sampling requires a graph with at least one link");
    }
    LinkDraw draw;
    std::vector<bool> seen(g.node_count(), false);
    for (std::size_t i = 0; i < pool.size() && draw.nodes.size() < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(pool.size() - i));
        std::swap(pool[i], pool[j]);
        const auto [u, v] = pool[i];
        draw.links.push_back(pool[i]);
        for (Index x : {u, v}) {
            if (!seen[x]) {
                seen[x] = true;
                draw.nodes.push_back(x);
            }
        }
    }
    draw.exhausted = draw.nodes.size() < k;
    return draw;
}

}  // namespace

std::string_view to_string(Technique t) {
    switch (t) {
        case Technique::RND: return "RND";
        case Technique::RLS: return "RLS";
        case Technique::RLI: return "RLI";
        case Technique::BFS: return "BFS";
        case Technique::FFS: return "FFS";
        case Technique::EXS: return "EXS";
    }
    return "?";
}

std::optional<Technique> parse_technique(std::string_view name) {
    for (Technique t : kAllTechniques) {
        if (iequals(name, to_string(t))) return t;
    }
    return std::nullopt;
}

std::string_view to_string(FireMode mode) {
    return mode == FireMode::PermitVisited ? "permit-visited" : "unvisited-only";
}

std::optional<FireMode> parse_fire_mode(std::string_view name) {
    if (iequals(name, "permit-visited")) return FireMode::PermitVisited;
    if (iequals(name, "unvisited-only")) return FireMode::UnvisitedOnly;
    return std::nullopt;
}

void SamplingParams::validate() const {
    if (!(target_fraction > 0.0 && target_fraction <= 1.0)) {
        throw std::domain_error("target fraction must lie in (0, 1]");
    }
    if (!(ffs_p > 0.0 && ffs_p < 1.0)) {
        throw std::domain_error("forest-fire p must lie in (0, 1)");
    }
    if (!(exs_beta > 0.0 && exs_beta < 1.0)) {
        throw std::domain_error("expansion beta must lie in (0, 1)");
    }
}

std::size_t target_count(const Graph& g, const SamplingParams& params) {
    if (g.empty()) {
        throw std::domain_error("target_count: graph is empty");
    }
    const double exact = params.target_fraction * static_cast<double>(g.node_count());
    // Absorb representation error such as 0.15 * 20 = 3.0000000000000004.
    const auto k = static_cast<std::size_t>(std::ceil(exact * (1.0 - 1e-12)));
    return std::clamp<std::size_t>(k, 1, g.node_count());
}

Sample sample_rnd(const Graph& g, std::size_t k, RandomSource rng) {
    require_size(g, k, "sample_rnd");
    Sample s = make_sample(Technique::RND, g, rng, k);
    std::vector<std::uint64_t> degrees(g.node_count());
    for (Index i = 0; i < g.node_count(); ++i) degrees[i] = g.degree(i);
    WeightTree tree(degrees);
    std::vector<bool> chosen(g.node_count(), false);
    std::vector<Index> picked;
    picked.reserve(k);
    while (picked.size() < k) {
        Index v;
        if (tree.total() > 0) {
            v = static_cast<Index>(tree.find(rng.uniform_index(tree.total())));
            tree.subtract(v, degrees[v]);
        } else {
            s.uniform_fallback = true;
            v = uniform_unmarked(chosen, rng);
        }
        chosen[v] = true;
        picked.push_back(v);
    }
    s.graph = induced_subgraph_by_index(g, picked);
    return s;
}

Sample sample_rls(const Graph& g, std::size_t k, RandomSource rng) {
    require_size(g, k, "sample_rls");
    Sample s = make_sample(Technique::RLS, g, rng, k);
    auto draw = draw_links(g, k, rng);
    s.short_of_target = draw.exhausted;
    s.graph = subgraph_with_links(g, std::move(draw.nodes), draw.links);
    return s;
}

Sample sample_rli(const Graph& g, std::size_t k, RandomSource rng) {
    require_size(g, k, "sample_rli");
    Sample s = make_sample(Technique::RLI, g, rng, k);
    auto draw = draw_links(g, k, rng);
    s.short_of_target = draw.exhausted;
    s.graph = induced_subgraph_by_index(g, draw.nodes);
    return s;
}

Sample sample_bfs(const Graph& g, std::size_t k, RandomSource rng) {
    require_size(g, k, "sample_bfs");
    Sample s = make_sample(Technique::BFS, g, rng, k);
    std::vector<bool> visited(g.node_count(), false);
    std::vector<Index> order;
    order.reserve(k);
    std::deque<Index> queue;
    std::vector<Index> scratch;
    auto visit = [&](Index v) {
        visited[v] = true;
        order.push_back(v);
        queue.push_back(v);
    };
    while (order.size() < k) {
        if (queue.empty()) {
            if (!order.empty()) ++s.reseeds;
            visit(uniform_unmarked(visited, rng));
            continue;
        }
        const Index v = queue.front();
        queue.pop_front();
        const auto nb = g.neighbors(v);
        scratch.assign(nb.begin(), nb.end());
        rng.shuffle(std::span<Index>(scratch));
        for (Index w : scratch) {
            if (order.size() == k) break;
            if (!visited[w]) visit(w);
        }
    }
    s.graph = induced_subgraph_by_index(g, order);
    return s;
}

Sample sample_ffs(const Graph& g, std::size_t k, RandomSource rng, double p, FireMode mode) {
    require_size(g, k, "sample_ffs");
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("sample_ffs: p must lie in (0, 1)");
    }
    Sample s = make_sample(Technique::FFS, g, rng, k);
    std::vector<bool> burned(g.node_count(), false);
    std::vector<Index> order;
    order.reserve(k);
    std::vector<std::pair<Index, Index>> links;
    std::deque<Index> queue;
    std::vector<Index> pool;
    auto burn = [&](Index v) {
        burned[v] = true;
        order.push_back(v);
        queue.push_back(v);
    };
    while (order.size() < k) {
        if (queue.empty()) {
            if (!order.empty()) ++s.reseeds;
            burn(uniform_unmarked(burned, rng));
            continue;
        }
        const Index v = queue.front();
        queue.pop_front();
        const std::uint64_t spread = rng.geometric(p);
        pool.clear();
        for (Index w : g.neighbors(v)) {
            if (mode == FireMode::PermitVisited || !burned[w]) pool.push_back(w);
        }
        const std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(spread, pool.size()));
        for (std::size_t i = 0; i < take && order.size() < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(pool.size() - i));
            std::swap(pool[i], pool[j]);
            const Index w = pool[i];
            links.emplace_back(v, w);
            if (!burned[w]) burn(w);
        }
    }
    s.graph = subgraph_with_links(g, std::move(order), links);
    return s;
}

double expansion_weight(double beta, std::size_t expansion_factor) {
    double power = 1.0;
    for (std::size_t i = 0; i < expansion_factor; ++i) power *= beta;
    return 1.0 - power;
}

ExpansionFrontier::ExpansionFrontier(const Graph& g, double beta)
    : graph_(&g),
      in_sample_(g.node_count(), false),
      covered_(g.node_count(), false),
      uncovered_neighbors_(g.node_count()),
      frontier_slot_(g.node_count(), 0) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::domain_error("expansion sampling: beta must lie in (0, 1)");
    }
    std::size_t max_degree = 0;
    for (Index i = 0; i < g.node_count(); ++i) {
        uncovered_neighbors_[i] = g.degree(i);
        max_degree = std::max(max_degree, g.degree(i));
    }
    beta_powers_.resize(max_degree + 1);
    beta_powers_[0] = 1.0;
    for (std::size_t e = 1; e <= max_degree; ++e) beta_powers_[e] = beta_powers_[e - 1] * beta;
}

void ExpansionFrontier::cover(Index v) {
    covered_[v] = true;
    for (Index z : graph_->neighbors(v)) --uncovered_neighbors_[z];
}

void ExpansionFrontier::add(Index v) {
    if (in_sample_[v]) return;
    if (!covered_[v]) {
        cover(v);
    } else {
        // Covered and unsampled means v sits in the frontier.
        const std::size_t slot = frontier_slot_[v];
        frontier_[slot] = frontier_.back();
        frontier_slot_[frontier_[slot]] = slot;
        frontier_.pop_back();
    }
    in_sample_[v] = true;
    ++sample_size_;
    for (Index w : graph_->neighbors(v)) {
        if (covered_[w]) continue;
        cover(w);
        frontier_slot_[w] = frontier_.size();
        frontier_.push_back(w);
    }
}

std::vector<Index> ExpansionFrontier::candidates() const { return frontier_; }

double ExpansionFrontier::weight(Index v) const {
    return 1.0 - beta_powers_[uncovered_neighbors_[v]];
}

Sample sample_exs(const Graph& g, std::size_t k, RandomSource rng, double beta) {
    require_size(g, k, "sample_exs");
    Sample s = make_sample(Technique::EXS, g, rng, k);
    ExpansionFrontier frontier(g, beta);
    std::vector<Index> order;
    order.reserve(k);
    std::vector<double> weights;
    auto take = [&](Index v) {
        frontier.add(v);
        order.push_back(v);
    };
    while (order.size() < k) {
        const auto candidates = frontier.candidates();
        if (candidates.empty()) {
            if (!order.empty()) ++s.reseeds;
            std::vector<Index> pool;
            for (Index i = 0; i < g.node_count(); ++i) {
                if (!frontier.in_sample(i)) pool.push_back(i);
            }
            take(pool[rng.uniform_index(pool.size())]);
            continue;
        }
        weights.resize(candidates.size());
        double total = 0.0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            weights[i] = frontier.weight(candidates[i]);
            total += weights[i];
        }
        std::size_t pick = candidates.size() - 1;
        if (total > 0.0) {
            double x = rng.uniform01() * total;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (weights[i] > 0.0 && x < weights[i]) {
                    pick = i;
                    break;
                }
                x -= weights[i];
            }
            // Rounding can leave x just past the last weight; fall back to the
            // last positive-weight candidate.
            if (weights[pick] == 0.0) {
                for (std::size_t i = candidates.size(); i-- > 0;) {
                    if (weights[i] > 0.0) {
                        pick = i;
                        break;
                    }
                }
            }
        } else {
            pick = static_cast<std::size_t>(rng.uniform_index(candidates.size()));
        }
        take(candidates[pick]);
    }
    s.graph = induced_subgraph_by_index(g, order);
    return s;
}

Sample sample(const Graph& g, Technique technique, const SamplingParams& params, RandomSource rng) {
    params.validate();
    const std::size_t k = target_count(g, params);
    Sample s;
    switch (technique) {
        case Technique::RND: s = sample_rnd(g, k, rng); break;
        case Technique::RLS: s = sample_rls(g, k, rng); break;
        case Technique::RLI: s = sample_rli(g, k, rng); break;
        case Technique::BFS: s = sample_bfs(g, k, rng); break;
        case Technique::FFS: s = sample_ffs(g, k, rng, params.ffs_p, params.ffs_mode); break;
        case Technique::EXS: s = sample_exs(g, k, rng, params.exs_beta); break;
    }
    s.params = params;
    return s;
}

}  // namespace netgroups
