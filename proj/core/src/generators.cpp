#include "netgroups/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace netgroups {

namespace {

std::pair<Index, Index> decode_pair(std::uint64_t r) {
    // r = i(i-1)/2 + j with 0 <= j < i
    auto i = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(r))) / 2.0);
    while (i * (i - 1) / 2 > r) --i;
    while ((i + 1) * i / 2 <= r) ++i;
    const std::uint64_t j = r - i * (i - 1) / 2;
    return {static_cast<Index>(j), static_cast<Index>(i)};
}

std::vector<NodeId> iota_labels(std::size_t n) {
    std::vector<NodeId> labels(n);
    std::iota(labels.begin(), labels.end(), NodeId{0});
    return labels;
}

// Accumulates links with O(1) duplicate detection.
class LinkSet {
public:
    bool insert(Index u, Index v) {
        if (u == v) return false;
        if (u > v) std::swap(u, v);
        const auto key = (static_cast<std::uint64_t>(u) << 32) | v;
        if (!seen_.insert(key).second) return false;
        links_.emplace_back(u, v);
        return true;
    }
    std::size_t size() const { return links_.size(); }
    std::vector<std::pair<Index, Index>> take() { return std::move(links_); }

private:
    std::unordered_set<std::uint64_t> seen_;
    std::vector<std::pair<Index, Index>> links_;
};

}  // namespace

Graph erdos_renyi_gnm(std::size_t n, std::size_t m, RandomSource& rng) {
    const std::uint64_t pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (m > pairs) {
        throw std::domain_error("erdos_renyi_gnm: m = " + std::to_string(m) + " exceeds the " +
                                std::to_string(pairs) + " available pairs");
    }
    // Floyd's sampling of an m-subset of pair indices.
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(2 * m);
    std::vector<std::uint64_t> order;
    order.reserve(m);
    for (std::uint64_t j = pairs - m; j < pairs; ++j) {
        const std::uint64_t t = rng.uniform_index(j + 1);
        const std::uint64_t pick = chosen.insert(t).second ? t : j;
        if (pick == j) chosen.insert(j);
        order.push_back(pick);
    }
    std::vector<std::pair<Index, Index>> links;
    links.reserve(m);
    for (std::uint64_t r : order) links.push_back(decode_pair(r));
    return Graph::from_indexed(iota_labels(n), std::move(links));
}

PlantedGraph stochastic_block_model(std::span<const std::size_t> block_sizes, double p_in, double p_out,
                                    RandomSource& rng) {
    const std::size_t n = std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
    std::vector<std::size_t> block_of(n);
    PlantedGraph planted;
    std::size_t next = 0;
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
        std::vector<NodeId> members;
        for (std::size_t i = 0; i < block_sizes[b]; ++i) {
            block_of[next] = b;
            members.push_back(next++);
        }
        planted.patterns.push_back(members);
        planted.groups.push_back(std::move(members));
    }
    std::vector<std::pair<Index, Index>> links;
    for (Index u = 0; u < n; ++u) {
        for (Index v = u + 1; v < n; ++v) {
            if (rng.bernoulli(block_of[u] == block_of[v] ? p_in : p_out)) links.emplace_back(u, v);
        }
    }
    planted.graph = Graph::from_indexed(iota_labels(n), std::move(links));
    return planted;
}

PlantedGraph star_modules(std::size_t modules, std::size_t leaves, std::size_t hubs) {
    PlantedGraph planted;
    std::vector<std::pair<Index, Index>> links;
    Index next = 0;
    for (std::size_t k = 0; k < modules; ++k) {
        std::vector<NodeId> hub_ids;
        std::vector<NodeId> leaf_ids;
        for (std::size_t h = 0; h < hubs; ++h) hub_ids.push_back(next++);
        for (std::size_t l = 0; l < leaves; ++l) leaf_ids.push_back(next++);
        for (NodeId leaf : leaf_ids) {
            for (NodeId hub : hub_ids) links.emplace_back(static_cast<Index>(leaf), static_cast<Index>(hub));
        }
        planted.groups.push_back(std::move(leaf_ids));
        planted.patterns.push_back(std::move(hub_ids));
    }
    planted.graph = Graph::from_indexed(iota_labels(next), std::move(links));
    return planted;
}

PlantedGraph mixed_fixture(const MixedFixtureParams& params, RandomSource& rng) {
    const std::size_t half = params.nodes / 2;
    PlantedGraph planted;
    LinkSet links;
    Index next = 0;

    while (next + params.community_size <= half) {
        std::vector<NodeId> members;
        for (std::size_t i = 0; i < params.community_size; ++i) members.push_back(next++);
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (rng.bernoulli(params.community_density)) {
                    links.insert(static_cast<Index>(members[i]), static_cast<Index>(members[j]));
                }
            }
        }
        planted.patterns.push_back(members);
        planted.groups.push_back(std::move(members));
    }
    const std::size_t module_span = params.module_leaves + params.module_hubs;
    while (next + module_span <= params.nodes) {
        std::vector<NodeId> hubs;
        std::vector<NodeId> leaves;
        for (std::size_t h = 0; h < params.module_hubs; ++h) hubs.push_back(next++);
        for (std::size_t l = 0; l < params.module_leaves; ++l) leaves.push_back(next++);
        for (NodeId leaf : leaves) {
            for (NodeId hub : hubs) {
                if (rng.bernoulli(params.module_density)) {
                    links.insert(static_cast<Index>(leaf), static_cast<Index>(hub));
                }
            }
        }
        planted.groups.push_back(std::move(leaves));
        planted.patterns.push_back(std::move(hubs));
    }
    const std::size_t n = next;
    const auto noise = static_cast<std::size_t>(std::llround(params.noise_degree * static_cast<double>(n) / 2.0));
    const std::size_t target = links.size() + noise;
    while (links.size() < target) {
        links.insert(static_cast<Index>(rng.uniform_index(n)), static_cast<Index>(rng.uniform_index(n)));
    }
    planted.graph = Graph::from_indexed(iota_labels(n), links.take());
    return planted;
}

Graph collaboration_network(std::size_t authors, std::size_t target_links, RandomSource& rng) {
    if (authors < 2) {
        throw std::domain_error("collaboration_network: need at least two authors");
    }
    // Research fields of 10..80 authors.
    std::vector<std::vector<Index>> fields;
    std::vector<std::size_t> field_of(authors);
    for (Index a = 0; a < authors;) {
        const std::size_t size = std::min<std::size_t>(10 + rng.uniform_index(71), authors - a);
        std::vector<Index> members;
        for (std::size_t i = 0; i < size; ++i, ++a) {
            field_of[a] = fields.size();
            members.push_back(a);
        }
        fields.push_back(std::move(members));
    }
    if (fields.size() > 1 && fields.back().size() < 2) {
        const Index last = fields.back().front();
        fields.pop_back();
        field_of[last] = fields.size() - 1;
        fields.back().push_back(last);
    }
    // Pareto(1.5) productivity, capped so one author cannot dominate a field.
    std::vector<double> weight(authors);
    for (auto& w : weight) w = std::min(50.0, std::pow(1.0 - rng.uniform01(), -1.0 / 1.5));

    LinkSet links;
    std::vector<bool> has_coauthor(authors, false);
    auto pick_in_field = [&](std::size_t f, std::span<const Index> exclude) -> Index {
        const auto& members = fields[f];
        double total = 0.0;
        for (Index a : members) {
            if (std::find(exclude.begin(), exclude.end(), a) == exclude.end()) total += weight[a];
        }
        double x = rng.uniform01() * total;
        Index last = members.front();
        for (Index a : members) {
            if (std::find(exclude.begin(), exclude.end(), a) != exclude.end()) continue;
            last = a;
            x -= weight[a];
            if (x < 0.0) return a;
        }
        return last;
    };
    auto publish = [&](std::vector<Index> team) {
        for (std::size_t i = 0; i < team.size(); ++i) {
            for (std::size_t j = i + 1; j < team.size(); ++j) {
                if (links.size() >= target_links) return;
                if (links.insert(team[i], team[j])) {
                    has_coauthor[team[i]] = true;
                    has_coauthor[team[j]] = true;
                }
            }
        }
    };
    auto make_team = [&](Index lead, std::size_t size) {
        std::vector<Index> team{lead};
        const std::size_t f = field_of[lead];
        while (team.size() < size && team.size() < fields[f].size()) {
            if (rng.bernoulli(0.08)) {
                const Index outsider = static_cast<Index>(rng.uniform_index(authors));
                if (std::find(team.begin(), team.end(), outsider) == team.end()) team.push_back(outsider);
            } else {
                team.push_back(pick_in_field(f, team));
            }
        }
        return team;
    };

    std::vector<Index> order(authors);
    std::iota(order.begin(), order.end(), Index{0});
    rng.shuffle(std::span<Index>(order));
    for (Index a : order) {
        if (links.size() >= target_links) break;
        if (!has_coauthor[a]) publish(make_team(a, 2 + rng.geometric(0.3)));
    }
    while (links.size() < target_links) {
        const Index lead = pick_in_field(field_of[static_cast<Index>(rng.uniform_index(authors))], {});
        publish(make_team(lead, 2 + rng.geometric(0.55)));
    }
    auto g = Graph::from_indexed(iota_labels(authors), links.take());
    std::vector<Index> linked;
    for (Index a = 0; a < authors; ++a) {
        if (g.degree(a) > 0) linked.push_back(a);
    }
    return linked.size() == authors ? g : induced_subgraph_by_index(g, linked);
}

}  // namespace netgroups
