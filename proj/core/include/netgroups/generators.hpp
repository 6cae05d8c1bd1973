#pragma once

#include <cstddef>
#include <vector>

#include "netgroups/graph.hpp"
#include "netgroups/random.hpp"

namespace netgroups {

/// G(n, m): n nodes labelled 0..n-1 and exactly m distinct links drawn
/// uniformly among all n(n-1)/2 pairs. Throws std::domain_error when m
/// exceeds the pair count.
Graph erdos_renyi_gnm(std::size_t n, std::size_t m, RandomSource& rng);

/// A generated graph together with the groups planted into it. For planted
/// communities pattern == group; for planted modules the pattern is the
/// shared neighbor set.
struct PlantedGraph {
    Graph graph;
    std::vector<std::vector<NodeId>> groups;
    std::vector<std::vector<NodeId>> patterns;
};

/// Stochastic block model with consecutive integer labels per block.
PlantedGraph stochastic_block_model(std::span<const std::size_t> block_sizes, double p_in, double p_out,
                                    RandomSource& rng);

/// `modules` disjoint stars: each has `leaves` leaf nodes all linked to the
/// same `hubs` hub nodes and no other links.
PlantedGraph star_modules(std::size_t modules, std::size_t leaves, std::size_t hubs);

/// Half planted communities, half planted modules, plus sparse uniform noise.
/// Community blocks are dense cliques-with-dropout; each module is a set of
/// structurally similar leaves sharing one hub set.
struct MixedFixtureParams {
    std::size_t nodes = 2000;
    std::size_t community_size = 60;
    double community_density = 0.4;
    std::size_t module_leaves = 30;
    std::size_t module_hubs = 6;
    double module_density = 0.6;
    double noise_degree = 2.0;
};
PlantedGraph mixed_fixture(const MixedFixtureParams& params, RandomSource& rng);

/// Co-authorship style graph: authors grouped into research fields, papers
/// add cliques among their authors, productivity is heavy tailed. Generation
/// stops at exactly `links` links; every author has at least one co-author.
Graph collaboration_network(std::size_t authors, std::size_t links, RandomSource& rng);

}  // namespace netgroups
