#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "netgroups/graph.hpp"
#include "netgroups/random.hpp"

namespace netgroups {

enum class Technique { RND, RLS, RLI, BFS, FFS, EXS };

inline constexpr std::array<Technique, 6> kAllTechniques = {
    Technique::RND, Technique::RLS, Technique::RLI, Technique::BFS, Technique::FFS, Technique::EXS};

std::string_view to_string(Technique t);
/// Case-insensitive; accepts exactly the six abbreviations.
std::optional<Technique> parse_technique(std::string_view name);

/// Forest-fire burning may either revisit already-burned neighbors (their
/// link joins the sample) or only pick among unburned neighbors.
enum class FireMode { PermitVisited, UnvisitedOnly };

std::string_view to_string(FireMode mode);
std::optional<FireMode> parse_fire_mode(std::string_view name);

struct SamplingParams {
    double target_fraction = 0.15;
    double ffs_p = 0.7;
    double exs_beta = 0.9;
    FireMode ffs_mode = FireMode::PermitVisited;

    /// Throws std::domain_error when a field leaves its range.
    void validate() const;
};

struct Sample {
    Graph graph;
    Technique technique = Technique::RND;
    SamplingParams params;
    /// The source the sampler started from (seed and stream index).
    RandomSource seed;
    std::size_t requested = 0;
    std::size_t source_n = 0;
    std::size_t source_m = 0;
    /// RLS/RLI ran out of links before reaching the requested node count.
    bool short_of_target = false;
    /// RND exhausted positive-degree nodes and drew degree-0 nodes uniformly.
    bool uniform_fallback = false;
    /// BFS/FFS/EXS restarts from a fresh uniform seed node.
    std::size_t reseeds = 0;

    double links_fraction() const {
        return source_m == 0 ? 0.0 : static_cast<double>(graph.link_count()) / static_cast<double>(source_m);
    }
};

/// ceil(fraction * n), at least 1. Throws std::domain_error on an empty graph.
std::size_t target_count(const Graph& g, const SamplingParams& params);

Sample sample_rnd(const Graph& g, std::size_t k, RandomSource rng);
Sample sample_rls(const Graph& g, std::size_t k, RandomSource rng);
Sample sample_rli(const Graph& g, std::size_t k, RandomSource rng);
Sample sample_bfs(const Graph& g, std::size_t k, RandomSource rng);
Sample sample_ffs(const Graph& g, std::size_t k, RandomSource rng, double p,
                  FireMode mode = FireMode::PermitVisited);
Sample sample_exs(const Graph& g, std::size_t k, RandomSource rng, double beta);

/// Dispatches on `technique` with k = target_count(g, params).
Sample sample(const Graph& g, Technique technique, const SamplingParams& params, RandomSource rng);

/// 1 - beta^expansion_factor.
double expansion_weight(double beta, std::size_t expansion_factor);

/// Incremental state of expansion sampling: the sampled set S, its covered
/// set S ∪ N(S), and for every node the number of neighbors outside the
/// covered set (its expansion factor).
class ExpansionFrontier {
public:
    ExpansionFrontier(const Graph& g, double beta);

    void add(Index v);

    bool in_sample(Index v) const { return in_sample_[v]; }
    std::size_t sample_size() const { return sample_size_; }
    /// N(S) \ S, in order of first coverage.
    std::vector<Index> candidates() const;
    std::size_t expansion_factor(Index v) const { return uncovered_neighbors_[v]; }
    double weight(Index v) const;

private:
    void cover(Index v);

    const Graph* graph_;
    std::vector<double> beta_powers_;
    std::vector<bool> in_sample_;
    std::vector<bool> covered_;
    std::vector<std::size_t> uncovered_neighbors_;
    std::vector<Index> frontier_;
    std::vector<std::size_t> frontier_slot_;
    std::size_t sample_size_ = 0;
};

}  // namespace netgroups
