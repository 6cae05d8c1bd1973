#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "netgroups/graph.hpp"
#include "netgroups/objective.hpp"
#include "netgroups/random.hpp"

namespace netgroups {

/// Which (n, m) the Erdős–Rényi significance threshold is calibrated on.
enum class ThresholdMode {
    PerIteration,  ///< the current residual graph, recomputed every iteration
    Once,          ///< the input graph only
};

std::string_view to_string(ThresholdMode mode);
std::optional<ThresholdMode> parse_threshold_mode(std::string_view name);

struct ExtractionConfig {
    std::size_t restarts = 10;
    std::size_t null_runs = 100;
    double percentile = 99.0;
    std::optional<std::size_t> max_groups;
    ThresholdMode threshold_mode = ThresholdMode::PerIteration;
    Normalization normalization = Normalization::PooledZ;
    /// Workers for the null-model trials; 0 means hardware concurrency.
    unsigned threads = 1;

    void validate() const;
};

struct NodeGroup {
    std::vector<NodeId> s;  ///< the group S, ascending labels
    std::vector<NodeId> t;  ///< its linking pattern T, ascending labels
    std::size_t overlap = 0;  ///< |S ∩ T|
    double w = 0.0;
    double threshold = 0.0;  ///< significance threshold it beat
    Ratio tau;
    GroupKind kind = GroupKind::Mixture;
    std::size_t order = 0;  ///< 1-based extraction index
};

enum class StopReason { NoLinks, MaxGroups, NotSignificant };

std::string_view to_string(StopReason reason);

struct ExtractionResult {
    std::vector<NodeGroup> groups;
    std::size_t residual_n = 0;
    std::size_t residual_m = 0;
    /// Threshold used at each iteration, including the final failing one.
    std::vector<double> thresholds;
    StopReason stop = StopReason::NoLinks;
};

struct ClimbResult {
    std::vector<NodeId> s;
    std::vector<NodeId> t;
    double w = 0.0;
    /// Objective at the initialization of the restart that produced (s, t).
    double start_w = 0.0;
    /// 0-based restart that produced (s, t).
    std::size_t restart = 0;
};

/// Random-restart hill climbing over (S, T). Each restart starts from
/// S = T = closed neighborhood of a uniform node and applies strictly
/// improving single-node toggles of S or T, scanned in shuffled order, until
/// a full pass finds none. Restart r uses rng.split(r). Throws
/// std::domain_error when g has no links or restarts is 0.
ClimbResult hill_climb(const Graph& g, const RandomSource& rng, std::size_t restarts,
                       Normalization norm = Normalization::PooledZ);

/// Nearest-rank `config.percentile` of the best objective found by
/// hill_climb on config.null_runs independent G(n, m) graphs; trial i uses
/// rng.split(i).
double null_threshold(std::size_t n, std::size_t m, const ExtractionConfig& config, const RandomSource& rng);

/// Nearest-rank percentile of `values` (non-empty), 0 < percentile <= 100.
double nearest_rank_percentile(std::vector<double> values, double percentile);

/// Sequential extraction of significant groups. Isolated nodes of g are
/// dropped first; after each accepted group the links between S and T are
/// removed together with nodes left without links.
ExtractionResult extract_groups(const Graph& g, const ExtractionConfig& config, const RandomSource& rng);

}  // namespace netgroups
