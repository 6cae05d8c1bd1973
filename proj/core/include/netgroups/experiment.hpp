#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "netgroups/extraction.hpp"
#include "netgroups/sampling.hpp"
#include "netgroups/stats.hpp"

namespace netgroups {

inline constexpr std::string_view kOriginalLabel = "original";

struct ExperimentConfig {
    std::filesystem::path network_path;
    /// Network name used in output rows; defaults to the file stem.
    std::string name;
    std::vector<Technique> techniques{kAllTechniques.begin(), kAllTechniques.end()};
    SamplingParams sampling;
    ExtractionConfig extraction;
    std::size_t realizations = 100;
    std::uint64_t master_seed = 0;
    bool restrict_to_largest_component = false;
    std::filesystem::path output_dir = ".";
    /// Workers for independent realizations; 0 means hardware concurrency.
    unsigned threads = 1;
    /// Also write one groups file per realization.
    bool dump_groups = false;
    std::size_t histogram_bins = 10;
    /// Two-tailed level of the residual report.
    double alpha = 0.1;

    void validate() const;
};

/// Parses "key = value" lines; '#' starts a comment line. Relative paths
/// resolve against `base_dir`. Unknown or repeated keys throw ParseError.
ExperimentConfig parse_experiment_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Outcome of one (technique, realization) run, or of the original graph.
struct RealizationRecord {
    std::string technique;
    std::size_t realization = 0;
    std::size_t sample_n = 0;
    std::size_t sample_m = 0;
    double links_fraction = 1.0;
    std::size_t groups = 0;
    double mean_s = 0.0;
    double mean_t = 0.0;
    double mean_tau = 0.0;
    double median_tau = 0.0;
    std::size_t communities = 0;
    std::size_t mixtures = 0;
    std::size_t modules = 0;
    std::string stop;
};

/// One table row: the original graph or one technique over its realizations.
struct ResultRow {
    std::string network;
    std::string technique;
    std::size_t realizations = 0;
    /// Realizations that yielded at least one group.
    std::size_t with_groups = 0;
    double count_mean = 0.0;
    double count_sd = 0.0;
    double tau_mean = 0.0;
    double tau_sd = 0.0;
    double mean_s = 0.0;
    double mean_t = 0.0;
    double median_tau = 0.0;
    double pct_community = 0.0;
    double pct_mixture = 0.0;
    double pct_module = 0.0;
    double links_fraction = 0.0;
    double mean_degree = 0.0;
};

/// Aggregates records of one technique. Count mean and sd run over all
/// records; τ, |S|, |T| and median τ over records with groups; kind
/// percentages pool all groups. Throws std::domain_error on an empty input.
ResultRow aggregate(std::string_view network, std::span<const RealizationRecord> records);

/// Stream of realization i of `technique` (stream index i).
RandomSource realization_stream(std::uint64_t master_seed, Technique technique, std::size_t realization);
/// Stream used for the original graph's extraction.
RandomSource original_stream(std::uint64_t master_seed);

/// Record for one extraction result on a graph of `n` nodes and `m` links,
/// where the source graph had `source_m` links.
RealizationRecord make_record(std::string_view technique, std::size_t realization, const ExtractionResult& result,
                              std::size_t n, std::size_t m, std::size_t source_m);

struct ExperimentResult {
    std::string network;
    GraphStats source;
    ExtractionResult original;
    std::vector<ResultRow> rows;  ///< original first, then techniques in config order
    std::vector<RealizationRecord> records;  ///< original first, then by (technique, realization)
    /// τ of every group, per row label.
    std::vector<std::pair<std::string, std::vector<double>>> taus;
};

using ProgressFn = std::function<void(std::string_view)>;

/// Extraction on the full graph plus `realizations` sample-then-extract runs
/// per technique. Failures rethrow naming the technique and stream index.
ExperimentResult run_experiment(const Graph& g, const ExperimentConfig& config, const ProgressFn& progress = {});

/// Loads the network, runs the experiment and writes results.csv,
/// realizations.csv, residuals.csv, tau_histogram.csv, beta_fit.csv and
/// original.groups into config.output_dir.
ExperimentResult run_experiment_files(const ExperimentConfig& config, const ProgressFn& progress = {});

}  // namespace netgroups
