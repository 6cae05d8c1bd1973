#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "netgroups/errors.hpp"
#include "netgroups/experiment.hpp"
#include "netgroups/generators.hpp"
#include "netgroups/report.hpp"

using namespace netgroups;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text, const fs::path& base = "/data") {
    std::istringstream in(text);
    return parse_experiment_config(in, base);
}

std::size_t parse_error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 999;
}

Graph small_network() {
    RandomSource rng(3);
    return stochastic_block_model(std::vector<std::size_t>(4, 15), 0.6, 0.03, rng).graph;
}

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.name = "blocks";
    c.techniques = {Technique::RND, Technique::BFS, Technique::EXS};
    c.sampling.target_fraction = 0.5;
    c.extraction.restarts = 3;
    c.extraction.null_runs = 20;
    c.realizations = 3;
    c.master_seed = 42;
    return c;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("netgroups_experiment_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST(ExperimentConfigParse, DefaultsAndPaths) {
    const ExperimentConfig c = parse("# run\nnetwork = nets/collab.txt\n");
    EXPECT_EQ(c.network_path, fs::path("/data/nets/collab.txt"));
    EXPECT_EQ(c.name, "collab");
    EXPECT_EQ(c.output_dir, fs::path("/data"));
    EXPECT_EQ(c.techniques.size(), 6u);
    EXPECT_EQ(c.realizations, 100u);
    EXPECT_DOUBLE_EQ(c.sampling.target_fraction, 0.15);
    EXPECT_DOUBLE_EQ(c.sampling.ffs_p, 0.7);
    EXPECT_DOUBLE_EQ(c.sampling.exs_beta, 0.9);
    EXPECT_EQ(c.extraction.restarts, 10u);
    EXPECT_EQ(c.extraction.null_runs, 100u);
    EXPECT_DOUBLE_EQ(c.extraction.percentile, 99.0);
    EXPECT_FALSE(c.extraction.max_groups.has_value());
}

TEST(ExperimentConfigParse, AllKeys) {
    const ExperimentConfig c = parse(
        "network = /abs/g.txt\n"
        "name = demo\n"
        "techniques = rnd, BFS FFS\n"
        "fraction = 0.2\n"
        "ffs_p = 0.5\n"
        "ffs_mode = unvisited-only\n"
        "exs_beta = 0.8\n"
        "restarts = 4\n"
        "null_runs = 30\n"
        "percentile = 95\n"
        "max_groups = 100\n"
        "threshold_mode = once\n"
        "objective = sqrt-pairs\n"
        "realizations = 10\n"
        "seed = 12345678901\n"
        "largest_component = yes\n"
        "output_dir = out\n"
        "threads = 2\n"
        "dump_groups = true\n"
        "histogram_bins = 20\n"
        "alpha = 0.05\n");
    EXPECT_EQ(c.network_path, fs::path("/abs/g.txt"));
    EXPECT_EQ(c.name, "demo");
    EXPECT_EQ(c.techniques, (std::vector<Technique>{Technique::RND, Technique::BFS, Technique::FFS}));
    EXPECT_DOUBLE_EQ(c.sampling.target_fraction, 0.2);
    EXPECT_DOUBLE_EQ(c.sampling.ffs_p, 0.5);
    EXPECT_EQ(c.sampling.ffs_mode, FireMode::UnvisitedOnly);
    EXPECT_DOUBLE_EQ(c.sampling.exs_beta, 0.8);
    EXPECT_EQ(c.extraction.restarts, 4u);
    EXPECT_EQ(c.extraction.null_runs, 30u);
    EXPECT_DOUBLE_EQ(c.extraction.percentile, 95.0);
    EXPECT_EQ(c.extraction.max_groups, 100u);
    EXPECT_EQ(c.extraction.threshold_mode, ThresholdMode::Once);
    EXPECT_EQ(c.extraction.normalization, Normalization::SqrtPairs);
    EXPECT_EQ(c.realizations, 10u);
    EXPECT_EQ(c.master_seed, 12345678901u);
    EXPECT_TRUE(c.restrict_to_largest_component);
    EXPECT_EQ(c.output_dir, fs::path("/data/out"));
    EXPECT_EQ(c.threads, 2u);
    EXPECT_TRUE(c.dump_groups);
    EXPECT_EQ(c.histogram_bins, 20u);
    EXPECT_DOUBLE_EQ(c.alpha, 0.05);
}

TEST(ExperimentConfigParse, ErrorsCarryLineNumbers) {
    EXPECT_EQ(parse_error_line("network = a\nbogus = 1\n"), 2u);
    EXPECT_EQ(parse_error_line("network = a\n\nnetwork = b\n"), 3u);
    EXPECT_EQ(parse_error_line("network = a\ntechniques = RND, DFS\n"), 2u);
    EXPECT_EQ(parse_error_line("network a\n"), 1u);
    EXPECT_EQ(parse_error_line("network = a\nrestarts = -2\n"), 2u);
    EXPECT_EQ(parse_error_line("network = a\nfraction = lots\n"), 2u);
    EXPECT_EQ(parse_error_line("network = a\ndump_groups = maybe\n"), 2u);
    EXPECT_EQ(parse_error_line("fraction = 0.1\n"), 0u);
}

TEST(ExperimentConfigValidate, Ranges) {
    ExperimentConfig c = small_config();
    EXPECT_NO_THROW(c.validate());
    c.realizations = 0;
    EXPECT_THROW(c.validate(), std::domain_error);
    c = small_config();
    c.techniques = {Technique::RND, Technique::RND};
    EXPECT_THROW(c.validate(), std::domain_error);
    c = small_config();
    c.name = "a,b";
    EXPECT_THROW(c.validate(), std::domain_error);
    c = small_config();
    c.sampling.target_fraction = 1.5;
    EXPECT_THROW(c.validate(), std::domain_error);
    c = small_config();
    c.extraction.null_runs = 0;
    EXPECT_THROW(c.validate(), std::domain_error);
}

TEST(Aggregate, HandComputedRow) {
    std::vector<RealizationRecord> records(3);
    records[0] = {"BFS", 0, 10, 20, 0.2, 2, 4.0, 5.0, 0.5, 0.5, 1, 0, 1, "not-significant"};
    records[1] = {"BFS", 1, 10, 30, 0.3, 0, 0.0, 0.0, 0.0, 0.0, 0, 0, 0, "not-significant"};
    records[2] = {"BFS", 2, 10, 10, 0.1, 4, 6.0, 7.0, 1.0, 1.0, 4, 0, 0, "not-significant"};
    const ResultRow row = aggregate("net", records);
    EXPECT_EQ(row.network, "net");
    EXPECT_EQ(row.technique, "BFS");
    EXPECT_EQ(row.realizations, 3u);
    EXPECT_EQ(row.with_groups, 2u);
    EXPECT_DOUBLE_EQ(row.count_mean, 2.0);
    EXPECT_DOUBLE_EQ(row.count_sd, 2.0);
    EXPECT_DOUBLE_EQ(row.tau_mean, 0.75);
    EXPECT_NEAR(row.tau_sd, std::sqrt(0.125), 1e-15);
    EXPECT_DOUBLE_EQ(row.mean_s, 5.0);
    EXPECT_DOUBLE_EQ(row.mean_t, 6.0);
    EXPECT_DOUBLE_EQ(row.median_tau, 0.75);
    EXPECT_NEAR(row.pct_community, 500.0 / 6.0, 1e-12);
    EXPECT_DOUBLE_EQ(row.pct_mixture, 0.0);
    EXPECT_NEAR(row.pct_module, 100.0 / 6.0, 1e-12);
    EXPECT_NEAR(row.links_fraction, 0.2, 1e-15);
    EXPECT_DOUBLE_EQ(row.mean_degree, 4.0);
    EXPECT_THROW(aggregate("net", std::vector<RealizationRecord>{}), std::domain_error);
}

TEST(Streams, DistinctAndStable) {
    EXPECT_EQ(original_stream(5), RandomSource(5).split(0));
    EXPECT_EQ(realization_stream(5, Technique::RND, 3), realization_stream(5, Technique::RND, 3));
    EXPECT_NE(realization_stream(5, Technique::RND, 3).seed(), realization_stream(5, Technique::RLS, 3).seed());
    EXPECT_NE(realization_stream(5, Technique::RND, 3), realization_stream(5, Technique::RND, 4));
    EXPECT_EQ(realization_stream(5, Technique::EXS, 7).stream(), 7u);
}

TEST(RunExperiment, ShapeAndReplay) {
    const Graph g = small_network();
    const ExperimentConfig c = small_config();
    const ExperimentResult r = run_experiment(g, c);
    ASSERT_EQ(r.rows.size(), 4u);
    EXPECT_EQ(r.rows[0].technique, kOriginalLabel);
    EXPECT_EQ(r.rows[1].technique, "RND");
    EXPECT_EQ(r.rows[3].technique, "EXS");
    ASSERT_EQ(r.records.size(), 10u);
    EXPECT_EQ(r.source.n, g.node_count());
    EXPECT_EQ(r.rows[0].count_mean, static_cast<double>(r.original.groups.size()));
    ASSERT_EQ(r.taus.size(), 4u);
    EXPECT_EQ(r.taus[0].second.size(), r.original.groups.size());

    // Each record is reproducible from its own stream alone.
    for (std::size_t k = 1; k < r.records.size(); ++k) {
        const RealizationRecord& rec = r.records[k];
        const Technique t = *parse_technique(rec.technique);
        const RandomSource stream = realization_stream(c.master_seed, t, rec.realization);
        const Sample s = sample(g, t, c.sampling, stream.split(0));
        const ExtractionResult e = extract_groups(s.graph, c.extraction, stream.split(1));
        EXPECT_EQ(rec.sample_n, s.graph.node_count());
        EXPECT_EQ(rec.sample_m, s.graph.link_count());
        EXPECT_EQ(rec.groups, e.groups.size());
    }
    const ExtractionResult original = extract_groups(g, c.extraction, original_stream(c.master_seed));
    EXPECT_EQ(original.groups.size(), r.original.groups.size());

    // Rows re-aggregate from the records.
    for (std::size_t t = 0; t < 3; ++t) {
        const std::span<const RealizationRecord> block(r.records.data() + 1 + 3 * t, 3);
        const ResultRow again = aggregate(r.network, block);
        EXPECT_EQ(again.count_mean, r.rows[t + 1].count_mean);
        EXPECT_EQ(again.tau_mean, r.rows[t + 1].tau_mean);
        EXPECT_EQ(again.links_fraction, r.rows[t + 1].links_fraction);
    }
}

TEST(RunExperiment, IndependentOfThreadCount) {
    const Graph g = small_network();
    ExperimentConfig c = small_config();
    const ExperimentResult one = run_experiment(g, c);
    c.threads = 4;
    const ExperimentResult four = run_experiment(g, c);
    std::ostringstream a;
    std::ostringstream b;
    write_realizations_csv(a, one.records);
    write_realizations_csv(b, four.records);
    EXPECT_EQ(a.str(), b.str());
}

TEST(RunExperiment, ProgressReportsEveryRealization) {
    std::size_t calls = 0;
    run_experiment(small_network(), small_config(), [&](std::string_view) { ++calls; });
    EXPECT_EQ(calls, 10u);
}

TEST(RunExperiment, LargestComponentRestriction) {
    std::vector<std::pair<NodeId, NodeId>> links;
    for (const auto& [u, v] : small_network().links()) links.emplace_back(u, v);
    links.emplace_back(1000, 1001);
    const Graph g = Graph::from_links(links);
    ExperimentConfig c = small_config();
    c.restrict_to_largest_component = true;
    EXPECT_EQ(run_experiment(g, c).source.n, largest_component(g).node_count());
}

TEST(RunExperimentFiles, WritesAllOutputs) {
    const fs::path dir = scratch_dir("files");
    write_edge_list(dir / "blocks.txt", small_network());
    ExperimentConfig c = small_config();
    c.network_path = dir / "blocks.txt";
    c.output_dir = dir / "out";
    c.dump_groups = true;
    const ExperimentResult r = run_experiment_files(c);
    for (const char* name : {"results.csv", "realizations.csv", "residuals.csv", "tau_histogram.csv", "beta_fit.csv",
                             "original.groups"}) {
        EXPECT_TRUE(fs::exists(c.output_dir / name)) << name;
    }
    EXPECT_TRUE(fs::exists(c.output_dir / "groups" / "BFS_2.groups"));
    std::ifstream results(c.output_dir / "results.csv");
    const auto rows = read_results_csv(results);
    ASSERT_EQ(rows.size(), r.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].technique, r.rows[i].technique);
        EXPECT_EQ(rows[i].tau_mean, r.rows[i].tau_mean);
        EXPECT_EQ(rows[i].count_sd, r.rows[i].count_sd);
    }
    std::ifstream dump(c.output_dir / "realizations.csv");
    const auto records = read_realizations_csv(dump);
    ASSERT_EQ(records.size(), 10u);
    std::vector<ResultRow> rebuilt;
    for (std::size_t begin = 0; begin < records.size();) {
        std::size_t end = begin;
        while (end < records.size() && records[end].technique == records[begin].technique) ++end;
        rebuilt.push_back(aggregate(c.name, std::span(records.data() + begin, end - begin)));
        begin = end;
    }
    std::ostringstream rebuilt_csv;
    write_results_csv(rebuilt_csv, rebuilt);
    const std::string first = slurp(c.output_dir / "results.csv");
    EXPECT_EQ(rebuilt_csv.str(), first);
    run_experiment_files(c);
    EXPECT_EQ(slurp(c.output_dir / "results.csv"), first);
    fs::remove_all(dir);
}

TEST(RunExperimentFiles, MissingNetworkFails) {
    ExperimentConfig c = small_config();
    c.network_path = "/nonexistent/graph.txt";
    c.output_dir = scratch_dir("missing");
    EXPECT_THROW(run_experiment_files(c), std::exception);
}
