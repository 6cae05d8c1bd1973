// netgroups: sample networks, extract significant node groups, run and
// compare seeded experiments.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netgroups/errors.hpp"
#include "netgroups/experiment.hpp"
#include "netgroups/extraction.hpp"
#include "netgroups/generators.hpp"
#include "netgroups/graph.hpp"
#include "netgroups/report.hpp"
#include "netgroups/sampling.hpp"

namespace fs = std::filesystem;
using namespace netgroups;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs a validate() call, reporting range violations as usage errors.
template <class F>
void check(F&& validate) {
    try {
        validate();
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
}

Graph read_graph(const std::string& path, bool largest) {
    Graph g = load_edge_list(fs::path(path));
    return largest ? largest_component(g) : g;
}

// Writes to `path`, or to stdout when it is empty or "-".
template <class Emit>
void emit_output(const std::string& path, Emit&& emit) {
    std::ostringstream buffer;
    emit(buffer);
    if (path.empty() || path == "-") {
        std::cout << buffer.str();
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << buffer.str();
    if (!out) throw std::runtime_error("write failed: " + path);
}

Technique technique_named(const std::string& name) {
    const auto t = parse_technique(name);
    if (!t) throw UsageError("unknown technique '" + name + "' (expected RND, RLS, RLI, BFS, FFS or EXS)");
    return *t;
}

struct ExtractOptions {
    std::size_t restarts = 10;
    std::size_t null_runs = 100;
    double percentile = 99.0;
    std::optional<std::size_t> max_groups;
    std::string threshold_mode = "per-iteration";
    std::string objective = "pooled-z";
    unsigned threads = 1;

    ExtractionConfig config() const {
        ExtractionConfig c;
        c.restarts = restarts;
        c.null_runs = null_runs;
        c.percentile = percentile;
        c.max_groups = max_groups;
        c.threads = threads;
        const auto mode = parse_threshold_mode(threshold_mode);
        if (!mode) throw UsageError("unknown threshold mode '" + threshold_mode + "'");
        c.threshold_mode = *mode;
        const auto norm = parse_normalization(objective);
        if (!norm) throw UsageError("unknown objective '" + objective + "'");
        c.normalization = *norm;
        check([&] { c.validate(); });
        return c;
    }
};

void add_extract_options(CLI::App* cmd, ExtractOptions& o) {
    cmd->add_option("--restarts", o.restarts, "Hill-climbing restarts")->capture_default_str();
    cmd->add_option("--null-runs", o.null_runs, "Erdos-Renyi trials per threshold")->capture_default_str();
    cmd->add_option("--percentile", o.percentile, "Null-model percentile")->capture_default_str();
    cmd->add_option("--max-groups", o.max_groups, "Stop after this many groups");
    cmd->add_option("--threshold-mode", o.threshold_mode, "per-iteration or once")->capture_default_str();
    cmd->add_option("--objective", o.objective, "pooled-z, standard-error or sqrt-pairs")->capture_default_str();
}

struct SampleOptions {
    std::string input;
    std::string technique = "RND";
    double fraction = 0.15;
    double ffs_p = 0.7;
    std::string ffs_mode = "permit-visited";
    double exs_beta = 0.9;
    std::uint64_t seed = 0;
    bool largest = false;
    std::string output;
};

int run_sample(const SampleOptions& o) {
    const Technique technique = technique_named(o.technique);
    SamplingParams params;
    params.target_fraction = o.fraction;
    params.ffs_p = o.ffs_p;
    params.exs_beta = o.exs_beta;
    const auto mode = parse_fire_mode(o.ffs_mode);
    if (!mode) throw UsageError("unknown FFS mode '" + o.ffs_mode + "'");
    params.ffs_mode = *mode;
    check([&] { params.validate(); });

    const Graph g = read_graph(o.input, o.largest);
    if (g.empty()) throw std::runtime_error("input graph is empty");
    const Sample s = sample(g, technique, params, RandomSource(o.seed));
    emit_output(o.output, [&](std::ostream& out) { write_edge_list(out, s.graph); });

    std::cerr << "technique=" << to_string(s.technique) << " k=" << s.requested << " seed=" << s.seed.seed()
              << " stream=" << s.seed.stream() << " nodes=" << s.graph.node_count()
              << " links=" << s.graph.link_count() << " source_nodes=" << s.source_n
              << " source_links=" << s.source_m << " links_fraction=" << format_real(s.links_fraction());
    if (s.short_of_target) std::cerr << " short_of_target";
    if (s.uniform_fallback) std::cerr << " uniform_fallback";
    if (s.reseeds > 0) std::cerr << " reseeds=" << s.reseeds;
    std::cerr << '\n';
    return 0;
}

int run_extract(const std::string& input, const ExtractOptions& o, std::uint64_t seed, bool largest,
                const std::string& output) {
    const ExtractionConfig config = o.config();
    const Graph g = read_graph(input, largest);
    const ExtractionResult result = extract_groups(g, config, RandomSource(seed));
    const GroupsFileInfo info{fs::path(input).stem().string(), g.node_count(), g.link_count(), seed, config};
    emit_output(output, [&](std::ostream& out) { write_groups(out, result, info); });
    std::cerr << "groups=" << result.groups.size() << " stop=" << to_string(result.stop) << '\n';
    return 0;
}

struct ExperimentOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> fraction;
    std::vector<std::string> techniques;
    std::optional<std::size_t> restarts;
    std::optional<std::size_t> null_runs;
    std::optional<std::size_t> max_groups;
    std::optional<std::size_t> realizations;
    std::optional<unsigned> threads;
    bool largest = false;
    std::string output;
    bool progress = false;
};

int run_experiment_cmd(const std::string& config_path, const ExperimentOverrides& o) {
    ExperimentConfig config;
    try {
        config = load_experiment_config(config_path);
    } catch (const ParseError& e) {
        throw UsageError(config_path + ": " + e.what());
    }
    if (o.seed) config.master_seed = *o.seed;
    if (o.fraction) config.sampling.target_fraction = *o.fraction;
    if (!o.techniques.empty()) {
        config.techniques.clear();
        for (const auto& name : o.techniques) config.techniques.push_back(technique_named(name));
    }
    if (o.restarts) config.extraction.restarts = *o.restarts;
    if (o.null_runs) config.extraction.null_runs = *o.null_runs;
    if (o.max_groups) config.extraction.max_groups = *o.max_groups;
    if (o.realizations) config.realizations = *o.realizations;
    if (o.threads) config.threads = *o.threads;
    if (o.largest) config.restrict_to_largest_component = true;
    if (!o.output.empty()) config.output_dir = o.output;
    check([&] { config.validate(); });

    ProgressFn progress;
    if (o.progress) progress = [](std::string_view line) { std::cerr << line << '\n'; };
    const ExperimentResult result = run_experiment_files(config, progress);
    for (const auto& row : result.rows) {
        std::cerr << row.technique << ": groups " << format_real(row.count_mean) << " tau "
                  << format_real(row.tau_mean) << " links_fraction " << format_real(row.links_fraction) << '\n';
    }
    return 0;
}

int run_report(const std::vector<std::string>& inputs, double alpha, const std::string& output) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
    std::vector<ResultRow> rows;
    for (const auto& path : inputs) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read " + path);
        try {
            const auto more = read_results_csv(in);
            rows.insert(rows.end(), more.begin(), more.end());
        } catch (const ParseError& e) {
            throw UsageError(path + ": " + e.what());
        }
    }
    std::vector<ResidualSection> sections;
    try {
        sections = compare_rows(rows, alpha);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    emit_output(output, [&](std::ostream& out) { write_residuals_csv(out, sections); });
    return 0;
}

struct GenerateOptions {
    std::string model;
    std::uint64_t seed = 0;
    std::size_t nodes = 0;
    std::size_t links = 0;
    std::size_t blocks = 8;
    std::size_t block_size = 25;
    double p_in = 0.5;
    double p_out = 0.02;
    std::size_t modules = 5;
    std::size_t leaves = 10;
    std::size_t hubs = 3;
    std::string output;
};

int run_generate(const GenerateOptions& o) {
    RandomSource rng(o.seed);
    Graph g;
    if (o.model == "er") {
        if (o.nodes == 0) throw UsageError("er needs --nodes");
        try {
            g = erdos_renyi_gnm(o.nodes, o.links, rng);
        } catch (const std::domain_error& e) {
            throw UsageError(e.what());
        }
    } else if (o.model == "sbm") {
        const std::vector<std::size_t> sizes(o.blocks, o.block_size);
        g = stochastic_block_model(sizes, o.p_in, o.p_out, rng).graph;
    } else if (o.model == "stars") {
        g = star_modules(o.modules, o.leaves, o.hubs).graph;
    } else if (o.model == "mixed") {
        MixedFixtureParams params;
        if (o.nodes > 0) params.nodes = o.nodes;
        g = mixed_fixture(params, rng).graph;
    } else if (o.model == "collab") {
        g = collaboration_network(o.nodes > 0 ? o.nodes : 9877, o.links > 0 ? o.links : 25998, rng);
    } else {
        throw UsageError("unknown model '" + o.model + "'");
    }
    emit_output(o.output, [&](std::ostream& out) { write_edge_list(out, g); });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph sampling and significant node-group extraction"};
    app.require_subcommand(1);

    SampleOptions sample_opts;
    auto* sample_cmd = app.add_subcommand("sample", "Sample a subgraph and write it as an edge list");
    sample_cmd->add_option("graph", sample_opts.input, "Input edge list")->required();
    sample_cmd->add_option("--technique", sample_opts.technique, "RND, RLS, RLI, BFS, FFS or EXS")->capture_default_str();
    sample_cmd->add_option("--fraction", sample_opts.fraction, "Target fraction of nodes")->capture_default_str();
    sample_cmd->add_option("--ffs-p", sample_opts.ffs_p, "Forest-fire burning probability")->capture_default_str();
    sample_cmd->add_option("--ffs-mode", sample_opts.ffs_mode, "permit-visited or unvisited-only")->capture_default_str();
    sample_cmd->add_option("--exs-beta", sample_opts.exs_beta, "Expansion sampling beta")->capture_default_str();
    sample_cmd->add_option("--seed", sample_opts.seed, "Random seed")->capture_default_str();
    sample_cmd->add_flag("--largest-component", sample_opts.largest, "Restrict input to its largest component");
    sample_cmd->add_option("--output,-o", sample_opts.output, "Output file (default: stdout)");

    std::string extract_input;
    std::uint64_t extract_seed = 0;
    bool extract_largest = false;
    std::string extract_output;
    ExtractOptions extract_opts;
    auto* extract_cmd = app.add_subcommand("extract", "Extract significant node groups");
    extract_cmd->add_option("graph", extract_input, "Input edge list")->required();
    add_extract_options(extract_cmd, extract_opts);
    extract_cmd->add_option("--threads", extract_opts.threads, "Workers for null-model trials (0: all cores)")
        ->capture_default_str();
    extract_cmd->add_option("--seed", extract_seed, "Random seed")->capture_default_str();
    extract_cmd->add_flag("--largest-component", extract_largest, "Restrict input to its largest component");
    extract_cmd->add_option("--output,-o", extract_output, "Groups file (default: stdout)");

    std::string config_path;
    ExperimentOverrides overrides;
    auto* experiment_cmd = app.add_subcommand("experiment", "Run a configured sampling and extraction experiment");
    experiment_cmd->add_option("config", config_path, "Experiment configuration file")->required();
    experiment_cmd->add_option("--seed", overrides.seed, "Master seed");
    experiment_cmd->add_option("--fraction", overrides.fraction, "Target fraction of nodes");
    experiment_cmd->add_option("--technique", overrides.techniques, "Techniques to run (repeatable)");
    experiment_cmd->add_option("--restarts", overrides.restarts, "Hill-climbing restarts");
    experiment_cmd->add_option("--null-runs", overrides.null_runs, "Erdos-Renyi trials per threshold");
    experiment_cmd->add_option("--max-groups", overrides.max_groups, "Stop each extraction after this many groups");
    experiment_cmd->add_option("--realizations", overrides.realizations, "Realizations per technique");
    experiment_cmd->add_option("--threads", overrides.threads, "Concurrent realizations (0: all cores)");
    experiment_cmd->add_flag("--largest-component", overrides.largest, "Restrict input to its largest component");
    experiment_cmd->add_option("--output,-o", overrides.output, "Output directory");
    experiment_cmd->add_flag("--progress", overrides.progress, "Log each finished realization to stderr");

    std::vector<std::string> report_inputs;
    double report_alpha = 0.1;
    std::string report_output;
    auto* report_cmd = app.add_subcommand("report", "Studentized residuals across result rows");
    report_cmd->add_option("results", report_inputs, "results.csv files")->required();
    report_cmd->add_option("--alpha", report_alpha, "Two-tailed significance level")->capture_default_str();
    report_cmd->add_option("--output,-o", report_output, "Output file (default: stdout)");

    GenerateOptions gen;
    auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic network");
    generate_cmd->add_option("model", gen.model, "er, sbm, stars, mixed or collab")->required();
    generate_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    generate_cmd->add_option("--nodes", gen.nodes, "Node count (er, mixed, collab)");
    generate_cmd->add_option("--links", gen.links, "Link count (er, collab)");
    generate_cmd->add_option("--blocks", gen.blocks, "Blocks (sbm)")->capture_default_str();
    generate_cmd->add_option("--block-size", gen.block_size, "Nodes per block (sbm)")->capture_default_str();
    generate_cmd->add_option("--p-in", gen.p_in, "Within-block link probability (sbm)")->capture_default_str();
    generate_cmd->add_option("--p-out", gen.p_out, "Between-block link probability (sbm)")->capture_default_str();
    generate_cmd->add_option("--modules", gen.modules, "Modules (stars)")->capture_default_str();
    generate_cmd->add_option("--leaves", gen.leaves, "Leaves per module (stars)")->capture_default_str();
    generate_cmd->add_option("--hubs", gen.hubs, "Hubs per module (stars)")->capture_default_str();
    generate_cmd->add_option("--output,-o", gen.output, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sample_cmd) return run_sample(sample_opts);
        if (*extract_cmd) return run_extract(extract_input, extract_opts, extract_seed, extract_largest, extract_output);
        if (*experiment_cmd) return run_experiment_cmd(config_path, overrides);
        if (*report_cmd) return run_report(report_inputs, report_alpha, report_output);
        if (*generate_cmd) return run_generate(gen);
    } catch (const UsageError& e) {
        std::cerr << "netgroups: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "netgroups: error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
