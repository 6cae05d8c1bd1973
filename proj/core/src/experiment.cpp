#include "netgroups/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <mutex>
#include <set>
#include <stdexcept>

#include "netgroups/errors.hpp"
#include "netgroups/parallel.hpp"
#include "netgroups/report.hpp"

namespace netgroups {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::uint64_t parse_unsigned(std::string_view value, std::size_t line) {
    std::uint64_t out = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || end != value.data() + value.size()) {
        throw ParseError("expected a non-negative integer, got '" + std::string(value) + "'", line);
    }
    return out;
}

double parse_real(std::string_view value, std::size_t line) {
    double out = 0.0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || end != value.data() + value.size()) {
        throw ParseError("expected a number, got '" + std::string(value) + "'", line);
    }
    return out;
}

bool parse_flag(std::string_view value, std::size_t line) {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    throw ParseError("expected true or false, got '" + std::string(value) + "'", line);
}

std::vector<Technique> parse_techniques(std::string_view value, std::size_t line) {
    if (value == "all") return {kAllTechniques.begin(), kAllTechniques.end()};
    std::vector<Technique> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        const auto next = value.find_first_of(", ", pos);
        const auto token = trim(value.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (!token.empty()) {
            const auto t = parse_technique(token);
            if (!t) throw ParseError("unknown technique '" + std::string(token) + "'", line);
            out.push_back(*t);
        }
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

std::size_t technique_slot(Technique t) {
    return static_cast<std::size_t>(std::find(kAllTechniques.begin(), kAllTechniques.end(), t) - kAllTechniques.begin());
}

void open_for_writing(std::ofstream& out, const std::filesystem::path& path) {
    out.open(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

void ExperimentConfig::validate() const {
    if (realizations < 1) throw std::domain_error("realizations must be at least 1");
    if (techniques.empty()) throw std::domain_error("at least one technique is required");
    std::set<Technique> seen;
    for (Technique t : techniques) {
        if (!seen.insert(t).second) throw std::domain_error("technique " + std::string(to_string(t)) + " listed twice");
    }
    if (name.find_first_of(",\n\r") != std::string::npos) throw std::domain_error("name must not contain commas or line breaks");
    if (histogram_bins < 1) throw std::domain_error("histogram_bins must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
    sampling.validate();
    extraction.validate();
}

ExperimentConfig parse_experiment_config(std::istream& in, const std::filesystem::path& base_dir) {
    ExperimentConfig config;
    std::set<std::string, std::less<>> seen;
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        const auto text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line);
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        if (key.empty()) throw ParseError("missing key", line);
        if (!seen.emplace(key).second) throw ParseError("repeated key '" + std::string(key) + "'", line);

        if (key == "network") {
            config.network_path = base_dir / std::filesystem::path(std::string(value));
        } else if (key == "name") {
            config.name = value;
        } else if (key == "techniques") {
            config.techniques = parse_techniques(value, line);
        } else if (key == "fraction") {
            config.sampling.target_fraction = parse_real(value, line);
        } else if (key == "ffs_p") {
            config.sampling.ffs_p = parse_real(value, line);
        } else if (key == "ffs_mode") {
            const auto mode = parse_fire_mode(value);
            if (!mode) throw ParseError("unknown ffs_mode '" + std::string(value) + "'", line);
            config.sampling.ffs_mode = *mode;
        } else if (key == "exs_beta") {
            config.sampling.exs_beta = parse_real(value, line);
        } else if (key == "restarts") {
            config.extraction.restarts = parse_unsigned(value, line);
        } else if (key == "null_runs") {
            config.extraction.null_runs = parse_unsigned(value, line);
        } else if (key == "percentile") {
            config.extraction.percentile = parse_real(value, line);
        } else if (key == "max_groups") {
            if (value == "none") {
                config.extraction.max_groups.reset();
            } else {
                config.extraction.max_groups = parse_unsigned(value, line);
            }
        } else if (key == "threshold_mode") {
            const auto mode = parse_threshold_mode(value);
            if (!mode) throw ParseError("unknown threshold_mode '" + std::string(value) + "'", line);
            config.extraction.threshold_mode = *mode;
        } else if (key == "objective") {
            const auto norm = parse_normalization(value);
            if (!norm) throw ParseError("unknown objective '" + std::string(value) + "'", line);
            config.extraction.normalization = *norm;
        } else if (key == "realizations") {
            config.realizations = parse_unsigned(value, line);
        } else if (key == "seed") {
            config.master_seed = parse_unsigned(value, line);
        } else if (key == "largest_component") {
            config.restrict_to_largest_component = parse_flag(value, line);
        } else if (key == "output_dir") {
            config.output_dir = base_dir / std::filesystem::path(std::string(value));
        } else if (key == "threads") {
            config.threads = static_cast<unsigned>(parse_unsigned(value, line));
        } else if (key == "dump_groups") {
            config.dump_groups = parse_flag(value, line);
        } else if (key == "histogram_bins") {
            config.histogram_bins = parse_unsigned(value, line);
        } else if (key == "alpha") {
            config.alpha = parse_real(value, line);
        } else {
            throw ParseError("unknown key '" + std::string(key) + "'", line);
        }
    }
    if (config.network_path.empty()) throw ParseError("missing required key 'network'", 0);
    if (config.name.empty()) config.name = config.network_path.stem().string();
    if (!seen.contains("output_dir")) config.output_dir = base_dir.empty() ? "." : base_dir;
    return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return parse_experiment_config(in, path.parent_path());
}

ResultRow aggregate(std::string_view network, std::span<const RealizationRecord> records) {
    if (records.empty()) throw std::domain_error("aggregate: no records");
    ResultRow row;
    row.network = network;
    row.technique = records.front().technique;
    row.realizations = records.size();

    std::vector<double> counts;
    std::vector<double> taus;
    std::vector<double> sizes_s;
    std::vector<double> sizes_t;
    std::vector<double> medians;
    std::vector<double> fractions;
    std::vector<double> degrees;
    std::size_t communities = 0;
    std::size_t mixtures = 0;
    std::size_t modules = 0;
    for (const auto& r : records) {
        counts.push_back(static_cast<double>(r.groups));
        fractions.push_back(r.links_fraction);
        degrees.push_back(r.sample_n == 0 ? 0.0 : 2.0 * static_cast<double>(r.sample_m) / static_cast<double>(r.sample_n));
        communities += r.communities;
        mixtures += r.mixtures;
        modules += r.modules;
        if (r.groups == 0) continue;
        taus.push_back(r.mean_tau);
        sizes_s.push_back(r.mean_s);
        sizes_t.push_back(r.mean_t);
        medians.push_back(r.median_tau);
    }
    row.with_groups = taus.size();
    row.count_mean = mean(counts);
    row.count_sd = sample_stddev(counts);
    row.tau_mean = mean(taus);
    row.tau_sd = sample_stddev(taus);
    row.mean_s = mean(sizes_s);
    row.mean_t = mean(sizes_t);
    row.median_tau = mean(medians);
    const std::size_t pooled = communities + mixtures + modules;
    if (pooled > 0) {
        const auto total = static_cast<double>(pooled);
        row.pct_community = 100.0 * static_cast<double>(communities) / total;
        row.pct_mixture = 100.0 * static_cast<double>(mixtures) / total;
        row.pct_module = 100.0 * static_cast<double>(modules) / total;
    }
    row.links_fraction = mean(fractions);
    row.mean_degree = mean(degrees);
    return row;
}

RandomSource realization_stream(std::uint64_t master_seed, Technique technique, std::size_t realization) {
    return RandomSource(master_seed).split(1 + technique_slot(technique)).split(realization);
}

RandomSource original_stream(std::uint64_t master_seed) {
    return RandomSource(master_seed).split(0);
}

RealizationRecord make_record(std::string_view technique, std::size_t realization, const ExtractionResult& result,
                              std::size_t n, std::size_t m, std::size_t source_m) {
    RealizationRecord r;
    r.technique = technique;
    r.realization = realization;
    r.sample_n = n;
    r.sample_m = m;
    r.links_fraction = source_m == 0 ? 0.0 : static_cast<double>(m) / static_cast<double>(source_m);
    r.groups = result.groups.size();
    r.stop = to_string(result.stop);
    if (!result.groups.empty()) {
        const auto summary = summarize(result.groups);
        r.mean_s = summary.mean_s;
        r.mean_t = summary.mean_t;
        r.mean_tau = summary.mean_tau;
        r.median_tau = summary.median_tau;
    }
    for (const auto& g : result.groups) {
        r.communities += g.kind == GroupKind::Community;
        r.mixtures += g.kind == GroupKind::Mixture;
        r.modules += g.kind == GroupKind::Module;
    }
    return r;
}

ExperimentResult run_experiment(const Graph& input, const ExperimentConfig& config, const ProgressFn& progress) {
    config.validate();
    const Graph g = config.restrict_to_largest_component ? largest_component(input) : input;
    ExperimentResult out;
    out.network = config.name;
    out.source = basic_stats(g);

    std::mutex progress_mutex;
    auto report = [&](const std::string& message) {
        if (!progress) return;
        std::lock_guard lock(progress_mutex);
        progress(message);
    };

    out.original = extract_groups(g, config.extraction, original_stream(config.master_seed));
    const RealizationRecord original =
        make_record(kOriginalLabel, 0, out.original, g.node_count(), g.link_count(), g.link_count());
    report("original: " + std::to_string(original.groups) + " groups");

    const std::size_t per_technique = config.realizations;
    const std::size_t jobs = config.techniques.size() * per_technique;
    std::vector<RealizationRecord> records(jobs);
    std::vector<std::vector<double>> taus(jobs);
    ExtractionConfig inner = config.extraction;
    inner.threads = 1;

    parallel_for(jobs, config.threads, [&](std::size_t job) {
        const Technique technique = config.techniques[job / per_technique];
        const std::size_t i = job % per_technique;
        const std::string name(to_string(technique));
        try {
            const RandomSource stream = realization_stream(config.master_seed, technique, i);
            const Sample s = sample(g, technique, config.sampling, stream.split(0));
            const ExtractionResult result = extract_groups(s.graph, inner, stream.split(1));
            records[job] = make_record(name, i, result, s.graph.node_count(), s.graph.link_count(), g.link_count());
            for (const auto& group : result.groups) taus[job].push_back(group.tau.value());
            if (config.dump_groups) {
                std::filesystem::create_directories(config.output_dir / "groups");
                std::ofstream file;
                open_for_writing(file, config.output_dir / "groups" / (name + "_" + std::to_string(i) + ".groups"));
                write_groups(file, result,
                             GroupsFileInfo{config.name + "/" + name, s.graph.node_count(), s.graph.link_count(),
                                            config.master_seed, inner});
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(name + " realization " + std::to_string(i) + " (stream index " +
                                     std::to_string(i) + "): " + e.what());
        }
        report(name + " realization " + std::to_string(i) + ": " + std::to_string(records[job].groups) + " groups");
    });

    out.records.push_back(original);
    out.rows.push_back(aggregate(out.network, std::span(&original, 1)));
    std::vector<double> original_taus;
    for (const auto& group : out.original.groups) original_taus.push_back(group.tau.value());
    out.taus.emplace_back(std::string(kOriginalLabel), std::move(original_taus));

    for (std::size_t t = 0; t < config.techniques.size(); ++t) {
        const auto first = records.begin() + static_cast<std::ptrdiff_t>(t * per_technique);
        const std::span<const RealizationRecord> block(&*first, per_technique);
        out.rows.push_back(aggregate(out.network, block));
        out.records.insert(out.records.end(), block.begin(), block.end());
        std::vector<double> pooled;
        for (std::size_t i = 0; i < per_technique; ++i) {
            const auto& xs = taus[t * per_technique + i];
            pooled.insert(pooled.end(), xs.begin(), xs.end());
        }
        out.taus.emplace_back(std::string(to_string(config.techniques[t])), std::move(pooled));
    }
    return out;
}

ExperimentResult run_experiment_files(const ExperimentConfig& config, const ProgressFn& progress) {
    config.validate();
    const Graph g = load_edge_list(config.network_path);
    std::filesystem::create_directories(config.output_dir);
    ExperimentResult result = run_experiment(g, config, progress);

    std::ofstream file;
    open_for_writing(file, config.output_dir / "results.csv");
    write_results_csv(file, result.rows);
    file.close();

    open_for_writing(file, config.output_dir / "realizations.csv");
    write_realizations_csv(file, result.records);
    file.close();

    std::vector<ResidualSection> sections;
    try {
        sections = compare_rows(result.rows, config.alpha);
    } catch (const std::invalid_argument&) {
        // fewer than three rows: header only
    }
    open_for_writing(file, config.output_dir / "residuals.csv");
    write_residuals_csv(file, sections);
    file.close();

    open_for_writing(file, config.output_dir / "tau_histogram.csv");
    write_tau_histograms(file, result, config.histogram_bins);
    file.close();

    open_for_writing(file, config.output_dir / "beta_fit.csv");
    write_beta_fits(file, result);
    file.close();

    open_for_writing(file, config.output_dir / "original.groups");
    write_groups(file, result.original,
                 GroupsFileInfo{config.name, result.source.n, result.source.m, config.master_seed, config.extraction});
    return result;
}

}  // namespace netgroups
