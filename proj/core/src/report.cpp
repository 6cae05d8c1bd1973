#include "netgroups/report.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "netgroups/errors.hpp"

namespace netgroups {

namespace {

constexpr std::string_view kResultsHeader =
    "network,technique,realizations,with_groups,count_mean,count_sd,tau_mean,tau_sd,mean_s,mean_t,median_tau,"
    "pct_community,pct_mixture,pct_module,links_fraction,mean_degree";
constexpr std::string_view kRealizationsHeader =
    "technique,realization,sample_n,sample_m,links_fraction,groups,mean_s,mean_t,mean_tau,median_tau,"
    "communities,mixtures,modules,stop";
constexpr std::string_view kResidualsHeader =
    "network,comparison,property,label,value,residual,critical_value,significant";

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        const auto comma = line.find(',', pos);
        out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) return out;
        pos = comma + 1;
    }
}

double to_real(std::string_view field, std::size_t line) {
    double out = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc{} || end != field.data() + field.size()) {
        throw ParseError("bad number '" + std::string(field) + "'", line);
    }
    return out;
}

std::size_t to_count(std::string_view field, std::size_t line) {
    std::size_t out = 0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc{} || end != field.data() + field.size()) {
        throw ParseError("bad count '" + std::string(field) + "'", line);
    }
    return out;
}

void write_members(std::ostream& out, const std::vector<NodeId>& members) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i > 0) out << ' ';
        out << members[i];
    }
}

template <class Row, class Parse>
std::vector<Row> read_table(std::istream& in, std::string_view header, std::size_t fields, Parse parse) {
    std::string raw;
    if (!std::getline(in, raw)) throw ParseError("empty table", 1);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw != header) throw ParseError("unexpected header", 1);
    std::vector<Row> rows;
    for (std::size_t line = 2; std::getline(in, raw); ++line) {
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty()) continue;
        const auto f = split_fields(raw);
        if (f.size() != fields) {
            throw ParseError("expected " + std::to_string(fields) + " fields, got " + std::to_string(f.size()), line);
        }
        rows.push_back(parse(f, line));
    }
    return rows;
}

}  // namespace

std::string format_real(double x) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
    if (ec != std::errc{}) throw std::runtime_error("format_real: conversion failed");
    return std::string(buffer, end);
}

void write_groups(std::ostream& out, const ExtractionResult& result, const GroupsFileInfo& info) {
    const auto& c = info.config;
    out << kGroupsHeader << '\n';
    out << "# network=" << info.network << " nodes=" << info.n << " links=" << info.m << " seed=" << info.seed
        << " objective=" << to_string(c.normalization) << " restarts=" << c.restarts << " null_runs=" << c.null_runs
        << " percentile=" << format_real(c.percentile) << " threshold_mode=" << to_string(c.threshold_mode)
        << " max_groups=" << (c.max_groups ? std::to_string(*c.max_groups) : "none") << '\n';
    out << "order,s_size,t_size,overlap,tau,kind,w,threshold,s_members,t_members\n";
    for (const auto& g : result.groups) {
        out << g.order << ',' << g.s.size() << ',' << g.t.size() << ',' << g.overlap << ',' << format_real(g.tau.value())
            << ',' << to_string(g.kind) << ',' << format_real(g.w) << ',' << format_real(g.threshold) << ',';
        write_members(out, g.s);
        out << ',';
        write_members(out, g.t);
        out << '\n';
    }
    if (result.groups.empty()) {
        out << "# no significant groups";
    } else {
        const auto s = summarize(result.groups);
        out << "# summary groups=" << s.count << " mean_s=" << format_real(s.mean_s) << " mean_t=" << format_real(s.mean_t)
            << " mean_tau=" << format_real(s.mean_tau) << " median_tau=" << format_real(s.median_tau)
            << " pct_community=" << format_real(s.pct_community) << " pct_mixture=" << format_real(s.pct_mixture)
            << " pct_module=" << format_real(s.pct_module);
    }
    out << " stop=" << to_string(result.stop) << " residual_nodes=" << result.residual_n
        << " residual_links=" << result.residual_m << '\n';
}

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows) {
    out << kResultsHeader << '\n';
    for (const auto& r : rows) {
        out << r.network << ',' << r.technique << ',' << r.realizations << ',' << r.with_groups << ','
            << format_real(r.count_mean) << ',' << format_real(r.count_sd) << ',' << format_real(r.tau_mean) << ','
            << format_real(r.tau_sd) << ',' << format_real(r.mean_s) << ',' << format_real(r.mean_t) << ','
            << format_real(r.median_tau) << ',' << format_real(r.pct_community) << ','
            << format_real(r.pct_mixture) << ',' << format_real(r.pct_module) << ','
            << format_real(r.links_fraction) << ',' << format_real(r.mean_degree) << '\n';
    }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
    return read_table<ResultRow>(in, kResultsHeader, 16, [](const auto& f, std::size_t line) {
        ResultRow r;
        r.network = f[0];
        r.technique = f[1];
        r.realizations = to_count(f[2], line);
        r.with_groups = to_count(f[3], line);
        r.count_mean = to_real(f[4], line);
        r.count_sd = to_real(f[5], line);
        r.tau_mean = to_real(f[6], line);
        r.tau_sd = to_real(f[7], line);
        r.mean_s = to_real(f[8], line);
        r.mean_t = to_real(f[9], line);
        r.median_tau = to_real(f[10], line);
        r.pct_community = to_real(f[11], line);
        r.pct_mixture = to_real(f[12], line);
        r.pct_module = to_real(f[13], line);
        r.links_fraction = to_real(f[14], line);
        r.mean_degree = to_real(f[15], line);
        return r;
    });
}

void write_realizations_csv(std::ostream& out, std::span<const RealizationRecord> records) {
    out << kRealizationsHeader << '\n';
    for (const auto& r : records) {
        out << r.technique << ',' << r.realization << ',' << r.sample_n << ',' << r.sample_m << ','
            << format_real(r.links_fraction) << ',' << r.groups << ',' << format_real(r.mean_s) << ','
            << format_real(r.mean_t) << ',' << format_real(r.mean_tau) << ',' << format_real(r.median_tau) << ','
            << r.communities << ',' << r.mixtures << ',' << r.modules << ',' << r.stop << '\n';
    }
}

std::vector<RealizationRecord> read_realizations_csv(std::istream& in) {
    return read_table<RealizationRecord>(in, kRealizationsHeader, 14, [](const auto& f, std::size_t line) {
        RealizationRecord r;
        r.technique = f[0];
        r.realization = to_count(f[1], line);
        r.sample_n = to_count(f[2], line);
        r.sample_m = to_count(f[3], line);
        r.links_fraction = to_real(f[4], line);
        r.groups = to_count(f[5], line);
        r.mean_s = to_real(f[6], line);
        r.mean_t = to_real(f[7], line);
        r.mean_tau = to_real(f[8], line);
        r.median_tau = to_real(f[9], line);
        r.communities = to_count(f[10], line);
        r.mixtures = to_count(f[11], line);
        r.modules = to_count(f[12], line);
        r.stop = f[13];
        return r;
    });
}

std::vector<ResidualSection> compare_rows(std::span<const ResultRow> rows, double alpha) {
    std::vector<std::string> networks;
    std::map<std::string, std::vector<const ResultRow*>> by_network;
    for (const auto& r : rows) {
        auto& bucket = by_network[r.network];
        if (bucket.empty()) networks.push_back(r.network);
        bucket.push_back(&r);
    }

    std::vector<ResidualSection> sections;
    auto add = [&](const std::string& network, const std::string& comparison,
                   const std::vector<const ResultRow*>& members) {
        std::vector<std::string> labels;
        std::vector<double> counts;
        std::vector<double> taus;
        for (const auto* r : members) {
            labels.push_back(r->technique);
            counts.push_back(r->count_mean);
            taus.push_back(r->tau_mean);
        }
        sections.push_back({network, comparison, "count", counts, significance_report(labels, counts, alpha)});
        sections.push_back({network, comparison, "tau", taus, significance_report(labels, taus, alpha)});
    };

    for (const auto& network : networks) {
        const auto& all = by_network[network];
        std::vector<const ResultRow*> techniques;
        bool has_original = false;
        for (const auto* r : all) {
            if (r->technique == kOriginalLabel) {
                has_original = true;
            } else {
                techniques.push_back(r);
            }
        }
        if (techniques.size() >= 3) add(network, "techniques", techniques);
        if (has_original && all.size() >= 3) add(network, "original+techniques", all);
    }
    if (sections.empty()) throw std::invalid_argument("a residual comparison needs at least three rows of one network");
    return sections;
}

void write_residuals_csv(std::ostream& out, std::span<const ResidualSection> sections) {
    out << kResidualsHeader << '\n';
    for (const auto& s : sections) {
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            out << s.network << ',' << s.comparison << ',' << s.property << ',' << s.report.labels[i] << ','
                << format_real(s.values[i]) << ',' << format_real(s.report.residuals[i]) << ','
                << format_real(s.report.critical_value) << ',' << (s.report.significant[i] ? "yes" : "no") << '\n';
        }
    }
}

void write_tau_histograms(std::ostream& out, const ExperimentResult& result, std::size_t bins) {
    out << "technique,bin,lower,upper,count\n";
    for (const auto& [label, taus] : result.taus) {
        const auto counts = tau_histogram(taus, bins);
        for (std::size_t b = 0; b < bins; ++b) {
            out << label << ',' << b << ',' << format_real(static_cast<double>(b) / static_cast<double>(bins)) << ','
                << format_real(static_cast<double>(b + 1) / static_cast<double>(bins)) << ',' << counts[b] << '\n';
        }
    }
}

void write_beta_fits(std::ostream& out, const ExperimentResult& result) {
    out << "technique,groups,alpha,beta\n";
    for (const auto& [label, taus] : result.taus) {
        out << label << ',' << taus.size() << ',';
        try {
            const auto fit = beta_fit(taus);
            out << format_real(fit.alpha) << ',' << format_real(fit.beta);
        } catch (const std::domain_error&) {
            out << ',';
        }
        out << '\n';
    }
}

}  // namespace netgroups
