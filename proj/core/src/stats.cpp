#include "netgroups/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace netgroups {

GroupSummary summarize(std::span<const NodeGroup> groups) {
    if (groups.empty()) throw std::domain_error("summarize: no groups");
    GroupSummary out;
    out.count = groups.size();
    std::vector<double> taus;
    taus.reserve(groups.size());
    std::size_t communities = 0;
    std::size_t modules = 0;
    double s_total = 0.0;
    double t_total = 0.0;
    for (const auto& g : groups) {
        s_total += static_cast<double>(g.s.size());
        t_total += static_cast<double>(g.t.size());
        taus.push_back(g.tau.value());
        communities += g.kind == GroupKind::Community;
        modules += g.kind == GroupKind::Module;
    }
    const auto n = static_cast<double>(groups.size());
    out.mean_s = s_total / n;
    out.mean_t = t_total / n;
    out.mean_tau = mean(taus);
    out.median_tau = median(taus);
    out.pct_community = 100.0 * static_cast<double>(communities) / n;
    out.pct_module = 100.0 * static_cast<double>(modules) / n;
    out.pct_mixture = 100.0 * static_cast<double>(groups.size() - communities - modules) / n;
    return out;
}

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double median(std::span<const double> xs) {
    if (xs.empty()) throw std::domain_error("median: empty input");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    if (sorted.size() % 2 == 1) return sorted[mid];
    return 0.5 * (sorted[mid - 1] + sorted[mid]);
}

std::vector<double> studentized_residuals(std::span<const double> xs) {
    if (xs.size() < 3) throw std::domain_error("studentized_residuals: need at least three values");
    std::vector<double> out(xs.size());
    std::vector<double> rest;
    rest.reserve(xs.size() - 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        rest.clear();
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j != i) rest.push_back(xs[j]);
        }
        const double diff = xs[i] - mean(rest);
        const double sd = sample_stddev(rest);
        if (sd > 0.0) {
            out[i] = diff / sd;
        } else if (diff == 0.0) {
            out[i] = 0.0;
        } else {
            out[i] = std::copysign(std::numeric_limits<double>::infinity(), diff);
        }
    }
    return out;
}

double t_critical(double df, double alpha) {
    if (!(df >= 1.0)) throw std::domain_error("t_critical: df must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("t_critical: alpha must lie in (0, 1)");
    const boost::math::students_t dist(df);
    return boost::math::quantile(dist, 1.0 - alpha / 2.0);
}

ResidualReport significance_report(std::span<const std::string> labels, std::span<const double> values, double alpha) {
    if (labels.size() != values.size()) throw std::domain_error("significance_report: label/value count mismatch");
    ResidualReport report;
    report.labels.assign(labels.begin(), labels.end());
    report.residuals = studentized_residuals(values);
    report.critical_value = t_critical(static_cast<double>(values.size() - 2), alpha);
    for (double r : report.residuals) report.significant.push_back(std::abs(r) > report.critical_value);
    return report;
}

BetaFit beta_fit(std::span<const double> samples) {
    if (samples.size() < 2) throw std::domain_error("beta_fit: need at least two samples");
    for (double x : samples) {
        if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("beta_fit: sample outside [0, 1]");
    }
    const double m = mean(samples);
    const double sd = sample_stddev(samples);
    const double v = sd * sd;
    if (!(v > 0.0)) throw std::domain_error("beta_fit: zero variance");
    const double c = m * (1.0 - m) / v - 1.0;
    if (!(c > 0.0)) throw std::domain_error("beta_fit: variance too large for a beta distribution");
    return {m * c, (1.0 - m) * c};
}

std::vector<std::size_t> tau_histogram(std::span<const double> samples, std::size_t bins) {
    if (bins == 0) throw std::domain_error("tau_histogram: bins must be positive");
    std::vector<std::size_t> counts(bins, 0);
    for (double x : samples) {
        if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("tau_histogram: value outside [0, 1]");
        auto bin = static_cast<std::size_t>(x * static_cast<double>(bins));
        ++counts[std::min(bin, bins - 1)];
    }
    return counts;
}

}  // namespace netgroups
