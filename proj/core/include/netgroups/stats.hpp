#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "netgroups/extraction.hpp"

namespace netgroups {

struct GroupSummary {
    std::size_t count = 0;
    double mean_s = 0.0;
    double mean_t = 0.0;
    double mean_tau = 0.0;
    double median_tau = 0.0;
    double pct_community = 0.0;
    double pct_mixture = 0.0;
    double pct_module = 0.0;
};

/// Means of |S|, |T| and τ, median τ, and kind percentages. Throws
/// std::domain_error on an empty list.
GroupSummary summarize(std::span<const NodeGroup> groups);

/// Arithmetic mean; 0 for an empty range.
double mean(std::span<const double> xs);
/// Bessel-corrected standard deviation; 0 for fewer than two values.
double sample_stddev(std::span<const double> xs);
/// Midpoint of the two central values for even sizes. Throws
/// std::domain_error on an empty range.
double median(std::span<const double> xs);

/// Leave-one-out residuals r_i = (x_i - mean_{-i}) / sd_{-i}. A zero sd gives
/// 0 when the numerator is 0 and a signed infinity otherwise. Throws
/// std::domain_error for fewer than three values.
std::vector<double> studentized_residuals(std::span<const double> xs);

/// Two-tailed critical value of Student's t: the 1 - alpha/2 quantile.
double t_critical(double df, double alpha);

struct ResidualReport {
    std::vector<std::string> labels;
    std::vector<double> residuals;
    double critical_value = 0.0;
    std::vector<bool> significant;
};

/// Residuals of `values` compared against t_critical(k - 2, alpha).
ResidualReport significance_report(std::span<const std::string> labels, std::span<const double> values, double alpha);

struct BetaFit {
    double alpha = 0.0;
    double beta = 0.0;
};

/// Method-of-moments Beta fit using the sample mean and the Bessel-corrected
/// variance. Throws std::domain_error for fewer than two samples, values
/// outside [0, 1], or a variance that admits no Beta distribution.
BetaFit beta_fit(std::span<const double> samples);

/// Counts over `bins` equal bins of [0, 1]; bins are right-open except the
/// last. Throws std::domain_error for bins == 0 or values outside [0, 1].
std::vector<std::size_t> tau_histogram(std::span<const double> samples, std::size_t bins);

}  // namespace netgroups
