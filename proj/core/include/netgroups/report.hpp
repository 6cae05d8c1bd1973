#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "netgroups/experiment.hpp"

namespace netgroups {

inline constexpr std::string_view kGroupsHeader = "# netgroups-groups v1";

/// Shortest decimal form that reads back to the same double; "inf", "-inf", "nan".
std::string format_real(double x);

struct GroupsFileInfo {
    std::string network;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    ExtractionConfig config;
};

/// Versioned header, one CSV record per group (members as space-separated
/// original labels) and a "# summary" footer, or "# no significant groups".
void write_groups(std::ostream& out, const ExtractionResult& result, const GroupsFileInfo& info);

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);
/// Throws ParseError on a bad header or malformed row.
std::vector<ResultRow> read_results_csv(std::istream& in);

void write_realizations_csv(std::ostream& out, std::span<const RealizationRecord> records);
std::vector<RealizationRecord> read_realizations_csv(std::istream& in);

/// Residual comparison of one property across a set of rows of one network.
struct ResidualSection {
    std::string network;
    std::string comparison;  ///< "techniques" or "original+techniques"
    std::string property;    ///< "count" or "tau"
    std::vector<double> values;
    ResidualReport report;
};

/// Group count and ⟨τ⟩ residuals, per network, among technique rows and
/// among the original plus technique rows. A comparison is skipped when it
/// has fewer than three rows. Throws std::invalid_argument when no network
/// offers three rows.
std::vector<ResidualSection> compare_rows(std::span<const ResultRow> rows, double alpha);

void write_residuals_csv(std::ostream& out, std::span<const ResidualSection> sections);

void write_tau_histograms(std::ostream& out, const ExperimentResult& result, std::size_t bins);
void write_beta_fits(std::ostream& out, const ExperimentResult& result);

}  // namespace netgroups
