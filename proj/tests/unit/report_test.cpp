#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "netgroups/errors.hpp"
#include "netgroups/report.hpp"

using namespace netgroups;

namespace {

NodeGroup group(std::size_t order, std::vector<NodeId> s, std::vector<NodeId> t, double w, double threshold) {
    NodeGroup g;
    g.order = order;
    g.tau = jaccard_tau(s, t);
    g.kind = classify(s, t);
    g.overlap = g.tau.numerator;
    g.s = std::move(s);
    g.t = std::move(t);
    g.w = w;
    g.threshold = threshold;
    return g;
}

ResultRow row(const std::string& network, const std::string& technique, double count, double tau) {
    ResultRow r;
    r.network = network;
    r.technique = technique;
    r.realizations = 10;
    r.with_groups = 10;
    r.count_mean = count;
    r.tau_mean = tau;
    return r;
}

}  // namespace

TEST(FormatReal, ShortestRoundTrip) {
    EXPECT_EQ(format_real(0.5), "0.5");
    EXPECT_EQ(format_real(100.0), "100");
    EXPECT_EQ(format_real(0.1), "0.1");
    EXPECT_EQ(format_real(1.0 / 3.0), "0.3333333333333333");
    EXPECT_EQ(format_real(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_real(-std::numeric_limits<double>::infinity()), "-inf");
    for (double x : {0.1 + 0.2, 1e-300, 123456.789, -2.5e17}) EXPECT_EQ(std::stod(format_real(x)), x);
}

TEST(WriteGroups, Layout) {
    ExtractionResult result;
    result.groups.push_back(group(1, {3, 4, 5}, {3, 4, 5}, 2.5, 1.25));
    result.groups.push_back(group(2, {7, 8}, {9}, 1.5, 1.0));
    result.stop = StopReason::NotSignificant;
    result.residual_n = 6;
    result.residual_m = 4;
    GroupsFileInfo info;
    info.network = "demo";
    info.n = 20;
    info.m = 30;
    info.seed = 9;
    info.config.max_groups = 5;
    std::ostringstream out;
    write_groups(out, result, info);
    EXPECT_EQ(out.str(),
              "# netgroups-groups v1\n"
              "# network=demo nodes=20 links=30 seed=9 objective=pooled-z restarts=10 null_runs=100 percentile=99 "
              "threshold_mode=per-iteration max_groups=5\n"
              "order,s_size,t_size,overlap,tau,kind,w,threshold,s_members,t_members\n"
              "1,3,3,3,1,community,2.5,1.25,3 4 5,3 4 5\n"
              "2,2,1,0,0,module,1.5,1,7 8,9\n"
              "# summary groups=2 mean_s=2.5 mean_t=2 mean_tau=0.5 median_tau=0.5 pct_community=50 pct_mixture=0 "
              "pct_module=50 stop=not-significant residual_nodes=6 residual_links=4\n");
}

TEST(WriteGroups, NoGroups) {
    ExtractionResult result;
    result.stop = StopReason::NoLinks;
    std::ostringstream out;
    write_groups(out, result, GroupsFileInfo{});
    const std::string text = out.str();
    EXPECT_NE(text.find("# no significant groups stop=no-links residual_nodes=0 residual_links=0\n"), std::string::npos);
    EXPECT_NE(text.find("max_groups=none"), std::string::npos);
}

TEST(ResultsCsv, RoundTrip) {
    std::vector<ResultRow> rows{row("collab", "original", 129, 0.568), row("collab", "RND", 41.5, 1.0 / 3.0)};
    rows[1].count_sd = 3.25;
    rows[1].links_fraction = 0.0651;
    rows[1].mean_degree = 2.27;
    rows[1].pct_mixture = 12.5;
    std::ostringstream out;
    write_results_csv(out, rows);
    std::istringstream in(out.str());
    const auto back = read_results_csv(in);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].technique, "RND");
    EXPECT_EQ(back[1].tau_mean, 1.0 / 3.0);
    EXPECT_EQ(back[1].count_sd, 3.25);
    EXPECT_EQ(back[1].links_fraction, 0.0651);
    EXPECT_EQ(back[1].mean_degree, 2.27);
    EXPECT_EQ(back[1].pct_mixture, 12.5);
    EXPECT_EQ(back[0].count_mean, 129.0);
    std::ostringstream again;
    write_results_csv(again, back);
    EXPECT_EQ(again.str(), out.str());
}

TEST(ResultsCsv, Malformed) {
    std::istringstream bad_header("network,technique\n");
    EXPECT_THROW(read_results_csv(bad_header), ParseError);
    std::ostringstream out;
    write_results_csv(out, std::vector<ResultRow>{row("n", "RND", 1, 0.5)});
    std::istringstream short_row(out.str() + "n,RND,1\n");
    try {
        read_results_csv(short_row);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    std::string text = out.str();
    text.replace(text.find(",0.5,"), 5, ",x,");
    std::istringstream bad_number(text);
    EXPECT_THROW(read_results_csv(bad_number), ParseError);
}

TEST(RealizationsCsv, RoundTrip) {
    std::vector<RealizationRecord> records(2);
    records[0] = {"original", 0, 9877, 25998, 1.0, 100, 66.9, 40.1, 0.568, 0.554, 2, 96, 2, "max-groups"};
    records[1] = {"FFS", 7, 1482, 2300, 0.0884, 0, 0, 0, 0, 0, 0, 0, 0, "not-significant"};
    std::ostringstream out;
    write_realizations_csv(out, records);
    std::istringstream in(out.str());
    const auto back = read_realizations_csv(in);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].mean_s, 66.9);
    EXPECT_EQ(back[0].mixtures, 96u);
    EXPECT_EQ(back[0].stop, "max-groups");
    EXPECT_EQ(back[1].realization, 7u);
    EXPECT_EQ(back[1].links_fraction, 0.0884);
}

TEST(CompareRows, SectionsPerNetwork) {
    const std::vector<ResultRow> rows{row("a", "original", 129, 0.568), row("a", "RND", 41, 0.85),
                                      row("a", "RLS", 0.5, 0.0),        row("a", "RLI", 40, 0.80),
                                      row("a", "BFS", 44, 0.75),        row("a", "FFS", 0.1, 0.0),
                                      row("a", "EXS", 39, 0.77),        row("b", "RND", 3, 0.5),
                                      row("b", "BFS", 4, 0.6)};
    const auto sections = compare_rows(rows, 0.1);
    ASSERT_EQ(sections.size(), 4u);
    EXPECT_EQ(sections[0].comparison, "techniques");
    EXPECT_EQ(sections[0].property, "count");
    EXPECT_EQ(sections[0].values.size(), 6u);
    EXPECT_NEAR(sections[0].report.critical_value, t_critical(4, 0.1), 1e-12);
    EXPECT_EQ(sections[1].property, "tau");
    EXPECT_EQ(sections[2].comparison, "original+techniques");
    EXPECT_EQ(sections[2].values.size(), 7u);
    EXPECT_EQ(sections[2].report.labels.front(), "original");
    EXPECT_NEAR(sections[2].report.critical_value, t_critical(5, 0.1), 1e-12);
    const auto expected = studentized_residuals(sections[3].values);
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(sections[3].report.residuals[i], expected[i]);
}

TEST(CompareRows, TooFewRows) {
    const std::vector<ResultRow> rows{row("a", "RND", 1, 0.5), row("a", "BFS", 2, 0.6)};
    EXPECT_THROW(compare_rows(rows, 0.1), std::invalid_argument);
    const std::vector<ResultRow> with_original{row("a", "original", 1, 0.5), row("a", "RND", 1, 0.5),
                                               row("a", "BFS", 2, 0.6)};
    const auto sections = compare_rows(with_original, 0.1);
    ASSERT_EQ(sections.size(), 2u);
    EXPECT_EQ(sections[0].comparison, "original+techniques");
}

TEST(ResidualsCsv, Layout) {
    const std::vector<ResultRow> rows{row("a", "RND", 2, 0.5), row("a", "BFS", 2, 0.5), row("a", "EXS", 2, 0.5)};
    std::ostringstream out;
    write_residuals_csv(out, compare_rows(rows, 0.1));
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "network,comparison,property,label,value,residual,critical_value,significant");
    std::getline(in, line);
    EXPECT_EQ(line, "a,techniques,count,RND,2,0," + format_real(t_critical(1, 0.1)) + ",no");
}

TEST(TauOutputs, HistogramAndBetaFit) {
    ExperimentResult r;
    r.taus.emplace_back("original", std::vector<double>{0.0, 0.2, 0.7, 1.0});
    r.taus.emplace_back("FFS", std::vector<double>{});
    std::ostringstream hist;
    write_tau_histograms(hist, r, 2);
    EXPECT_EQ(hist.str(),
              "technique,bin,lower,upper,count\n"
              "original,0,0,0.5,2\n"
              "original,1,0.5,1,2\n"
              "FFS,0,0,0.5,0\n"
              "FFS,1,0.5,1,0\n");
    std::ostringstream beta;
    write_beta_fits(beta, r);
    const BetaFit fit = beta_fit(r.taus[0].second);
    EXPECT_EQ(beta.str(), "technique,groups,alpha,beta\noriginal,4," + format_real(fit.alpha) + "," +
                              format_real(fit.beta) + "\nFFS,0,,\n");
}

TEST(CompareRows, OriginalStandsOutAgainstSampledCollabRows) {
    const std::vector<ResultRow> rows{row("Collab", "original", 129.0, 0.568), row("Collab", "RND", 65.4, 0.851),
                                      row("Collab", "RLI", 74.7, 0.846), row("Collab", "BFS", 104.0, 0.787),
                                      row("Collab", "EXS", 87.0, 0.741)};
    const auto sections = compare_rows(rows, 0.1);
    ASSERT_EQ(sections.size(), 4u);
    for (std::size_t i : {2u, 3u}) {
        const auto& s = sections[i];
        ASSERT_EQ(s.comparison, "original+techniques");
        EXPECT_TRUE(s.report.significant[0]) << s.property;
        for (std::size_t k = 1; k < 5; ++k) EXPECT_FALSE(s.report.significant[k]) << s.property << " " << k;
    }
    EXPECT_GT(sections[2].report.residuals[0], 0.0);
    EXPECT_LT(sections[3].report.residuals[0], 0.0);
}
