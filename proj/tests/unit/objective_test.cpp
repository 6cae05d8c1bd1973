#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>
#include <stdexcept>
#include <vector>

#include "netgroups/generators.hpp"
#include "netgroups/objective.hpp"
#include "oracles.hpp"

using namespace netgroups;

namespace {

Graph make(std::vector<std::pair<NodeId, NodeId>> links, std::vector<NodeId> extra = {}) {
    return Graph::from_links(links, extra);
}

Graph clique(NodeId first, std::size_t size) {
    std::vector<std::pair<NodeId, NodeId>> links;
    for (NodeId u = first; u < first + size; ++u) {
        for (NodeId v = u + 1; v < first + size; ++v) links.emplace_back(u, v);
    }
    return make(links);
}

Graph star4() { return make({{0, 1}, {0, 2}, {0, 3}, {0, 4}}); }

const std::vector<NodeId> kLeaves{1, 2, 3, 4};
const std::vector<NodeId> kHub{0};

constexpr Normalization kAllNorms[] = {Normalization::SqrtPairs, Normalization::StandardError,
                                       Normalization::PooledZ};

}  // namespace

TEST(LinksBetween, Examples) {
    const Graph k5 = clique(0, 5);
    const std::vector<NodeId> all{0, 1, 2, 3, 4};
    EXPECT_EQ(links_between(k5, all, all), 10u);
    EXPECT_EQ(links_between(star4(), kLeaves, kHub), 4u);
    const Graph two = make({{1, 2}, {3, 4}});
    EXPECT_EQ(links_between(two, std::vector<NodeId>{1}, std::vector<NodeId>{3}), 0u);
    EXPECT_THROW(links_between(two, std::vector<NodeId>{9}, std::vector<NodeId>{1}), std::domain_error);
}

TEST(LinksBetween, MatchesPairEnumeration) {
    RandomSource rng(5);
    const Graph g = erdos_renyi_gnm(9, 18, rng);
    for (std::uint32_t trial = 0; trial < 300; ++trial) {
        const auto s = oracle::mask_to_set(static_cast<std::uint32_t>(rng.uniform_index(511)) + 1, 9);
        const auto t = oracle::mask_to_set(static_cast<std::uint32_t>(rng.uniform_index(511)) + 1, 9);
        const auto c = oracle::count_pairs(g, s, t);
        EXPECT_EQ(static_cast<double>(links_between(g, oracle::labels_in(g, s), oracle::labels_in(g, t))),
                  c.links_st);
    }
}

TEST(AdmissiblePairs, SmallCases) {
    EXPECT_EQ(admissible_pairs(0, 0, 5), 10u);
    EXPECT_EQ(admissible_pairs(4, 1, 0), 4u);
    EXPECT_EQ(admissible_pairs(0, 0, 1), 0u);
    // S = {1,2,3}, T = {2,3,4}: pairs 12 13 14 23 24 34
    EXPECT_EQ(admissible_pairs(1, 1, 2), 6u);
}

TEST(ObjectiveW, CliqueSqrtPairs) {
    const Graph k5 = clique(0, 5);
    const std::vector<NodeId> all{0, 1, 2, 3, 4};
    EXPECT_NEAR(objective_w(k5, all, all, Normalization::SqrtPairs), 3.1623, 1e-4);
    EXPECT_DOUBLE_EQ(objective_w(k5, all, all, Normalization::SqrtPairs), std::sqrt(10.0));
}

TEST(ObjectiveW, StarPatternSqrtPairs) {
    EXPECT_DOUBLE_EQ(objective_w(star4(), kLeaves, kHub, Normalization::SqrtPairs), 2.0);
}

TEST(ObjectiveW, NoIncidentLinksIsZero) {
    const Graph g = make({{1, 2}}, {3, 4, 5});
    for (Normalization n : kAllNorms) {
        EXPECT_EQ(objective_w(g, std::vector<NodeId>{3, 4}, std::vector<NodeId>{5}, n), 0.0);
    }
}

TEST(ObjectiveW, Errors) {
    const Graph g = star4();
    EXPECT_THROW(objective_w(g, std::vector<NodeId>{}, kHub), std::domain_error);
    EXPECT_THROW(objective_w(g, kLeaves, std::vector<NodeId>{}), std::domain_error);
    EXPECT_THROW(objective_w(g, std::vector<NodeId>{8}, kHub), std::domain_error);
}

TEST(ObjectiveW, MatchesOracleOnRandomSets) {
    RandomSource rng(17);
    for (int graph = 0; graph < 10; ++graph) {
        const Graph g = erdos_renyi_gnm(10, 12 + graph * 2, rng);
        for (int trial = 0; trial < 60; ++trial) {
            const auto s = oracle::mask_to_set(static_cast<std::uint32_t>(rng.uniform_index(1023)) + 1, 10);
            const auto t = oracle::mask_to_set(static_cast<std::uint32_t>(rng.uniform_index(1023)) + 1, 10);
            for (Normalization n : kAllNorms) {
                EXPECT_NEAR(objective_w(g, oracle::labels_in(g, s), oracle::labels_in(g, t), n),
                            oracle::objective(g, s, t, n), 1e-12)
                    << to_string(n);
            }
        }
    }
}

TEST(ObjectiveW, ComplementLinksNeverCount) {
    // Adding links with both endpoints outside S leaves W unchanged.
    const Graph base = make({{0, 1}, {0, 2}, {1, 2}, {2, 3}}, {4, 5, 6});
    const Graph more = make({{0, 1}, {0, 2}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {4, 6}, {3, 4}});
    const std::vector<NodeId> s{0, 1, 2};
    for (Normalization n : kAllNorms) {
        EXPECT_DOUBLE_EQ(objective_w(base, s, s, n), objective_w(more, s, s, n)) << to_string(n);
    }
}

TEST(ObjectiveW, TallyAgreesWithSets) {
    const Graph g = star4();
    GroupTally tally;
    tally.nodes = 5;
    tally.s_only = 4;
    tally.t_only = 1;
    tally.links_st = 4;
    tally.links_s_tc = 0;
    for (Normalization n : kAllNorms) {
        EXPECT_DOUBLE_EQ(objective_from_tally(tally, n), objective_w(g, kLeaves, kHub, n));
    }
}

TEST(ObjectiveW, CliqueScaleIsMonotone) {
    double previous = -1.0;
    for (std::size_t c = 3; c <= 8; ++c) {
        const Graph k = clique(0, c);
        std::vector<NodeId> all(c);
        for (NodeId i = 0; i < c; ++i) all[i] = i;
        const double w = objective_w(k, all, all, Normalization::SqrtPairs);
        EXPECT_GT(w, previous) << c;
        previous = w;
    }
}

TEST(ObjectiveW, CliqueScaleIsMonotoneInHostGraph) {
    for (Normalization n : kAllNorms) {
        double previous = -1.0;
        for (std::size_t c = 3; c <= 8; ++c) {
            RandomSource rng(c);
            const Graph host = erdos_renyi_gnm(60, 90, rng);
            std::vector<std::pair<NodeId, NodeId>> links;
            for (const auto& [u, v] : host.links()) links.emplace_back(host.label(u), host.label(v));
            for (NodeId u = 100; u < 100 + c; ++u) {
                for (NodeId v = u + 1; v < 100 + c; ++v) links.emplace_back(u, v);
            }
            const Graph g = make(links);
            std::vector<NodeId> all(c);
            for (NodeId i = 0; i < c; ++i) all[i] = 100 + i;
            const double w = objective_w(g, all, all, n);
            EXPECT_GT(w, previous) << to_string(n) << " c=" << c;
            previous = w;
        }
    }
}

TEST(ObjectiveW, NormalizationNames) {
    for (Normalization n : kAllNorms) EXPECT_EQ(parse_normalization(to_string(n)), n);
    EXPECT_FALSE(parse_normalization("bogus").has_value());
}

TEST(JaccardTau, Examples) {
    const std::vector<NodeId> a{1, 2, 3};
    EXPECT_EQ(jaccard_tau(a, a), (Ratio{1, 1}));
    EXPECT_EQ(jaccard_tau(std::vector<NodeId>{1}, std::vector<NodeId>{2}), (Ratio{0, 1}));
    const Ratio half = jaccard_tau(a, std::vector<NodeId>{2, 3, 4});
    EXPECT_EQ(half, (Ratio{2, 4}));
    EXPECT_DOUBLE_EQ(half.value(), 0.5);
    EXPECT_THROW(jaccard_tau(std::vector<NodeId>{}, std::vector<NodeId>{}), std::domain_error);
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify(std::vector<NodeId>{1, 2}, std::vector<NodeId>{1, 2}), GroupKind::Community);
    EXPECT_EQ(classify(std::vector<NodeId>{1}, std::vector<NodeId>{2}), GroupKind::Module);
    EXPECT_EQ(classify(std::vector<NodeId>{1, 2}, std::vector<NodeId>{2, 3}), GroupKind::Mixture);
    EXPECT_THROW(classify(std::vector<NodeId>{}, std::vector<NodeId>{}), std::domain_error);
}

TEST(JaccardTau, ExhaustiveSixNodeUniverse) {
    for (std::uint32_t sm = 0; sm < 64; ++sm) {
        for (std::uint32_t tm = 0; tm < 64; ++tm) {
            std::vector<NodeId> s;
            std::vector<NodeId> t;
            for (NodeId i = 0; i < 6; ++i) {
                if ((sm >> i) & 1u) s.push_back(i);
                if ((tm >> i) & 1u) t.push_back(i);
            }
            if (s.empty() && t.empty()) {
                EXPECT_THROW(jaccard_tau(s, t), std::domain_error);
                EXPECT_THROW(classify(s, t), std::domain_error);
                continue;
            }
            std::vector<NodeId> both;
            std::vector<NodeId> either;
            std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(both));
            std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(either));
            const Ratio tau = jaccard_tau(s, t);
            ASSERT_EQ(tau, (Ratio{both.size(), either.size()})) << sm << " " << tm;
            ASSERT_GE(tau.value(), 0.0);
            ASSERT_LE(tau.value(), 1.0);
            const GroupKind expected =
                s == t ? GroupKind::Community : (both.empty() ? GroupKind::Module : GroupKind::Mixture);
            ASSERT_EQ(classify(s, t), expected) << sm << " " << tm;
        }
    }
}
