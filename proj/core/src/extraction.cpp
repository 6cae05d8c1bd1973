#include "netgroups/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "netgroups/generators.hpp"
#include "netgroups/parallel.hpp"

namespace netgroups {

namespace {

// Local search state for one (S, T) pair. Per-node neighbor counts make the
// objective change of any single toggle an O(1) computation; applying a
// toggle costs O(degree).
class GroupSearch {
public:
    enum Side : std::uint8_t { kS = 0, kT = 1 };

    GroupSearch(const Graph& g, Normalization norm)
        : g_(g),
          norm_(norm),
          in_s_(g.node_count(), 0),
          in_t_(g.node_count(), 0),
          nb_s_(g.node_count(), 0),
          nb_t_(g.node_count(), 0),
          nb_st_(g.node_count(), 0) {
        tally_.nodes = g.node_count();
    }

    void reset() {
        std::fill(in_s_.begin(), in_s_.end(), 0);
        std::fill(in_t_.begin(), in_t_.end(), 0);
        std::fill(nb_s_.begin(), nb_s_.end(), 0);
        std::fill(nb_t_.begin(), nb_t_.end(), 0);
        std::fill(nb_st_.begin(), nb_st_.end(), 0);
        tally_ = GroupTally{};
        tally_.nodes = g_.node_count();
    }

    double value() const { return objective_from_tally(tally_, norm_); }
    std::uint64_t s_size() const { return tally_.s_only + tally_.both; }
    std::uint64_t t_size() const { return tally_.t_only + tally_.both; }
    bool in(Side side, Index x) const { return (side == kS ? in_s_ : in_t_)[x] != 0; }

    /// Objective after toggling x on `side`, or nullopt if that would leave
    /// S or T empty.
    std::optional<double> value_after(Side side, Index x) const {
        const GroupTally next = toggled(side, x);
        if (next.s_only + next.both == 0 || next.t_only + next.both == 0) return std::nullopt;
        return objective_from_tally(next, norm_);
    }

    void apply(Side side, Index x) {
        tally_ = toggled(side, x);
        const bool adding = !in(side, x);
        const int delta = adding ? 1 : -1;
        if (side == kS) {
            in_s_[x] = adding;
            for (Index y : g_.neighbors(x)) {
                nb_s_[y] += delta;
                if (in_t_[x]) nb_st_[y] += delta;
            }
        } else {
            in_t_[x] = adding;
            for (Index y : g_.neighbors(x)) {
                nb_t_[y] += delta;
                if (in_s_[x]) nb_st_[y] += delta;
            }
        }
    }

    std::vector<NodeId> members(Side side) const {
        std::vector<NodeId> out;
        const auto& in = side == kS ? in_s_ : in_t_;
        for (Index i = 0; i < g_.node_count(); ++i) {
            if (in[i]) out.push_back(g_.label(i));
        }
        return out;
    }

    std::vector<std::uint8_t> membership(Side side) const { return side == kS ? in_s_ : in_t_; }

private:
    GroupTally toggled(Side side, Index x) const {
        GroupTally t = tally_;
        const bool s_x = in_s_[x] != 0;
        const bool t_x = in_t_[x] != 0;
        const auto deg = static_cast<std::int64_t>(g_.degree(x));
        const std::int64_t ns = nb_s_[x];
        const std::int64_t nt = nb_t_[x];
        const std::int64_t nst = nb_st_[x];
        std::int64_t d_st = 0;
        std::int64_t d_stc = 0;
        if (side == kS) {
            // Adding x to S: L(S,Y) grows by n_Y(x) - [x in Y] n_{S∩Y}(x).
            d_st = nt - (t_x ? nst : 0);
            d_stc = (deg - nt) - (t_x ? 0 : ns - nst);
            if (s_x) {
                d_st = -d_st;
                d_stc = -d_stc;
                if (t_x) { --t.both; ++t.t_only; } else { --t.s_only; }
            } else {
                if (t_x) { ++t.both; --t.t_only; } else { ++t.s_only; }
            }
        } else {
            // Adding x to T: L(S,T) grows by n_S(x) - [x in S] n_{S∩T}(x);
            // x leaves T∁, so L(S,T∁) shrinks by n_S(x) - [x in S] n_{S∩T∁}(x).
            d_st = ns - (s_x ? nst : 0);
            d_stc = -(ns - (s_x ? ns - nst : 0));
            if (t_x) {
                d_st = -d_st;
                d_stc = -d_stc;
                if (s_x) { --t.both; ++t.s_only; } else { --t.t_only; }
            } else {
                if (s_x) { ++t.both; --t.s_only; } else { ++t.t_only; }
            }
        }
        t.links_st = static_cast<std::uint64_t>(static_cast<std::int64_t>(t.links_st) + d_st);
        t.links_s_tc = static_cast<std::uint64_t>(static_cast<std::int64_t>(t.links_s_tc) + d_stc);
        return t;
    }

    const Graph& g_;
    Normalization norm_;
    std::vector<std::uint8_t> in_s_;
    std::vector<std::uint8_t> in_t_;
    std::vector<std::int32_t> nb_s_;
    std::vector<std::int32_t> nb_t_;
    std::vector<std::int32_t> nb_st_;
    GroupTally tally_;
};

struct IndexedClimb {
    std::vector<std::uint8_t> in_s;
    std::vector<std::uint8_t> in_t;
    double w = 0.0;
    double start_w = 0.0;
    std::size_t restart = 0;
};

bool improves(double candidate, double current) {
    return candidate > current + 1e-12 * std::max(1.0, std::abs(current));
}

IndexedClimb climb(const Graph& g, const RandomSource& rng, std::size_t restarts, Normalization norm) {
    if (restarts == 0) {
        throw std::domain_error("hill_climb: restarts must be at least 1");
    }
    if (g.link_count() == 0) {
        throw std::domain_error("hill_climb: graph has no links");
    }
    GroupSearch search(g, norm);
    std::vector<std::uint32_t> moves(2 * g.node_count());
    IndexedClimb best;
    for (std::size_t r = 0; r < restarts; ++r) {
        RandomSource stream = rng.split(r);
        search.reset();
        const auto start = static_cast<Index>(stream.uniform_index(g.node_count()));
        search.apply(GroupSearch::kS, start);
        search.apply(GroupSearch::kT, start);
        for (Index v : g.neighbors(start)) {
            search.apply(GroupSearch::kS, v);
            search.apply(GroupSearch::kT, v);
        }
        const double start_w = search.value();
        double current = start_w;
        for (std::uint32_t i = 0; i < moves.size(); ++i) moves[i] = i;
        bool improved = true;
        while (improved) {
            improved = false;
            stream.shuffle(std::span<std::uint32_t>(moves));
            for (std::uint32_t move : moves) {
                const auto side = static_cast<GroupSearch::Side>(move & 1u);
                const Index x = move >> 1;
                const auto next = search.value_after(side, x);
                if (next && improves(*next, current)) {
                    search.apply(side, x);
                    current = search.value();
                    improved = true;
                }
            }
        }
        if (r == 0 || current > best.w) {
            best.in_s = search.membership(GroupSearch::kS);
            best.in_t = search.membership(GroupSearch::kT);
            best.w = current;
            best.start_w = start_w;
            best.restart = r;
        }
    }
    return best;
}

std::vector<NodeId> labels_of(const Graph& g, const std::vector<std::uint8_t>& in) {
    std::vector<NodeId> out;
    for (Index i = 0; i < g.node_count(); ++i) {
        if (in[i]) out.push_back(g.label(i));
    }
    return out;
}

Graph without_isolated(const Graph& g) {
    std::vector<Index> keep;
    keep.reserve(g.node_count());
    for (Index i = 0; i < g.node_count(); ++i) {
        if (g.degree(i) > 0) keep.push_back(i);
    }
    return keep.size() == g.node_count() ? g : induced_subgraph_by_index(g, keep);
}

Graph remove_group_links(const Graph& g, const std::vector<std::uint8_t>& in_s, const std::vector<std::uint8_t>& in_t) {
    std::vector<std::pair<Index, Index>> kept;
    kept.reserve(g.link_count());
    std::vector<std::uint8_t> linked(g.node_count(), 0);
    for (const auto& [u, v] : g.links()) {
        if ((in_s[u] && in_t[v]) || (in_s[v] && in_t[u])) continue;
        kept.emplace_back(u, v);
        linked[u] = linked[v] = 1;
    }
    std::vector<Index> remap(g.node_count(), 0);
    std::vector<NodeId> labels;
    for (Index i = 0; i < g.node_count(); ++i) {
        if (!linked[i]) continue;
        remap[i] = static_cast<Index>(labels.size());
        labels.push_back(g.label(i));
    }
    for (auto& [u, v] : kept) {
        u = remap[u];
        v = remap[v];
    }
    return Graph::from_indexed(std::move(labels), std::move(kept));
}

std::uint64_t null_key(std::size_t n, std::size_t m) {
    return splitmix64(static_cast<std::uint64_t>(n)) ^ static_cast<std::uint64_t>(m);
}

}  // namespace

std::string_view to_string(ThresholdMode mode) {
    return mode == ThresholdMode::PerIteration ? "per-iteration" : "once";
}

std::optional<ThresholdMode> parse_threshold_mode(std::string_view name) {
    if (name == "per-iteration") return ThresholdMode::PerIteration;
    if (name == "once") return ThresholdMode::Once;
    return std::nullopt;
}

std::string_view to_string(StopReason reason) {
    switch (reason) {
        case StopReason::NoLinks: return "no-links";
        case StopReason::MaxGroups: return "max-groups";
        case StopReason::NotSignificant: return "not-significant";
    }
    return "?";
}

void ExtractionConfig::validate() const {
    if (restarts < 1) throw std::domain_error("restarts must be at least 1");
    if (null_runs < 1) throw std::domain_error("null runs must be at least 1");
    if (!(percentile > 0.0 && percentile < 100.0)) throw std::domain_error("percentile must lie in (0, 100)");
}

ClimbResult hill_climb(const Graph& g, const RandomSource& rng, std::size_t restarts, Normalization norm) {
    const auto found = climb(g, rng, restarts, norm);
    return ClimbResult{labels_of(g, found.in_s), labels_of(g, found.in_t), found.w, found.start_w, found.restart};
}

double nearest_rank_percentile(std::vector<double> values, double percentile) {
    if (values.empty()) throw std::domain_error("percentile of an empty sample");
    std::sort(values.begin(), values.end());
    auto rank = static_cast<std::size_t>(std::ceil(percentile / 100.0 * static_cast<double>(values.size()) - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, values.size());
    return values[rank - 1];
}

double null_threshold(std::size_t n, std::size_t m, const ExtractionConfig& config, const RandomSource& rng) {
    config.validate();
    if (n < 2 || m < 1) {
        throw std::domain_error("null_threshold: need n >= 2 and m >= 1");
    }
    std::vector<double> best(config.null_runs);
    parallel_for(config.null_runs, config.threads, [&](std::size_t i) {
        RandomSource trial = rng.split(i);
        const Graph random_graph = erdos_renyi_gnm(n, m, trial);
        best[i] = climb(random_graph, trial, config.restarts, config.normalization).w;
    });
    return nearest_rank_percentile(std::move(best), config.percentile);
}

ExtractionResult extract_groups(const Graph& g, const ExtractionConfig& config, const RandomSource& rng) {
    config.validate();
    ExtractionResult result;
    Graph residual = without_isolated(g);
    const RandomSource null_streams = rng.split(1);
    const RandomSource climb_streams = rng.split(2);
    const std::size_t initial_n = residual.node_count();
    const std::size_t initial_m = residual.link_count();
    std::map<std::pair<std::size_t, std::size_t>, double> calibrated;
    auto threshold_for = [&](std::size_t n, std::size_t m) {
        if (config.threshold_mode == ThresholdMode::Once) {
            n = initial_n;
            m = initial_m;
        }
        const auto key = std::make_pair(n, m);
        if (const auto it = calibrated.find(key); it != calibrated.end()) return it->second;
        const double value = null_threshold(n, m, config, null_streams.split(null_key(n, m)));
        calibrated.emplace(key, value);
        return value;
    };

    for (std::size_t iteration = 0;; ++iteration) {
        if (residual.link_count() == 0) {
            result.stop = StopReason::NoLinks;
            break;
        }
        if (config.max_groups && result.groups.size() >= *config.max_groups) {
            result.stop = StopReason::MaxGroups;
            break;
        }
        const double threshold = threshold_for(residual.node_count(), residual.link_count());
        result.thresholds.push_back(threshold);
        const auto found = climb(residual, climb_streams.split(iteration), config.restarts, config.normalization);
        if (!(found.w > threshold) || found.w <= 0.0) {
            result.stop = StopReason::NotSignificant;
            break;
        }
        NodeGroup group;
        group.s = labels_of(residual, found.in_s);
        group.t = labels_of(residual, found.in_t);
        group.w = found.w;
        group.threshold = threshold;
        group.tau = jaccard_tau(group.s, group.t);
        group.overlap = group.tau.numerator;
        group.kind = classify(group.s, group.t);
        group.order = result.groups.size() + 1;
        result.groups.push_back(std::move(group));
        residual = remove_group_links(residual, found.in_s, found.in_t);
    }
    result.residual_n = residual.node_count();
    result.residual_m = residual.link_count();
    return result;
}

}  // namespace netgroups
