#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "netgroups/graph.hpp"

namespace netgroups {

enum class GroupKind { Community, Mixture, Module };

std::string_view to_string(GroupKind kind);

__extension__ typedef unsigned __int128 WideCount;

/// Exact non-negative fraction.
struct Ratio {
    std::size_t numerator = 0;
    std::size_t denominator = 1;

    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
    friend bool operator==(const Ratio& a, const Ratio& b) {
        return static_cast<WideCount>(a.numerator) * b.denominator ==
               static_cast<WideCount>(b.numerator) * a.denominator;
    }
};

/// Size factor in front of the density surplus of the group objective.
///  - SqrtPairs:       sqrt(Π(S,T))
///  - StandardError:   1 / sqrt(1/Π(S,T) + 1/Π(S,T∁)), zero when either is 0
///  - PooledZ:         StandardError divided by sqrt(p(1-p)), p the pooled density
enum class Normalization { SqrtPairs, StandardError, PooledZ };

std::string_view to_string(Normalization n);
std::optional<Normalization> parse_normalization(std::string_view name);

/// Number of unordered pairs {u, v}, u != v, with u in X and v in Y, given
/// |X \ Y|, |Y \ X| and |X ∩ Y|.
std::uint64_t admissible_pairs(std::uint64_t only_x, std::uint64_t only_y, std::uint64_t both);

/// Set sizes and link counts that determine the objective of a group (S, T)
/// inside a graph on `nodes` nodes.
struct GroupTally {
    std::uint64_t nodes = 0;
    std::uint64_t s_only = 0;   // |S \ T|
    std::uint64_t t_only = 0;   // |T \ S|
    std::uint64_t both = 0;     // |S ∩ T|
    std::uint64_t links_st = 0;      // L(S, T)
    std::uint64_t links_s_tc = 0;    // L(S, T∁)
};

/// W = scale · (L(S,T)/Π(S,T) − L(S,T∁)/Π(S,T∁)); a density term is 0 when its
/// pair count is 0.
double objective_from_tally(const GroupTally& tally, Normalization norm);

/// Links with one endpoint in S and the other in T, each counted once.
/// Throws std::domain_error for unknown labels.
std::size_t links_between(const Graph& g, std::span<const NodeId> s, std::span<const NodeId> t);

/// Group objective of (S, T) in g. Throws std::domain_error if S or T is
/// empty or holds an unknown label.
double objective_w(const Graph& g, std::span<const NodeId> s, std::span<const NodeId> t,
                   Normalization norm = Normalization::PooledZ);

/// |S ∩ T| / |S ∪ T|. Throws std::domain_error when both are empty.
Ratio jaccard_tau(std::span<const NodeId> s, std::span<const NodeId> t);

/// Community iff S = T, Module iff S ∩ T = ∅, Mixture otherwise.
GroupKind classify(std::span<const NodeId> s, std::span<const NodeId> t);

}  // namespace netgroups
