#pragma once

// Walk semantics of one repair round and the finite-horizon minimum expected
// walking distance over repeated rounds.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "mulewalk/breakage.hpp"
#include "mulewalk/numerics.hpp"

namespace mulewalk {

/// One way to repair a stroke: how far the piecer walks and where the walk ends.
struct RoundChoice {
    std::uint32_t distance = 0;
    std::uint32_t end_pos = 0;

    friend auto operator<=>(const RoundChoice&, const RoundChoice&) = default;
};

/// All walks that repair every break of `s` starting from `pos`:
///  - nothing broken: stay put;
///  - breaks only to one side (inclusive): walk to the far end;
///  - breaks on both sides: left-then-right or right-then-left.
/// Throws std::invalid_argument if pos or s lies outside the mule.
std::vector<RoundChoice> resolve_round(std::uint32_t pos, const BreakageSummary& s, std::uint32_t width);

struct ModelLabel {
    enum class Kind { FixedN, Natural, NaturalOpt };
    Kind kind = Kind::FixedN;
    std::uint32_t n_broken = 0; // FixedN only
    Prob prob;                  // Natural and NaturalOpt only

    std::string to_string() const;
};

template <NumberMode M>
struct MuleModel {
    std::uint32_t width = 0;
    SummaryDistribution<M> distribution;
    ModelLabel label;
};

/// Exactly n uniformly placed breaks per stroke.
template <NumberMode M>
MuleModel<M> fixed_n_model(std::uint32_t width, std::uint32_t n);

/// Independent breakage, distribution by full pattern enumeration.
template <NumberMode M>
MuleModel<M> natural_model(std::uint32_t width, const Prob& p, std::uint32_t cap = kDefaultEnumerationCap);

/// Independent breakage, distribution from the closed-form extremes marginal.
template <NumberMode M>
MuleModel<M> natural_opt_model(std::uint32_t width, const Prob& p);

/// Minimal expected cumulative distance for `horizon` remaining rounds, per start position.
template <NumberMode M>
struct ValueTable {
    std::uint32_t horizon = 0;
    std::vector<Number<M>> values;
};

/// V_{k+1}(pos) = sum_s P(s) * min_{c in resolve_round(pos, s)} (c.distance + V_k(c.end_pos)).
template <NumberMode M>
ValueTable<M> bellman_step(const MuleModel<M>& model, const ValueTable<M>& previous);

/// V_horizon, starting from V_0 = 0.
template <NumberMode M>
ValueTable<M> value_table(const MuleModel<M>& model, std::uint32_t horizon);

/// V_max_rounds(init_pos) / (max_rounds * width): minimal expected distance per round relative to the width.
template <NumberMode M>
Number<M> value_iteration(const MuleModel<M>& model, std::uint32_t init_pos, std::uint32_t max_rounds);

/// value_iteration at each horizon (ascending), sharing one backward pass.
template <NumberMode M>
std::vector<Number<M>> per_round_values(const MuleModel<M>& model, std::uint32_t init_pos,
                                        const std::vector<std::uint32_t>& horizons);

} // namespace mulewalk
