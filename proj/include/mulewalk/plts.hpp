#pragma once

// Alternating probabilistic transition systems for the mule models, strong
// probabilistic bisimulation by partition refinement, and quotients.
//
// Point (Dirac) distributions are not materialised: a transition target is
// either an explicit probabilistic state or the point distribution on an
// action state. Explicit probabilistic states always have two or more
// outcomes.

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mulewalk/breakage.hpp"
#include "mulewalk/numerics.hpp"
#include "mulewalk/piecer.hpp"

namespace mulewalk {

/// `threads` (parameters erased) or `walk(d)`.
struct Label {
    enum class Kind : std::uint8_t { Threads, Walk };
    Kind kind = Kind::Threads;
    std::uint32_t distance = 0;

    static Label threads() { return {Kind::Threads, 0}; }
    static Label walk(std::uint32_t d) { return {Kind::Walk, d}; }
    std::string to_string() const;

    friend auto operator<=>(const Label&, const Label&) = default;
};

struct Target {
    enum class Kind : std::uint8_t { Prob, Dirac };
    Kind kind = Kind::Prob;
    std::uint32_t index = 0; // probabilistic state for Prob, action state for Dirac

    static Target prob(std::uint32_t i) { return {Kind::Prob, i}; }
    static Target dirac(std::uint32_t i) { return {Kind::Dirac, i}; }

    friend auto operator<=>(const Target&, const Target&) = default;
};

template <NumberMode M>
struct Plts {
    using Distribution = std::vector<std::pair<std::uint32_t, Number<M>>>; // action state -> mass
    using Transitions = std::vector<std::pair<Label, Target>>;

    std::vector<Distribution> prob_states;
    std::vector<Transitions> action_states;
    Target initial;

    std::size_t state_count() const { return prob_states.size() + action_states.size(); }

    /// Throws std::invalid_argument on dangling indices, non-normalised or
    /// single-outcome probabilistic states.
    void validate() const;

    friend bool operator==(const Plts&, const Plts&) = default;
};

/// States reachable from the mule's initial position. FixedN and Natural
/// models get one action state per thread pattern, NaturalOpt one per
/// summary. Throws std::invalid_argument when pattern enumeration exceeds cap.
template <NumberMode M>
Plts<M> build_plts(const MuleModel<M>& model, std::uint32_t init_pos, std::uint32_t cap = kDefaultEnumerationCap);

/// Both systems side by side; b's indices are shifted past a's. The initial state is a's.
template <NumberMode M>
Plts<M> disjoint_union(const Plts<M>& a, const Plts<M>& b);

/// Coarsest strong probabilistic bisimulation.
struct Partition {
    std::vector<std::uint32_t> prob_block;   // per explicit probabilistic state
    std::vector<std::uint32_t> action_block; // per action state
    std::uint32_t prob_block_count = 0;
    std::uint32_t action_block_count = 0;
    std::vector<std::uint32_t> action_blocks_per_round; // action block count after each refinement round
    std::uint32_t block_count() const { return prob_block_count + action_block_count; }
};

/// Exact mode compares masses exactly; Float mode with absolute tolerance 1e-9 (by quantisation).
template <NumberMode M>
Partition coarsest_bisimulation(const Plts<M>& plts);

template <NumberMode M>
bool bisimilar(const Plts<M>& a, const Plts<M>& b);

/// Blocks numbered by their smallest original member.
template <NumberMode M>
Plts<M> quotient(const Plts<M>& plts);

/// Line format: `I <s>`, then `P <from> <prob> <to>` per distribution entry,
/// then `T <from> <label> <to>` per transition. Probabilistic states are
/// numbered first, action states follow; a Dirac target is written as the
/// action state itself.
template <NumberMode M>
std::string export_text(const Plts<M>& plts);

/// Minimal expected cumulative walk over `rounds` walk steps from the initial
/// target, taking walk labels as costs; threads steps cost nothing.
template <NumberMode M>
Number<M> plts_value(const Plts<M>& plts, std::uint32_t rounds);

} // namespace mulewalk
