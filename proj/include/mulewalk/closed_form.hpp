#pragma once

// Single-stroke expected walking distance with exactly N uniformly placed
// breaks, by direct summation over the distance to the furthest break on
// each side of the piecer.

#include <cstdint>

#include "mulewalk/numerics.hpp"

namespace mulewalk {

/// Positions are thread indices 0..width-1; pos == width is accepted by the sums.
struct ClosedFormInstance {
    std::uint32_t width = 0;
    std::uint32_t n_broken = 0;
    std::uint32_t pos = 0;

    /// Throws std::invalid_argument unless 1 <= n_broken <= width and pos <= width.
    void validate() const;
};

template <NumberMode M>
struct DeltaBreakdown {
    Number<M> d1, d2, d3, d4;
    Number<M> total;
    Number<M> relative; // total / width
};

/// Breaks only at or left of pos; walk to the leftmost.
template <NumberMode M>
Number<M> delta1(const ClosedFormInstance& inst);

/// Breaks only at or right of pos; walk to the rightmost.
template <NumberMode M>
Number<M> delta2(const ClosedFormInstance& inst);

/// Breaks on both sides, left reach <= right reach: left first, 2*left + right.
template <NumberMode M>
Number<M> delta3(const ClosedFormInstance& inst);

/// Breaks on both sides, left reach > right reach: right first, left + 2*right.
template <NumberMode M>
Number<M> delta4(const ClosedFormInstance& inst);

template <NumberMode M>
DeltaBreakdown<M> expected_distance(const ClosedFormInstance& inst);

/// Total probability mass of each of the four walking cases (same index ranges as delta1..delta4).
template <NumberMode M>
struct CaseProbabilities {
    Number<M> left_only, right_only, left_first, right_first;
};

template <NumberMode M>
CaseProbabilities<M> case_probabilities(const ClosedFormInstance& inst);

/// Candidate closed forms of delta1/delta2 checked against the sums (exact arithmetic).
struct ClosedFormReport {
    Rational delta1_sum, delta1_closed;
    Rational delta2_sum, delta2_closed;
    bool delta1_agrees = false;
    bool delta2_agrees = false;
};

ClosedFormReport closed_form_check(const ClosedFormInstance& inst);

} // namespace mulewalk
