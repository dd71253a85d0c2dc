#include "mulewalk/closed_form.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace mulewalk {

void ClosedFormInstance::validate() const {
    if (n_broken < 1 || n_broken > width)
        throw std::invalid_argument("closed form needs 1 <= N <= width (N=" + std::to_string(n_broken) +
                                    ", width=" + std::to_string(width) + ")");
    if (pos > width)
        throw std::invalid_argument("closed form needs pos <= width (pos=" + std::to_string(pos) + ")");
}

namespace {

using Index = std::int64_t;

// C(beta, N-1) / C(width, N): the probability that all breaks lie on one side
// within reach beta with the furthest exactly beta away.
template <NumberMode M>
Number<M> one_sided_weight(Index beta, const ClosedFormInstance& inst) {
    return binomial_ratio<M>(static_cast<std::uint64_t>(beta), inst.n_broken - 1, inst.width, inst.n_broken);
}

// weights[s] = C(s-1, N-2) / C(width, N) for s = beta + beta' (both reaches >= 1).
template <NumberMode M>
std::vector<Number<M>> straddle_weights(const ClosedFormInstance& inst) {
    std::vector<Number<M>> weights(inst.width + 1, Number<M>(0));
    if (inst.n_broken < 2)
        return weights;
    const std::uint64_t inner = inst.n_broken - 2;
    for (std::uint64_t s = 1; s <= inst.width; ++s)
        if (s - 1 >= inner)
            weights[s] = binomial_ratio<M>(s - 1, inner, inst.width, inst.n_broken);
    return weights;
}

template <NumberMode M, class Term>
Number<M> one_sided_sum(const ClosedFormInstance& inst, Index upper, Term term) {
    Number<M> sum(0);
    for (Index beta = static_cast<Index>(inst.n_broken) - 1; beta <= upper; ++beta)
        sum += term(beta) * one_sided_weight<M>(beta, inst);
    return sum;
}

// Sums cost(beta, beta') * weight over one straddling branch.
template <NumberMode M, class Bounds, class Cost>
Number<M> straddle_sum(const ClosedFormInstance& inst, const std::vector<Number<M>>& weights, Bounds bounds, Cost cost) {
    Number<M> sum(0);
    if (inst.n_broken < 2)
        return sum;
    const Index pos = inst.pos;
    for (Index beta = 1; beta <= pos; ++beta) {
        const auto [lo, hi] = bounds(beta);
        for (Index beta_r = lo; beta_r <= hi; ++beta_r)
            sum += cost(beta, beta_r) * weights[static_cast<std::size_t>(beta + beta_r)];
    }
    return sum;
}

template <NumberMode M>
auto left_first_bounds(const ClosedFormInstance& inst) {
    const Index n = inst.n_broken;
    const Index right_reach = static_cast<Index>(inst.width) - inst.pos - 1;
    return [=](Index beta) { return std::pair<Index, Index>{std::max(beta, n - 1 - beta), right_reach}; };
}

template <NumberMode M>
auto right_first_bounds(const ClosedFormInstance& inst) {
    const Index n = inst.n_broken;
    const Index right_reach = static_cast<Index>(inst.width) - inst.pos - 1;
    // C(beta + beta' - 1, N - 2) is nonzero from beta' = N - 1 - beta on.
    return [=](Index beta) {
        return std::pair<Index, Index>{std::max<Index>(1, n - 1 - beta), std::min(right_reach, beta - 1)};
    };
}

template <NumberMode M>
Number<M> as_number(Index v) {
    if constexpr (M == NumberMode::Exact)
        return Rational(static_cast<long>(v));
    else
        return static_cast<double>(v);
}

} // namespace

template <NumberMode M>
Number<M> delta1(const ClosedFormInstance& inst) {
    inst.validate();
    return one_sided_sum<M>(inst, inst.pos, [](Index beta) { return as_number<M>(beta); });
}

template <NumberMode M>
Number<M> delta2(const ClosedFormInstance& inst) {
    inst.validate();
    return one_sided_sum<M>(inst, static_cast<Index>(inst.width) - inst.pos - 1,
                            [](Index beta) { return as_number<M>(beta); });
}

template <NumberMode M>
Number<M> delta3(const ClosedFormInstance& inst) {
    inst.validate();
    const auto weights = straddle_weights<M>(inst);
    return straddle_sum<M>(inst, weights, left_first_bounds<M>(inst),
                           [](Index b, Index br) { return as_number<M>(2 * b + br); });
}

template <NumberMode M>
Number<M> delta4(const ClosedFormInstance& inst) {
    inst.validate();
    const auto weights = straddle_weights<M>(inst);
    return straddle_sum<M>(inst, weights, right_first_bounds<M>(inst),
                           [](Index b, Index br) { return as_number<M>(b + 2 * br); });
}

template <NumberMode M>
DeltaBreakdown<M> expected_distance(const ClosedFormInstance& inst) {
    inst.validate();
    const auto weights = straddle_weights<M>(inst);
    DeltaBreakdown<M> out;
    out.d1 = delta1<M>(inst);
    out.d2 = delta2<M>(inst);
    out.d3 = straddle_sum<M>(inst, weights, left_first_bounds<M>(inst),
                             [](Index b, Index br) { return as_number<M>(2 * b + br); });
    out.d4 = straddle_sum<M>(inst, weights, right_first_bounds<M>(inst),
                             [](Index b, Index br) { return as_number<M>(b + 2 * br); });
    out.total = out.d1 + out.d2 + out.d3 + out.d4;
    out.relative = out.total / as_number<M>(inst.width);
    return out;
}

template <NumberMode M>
CaseProbabilities<M> case_probabilities(const ClosedFormInstance& inst) {
    inst.validate();
    const auto weights = straddle_weights<M>(inst);
    const auto one = [](Index) { return as_number<M>(1); };
    const auto unit = [](Index, Index) { return as_number<M>(1); };
    return {one_sided_sum<M>(inst, inst.pos, one),
            one_sided_sum<M>(inst, static_cast<Index>(inst.width) - inst.pos - 1, one),
            straddle_sum<M>(inst, weights, left_first_bounds<M>(inst), unit),
            straddle_sum<M>(inst, weights, right_first_bounds<M>(inst), unit)};
}

ClosedFormReport closed_form_check(const ClosedFormInstance& inst) {
    inst.validate();
    const long n = inst.n_broken;
    const long pos = inst.pos;
    const long width = inst.width;
    const Rational denominator = Rational(n * (n + 1)) * binomial<NumberMode::Exact>(inst.width, inst.n_broken);

    const auto binom = [](long top, long bottom) {
        return (top < 0 || bottom < 0) ? Rational(0) : binomial<NumberMode::Exact>(static_cast<std::uint64_t>(top),
                                                                                   static_cast<std::uint64_t>(bottom));
    };

    ClosedFormReport report;
    report.delta1_sum = delta1<NumberMode::Exact>(inst);
    report.delta1_closed =
        Rational((pos - n + 2) * (n * pos + n - 1)) * binom(pos + 1, n - 1) / denominator;
    report.delta1_closed.canonicalize();

    report.delta2_sum = delta2<NumberMode::Exact>(inst);
    report.delta2_closed =
        Rational((pos + width - n + 1) * (width * n - n * pos - 1)) * binom(width - pos, n - 1) / denominator;
    report.delta2_closed.canonicalize();

    report.delta1_agrees = report.delta1_sum == report.delta1_closed;
    report.delta2_agrees = report.delta2_sum == report.delta2_closed;
    return report;
}

#define MULEWALK_INSTANTIATE(M)                                                        \
    template Number<M> delta1<M>(const ClosedFormInstance&);                            \
    template Number<M> delta2<M>(const ClosedFormInstance&);                            \
    template Number<M> delta3<M>(const ClosedFormInstance&);                            \
    template Number<M> delta4<M>(const ClosedFormInstance&);                            \
    template DeltaBreakdown<M> expected_distance<M>(const ClosedFormInstance&);         \
    template CaseProbabilities<M> case_probabilities<M>(const ClosedFormInstance&);

MULEWALK_INSTANTIATE(NumberMode::Exact)
MULEWALK_INSTANTIATE(NumberMode::Float)
#undef MULEWALK_INSTANTIATE

} // namespace mulewalk
