#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "mulewalk/closed_form.hpp"
#include "mulewalk/piecer.hpp"

using namespace mulewalk;
using E = Rational;
constexpr auto Exact = NumberMode::Exact;
constexpr auto Float = NumberMode::Float;

namespace {

BreakageSummary span(std::uint32_t l, std::uint32_t r) { return BreakageSummary::span(l, r); }

// Finite-horizon optimum computed straight from thread patterns.
std::vector<E> pattern_values(std::uint32_t width, const std::vector<std::pair<std::uint64_t, E>>& patterns,
                              std::uint32_t horizon) {
    std::vector<E> v(width, E(0));
    for (std::uint32_t k = 0; k < horizon; ++k) {
        std::vector<E> next(width, E(0));
        for (std::uint32_t pos = 0; pos < width; ++pos) {
            for (const auto& [mask, w] : patterns) {
                E best;
                if (mask == 0) {
                    best = v[pos];
                } else {
                    const auto [l, r] = oracle::extremes_of(mask);
                    if (pos <= l)
                        best = E(r - pos) + v[r];
                    else if (pos >= r)
                        best = E(pos - l) + v[l];
                    else
                        best = std::min(E(pos - l + r - l) + v[r], E(r - pos + r - l) + v[l]);
                }
                next[pos] += w * best;
            }
        }
        v = std::move(next);
    }
    return v;
}

std::vector<std::pair<std::uint64_t, E>> fixed_n_masks(std::uint32_t width, std::uint32_t n) {
    std::vector<std::pair<std::uint64_t, E>> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << width); ++m)
        if (static_cast<std::uint32_t>(__builtin_popcountll(m)) == n)
            out.emplace_back(m, E(1));
    for (auto& entry : out)
        entry.second = E(1, static_cast<long>(out.size()));
    return out;
}

std::vector<std::pair<std::uint64_t, E>> bernoulli_masks(std::uint32_t width, const E& p) {
    std::vector<std::pair<std::uint64_t, E>> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << width); ++m) {
        E w = 1;
        for (std::uint32_t i = 0; i < width; ++i)
            w *= ((m >> i) & 1U) ? p : E(1 - p);
        out.emplace_back(m, w);
    }
    return out;
}

} // namespace

TEST(ResolveRound, Examples) {
    using V = std::vector<RoundChoice>;
    const auto resolve_round = [](std::uint32_t pos, const BreakageSummary& s, std::uint32_t width) {
        auto choices = mulewalk::resolve_round(pos, s, width);
        std::sort(choices.begin(), choices.end());
        return choices;
    };
    EXPECT_EQ(resolve_round(5, BreakageSummary::none(), 10), (V{{0, 5}}));
    EXPECT_EQ(resolve_round(2, span(4, 7), 10), (V{{5, 7}}));
    EXPECT_EQ(resolve_round(8, span(1, 3), 10), (V{{7, 1}}));
    EXPECT_EQ(resolve_round(5, span(2, 8), 10), (V{{9, 2}, {9, 8}}));
    EXPECT_EQ(resolve_round(4, span(2, 8), 10), (V{{8, 8}, {10, 2}}));
    EXPECT_EQ(resolve_round(3, span(3, 3), 10), (V{{0, 3}}));
    EXPECT_EQ(resolve_round(3, span(3, 6), 10), (V{{3, 6}}));
    EXPECT_EQ(resolve_round(6, span(3, 6), 10), (V{{3, 3}}));
}

TEST(ResolveRound, RejectsOutOfRange) {
    EXPECT_THROW(resolve_round(10, span(0, 0), 10), std::invalid_argument);
    EXPECT_THROW(resolve_round(0, span(0, 10), 10), std::invalid_argument);
}

TEST(ResolveRound, DistanceNeverBelowSpan) {
    for (std::uint32_t pos = 0; pos < 9; ++pos)
        for (std::uint32_t l = 0; l < 9; ++l)
            for (std::uint32_t r = l; r < 9; ++r) {
                const auto choices = resolve_round(pos, span(l, r), 9);
                std::uint32_t best = 1000;
                for (const auto& c : choices) {
                    ASSERT_TRUE(c.end_pos == l || c.end_pos == r);
                    ASSERT_GE(c.distance, r - l);
                    best = std::min(best, c.distance);
                }
                ASSERT_EQ(best, oracle::min_walk(pos, l, r));
            }
}

TEST(ModelLabel, Text) {
    EXPECT_EQ(fixed_n_model<Exact>(10, 3).label.to_string(), "fixed-n(3)");
    EXPECT_EQ(natural_model<Exact>(4, Prob(E(1, 10))).label.to_string(), "natural(1/10)");
    EXPECT_EQ(natural_opt_model<Exact>(4, Prob(E(1, 10))).label.to_string(), "natural-opt(1/10)");
}

TEST(ValueIteration, ReferenceSpotValues) {
    EXPECT_NEAR(value_iteration(fixed_n_model<Float>(10, 1), 0, 1), 0.45, 1e-3);
    EXPECT_NEAR(value_iteration(fixed_n_model<Float>(10, 1), 0, 50), 0.3324, 1e-3);
    EXPECT_NEAR(value_iteration(natural_opt_model<Float>(10, Prob(E(1, 10))), 0, 50), 0.2919, 1e-3);
    EXPECT_NEAR(value_iteration(natural_opt_model<Float>(50, Prob(E(1, 10))), 0, 50), 0.7848, 1e-3);
}

TEST(ValueIteration, TwoThreadsExact) {
    for (std::uint32_t rounds : {1U, 2U, 3U, 10U}) {
        EXPECT_EQ(value_iteration(natural_model<Exact>(2, Prob(E(1, 10))), 0, rounds), E(1, 20));
        EXPECT_EQ(value_iteration(natural_opt_model<Exact>(2, Prob(E(1, 10))), 1, rounds), E(1, 20));
    }
}

TEST(ValueIteration, ArgumentChecks) {
    const auto model = fixed_n_model<Exact>(5, 2);
    EXPECT_THROW(value_iteration(model, 5, 3), std::invalid_argument);
    EXPECT_THROW(value_iteration(model, 0, 0), std::invalid_argument);
    EXPECT_THROW(per_round_values(model, 0, {3, 2}), std::invalid_argument);
    EXPECT_THROW(per_round_values(model, 0, {0, 2}), std::invalid_argument);
}

TEST(ValueIteration, PerRoundMatchesIndividualRuns) {
    const auto model = natural_opt_model<Exact>(8, Prob(E(1, 5)));
    const std::vector<std::uint32_t> horizons{1, 2, 5, 9};
    const auto all = per_round_values(model, 3, horizons);
    ASSERT_EQ(all.size(), horizons.size());
    for (std::size_t i = 0; i < horizons.size(); ++i)
        EXPECT_EQ(all[i], value_iteration(model, 3, horizons[i]));
}

TEST(ValueIteration, OneRoundIsClosedForm) {
    for (std::uint32_t n = 1; n <= 10; ++n)
        for (std::uint32_t pos = 0; pos <= 5; ++pos) {
            const auto single = expected_distance<Exact>({10, n, pos});
            ASSERT_EQ(value_iteration(fixed_n_model<Exact>(10, n), pos, 1), single.relative) << n << " " << pos;
        }
}

TEST(ValueIteration, OneRoundMatchesPatternAverage) {
    for (std::uint32_t width = 1; width <= 8; ++width)
        for (std::uint32_t n = 1; n <= width; ++n) {
            const auto table = value_table(fixed_n_model<Exact>(width, n), 1);
            for (std::uint32_t pos = 0; pos < width; ++pos)
                ASSERT_EQ(table.values[pos], oracle::expected_walk_fixed_n(width, n, pos));
        }
}

TEST(ValueIteration, MatchesPatternRecursion) {
    for (std::uint32_t width = 1; width <= 6; ++width) {
        for (std::uint32_t n = 1; n <= width; ++n) {
            const auto expected = pattern_values(width, fixed_n_masks(width, n), 4);
            ASSERT_EQ(value_table(fixed_n_model<Exact>(width, n), 4).values, expected) << width << " " << n;
        }
        for (const E& p : {E(1, 10), E(1, 2), E(4, 5)}) {
            const auto expected = pattern_values(width, bernoulli_masks(width, p), 4);
            ASSERT_EQ(value_table(natural_model<Exact>(width, Prob(p)), 4).values, expected) << width << " " << p;
        }
    }
}

TEST(ValueIteration, NaturalOfOneIsAllBroken) {
    for (std::uint32_t width = 1; width <= 10; ++width)
        for (std::uint32_t pos = 0; pos < width; ++pos)
            ASSERT_EQ(value_iteration(natural_model<Exact>(width, Prob(E(1))), pos, 5),
                      value_iteration(fixed_n_model<Exact>(width, width), pos, 5));
}

TEST(ValueIteration, NaturalEqualsNaturalOpt) {
    for (std::uint32_t width = 1; width <= 12; ++width)
        for (const E& p : {E(1, 10), E(1, 4), E(1, 2), E(9, 10)}) {
            const auto a = value_table(natural_model<Exact>(width, Prob(p)), 3);
            const auto b = value_table(natural_opt_model<Exact>(width, Prob(p)), 3);
            ASSERT_EQ(a.values, b.values) << width << " " << p;
        }
}

TEST(ValueIteration, ReflectionSymmetric) {
    const std::vector<MuleModel<Exact>> models{fixed_n_model<Exact>(9, 1), fixed_n_model<Exact>(9, 4),
                                               natural_opt_model<Exact>(9, Prob(E(1, 3))),
                                               natural_opt_model<Exact>(10, Prob(E(1, 10)))};
    for (const auto& model : models) {
        const auto table = value_table(model, 6);
        for (std::uint32_t pos = 0; pos < model.width; ++pos)
            ASSERT_EQ(table.values[pos], table.values[model.width - 1 - pos]);
    }
}

TEST(ValueIteration, Bounds) {
    for (std::uint32_t width : {1U, 5U, 10U}) {
        for (std::uint32_t n = 1; n <= width; ++n)
            for (std::uint32_t pos = 0; pos < width; ++pos) {
                const double v = value_iteration(fixed_n_model<Float>(width, n), pos, 10);
                ASSERT_GE(v, 0.0);
                ASSERT_LE(v, 1.0 + (static_cast<double>(width) - 2.0) / width + 1e-12);
                const double single = value_iteration(fixed_n_model<Float>(width, n), pos, 1);
                ASSERT_LE(single, 2.0 * (width - 1.0) / width + 1e-12);
            }
        for (double p : {0.0, 0.3, 1.0}) {
            const double v = value_iteration(natural_opt_model<Float>(width, Prob(parse_rational(std::to_string(p)))), 0, 10);
            ASSERT_GE(v, 0.0);
            ASSERT_LE(v, 1.0 + (static_cast<double>(width) - 2.0) / width + 1e-12);
        }
    }
    EXPECT_EQ(value_iteration(natural_opt_model<Exact>(10, Prob(E(0))), 4, 7), 0);
}

TEST(ValueIteration, FloatTracksExact) {
    for (std::uint32_t n = 1; n <= 10; ++n)
        for (std::uint32_t pos = 0; pos <= 5; ++pos)
            ASSERT_NEAR(value_iteration(fixed_n_model<Float>(10, n), pos, 20),
                        to_double(value_iteration(fixed_n_model<Exact>(10, n), pos, 20)), 1e-12);
}

TEST(ValueIteration, RepeatedRoundsWithinSingleStrokeRange) {
    for (std::uint32_t n = 1; n <= 10; ++n) {
        double lo = 1e9, hi = -1e9;
        for (std::uint32_t pos = 0; pos < 10; ++pos) {
            const double v = value_iteration(fixed_n_model<Float>(10, n), pos, 1);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (std::uint32_t init = 0; init <= 5; ++init) {
            const double v = value_iteration(fixed_n_model<Float>(10, n), init, 50);
            ASSERT_GE(v, lo - 1e-12) << n << " " << init;
            ASSERT_LE(v, hi + 1e-12) << n << " " << init;
        }
    }
}
