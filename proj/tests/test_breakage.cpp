#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "mulewalk/breakage.hpp"

using namespace mulewalk;
using E = Rational;
constexpr auto Exact = NumberMode::Exact;
constexpr auto Float = NumberMode::Float;

namespace {

template <NumberMode M>
using Entries = std::vector<typename SummaryDistribution<M>::value_type>;

BreakageSummary span(std::uint32_t l, std::uint32_t r) { return BreakageSummary::span(l, r); }

const E kProbs[] = {E(1, 10), E(1, 4), E(1, 2), E(9, 10)};

} // namespace

TEST(ThreadPattern, ScanHelpers) {
    const auto a = ThreadPattern::parse("x..");
    const auto b = ThreadPattern::parse("..x");
    const auto c = ThreadPattern::parse(".xx.");
    const auto all = ThreadPattern::parse("xxxxxxxxxx");
    EXPECT_EQ(lbt(a), 0U);
    EXPECT_EQ(lbt(b), 2U);
    EXPECT_EQ(lbt(c), 1U);
    EXPECT_EQ(rbt(a), 0U);
    EXPECT_EQ(rbt(c), 2U);
    EXPECT_EQ(rbt(all), 9U);
    EXPECT_EQ(count_broken(ThreadPattern::parse("....")), 0U);
    EXPECT_EQ(count_broken(ThreadPattern::parse("x.x")), 2U);
    EXPECT_EQ(count_broken(all), 10U);
}

TEST(ThreadPattern, ScanMatchesDirectLoop) {
    for (std::uint64_t mask = 1; mask < 256; ++mask) {
        const auto p = ThreadPattern::from_mask(8, mask);
        std::uint32_t first = 99, last = 0, count = 0;
        for (std::uint32_t i = 0; i < 8; ++i)
            if (p[i] == Thread::broken) {
                first = std::min(first, i);
                last = i;
                ++count;
            }
        ASSERT_EQ(lbt(p), first);
        ASSERT_EQ(rbt(p), last);
        ASSERT_EQ(count_broken(p), count);
    }
}

TEST(ThreadPattern, NoBreakHasNoExtremes) {
    const auto fine = ThreadPattern::parse("...");
    EXPECT_TRUE(no_broken_thread(fine));
    EXPECT_THROW(lbt(fine), std::domain_error);
    EXPECT_THROW(rbt(fine), std::domain_error);
    EXPECT_THROW(ThreadPattern::parse("x?"), std::invalid_argument);
}

TEST(Summarize, Examples) {
    EXPECT_EQ(summarize(ThreadPattern::parse("....")), BreakageSummary::none());
    EXPECT_EQ(summarize(ThreadPattern::parse(".x.")), span(1, 1));
    EXPECT_EQ(summarize(ThreadPattern::parse("x.x")), span(0, 2));
}

TEST(BreakageSummary, OrderingAndReflection) {
    EXPECT_LT(BreakageSummary::none(), span(0, 0));
    EXPECT_LT(span(0, 3), span(1, 1));
    EXPECT_LT(span(1, 1), span(1, 2));
    EXPECT_EQ(span(1, 3).reflected(10), span(6, 8));
    EXPECT_EQ(BreakageSummary::none().reflected(10), BreakageSummary::none());
    EXPECT_THROW(span(3, 2), std::invalid_argument);
}

TEST(SummaryDistribution, RejectsBadInput) {
    EXPECT_THROW((SummaryDistribution<Exact>(3, Entries<Exact>{{span(0, 0), E(1, 2)}})), std::invalid_argument);
    EXPECT_THROW((SummaryDistribution<Exact>(3, Entries<Exact>{{span(0, 3), E(1)}})), std::invalid_argument);
    EXPECT_THROW((SummaryDistribution<Float>(3, Entries<Float>{{span(0, 0), 1.5}, {span(1, 1), -0.5}})),
                 std::invalid_argument);
}

TEST(SummaryDistribution, MergesAndDropsZeros) {
    const SummaryDistribution<Exact> d(3, Entries<Exact>{{span(1, 1), E(1, 2)}, {span(0, 0), E(0)}, {span(1, 1), E(1, 2)}});
    ASSERT_EQ(d.size(), 1U);
    EXPECT_EQ(d.probability(span(1, 1)), 1);
    EXPECT_EQ(d.probability(span(0, 0)), 0);
}

TEST(FixedN, Examples) {
    const auto all = fixed_n_distribution<Exact>(10, 10);
    ASSERT_EQ(all.size(), 1U);
    EXPECT_EQ(all.probability(span(0, 9)), 1);

    const auto single = fixed_n_distribution<Exact>(10, 1);
    ASSERT_EQ(single.size(), 10U);
    for (std::uint32_t k = 0; k < 10; ++k)
        EXPECT_EQ(single.probability(span(k, k)), E(1, 10));

    const auto four = fixed_n_distribution<Exact>(4, 2);
    const SummaryDistribution<Exact> expected(4, Entries<Exact>{{span(0, 1), E(1, 6)},
                                                                {span(1, 2), E(1, 6)},
                                                                {span(2, 3), E(1, 6)},
                                                                {span(0, 2), E(1, 6)},
                                                                {span(1, 3), E(1, 6)},
                                                                {span(0, 3), E(1, 6)}});
    EXPECT_EQ(four, expected);
}

TEST(FixedN, RejectsOutOfRange) {
    EXPECT_THROW(fixed_n_distribution<Exact>(5, 0), std::invalid_argument);
    EXPECT_THROW(fixed_n_distribution<Exact>(5, 6), std::invalid_argument);
    EXPECT_THROW(fixed_n_distribution_enumerated<Float>(5, 0), std::invalid_argument);
}

TEST(FixedN, ClosedFormEqualsEnumeration) {
    for (std::uint32_t width = 1; width <= 12; ++width)
        for (std::uint32_t n = 1; n <= width; ++n) {
            const auto closed = fixed_n_distribution<Exact>(width, n);
            ASSERT_EQ(closed, fixed_n_distribution_enumerated<Exact>(width, n)) << width << " " << n;
            ASSERT_EQ(closed.total(), 1);
        }
}

TEST(Bernoulli, Examples) {
    const auto two = bernoulli_distribution<Exact>(2, Prob(E(1, 10)));
    const SummaryDistribution<Exact> expected(2, Entries<Exact>{{BreakageSummary::none(), E(81, 100)},
                                                                {span(0, 0), E(9, 100)},
                                                                {span(1, 1), E(9, 100)},
                                                                {span(0, 1), E(1, 100)}});
    EXPECT_EQ(two, expected);

    const auto never = bernoulli_distribution<Exact>(7, Prob(E(0)));
    ASSERT_EQ(never.size(), 1U);
    EXPECT_EQ(never.probability(BreakageSummary::none()), 1);

    const auto always = bernoulli_distribution<Exact>(10, Prob(E(1)));
    ASSERT_EQ(always.size(), 1U);
    EXPECT_EQ(always.probability(span(0, 9)), 1);
}

TEST(Bernoulli, MatchesIndependentEnumeration) {
    for (std::uint32_t width = 1; width <= 8; ++width) {
        const auto oracle_map = oracle::bernoulli_extremes(width, E(1, 4));
        const auto d = bernoulli_distribution<Exact>(width, Prob(E(1, 4)));
        ASSERT_EQ(d.size(), oracle_map.size());
        for (const auto& [key, prob] : oracle_map) {
            const auto s = key.first < 0 ? BreakageSummary::none()
                                         : span(static_cast<std::uint32_t>(key.first), static_cast<std::uint32_t>(key.second));
            ASSERT_EQ(d.probability(s), prob);
        }
    }
}

TEST(Bernoulli, EnumerationCap) {
    EXPECT_THROW(bernoulli_distribution<Float>(21, Prob(E(1, 10))), std::invalid_argument);
    EXPECT_THROW(bernoulli_distribution<Float>(6, Prob(E(1, 10)), 5), std::invalid_argument);
}

TEST(Extremes, Examples) {
    EXPECT_EQ(extremes_distribution<Exact>(2, Prob(E(1, 10))), bernoulli_distribution<Exact>(2, Prob(E(1, 10))));

    const auto never = extremes_distribution<Exact>(50, Prob(E(0)));
    ASSERT_EQ(never.size(), 1U);
    EXPECT_EQ(never.probability(BreakageSummary::none()), 1);

    const auto half = extremes_distribution<Exact>(3, Prob(E(1, 2)));
    EXPECT_EQ(half.probability(span(0, 2)), E(1, 4));
    EXPECT_EQ(half.probability(span(0, 1)), E(1, 8));
    EXPECT_EQ(half.probability(span(1, 2)), E(1, 8));
    for (std::uint32_t k = 0; k < 3; ++k)
        EXPECT_EQ(half.probability(span(k, k)), E(1, 8));
    EXPECT_EQ(half.probability(BreakageSummary::none()), E(1, 8));
    EXPECT_EQ(half, bernoulli_distribution<Exact>(3, Prob(E(1, 2))));
}

TEST(Extremes, EqualsBernoulliUpToWidth12) {
    for (std::uint32_t width = 1; width <= 12; ++width)
        for (const E& p : kProbs)
            ASSERT_EQ(extremes_distribution<Exact>(width, Prob(p)), bernoulli_distribution<Exact>(width, Prob(p)))
                << width << " " << p;
}

TEST(Extremes, FloatNormalisedAtWidth50) {
    for (double p : {0.0, 0.01, 0.5, 1.0})
        EXPECT_NO_THROW(extremes_distribution<Float>(50, Prob(parse_rational(std::to_string(p)))));
}

TEST(Distributions, NormalisedExactly) {
    for (std::uint32_t width = 1; width <= 12; ++width) {
        for (const E& p : kProbs) {
            ASSERT_EQ(bernoulli_distribution<Exact>(width, Prob(p)).total(), 1);
            ASSERT_EQ(extremes_distribution<Exact>(width, Prob(p)).total(), 1);
        }
        for (std::uint32_t n = 1; n <= width; ++n)
            ASSERT_EQ(fixed_n_distribution<Exact>(width, n).total(), 1);
    }
}

TEST(Distributions, ReflectionPreservesMeasure) {
    for (std::uint32_t width = 1; width <= 12; ++width) {
        for (const E& p : kProbs) {
            const auto b = bernoulli_distribution<Exact>(width, Prob(p));
            ASSERT_EQ(b.reflected(), b);
            const auto x = extremes_distribution<Exact>(width, Prob(p));
            ASSERT_EQ(x.reflected(), x);
        }
        for (std::uint32_t n = 1; n <= width; ++n) {
            const auto f = fixed_n_distribution<Exact>(width, n);
            ASSERT_EQ(f.reflected(), f);
        }
    }
}

TEST(Patterns, WeightsSumToOne) {
    E total = 0;
    for (const auto& [pattern, w] : fixed_n_patterns<Exact>(6, 3)) {
        EXPECT_EQ(count_broken(pattern), 3U);
        total += w;
    }
    EXPECT_EQ(total, 1);
    EXPECT_EQ(fixed_n_patterns<Exact>(6, 3).size(), 20U);

    total = 0;
    const auto patterns = bernoulli_patterns<Exact>(5, Prob(E(1, 3)));
    EXPECT_EQ(patterns.size(), 32U);
    for (const auto& entry : patterns)
        total += entry.second;
    EXPECT_EQ(total, 1);
    EXPECT_EQ(bernoulli_patterns<Exact>(5, Prob(E(1))).size(), 1U);
}
