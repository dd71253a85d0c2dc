#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mulewalk/numerics.hpp"

namespace mulewalk {

enum class Thread : std::uint8_t { fine, broken };

/// Default bound on width for anything that enumerates all 2^width patterns.
inline constexpr std::uint32_t kDefaultEnumerationCap = 20;

/// The fine/broken state of every thread position after one stroke.
class ThreadPattern {
public:
    ThreadPattern() = default;
    explicit ThreadPattern(std::vector<Thread> threads) : threads_(std::move(threads)) {}

    /// Bit i of mask set means thread i is broken.
    static ThreadPattern from_mask(std::uint32_t width, std::uint64_t mask);
    /// 'x' or 'X' is broken, '.' or '-' is fine.
    static ThreadPattern parse(std::string_view text);

    std::uint32_t width() const { return static_cast<std::uint32_t>(threads_.size()); }
    std::span<const Thread> threads() const { return threads_; }
    Thread operator[](std::size_t i) const { return threads_[i]; }
    std::string to_string() const;

    friend auto operator<=>(const ThreadPattern&, const ThreadPattern&) = default;

private:
    std::vector<Thread> threads_;
};

bool no_broken_thread(const ThreadPattern& p);
std::uint32_t count_broken(const ThreadPattern& p);
/// Index of the leftmost broken thread. Throws std::domain_error if none is broken.
std::uint32_t lbt(const ThreadPattern& p);
/// Index of the rightmost broken thread. Throws std::domain_error if none is broken.
std::uint32_t rbt(const ThreadPattern& p);

/// Leftmost and rightmost broken positions of a stroke, or none at all.
class BreakageSummary {
public:
    static BreakageSummary none() { return BreakageSummary(); }
    /// Throws std::invalid_argument unless l <= r.
    static BreakageSummary span(std::uint32_t l, std::uint32_t r);

    bool is_none() const { return none_; }
    std::uint32_t left() const { return l_; }
    std::uint32_t right() const { return r_; }

    /// Mirror image on a mule of the given width.
    BreakageSummary reflected(std::uint32_t width) const;
    std::string to_string() const;

    // NoneBroken orders first, then spans lexicographically.
    friend auto operator<=>(const BreakageSummary& a, const BreakageSummary& b) {
        if (a.none_ != b.none_)
            return a.none_ ? std::strong_ordering::less : std::strong_ordering::greater;
        if (auto c = a.l_ <=> b.l_; c != 0)
            return c;
        return a.r_ <=> b.r_;
    }
    friend bool operator==(const BreakageSummary&, const BreakageSummary&) = default;

private:
    BreakageSummary() = default;
    bool none_ = true;
    std::uint32_t l_ = 0;
    std::uint32_t r_ = 0;
};

BreakageSummary summarize(const ThreadPattern& p);

/// Finite distribution over summaries, canonically ordered, no zero entries.
template <NumberMode M>
class SummaryDistribution {
public:
    using value_type = std::pair<BreakageSummary, Number<M>>;

    SummaryDistribution() = default;
    /// Merges duplicate summaries, drops zeros, sorts. Throws std::invalid_argument
    /// if a probability is negative, a span exceeds width, or the total is not 1
    /// (exactly in Exact mode, within 1e-12 in Float mode).
    SummaryDistribution(std::uint32_t width, std::vector<value_type> entries);

    std::uint32_t width() const { return width_; }
    const std::vector<value_type>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    /// Zero when absent.
    Number<M> probability(const BreakageSummary& s) const;
    Number<M> total() const;
    SummaryDistribution reflected() const;

    friend bool operator==(const SummaryDistribution&, const SummaryDistribution&) = default;

private:
    std::uint32_t width_ = 0;
    std::vector<value_type> entries_;
};

/// Calls visit(pattern) for all 2^width patterns in mask order. Throws std::invalid_argument above cap.
void for_each_pattern(std::uint32_t width, std::uint32_t cap, const std::function<void(std::uint64_t mask)>& visit);

/// Patterns with exactly n broken threads, each weighted 1 / C(width, n).
template <NumberMode M>
std::vector<std::pair<ThreadPattern, Number<M>>> fixed_n_patterns(std::uint32_t width, std::uint32_t n);

/// All patterns with nonzero probability under independent per-thread breakage.
template <NumberMode M>
std::vector<std::pair<ThreadPattern, Number<M>>> bernoulli_patterns(std::uint32_t width, const Prob& p,
                                                                    std::uint32_t cap = kDefaultEnumerationCap);

/// Exactly n uniformly placed breaks, aggregated by the closed form
/// P(Span(l,r)) = C(r-l-1, n-2) / C(width, n) (n >= 2), 1/width for n = 1.
template <NumberMode M>
SummaryDistribution<M> fixed_n_distribution(std::uint32_t width, std::uint32_t n);

/// Same distribution obtained by enumerating and summarising every pattern.
template <NumberMode M>
SummaryDistribution<M> fixed_n_distribution_enumerated(std::uint32_t width, std::uint32_t n);

/// Each thread breaks independently with probability p; enumerates all 2^width patterns.
template <NumberMode M>
SummaryDistribution<M> bernoulli_distribution(std::uint32_t width, const Prob& p,
                                              std::uint32_t cap = kDefaultEnumerationCap);

/// Closed-form marginal of the Bernoulli model on (leftmost, rightmost).
template <NumberMode M>
SummaryDistribution<M> extremes_distribution(std::uint32_t width, const Prob& p);

} // namespace mulewalk
