#include "mulewalk/breakage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mulewalk {

ThreadPattern ThreadPattern::from_mask(std::uint32_t width, std::uint64_t mask) {
    std::vector<Thread> threads(width, Thread::fine);
    for (std::uint32_t i = 0; i < width; ++i)
        if ((mask >> i) & 1U)
            threads[i] = Thread::broken;
    return ThreadPattern(std::move(threads));
}

ThreadPattern ThreadPattern::parse(std::string_view text) {
    std::vector<Thread> threads;
    threads.reserve(text.size());
    for (char c : text) {
        if (c == 'x' || c == 'X')
            threads.push_back(Thread::broken);
        else if (c == '.' || c == '-')
            threads.push_back(Thread::fine);
        else
            throw std::invalid_argument(std::string("bad thread mark '") + c + "'");
    }
    return ThreadPattern(std::move(threads));
}

std::string ThreadPattern::to_string() const {
    std::string out;
    out.reserve(threads_.size());
    for (Thread t : threads_)
        out.push_back(t == Thread::broken ? 'x' : '.');
    return out;
}

bool no_broken_thread(const ThreadPattern& p) {
    return std::none_of(p.threads().begin(), p.threads().end(), [](Thread t) { return t == Thread::broken; });
}

std::uint32_t count_broken(const ThreadPattern& p) {
    return static_cast<std::uint32_t>(std::count(p.threads().begin(), p.threads().end(), Thread::broken));
}

std::uint32_t lbt(const ThreadPattern& p) {
    const auto threads = p.threads();
    const auto it = std::find(threads.begin(), threads.end(), Thread::broken);
    if (it == threads.end())
        throw std::domain_error("lbt of a pattern without broken threads");
    return static_cast<std::uint32_t>(it - threads.begin());
}

std::uint32_t rbt(const ThreadPattern& p) {
    const auto threads = p.threads();
    const auto it = std::find(threads.rbegin(), threads.rend(), Thread::broken);
    if (it == threads.rend())
        throw std::domain_error("rbt of a pattern without broken threads");
    return static_cast<std::uint32_t>(threads.rend() - it - 1);
}

BreakageSummary BreakageSummary::span(std::uint32_t l, std::uint32_t r) {
    if (l > r)
        throw std::invalid_argument("span needs l <= r");
    BreakageSummary s;
    s.none_ = false;
    s.l_ = l;
    s.r_ = r;
    return s;
}

BreakageSummary BreakageSummary::reflected(std::uint32_t width) const {
    if (none_)
        return *this;
    return span(width - 1 - r_, width - 1 - l_);
}

std::string BreakageSummary::to_string() const {
    if (none_)
        return "none";
    return "span(" + std::to_string(l_) + "," + std::to_string(r_) + ")";
}

BreakageSummary summarize(const ThreadPattern& p) {
    if (no_broken_thread(p))
        return BreakageSummary::none();
    return BreakageSummary::span(lbt(p), rbt(p));
}

template <NumberMode M>
SummaryDistribution<M>::SummaryDistribution(std::uint32_t width, std::vector<value_type> entries) : width_(width) {
    std::map<BreakageSummary, Number<M>> merged;
    for (auto& [s, prob] : entries) {
        if (prob < 0)
            throw std::invalid_argument("negative probability for " + s.to_string());
        if (!s.is_none() && s.right() >= width)
            throw std::invalid_argument(s.to_string() + " outside width " + std::to_string(width));
        merged[s] += prob;
    }
    for (auto& [s, prob] : merged)
        if (prob != 0)
            entries_.emplace_back(s, std::move(prob));

    const Number<M> sum = total();
    if constexpr (M == NumberMode::Exact) {
        if (sum != 1)
            throw std::invalid_argument("distribution sums to " + to_string(sum));
    } else {
        if (std::fabs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("distribution sums to " + format_precise(sum));
    }
}

template <NumberMode M>
Number<M> SummaryDistribution<M>::probability(const BreakageSummary& s) const {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                                     [](const value_type& e, const BreakageSummary& key) { return e.first < key; });
    if (it == entries_.end() || it->first != s)
        return Number<M>(0);
    return it->second;
}

template <NumberMode M>
Number<M> SummaryDistribution<M>::total() const {
    Number<M> sum(0);
    for (const auto& e : entries_)
        sum += e.second;
    return sum;
}

template <NumberMode M>
SummaryDistribution<M> SummaryDistribution<M>::reflected() const {
    std::vector<value_type> mirrored;
    mirrored.reserve(entries_.size());
    for (const auto& [s, prob] : entries_)
        mirrored.emplace_back(s.reflected(width_), prob);
    return SummaryDistribution(width_, std::move(mirrored));
}

void for_each_pattern(std::uint32_t width, std::uint32_t cap, const std::function<void(std::uint64_t)>& visit) {
    if (width > cap || width >= 63)
        throw std::invalid_argument("width " + std::to_string(width) + " exceeds the enumeration cap of " +
                                    std::to_string(cap) + "; use extremes_distribution for wide mules");
    const std::uint64_t count = std::uint64_t{1} << width;
    for (std::uint64_t mask = 0; mask < count; ++mask)
        visit(mask);
}

namespace {

void require_fixed_n(std::uint32_t width, std::uint32_t n) {
    if (n < 1 || n > width)
        throw std::invalid_argument("fixed-N model needs 1 <= N <= width (N=" + std::to_string(n) +
                                    ", width=" + std::to_string(width) + ")");
}

// Visits every n-subset of 0..width-1 as a bitmask, in lexicographic order of positions.
template <class Visit>
void for_each_subset(std::uint32_t width, std::uint32_t n, Visit visit) {
    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i)
        idx[i] = i;
    while (true) {
        std::uint64_t mask = 0;
        for (auto i : idx)
            mask |= std::uint64_t{1} << i;
        visit(mask);
        std::int64_t i = static_cast<std::int64_t>(n) - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == width - n + static_cast<std::uint32_t>(i))
            --i;
        if (i < 0)
            return;
        ++idx[static_cast<std::size_t>(i)];
        for (auto j = static_cast<std::size_t>(i) + 1; j < n; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

// p^k (1-p)^(width-k) for k = 0..width.
template <NumberMode M>
std::vector<Number<M>> weights_by_count(std::uint32_t width, const Prob& p) {
    const Number<M> broken = p.as<M>();
    const Number<M> fine = Number<M>(1) - broken;
    std::vector<Number<M>> w(width + 1);
    for (std::uint32_t k = 0; k <= width; ++k)
        w[k] = power<M>(broken, k) * power<M>(fine, width - k);
    return w;
}

} // namespace

template <NumberMode M>
std::vector<std::pair<ThreadPattern, Number<M>>> fixed_n_patterns(std::uint32_t width, std::uint32_t n) {
    require_fixed_n(width, n);
    if (width >= 63)
        throw std::invalid_argument("fixed-N pattern enumeration needs width < 63");
    const Number<M> weight = Number<M>(1) / binomial<M>(width, n);
    std::vector<std::pair<ThreadPattern, Number<M>>> out;
    for_each_subset(width, n, [&](std::uint64_t mask) { out.emplace_back(ThreadPattern::from_mask(width, mask), weight); });
    return out;
}

template <NumberMode M>
std::vector<std::pair<ThreadPattern, Number<M>>> bernoulli_patterns(std::uint32_t width, const Prob& p,
                                                                    std::uint32_t cap) {
    const auto w = weights_by_count<M>(width, p);
    std::vector<std::pair<ThreadPattern, Number<M>>> out;
    for_each_pattern(width, cap, [&](std::uint64_t mask) {
        const auto& weight = w[static_cast<std::size_t>(__builtin_popcountll(mask))];
        if (weight != 0)
            out.emplace_back(ThreadPattern::from_mask(width, mask), weight);
    });
    return out;
}

template <NumberMode M>
SummaryDistribution<M> fixed_n_distribution(std::uint32_t width, std::uint32_t n) {
    require_fixed_n(width, n);
    std::vector<typename SummaryDistribution<M>::value_type> entries;
    if (n == 1) {
        for (std::uint32_t k = 0; k < width; ++k)
            entries.emplace_back(BreakageSummary::span(k, k), Number<M>(1) / Number<M>(width));
        return SummaryDistribution<M>(width, std::move(entries));
    }
    for (std::uint32_t l = 0; l < width; ++l)
        for (std::uint32_t r = l + n - 1; r < width; ++r)
            entries.emplace_back(BreakageSummary::span(l, r), binomial_ratio<M>(r - l - 1, n - 2, width, n));
    return SummaryDistribution<M>(width, std::move(entries));
}

template <NumberMode M>
SummaryDistribution<M> fixed_n_distribution_enumerated(std::uint32_t width, std::uint32_t n) {
    std::vector<typename SummaryDistribution<M>::value_type> entries;
    for (auto& [pattern, weight] : fixed_n_patterns<M>(width, n))
        entries.emplace_back(summarize(pattern), std::move(weight));
    return SummaryDistribution<M>(width, std::move(entries));
}

template <NumberMode M>
SummaryDistribution<M> bernoulli_distribution(std::uint32_t width, const Prob& p, std::uint32_t cap) {
    // Count patterns per (summary, #broken) first; every pattern is summarised individually.
    std::map<std::pair<BreakageSummary, std::uint32_t>, std::uint64_t> counts;
    for_each_pattern(width, cap, [&](std::uint64_t mask) {
        const auto pattern = ThreadPattern::from_mask(width, mask);
        ++counts[{summarize(pattern), count_broken(pattern)}];
    });
    const auto w = weights_by_count<M>(width, p);
    std::vector<typename SummaryDistribution<M>::value_type> entries;
    for (const auto& [key, count] : counts)
        entries.emplace_back(key.first, Number<M>(count) * w[key.second]);
    return SummaryDistribution<M>(width, std::move(entries));
}

template <NumberMode M>
SummaryDistribution<M> extremes_distribution(std::uint32_t width, const Prob& p) {
    if (width < 1)
        throw std::invalid_argument("extremes distribution needs width >= 1");
    const Number<M> broken = p.as<M>();
    const Number<M> fine = Number<M>(1) - broken;

    std::vector<typename SummaryDistribution<M>::value_type> entries;
    entries.emplace_back(BreakageSummary::none(), power<M>(fine, width));
    const Number<M> single = power<M>(fine, width - 1) * broken;
    const Number<M> pair = broken * broken;
    for (std::uint32_t l = 0; l < width; ++l) {
        entries.emplace_back(BreakageSummary::span(l, l), single);
        // The l + (width-1-r) threads outside [l, r] are fine, threads strictly inside are free.
        for (std::uint32_t r = l + 1; r < width; ++r)
            entries.emplace_back(BreakageSummary::span(l, r), power<M>(fine, l + (width - 1 - r)) * pair);
    }
    return SummaryDistribution<M>(width, std::move(entries));
}

template class SummaryDistribution<NumberMode::Exact>;
template class SummaryDistribution<NumberMode::Float>;

#define MULEWALK_INSTANTIATE(M)                                                                                   \
    template std::vector<std::pair<ThreadPattern, Number<M>>> fixed_n_patterns<M>(std::uint32_t, std::uint32_t);   \
    template std::vector<std::pair<ThreadPattern, Number<M>>> bernoulli_patterns<M>(std::uint32_t, const Prob&,     \
                                                                                    std::uint32_t);                \
    template SummaryDistribution<M> fixed_n_distribution<M>(std::uint32_t, std::uint32_t);                         \
    template SummaryDistribution<M> fixed_n_distribution_enumerated<M>(std::uint32_t, std::uint32_t);              \
    template SummaryDistribution<M> bernoulli_distribution<M>(std::uint32_t, const Prob&, std::uint32_t);          \
    template SummaryDistribution<M> extremes_distribution<M>(std::uint32_t, const Prob&);

MULEWALK_INSTANTIATE(NumberMode::Exact)
MULEWALK_INSTANTIATE(NumberMode::Float)
#undef MULEWALK_INSTANTIATE

} // namespace mulewalk
