#include "mulewalk/simulate.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace mulewalk {

namespace {

using Rng = std::mt19937_64;

class StrokeSampler {
public:
    explicit StrokeSampler(const MuleModel<NumberMode::Float>& model)
        : model_(model), positions_(model.width), threads_(model.width, Thread::fine) {
        std::iota(positions_.begin(), positions_.end(), 0U);
        if (model.label.kind == ModelLabel::Kind::NaturalOpt) {
            std::vector<double> weights;
            for (const auto& [summary, prob] : model.distribution) {
                summaries_.push_back(summary);
                weights.push_back(prob);
            }
            pick_ = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
        }
        break_prob_ = model.label.prob.as<NumberMode::Float>();
    }

    BreakageSummary operator()(Rng& rng) {
        switch (model_.label.kind) {
        case ModelLabel::Kind::FixedN:
            return fixed_n(rng);
        case ModelLabel::Kind::Natural:
            return natural(rng);
        case ModelLabel::Kind::NaturalOpt:
            return summaries_[pick_(rng)];
        }
        throw std::logic_error("unknown model kind");
    }

private:
    BreakageSummary fixed_n(Rng& rng) {
        // Partial Fisher-Yates: the first n slots become a uniform n-subset.
        const std::uint32_t n = model_.label.n_broken;
        std::uint32_t lo = model_.width;
        std::uint32_t hi = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            std::uniform_int_distribution<std::uint32_t> slot(i, model_.width - 1);
            std::swap(positions_[i], positions_[slot(rng)]);
            lo = std::min(lo, positions_[i]);
            hi = std::max(hi, positions_[i]);
        }
        return BreakageSummary::span(lo, hi);
    }

    BreakageSummary natural(Rng& rng) {
        for (auto& t : threads_)
            t = unit_(rng) < break_prob_ ? Thread::broken : Thread::fine;
        return summarize(ThreadPattern(threads_));
    }

    const MuleModel<NumberMode::Float>& model_;
    std::vector<std::uint32_t> positions_;
    std::vector<Thread> threads_;
    std::vector<BreakageSummary> summaries_;
    std::discrete_distribution<std::size_t> pick_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    double break_prob_ = 0.0;
};

} // namespace

SimulationResult simulate_walks(const MuleModel<NumberMode::Float>& model, std::uint32_t init_pos,
                                std::uint32_t max_rounds, std::uint64_t episodes, std::uint64_t seed) {
    if (episodes < 2)
        throw std::invalid_argument("need at least two episodes");
    if (init_pos >= model.width)
        throw std::invalid_argument("initial position outside the mule");

    // tables[k] = optimal values with k rounds remaining.
    std::vector<ValueTable<NumberMode::Float>> tables{{0, std::vector<double>(model.width, 0.0)}};
    for (std::uint32_t k = 1; k < max_rounds; ++k)
        tables.push_back(bellman_step(model, tables.back()));

    Rng rng(seed);
    StrokeSampler sample(model);
    const double scale = static_cast<double>(max_rounds) * model.width;
    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t e = 0; e < episodes; ++e) {
        std::uint32_t pos = init_pos;
        std::uint64_t walked = 0;
        for (std::uint32_t round = 0; round < max_rounds; ++round) {
            const auto& future = tables[max_rounds - round - 1].values;
            const auto choices = resolve_round(pos, sample(rng), model.width);
            const RoundChoice* best = &choices.front();
            for (const auto& c : choices)
                if (c.distance + future[c.end_pos] < best->distance + future[best->end_pos])
                    best = &c;
            walked += best->distance;
            pos = best->end_pos;
        }
        const double x = static_cast<double>(walked) / scale;
        const double delta = x - mean;
        mean += delta / static_cast<double>(e + 1);
        m2 += delta * (x - mean);
    }
    const double variance = m2 / static_cast<double>(episodes - 1);
    return {mean, std::sqrt(variance / static_cast<double>(episodes)), episodes};
}

} // namespace mulewalk
