#pragma once

#include <cstdint>

#include "mulewalk/piecer.hpp"

namespace mulewalk {

struct SimulationResult {
    double mean_relative = 0.0;  // mean over episodes of total distance / (rounds * width)
    double standard_error = 0.0; // of the mean
    std::uint64_t episodes = 0;
};

/// Monte Carlo estimate of value_iteration(model, init_pos, max_rounds).
///
/// Each stroke is sampled from the model's generative description rather than
/// its summary distribution: FixedN draws n distinct positions, Natural breaks
/// each thread independently, NaturalOpt draws from the extremes marginal. The
/// piecer picks, per round, the choice minimising distance plus the optimal
/// value of the remaining rounds.
SimulationResult simulate_walks(const MuleModel<NumberMode::Float>& model, std::uint32_t init_pos,
                                std::uint32_t max_rounds, std::uint64_t episodes, std::uint64_t seed);

} // namespace mulewalk
