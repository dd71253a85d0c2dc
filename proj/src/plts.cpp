#include "mulewalk/plts.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace mulewalk {

std::string Label::to_string() const {
    return kind == Kind::Threads ? "threads" : "walk(" + std::to_string(distance) + ")";
}

template <NumberMode M>
void Plts<M>::validate() const {
    const auto check_target = [&](const Target& t) {
        const std::size_t bound = t.kind == Target::Kind::Prob ? prob_states.size() : action_states.size();
        if (t.index >= bound)
            throw std::invalid_argument("dangling transition target");
    };
    for (const auto& dist : prob_states) {
        if (dist.size() < 2)
            throw std::invalid_argument("explicit probabilistic state with fewer than two outcomes");
        Number<M> sum(0);
        for (const auto& [action, mass] : dist) {
            if (action >= action_states.size())
                throw std::invalid_argument("distribution over a missing action state");
            if (!(mass > 0))
                throw std::invalid_argument("non-positive probability in distribution");
            sum += mass;
        }
        if constexpr (M == NumberMode::Exact) {
            if (sum != 1)
                throw std::invalid_argument("distribution does not sum to 1");
        } else if (std::fabs(sum - 1.0) > 1e-9) {
            throw std::invalid_argument("distribution does not sum to 1");
        }
    }
    for (const auto& transitions : action_states)
        for (const auto& [label, target] : transitions)
            check_target(target);
    check_target(initial);
}

namespace {

// One outcome of a stroke: a pattern (or summary) and its probability.
template <NumberMode M>
struct Outcome {
    BreakageSummary summary;
    Number<M> weight;
};

template <NumberMode M>
std::vector<Outcome<M>> stroke_outcomes(const MuleModel<M>& model, std::uint32_t cap) {
    std::vector<Outcome<M>> out;
    const auto add_patterns = [&](auto patterns) {
        for (auto& [pattern, weight] : patterns)
            out.push_back({summarize(pattern), std::move(weight)});
    };
    switch (model.label.kind) {
    case ModelLabel::Kind::FixedN:
        if (model.width > cap)
            throw std::invalid_argument("width " + std::to_string(model.width) + " exceeds the enumeration cap of " +
                                        std::to_string(cap));
        add_patterns(fixed_n_patterns<M>(model.width, model.label.n_broken));
        break;
    case ModelLabel::Kind::Natural:
        add_patterns(bernoulli_patterns<M>(model.width, model.label.prob, cap));
        break;
    case ModelLabel::Kind::NaturalOpt:
        for (const auto& [summary, prob] : model.distribution)
            out.push_back({summary, prob});
        break;
    }
    return out;
}

} // namespace

template <NumberMode M>
Plts<M> build_plts(const MuleModel<M>& model, std::uint32_t init_pos, std::uint32_t cap) {
    if (init_pos >= model.width)
        throw std::invalid_argument("initial position outside the mule");
    const auto outcomes = stroke_outcomes(model, cap);

    Plts<M> plts;
    struct Stage {
        std::uint32_t first_before = 0; // A(pos, k) = first_before + k
        std::uint32_t first_after = 0;  // B(pos, k) = first_after + k
        Target entry;
    };
    std::map<std::uint32_t, Stage> stages;
    std::deque<std::uint32_t> pending;

    const auto ensure = [&](std::uint32_t pos) -> Target {
        if (auto it = stages.find(pos); it != stages.end())
            return it->second.entry;
        Stage stage;
        const auto n = static_cast<std::uint32_t>(outcomes.size());
        stage.first_before = static_cast<std::uint32_t>(plts.action_states.size());
        stage.first_after = stage.first_before + n;
        plts.action_states.resize(plts.action_states.size() + 2 * static_cast<std::size_t>(n));
        for (std::uint32_t k = 0; k < n; ++k)
            plts.action_states[stage.first_before + k].push_back({Label::threads(), Target::dirac(stage.first_after + k)});
        if (n == 1) {
            stage.entry = Target::dirac(stage.first_before);
        } else {
            typename Plts<M>::Distribution dist;
            for (std::uint32_t k = 0; k < n; ++k)
                dist.emplace_back(stage.first_before + k, outcomes[k].weight);
            stage.entry = Target::prob(static_cast<std::uint32_t>(plts.prob_states.size()));
            plts.prob_states.push_back(std::move(dist));
        }
        stages.emplace(pos, stage);
        pending.push_back(pos);
        return stage.entry;
    };

    plts.initial = ensure(init_pos);
    while (!pending.empty()) {
        const std::uint32_t pos = pending.front();
        pending.pop_front();
        const std::uint32_t first_after = stages.at(pos).first_after;
        for (std::uint32_t k = 0; k < outcomes.size(); ++k) {
            for (const RoundChoice& c : resolve_round(pos, outcomes[k].summary, model.width)) {
                const Target next = ensure(c.end_pos);
                plts.action_states[first_after + k].push_back({Label::walk(c.distance), next});
            }
        }
    }
    return plts;
}

template <NumberMode M>
Plts<M> disjoint_union(const Plts<M>& a, const Plts<M>& b) {
    Plts<M> u = a;
    const auto prob_offset = static_cast<std::uint32_t>(a.prob_states.size());
    const auto action_offset = static_cast<std::uint32_t>(a.action_states.size());
    const auto shift = [&](Target t) {
        t.index += t.kind == Target::Kind::Prob ? prob_offset : action_offset;
        return t;
    };
    for (const auto& dist : b.prob_states) {
        auto shifted = dist;
        for (auto& entry : shifted)
            entry.first += action_offset;
        u.prob_states.push_back(std::move(shifted));
    }
    for (const auto& transitions : b.action_states) {
        auto shifted = transitions;
        for (auto& entry : shifted)
            entry.second = shift(entry.second);
        u.action_states.push_back(std::move(shifted));
    }
    return u;
}

namespace {

// Masses as comparable keys: exact rationals, or multiples of 1e-9.
template <NumberMode M>
using MassKey = std::conditional_t<M == NumberMode::Exact, Rational, long long>;

template <NumberMode M>
MassKey<M> mass_key(const Number<M>& mass) {
    if constexpr (M == NumberMode::Exact)
        return mass;
    else
        return std::llround(mass * 1e9);
}

template <NumberMode M>
using Lifted = std::vector<std::pair<std::uint32_t, MassKey<M>>>; // action block -> mass, sorted by block

// Refinement state shared by bisimulation, bisimilarity and quotienting.
template <NumberMode M>
class Refiner {
public:
    explicit Refiner(const Plts<M>& plts) : plts_(plts), action_block_(plts.action_states.size(), 0) {
        blocks_ = plts.action_states.empty() ? 0 : 1;
        run();
    }

    // Class of a target's lifted distribution under the final partition.
    std::uint32_t target_class(const Target& t) { return lifted_id(lift(t)); }

    Lifted<M> lift(const Target& t) const {
        if (t.kind == Target::Kind::Dirac)
            return {{action_block_[t.index], mass_key<M>(Number<M>(1))}};
        std::map<std::uint32_t, Number<M>> mass;
        for (const auto& [action, p] : plts_.prob_states[t.index])
            mass[action_block_[action]] += p;
        Lifted<M> out;
        for (const auto& [block, p] : mass)
            out.emplace_back(block, mass_key<M>(p));
        return out;
    }

    const std::vector<std::uint32_t>& action_block() const { return action_block_; }
    std::uint32_t action_block_count() const { return blocks_; }
    const std::vector<std::uint32_t>& history() const { return history_; }

private:
    std::uint32_t lifted_id(const Lifted<M>& key) {
        const auto [it, inserted] = ids_.try_emplace(key, static_cast<std::uint32_t>(ids_.size()));
        return it->second;
    }

    void run() {
        using Signature = std::pair<std::uint32_t, std::vector<std::pair<Label, std::uint32_t>>>;
        while (true) {
            ids_.clear();
            std::vector<std::uint32_t> prob_class(plts_.prob_states.size());
            for (std::uint32_t p = 0; p < plts_.prob_states.size(); ++p)
                prob_class[p] = target_class(Target::prob(p));

            std::map<Signature, std::uint32_t> numbering;
            std::vector<std::uint32_t> next(plts_.action_states.size());
            for (std::uint32_t a = 0; a < plts_.action_states.size(); ++a) {
                Signature sig{action_block_[a], {}};
                for (const auto& [label, target] : plts_.action_states[a]) {
                    const std::uint32_t cls =
                        target.kind == Target::Kind::Prob ? prob_class[target.index] : target_class(target);
                    sig.second.emplace_back(label, cls);
                }
                std::sort(sig.second.begin(), sig.second.end());
                sig.second.erase(std::unique(sig.second.begin(), sig.second.end()), sig.second.end());
                const auto [it, inserted] = numbering.try_emplace(std::move(sig), static_cast<std::uint32_t>(numbering.size()));
                next[a] = it->second;
            }
            const auto count = static_cast<std::uint32_t>(numbering.size());
            history_.push_back(count);
            const bool stable = count == blocks_;
            action_block_ = std::move(next);
            blocks_ = count;
            if (stable)
                break;
        }
        ids_.clear();
    }

    const Plts<M>& plts_;
    std::vector<std::uint32_t> action_block_;
    std::uint32_t blocks_ = 0;
    std::vector<std::uint32_t> history_;
    std::map<Lifted<M>, std::uint32_t> ids_;
};

} // namespace

template <NumberMode M>
Partition coarsest_bisimulation(const Plts<M>& plts) {
    Refiner<M> refiner(plts);
    Partition out;
    out.action_block = refiner.action_block();
    out.action_block_count = refiner.action_block_count();
    out.action_blocks_per_round = refiner.history();

    std::map<Lifted<M>, std::uint32_t> numbering;
    for (std::uint32_t p = 0; p < plts.prob_states.size(); ++p) {
        const auto [it, inserted] =
            numbering.try_emplace(refiner.lift(Target::prob(p)), static_cast<std::uint32_t>(numbering.size()));
        out.prob_block.push_back(it->second);
    }
    out.prob_block_count = static_cast<std::uint32_t>(numbering.size());
    return out;
}

template <NumberMode M>
bool bisimilar(const Plts<M>& a, const Plts<M>& b) {
    const Plts<M> u = disjoint_union(a, b);
    Refiner<M> refiner(u);
    Target b_initial = b.initial;
    b_initial.index += static_cast<std::uint32_t>(b.initial.kind == Target::Kind::Prob ? a.prob_states.size()
                                                                                        : a.action_states.size());
    return refiner.lift(u.initial) == refiner.lift(b_initial);
}

template <NumberMode M>
Plts<M> quotient(const Plts<M>& plts) {
    Refiner<M> refiner(plts);
    const auto& block = refiner.action_block();

    // Representative (smallest member) per action block, blocks already numbered by it.
    std::vector<std::optional<std::uint32_t>> representative(refiner.action_block_count());
    for (std::uint32_t a = 0; a < block.size(); ++a)
        if (!representative[block[a]])
            representative[block[a]] = a;

    Plts<M> q;
    q.action_states.resize(refiner.action_block_count());
    std::map<Lifted<M>, std::uint32_t> prob_index;

    const auto quotient_target = [&](const Target& t) -> Target {
        if (t.kind == Target::Kind::Dirac)
            return Target::dirac(block[t.index]);
        std::map<std::uint32_t, Number<M>> mass;
        for (const auto& [action, p] : plts.prob_states[t.index])
            mass[block[action]] += p;
        if (mass.size() == 1)
            return Target::dirac(mass.begin()->first);
        const Lifted<M> key = refiner.lift(t);
        if (auto it = prob_index.find(key); it != prob_index.end())
            return Target::prob(it->second);
        const auto index = static_cast<std::uint32_t>(q.prob_states.size());
        prob_index.emplace(key, index);
        typename Plts<M>::Distribution dist(mass.begin(), mass.end());
        q.prob_states.push_back(std::move(dist));
        return Target::prob(index);
    };

    // Explicit states first, in original order, so quotient prob states are numbered by smallest member.
    for (std::uint32_t p = 0; p < plts.prob_states.size(); ++p)
        quotient_target(Target::prob(p));
    for (std::uint32_t b = 0; b < representative.size(); ++b) {
        auto& out = q.action_states[b];
        for (const auto& [label, target] : plts.action_states[*representative[b]])
            out.emplace_back(label, quotient_target(target));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    q.initial = quotient_target(plts.initial);
    return q;
}

template <NumberMode M>
std::string export_text(const Plts<M>& plts) {
    const auto offset = static_cast<std::uint32_t>(plts.prob_states.size());
    const auto state_of = [&](const Target& t) {
        return t.kind == Target::Kind::Prob ? t.index : offset + t.index;
    };
    const auto mass_text = [](const Number<M>& m) {
        if constexpr (M == NumberMode::Exact)
            return to_string(m);
        else
            return format_precise(m);
    };
    std::string out = "I " + std::to_string(state_of(plts.initial)) + "\n";
    for (std::uint32_t p = 0; p < plts.prob_states.size(); ++p)
        for (const auto& [action, mass] : plts.prob_states[p])
            out += "P " + std::to_string(p) + " " + mass_text(mass) + " " + std::to_string(offset + action) + "\n";
    for (std::uint32_t a = 0; a < plts.action_states.size(); ++a)
        for (const auto& [label, target] : plts.action_states[a])
            out += "T " + std::to_string(offset + a) + " " + label.to_string() + " " +
                   std::to_string(state_of(target)) + "\n";
    return out;
}

template <NumberMode M>
Number<M> plts_value(const Plts<M>& plts, std::uint32_t rounds) {
    const std::size_t n = plts.action_states.size();
    std::vector<Number<M>> previous(n, Number<M>(0)); // values with one round fewer remaining
    std::vector<Number<M>> current(n);

    for (std::uint32_t k = 1; k <= rounds; ++k) {
        std::vector<char> state(n, 0); // 0 = unvisited, 1 = in progress, 2 = done
        std::function<const Number<M>&(std::uint32_t)> action_value;
        const auto target_value = [&](const Target& t, bool same_round) -> Number<M> {
            const auto value_of = [&](std::uint32_t a) -> Number<M> {
                return same_round ? action_value(a) : previous[a];
            };
            if (t.kind == Target::Kind::Dirac)
                return value_of(t.index);
            Number<M> sum(0);
            for (const auto& [a, mass] : plts.prob_states[t.index])
                sum += mass * value_of(a);
            return sum;
        };
        action_value = [&](std::uint32_t a) -> const Number<M>& {
            if (state[a] == 2)
                return current[a];
            if (state[a] == 1)
                throw std::invalid_argument("cycle of threads transitions");
            state[a] = 1;
            std::optional<Number<M>> best;
            for (const auto& [label, target] : plts.action_states[a]) {
                Number<M> v = label.kind == Label::Kind::Walk
                                  ? Number<M>(label.distance) + target_value(target, false)
                                  : target_value(target, true);
                if (!best || v < *best)
                    best = std::move(v);
            }
            if (!best)
                throw std::invalid_argument("action state without transitions");
            current[a] = std::move(*best);
            state[a] = 2;
            return current[a];
        };
        for (std::uint32_t a = 0; a < n; ++a)
            action_value(a);
        std::swap(previous, current);
    }
    if (rounds == 0)
        return Number<M>(0);
    // previous now holds the values with `rounds` remaining.
    if (plts.initial.kind == Target::Kind::Dirac)
        return previous[plts.initial.index];
    Number<M> sum(0);
    for (const auto& [a, mass] : plts.prob_states[plts.initial.index])
        sum += mass * previous[a];
    return sum;
}

template struct Plts<NumberMode::Exact>;
template struct Plts<NumberMode::Float>;

#define MULEWALK_INSTANTIATE(M)                                                          \
    template Plts<M> build_plts<M>(const MuleModel<M>&, std::uint32_t, std::uint32_t);     \
    template Plts<M> disjoint_union<M>(const Plts<M>&, const Plts<M>&);                   \
    template Partition coarsest_bisimulation<M>(const Plts<M>&);                          \
    template bool bisimilar<M>(const Plts<M>&, const Plts<M>&);                           \
    template Plts<M> quotient<M>(const Plts<M>&);                                         \
    template std::string export_text<M>(const Plts<M>&);                                  \
    template Number<M> plts_value<M>(const Plts<M>&, std::uint32_t);

MULEWALK_INSTANTIATE(NumberMode::Exact)
MULEWALK_INSTANTIATE(NumberMode::Float)
#undef MULEWALK_INSTANTIATE

} // namespace mulewalk
