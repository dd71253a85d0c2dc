#include "mulewalk/piecer.hpp"

#include <algorithm>
#include <stdexcept>

namespace mulewalk {

namespace {

// Writes the distinct choices into out (at most two), sorted; returns how many.
std::size_t resolve_into(std::uint32_t pos, const BreakageSummary& s, std::uint32_t width, RoundChoice (&out)[2]) {
    if (pos >= width)
        throw std::invalid_argument("position " + std::to_string(pos) + " outside width " + std::to_string(width));
    if (s.is_none()) {
        out[0] = {0, pos};
        return 1;
    }
    const std::uint32_t l = s.left();
    const std::uint32_t r = s.right();
    if (r >= width)
        throw std::invalid_argument(s.to_string() + " outside width " + std::to_string(width));

    if (l < pos && pos < r) {
        out[0] = {pos + r - 2 * l, r};
        out[1] = {2 * r - pos - l, l};
        if (out[1] < out[0])
            std::swap(out[0], out[1]);
        return 1 + static_cast<std::size_t>(out[0] != out[1]);
    }
    // Both one-sided guards hold only when l == r == pos, and then agree.
    out[0] = pos <= l ? RoundChoice{r - pos, r} : RoundChoice{pos - l, l};
    return 1;
}

} // namespace

std::vector<RoundChoice> resolve_round(std::uint32_t pos, const BreakageSummary& s, std::uint32_t width) {
    RoundChoice buf[2];
    const std::size_t n = resolve_into(pos, s, width, buf);
    return {buf, buf + n};
}

std::string ModelLabel::to_string() const {
    switch (kind) {
    case Kind::FixedN:
        return "fixed-n(" + std::to_string(n_broken) + ")";
    case Kind::Natural:
        return "natural(" + mulewalk::to_string(prob.exact()) + ")";
    case Kind::NaturalOpt:
        return "natural-opt(" + mulewalk::to_string(prob.exact()) + ")";
    }
    return "?";
}

template <NumberMode M>
MuleModel<M> fixed_n_model(std::uint32_t width, std::uint32_t n) {
    return {width, fixed_n_distribution<M>(width, n), {ModelLabel::Kind::FixedN, n, Prob()}};
}

template <NumberMode M>
MuleModel<M> natural_model(std::uint32_t width, const Prob& p, std::uint32_t cap) {
    return {width, bernoulli_distribution<M>(width, p, cap), {ModelLabel::Kind::Natural, 0, p}};
}

template <NumberMode M>
MuleModel<M> natural_opt_model(std::uint32_t width, const Prob& p) {
    return {width, extremes_distribution<M>(width, p), {ModelLabel::Kind::NaturalOpt, 0, p}};
}

template <NumberMode M>
ValueTable<M> bellman_step(const MuleModel<M>& model, const ValueTable<M>& previous) {
    const std::uint32_t width = model.width;
    if (previous.values.size() != width)
        throw std::invalid_argument("value table does not match model width");

    ValueTable<M> next{previous.horizon + 1, std::vector<Number<M>>(width, Number<M>(0))};
    Number<M> best(0);
    Number<M> candidate(0);
    for (std::uint32_t pos = 0; pos < width; ++pos) {
        Number<M>& acc = next.values[pos];
        for (const auto& [summary, prob] : model.distribution) {
            bool first = true;
            RoundChoice choices[2];
            const std::size_t count = resolve_into(pos, summary, width, choices);
            for (std::size_t i = 0; i < count; ++i) {
                const RoundChoice& c = choices[i];
                candidate = previous.values[c.end_pos] + Number<M>(c.distance);
                if (first || candidate < best)
                    best = candidate;
                first = false;
            }
            acc += prob * best;
        }
    }
    return next;
}

template <NumberMode M>
ValueTable<M> value_table(const MuleModel<M>& model, std::uint32_t horizon) {
    ValueTable<M> table{0, std::vector<Number<M>>(model.width, Number<M>(0))};
    while (table.horizon < horizon)
        table = bellman_step(model, table);
    return table;
}

template <NumberMode M>
Number<M> value_iteration(const MuleModel<M>& model, std::uint32_t init_pos, std::uint32_t max_rounds) {
    return per_round_values(model, init_pos, {max_rounds}).front();
}

template <NumberMode M>
std::vector<Number<M>> per_round_values(const MuleModel<M>& model, std::uint32_t init_pos,
                                        const std::vector<std::uint32_t>& horizons) {
    if (horizons.empty())
        throw std::invalid_argument("no horizons given");
    if (!std::is_sorted(horizons.begin(), horizons.end()))
        throw std::invalid_argument("horizons must be ascending");
    if (horizons.front() < 1)
        throw std::invalid_argument("horizon must be at least 1");
    if (init_pos >= model.width)
        throw std::invalid_argument("initial position " + std::to_string(init_pos) + " outside width " +
                                    std::to_string(model.width));

    std::vector<Number<M>> out;
    ValueTable<M> table{0, std::vector<Number<M>>(model.width, Number<M>(0))};
    for (std::uint32_t h : horizons) {
        while (table.horizon < h)
            table = bellman_step(model, table);
        Number<M> v = table.values[init_pos] / (Number<M>(h) * Number<M>(model.width));
        out.push_back(std::move(v));
    }
    return out;
}

#define MULEWALK_INSTANTIATE(M)                                                                               \
    template MuleModel<M> fixed_n_model<M>(std::uint32_t, std::uint32_t);                                      \
    template MuleModel<M> natural_model<M>(std::uint32_t, const Prob&, std::uint32_t);                         \
    template MuleModel<M> natural_opt_model<M>(std::uint32_t, const Prob&);                                    \
    template ValueTable<M> bellman_step<M>(const MuleModel<M>&, const ValueTable<M>&);                         \
    template ValueTable<M> value_table<M>(const MuleModel<M>&, std::uint32_t);                                 \
    template Number<M> value_iteration<M>(const MuleModel<M>&, std::uint32_t, std::uint32_t);                  \
    template std::vector<Number<M>> per_round_values<M>(const MuleModel<M>&, std::uint32_t,                    \
                                                        const std::vector<std::uint32_t>&);

MULEWALK_INSTANTIATE(NumberMode::Exact)
MULEWALK_INSTANTIATE(NumberMode::Float)
#undef MULEWALK_INSTANTIATE

} // namespace mulewalk
