#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mulewalk/breakage.hpp"
#include "mulewalk/closed_form.hpp"
#include "mulewalk/harness.hpp"
#include "mulewalk/piecer.hpp"
#include "mulewalk/plts.hpp"
#include "mulewalk/simulate.hpp"

namespace py = pybind11;
using namespace mulewalk;

namespace {

NumberMode parse_mode(const std::string& mode) {
    if (mode == "exact")
        return NumberMode::Exact;
    if (mode == "float")
        return NumberMode::Float;
    throw py::value_error("mode must be 'exact' or 'float'");
}

// Accepts "a/b", decimals, Fraction, int or float (via str()).
Prob to_prob(const py::object& value) { return Prob::from_string(py::str(value).cast<std::string>()); }

py::object to_py(double x) { return py::float_(x); }

py::object to_py(const Rational& x) {
    static const py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_string(x));
}

py::object summary_key(const BreakageSummary& s) {
    if (s.is_none())
        return py::none();
    return py::make_tuple(s.left(), s.right());
}

template <NumberMode M>
py::list distribution_list(const SummaryDistribution<M>& d) {
    py::list out;
    for (const auto& [s, p] : d)
        out.append(py::make_tuple(summary_key(s), to_py(p)));
    return out;
}

template <NumberMode M>
MuleModel<M> make_model(const std::string& kind, std::uint32_t width, std::optional<std::uint32_t> n_broken,
                        const py::object& prob) {
    if (kind == "fixed-n") {
        if (!n_broken)
            throw py::value_error("fixed-n needs n_broken");
        return fixed_n_model<M>(width, *n_broken);
    }
    if (prob.is_none())
        throw py::value_error(kind + " needs prob");
    if (kind == "natural")
        return natural_model<M>(width, to_prob(prob));
    if (kind == "natural-opt")
        return natural_opt_model<M>(width, to_prob(prob));
    throw py::value_error("model must be fixed-n, natural or natural-opt");
}

TableModel table_model(const std::string& kind) {
    if (kind == "fixed-n")
        return TableModel::FixedN;
    if (kind == "natural")
        return TableModel::Natural;
    if (kind == "natural-opt")
        return TableModel::NaturalOpt;
    throw py::value_error("model must be fixed-n, natural or natural-opt");
}

template <NumberMode M>
py::list grid_list(const Grid<M>& grid) {
    py::list rows;
    for (const auto& row : grid.cells) {
        py::list r;
        for (const auto& v : row)
            r.append(to_py(v));
        rows.append(r);
    }
    return rows;
}

template <class F>
py::object dispatch(const std::string& mode, F&& f) {
    return parse_mode(mode) == NumberMode::Exact ? f(std::integral_constant<NumberMode, NumberMode::Exact>{})
                                                 : f(std::integral_constant<NumberMode, NumberMode::Float>{});
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Expected walking distance of a piecer along a spinning mule";

    py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

    m.def(
        "expected_distance",
        [](std::uint32_t width, std::uint32_t n_broken, std::uint32_t pos, const std::string& mode) {
            return dispatch(mode, [&](auto tag) -> py::object {
                const auto d = mulewalk::expected_distance<decltype(tag)::value>({width, n_broken, pos});
                py::dict out;
                out["d1"] = to_py(d.d1);
                out["d2"] = to_py(d.d2);
                out["d3"] = to_py(d.d3);
                out["d4"] = to_py(d.d4);
                out["total"] = to_py(d.total);
                out["relative"] = to_py(d.relative);
                return std::move(out);
            });
        },
        py::arg("width"), py::arg("n_broken"), py::arg("pos"), py::arg("mode") = "float",
        "Single-stroke expected walk with exactly n_broken uniformly placed breaks.");

    m.def(
        "fixed_n_distribution",
        [](std::uint32_t width, std::uint32_t n, const std::string& mode) {
            return dispatch(mode, [&](auto tag) -> py::object {
                return distribution_list(mulewalk::fixed_n_distribution<decltype(tag)::value>(width, n));
            });
        },
        py::arg("width"), py::arg("n"), py::arg("mode") = "float");

    m.def(
        "bernoulli_distribution",
        [](std::uint32_t width, const py::object& prob, const std::string& mode) {
            return dispatch(mode, [&](auto tag) -> py::object {
                return distribution_list(mulewalk::bernoulli_distribution<decltype(tag)::value>(width, to_prob(prob)));
            });
        },
        py::arg("width"), py::arg("prob"), py::arg("mode") = "float");

    m.def(
        "extremes_distribution",
        [](std::uint32_t width, const py::object& prob, const std::string& mode) {
            return dispatch(mode, [&](auto tag) -> py::object {
                return distribution_list(mulewalk::extremes_distribution<decltype(tag)::value>(width, to_prob(prob)));
            });
        },
        py::arg("width"), py::arg("prob"), py::arg("mode") = "float");

    m.def(
        "value_iteration",
        [](const std::string& model, std::uint32_t width, std::uint32_t init, std::uint32_t rounds,
           std::optional<std::uint32_t> n_broken, const py::object& prob, const std::string& mode) {
            return dispatch(mode, [&](auto tag) -> py::object {
                constexpr NumberMode M = decltype(tag)::value;
                const auto built = make_model<M>(model, width, n_broken, prob);
                Number<M> result;
                {
                    py::gil_scoped_release release;
                    result = mulewalk::value_iteration(built, init, rounds);
                }
                return to_py(result);
            });
        },
        py::arg("model"), py::arg("width"), py::arg("init"), py::arg("rounds"), py::arg("n_broken") = py::none(),
        py::arg("prob") = py::none(), py::arg("mode") = "float",
        "Minimal expected walk per round relative to the width over `rounds` strokes.");

    m.def(
        "simulate",
        [](const std::string& model, std::uint32_t width, std::uint32_t init, std::uint32_t rounds,
           std::uint64_t episodes, std::uint64_t seed, std::optional<std::uint32_t> n_broken, const py::object& prob) {
            const auto r = simulate_walks(make_model<NumberMode::Float>(model, width, n_broken, prob), init, rounds,
                                          episodes, seed);
            return py::make_tuple(r.mean_relative, r.standard_error);
        },
        py::arg("model"), py::arg("width"), py::arg("init"), py::arg("rounds"), py::arg("episodes"),
        py::arg("seed") = 1, py::arg("n_broken") = py::none(), py::arg("prob") = py::none(),
        "Monte Carlo estimate as (mean, standard error).");

    m.def(
        "table1",
        [](std::uint32_t width, const std::string& mode) {
            return dispatch(mode, [&](auto tag) -> py::object {
                return grid_list(emit_table1<decltype(tag)::value>(width));
            });
        },
        py::arg("width") = 10000, py::arg("mode") = "float");

    m.def(
        "table",
        [](const std::string& model, std::uint32_t width, std::uint32_t rounds, const std::string& mode) {
            return dispatch(mode, [&](auto tag) -> py::object {
                return grid_list(emit_table<decltype(tag)::value>(table_model(model), width, rounds));
            });
        },
        py::arg("model"), py::arg("width") = 10, py::arg("rounds") = 50, py::arg("mode") = "float",
        "10x6 grid: rows 1..10 (broken threads or prob = k/width), columns pos = 0.0..0.5 of the width.");

    m.def(
        "figure7",
        [](std::uint32_t width, std::uint32_t rounds, std::uint32_t init) {
            py::list out;
            for (const auto& p : emit_figure7<NumberMode::Float>(width, rounds, init))
                out.append(py::make_tuple(to_py(p.prob.exact()), p.relative_distance));
            return out;
        },
        py::arg("width") = 50, py::arg("rounds") = 50, py::arg("init") = 0);

    m.def(
        "day_estimate",
        [](const py::object& prob, std::uint32_t width, std::uint32_t rounds, double mule_width_m,
           double strokes_per_minute, double hours) {
            DayEstimateParams params;
            params.prob = to_prob(prob);
            params.width = width;
            params.max_rounds = rounds;
            params.mule_width_m = mule_width_m;
            params.strokes_per_minute = strokes_per_minute;
            params.hours = hours;
            const auto e = emit_day_estimate(params);
            return py::make_tuple(e.rel_distance, e.km_per_day);
        },
        py::arg("prob") = "1/220", py::arg("width") = 50, py::arg("rounds") = 50, py::arg("mule_width_m") = 46.0,
        py::arg("strokes_per_minute") = 4.0, py::arg("hours") = 10.0, "(relative distance, km per day).");

    m.def(
        "bisim_check",
        [](std::uint32_t width, const py::object& prob, std::uint32_t init) {
            const auto r = run_bisim_check(width, to_prob(prob), init);
            py::dict out;
            out["bisimilar"] = r.bisimilar;
            out["natural_states"] = r.natural_states;
            out["optimized_states"] = r.optimized_states;
            out["natural_quotient_states"] = r.natural_quotient_states;
            out["optimized_quotient_states"] = r.optimized_quotient_states;
            out["natural_quotient"] = r.natural_quotient;
            out["optimized_quotient"] = r.optimized_quotient;
            return out;
        },
        py::arg("width"), py::arg("prob"), py::arg("init") = 0,
        "Exact bisimilarity of the enumerated and extremes-based models, with quotient sizes and exports.");
}
