#include "mulewalk/harness.hpp"

#include <future>
#include <sstream>
#include <stdexcept>

#include "mulewalk/plts.hpp"

namespace mulewalk {

namespace {

std::vector<std::string> fraction_columns() {
    std::vector<std::string> out;
    for (std::uint32_t j = 0; j < kTableColumns; ++j)
        out.push_back("0." + std::to_string(j));
    return out;
}

// Evaluates cell(row, column) for the 10x6 grid, one task per row.
template <NumberMode M, class Cell>
std::vector<std::vector<Number<M>>> fill_grid(Cell cell) {
    std::vector<std::future<std::vector<Number<M>>>> rows;
    for (std::uint32_t row = 1; row <= kTableRows; ++row) {
        rows.push_back(std::async(std::launch::async, [row, &cell] {
            std::vector<Number<M>> values;
            for (std::uint32_t j = 0; j < kTableColumns; ++j)
                values.push_back(cell(row, j));
            return values;
        }));
    }
    std::vector<std::vector<Number<M>>> out;
    for (auto& f : rows)
        out.push_back(f.get());
    return out;
}

std::uint32_t column_position(std::uint32_t width, std::uint32_t column) { return width * column / 10; }

template <NumberMode M>
std::string cell_text(const Number<M>& v) {
    return format_fixed(v, 4);
}

template <NumberMode M>
std::string csv_value(const Number<M>& v) {
    if constexpr (M == NumberMode::Exact)
        return format_precise(v.get_d()) + "," + to_string(v);
    else
        return format_precise(v);
}

template <NumberMode M>
std::string csv_value_header(const std::string& name) {
    return M == NumberMode::Exact ? name + "," + name + "_exact" : name;
}

} // namespace

template <NumberMode M>
Grid<M> emit_table1(std::uint32_t width) {
    if (width < kTableRows)
        throw std::invalid_argument("table 1 needs width >= 10");
    Grid<M> grid;
    grid.title = "Single-stroke walking distance relative to width (closed form, width=" + std::to_string(width) + ")";
    for (std::uint32_t n = 1; n <= kTableRows; ++n)
        grid.rows.push_back(n);
    grid.columns = fraction_columns();
    grid.cells = fill_grid<M>([width](std::uint32_t n, std::uint32_t j) {
        return expected_distance<M>({width, n, column_position(width, j)}).relative;
    });
    return grid;
}

template <NumberMode M>
Grid<M> emit_table(TableModel model, std::uint32_t width, std::uint32_t max_rounds) {
    if (width < kTableRows)
        throw std::invalid_argument("tables need width >= 10");
    Grid<M> grid;
    const char* name = model == TableModel::FixedN ? "fixed-n" : model == TableModel::Natural ? "natural" : "natural-opt";
    grid.title = std::string("Walking distance relative to width (") + name + ", width=" + std::to_string(width) +
                 ", rounds=" + std::to_string(max_rounds) + ")";
    grid.row_header = model == TableModel::FixedN ? "N" : "k (prob=k/width)";
    for (std::uint32_t n = 1; n <= kTableRows; ++n)
        grid.rows.push_back(n);
    grid.columns = fraction_columns();

    std::vector<MuleModel<M>> models;
    for (std::uint32_t k = 1; k <= kTableRows; ++k) {
        const Prob p(Rational(k, width));
        switch (model) {
        case TableModel::FixedN:
            models.push_back(fixed_n_model<M>(width, k));
            break;
        case TableModel::Natural:
            models.push_back(natural_model<M>(width, p));
            break;
        case TableModel::NaturalOpt:
            models.push_back(natural_opt_model<M>(width, p));
            break;
        }
    }
    grid.cells = fill_grid<M>([&](std::uint32_t k, std::uint32_t j) {
        return value_iteration(models[k - 1], column_position(width, j), max_rounds);
    });
    return grid;
}

std::vector<Prob> figure7_probabilities() {
    std::vector<Prob> out;
    for (long hundredths : {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 20, 30, 40, 50, 60, 80, 90, 100})
        out.emplace_back(Rational(hundredths, 100));
    return out;
}

template <NumberMode M>
std::vector<CurvePoint<M>> emit_figure7(std::uint32_t width, std::uint32_t max_rounds, std::uint32_t init_pos,
                                        const std::vector<Prob>& probs) {
    std::vector<std::future<Number<M>>> tasks;
    for (const Prob& p : probs)
        tasks.push_back(std::async(std::launch::async, [=] {
            return value_iteration(natural_opt_model<M>(width, p), init_pos, max_rounds);
        }));
    std::vector<CurvePoint<M>> out;
    for (std::size_t i = 0; i < probs.size(); ++i)
        out.push_back({probs[i], tasks[i].get()});
    return out;
}

DayEstimate emit_day_estimate(const DayEstimateParams& params) {
    if (!(params.mule_width_m > 0) || !(params.strokes_per_minute > 0) || !(params.hours > 0))
        throw std::invalid_argument("mule width, stroke rate and hours must be positive");
    DayEstimate e;
    e.prob = params.prob;
    e.rel_distance = value_iteration(natural_opt_model<NumberMode::Float>(params.width, params.prob), params.init_pos,
                                     params.max_rounds);
    e.mule_width_m = params.mule_width_m;
    e.strokes_per_minute = params.strokes_per_minute;
    e.hours = params.hours;
    e.km_per_day = e.rel_distance * e.mule_width_m * e.strokes_per_minute * 60.0 * e.hours / 1000.0;
    return e;
}

BisimReport run_bisim_check(std::uint32_t width, const Prob& prob, std::uint32_t init_pos) {
    constexpr auto M = NumberMode::Exact;
    BisimReport report;
    report.width = width;
    report.prob = prob;
    const auto natural = build_plts(natural_model<M>(width, prob), init_pos);
    const auto optimized = build_plts(natural_opt_model<M>(width, prob), init_pos);
    report.bisimilar = bisimilar(natural, optimized);
    report.natural_states = natural.state_count();
    report.optimized_states = optimized.state_count();
    const auto nq = quotient(natural);
    const auto oq = quotient(optimized);
    report.natural_quotient_states = nq.state_count();
    report.optimized_quotient_states = oq.state_count();
    report.natural_quotient = export_text(nq);
    report.optimized_quotient = export_text(oq);
    return report;
}

ModelKind parse_model_kind(const std::string& text) {
    if (text == "closed-form")
        return ModelKind::ClosedForm;
    if (text == "fixed-n")
        return ModelKind::FixedN;
    if (text == "natural")
        return ModelKind::Natural;
    if (text == "natural-opt")
        return ModelKind::NaturalOpt;
    throw std::invalid_argument("unknown model '" + text + "' (expected closed-form|fixed-n|natural|natural-opt)");
}

OutputFormat parse_output_format(const std::string& text) {
    if (text == "table")
        return OutputFormat::Table;
    if (text == "csv")
        return OutputFormat::Csv;
    throw std::invalid_argument("unknown output '" + text + "' (expected table|csv)");
}

void RunConfig::validate() const {
    if (width < 1)
        throw std::invalid_argument("width must be at least 1");
    const bool needs_n = model == ModelKind::ClosedForm || model == ModelKind::FixedN;
    if (needs_n && !n_broken)
        throw std::invalid_argument("this model needs --broken");
    if (!needs_n && !prob)
        throw std::invalid_argument("this model needs --prob");
    if (needs_n && (*n_broken < 1 || *n_broken > width))
        throw std::invalid_argument("--broken must lie in 1..width");
    if (model == ModelKind::ClosedForm) {
        if (init_pos > width)
            throw std::invalid_argument("--init must lie in 0..width");
    } else {
        if (init_pos >= width)
            throw std::invalid_argument("--init must lie in 0..width-1");
        if (max_rounds < 1)
            throw std::invalid_argument("--rounds must be at least 1");
    }
}

namespace {

template <NumberMode M>
std::string eval_in(const RunConfig& c) {
    std::ostringstream out;
    if (c.model == ModelKind::ClosedForm) {
        const auto d = expected_distance<M>({c.width, *c.n_broken, c.init_pos});
        if (c.output == OutputFormat::Csv) {
            out << "width,n,pos,d1,d2,d3,d4,total,relative\n"
                << c.width << ',' << *c.n_broken << ',' << c.init_pos;
            for (const auto* v : {&d.d1, &d.d2, &d.d3, &d.d4, &d.total, &d.relative})
                out << ',' << format_precise(to_double(*v));
            out << '\n';
        } else {
            out << "closed form  width=" << c.width << "  N=" << *c.n_broken << "  pos=" << c.init_pos << '\n'
                << "  delta1    " << cell_text<M>(d.d1) << '\n'
                << "  delta2    " << cell_text<M>(d.d2) << '\n'
                << "  delta3    " << cell_text<M>(d.d3) << '\n'
                << "  delta4    " << cell_text<M>(d.d4) << '\n'
                << "  total     " << cell_text<M>(d.total) << '\n'
                << "  relative  " << cell_text<M>(d.relative) << '\n';
        }
        return out.str();
    }

    MuleModel<M> model = c.model == ModelKind::FixedN    ? fixed_n_model<M>(c.width, *c.n_broken)
                         : c.model == ModelKind::Natural ? natural_model<M>(c.width, *c.prob)
                                                         : natural_opt_model<M>(c.width, *c.prob);
    const Number<M> v = value_iteration(model, c.init_pos, c.max_rounds);
    if (c.output == OutputFormat::Csv) {
        out << "model,width,init,rounds," << csv_value_header<M>("relative_distance") << '\n'
            << model.label.to_string() << ',' << c.width << ',' << c.init_pos << ',' << c.max_rounds << ','
            << csv_value<M>(v) << '\n';
    } else {
        out << model.label.to_string() << "  width=" << c.width << "  init=" << c.init_pos
            << "  rounds=" << c.max_rounds << "  relative distance " << cell_text<M>(v) << '\n';
    }
    return out.str();
}

} // namespace

std::string run_eval(const RunConfig& config) {
    config.validate();
    return config.number_mode == NumberMode::Exact ? eval_in<NumberMode::Exact>(config)
                                                   : eval_in<NumberMode::Float>(config);
}

template <NumberMode M>
std::string render_grid(const Grid<M>& grid, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        out << "n,pos_fraction," << csv_value_header<M>("relative_distance") << '\n';
        for (std::size_t i = 0; i < grid.rows.size(); ++i)
            for (std::size_t j = 0; j < grid.columns.size(); ++j)
                out << grid.rows[i] << ',' << grid.columns[j] << ',' << csv_value<M>(grid.cells[i][j]) << '\n';
        return out.str();
    }
    out << grid.title << '\n' << "pos/width:";
    for (const auto& col : grid.columns)
        out << "  " << col << "   ";
    out << '\n';
    for (std::size_t i = 0; i < grid.rows.size(); ++i) {
        std::string label = std::to_string(grid.rows[i]);
        label.insert(0, 10 - std::min<std::size_t>(10, label.size()), ' ');
        out << label;
        for (const auto& v : grid.cells[i])
            out << "  " << cell_text<M>(v);
        out << '\n';
    }
    return out.str();
}

template <NumberMode M>
std::string render_curve(const std::vector<CurvePoint<M>>& points, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        out << "prob," << csv_value_header<M>("relative_distance") << '\n';
        for (const auto& p : points)
            out << format_precise(p.prob.exact().get_d()) << ',' << csv_value<M>(p.relative_distance) << '\n';
        return out.str();
    }
    out << "prob    relative distance\n";
    for (const auto& p : points)
        out << format_fixed(p.prob.exact().get_d(), 2) << "    " << cell_text<M>(p.relative_distance) << '\n';
    return out.str();
}

std::string render_estimate(const DayEstimate& e, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        out << "prob,rel_distance,mule_width_m,strokes_per_minute,hours,km_per_day\n"
            << to_string(e.prob.exact()) << ',' << format_precise(e.rel_distance) << ',' << format_precise(e.mule_width_m)
            << ',' << format_precise(e.strokes_per_minute) << ',' << format_precise(e.hours) << ','
            << format_precise(e.km_per_day) << '\n';
        return out.str();
    }
    out << "break probability per thread  " << to_string(e.prob.exact()) << '\n'
        << "relative walking distance     " << format_fixed(e.rel_distance, 4) << '\n'
        << "mule width (m)                " << format_precise(e.mule_width_m) << '\n'
        << "strokes per minute            " << format_precise(e.strokes_per_minute) << '\n'
        << "working hours                 " << format_precise(e.hours) << '\n'
        << "walking distance (km/day)     " << format_fixed(e.km_per_day, 1) << '\n';
    return out.str();
}

std::string render_bisim(const BisimReport& r, bool with_quotients) {
    std::ostringstream out;
    out << "width=" << r.width << "  prob=" << to_string(r.prob.exact()) << '\n'
        << "bisimilar                 " << (r.bisimilar ? "true" : "false") << '\n'
        << "natural states            " << r.natural_states << " (quotient " << r.natural_quotient_states << ")\n"
        << "optimized states          " << r.optimized_states << " (quotient " << r.optimized_quotient_states << ")\n";
    if (with_quotients)
        out << "# natural quotient\n" << r.natural_quotient << "# optimized quotient\n" << r.optimized_quotient;
    return out.str();
}

#define MULEWALK_INSTANTIATE(M)                                                                                    \
    template Grid<M> emit_table1<M>(std::uint32_t);                                                                 \
    template Grid<M> emit_table<M>(TableModel, std::uint32_t, std::uint32_t);                                       \
    template std::vector<CurvePoint<M>> emit_figure7<M>(std::uint32_t, std::uint32_t, std::uint32_t,                \
                                                        const std::vector<Prob>&);                                  \
    template std::string render_grid<M>(const Grid<M>&, OutputFormat);                                              \
    template std::string render_curve<M>(const std::vector<CurvePoint<M>>&, OutputFormat);

MULEWALK_INSTANTIATE(NumberMode::Exact)
MULEWALK_INSTANTIATE(NumberMode::Float)
#undef MULEWALK_INSTANTIATE

} // namespace mulewalk
