#pragma once

// Reproduction harness: the reference tables, the probability curve, the
// daily distance estimate and the model equivalence check, plus text/CSV
// rendering used by the command line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mulewalk/closed_form.hpp"
#include "mulewalk/numerics.hpp"
#include "mulewalk/piecer.hpp"

namespace mulewalk {

/// Rows N (or k) = 1..10, columns pos/width = 0.0, 0.1, ..., 0.5.
template <NumberMode M>
struct Grid {
    std::string title;
    std::string row_header = "N";
    std::vector<std::uint32_t> rows;
    std::vector<std::string> columns;
    std::vector<std::vector<Number<M>>> cells;
};

inline constexpr std::uint32_t kTableRows = 10;
inline constexpr std::uint32_t kTableColumns = 6;

/// Single-stroke closed-form sums, pos = column * width.
template <NumberMode M>
Grid<M> emit_table1(std::uint32_t width = 10000);

enum class TableModel { FixedN, Natural, NaturalOpt };

/// value_iteration per cell with init = column * width. Row k is FixedN(k) or prob = k / width.
template <NumberMode M>
Grid<M> emit_table(TableModel model, std::uint32_t width, std::uint32_t max_rounds);

template <NumberMode M>
struct CurvePoint {
    Prob prob;
    Number<M> relative_distance;
};

/// The 21 probabilities 0, 0.01, ..., 0.1, 0.12, 0.16, 0.2, 0.3, ..., 0.6, 0.8, 0.9, 1.
std::vector<Prob> figure7_probabilities();

/// NaturalOpt value_iteration per probability.
template <NumberMode M>
std::vector<CurvePoint<M>> emit_figure7(std::uint32_t width = 50, std::uint32_t max_rounds = 50,
                                        std::uint32_t init_pos = 0,
                                        const std::vector<Prob>& probs = figure7_probabilities());

struct DayEstimateParams {
    Prob prob{Rational(1, 220)};
    std::uint32_t width = 50;
    std::uint32_t max_rounds = 50;
    std::uint32_t init_pos = 0;
    double mule_width_m = 46.0;
    double strokes_per_minute = 4.0;
    double hours = 10.0;
};

struct DayEstimate {
    Prob prob;
    double rel_distance = 0.0;
    double mule_width_m = 0.0;
    double strokes_per_minute = 0.0;
    double hours = 0.0;
    double km_per_day = 0.0; // rel_distance * mule_width_m * strokes_per_minute * 60 * hours / 1000
};

DayEstimate emit_day_estimate(const DayEstimateParams& params = {});

struct BisimReport {
    std::uint32_t width = 0;
    Prob prob;
    bool bisimilar = false;
    std::size_t natural_states = 0;
    std::size_t optimized_states = 0;
    std::size_t natural_quotient_states = 0;
    std::size_t optimized_quotient_states = 0;
    std::string natural_quotient; // export_text of the natural model's quotient
    std::string optimized_quotient;
};

/// Exact arithmetic throughout. Throws std::invalid_argument beyond the enumeration cap.
BisimReport run_bisim_check(std::uint32_t width, const Prob& prob, std::uint32_t init_pos = 0);

enum class ModelKind { ClosedForm, FixedN, Natural, NaturalOpt };
enum class OutputFormat { Table, Csv };

ModelKind parse_model_kind(const std::string& text);
OutputFormat parse_output_format(const std::string& text);

struct RunConfig {
    ModelKind model = ModelKind::FixedN;
    std::uint32_t width = 10;
    std::optional<std::uint32_t> n_broken;
    std::optional<Prob> prob;
    std::uint32_t init_pos = 0;
    std::uint32_t max_rounds = 50;
    NumberMode number_mode = NumberMode::Float;
    OutputFormat output = OutputFormat::Table;

    /// Throws std::invalid_argument with a one-line reason.
    void validate() const;
};

/// Evaluates one configuration and renders it.
std::string run_eval(const RunConfig& config);

template <NumberMode M>
std::string render_grid(const Grid<M>& grid, OutputFormat format);

template <NumberMode M>
std::string render_curve(const std::vector<CurvePoint<M>>& points, OutputFormat format);

std::string render_estimate(const DayEstimate& estimate, OutputFormat format);
std::string render_bisim(const BisimReport& report, bool with_quotients);

} // namespace mulewalk
