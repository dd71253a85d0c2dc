#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "mulewalk/harness.hpp"

using namespace mulewalk;

namespace {

struct Common {
    std::string mode = "float";
    std::string output = "table";
    std::string out_path;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--mode", c.mode, "Arithmetic: exact|float")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--output", c.output, "Output format: table|csv")->check(CLI::IsMember({"table", "csv"}));
    cmd->add_option("--out", c.out_path, "Write CSV to this file instead of stdout");
}

void emit(const Common& c, const std::string& text) {
    if (c.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(c.out_path);
    if (!file)
        throw std::runtime_error("cannot open " + c.out_path);
    file << text;
}

// --out implies CSV.
OutputFormat format_of(const Common& c) {
    return c.out_path.empty() ? parse_output_format(c.output) : OutputFormat::Csv;
}

template <class Fn>
std::string by_mode(const Common& c, Fn fn) {
    if (parse_number_mode(c.mode) == NumberMode::Exact)
        return fn.template operator()<NumberMode::Exact>();
    return fn.template operator()<NumberMode::Float>();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expected walking distance of a piecer at a spinning mule"};
    app.require_subcommand(1);

    Common table1_opts, table2_opts, table3_opts, table4_opts, figure_opts, estimate_opts, eval_opts;
    std::uint32_t table1_width = 10000;

    auto* table1 = app.add_subcommand("table1", "Single-stroke closed-form table (width 10000)");
    add_common(table1, table1_opts);
    table1->add_option("--width", table1_width, "Number of thread positions");

    auto* table2 = app.add_subcommand("table2", "Fixed-N model, width 10, one round");
    add_common(table2, table2_opts);
    auto* table3 = app.add_subcommand("table3", "Fixed-N model, width 10, 50 rounds");
    add_common(table3, table3_opts);
    auto* table4 = app.add_subcommand("table4", "Natural model, width 10, 50 rounds, prob = k/10");
    add_common(table4, table4_opts);

    std::uint32_t fig_width = 50, fig_rounds = 50, fig_init = 0;
    std::vector<std::string> fig_probs;
    auto* figure7 = app.add_subcommand("figure7", "Relative distance against break probability (optimised model)");
    add_common(figure7, figure_opts);
    figure7->add_option("--width", fig_width);
    figure7->add_option("--rounds", fig_rounds);
    figure7->add_option("--init", fig_init);
    figure7->add_option("--probs", fig_probs, "Probabilities, e.g. 0.01 1/220");

    DayEstimateParams est;
    std::string est_prob = "1/220";
    auto* estimate = app.add_subcommand("estimate", "Daily walking distance estimate");
    add_common(estimate, estimate_opts);
    estimate->add_option("--prob", est_prob);
    estimate->add_option("--width", est.width);
    estimate->add_option("--rounds", est.max_rounds);
    estimate->add_option("--mule-width", est.mule_width_m, "Mule width in meters");
    estimate->add_option("--strokes-per-minute", est.strokes_per_minute);
    estimate->add_option("--hours", est.hours);

    std::uint32_t bisim_width = 10, bisim_init = 0;
    std::string bisim_prob = "1/10";
    bool print_quotients = false;
    auto* bisim = app.add_subcommand("bisim", "Check natural vs optimised model bisimilarity (exact)");
    bisim->add_option("--width", bisim_width);
    bisim->add_option("--prob", bisim_prob);
    bisim->add_option("--init", bisim_init);
    bisim->add_flag("--print-quotients", print_quotients, "Print both quotients in transition-system text");

    RunConfig config;
    std::string model_name = "fixed-n";
    std::optional<std::uint32_t> broken;
    std::optional<std::string> prob_text;
    auto* eval = app.add_subcommand("eval", "Evaluate a single configuration");
    add_common(eval, eval_opts);
    eval->add_option("--model", model_name, "closed-form|fixed-n|natural|natural-opt");
    eval->add_option("--width", config.width);
    eval->add_option("--broken", broken, "Number of broken threads per stroke");
    eval->add_option("--prob", prob_text, "Break probability per thread");
    eval->add_option("--init", config.init_pos, "Initial position (closed-form: pos)");
    eval->add_option("--rounds", config.max_rounds);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*table1) {
            const auto& c = table1_opts;
            emit(c, by_mode(c, [&]<NumberMode M>() { return render_grid(emit_table1<M>(table1_width), format_of(c)); }));
        } else if (*table2 || *table3 || *table4) {
            const Common& c = *table2 ? table2_opts : *table3 ? table3_opts : table4_opts;
            const TableModel model = *table4 ? TableModel::Natural : TableModel::FixedN;
            const std::uint32_t rounds = *table2 ? 1 : 50;
            emit(c, by_mode(c, [&]<NumberMode M>() { return render_grid(emit_table<M>(model, 10, rounds), format_of(c)); }));
        } else if (*figure7) {
            const auto& c = figure_opts;
            std::vector<Prob> probs;
            for (const auto& p : fig_probs)
                probs.push_back(Prob::from_string(p));
            if (probs.empty())
                probs = figure7_probabilities();
            emit(c, by_mode(c, [&]<NumberMode M>() {
                return render_curve(emit_figure7<M>(fig_width, fig_rounds, fig_init, probs), format_of(c));
            }));
        } else if (*estimate) {
            est.prob = Prob::from_string(est_prob);
            emit(estimate_opts, render_estimate(emit_day_estimate(est), format_of(estimate_opts)));
        } else if (*bisim) {
            std::cout << render_bisim(run_bisim_check(bisim_width, Prob::from_string(bisim_prob), bisim_init),
                                      print_quotients);
        } else if (*eval) {
            config.model = parse_model_kind(model_name);
            config.n_broken = broken;
            if (prob_text)
                config.prob = Prob::from_string(*prob_text);
            config.number_mode = parse_number_mode(eval_opts.mode);
            config.output = format_of(eval_opts);
            emit(eval_opts, run_eval(config));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
