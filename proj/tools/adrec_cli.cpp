#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "adrec/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitIo = 4;

struct CommonOpts {
    std::string scenario_path;
    std::string preset_name;
    std::string out_path;
    std::optional<long> trials;
    std::optional<long> seed;
    std::optional<long> threshold_min;
    std::optional<long> threshold_max;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--scenario", o.scenario_path, "scenario file (key = value lines)");
    cmd->add_option("--preset", o.preset_name,
                    "built-in parameter set: fig1 fig2 fig3 fig4 fig6 fig7 fig8 fig9");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials override");
    cmd->add_option("--seed", o.seed, "RNG seed override");
    cmd->add_option("--out", o.out_path,
                    "CSV output path; a .summary.json sidecar is written next to it");
    cmd->add_option("--threshold-min", o.threshold_min, "threshold sweep lower bound");
    cmd->add_option("--threshold-max", o.threshold_max, "threshold sweep upper bound");
}

adrec::Scenario build(const CommonOpts& o, adrec::ScenarioMode mode) {
    if (o.scenario_path.empty() == o.preset_name.empty())
        throw std::runtime_error("exactly one of --scenario / --preset is required");
    adrec::Scenario s = o.scenario_path.empty()
                            ? adrec::preset(o.preset_name)
                            : adrec::load_scenario(o.scenario_path);
    s.mode = mode;
    if (o.trials) s.trials = *o.trials;
    if (o.seed) s.seed = static_cast<std::uint64_t>(*o.seed);
    if (o.threshold_min || o.threshold_max) {
        if (!o.threshold_min || !o.threshold_max)
            throw std::runtime_error(
                "--threshold-min and --threshold-max must be given together");
        s.threshold_sweep = {{*o.threshold_min, *o.threshold_max}};
    }
    s.validate();
    return s;
}

void write_csv_line(std::ostream& os, const adrec::ScenarioReport& report) {
    os << report.abscissa_name << ",analytic,empirical,stderr\n";
}

int execute(const CommonOpts& o, adrec::ScenarioMode mode) {
    const adrec::Scenario s = build(o, mode);
    const adrec::ScenarioReport report = adrec::run_scenario(s);
    if (o.out_path.empty()) {
        write_csv_line(std::cout, report);
        char buf[40];
        for (const auto& row : report.rows) {
            std::snprintf(buf, sizeof buf, "%.12g", row.abscissa);
            std::cout << buf << ',';
            std::snprintf(buf, sizeof buf, "%.12g", row.analytic);
            std::cout << buf << ',';
            if (row.empirical) {
                std::snprintf(buf, sizeof buf, "%.12g", *row.empirical);
                std::cout << buf;
            }
            std::cout << ',';
            if (row.stderr_) {
                std::snprintf(buf, sizeof buf, "%.12g", *row.stderr_);
                std::cout << buf;
            }
            std::cout << '\n';
        }
        std::cerr << report.summary_json << '\n';
    } else {
        adrec::emit_csv(report, o.out_path);
        std::ofstream sidecar(o.out_path + ".summary.json");
        if (!sidecar) throw std::ios_base::failure(o.out_path +
                                                   ".summary.json: cannot open");
        sidecar << report.summary_json << '\n';
        std::cout << report.summary_json << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Diffusive molecular-communication link with a reversible-adsorption "
        "spherical receiver: closed-form channel response, bit-error model, and "
        "particle-based Monte Carlo simulation"};
    app.require_subcommand(1);

    CommonOpts analytic_opts, simulate_opts, compare_opts, ber_opts;
    auto* analytic = app.add_subcommand(
        "analytic", "expected net adsorbed per sample interval (closed form)");
    add_common(analytic, analytic_opts);
    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo net adsorbed per sample interval");
    add_common(simulate, simulate_opts);
    auto* compare = app.add_subcommand(
        "compare", "simulation vs closed form with deviation diagnostics");
    add_common(compare, compare_opts);
    auto* ber = app.add_subcommand(
        "ber", "bit-error probability across a decision-threshold sweep");
    add_common(ber, ber_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analytic->parsed())
            return execute(analytic_opts, adrec::ScenarioMode::analytic);
        if (simulate->parsed())
            return execute(simulate_opts, adrec::ScenarioMode::simulate);
        if (compare->parsed())
            return execute(compare_opts, adrec::ScenarioMode::compare);
        return execute(ber_opts, adrec::ScenarioMode::ber);
    } catch (const adrec::ConvergenceError& e) {
        std::cerr << "error: " << e.what()
                  << " (best estimate " << e.best_estimate << ")\n";
        return kExitConvergence;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
