#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adrec/sim.hpp"

namespace adrec {

enum class ScenarioMode { analytic, simulate, compare, ber };

// Fully describes one run: physics, timing, transmit frame, execution mode.
// Loaded from a line-oriented `key = value` file with unit-bearing key names,
// or from a named preset.
struct Scenario {
    std::string name = "custom";
    SystemParams params;
    ScenarioMode mode = ScenarioMode::analytic;
    double dt = 1e-5;           // s
    std::uint64_t seed = 1;
    long trials = 1000;         // 0 = analytic only (ber mode)
    std::vector<int> bits{1};
    long threshold = 0;
    double p1 = 0.5;
    double p0 = 0.5;
    double horizon = 0;         // s; 0 -> bits * Tb
    std::optional<std::pair<long, long>> threshold_sweep;
    bool literal_stepping = false;
    bool averaged_history = false;  // ber: average over 2^(j-1) histories
    bool random_bit = false;        // ber: prior-weighted error, else s_j-conditional

    void validate() const;
    SimConfig sim_config() const;
};

struct ReportRow {
    double abscissa = 0;  // time (s) or threshold
    double analytic = 0;
    std::optional<double> empirical;
    std::optional<double> stderr_;
};

struct ScenarioReport {
    std::string abscissa_name;  // "t" or "Nth"
    std::vector<ReportRow> rows;
    std::string summary_json;   // run metadata + compare diagnostics
};

Scenario load_scenario(const std::string& path);

// fig1..fig4, fig6..fig9
Scenario preset(const std::string& name);

ScenarioReport run_scenario(const Scenario& s);

// Fixed column order (abscissa, analytic, empirical, stderr), C locale,
// empty field for missing optionals.
void emit_csv(const ScenarioReport& report, const std::string& path);

}  // namespace adrec
