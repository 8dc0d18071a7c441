#include "adrec/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace adrec {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail_at(const std::string& path, int line, const std::string& msg) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

double parse_real(const std::string& path, int line, const std::string& key,
                  const std::string& value, bool allow_inf = false) {
    if (allow_inf && (value == "inf" || value == "infinity"))
        return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail_at(path, line, "field '" + key + "': not a number: '" + value + "'");
    }
}

long parse_int(const std::string& path, int line, const std::string& key,
               const std::string& value) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail_at(path, line, "field '" + key + "': not an integer: '" + value + "'");
    }
}

bool parse_bool(const std::string& path, int line, const std::string& key,
                const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail_at(path, line, "field '" + key + "': expected true/false: '" + value + "'");
}

std::vector<int> parse_bits(const std::string& path, int line,
                            const std::string& value) {
    std::vector<int> bits;
    for (char c : value) {
        if (c == ' ' || c == '\t') continue;
        if (c == '0' || c == '1')
            bits.push_back(c - '0');
        else
            fail_at(path, line, std::string("field 'bits': invalid symbol '") + c + "'");
    }
    if (bits.empty()) fail_at(path, line, "field 'bits': empty");
    return bits;
}

ScenarioMode parse_mode(const std::string& path, int line, const std::string& value) {
    if (value == "analytic") return ScenarioMode::analytic;
    if (value == "simulate") return ScenarioMode::simulate;
    if (value == "compare") return ScenarioMode::compare;
    if (value == "ber") return ScenarioMode::ber;
    fail_at(path, line, "field 'mode': unknown mode '" + value + "'");
}

const char* mode_name(ScenarioMode m) {
    switch (m) {
        case ScenarioMode::analytic: return "analytic";
        case ScenarioMode::simulate: return "simulate";
        case ScenarioMode::compare: return "compare";
        case ScenarioMode::ber: return "ber";
    }
    return "?";
}

// 95% Wilson score interval for k successes in n draws
std::pair<double, double> wilson(long k, long n) {
    if (n <= 0) return {0.0, 0.0};
    const double z = 1.959963984540054;
    const double phat = static_cast<double>(k) / n;
    const double z2n = z * z / n;
    const double center = (phat + 0.5 * z2n) / (1.0 + z2n);
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + 0.25 * z2n / n) / (1.0 + z2n);
    return {center, half};
}

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void Scenario::validate() const {
    params.validate();
    if (!(dt > 0)) throw std::invalid_argument("scenario: dt must be > 0");
    if (trials < 0) throw std::invalid_argument("scenario: trials must be >= 0");
    if (bits.empty()) throw std::invalid_argument("scenario: bits must be nonempty");
    for (int b : bits)
        if (b != 0 && b != 1)
            throw std::invalid_argument("scenario: bits must be 0 or 1");
    if (std::abs(p1 + p0 - 1.0) > 1e-12)
        throw std::invalid_argument("scenario: priors must sum to 1");
    if (horizon < 0) throw std::invalid_argument("scenario: horizon must be >= 0");
    if (threshold_sweep && threshold_sweep->first > threshold_sweep->second)
        throw std::invalid_argument("scenario: empty threshold sweep");
    if ((mode == ScenarioMode::simulate || mode == ScenarioMode::compare) &&
        trials < 1)
        throw std::invalid_argument("scenario: simulate/compare require trials >= 1");
    if (mode == ScenarioMode::ber && !threshold_sweep)
        throw std::invalid_argument("scenario: ber mode requires a threshold sweep");
}

SimConfig Scenario::sim_config() const {
    SimConfig cfg;
    cfg.params = params;
    cfg.dt = dt;
    cfg.seed = seed;
    cfg.trials = std::max(trials, 1L);
    cfg.frame.bits = bits;
    cfg.frame.threshold = threshold;
    cfg.frame.p1 = p1;
    cfg.frame.p0 = p0;
    cfg.horizon = horizon;
    cfg.literal_stepping = literal_stepping;
    return cfg;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open scenario file");
    Scenario s;
    std::optional<long> th_min, th_max;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string text = raw;
        const auto hash = text.find('#');
        if (hash != std::string::npos) text.erase(hash);
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            fail_at(path, line, "expected 'key = value', got '" + trim(raw) + "'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) fail_at(path, line, "missing key before '='");
        if (value.empty()) fail_at(path, line, "field '" + key + "': missing value");

        if (key == "name") s.name = value;
        else if (key == "mode") s.mode = parse_mode(path, line, value);
        else if (key == "diffusion_um2_per_s")
            s.params.diffusion = parse_real(path, line, key, value);
        else if (key == "tx_distance_um")
            s.params.tx_distance = parse_real(path, line, key, value);
        else if (key == "receiver_radius_um")
            s.params.receiver_radius = parse_real(path, line, key, value);
        else if (key == "adsorption_rate_um_per_s")
            s.params.adsorption_rate = parse_real(path, line, key, value, true);
        else if (key == "desorption_rate_per_s")
            s.params.desorption_rate = parse_real(path, line, key, value);
        else if (key == "molecules_per_bit")
            s.params.molecules_per_bit = parse_int(path, line, key, value);
        else if (key == "sample_interval_s")
            s.params.sample_interval = parse_real(path, line, key, value);
        else if (key == "bit_interval_s")
            s.params.bit_interval = parse_real(path, line, key, value);
        else if (key == "dt_s") s.dt = parse_real(path, line, key, value);
        else if (key == "seed")
            s.seed = static_cast<std::uint64_t>(parse_int(path, line, key, value));
        else if (key == "trials") s.trials = parse_int(path, line, key, value);
        else if (key == "bits") s.bits = parse_bits(path, line, value);
        else if (key == "threshold") s.threshold = parse_int(path, line, key, value);
        else if (key == "p1") s.p1 = parse_real(path, line, key, value);
        else if (key == "p0") s.p0 = parse_real(path, line, key, value);
        else if (key == "horizon_s") s.horizon = parse_real(path, line, key, value);
        else if (key == "threshold_min") th_min = parse_int(path, line, key, value);
        else if (key == "threshold_max") th_max = parse_int(path, line, key, value);
        else if (key == "literal_stepping")
            s.literal_stepping = parse_bool(path, line, key, value);
        else if (key == "averaged_history")
            s.averaged_history = parse_bool(path, line, key, value);
        else if (key == "random_bit")
            s.random_bit = parse_bool(path, line, key, value);
        else
            fail_at(path, line, "unknown key '" + key + "'");
    }
    if (th_min || th_max) {
        if (!th_min || !th_max)
            throw std::runtime_error(path +
                                     ": threshold_min/threshold_max must both be set");
        s.threshold_sweep = {{*th_min, *th_max}};
    }
    try {
        s.validate();
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return s;
}

Scenario preset(const std::string& name) {
    Scenario s;
    s.name = name;
    // shared defaults: reversible receiver, near geometry
    s.params.diffusion = 8;
    s.params.tx_distance = 11;
    s.params.receiver_radius = 10;
    s.params.adsorption_rate = 20;
    s.params.desorption_rate = 5;
    s.params.molecules_per_bit = 1000;
    s.params.sample_interval = 0.002;
    s.params.bit_interval = 0.2;
    s.dt = 1e-5;
    s.bits = {1};
    if (name == "fig1") {
        s.horizon = 0.3;
    } else if (name == "fig2") {
        s.params.desorption_rate = 10;
        s.horizon = 0.3;
    } else if (name == "fig3") {
        s.horizon = 1.0;
    } else if (name == "fig4") {
        s.params.adsorption_rate = std::numeric_limits<double>::infinity();
        s.params.desorption_rate = 0;
        s.horizon = 10.0;
    } else if (name == "fig6") {
        s.params.adsorption_rate = 10;
        s.params.desorption_rate = 5;
        s.params.molecules_per_bit = 300;
        s.params.sample_interval = 0.02;
        s.bits = {1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 0, 1,
                  0, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 1};
        s.threshold = 5;
        s.trials = 100;
    } else if (name == "fig7" || name == "fig8") {
        s.params.diffusion = 5;
        s.params.tx_distance = 20;
        s.params.receiver_radius = 15;
        s.params.adsorption_rate = 20;
        s.params.desorption_rate = 10;
        s.params.molecules_per_bit = 50;
        s.dt = 1e-6;
        s.bits = name == "fig7" ? std::vector<int>{1, 1, 1}
                                : std::vector<int>{1, 1, 0};
        s.threshold = 1;
        s.threshold_sweep = {{0, 6}};
        s.trials = 10000;
        s.mode = ScenarioMode::ber;
    } else if (name == "fig9") {
        s.params.diffusion = 79.4;
        s.params.tx_distance = 10;
        s.params.receiver_radius = 5;
        s.params.adsorption_rate = 1e4;
        s.params.desorption_rate = 1e3;
        s.params.bit_interval = 0.05;
        s.dt = 2e-7;
        s.bits = {1, 1, 0};
        s.threshold_sweep = {{80, 150}};
        s.trials = 0;  // analytic threshold sweep
        s.random_bit = true;
        s.mode = ScenarioMode::ber;
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return s;
}

ScenarioReport run_scenario(const Scenario& s) {
    s.validate();
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioReport report;
    json summary;
    summary["name"] = s.name;
    summary["mode"] = mode_name(s.mode);
    summary["seed"] = s.seed;
    summary["trials"] = s.trials;
    summary["abs_tol"] = 1e-9;
    summary["rel_tol"] = 1e-7;

    const double horizon =
        s.horizon > 0 ? s.horizon
                      : static_cast<double>(s.bits.size()) * s.params.bit_interval;

    if (s.mode == ScenarioMode::ber) {
        const std::size_t j = s.bits.size();
        BitFrame frame;
        frame.bits = s.bits;
        frame.p1 = s.p1;
        frame.p0 = s.p0;
        std::optional<EnsembleResult> ens;
        if (s.trials > 0) {
            SimConfig cfg = s.sim_config();
            ens = run_ensemble(cfg);
        }
        for (long nth = s.threshold_sweep->first; nth <= s.threshold_sweep->second;
             ++nth) {
            frame.threshold = nth;
            ReportRow row;
            row.abscissa = static_cast<double>(nth);
            if (s.averaged_history)
                row.analytic =
                    p_error_random_bit_averaged(j, nth, s.p1, s.p0, s.params);
            else if (s.random_bit)
                row.analytic = p_error_random_bit(frame, j, s.params);
            else
                row.analytic = s.bits[j - 1]
                                   ? p_error_given_bit1(frame, j, s.params)
                                   : p_error_given_bit0(frame, j, s.params);
            if (ens) {
                long errors = 0;
                for (const auto& per_bit : ens->net_per_bit) {
                    const int demod = per_bit[j - 1] >= nth ? 1 : 0;
                    if (demod != s.bits[j - 1]) ++errors;
                }
                const auto [center, half] = wilson(errors, s.trials);
                row.empirical = static_cast<double>(errors) / s.trials;
                row.stderr_ = half;
                (void)center;
            }
            report.rows.push_back(row);
        }
        report.abscissa_name = "Nth";
    } else {
        const ChannelResponse ana = channel_response_series(s.params, horizon);
        std::optional<EnsembleResult> ens;
        if (s.mode != ScenarioMode::analytic) {
            SimConfig cfg = s.sim_config();
            ens = run_ensemble(cfg);
        }
        for (std::size_t i = 0; i < ana.times.size(); ++i) {
            ReportRow row;
            row.abscissa = ana.times[i];
            row.analytic = ana.net[i];
            if (ens && i < ens->mean_net_per_sample.size()) {
                row.empirical = ens->mean_net_per_sample[i];
                row.stderr_ = ens->stderr_net_per_sample[i];
            }
            report.rows.push_back(row);
        }
        report.abscissa_name = "t";
        if (s.mode == ScenarioMode::compare && ens) {
            // deviation at the analytic peak sample
            std::size_t peak = 0;
            for (std::size_t i = 1; i < ana.net.size(); ++i)
                if (std::abs(ana.net[i]) > std::abs(ana.net[peak])) peak = i;
            if (std::abs(ana.net[peak]) > 0 &&
                peak < ens->mean_net_per_sample.size())
                summary["peak_relative_deviation"] =
                    std::abs(ens->mean_net_per_sample[peak] - ana.net[peak]) /
                    std::abs(ana.net[peak]);
            json bits_report = json::array();
            BitFrame frame;
            frame.bits = s.bits;
            frame.threshold = s.threshold;
            frame.p1 = s.p1;
            frame.p0 = s.p0;
            for (std::size_t j = 1; j <= s.bits.size(); ++j) {
                const double analytic_err =
                    s.bits[j - 1] ? p_error_given_bit1(frame, j, s.params)
                                  : p_error_given_bit0(frame, j, s.params);
                const long errors =
                    std::lround(ens->bit_error_rate[j - 1] * s.trials);
                const auto [center, half] = wilson(errors, s.trials);
                bits_report.push_back({{"bit", s.bits[j - 1]},
                                       {"analytic_error", analytic_err},
                                       {"empirical_error",
                                        ens->bit_error_rate[j - 1]},
                                       {"wilson_center", center},
                                       {"wilson_halfwidth", half}});
            }
            summary["per_bit"] = bits_report;
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    summary["wall_time_s"] =
        std::chrono::duration_cast<std::chrono::duration<double>>(t1 - t0).count();
    report.summary_json = summary.dump(2);
    return report;
}

void emit_csv(const ScenarioReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure(path + ": cannot open for writing");
    out << report.abscissa_name << ",analytic,empirical,stderr\n";
    for (const ReportRow& row : report.rows) {
        out << format_g(row.abscissa) << ',' << format_g(row.analytic) << ',';
        if (row.empirical) out << format_g(*row.empirical);
        out << ',';
        if (row.stderr_) out << format_g(*row.stderr_);
        out << '\n';
    }
    if (!out) throw std::ios_base::failure(path + ": write failed");
}

}  // namespace adrec
