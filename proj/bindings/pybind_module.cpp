#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adrec/channel.hpp"
#include "adrec/error_model.hpp"
#include "adrec/scenario.hpp"
#include "adrec/sim.hpp"

namespace py = pybind11;
using namespace adrec;

PYBIND11_MODULE(_adrec, m) {
    m.doc() =
        "Diffusive molecular-communication link with a reversible-adsorption "
        "spherical receiver";

    py::enum_<ReceiverKind>(m, "ReceiverKind")
        .value("AD", ReceiverKind::AD)
        .value("PA", ReceiverKind::PA)
        .value("FA", ReceiverKind::FA);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("diffusion", &SystemParams::diffusion)
        .def_readwrite("tx_distance", &SystemParams::tx_distance)
        .def_readwrite("receiver_radius", &SystemParams::receiver_radius)
        .def_readwrite("adsorption_rate", &SystemParams::adsorption_rate)
        .def_readwrite("desorption_rate", &SystemParams::desorption_rate)
        .def_readwrite("molecules_per_bit", &SystemParams::molecules_per_bit)
        .def_readwrite("sample_interval", &SystemParams::sample_interval)
        .def_readwrite("bit_interval", &SystemParams::bit_interval)
        .def("validate", &SystemParams::validate)
        .def("kind", &SystemParams::kind);

    py::class_<ChannelResponse>(m, "ChannelResponse")
        .def_readonly("times", &ChannelResponse::times)
        .def_readonly("net", &ChannelResponse::net)
        .def_readonly("cumulative", &ChannelResponse::cumulative);

    m.def("cumulative_fraction", &cumulative_fraction, py::arg("t"),
          py::arg("params"),
          "Expected adsorbed fraction of one emission after time t");
    m.def("net_adsorbed", &net_adsorbed, py::arg("t"), py::arg("interval"),
          py::arg("params"),
          "Expected net adsorbed count over [t, t + interval]");
    m.def("asymptotic_adsorbed", &asymptotic_adsorbed, py::arg("params"),
          "Expected adsorbed count as t -> infinity");
    m.def("concentration", &concentration, py::arg("r"), py::arg("t"),
          py::arg("params"), "Molecule concentration at radius r and time t");
    m.def("channel_response_series", &channel_response_series, py::arg("params"),
          py::arg("horizon"),
          "Expected net/cumulative adsorbed counts on the sample grid");

    py::class_<BitFrame>(m, "BitFrame")
        .def(py::init<>())
        .def_readwrite("bits", &BitFrame::bits)
        .def_readwrite("threshold", &BitFrame::threshold)
        .def_readwrite("p1", &BitFrame::p1)
        .def_readwrite("p0", &BitFrame::p0)
        .def("validate", &BitFrame::validate);

    py::class_<IsiRates>(m, "IsiRates")
        .def_readonly("psi1", &IsiRates::psi1)
        .def_readonly("psi2", &IsiRates::psi2);

    m.def("isi_rates", &isi_rates, py::arg("frame"), py::arg("j"),
          py::arg("params"));
    m.def("p_error_given_bit1", &p_error_given_bit1, py::arg("frame"),
          py::arg("j"), py::arg("params"));
    m.def("p_error_given_bit0", &p_error_given_bit0, py::arg("frame"),
          py::arg("j"), py::arg("params"));
    m.def("p_error_random_bit", &p_error_random_bit, py::arg("frame"),
          py::arg("j"), py::arg("params"));
    m.def("p_error_random_bit_averaged", &p_error_random_bit_averaged,
          py::arg("j"), py::arg("threshold"), py::arg("p1"), py::arg("p0"),
          py::arg("params"),
          "Random-bit error averaged over all prior-weighted bit histories");

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("params", &SimConfig::params)
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("trials", &SimConfig::trials)
        .def_readwrite("frame", &SimConfig::frame)
        .def_readwrite("horizon", &SimConfig::horizon)
        .def_readwrite("literal_stepping", &SimConfig::literal_stepping)
        .def("validate", &SimConfig::validate);

    py::class_<EnsembleResult>(m, "EnsembleResult")
        .def_readonly("times", &EnsembleResult::times)
        .def_readonly("mean_net_per_sample", &EnsembleResult::mean_net_per_sample)
        .def_readonly("stderr_net_per_sample",
                      &EnsembleResult::stderr_net_per_sample)
        .def_readonly("mean_cumulative", &EnsembleResult::mean_cumulative)
        .def_readonly("bit_error_rate", &EnsembleResult::bit_error_rate)
        .def_readonly("net_per_bit", &EnsembleResult::net_per_bit)
        .def_readonly("trials", &EnsembleResult::trials);

    m.def("run_ensemble", &run_ensemble, py::arg("config"),
          py::call_guard<py::gil_scoped_release>(),
          "Seeded multi-trial Monte Carlo run");

    py::enum_<ScenarioMode>(m, "ScenarioMode")
        .value("analytic", ScenarioMode::analytic)
        .value("simulate", ScenarioMode::simulate)
        .value("compare", ScenarioMode::compare)
        .value("ber", ScenarioMode::ber);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("name", &Scenario::name)
        .def_readwrite("params", &Scenario::params)
        .def_readwrite("mode", &Scenario::mode)
        .def_readwrite("dt", &Scenario::dt)
        .def_readwrite("seed", &Scenario::seed)
        .def_readwrite("trials", &Scenario::trials)
        .def_readwrite("bits", &Scenario::bits)
        .def_readwrite("threshold", &Scenario::threshold)
        .def_readwrite("horizon", &Scenario::horizon)
        .def_readwrite("threshold_sweep", &Scenario::threshold_sweep)
        .def_readwrite("literal_stepping", &Scenario::literal_stepping)
        .def_readwrite("averaged_history", &Scenario::averaged_history)
        .def_readwrite("random_bit", &Scenario::random_bit)
        .def("validate", &Scenario::validate);

    py::class_<ReportRow>(m, "ReportRow")
        .def_readonly("abscissa", &ReportRow::abscissa)
        .def_readonly("analytic", &ReportRow::analytic)
        .def_readonly("empirical", &ReportRow::empirical)
        .def_readonly("stderr", &ReportRow::stderr_);

    py::class_<ScenarioReport>(m, "ScenarioReport")
        .def_readonly("abscissa_name", &ScenarioReport::abscissa_name)
        .def_readonly("rows", &ScenarioReport::rows)
        .def_readonly("summary_json", &ScenarioReport::summary_json);

    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("preset", &preset, py::arg("name"));
    m.def("run_scenario", &run_scenario, py::arg("scenario"),
          py::call_guard<py::gil_scoped_release>());
    m.def("emit_csv", &emit_csv, py::arg("report"), py::arg("path"));
}
