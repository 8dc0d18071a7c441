from ._adrec import (
    BitFrame,
    ChannelResponse,
    EnsembleResult,
    IsiRates,
    ReceiverKind,
    ReportRow,
    Scenario,
    ScenarioMode,
    ScenarioReport,
    SimConfig,
    SystemParams,
    asymptotic_adsorbed,
    channel_response_series,
    concentration,
    cumulative_fraction,
    emit_csv,
    isi_rates,
    load_scenario,
    net_adsorbed,
    p_error_given_bit0,
    p_error_given_bit1,
    p_error_random_bit,
    p_error_random_bit_averaged,
    preset,
    run_ensemble,
    run_scenario,
)

__all__ = [
    "BitFrame",
    "ChannelResponse",
    "EnsembleResult",
    "IsiRates",
    "ReceiverKind",
    "ReportRow",
    "Scenario",
    "ScenarioMode",
    "ScenarioReport",
    "SimConfig",
    "SystemParams",
    "asymptotic_adsorbed",
    "channel_response_series",
    "concentration",
    "cumulative_fraction",
    "emit_csv",
    "isi_rates",
    "load_scenario",
    "net_adsorbed",
    "p_error_given_bit0",
    "p_error_given_bit1",
    "p_error_random_bit",
    "p_error_random_bit_averaged",
    "preset",
    "run_ensemble",
    "run_scenario",
]
