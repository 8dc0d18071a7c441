import math

import pytest

import adrec


def test_cumulative_fraction_reference():
    p = adrec.SystemParams()
    assert p.kind() == adrec.ReceiverKind.AD
    assert adrec.cumulative_fraction(0.2, p) == pytest.approx(
        0.32564745212650, rel=1e-6
    )
    p.desorption_rate = 0.0
    assert adrec.cumulative_fraction(0.2, p) == pytest.approx(
        0.39294640874286, rel=1e-9
    )


def test_asymptotics_and_series():
    p = adrec.SystemParams()
    p.adsorption_rate = float("inf")
    p.desorption_rate = 0.0
    assert adrec.asymptotic_adsorbed(p) == pytest.approx(1000.0 * 10.0 / 11.0)
    series = adrec.channel_response_series(adrec.SystemParams(), 0.3)
    assert len(series.times) == 150
    assert sum(series.net) == pytest.approx(series.cumulative[-1])


def test_error_model():
    p = adrec.SystemParams()
    p.diffusion = 5.0
    p.tx_distance = 20.0
    p.receiver_radius = 15.0
    p.adsorption_rate = 20.0
    p.desorption_rate = 10.0
    p.molecules_per_bit = 50
    frame = adrec.BitFrame()
    frame.bits = [1, 1, 1]
    rates = adrec.isi_rates(frame, 3, p)
    assert rates.psi1 == pytest.approx(1.1705004374193, rel=1e-6)
    frame.threshold = -(10**6)
    assert adrec.p_error_given_bit1(frame, 3, p) == 0.0
    errs = []
    for nth in range(0, 7):
        frame.threshold = nth
        errs.append(adrec.p_error_given_bit1(frame, 3, p))
    assert errs == sorted(errs)


def test_simulation_deterministic():
    cfg = adrec.SimConfig()
    cfg.params.molecules_per_bit = 100
    cfg.dt = 1e-4
    cfg.frame.bits = [1]
    cfg.frame.threshold = 10
    cfg.horizon = 0.05
    cfg.trials = 8
    cfg.seed = 5
    a = adrec.run_ensemble(cfg)
    b = adrec.run_ensemble(cfg)
    assert a.mean_net_per_sample == b.mean_net_per_sample
    assert a.trials == 8
    assert sum(a.mean_net_per_sample) == pytest.approx(a.mean_cumulative[-1])


def test_scenario_round_trip(tmp_path):
    s = adrec.preset("fig9")
    assert s.mode == adrec.ScenarioMode.ber
    report = adrec.run_scenario(s)
    assert report.abscissa_name == "Nth"
    assert len(report.rows) == 71
    assert report.rows[0].empirical is None
    out = tmp_path / "sweep.csv"
    adrec.emit_csv(report, str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "Nth,analytic,empirical,stderr"
    assert len(lines) == 72

    cfg = tmp_path / "demo.cfg"
    cfg.write_text("bits = 101\nmolecules_per_bit = 10\nbad_key = 1\n")
    with pytest.raises(RuntimeError, match="bad_key"):
        adrec.load_scenario(str(cfg))


def test_validation_errors():
    p = adrec.SystemParams()
    p.tx_distance = 5.0
    with pytest.raises(ValueError):
        p.validate()
    with pytest.raises(ValueError):
        adrec.preset("fig5")
