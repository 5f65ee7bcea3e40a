import json

import pytest

from adjcheck.battery import (
    BATTERIES,
    BatteryConfig,
    build_context,
    emit_report,
    load_context_spec,
    run_battery,
)
from adjcheck.errors import ConfigError
from adjcheck.report import validate_report_dict

W_SPEC = {"kind": "wirthmueller", "group": "S3", "subgroup": "C3", "field": "Q"}
W_F3_SPEC = {"kind": "wirthmueller", "group": "S3", "subgroup": "C3", "field": "F3"}
SIGN_SPEC = {"kind": "twist", "group": "S3", "object": "char:sign", "field": "Q"}
STD_SPEC = {"kind": "twist", "group": "S3", "object": "std", "field": "Q"}


def run(battery, spec, samples=2, seed=7):
    cfg = BatteryConfig(battery=battery, context_spec=spec, samples=samples, seed=seed)
    return run_battery(cfg)


def test_battery_names_cover_every_runner():
    assert len(BATTERIES) == 9
    for name in BATTERIES:
        assert BatteryConfig(battery=name, context_spec={}).battery == name


def test_config_rejects_unknown_battery():
    with pytest.raises(ConfigError):
        BatteryConfig(battery="nope", context_spec={})


def test_config_rejects_bad_samples_seed_format():
    with pytest.raises(ConfigError):
        BatteryConfig(battery="twist", context_spec={}, samples=0)
    with pytest.raises(ConfigError):
        BatteryConfig(battery="twist", context_spec={}, seed="zero")
    with pytest.raises(ConfigError):
        BatteryConfig(battery="twist", context_spec={}, fmt="xml")
    with pytest.raises(ConfigError):
        BatteryConfig(battery="twist", context_spec="not a table")


def test_build_context_wirthmueller():
    bundle = build_context(W_SPEC)
    assert bundle.kind == "wirthmueller"
    assert bundle.group.name == "S3"
    assert bundle.subgroup.name == "C3"
    assert bundle.ctx.upper_is_star


def test_build_context_twist():
    bundle = build_context(SIGN_SPEC)
    assert bundle.kind == "twist"
    assert bundle.ctx.c.dim == 1
    assert not bundle.ctx.upper_is_star


def test_build_context_hopf_defaults():
    bundle = build_context({"kind": "hopf"})
    assert len(bundle.extra["groups"]) >= 12
    assert bundle.extra["fields"] == ("Q", "F2", "F3")


def test_build_context_rejects_missing_and_unknown_keys():
    with pytest.raises(ConfigError, match="missing"):
        build_context({"kind": "wirthmueller", "group": "S3", "subgroup": "C3"})
    with pytest.raises(ConfigError, match="unknown keys"):
        build_context({**W_SPEC, "bogus": 1})
    with pytest.raises(ConfigError, match="unknown context kind"):
        build_context({"kind": "nope"})
    with pytest.raises(ConfigError, match="table"):
        build_context([])


def test_load_context_spec_toml_and_json(tmp_path):
    toml_path = tmp_path / "ctx.toml"
    toml_path.write_text('kind = "twist"\ngroup = "S3"\nobject = "std"\nfield = "Q"\n')
    assert load_context_spec(str(toml_path)) == STD_SPEC
    json_path = tmp_path / "ctx.json"
    json_path.write_text(json.dumps(W_SPEC))
    assert load_context_spec(str(json_path)) == W_SPEC


def test_load_context_spec_extensionless_fallback(tmp_path):
    path = tmp_path / "ctx"
    path.write_text(json.dumps(SIGN_SPEC))
    assert load_context_spec(str(path)) == SIGN_SPEC


def test_load_context_spec_rejects_garbage(tmp_path):
    path = tmp_path / "ctx.toml"
    path.write_text("not == valid == anything")
    with pytest.raises(ConfigError, match="cannot parse"):
        load_context_spec(str(path))


def test_hopf_axioms_battery_sweeps_builtins():
    rep = run("hopf-axioms", {"kind": "hopf", "groups": ["C2", "S3"], "fields": ["Q", "F2"]})
    assert rep.passed
    labels = {e.at[0] for e in rep.entries}
    assert labels == {"Q[C2]", "Q[S3]", "F2[C2]", "F2[S3]"}


def test_hopf_axioms_battery_on_adjunction_context_covers_both_algebras():
    rep = run("hopf-axioms", W_F3_SPEC)
    assert rep.passed
    labels = {e.at[0] for e in rep.entries}
    assert labels == {"F3[S3]", "F3[C3]"}


def test_adjunction_core_battery():
    rep = run("adjunction-core", W_SPEC, samples=3)
    assert rep.passed
    names = {e.name for e in rep.entries}
    assert {
        "triangularStar",
        "triangularShriek",
        "naturality-eta",
        "naturality-eps",
        "naturality-zeta",
        "naturality-sigma",
        "alpha",
        "pi",
        "internalHomAdj",
    } <= names
    for e in rep.entries:
        if e.name in ("alpha", "pi", "internalHomAdj"):
            assert e.is_iso


def test_coherence_battery():
    rep = run("coherence", W_SPEC, samples=3)
    assert rep.passed
    names = {e.name for e in rep.entries}
    assert {"silly", "sillier"} <= names


def test_conjugation_battery_twist_runs_both_triads():
    rep = run("conjugation", SIGN_SPEC, samples=2)
    assert rep.passed
    names = {e.name for e in rep.entries}
    assert {
        "gamma-from-piHat",
        "delta-from-piHat",
        "piHat-from-gamma",
        "piHat-from-delta",
        "gamma-from-delta",
        "delta-from-gamma",
        "gammaBar-from-piBar",
        "deltaBar-from-piBar",
    } == names


def test_conjugation_battery_wirthmueller_runs_backwards_triad():
    rep = run("conjugation", W_F3_SPEC, samples=2)
    assert rep.passed
    names = {e.name for e in rep.entries}
    assert {
        "deltaBar-from-piBar",
        "gammaBar-from-piBar",
        "gammaBar-from-deltaBar",
        "piBar-from-gammaBar",
        "piBar-from-deltaBar",
        "deltaBar-from-gammaBar",
    } == names


def test_wirthmueller_battery_contents():
    rep = run("wirthmueller", W_SPEC, samples=2)
    assert rep.passed
    names = {e.name for e in rep.entries}
    assert {
        "dualizing-witness",
        "tauom",
        "omtau",
        "oneform",
        "tau-two-ways",
        "xi-two-ways",
        "omega",
        "psi-after-omega",
        "omega-after-psi",
        "keypt",
        "natdiag",
        "altkey",
        "keypt-altkey-agreement",
        "perturbed-candidate-rejected",
    } <= names
    witness = [e for e in rep.entries if e.name == "dualizing-witness"]
    assert witness[0].at == ("trivial",)
    for e in rep.entries:
        if e.name == "omega":
            assert e.is_iso


def test_wirthmueller_battery_rejects_perturbed_candidates_modularly():
    rep = run("wirthmueller", W_F3_SPEC, samples=2)
    assert rep.passed
    rejected = [e for e in rep.entries if e.name == "perturbed-candidate-rejected"]
    assert rejected and all(e.passed for e in rejected)


def test_twist_battery_checks_oracle_equality():
    for spec in (SIGN_SPEC, STD_SPEC):
        rep = run("twist", spec, samples=2)
        assert rep.passed
        names = {e.name for e in rep.entries}
        assert names == {"phi", "phi-matches-dual-comparison"}


def test_grothendieck_shift_battery():
    rep = run("grothendieck-shift", W_SPEC, samples=2)
    assert rep.passed
    names = {e.name for e in rep.entries}
    assert {"triangularStar", "triangularShriek", "phi"} == names


def test_vg_omega_battery_reports_unit_instance_first():
    rep = run("vg-omega", SIGN_SPEC, samples=2)
    assert rep.passed
    unit_entries = [e for e in rep.entries if e.at == ("S",)]
    assert unit_entries[0].dims == (1, 1) and unit_entries[0].is_iso
    rep = run("vg-omega", STD_SPEC, samples=2)
    assert rep.passed
    unit_entries = [e for e in rep.entries if e.at == ("S",)]
    assert unit_entries[0].dims == (1, 4) and not unit_entries[0].is_iso


def test_dualizing_battery():
    rep = run("dualizing", SIGN_SPEC, samples=2)
    assert rep.passed
    rep = run("dualizing", STD_SPEC, samples=2)
    assert rep.passed


def test_battery_context_mismatch_becomes_report_error():
    rep = run("twist", W_SPEC)
    assert rep.error is not None
    assert rep.error[0] == "ConfigError"
    assert not rep.passed
    assert rep.entries == []


def test_unknown_group_becomes_report_error():
    rep = run("dualizing", {"kind": "twist", "group": "Z9", "object": "trivial", "field": "Q"})
    assert rep.error == ("ConfigError", rep.error[1])
    assert "Z9" in rep.error[1]


def test_report_carries_sampling_parameters():
    rep = run("coherence", W_SPEC, samples=3, seed=11)
    assert rep.seed == 11
    assert rep.samples == 3
    assert rep.wall_time_s is not None and rep.wall_time_s >= 0


def test_json_reports_validate_against_schema():
    for battery, spec in (
        ("coherence", W_SPEC),
        ("twist", STD_SPEC),
        ("dualizing", SIGN_SPEC),
    ):
        rep = run(battery, spec)
        validate_report_dict(json.loads(rep.to_json()))


def test_error_report_validates_against_schema():
    rep = run("twist", W_SPEC)
    validate_report_dict(json.loads(rep.to_json()))


def test_equal_seeds_give_byte_identical_json():
    for battery, spec in (("conjugation", SIGN_SPEC), ("wirthmueller", W_SPEC)):
        cfg = BatteryConfig(battery=battery, context_spec=spec, samples=2, seed=9)
        assert run_battery(cfg).to_json() == run_battery(cfg).to_json()


def test_different_seeds_change_the_sample_family():
    a = run("coherence", W_SPEC, samples=3, seed=1)
    b = run("coherence", W_SPEC, samples=3, seed=2)
    assert {e.at for e in a.entries} != {e.at for e in b.entries}


def test_emit_report_markdown_groups_one_table_per_name(tmp_path):
    rep = run("twist", SIGN_SPEC, samples=2)
    text = emit_report(rep, "markdown", None)
    for name in sorted({e.name for e in rep.entries}):
        assert text.count(f"## {name}\n") == 1
    assert text.count("| at |") == len({e.name for e in rep.entries})


def test_emit_report_writes_file(tmp_path):
    rep = run("dualizing", SIGN_SPEC, samples=2)
    out = tmp_path / "rep.json"
    text = emit_report(rep, "json", str(out))
    assert out.read_text(encoding="utf-8") == text
    validate_report_dict(json.loads(text))


def test_emit_report_rejects_unknown_format():
    rep = run("dualizing", SIGN_SPEC, samples=1)
    with pytest.raises(ConfigError):
        emit_report(rep, "xml", None)


def test_explicit_dualizing_candidate_is_honored():
    rep = run("wirthmueller", {**W_SPEC, "dualizing": "trivial"}, samples=1)
    assert rep.passed
    witness = [e for e in rep.entries if e.name == "dualizing-witness"]
    assert witness[0].at == ("trivial",)
