"""End-to-end acceptance run: one numbered criterion per test, one printed
pass/fail line per criterion (run with -s to see them inline)."""

import json
import time

import pytest

from adjcheck.battery import BatteryConfig, run_battery
from adjcheck.contexts import WIRTHMUELLER_PAIRS
from adjcheck.report import validate_report_dict

FIELDS = ("Q", "F2", "F3")


def _line(number: int, description: str, ok: bool) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {description}")
    assert ok, f"criterion {number} failed: {description}"


def _run(battery, spec, samples, seed=0):
    cfg = BatteryConfig(battery=battery, context_spec=spec, samples=samples, seed=seed)
    return run_battery(cfg)


def _w_spec(group, subgroup, field):
    return {"kind": "wirthmueller", "group": group, "subgroup": subgroup, "field": field}


def _twist_spec(group, obj, field):
    return {"kind": "twist", "group": group, "object": obj, "field": field}


def _all_w_specs():
    return [
        _w_spec(g, s, f) for g, s in WIRTHMUELLER_PAIRS for f in FIELDS
    ]


@pytest.fixture(scope="module")
def core_reports():
    t0 = time.perf_counter()
    reports = [_run("adjunction-core", spec, samples=10) for spec in _all_w_specs()]
    return reports, time.perf_counter() - t0


@pytest.fixture(scope="module")
def wirth_reports():
    t0 = time.perf_counter()
    reports = [_run("wirthmueller", spec, samples=10) for spec in _all_w_specs()]
    return reports, time.perf_counter() - t0


def test_criterion_01_hopf_axioms_for_all_builtin_group_algebras():
    rep = _run("hopf-axioms", {"kind": "hopf"}, samples=1)
    algebras = {e.at[0] for e in rep.entries}
    ok = rep.passed and len(algebras) >= 12 and rep.wall_time_s < 1.0
    _line(1, f"hopf axioms hold for {len(algebras)} builtin group algebras in "
             f"{rep.wall_time_s:.2f}s", ok)


def test_criterion_02_triangles_and_naturality_everywhere(core_reports):
    reports, elapsed = core_reports
    names = {
        "triangularStar",
        "triangularShriek",
        "naturality-eta",
        "naturality-eps",
        "naturality-zeta",
        "naturality-sigma",
    }
    ok = len(reports) == 15 and elapsed < 10.0
    for rep in reports:
        got = [e for e in rep.entries if e.name in names]
        ok = ok and rep.passed and {e.name for e in got} == names
    _line(2, f"triangular identities and naturality squares hold in all 15 "
             f"contexts ({elapsed:.1f}s)", ok)


def test_criterion_03_structure_isomorphisms_full_rank(core_reports):
    reports, _ = core_reports
    ok = True
    for rep in reports:
        for name in ("alpha", "pi", "internalHomAdj"):
            got = [e for e in rep.entries if e.name == name]
            ok = ok and len(got) == 10 and all(e.passed and e.is_iso for e in got)
    _line(3, "alpha, pi, and the internal-hom adjunction are full rank on 10 "
             "pairs per context", ok)


def test_criterion_04_coherence_diagrams_commute():
    ok = True
    for spec in _all_w_specs():
        rep = _run("coherence", spec, samples=10)
        for name in ("silly", "sillier"):
            got = [e for e in rep.entries if e.name == name]
            ok = ok and len(got) == 10 and all(e.passed for e in got)
        ok = ok and rep.passed
    _line(4, "both coherence diagrams commute on 10 samples per context", ok)


def test_criterion_05_conjugation_each_from_each():
    hat = {
        "gamma-from-piHat",
        "delta-from-piHat",
        "piHat-from-gamma",
        "piHat-from-delta",
        "gamma-from-delta",
        "delta-from-gamma",
    }
    bar = {
        "deltaBar-from-piBar",
        "gammaBar-from-piBar",
        "gammaBar-from-deltaBar",
        "piBar-from-gammaBar",
        "piBar-from-deltaBar",
        "deltaBar-from-gammaBar",
    }
    twist_rep = _run("conjugation", _twist_spec("S3", "char:sign", "Q"), samples=5)
    hopf_rep = _run("conjugation", _w_spec("S3", "C3", "F3"), samples=5)
    ok = twist_rep.passed and hopf_rep.passed
    twist_names = {e.name for e in twist_rep.entries}
    ok = ok and hat <= twist_names
    ok = ok and {e.name for e in hopf_rep.entries} == bar
    for name in hat:
        ok = ok and sum(e.name == name for e in twist_rep.entries) == 5
    for name in bar:
        ok = ok and sum(e.name == name for e in hopf_rep.entries) == 5
    _line(5, "every triad member is reconstructed from every other on 5 "
             "samples in both the twist and group-inclusion contexts", ok)


def test_criterion_06_wirthmueller_battery(wirth_reports):
    reports, elapsed = wirth_reports
    ok = len(reports) == 15 and elapsed < 120.0
    for rep in reports:
        ok = ok and rep.passed
        witness = [e for e in rep.entries if e.name == "dualizing-witness"]
        ok = ok and len(witness) == 1 and witness[0].at == ("trivial",)
        for name in ("tau-two-ways", "xi-two-ways", "tauom", "oneform", "omtau"):
            ok = ok and any(e.name == name for e in rep.entries)
        omegas = [e for e in rep.entries if e.name == "omega"]
        ok = ok and len(omegas) >= 10 and all(e.passed and e.is_iso for e in omegas)
        for name in ("psi-after-omega", "omega-after-psi"):
            got = [e for e in rep.entries if e.name == name]
            ok = ok and got and all(e.passed for e in got)
    _line(6, f"untwisting calculus verified across 15 subgroup instances, "
             f"trivial dualizing object everywhere ({elapsed:.1f}s)", ok)


def test_criterion_07_inverse_characterization(wirth_reports):
    reports, _ = wirth_reports
    ok = True
    for rep in reports:
        for name in ("keypt", "natdiag", "altkey", "keypt-altkey-agreement"):
            got = [e for e in rep.entries if e.name == name]
            ok = ok and got and all(e.passed for e in got)
        rejected = [e for e in rep.entries if e.name == "perturbed-candidate-rejected"]
        ok = ok and rejected and all(e.passed for e in rejected)
    _line(7, "the canonical inverse candidate passes all three diagnostics, "
             "perturbed candidates fail the key one, and the two key "
             "diagnostics always agree", ok)


def test_criterion_08_twist_comparison_and_generalized_untwisting():
    ok = True
    for obj in ("trivial", "char:sign", "std"):
        rep = _run("twist", _twist_spec("S3", obj, "Q"), samples=10)
        phis = [e for e in rep.entries if e.name == "phi"]
        ok = ok and rep.passed and len(phis) == 20
        ok = ok and all(e.is_iso for e in phis)
        ok = ok and sum(e.name == "phi-matches-dual-comparison" for e in rep.entries) == 10
    for group, obj, field in (
        ("S3", "trivial", "Q"),
        ("S3", "char:sign", "Q"),
        ("S3", "char:sign", "F3"),
        ("C3", "char:chi1", "F7"),
        ("C3", "char:chi2", "F7"),
    ):
        rep = _run("vg-omega", _twist_spec(group, obj, field), samples=5)
        ok = ok and rep.passed
        unit = [e for e in rep.entries if e.at == ("S",)]
        ok = ok and unit and unit[0].is_iso
    rep = _run("vg-omega", _twist_spec("S3", "std", "Q"), samples=5)
    unit = [e for e in rep.entries if e.at == ("S",)]
    ok = ok and rep.passed and unit[0].dims == (1, 4) and not unit[0].is_iso
    _line(8, "the twist comparison equals the dual comparison at full rank, "
             "and the generalized untwisting map is an isomorphism exactly "
             "for invertible twists (std fails at dims 1x4)", ok)


def test_criterion_09_dualizing_object_corollary():
    rep = _run("dualizing", _twist_spec("S3", "char:sign", "Q"), samples=10)
    ok = rep.passed
    refl = [e for e in rep.entries if e.name == "twisted-double-dual-comparison"]
    ok = ok and len(refl) == 10 and all(e.is_iso for e in refl)
    rep = _run("dualizing", _twist_spec("S3", "std", "Q"), samples=10)
    ok = ok and rep.passed
    unit = [e for e in rep.entries if e.name == "invertible-iff-unit-reflexive"]
    ok = ok and unit[0].dims == (1, 4) and not unit[0].is_iso and unit[0].passed
    _line(9, "a twist is dualizing exactly when invertible; the standard "
             "module fails the unit-reflexivity test at dims 1x4", ok)


def test_criterion_10_constructed_right_adjoint():
    rep = _run("grothendieck-shift", _w_spec("S3", "C3", "Q"), samples=10)
    ok = rep.passed
    for name in ("triangularStar", "triangularShriek"):
        got = [e for e in rep.entries if e.name == name]
        ok = ok and len(got) == 20 and all(e.passed for e in got)
    phis = [e for e in rep.entries if e.name == "phi"]
    ok = ok and len(phis) == 10 and all(e.passed and e.is_iso for e in phis)
    _line(10, "the constructed right adjoint satisfies both triangular "
              "identities and its comparison into the twisted restriction "
              "is full rank", ok)


def test_criterion_11_byte_identical_reports():
    plans = [
        ("hopf-axioms", {"kind": "hopf", "groups": ["S3"], "fields": ["Q"]}),
        ("adjunction-core", _w_spec("S3", "C3", "Q")),
        ("coherence", _w_spec("S3", "C3", "Q")),
        ("conjugation", _twist_spec("S3", "char:sign", "Q")),
        ("wirthmueller", _w_spec("S3", "C3", "F2")),
        ("twist", _twist_spec("S3", "std", "Q")),
        ("grothendieck-shift", _w_spec("S3", "C3", "Q")),
        ("vg-omega", _twist_spec("S3", "std", "Q")),
        ("dualizing", _twist_spec("S3", "char:sign", "Q")),
    ]
    ok = True
    for battery, spec in plans:
        first = _run(battery, spec, samples=3, seed=13).to_json()
        second = _run(battery, spec, samples=3, seed=13).to_json()
        ok = ok and first == second
        validate_report_dict(json.loads(first))
    _line(11, "equal seeds reproduce byte-identical JSON for every battery", ok)
