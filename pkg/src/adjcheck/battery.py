"""Named check batteries over a parsed context spec.

Seeded sampling lives here so that a fixed (config, seed) pair resolves to
the same object family, the same entry list, and byte-identical JSON.
Entry ordering inside a report is handled by the report serializer; this
module only has to be deterministic about what it generates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from random import Random
from time import perf_counter

from .contexts import (
    TwistContext,
    find_wirthmueller_data,
    grothendieck_from_wirthmueller,
    make_group_wirthmueller,
)
from .errors import (
    ConfigError,
    ExpectedIso,
    NoDualizingObjectFound,
    NotFree,
    OmegaNotIso,
    WitnessMissing,
)
from .fields import FieldSpec
from .groups import builtin, builtin_groups
from .hopf import group_algebra, hopf_axiom_entries
from .maps import (
    WirthmuellerCalculus,
    alpha_map,
    coherence_checks,
    conjugation_check,
    internal_hom_adj,
    omega_vg_map,
    onebyone_check,
    phi_map,
    pi_map,
    psi_inverse_check,
    transpose_from_lower,
    twist_vg_witness,
)
from .matrix import Mat
from .modules import (
    Morphism,
    coev_morphism,
    dual_obj,
    dualizing_object_battery,
    intertwiner_space,
    is_invertible,
    named_module,
    nu_map,
    sample_objects,
    swap_morphism,
    tensor_into_hom,
)
from .report import CheckEntry, CheckReport

BATTERIES = (
    "hopf-axioms",
    "adjunction-core",
    "coherence",
    "conjugation",
    "wirthmueller",
    "twist",
    "grothendieck-shift",
    "vg-omega",
    "dualizing",
)

_DEFAULT_HOPF_FIELDS = ("Q", "F2", "F3")


@dataclass
class BatteryConfig:
    """One battery invocation: what to run, against which context, how."""

    battery: str
    context_spec: dict
    samples: int = 5
    seed: int = 0
    fmt: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.battery not in BATTERIES:
            raise ConfigError(
                f"unknown battery {self.battery!r}; known: {', '.join(BATTERIES)}"
            )
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ConfigError("samples must be a positive integer")
        if not isinstance(self.seed, int):
            raise ConfigError("seed must be an integer")
        if self.fmt not in ("json", "markdown"):
            raise ConfigError("format must be 'json' or 'markdown'")
        if not isinstance(self.context_spec, dict):
            raise ConfigError("context spec must be a table/object")


def load_context_spec(path: str) -> dict:
    """Read a context spec file: TOML for hand-written configs, JSON for
    generated ones. The extension decides; anything else is tried as TOML
    first, then JSON."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".json"):
        attempts = ("json",)
    elif path.endswith(".toml"):
        attempts = ("toml",)
    else:
        attempts = ("toml", "json")
    last = None
    for kind in attempts:
        try:
            if kind == "toml":
                try:
                    import tomllib as toml_reader
                except ModuleNotFoundError:
                    import tomli as toml_reader
                return toml_reader.loads(raw.decode("utf-8"))
            return json.loads(raw.decode("utf-8"))
        except (ValueError, UnicodeDecodeError) as exc:
            last = exc
    raise ConfigError(f"cannot parse context spec {path!r}: {last}")


# -- context construction ---------------------------------------------------------


@dataclass
class ContextBundle:
    """A built context plus whatever the batteries need for sampling."""

    kind: str
    ctx: object = None
    group: object = None
    subgroup: object = None
    field: FieldSpec | None = None
    extra: dict = dc_field(default_factory=dict)

    @property
    def label(self) -> str:
        return getattr(self.ctx, "label", self.kind)


def _require_keys(spec: dict, required: tuple, optional: tuple = ()) -> None:
    missing = [k for k in required if k not in spec]
    if missing:
        raise ConfigError(f"context spec is missing {missing}")
    unknown = set(spec) - set(required) - set(optional) - {"kind"}
    if unknown:
        raise ConfigError(f"context spec has unknown keys {sorted(unknown)}")


def build_context(spec: dict) -> ContextBundle:
    """Resolve {"kind": ...} into a live context.

    Kinds: "wirthmueller" (group, subgroup, field; optional dualizing),
    "twist" (group, object, field), and "hopf" (optional groups, fields)
    for the axiom sweep, which needs no adjunction at all.
    """
    if not isinstance(spec, dict):
        raise ConfigError("context spec must be a table/object")
    kind = spec.get("kind")
    if kind == "wirthmueller":
        _require_keys(spec, ("group", "subgroup", "field"), ("dualizing",))
        field = FieldSpec.parse(spec["field"])
        ctx, group, subgroup = make_group_wirthmueller(
            spec["group"], spec["subgroup"], field
        )
        return ContextBundle(
            kind,
            ctx,
            group,
            subgroup,
            field,
            {"dualizing": spec.get("dualizing")},
        )
    if kind == "twist":
        _require_keys(spec, ("group", "object", "field"))
        field = FieldSpec.parse(spec["field"])
        group = builtin(spec["group"])
        algebra = group_algebra(group, field)
        c = named_module(group, algebra, spec["object"])
        return ContextBundle(kind, TwistContext(c), group, None, field)
    if kind == "hopf":
        _require_keys(spec, (), ("groups", "fields"))
        return ContextBundle(
            kind,
            None,
            None,
            None,
            None,
            {
                "groups": tuple(spec.get("groups") or sorted(builtin_groups())),
                "fields": tuple(spec.get("fields") or _DEFAULT_HOPF_FIELDS),
            },
        )
    raise ConfigError(
        f"unknown context kind {kind!r}; known: wirthmueller, twist, hopf"
    )


def _need(bundle: ContextBundle, battery: str, *kinds: str) -> None:
    if bundle.kind not in kinds:
        raise ConfigError(
            f"battery {battery!r} needs a context of kind "
            f"{' or '.join(kinds)}, got {bundle.kind!r}"
        )


def _seeded_endo(obj, rng: Random) -> Morphism:
    """A deterministic non-trivial endomorphism: a seeded combination of the
    endomorphism space basis, falling back to the identity."""
    basis = intertwiner_space(obj, obj)
    f = obj.algebra.field
    acc = Mat.zeros(f, obj.dim, obj.dim)
    for m in basis:
        c = f.sample_scalar(rng, small=True)
        if c:
            acc = acc + m.mat.scale(c)
    if acc.is_zero():
        return Morphism.identity(obj)
    return Morphism(obj, obj, acc, check=False)


def _wirthmueller_samples(bundle: ContextBundle, cfg: BatteryConfig, x_cap=3, y_cap=3):
    rng = Random(cfg.seed)
    ctx = bundle.ctx
    xs = sample_objects(bundle.subgroup, ctx.algebra_c, rng, cfg.samples, dim_cap=x_cap)
    ys = sample_objects(bundle.group, ctx.algebra_d, rng, cfg.samples, dim_cap=y_cap)
    return rng, xs, ys


def _find_data(bundle: ContextBundle):
    candidates = None
    name = bundle.extra.get("dualizing")
    if name:
        candidates = [named_module(bundle.subgroup, bundle.ctx.algebra_c, name)]
    return find_wirthmueller_data(bundle.ctx, group=bundle.subgroup, candidates=candidates)


# -- battery runners ---------------------------------------------------------------


def _run_hopf_axioms(bundle: ContextBundle, cfg: BatteryConfig) -> CheckReport:
    if bundle.kind == "hopf":
        groups = bundle.extra["groups"]
        fields = bundle.extra["fields"]
        rep = CheckReport(battery=cfg.battery, context="builtin group algebras")
        for fname in fields:
            field = FieldSpec.parse(fname)
            for gname in groups:
                rep.extend(hopf_axiom_entries(group_algebra(builtin(gname), field)))
        return rep
    _need(bundle, cfg.battery, "wirthmueller", "twist", "hopf")
    rep = CheckReport(battery=cfg.battery, context=bundle.label)
    algebras = [bundle.ctx.algebra_d]
    if bundle.ctx.algebra_c is not bundle.ctx.algebra_d:
        algebras.append(bundle.ctx.algebra_c)
    for h in algebras:
        rep.extend(hopf_axiom_entries(h))
    return rep


def _triangle_entries(ctx, x, y) -> list[CheckEntry]:
    def check(name, at, composite):
        ok = composite.mat.is_identity()
        return CheckEntry(
            name,
            at,
            ok,
            dims=(composite.src.dim, composite.dst.dim),
            details="" if ok else "composite is not the identity",
        )

    return [
        check(
            "triangularStar",
            ("star", y.label),
            ctx.eps(ctx.f_star(y)) @ ctx.f_star_mor(ctx.eta(y)),
        ),
        check(
            "triangularStar",
            ("lower", x.label),
            ctx.f_lower_mor(ctx.eps(x)) @ ctx.eta(ctx.f_lower(x)),
        ),
        check(
            "triangularShriek",
            ("shriek", x.label),
            ctx.sigma(ctx.f_shriek(x)) @ ctx.f_shriek_mor(ctx.zeta(x)),
        ),
        check(
            "triangularShriek",
            ("upper", y.label),
            ctx.f_upper_mor(ctx.sigma(y)) @ ctx.zeta(ctx.f_upper(y)),
        ),
    ]


def _equal_entry(name, at, lhs: Morphism, rhs: Morphism) -> CheckEntry:
    ok = lhs.mat == rhs.mat
    return CheckEntry(
        name,
        at,
        ok,
        dims=(lhs.src.dim, lhs.dst.dim),
        details="" if ok else "naturality square legs differ",
    )


def _run_adjunction_core(bundle: ContextBundle, cfg: BatteryConfig) -> CheckReport:
    _need(bundle, cfg.battery, "wirthmueller")
    rng, xs, ys = _wirthmueller_samples(bundle, cfg)
    ctx = bundle.ctx
    zs = sample_objects(bundle.group, ctx.algebra_d, rng, cfg.samples, dim_cap=3)
    rep = CheckReport(battery=cfg.battery, context=bundle.label)
    for x, y, z in zip(xs, ys, zs):
        rep.extend(_triangle_entries(ctx, x, y))
        my = _seeded_endo(y, rng)
        mx = _seeded_endo(x, rng)
        rep.add(
            _equal_entry(
                "naturality-eta",
                (y.label,),
                ctx.f_lower_mor(ctx.f_star_mor(my)) @ ctx.eta(y),
                ctx.eta(y) @ my,
            )
        )
        rep.add(
            _equal_entry(
                "naturality-eps",
                (x.label,),
                mx @ ctx.eps(x),
                ctx.eps(x) @ ctx.f_star_mor(ctx.f_lower_mor(mx)),
            )
        )
        rep.add(
            _equal_entry(
                "naturality-zeta",
                (x.label,),
                ctx.f_upper_mor(ctx.f_shriek_mor(mx)) @ ctx.zeta(x),
                ctx.zeta(x) @ mx,
            )
        )
        rep.add(
            _equal_entry(
                "naturality-sigma",
                (y.label,),
                my @ ctx.sigma(y),
                ctx.sigma(y) @ ctx.f_shriek_mor(ctx.f_upper_mor(my)),
            )
        )
        for named in (
            alpha_map(ctx, y, z),
            pi_map(ctx, y, x),
            internal_hom_adj(ctx, y, x),
        ):
            rep.add(named.entry(passed=named.is_iso))
    return rep


def _run_coherence(bundle: ContextBundle, cfg: BatteryConfig) -> CheckReport:
    _need(bundle, cfg.battery, "wirthmueller")
    rng, _, ys = _wirthmueller_samples(bundle, cfg)
    zs = sample_objects(bundle.group, bundle.ctx.algebra_d, rng, cfg.samples, dim_cap=3)
    rep = coherence_checks(bundle.ctx, list(zip(ys, zs)), bundle.label)
    rep.battery = cfg.battery
    return rep


def _run_conjugation(bundle: ContextBundle, cfg: BatteryConfig) -> CheckReport:
    _need(bundle, cfg.battery, "wirthmueller", "twist")
    rng = Random(cfg.seed)
    rep = CheckReport(battery=cfg.battery, context=bundle.label)
    if bundle.kind == "twist":
        ctx = bundle.ctx
        # reconstruction composites live on triple tensors, so dims stay small
        cap = 2 if ctx.c.dim == 1 else 1
        pool = sample_objects(bundle.group, ctx.algebra_d, rng, 3 * cfg.samples, dim_cap=cap)
        triples = [tuple(pool[3 * i : 3 * i + 3]) for i in range(cfg.samples)]
        for kind in ("hat", "bar"):
            partial = conjugation_check(ctx, kind, triples, bundle.label)
            rep.extend(partial.entries)
        return rep
    ctx = bundle.ctx
    xs = sample_objects(bundle.subgroup, ctx.algebra_c, rng, cfg.samples, dim_cap=2)
    ys = sample_objects(bundle.group, ctx.algebra_d, rng, cfg.samples, dim_cap=3)
    zs = sample_objects(bundle.group, ctx.algebra_d, rng, cfg.samples, dim_cap=3)
    partial = conjugation_check(ctx, "bar", list(zip(xs, ys, zs)), bundle.label)
    rep.extend(partial.entries)
    return rep


def _perturb(m: Morphism) -> Morphism:
    # must stay inside the intertwiner space or the functors reject it;
    # doubling is wrong in every characteristic (zero map in char 2)
    return Morphism(m.src, m.dst, m.mat.scale(2), check=False)


def _run_wirthmueller(bundle: ContextBundle, cfg: BatteryConfig) -> CheckReport:
    _need(bundle, cfg.battery, "wirthmueller")
    wd = _find_data(bundle)
    calc = WirthmuellerCalculus(wd)
    rep = CheckReport(battery=cfg.battery, context=bundle.label)
    caps = (2, 3)
    rep.add(
        CheckEntry(
            "dualizing-witness",
            (wd.c_obj.label,),
            True,
            dims=(wd.witness.src.dim, wd.witness.dst.dim),
            rank=wd.witness.mat.rank(),
            is_iso=True,
            details=f"C = {wd.c_obj.label}",
        )
    )
    _, xs, ys = _wirthmueller_samples(bundle, cfg, x_cap=caps[0], y_cap=caps[1])
    ctx = bundle.ctx
    for x, y in zip(xs, ys):
        rep.extend(calc.relation_entries(x, y))
        om = calc.omega(x)
        rep.add(om.entry(passed=om.is_iso))
        rep.extend(psi_inverse_check(wd, y).entries)
        good = transpose_from_lower(ctx, om.morphism.inverse(), x)
        rep.extend(onebyone_check(wd, x, good).entries)
        perturbed = onebyone_check(wd, x, _perturb(good))
        by_name = {e.name: e for e in perturbed.entries}
        rejected = not by_name["keypt"].passed
        agree = by_name["keypt-altkey-agreement"].passed
        rep.add(
            CheckEntry(
                "perturbed-candidate-rejected",
                (x.label,),
                rejected and agree,
                details=(
                    "perturbed inverse candidate fails the key pointwise check"
                    if rejected
                    else "perturbed candidate was not rejected"
                ),
            )
        )
    return rep


def _run_twist(bundle: ContextBundle, cfg: BatteryConfig) -> CheckReport:
    _need(bundle, cfg.battery, "twist")
    ctx = bundle.ctx
    rng = Random(cfg.seed)
    ys = sample_objects(bundle.group, ctx.algebra_d, rng, cfg.samples, dim_cap=3)
    zs = sample_objects(bundle.group, ctx.algebra_d, rng, cfg.samples, dim_cap=3)
    rep = CheckReport(battery=cfg.battery, context=bundle.label)
    for y, z in zip(ys, zs):
        for target in (z, ctx.unit_d):
            built = phi_map(ctx, y, target)
            oracle = tensor_into_hom(y, ctx.c, target)
            ok = built.morphism.mat == oracle.mat and built.is_iso
            entry = built.entry(
                passed=ok,
                details=(
                    "matches the tensor-into-hom comparison"
                    if built.morphism.mat == oracle.mat
                    else "differs from the tensor-into-hom comparison"
                ),
            )
            rep.add(entry)
        at_unit = phi_map(ctx, y, ctx.unit_d).morphism
        dual_cmp = nu_map(ctx.c, y) @ swap_morphism(y, dual_obj(ctx.c))
        ok = at_unit.mat == dual_cmp.mat
        rep.add(
            CheckEntry(
                "phi-matches-dual-comparison",
                (y.label, "T"),
                ok,
                dims=(at_unit.src.dim, at_unit.dst.dim),
                details="" if ok else "specialized map differs from the dual comparison",
            )
        )
    return rep


def _run_grothendieck_shift(bundle: ContextBundle, cfg: BatteryConfig) -> CheckReport:
    _need(bundle, cfg.battery, "wirthmueller")
    wd = _find_data(bundle)
    # the untwisted right adjoint squares matrix sizes, so keep sources tiny
    _, xs, ys = _wirthmueller_samples(bundle, cfg, x_cap=1, y_cap=2)
    shifted = grothendieck_from_wirthmueller(wd, samples=tuple(xs[:1]))
    rep = CheckReport(battery=cfg.battery, context=shifted.label)
    for x, y in zip(xs, ys):
        rep.extend(_triangle_entries(shifted, x, y))
        built = phi_map(shifted, y, shifted.unit_d)
        rep.add(built.entry(passed=built.is_iso))
    return rep


def _run_vg_omega(bundle: ContextBundle, cfg: BatteryConfig) -> CheckReport:
    _need(bundle, cfg.battery, "twist")
    ctx = bundle.ctx
    witness = twist_vg_witness(ctx)
    invertible, _ = is_invertible(ctx.c)
    rng = Random(cfg.seed)
    xs = [ctx.unit_c]
    xs += sample_objects(bundle.group, ctx.algebra_d, rng, cfg.samples, dim_cap=3)
    rep = CheckReport(battery=cfg.battery, context=bundle.label)
    pairing = swap_morphism(ctx.c, dual_obj(ctx.c)) @ coev_morphism(ctx.c)
    for x in xs:
        built = omega_vg_map(ctx, witness, x)
        oracle = Morphism.identity(x).tensor(pairing)
        ok = built.morphism.mat == oracle.mat and built.is_iso == invertible
        rep.add(
            built.entry(
                passed=ok,
                details=f"twist invertible={invertible}; iso expected iff invertible",
            )
        )
    return rep


def _run_dualizing(bundle: ContextBundle, cfg: BatteryConfig) -> CheckReport:
    _need(bundle, cfg.battery, "twist")
    ctx = bundle.ctx
    rng = Random(cfg.seed)
    xs = sample_objects(bundle.group, ctx.algebra_d, rng, cfg.samples, dim_cap=3)
    rep = dualizing_object_battery(ctx.c, xs, context=bundle.label)
    rep.battery = cfg.battery
    return rep


_RUNNERS = {
    "hopf-axioms": _run_hopf_axioms,
    "adjunction-core": _run_adjunction_core,
    "coherence": _run_coherence,
    "conjugation": _run_conjugation,
    "wirthmueller": _run_wirthmueller,
    "twist": _run_twist,
    "grothendieck-shift": _run_grothendieck_shift,
    "vg-omega": _run_vg_omega,
    "dualizing": _run_dualizing,
}

# errors that become a structured report entry instead of a traceback
_REPORTED_ERRORS = (
    ConfigError,
    NotFree,
    NoDualizingObjectFound,
    OmegaNotIso,
    WitnessMissing,
    ExpectedIso,
)


def run_battery(cfg: BatteryConfig) -> CheckReport:
    """Build the context, run every member of the battery, and stamp the
    report with the sampling parameters. Package errors become a structured
    error on the report rather than an exception."""
    t0 = perf_counter()
    try:
        bundle = build_context(cfg.context_spec)
        rep = _RUNNERS[cfg.battery](bundle, cfg)
    except _REPORTED_ERRORS as exc:
        rep = CheckReport(battery=cfg.battery, context=str(cfg.context_spec))
        rep.error = (type(exc).__name__, str(exc))
    rep.seed = cfg.seed
    rep.samples = cfg.samples
    rep.wall_time_s = perf_counter() - t0
    return rep


def emit_report(report: CheckReport, fmt: str, path: str | None) -> str:
    """Serialize the report; write it to path when given. Returns the text."""
    if fmt == "json":
        text = report.to_json()
    elif fmt in ("markdown", "md"):
        text = report.to_markdown()
    else:
        raise ConfigError(f"unknown report format {fmt!r}")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
