from random import Random

import pytest

from adjcheck.contexts import (
    TwistContext,
    find_wirthmueller_data,
    grothendieck_from_wirthmueller,
    make_group_wirthmueller,
)
from adjcheck.errors import WitnessMissing
from adjcheck.fields import FieldSpec
from adjcheck.groups import builtin
from adjcheck.hopf import group_algebra
from adjcheck.maps import (
    DiagramCheck,
    NamedMap,
    VerdierWitness,
    WirthmuellerCalculus,
    alpha_map,
    beta_map,
    coherence_checks,
    conjugation_check,
    equality_entry,
    internal_hom_adj,
    lax_maps,
    lax_tensor,
    lax_unit,
    omega_vg_map,
    onebyone_check,
    op_lax_tensor,
    op_lax_unit,
    phi_map,
    pi_map,
    psi_inverse_check,
    threea_triad,
    threeb_triad,
    transpose_from_lower,
    transpose_from_upper,
    transpose_to_lower,
    transpose_to_upper,
    twist_vg_witness,
    wirthmueller_maps,
)
from adjcheck.matrix import Mat
from adjcheck.modules import (
    Morphism,
    coev_morphism,
    dual_obj,
    named_module,
    swap_morphism,
    tensor_into_hom,
    tensor_obj,
)

Q = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


@pytest.fixture(scope="module")
def wq():
    return make_group_wirthmueller("S3", "C3", Q)


@pytest.fixture(scope="module")
def wf3():
    return make_group_wirthmueller("S3", "C3", F3)


@pytest.fixture(scope="module")
def wq_objs(wq):
    ctx, g, sub = wq
    xs = [
        named_module(sub, ctx.algebra_c, "trivial"),
        named_module(sub, ctx.algebra_c, "perm:C1"),
    ]
    ys = [
        named_module(g, ctx.algebra_d, "trivial"),
        named_module(g, ctx.algebra_d, "char:sign"),
        named_module(g, ctx.algebra_d, "std"),
    ]
    return xs, ys


@pytest.fixture(scope="module")
def tw_sign():
    g = builtin("S3")
    alg = group_algebra(g, Q)
    sign = named_module(g, alg, "char:sign")
    objs = [
        named_module(g, alg, "trivial"),
        sign,
        named_module(g, alg, "std"),
    ]
    return TwistContext(sign), objs


@pytest.fixture(scope="module")
def wd_q(wq):
    return find_wirthmueller_data(wq[0])


@pytest.fixture(scope="module")
def gctx_q(wd_q):
    return grothendieck_from_wirthmueller(wd_q)


# -- adjunction transposes ---------------------------------------------------


def test_transpose_lower_roundtrip(wq, wq_objs):
    ctx, _, _ = wq
    _, ys = wq_objs
    for y in ys:
        named = ctx.eta(y)
        lowered = transpose_from_lower(ctx, named, ctx.f_star(y))
        assert transpose_to_lower(ctx, y, lowered).mat == named.mat


def test_transpose_upper_roundtrip(wq, wq_objs):
    ctx, _, _ = wq
    xs, _ = wq_objs
    for x in xs:
        named = ctx.zeta(x)
        raised = transpose_from_upper(ctx, named, ctx.f_shriek(x))
        assert transpose_to_upper(ctx, x, raised).mat == named.mat


def test_transposes_are_mutually_inverse_on_arbitrary_maps(wq, wq_objs):
    ctx, _, _ = wq
    _, ys = wq_objs
    x = ctx.f_star(ys[2])
    counit = ctx.eps(x)
    down = transpose_to_lower(ctx, ctx.f_lower(x), counit)
    back = transpose_from_lower(ctx, down, x)
    assert back.mat == counit.mat


# -- the lax and op-lax structure of the right adjoint ------------------------


def test_lax_unit_shape(wq):
    ctx, _, _ = wq
    m = lax_unit(ctx)
    assert m.name == "laxUnit"
    assert m.morphism.src == ctx.unit_d
    assert m.morphism.dst == ctx.f_lower(ctx.unit_c)
    e = m.entry(passed=True)
    assert e.dims == (1, 2)
    assert e.is_iso is False


def test_lax_tensor_rank(wq, wq_objs):
    ctx, _, _ = wq
    xs, _ = wq_objs
    w, x = xs[0], xs[1]
    m = lax_tensor(ctx, w, x)
    assert m.name == "laxTensor"
    assert m.morphism.src == tensor_obj(ctx.f_lower(w), ctx.f_lower(x))
    assert m.morphism.dst == ctx.f_lower(tensor_obj(w, x))
    assert m.morphism.mat.rank() == m.morphism.dst.dim


def test_lax_maps_pair(wq, wq_objs):
    ctx, _, _ = wq
    xs, _ = wq_objs
    unit, mult = lax_maps(ctx, xs[0], xs[1])
    assert unit.name == "laxUnit"
    assert mult.name == "laxTensor"


def test_op_lax_unit_shape(wq):
    ctx, _, _ = wq
    m = op_lax_unit(ctx)
    assert m.name == "opLaxUnit"
    assert m.morphism.src == ctx.f_shriek(ctx.unit_c)
    assert m.morphism.dst == ctx.unit_d
    assert m.morphism.mat.rank() == 1


def test_op_lax_tensor_rank(wq, wq_objs):
    ctx, _, _ = wq
    xs, _ = wq_objs
    m = op_lax_tensor(ctx, xs[0], xs[1])
    assert m.name == "opLaxTensor"
    assert m.morphism.src == ctx.f_shriek(tensor_obj(xs[0], xs[1]))
    assert m.morphism.mat.rank() == m.morphism.src.dim


def test_op_lax_needs_matching_adjoints(tw_sign):
    ctx, _ = tw_sign
    with pytest.raises(ValueError):
        op_lax_unit(ctx)


# -- alpha, the internal-hom comparison, beta, pi ------------------------------


def test_alpha_is_iso(wq, wq_objs):
    ctx, _, _ = wq
    _, ys = wq_objs
    for y in ys:
        for z in ys[:2]:
            m = alpha_map(ctx, y, z)
            assert m.name == "alpha"
            assert m.is_iso


def test_internal_hom_adj_is_iso(wq, wq_objs):
    ctx, _, _ = wq
    xs, ys = wq_objs
    for y in ys[:2]:
        for x in xs:
            m = internal_hom_adj(ctx, y, x)
            assert m.name == "internalHomAdj"
            assert m.is_iso


def test_beta_full_rank(wq, wq_objs):
    ctx, _, _ = wq
    xs, ys = wq_objs
    m = beta_map(ctx, xs[1], ctx.f_star(ys[2]))
    assert m.name == "beta"
    assert m.morphism.mat.rank() == m.morphism.src.dim


def test_pi_is_iso(wq, wq_objs):
    ctx, _, _ = wq
    xs, ys = wq_objs
    for y in ys:
        for x in xs:
            m = pi_map(ctx, y, x)
            assert m.name == "pi"
            assert m.is_iso
            assert m.morphism.src == tensor_obj(y, ctx.f_lower(x))
            assert m.morphism.dst == ctx.f_lower(tensor_obj(ctx.f_star(y), x))


# -- the two triads ------------------------------------------------------------


def test_threeb_triad_names_and_isos(wq, wq_objs):
    ctx, _, _ = wq
    xs, ys = wq_objs
    pibar, gammabar, deltabar = threeb_triad(ctx, xs[0], ys[2], ys[1])
    assert (pibar.name, gammabar.name, deltabar.name) == ("piBar", "gammaBar", "deltaBar")
    assert pibar.is_iso
    assert gammabar.is_iso
    assert deltabar.is_iso


def test_threeb_restricted_dual_comparison(wq, wq_objs):
    ctx, _, _ = wq
    xs, _ = wq_objs
    for x in xs:
        _, gammabar, _ = threeb_triad(ctx, x, ctx.unit_d, ctx.unit_d)
        assert gammabar.morphism.src == dual_obj(ctx.f_shriek(x))
        assert gammabar.is_iso


def test_threeb_requires_matching_adjoints(tw_sign):
    ctx, objs = tw_sign
    with pytest.raises(ValueError):
        threeb_triad(ctx, objs[0], objs[1], objs[2])


def test_threea_triad_on_shifted_context(gctx_q, wq_objs):
    xs, ys = wq_objs
    pihat, gamma, delta = threea_triad(gctx_q, xs[0], ys[2], ys[1])
    assert (pihat.name, gamma.name, delta.name) == ("piHat", "gamma", "delta")
    assert pihat.is_iso
    assert gamma.is_iso
    assert delta.is_iso


# -- conjugation: every triad member rebuilt from every other ------------------


def _entry_names(report):
    return sorted({e.name for e in report.entries})


def test_conjugation_twist_hat(tw_sign):
    ctx, objs = tw_sign
    samples = [(objs[0], objs[2], objs[1]), (objs[2], objs[1], objs[2])]
    rep = conjugation_check(ctx, "hat", samples)
    assert len(rep.entries) == 12
    assert rep.passed
    assert _entry_names(rep) == [
        "delta-from-gamma",
        "delta-from-piHat",
        "gamma-from-delta",
        "gamma-from-piHat",
        "piHat-from-delta",
        "piHat-from-gamma",
    ]


def test_conjugation_twist_bar(tw_sign):
    ctx, objs = tw_sign
    rep = conjugation_check(ctx, "bar", [(objs[0], objs[2], objs[1])])
    assert len(rep.entries) == 2
    assert rep.passed
    assert _entry_names(rep) == ["deltaBar-from-piBar", "gammaBar-from-piBar"]


def test_conjugation_hopf_bar_modular(wf3):
    ctx, g, sub = wf3
    x = named_module(sub, ctx.algebra_c, "trivial")
    y = named_module(g, ctx.algebra_d, "std")
    z = named_module(g, ctx.algebra_d, "char:sign")
    rep = conjugation_check(ctx, "bar", [(x, y, z)])
    assert len(rep.entries) == 6
    assert rep.passed
    assert _entry_names(rep) == [
        "deltaBar-from-gammaBar",
        "deltaBar-from-piBar",
        "gammaBar-from-deltaBar",
        "gammaBar-from-piBar",
        "piBar-from-deltaBar",
        "piBar-from-gammaBar",
    ]


def test_conjugation_hopf_bar_rational(wq, wq_objs):
    ctx, _, _ = wq
    xs, ys = wq_objs
    rep = conjugation_check(ctx, "bar", [(xs[0], ys[2], ys[1])])
    assert rep.passed


def test_conjugation_shifted_hat(gctx_q, wq_objs):
    xs, ys = wq_objs
    samples = [(xs[0], ys[0], ys[1]), (xs[0], ys[1], ys[2])]
    rep = conjugation_check(gctx_q, "hat", samples)
    assert len(rep.entries) == 12
    assert rep.passed


def test_conjugation_kind_validation(wq, gctx_q, wq_objs):
    ctx, _, _ = wq
    xs, ys = wq_objs
    with pytest.raises(ValueError):
        conjugation_check(ctx, "hat", [(xs[0], ys[0], ys[0])])
    with pytest.raises(ValueError):
        conjugation_check(gctx_q, "bar", [(ys[0], ys[0], ys[0])])
    with pytest.raises(ValueError):
        conjugation_check(ctx, "frob", [])


# -- the twisted right-adjoint comparison --------------------------------------


def test_phi_matches_hom_tensor_comparison_on_twist(tw_sign):
    ctx, objs = tw_sign
    c = ctx.c
    for y in objs:
        for z in objs[:2]:
            built = phi_map(ctx, y, z)
            assert built.name == "phi"
            oracle = tensor_into_hom(y, c, z)
            assert built.morphism.src == oracle.src
            assert built.morphism.dst == oracle.dst
            assert built.morphism.mat == oracle.mat
            assert built.is_iso


def test_phi_matches_hom_tensor_comparison_on_2dim_twist():
    g = builtin("S3")
    alg = group_algebra(g, Q)
    std = named_module(g, alg, "std")
    ctx = TwistContext(std)
    y = named_module(g, alg, "char:sign")
    z = named_module(g, alg, "trivial")
    built = phi_map(ctx, y, z)
    oracle = tensor_into_hom(y, std, z)
    assert built.morphism.mat == oracle.mat
    assert built.is_iso


def test_phi_is_iso_on_wirthmueller(wq, wq_objs):
    ctx, _, _ = wq
    _, ys = wq_objs
    for y in ys[:2]:
        built = phi_map(ctx, y, ys[2])
        assert built.is_iso


def test_phi_unit_specialization_on_shifted_context(gctx_q, wq_objs):
    _, ys = wq_objs
    for y in ys:
        built = phi_map(gctx_q, y, gctx_q.unit_d)
        assert built.is_iso


# -- coherence of restriction against duals and homs ---------------------------


def test_coherence_checks_pass(wq, wq_objs):
    ctx, _, _ = wq
    _, ys = wq_objs
    rep = coherence_checks(ctx, [(ys[1], ys[2]), (ys[2], ys[0])])
    assert rep.passed
    assert "silly" in _entry_names(rep)
    assert "sillier" in _entry_names(rep)


def test_coherence_checks_pass_modular(wf3):
    ctx, g, _ = wf3
    y = named_module(g, ctx.algebra_d, "std")
    z = named_module(g, ctx.algebra_d, "char:sign")
    rep = coherence_checks(ctx, [(y, z)])
    assert rep.passed


# -- the untwisting calculus ---------------------------------------------------


def test_wirthmueller_relations(wd_q, wq_objs):
    calc = WirthmuellerCalculus(wd_q)
    xs, ys = wq_objs
    for x, y in [(xs[0], ys[1]), (xs[1], ys[2])]:
        entries = calc.relation_entries(x, y)
        names = sorted(e.name for e in entries)
        assert names == ["omtau", "oneform", "tau-two-ways", "tauom", "xi-two-ways"]
        assert all(e.passed for e in entries)


def test_wirthmueller_maps_named(wd_q, wq_objs):
    xs, ys = wq_objs
    tau, xi, omega, psi = wirthmueller_maps(wd_q, xs[0], ys[2])
    assert (tau.name, xi.name, omega.name, psi.name) == ("tau", "xi", "omega", "psi")
    assert omega.is_iso


def test_omega_full_rank_on_samples(wd_q, wq_objs):
    calc = WirthmuellerCalculus(wd_q)
    xs, _ = wq_objs
    for x in xs:
        om = calc.omega(x)
        assert om.is_iso
        assert om.morphism.src == wd_q.ctx.f_lower(x)


def test_psi_inverse_check(wd_q, wq_objs):
    _, ys = wq_objs
    for y in ys[:2]:
        rep = psi_inverse_check(wd_q, y)
        assert rep.passed
        names = _entry_names(rep)
        assert "psi-after-omega" in names
        assert "omega-after-psi" in names
        assert "psi-explicit-route" in names


def test_wirthmueller_modular(wf3):
    ctx, g, sub = wf3
    wd = find_wirthmueller_data(ctx)
    calc = WirthmuellerCalculus(wd)
    x = named_module(sub, ctx.algebra_c, "trivial")
    y = named_module(g, ctx.algebra_d, "std")
    assert all(e.passed for e in calc.relation_entries(x, y))
    assert calc.omega(x).is_iso


# -- the pointwise characterization of the untwisting inverse ------------------


def test_onebyone_accepts_the_inverse_transpose(wd_q, wq_objs):
    from adjcheck.maps import transpose_from_lower as tfl

    calc = WirthmuellerCalculus(wd_q)
    xs, _ = wq_objs
    x = xs[0]
    candidate = tfl(wd_q.ctx, calc.omega(x).morphism.inverse(), x)
    rep = onebyone_check(wd_q, x, candidate)
    assert rep.passed
    names = _entry_names(rep)
    for want in ("keypt", "natdiag", "altkey", "keypt-altkey-agreement"):
        assert want in names


def test_onebyone_rejects_a_perturbed_candidate(wd_q, wq_objs):
    from adjcheck.maps import transpose_from_lower as tfl

    calc = WirthmuellerCalculus(wd_q)
    xs, _ = wq_objs
    x = xs[0]
    good = tfl(wd_q.ctx, calc.omega(x).morphism.inverse(), x)
    bad = Morphism(good.src, good.dst, good.mat.scale(2), check=False)
    rep = onebyone_check(wd_q, x, bad)
    by_name = {e.name: e for e in rep.entries}
    assert not by_name["keypt"].passed
    assert not by_name["altkey"].passed
    assert by_name["keypt-altkey-agreement"].passed


# -- the Verdier-style witness and its untwisting map ---------------------------


def test_verdier_witness_validates_endpoints():
    g = builtin("S3")
    alg = group_algebra(g, Q)
    std = named_module(g, alg, "std")
    ctx = TwistContext(std)
    wrong = Morphism.identity(tensor_obj(std, dual_obj(std)))
    with pytest.raises(WitnessMissing):
        VerdierWitness(ctx, dual_obj(std), wrong)


def test_verdier_witness_rejects_non_iso(tw_sign):
    ctx, _ = tw_sign
    good = twist_vg_witness(ctx)
    squashed = Morphism(
        good.witness.src, good.witness.dst, good.witness.mat.scale(0), check=False
    )
    with pytest.raises(WitnessMissing):
        VerdierWitness(ctx, good.c_obj, squashed)


def _vg_oracle(x, c):
    pairing = swap_morphism(c, dual_obj(c)) @ coev_morphism(c)
    return Morphism.identity(x).tensor(pairing)


def test_omega_vg_is_the_coevaluation_pairing_1dim(tw_sign):
    ctx, objs = tw_sign
    wit = twist_vg_witness(ctx)
    for x in objs:
        built = omega_vg_map(ctx, wit, x)
        assert built.name == "omegaVG"
        oracle = _vg_oracle(x, ctx.c)
        assert built.morphism.mat == oracle.mat
        assert built.is_iso


def test_omega_vg_unit_twist_is_identity():
    g = builtin("S3")
    alg = group_algebra(g, Q)
    triv = named_module(g, alg, "trivial")
    ctx = TwistContext(triv)
    wit = twist_vg_witness(ctx)
    built = omega_vg_map(ctx, wit, named_module(g, alg, "std"))
    assert built.is_iso
    assert built.morphism.mat == Mat.identity(Q, 2)


def test_omega_vg_standard_twist_fails_by_dimension():
    g = builtin("S3")
    alg = group_algebra(g, Q)
    std = named_module(g, alg, "std")
    ctx = TwistContext(std)
    wit = twist_vg_witness(ctx)
    x = named_module(g, alg, "trivial")
    built = omega_vg_map(ctx, wit, x)
    oracle = _vg_oracle(x, std)
    assert built.morphism.mat == oracle.mat
    assert (built.morphism.src.dim, built.morphism.dst.dim) == (1, 4)
    assert not built.is_iso
    e = built.entry(passed=not built.is_iso, details="expected non-iso")
    assert e.dims == (1, 4)


def test_omega_vg_iso_for_every_onedim_twist():
    g = builtin("S3")
    for field in (Q, F3):
        alg = group_algebra(g, field)
        for name in ("trivial", "char:sign"):
            c = named_module(g, alg, name)
            ctx = TwistContext(c)
            wit = twist_vg_witness(ctx)
            built = omega_vg_map(ctx, wit, named_module(g, alg, "std"))
            assert built.is_iso


# -- report plumbing ------------------------------------------------------------


def test_named_map_rejects_non_intertwiners():
    g = builtin("S3")
    alg = group_algebra(g, Q)
    sign = named_module(g, alg, "char:sign")
    triv = named_module(g, alg, "trivial")
    fake = Morphism(sign, triv, Mat.identity(Q, 1), check=False)
    with pytest.raises(ValueError):
        NamedMap("tau", ("sign",), fake)


def test_named_map_entry_shape(tw_sign):
    ctx, objs = tw_sign
    m = pi_map(ctx, objs[2], objs[1])
    e = m.entry()
    assert e.name == "pi"
    assert e.passed
    assert e.dims == (m.morphism.src.dim, m.morphism.dst.dim)
    assert e.rank == m.morphism.mat.rank()


def test_diagram_check_reports_first_mismatch():
    lhs = Mat(Q, [[1, 0], [0, 1]])
    rhs = Mat(Q, [[1, 0], [2, 1]])
    chk = DiagramCheck("silly", ("a",), lhs, rhs)
    assert not chk.commutes
    e = chk.entry()
    assert not e.passed
    assert "(1, 0)" in e.details


def test_equality_entry_flags_endpoint_mismatch(tw_sign):
    ctx, objs = tw_sign
    a = Morphism.identity(objs[0])
    b = Morphism.identity(objs[2])
    e = equality_entry("gamma", ("x",), a, b)
    assert not e.passed
    assert "endpoint" in e.details
