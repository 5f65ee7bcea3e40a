"""Adjunction contexts: a strong monoidal restriction functor with a left
adjoint, a right adjoint, and a second pair built from the left adjoint,
all with explicit unit/counit matrices.

Three constructions are provided.

* ``wirthmueller_context``: restriction along a Hopf inclusion A -> B with
  induction B (x)_A X and coinduction Hom_A(B, X).  The second-pair right
  adjoint coincides with restriction (``upper_is_star``).
* ``twist_context``: base change along the identity, second pair
  ((-) (x) C, Hom(C, -)) for a chosen object C.
* ``shifted_pair``: twists the second pair of an existing context by an
  object of the source category.

``grothendieck_from_wirthmueller`` builds the context in which the old
right adjoint has become a left adjoint; it needs the comparison map from
the calculus layer, hence the local import there.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Sequence

from .errors import NoDualizingObjectFound, OmegaNotIso, WitnessMissing
from .fields import FieldSpec
from .groups import FiniteGroup, builtin
from .hopf import HopfAlgebra, HopfInclusion, group_algebra, subgroup_inclusion
from .matrix import Mat, hstack, kron, vstack
from .modules import (
    ModuleObject,
    Morphism,
    curry,
    dual_obj,
    ev_morphism,
    find_invertible_intertwiner,
    hom_obj,
    named_module,
    tensor_obj,
    unit_object,
)


class AdjunctionContext:
    """Common interface: four functors and four (co)unit families.

    ``f_star`` is restriction (strong monoidal), ``f_lower`` its right
    adjoint with unit ``eta`` and counit ``eps``; ``f_shriek`` is the left
    adjoint of ``f_upper`` with unit ``zeta`` and counit ``sigma``.
    ``upper_is_star`` records that f_upper and f_star are the same functor,
    which the conjugation formulas for the self-adjoint triad require.
    """

    algebra_c: HopfAlgebra
    algebra_d: HopfAlgebra
    unit_c: ModuleObject
    unit_d: ModuleObject
    label: str
    upper_is_star: bool

    def __init__(self):
        self._memo: dict = {}

    def _cached(self, tag: str, x: ModuleObject, build) -> ModuleObject:
        key = (tag, x)
        out = self._memo.get(key)
        if out is None:
            out = build(x)
            self._memo[key] = out
        return out

    # object parts, implemented per context
    def f_star(self, y: ModuleObject) -> ModuleObject:
        raise NotImplementedError

    def f_shriek(self, x: ModuleObject) -> ModuleObject:
        raise NotImplementedError

    def f_lower(self, x: ModuleObject) -> ModuleObject:
        raise NotImplementedError

    def f_upper(self, y: ModuleObject) -> ModuleObject:
        raise NotImplementedError

    # morphism parts
    def f_star_mor(self, m: Morphism) -> Morphism:
        raise NotImplementedError

    def f_shriek_mor(self, m: Morphism) -> Morphism:
        raise NotImplementedError

    def f_lower_mor(self, m: Morphism) -> Morphism:
        raise NotImplementedError

    def f_upper_mor(self, m: Morphism) -> Morphism:
        raise NotImplementedError

    # units and counits
    def eta(self, y: ModuleObject) -> Morphism:
        raise NotImplementedError

    def eps(self, x: ModuleObject) -> Morphism:
        raise NotImplementedError

    def zeta(self, x: ModuleObject) -> Morphism:
        raise NotImplementedError

    def sigma(self, y: ModuleObject) -> Morphism:
        raise NotImplementedError

    # monoidal structure of f_star; identity-shaped in every context here
    def mono(self, y: ModuleObject, z: ModuleObject) -> Morphism:
        src = self.f_star(tensor_obj(y, z))
        dst = tensor_obj(self.f_star(y), self.f_star(z))
        return Morphism(src, dst, Mat.identity(self.algebra_c.field, src.dim))

    def mono_unit(self) -> Morphism:
        src = self.f_star(self.unit_d)
        return Morphism(src, self.unit_c, Mat.identity(self.algebra_c.field, 1))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"


class WirthmuellerContext(AdjunctionContext):
    """Restriction/induction/coinduction along a free Hopf inclusion."""

    upper_is_star = True

    def __init__(self, incl: HopfInclusion, label: str = ""):
        super().__init__()
        self.incl = incl
        self.algebra_c = incl.sub
        self.algebra_d = incl.big
        self.unit_c = unit_object(incl.sub, "S")
        self.unit_d = unit_object(incl.big, "T")
        self.label = label or f"wirthmueller({incl.big.label}/{incl.sub.label})"
        # dense coefficient vectors of the embedded sub-basis in B
        self._embed_cols = [
            tuple(incl.embed.data[i][t] for i in range(incl.big.dim))
            for t in range(incl.sub.dim)
        ]

    @property
    def r(self) -> int:
        return self.incl.r

    def f_star(self, y: ModuleObject) -> ModuleObject:
        def build(y: ModuleObject) -> ModuleObject:
            action = [y.act(col) for col in self._embed_cols]
            return ModuleObject(self.algebra_c, y.dim, action, f"f*({y.label})", check=False)

        return self._cached("star", y, build)

    def f_shriek(self, x: ModuleObject) -> ModuleObject:
        def build(x: ModuleObject) -> ModuleObject:
            r, f = self.incl.r, self.algebra_d.field
            action = []
            for g in range(self.algebra_d.dim):
                blocks = [[None] * r for _ in range(r)]
                for i in range(r):
                    for j in range(r):
                        blocks[j][i] = x.act(self.incl.rewrite[g][i][j])
                action.append(Mat.from_blocks(blocks))
            return ModuleObject(self.algebra_d, r * x.dim, action, f"f_!({x.label})", check=False)

        return self._cached("shriek", x, build)

    def f_lower(self, x: ModuleObject) -> ModuleObject:
        def build(x: ModuleObject) -> ModuleObject:
            r = self.incl.r
            action = []
            for g in range(self.algebra_d.dim):
                blocks = [
                    [x.act(self.incl.left_rewrite[g][i][j]) for j in range(r)]
                    for i in range(r)
                ]
                action.append(Mat.from_blocks(blocks))
            return ModuleObject(self.algebra_d, r * x.dim, action, f"f_*({x.label})", check=False)

        return self._cached("lower", x, build)

    def f_upper(self, y: ModuleObject) -> ModuleObject:
        return self.f_star(y)

    def f_star_mor(self, m: Morphism) -> Morphism:
        return Morphism(self.f_star(m.src), self.f_star(m.dst), m.mat)

    def _block_diag_mor(self, m: Morphism, functor) -> Mat:
        return kron(Mat.identity(self.algebra_d.field, self.incl.r), m.mat)

    def f_shriek_mor(self, m: Morphism) -> Morphism:
        return Morphism(self.f_shriek(m.src), self.f_shriek(m.dst), self._block_diag_mor(m, None))

    def f_lower_mor(self, m: Morphism) -> Morphism:
        return Morphism(self.f_lower(m.src), self.f_lower(m.dst), self._block_diag_mor(m, None))

    def f_upper_mor(self, m: Morphism) -> Morphism:
        return self.f_star_mor(m)

    def eta(self, y: ModuleObject) -> Morphism:
        blocks = [[y.act(fb)] for fb in self.incl.free_basis]
        return Morphism(y, self.f_lower(self.f_star(y)), Mat.from_blocks(blocks))

    def eps(self, x: ModuleObject) -> Morphism:
        mats = [x.act(a_vec) for a_vec in self.incl.unit_left]
        return Morphism(self.f_star(self.f_lower(x)), x, hstack(mats))

    def zeta(self, x: ModuleObject) -> Morphism:
        mats = [x.act(a_vec) for a_vec in self.incl.unit_right]
        return Morphism(x, self.f_star(self.f_shriek(x)), vstack(mats))

    def sigma(self, y: ModuleObject) -> Morphism:
        mats = [y.act(fb) for fb in self.incl.free_basis]
        return Morphism(self.f_shriek(self.f_star(y)), y, hstack(mats))


class TwistContext(AdjunctionContext):
    """Identity base change with second pair ((-) (x) C, Hom(C, -))."""

    upper_is_star = False

    def __init__(self, c: ModuleObject, label: str = ""):
        super().__init__()
        self.c = c
        self.algebra_c = c.algebra
        self.algebra_d = c.algebra
        self.unit_c = unit_object(c.algebra, "S")
        self.unit_d = unit_object(c.algebra, "T")
        self.label = label or f"twist({c.algebra.label}, {c.label})"

    def f_star(self, y: ModuleObject) -> ModuleObject:
        return y

    def f_shriek(self, x: ModuleObject) -> ModuleObject:
        return self._cached("shriek", x, lambda x: tensor_obj(x, self.c))

    def f_lower(self, x: ModuleObject) -> ModuleObject:
        return x

    def f_upper(self, y: ModuleObject) -> ModuleObject:
        return self._cached("upper", y, lambda y: hom_obj(self.c, y))

    def f_star_mor(self, m: Morphism) -> Morphism:
        return m

    def f_shriek_mor(self, m: Morphism) -> Morphism:
        return m.tensor(Morphism.identity(self.c))

    def f_lower_mor(self, m: Morphism) -> Morphism:
        return m

    def f_upper_mor(self, m: Morphism) -> Morphism:
        return Morphism(
            self.f_upper(m.src),
            self.f_upper(m.dst),
            kron(m.mat, Mat.identity(self.algebra_c.field, self.c.dim)),
        )

    def eta(self, y: ModuleObject) -> Morphism:
        return Morphism.identity(y)

    def eps(self, x: ModuleObject) -> Morphism:
        return Morphism.identity(x)

    def zeta(self, x: ModuleObject) -> Morphism:
        return curry(Morphism.identity(tensor_obj(x, self.c)), x, self.c)

    def sigma(self, y: ModuleObject) -> Morphism:
        return ev_morphism(self.c, y)


class ShiftedContext(AdjunctionContext):
    """An existing context with its second pair twisted by an object c:
    the new left adjoint is X |-> f_!(X (x) c), the new right adjoint is
    Y |-> Hom(c, f^!Y)."""

    def __init__(self, base: AdjunctionContext, c: ModuleObject, label: str = ""):
        super().__init__()
        if c.algebra is not base.algebra_c:
            raise ValueError("the twisting object must live in the source category")
        self.base = base
        self.c = c
        self.algebra_c = base.algebra_c
        self.algebra_d = base.algebra_d
        self.unit_c = base.unit_c
        self.unit_d = base.unit_d
        self.upper_is_star = False
        self.label = label or f"shift({base.label}, {c.label})"

    def f_star(self, y: ModuleObject) -> ModuleObject:
        return self.base.f_star(y)

    def f_shriek(self, x: ModuleObject) -> ModuleObject:
        return self._cached("shriek", x, lambda x: self.base.f_shriek(tensor_obj(x, self.c)))

    def f_lower(self, x: ModuleObject) -> ModuleObject:
        return self.base.f_lower(x)

    def f_upper(self, y: ModuleObject) -> ModuleObject:
        return self._cached("upper", y, lambda y: hom_obj(self.c, self.base.f_upper(y)))

    def f_star_mor(self, m: Morphism) -> Morphism:
        return self.base.f_star_mor(m)

    def f_shriek_mor(self, m: Morphism) -> Morphism:
        return self.base.f_shriek_mor(m.tensor(Morphism.identity(self.c)))

    def f_lower_mor(self, m: Morphism) -> Morphism:
        return self.base.f_lower_mor(m)

    def f_upper_mor(self, m: Morphism) -> Morphism:
        inner = self.base.f_upper_mor(m)
        return Morphism(
            self.f_upper(m.src),
            self.f_upper(m.dst),
            kron(inner.mat, Mat.identity(self.algebra_c.field, self.c.dim)),
        )

    def eta(self, y: ModuleObject) -> Morphism:
        return self.base.eta(y)

    def eps(self, x: ModuleObject) -> Morphism:
        return self.base.eps(x)

    def zeta(self, x: ModuleObject) -> Morphism:
        inner = self.base.zeta(tensor_obj(x, self.c))
        lifted = curry(inner, x, self.c)
        return Morphism(x, self.f_upper(self.f_shriek(x)), lifted.mat)

    def sigma(self, y: ModuleObject) -> Morphism:
        upper = self.base.f_upper(y)
        evmap = ev_morphism(self.c, upper)
        return self.base.sigma(y) @ self.base.f_shriek_mor(evmap)


# -- construction helpers --------------------------------------------------------


def wirthmueller_context(incl: HopfInclusion, label: str = "") -> AdjunctionContext:
    return WirthmuellerContext(incl, label)


def twist_context(c: ModuleObject, label: str = "") -> AdjunctionContext:
    return TwistContext(c, label)


def shifted_pair(ctx: AdjunctionContext, c: ModuleObject, label: str = "") -> AdjunctionContext:
    return ShiftedContext(ctx, c, label)


def make_group_wirthmueller(
    group_name: str, sub_name: str, field: FieldSpec
) -> tuple[AdjunctionContext, FiniteGroup, FiniteGroup]:
    """Wirthmüller context for a builtin subgroup pair, plus both groups."""
    group = builtin(group_name)
    elems = group.subgroup_elements(sub_name)
    incl, subgroup = subgroup_inclusion(group, elems, field, sub_name=sub_name)
    label = f"wirthmueller({group_name}/{sub_name}, {field})"
    return WirthmuellerContext(incl, label), group, subgroup


WIRTHMUELLER_PAIRS: tuple[tuple[str, str], ...] = (
    ("S3", "C3"),
    ("S3", "C2"),
    ("D4", "C2"),
    ("Q8", "C4"),
    ("C4", "C2"),
)


# -- the self-dual witness -------------------------------------------------------


@dataclass
class WirthmuellerData:
    """A Wirthmüller context together with a chosen object C of the source
    category and an isomorphism witness D f_!(S) -> f_!(C)."""

    ctx: AdjunctionContext
    c_obj: ModuleObject
    witness: Morphism

    def __post_init__(self):
        want_src = dual_obj(self.ctx.f_shriek(self.ctx.unit_c))
        want_dst = self.ctx.f_shriek(self.c_obj)
        if self.witness.src != want_src or self.witness.dst != want_dst:
            raise WitnessMissing(
                f"witness endpoints do not match D f_!(S) -> f_!(C) for C = {self.c_obj.label}"
            )
        if not self.witness.is_iso():
            raise WitnessMissing(
                f"witness for C = {self.c_obj.label} is not an isomorphism "
                f"(dims {self.witness.src.dim} -> {self.witness.dst.dim}, "
                f"rank {self.witness.mat.rank()})"
            )


def find_wirthmueller_data(
    ctx: AdjunctionContext,
    group: FiniteGroup | None = None,
    candidates: Sequence[ModuleObject] | None = None,
    rng: Random | None = None,
) -> WirthmuellerData:
    """Search for an object C with D f_!(S) isomorphic to f_!(C).

    The trivial module is tried first (for a group inclusion f_!(S) is a
    coset permutation module, self-dual on the nose, so the identity is a
    witness); then any supplied candidates; then the builtin 1-dimensional
    characters when the group is known.

    Raises:
        NoDualizingObjectFound: if no candidate admits an isomorphism.
    """
    target = dual_obj(ctx.f_shriek(ctx.unit_c))
    pool: list[ModuleObject] = [ctx.unit_c.relabel("trivial")]
    if candidates:
        pool.extend(candidates)
    if group is not None:
        for chi in group.characters(ctx.algebra_c.field):
            if chi.label != "chi0":
                pool.append(named_module(group, ctx.algebra_c, f"char:{chi.label}"))
    tried = []
    for c_obj in pool:
        shrieked = ctx.f_shriek(c_obj)
        if shrieked.action == target.action:
            witness = Morphism(target, shrieked, Mat.identity(ctx.algebra_c.field, target.dim))
            return WirthmuellerData(ctx, c_obj, witness)
        witness = find_invertible_intertwiner(target, shrieked, rng)
        if witness is not None:
            return WirthmuellerData(ctx, c_obj, witness)
        tried.append(c_obj.label)
    raise NoDualizingObjectFound(
        f"no isomorphism D f_!(S) -> f_!(C) found in {ctx.label}; tried C in {tried}"
    )


# -- the context where the old right adjoint becomes a left adjoint ---------------


class GrothendieckContext(AdjunctionContext):
    """Built from Wirthmüller data with an invertible comparison map: the
    second pair becomes (old f_*, Hom(C, f* -)), with unit and counit
    transported along the comparison isomorphism."""

    upper_is_star = False

    def __init__(self, wd: WirthmuellerData, label: str = ""):
        super().__init__()
        base = wd.ctx
        if not base.upper_is_star:
            raise ValueError("shifting the adjoints needs a base context with f^! = f*")
        self.wd = wd
        self.base = base
        self.algebra_c = base.algebra_c
        self.algebra_d = base.algebra_d
        self.unit_c = base.unit_c
        self.unit_d = base.unit_d
        self.label = label or f"grothendieck({base.label}, C={wd.c_obj.label})"

    def _calc(self):
        calc = self._memo.get("calc")
        if calc is None:
            from .maps import WirthmuellerCalculus

            calc = WirthmuellerCalculus(self.wd)
            self._memo["calc"] = calc
        return calc

    def _omega(self, x: ModuleObject) -> Morphism:
        key = ("omega", x)
        out = self._memo.get(key)
        if out is None:
            out = self._calc().omega(x).morphism
            self._memo[key] = out
        return out

    def _omega_inv(self, x: ModuleObject) -> Morphism:
        key = ("omega_inv", x)
        out = self._memo.get(key)
        if out is None:
            om = self._omega(x)
            if not om.is_iso():
                raise OmegaNotIso(
                    f"comparison map not invertible at {x.label} "
                    f"(dims {om.src.dim} -> {om.dst.dim}, rank {om.mat.rank()})"
                )
            out = om.inverse()
            self._memo[key] = out
        return out

    def f_star(self, y: ModuleObject) -> ModuleObject:
        return self.base.f_star(y)

    def f_shriek(self, x: ModuleObject) -> ModuleObject:
        return self.base.f_lower(x)

    def f_lower(self, x: ModuleObject) -> ModuleObject:
        return self.base.f_lower(x)

    def f_upper(self, y: ModuleObject) -> ModuleObject:
        return self._cached("upper", y, lambda y: hom_obj(self.wd.c_obj, self.base.f_star(y)))

    def f_star_mor(self, m: Morphism) -> Morphism:
        return self.base.f_star_mor(m)

    def f_shriek_mor(self, m: Morphism) -> Morphism:
        return self.base.f_lower_mor(m)

    def f_lower_mor(self, m: Morphism) -> Morphism:
        return self.base.f_lower_mor(m)

    def f_upper_mor(self, m: Morphism) -> Morphism:
        inner = self.base.f_star_mor(m)
        return Morphism(
            self.f_upper(m.src),
            self.f_upper(m.dst),
            kron(inner.mat, Mat.identity(self.algebra_c.field, self.wd.c_obj.dim)),
        )

    def eta(self, y: ModuleObject) -> Morphism:
        return self.base.eta(y)

    def eps(self, x: ModuleObject) -> Morphism:
        return self.base.eps(x)

    def zeta(self, x: ModuleObject) -> Morphism:
        c = self.wd.c_obj
        base = self.base
        om_inv = self._omega_inv(x)
        inner = base.f_star_mor(om_inv) @ base.zeta(tensor_obj(x, c))
        lifted = curry(inner, x, c)
        return Morphism(x, self.f_upper(self.f_shriek(x)), lifted.mat)

    def sigma(self, y: ModuleObject) -> Morphism:
        c = self.wd.c_obj
        base = self.base
        upper = self.f_upper(y)
        om = self._omega(upper)
        evmap = ev_morphism(c, base.f_star(y))
        inner = base.f_shriek_mor(
            Morphism(tensor_obj(upper, c), base.f_star(y), evmap.mat)
        )
        return base.sigma(y) @ inner @ om


def grothendieck_from_wirthmueller(
    wd: WirthmuellerData,
    samples: Sequence[ModuleObject] = (),
    label: str = "",
) -> GrothendieckContext:
    """Transport the right adjoint into a left adjoint along the comparison
    map, after checking that the comparison is invertible on the samples.

    Raises:
        OmegaNotIso: if any sampled comparison map is rank deficient.
    """
    ctx = GrothendieckContext(wd, label)
    for x in samples:
        ctx._omega_inv(x)
    return ctx
