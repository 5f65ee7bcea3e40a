"""Finite-dimensional modules over a cocommutative Hopf algebra: the closed
symmetric monoidal category they form, with all structure in fixed bases.

Conventions fixed once, package-wide:
  * X (x) Y has basis e_i (x) e_j at flat index i*dim(Y) + j.
  * Hom(X, W) has basis the elementary matrices E_ij (row i of W, column j
    of X) at flat index i*dim(X) + j; a linear map phi is flattened
    row-major, so vec(A phi B) = kron(A, B^T) vec(phi).
  * Under this flattening the associators and unitors are identity
    matrices and the symmetry is a block transposition; they are still
    materialized as Morphisms wherever a composite needs one.

Module and morphism constructors validate their defining equations on the
algebra's generator hint.  For a group algebra that is equivalent to
validating on all basis pairs: elements good against every right factor
are closed under products, and the generators reach everything.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from random import Random
from typing import Callable, Sequence

from .errors import ConfigError, NotDualizable
from .fields import FieldSpec
from .groups import FiniteGroup
from .hopf import HopfAlgebra
from .matrix import Mat, intertwiner_basis, kron
from .report import CheckEntry, CheckReport

_LABEL_CAP = 60


class ModuleObject:
    """A module over a HopfAlgebra: one action matrix per basis element."""

    __slots__ = ("algebra", "dim", "action", "label")

    def __init__(
        self,
        algebra: HopfAlgebra,
        dim: int,
        action: Sequence[Mat],
        label: str = "X",
        check: bool = True,
    ):
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(action)
        self.label = label
        if len(self.action) != algebra.dim:
            raise ConfigError(
                f"module {label!r} needs {algebra.dim} action matrices, got {len(self.action)}"
            )
        for m in self.action:
            if m.rows != dim or m.cols != dim:
                raise ConfigError(f"module {label!r}: action matrix is {m.rows}x{m.cols}, want {dim}x{dim}")
        if check:
            self._validate()

    def _validate(self) -> None:
        f = self.algebra.field
        one = Mat.zeros(f, self.dim, self.dim)
        for i, c in enumerate(self.algebra.unit):
            if c:
                one = one + self.action[i].scale(c)
        if not one.is_identity():
            raise ConfigError(f"module {self.label!r}: the unit does not act as the identity")
        for g in self.algebra.generators:
            rho_g = self.action[g]
            for j in range(self.algebra.dim):
                acc = Mat.zeros(f, self.dim, self.dim)
                for t, c in self.algebra.mult[g][j]:
                    acc = acc + self.action[t].scale(c)
                if acc != rho_g @ self.action[j]:
                    raise ConfigError(
                        f"module {self.label!r}: action not multiplicative at basis pair ({g}, {j})"
                    )

    def act(self, coeffs: Sequence) -> Mat:
        """Action of the algebra element with the given dense coefficients."""
        live = [(i, c) for i, c in enumerate(coeffs) if c]
        if len(live) == 1:
            i, c = live[0]
            return self.action[i] if c == 1 else self.action[i].scale(c)
        out = Mat.zeros(self.algebra.field, self.dim, self.dim)
        for i, c in live:
            out = out + self.action[i].scale(c)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModuleObject)
            and self.algebra is other.algebra
            and self.dim == other.dim
            and self.action == other.action
        )

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.dim, self.action))

    def __repr__(self) -> str:
        return f"ModuleObject({self.label}, dim={self.dim})"

    def relabel(self, label: str) -> "ModuleObject":
        return ModuleObject(self.algebra, self.dim, self.action, label, check=False)


def _join_label(fmt: str, *parts: str) -> str:
    out = fmt.format(*parts)
    if len(out) > _LABEL_CAP:
        out = out[: _LABEL_CAP - 3] + "..."
    return out


class Morphism:
    """A module map; the intertwining equation is checked on construction."""

    __slots__ = ("src", "dst", "mat")

    def __init__(self, src: ModuleObject, dst: ModuleObject, mat: Mat, check: bool = True):
        if src.algebra is not dst.algebra:
            raise ConfigError("morphism endpoints live over different algebras")
        if mat.rows != dst.dim or mat.cols != src.dim:
            raise ValueError(
                f"morphism {src.label} -> {dst.label} needs a {dst.dim}x{src.dim} matrix, "
                f"got {mat.rows}x{mat.cols}"
            )
        self.src = src
        self.dst = dst
        self.mat = mat
        if check:
            for g in src.algebra.generators:
                if dst.action[g] @ mat != mat @ src.action[g]:
                    raise ValueError(
                        f"matrix {src.label} -> {dst.label} does not intertwine at basis element {g}"
                    )

    @classmethod
    def identity(cls, x: ModuleObject) -> "Morphism":
        return cls(x, x, Mat.identity(x.algebra.field, x.dim), check=False)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        if other.dst != self.src:
            raise ValueError(
                f"cannot compose: {other.src.label} -> {other.dst.label} "
                f"then {self.src.label} -> {self.dst.label}"
            )
        return Morphism(other.src, self.dst, self.mat @ other.mat, check=False)

    def tensor(self, other: "Morphism") -> "Morphism":
        return Morphism(
            tensor_obj(self.src, other.src),
            tensor_obj(self.dst, other.dst),
            kron(self.mat, other.mat),
            check=False,
        )

    def is_iso(self) -> bool:
        return self.mat.rows == self.mat.cols and self.mat.rank() == self.mat.rows

    def inverse(self) -> "Morphism":
        return Morphism(self.dst, self.src, self.mat.inverse(), check=False)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Morphism)
            and self.src == other.src
            and self.dst == other.dst
            and self.mat == other.mat
        )

    def __hash__(self) -> int:
        return hash((self.src, self.dst, self.mat))

    def __repr__(self) -> str:
        return f"Morphism({self.src.label} -> {self.dst.label}, {self.mat.rows}x{self.mat.cols})"


# -- objects -------------------------------------------------------------------


def unit_object(h: HopfAlgebra, label: str = "1") -> ModuleObject:
    f = h.field
    action = [Mat(f, [[h.counit[i]]]) for i in range(h.dim)]
    return ModuleObject(h, 1, action, label, check=False)


def _same_algebra(x: ModuleObject, y: ModuleObject) -> HopfAlgebra:
    if x.algebra is not y.algebra:
        raise ConfigError(f"objects {x.label!r} and {y.label!r} live over different algebras")
    return x.algebra

def tensor_obj(x: ModuleObject, y: ModuleObject) -> ModuleObject:
    h = _same_algebra(x, y)
    f = h.field
    action = []
    for i in range(h.dim):
        acc = Mat.zeros(f, x.dim * y.dim, x.dim * y.dim)
        for j, k, c in h.comult[i]:
            acc = acc + kron(x.action[j], y.action[k]).scale(c)
        action.append(acc)
    return ModuleObject(h, x.dim * y.dim, action, _join_label("({0}*{1})", x.label, y.label), check=False)


def hom_obj(x: ModuleObject, w: ModuleObject) -> ModuleObject:
    h = _same_algebra(x, w)
    f = h.field
    action = []
    for i in range(h.dim):
        acc = Mat.zeros(f, w.dim * x.dim, w.dim * x.dim)
        for j, k, c in h.comult[i]:
            s_k = Mat.zeros(f, x.dim, x.dim)
            for t, c2 in h.antipode_sparse(k):
                s_k = s_k + x.action[t].scale(c2)
            acc = acc + kron(w.action[j], s_k.transpose()).scale(c)
        action.append(acc)
    return ModuleObject(h, w.dim * x.dim, action, _join_label("Hom({0},{1})", x.label, w.label), check=False)


def dual_obj(x: ModuleObject) -> ModuleObject:
    d = hom_obj(x, unit_object(x.algebra))
    return d.relabel(_join_label("D({0})", x.label))


def direct_sum(x: ModuleObject, y: ModuleObject) -> ModuleObject:
    h = _same_algebra(x, y)
    f = h.field
    action = [
        Mat.from_blocks(
            [
                [x.action[i], Mat.zeros(f, x.dim, y.dim)],
                [Mat.zeros(f, y.dim, x.dim), y.action[i]],
            ]
        )
        for i in range(h.dim)
    ]
    return ModuleObject(h, x.dim + y.dim, action, _join_label("({0}+{1})", x.label, y.label), check=False)


# -- structural isomorphisms ----------------------------------------------------


def swap_morphism(x: ModuleObject, y: ModuleObject) -> Morphism:
    """The symmetry X (x) Y -> Y (x) X; intertwining consumes
    cocommutativity, so this is where that hypothesis is exercised."""
    image = [0] * (x.dim * y.dim)
    for i in range(x.dim):
        for j in range(y.dim):
            image[i * y.dim + j] = j * x.dim + i
    mat = Mat.permutation(x.algebra.field, image)
    return Morphism(tensor_obj(x, y), tensor_obj(y, x), mat)


def left_unitor(x: ModuleObject) -> Morphism:
    src = tensor_obj(unit_object(x.algebra), x)
    return Morphism(src, x, Mat.identity(x.algebra.field, x.dim), check=False)


def right_unitor(x: ModuleObject) -> Morphism:
    src = tensor_obj(x, unit_object(x.algebra))
    return Morphism(src, x, Mat.identity(x.algebra.field, x.dim), check=False)


def associator(x: ModuleObject, y: ModuleObject, z: ModuleObject) -> Morphism:
    src = tensor_obj(tensor_obj(x, y), z)
    dst = tensor_obj(x, tensor_obj(y, z))
    return Morphism(src, dst, Mat.identity(x.algebra.field, src.dim), check=False)


# -- currying -------------------------------------------------------------------


def curry_mat(field: FieldSpec, f: Mat, dx: int, dxp: int, dw: int) -> Mat:
    """Reshape a map X (x) X' -> W into X -> Hom(X', W) in the fixed bases."""
    if f.rows != dw or f.cols != dx * dxp:
        raise ValueError(f"cannot curry a {f.rows}x{f.cols} matrix with dims ({dx}, {dxp}, {dw})")
    rows = [
        [f.data[i][k * dxp + j] for k in range(dx)]
        for i in range(dw)
        for j in range(dxp)
    ]
    return Mat(field, rows)


def uncurry_mat(field: FieldSpec, g: Mat, dx: int, dxp: int, dw: int) -> Mat:
    """Inverse reshape: X -> Hom(X', W) back to X (x) X' -> W."""
    if g.rows != dw * dxp or g.cols != dx:
        raise ValueError(f"cannot uncurry a {g.rows}x{g.cols} matrix with dims ({dx}, {dxp}, {dw})")
    rows = [
        [g.data[i * dxp + j][k] for k in range(dx) for j in range(dxp)]
        for i in range(dw)
    ]
    return Mat(field, rows)


def curry(m: Morphism, x: ModuleObject, xprime: ModuleObject) -> Morphism:
    """Adjoint of m: X (x) X' -> W across the tensor-Hom adjunction."""
    if m.src != tensor_obj(x, xprime):
        raise ValueError(f"curry: source of {m!r} is not {x.label} (x) {xprime.label}")
    w = m.dst
    return Morphism(
        x, hom_obj(xprime, w), curry_mat(m.mat.field, m.mat, x.dim, xprime.dim, w.dim)
    )


def uncurry(m: Morphism, xprime: ModuleObject, w: ModuleObject) -> Morphism:
    """Adjoint of m: X -> Hom(X', W) back across the adjunction."""
    if m.dst != hom_obj(xprime, w):
        raise ValueError(f"uncurry: target of {m!r} is not Hom({xprime.label}, {w.label})")
    return Morphism(
        tensor_obj(m.src, xprime),
        w,
        uncurry_mat(m.mat.field, m.mat, m.src.dim, xprime.dim, w.dim),
    )


def ev_morphism(x: ModuleObject, w: ModuleObject) -> Morphism:
    """Evaluation Hom(X, W) (x) X -> W, the counit of ((-) (x) X, Hom(X, -))."""
    return uncurry(Morphism.identity(hom_obj(x, w)), x, w)


def coev_morphism(x: ModuleObject) -> Morphism:
    """The dual-basis element S -> X (x) DX."""
    h = x.algebra
    col = [0] * (x.dim * x.dim)
    for i in range(x.dim):
        col[i * x.dim + i] = 1
    return Morphism(unit_object(h), tensor_obj(x, dual_obj(x)), Mat.column(h.field, col))


def hom_post(m: Morphism, x: ModuleObject) -> Morphism:
    """Hom(X, -) on a morphism m: postcompose with m inside the hom."""
    mat = kron(m.mat, Mat.identity(m.mat.field, x.dim))
    return Morphism(hom_obj(x, m.src), hom_obj(x, m.dst), mat, check=False)


def hom_pre(m: Morphism, w: ModuleObject) -> Morphism:
    """Hom(-, W) on a morphism m: precompose with m inside the hom."""
    mat = kron(Mat.identity(m.mat.field, w.dim), m.mat.transpose())
    return Morphism(hom_obj(m.dst, w), hom_obj(m.src, w), mat, check=False)


def dual_morphism(m: Morphism) -> Morphism:
    """The dual of a morphism: the transposed matrix between the duals."""
    return Morphism(dual_obj(m.dst), dual_obj(m.src), m.mat.transpose(), check=False)


def tensor_into_hom(y: ModuleObject, x: ModuleObject, w: ModuleObject) -> Morphism:
    """Move a tensor factor inside an internal hom:
    Y (x) Hom(X, W) -> Hom(X, Y (x) W)."""
    inner = Morphism.identity(y).tensor(ev_morphism(x, w))
    return curry(inner, tensor_obj(y, hom_obj(x, w)), x)


def hom_tensor_shuffle(x: ModuleObject, xprime: ModuleObject, w: ModuleObject) -> Morphism:
    """The canonical iso Hom(X, Hom(X', W)) -> Hom(X (x) X', W):
    evaluate twice, then curry over the tensor pair."""
    h = hom_obj(x, hom_obj(xprime, w))
    inner = ev_morphism(xprime, w) @ ev_morphism(x, hom_obj(xprime, w)).tensor(
        Morphism.identity(xprime)
    )
    return curry(inner, h, tensor_obj(x, xprime))


@dataclass
class TensorHomAdjunction:
    """The hom-set bijection for ((-) (x) X', Hom(X', -)) at (x, x', w),
    with bases of both intertwiner spaces and the counit."""

    x: ModuleObject
    xprime: ModuleObject
    w: ModuleObject
    source_basis: list[Morphism]
    target_basis: list[Morphism]
    ev: Morphism

    def forward(self, m: Morphism) -> Morphism:
        return curry(m, self.x, self.xprime)

    def backward(self, m: Morphism) -> Morphism:
        return uncurry(m, self.xprime, self.w)


def intertwiner_space(x: ModuleObject, y: ModuleObject) -> list[Morphism]:
    """A canonical basis of the module maps x -> y."""
    h = _same_algebra(x, y)
    constraints = [(y.action[g], x.action[g]) for g in h.generators]
    mats = intertwiner_basis(h.field, (x.dim, y.dim), constraints)
    return [Morphism(x, y, m, check=False) for m in mats]


def tensor_hom_adjunction(
    x: ModuleObject, xprime: ModuleObject, w: ModuleObject
) -> TensorHomAdjunction:
    return TensorHomAdjunction(
        x,
        xprime,
        w,
        intertwiner_space(tensor_obj(x, xprime), w),
        intertwiner_space(x, hom_obj(xprime, w)),
        ev_morphism(xprime, w),
    )


# -- duality --------------------------------------------------------------------


def dual_ev_morphism(x: ModuleObject) -> Morphism:
    """Pairing DX (x) X -> S."""
    return ev_morphism(x, unit_object(x.algebra))


def nu_map(x: ModuleObject, w: ModuleObject) -> Morphism:
    """The comparison DX (x) W -> Hom(X, W): adjoint of evaluate-then-scale."""
    h = _same_algebra(x, w)
    f = h.field
    dx, dw = x.dim, w.dim
    evd = dual_ev_morphism(x)
    # (DX (x) W) (x) X -> (DX (x) X) (x) W -> S (x) W = W, then curry over X
    middle_swap = kron(Mat.identity(f, dx), swap_morphism(w, x).mat)
    raw = kron(evd.mat, Mat.identity(f, dw)) @ middle_swap
    src = tensor_obj(dual_obj(x), w)
    return Morphism(src, hom_obj(x, w), curry_mat(f, raw, dx * dw, dx, dw))


def rho_map(x: ModuleObject) -> Morphism:
    """Double-dual comparison X -> DDX."""
    raw = dual_ev_morphism(x).mat @ swap_morphism(x, dual_obj(x)).mat
    g = curry_mat(x.algebra.field, raw, x.dim, x.dim, 1)
    return Morphism(x, dual_obj(dual_obj(x)), g)


def twisted_dual(x: ModuleObject, w: ModuleObject) -> ModuleObject:
    d = hom_obj(x, w)
    return d.relabel(_join_label("D[{1}]({0})", x.label, w.label))


def rho_w_map(x: ModuleObject, w: ModuleObject) -> Morphism:
    """Twisted double-dual comparison X -> Hom(Hom(X, W), W)."""
    h = _same_algebra(x, w)
    dwx = hom_obj(x, w)
    raw = ev_morphism(x, w).mat @ swap_morphism(x, dwx).mat
    g = curry_mat(h.field, raw, x.dim, dwx.dim, w.dim)
    return Morphism(x, hom_obj(dwx, w), g)


@dataclass
class DualityData:
    obj: ModuleObject
    dual: ModuleObject
    ev: Morphism
    coev: Morphism


def duality_data(x: ModuleObject) -> DualityData:
    """Dual object with evaluation and coevaluation; zig-zags are checked
    exactly (they cannot fail here, the guard catches broken inputs)."""
    f = x.algebra.field
    d = dual_obj(x)
    ev = dual_ev_morphism(x)
    coev = coev_morphism(x)
    i_x = Mat.identity(f, x.dim)
    first = kron(i_x, ev.mat) @ kron(coev.mat, i_x)
    second = kron(ev.mat, i_x) @ kron(i_x, coev.mat)
    if not first.is_identity() or not second.is_identity():
        raise NotDualizable(f"zig-zag identities fail for {x.label!r}")
    return DualityData(x, d, ev, coev)


def is_invertible(x: ModuleObject) -> tuple[bool, Morphism]:
    """Whether tensoring with x is an equivalence; the witness is coev,
    which must be square (forcing dim 1) and nonzero."""
    coev = duality_data(x).coev
    ok = coev.mat.rows == coev.mat.cols and not coev.mat.is_zero()
    return ok, coev


# -- seeded object families ------------------------------------------------------


def named_module(group: FiniteGroup, algebra: HopfAlgebra, name: str) -> ModuleObject:
    """Builtin module constructors for group algebras.

    Names: "trivial", "regular", "perm:<subgroup>", "char:<label>", "std"
    (the sum-zero part of the natural permutation module, for groups that
    carry permutation coordinates).
    """
    f = algebra.field
    if name == "trivial":
        return ModuleObject(algebra, 1, [Mat(f, [[1]]) for _ in range(group.order)], "trivial", check=False)
    if name == "regular":
        action = [
            Mat.permutation(f, [group.mul(g, h) for h in range(group.order)])
            for g in range(group.order)
        ]
        return ModuleObject(algebra, group.order, action, "regular", check=False)
    if name.startswith("perm:"):
        sub = name.split(":", 1)[1]
        elems = group.subgroup_elements(sub)
        cosets = group.left_cosets(elems)
        where = {g: i for i, coset in enumerate(cosets) for g in coset}
        action = [
            Mat.permutation(f, [where[group.mul(g, coset[0])] for coset in cosets])
            for g in range(group.order)
        ]
        return ModuleObject(algebra, len(cosets), action, name, check=False)
    if name.startswith("char:"):
        chi = group.character_by_name(f, name.split(":", 1)[1])
        action = [Mat(f, [[chi.values[g]]]) for g in range(group.order)]
        return ModuleObject(algebra, 1, action, name, check=False)
    if name == "std":
        if group.perm_elements is None:
            raise ConfigError(f"group {group.name} has no permutation coordinates for 'std'")
        pts = len(group.perm_elements[0])
        n = pts - 1

        def coords(a: int, b: int) -> list:
            # e_a - e_b in the basis v_j = e_j - e_{j+1}
            v = [0] * n
            lo, hi, sign = (a, b, 1) if a < b else (b, a, -1)
            for j in range(lo, hi):
                v[j] = sign
            return v

        action = []
        for g in range(group.order):
            perm = group.perm_elements[g]
            cols = [coords(perm[j], perm[j + 1]) for j in range(n)]
            action.append(Mat(f, [[cols[j][i] for j in range(n)] for i in range(n)]))
        return ModuleObject(algebra, n, action, "std")
    raise ConfigError(f"unknown module name {name!r}")


def module_from_json(algebra: HopfAlgebra, payload: dict, label: str = "custom") -> ModuleObject:
    """Parse {"dim": n, "action": {"<basis index>": [[...]], ...}}."""
    if not isinstance(payload, dict) or set(payload) != {"dim", "action"}:
        raise ConfigError("module JSON must have exactly the keys 'dim' and 'action'")
    dim = payload["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise ConfigError("module dim must be a nonnegative integer")
    raw = payload["action"]
    if not isinstance(raw, dict) or sorted(raw) != sorted(str(i) for i in range(algebra.dim)):
        raise ConfigError(f"module action must have one entry per basis index 0..{algebra.dim - 1}")
    f = algebra.field
    action = []
    for i in range(algebra.dim):
        rows = raw[str(i)]
        if not isinstance(rows, list) or len(rows) != dim or any(len(r) != dim for r in rows):
            raise ConfigError(f"action of basis element {i} must be a {dim}x{dim} matrix")
        action.append(Mat(f, [[f.parse_scalar(x) for x in r] for r in rows]))
    return ModuleObject(algebra, dim, action, label)


def base_family(group: FiniteGroup, algebra: HopfAlgebra) -> list[ModuleObject]:
    """The generating family for seeded sampling: trivial, all 1-dim
    characters, coset permutation modules, and the regular module."""
    out = [named_module(group, algebra, "trivial")]
    for chi in group.characters(algebra.field):
        if chi.label != "chi0":
            out.append(named_module(group, algebra, f"char:{chi.label}"))
    for sub in sorted(group.subgroups):
        out.append(named_module(group, algebra, f"perm:{sub}"))
    out.append(named_module(group, algebra, "regular"))
    return out


def sample_objects(
    group: FiniteGroup,
    algebra: HopfAlgebra,
    rng: Random,
    count: int,
    dim_cap: int = 6,
) -> list[ModuleObject]:
    """Deterministic object family closed under (x), (+), Hom, D, capped in
    dimension so downstream composites stay small."""
    pool = [x for x in base_family(group, algebra) if x.dim <= dim_cap]
    if not pool:
        pool = [named_module(group, algebra, "trivial")]
    out: list[ModuleObject] = []
    attempts = 0
    while len(out) < count and attempts < count * 20:
        attempts += 1
        op = rng.randrange(6)
        if op == 0 or len(pool) > 3 * count:
            cand = rng.choice(pool)
        elif op == 1:
            cand = tensor_obj(rng.choice(pool), rng.choice(pool))
        elif op == 2:
            cand = direct_sum(rng.choice(pool), rng.choice(pool))
        elif op == 3:
            cand = hom_obj(rng.choice(pool), rng.choice(pool))
        else:
            cand = dual_obj(rng.choice(pool))
        if cand.dim <= dim_cap:
            pool.append(cand)
            out.append(cand)
    while len(out) < count:
        out.append(rng.choice(pool))
    return out


def find_invertible_intertwiner(
    x: ModuleObject, y: ModuleObject, rng: Random | None = None, retries: int = 8
) -> Morphism | None:
    """An isomorphism x -> y if one can be found in the intertwiner space.

    Single basis elements are tried first (deterministic); then random
    small-integer combinations over the rationals, or exhaustive/seeded
    coefficient enumeration over small prime fields.
    """
    if x.dim != y.dim:
        return None
    basis = intertwiner_space(x, y)
    if not basis:
        return None
    full = x.dim
    for m in basis:
        if m.mat.rank() == full:
            return m

    def combine(coeffs) -> Mat:
        acc = Mat.zeros(x.algebra.field, y.dim, x.dim)
        for c, m in zip(coeffs, basis):
            if c:
                acc = acc + m.mat.scale(c)
        return acc

    f = x.algebra.field
    if f.kind == "Fp" and f.p ** len(basis) <= 4096:
        for coeffs in itertools.product(range(f.p), repeat=len(basis)):
            mat = combine(coeffs)
            if mat.rank() == full:
                return Morphism(x, y, mat, check=False)
        return None
    rng = rng or Random(0)
    for _ in range(retries):
        coeffs = [f.sample_scalar(rng, small=True) for _ in basis]
        mat = combine(coeffs)
        if mat.rank() == full:
            return Morphism(x, y, mat, check=False)
    return None


# -- dualizing-object battery ----------------------------------------------------


def _map_entry(name: str, at: tuple[str, ...], m: Morphism, passed: bool, details: str = "") -> CheckEntry:
    return CheckEntry(
        name,
        at,
        passed,
        dims=(m.src.dim, m.dst.dim),
        rank=m.mat.rank(),
        is_iso=m.is_iso(),
        details=details,
    )


def dualizing_object_battery(
    w: ModuleObject, samples: Sequence[ModuleObject], context: str = ""
) -> CheckReport:
    """Instance-wise check that w is dualizing exactly when it is invertible:
    the unit object is w-reflexive iff w is invertible, and then every
    sample is w-reflexive, with a twisted-double-dual isomorphism witness."""
    report = CheckReport(battery="dualizing", context=context or w.label)
    invertible, coev = is_invertible(w)
    s = unit_object(w.algebra, "S")
    rho_s = rho_w_map(s, w)
    report.add(
        _map_entry(
            "invertible-iff-unit-reflexive",
            (w.label, "S"),
            rho_s,
            rho_s.is_iso() == invertible,
            details=f"coev dims ({coev.src.dim}, {coev.dst.dim}); invertible={invertible}",
        )
    )
    for x in samples:
        rho_x = rho_w_map(x, w)
        report.add(
            _map_entry(
                "twisted-double-dual-comparison",
                (w.label, x.label),
                rho_x,
                (not invertible) or rho_x.is_iso(),
            )
        )
        if invertible:
            witness = find_invertible_intertwiner(twisted_dual(twisted_dual(x, w), w), x)
            report.add(
                CheckEntry(
                    "twisted-dual-involution-witness",
                    (w.label, x.label),
                    witness is not None,
                    details="" if witness else "no isomorphism found in the intertwiner space",
                )
            )
    return report
