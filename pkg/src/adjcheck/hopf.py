"""Finite-dimensional Hopf algebras by structure constants, and free
inclusions.

Structure tensors are stored sparsely (group algebras have one term per
slot), so the axiom sweep over all basis tuples stays cheap even for the
order-24 builtin.

An inclusion carries a free basis that is simultaneously a basis for the
left and the right module structure, plus both decomposition tables:
products b*b_i rewritten with coefficients on the right drive induction,
products b_i*b rewritten with coefficients on the left drive coinduction.
For group algebras such a basis is a common transversal of left and right
cosets; the greedy scan below always finds one (any partial transversal
that blocks a right coset would have to cover all left cosets meeting its
double coset, and counting cosets inside the double coset rules that out).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotFree
from .fields import FieldSpec
from .groups import FiniteGroup
from .matrix import Mat
from .report import CheckEntry, CheckReport

SparseVec = tuple[tuple[int, object], ...]
SparsePairs = tuple[tuple[int, int, object], ...]


class HopfAlgebra:
    """A Hopf algebra over a FieldSpec, all five structure maps explicit.

    Args:
        field: coefficient field.
        dim: dimension as a vector space.
        mult: mult[i][j] is the sparse vector of e_i * e_j.
        unit: dense coefficient tuple of 1.
        comult: comult[i] is a sparse list of (j, k, c) with
            Delta(e_i) = sum c * e_j (x) e_k.
        counit: dense tuple of counit values on the basis.
        antipode: dim x dim matrix of the antipode.
        label: display name used in reports.
        generators: basis indices whose left-multiplications generate the
            algebra multiplicatively (validation hint; defaults to all).
    """

    def __init__(
        self,
        field: FieldSpec,
        dim: int,
        mult: Sequence[Sequence[SparseVec]],
        unit: Sequence,
        comult: Sequence[SparsePairs],
        counit: Sequence,
        antipode: Mat,
        label: str,
        generators: tuple[int, ...] | None = None,
    ):
        self.field = field
        self.dim = dim
        self.mult = tuple(tuple(tuple(sv) for sv in row) for row in mult)
        self.unit = tuple(field.canon(x) for x in unit)
        self.comult = tuple(tuple(comult_i) for comult_i in comult)
        self.counit = tuple(field.canon(x) for x in counit)
        self.antipode = antipode
        self.label = label
        self.generators = generators if generators is not None else tuple(range(dim))
        if len(self.mult) != dim or len(self.unit) != dim or len(self.comult) != dim:
            raise ValueError(f"structure tables do not match dim={dim}")
        if antipode.rows != dim or antipode.cols != dim:
            raise ValueError("antipode must be dim x dim")

    def __repr__(self) -> str:
        return f"HopfAlgebra({self.label}, dim={self.dim})"

    # -- products ------------------------------------------------------------

    def product_dicts(self, x: dict, y: dict) -> dict:
        red = self.field.reduce
        out: dict = {}
        for i, cx in x.items():
            if not cx:
                continue
            row = self.mult[i]
            for j, cy in y.items():
                if not cy:
                    continue
                cxy = cx * cy
                for t, c in row[j]:
                    out[t] = out.get(t, 0) + cxy * c
        return {t: v for t, v in ((t, red(v)) for t, v in out.items()) if v}

    def product_dense(self, x: Sequence, y: Sequence) -> tuple:
        xd = {i: c for i, c in enumerate(x) if c}
        yd = {j: c for j, c in enumerate(y) if c}
        prod = self.product_dicts(xd, yd)
        return tuple(prod.get(t, 0) for t in range(self.dim))

    def antipode_sparse(self, k: int) -> SparseVec:
        return tuple((t, c) for t, c in enumerate(row[k] for row in self.antipode.data) if c)

    def counit_of(self, x: dict):
        return self.field.reduce(sum(c * self.counit[i] for i, c in x.items()))


def group_algebra(group: FiniteGroup, field: FieldSpec) -> HopfAlgebra:
    """The group algebra with its standard Hopf structure: elements are
    group-like (comultiplication g -> g (x) g, antipode g -> g^-1)."""
    n = group.order
    mult = [[((group.mul(i, j), 1),) for j in range(n)] for i in range(n)]
    unit = [1 if i == group.identity else 0 for i in range(n)]
    comult = [((i, i, 1),) for i in range(n)]
    counit = [1] * n
    antipode = Mat.permutation(field, group.inverse)
    gens = tuple(dict.fromkeys(group.generating_set() + (group.identity,)))
    return HopfAlgebra(field, n, mult, unit, comult, counit, antipode, f"{field}[{group.name}]", gens)


# -- axiom verification --------------------------------------------------------


def hopf_axiom_entries(h: HopfAlgebra) -> list[CheckEntry]:
    """All Hopf axioms plus cocommutativity, with the first failing basis
    tuple recorded per axiom."""
    f = h.field
    red = f.reduce
    at = (h.label,)
    entries = []

    def basis(i):
        return {i: 1}

    def check(name, failure):
        entries.append(
            CheckEntry(name, at, failure is None, details="" if failure is None else failure)
        )

    one = {i: c for i, c in enumerate(h.unit) if c}

    fail = None
    for i in range(h.dim):
        if h.product_dicts(one, basis(i)) != basis(i) or h.product_dicts(basis(i), one) != basis(i):
            fail = f"unit fails at basis index {i}"
            break
    check("algebra-unit", fail)

    fail = None
    for i in range(h.dim):
        for j in range(h.dim):
            ij = h.product_dicts(basis(i), basis(j))
            for k in range(h.dim):
                lhs = h.product_dicts(ij, basis(k))
                rhs = h.product_dicts(basis(i), h.product_dicts(basis(j), basis(k)))
                if lhs != rhs:
                    fail = f"associativity fails at ({i}, {j}, {k})"
                    break
            if fail:
                break
        if fail:
            break
    check("algebra-associativity", fail)

    def delta(i) -> dict:
        out: dict = {}
        for j, k, c in h.comult[i]:
            out[(j, k)] = red(out.get((j, k), 0) + c)
        return {key: v for key, v in out.items() if v}

    def pair_product(x: dict, y: dict) -> dict:
        out: dict = {}
        for (a, b), cx in x.items():
            for (c, d), cy in y.items():
                left = h.product_dicts(basis(a), basis(c))
                right = h.product_dicts(basis(b), basis(d))
                cxy = cx * cy
                for s, cl in left.items():
                    for t, cr in right.items():
                        key = (s, t)
                        out[key] = out.get(key, 0) + cxy * cl * cr
        return {k: v for k, v in ((k, red(v)) for k, v in out.items()) if v}

    fail = None
    for i in range(h.dim):
        d = delta(i)
        lhs: dict = {}
        for (j, k), c in d.items():
            for (a, b), c2 in delta(j).items():
                key = (a, b, k)
                lhs[key] = red(lhs.get(key, 0) + c * c2)
        rhs: dict = {}
        for (j, k), c in d.items():
            for (a, b), c2 in delta(k).items():
                key = (j, a, b)
                rhs[key] = red(rhs.get(key, 0) + c * c2)
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            fail = f"coassociativity fails at basis index {i}"
            break
    check("coassociativity", fail)

    fail = None
    for i in range(h.dim):
        d = delta(i)
        left: dict = {}
        right: dict = {}
        for (j, k), c in d.items():
            left[k] = red(left.get(k, 0) + c * h.counit[j])
            right[j] = red(right.get(j, 0) + c * h.counit[k])
        if {k: v for k, v in left.items() if v} != basis(i) or {
            k: v for k, v in right.items() if v
        } != basis(i):
            fail = f"counit axiom fails at basis index {i}"
            break
    check("counit-axiom", fail)

    fail = None
    d_one: dict = {}
    for i, c in one.items():
        for (j, k), c2 in delta(i).items():
            d_one[(j, k)] = red(d_one.get((j, k), 0) + c * c2)
    d_one = {k: v for k, v in d_one.items() if v}
    want_one = {(a, b): red(ca * cb) for a, ca in one.items() for b, cb in one.items()}
    if d_one != want_one:
        fail = "comultiplication does not preserve the unit"
    else:
        for i in range(h.dim):
            for j in range(h.dim):
                prod = h.product_dicts(basis(i), basis(j))
                lhs = {}
                for t, c in prod.items():
                    for (a, b), c2 in delta(t).items():
                        lhs[(a, b)] = red(lhs.get((a, b), 0) + c * c2)
                lhs = {k: v for k, v in lhs.items() if v}
                rhs = pair_product(delta(i), delta(j))
                if lhs != rhs:
                    fail = f"comultiplication is not multiplicative at ({i}, {j})"
                    break
            if fail:
                break
    check("comult-is-algebra-map", fail)

    fail = None
    if h.counit_of(one) != f.canon(1):
        fail = "counit(1) != 1"
    else:
        for i in range(h.dim):
            for j in range(h.dim):
                lhs = h.counit_of(h.product_dicts(basis(i), basis(j)))
                if lhs != red(h.counit[i] * h.counit[j]):
                    fail = f"counit is not multiplicative at ({i}, {j})"
                    break
            if fail:
                break
    check("counit-is-algebra-map", fail)

    fail = None
    for i in range(h.dim):
        target = {t: red(h.counit[i] * c) for t, c in one.items()}
        target = {t: v for t, v in target.items() if v}
        left_sum: dict = {}
        right_sum: dict = {}
        for (j, k), c in delta(i).items():
            sj = dict(h.antipode_sparse(j))
            sk = dict(h.antipode_sparse(k))
            for t, v in h.product_dicts(sj, basis(k)).items():
                left_sum[t] = red(left_sum.get(t, 0) + c * v)
            for t, v in h.product_dicts(basis(j), sk).items():
                right_sum[t] = red(right_sum.get(t, 0) + c * v)
        left_sum = {t: v for t, v in left_sum.items() if v}
        right_sum = {t: v for t, v in right_sum.items() if v}
        if left_sum != target or right_sum != target:
            fail = f"antipode axiom fails at basis index {i}"
            break
    check("antipode-axiom", fail)

    fail = None
    for i in range(h.dim):
        d = delta(i)
        flipped = {(k, j): c for (j, k), c in d.items()}
        if flipped != d:
            fail = f"not cocommutative at basis index {i}"
            break
    check("cocommutativity", fail)

    return entries


def verify_hopf(h: HopfAlgebra) -> CheckReport:
    report = CheckReport(battery="hopf-axioms", context=h.label)
    report.extend(hopf_axiom_entries(h))
    return report


# -- free inclusions -----------------------------------------------------------


@dataclass
class HopfInclusion:
    """A Hopf subalgebra embedding with a two-sided free basis.

    rewrite[g][i][j] is the dense A-coefficient vector a with
        e_g * b_i = sum_j b_j * embed(a_ji),
    left_rewrite[g][i][j] the vector a' with
        b_i * e_g = sum_j embed(a'_ij) * b_j.
    unit_left/unit_right decompose 1_B the same two ways.
    """

    sub: HopfAlgebra
    big: HopfAlgebra
    embed: Mat
    free_basis: tuple[tuple, ...]
    rewrite: tuple
    left_rewrite: tuple
    unit_left: tuple
    unit_right: tuple

    @property
    def r(self) -> int:
        return len(self.free_basis)

    def embed_dense(self, a_vec: Sequence) -> tuple:
        col = self.embed @ Mat.column(self.big.field, list(a_vec))
        return tuple(col.data[i][0] for i in range(self.big.dim))


class _SpanTracker:
    """Incremental row space: add vectors, track rank, support rollback."""

    def __init__(self, field: FieldSpec, width: int):
        self.field = field
        self.width = width
        self.rows: list[list] = []
        self.pivot_cols: list[int] = []

    def _reduce(self, vec: list) -> list:
        f = self.field
        for row, pc in zip(self.rows, self.pivot_cols):
            x = vec[pc]
            if x:
                vec = [f.reduce(a - x * b) for a, b in zip(vec, row)]
        return vec

    def try_add(self, vec: Sequence) -> bool:
        f = self.field
        v = self._reduce([f.canon(x) for x in vec])
        for c, x in enumerate(v):
            if x:
                inv = f.inv(x)
                v = [f.reduce(inv * a) for a in v]
                self.rows.append(v)
                self.pivot_cols.append(c)
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)

    def snapshot(self):
        return len(self.rows)

    def rollback(self, mark) -> None:
        del self.rows[mark:]
        del self.pivot_cols[mark:]


def compute_free_basis(big: HopfAlgebra, embed: Mat, sub: HopfAlgebra) -> HopfInclusion:
    """Greedy scan of the basis of B for a simultaneous left/right A-module
    basis, then both rewrite tables by solving against the two span maps.

    Raises:
        NotFree: if the scan terminates without exhibiting two-sided freeness.
    """
    f = big.field
    dim_b, dim_a = big.dim, sub.dim
    if embed.rows != dim_b or embed.cols != dim_a:
        raise NotFree(f"embedding must be {dim_b}x{dim_a}, got {embed.rows}x{embed.cols}")
    embed_cols = [tuple(embed.data[i][t] for i in range(dim_b)) for t in range(dim_a)]
    left_span = _SpanTracker(f, dim_b)
    right_span = _SpanTracker(f, dim_b)
    kept: list[int] = []
    for v in range(dim_b):
        basis_v = tuple(1 if i == v else 0 for i in range(dim_b))
        lmark, rmark = left_span.snapshot(), right_span.snapshot()
        ok = True
        for t in range(dim_a):
            if not left_span.try_add(big.product_dense(embed_cols[t], basis_v)):
                ok = False
                break
        if ok:
            for t in range(dim_a):
                if not right_span.try_add(big.product_dense(basis_v, embed_cols[t])):
                    ok = False
                    break
        if ok:
            kept.append(v)
        else:
            left_span.rollback(lmark)
            right_span.rollback(rmark)
    r = len(kept)
    if r * dim_a != dim_b or left_span.rank != dim_b or right_span.rank != dim_b:
        raise NotFree(
            f"{big.label} is not two-sided free over the embedded {sub.label}: "
            f"found {r} basis vectors for dims {dim_b} over {dim_a}"
        )
    free_basis = tuple(tuple(1 if i == v else 0 for i in range(dim_b)) for v in kept)

    right_map = Mat(
        f,
        [
            [big.product_dense(free_basis[j], embed_cols[t])[row] for j in range(r) for t in range(dim_a)]
            for row in range(dim_b)
        ],
    )
    left_map = Mat(
        f,
        [
            [big.product_dense(embed_cols[t], free_basis[j])[row] for j in range(r) for t in range(dim_a)]
            for row in range(dim_b)
        ],
    )
    right_inv = right_map.inverse()
    left_inv = left_map.inverse()

    def decompose(inv: Mat, vec: Sequence) -> tuple:
        z = inv @ Mat.column(f, list(vec))
        return tuple(
            tuple(z.data[j * dim_a + t][0] for t in range(dim_a)) for j in range(r)
        )

    rewrite = []
    left_rewrite = []
    for g in range(dim_b):
        basis_g = tuple(1 if i == g else 0 for i in range(dim_b))
        rewrite.append(
            tuple(decompose(right_inv, big.product_dense(basis_g, fb)) for fb in free_basis)
        )
        left_rewrite.append(
            tuple(decompose(left_inv, big.product_dense(fb, basis_g)) for fb in free_basis)
        )
    unit_left = decompose(left_inv, big.unit)
    unit_right = decompose(right_inv, big.unit)
    return HopfInclusion(
        sub,
        big,
        embed,
        free_basis,
        tuple(rewrite),
        tuple(left_rewrite),
        unit_left,
        unit_right,
    )


def subgroup_inclusion(
    group: FiniteGroup,
    generators: Sequence[int],
    field: FieldSpec,
    sub_name: str | None = None,
) -> tuple[HopfInclusion, FiniteGroup]:
    """Inclusion of the group algebra of the subgroup generated by the given
    elements.  Returns the inclusion and the abstract subgroup (its element i
    is the group element elems[i], with elems sorted ascending)."""
    elems = group.closure(generators)
    pos = {g: i for i, g in enumerate(elems)}
    sub_table = [[pos[group.mul(a, b)] for b in elems] for a in elems]
    name = sub_name or f"sub{len(elems)}"
    subgroup = FiniteGroup(f"{name}", sub_table)
    a = group_algebra(subgroup, field)
    b = group_algebra(group, field)
    embed = Mat(
        field,
        [[1 if g == elems[t] else 0 for t in range(len(elems))] for g in range(group.order)],
    )
    return compute_free_basis(b, embed, a), subgroup
