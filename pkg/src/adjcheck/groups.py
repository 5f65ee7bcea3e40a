"""Finite groups given by multiplication tables, and the builtin library.

Builtin names resolve through resolve_group: "S3", "Q8", "C7", and
subgroup-qualified forms like "C3<S3" or "C4<Q8".  All builtin groups put
the identity at index 0, which downstream code relies on when it seeds
free bases with the unit element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import ConfigError
from .fields import FieldSpec


@dataclass(frozen=True)
class Character:
    """A one-dimensional representation: multiplicative scalar per element."""

    label: str
    values: tuple


class FiniteGroup:
    """A finite group as a full multiplication table over indices 0..n-1.

    Args:
        name: display name, e.g. "S3".
        table: table[i][j] = index of the product of elements i and j.
        subgroups: named generator lists for the builtin subgroup registry.
        perm_elements: for permutation groups, the underlying permutation
            tuple of each element (used by the natural/sum-zero modules).
    """

    def __init__(
        self,
        name: str,
        table: Sequence[Sequence[int]],
        subgroups: dict[str, tuple[int, ...]] | None = None,
        perm_elements: tuple[tuple[int, ...], ...] | None = None,
    ):
        self.name = name
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.subgroups = dict(subgroups or {})
        self.perm_elements = perm_elements
        self.identity = self._find_identity()
        self.inverse = tuple(self._find_inverse(i) for i in range(self.order))
        self.validate()
        if "C1" not in self.subgroups:
            self.subgroups["C1"] = ()
        self._char_cache: dict[FieldSpec, list[Character]] = {}

    # -- group law ---------------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(self.order)):
                return e
        raise ConfigError(f"group {self.name!r}: table has no identity element")

    def _find_inverse(self, i: int) -> int:
        for j in range(self.order):
            if self.table[i][j] == self.identity and self.table[j][i] == self.identity:
                return j
        raise ConfigError(f"group {self.name!r}: element {i} has no inverse")

    def validate(self) -> None:
        """Exhaustive check of the group axioms; raises ConfigError."""
        n = self.order
        for row in self.table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise ConfigError(f"group {self.name!r}: table is not {n}x{n} over 0..{n - 1}")
        for i in range(n):
            for j in range(n):
                ij = self.table[i][j]
                for k in range(n):
                    if self.table[ij][k] != self.table[i][self.table[j][k]]:
                        raise ConfigError(
                            f"group {self.name!r}: associativity fails at ({i}, {j}, {k})"
                        )

    def element_order(self, i: int) -> int:
        x, n = i, 1
        while x != self.identity:
            x = self.mul(x, i)
            n += 1
        return n

    def exponent(self) -> int:
        from math import lcm

        return lcm(*(self.element_order(i) for i in range(self.order)))

    def closure(self, gens: Sequence[int]) -> tuple[int, ...]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return tuple(sorted(seen))

    def generating_set(self) -> tuple[int, ...]:
        """A small generating set, greedy by index order."""
        gens: list[int] = []
        covered = self.closure(gens)
        for x in range(self.order):
            if x not in covered:
                gens.append(x)
                covered = self.closure(gens)
                if len(covered) == self.order:
                    break
        return tuple(gens)

    # -- subgroups and cosets ------------------------------------------------

    def subgroup_elements(self, name: str) -> tuple[int, ...]:
        if name not in self.subgroups:
            raise ConfigError(
                f"group {self.name} has no builtin subgroup {name!r}; "
                f"known: {', '.join(sorted(self.subgroups))}"
            )
        return self.closure(self.subgroups[name])

    def left_cosets(self, h_elems: Sequence[int]) -> list[tuple[int, ...]]:
        """Partition into left cosets gH, each sorted, ordered by min element."""
        hset = set(h_elems)
        seen: set[int] = set()
        cosets = []
        for g in range(self.order):
            if g in seen:
                continue
            coset = tuple(sorted(self.mul(g, h) for h in hset))
            seen.update(coset)
            cosets.append(coset)
        return cosets

    def right_cosets(self, h_elems: Sequence[int]) -> list[tuple[int, ...]]:
        hset = set(h_elems)
        seen: set[int] = set()
        cosets = []
        for g in range(self.order):
            if g in seen:
                continue
            coset = tuple(sorted(self.mul(h, g) for h in hset))
            seen.update(coset)
            cosets.append(coset)
        return cosets

    # -- abelianization and characters --------------------------------------

    def commutator_subgroup(self) -> tuple[int, ...]:
        gens = set()
        for a in range(self.order):
            for b in range(self.order):
                gens.add(self.mul(self.mul(a, b), self.inv(self.mul(b, a))))
        return self.closure(sorted(gens))

    def characters(self, field: FieldSpec) -> list[Character]:
        """All one-dimensional representations over the field, labelled
        chi0 (trivial), chi1, ... in a deterministic order."""
        if field in self._char_cache:
            return self._char_cache[field]
        comm = set(self.commutator_subgroup())
        # cosets of the commutator subgroup form the abelianization
        cosets = self.left_cosets(tuple(comm))
        reps = [c[0] for c in cosets]
        coset_of = {}
        for qi, c in enumerate(cosets):
            for g in c:
                coset_of[g] = qi
        qn = len(reps)
        qmul = [[coset_of[self.mul(reps[i], reps[j])] for j in range(qn)] for i in range(qn)]
        quotient = FiniteGroup(f"{self.name}/[,]", qmul)
        valid = []
        qgens = quotient.generating_set()
        root_choices = [field.roots_of_unity(quotient.element_order(g)) for g in qgens]
        for assignment in itertools.product(*root_choices):
            chi: dict[int, object] = {quotient.identity: field.canon(1)}
            frontier = [quotient.identity]
            ok = True
            while frontier and ok:
                x = frontier.pop()
                for g, val in zip(qgens, assignment):
                    y = quotient.mul(x, g)
                    v = field.reduce(chi[x] * val)
                    if y in chi:
                        if chi[y] != v:
                            ok = False
                            break
                    else:
                        chi[y] = v
                        frontier.append(y)
            if not ok or len(chi) != qn:
                continue
            if any(
                chi[qmul[i][j]] != field.reduce(chi[i] * chi[j])
                for i in range(qn)
                for j in range(qn)
            ):
                continue
            valid.append(tuple(field.canon(chi[coset_of[g]]) for g in range(self.order)))
        uniq = sorted(set(valid), key=lambda vs: [field.scalar_str(v) for v in vs])
        one = tuple(field.canon(1) for _ in range(self.order))
        uniq.remove(one)
        ordered = [one] + uniq
        chars = [Character(f"chi{i}", vs) for i, vs in enumerate(ordered)]
        self._char_cache[field] = chars
        return chars

    def character_by_name(self, field: FieldSpec, name: str) -> Character:
        """Resolve "triv", "sign" (unique nontrivial one valued in +-1), or "chiK"."""
        chars = self.characters(field)
        if name in ("triv", "trivial"):
            return chars[0]
        if name == "sign":
            pm = {field.canon(1), field.canon(-1)}
            hits = [c for c in chars[1:] if set(c.values) <= pm]
            if len(hits) == 1:
                return hits[0]
            raise ConfigError(
                f"'sign' is {'ambiguous' if hits else 'not available'} for {self.name} over {field}"
            )
        for c in chars:
            if c.label == name:
                return c
        raise ConfigError(f"group {self.name} has no character {name!r} over {field}")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


# -- builtin library ---------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    subs = {f"C{d}": ((n // d,) if d > 1 else ()) for d in range(1, n) if n % d == 0}
    return FiniteGroup(f"C{n}", table, subs)


def klein_four() -> FiniteGroup:
    table = [[i ^ j for j in range(4)] for i in range(4)]
    return FiniteGroup("V4", table, {"C2": (1,), "C2b": (2,), "C2c": (3,)})


def _perm_group(name: str, deg: int, subs_from_perms) -> FiniteGroup:
    elems = sorted(itertools.permutations(range(deg)))
    index = {p: i for i, p in enumerate(elems)}

    def compose(s, t):
        # (s*t)(x) = s(t(x))
        return tuple(s[t[x]] for x in range(deg))

    table = [[index[compose(s, t)] for t in elems] for s in elems]
    subs = {nm: tuple(index[p] for p in perms) for nm, perms in subs_from_perms.items()}
    return FiniteGroup(name, table, subs, perm_elements=tuple(elems))


def symmetric3() -> FiniteGroup:
    return _perm_group(
        "S3",
        3,
        {
            "C3": [(1, 2, 0)],
            "C2": [(1, 0, 2)],
            "S3": [(1, 2, 0), (1, 0, 2)],
        },
    )


def symmetric4() -> FiniteGroup:
    return _perm_group(
        "S4",
        4,
        {
            "C2": [(1, 0, 2, 3)],
            "C3": [(1, 2, 0, 3)],
            "C4": [(1, 2, 3, 0)],
            "V4": [(1, 0, 3, 2), (2, 3, 0, 1)],
            "D4": [(1, 2, 3, 0), (1, 0, 3, 2)],
            "A4": [(1, 2, 0, 3), (0, 2, 3, 1)],
            "S3": [(1, 2, 0, 3), (1, 0, 2, 3)],
        },
    )


def dihedral4() -> FiniteGroup:
    """Order 8: elements r^a s^b indexed a + 4b, with s r = r^-1 s."""

    def mul(x, y):
        a, b = x % 4, x // 4
        c, d = y % 4, y // 4
        a2 = (a + (c if b == 0 else -c)) % 4
        return a2 + 4 * ((b + d) % 2)

    table = [[mul(i, j) for j in range(8)] for i in range(8)]
    return FiniteGroup(
        "D4", table, {"C4": (1,), "C2": (2,), "C2s": (4,), "V4": (2, 4)}
    )


def quaternion8() -> FiniteGroup:
    """Order 8: [1, i, j, k, -1, -i, -j, -k] with ij = k, jk = i, ki = j."""
    # products of the axes e,i,j,k: value (sign, axis)
    axis_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(x, y):
        sx, ax = (1 if x < 4 else -1), x % 4
        sy, ay = (1 if y < 4 else -1), y % 4
        s, a = axis_mul[(ax, ay)]
        return a + (0 if sx * sy * s == 1 else 4)

    table = [[mul(i, j) for j in range(8)] for i in range(8)]
    return FiniteGroup(
        "Q8", table, {"C4": (1,), "C4j": (2,), "C4k": (3,), "C2": (4,)}
    )


def builtin_groups() -> dict[str, FiniteGroup]:
    groups: dict[str, FiniteGroup] = {}
    for n in range(1, 13):
        g = cyclic(n)
        groups[g.name] = g
    for g in (klein_four(), symmetric3(), symmetric4(), dihedral4(), quaternion8()):
        groups[g.name] = g
    return groups


_BUILTIN_CACHE: dict[str, FiniteGroup] | None = None


def builtin(name: str) -> FiniteGroup:
    global _BUILTIN_CACHE
    if _BUILTIN_CACHE is None:
        _BUILTIN_CACHE = builtin_groups()
    if name not in _BUILTIN_CACHE:
        raise ConfigError(
            f"unknown builtin group {name!r}; known: {', '.join(sorted(_BUILTIN_CACHE))}"
        )
    return _BUILTIN_CACHE[name]


def resolve_group(spec: str) -> tuple[FiniteGroup, tuple[int, ...] | None]:
    """Resolve "S3" to (group, None) or "C3<S3" to (group, subgroup elements)."""
    if "<" in spec:
        sub_name, _, big_name = spec.partition("<")
        g = builtin(big_name.strip())
        return g, g.subgroup_elements(sub_name.strip())
    return builtin(spec.strip()), None


def group_from_json(payload: dict) -> FiniteGroup:
    """Load a group from the file format {"order": n, "table": [[...]]}."""
    if not isinstance(payload, dict) or "order" not in payload or "table" not in payload:
        raise ConfigError('group JSON must have the shape {"order": n, "table": [[...]]}')
    table = payload["table"]
    if len(table) != payload["order"]:
        raise ConfigError(f"declared order {payload['order']} but table has {len(table)} rows")
    return FiniteGroup(str(payload.get("name", "custom")), table)
