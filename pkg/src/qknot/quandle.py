"""Finite quandles as validated operation tables.

A quandle is a set with a binary operation ``*`` satisfying

  Q1  a*a = a,
  Q2  for all a, b there is a unique c with c*b = a  (written a \\bar* b),
  Q3  (a*b)*c = (a*c)*(b*c).

Elements are 0-based indices into an order-n table ``op`` with ``op[a][b] = a*b``.
The inverse operation table ``inv_op`` (``a \\bar* b``) is precomputed at
validation time since it is used in every hot loop downstream.

Everything here is immutable after construction and all operations are pure,
so values are safe to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass


class QuandleError(ValueError):
    """A table failed quandle validation, or an argument is out of range.

    ``axiom`` is one of "Q1", "Q2", "Q3" (or None for range/shape errors) and
    ``witness`` holds the offending element(s): Q1 -> (a,), Q2 -> (b, value)
    for the column and the duplicated value, Q3 -> (a, b, c).
    """

    def __init__(self, message: str, axiom: str | None = None, witness: tuple | None = None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


@dataclass(frozen=True)
class FiniteQuandle:
    """A finite quandle given by its (validated) operation table."""

    order: int
    op: tuple[tuple[int, ...], ...]
    inv_op: tuple[tuple[int, ...], ...]

    def mul(self, a: int, b: int) -> int:
        """a * b"""
        return self.op[a][b]

    def inv_mul(self, a: int, b: int) -> int:
        """a \\bar* b, the unique c with c*b = a."""
        return self.inv_op[a][b]

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        return f"FiniteQuandle(order={self.order})"


@dataclass(frozen=True)
class PointedQuandle:
    """A quandle together with a distinguished basepoint element."""

    quandle: FiniteQuandle
    basepoint: int

    def __post_init__(self):
        if not 0 <= self.basepoint < self.quandle.order:
            raise QuandleError(f"basepoint {self.basepoint} out of range for order {self.quandle.order}")


@dataclass(frozen=True)
class QuandleMorphism:
    """A map f with f(a*b) = f(a)*f(b), stored as an array of codomain indices."""

    domain: FiniteQuandle
    codomain: FiniteQuandle
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.domain.order:
            raise QuandleError("morphism map length does not match domain order")
        for v in self.map:
            if not 0 <= v < self.codomain.order:
                raise QuandleError(f"morphism value {v} out of range")
        dop, cop, f = self.domain.op, self.codomain.op, self.map
        for a in range(self.domain.order):
            for b in range(self.domain.order):
                if f[dop[a][b]] != cop[f[a]][f[b]]:
                    raise QuandleError(f"not a morphism: f({a}*{b}) != f({a})*f({b})")

    def __call__(self, a: int) -> int:
        return self.map[a]


@dataclass(frozen=True)
class InnerAutomorphism:
    """An automorphism generated by the right-translation maps [*q]: x -> x*q.

    ``word`` records the generating factors as (element, exponent) pairs, applied
    left to right: word [(q1,e1),(q2,e2)] is the map x -> [*q2]^e2([*q1]^e1(x)).
    """

    quandle: FiniteQuandle
    perm: tuple[int, ...]
    word: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = self.quandle.order
        if len(self.perm) != n or sorted(self.perm) != list(range(n)):
            raise QuandleError("inner automorphism is not a permutation of the elements")
        op, p = self.quandle.op, self.perm
        for a in range(n):
            for b in range(n):
                if p[op[a][b]] != op[p[a]][p[b]]:
                    raise QuandleError(f"permutation is not an automorphism at ({a},{b})")

    @classmethod
    def identity(cls, quandle: FiniteQuandle) -> InnerAutomorphism:
        return cls(quandle, tuple(range(quandle.order)), ())

    @classmethod
    def from_word(cls, quandle: FiniteQuandle, word) -> InnerAutomorphism:
        """Compose translation factors [*q]^e, first factor applied first."""
        perm = list(range(quandle.order))
        for q, e in word:
            table = quandle.op if e == 1 else quandle.inv_op
            perm = [table[x][q] for x in perm]
        return cls(quandle, tuple(perm), tuple((q, e) for q, e in word))

    def __call__(self, a: int) -> int:
        return self.perm[a]

    def then(self, other: InnerAutomorphism) -> InnerAutomorphism:
        """The composite 'self first, then other'."""
        return InnerAutomorphism(
            self.quandle,
            tuple(other.perm[v] for v in self.perm),
            self.word + other.word,
        )

    def inverse(self) -> InnerAutomorphism:
        inv = [0] * len(self.perm)
        for i, v in enumerate(self.perm):
            inv[v] = i
        return InnerAutomorphism(
            self.quandle, tuple(inv), tuple((q, -e) for q, e in reversed(self.word))
        )

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.perm))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.perm) if v == i)


@dataclass(frozen=True)
class OrbitPartition:
    """Partition of a pointed quandle into minimal sets closed under *h and \\bar*h."""

    pointed: PointedQuandle
    blocks: tuple[tuple[int, ...], ...]


def build_quandle(table) -> FiniteQuandle:
    """Validate an operation table and return the quandle (with inv_op filled in).

    Axioms are checked in the order Q1, Q2, Q3 so the reported witness is
    deterministic when a table is broken in several ways.
    """
    n = len(table)
    if n < 1:
        raise QuandleError("quandle must have at least one element")
    rows = []
    for a, row in enumerate(table):
        row = tuple(row)
        if len(row) != n:
            raise QuandleError(f"row {a} has length {len(row)}, expected {n}")
        for b, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise QuandleError(f"entry op[{a}][{b}] = {v!r} out of range 0..{n - 1}")
        rows.append(row)
    op = tuple(rows)

    for a in range(n):
        if op[a][a] != a:
            raise QuandleError(
                f"Q1 fails: {a}*{a} = {op[a][a]} != {a}", axiom="Q1", witness=(a,)
            )

    inv = [[0] * n for _ in range(n)]
    for b in range(n):
        seen = [-1] * n
        for a in range(n):
            v = op[a][b]
            if seen[v] != -1:
                raise QuandleError(
                    f"Q2 fails: column {b} repeats value {v} (rows {seen[v]} and {a})",
                    axiom="Q2",
                    witness=(b, v),
                )
            seen[v] = a
        for v in range(n):
            inv[v][b] = seen[v]

    for a in range(n):
        for b in range(n):
            ab = op[a][b]
            for c in range(n):
                if op[ab][c] != op[op[a][c]][op[b][c]]:
                    raise QuandleError(
                        f"Q3 fails at ({a},{b},{c}): ({a}*{b})*{c} != ({a}*{c})*({b}*{c})",
                        axiom="Q3",
                        witness=(a, b, c),
                    )

    return FiniteQuandle(n, op, tuple(tuple(r) for r in inv))


def inverse_op(quandle: FiniteQuandle, a: int, b: int) -> int:
    """a \\bar* b: the unique c with c*b = a."""
    if not (0 <= a < quandle.order and 0 <= b < quandle.order):
        raise QuandleError(f"elements ({a},{b}) out of range")
    return quandle.inv_op[a][b]


# ---------------------------------------------------------------------------
# standard families


def trivial_quandle(n: int) -> FiniteQuandle:
    """x*y = x on n elements."""
    if n < 1:
        raise QuandleError("trivial quandle needs n >= 1")
    return build_quandle([[a] * n for a in range(n)])


def dihedral_quandle(n: int) -> FiniteQuandle:
    """a*b = 2b - a mod n."""
    if n < 1:
        raise QuandleError("dihedral quandle needs n >= 1")
    return build_quandle([[(2 * b - a) % n for b in range(n)] for a in range(n)])


def alexander_quandle(n: int, t: int) -> FiniteQuandle:
    """a*b = t*a + (1-t)*b mod n, for t a unit mod n."""
    if n < 1:
        raise QuandleError("alexander quandle needs n >= 1")
    t %= n
    if math.gcd(t, n) != 1:
        raise QuandleError(f"t = {t} is not a unit mod {n}")
    return build_quandle([[(t * a + (1 - t) * b) % n for b in range(n)] for a in range(n)])


def s4_quandle() -> FiniteQuandle:
    """The 4-element Alexander quandle over GF(4) = Z_2[T]/(T^2+T+1).

    Elements 0,1,T,T+1 are encoded as indices 0,1,2,3 (index = lo + 2*hi for
    the element lo + hi*T); the operation is x*y = T*x + T^2*y.
    """

    def mul_t(x):  # multiply by T in GF(4)
        lo, hi = x & 1, x >> 1
        return ((hi) & 1) | ((lo ^ hi) << 1)

    table = []
    for x in range(4):
        row = []
        for y in range(4):
            row.append(mul_t(x) ^ mul_t(mul_t(y)))
        table.append(row)
    return build_quandle(table)


def conjugation_quandle(group_table) -> FiniteQuandle:
    """x*y = y^-1 x y for a finite group given by its multiplication table."""
    n = len(group_table)
    g = [tuple(row) for row in group_table]
    for a, row in enumerate(g):
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise QuandleError(f"group table row {a} malformed")
    # identity
    e = next((i for i in range(n) if all(g[i][x] == x and g[x][i] == x for x in range(n))), None)
    if e is None:
        raise QuandleError("group table has no identity element")
    # associativity
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if g[g[a][b]][c] != g[a][g[b][c]]:
                    raise QuandleError(f"group table not associative at ({a},{b},{c})")
    inv = [None] * n
    for a in range(n):
        for b in range(n):
            if g[a][b] == e and g[b][a] == e:
                inv[a] = b
    if any(v is None for v in inv):
        raise QuandleError("group table has an element without inverse")
    return build_quandle([[g[g[inv[y]][x]][y] for y in range(n)] for x in range(n)])


def quandle_from_name(name: str) -> FiniteQuandle:
    """Resolve standard-family name strings: trivial:n, dihedral:n, alexander:n:t, s4."""
    parts = name.split(":")
    kind = parts[0]
    try:
        if kind == "trivial" and len(parts) == 2:
            return trivial_quandle(int(parts[1]))
        if kind == "dihedral" and len(parts) == 2:
            return dihedral_quandle(int(parts[1]))
        if kind == "alexander" and len(parts) == 3:
            return alexander_quandle(int(parts[1]), int(parts[2]))
        if kind == "s4" and len(parts) == 1:
            return s4_quandle()
    except ValueError as exc:
        if isinstance(exc, QuandleError):
            raise
        raise QuandleError(f"bad parameters in quandle name {name!r}") from exc
    raise QuandleError(f"unknown quandle name {name!r}")


def quandle_to_json(quandle: FiniteQuandle) -> dict:
    return {"order": quandle.order, "table": [list(row) for row in quandle.op]}


def quandle_from_json(data: dict) -> FiniteQuandle:
    if "table" not in data:
        raise QuandleError("quandle JSON needs a 'table' field")
    q = build_quandle(data["table"])
    if "order" in data and data["order"] != q.order:
        raise QuandleError("quandle JSON 'order' does not match table size")
    return q


def load_quandle(path: str) -> FiniteQuandle:
    with open(path) as fh:
        return quandle_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# morphisms, inner automorphisms, orbits


def hom_enumerate(
    domain: FiniteQuandle,
    codomain: FiniteQuandle,
    basepoint_image: tuple[int, int] | None = None,
    fixed_by: InnerAutomorphism | None = None,
) -> list[QuandleMorphism]:
    """All quandle morphisms domain -> codomain, in lexicographic map order.

    ``basepoint_image=(h, x)`` keeps only morphisms with f(h) = x; ``fixed_by``
    (an automorphism g of the codomain) keeps only those with g∘f = f, i.e.
    morphisms whose values are fixed points of g.  Backtracks over elements in
    index order, checking f(a*b) = f(a)*f(b) as soon as all three values exist.
    """
    n = domain.order
    if fixed_by is not None:
        if fixed_by.quandle is not codomain and fixed_by.quandle != codomain:
            raise QuandleError("fixed_by must be an automorphism of the codomain")
        allowed = list(fixed_by.fixed_points())
    else:
        allowed = list(range(codomain.order))
    if basepoint_image is not None:
        h, x = basepoint_image
        if not 0 <= h < n:
            raise QuandleError(f"basepoint {h} out of range")
        if not 0 <= x < codomain.order:
            raise QuandleError(f"basepoint image {x} out of range")
    else:
        h, x = -1, -1

    # pairs (a,b) become checkable once max(a, b, a*b) is assigned
    checks: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            checks[max(a, b, domain.op[a][b])].append((a, b))

    dop, cop = domain.op, codomain.op
    f = [-1] * n
    out: list[QuandleMorphism] = []

    def extend(i: int):
        if i == n:
            out.append(QuandleMorphism(domain, codomain, tuple(f)))
            return
        values = [x] if i == h and x in allowed else [] if i == h else allowed
        for v in values:
            f[i] = v
            if all(f[dop[a][b]] == cop[f[a]][f[b]] for a, b in checks[i]):
                extend(i + 1)
        f[i] = -1

    extend(0)
    return out


def inner_automorphism(quandle: FiniteQuandle, q: int, exponent: int = 1) -> InnerAutomorphism:
    """The translation [*q]: a -> a*q (exponent +1) or a \\bar* q (exponent -1)."""
    if not 0 <= q < quandle.order:
        raise QuandleError(f"element {q} out of range")
    if exponent not in (1, -1):
        raise QuandleError("exponent must be +1 or -1")
    return InnerAutomorphism.from_word(quandle, [(q, exponent)])


def inner_group(quandle: FiniteQuandle) -> list[InnerAutomorphism]:
    """Closure of the translations {[*q]} under composition, one entry per permutation.

    The identity comes first; the rest are discovered breadth-first from the
    generators [*q]^{+-1} in element order, so the output is deterministic.
    """
    gens = [inner_automorphism(quandle, q, e) for q in range(quandle.order) for e in (1, -1)]
    start = InnerAutomorphism.identity(quandle)
    seen = {start.perm: start}
    frontier = [start]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a.then(g)
                if b.perm not in seen:
                    seen[b.perm] = b
                    nxt.append(b)
        frontier = nxt
    return list(seen.values())


def orbit_decomposition(pointed: PointedQuandle) -> OrbitPartition:
    """Split the quandle into cycles of [*h]; the block containing h comes first."""
    q, h = pointed.quandle, pointed.basepoint
    unseen = set(range(q.order))
    blocks = []
    for start in range(q.order):
        if start not in unseen:
            continue
        block = []
        x = start
        while x in unseen:
            unseen.discard(x)
            block.append(x)
            x = q.op[x][h]
        blocks.append(tuple(sorted(block)))
    blocks.sort(key=lambda blk: (h not in blk, blk))
    return OrbitPartition(pointed, tuple(blocks))


def is_connected(quandle: FiniteQuandle) -> bool:
    """True iff the inner automorphism group acts transitively."""
    reach = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for q in range(quandle.order):
            for table in (quandle.op, quandle.inv_op):
                y = table[x][q]
                if y not in reach:
                    reach.add(y)
                    frontier.append(y)
    return len(reach) == quandle.order
