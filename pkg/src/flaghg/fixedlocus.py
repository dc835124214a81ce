"""K-group ledgers and equivariant Euler classes of fixed components.

A ledger is a signed multiset of Hom-blocks (source block, target block,
integer circle weight).  The tangent ledger of a component and the
restriction ledger of the ambient moduli tangent bundle are assembled
blockwise; their difference, after exact cancellation on (source, target,
weight), is the normal ledger, which must carry no weight-0 term.  The
equivariant Euler class is the product of (y_target - y_source + w*alpha)
over ledger terms and root slots, with sign exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from .algebra import (ALPHA, LinearProduct, Poly, RatFun, VarId, ambient, y)
from .errors import CancellationFailureError, SymmetryViolationError
from .tableaux import (BlockData, IndexTables, Tableau, block_decomposition,
                       index_tables)

BlockRef = tuple[int, int]  # (level, block), ambient = (I+1, 1)


@dataclass(frozen=True)
class LedgerTerm:
    sign: int
    src: BlockRef
    tgt: BlockRef
    weight: int


class Ledger:
    """Multiset of ledger terms keyed on (src, tgt, weight).

    Multiplicities are signed integers; exactly matching +/- pairs cancel
    on insertion, so no two stored terms differ only in sign.
    """

    __slots__ = ("blocks", "_mult")

    def __init__(self, blocks: BlockData):
        self.blocks = blocks
        self._mult: dict[tuple[BlockRef, BlockRef, int], int] = {}

    def add(self, src: BlockRef, tgt: BlockRef, weight: int,
            mult: int = 1) -> None:
        key = (src, tgt, weight)
        m = self._mult.get(key, 0) + mult
        if m:
            self._mult[key] = m
        else:
            self._mult.pop(key, None)

    def terms(self) -> Iterator[tuple[BlockRef, BlockRef, int, int]]:
        """(src, tgt, weight, signed multiplicity) in canonical order."""
        for key in sorted(self._mult):
            src, tgt, w = key
            yield src, tgt, w, self._mult[key]

    def difference(self, other: "Ledger") -> "Ledger":
        out = Ledger(self.blocks)
        out._mult = dict(self._mult)
        for (src, tgt, w), m in other._mult.items():
            out.add(src, tgt, w, -m)
        return out

    def block_rank(self, ref: BlockRef) -> int:
        return self.blocks.m(ref[0], ref[1])

    def rank(self) -> int:
        return sum(
            m * self.block_rank(src) * self.block_rank(tgt)
            for (src, tgt, _), m in self._mult.items()
        )

    def has_weight_zero(self) -> bool:
        return any(w == 0 for (_, _, w) in self._mult)

    def negated(self) -> "Ledger":
        out = Ledger(self.blocks)
        out._mult = {k: -m for k, m in self._mult.items()}
        return out

    def is_empty(self) -> bool:
        return not self._mult

    def to_json(self):
        levels = self.blocks.levels
        out = []
        for src, tgt, w, m in self.terms():
            sign = 1 if m > 0 else -1
            entry = {
                "sign": sign,
                "src": list(src),
                "tgt": "ambient" if tgt[0] == levels + 1 else list(tgt),
                "w": w,
            }
            if abs(m) != 1:
                entry["mult"] = abs(m)
            out.append(entry)
        return out


def tangent_ledger(t: Tableau) -> Ledger:
    """Weight-0 ledger of the component's tangent bundle (vertical sum)."""
    blocks = block_decomposition(t)
    tables = IndexTables.from_blocks(blocks)
    ledger = Ledger(blocks)
    for i in range(1, blocks.levels + 1):
        Ki = blocks.K(i)
        for j in range(1, Ki + 1):
            for jp in range(1, j + 1):
                lo = tables.I_A(i, jp - 1) + 1
                hi = tables.I_A(i, jp)
                for k in range(lo, hi + 1):
                    ledger.add((i, j), (i + 1, k), 0, +1)
                ledger.add((i, j), (i, jp), 0, -1)
    return ledger


def _weights_h0(gap: int) -> range:
    """Weights of the degree-gap section space: {0, -1, ..., -gap}."""
    return range(0, -gap - 1, -1) if gap >= 0 else range(0)


def _weights_h1(gap: int) -> range:
    """Weights of the first cohomology: {1, ..., -gap-1} for gap <= -2."""
    return range(1, -gap) if gap <= -2 else range(0)


def hquot_restriction_ledger(t: Tableau) -> Ledger:
    """Ledger of the ambient moduli tangent bundle restricted to the
    component.

    Each Hom grade with twist gap contributes its section space minus its
    first cohomology; cross-level grades enter positively, same-level
    (endomorphism) grades negatively.  The cross-level first-cohomology
    terms vanish for one-level specs but are forced by rank bookkeeping
    whenever a later row exceeds an earlier row's value by 2 or more.
    """
    blocks = block_decomposition(t)
    ledger = Ledger(blocks)
    for i in range(1, blocks.levels + 1):
        Ki = blocks.K(i)
        Kn = blocks.K(i + 1)
        for j in range(1, Ki + 1):
            aij = blocks.a(i, j)
            for jp in range(1, Kn + 1):
                gap = aij - blocks.a(i + 1, jp)
                for w in _weights_h0(gap):
                    ledger.add((i, j), (i + 1, jp), w, +1)
                for w in _weights_h1(gap):
                    ledger.add((i, j), (i + 1, jp), w, -1)
            for jp in range(1, Ki + 1):
                gap = aij - blocks.a(i, jp)
                for w in _weights_h0(gap):
                    ledger.add((i, j), (i, jp), w, -1)
                for w in _weights_h1(gap):
                    ledger.add((i, j), (i, jp), w, +1)
    return ledger


def normal_ledger(t: Tableau) -> Ledger:
    """Restriction ledger minus tangent ledger; weight-0 terms must vanish."""
    ledger = hquot_restriction_ledger(t).difference(tangent_ledger(t))
    if ledger.has_weight_zero():
        raise CancellationFailureError(
            "normal ledger retained a weight-0 term; index conventions "
            "are inconsistent for this tableau")
    return ledger


RootAssignment = Mapping[BlockRef, Sequence[Poly]]


def canonical_roots(blocks: BlockData,
                    ambient_roots: Sequence[Poly] | None = None) -> dict:
    """Block -> list of root polynomials; ambient defaults to formal e_k."""
    roots: dict[BlockRef, list[Poly]] = {}
    for i in range(1, blocks.levels + 1):
        for j in range(1, blocks.K(i) + 1):
            roots[(i, j)] = [
                Poly.var(y(i, j, k)) for k in range(1, blocks.m(i, j) + 1)
            ]
    amb = blocks.levels + 1
    if ambient_roots is None:
        roots[(amb, 1)] = [
            Poly.var(ambient(k)) for k in range(1, blocks.spec.n + 1)
        ]
    else:
        roots[(amb, 1)] = list(ambient_roots)
    return roots


def euler_product_from_ledger(ledger: Ledger,
                              roots: RootAssignment) -> LinearProduct:
    """Factored Euler class: prod (y_tgt - y_src + w*alpha)^sign over slots."""
    alpha = Poly.var(ALPHA)
    out = LinearProduct()
    for src, tgt, w, m in ledger.terms():
        if w == 0:
            raise ValueError("Euler class of a ledger with weight-0 terms")
        shift = alpha * w
        for ys in roots[src]:
            for yt in roots[tgt]:
                out.mul_factor(yt - ys + shift, m)
    return out


def euler_class_from_ledger(ledger: Ledger,
                            roots: RootAssignment | None = None) -> RatFun:
    if roots is None:
        roots = canonical_roots(ledger.blocks)
    return euler_product_from_ledger(ledger, roots).to_ratfun()


def euler_product_closed_form(t: Tableau,
                              roots: RootAssignment | None = None) -> LinearProduct:
    """Direct transcription of the final product expression.

    Cross-level factors run over all block pairs with positive value gap
    (the per-pair resolution of the display's interval bounds), same-level
    section factors over j' < j, and same-level first-cohomology factors
    over pairs with gap >= 2.
    """
    blocks = block_decomposition(t)
    if roots is None:
        roots = canonical_roots(blocks)
    alpha = Poly.var(ALPHA)
    out = LinearProduct()
    for i in range(1, blocks.levels + 1):
        Ki = blocks.K(i)
        for j in range(1, Ki + 1):
            aij = blocks.a(i, j)
            for jp in range(1, blocks.K(i + 1) + 1):
                gap = aij - blocks.a(i + 1, jp)
                for l in range(1, gap + 1):
                    for ys in roots[(i, j)]:
                        for yt in roots[(i + 1, jp)]:
                            out.mul_factor(yt - ys - alpha * l, +1)
                for l in range(gap + 1, 0):
                    for ys in roots[(i, j)]:
                        for yt in roots[(i + 1, jp)]:
                            out.mul_factor(yt - ys - alpha * l, -1)
            for jp in range(1, j):
                for l in range(1, aij - blocks.a(i, jp) + 1):
                    for ys in roots[(i, j)]:
                        for yt in roots[(i, jp)]:
                            out.mul_factor(yt - ys - alpha * l, -1)
            for jp in range(j + 1, Ki + 1):
                gap = aij - blocks.a(i, jp)
                for l in range(gap + 1, 0):
                    for ys in roots[(i, j)]:
                        for yt in roots[(i, jp)]:
                            out.mul_factor(yt - ys - alpha * l, +1)
    return out


def euler_class_closed_form(t: Tableau,
                            roots: RootAssignment | None = None) -> RatFun:
    return euler_product_closed_form(t, roots).to_ratfun()


def grassmannian_euler_product(t: Tableau,
                               ambient_zero: bool = True) -> LinearProduct:
    """The one-level display: prod (-y_{j;k} - l*alpha)^n over the section
    weights, over the regrouped same-level denominator with its sign."""
    if t.spec.levels != 1:
        raise ValueError("Grassmannian display needs a one-level tableau")
    blocks = block_decomposition(t)
    alpha = Poly.var(ALPHA)
    n = t.spec.n
    out = LinearProduct()
    for j in range(1, blocks.K(1) + 1):
        for k in range(1, blocks.m(1, j) + 1):
            yv = Poly.var(y(1, j, k))
            for l in range(1, blocks.a(1, j) + 1):
                out.mul_factor(-yv - alpha * l, n)
    for j in range(1, blocks.K(1) + 1):
        for jp in range(j + 1, blocks.K(1) + 1):
            gap = blocks.a(1, jp) - blocks.a(1, j)
            mm = blocks.m(1, j) * blocks.m(1, jp)
            out.mul_scalar(Fraction((-1) ** (mm * (gap - 1))))
            for k in range(1, blocks.m(1, j) + 1):
                for kp in range(1, blocks.m(1, jp) + 1):
                    f = -Poly.var(y(1, jp, kp)) + Poly.var(y(1, j, k)) \
                        - alpha * gap
                    out.mul_factor(f, -1)
    if not ambient_zero:
        return out
    return out


@dataclass(frozen=True)
class TorusFixedPoint:
    """Coordinate-index sets per block, nested per the index tables."""

    assignment: tuple[tuple[BlockRef, tuple[int, ...]], ...]

    def sets(self) -> dict[BlockRef, tuple[int, ...]]:
        return dict(self.assignment)


def torus_fixed_points(t: Tableau) -> list[TorusFixedPoint]:
    """All nested coordinate assignments, in deterministic order."""
    blocks = block_decomposition(t)
    tables = IndexTables.from_blocks(blocks)
    spec = t.spec
    levels = spec.levels
    per_level: list[list[dict[int, tuple[int, ...]]]] = []

    def level_assignments(i, upper: dict[int, tuple[int, ...]] | None):
        """upper: block sets of level i+1 (None for the ambient level)."""
        Ki = blocks.K(i)
        results = []

        def pool(j):
            if upper is None:
                return tuple(range(1, spec.n + 1))
            hi = tables.I_A(i, j)
            out = []
            for jp in range(1, hi + 1):
                out.extend(upper[jp])
            return tuple(sorted(out))

        def rec(j, used, chosen):
            if j > Ki:
                results.append(dict(chosen))
                return
            allowed = tuple(x for x in pool(j) if x not in used)
            for combo in combinations(allowed, blocks.m(i, j)):
                chosen[j] = combo
                rec(j + 1, used | set(combo), chosen)
                del chosen[j]

        rec(1, set(), {})
        return results

    out: list[TorusFixedPoint] = []

    def descend(i, upper, partial):
        if i == 0:
            assignment = []
            for (lev, j), s in sorted(partial.items()):
                assignment.append(((lev, j), s))
            out.append(TorusFixedPoint(tuple(assignment)))
            return
        for choice in level_assignments(i, upper):
            nxt = dict(partial)
            for j, s in choice.items():
                nxt[(i, j)] = s
            descend(i - 1, choice, nxt)

    descend(levels, None, {})
    return out


def fixed_point_values(t: Tableau, point: TorusFixedPoint,
                       lam: Sequence[Fraction]) -> dict[VarId, Fraction]:
    """Root variable -> torus weight value at a fixed point."""
    if len(set(lam)) != len(lam):
        raise ValueError("torus weights must be pairwise distinct")
    if len(lam) != t.spec.n:
        raise ValueError("one torus weight per coordinate is required")
    values: dict[VarId, Fraction] = {}
    for (i, j), coords in point.assignment:
        for k, c in enumerate(sorted(coords), start=1):
            values[y(i, j, k)] = Fraction(lam[c - 1])
    for k in range(1, t.spec.n + 1):
        values[ambient(k)] = Fraction(lam[k - 1])
    return values


def assert_block_symmetric(f: RatFun, t: Tableau) -> None:
    """Raise unless f is invariant under swapping the first two slots of
    every block of size >= 2."""
    blocks = block_decomposition(t)
    for i in range(1, blocks.levels + 1):
        for j in range(1, blocks.K(i) + 1):
            if blocks.m(i, j) < 2:
                continue
            a, b = y(i, j, 1), y(i, j, 2)
            swapped = f.substitute({a: Poly.var(b), b: Poly.var(a)})
            if swapped != f:
                raise SymmetryViolationError(
                    f"class is not symmetric within block ({i},{j})")


def specialize_at_fixed_point(f: RatFun, t: Tableau, point: TorusFixedPoint,
                              lam: Sequence[Fraction],
                              check_symmetry: bool = True) -> RatFun:
    """Substitute block roots by the torus weights of the point's coordinate
    sets (sorted within each block) and ambient roots by all weights."""
    if check_symmetry:
        assert_block_symmetric(f, t)
    values = fixed_point_values(t, point, lam)
    known = set(values)
    present = {v for v in f.num.variables() if v.kind in (0, 1)}
    for factor in f.den:
        present |= {v for v in factor.variables() if v.kind in (0, 1)}
    if not present <= known:
        raise ValueError(
            f"root variables outside the tableau: {sorted(present - known)}")
    return f.substitute(values)


def tangent_euler_at_point(t: Tableau, point: TorusFixedPoint,
                           lam: Sequence[Fraction]) -> Fraction:
    """Product of tangent weights at an isolated torus fixed point.

    The tangent ledger's positive and negative parts each contain the same
    number of zero factors (the diagonal slots); these cancel as multisets
    and the remaining product is the genuine Euler class.
    """
    ledger = tangent_ledger(t)
    coords = point.sets()
    amb = t.spec.levels + 1
    coords[(amb, 1)] = tuple(range(1, t.spec.n + 1))
    num: list[Fraction] = []
    den: list[Fraction] = []
    for src, tgt, w, m in ledger.terms():
        bucket, count = (num, m) if m > 0 else (den, -m)
        for cs in coords[src]:
            for ct in coords[tgt]:
                val = Fraction(lam[ct - 1]) - Fraction(lam[cs - 1])
                bucket.extend([val] * count)
    nz = sum(1 for v in num if v == 0)
    dz = sum(1 for v in den if v == 0)
    if nz != dz:
        raise CancellationFailureError(
            "zero tangent weights do not cancel; fixed point is not isolated")
    result = Fraction(1)
    for v in num:
        if v:
            result *= v
    for v in den:
        if v:
            result /= v
    return result
