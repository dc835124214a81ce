"""Symmetrization push-forwards, the restrictive-flag Thom class, and the
two independent integration routes.

The push-forward along a flag bundle is the coset sum over distributions
of the alphabet letters into blocks, of the integrand divided by the
product of cross-block letter differences.  A restrictive flag bundle
first multiplies in its Thom class.  Iterating down a component's
fibration tower and killing the ambient roots integrates to a point; the
independent oracle instead sums integrand/tangent-Euler over the torus
fixed points.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import factorial
from typing import Sequence

from .algebra import Poly, RatFun, VarId, ambient, ratfun_sum, y
from .errors import (BudgetExceededError, IntegrationShapeError,
                     SingularSubstitutionError, SymmetryViolationError)
from .fixedlocus import (fixed_point_values, tangent_euler_at_point,
                         torus_fixed_points)
from .tableaux import IndexTables, Tableau, block_decomposition

DEFAULT_COSET_BUDGET = 10080


class BlockAlphabet:
    """Ordered blocks of letters; the last block plays the ambient role."""

    def __init__(self, blocks: Sequence[Sequence[VarId]]):
        self.blocks = tuple(tuple(b) for b in blocks if len(b) > 0)
        if not self.blocks:
            raise ValueError("alphabet needs at least one non-empty block")
        letters = [v for b in self.blocks for v in b]
        if len(set(letters)) != len(letters):
            raise ValueError("alphabet blocks must be disjoint")
        self.letters = tuple(letters)

    @property
    def size(self) -> int:
        return len(self.letters)

    def coset_count(self) -> int:
        count = factorial(self.size)
        for b in self.blocks:
            count //= factorial(len(b))
        return count


def _check_block_symmetry(p: RatFun, alphabet: BlockAlphabet,
                          samples: int = 3) -> None:
    """Sample within-block transpositions; raise if any changes p."""
    candidates = [b for b in alphabet.blocks if len(b) >= 2]
    if not candidates:
        return
    rng = random.Random(0)
    for _ in range(samples):
        block = rng.choice(candidates)
        a, b = rng.sample(block, 2)
        swapped = p.substitute({a: Poly.var(b), b: Poly.var(a)})
        if swapped != p:
            raise SymmetryViolationError(
                "integrand is not symmetric within an alphabet block")


def _coset_maps(alphabet: BlockAlphabet):
    """Letter->letter substitutions, one per coset, identity first."""
    sizes = [len(b) for b in alphabet.blocks]
    letters = sorted(alphabet.letters)

    def rec(remaining: tuple, block_idx: int):
        if block_idx == len(sizes):
            yield ()
            return
        for combo in combinations(remaining, sizes[block_idx]):
            rest = tuple(v for v in remaining if v not in combo)
            for tail in rec(rest, block_idx + 1):
                yield (combo,) + tail

    for distribution in rec(tuple(letters), 0):
        subs = {}
        for block, assigned in zip(alphabet.blocks, distribution):
            for src, dst in zip(block, assigned):
                if src != dst:
                    subs[src] = Poly.var(dst)
        yield subs


def _brion_denominator(alphabet: BlockAlphabet) -> list[Poly]:
    factors = []
    blocks = alphabet.blocks
    for jl in range(len(blocks)):
        for jh in range(jl + 1, len(blocks)):
            for vl in blocks[jl]:
                for vh in blocks[jh]:
                    factors.append(Poly.var(vh) - Poly.var(vl))
    return factors


def brion_pushforward(p: RatFun, alphabet: BlockAlphabet,
                      budget: int = DEFAULT_COSET_BUDGET) -> RatFun:
    """Coset sum of p / prod of cross-block letter differences."""
    count = alphabet.coset_count()
    if count > budget:
        raise BudgetExceededError(
            f"{count} cosets exceed the budget of {budget}")
    _check_block_symmetry(p, alphabet)
    den = _brion_denominator(alphabet)
    terms = []
    for subs in _coset_maps(alphabet):
        term_num = p.substitute(subs) if subs else p
        term = term_num
        for f in den:
            g = f.substitute(subs) if subs else f
            term = term * RatFun(Poly.const(1), {g: 1})
        terms.append(term)
    return ratfun_sum(terms)


def restrictive_pushforward(p: RatFun, alphabet: BlockAlphabet, omega: Poly,
                            budget: int = DEFAULT_COSET_BUDGET) -> RatFun:
    """Push-forward for the restrictive sub-bundle: insert the Thom class."""
    return brion_pushforward(p * omega, alphabet, budget)


class OmegaSpec:
    """Per nesting constraint: a block of sub-roots and its quotient roots."""

    def __init__(self, constraints: Sequence[tuple[Sequence[VarId],
                                                   Sequence[Poly]]]):
        self.constraints = [
            (tuple(sub), tuple(quot)) for sub, quot in constraints
        ]


def omega_class(spec: OmegaSpec) -> Poly:
    """Expanded product of (quotient root - sub root) over all constraints."""
    out = Poly.const(1)
    for sub, quot in spec.constraints:
        for q in quot:
            for s in sub:
                out = out * (q - Poly.var(s))
    return out


class TowerStage:
    """One fibration step: alphabet, Thom class, and letter re-expression."""

    def __init__(self, alphabet: BlockAlphabet, omega: Poly,
                 letter_map: dict):
        self.alphabet = alphabet
        self.omega = omega
        self.letter_map = letter_map


def tableau_tower(t: Tableau) -> list[TowerStage]:
    """Fibration tower of a distinguished component, lowest level first.

    Stage i pushes along the flag bundle of the level-(i+1) tautological
    bundle: its alphabet is the level-i blocks plus a fresh quotient block,
    its Thom class restricts each level-i block below the matching
    level-(i+1) partial flag, and afterwards the letters are re-expressed
    through the level-(i+1) roots (ambient roots at the top).
    """
    blocks = block_decomposition(t)
    tables = IndexTables.from_blocks(blocks)
    spec = t.spec
    stages = []
    for i in range(1, spec.levels + 1):
        r_next = spec.rank(i + 1)
        quot = [y(i, blocks.K(i) + 1, k)
                for k in range(1, r_next - spec.rank(i) + 1)]
        level_blocks = [
            [y(i, j, k) for k in range(1, blocks.m(i, j) + 1)]
            for j in range(1, blocks.K(i) + 1)
        ]
        if quot:
            level_blocks.append(quot)
        alphabet = BlockAlphabet(level_blocks)
        if i == spec.levels:
            next_roots = [Poly.var(ambient(k)) for k in range(1, spec.n + 1)]
        else:
            next_roots = [
                Poly.var(y(i + 1, j, k))
                for j in range(1, blocks.K(i + 1) + 1)
                for k in range(1, blocks.m(i + 1, j) + 1)
            ]
        constraints = []
        for j in range(1, blocks.K(i) + 1):
            sub = [y(i, j, k) for k in range(1, blocks.m(i, j) + 1)]
            quot_roots = next_roots[tables.l(i + 1, j):]
            if quot_roots:
                constraints.append((sub, quot_roots))
        omega = omega_class(OmegaSpec(constraints))
        letter_map = dict(zip(sorted(alphabet.letters), next_roots))
        stages.append(TowerStage(alphabet, omega, letter_map))
    return stages


def integrate_to_point(p: RatFun, tower: Sequence[TowerStage],
                       budget: int = DEFAULT_COSET_BUDGET) -> RatFun:
    """Iterated restrictive push-forward, then ambient roots to zero."""
    for stage in tower:
        p = restrictive_pushforward(p, stage.alphabet, stage.omega, budget)
        p = p.substitute(stage.letter_map)
    ambient_vars = {v for v in p.num.variables() if v.kind == 1}
    for f in p.den:
        ambient_vars |= {v for v in f.variables() if v.kind == 1}
    if ambient_vars:
        p = p.substitute({v: 0 for v in ambient_vars})
    bad = {v for v in p.num.variables() if v.kind in (0, 1)}
    for f in p.den:
        bad |= {v for v in f.variables() if v.kind in (0, 1)}
    if bad:
        raise IntegrationShapeError(
            f"residual root variables after integration: {sorted(bad)}")
    return p


def lam_vector(n: int, seed: int = 0) -> list[Fraction]:
    """First n distinct small rationals of a fixed congruential sequence."""
    state = (seed * 6364136223846793005 + 1442695040888963407) % (1 << 63)
    out: list[Fraction] = []
    seen = set()
    while len(out) < n:
        state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 63)
        num = (state >> 33) % 39 - 19
        den = (state >> 13) % 5 + 1
        v = Fraction(num, den)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


SCALE_VAR = VarId(5, k=0)  # ray parameter along the torus weights


def ab_integrate(t: Tableau, p: RatFun, lam: Sequence[Fraction],
                 max_retries: int = 5, seed: int = 0,
                 check_symmetry: bool = True) -> RatFun:
    """Torus fixed-point integration over the component.

    Sums p / (tangent Euler class) over the coordinate fixed points, with
    the torus weights evaluated along the scaled ray lam*s; the exact limit
    s -> 0 recovers the non-equivariant integral, so the result carries no
    trace of the weights.  The tangent weights come from the tangent
    ledger.  A vanishing denominator factor means the weights were
    non-generic; fresh weights are drawn from the seed sequence up to
    max_retries times.
    """
    if check_symmetry:
        from .fixedlocus import assert_block_symmetric
        assert_block_symmetric(p, t)
    from .tableaux import component_dimension
    points = torus_fixed_points(t)
    dim = component_dimension(t)
    lam = [Fraction(v) for v in lam]
    s = Poly.var(SCALE_VAR)
    attempt = 0
    while True:
        try:
            if p.is_poly():
                # all terms share the denominator s^dim; sum numerators
                # and normalize once
                numerator = Poly.zero()
                for point in points:
                    values = fixed_point_values(t, point, lam)
                    scaled = {v: s * c for v, c in values.items()}
                    euler = tangent_euler_at_point(t, point, lam)
                    numerator = numerator \
                        + p.num.substitute(scaled) * (Fraction(1) / euler)
                total = RatFun(numerator, {s: dim} if dim else {})
            else:
                terms = []
                for point in points:
                    values = fixed_point_values(t, point, lam)
                    scaled = {v: s * c for v, c in values.items()}
                    euler = tangent_euler_at_point(t, point, lam)
                    term = p.substitute(scaled) * Fraction(1, 1) / euler
                    term = term * RatFun(Poly.const(1),
                                         {s: dim} if dim else {})
                    terms.append(term)
                total = ratfun_sum(terms)
            return total.substitute({SCALE_VAR: 0})
        except SingularSubstitutionError:
            attempt += 1
            if attempt > max_retries:
                raise
            lam = lam_vector(t.spec.n, seed=seed + 1000 + attempt)


def complete_homogeneous(degree: int, roots: Sequence[VarId]) -> Poly:
    """h_degree: sum of all monomials of the given degree in the roots."""
    if degree < 0:
        return Poly.zero()
    out = Poly.zero()
    for combo in combinations_with_replacement(roots, degree):
        mono = Poly.const(1)
        for v in combo:
            mono = mono * Poly.var(v)
        out = out + mono
    return out


def schur_polynomial(mu: Sequence[int], roots: Sequence[VarId]) -> Poly:
    """Schur polynomial via the Jacobi-Trudi determinant in the h basis."""
    mu = [m for m in mu if m > 0]
    if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
        raise ValueError("partition parts must be non-increasing")
    if len(mu) > len(roots):
        raise ValueError("partition longer than the root list")
    size = len(mu)
    if size == 0:
        return Poly.const(1)
    h = {}

    def H(k):
        if k not in h:
            h[k] = complete_homogeneous(k, roots)
        return h[k]

    out = Poly.zero()
    for perm in permutations(range(size)):
        sign = 1
        seen = list(perm)
        for i in range(size):
            for j in range(i + 1, size):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Poly.const(sign)
        for i in range(size):
            term = term * H(mu[i] - (i + 1) + (perm[i] + 1))
        out = out + term
    return out


def schur_polynomial_bialternant(mu: Sequence[int],
                                 roots: Sequence[VarId]) -> Poly:
    """Schur polynomial as the bialternant ratio, by exact division."""
    mu = list(mu) + [0] * (len(roots) - len(mu))
    if len(mu) != len(roots):
        raise ValueError("partition longer than the root list")
    n = len(roots)
    det = Poly.zero()
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Poly.const(sign)
        for i in range(n):
            term = term * Poly.var(roots[i]) ** (mu[perm[i]] + n - 1 - perm[i])
        det = det + term
    for i in range(n):
        for j in range(i + 1, n):
            q = det.divide_by_linear(Poly.var(roots[i]) - Poly.var(roots[j]))
            if q is None:
                raise ArithmeticError("bialternant division failed")
            det = q
    return det
