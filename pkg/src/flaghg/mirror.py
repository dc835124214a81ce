"""Localization integrals, the Grassmannian hypergeometric class, and the
product-of-projective-spaces comparison.

The degree-d integral over a flag manifold is the sum over distinguished
tableaux of the truncated exponential of the pulled-back hyperplane
classes against the inverse normal Euler class, integrated by the
fixed-point oracle.  For Grassmannians the degree-d class itself is
assembled two independent ways and verified against the antisymmetrized
product of projective-space series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .algebra import (ALPHA, FORMAL_C, Poly, RatFun, VarId, exp_series,
                      kahler, ratfun_sum, y)
from .errors import FormulaMismatchError
from .fixedlocus import (block_decomposition, canonical_roots,
                         euler_class_from_ledger, normal_ledger)
from .pushforward import (DEFAULT_COSET_BUDGET, BlockAlphabet, ab_integrate,
                          brion_pushforward, integrate_to_point, lam_vector,
                          schur_polynomial, tableau_tower)
from .tableaux import (FlagSpec, Tableau, component_dimension,
                       enumerate_tableaux)


def hyperplane_pullback(t: Tableau, level: int) -> Poly:
    """Pullback of the level's linearized hyperplane class: the negated sum
    of all level roots."""
    blocks = block_decomposition(t)
    out = Poly.zero()
    for j in range(1, blocks.K(level) + 1):
        for k in range(1, blocks.m(level, j) + 1):
            out = out - Poly.var(y(level, j, k))
    return out


def zero_tableau(spec: FlagSpec) -> Tableau:
    zero_spec = FlagSpec(spec.n, spec.ranks, (0,) * spec.levels)
    return Tableau(zero_spec, tuple((0,) * r for r in spec.ranks))


def x_roots(spec: FlagSpec, level: int = 1) -> list[VarId]:
    """Root variables of the manifold itself (zero-tableau convention)."""
    return [y(level, 1, k) for k in range(1, spec.rank(level) + 1)]


def mirror_integrand(t: Tableau) -> RatFun:
    """exp(sum_i t_i * pulled-back hyperplane), truncated at the component
    dimension, over the normal Euler class."""
    dim = component_dimension(t)
    exponent = Poly.zero()
    for i in range(1, t.spec.levels + 1):
        exponent = exponent + hyperplane_pullback(t, i) * Poly.var(kahler(i))
    inverse_euler = euler_class_from_ledger(
        normal_ledger(t).negated(),
        canonical_roots(block_decomposition(t)))
    return RatFun.from_poly(exp_series(exponent, dim)) * inverse_euler


def _alpha_only_denominator(f: RatFun) -> bool:
    return all(factor.variables() <= {ALPHA} for factor in f.den)


def decompose_by_kahler(f: RatFun, levels: int):
    """Split a result into {t-exponent tuple: coefficient RatFun in alpha}."""
    if not _alpha_only_denominator(f):
        raise ValueError("expected a pure alpha denominator")
    tvars = [kahler(i) for i in range(1, levels + 1)]
    buckets: dict[tuple[int, ...], Poly] = {}
    for mono, coeff in f.num.terms.items():
        texp = [0] * levels
        rest = []
        for v, e in mono:
            if v.kind == 3:
                texp[v.i - 1] = e
            else:
                rest.append((v, e))
        key = tuple(texp)
        bucket = buckets.setdefault(key, Poly())
        bucket.terms[tuple(rest)] = bucket.terms.get(tuple(rest),
                                                     Fraction(0)) + coeff
    return {
        key: RatFun(Poly(dict(p.terms)), f.den)
        for key, p in sorted(buckets.items())
    }


@dataclass
class IntegralResult:
    """Total localization integral plus the per-tableau breakdown."""

    spec: FlagSpec
    value: RatFun
    per_tableau: list[tuple[Tableau, RatFun]]
    lambda_seed: int

    def t_degree(self) -> int:
        return max(
            (sum(e for v, e in mono if v.kind == 3)
             for mono in self.value.num.terms),
            default=0,
        )

    def to_json(self):
        levels = self.spec.levels
        return {
            "schema": "flaghg/result-v1",
            "spec": self.spec.to_json(),
            "degree": list(self.spec.degrees),
            "t_poly": [
                {"t_exp": list(texp), "alpha_ratfun": coeff.to_text()}
                for texp, coeff in decompose_by_kahler(self.value,
                                                       levels).items()
            ],
            "per_tableau": {
                repr([list(r) for r in t.rows]): contrib.to_text()
                for t, contrib in self.per_tableau
            },
            "lambda_seed": self.lambda_seed,
        }


def integral_Id(spec: FlagSpec, lambda_seed: int = 0,
                cross_check: bool = False,
                budget: int = DEFAULT_COSET_BUDGET) -> IntegralResult:
    """Sum the localization integral over all distinguished tableaux.

    With cross_check the fibration-tower route is run as well and must
    agree tableau by tableau; it is exponentially more expensive and only
    meant for small inputs.
    """
    lam = lam_vector(spec.n, lambda_seed)
    total = RatFun.const(0)
    per_tableau = []
    for t in enumerate_tableaux(spec):
        integrand = mirror_integrand(t)
        contribution = ab_integrate(t, integrand, lam, seed=lambda_seed,
                                    check_symmetry=False)
        if cross_check:
            tower_value = integrate_to_point(integrand, tableau_tower(t),
                                             budget)
            if tower_value != contribution:
                raise FormulaMismatchError(
                    f"tower and oracle routes disagree on {t.rows}")
        per_tableau.append((t, contribution))
        total = total + contribution
    if not _alpha_only_denominator(total):
        raise FormulaMismatchError(
            "integral denominator is not a pure alpha power")
    return IntegralResult(spec, total, per_tableau, lambda_seed)


def _grassmannian_term_tableau_route(n: int, r: int, d: int,
                                     budget: int) -> RatFun:
    spec = FlagSpec(n, (r,), (d,))
    targets = [Poly.var(v) for v in x_roots(spec)]
    total = RatFun.const(0)
    for t in enumerate_tableaux(spec):
        blocks = block_decomposition(t)
        inverse_euler = euler_class_from_ledger(
            normal_ledger(t).negated(),
            canonical_roots(blocks, [Poly.zero()] * n))
        letters = [
            [y(1, j, k) for k in range(1, blocks.m(1, j) + 1)]
            for j in range(1, blocks.K(1) + 1)
        ]
        alphabet = BlockAlphabet(letters)
        pushed = brion_pushforward(inverse_euler, alphabet, budget)
        total = total + pushed.substitute(
            dict(zip(sorted(alphabet.letters), targets)))
    return total


def _grassmannian_term_display_route(n: int, r: int, d: int) -> RatFun:
    """The simplified class: over weak compositions of d, the weight-shifted
    Vandermonde ratio against the section-space factors."""
    xs = [Poly.var(y(1, 1, k)) for k in range(1, r + 1)]
    alpha = Poly.var(ALPHA)
    terms = []
    sign = Fraction((-1) ** ((r - 1) * d))
    for comp in iproduct(range(d + 1), repeat=r):
        if sum(comp) != d:
            continue
        term = RatFun.const(sign)
        for j in range(r):
            for jp in range(j + 1, r):
                shifted = xs[jp] - xs[j] + alpha * (comp[jp] - comp[j])
                term = term * shifted
                term = term * RatFun(Poly.const(1), {xs[jp] - xs[j]: 1})
        for j in range(r):
            for l in range(1, comp[j] + 1):
                term = term * RatFun(Poly.const(1),
                                     {-xs[j] - alpha * l: 1}) ** n
        terms.append(term)
    return ratfun_sum(terms)


def grassmannian_hg_term(n: int, r: int, d: int,
                         budget: int = DEFAULT_COSET_BUDGET) -> RatFun:
    """The degree-d hypergeometric class on a Grassmannian, computed both
    by pushing inverse Euler classes over tableaux and by the simplified
    display; the routes must agree exactly."""
    via_tableaux = _grassmannian_term_tableau_route(n, r, d, budget)
    via_display = _grassmannian_term_display_route(n, r, d)
    if via_tableaux != via_display:
        raise FormulaMismatchError(
            f"hypergeometric routes disagree at (n={n}, r={r}, d={d})")
    return via_tableaux


def box_partitions(r: int, cols: int) -> list[tuple[int, ...]]:
    """Partitions fitting in an r x cols box, padded to length r."""
    out = []

    def rec(prefix, maxpart, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for p in range(maxpart, -1, -1):
            rec(prefix + [p], p, slots - 1)

    rec([], cols, r)
    out.sort()
    return out


def box_complement(mu: tuple[int, ...], r: int, cols: int) -> tuple[int, ...]:
    padded = list(mu) + [0] * (r - len(mu))
    return tuple(cols - padded[r - 1 - i] for i in range(r))


def schur_pairing(spec: FlagSpec, cls: RatFun, mu, lambda_seed: int = 0,
                  lam=None) -> RatFun:
    """Integrate cls * s_mu over the manifold by the fixed-point oracle."""
    t0 = zero_tableau(spec)
    if lam is None:
        lam = lam_vector(spec.n, lambda_seed)
    s_mu = schur_polynomial(mu, x_roots(spec))
    return ab_integrate(t0, cls * s_mu, lam, seed=lambda_seed,
                        check_symmetry=False)


def reconstruct_class_from_pairings(n: int, r: int, pairings) -> RatFun:
    """The unique class on the Grassmannian with the given Schur pairings,
    in the dual Schur basis."""
    cols = n - r
    expected = box_partitions(r, cols)
    keys = {tuple(list(mu) + [0] * (r - len(mu))) for mu in pairings}
    if keys != set(expected):
        raise ValueError(
            "pairings must cover exactly the partitions in the box")
    normalized = {
        tuple(list(mu) + [0] * (r - len(mu))): value
        for mu, value in pairings.items()
    }
    roots = [y(1, 1, k) for k in range(1, r + 1)]
    out = RatFun.const(0)
    for nu in expected:
        coeff = normalized[box_complement(nu, r, cols)]
        out = out + coeff * schur_polynomial(nu, roots)
    return out


@dataclass
class HoriVafaReport:
    """Per-degree, per-partition residuals of the antisymmetrization check."""

    n: int
    r: int
    max_degree: int
    division_exact: bool
    residuals: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.division_exact and all(
            all(c == "0" for c in entry["residual_c_coeffs"])
            for entry in self.residuals
        )

    def to_json(self):
        return {
            "schema": "flaghg/hori-vafa-v1",
            "n": self.n,
            "r": self.r,
            "max_degree": self.max_degree,
            "division_exact": self.division_exact,
            "ok": self.ok,
            "residuals": self.residuals,
        }


def _c_coefficients(f: RatFun, max_power: int) -> list[RatFun]:
    out = []
    for k in range(max_power + 1):
        out.append(RatFun(f.num.coefficient(FORMAL_C, k), f.den))
    return out


def _exact_ratfun_division(f: RatFun, divisor: Poly) -> RatFun | None:
    q = f.num.divide_by_linear(divisor)
    if q is None:
        return None
    return RatFun(q, f.den)


def hori_vafa_verify(n: int, r: int, max_degree: int, lambda_seed: int = 0,
                     budget: int = DEFAULT_COSET_BUDGET) -> HoriVafaReport:
    """Check that antisymmetrizing the product of projective-space series
    reproduces the Grassmannian series, pairing by pairing.

    The product series is built from the engine's own one-row output in
    separate Kahler variables; the derivative operator acts per multi-degree
    as the shifted Vandermonde, the variable substitution evaluates integer
    exponentials of the formal constant to signs and keeps nilpotent ones
    polynomial, and the result is divided exactly by the Vandermonde before
    comparison.
    """
    if not (2 <= r < n):
        raise ValueError("need 2 <= r < n")
    if max_degree < 1:
        raise ValueError("truncation degree must be at least 1")
    spec = FlagSpec(n, (r,), (0,))
    xs = [Poly.var(v) for v in x_roots(spec)]
    alpha = Poly.var(ALPHA)
    cvar = Poly.var(FORMAL_C)
    dim_x = r * (n - r)
    lam = lam_vector(n, lambda_seed)
    partitions = box_partitions(r, n - r)

    one_row_terms = {
        di: grassmannian_hg_term(n, 1, di, budget)
        for di in range(max_degree + 1)
    }

    sum_x = Poly.zero()
    for x in xs:
        sum_x = sum_x + x
    # e^{sum_x c / alpha} and its reciprocal prefactor, as truncated series
    plus_exp = RatFun.const(0)
    minus_exp = RatFun.const(0)
    for k in range(dim_x + 1):
        coeff = Fraction(1)
        for i in range(1, k + 1):
            coeff /= i
        body = RatFun.from_poly((sum_x * cvar) ** k * coeff)
        denom = RatFun(Poly.const(1), {alpha: k} if k else {})
        plus_exp = plus_exp + body * denom
        minus_exp = minus_exp + body * denom * Fraction((-1) ** k)
    prefactor = plus_exp * minus_exp
    # drop incomplete c-orders; the retained ones are exact
    kept = Poly.zero()
    for mono, coeff in prefactor.num.terms.items():
        cdeg = 0
        for v, e in mono:
            if v == FORMAL_C:
                cdeg = e
        if cdeg <= dim_x:
            kept = kept + Poly({mono: coeff})
    prefactor = RatFun(kept, prefactor.den)

    report = HoriVafaReport(n, r, max_degree, True)
    for d in range(max_degree + 1):
        lhs = grassmannian_hg_term(n, r, d, budget)
        sign = Fraction((-1) ** ((r - 1) * d))
        rhs_terms = []
        for comp in iproduct(range(d + 1), repeat=r):
            if sum(comp) != d:
                continue
            term = RatFun.const(sign)
            for i in range(r):
                factor = one_row_terms[comp[i]].substitute(
                    {y(1, 1, 1): xs[i]})
                term = term * factor
            for j in range(r):
                for jp in range(j + 1, r):
                    term = term * (alpha * (comp[jp] - comp[j])
                                   + xs[jp] - xs[j])
            rhs_terms.append(term)
        rhs = ratfun_sum(rhs_terms) * prefactor
        division_ok = True
        for j in range(r):
            for jp in range(j + 1, r):
                divided = _exact_ratfun_division(rhs, xs[jp] - xs[j])
                if divided is None:
                    division_ok = False
                    break
                rhs = divided
            if not division_ok:
                break
        if not division_ok:
            report.division_exact = False
            report.residuals.append({
                "degree": d,
                "partition": None,
                "residual_c_coeffs": ["division by the Vandermonde failed"],
            })
            continue
        for mu in partitions:
            left = schur_pairing(spec, lhs, mu, lambda_seed, lam)
            right = schur_pairing(spec, rhs, mu, lambda_seed, lam)
            residual = right - left
            coeffs = _c_coefficients(residual, dim_x)
            report.residuals.append({
                "degree": d,
                "partition": list(mu),
                "residual_c_coeffs": [c.to_text() for c in coeffs],
            })
    return report
