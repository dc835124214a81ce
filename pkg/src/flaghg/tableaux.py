"""Incomplete matrices indexing circle-fixed components, and their data.

A distinguished component is indexed by a matrix A whose i-th row is a
non-decreasing list of r_i non-negative integers summing to d_i, with
entries dominating the next row columnwise.  From A we derive run-length
blocks (distinct values with multiplicities), index tables for adjacent
levels, and the dimensions of both the ambient moduli space and the
component itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import InfeasibleTableauError


@dataclass(frozen=True)
class FlagSpec:
    """Ambient dimension, strictly increasing ranks, per-level degrees."""

    n: int
    ranks: tuple[int, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("ambient dimension must be at least 2")
        if not self.ranks:
            raise ValueError("at least one rank is required")
        if len(self.ranks) != len(self.degrees):
            raise ValueError("ranks and degrees must have equal length")
        prev = 0
        for r in self.ranks:
            if r <= prev:
                raise ValueError("ranks must be strictly increasing")
            prev = r
        if self.ranks[-1] >= self.n:
            raise ValueError("ranks must be smaller than the ambient dimension")
        if any(d < 0 for d in self.degrees):
            raise ValueError("degrees must be non-negative")

    @property
    def levels(self) -> int:
        return len(self.ranks)

    def rank(self, i: int) -> int:
        """r_i with the conventions r_0 = 0, r_{I+1} = n."""
        if i == 0:
            return 0
        if i == self.levels + 1:
            return self.n
        return self.ranks[i - 1]

    @property
    def hilbert_polynomials(self) -> tuple[tuple[int, int], ...]:
        """(slope, constant) per level: P_i(t) = (n-r_i) t + d_i + (n-r_i)."""
        return tuple(
            (self.n - r, d + self.n - r)
            for r, d in zip(self.ranks, self.degrees)
        )

    def flag_dimension(self) -> int:
        return sum(
            (self.n - self.rank(i)) * (self.rank(i) - self.rank(i - 1))
            for i in range(1, self.levels + 1)
        )

    def to_json(self):
        return {"n": self.n, "ranks": list(self.ranks),
                "degrees": list(self.degrees)}


def hquot_dimension(spec: FlagSpec) -> int:
    """Dimension of the hyper-Quot scheme for this spec."""
    dim = spec.flag_dimension()
    for i in range(1, spec.levels + 1):
        dim += spec.degrees[i - 1] * (spec.rank(i + 1) - spec.rank(i - 1))
    return dim


def _ascending_rows(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Non-decreasing non-negative rows of fixed length with a fixed sum."""
    def rec(remaining, slots, minimum):
        if slots == 1:
            if remaining >= minimum:
                yield (remaining,)
            return
        for v in range(minimum, remaining // slots + 1):
            for rest in rec(remaining - v, slots - 1, v):
                yield (v,) + rest
    if parts == 0:
        if total == 0:
            yield ()
        return
    yield from rec(total, parts, 0)


def _row_candidates(spec: FlagSpec) -> list[list[tuple[int, ...]]]:
    return [
        sorted(_ascending_rows(spec.degrees[i], spec.ranks[i]))
        for i in range(spec.levels)
    ]


def _column_admissible(upper: tuple[int, ...], lower: tuple[int, ...]) -> bool:
    return all(upper[j] >= lower[j] for j in range(len(upper)))


@dataclass(frozen=True)
class Tableau:
    """An admissible incomplete matrix A, optionally paired with B."""

    spec: FlagSpec
    rows: tuple[tuple[int, ...], ...]
    beta_rows: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        spec = self.spec
        if len(self.rows) != spec.levels:
            raise ValueError("one row per level is required")
        for i, row in enumerate(self.rows):
            if len(row) != spec.ranks[i]:
                raise ValueError(f"row {i + 1} must have length r_{i + 1}")
            if any(v < 0 for v in row):
                raise ValueError("entries must be non-negative")
            if any(row[j] > row[j + 1] for j in range(len(row) - 1)):
                raise ValueError("rows must be non-decreasing")
        if self.beta_rows is None:
            for i, row in enumerate(self.rows):
                if sum(row) != spec.degrees[i]:
                    raise ValueError(f"row {i + 1} must sum to d_{i + 1}")
        else:
            if len(self.beta_rows) != spec.levels:
                raise ValueError("one beta row per level is required")
            for i, row in enumerate(self.beta_rows):
                if len(row) != spec.ranks[i]:
                    raise ValueError(f"beta row {i + 1} has the wrong length")
                if any(v < 0 for v in row):
                    raise ValueError("entries must be non-negative")
                if any(row[j] > row[j + 1] for j in range(len(row) - 1)):
                    raise ValueError("beta rows must be non-decreasing")
                if sum(self.rows[i]) + sum(row) != spec.degrees[i]:
                    raise ValueError(
                        f"alpha and beta rows at level {i + 1} must sum to d")
        for i in range(spec.levels - 1):
            if not _column_admissible(self.rows[i], self.rows[i + 1]):
                raise ValueError("rows violate column admissibility")
            if self.beta_rows is not None and not _column_admissible(
                    self.beta_rows[i], self.beta_rows[i + 1]):
                raise ValueError("beta rows violate column admissibility")

    @property
    def distinguished(self) -> bool:
        return self.beta_rows is None or all(
            all(v == 0 for v in row) for row in self.beta_rows)

    def to_json(self):
        return {
            "n": self.spec.n,
            "ranks": list(self.spec.ranks),
            "degrees": list(self.spec.degrees),
            "alpha": [list(r) for r in self.rows],
            "beta": None if self.beta_rows is None
            else [list(r) for r in self.beta_rows],
        }

    @staticmethod
    def from_json(data) -> "Tableau":
        spec = FlagSpec(data["n"], tuple(data["ranks"]),
                        tuple(data["degrees"]))
        beta = data.get("beta")
        return Tableau(
            spec,
            tuple(tuple(r) for r in data["alpha"]),
            None if beta is None else tuple(tuple(r) for r in beta),
        )


def enumerate_tableaux(spec: FlagSpec) -> list[Tableau]:
    """All distinguished tableaux, in lexicographic order of flattened rows."""
    candidates = _row_candidates(spec)
    out: list[Tableau] = []

    def rec(level, chosen):
        if level == spec.levels:
            out.append(Tableau(spec, tuple(chosen)))
            return
        for row in candidates[level]:
            if level > 0 and not _column_admissible(chosen[-1], row):
                continue
            rec(level + 1, chosen + [row])

    rec(0, [])
    return out


def enumerate_general_components(spec: FlagSpec) -> list[Tableau]:
    """All (A;B) pairs, in lexicographic order of flattened (A,B) rows."""
    level_pairs: list[list[tuple[tuple[int, ...], tuple[int, ...]]]] = []
    for i in range(spec.levels):
        pairs = []
        for da in range(spec.degrees[i] + 1):
            db = spec.degrees[i] - da
            for arow in _ascending_rows(da, spec.ranks[i]):
                for brow in _ascending_rows(db, spec.ranks[i]):
                    pairs.append((arow, brow))
        pairs.sort()
        level_pairs.append(pairs)
    out: list[Tableau] = []

    def rec(level, alphas, betas):
        if level == spec.levels:
            out.append(Tableau(spec, tuple(alphas), tuple(betas)))
            return
        for arow, brow in level_pairs[level]:
            if level > 0 and not (
                    _column_admissible(alphas[-1], arow)
                    and _column_admissible(betas[-1], brow)):
                continue
            rec(level + 1, alphas + [arow], betas + [brow])

    rec(0, [], [])
    return out


def _rle(row: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    values: list[int] = []
    mults: list[int] = []
    for v in row:
        if values and values[-1] == v:
            mults[-1] += 1
        else:
            values.append(v)
            mults.append(1)
    return tuple(values), tuple(mults)


@dataclass(frozen=True)
class BlockData:
    """Distinct row values, multiplicities and partial ranks per level.

    Levels are 1-based; level I+1 is the ambient pseudo-level with a single
    block of value 0 and multiplicity n.
    """

    spec: FlagSpec
    values: tuple[tuple[int, ...], ...]
    mults: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(spec: FlagSpec, rows) -> "BlockData":
        values = []
        mults = []
        for row in rows:
            v, m = _rle(row)
            values.append(v)
            mults.append(m)
        values.append((0,))
        mults.append((spec.n,))
        return BlockData(spec, tuple(values), tuple(mults))

    @property
    def levels(self) -> int:
        return self.spec.levels

    def K(self, i: int) -> int:
        return len(self.values[i - 1])

    def a(self, i: int, j: int) -> int:
        return self.values[i - 1][j - 1]

    def m(self, i: int, j: int) -> int:
        return self.mults[i - 1][j - 1]

    def r(self, i: int, j: int) -> int:
        """Partial rank m_{i,1} + ... + m_{i,j}; r(i, 0) = 0."""
        return sum(self.mults[i - 1][:j])


def block_decomposition(t: Tableau) -> BlockData:
    """Run-length blocks of the alpha rows plus the ambient pseudo-level."""
    return BlockData.from_rows(t.spec, t.rows)


def beta_block_decomposition(t: Tableau) -> BlockData:
    if t.beta_rows is None:
        raise ValueError("tableau has no beta rows")
    return BlockData.from_rows(t.spec, t.beta_rows)


@dataclass(frozen=True)
class IndexTables:
    """Critical-containment index functions per adjacent level pair.

    IA[i-1][j] = I_A(i, j) for 0 <= j <= K_i (max-rule, 0 when empty);
    IAp[i-1][j-1] = I'_A(i, j); lrank[i-1][j-1] = l_{i+1,j}.
    """

    blocks: BlockData
    IA: tuple[tuple[int, ...], ...]
    IAp: tuple[tuple[int, ...], ...]
    lrank: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_blocks(blocks: BlockData) -> "IndexTables":
        IA = []
        IAp = []
        lrank = []
        for i in range(1, blocks.levels + 1):
            Ki = blocks.K(i)
            Kn = blocks.K(i + 1)
            ia_row = [0]
            iap_row = []
            l_row = []
            for j in range(1, Ki + 1):
                aij = blocks.a(i, j)
                ia = 0
                iap = 0
                for jp in range(1, Kn + 1):
                    if blocks.a(i + 1, jp) <= aij:
                        ia = jp
                    if blocks.a(i + 1, jp) <= aij - 1:
                        iap = jp
                ia_row.append(ia)
                iap_row.append(iap)
                l_row.append(blocks.r(i + 1, ia))
            IA.append(tuple(ia_row))
            IAp.append(tuple(iap_row))
            lrank.append(tuple(l_row))
        return IndexTables(blocks, tuple(IA), tuple(IAp), tuple(lrank))

    def I_A(self, i: int, j: int) -> int:
        return self.IA[i - 1][j]

    def I_Ap(self, i: int, j: int) -> int:
        return self.IAp[i - 1][j - 1]

    def l(self, i_plus_1: int, j: int) -> int:
        return self.lrank[i_plus_1 - 2][j - 1]

    def top_index_reaches_last_block(self, i: int) -> bool:
        """Whether the top block's index reaches K_{i+1}; fails exactly when
        the next level's largest value exceeds this level's."""
        return self.I_A(i, self.blocks.K(i)) == self.blocks.K(i + 1)


def index_tables(t: Tableau) -> IndexTables:
    return IndexTables.from_blocks(block_decomposition(t))


def _tower_dimension(blocks: BlockData, tables: IndexTables) -> int:
    dim = 0
    for i in range(1, blocks.levels + 1):
        for j in range(1, blocks.K(i) + 1):
            step = (blocks.r(i, j) - blocks.r(i, j - 1)) \
                * (tables.l(i + 1, j) - blocks.r(i, j))
            if step < 0:
                raise InfeasibleTableauError(
                    f"negative fibration step at level {i}, block {j}")
            dim += step
    return dim


def component_dimension(t: Tableau) -> int:
    """Dimension of the fixed component of a distinguished tableau."""
    if not t.distinguished:
        raise ValueError("component_dimension expects a distinguished tableau")
    blocks = block_decomposition(t)
    return _tower_dimension(blocks, IndexTables.from_blocks(blocks))


def general_component_dimension(t: Tableau) -> int:
    """Dimension of a general (A;B) component via the fibered-product rule.

    Per level pair: A-tower step + B-tower step minus the shared Grassmannian
    choice r_i * (max(l^A, l^B) - r_i) of the common last flag element.
    """
    if t.beta_rows is None:
        return component_dimension(t)
    a_blocks = block_decomposition(t)
    b_blocks = beta_block_decomposition(t)
    a_tables = IndexTables.from_blocks(a_blocks)
    b_tables = IndexTables.from_blocks(b_blocks)
    dim = _tower_dimension(a_blocks, a_tables) \
        + _tower_dimension(b_blocks, b_tables)
    for i in range(1, t.spec.levels + 1):
        la = a_tables.l(i + 1, a_blocks.K(i))
        lb = b_tables.l(i + 1, b_blocks.K(i))
        ri = t.spec.rank(i)
        dim -= ri * (max(la, lb) - ri)
    return dim
