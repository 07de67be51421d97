"""Fuzzy cellular-automata core.

Cells of a one-dimensional lattice hold one of n quantized fuzzy levels
Q_j = j/(n-1), j = 0..n-1, kept as exact rationals so that the complement
map v -> 1-v permutes the level set without rounding.  Each cell updates
synchronously from (left, self, right) under a per-cell local rule drawn
from a closed nine-rule catalog, optionally complemented.  Because every
rule application re-quantizes its output onto the level set, the global
state space is finite and every trajectory falls into a cycle; those
cycles (keyed canonically) are the attractors whose basins the classifier
layer uses as decision regions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import StateSpaceError

#: hard guard for exhaustive basin enumeration
MAX_ENUMERATION = 1_000_000

_ZERO = Fraction(0)
_ONE = Fraction(1)


class RuleId(str, Enum):
    """Closed catalog of local rules (product AND, bounded-sum OR)."""

    ZERO = "ZERO"          # constant 0
    IDENTITY = "IDENTITY"  # s
    LEFT = "LEFT"          # l
    RIGHT = "RIGHT"        # r
    AND3 = "AND3"          # l*s*r
    OR3 = "OR3"            # min(1, l+s+r)
    AND_LR = "AND_LR"      # l*r
    OR_LR = "OR_LR"        # min(1, l+r)
    MAJ3 = "MAJ3"          # median(l, s, r)


@dataclass(frozen=True)
class LocalRule:
    rule_id: RuleId
    complemented: bool = False

    def token(self) -> str:
        """Spec-string form: rule name, '~' suffix when complemented."""
        return self.rule_id.value + ("~" if self.complemented else "")


#: all 18 (rule, complement) combinations, in catalog order
RULE_CATALOG: tuple[LocalRule, ...] = tuple(
    LocalRule(rid, comp) for rid in RuleId for comp in (False, True)
)

RuleVector = tuple[LocalRule, ...]


@dataclass(frozen=True)
class FuzzyLevels:
    """The ordered level set Q_j = j/(n-1), exact."""

    n: int
    levels: tuple[Fraction, ...]


@dataclass(frozen=True)
class FuzzyLattice:
    """A configuration: per-cell level indices under a shared level set.

    Boundary policy is fixed: absent neighbours read as level 0.
    """

    levels: FuzzyLevels
    cells: tuple[int, ...]

    def __post_init__(self):
        if len(self.cells) < 1:
            raise ValueError("lattice must have at least one cell")
        n = self.levels.n
        for c in self.cells:
            if not 0 <= c < n:
                raise ValueError(f"cell level index {c} outside [0, {n - 1}]")


@dataclass(frozen=True)
class EvolutionResult:
    """Outcome of running a configuration into its cycle.

    attractor_key is the lexicographically smallest cycle member (by level
    index tuple), which names the basin canonically even for limit cycles.
    """

    attractor_key: tuple[int, ...]
    transient_len: int
    cycle_len: int


def make_levels(n: int) -> FuzzyLevels:
    """Build the n-state level set {0, 1/(n-1), ..., 1}.

    Exact rationals: 1 - levels[j] == levels[n-1-j] holds with no rounding.
    """
    if n < 2:
        raise ValueError(f"need at least 2 fuzzy states, got n={n}")
    return FuzzyLevels(n=n, levels=tuple(Fraction(j, n - 1) for j in range(n)))


def quantize(x, levels: FuzzyLevels) -> int:
    """Index of the level nearest to x in [0,1]; midpoint ties round down.

    Accepts floats or Fractions; comparison is exact either way (the float
    is converted to its exact binary rational first).
    """
    fx = Fraction(x)
    if fx < 0 or fx > 1:
        raise ValueError(f"value {x} outside [0, 1]")
    return min(range(levels.n), key=lambda j: (abs(fx - levels.levels[j]), j))


def _raw_rule_value(l: Fraction, s: Fraction, r: Fraction, rule_id: RuleId) -> Fraction:
    if rule_id is RuleId.ZERO:
        return _ZERO
    if rule_id is RuleId.IDENTITY:
        return s
    if rule_id is RuleId.LEFT:
        return l
    if rule_id is RuleId.RIGHT:
        return r
    if rule_id is RuleId.AND3:
        return l * s * r
    if rule_id is RuleId.OR3:
        return min(_ONE, l + s + r)
    if rule_id is RuleId.AND_LR:
        return l * r
    if rule_id is RuleId.OR_LR:
        return min(_ONE, l + r)
    if rule_id is RuleId.MAJ3:
        return sorted((l, s, r))[1]
    raise ValueError(f"unknown rule id {rule_id!r}")


def apply_rule(left: int, center: int, right: int, rule: LocalRule, levels: FuzzyLevels) -> int:
    """One local update: exact fuzzy value, optional complement, re-quantize.

    Re-quantization closes the update over the level set; without it the
    AND rules would generate ever-finer rationals and attractors would not
    be guaranteed to exist.
    """
    lv = levels.levels
    v = _raw_rule_value(lv[left], lv[center], lv[right], rule.rule_id)
    if rule.complemented:
        v = _ONE - v
    return quantize(v, levels)


@lru_cache(maxsize=None)
def _rule_table(rule: LocalRule, levels: FuzzyLevels):
    """Dense (l, s, r) -> output-index table for one rule; n**3 entries."""
    n = levels.n
    return tuple(
        tuple(
            tuple(apply_rule(l, s, r, rule, levels) for r in range(n))
            for s in range(n)
        )
        for l in range(n)
    )


def rule_tables(rules: RuleVector, levels: FuzzyLevels) -> list:
    """Per-cell lookup tables; the fast path used by bulk evolution."""
    return [_rule_table(rule, levels) for rule in rules]


def _step_cells(cells: tuple[int, ...], tables: list) -> tuple[int, ...]:
    size = len(cells)
    out = []
    left = 0  # null boundary
    for i in range(size):
        c = cells[i]
        r = cells[i + 1] if i + 1 < size else 0
        out.append(tables[i][left][c][r])
        left = c
    return tuple(out)


def step(lattice: FuzzyLattice, rules: RuleVector) -> FuzzyLattice:
    """Synchronous update of every cell from the previous configuration."""
    if len(rules) != len(lattice.cells):
        raise ValueError(
            f"rule vector length {len(rules)} != lattice length {len(lattice.cells)}"
        )
    tables = rule_tables(rules, lattice.levels)
    return FuzzyLattice(levels=lattice.levels, cells=_step_cells(lattice.cells, tables))


def evolve(lattice: FuzzyLattice, rules: RuleVector, max_steps: int | None = None) -> EvolutionResult:
    """Iterate until a configuration repeats; report transient and cycle.

    max_steps defaults to n**size, the pigeonhole bound that guarantees a
    repeat; passing anything smaller risks a RuntimeError on slow-mixing
    rule vectors.
    """
    size = len(lattice.cells)
    if len(rules) != size:
        raise ValueError(f"rule vector length {len(rules)} != lattice length {size}")
    if max_steps is None:
        max_steps = lattice.levels.n ** size
    tables = rule_tables(rules, lattice.levels)

    path = [lattice.cells]
    index = {lattice.cells: 0}
    cur = lattice.cells
    for t in range(1, max_steps + 1):
        cur = _step_cells(cur, tables)
        first = index.get(cur)
        if first is not None:
            return EvolutionResult(
                attractor_key=min(path[first:]),
                transient_len=first,
                cycle_len=t - first,
            )
        index[cur] = t
        path.append(cur)
    raise RuntimeError(f"no cycle detected within {max_steps} steps")


def trace_attractor(cells: tuple[int, ...], tables: list, memo: dict | None = None) -> tuple[int, ...]:
    """Attractor key of one start configuration, with optional memo sharing.

    Equivalent to evolve(...).attractor_key but caches every configuration
    seen along the way, so repeated calls over many starts (basin maps,
    training-set sweeps) short-circuit as soon as a known trajectory is hit.
    """
    if memo is None:
        memo = {}
    key = memo.get(cells)
    if key is not None:
        return key
    path = [cells]
    index = {cells: 0}
    cur = cells
    while True:
        cur = _step_cells(cur, tables)
        key = memo.get(cur)
        if key is not None:
            break
        first = index.get(cur)
        if first is not None:
            key = min(path[first:])
            break
        index[cur] = len(path)
        path.append(cur)
    for s in path:
        memo[s] = key
    return key


def basin_map(levels: FuzzyLevels, size: int, rules: RuleVector) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """Exhaustively group all n**size initial configurations by attractor.

    The grouping partitions the state space; basin lists keep enumeration
    (lexicographic) order.  Refuses state spaces above MAX_ENUMERATION.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    if len(rules) != size:
        raise ValueError(f"rule vector length {len(rules)} != size {size}")
    total = levels.n ** size
    if total > MAX_ENUMERATION:
        raise StateSpaceError(
            f"state space {levels.n}**{size} = {total} exceeds enumeration guard {MAX_ENUMERATION}"
        )
    tables = rule_tables(rules, levels)
    memo: dict = {}
    basins: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for start in product(range(levels.n), repeat=size):
        key = trace_attractor(start, tables, memo)
        basins.setdefault(key, []).append(start)
    return basins
