"""Bounded words generated at the left and right ends of growing letters.

For a growing letter ``c`` the leftmost growing letter of ``sigma(c)`` defines a
functional graph on growing letters (and symmetrically on the right).  Along a
cycle of that graph, the bounded prefixes accumulated by iteration are
eventually periodic; the periodic part is the word LP(c) (resp. RP(c)), which
is non-empty exactly when ``c`` is isolated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, NamedTuple, Sequence, Tuple

from .functional import entry_steps, functional_cycles
from .substitution import LetterClassification, Substitution
from .words import EMPTY, Letter, Word, concat_family, lb, lc, rb, rc

LEFT = "left"
RIGHT = "right"


def _check_side(side: str):
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")


@dataclass(frozen=True)
class BoundaryGraph:
    side: str
    edge: Mapping[Letter, Letter]
    cycles: Tuple[Tuple[Letter, ...], ...]
    entry_steps: Mapping[Letter, int]

    def cycle_of(self, c: Letter) -> Tuple[Letter, ...]:
        for cycle in self.cycles:
            if c in cycle:
                return cycle
        raise ValueError(f"letter {c!r} is not {self.side}-periodic")

    def is_periodic(self, c: Letter) -> bool:
        return self.entry_steps[c] == 0

    def walk(self, c: Letter, n: int) -> Letter:
        for _ in range(n):
            c = self.edge[c]
        return c


@dataclass(frozen=True)
class CyclePeriodData:
    """Base words of one boundary cycle and their joint eventual period under ``sigma^p``."""

    side: str
    cycle: Tuple[Letter, ...]
    base_words: Mapping[Letter, Word]
    preperiod_exponent: int
    period_exponent: int

    @property
    def length(self) -> int:
        return len(self.cycle)


def build_boundary_graph(sub: Substitution, cls: LetterClassification, side: str) -> BoundaryGraph:
    _check_side(side)
    return _graph(sub, cls, side)


@lru_cache(maxsize=512)
def _graph(sub: Substitution, cls: LetterClassification, side: str) -> BoundaryGraph:
    growing = cls.growing
    pick = lc if side == LEFT else rc
    nodes = sub.sorted(growing)
    edge = {c: pick(sub.rules[c], growing) for c in nodes}
    cycles = functional_cycles(nodes, edge)
    cyclic = {c for cycle in cycles for c in cycle}
    return BoundaryGraph(
        side=side,
        edge=edge,
        cycles=tuple(tuple(cycle) for cycle in cycles),
        entry_steps=entry_steps(nodes, edge, cyclic),
    )


def cycle_base_words(sub: Substitution, cls: LetterClassification, graph: BoundaryGraph,
                     cycle: Sequence[Letter]) -> CyclePeriodData:
    return _cycle_data(sub, cls, graph.side, tuple(cycle))


@lru_cache(maxsize=2048)
def _cycle_data(sub: Substitution, cls: LetterClassification, side: str,
                cycle: Tuple[Letter, ...]) -> CyclePeriodData:
    growing = cls.growing
    p = len(cycle)
    base: Dict[Letter, Word] = {}
    for i, c in enumerate(cycle):
        if side == LEFT:
            parts = (sub.power(lb(sub.rules[cycle[(i + j) % p]], growing), p - 1 - j) for j in range(p))
        else:
            parts = (sub.power(rb(sub.rules[cycle[(i + p - 1 - j) % p]], growing), j) for j in range(p))
        base[c] = concat_family(parts)

    # joint eventual period of (sigma^{p j}(base_c))_c
    state = tuple(base[c] for c in cycle)
    seen = {}
    j = 0
    while state not in seen:
        seen[state] = j
        state = tuple(sub.power(w, p) for w in state)
        j += 1
    q = seen[state]
    return CyclePeriodData(side, cycle, base, q, j - q)


def _periodic_data(sub, cls, c, side) -> Tuple[BoundaryGraph, CyclePeriodData]:
    _check_side(side)
    graph = _graph(sub, cls, side)
    if c not in graph.edge:
        raise ValueError(f"letter {c!r} is not growing")
    if not graph.is_periodic(c):
        raise ValueError(f"letter {c!r} is not {side}-periodic")
    return graph, _cycle_data(sub, cls, side, graph.cycle_of(c))


def period_word(sub: Substitution, cls: LetterClassification, c: Letter, side: str) -> Word:
    """LP(c) on the left, RP(c) on the right; empty iff ``c`` is not isolated on that side."""
    _, data = _periodic_data(sub, cls, c, side)
    p, q, pc = data.length, data.preperiod_exponent, data.period_exponent
    base = data.base_words[c]
    if side == LEFT:
        return concat_family(sub.power(base, p * (q + pc - 1 - j)) for j in range(pc))
    return concat_family(sub.power(base, p * (q + j)) for j in range(pc))


def preperiod_word(sub: Substitution, cls: LetterClassification, c: Letter, side: str) -> Word:
    """LQ(c) on the left, RQ(c) on the right."""
    _, data = _periodic_data(sub, cls, c, side)
    p, q = data.length, data.preperiod_exponent
    base = data.base_words[c]
    if side == LEFT:
        return concat_family(sub.power(base, p * (q - 1 - j)) for j in range(q))
    return concat_family(sub.power(base, p * j) for j in range(q))


def lp_word(sub, cls, c):
    return period_word(sub, cls, c, LEFT)


def rp_word(sub, cls, c):
    return period_word(sub, cls, c, RIGHT)


def lq_word(sub, cls, c):
    return preperiod_word(sub, cls, c, LEFT)


def rq_word(sub, cls, c):
    return preperiod_word(sub, cls, c, RIGHT)


class BelowThreshold(ValueError):
    def __init__(self, k, threshold):
        super().__init__(f"power {k} is below the decomposition threshold {threshold}")
        self.threshold = threshold


class LeftDecomposition(NamedTuple):
    prefix: Word      # LE_k(c)
    base: Letter      # cycle letter c_i
    exponent: int     # l
    tail: Word        # LQ(c_i)

    def assemble(self, period: Word) -> Word:
        return self.prefix + period * self.exponent + self.tail


class RightDecomposition(NamedTuple):
    head: Word        # RQ(c_i)
    exponent: int
    base: Letter
    suffix: Word      # RE_k(c)

    def assemble(self, period: Word) -> Word:
        return self.head + period * self.exponent + self.suffix


def decomposition_threshold(sub: Substitution, cls: LetterClassification, c: Letter, side: str) -> int:
    _check_side(side)
    graph = _graph(sub, cls, side)
    r = graph.entry_steps[c]
    data = _cycle_data(sub, cls, side, graph.cycle_of(graph.walk(c, r)))
    return r + data.length * data.preperiod_exponent


def _split_power(sub, cls, c, k, side):
    graph = _graph(sub, cls, side)
    r = graph.entry_steps[c]
    data = _cycle_data(sub, cls, side, graph.cycle_of(graph.walk(c, r)))
    p, q, pc = data.length, data.preperiod_exponent, data.period_exponent
    threshold = r + p * q
    if k < threshold:
        raise BelowThreshold(k, threshold)
    t = k - r
    i = t % p
    s = (t - i) // p - q
    l, l2 = divmod(s, pc)
    return graph, data, r, i, l, l2


def decompose_lb(sub: Substitution, cls: LetterClassification, c: Letter, k: int) -> LeftDecomposition:
    """Split ``LB(sigma^k(c)) = LE_k(c) LP(c_i)^l LQ(c_i)``."""
    graph, data, r, i, l, l2 = _split_power(sub, cls, c, k, LEFT)
    p = data.length
    parts = []
    letter = c
    for j in range(r + i + p * l2):
        parts.append(sub.power(lb(sub.rules[letter], cls.growing), k - 1 - j))
        letter = graph.edge[letter]
    base = graph.walk(c, r + i)
    return LeftDecomposition(concat_family(parts), base, l, lq_word(sub, cls, base))


def decompose_rb(sub: Substitution, cls: LetterClassification, c: Letter, k: int) -> RightDecomposition:
    """Split ``RB(sigma^k(c)) = RQ(c_i) RP(c_i)^l RE_k(c)``."""
    graph, data, r, i, l, l2 = _split_power(sub, cls, c, k, RIGHT)
    p, q, pc = data.length, data.preperiod_exponent, data.period_exponent
    start = p * (q + l * pc)
    # RC(sigma^{k-1-j}(c)) for j = k-1 down to start
    letters = [c]
    for _ in range(k - 1 - start):
        letters.append(graph.edge[letters[-1]])
    parts = [sub.power(rb(sub.rules[letters[k - 1 - j]], cls.growing), j) for j in range(start, k)]
    base = graph.walk(c, r + i)
    return RightDecomposition(rq_word(sub, cls, base), l, base, concat_family(parts))


def left_boundary(sub: Substitution, cls: LetterClassification, c: Letter, k: int) -> Tuple[Word, Letter]:
    """``(LB(sigma^k(c)), LC(sigma^k(c)))`` by scanning the image from the left."""
    prefix = []
    for a in sub.iter_power(c, k, bounded=cls.bounded):
        if a in cls.growing:
            return tuple(prefix), a
        prefix.append(a)
    raise ValueError(f"sigma^{k}({c}) has no growing letter")


def right_boundary(sub: Substitution, cls: LetterClassification, c: Letter, k: int) -> Tuple[Word, Letter]:
    """``(RB(sigma^k(c)), RC(sigma^k(c)))`` by scanning the image from the right."""
    suffix = []
    for a in sub.iter_power(c, k, reverse=True, bounded=cls.bounded):
        if a in cls.growing:
            return tuple(reversed(suffix)), a
        suffix.append(a)
    raise ValueError(f"sigma^{k}({c}) has no growing letter")


def lb_by_levels(sub: Substitution, cls: LetterClassification, c: Letter, k: int) -> Word:
    """``LB(sigma^k(c))`` assembled level by level from first images only."""
    graph = _graph(sub, cls, LEFT)
    parts = []
    letter = c
    for j in range(k):
        parts.append(sub.power(lb(sub.rules[letter], cls.growing), k - 1 - j))
        letter = graph.edge[letter]
    return concat_family(parts)


def rb_by_levels(sub: Substitution, cls: LetterClassification, c: Letter, k: int) -> Word:
    graph = _graph(sub, cls, RIGHT)
    letters = [c]
    for _ in range(k - 1):
        letters.append(graph.edge[letters[-1]])
    return concat_family(sub.power(rb(sub.rules[letters[k - 1 - j]], cls.growing), j) for j in range(k))


@dataclass(frozen=True)
class OneBlock:
    """Two growing letters with only bounded letters between them."""

    left: Letter
    middle: Word
    right: Letter


def origins(sub: Substitution, cls: LetterClassification) -> List[OneBlock]:
    """1-blocks of the first images ``sigma(c)``, ``c`` growing, in scan order."""
    found = []
    seen = set()
    for c in sub.sorted(cls.growing):
        image = sub.rules[c]
        positions = [i for i, a in enumerate(image) if a in cls.growing]
        for i, j in zip(positions, positions[1:]):
            block = OneBlock(image[i], image[i + 1:j], image[j])
            if block not in seen:
                seen.add(block)
                found.append(block)
    return found


def descendant(sub: Substitution, cls: LetterClassification, block: OneBlock) -> OneBlock:
    growing = cls.growing
    left_image, right_image = sub.rules[block.left], sub.rules[block.right]
    return OneBlock(
        rc(left_image, growing),
        rb(left_image, growing) + sub.apply(block.middle) + lb(right_image, growing),
        lc(right_image, growing),
    )


def evolution_closed_form(sub: Substitution, cls: LetterClassification, origin: OneBlock, l: int) -> OneBlock:
    if l < 0:
        raise ValueError("negative step")
    if l == 0:
        return origin
    right_bounded, a = right_boundary(sub, cls, origin.left, l)
    left_bounded, b = left_boundary(sub, cls, origin.right, l)
    return OneBlock(a, right_bounded + sub.power(origin.middle, l) + left_bounded, b)


def maximal_bounded_factors(u: Word, bounded) -> List[Word]:
    """Maximal runs of bounded letters in ``u`` (empty runs between adjacent growing letters included)."""
    runs = [[]]
    for a in u:
        if a in bounded:
            runs[-1].append(a)
        else:
            runs.append([])
    return [tuple(run) for run in runs]


def _power_intervals(u: Word, periods: Iterable[Word]):
    n = len(u)
    intervals = []
    for w in set(periods):
        if not w:
            continue
        m = len(w)
        for s in range(n - m + 1):
            e = s
            while e + m <= n and u[e:e + m] == w:
                e += m
                intervals.append((s, e))
    return intervals


def period_cover_residual(u: Word, right_periods: Iterable[Word], left_periods: Iterable[Word]) -> int:
    """Fewest letters of ``u`` left outside a split ``u1 RP^p u2 LP^q u3``.

    ``right_periods`` / ``left_periods`` are the candidate period words; the
    best pair of non-overlapping power occurrences (right one first) is chosen
    exhaustively.
    """
    n = len(u)
    rights = _power_intervals(u, right_periods)
    lefts = _power_intervals(u, left_periods)
    best_left_from = [0] * (n + 2)
    for s, e in lefts:
        best_left_from[s] = max(best_left_from[s], e - s)
    for x in range(n - 1, -1, -1):
        best_left_from[x] = max(best_left_from[x], best_left_from[x + 1])
    covered = best_left_from[0]
    for s, e in rights:
        covered = max(covered, (e - s) + best_left_from[e])
    return n - covered
