"""Tame and wild minimal components, their count, bounds and induced dynamics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .alphabet import MinimalAlphabet, minimal_alphabets, successor
from .boundary import LEFT, RIGHT, build_boundary_graph, period_word
from .errors import InternalInvariantError, PreconditionError
from .substitution import LetterClassification, Substitution, classify
from .words import Letter, Word, canonical_rotation, primitive_root


@dataclass(frozen=True)
class TameComponent:
    """The subshift of ``sigma^power`` restricted to ``reduced_alphabet``."""

    growing_part: MinimalAlphabet
    reduced_alphabet: FrozenSet[Letter]
    power: int


@dataclass(frozen=True)
class WildComponent:
    """The periodic orbit of the bi-infinite repetition of ``period_word``."""

    period_word: Word
    provenance: Tuple[Tuple[Letter, str], ...]


@dataclass(frozen=True)
class ComponentCensus:
    classification: LetterClassification
    minimal: Tuple[MinimalAlphabet, ...]
    tame: Tuple[TameComponent, ...]
    wild: Tuple[WildComponent, ...]

    @property
    def tmc(self) -> int:
        return len(self.tame)

    @property
    def wmc(self) -> int:
        return len(self.wild)

    @property
    def mc(self) -> int:
        return self.tmc + self.wmc


@dataclass(frozen=True)
class DynamicsGraph:
    kind: str
    nodes: tuple
    successor: Mapping[int, int]

    def is_permutation(self) -> bool:
        n = len(self.nodes)
        return set(self.successor) == set(range(n)) and sorted(self.successor.values()) == list(range(n))

    def is_identity(self) -> bool:
        return all(self.successor[i] == i for i in range(len(self.nodes)))

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self.nodes)):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.successor[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.successor[j]
            out.append(tuple(cyc))
        return out


def reduced_alphabet(sub: Substitution, letters, k: int) -> FrozenSet[Letter]:
    """Smallest superset of ``letters`` closed under the letters of ``sigma^k``."""
    closed = set(letters)
    frontier = list(closed)
    while frontier:
        a = frontier.pop()
        for b in sub.letters_of_power(a, k):
            if b not in closed:
                closed.add(b)
                frontier.append(b)
    return frozenset(closed)


def _isolated(cls: LetterClassification):
    if not cls.has_isolation:
        raise ValueError("isolation sets not computed; call classify_isolation first")
    return cls.left_isolated | cls.right_isolated


def tame_components(sub: Substitution, cls: LetterClassification,
                    minimal: Optional[Sequence[MinimalAlphabet]] = None) -> List[TameComponent]:
    if not cls.growing:
        raise PreconditionError("no growing letters; subshift undefined")
    isolated = _isolated(cls)
    if minimal is None:
        minimal = minimal_alphabets(sub, cls)
    return [
        TameComponent(m, reduced_alphabet(sub, m.letters, m.period), m.period)
        for m in minimal
        if not (m.letters & isolated)
    ]


def canonical_period(sub: Substitution, word: Word) -> Word:
    return canonical_rotation(primitive_root(word), key=sub.rank.__getitem__)


def wild_components(sub: Substitution, cls: LetterClassification) -> List[WildComponent]:
    _isolated(cls)
    merged: Dict[Word, List[Tuple[Letter, str]]] = {}
    for side, letters in ((LEFT, cls.left_isolated), (RIGHT, cls.right_isolated)):
        for c in sub.sorted(letters):
            word = period_word(sub, cls, c, side)
            if not word:
                raise InternalInvariantError(f"isolated letter {c!r} has an empty {side} period")
            merged.setdefault(canonical_period(sub, word), []).append((c, side))
    return [
        WildComponent(word, tuple(prov))
        for word, prov in sorted(merged.items(), key=lambda item: (len(item[0]), sub.word_key(item[0])))
    ]


def census(sub: Substitution) -> ComponentCensus:
    cls = classify(sub)
    if not cls.growing:
        raise PreconditionError("no growing letters; subshift undefined")
    minimal = minimal_alphabets(sub, cls)
    result = ComponentCensus(
        classification=cls,
        minimal=tuple(minimal),
        tame=tuple(tame_components(sub, cls, minimal)),
        wild=tuple(wild_components(sub, cls)),
    )
    if result.mc < 1:
        raise InternalInvariantError("a substitution subshift has at least one minimal component")
    return result


@dataclass(frozen=True)
class BoundCheck:
    case: str
    limit: int
    mc: int
    tame_limit: int
    wild_limit: int
    ok: bool


def bound_check(cls: LetterClassification, result: ComponentCensus) -> BoundCheck:
    n_bounded = len(cls.bounded)
    n_growing = len(cls.growing)
    if n_bounded == 0:
        case, limit = "|B|=0", n_growing
    elif n_bounded == 1:
        case, limit = "|B|=1", n_growing
    else:
        case, limit = "|B|>=2", 2 * n_growing
    tame_limit = len(cls.non_isolated)
    wild_limit = len(cls.left_isolated) + len(cls.right_isolated)
    ok = result.mc <= limit and result.tmc <= tame_limit and result.wmc <= wild_limit
    return BoundCheck(case, limit, result.mc, tame_limit, wild_limit, ok)


def check_bounds(cls: LetterClassification, result: ComponentCensus) -> bool:
    return bound_check(cls, result).ok


def essentially_minimal(result: ComponentCensus) -> bool:
    return result.mc == 1


def tame_dynamics(sub: Substitution, cls: LetterClassification,
                  tame: Sequence[TameComponent]) -> DynamicsGraph:
    index = {t.growing_part.letters: i for i, t in enumerate(tame)}
    succ = {}
    for i, t in enumerate(tame):
        image = successor(sub, cls, t.growing_part.letters)
        if image not in index:
            raise InternalInvariantError(f"successor of {sorted(t.growing_part.letters)} is not a tame component")
        succ[i] = index[image]
    graph = DynamicsGraph("tame", tuple(tame), succ)
    if not graph.is_permutation():
        raise InternalInvariantError("induced map on tame components is not a permutation")
    return graph


def wild_dynamics(sub: Substitution, cls: LetterClassification,
                  wild: Sequence[WildComponent]) -> DynamicsGraph:
    """Follow each provenance letter one step along G_L/G_R.

    The image is cross-checked against applying ``sigma`` to the period word
    itself.  The map is usually the identity but not always: for
    ``0->32, 1->3, 2->102, 3->1`` the left periods of the 2-cycle (0 2) are
    11 and 33, and ``sigma`` swaps the two components.
    """
    index = {w.period_word: i for i, w in enumerate(wild)}
    graphs = {side: build_boundary_graph(sub, cls, side) for side in (LEFT, RIGHT)}
    succ = {}
    for i, w in enumerate(wild):
        targets = {index.get(canonical_period(sub, sub.apply(w.period_word)))}
        for c, side in w.provenance:
            nxt = graphs[side].edge[c]
            targets.add(index.get(canonical_period(sub, period_word(sub, cls, nxt, side))))
        if None in targets:
            raise InternalInvariantError(f"image of wild component {i} is not a wild component")
        if len(targets) != 1:
            raise InternalInvariantError(f"wild component {i} maps to {sorted(targets)}")
        succ[i] = targets.pop()
    graph = DynamicsGraph("wild", tuple(wild), succ)
    if not graph.is_permutation():
        raise InternalInvariantError("induced map on wild components is not a permutation")
    return graph
