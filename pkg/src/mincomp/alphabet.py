"""Action of a substitution on sets of growing letters.

A non-empty set D of growing letters steps to the set of growing letters
occurring in the images of its members.  Periodic sets with no periodic proper
subset are the minimal alphabets; they all show up on orbits of singletons,
so the full power-set graph is never built.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Collection, Dict, FrozenSet, List, Mapping, Optional, Tuple

from .errors import PreconditionError
from .functional import orbit_split
from .substitution import LetterClassification, Substitution
from .words import Letter

LetterSet = FrozenSet[Letter]


@dataclass(frozen=True)
class AlphabetOrbit:
    start: LetterSet
    preperiod: Tuple[LetterSet, ...]
    cycle: Tuple[LetterSet, ...]

    def at(self, n: int) -> LetterSet:
        """The set reached after ``n`` steps."""
        t = len(self.preperiod)
        if n < t:
            return self.preperiod[n]
        return self.cycle[(n - t) % len(self.cycle)]


@dataclass(frozen=True)
class MinimalAlphabet:
    letters: LetterSet
    period: int
    # a -> l_a with {a} reaching ``letters`` in period * l_a steps
    witness: Mapping[Letter, int]
    # growing letters whose singleton orbit passes through ``letters``
    sources: Tuple[Letter, ...]


def generators(sub: Substitution, cls: LetterClassification) -> Dict[Letter, LetterSet]:
    return {c: frozenset(b for b in sub.rules[c] if b in cls.growing) for c in sub.sorted(cls.growing)}


def _check_growing_set(cls, letters) -> LetterSet:
    letters = frozenset(letters)
    if not letters:
        raise ValueError("alphabet must be non-empty")
    if not letters <= cls.growing:
        extra = sorted(letters - cls.growing)
        raise ValueError(f"letters {extra} are not growing")
    return letters


def successor(sub: Substitution, cls: LetterClassification, letters: Collection[Letter]) -> LetterSet:
    letters = _check_growing_set(cls, letters)
    gens = generators(sub, cls)
    return frozenset().union(*(gens[a] for a in letters))


def orbit(sub: Substitution, cls: LetterClassification, letters: Collection[Letter]) -> AlphabetOrbit:
    start = _check_growing_set(cls, letters)
    gens = generators(sub, cls)

    def step(d):
        return frozenset().union(*(gens[a] for a in d))

    pre, cyc = orbit_split(start, step)
    return AlphabetOrbit(start, tuple(pre), tuple(cyc))


def reach_multipliers(sub: Substitution, cls: LetterClassification, letters: LetterSet,
                      period: int) -> Dict[Letter, Optional[int]]:
    """For each ``a`` in ``letters``, the least ``l >= 1`` with ``{a}`` reaching ``letters`` in ``period*l`` steps.

    The search covers the preperiod plus one lcm of the orbit period and
    ``period``, past which the reachable sets repeat.
    """
    found = {}
    for a in sub.sorted(letters):
        orb = orbit(sub, cls, (a,))
        horizon = len(orb.preperiod) + lcm(len(orb.cycle), period)
        found[a] = next(
            (l for l in range(1, horizon // period + 2) if orb.at(period * l) == letters),
            None,
        )
    return found


def minimal_alphabets(sub: Substitution, cls: LetterClassification) -> List[MinimalAlphabet]:
    if not cls.growing:
        raise PreconditionError("no growing letters; subshift undefined")
    candidates: Dict[LetterSet, List[Letter]] = {}
    periods: Dict[LetterSet, int] = {}
    for c in sub.sorted(cls.growing):
        orb = orbit(sub, cls, (c,))
        for d in orb.cycle:
            candidates.setdefault(d, []).append(c)
            periods[d] = len(orb.cycle)
    result = []
    for d, sources in candidates.items():
        witness = reach_multipliers(sub, cls, d, periods[d])
        if all(l is not None for l in witness.values()):
            result.append(MinimalAlphabet(d, periods[d], witness, tuple(sources)))
    result.sort(key=lambda m: sub.set_key(m.letters))
    return result


def restriction_defined(sub: Substitution, k: int, letters: Collection[Letter]) -> bool:
    letters = frozenset(letters)
    return all(sub.letters_of_power(a, k) <= letters for a in letters)


def is_l_primitive(sub: Substitution, cls: LetterClassification, letters: Collection[Letter], k: int) -> bool:
    """Whether ``sigma^k`` restricted to ``letters`` is l-primitive.

    Equivalent to every growing letter of ``letters`` reaching the whole
    growing part under some multiple of ``k`` steps.
    """
    letters = frozenset(letters)
    if k < 1:
        raise ValueError("power must be at least 1")
    if not restriction_defined(sub, k, letters):
        raise ValueError(f"restriction of sigma^{k} to {sorted(letters)} is undefined")
    growing_part = letters & cls.growing
    if not growing_part:
        raise PreconditionError("restriction has no growing letters")
    return all(l is not None for l in reach_multipliers(sub, cls, growing_part, k).values())
