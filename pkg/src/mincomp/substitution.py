"""Substitutions, their powers and restrictions, and letter classification."""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, replace
from pathlib import Path
from types import MappingProxyType
from typing import Collection, Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .errors import SubstitutionError
from .words import EMPTY, Letter, Word, render


class Substitution:
    """A non-erasing morphism ``letter -> non-empty word``.

    The alphabet is ordered by insertion order of ``rules``; that order is the
    letter order used by every canonical form in the package.  Instances are
    immutable; power images are memoized behind a lock.
    """

    def __init__(self, rules: Mapping[Letter, Iterable[Letter]]):
        alphabet = tuple(rules)
        images: Dict[Letter, Word] = {}
        for a in alphabet:
            image = tuple(rules[a])
            if not image:
                raise SubstitutionError(f"erasing morphism unsupported: {a!r} has an empty image")
            images[a] = image
        known = set(alphabet)
        for a, image in images.items():
            for b in image:
                if b not in known:
                    raise SubstitutionError(f"letter {b!r} in the image of {a!r} has no rule")
        self.alphabet: Tuple[Letter, ...] = alphabet
        self.rules: Mapping[Letter, Word] = MappingProxyType(images)
        self.rank: Mapping[Letter, int] = MappingProxyType({a: i for i, a in enumerate(alphabet)})
        self._memo: Dict[Tuple[Letter, int], Word] = {}
        self._alph_memo: Dict[Tuple[Letter, int], FrozenSet[Letter]] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        body = "; ".join(f"{a} -> {render(self.rules[a])}" for a in self.alphabet)
        return f"Substitution({body!r})"

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return self.alphabet == other.alphabet and dict(self.rules) == dict(other.rules)

    def __hash__(self):
        return hash((self.alphabet, tuple(self.rules[a] for a in self.alphabet)))

    def __call__(self, u: Word) -> Word:
        return self.apply(u)

    def sorted(self, letters: Iterable[Letter]) -> Tuple[Letter, ...]:
        return tuple(sorted(letters, key=self.rank.__getitem__))

    def set_key(self, letters: Iterable[Letter]) -> Tuple[int, ...]:
        """Sort key for letter sets: ranks in increasing order."""
        return tuple(sorted(self.rank[a] for a in letters))

    def word_key(self, u: Word) -> Tuple[int, ...]:
        return tuple(self.rank[a] for a in u)

    def _check(self, a: Letter):
        if a not in self.rank:
            raise SubstitutionError(f"letter {a!r} is not in the alphabet")

    def apply(self, u: Word) -> Word:
        out = []
        for a in u:
            self._check(a)
            out.extend(self.rules[a])
        return tuple(out)

    def power_image(self, a: Letter, n: int) -> Word:
        """``sigma^n(a)``, memoized."""
        self._check(a)
        if n < 0:
            raise ValueError("negative power")
        if n == 0:
            return (a,)
        hit = self._memo.get((a, n))
        if hit is not None:
            return hit
        # letters needed at each level, then fill bottom-up without recursion
        needed = [frozenset()] * (n + 1)
        needed[n] = frozenset((a,))
        for m in range(n, 1, -1):
            needed[m - 1] = frozenset(b for x in needed[m] for b in self.rules[x])
        for m in range(1, n + 1):
            for x in needed[m]:
                if (x, m) in self._memo:
                    continue
                out = []
                for b in self.rules[x]:
                    out.extend(self._memo[(b, m - 1)] if m > 1 else (b,))
                with self._lock:
                    self._memo[(x, m)] = tuple(out)
        return self._memo[(a, n)]

    def power(self, u: Word, n: int) -> Word:
        if n == 0:
            return tuple(u)
        out = []
        for a in u:
            out.extend(self.power_image(a, n))
        return tuple(out)

    def letters_of_power(self, a: Letter, n: int) -> FrozenSet[Letter]:
        """Set of letters occurring in ``sigma^n(a)``, without building the word."""
        self._check(a)
        hit = self._alph_memo.get((a, n))
        if hit is not None:
            return hit
        current = frozenset((a,))
        for m in range(1, n + 1):
            key = (a, m)
            if key in self._alph_memo:
                current = self._alph_memo[key]
                continue
            current = frozenset(b for c in current for b in self.rules[c])
            with self._lock:
                self._alph_memo[key] = current
        return current

    def iter_power(self, a: Letter, n: int, reverse: bool = False,
                   bounded: Collection[Letter] = ()) -> Iterator[Letter]:
        """Stream the letters of ``sigma^n(a)`` left to right (or right to left).

        Letters listed in ``bounded`` are expanded through the memo, so only the
        growing spine is walked lazily.
        """
        stack = [(a, n)]
        while stack:
            b, m = stack.pop()
            if m == 0:
                yield b
            elif b in bounded:
                image = self.power_image(b, m)
                yield from (reversed(image) if reverse else image)
            else:
                image = self.rules[b]
                children = image if reverse else reversed(image)
                stack.extend((c, m - 1) for c in children)


def _tokenize_image(rhs: str, names: Collection[str]) -> Word:
    rhs = rhs.strip()
    if not rhs:
        return EMPTY
    if any(ch.isspace() for ch in rhs):
        return tuple(rhs.split())
    if rhs in names:
        return (rhs,)
    return tuple(rhs)


def _parse_text(text: str) -> Substitution:
    pairs = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for chunk in line.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            for arrow in ("->", "↦"):
                if arrow in chunk:
                    lhs, rhs = chunk.split(arrow, 1)
                    break
            else:
                raise SubstitutionError(f"rule without '->': {chunk!r}")
            lhs = lhs.strip()
            if not lhs or any(ch.isspace() for ch in lhs):
                raise SubstitutionError(f"left-hand side must be a single letter: {lhs!r}")
            pairs.append((lhs, rhs))
    return _from_pairs([(lhs, rhs) for lhs, rhs in pairs], text_images=True)


def _from_pairs(pairs, text_images: bool) -> Substitution:
    names = set()
    for lhs, _ in pairs:
        if lhs in names:
            raise SubstitutionError(f"duplicate rule for {lhs!r}")
        names.add(lhs)
    rules = {}
    for lhs, rhs in pairs:
        if text_images or isinstance(rhs, str):
            rules[lhs] = _tokenize_image(rhs, names)
        else:
            rules[lhs] = tuple(str(b) for b in rhs)
    if not rules:
        raise SubstitutionError("no rules given")
    return Substitution(rules)


def parse(source: Union[str, Mapping]) -> Substitution:
    """Build a substitution from rule text or a ``{"rules": {...}}`` mapping.

    Text holds one ``<letter> -> <image>`` rule per line or ``;``-separated
    chunk.  An image containing whitespace is a list of letter tokens; otherwise
    it is read as a single multi-character letter if it names one, else one
    character per letter.
    """
    if isinstance(source, Mapping):
        rules = source.get("rules", source)
        if not isinstance(rules, Mapping):
            raise SubstitutionError("'rules' must be a mapping")
        return _from_pairs([(str(k), v) for k, v in rules.items()], text_images=False)
    text = source.strip()
    if text.startswith("{"):
        try:
            return parse(json.loads(text))
        except json.JSONDecodeError as exc:
            raise SubstitutionError(f"invalid JSON: {exc}") from exc
    return _parse_text(source)


def load(path: Union[str, Path]) -> Substitution:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        try:
            return parse(json.loads(text))
        except json.JSONDecodeError as exc:
            raise SubstitutionError(f"{path}: invalid JSON: {exc}") from exc
    return parse(text)


@dataclass(frozen=True)
class LetterClassification:
    periodic: FrozenSet[Letter]
    preperiodic: FrozenSet[Letter]
    bounded: FrozenSet[Letter]
    growing: FrozenSet[Letter]
    left_isolated: Optional[FrozenSet[Letter]] = None
    right_isolated: Optional[FrozenSet[Letter]] = None
    non_isolated: Optional[FrozenSet[Letter]] = None

    @property
    def has_isolation(self) -> bool:
        return self.left_isolated is not None


def periodic_letters(sub: Substitution) -> FrozenSet[Letter]:
    """Letters ``a`` with ``sigma^n(a) = a`` for some ``n >= 1``.

    Iterates single-letter images until the image grows or a letter repeats.
    """
    periodic = set()
    for a in sub.alphabet:
        seen = [a]
        current = a
        while True:
            image = sub.rules[current]
            if len(image) >= 2:
                break
            current = image[0]
            if current in seen:
                if current == a:
                    periodic.add(a)
                break
            seen.append(current)
    return frozenset(periodic)


def classify_letters(sub: Substitution) -> LetterClassification:
    """Split the alphabet into periodic, pre-periodic and growing letters.

    A letter is bounded iff every letter of ``sigma^|A|(a)`` is periodic.
    Only the letter set of that image is needed, so the word itself is never
    built.
    """
    periodic = periodic_letters(sub)
    n = len(sub.alphabet)
    bounded = frozenset(a for a in sub.alphabet if sub.letters_of_power(a, n) <= periodic)
    return LetterClassification(
        periodic=periodic,
        preperiodic=bounded - periodic,
        bounded=bounded,
        growing=frozenset(sub.alphabet) - bounded,
    )


def classify_isolation(sub: Substitution, cls: LetterClassification) -> LetterClassification:
    """Fill in the left/right isolated growing letters.

    A growing letter is left-isolated iff it lies on a cycle of the leftmost
    growing letter graph and its base word ``L(c)`` is non-empty (symmetric on
    the right).
    """
    from .boundary import build_boundary_graph, cycle_base_words

    isolated = {}
    for side in ("left", "right"):
        found = set()
        if cls.growing:
            graph = build_boundary_graph(sub, cls, side)
            for cycle in graph.cycles:
                data = cycle_base_words(sub, cls, graph, cycle)
                found.update(c for c in cycle if data.base_words[c])
        isolated[side] = frozenset(found)
    left, right = isolated["left"], isolated["right"]
    return replace(cls, left_isolated=left, right_isolated=right,
                   non_isolated=cls.growing - left - right)


def classify(sub: Substitution) -> LetterClassification:
    return classify_isolation(sub, classify_letters(sub))


def is_tame(cls: LetterClassification) -> bool:
    if not cls.has_isolation:
        raise ValueError("isolation sets not computed; call classify_isolation first")
    return not cls.left_isolated and not cls.right_isolated


def restrict(sub: Substitution, k: int, letters: Collection[Letter]) -> Substitution:
    """The substitution ``sigma^k`` restricted to ``letters``."""
    if k < 1:
        raise ValueError("power must be at least 1")
    letters = set(letters)
    if not letters:
        raise ValueError("cannot restrict to an empty alphabet")
    for a in sub.sorted(letters):
        escaping = sub.letters_of_power(a, k) - letters
        if escaping:
            b = sub.sorted(escaping)[0]
            raise ValueError(f"restriction undefined: letter {b!r} of sigma^{k}({a}) is outside the alphabet")
    return Substitution({a: sub.power_image(a, k) for a in sub.sorted(letters)})
