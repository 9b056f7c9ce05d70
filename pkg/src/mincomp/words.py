"""Finite words over an abstract alphabet.

Words are plain tuples of letters (hashable strings).  Everything here is
pure and works on any tuple, so the rest of the package never needs a
dedicated word class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Collection, Hashable, Iterable, Optional, Tuple

Letter = str
Word = Tuple[Letter, ...]

EMPTY: Word = ()


def as_word(text) -> Word:
    """Coerce ``text`` to a word.

    Strings containing whitespace are split into tokens, other strings are
    read one character per letter.  Tuples and lists pass through.
    """
    if isinstance(text, tuple):
        return text
    if isinstance(text, str):
        if any(ch.isspace() for ch in text):
            return tuple(text.split())
        return tuple(text)
    return tuple(text)


def render(u: Word) -> str:
    if all(len(a) == 1 for a in u):
        return "".join(u)
    return " ".join(u)


def concat_family(parts: Iterable[Word]) -> Word:
    """Left-to-right concatenation; the empty family gives the empty word."""
    out: list = []
    for part in parts:
        out.extend(part)
    return tuple(out)


def _failure(u: Word) -> list:
    # border lengths of every prefix (KMP prefix function)
    fail = [0] * len(u)
    k = 0
    for i in range(1, len(u)):
        while k and u[i] != u[k]:
            k = fail[k - 1]
        if u[i] == u[k]:
            k += 1
        fail[i] = k
    return fail


def smallest_period(u: Word) -> int:
    if not u:
        raise ValueError("empty word has no period")
    return len(u) - _failure(u)[-1]


def primitive_root(u: Word) -> Word:
    """Shortest ``v`` with ``u == v**k``."""
    if not u:
        raise ValueError("empty word has no primitive root")
    p = smallest_period(u)
    if len(u) % p == 0:
        return u[:p]
    return u


def is_primitive(u: Word) -> bool:
    return bool(u) and primitive_root(u) == u


def cyclic_equal(u: Word, v: Word) -> bool:
    """True iff ``u = ww'`` and ``v = w'w`` for some words ``w, w'``."""
    if len(u) != len(v):
        return False
    if not u:
        return True
    doubled = u + u
    n = len(v)
    return any(doubled[i:i + n] == v for i in range(len(u)))


def canonical_rotation(u: Word, key: Optional[Callable[[Letter], Hashable]] = None) -> Word:
    """Least rotation of ``u`` under the letter order given by ``key``."""
    if not u:
        raise ValueError("empty word has no canonical rotation")
    if key is None:
        return min(u[i:] + u[:i] for i in range(len(u)))
    ranked = tuple(key(a) for a in u)
    best = min(range(len(u)), key=lambda i: ranked[i:] + ranked[:i])
    return u[best:] + u[:best]


def first_index(u: Word, letters: Collection[Letter]) -> Optional[int]:
    for i, a in enumerate(u):
        if a in letters:
            return i
    return None


def last_index(u: Word, letters: Collection[Letter]) -> Optional[int]:
    for i in range(len(u) - 1, -1, -1):
        if u[i] in letters:
            return i
    return None


@dataclass(frozen=True)
class BoundaryDecomposition:
    """Split of a word around its first and last growing letters.

    ``lb`` is the bounded prefix before the first growing letter ``lc``,
    ``rb`` the bounded suffix after the last growing letter ``rc``.  When the
    word holds a single growing occurrence, ``left_pos == right_pos``.
    """

    lb: Word
    lc: Letter
    rc: Letter
    rb: Word
    left_pos: int
    right_pos: int
    middle: Word

    def reassemble(self) -> Word:
        if self.left_pos == self.right_pos:
            return self.lb + (self.lc,) + self.rb
        return self.lb + (self.lc,) + self.middle + (self.rc,) + self.rb


def boundary_decompose(u: Word, growing: Collection[Letter]) -> BoundaryDecomposition:
    i = first_index(u, growing)
    if i is None:
        raise ValueError(f"fully bounded word {render(u)!r} has no growing letter")
    j = last_index(u, growing)
    middle = u[i + 1:j] if j > i else EMPTY
    return BoundaryDecomposition(u[:i], u[i], u[j], u[j + 1:], i, j, middle)


def lb(u: Word, growing: Collection[Letter]) -> Word:
    i = first_index(u, growing)
    if i is None:
        raise ValueError("fully bounded word")
    return u[:i]


def rb(u: Word, growing: Collection[Letter]) -> Word:
    j = last_index(u, growing)
    if j is None:
        raise ValueError("fully bounded word")
    return u[j + 1:]


def lc(u: Word, growing: Collection[Letter]) -> Letter:
    i = first_index(u, growing)
    if i is None:
        raise ValueError("fully bounded word")
    return u[i]


def rc(u: Word, growing: Collection[Letter]) -> Letter:
    j = last_index(u, growing)
    if j is None:
        raise ValueError("fully bounded word")
    return u[j]
