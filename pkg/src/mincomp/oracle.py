"""Brute-force checks computed straight from the rule table.

Nothing here calls the classification, alphabet, boundary or component code;
every quantity is recomputed from ``sub.rules``.  Images of growing letters
blow up exponentially, so factor sets are built level by level from short
prefixes, suffixes and factor sets of the previous level instead of the full
words.  That is exact for factors up to ``max_len``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .errors import BudgetExceeded
from .substitution import Substitution
from .words import Letter, Word, render

DEFAULT_BUDGET = 10_000_000
_SEP = "\x00"


def _encoding(sub: Substitution) -> Dict[Letter, str]:
    return {a: chr(0x100 + i) for i, a in enumerate(sub.alphabet)}


class _Piece:
    """Factor summary of one image: full text if short, else ends plus factor set."""

    __slots__ = ("length", "full", "prefix", "suffix", "factors")

    def __init__(self, length, full, prefix, suffix, factors):
        self.length = length
        self.full = full
        self.prefix = prefix
        self.suffix = suffix
        self.factors = factors


def _substrings(text: str, m: int) -> Set[str]:
    out = set()
    for chunk in text.split(_SEP):
        n = len(chunk)
        for i in range(n):
            for j in range(i + 1, min(n, i + m) + 1):
                out.add(chunk[i:j])
    return out


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, n):
        self.used += n
        return self.used <= self.limit


def _leaf(ch: str, m: int) -> _Piece:
    return _Piece(1, ch, ch, ch, {ch})


def _combine(children: Sequence[_Piece], m: int, budget: _Budget) -> _Piece:
    length = sum(c.length for c in children)
    if length <= 2 * m:
        full = "".join(c.full for c in children)
        budget.spend(len(full))
        return _Piece(length, full, full[:m], full[-m:], _substrings(full, m))
    parts = []
    factors = set()
    for c in children:
        if c.full is not None:
            parts.append(c.full)
        else:
            parts.append(c.prefix + _SEP + c.suffix)
            factors |= c.factors
    stitched = "".join(parts)
    budget.spend(len(stitched))
    factors |= _substrings(stitched, m)
    head = stitched.split(_SEP, 1)[0][:m]
    tail = stitched.rsplit(_SEP, 1)[-1][-m:]
    return _Piece(length, None, head, tail, factors)


def _levels(sub: Substitution, depth: int, m: int, budget: _Budget):
    """Yield ``(n, {letter: piece of sigma^n(letter)})`` for ``n = 0..depth``."""
    enc = _encoding(sub)
    current = {a: _leaf(enc[a], m) for a in sub.alphabet}
    yield 0, current
    for n in range(1, depth + 1):
        current = {a: _combine([current[b] for b in sub.rules[a]], m, budget) for a in sub.alphabet}
        yield n, current


@dataclass(frozen=True)
class LanguageSample:
    """Factors of length at most ``max_len`` of all ``sigma^n(a)``, ``n <= depth``."""

    encoded: FrozenSet[str]
    depth: int
    max_len: int
    encoding: Mapping[Letter, str]
    partial: bool = False

    def __contains__(self, word) -> bool:
        word = tuple(word)
        if len(word) > self.max_len:
            raise ValueError(f"word of length {len(word)} exceeds the sample cap {self.max_len}")
        try:
            return "".join(self.encoding[a] for a in word) in self.encoded
        except KeyError:
            return False

    @property
    def factors(self) -> FrozenSet[Word]:
        decode = {v: k for k, v in self.encoding.items()}
        return frozenset(tuple(decode[ch] for ch in f) for f in self.encoded)


def sample_language(sub: Substitution, depth: int, max_len: int,
                    budget: int = DEFAULT_BUDGET) -> LanguageSample:
    if depth < 0 or max_len < 1:
        raise ValueError("depth must be >= 0 and max_len >= 1")
    spent = _Budget(budget)
    enc = _encoding(sub)
    factors: Set[str] = set()
    for n, pieces in _levels(sub, depth, max_len, spent):
        for piece in pieces.values():
            factors |= piece.factors
        if spent.used > spent.limit:
            partial = LanguageSample(frozenset(factors), n, max_len, enc, partial=True)
            raise BudgetExceeded(f"letter budget {budget} exceeded at depth {n}", partial)
    return LanguageSample(frozenset(factors), depth, max_len, enc)


def occurrence_depth(sub: Substitution, letter: Letter, word: Word, max_depth: int,
                     budget: int = DEFAULT_BUDGET) -> Optional[int]:
    """Least ``n <= max_depth`` with ``word`` a factor of ``sigma^n(letter)``, else ``None``."""
    enc = _encoding(sub)
    target = "".join(enc[a] for a in word)
    spent = _Budget(budget)
    for n, pieces in _levels(sub, max_depth, max(1, len(word)), spent):
        if target in pieces[letter].factors:
            return n
        if spent.used > spent.limit:
            raise BudgetExceeded(f"letter budget {budget} exceeded at depth {n}")
    return None


def image_lengths(sub: Substitution, depth: int) -> Dict[Letter, List[int]]:
    lengths = {a: [1] for a in sub.alphabet}
    for _ in range(depth):
        for a in sub.alphabet:
            lengths[a].append(sum(lengths[b][-1] for b in sub.rules[a]))
    return lengths


def brute_bounded_letters(sub: Substitution) -> FrozenSet[Letter]:
    """Letters whose image length stops changing, judged over ``2|A|*max_image_len`` steps."""
    n = len(sub.alphabet)
    horizon = max(2 * n * max(len(w) for w in sub.rules.values()), 2 * n)
    lengths = image_lengths(sub, horizon)
    return frozenset(a for a in sub.alphabet if lengths[a][horizon] == lengths[a][n])


def brute_periodic_letters(sub: Substitution) -> FrozenSet[Letter]:
    """Letters ``a`` with ``sigma^n(a) == a`` for some ``1 <= n <= |A|``."""
    found = set()
    for a in sub.alphabet:
        word = (a,)
        for _ in range(len(sub.alphabet)):
            word = tuple(b for x in word for b in sub.rules[x])
            if len(word) > 1:
                break
            if word == (a,):
                found.add(a)
                break
    return frozenset(found)


def _letters_after(sub: Substitution, letters: FrozenSet[Letter], steps: int) -> FrozenSet[Letter]:
    for _ in range(steps):
        letters = frozenset(b for a in letters for b in sub.rules[a])
    return letters


def l_primitive_oracle(sub: Substitution, growing: FrozenSet[Letter], letters, k: int) -> bool:
    """Some common ``n <= 2^|C|`` puts every growing letter of ``letters`` into ``sigma^{kn}(a)`` for all of them."""
    part = frozenset(letters) & growing
    reach = {a: frozenset((a,)) for a in part}
    for _ in range(1, 2 ** len(growing) + 1):
        reach = {a: _letters_after(sub, s, k) for a, s in reach.items()}
        if all(part <= s for s in reach.values()):
            return True
    return False


def bounded_factor_growth(sub: Substitution, bounded: Iterable[Letter], depth: int) -> List[int]:
    """Longest run of ``bounded`` letters inside any ``sigma^n(a)``, for ``n = 0..depth``."""
    bounded = frozenset(bounded)
    # (length, lead run, trail run, best run) per letter
    state = {a: (1, 1, 1, 1) if a in bounded else (1, 0, 0, 0) for a in sub.alphabet}
    out = [max(s[3] for s in state.values())]
    for _ in range(depth):
        nxt = {}
        for a in sub.alphabet:
            length = lead = trail = best = 0
            all_bounded = True
            for b in sub.rules[a]:
                bl, blead, btrail, bbest = state[b]
                full = blead == bl
                best = max(best, bbest, trail + blead)
                if all_bounded:
                    lead += blead
                    all_bounded = full
                trail = trail + bl if full else btrail
                length += bl
            nxt[a] = (length, lead, trail, best)
        state = nxt
        out.append(max(s[3] for s in state.values()))
    return out


@dataclass(frozen=True)
class ClaimedTame:
    alphabet: FrozenSet[Letter]
    power: int
    growing: FrozenSet[Letter]


@dataclass(frozen=True)
class ClaimedWild:
    word: Word


@dataclass(frozen=True)
class Verdict:
    kind: str
    label: str
    ok: bool
    failures: Tuple[str, ...] = ()


def claims_from_census(result) -> Tuple[List[ClaimedTame], List[ClaimedWild]]:
    tame = [ClaimedTame(t.reduced_alphabet, t.power, t.growing_part.letters) for t in result.tame]
    wild = [ClaimedWild(w.period_word) for w in result.wild]
    return tame, wild


def _check_tame(sub, claim, sample, bounded):
    failures = []
    alphabet, k, part = frozenset(claim.alphabet), claim.power, frozenset(claim.growing)
    label = "({" + ",".join(sub.sorted(alphabet)) + f"}}, {k})"
    if not part or not part <= alphabet:
        failures.append("growing part missing or outside the alphabet")
    if part & bounded:
        failures.append("growing part contains bounded letters")
    if k < 1:
        return Verdict("tame", label, False, tuple(failures + ["power must be positive"]))
    for a in sub.sorted(alphabet):
        escaping = _letters_after(sub, frozenset((a,)), k) - alphabet
        if escaping:
            failures.append(f"sigma^{k}({a}) leaves the alphabet via {sorted(escaping)}")
    growing = frozenset(sub.alphabet) - bounded
    if part and not failures and not l_primitive_oracle(sub, growing, part, k):
        failures.append("restriction is not l-primitive")
    # every letter of the alphabet must be produced from the growing part
    if part and not failures:
        produced = set(part)
        frontier = set(part)
        while frontier:
            frontier = set(_letters_after(sub, frozenset(frontier), k)) - produced
            produced |= frontier
        if produced != set(alphabet):
            failures.append(f"letters {sorted(set(alphabet) - produced)} never appear under sigma^{k}")
    if not failures:
        enc = sample.encoding
        spent = _Budget(DEFAULT_BUDGET)
        for n, pieces in _levels(sub, sample.depth, sample.max_len, spent):
            if n == 0 or n % k:
                continue
            for d in part:
                missing = pieces[d].factors - sample.encoded
                if missing:
                    failures.append(f"factors of sigma^{n}({d}) missing from the sample")
    return Verdict("tame", label, not failures, tuple(failures))


def _check_wild(sub, claim, sample, bounded):
    word = tuple(claim.word)
    label = render(word)
    failures = []
    if not word:
        return Verdict("wild", label, False, ("empty period word",))
    outside = set(word) - bounded
    if outside:
        failures.append(f"letters {sorted(outside)} are not bounded")
    if len(word) > sample.max_len:
        failures.append(f"period length {len(word)} exceeds the sample cap {sample.max_len}")
    else:
        for j in range(1, max(1, sample.max_len // len(word)) + 1):
            if word * j not in sample:
                failures.append(f"power {j} of the period does not occur")
                break
    return Verdict("wild", label, not failures, tuple(failures))


def verify_component_language(sub: Substitution, result, sample: LanguageSample) -> List[Verdict]:
    """Check each claimed component against the raw rules and the language sample.

    ``result`` is a census or a ``(tame_claims, wild_claims)`` pair.
    """
    if isinstance(result, tuple):
        tame, wild = result
    else:
        tame, wild = claims_from_census(result)
    bounded = brute_bounded_letters(sub)
    verdicts = [_check_tame(sub, claim, sample, bounded) for claim in tame]
    verdicts += [_check_wild(sub, claim, sample, bounded) for claim in wild]
    return verdicts
