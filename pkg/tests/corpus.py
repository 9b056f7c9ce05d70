"""Random substitution corpus and the per-substitution property checks run over it."""

import random

from mincomp import oracle
from mincomp.alphabet import is_l_primitive, orbit
from mincomp.boundary import (
    LEFT, RIGHT, BelowThreshold, build_boundary_graph, cycle_base_words, decompose_lb,
    decompose_rb, decomposition_threshold, descendant, evolution_closed_form, left_boundary,
    origins, period_word, right_boundary,
)
from mincomp.components import (
    bound_check, census, reduced_alphabet, tame_dynamics, wild_dynamics,
)
from mincomp.substitution import Substitution, classify_letters

SEED = 20240611
CORPUS_SIZE = 10_000
LETTERS = "0123"


def random_substitution(rng: random.Random, max_letters=4, max_image=4) -> Substitution:
    n = rng.randint(1, max_letters)
    alphabet = LETTERS[:n]
    return Substitution({
        a: tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_image)))
        for a in alphabet
    })


def corpus(size=CORPUS_SIZE, seed=SEED):
    """``size`` distinct-draw substitutions that have at least one growing letter."""
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        sub = random_substitution(rng)
        if classify_letters(sub).growing:
            out.append(sub)
    return out


def check_classification(sub):
    cls = classify_letters(sub)
    failures = []
    if cls.bounded != oracle.brute_bounded_letters(sub):
        failures.append("bounded letters disagree with the length oracle")
    if cls.periodic != oracle.brute_periodic_letters(sub):
        failures.append("periodic letters disagree with the iteration oracle")
    return failures


def check_disjoint_minimal(sub, result):
    seen = set()
    for m in result.minimal:
        if seen & m.letters:
            return ["minimal alphabets overlap"]
        seen |= m.letters
    return []


def check_decompositions(sub, cls, extra_periods=3):
    failures = []
    for side, decompose, direct in ((LEFT, decompose_lb, left_boundary), (RIGHT, decompose_rb, right_boundary)):
        graph = build_boundary_graph(sub, cls, side)
        for c in sub.sorted(cls.growing):
            threshold = decomposition_threshold(sub, cls, c, side)
            target = graph.walk(c, graph.entry_steps[c])
            data = cycle_base_words(sub, cls, graph, graph.cycle_of(target))
            span = extra_periods * data.length * data.period_exponent
            for k in range(max(threshold, 1), threshold + span + 1):
                parts = decompose(sub, cls, c, k)
                base = parts.base
                rebuilt = parts.assemble(period_word(sub, cls, base, side))
                if rebuilt != direct(sub, cls, c, k)[0]:
                    failures.append(f"{side} decomposition of sigma^{k}({c}) does not reassemble")
            if threshold > 0:
                try:
                    decompose(sub, cls, c, threshold - 1)
                    failures.append(f"{side} decomposition accepted k below threshold for {c}")
                except BelowThreshold:
                    pass
    return failures


def check_evolution(sub, cls, depth=8):
    failures = []
    for block in origins(sub, cls):
        current = block
        for l in range(depth + 1):
            if current != evolution_closed_form(sub, cls, block, l):
                failures.append(f"descendant iteration differs from closed form at l={l}")
                break
            current = descendant(sub, cls, current)
    return failures


def check_isolation_per_cycle(sub, cls):
    failures = []
    for side in (LEFT, RIGHT):
        graph = build_boundary_graph(sub, cls, side)
        isolated = cls.left_isolated if side == LEFT else cls.right_isolated
        for cycle in graph.cycles:
            data = cycle_base_words(sub, cls, graph, cycle)
            flags = {bool(data.base_words[c]) for c in cycle}
            if len(flags) != 1:
                failures.append(f"{side} cycle {cycle} mixes isolated and non-isolated letters")
            if flags == {True} and not set(cycle) <= isolated:
                failures.append(f"{side} cycle {cycle} not recorded as isolated")
    return failures


def check_bounds(sub, result):
    return [] if bound_check(result.classification, result).ok else ["component count bounds violated"]


def check_dynamics(sub, result):
    cls = result.classification
    failures = []
    g_t = tame_dynamics(sub, cls, result.tame)
    g_w = wild_dynamics(sub, cls, result.wild)
    if not g_t.is_permutation():
        failures.append("tame dynamics is not a permutation")
    if not g_w.is_permutation():
        failures.append("wild dynamics is not a permutation")
    return failures


def check_wild_identity(sub, result):
    g_w = wild_dynamics(sub, result.classification, result.wild)
    return [] if g_w.is_identity() else [f"wild dynamics moves components: {g_w.cycles()}"]


def check_oracle(sub, result, depth=8):
    longest = max((len(w.period_word) for w in result.wild), default=1)
    sample = oracle.sample_language(sub, depth, max(8, 2 * longest))
    return [f"{v.kind} {v.label}: {'; '.join(v.failures)}"
            for v in oracle.verify_component_language(sub, result, sample) if not v.ok]


def l_primitive_candidates(sub, cls):
    """Every periodic alphabet on a singleton orbit, with its period."""
    found = {}
    for c in sub.sorted(cls.growing):
        cyc = orbit(sub, cls, (c,)).cycle
        for d in cyc:
            found[d] = len(cyc)
    return found


def check_l_primitive(sub, cls, result):
    failures = []
    minimal = {m.letters for m in result.minimal}
    for letters, k in l_primitive_candidates(sub, cls).items():
        alphabet = reduced_alphabet(sub, letters, k)
        engine = is_l_primitive(sub, cls, alphabet, k)
        brute = oracle.l_primitive_oracle(sub, cls.growing, alphabet, k)
        if engine != brute:
            failures.append(f"l-primitivity of {sorted(alphabet)} at power {k}: engine {engine}, oracle {brute}")
        if engine != (letters in minimal):
            failures.append(f"{sorted(letters)} minimality disagrees with l-primitivity")
    return failures


PROPERTY_CHECKS = ("classification", "a", "b", "c", "d", "e", "f", "f_identity", "g", "l_primitive")


def check_all(sub):
    """Map each property label to its failure messages for one substitution."""
    result = census(sub)
    cls = result.classification
    return {
        "classification": check_classification(sub),
        "a": check_disjoint_minimal(sub, result),
        "b": check_decompositions(sub, cls),
        "c": check_evolution(sub, cls),
        "d": check_isolation_per_cycle(sub, cls),
        "e": check_bounds(sub, result),
        "f": check_dynamics(sub, result),
        "f_identity": check_wild_identity(sub, result),
        "g": check_oracle(sub, result),
        "l_primitive": check_l_primitive(sub, cls, result),
    }


def check_period_powers(sub, result, power=6, max_depth=96):
    """The raw period word of each provenance letter repeats ``power`` times in some ``sigma^n(c)``."""
    failures = []
    cls = result.classification
    for w in result.wild:
        for c, side in w.provenance:
            word = period_word(sub, cls, c, side) * power
            if oracle.occurrence_depth(sub, c, word, max_depth) is None:
                failures.append(f"{side} period of {c} to the power {power} not found by depth {max_depth}")
    return failures
