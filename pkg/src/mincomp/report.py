"""Structured report, text and DOT rendering, and the two-letter census."""

from __future__ import annotations

import itertools
import json
from typing import Dict, Iterable, List, Optional, Tuple

from .alphabet import orbit, successor
from .boundary import LEFT, RIGHT, build_boundary_graph, cycle_base_words, period_word, preperiod_word
from .components import bound_check, census, essentially_minimal, tame_dynamics, wild_dynamics
from .substitution import Substitution, classify_letters
from .words import Word, as_word, render

GRAPH_KINDS = ("orbits", "gl", "gr", "gt", "gw")


def _letters(sub: Substitution, letters) -> List[str]:
    return list(sub.sorted(letters))


def _image(sub: Substitution, word: Word):
    # compact string when every letter is one character, else a token list
    return render(word) if all(len(a) == 1 for a in word) else list(word)


def _boundary_block(sub, cls, side):
    graph = build_boundary_graph(sub, cls, side)
    periodic = {}
    for cycle in graph.cycles:
        data = cycle_base_words(sub, cls, graph, cycle)
        for c in cycle:
            periodic[c] = {
                "base": render(data.base_words[c]),
                "preperiod_exponent": data.preperiod_exponent,
                "period_exponent": data.period_exponent,
                "preperiod_word": render(preperiod_word(sub, cls, c, side)),
                "period_word": render(period_word(sub, cls, c, side)),
            }
    return {
        "edges": {c: graph.edge[c] for c in sub.sorted(graph.edge)},
        "cycles": [list(cycle) for cycle in graph.cycles],
        "periodic": {c: periodic[c] for c in sub.sorted(periodic)},
    }


def build_report(sub: Substitution) -> dict:
    """Run the whole pipeline and collect the result as plain JSON-ready data."""
    result = census(sub)
    cls = result.classification
    tame_ids = {t.growing_part.letters for t in result.tame}
    bounds = bound_check(cls, result)
    g_t = tame_dynamics(sub, cls, result.tame)
    g_w = wild_dynamics(sub, cls, result.wild)
    return {
        "substitution": {"rules": {a: _image(sub, sub.rules[a]) for a in sub.alphabet}},
        "classification": {
            "periodic": _letters(sub, cls.periodic),
            "preperiodic": _letters(sub, cls.preperiodic),
            "bounded": _letters(sub, cls.bounded),
            "growing": _letters(sub, cls.growing),
            "left_isolated": _letters(sub, cls.left_isolated),
            "right_isolated": _letters(sub, cls.right_isolated),
            "non_isolated": _letters(sub, cls.non_isolated),
        },
        "minimal_alphabets": [
            {"letters": _letters(sub, m.letters), "period": m.period, "tame": m.letters in tame_ids}
            for m in result.minimal
        ],
        "boundary": {side: _boundary_block(sub, cls, side) for side in (LEFT, RIGHT)},
        "components": {
            "tame": [
                {"alphabet": _letters(sub, t.reduced_alphabet), "power": t.power,
                 "growing": _letters(sub, t.growing_part.letters)}
                for t in result.tame
            ],
            "wild": [
                {"word": render(w.period_word),
                 "provenance": [{"letter": c, "side": side} for c, side in w.provenance]}
                for w in result.wild
            ],
        },
        "counts": {"tmc": result.tmc, "wmc": result.wmc, "mc": result.mc},
        "bounds": {
            "case": bounds.case, "limit": bounds.limit, "tame_limit": bounds.tame_limit,
            "wild_limit": bounds.wild_limit, "ok": bounds.ok,
        },
        "essentially_minimal": essentially_minimal(result),
        "dynamics": {
            "tame": [[g_t.successor[i]] for i in range(len(g_t.nodes))],
            "wild": [[g_w.successor[i]] for i in range(len(g_w.nodes))],
        },
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _set(letters: Iterable[str]) -> str:
    return "{" + ",".join(letters) + "}"


def render_text(report: dict) -> str:
    cls = report["classification"]
    lines = ["rules:"]
    for a, image in report["substitution"]["rules"].items():
        lines.append(f"  {a} -> {image if isinstance(image, str) else ' '.join(image)}")
    lines.append("letters:")
    for key in ("growing", "bounded", "periodic", "preperiodic", "left_isolated", "right_isolated", "non_isolated"):
        lines.append(f"  {key.replace('_', ' ')}: {_set(cls[key])}")
    lines.append("minimal alphabets:")
    for m in report["minimal_alphabets"]:
        tag = "tame" if m["tame"] else "isolated"
        lines.append(f"  {_set(m['letters'])} period {m['period']} ({tag})")
    for side in (LEFT, RIGHT):
        block = report["boundary"][side]
        lines.append(f"{side} boundary cycles: " + " ".join("(" + " ".join(c) + ")" for c in block["cycles"]))
        for c, data in block["periodic"].items():
            if data["base"]:
                lines.append(
                    f"  {c}: base {data['base']} q={data['preperiod_exponent']} "
                    f"period={data['period_exponent']} word {data['period_word']}"
                )
    comps = report["components"]
    lines.append("tame components:")
    for i, t in enumerate(comps["tame"]):
        lines.append(f"  T{i}: ({_set(t['alphabet'])}, {t['power']})")
    lines.append("wild components:")
    for i, w in enumerate(comps["wild"]):
        prov = ", ".join(f"{p['letter']} {p['side']}" for p in w["provenance"])
        lines.append(f"  W{i}: {w['word']}  from {prov}")
    counts, bounds = report["counts"], report["bounds"]
    lines.append(f"counts: tmc={counts['tmc']} wmc={counts['wmc']} mc={counts['mc']}")
    lines.append(
        f"bounds ({bounds['case']}): mc <= {bounds['limit']}, tmc <= {bounds['tame_limit']}, "
        f"wmc <= {bounds['wild_limit']}: {'ok' if bounds['ok'] else 'VIOLATED'}"
    )
    lines.append(f"essentially minimal: {'yes' if report['essentially_minimal'] else 'no'}")
    for kind, prefix in (("tame", "T"), ("wild", "W")):
        edges = " ".join(f"{prefix}{i}->{prefix}{succ[0]}" for i, succ in enumerate(report["dynamics"][kind]))
        lines.append(f"{kind} dynamics: {edges or '(none)'}")
    return "\n".join(lines) + "\n"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot(name: str, nodes: List[Tuple[str, str]], edges: List[Tuple[str, str, Optional[str]]]) -> str:
    out = [f"digraph {name} {{"]
    for node_id, label in nodes:
        out.append(f"  {_quote(node_id)} [label={_quote(label)}];")
    for src, dst, label in edges:
        attr = f" [label={_quote(label)}]" if label else ""
        out.append(f"  {_quote(src)} -> {_quote(dst)}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"


def render_dot(sub: Substitution, report: dict, which: str) -> str:
    if which not in GRAPH_KINDS:
        raise ValueError(f"unknown graph {which!r}; choose from {', '.join(GRAPH_KINDS)}")
    if which in ("gl", "gr"):
        block = report["boundary"][LEFT if which == "gl" else RIGHT]
        label = "L" if which == "gl" else "R"
        nodes = [(c, c) for c in block["edges"]]
        edges = [(c, d, label) for c, d in block["edges"].items()]
        return _dot(which.upper().replace("G", "G_"), nodes, edges)
    if which in ("gt", "gw"):
        kind = "tame" if which == "gt" else "wild"
        prefix = kind[0].upper()
        comps = report["components"][kind]
        if kind == "tame":
            labels = [f"({_set(t['alphabet'])}, {t['power']})" for t in comps]
        else:
            labels = [w["word"] for w in comps]
        nodes = [(f"{prefix}{i}", label) for i, label in enumerate(labels)]
        edges = [(f"{prefix}{i}", f"{prefix}{succ[0]}", "σ̃") for i, succ in enumerate(report["dynamics"][kind])]
        return _dot("G_t" if kind == "tame" else "G_w", nodes, edges)
    # orbits of singletons in the alphabet graph
    cls = classify_letters(sub)
    seen: Dict[frozenset, str] = {}
    edges = []
    for c in sub.sorted(cls.growing):
        current = frozenset((c,))
        while current not in seen:
            seen[current] = _set(sub.sorted(current))
            nxt = successor(sub, cls, current)
            edges.append((seen[current], _set(sub.sorted(nxt)), None))
            current = nxt
    nodes = [(label, label) for _, label in sorted(seen.items(), key=lambda kv: (len(kv[0]), sub.set_key(kv[0])))]
    edges.sort(key=lambda e: [n for n, _ in nodes].index(e[0]))
    return _dot("G", nodes, edges)


# two-letter census -------------------------------------------------------

ZERO, ONE = frozenset("0"), frozenset("1")
BOTH = ZERO | ONE

# (D, D') -> expected components: tame growing parts with their reduced alphabets
TWO_LETTER_TABLE = {
    (ZERO, ONE): [(ZERO, ZERO), (ONE, ONE)],
    (ZERO, ZERO): [(ZERO, ZERO)],
    (ZERO, BOTH): [(ZERO, ZERO)],
    (ONE, ONE): [(ONE, ONE)],
    (ONE, ZERO): [(ZERO, ZERO), (ONE, ONE)],
    (ONE, BOTH): [(BOTH, BOTH)],
    (BOTH, ONE): [(ONE, ONE)],
    (BOTH, ZERO): [(BOTH, BOTH)],
    (BOTH, BOTH): [(BOTH, BOTH)],
}


def _words(max_len: int):
    for n in range(1, max_len + 1):
        for letters in itertools.product("01", repeat=n):
            yield "".join(letters)


def two_letter_substitutions(max_image_len: int):
    """All substitutions on {0,1} with images of length at most ``max_image_len`` and 0 growing."""
    for image0, image1 in itertools.product(list(_words(max_image_len)), repeat=2):
        sub = Substitution({"0": as_word(image0), "1": as_word(image1)})
        if "0" in classify_letters(sub).growing:
            yield sub


def census_case(sub: Substitution) -> Tuple[str, object]:
    """The table cell of a two-letter substitution: ``("D,D'", (D, D'))`` or the bounded-letter case."""
    cls = classify_letters(sub)
    if "1" in cls.growing:
        return "growing", (successor(sub, cls, ZERO), successor(sub, cls, ONE))
    result = census(sub)
    return "bounded", "wild" if result.classification.left_isolated | result.classification.right_isolated else "tame"


def _cell_name(key) -> str:
    kind, value = key
    if kind == "bounded":
        return f"B={{1}} {value}"
    d, d2 = value
    return f"D={_set(sorted(d))} D'={_set(sorted(d2))}"


def _observed(result):
    tame = sorted(("tame", "".join(sorted(t.growing_part.letters)), "".join(sorted(t.reduced_alphabet)))
                  for t in result.tame)
    wild = sorted(("wild", render(w.period_word)) for w in result.wild)
    return tuple(tame + wild)


def _expected(key):
    kind, value = key
    if kind == "bounded":
        if value == "wild":
            return (("wild", "1"),)
        return None  # single tame component on the growing letter 0, alphabet depends on the rules
    return tuple(sorted(("tame", "".join(sorted(d)), "".join(sorted(e))) for d, e in TWO_LETTER_TABLE[value]))


def run_census2(max_image_len: int = 3) -> dict:
    """Enumerate the two-letter substitutions and check each against its table cell."""
    if max_image_len < 1:
        raise ValueError("max image length must be at least 1")
    groups: Dict[str, dict] = {}
    mismatches = []
    total = 0
    for sub in two_letter_substitutions(max_image_len):
        total += 1
        key = census_case(sub)
        observed = _observed(census(sub))
        expected = _expected(key)
        if expected is None:
            ok = len(observed) == 1 and observed[0][0] == "tame" and observed[0][1] == "0"
        else:
            ok = observed == expected
        name = _cell_name(key)
        group = groups.setdefault(name, {"count": 0, "outcomes": {}})
        group["count"] += 1
        label = " + ".join(_describe(o) for o in observed)
        group["outcomes"][label] = group["outcomes"].get(label, 0) + 1
        if not ok:
            mismatches.append({"substitution": f"0 -> {render(sub.rules['0'])} ; 1 -> {render(sub.rules['1'])}",
                               "cell": name, "observed": label})
    return {
        "max_image_len": max_image_len,
        "total": total,
        "groups": {name: groups[name] for name in sorted(groups)},
        "mismatches": mismatches,
    }


def _describe(component) -> str:
    if component[0] == "wild":
        return f"wild {component[1]}"
    _, growing, alphabet = component
    if alphabet == "01" and growing == "01":
        return "X_sigma"
    return f"tame ({_set(alphabet)})"


def render_census2(table: dict) -> str:
    lines = [f"two-letter substitutions with images up to length {table['max_image_len']}: {table['total']}"]
    for name, group in table["groups"].items():
        outcomes = "; ".join(f"{label} x{n}" for label, n in sorted(group["outcomes"].items()))
        lines.append(f"  {name}: {group['count']} substitutions -> {outcomes}")
    if table["mismatches"]:
        lines.append(f"mismatches: {len(table['mismatches'])}")
        for m in table["mismatches"]:
            lines.append(f"  {m['substitution']} in {m['cell']}: {m['observed']}")
    else:
        lines.append("every substitution matches its table cell")
    return "\n".join(lines) + "\n"
