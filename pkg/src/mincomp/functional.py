"""Orbits and cycles of maps with out-degree one."""

from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterable, List, Tuple, TypeVar

T = TypeVar("T", bound=Hashable)


def orbit_split(start: T, step: Callable[[T], T]) -> Tuple[List[T], List[T]]:
    """Iterate ``step`` from ``start`` until the first repeat.

    Returns ``(preperiod, cycle)``; the last element of ``cycle`` steps back to
    its first element.
    """
    seen: Dict[T, int] = {}
    seq: List[T] = []
    x = start
    while x not in seen:
        seen[x] = len(seq)
        seq.append(x)
        x = step(x)
    mu = seen[x]
    return seq[:mu], seq[mu:]


def functional_cycles(nodes: Iterable[T], edge: Dict[T, T]) -> List[List[T]]:
    """All cycles of a total map, each rotated to start at its earliest node in ``nodes`` order."""
    order = list(nodes)
    position = {v: i for i, v in enumerate(order)}
    on_cycle = set()
    cycles = []
    for v in order:
        if v in on_cycle:
            continue
        _, cyc = orbit_split(v, edge.__getitem__)
        if cyc[0] in on_cycle:
            continue
        on_cycle.update(cyc)
        first = min(range(len(cyc)), key=lambda i: position[cyc[i]])
        cycles.append(cyc[first:] + cyc[:first])
    cycles.sort(key=lambda c: position[c[0]])
    return cycles


def entry_steps(nodes: Iterable[T], edge: Dict[T, T], cyclic: set) -> Dict[T, int]:
    """Number of steps each node needs to land on ``cyclic``."""
    steps = {}
    for v in nodes:
        n, x = 0, v
        while x not in cyclic:
            x = edge[x]
            n += 1
        steps[v] = n
    return steps
