"""Torsion classification of regular splitter-mixer groups via a finite graph.

For level-independent data with abelian mixers, build the functional graph
on splitter-mixer pairs (b, a): let e(b, a) be the size of the <a>-orbit of
the distinguished symbol d; the element (b*a)^e fixes d and restricts below
it to a word that normalizes to b'*a', giving the successor pi(b, a) =
(b', a').  The group is torsion exactly when every cycle of the graph is a
self-loop at a vertex with e = 1.  The restrictions are computed by running
the decomposition machinery, not from a transcribed formula; any section
that fails to normalize is a structural error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import SplitterMixerData
from .errors import DataError, TorsionStructureError
from .words import ReducedWord, act, decompose, equal, power, reduce_letters

Vertex = tuple[int, int]  # (splitter index, mixer index)


@dataclass(frozen=True)
class TorsionGraph:
    data: SplitterMixerData
    e: dict[Vertex, int]  # orbit size of the distinguished symbol under <a>
    pi: dict[Vertex, Vertex]  # successor map
    sections: dict[Vertex, ReducedWord]  # (b*a)^e restricted below symbol d

    def vertices(self) -> list[Vertex]:
        return sorted(self.e)


@dataclass(frozen=True)
class TorsionVerdict:
    torsion: bool
    graph: TorsionGraph
    cycles: tuple[tuple[Vertex, ...], ...]
    bad_vertex: Vertex | None  # on a non-loop cycle, or a loop with e > 1


def _orbit_size(data: SplitterMixerData, a: int, symbol: int) -> int:
    size = 0
    cur = symbol
    while True:
        cur = data.A.act(a, cur)
        size += 1
        if cur == symbol:
            return size


def build_graph(data: SplitterMixerData) -> TorsionGraph:
    """Construct the graph; requires level-independent phi and abelian mixers."""
    if not data.regular:
        raise DataError(
            "torsion criterion needs level-independent homomorphism data "
            "(no preperiod, period one); level-periodic data is not reduced here"
        )
    if not data.A_abelian:
        raise DataError("torsion criterion needs an abelian mixer group")
    d = data.d
    e_map: dict[Vertex, int] = {}
    pi: dict[Vertex, Vertex] = {}
    sections: dict[Vertex, ReducedWord] = {}
    for b in range(data.B.order):
        for a in range(data.A.order):
            e = _orbit_size(data, a, d - 1)
            word = reduce_letters(data, 1, [("b", b), ("a", a)])
            g = power(data, word, e)
            dec = decompose(data, g)
            if data.A.act(dec.root, d - 1) != d - 1:
                raise TorsionStructureError(
                    f"(b*a)^e does not fix the distinguished symbol at ({b},{a})"
                )
            section = dec.children[d - 1]
            if section.b_length == 0:
                b2, a2 = 0, section.aletters[0]
            elif section.b_length == 1 and section.aletters[0] == 0:
                b2, a2 = section.bletters[0], section.aletters[1]
            else:
                raise TorsionStructureError(
                    f"section at ({data.B.labels[b]},{data.label_of_a(a)}) "
                    f"did not normalize to splitter*mixer form"
                )
            if b2 not in (b, 0):
                raise TorsionStructureError(
                    f"successor splitter at ({b},{a}) is neither b nor trivial"
                )
            vertex = (b, a)
            e_map[vertex] = e
            pi[vertex] = (b2, a2)
            sections[vertex] = section
    for vertex, e in e_map.items():
        if e == 1 and e_map[pi[vertex]] != 1:
            raise TorsionStructureError(f"e = 1 vertex {vertex} has a successor with e > 1")
    return TorsionGraph(data, e_map, pi, sections)


def torsion_verdict(graph: TorsionGraph) -> TorsionVerdict:
    """Find all cycles of the functional graph and classify.

    Torsion iff every cycle is a self-loop at a vertex with orbit size 1.
    """
    color: dict[Vertex, int] = {}  # 0 in progress, 1 done
    cycles: list[tuple[Vertex, ...]] = []
    on_cycle: set[Vertex] = set()
    for start in graph.vertices():
        if color.get(start) == 1:
            continue
        path = []
        v = start
        while color.get(v) is None:
            color[v] = 0
            path.append(v)
            v = graph.pi[v]
        if color[v] == 0:
            cycle = tuple(path[path.index(v) :])
            cycles.append(cycle)
            on_cycle.update(cycle)
        for u in path:
            color[u] = 1
    bad = None
    for cycle in sorted(cycles):
        if len(cycle) > 1 or graph.e[cycle[0]] > 1:
            bad = min(cycle)
            break
    return TorsionVerdict(bad is None, graph, tuple(sorted(cycles)), bad)


def witness_elements(verdict: TorsionVerdict, k: int) -> list[ReducedWord]:
    """g_0 = b*a at the bad vertex; g_{i+1} = g_i raised to the orbit size
    of the i-th vertex along the successor path."""
    if verdict.torsion or verdict.bad_vertex is None:
        raise DataError("witness construction needs a NotTorsion verdict")
    data = verdict.graph.data
    b, a = verdict.bad_vertex
    out = [reduce_letters(data, 1, [("b", b), ("a", a)])]
    vertex = verdict.bad_vertex
    for _ in range(k):
        out.append(power(data, out[-1], verdict.graph.e[vertex]))
        vertex = verdict.graph.pi[vertex]
    return out


def verify_witness(verdict: TorsionVerdict, k: int) -> bool:
    """Check the infinite-order witness to depth k.

    The elements g_0..g_k must be pairwise distinct, and g_i must fix the
    vertex d^i while moving d^(i+1).
    """
    if k < 1:
        raise DataError("k must be at least 1")
    data = verdict.graph.data
    elements = witness_elements(verdict, k)
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            if equal(data, elements[i], elements[j]):
                return False
    dsym = data.d - 1
    for i, g in enumerate(elements):
        fixed = tuple([dsym] * i)
        moved = tuple([dsym] * (i + 1))
        if act(data, g, fixed) != fixed:
            return False
        if act(data, g, moved) == moved:
            return False
    return True
