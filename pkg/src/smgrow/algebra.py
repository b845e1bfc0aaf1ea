"""Finite algebra underlying splitter-mixer groups.

A splitter-mixer group acts on the rooted tree over an alphabet {1..d}.
The "mixers" form a finite permutation group A of the alphabet; the
"splitters" come from a finite group B together with a family of
homomorphisms phi_i^n : B -> A, one per non-distinguished alphabet symbol
i < d and tree level n, eventually periodic in n.  The distinguished
symbol d carries the level shift: below symbol d a splitter at level n
restricts to the same splitter at level n + 1.

Symbols are 0-based internally (the distinguished symbol is d - 1);
vertex strings and cycle notation at the I/O boundary are 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DataError

# ---------------------------------------------------------------------------
# permutations (tuples of images, right action: sym -> perm[sym])

Perm = tuple[int, ...]


def identity_perm(d: int) -> Perm:
    return tuple(range(d))


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose_perm(p: Perm, q: Perm) -> Perm:
    """Right-action composition: sym^(p*q) = (sym^p)^q."""
    return tuple(q[p[i]] for i in range(len(p)))


def invert_perm(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, img in enumerate(p):
        out[img] = i
    return tuple(out)


def perm_power(p: Perm, n: int) -> Perm:
    out = identity_perm(len(p))
    base = p if n >= 0 else invert_perm(p)
    for _ in range(abs(n)):
        out = compose_perm(out, base)
    return out


def parse_cycles(text: str, d: int) -> Perm:
    """Parse 1-based cycle notation like "(1,2)(3,4)"; "1" or "()" is the identity."""
    s = text.replace(" ", "")
    if s in ("1", "()", ""):
        return identity_perm(d)
    if not (s.startswith("(") and s.endswith(")")):
        raise DataError(f"bad cycle notation {text!r}")
    perm = list(range(d))
    for chunk in s[1:-1].split(")("):
        entries = [int(tok) for tok in chunk.split(",") if tok]
        if any(e < 1 or e > d for e in entries):
            raise DataError(f"cycle entry out of range 1..{d} in {text!r}")
        if len(set(entries)) != len(entries):
            raise DataError(f"repeated entry in cycle {text!r}")
        for k, e in enumerate(entries):
            perm[e - 1] = entries[(k + 1) % len(entries)] - 1
    return tuple(perm)


def format_perm(p: Perm) -> str:
    """Disjoint-cycle string, 1-based; identity prints as "1"."""
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        cur = p[start]
        while cur != start:
            cyc.append(cur)
            seen[cur] = True
            cur = p[cur]
        cycles.append("(" + ",".join(str(c + 1) for c in cyc) + ")")
    return "".join(cycles) if cycles else "1"


# ---------------------------------------------------------------------------
# finite permutation group (the mixers A)


class PermGroup:
    """A finite permutation group on {0..d-1}, closed and fully tabulated.

    Elements are sorted lexicographically, which places the identity at
    index 0. All pairwise products and inverses are precomputed; the
    groups in play are tiny.
    """

    def __init__(self, d: int, perms: Sequence[Perm], generators: Sequence[Perm]):
        self.d = d
        self.perms: tuple[Perm, ...] = tuple(sorted(set(map(tuple, perms))))
        self.index: dict[Perm, int] = {p: i for i, p in enumerate(self.perms)}
        self.generators: tuple[int, ...] = tuple(self.index[tuple(g)] for g in generators)
        n = len(self.perms)
        self._mul = [
            [self.index[compose_perm(self.perms[i], self.perms[j])] for j in range(n)]
            for i in range(n)
        ]
        self._inv = [self.index[invert_perm(p)] for p in self.perms]

    @classmethod
    def from_generators(cls, generators: Sequence[Perm]) -> "PermGroup":
        gens = [tuple(g) for g in generators]
        if not gens:
            raise DataError("at least one generator required")
        d = len(gens[0])
        for g in gens:
            if len(g) != d:
                raise DataError("degree mismatch among generators")
            if not is_perm(g):
                raise DataError(f"not a permutation: {g}")
        elems = {identity_perm(d)}
        frontier = list(elems)
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = compose_perm(p, g)
                    if q not in elems:
                        elems.add(q)
                        nxt.append(q)
            frontier = nxt
        return cls(d, sorted(elems), gens)

    @property
    def order(self) -> int:
        return len(self.perms)

    def mul(self, i: int, j: int) -> int:
        return self._mul[i][j]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def act(self, a: int, sym: int) -> int:
        return self.perms[a][sym]

    def is_abelian(self) -> bool:
        n = self.order
        return all(self._mul[i][j] == self._mul[j][i] for i in range(n) for j in range(i))

    def is_transitive(self) -> bool:
        reached = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for s in frontier:
                for p in self.perms:
                    if p[s] not in reached:
                        reached.add(p[s])
                        nxt.append(p[s])
            frontier = nxt
        return len(reached) == self.d

    def subgroup_generated(self, indices: Iterable[int]) -> frozenset[int]:
        closed = {0}
        frontier = [0]
        gens = set(indices)
        gens.update(self._inv[g] for g in set(gens))
        while frontier:
            nxt = []
            for i in frontier:
                for g in gens:
                    j = self._mul[i][g]
                    if j not in closed:
                        closed.add(j)
                        nxt.append(j)
            frontier = nxt
        return frozenset(closed)


def build_perm_group(generators: Sequence[Perm]) -> PermGroup:
    """Closure of a generator list; raises DataError on degree mismatch."""
    return PermGroup.from_generators(generators)


# ---------------------------------------------------------------------------
# finite group given by a multiplication table (the splitters B)


class FiniteGroup:
    """Finite group on labelled elements 0..m-1 with an explicit table.

    The constructor is permissive so that broken tables can be built and
    then reported by `group_law_violations`; operations that need inverses
    raise DataError when the table is not a group.
    """

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[int]]):
        self.labels: tuple[str, ...] = tuple(labels)
        self.table: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in table)
        self._inv: tuple[int, ...] | None = self._compute_inverses()

    def _compute_inverses(self) -> tuple[int, ...] | None:
        m = len(self.table)
        if len(self.labels) != m or any(len(row) != m for row in self.table):
            return None
        inv = [-1] * m
        for i in range(m):
            for j in range(m):
                if not (0 <= self.table[i][j] < m):
                    return None
                if self.table[i][j] == 0:
                    inv[i] = j
        return tuple(inv) if all(v >= 0 for v in inv) else None

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        if self._inv is None:
            raise DataError("multiplication table is not a group")
        return self._inv[i]

    def element_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DataError(f"unknown splitter label {label!r}") from None

    def group_law_violations(self) -> list[str]:
        out: list[str] = []
        m = len(self.table)
        if len(self.labels) != m:
            out.append("label count does not match table size")
        if len(set(self.labels)) != len(self.labels):
            out.append("duplicate element labels")
        for i, row in enumerate(self.table):
            if len(row) != m or any(not (0 <= v < m) for v in row):
                out.append(f"table row {i} malformed")
                return out
        for j in range(m):
            if self.table[0][j] != j or self.table[j][0] != j:
                out.append("element 0 is not a two-sided identity")
                break
        if self._inv is None:
            out.append("some element has no inverse")
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        out.append(f"associativity fails at ({i},{j},{k})")
                        return out
        return out

    @classmethod
    def cyclic(cls, m: int, gen_label: str = "b") -> "FiniteGroup":
        labels = ["1"] + [gen_label if t == 1 else f"{gen_label}{t}" for t in range(1, m)]
        table = [[(i + j) % m for j in range(m)] for i in range(m)]
        return cls(labels, table)

    @classmethod
    def klein(cls) -> "FiniteGroup":
        # {1, b, c, d} with every square trivial and bc = d: xor on 2 bits
        labels = ("1", "b", "c", "d")
        table = [[i ^ j for j in range(4)] for i in range(4)]
        return cls(labels, table)

    @classmethod
    def elementary_two(cls, gen_labels: Sequence[str]) -> "FiniteGroup":
        """(Z/2)^k with one bit per generator; product labels concatenate."""
        k = len(gen_labels)
        labels = []
        for mask in range(1 << k):
            if mask == 0:
                labels.append("1")
            else:
                labels.append("".join(g for t, g in enumerate(gen_labels) if mask >> t & 1))
        table = [[i ^ j for j in range(1 << k)] for i in range(1 << k)]
        return cls(labels, table)


# ---------------------------------------------------------------------------
# homomorphisms B -> A and their level families


@dataclass(frozen=True)
class Homomorphism:
    """Total map B -> A given by the image index of every B element."""

    images: tuple[int, ...]

    def apply(self, b: int) -> int:
        return self.images[b]

    def violations(self, b_group: FiniteGroup, a_group: PermGroup) -> list[str]:
        out = []
        if len(self.images) != b_group.order:
            return [f"image list has length {len(self.images)}, expected {b_group.order}"]
        if any(not (0 <= v < a_group.order) for v in self.images):
            return ["image index out of range"]
        for x in range(b_group.order):
            for y in range(b_group.order):
                if self.images[b_group.mul(x, y)] != a_group.mul(self.images[x], self.images[y]):
                    out.append(f"h(xy) != h(x)h(y) at x={b_group.labels[x]}, y={b_group.labels[y]}")
                    return out
        return out


def hom_from_generator_images(
    b_group: FiniteGroup, gen_images: dict[int, int], a_group: PermGroup
) -> Homomorphism:
    """Extend images of a generating set multiplicatively to all of B.

    Raises DataError if the mapped elements do not generate B.  Consistency
    (the homomorphism law) is not assumed here; run `violations` afterwards.
    """
    images: dict[int, int] = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, ag in gen_images.items():
                y = b_group.mul(x, g)
                if y not in images:
                    images[y] = a_group.mul(images[x], ag)
                    nxt.append(y)
        frontier = nxt
    if len(images) != b_group.order:
        missing = [b_group.labels[i] for i in range(b_group.order) if i not in images]
        raise DataError(f"mapped labels do not generate B (unreachable: {missing})")
    return Homomorphism(tuple(images[i] for i in range(b_group.order)))


@dataclass(frozen=True)
class PhiCoordinate:
    """Levels of one phi_i: preperiod entries for levels 1..p, then a cycle."""

    preperiod: tuple[Homomorphism, ...]
    period: tuple[Homomorphism, ...]

    def at(self, level: int) -> Homomorphism:
        p = len(self.preperiod)
        if level <= p:
            return self.preperiod[level - 1]
        return self.period[(level - p - 1) % len(self.period)]


@dataclass(frozen=True)
class PhiFamily:
    """One PhiCoordinate per non-distinguished symbol, i = 1..d-1."""

    coords: tuple[PhiCoordinate, ...]

    def at(self, i0: int, level: int) -> Homomorphism:
        """Homomorphism of coordinate i0 (0-based, < d-1) at a 1-based level."""
        return self.coords[i0].at(level)

    @property
    def max_preperiod(self) -> int:
        return max((len(c.preperiod) for c in self.coords), default=0)

    @property
    def period_lcm(self) -> int:
        q = 1
        for c in self.coords:
            q = math.lcm(q, max(len(c.period), 1))
        return q

    @property
    def regular(self) -> bool:
        return self.max_preperiod == 0 and self.period_lcm == 1

    def level_key(self, level: int) -> int:
        """Key under which phi lookups at this level are identical."""
        p, q = self.max_preperiod, self.period_lcm
        if level <= p:
            return level
        return p + 1 + (level - p - 1) % q


# ---------------------------------------------------------------------------
# the defining data


@dataclass(frozen=True)
class Alphabet:
    d: int


class SplitterMixerData:
    """Defining data of a splitter-mixer group.

    Treat instances as immutable; operation caches hang off `_caches` and
    are write-once, so sharing across threads is safe.
    """

    def __init__(
        self,
        alphabet: Alphabet,
        mixers: PermGroup,
        splitters: FiniteGroup,
        phi: PhiFamily,
        a_labels: dict[str, int],
        b_labels: dict[str, int],
        name: str = "custom",
    ):
        self.alphabet = alphabet
        self.A = mixers
        self.B = splitters
        self.phi = phi
        self.a_labels = dict(a_labels)
        self.b_labels = dict(b_labels)
        self.name = name
        self._caches: dict[str, dict] = {}

    @property
    def d(self) -> int:
        return self.alphabet.d

    @property
    def regular(self) -> bool:
        return self.phi.regular

    @property
    def A_abelian(self) -> bool:
        return self.A.is_abelian()

    @property
    def A_transitive(self) -> bool:
        return self.A.is_transitive()

    def cache(self, kind: str) -> dict:
        return self._caches.setdefault(kind, {})

    def label_of_a(self, idx: int) -> str:
        for label, i in self.a_labels.items():
            if i == idx:
                return label
        return format_perm(self.A.perms[idx])

    def label_of_b(self, idx: int) -> str:
        for label, i in self.b_labels.items():
            if i == idx:
                return label
        return f"#{idx}"

    def __repr__(self) -> str:
        return f"SplitterMixerData({self.name}, d={self.d}, |A|={self.A.order}, |B|={self.B.order})"


def parse_a_element(data_or_group, a_labels: dict[str, int], text: str) -> int:
    """Element of A from a whitespace word of labels/cycles, apostrophe inverts."""
    group: PermGroup = data_or_group.A if isinstance(data_or_group, SplitterMixerData) else data_or_group
    acc = 0
    for tok in text.split():
        invert = tok.endswith("'")
        base = tok[:-1] if invert else tok
        if base in a_labels:
            idx = a_labels[base]
        elif base.startswith("("):
            perm = parse_cycles(base, group.d)
            if perm not in group.index:
                raise DataError(f"permutation {base} is not in the mixer group")
            idx = group.index[perm]
        elif base == "1":
            idx = 0
        else:
            raise DataError(f"unknown mixer token {tok!r}")
        if invert:
            idx = group.inv(idx)
        acc = group.mul(acc, idx)
    return acc


# ---------------------------------------------------------------------------
# validation and growth-theorem hypotheses


def validate(data: SplitterMixerData) -> list[str]:
    """Every violated structural invariant, one message each; empty iff well-formed."""
    out: list[str] = []
    d = data.d
    if d < 2:
        out.append(f"alphabet size must be at least 2, got {d}")
    for p in data.A.perms:
        if len(p) != d or not is_perm(p):
            out.append(f"mixer entry {p} is not a permutation of 0..{d - 1}")
    perm_set = set(data.A.perms)
    if identity_perm(d) not in perm_set:
        out.append("mixer group is missing the identity")
    else:
        for i in range(data.A.order):
            for j in range(data.A.order):
                if compose_perm(data.A.perms[i], data.A.perms[j]) not in perm_set:
                    out.append("mixer set is not closed under composition")
                    break
            else:
                continue
            break
        if any(invert_perm(p) not in perm_set for p in data.A.perms):
            out.append("mixer set is not closed under inverse")
        generated = data.A.subgroup_generated(data.A.generators)
        if len(generated) != data.A.order:
            out.append("mixer generators do not generate the stored element set")
    out.extend(data.B.group_law_violations())
    if len(data.phi.coords) != d - 1:
        out.append(f"phi must have {d - 1} coordinates, got {len(data.phi.coords)}")
    for i0, coord in enumerate(data.phi.coords):
        if len(coord.period) < 1:
            out.append(f"phi coordinate {i0 + 1} has an empty period")
            continue
        for which, homs in (("preperiod", coord.preperiod), ("period", coord.period)):
            for n, hom in enumerate(homs):
                for msg in hom.violations(data.B, data.A):
                    out.append(f"phi_{i0 + 1} {which}[{n}]: {msg}")
    for label, idx in data.a_labels.items():
        if not (0 <= idx < data.A.order):
            out.append(f"mixer label {label!r} points outside the group")
    for label, idx in data.b_labels.items():
        if not (0 <= idx < data.B.order):
            out.append(f"splitter label {label!r} points outside the group")
    return out


@dataclass(frozen=True)
class HypothesisReport:
    passed: bool
    reasons: tuple[str, ...] = ()


def check_theorem_hypotheses(data: SplitterMixerData) -> HypothesisReport:
    """Check the conditions under which the group provably has intermediate growth.

    (a) the mixers act transitively; (b) every nontrivial splitter has a
    nontrivial image at infinitely many (level, coordinate) pairs, decided by
    scanning the preperiod plus one full period; (c) the images of all
    coordinates generate the whole mixer group at every level; (d) the
    degenerate cases A = 1 and A = B = Z/2 are excluded.
    """
    reasons: list[str] = []
    if not data.A_transitive:
        reasons.append("mixer group does not act transitively on the alphabet")
    p = data.phi.max_preperiod
    q = data.phi.period_lcm
    for b in range(1, data.B.order):
        periodic_hit = any(
            data.phi.at(i0, n).apply(b) != 0
            for n in range(p + 1, p + q + 1)
            for i0 in range(data.d - 1)
        )
        if not periodic_hit:
            reasons.append(
                f"splitter {data.B.labels[b]!r} has trivial images at all levels beyond the preperiod"
            )
    for n in range(1, p + q + 1):
        images = {
            data.phi.at(i0, n).apply(b)
            for i0 in range(data.d - 1)
            for b in range(data.B.order)
        }
        if len(data.A.subgroup_generated(images)) != data.A.order:
            reasons.append(f"level {n} images do not generate the mixer group")
    if data.A.order == 1:
        reasons.append("excluded case: trivial mixer group")
    elif data.A.order == 2 and data.B.order == 2:
        reasons.append("excluded case: both mixers and splitters of order 2")
    return HypothesisReport(passed=not reasons, reasons=tuple(reasons))


# ---------------------------------------------------------------------------
# epsilon sequences (cyclic families A = B = Z/d)


@dataclass(frozen=True)
class EpsilonSequence:
    d: int
    eps: tuple[int, ...]


@dataclass(frozen=True)
class CanonicalEpsilon:
    sequence: EpsilonSequence
    subdirect: bool


def canonical_epsilon(seq: EpsilonSequence) -> CanonicalEpsilon:
    """Lexicographic minimum over the symmetry orbit of an epsilon sequence.

    The symmetries are coordinate reversal and generator inversion
    eps_i -> (d - eps_i) mod d; both leave the group unchanged.  Also
    reports whether <a^eps_1, ..., a^eps_{d-1}> is all of Z/d.
    """
    d = seq.d
    if any(not (0 <= e < d) for e in seq.eps):
        raise DataError("epsilon entries must lie in 0..d-1")
    e = tuple(seq.eps)
    inv = tuple((d - x) % d for x in e)
    orbit = {e, e[::-1], inv, inv[::-1]}
    best = min(orbit)
    subdirect = math.gcd(d, *seq.eps) == 1 if seq.eps else False
    return CanonicalEpsilon(EpsilonSequence(d, best), subdirect)
