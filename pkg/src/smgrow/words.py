"""Words over splitter and mixer letters, decomposition, and the word problem.

A group element at level k is carried by a reduced word
a0 b1 a1 b2 ... bm am with mixer letters a_i in A and splitter letters
b_i in B_k, all b_i nontrivial and all inner a_i nontrivial.  Two rewrites
produce the reduced form: a trivial splitter letter is dropped and its
flanking mixer letters multiplied (R1); when an inner mixer letter is
trivial the two adjacent splitter letters merge into their product (R2).
Inverse-pair cancellation across a nontrivial mixer letter is never
performed, so the reduced form is exactly the free-product normal form.

Composition is left-to-right: v^(g*h) = (v^g)^h.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import SplitterMixerData, parse_cycles
from .errors import DataError, LevelMismatchError

Letter = tuple[str, int]  # ("a", mixer index) or ("b", splitter index)


@dataclass(frozen=True)
class ReducedWord:
    """Alternating word a0 b1 a1 ... bm am; aletters has one more entry."""

    level: int
    aletters: tuple[int, ...]
    bletters: tuple[int, ...]

    @property
    def b_length(self) -> int:
        return len(self.bletters)

    def key(self) -> tuple:
        return (self.aletters, self.bletters)


def identity_word(level: int = 1) -> ReducedWord:
    return ReducedWord(level, (0,), ())


def raw_letters(word: ReducedWord) -> list[Letter]:
    out: list[Letter] = [("a", word.aletters[0])]
    for b, a in zip(word.bletters, word.aletters[1:]):
        out.append(("b", b))
        out.append(("a", a))
    return out


def reduce_letters(data: SplitterMixerData, level: int, letters: Iterable[Letter]) -> ReducedWord:
    """Reduced form of a letter sequence (R1 + R2 to a fixed point)."""
    amul = data.A.mul
    bmul = data.B.mul
    st_a: list[int] = []  # mixer product stored before each stacked splitter
    st_b: list[int] = []
    acc = 0  # mixer product accumulated since the last stacked splitter
    for kind, idx in letters:
        if kind == "a":
            acc = amul(acc, idx)
        elif kind == "b":
            if idx == 0:
                continue  # R1: trivial splitter letters vanish
            if st_b and acc == 0:
                merged = bmul(st_b[-1], idx)  # R2
                if merged == 0:
                    st_b.pop()
                    acc = st_a.pop()
                else:
                    st_b[-1] = merged
            else:
                st_a.append(acc)
                st_b.append(idx)
                acc = 0
        else:
            raise DataError(f"unknown letter kind {kind!r}")
    return ReducedWord(level, tuple(st_a) + (acc,), tuple(st_b))


def multiply(data: SplitterMixerData, left: ReducedWord, right: ReducedWord) -> ReducedWord:
    if left.level != right.level:
        raise LevelMismatchError(f"levels {left.level} and {right.level} differ")
    return reduce_letters(data, left.level, raw_letters(left) + raw_letters(right))


def invert(data: SplitterMixerData, word: ReducedWord) -> ReducedWord:
    ainv = data.A.inv
    binv = data.B.inv
    return ReducedWord(
        word.level,
        tuple(ainv(a) for a in reversed(word.aletters)),
        tuple(binv(b) for b in reversed(word.bletters)),
    )


def power(data: SplitterMixerData, word: ReducedWord, n: int) -> ReducedWord:
    if n < 0:
        return power(data, invert(data, word), -n)
    result = identity_word(word.level)
    base = word
    while n:
        if n & 1:
            result = multiply(data, result, base)
        base = multiply(data, base, base) if n > 1 else base
        n >>= 1
    return result


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class Decomposition:
    """Wreath form [w_1, ..., w_d] * root of a word one level up."""

    root: int
    children: tuple[ReducedWord, ...]
    cancellations: int  # trivial inner mixer syllables seen while assembling


def decompose_raw(
    data: SplitterMixerData,
    level: int,
    aletters: Sequence[int],
    bletters: Sequence[int],
) -> tuple[int, list[list[Letter]], int]:
    """Distribute letters into the d children without reducing them.

    Each splitter letter b_j lands as a splitter (shifted one level down) in
    the single child i with i^(p_j) = d, where p_j is the product of the
    mixer letters before b_j; every other child i receives the mixer letter
    phi_{i^(p_j)}(b_j).  The returned cancellation count is the number of
    trivial mixer syllables between consecutive splitter slots of a child.
    """
    d = data.d
    amul = data.A.mul
    perms = data.A.perms
    children: list[list[Letter]] = [[] for _ in range(d)]
    seen = [False] * d
    acc = [0] * d
    cancellations = 0
    homs = [data.phi.at(i0, level).images for i0 in range(d - 1)]
    prefix = 0
    for j, b in enumerate(bletters):
        prefix = amul(prefix, aletters[j])
        perm = perms[prefix]
        for i in range(d):
            target = perm[i]
            if target == d - 1:
                if seen[i] and acc[i] == 0:
                    cancellations += 1
                seen[i] = True
                acc[i] = 0
                children[i].append(("b", b))
            else:
                img = homs[target][b]
                if img:
                    acc[i] = amul(acc[i], img)
                    children[i].append(("a", img))
    root = amul(prefix, aletters[len(bletters)])
    return root, children, cancellations


def decompose(data: SplitterMixerData, word: ReducedWord) -> Decomposition:
    """Decomposition of a reduced word, children reduced, memoized."""
    cache = data.cache("decompose")
    key = (word.aletters, word.bletters, data.phi.level_key(word.level))
    hit = cache.get(key)
    if hit is None:
        root, children, cancellations = decompose_raw(data, word.level, word.aletters, word.bletters)
        reduced = tuple(reduce_letters(data, 0, letters) for letters in children)
        hit = (root, tuple((w.aletters, w.bletters) for w in reduced), cancellations)
        cache[key] = hit
    root, child_parts, cancellations = hit
    lvl = word.level + 1
    return Decomposition(root, tuple(ReducedWord(lvl, a, b) for a, b in child_parts), cancellations)


# ---------------------------------------------------------------------------
# the action on vertices


def parse_vertex(data: SplitterMixerData, text: str) -> tuple[int, ...]:
    if text == "":
        return ()
    parts = text.split(",") if "," in text else list(text)
    try:
        symbols = tuple(int(p) - 1 for p in parts)
    except ValueError:
        raise DataError(f"bad vertex string {text!r}") from None
    if any(not (0 <= s < data.d) for s in symbols):
        raise DataError(f"vertex symbol out of range 1..{data.d} in {text!r}")
    return symbols


def format_vertex(data: SplitterMixerData, vertex: Sequence[int]) -> str:
    sep = "," if data.d > 9 else ""
    return sep.join(str(s + 1) for s in vertex)


def act(data: SplitterMixerData, word: ReducedWord, vertex: Sequence[int]) -> tuple[int, ...]:
    """Image of a vertex; length preserving and prefix compatible."""
    out = []
    cur = word
    for sym in vertex:
        if not (0 <= sym < data.d):
            raise DataError(f"vertex symbol {sym} out of range")
        dec = decompose(data, cur)
        out.append(data.A.act(dec.root, sym))
        cur = dec.children[sym]
    return tuple(out)


# ---------------------------------------------------------------------------
# exact word problem (eventually periodic phi families only)


def _key(data: SplitterMixerData, word: ReducedWord) -> tuple:
    return (word.aletters, word.bletters, data.phi.level_key(word.level))


def is_trivial(data: SplitterMixerData, word: ReducedWord) -> bool:
    """Exact triviality via a greatest-fixed-point closure over sections.

    Words are keyed by their content and level residue; a word fails as soon
    as some iterated section has a nontrivial root permutation, and words
    re-encountered along the way are assumed trivial.  Termination: sections
    never gain splitter length and there are finitely many reduced words of
    bounded splitter length per level key.
    """
    memo = data.cache("trivial")
    k0 = _key(data, word)
    if k0 in memo:
        return memo[k0]
    if not word.bletters:
        memo[k0] = word.aletters[0] == 0
        return memo[k0]

    assumed: set[tuple] = set()
    stack: list[tuple[tuple, tuple[ReducedWord, ...], list[int]]] = []

    def open_frame(w: ReducedWord, k: tuple) -> bool | None:
        dec = decompose(data, w)
        if dec.root != 0:
            memo[k] = False
            return False
        assumed.add(k)
        stack.append((k, dec.children, [0]))
        return None

    verdict = True
    if open_frame(word, k0) is False:
        return False
    while stack:
        key, children, pos = stack[-1]
        if pos[0] >= len(children):
            stack.pop()
            continue
        child = children[pos[0]]
        pos[0] += 1
        ck = _key(data, child)
        known = memo.get(ck)
        if known is False:
            verdict = False
            break
        if known is True or ck in assumed:
            continue
        if not child.bletters:
            triv = child.aletters[0] == 0
            memo[ck] = triv
            if not triv:
                verdict = False
                break
            continue
        if open_frame(child, ck) is False:
            verdict = False
            break
    if verdict:
        for k in assumed:
            memo[k] = True
    else:
        # every frame still open has the offending section in its closure
        for k, _, _ in stack:
            memo[k] = False
    return verdict


@dataclass(frozen=True)
class BoundedCheck:
    trivial: bool
    depth: int
    witness: tuple[int, ...] | None  # a minimal-length moved vertex


def is_trivial_bounded(data: SplitterMixerData, word: ReducedWord, depth: int) -> BoundedCheck:
    """Exhaustive check of the action on all vertices up to the given depth.

    Sections with identical content and level key act identically, so each
    level is deduplicated; the witness, when found, has minimal length.
    """
    if depth < 0:
        raise DataError("depth must be nonnegative")
    current: dict[tuple, tuple[ReducedWord, tuple[int, ...]]] = {
        _key(data, word): (word, ())
    }
    for _ in range(depth):
        nxt: dict[tuple, tuple[ReducedWord, tuple[int, ...]]] = {}
        for _, (w, prefix) in sorted(current.items(), key=lambda kv: kv[1][1]):
            dec = decompose(data, w)
            if dec.root != 0:
                perm = data.A.perms[dec.root]
                moved = min(s for s in range(data.d) if perm[s] != s)
                return BoundedCheck(False, depth, prefix + (moved,))
            for i, child in enumerate(dec.children):
                ck = _key(data, child)
                entry = nxt.get(ck)
                if entry is None or prefix + (i,) < entry[1]:
                    nxt[ck] = (child, prefix + (i,))
        current = nxt
    return BoundedCheck(True, depth, None)


def equal(data: SplitterMixerData, left: ReducedWord, right: ReducedWord) -> bool:
    if left.level != right.level:
        raise LevelMismatchError(f"levels {left.level} and {right.level} differ")
    if left == right:
        return True
    return is_trivial(data, multiply(data, left, invert(data, right)))


def _smooth_numbers(limit: int, primes: Iterable[int]) -> list[int]:
    primes = sorted(set(p for p in primes if p > 1))
    out = {1}
    for p in primes:
        for base in sorted(out):
            v = base * p
            while v <= limit:
                out.add(v)
                v *= p
    return sorted(out)


def _prime_factors(n: int) -> set[int]:
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def order_of(data: SplitterMixerData, word: ReducedWord, cap: int) -> int | None:
    """Least n <= cap with word^n trivial, or None when the cap is exceeded.

    Candidate exponents whose prime factors divide |A|*|B| are tried first
    (finite orders here only involve those primes), with a linear scan as a
    fallback; any successful exponent is refined to its least working divisor.
    """
    if cap < 1:
        raise DataError("cap must be at least 1")
    if is_trivial(data, word):
        return 1

    def refine(n: int) -> int:
        divisors = sorted(
            k for k in range(1, n + 1) if n % k == 0
        )
        for k in divisors:
            if is_trivial(data, power(data, word, k)):
                return k
        return n

    primes = _prime_factors(data.A.order * data.B.order)
    smooth = _smooth_numbers(cap, primes)
    tried = set()
    for n in smooth:
        if n == 1:
            continue
        tried.add(n)
        if is_trivial(data, power(data, word, n)):
            return refine(n)
    for n in range(2, cap + 1):
        if n in tried:
            continue
        if is_trivial(data, power(data, word, n)):
            return refine(n)
    return None


# ---------------------------------------------------------------------------
# portraits and fingerprints


def portrait(data: SplitterMixerData, word: ReducedWord, depth: int) -> tuple:
    """Nested tuple of root permutations on levels 1..depth."""
    if depth <= 0:
        return ()
    cache = data.cache("portrait")
    key = (_key(data, word), depth)
    hit = cache.get(key)
    if hit is None:
        dec = decompose(data, word)
        hit = (
            data.A.perms[dec.root],
            tuple(portrait(data, child, depth - 1) for child in dec.children),
        )
        cache[key] = hit
    return hit


def fingerprint(data: SplitterMixerData, word: ReducedWord, depth: int) -> str:
    """Stable digest of the permutation portrait; equal elements collide at every depth."""
    blob = repr(portrait(data, word, depth)).encode()
    return hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------------------
# element syntax and a convenience handle


def parse_element(data: SplitterMixerData, text: str, level: int = 1) -> ReducedWord:
    """Whitespace-separated letters; trailing apostrophe inverts a letter.

    Mixer letters are written in cycle notation or by label, splitter
    letters by label; "1" is the identity.
    """
    letters: list[Letter] = []
    for tok in text.split():
        invert_it = tok.endswith("'")
        base = tok[:-1] if invert_it else tok
        if base in data.b_labels:
            idx = data.b_labels[base]
            if invert_it:
                idx = data.B.inv(idx)
            letters.append(("b", idx))
        elif base in data.a_labels:
            idx = data.a_labels[base]
            if invert_it:
                idx = data.A.inv(idx)
            letters.append(("a", idx))
        elif base.startswith("("):
            perm = parse_cycles(base, data.d)
            if perm not in data.A.index:
                raise DataError(f"permutation {base} is not in the mixer group")
            idx = data.A.index[perm]
            if invert_it:
                idx = data.A.inv(idx)
            letters.append(("a", idx))
        elif base == "1":
            continue
        else:
            raise DataError(f"unknown letter {tok!r}")
    return reduce_letters(data, level, letters)


def format_element(data: SplitterMixerData, word: ReducedWord) -> str:
    if not word.bletters and word.aletters[0] == 0:
        return "1"
    toks = []
    if word.aletters[0] != 0:
        toks.append(data.label_of_a(word.aletters[0]))
    for b, a in zip(word.bletters, word.aletters[1:]):
        toks.append(data.label_of_b(b))
        if a != 0:
            toks.append(data.label_of_a(a))
    return " ".join(toks)


class Element:
    """Semantic handle: a reduced word with exact equality and operators."""

    __hash__ = None  # type: ignore[assignment]  # equality is semantic

    def __init__(self, data: SplitterMixerData, word: ReducedWord):
        self.data = data
        self.word = word

    @classmethod
    def from_text(cls, data: SplitterMixerData, text: str, level: int = 1) -> "Element":
        return cls(data, parse_element(data, text, level))

    def __mul__(self, other: "Element") -> "Element":
        return Element(self.data, multiply(self.data, self.word, other.word))

    def __pow__(self, n: int) -> "Element":
        return Element(self.data, power(self.data, self.word, n))

    def inverse(self) -> "Element":
        return Element(self.data, invert(self.data, self.word))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return equal(self.data, self.word, other.word)

    def is_trivial(self) -> bool:
        return is_trivial(self.data, self.word)

    def act(self, vertex: str) -> str:
        image = act(self.data, self.word, parse_vertex(self.data, vertex))
        return format_vertex(self.data, image)

    def order(self, cap: int) -> int | None:
        return order_of(self.data, self.word, cap)

    def fingerprint(self, depth: int) -> str:
        return fingerprint(self.data, self.word, depth)

    def __repr__(self) -> str:
        return f"<{format_element(self.data, self.word)} @level {self.word.level}>"
