"""General wreath-recursion escape hatch with depth-bounded operations.

States are defined by a root permutation and one formal section word per
alphabet symbol; elements are formal products of states and their inverses.
Only bounded operations are offered, plus an opportunistic closure check
that upgrades to an exact answer when the reachable section set stays
within a budget.  No exactness is claimed in general.
"""

from __future__ import annotations

from .algebra import Perm, identity_perm, invert_perm, parse_cycles
from .errors import DataError, ExactnessError

FormalWord = tuple[tuple[str, int], ...]  # (state name, +1 or -1)


def wmul(left: FormalWord, right: FormalWord) -> FormalWord:
    """Concatenate and freely cancel adjacent inverse pairs."""
    out = list(left)
    for letter in right:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def winv(word: FormalWord) -> FormalWord:
    return tuple((name, -e) for name, e in reversed(word))


def parse_formal(text: str) -> FormalWord:
    out: list[tuple[str, int]] = []
    for tok in text.split():
        if tok in ("1", "1'"):
            continue
        if tok.endswith("'"):
            out.append((tok[:-1], -1))
        else:
            out.append((tok, 1))
    return wmul((), tuple(out))


def format_formal(word: FormalWord) -> str:
    if not word:
        return "1"
    return " ".join(name if e > 0 else name + "'" for name, e in word)


class WreathSystem:
    """A finite set of named states closed under the section maps."""

    def __init__(self, d: int, states: dict[str, tuple[Perm, tuple[FormalWord, ...]]]):
        self.d = d
        self.states = dict(states)
        for name, (root, sections) in states.items():
            if len(root) != d or len(sections) != d:
                raise DataError(f"state {name!r} has wrong arity")
            for sec in sections:
                for ref, _ in sec:
                    if ref not in states:
                        raise DataError(f"state {name!r} references unknown state {ref!r}")

    @classmethod
    def from_dict(cls, d: int, entries: dict[str, tuple[str, list[str]]]) -> "WreathSystem":
        states = {
            name: (parse_cycles(root_text, d), tuple(parse_formal(s) for s in section_texts))
            for name, (root_text, section_texts) in entries.items()
        }
        return cls(d, states)

    # ----- wreath algebra on formal words

    def root_of(self, word: FormalWord) -> Perm:
        perm = identity_perm(self.d)
        for name, e in word:
            p = self.states[name][0]
            if e < 0:
                p = invert_perm(p)
            perm = tuple(p[perm[i]] for i in range(self.d))
        return perm

    def section_of(self, word: FormalWord, symbol: int) -> FormalWord:
        """Section below one symbol: (g*h)_i = g_i * h_(i^g)."""
        out: FormalWord = ()
        cur = symbol
        for name, e in word:
            root, sections = self.states[name]
            if e > 0:
                out = wmul(out, sections[cur])
                cur = root[cur]
            else:
                back = invert_perm(root)
                cur = back[cur]
                out = wmul(out, winv(sections[cur]))
        return out

    def act(self, word: FormalWord, vertex: tuple[int, ...]) -> tuple[int, ...]:
        out = []
        cur = word
        for sym in vertex:
            out.append(self.root_of(cur)[sym])
            cur = self.section_of(cur, sym)
        return tuple(out)

    # ----- bounded word problem

    def is_trivial_bounded(self, word: FormalWord, depth: int):
        """(trivial_to_depth, witness) with a minimal-length witness vertex."""
        current: dict[FormalWord, tuple[int, ...]] = {word: ()}
        for _ in range(depth):
            nxt: dict[FormalWord, tuple[int, ...]] = {}
            for w, prefix in sorted(current.items(), key=lambda kv: kv[1]):
                root = self.root_of(w)
                if root != identity_perm(self.d):
                    moved = min(s for s in range(self.d) if root[s] != s)
                    return False, prefix + (moved,)
                for i in range(self.d):
                    child = self.section_of(w, i)
                    seen = nxt.get(child)
                    if seen is None or prefix + (i,) < seen:
                        nxt[child] = prefix + (i,)
            current = nxt
        return True, None

    def is_trivial(self, word: FormalWord, budget: int = 10_000) -> bool:
        """Exact triviality when the section closure happens to be finite.

        Raises ExactnessError when the closure exceeds the budget; callers
        must then settle for is_trivial_bounded.
        """
        result = self.is_trivial_closure(word, budget)
        if result is None:
            raise ExactnessError(
                "section closure exceeded the budget; use is_trivial_bounded"
            )
        return result

    def is_trivial_closure(self, word: FormalWord, budget: int = 10_000):
        """Opportunistic contraction check.

        Returns True/False when the reachable section set closes within the
        budget, None otherwise; None means only bounded answers exist.
        """
        seen = {word}
        frontier = [word]
        while frontier:
            if len(seen) > budget:
                return None
            nxt = []
            for w in frontier:
                if self.root_of(w) != identity_perm(self.d):
                    return False
                for i in range(self.d):
                    child = self.section_of(w, i)
                    if child not in seen:
                        seen.add(child)
                        nxt.append(child)
            frontier = nxt
        return True


def bsv() -> WreathSystem:
    """Two binary-tree states t = [1, t](1,2) and m = [1, m'](1,2)."""
    return WreathSystem.from_dict(
        2, {"t": ("(1,2)", ["1", "t"]), "m": ("(1,2)", ["1", "m'"])}
    )


def exponential_weakly_branch_pair() -> WreathSystem:
    """States a = [1, b](1,2) and b = [1, a]."""
    return WreathSystem.from_dict(
        2, {"a": ("(1,2)", ["1", "b"]), "b": ("1", ["1", "a"])}
    )
