"""Independent oracles used to cross-check the exact machinery.

The truncated-action oracle represents an element by the permutation it
induces on the d^depth leaves of the finite tree, composed with numpy
fancy indexing; it shares only the one-step decomposition with the code
under test, never the equality or closure logic.
"""

from __future__ import annotations

import numpy as np

from smgrow.words import ReducedWord, decompose


def leaf_perm(data, word: ReducedWord, depth: int, memo: dict) -> np.ndarray:
    key = (word.aletters, word.bletters, data.phi.level_key(word.level), depth)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if depth == 0:
        arr = np.zeros(1, dtype=np.int64)
    else:
        dec = decompose(data, word)
        d = data.d
        m = d ** (depth - 1)
        arr = np.empty(d * m, dtype=np.int64)
        perm = data.A.perms[dec.root]
        for i in range(d):
            child = leaf_perm(data, dec.children[i], depth - 1, memo)
            arr[i * m : (i + 1) * m] = perm[i] * m + child
    memo[key] = arr
    return arr


def oracle_bfs(data, generator_words, radius: int, depth: int):
    """Sphere lists of leaf permutations under right multiplication."""
    memo: dict = {}
    gens = [leaf_perm(data, g, depth, memo) for g in generator_words]
    ident = np.arange(data.d**depth, dtype=np.int64)
    seen = {ident.tobytes()}
    spheres = [[ident]]
    for _ in range(radius):
        layer = []
        for arr in spheres[-1]:
            for g in gens:
                cand = g[arr]  # v^(w*g) = (v^w)^g
                kb = cand.tobytes()
                if kb not in seen:
                    seen.add(kb)
                    layer.append(cand)
        spheres.append(layer)
    return spheres, memo


def perm_order(arr: np.ndarray, cap: int) -> int | None:
    """Order of a leaf permutation by iterated composition."""
    cur = arr
    n = 1
    ident = np.arange(len(arr), dtype=np.int64)
    while n <= cap:
        if np.array_equal(cur, ident):
            return n
        cur = arr[cur]
        n += 1
    return None


def reduce_by_random_rewrites(data, level, letters, rng):
    """Free-product normal form by applying rewrites in random order.

    Letters are (kind, index) pairs; redexes are: a trivial letter anywhere,
    and two adjacent letters of the same kind (which merge to their
    product).  Terminates because every step shortens the list, and the
    normal form is unique regardless of order.
    """
    from smgrow.words import ReducedWord

    work = [(k, i) for k, i in letters]
    while True:
        redexes = []
        for pos, (kind, idx) in enumerate(work):
            if idx == 0:
                redexes.append(("drop", pos))
        for pos in range(len(work) - 1):
            if work[pos][0] == work[pos + 1][0]:
                redexes.append(("merge", pos))
        if not redexes:
            break
        op, pos = redexes[rng.randrange(len(redexes))]
        if op == "drop":
            del work[pos]
        else:
            kind = work[pos][0]
            table = data.A.mul if kind == "a" else data.B.mul
            merged = table(work[pos][1], work[pos + 1][1])
            work[pos : pos + 2] = [(kind, merged)]
    aletters = []
    bletters = []
    expect_a = True
    for kind, idx in work:
        if kind == "a":
            aletters.append(idx)
            expect_a = False
        else:
            if expect_a:
                aletters.append(0)
            bletters.append(idx)
            expect_a = True
    if expect_a or len(aletters) == len(bletters):
        aletters.append(0)
    return ReducedWord(level, tuple(aletters), tuple(bletters))
