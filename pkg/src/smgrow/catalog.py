"""Built-in splitter-mixer groups and catalog-id parsing.

Catalog ids use colon syntax, e.g. ``catalog:gupta-sidki:5`` or
``catalog:epsilon:4:0,2,1``.  Omega words for the grigorchuk-omega family
are written as letters over {X, Y, Z} with a trailing ``*`` marking the
periodic tail and an optional ``.`` separating a preperiod, e.g. ``XYZ*``
or ``XY.ZZX*``.  A word without ``*`` is taken as wholly periodic; truly
non-periodic omega sequences are not representable here and are only
reachable through the depth-bounded operations.
"""

from __future__ import annotations

from .algebra import (
    Alphabet,
    FiniteGroup,
    Homomorphism,
    PermGroup,
    PhiCoordinate,
    PhiFamily,
    SplitterMixerData,
    perm_power,
)
from .errors import DataError

CATALOG_NAMES = (
    "grigorchuk",
    "grigorchuk-overgroup",
    "grigorchuk-omega",
    "gupta-sidki",
    "fabrykowski-gupta",
    "square",
    "epsilon",
    "klein-family",
)


def _cyclic_mixers(d: int) -> tuple[PermGroup, dict[str, int]]:
    gen = tuple((i + 1) % d for i in range(d))
    group = PermGroup.from_generators([gen])
    labels = {"1": 0}
    for t in range(1, d):
        labels["x" if t == 1 else f"x{t}"] = group.index[perm_power(gen, t)]
    return group, labels


def _klein_mixers() -> tuple[PermGroup, dict[str, int]]:
    # regular action of {1, i, j, k} on the alphabet {1, 2, 3, 4} ~ {1, i, j, k}
    i = (1, 0, 3, 2)
    j = (2, 3, 0, 1)
    group = PermGroup.from_generators([i, j])
    labels = {"1": 0, "i": group.index[i], "j": group.index[j], "k": group.index[(3, 2, 1, 0)]}
    return group, labels


def _swap_mixers() -> tuple[PermGroup, dict[str, int]]:
    group = PermGroup.from_generators([(1, 0)])
    return group, {"1": 0, "a": 1}


def _cyclic_b_labels(m: int) -> dict[str, int]:
    out = {"1": 0}
    for t in range(1, m):
        out["b" if t == 1 else f"b{t}"] = t
    return out


_GRIG_HOMS = {
    # the three nontrivial maps from the Klein group {1,b,c,d} onto {1,a}
    "X": Homomorphism((0, 1, 1, 0)),  # kernel {1, d}
    "Y": Homomorphism((0, 1, 0, 1)),  # kernel {1, c}
    "Z": Homomorphism((0, 0, 1, 1)),  # kernel {1, b}
}


def grigorchuk() -> SplitterMixerData:
    mixers, a_labels = _swap_mixers()
    splitters = FiniteGroup.klein()
    phi = PhiFamily(
        (PhiCoordinate((), (_GRIG_HOMS["X"], _GRIG_HOMS["Y"], _GRIG_HOMS["Z"])),)
    )
    return SplitterMixerData(
        Alphabet(2), mixers, splitters, phi, a_labels,
        {label: i for i, label in enumerate(splitters.labels)},
        name="grigorchuk",
    )


def grigorchuk_overgroup() -> SplitterMixerData:
    mixers, a_labels = _swap_mixers()
    splitters = FiniteGroup.elementary_two(("b", "c", "d"))

    def hom(vb: int, vc: int, vd: int) -> Homomorphism:
        return Homomorphism(
            tuple((vb * (m & 1) + vc * (m >> 1 & 1) + vd * (m >> 2 & 1)) % 2 for m in range(8))
        )

    # images of (b, c, d) cycle with period three starting at level 1
    phi = PhiFamily((PhiCoordinate((), (hom(1, 0, 0), hom(0, 0, 1), hom(0, 1, 0))),))
    return SplitterMixerData(
        Alphabet(2), mixers, splitters, phi, a_labels,
        {label: i for i, label in enumerate(splitters.labels)},
        name="grigorchuk-overgroup",
    )


def parse_omega(omega: str) -> tuple[str, str]:
    """Split an omega string into (preperiod, period)."""
    if not isinstance(omega, str) or not omega:
        raise DataError(
            "omega must be a nonempty string over {X,Y,Z}; non-periodic omega "
            "sequences are unsupported here, use the depth-bounded operations"
        )
    body = omega[:-1] if omega.endswith("*") else omega
    pre, _, per = body.rpartition(".")
    if not per:
        raise DataError(f"omega {omega!r} has an empty period")
    for ch in pre + per:
        if ch not in "XYZ":
            raise DataError(f"omega letter {ch!r} is not one of X, Y, Z")
    return pre, per


def grigorchuk_omega(omega: str) -> SplitterMixerData:
    pre, per = parse_omega(omega)
    mixers, a_labels = _swap_mixers()
    splitters = FiniteGroup.klein()
    phi = PhiFamily(
        (
            PhiCoordinate(
                tuple(_GRIG_HOMS[ch] for ch in pre),
                tuple(_GRIG_HOMS[ch] for ch in per),
            ),
        )
    )
    return SplitterMixerData(
        Alphabet(2), mixers, splitters, phi, a_labels,
        {label: i for i, label in enumerate(splitters.labels)},
        name=f"grigorchuk-omega({omega})",
    )


def epsilon_group(d: int, eps: tuple[int, ...], name: str | None = None) -> SplitterMixerData:
    """Cyclic family: A = B = Z/d with phi_i(b) = x^(eps_i), level independent."""
    if d < 2:
        raise DataError("alphabet size must be at least 2")
    if len(eps) != d - 1:
        raise DataError(f"expected {d - 1} epsilon entries, got {len(eps)}")
    if any(not (0 <= e < d) for e in eps):
        raise DataError("epsilon entries must lie in 0..d-1")
    mixers, a_labels = _cyclic_mixers(d)
    splitters = FiniteGroup.cyclic(d)
    gen = tuple((i + 1) % d for i in range(d))
    coords = []
    for e in eps:
        images = tuple(mixers.index[perm_power(gen, (e * t) % d)] for t in range(d))
        coords.append(PhiCoordinate((), (Homomorphism(images),)))
    return SplitterMixerData(
        Alphabet(d), mixers, splitters, PhiFamily(tuple(coords)),
        a_labels, _cyclic_b_labels(d),
        name=name or f"epsilon({d},{','.join(map(str, eps))})",
    )


def gupta_sidki(p: int) -> SplitterMixerData:
    if p < 3:
        raise DataError("gupta-sidki needs p >= 3")
    eps = (1, p - 1) + (0,) * (p - 3)
    return epsilon_group(p, eps, name=f"gupta-sidki({p})")


def fabrykowski_gupta() -> SplitterMixerData:
    # the classical group: the splitter restricts to (1, x, shifted copy);
    # its first coordinate map is not onto, which is what makes its
    # contraction mean 1/2 rather than the uncorrelated 2/3
    return epsilon_group(3, (0, 1), name="fabrykowski-gupta")


def square() -> SplitterMixerData:
    return epsilon_group(4, (1, 0, 3), name="square")


def klein_family(letters: str) -> SplitterMixerData:
    """A = {1,i,j,k} acting regularly on four symbols, B = Z/2, phi_i(b) = letter i."""
    if len(letters) != 3 or any(ch not in "1ijk" for ch in letters):
        raise DataError("klein-family takes three letters over {1, i, j, k}")
    mixers, a_labels = _klein_mixers()
    splitters = FiniteGroup.cyclic(2)
    coords = tuple(
        PhiCoordinate((), (Homomorphism((0, a_labels[ch])),)) for ch in letters
    )
    return SplitterMixerData(
        Alphabet(4), mixers, splitters, PhiFamily(coords),
        a_labels, _cyclic_b_labels(2),
        name=f"klein-family({letters})",
    )


def catalog(name: str, **params) -> SplitterMixerData:
    """Construct a named group; see CATALOG_NAMES for the options."""
    if name == "grigorchuk":
        return grigorchuk()
    if name == "grigorchuk-overgroup":
        return grigorchuk_overgroup()
    if name == "grigorchuk-omega":
        return grigorchuk_omega(params["omega"])
    if name == "gupta-sidki":
        return gupta_sidki(int(params["p"]))
    if name == "fabrykowski-gupta":
        return fabrykowski_gupta()
    if name == "square":
        return square()
    if name == "epsilon":
        return epsilon_group(int(params["d"]), tuple(int(e) for e in params["eps"]))
    if name == "klein-family":
        return klein_family(params["letters"])
    raise DataError(f"unknown catalog name {name!r}")


def catalog_from_id(identifier: str) -> SplitterMixerData:
    """Parse ids like catalog:gupta-sidki:5 or catalog:epsilon:4:0,2,1."""
    parts = identifier.split(":")
    if parts[0] != "catalog" or len(parts) < 2:
        raise DataError(f"bad catalog id {identifier!r}")
    name, args = parts[1], parts[2:]
    try:
        if name in ("grigorchuk", "grigorchuk-overgroup", "fabrykowski-gupta", "square"):
            return catalog(name)
        if name == "gupta-sidki":
            return catalog(name, p=int(args[0]))
        if name == "grigorchuk-omega":
            return catalog(name, omega=args[0])
        if name == "epsilon":
            return catalog(name, d=int(args[0]), eps=tuple(int(e) for e in args[1].split(",")))
        if name == "klein-family":
            return catalog(name, letters=args[0])
    except IndexError:
        raise DataError(f"missing parameters in catalog id {identifier!r}") from None
    raise DataError(f"unknown catalog name {name!r}")
