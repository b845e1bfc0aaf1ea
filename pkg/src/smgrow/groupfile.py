"""Group definition documents (JSON) and the group-source resolver.

A definition document has fields:

  d      alphabet size
  A      {"named": "cyclic" | "klein" | "symmetric"} or
         {"generators": ["(1,2)", ...], "labels": ["a1", ...]}  (cycle notation)
  B      {"named": "cyclic", "order": m} | {"named": "klein"} or
         {"labels": [...], "table": [[...labels...]]}  (row i, col j = label of i*j)
  phi    list of d-1 coordinates, each {"preperiod": [hom...], "period": [hom...]}
         where a hom maps B generator labels to words in A labels

or simply {"catalog": name, "params": {...}} for a built-in group.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import (
    Alphabet,
    FiniteGroup,
    Homomorphism,
    PermGroup,
    PhiCoordinate,
    PhiFamily,
    SplitterMixerData,
    compose_perm,
    format_perm,
    hom_from_generator_images,
    parse_a_element,
    parse_cycles,
)
from .catalog import catalog, catalog_from_id
from .errors import DataError


def _mixers_from_doc(doc: dict, d: int) -> tuple[PermGroup, dict[str, int]]:
    if "named" in doc:
        name = doc["named"]
        if name == "cyclic":
            from .catalog import _cyclic_mixers

            return _cyclic_mixers(d)
        if name == "klein":
            if d != 4:
                raise DataError("named klein mixers need d = 4")
            from .catalog import _klein_mixers

            return _klein_mixers()
        if name == "symmetric":
            gens = [(1, 0) + tuple(range(2, d))]
            if d > 2:
                gens.append(tuple((i + 1) % d for i in range(d)))
            group = PermGroup.from_generators(gens)
            return group, {"1": 0}
        raise DataError(f"unknown named mixer group {name!r}")
    if "generators" in doc:
        perms = [parse_cycles(text, d) for text in doc["generators"]]
        group = PermGroup.from_generators(perms)
        labels = {"1": 0}
        names = doc.get("labels") or [f"a{k + 1}" for k in range(len(perms))]
        if len(names) != len(perms):
            raise DataError("mixer labels must match the generator list")
        for name, perm in zip(names, perms):
            labels[name] = group.index[perm]
            # power labels like x2, x3 for the generator's cyclic span
            cur = perm
            t = 2
            while True:
                cur = compose_perm(cur, perm)
                if cur == perm or group.index[cur] == 0:
                    break
                labels.setdefault(f"{name}{t}", group.index[cur])
                t += 1
        return group, labels
    raise DataError("mixer spec needs 'named' or 'generators'")


def _splitters_from_doc(doc: dict) -> FiniteGroup:
    if "named" in doc:
        name = doc["named"]
        if name == "cyclic":
            return FiniteGroup.cyclic(int(doc["order"]), doc.get("label", "b"))
        if name == "klein":
            return FiniteGroup.klein()
        raise DataError(f"unknown named splitter group {name!r}")
    labels = [str(x) for x in doc["labels"]]
    index = {label: i for i, label in enumerate(labels)}
    try:
        table = [[index[str(entry)] for entry in row] for row in doc["table"]]
    except KeyError as exc:
        raise DataError(f"table entry {exc.args[0]!r} is not a declared label") from None
    return FiniteGroup(labels, table)


def _hom_from_doc(
    doc: dict, splitters: FiniteGroup, mixers: PermGroup, a_labels: dict[str, int]
) -> Homomorphism:
    gen_images = {
        splitters.element_index(blabel): parse_a_element(mixers, a_labels, str(aword))
        for blabel, aword in doc.items()
    }
    return hom_from_generator_images(splitters, gen_images, mixers)


def parse_definition(doc: dict) -> SplitterMixerData:
    if "catalog" in doc:
        return catalog(doc["catalog"], **doc.get("params", {}))
    try:
        d = int(doc["d"])
    except KeyError:
        raise DataError("definition document needs a field 'd'") from None
    mixers, a_labels = _mixers_from_doc(doc["A"], d)
    splitters = _splitters_from_doc(doc["B"])
    phi_doc = doc["phi"]
    if len(phi_doc) != d - 1:
        raise DataError(f"phi must list {d - 1} coordinates, got {len(phi_doc)}")
    coords = []
    for entry in phi_doc:
        pre = tuple(_hom_from_doc(h, splitters, mixers, a_labels) for h in entry.get("preperiod", []))
        per = tuple(_hom_from_doc(h, splitters, mixers, a_labels) for h in entry["period"])
        if not per:
            raise DataError("phi coordinate has an empty period")
        coords.append(PhiCoordinate(pre, per))
    b_labels = {label: i for i, label in enumerate(splitters.labels)}
    return SplitterMixerData(
        Alphabet(d), mixers, splitters, PhiFamily(tuple(coords)),
        a_labels, b_labels, name=doc.get("name", "file"),
    )


def dump_definition(data: SplitterMixerData) -> dict:
    """Serialize to the definition format; parsing it back gives equal behaviour."""
    gen_perms = [data.A.perms[g] for g in data.A.generators]
    gen_labels = [data.label_of_a(data.A.index[p]) for p in gen_perms]
    parseable = {"1", *gen_labels}

    def a_word(idx: int) -> str:
        label = data.label_of_a(idx)
        return label if label in parseable else format_perm(data.A.perms[idx])

    def hom_doc(hom: Homomorphism) -> dict:
        return {data.B.labels[b]: a_word(hom.images[b]) for b in range(1, data.B.order)}

    return {
        "name": data.name,
        "d": data.d,
        "A": {"generators": [format_perm(p) for p in gen_perms], "labels": gen_labels},
        "B": {
            "labels": list(data.B.labels),
            "table": [[data.B.labels[v] for v in row] for row in data.B.table],
        },
        "phi": [
            {
                "preperiod": [hom_doc(h) for h in coord.preperiod],
                "period": [hom_doc(h) for h in coord.period],
            }
            for coord in data.phi.coords
        ],
    }


def dumps_definition(data: SplitterMixerData) -> str:
    return json.dumps(dump_definition(data), indent=2, sort_keys=True)


def load_group(source: str) -> SplitterMixerData:
    """Resolve a group source: a catalog id or a definition-file path."""
    if source.startswith("catalog:"):
        return catalog_from_id(source)
    path = Path(source)
    if not path.exists():
        raise DataError(f"no such group file: {source}")
    doc = json.loads(path.read_text(encoding="utf-8"))
    data = parse_definition(doc)
    if data.name == "file":
        data.name = path.stem
    return data
