"""JSON documents for groups, actions, cocycles and groupoids.

Every document is an object with a ``kind`` field:

    {"kind": "group", "table": [[...], ...]}
    {"kind": "group", "degree": n, "generators": [[...], ...]}
    {"kind": "group", "catalog": "D4"}
    {"kind": "action", "group": REF, "points": n, "generator_images": {"1": [...], ...}}
    {"kind": "cocycle", "group": REF, "modulus": m, "values": [[...], ...]}
    {"kind": "groupoid", "construction": "inertia", "of": REF}
    {"kind": "groupoid", "objects": n, "source": [...], "target": [...],
     "identity": [...], "inverse": [...], "compose": [[a, b, ab], ...]}

A ``REF`` is either an inline document or the name of a sibling file.
Keys of ``generator_images`` are element indices as decimal strings, or
``"g0"``, ``"g1"``, ... naming the generators of a permutation-generated
group document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .cohomology import GroupCocycle2, build_cocycle
from .core import (
    DEFAULT_ORDER_CAP,
    DEFAULT_POINTS_CAP,
    FiniteGroup,
    FiniteGroupoid,
    GAction,
    action_from_generator_images,
    action_groupoid,
    build_group_from_permutations,
    build_group_from_table,
    delooping,
    disjoint_union,
    validate_groupoid,
)
from .errors import SchemaError, ValidationError
from .groups import small_groups
from .inertia import conjugacy_classes, inertia_groupoid, twisted_sectors

CONSTRUCTIONS = ("delooping", "action", "inertia", "centralizer_union", "sector_union")
MAX_REF_DEPTH = 16


@dataclass
class Loader:
    base: Path | None = None
    cap_order: int = DEFAULT_ORDER_CAP
    cap_points: int = DEFAULT_POINTS_CAP

    def load_file(self, name: str, path: str = "$", depth: int = 0):
        p = Path(name)
        if not p.is_absolute() and self.base is not None:
            p = self.base / p
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as exc:
            raise SchemaError(path, f"cannot read {name!r}: {exc.strerror or exc}")
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(path, f"{name!r} is not valid JSON: {exc.msg} at line {exc.lineno}")
        return self.parse(doc, path=f"{path}<{p.name}>", depth=depth + 1)

    def resolve(self, ref, path: str, depth: int):
        if depth > MAX_REF_DEPTH:
            raise SchemaError(path, "references nest too deeply")
        if isinstance(ref, str):
            return self.load_file(ref, path, depth)
        if isinstance(ref, dict):
            return self.parse(ref, path, depth + 1)
        raise SchemaError(path, "expected an inline document or a file name")

    def parse(self, doc, path: str = "$", depth: int = 0):
        if not isinstance(doc, dict):
            raise SchemaError(path, "document must be a JSON object")
        kind = doc.get("kind")
        parser = {
            "group": self._group,
            "action": self._action,
            "cocycle": self._cocycle,
            "groupoid": self._groupoid,
        }.get(kind)
        if parser is None:
            raise SchemaError(f"{path}.kind", f"unknown kind {kind!r}; expected group, action, cocycle or groupoid")
        return parser(doc, path, depth)

    # -- groups -------------------------------------------------------------

    def _group(self, doc, path, depth) -> FiniteGroup:
        forms = [k for k in ("table", "generators", "catalog") if k in doc]
        if len(forms) != 1:
            raise SchemaError(path, "a group needs exactly one of 'table', 'generators' or 'catalog'")
        form = forms[0]
        if form == "table":
            table = _int_matrix(doc["table"], f"{path}.table")
            labels = doc.get("elements")
            if labels is not None:
                if not isinstance(labels, list):
                    raise SchemaError(f"{path}.elements", "expected a list")
                labels = [_tupled(x) for x in labels]
            return build_group_from_table(table, elements=labels, cap=self.cap_order)
        if form == "generators":
            degree = _int(doc.get("degree"), f"{path}.degree")
            gens = doc["generators"]
            if not isinstance(gens, list):
                raise SchemaError(f"{path}.generators", "expected a list of permutations")
            gens = [_int_list(g, f"{path}.generators[{i}]") for i, g in enumerate(gens)]
            return build_group_from_permutations(degree, gens or [list(range(degree))], cap=self.cap_order)
        name = doc["catalog"]
        catalog = small_groups()
        if name not in catalog:
            raise SchemaError(f"{path}.catalog", f"unknown group {name!r}; known: {', '.join(sorted(catalog))}")
        return catalog[name]

    def _group_with_generators(self, ref, path, depth):
        # The generator list matters for "g<i>" keys, so peek at the document.
        doc = ref
        if isinstance(ref, str):
            p = Path(ref)
            if not p.is_absolute() and self.base is not None:
                p = self.base / p
            try:
                doc = json.loads(p.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError):
                doc = None
        G = self.resolve(ref, path, depth)
        if not isinstance(G, FiniteGroup):
            raise SchemaError(path, "expected a group")
        gens = None
        if isinstance(doc, dict) and "generators" in doc and G.elements is not None:
            index = {tuple(e): i for i, e in enumerate(G.elements)}
            gens = [index.get(tuple(int(v) for v in g)) for g in doc["generators"]]
        return G, gens

    # -- actions ------------------------------------------------------------

    def _action(self, doc, path, depth) -> GAction:
        for key in ("group", "points", "generator_images"):
            if key not in doc:
                raise SchemaError(path, f"missing field {key!r}")
        G, gens = self._group_with_generators(doc["group"], f"{path}.group", depth)
        points = _int(doc["points"], f"{path}.points")
        images = doc["generator_images"]
        if not isinstance(images, dict):
            raise SchemaError(f"{path}.generator_images", "expected an object")
        resolved = {}
        for key, perm in images.items():
            kp = f"{path}.generator_images.{key}"
            if isinstance(key, str) and key.startswith("g") and key[1:].isdigit():
                i = int(key[1:])
                if gens is None or i >= len(gens) or gens[i] is None:
                    raise SchemaError(kp, "generator names need a group given by generators")
                g = gens[i]
            else:
                try:
                    g = int(key)
                except ValueError:
                    raise SchemaError(kp, "keys must be element indices or g0, g1, ...")
            if not 0 <= g < G.order:
                raise SchemaError(kp, f"element {g} is not in a group of order {G.order}")
            resolved[g] = _int_list(perm, kp)
        return action_from_generator_images(G, points, resolved, cap_points=self.cap_points)

    # -- cocycles -----------------------------------------------------------

    def _cocycle(self, doc, path, depth) -> GroupCocycle2:
        for key in ("group", "modulus", "values"):
            if key not in doc:
                raise SchemaError(path, f"missing field {key!r}")
        G = self.resolve(doc["group"], f"{path}.group", depth)
        if not isinstance(G, FiniteGroup):
            raise SchemaError(f"{path}.group", "expected a group")
        m = _int(doc["modulus"], f"{path}.modulus")
        if m < 1:
            raise SchemaError(f"{path}.modulus", "modulus must be at least 1")
        values = _int_matrix(doc["values"], f"{path}.values")
        if len(values) != G.order or any(len(r) != G.order for r in values):
            raise SchemaError(f"{path}.values", f"expected a {G.order}×{G.order} table")
        return build_cocycle(G, m, values)

    # -- groupoids ----------------------------------------------------------

    def _groupoid(self, doc, path, depth) -> FiniteGroupoid:
        if "construction" in doc:
            c = doc["construction"]
            if c not in CONSTRUCTIONS:
                raise SchemaError(f"{path}.construction", f"unknown construction {c!r}")
            if "of" not in doc:
                raise SchemaError(path, "missing field 'of'")
            base = self.resolve(doc["of"], f"{path}.of", depth)
            return construct(c, base, f"{path}.of")
        for key in ("objects", "source", "target", "identity", "inverse", "compose"):
            if key not in doc:
                raise SchemaError(path, f"missing field {key!r}")
        n = _int(doc["objects"], f"{path}.objects")
        triples = _int_matrix(doc["compose"], f"{path}.compose", square=False)
        compose = {}
        for i, tr in enumerate(triples):
            if len(tr) != 3:
                raise SchemaError(f"{path}.compose[{i}]", "expected [a, b, a·b]")
            compose[(tr[0], tr[1])] = tr[2]
        K = FiniteGroupoid(
            num_objects=n,
            source=tuple(_int_list(doc["source"], f"{path}.source")),
            target=tuple(_int_list(doc["target"], f"{path}.target")),
            identity=tuple(_int_list(doc["identity"], f"{path}.identity")),
            inverse=tuple(_int_list(doc["inverse"], f"{path}.inverse")),
            compose=compose,
        )
        report = validate_groupoid(K)
        if not report.ok:
            v = report.violations[0]
            raise ValidationError(f"groupoid axiom '{v.kind}' fails: {v.message}", witness=v.witness)
        return K


def construct(construction: str, base, path: str = "$") -> FiniteGroupoid:
    def need(kind, cls):
        if not isinstance(base, cls):
            raise SchemaError(path, f"construction {construction!r} needs a {kind}")

    if construction == "delooping":
        need("group", FiniteGroup)
        return delooping(base)
    if construction == "action":
        need("action", GAction)
        return action_groupoid(base)
    if construction == "inertia":
        return inertia_groupoid(as_groupoid(base))
    if construction == "centralizer_union":
        need("group", FiniteGroup)
        data = conjugacy_classes(base)
        return disjoint_union([delooping(C) for C in data.centralizers])
    need("action", GAction)
    return twisted_sectors(base).union()


def as_groupoid(obj) -> FiniteGroupoid:
    if isinstance(obj, FiniteGroupoid):
        return obj
    if isinstance(obj, FiniteGroup):
        return delooping(obj)
    if isinstance(obj, GAction):
        return action_groupoid(obj)
    raise SchemaError("$", "expected a group, action or groupoid")


def parse_input(document, base: str | Path | None = None, cap_order: int = DEFAULT_ORDER_CAP,
                cap_points: int = DEFAULT_POINTS_CAP):
    """Validated domain object from a parsed JSON document."""
    return Loader(Path(base) if base is not None else None, cap_order, cap_points).parse(document)


def load(path: str | Path, cap_order: int = DEFAULT_ORDER_CAP, cap_points: int = DEFAULT_POINTS_CAP):
    p = Path(path)
    return Loader(p.parent, cap_order, cap_points).load_file(p.name)


# ---------------------------------------------------------------------------
# serialization


def jsonable(label):
    if isinstance(label, tuple):
        return [jsonable(x) for x in label]
    return label


def _tupled(x):
    if isinstance(x, list):
        return tuple(_tupled(v) for v in x)
    return x


def serialize(obj) -> dict:
    if isinstance(obj, FiniteGroup):
        doc = {"kind": "group", "table": [list(r) for r in obj.table]}
        if obj.elements is not None:
            doc["elements"] = [jsonable(e) for e in obj.elements]
        return doc
    if isinstance(obj, GAction):
        return {
            "kind": "action",
            "group": serialize(obj.group),
            "points": obj.points,
            "generator_images": {str(g): list(obj.action[g]) for g in range(obj.group.order)},
        }
    if isinstance(obj, GroupCocycle2):
        return {
            "kind": "cocycle",
            "group": serialize(obj.group),
            "modulus": obj.modulus,
            "values": [list(r) for r in obj.values],
        }
    if isinstance(obj, FiniteGroupoid):
        return {
            "kind": "groupoid",
            "objects": obj.num_objects,
            "source": list(obj.source),
            "target": list(obj.target),
            "identity": list(obj.identity),
            "inverse": list(obj.inverse),
            "compose": [[a, b, c] for (a, b), c in sorted(obj.compose.items())],
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# field helpers


def _int(v, path) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(path, f"expected an integer, got {type(v).__name__}")
    return v


def _int_list(v, path) -> list[int]:
    if not isinstance(v, list):
        raise SchemaError(path, "expected a list of integers")
    return [_int(x, f"{path}[{i}]") for i, x in enumerate(v)]


def _int_matrix(v, path, square=True) -> list[list[int]]:
    if not isinstance(v, list) or not v and square:
        raise SchemaError(path, "expected a nonempty list of rows")
    return [_int_list(row, f"{path}[{i}]") for i, row in enumerate(v)]


def describe(obj) -> dict:
    """Short echo of a parsed input for reports."""
    if isinstance(obj, FiniteGroup):
        return {"kind": "group", "order": obj.order}
    if isinstance(obj, GAction):
        return {"kind": "action", "group_order": obj.group.order, "points": obj.points}
    if isinstance(obj, GroupCocycle2):
        return {"kind": "cocycle", "group_order": obj.group.order, "modulus": obj.modulus}
    if isinstance(obj, FiniteGroupoid):
        return {"kind": "groupoid", "objects": obj.num_objects, "arrows": obj.num_arrows}
    return {"kind": type(obj).__name__}

