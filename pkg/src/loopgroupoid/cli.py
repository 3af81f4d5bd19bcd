"""Command-line front end.

    loopgroupoid validate     DOC
    loopgroupoid inertia      DOC
    loopgroupoid sectors      DOC
    loopgroupoid h2           GROUP [--modulus M]
    loopgroupoid transgress   COCYCLE [ON]
    loopgroupoid local-system COCYCLE [ACTION]
    loopgroupoid morita-check LEFT RIGHT

Reports go to standard output as JSON (``--format json``, the default) or as
indented text.  Exit codes: 0 success, 1 invalid input, 2 a verification
failed, 3 a size cap or search budget was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from math import lcm
from pathlib import Path

from . import __version__
from .cohomology import DEFAULT_DIMENSION_CAP, GroupCocycle2, discrete_torsion, h2, is_cocycle
from .core import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    FiniteGroupoid,
    GAction,
    build_action,
    connected_components,
    isotropy,
    skeleton,
    validate_groupoid,
)
from .documents import Loader, as_groupoid, describe, dumps, jsonable
from .errors import CapExceeded, DecisionTimeout, LoopGroupoidError, SchemaError, ValidationError, VerificationFailure
from .gerbe import class_seed_check, gerbe_from_group_cocycle, inner_local_system, transgress
from .inertia import (
    hom_Z_groupoid,
    inertia_groupoid,
    twisted_sectors,
    verify_sector_equivalence,
)
from .morita import morita_equivalent, skeleton_diff

SCHEMA_VERSION = "1"
COMMANDS = ("validate", "inertia", "sectors", "h2", "transgress", "local-system", "morita-check")
EXIT_OK, EXIT_INVALID, EXIT_VERIFICATION, EXIT_CAP = 0, 1, 2, 3


@dataclass(frozen=True)
class JobSpec:
    command: str
    inputs: tuple[str, ...]
    inputs_dir: str | None = None
    modulus: int | None = None
    format: str = "json"
    cap_order: int = DEFAULT_ORDER_CAP
    cap_dimension: int = DEFAULT_DIMENSION_CAP
    seed: int = 0
    verify: str = "strict"

    @property
    def strict(self) -> bool:
        return self.verify == "strict"


class _Report:
    def __init__(self, job: JobSpec):
        self.job = job
        self.inputs = []
        self.results = {}
        self.verifications = {}

    def document(self) -> dict:
        job = self.job
        return {
            "schema": SCHEMA_VERSION,
            "command": job.command,
            "inputs": self.inputs,
            "options": {"modulus": job.modulus, "verify": job.verify, "seed": job.seed},
            "results": self.results,
            "verifications": self.verifications,
        }


def _load_inputs(job: JobSpec, report: _Report):
    loader = Loader(Path(job.inputs_dir) if job.inputs_dir else None, cap_order=job.cap_order)
    out = []
    for name in job.inputs:
        base = Path(name)
        if job.inputs_dir is None:
            loader.base = base.parent
            name = base.name
        obj = loader.load_file(name)
        report.inputs.append({"file": name, **describe(obj)})
        out.append(obj)
    return out


def _need(obj, cls, what, position):
    if not isinstance(obj, cls):
        raise SchemaError(f"input {position}", f"expected a {what}")
    return obj


def _skeleton_rows(K: FiniteGroupoid):
    return [
        {"size": e.size, "isotropy_order": e.isotropy.order, "least_object": jsonable(_obj_label(K, e.objects[0]))}
        for e in skeleton(K)
    ]


def _obj_label(K, x):
    return K.object_labels[x] if K.object_labels is not None else x


def _arrow_label(K, a):
    return K.arrow_labels[a] if K.arrow_labels is not None else a


# ---------------------------------------------------------------------------
# commands


def _validate(job, report, objs):
    (obj,) = objs
    r = report.results
    if isinstance(obj, FiniteGroup):
        r.update(order=obj.order, abelian=obj.is_abelian(), exponent=obj.exponent,
                 element_orders=list(obj.element_orders))
        report.verifications["group_axioms"] = True
    elif isinstance(obj, GAction):
        r.update(group_order=obj.group.order, points=obj.points, orbits=[list(o) for o in obj.orbits()])
        report.verifications["action_axioms"] = True
    elif isinstance(obj, GroupCocycle2):
        r.update(modulus=obj.modulus, normalized=obj.is_normalized())
        report.verifications["cocycle_identity"] = bool(is_cocycle(obj))
    else:
        r.update(objects=obj.num_objects, arrows=obj.num_arrows, components=len(connected_components(obj)))
        report.verifications["groupoid_axioms"] = validate_groupoid(obj).ok


def _inertia(job, report, objs):
    K = as_groupoid(objs[0])
    IK = inertia_groupoid(K)
    check = validate_groupoid(IK)
    if not check.ok:
        raise VerificationFailure("inertia groupoid fails the groupoid axioms", detail=check.summary())
    report.results.update(
        objects=IK.num_objects,
        arrows=IK.num_arrows,
        components=len(connected_components(IK)),
        skeleton=[
            {"size": e.size, "isotropy_order": e.isotropy.order,
             "least_loop": jsonable(_arrow_label(K, IK.object_labels[e.objects[0]]))}
            for e in skeleton(IK)
        ],
    )
    report.verifications["inertia_groupoid_axioms"] = True
    if job.strict:
        model = hom_Z_groupoid(K, IK)
        if not model.verify():
            raise VerificationFailure("Hom(Z, K) does not match the inertia groupoid")
        report.verifications["hom_Z_bijection"] = True


def _as_action(obj, position) -> GAction:
    if isinstance(obj, FiniteGroup):
        return build_action(obj, [(0,)] * obj.order)
    return _need(obj, GAction, "group or action", position)


def _sectors(job, report, objs):
    A = _as_action(objs[0], 0)
    G = A.group
    dec = twisted_sectors(A)
    rows = []
    for s in dec.sectors:
        comps = connected_components(s.groupoid) if not s.empty else []
        rows.append({
            "representative": jsonable(G.label(s.representative)),
            "class_size": len(s.class_members),
            "fixed_points": len(s.fixed_points),
            "centralizer_order": s.centralizer.order,
            "components": len(comps),
            "empty": s.empty,
        })
    total = sum(len(s.class_members) * len(s.fixed_points) for s in dec.sectors)
    report.results.update(sectors=rows, weighted_fixed_point_count=total)
    IK = inertia_groupoid(as_groupoid(A))
    report.verifications["counting_identity"] = total == IK.num_objects
    if total != IK.num_objects:
        raise VerificationFailure("Σ |class|·|X^g| differs from the number of inertia objects")
    if job.strict:
        eq = verify_sector_equivalence(A)
        report.verifications.update({k: v for k, v in eq.checks.items()})
        report.results["certificate_isotropy_orders"] = list(eq.certificate.isotropy_orders)
    else:
        cert = morita_equivalent(IK, dec.union())
        if cert is None:
            raise VerificationFailure("inertia groupoid is not equivalent to the sector union")
        report.verifications["certificate_found"] = True
        report.results["certificate_isotropy_orders"] = list(cert.isotropy_orders)


def _h2(job, report, objs):
    G = _need(objs[0], FiniteGroup, "group", 0)
    m = job.modulus or G.order
    H = h2(G, m, cap=job.cap_dimension, verify=job.strict)
    T = discrete_torsion(G, m, cap=job.cap_dimension, verify=job.strict)
    report.results["cohomology"] = {k: v for k, v in H.to_dict().items() if k != "checks"}
    report.results["discrete_torsion"] = {k: v for k, v in T.to_dict().items() if k != "checks"}
    complete = m % G.order == 0
    if not complete:
        full = discrete_torsion(G, lcm(m, G.order), cap=job.cap_dimension, verify=False)
        complete = _size(full.invariant_factors) == _size(T.invariant_factors)
    report.results["modulus_sees_all_discrete_torsion"] = complete
    report.verifications["generator_orders"] = bool(H.checks.get("generators_verified", False))
    report.verifications["torsion_generator_orders"] = bool(T.checks.get("generators_verified", False))


def _size(fs):
    out = 1
    for d in fs:
        out *= d
    return out


def _transgress(job, report, objs):
    theta = _need(objs[0], GroupCocycle2, "cocycle", 0)
    K = as_groupoid(objs[1]) if len(objs) > 1 else as_groupoid(theta.group)
    gb = gerbe_from_group_cocycle(theta, K)
    T = transgress(gb, check=job.strict)
    IK = T.inertia
    report.results.update(
        modulus=theta.modulus,
        rho=[
            {"loop": jsonable(_arrow_label(K, a)), "arrow": jsonable(_arrow_label(K, v)), "value": T.rho[i]}
            for i, (a, v) in enumerate(IK.arrow_labels)
        ],
    )
    if job.strict:
        report.verifications["morphism_identity"] = True
        report.verifications["composable_pairs_checked"] = T.checks["morphism_pairs_checked"]


def _local_system(job, report, objs):
    theta = _need(objs[0], GroupCocycle2, "cocycle", 0)
    A = _as_action(objs[1], 1) if len(objs) > 1 else _as_action(theta.group, 1)
    sample = None if job.strict else 4
    L = inner_local_system(theta, A, verify=True, sample=sample, seed=job.seed)
    report.results.update(L.to_dict(roots=True))
    checks = report.results.pop("checks")
    report.verifications.update(checks)
    if job.strict:
        seed_check = class_seed_check(theta)
        if not seed_check:
            raise VerificationFailure("character depends on the seeding class member", detail=seed_check.witness)
        report.verifications["class_seed_independence"] = True


def _morita_check(job, report, objs):
    K, L = as_groupoid(objs[0]), as_groupoid(objs[1])
    cert = morita_equivalent(K, L)
    report.results["equivalent"] = cert is not None
    if cert is None:
        report.results["difference"] = skeleton_diff(K, L)
        return
    report.results["certificate"] = cert.to_dict()
    report.results["left_skeleton"] = _skeleton_rows(K)
    report.results["right_skeleton"] = _skeleton_rows(L)
    if job.strict:
        if not cert.verify():
            raise VerificationFailure("certificate fails re-verification")
        report.verifications["certificate_verified"] = True
        for m in cert.matches:
            if isotropy(K, m.left.objects[0]).order != isotropy(L, m.right.objects[0]).order:
                raise VerificationFailure("paired isotropy orders differ")


_ARITY = {
    "validate": (1, 1),
    "inertia": (1, 1),
    "sectors": (1, 1),
    "h2": (1, 1),
    "transgress": (1, 2),
    "local-system": (1, 2),
    "morita-check": (2, 2),
}

_HANDLERS = {
    "validate": _validate,
    "inertia": _inertia,
    "sectors": _sectors,
    "h2": _h2,
    "transgress": _transgress,
    "local-system": _local_system,
    "morita-check": _morita_check,
}


def run(job: JobSpec) -> tuple[int, dict]:
    """Execute a job; the exit code and the report document."""
    report = _Report(job)
    lo, hi = _ARITY[job.command]
    try:
        if not lo <= len(job.inputs) <= hi:
            raise SchemaError("$", f"{job.command} takes {lo if lo == hi else f'{lo} or {hi}'} input(s)")
        if job.modulus is not None and job.modulus < 1:
            raise SchemaError("--modulus", "modulus must be at least 1")
        objs = _load_inputs(job, report)
        _HANDLERS[job.command](job, report, objs)
        doc = report.document()
        doc["status"] = "ok"
        return EXIT_OK, doc
    except ValidationError as exc:
        code, status, err = EXIT_INVALID, "invalid_input", exc
    except VerificationFailure as exc:
        code, status, err = EXIT_VERIFICATION, "verification_failed", exc
    except (CapExceeded, DecisionTimeout) as exc:
        code, status, err = EXIT_CAP, "cap_exceeded", exc
    doc = report.document()
    doc["status"] = status
    doc["error"] = {"type": type(err).__name__, "message": str(err), "witness": _plain(_witness(err))}
    return code, doc


def _witness(exc):
    return getattr(exc, "witness", None) if isinstance(exc, ValidationError) else getattr(exc, "detail", None)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


def render_text(doc, indent: int = 0) -> str:
    """Indented ``key: value`` rendering; keys sorted like the JSON form."""
    lines: list[str] = []
    _render(doc, indent, lines)
    return "\n".join(lines) + "\n"


def _scalar(v) -> str:
    return json.dumps(v, ensure_ascii=False)


def _render(x, depth, lines):
    pad = "  " * depth
    if isinstance(x, dict):
        for k in sorted(x):
            v = x[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                _render(v, depth + 1, lines)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(x, list):
        for v in x:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}-")
                _render(v, depth + 1, lines)
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(x)}")


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(e, (dict, list)) or _flat(e) for e in v) and len(v) <= 16


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--inputs", metavar="DIR", help="directory that input names and references resolve against")
    common.add_argument("--modulus", type=int, help="coefficient modulus m (default: the group order)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--cap-order", type=int, default=DEFAULT_ORDER_CAP, metavar="N")
    common.add_argument("--cap-dimension", type=int, default=DEFAULT_DIMENSION_CAP, metavar="N",
                        help="largest |G|² accepted by h2")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks under --verify fast")
    common.add_argument("--verify", choices=("strict", "fast"), default="strict")

    parser = argparse.ArgumentParser(prog="loopgroupoid", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "validate": "parse a document and re-check its axioms",
        "inertia": "inertia groupoid of a group, action or groupoid",
        "sectors": "twisted sectors of an action and their equivalence with the inertia groupoid",
        "h2": "H²(G, ℤ/m) and its image in H²(G, U(1))",
        "transgress": "transgression of a group cocycle to the inertia groupoid",
        "local-system": "inner local system (one character per twisted sector)",
        "morita-check": "decide Morita equivalence of two groupoids",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        lo, hi = _ARITY[name]
        p.add_argument("documents", nargs="+" if lo < hi else lo, metavar="DOC")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = JobSpec(
        command=args.command,
        inputs=tuple(args.documents),
        inputs_dir=args.inputs,
        modulus=args.modulus,
        format=args.format,
        cap_order=args.cap_order,
        cap_dimension=args.cap_dimension,
        seed=args.seed,
        verify=args.verify,
    )
    try:
        code, doc = run(job)
    except LoopGroupoidError as exc:  # pragma: no cover - every subclass is mapped in run
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    sys.stdout.write(dumps(doc) if job.format == "json" else render_text(doc))
    if code:
        print(f"{doc['status']}: {doc['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
