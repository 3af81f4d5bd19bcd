import io
import json
import os
import subprocess
import sys
from contextlib import redirect_stdout

import pytest

from conftest import FIXTURES, GOLDEN
from loopgroupoid.cli import JobSpec, main, render_text, run
from loopgroupoid.cohomology import GroupCocycle2
from loopgroupoid.core import FiniteGroup, FiniteGroupoid, GAction, action_groupoid
from loopgroupoid.documents import dumps, load, parse_input, serialize
from loopgroupoid.errors import InvalidCocycle, SchemaError, ValidationError
from loopgroupoid.groups import conjugation_action, klein_four, small_groups, swap_action, symmetric

# (golden name, command, inputs)
GOLDEN_JOBS = [
    ("sectors_s3", "sectors", ("s3_conjugation.json",)),
    ("sectors_klein", "sectors", ("klein_regular.json",)),
    ("h2_s3", "h2", ("s3.json",)),
    ("h2_klein", "h2", ("klein.json",)),
    ("local_system_s3", "local-system", ("s3_torsion.json", "s3_conjugation.json")),
    ("local_system_klein", "local-system", ("klein_torsion.json",)),
]


def cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def report_text(command, inputs, **options):
    code, doc = run(JobSpec(command, tuple(inputs), inputs_dir=str(FIXTURES), **options))
    return code, dumps(doc)


# -- parsing -----------------------------------------------------------------


def test_group_documents():
    assert parse_input({"kind": "group", "table": [[0, 1], [1, 0]]}).order == 2
    assert parse_input({"kind": "group", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}).order == 6
    assert parse_input({"kind": "group", "catalog": "Q8"}).order == 8


def test_invalid_cocycle_document_names_triple():
    doc = {"kind": "cocycle", "group": {"kind": "group", "catalog": "C3"}, "modulus": 3,
           "values": [[0, 0, 0], [0, 1, 0], [0, 0, 0]]}
    with pytest.raises(InvalidCocycle) as info:
        parse_input(doc)
    assert isinstance(info.value, ValidationError) and len(info.value.witness) == 3


def test_schema_errors_carry_paths():
    cases = [
        ([1, 2], "$"),
        ({"kind": "monoid"}, "$.kind"),
        ({"kind": "group"}, "$"),
        ({"kind": "group", "table": [[0, "x"], [1, 0]]}, "$.table"),
        ({"kind": "action", "group": {"kind": "group", "catalog": "C2"}, "points": 2,
          "generator_images": {"banana": [1, 0]}}, "$.generator_images"),
        ({"kind": "cocycle", "group": {"kind": "group", "catalog": "C2"}, "modulus": 0,
          "values": [[0, 0], [0, 0]]}, "$.modulus"),
        ({"kind": "groupoid", "construction": "loop", "of": {"kind": "group", "catalog": "C2"}}, "$.construction"),
    ]
    for doc, prefix in cases:
        with pytest.raises(SchemaError) as info:
            parse_input(doc)
        assert info.value.path.startswith(prefix), (doc, info.value.path)


def test_missing_reference(tmp_path):
    (tmp_path / "a.json").write_text('{"kind": "cocycle", "group": "nope.json", "modulus": 2, "values": []}')
    with pytest.raises(SchemaError):
        load(tmp_path / "a.json")


def test_axiom_violation_in_document():
    with pytest.raises(ValidationError):
        parse_input({"kind": "group", "table": [[0, 1, 2], [1, 0, 2], [2, 2, 2]]})


def test_fixtures_load():
    assert isinstance(load(FIXTURES / "s3.json"), FiniteGroup)
    A = load(FIXTURES / "s3_conjugation.json")
    assert isinstance(A, GAction) and A.action == conjugation_action(symmetric(3)).action
    assert isinstance(load(FIXTURES / "klein_torsion.json"), GroupCocycle2)
    assert isinstance(load(FIXTURES / "s3_inertia.json"), FiniteGroupoid)


def test_round_trip():
    objs = list(small_groups().values())
    objs += [swap_action(), conjugation_action(klein_four())]
    objs.append(GroupCocycle2.from_function(klein_four(), 2, lambda a, b: (a % 2) * (b // 2)))
    objs.append(action_groupoid(swap_action()))
    for obj in objs:
        doc = json.loads(dumps(serialize(obj)))
        back = parse_input(doc)
        if isinstance(obj, GAction):
            assert back.action == obj.action and back.group.table == obj.group.table
        elif isinstance(obj, FiniteGroupoid):
            assert (back.source, back.target, back.identity, back.inverse, back.compose) == (
                obj.source, obj.target, obj.identity, obj.inverse, obj.compose)
        elif isinstance(obj, GroupCocycle2):
            assert back.values == obj.values and back.group.table == obj.group.table
        else:
            assert back.table == obj.table


# -- reports and exit codes ----------------------------------------------------


def test_h2_klein_report():
    code, doc = run(JobSpec("h2", ("klein.json",), inputs_dir=str(FIXTURES), modulus=2))
    assert code == 0 and doc["schema"] == "1" and doc["status"] == "ok"
    res = doc["results"]
    assert res["discrete_torsion"]["invariant_factors"] == [2]
    assert len(res["discrete_torsion"]["generators"]) == 1
    assert res["cohomology"]["invariant_factors"] == [2, 2, 2]
    assert res["modulus_sees_all_discrete_torsion"] is True
    assert doc["verifications"]["generator_orders"]


def test_sectors_swap_report():
    code, doc = run(JobSpec("sectors", ("swap.json",), inputs_dir=str(FIXTURES)))
    assert code == 0
    assert [s["fixed_points"] for s in doc["results"]["sectors"]] == [3, 1]


def test_morita_check_report():
    code, doc = run(JobSpec("morita-check", ("s3_inertia.json", "s3_centralizers.json"), inputs_dir=str(FIXTURES)))
    assert code == 0 and doc["results"]["equivalent"]
    pairs = doc["results"]["certificate"]["pairs"]
    assert [p["isotropy_order"] for p in pairs] == [6, 2, 3]
    code, doc = run(JobSpec("morita-check", ("s3.json", "klein.json"), inputs_dir=str(FIXTURES)))
    assert code == 0 and not doc["results"]["equivalent"]


def test_other_commands_succeed():
    for command, inputs in [
        ("validate", ("s3_torsion.json",)),
        ("inertia", ("swap.json",)),
        ("transgress", ("klein_torsion.json",)),
        ("transgress", ("klein_torsion.json", "klein_regular.json")),
    ]:
        code, doc = run(JobSpec(command, inputs, inputs_dir=str(FIXTURES)))
        assert code == 0, doc


def test_exit_code_invalid(tmp_path):
    (tmp_path / "bad.json").write_text('{"kind": "group", "table": [[1, 0], [1, 0]]}')
    code, out = cli("validate", str(tmp_path / "bad.json"))
    assert code == 1 and json.loads(out)["error"]["type"] == "NoIdentity"
    (tmp_path / "junk.json").write_text("{not json")
    assert cli("validate", str(tmp_path / "junk.json"))[0] == 1
    assert cli("h2", "--modulus", "0", str(FIXTURES / "klein.json"))[0] == 1


def test_exit_code_verification(monkeypatch):
    import loopgroupoid.cli as mod

    def broken(A):
        from loopgroupoid.errors import EquivalenceFailure

        raise EquivalenceFailure("forced", {})

    monkeypatch.setattr(mod, "verify_sector_equivalence", broken)
    code, out = cli("sectors", "--inputs", str(FIXTURES), "swap.json")
    assert code == 2 and json.loads(out)["status"] == "verification_failed"


def test_exit_code_cap():
    code, out = cli("h2", "--inputs", str(FIXTURES), "--cap-dimension", "10", "s3.json")
    assert code == 3 and json.loads(out)["status"] == "cap_exceeded"
    assert cli("validate", "--inputs", str(FIXTURES), "--cap-order", "4", "s3.json")[0] == 3


def test_text_format():
    code, out = cli("h2", "--inputs", str(FIXTURES), "--format", "text", "klein.json")
    assert code == 0 and "invariant_factors" in out and not out.startswith("{")
    code, doc = run(JobSpec("h2", ("klein.json",), inputs_dir=str(FIXTURES)))
    assert render_text(doc) == out


def test_fast_mode_and_seed():
    a = report_text("local-system", ("s3_torsion.json", "s3_conjugation.json"), verify="fast", seed=1)
    b = report_text("local-system", ("s3_torsion.json", "s3_conjugation.json"), verify="fast", seed=1)
    assert a == b and a[0] == 0


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "loopgroupoid", "sectors", "--inputs", str(FIXTURES), "swap.json"],
        capture_output=True, text=True, check=False,
    )
    assert out.returncode == 0 and json.loads(out.stdout)["status"] == "ok"


# -- golden files --------------------------------------------------------------


@pytest.mark.parametrize("name,command,inputs", GOLDEN_JOBS, ids=[g[0] for g in GOLDEN_JOBS])
def test_golden(name, command, inputs):
    path = GOLDEN / f"{name}.json"
    code, first = report_text(command, inputs)
    _, second = report_text(command, inputs)
    assert code == 0 and first == second
    if os.environ.get("UPDATE_GOLDEN"):
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(first, encoding="utf-8")
    assert path.read_text(encoding="utf-8") == first
