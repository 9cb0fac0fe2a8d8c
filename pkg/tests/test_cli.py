from __future__ import annotations

import json

from conftest import FIXTURES
from tropsdp.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_member_verdicts(capsys):
    code, out, _ = run(capsys, "member", FIXTURES / "line_pencil.json", "--at", "0,0,0")
    assert code == 0
    assert json.loads(out) == {"member": True, "predicate": "metzler"}
    code, out, _ = run(capsys, "member", FIXTURES / "line_pencil.json", "--at", "0,0,-1")
    assert code == 1
    assert json.loads(out)["member"] is False
    code, out, _ = run(capsys, "member", FIXTURES / "quadrant_ray.json", "--at", "0,1,1")
    assert code == 0
    assert json.loads(out)["predicate"] == "general"


def test_member_affine_point_length(capsys):
    code, out, _ = run(capsys, "member", FIXTURES / "affine_quadrant.json", "--at=-1,-inf")
    assert code == 0 and json.loads(out)["member"] is True
    code, _, err = run(capsys, "member", FIXTURES / "affine_quadrant.json", "--at", "0,0,0")
    assert code == 2 and "expected 2 coordinates" in err


def test_member_malformed_inputs(capsys):
    code, _, err = run(capsys, "member", FIXTURES / "line_pencil.json", "--at", "0,0,q/0")
    assert code == 2 and "bad coordinate" in err
    code, _, err = run(capsys, "member", FIXTURES / "nonexistent.json", "--at", "0")
    assert code == 2


def test_generic_exit_codes(capsys):
    code, out, _ = run(capsys, "generic", FIXTURES / "line_pencil.json")
    assert code == 1
    obj = json.loads(out)
    assert obj["status"] == "witness" and obj["x"] == ["0", "0", "0"]
    code, out, _ = run(capsys, "generic", FIXTURES / "m1_distinct.json")
    assert code == 0 and json.loads(out) == {"status": "generic"}
    code, _, err = run(capsys, "generic", FIXTURES / "polygon9.json")
    assert code == 2 and "DimensionTooLarge" in err
    code, _, _ = run(capsys, "generic", FIXTURES / "polygon9.json", "--max-m", "9")
    assert code == 0


def test_hypergraph_output(capsys):
    code, out, _ = run(capsys, "hypergraph", FIXTURES / "line_pencil.json", "--at", "0,0,0")
    assert code == 0
    obj = json.loads(out)
    assert obj["edges"] == [
        {"tails": [0], "head": 1},
        {"tails": [0], "head": 2},
        {"tails": [1, 2], "head": 0},
    ]
    assert obj["circulation"] == {"0": "1/3", "1": "1/3", "2": "1/3"}
    assert obj["direction"] is None


def test_decompose_round_trips(capsys):
    code, out, _ = run(
        capsys, "decompose", FIXTURES / "quadrant_ray.json", "--diamond", "1,2:>="
    )
    assert code == 0
    from tropsdp.pencils import pencil_from_obj

    piece, homogeneous = pencil_from_obj(json.loads(out))
    assert homogeneous and piece.m == 3 and piece.is_metzler


def test_slice_quadrant_union_diagonal(capsys):
    code, out, _ = run(
        capsys,
        "slice",
        FIXTURES / "quadrant_ray.json",
        "--fix",
        "x0=0",
        "--box=-2,2",
        "--step",
        "1",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x1,x2,member"
    members = {
        (a, b)
        for a, b, v in (line.split(",") for line in lines[1:])
        if v == "1"
    }
    expected = set()
    for a in range(-2, 3):
        for b in range(-2, 3):
            if (a <= 0 and b <= 0) or a == b:
                expected.add((str(a), str(b)))
    assert members == expected


def test_slice_errors(capsys):
    code, _, err = run(
        capsys, "slice", FIXTURES / "quadrant_ray.json", "--fix", "x0=0",
        "--box=-2,2", "--step", "0",
    )
    assert code == 2 and "step" in err
    code, _, err = run(
        capsys, "slice", FIXTURES / "quadrant_ray.json", "--box=-2,2", "--step", "1"
    )
    assert code == 2 and "free variables" in err


def test_validate_zero_failures(capsys):
    code, out, err = run(
        capsys, "validate", FIXTURES / "m1_distinct.json", "--box=-2,2", "--step", "1"
    )
    assert code == 0
    records = [json.loads(line) for line in out.strip().splitlines()]
    assert len(records) == 25
    assert all(r["ok"] for r in records)
    assert "0 failures" in err
    code, _, err = run(capsys, "validate", FIXTURES / "line_pencil.json")
    assert code == 2 and "NotCertified" in err


def test_cli_determinism(capsys):
    first = run(capsys, "slice", FIXTURES / "polygon9.json", "--fix", "x0=0",
                "--box", "0,8", "--step", "1/2")
    second = run(capsys, "slice", FIXTURES / "polygon9.json", "--fix", "x0=0",
                 "--box", "0,8", "--step", "1/2")
    assert first == second
    g1 = run(capsys, "generic", FIXTURES / "line_pencil.json")
    g2 = run(capsys, "generic", FIXTURES / "line_pencil.json")
    assert g1 == g2


def test_every_fixture_parses_and_round_trips():
    from tropsdp.pencils import load_pencil, pencil_from_obj, pencil_to_obj

    fixtures = sorted(FIXTURES.glob("*.json"))
    assert fixtures
    for path in fixtures:
        pencil, homogeneous = load_pencil(path)
        roundtrip = pencil_from_obj(pencil_to_obj(pencil, homogeneous))
        assert roundtrip == (pencil, homogeneous)
