import io
import json
from contextlib import redirect_stdout
from pathlib import Path

from polyhodge import cli
from polyhodge.laurent import LaurentPoly

DATA = Path(__file__).parent / "data"
CONCRETE = str(DATA / "concrete_curve.json")


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def write_input(tmp_path, obj, name="input.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_parse_worked_example():
    parsed = cli.parse_input(CONCRETE)
    assert parsed.polytope.vertices == ((0, 0), (0, 4), (4, 0))
    s = cli.build_complex(parsed)
    assert len(s.maximal_cells) == 4


def test_parse_vertices_only_gives_trivial_subdivision(tmp_path):
    path = write_input(
        tmp_path,
        {"dim": 2, "points": [{"coords": [0, 0]}, {"coords": [2, 0]}, {"coords": [0, 2]}]},
    )
    parsed = cli.parse_input(path)
    assert parsed.height_fn is None
    s = cli.build_complex(parsed)
    assert len(s.maximal_cells) == 1


def test_parse_rejects_rational_coordinates(tmp_path):
    path = write_input(
        tmp_path,
        {"dim": 2, "points": [{"coords": [0, 0]}, {"coords": [1.5, 0]}, {"coords": [0, 1]}]},
    )
    code, _ = run_cli(["hstar", path])
    assert code == 1


def test_parse_rejects_bad_schema(tmp_path):
    for bad in (
        {"points": []},
        {"dim": 2, "points": "nope"},
        {"dim": 2, "points": [{"coords": [1]}]},
        {"dim": 2, "points": [{"coords": [0, 0], "height": 1.25}]},
    ):
        path = write_input(tmp_path, bad)
        code, _ = run_cli(["hstar", path])
        assert code == 1
    code, _ = run_cli(["hstar", str(tmp_path / "missing.json")])
    assert code == 1


def test_hodge_command_on_worked_example():
    code, out = run_cli(["hodge", CONCRETE])
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    e = LaurentPoly.from_json_obj(report["results"]["refined_E"]["terms"])
    from polyhodge.laurent import U, V, W

    assert e == -11 - 3 * (1 + U * V) * W + U * V * W**2
    assert report["results"]["euler_characteristic"] == "-16"
    assert report["results"]["nearby_fiber_class"]["pretty"] == "-14 - 2*L"
    assert report["tables"]["refined_hodge_numbers"] == {
        "0,0,0": "9",
        "0,0,1": "3",
        "1,1,1": "3",
    }


def test_output_is_deterministic():
    code1, out1 = run_cli(["invariants", CONCRETE])
    code2, out2 = run_cli(["invariants", CONCRETE])
    assert code1 == code2 == 0
    assert out1 == out2


def test_polynomials_round_trip_through_schema():
    _, out = run_cli(["invariants", CONCRETE])
    report = json.loads(out)
    for value in report["results"].values():
        if isinstance(value, dict) and "terms" in value:
            p = LaurentPoly.from_json_obj(value["terms"])
            assert p.to_json_obj() == value["terms"]


def test_verify_on_unimodular_simplex(tmp_path):
    path = write_input(
        tmp_path,
        {"dim": 2, "points": [{"coords": [0, 0]}, {"coords": [1, 0]}, {"coords": [0, 1]}]},
    )
    code, out = run_cli(["verify", path])
    assert code == 0
    report = json.loads(out)
    assert report["checks"]
    assert all(c["status"] != "fail" for c in report["checks"])


def test_verify_with_random_instances(tmp_path):
    path = write_input(
        tmp_path,
        {"dim": 1, "points": [{"coords": [0]}, {"coords": [2]}]},
    )
    code, out = run_cli(["verify", path, "--random", "2", "--seed", "5"])
    assert code == 0
    report = json.loads(out)
    assert any(c["name"].startswith("random[") for c in report["checks"])


def test_dk_check_command():
    code, out = run_cli(["dk-check", CONCRETE])
    assert code == 0
    report = json.loads(out)
    assert report["checks"][0]["status"] == "pass"
    assert report["results"]["refined_E"] == report["results"]["reconstructed_E"]


def test_stringy_command(tmp_path):
    path = write_input(
        tmp_path,
        {
            "dim": 2,
            "points": [
                {"coords": [1, 1]},
                {"coords": [1, -1]},
                {"coords": [-1, 1]},
                {"coords": [-1, -1]},
            ],
        },
    )
    code, out = run_cli(["stringy", path])
    assert code == 0
    report = json.loads(out)
    assert report["results"]["stringy_E"]["pretty"] == "1 - v*w - u*w + u*v*w^2"


def test_stringy_rejects_non_reflexive(tmp_path):
    path = write_input(
        tmp_path,
        {"dim": 2, "points": [{"coords": [0, 0]}, {"coords": [1, 0]}, {"coords": [0, 1]}]},
    )
    code, _ = run_cli(["stringy", path])
    assert code == 2


def test_intersection_command():
    code, out = run_cli(["intersection", CONCRETE])
    assert code == 0
    report = json.loads(out)
    assert report["checks"][0]["status"] == "pass"
    assert report["results"]["intersection_E"]["pretty"] == "1 - 3*w - 3*u*v*w + u*v*w^2"


def test_gpoly_and_hstar_commands():
    code, out = run_cli(["gpoly", CONCRETE])
    assert code == 0
    report = json.loads(out)
    assert report["results"]["g"]["pretty"] == "1"
    assert report["results"]["intersection_lefschetz"]["pretty"] == "1 + t"
    code, out = run_cli(["hstar", CONCRETE, "--max-dilation", "3"])
    report = json.loads(out)
    assert report["tables"]["ehrhart"] == {"0": "1", "1": "15", "2": "45", "3": "91"}
    assert report["results"]["h_star"]["pretty"] == "1 + 12*u + 3*u^2"


def test_subfan_input(tmp_path):
    data = json.loads(Path(CONCRETE).read_text())
    # the zero cone alone: partial compactification equals the open E
    data["subfan"] = [{"rays": []}]
    path = write_input(tmp_path, data)
    code, out = run_cli(["hodge", path])
    assert code == 0
    report = json.loads(out)
    assert (
        report["results"]["partial_compactification_E"]
        == report["results"]["refined_E"]
    )
    # the full fan
    data["subfan"] = [
        {"rays": []},
        {"rays": [[1, 0]]},
        {"rays": [[0, 1]]},
        {"rays": [[-1, -1]]},
    ]
    path = write_input(tmp_path, data, "full.json")
    code, out = run_cli(["hodge", path])
    assert code == 0
    report = json.loads(out)
    assert (
        report["results"]["partial_compactification_E"]["pretty"]
        == "1 - 3*w - 3*u*v*w + u*v*w^2"
    )


def test_refinement_input(tmp_path):
    data = json.loads(Path(CONCRETE).read_text())
    data["subfan"] = [{"rays": []}, {"rays": [[1, 0]]}]
    data["refinement"] = [
        {"rays": [[1, 0]], "sigma": 1},
    ]
    path = write_input(tmp_path, data)
    code, out = run_cli(["hodge", path])
    assert code == 0
    # a refinement ray outside its sigma cone is rejected
    data["refinement"] = [{"rays": [[0, 1]], "sigma": 1}]
    path = write_input(tmp_path, data, "bad.json")
    code, _ = run_cli(["hodge", path])
    assert code == 1


def test_text_format():
    code, out = run_cli(["nearby", CONCRETE, "--format", "text"])
    assert code == 0
    assert "nearby_fiber_E = -14 - 2*u*v" in out
    assert "nearby_fiber_class = -14 - 2*L" in out


def test_lower_dimensional_input_is_normalized(tmp_path):
    # The same quartic triangle embedded in a plane of 3-space: every
    # invariant must agree with the 2-dimensional computation.
    def lift(v):
        return [v[0], v[1], v[0] + 2 * v[1]]

    data = json.loads(Path(CONCRETE).read_text())
    lifted = {
        "dim": 3,
        "points": [
            {"coords": lift(e["coords"]), "height": e["height"]}
            for e in data["points"]
        ],
    }
    path = write_input(tmp_path, lifted)
    code, out = run_cli(["hodge", path])
    assert code == 0
    report = json.loads(out)
    _, flat = run_cli(["hodge", CONCRETE])
    flat_report = json.loads(flat)
    assert report["results"]["refined_E"] == flat_report["results"]["refined_E"]
    assert report["results"]["euler_characteristic"] == "-16"
    code, out = run_cli(["gpoly", path])
    assert code == 0
    assert json.loads(out)["results"]["intersection_lefschetz"]["pretty"] == "1 + t"
