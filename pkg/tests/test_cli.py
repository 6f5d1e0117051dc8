import json
import subprocess
import sys

import pytest

from wreathcycles.cli import main
from wreathcycles.core import WreathContext, conjugate, element_from_dict, mul

from conftest import RUNNING_V, RUNNING_W, group_file

W1, W2, W3 = (group_file(f"W{i}.json") for i in (1, 2, 3))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose(capsys):
    code, out, _ = run(capsys, "--group", W2, "decompose", RUNNING_W)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == f"element: {RUNNING_W}"
    assert lines[1].startswith("w1: ((1,2)(3,4), (3,4), (), (), (), (), (), () ; (1,2))")
    assert "anchor 7" in lines[4] and "load (k2, 1)" in lines[4]
    assert "yade (1,2,3)" in lines[3]
    assert "{1,2}, {3,4}" in out and "{5,6}" in out and "{7}" in out


def test_decompose_identity(capsys):
    ident = "((), (), (), (), (), (), (), () ; ())"
    code, out, _ = run(capsys, "decompose", ident, "--group", W2)
    assert code == 0
    assert "empty decomposition" in out


def test_decompose_json(capsys):
    code, out, _ = run(capsys, "--json", "--group", W2, "decompose", RUNNING_W)
    data = json.loads(out)
    assert data["schema"] == 1
    assert [c["anchor"] for c in data["cycles"]] == [1, 3, 5, 7]
    assert data["matrix"][1][:3] == ["{7}", "{1,2}, {3,4}", "-"]


def test_order_and_yade(capsys):
    assert run(capsys, "--group", W2, "order", RUNNING_W)[1].strip() == "12"
    assert run(capsys, "--group", W2, "yade", "--point", "5", RUNNING_W)[1].strip() == "(1,2,3)"
    assert run(capsys, "--group", W2, "yade", "--point", "8", RUNNING_W)[1].strip() == "()"


def test_is_conjugate(capsys):
    code, out, _ = run(capsys, "--group", W2, "is-conjugate", RUNNING_W, RUNNING_V)
    assert code == 0
    assert out.startswith("conjugate\nwitness: ")
    code, out, _ = run(capsys, "--group", W1, "is-conjugate", RUNNING_W, RUNNING_V)
    assert code == 1
    assert out.startswith("not conjugate")
    assert "yes" in out


def test_conjugator_json(capsys):
    code, out, _ = run(capsys, "--group", W2, "--json", "conjugator", RUNNING_W, RUNNING_V)
    data = json.loads(out)
    assert code == 0 and data["conjugate"]
    assert data["witness"]["top"] == "(3,5)(4,6)(7,8)"
    assert run(capsys, "--group", W3, "conjugator", RUNNING_W, RUNNING_V)[0] == 1


def test_centralizer(capsys):
    code, out, _ = run(capsys, "--group", W1, "centralizer", RUNNING_W)
    assert code == 0
    assert out.splitlines()[0] == "order: 36,864"


def test_class_size(capsys):
    assert run(capsys, "--group", W1, "class-size", RUNNING_W)[1].strip() == "95,551,488"
    data = json.loads(run(capsys, "--group", W3, "--json", "class-size", RUNNING_W)[1])
    assert data["class_size"] == 47_775_744


def test_classes(capsys):
    code, out, _ = run(capsys, "--group", W2, "classes", "--count-only")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "total: 103,000"
    assert [l.rsplit(": ", 1)[1] for l in lines[:-1]] == ["99,375", "1,625", "1,625", "375"]


def test_classes_emit(capsys, tmp_path):
    path = tmp_path / "c2s3.json"
    path.write_text(json.dumps({"base": {"degree": 2, "generators": ["(1,2)"]},
                                "top": {"degree": 3, "generators": ["(1,2)", "(1,2,3)"]}}))
    code, out, _ = run(capsys, "--group", str(path), "classes", "--emit")
    assert code == 0
    assert len(out.splitlines()) == 10


def test_bench_smoke(capsys, tmp_path):
    csv_path = tmp_path / "out.csv"
    code, out, _ = run(capsys, "bench", "--suite", "smoke", "--seed", "1", "--pairs", "2",
                       "--csv", str(csv_path))
    assert code == 0
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "instance,order,task,fast_s,oracle_s,speedup"
    assert len(rows) == 1 + 2 * 3


@pytest.mark.parametrize("argv", [
    ["decompose", RUNNING_W],
    ["--group", W2, "decompose", "((1,2) ; ())"],
    ["--group", W2, "yade", "--point", "9", RUNNING_W],
    ["--group", "/nonexistent.json", "order", RUNNING_W],
    ["--group", W2, "--cap", "0", "order", RUNNING_W],
    ["--group", W2, "--cap", "10", "order", RUNNING_W],
])
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_bad_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--suite", "nope"])
    assert exc.value.code == 2


def test_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wreathcycles.cli", "--group", W2, "order", RUNNING_W],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "12"


def test_json_element_round_trip(capsys):
    ctx = WreathContext.load(W2)
    w, v = ctx.parse(RUNNING_W), ctx.parse(RUNNING_V)
    data = json.loads(run(capsys, "--group", W2, "--json", "conjugator", RUNNING_W, RUNNING_V)[1])
    assert conjugate(w, element_from_dict(data["witness"], ctx)) == v
    out = json.loads(run(capsys, "--group", W2, "--json", "decompose", RUNNING_W)[1])
    assert element_from_dict(out["element"], ctx) == w
    prod = ctx.identity()
    for c in out["cycles"]:
        prod = mul(prod, element_from_dict(c["element"], ctx))
    assert prod == w


def test_bench_seed_determinism():
    from wreathcycles.bench import SUITES, conjugate_pairs
    ctx = SUITES["paper-shape"][0].context()
    assert conjugate_pairs(ctx, 4, seed=3) == conjugate_pairs(ctx, 4, seed=3)
    assert conjugate_pairs(ctx, 4, seed=3) != conjugate_pairs(ctx, 4, seed=4)
