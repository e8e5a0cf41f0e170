import json

import pytest

from treetwocenter.cli import main


def gen_file(tmp_path, name="inst.json", seed=5, n=4, m=2, vertices=12):
    target = tmp_path / name
    rc = main(["gen", "--seed", str(seed), "--n", str(n), "--m", str(m),
               "--vertices", str(vertices), "-o", str(target)])
    assert rc == 0
    return target


def test_gen_writes_parseable_file(tmp_path, capsys):
    target = gen_file(tmp_path)
    doc = json.loads(target.read_text())
    assert set(doc) == {"vertices", "edges", "uncertain_points"}
    # stdout mode
    rc = main(["gen", "--seed", "5", "--n", "2", "--m", "1",
               "--vertices", "6"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["vertices"] >= 2


def test_solve_text_and_json_agree(tmp_path, capsys):
    target = gen_file(tmp_path)
    assert main(["solve", "-i", str(target)]) == 0
    text = capsys.readouterr().out
    assert text.startswith("lambda_star ")
    lam_text = text.splitlines()[0].split()[1]
    assert main(["solve", "-i", str(target), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["lambda_star"] == lam_text
    assert set(doc) >= {"lambda_star", "center1", "center2"}


def test_solve_oracle_agree(tmp_path, capsys):
    target = gen_file(tmp_path)
    main(["solve", "-i", str(target)])
    lam_solve = capsys.readouterr().out.splitlines()[0]
    main(["oracle", "-i", str(target)])
    lam_oracle = capsys.readouterr().out.splitlines()[0]
    assert lam_solve == lam_oracle


def test_decide_output(tmp_path, capsys):
    target = gen_file(tmp_path)
    assert main(["decide", "-i", str(target), "--lambda", "1000"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("feasible")
    assert "center1" in out and "center2" in out
    assert main(["decide", "-i", str(target), "--lambda", "0"]) == 0
    assert capsys.readouterr().out.strip() == "infeasible"


def test_bench_csv(capsys):
    rc = main(["bench", "--mode", "decide", "--sizes", "200,400",
               "--repeats", "1"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "size,seconds,mode,shape,label"
    assert len(lines) > 4
    assert all(line.split(",")[0] in ("200", "400") for line in lines[1:])


def test_input_errors_exit_two(tmp_path, capsys):
    assert main(["solve", "-i", str(tmp_path / "missing.json")]) == 2
    assert "error:" in capsys.readouterr().err
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": 1, "edges": [], "uncertain_points": []}')
    assert main(["solve", "-i", str(bad)]) == 2
    capsys.readouterr()
    target = gen_file(tmp_path)
    assert main(["decide", "-i", str(target), "--lambda", "3/0"]) == 2


def test_unknown_subcommand_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
