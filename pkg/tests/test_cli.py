"""Command-line driver, exercised through main(argv)."""

import io
import json

import pytest

from qcluster import cli
from qcluster.jsonio import dumps, seed_to_obj
from qcluster.scenarios import standard_cycle_seed
from qcluster.seeds import make_seed, mutate_seed
from qcluster.torus import monomial, weyl_monomial
from qcluster import jsonio


@pytest.fixture
def cycle_file(tmp_path, cycle):
    p = tmp_path / "cycle.json"
    p.write_text(dumps(seed_to_obj(cycle)))
    return str(p)


def _out(capsys):
    captured = capsys.readouterr()
    return captured.out, captured.err


def test_mutate_single_index(cycle_file, cycle, capsys):
    assert cli.main(["mutate", "--seed", cycle_file, "-k", "1"]) == 0
    out, _ = _out(capsys)
    assert json.loads(out) == seed_to_obj(mutate_seed(cycle, 1))


def test_mutate_path_and_stdin(cycle, capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(dumps(seed_to_obj(cycle))))
    assert cli.main(["mutate", "--path", "1,3,1"]) == 0
    out, _ = _out(capsys)
    want = mutate_seed(mutate_seed(mutate_seed(cycle, 1), 3), 1)
    assert json.loads(out) == seed_to_obj(want)


def test_mutate_requires_a_direction(cycle_file, capsys):
    assert cli.main(["mutate", "--seed", cycle_file]) == 1
    _, err = _out(capsys)
    assert err.startswith("error:")


def test_mutate_frozen_index_is_an_input_error(cycle_file, capsys):
    assert cli.main(["mutate", "--seed", cycle_file, "-k", "0"]) == 1
    _, err = _out(capsys)
    assert "frozen" in err


def test_enumerate(cycle_file, capsys):
    assert cli.main(["enumerate", "--seed", cycle_file, "--depth", "8"]) == 0
    out, _ = _out(capsys)
    obj = json.loads(out)
    assert obj["closed"] is True and obj["count"] == 4
    assert obj["nodes"][0]["parent"] == -1
    assert obj["nodes"][0]["c"] == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    paths = {tuple(n["path"]) for n in obj["nodes"]}
    assert paths == {(), (1,), (3,), (1, 3)}


def test_matrix_commands(cycle_file, capsys):
    assert cli.main(["gtilde", "--seed", cycle_file, "--path", "1", "--json"]) == 0
    out, _ = _out(capsys)
    assert json.loads(out) == [[1, 0, 0, 0], [1, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert cli.main(["cvec", "--seed", cycle_file, "--path", "1,3"]) == 0
    out, _ = _out(capsys)
    rows = [line.split() for line in out.strip().splitlines()]
    assert rows == [
        ["1", "0", "0", "0"],
        ["0", "-1", "1", "0"],
        ["0", "0", "1", "0"],
        ["1", "0", "0", "-1"],
    ]
    assert cli.main(["gvec", "--seed", cycle_file, "--json"]) == 0
    out, _ = _out(capsys)
    assert json.loads(out) == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def test_check_mono(cycle_file, capsys):
    assert cli.main(["check-mono", "--seed", cycle_file, "--exp", "1,0,1,0"]) == 0
    out, _ = _out(capsys)
    obj = json.loads(out)
    assert obj["ok"] is True and obj["per_exp"][0]["universally_monomial"] is True
    assert cli.main(["check-mono", "--seed", cycle_file, "--exp", "1,0,0,0"]) == 2
    out, _ = _out(capsys)
    assert json.loads(out)["ok"] is False


def test_check_mono_element_file(tmp_path, cycle, capsys):
    p = tmp_path / "el.json"
    p.write_text(dumps(jsonio.element_to_obj(weyl_monomial(cycle, [0, 2]))))
    assert cli.main(["check-mono", "--element", str(p)]) == 0
    obj = json.loads(_out(capsys)[0])
    assert obj["per_exp"] == [{"exp": [1, 0, 1, 0], "universally_monomial": True}]


def test_check_poly_single_element(tmp_path, cycle, capsys):
    gens = {"g0": weyl_monomial(cycle, [0]) + weyl_monomial(cycle, [0, 1])}
    p = tmp_path / "el.json"
    p.write_text(dumps(jsonio.element_to_obj(gens["g0"])))
    for mode in ("gmatrix", "transport"):
        assert cli.main(["check-poly", "--element", str(p), "--mode", mode]) == 0
        obj = json.loads(_out(capsys)[0])
        assert obj["status"] == "universally_polynomial"  # bare verdict
    assert cli.main(["check-poly", "--element", str(p), "--mode", "frozen"]) == 2
    obj = json.loads(_out(capsys)[0])
    assert obj["witness_monomial"] == [1, 0, 0, 0]


def test_check_poly_bundle_aggregates(tmp_path, cycle, capsys):
    bundle = jsonio.elements_bundle(
        cycle,
        {
            "good": weyl_monomial(cycle, [0, 2]),
            "bad": monomial(cycle, (0, 1, 0, 0)),
        },
    )
    p = tmp_path / "bundle.json"
    p.write_text(dumps(bundle))
    assert cli.main(["check-poly", "--element", str(p), "--depth", "8"]) == 2
    obj = json.loads(_out(capsys)[0])
    assert obj["status"] == "fails_at"  # worst of the two
    assert obj["elements"]["good"]["status"] == "universally_monomial"
    assert obj["elements"]["bad"]["status"] == "fails_at"


def test_fold(tmp_path, fold_base, capsys):
    p = tmp_path / "base.json"
    p.write_text(dumps(seed_to_obj(fold_base)))
    assert cli.main(["fold", "--seed", str(p), "--orbits", "0,2|1"]) == 0
    obj = json.loads(_out(capsys)[0])
    assert obj["rank"] == 2
    assert obj["d"] == [{"num": 1, "den": 2}, 1]
    assert cli.main(["fold", "--seed", str(p), "--orbits", "0|1"]) == 1
    assert "error:" in _out(capsys)[1]


def test_amalgamate(tmp_path, cycle, capsys):
    p = tmp_path / "cycle.json"
    p.write_text(dumps(seed_to_obj(cycle)))
    assert cli.main(["amalgamate", "--seeds", str(p), str(p), "--glue", "0:2=1:0"]) == 0
    obj = json.loads(_out(capsys)[0])
    assert obj["rank"] == 7 and obj["unfrozen"] == [1, 3, 4, 6]
    assert cli.main(["amalgamate", "--seeds", str(p), str(p), "--glue", "0:1=1:0"]) == 1


def test_scenario_emissions(capsys):
    assert cli.main(["scenario", "sl2"]) == 0
    obj = json.loads(_out(capsys)[0])
    assert set(obj["elements"]) == {"e", "f", "k", "k_prime", "casimir"}
    assert obj["meta"]["f_support"] == [0, 1]
    assert len(obj["meta"]["passing"]) == 4

    assert cli.main(["scenario", "sl2", "--emit", "seed"]) == 0
    obj = json.loads(_out(capsys)[0])
    assert obj == seed_to_obj(standard_cycle_seed())

    assert cli.main(["scenario", "an-chain", "-n", "4"]) == 0
    obj = json.loads(_out(capsys)[0])
    assert obj["meta"] == {"chain": [0, 1, 2, 3], "path": [1, 2]}
    assert set(obj["elements"]) == {"telescoping", "full_monomial"}

    assert cli.main(["scenario", "markov"]) == 0
    obj = json.loads(_out(capsys)[0])
    assert list(obj["elements"]) == ["invariant"]

    assert cli.main(["scenario", "sl2-coproduct"]) == 0
    obj = json.loads(_out(capsys)[0])
    assert obj["meta"]["convention"] == "hopf"
    assert obj["meta"]["matching"] == [2, 0]
    assert obj["seed"]["rank"] == 7


def test_scenario_output_is_deterministic(capsys):
    assert cli.main(["scenario", "sl2"]) == 0
    first = _out(capsys)[0]
    assert cli.main(["scenario", "sl2"]) == 0
    assert _out(capsys)[0] == first


def test_verify_battery(capsys):
    assert cli.main(["verify"]) == 0
    out, _ = _out(capsys)
    assert "10/10 checks passed" in out
    assert "FAIL" not in out


def test_bench_small(capsys):
    rc = cli.main(
        ["bench", "--rank", "4", "--frozen", "1", "--depth", "2", "--terms", "2", "--rng", "1"]
    )
    assert rc == 0
    out, err = _out(capsys)
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert len(lines) == 2
    assert lines[0]["path_prefix"] and "term_count" in lines[0]
    assert "transported 2 terms" in err


def test_exit_taxonomy(tmp_path, capsys):
    garbage = tmp_path / "bad.json"
    garbage.write_text("{not json")
    assert cli.main(["mutate", "--seed", str(garbage), "-k", "0"]) == 1
    assert cli.main(["no-such-command"]) == 1
    missing = tmp_path / "missing.json"
    assert cli.main(["enumerate", "--seed", str(missing)]) == 1
    seed_only = tmp_path / "seed.json"
    seed_only.write_text(dumps(seed_to_obj(make_seed([[0, 1], [-1, 0]]))))
    assert cli.main(["check-poly", "--element", str(seed_only)]) == 1
    _, err = _out(capsys)
    assert "no element" in err
