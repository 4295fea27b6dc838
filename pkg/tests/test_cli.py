import json

import pytest

from flagmatroids import cli
from flagmatroids import flag_core as fl
from flagmatroids import graphic as gr
from flagmatroids import jsonio as io
from flagmatroids import matroid_core as mc


@pytest.fixture()
def capture(capsys):
    def run(*args):
        code = cli.run(list(args))
        out = capsys.readouterr()
        return code, out.out, out.err

    return run


@pytest.fixture()
def corpus(tmp_path):
    files = {}

    def write(name, doc):
        path = tmp_path / name
        path.write_text(io.dumps(doc) if isinstance(doc, dict) else doc)
        files[name] = str(path)
        return files[name]

    write("iu23.json", io.flag_json(fl.chop(fl.independent_flag(mc.uniform(2, 3)), 0)))
    write("bf7.json", io.flag_json(fl.basis_flag(mc.fano_matroid())))
    write("chain3.json", io.flag_json(
        fl.from_sequence([mc.uniform(1, 3), mc.uniform(2, 3), mc.uniform(3, 3)])
    ))
    write("gap.json", io.flag_json(fl.from_sequence([mc.uniform(1, 3), mc.uniform(3, 3)])))
    write("fano.json", io.matrix_json(mc.fano_matrix()))
    write("u24.json", io.matroid_json(mc.uniform(2, 4)))
    write("u24b.json", io.matroid_json(mc.uniform(2, 4)))
    write("bad_family.json", json.dumps({"n": 3, "feasible": [[0], [1], [0, 1], [1, 2]]}))
    k4 = gr.multigraph(4, [(0, 1), (0, 3), (0, 2), (1, 3), (1, 2), (3, 2)])
    chain = gr.chain_of(
        4, [[[0, 1, 2, 3]], [[0, 1, 3], [2]], [[0, 1], [2], [3]], [[0], [1], [2], [3]]]
    )
    write("k4bundle.json", io.graphic_bundle_json(k4, chain))
    write("config.json", io.config_json(gr.reference_counterexample_config()))
    files["write"] = write
    files["dir"] = tmp_path
    return files


def test_validate_and_axioms(capture, corpus):
    code, out, _ = capture("validate", corpus["iu23.json"])
    assert code == 0 and json.loads(out)["valid"]

    code, out, _ = capture("validate", corpus["bad_family.json"])
    assert code == 2
    assert json.loads(out)["error"] == "NotALift"

    code, out, _ = capture("axioms", corpus["bad_family.json"])
    assert code == 1
    doc = json.loads(out)
    assert doc["axiom"] == 2 and doc["witness"]["F"] == [1, 2]

    code, out, _ = capture("axioms", corpus["iu23.json"])
    assert code == 0


def test_seqrep_minor_dual(capture, corpus):
    code, out, _ = capture("seqrep", corpus["chain3.json"])
    assert code == 0
    layers = json.loads(out)["layers"]
    assert [len(l["bases"][0]) for l in layers] == [1, 2, 3]

    code, out, _ = capture("minor", corpus["chain3.json"], "--chop", "2")
    assert code == 0
    assert sorted(len(f) for f in json.loads(out)["feasible"]) == [1, 1, 1, 3]

    code, out, _ = capture("dual", corpus["iu23.json"])
    assert code == 0


def test_from_matrix_and_uniform_rep(capture, corpus):
    code, out, _ = capture("from-matrix", corpus["fano.json"], "--levels", "3")
    assert code == 0
    assert len(json.loads(out)["feasible"]) == 28

    code, out, _ = capture("uniform-rep", "--r", "2", "--n", "4", "--p", "5")
    assert code == 0
    assert json.loads(out)["matrix"]["entries"] == [[1, 1, 1, 1], [0, 1, 2, 3]]

    code, out, _ = capture("uniform-rep", "--r", "2", "--n", "4", "--p", "3")
    assert code == 1
    assert json.loads(out)["error"] == "FieldTooSmall"


def test_is_representable_negative_with_witness(capture, corpus):
    code, out, _ = capture("is-representable", corpus["iu23.json"], "--p", "2")
    assert code == 1
    doc = json.loads(out)
    assert doc["schema"] == "certificate/forbidden-minor/1"
    assert doc["target_name"] == "(U_{1,3},U_{2,3})"


def test_is_representable_non_full_routes(capture, corpus):
    # a flag with a rank gap: fillings route for the minor methods,
    # direct search for --method search
    code, out, _ = capture("is-representable", corpus["gap.json"], "--p", "2")
    assert code == 0
    assert json.loads(out)["schema"] == "certificate/representation/1"
    code, out, _ = capture(
        "is-representable", corpus["gap.json"], "--p", "2", "--method", "search"
    )
    assert code == 0
    assert json.loads(out)["levels"] == [1, 3]


def test_is_representable_positive_certificate_revalidates(capture, corpus, tmp_path):
    code, out, _ = capture("is-representable", corpus["bf7.json"], "--p", "2", "--method", "all")
    assert code == 0
    cert_path = tmp_path / "cert.json"
    cert_path.write_text(out)
    code2, out2, _ = capture("validate", str(cert_path))
    assert code2 == 0 and json.loads(out2)["valid"]


def test_forbidden_minor_certificate_revalidates_and_mutation_breaks(capture, corpus, tmp_path):
    code, out, _ = capture("is-representable", corpus["iu23.json"], "--p", "2")
    cert = json.loads(out)
    path = tmp_path / "neg.json"
    path.write_text(io.dumps(cert))
    assert capture("validate", str(path))[0] == 0

    broken = json.loads(io.dumps(cert))
    broken["target"]["feasible"] = broken["target"]["feasible"][:-1]
    path.write_text(io.dumps(broken))
    assert capture("validate", str(path))[0] in (1, 2)


def test_matrix_certificate_mutation_breaks(capture, corpus, tmp_path):
    code, out, _ = capture("is-representable", corpus["bf7.json"], "--p", "2")
    cert = json.loads(out)
    cert["matrix"]["entries"][0][0] ^= 1
    path = tmp_path / "mut.json"
    path.write_text(io.dumps(cert))
    assert capture("validate", str(path))[0] in (1, 2)


def test_represent_and_fillings(capture, corpus):
    code, out, _ = capture("represent", corpus["gap.json"], "--p", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["levels"] == [1, 3]

    code, out, _ = capture("fillings", corpus["gap.json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["complete"] and len(doc["fillings"]) == 4

    code, _, _ = capture("fillings", corpus["gap.json"], "--budget", "2")
    assert code == 3


def test_witness_and_major(capture, corpus, tmp_path):
    code, out, _ = capture("witness", corpus["chain3.json"])
    assert code == 0
    doc = json.loads(out)
    assert len(doc["witnesses"]) == 2

    code, out, _ = capture("major", "from-rep", str(_write_rep(tmp_path)))
    assert code == 0
    major_doc = json.loads(out)

    bundle = {"major": major_doc, "flag": io.flag_json(
        fl.from_sequence([mc.uniform(1, 3), mc.uniform(2, 3), mc.uniform(3, 3)])
    )}
    path = tmp_path / "verify.json"
    path.write_text(io.dumps(bundle))
    assert capture("major", "verify", str(path))[0] == 0

    code, out, _ = capture("major", "search", corpus["gap.json"], "--budget", "200000")
    assert code == 0

    code, _, _ = capture("major", "search", corpus["gap.json"], "--budget", "1")
    assert code == 3


def _write_rep(tmp_path):
    from flagmatroids import representability as rp

    rep = rp.uniform_flag_representation(3, 3, 5)
    path = tmp_path / "rep.json"
    path.write_text(io.dumps(io.representation_json(rep)))
    return path


def test_graphic_verbs(capture, corpus):
    code, out, _ = capture("graphic-flag", corpus["k4bundle.json"])
    assert code == 0
    assert len(json.loads(out)["feasible"]) == 1 + 3 + 8 + 16

    code, out, _ = capture("graphic-major", corpus["k4bundle.json"])
    assert code == 0
    doc = json.loads(out)
    assert len(doc["graph"]["edges"]) == 9


def test_isomorphic(capture, corpus):
    code, out, _ = capture("isomorphic", corpus["u24.json"], corpus["u24b.json"])
    assert code == 0
    assert json.loads(out)["bijection"] == [0, 1, 2, 3]

    code, _, _ = capture("isomorphic", corpus["u24.json"], corpus["iu23.json"])
    assert code == 2  # mixed kinds rejected


def test_counterexample(capture, corpus):
    code, out, _ = capture("counterexample", corpus["config.json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "not graphic, witnesses graphic"

    assert capture("counterexample")[0] == 0  # built-in fixture


def test_deterministic_output(capture, corpus):
    for args in (
        ("is-representable", corpus["bf7.json"], "--p", "2"),
        ("represent", corpus["gap.json"], "--p", "3"),
        ("seqrep", corpus["chain3.json"]),
        ("counterexample",),
        ("fillings", corpus["gap.json"]),
    ):
        first = capture(*args)
        second = capture(*args)
        assert first[0] == second[0]
        assert first[1] == second[1]


def test_outputs_reparse(capture, corpus):
    code, out, _ = capture("dual", corpus["chain3.json"])
    reloaded = io.load_flag(json.loads(out))
    assert io.dumps(io.flag_json(reloaded)) == out


def test_validate_reports_exchange_witness(capture, corpus, tmp_path):
    path = tmp_path / "axiom1.json"
    path.write_text(json.dumps({"n": 4, "feasible": [[0, 1], [2, 3]]}))
    code, out, _ = capture("validate", str(path))
    assert code == 2
    doc = json.loads(out)
    assert doc["error"] == "LayerNotMatroid"
    assert doc["witness"]["witness"]["B1"] == [0, 1]


def test_subprocess_determinism_across_hash_seeds(corpus):
    """Byte-identical stdout in separate processes with different hash seeds."""
    import os
    import subprocess
    import sys

    def run(seed):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        return subprocess.run(
            [sys.executable, "-m", "flagmatroids.cli", "is-representable",
             corpus["bf7.json"], "--p", "3"],
            capture_output=True, text=True, env=env,
        )

    first, second = run("1"), run("4242")
    assert first.returncode == second.returncode == 1
    assert first.stdout == second.stdout
