import json

import pytest

from psf import Complex, join
from psf.build import boundary_simplex, one_vertex_suspension
from psf.buildscript import dump_script, random_script
from psf.cli import main
from psf.corpus import pinched_complex, vertex_folded_instance, edge_folded_instance
from psf.fileio import format_complex, parse_complex


def write_complex(tmp_path, name, k):
    path = tmp_path / name
    path.write_text(format_complex(k))
    return str(path)


def test_facet_file_round_trip():
    k = vertex_folded_instance(3).complex
    assert parse_complex(format_complex(k)) == k
    text = format_complex(k)
    assert format_complex(parse_complex(text)) == text


def test_parse_errors_positioned():
    from psf.fileio import ParseError

    with pytest.raises(ParseError) as err:
        parse_complex("0 1 2\n0 oops 3\n")
    assert err.value.line == 2
    assert err.value.column == 3


def test_comments_and_blank_lines():
    text = "# a sphere\n\n0 1 2  # facet one\n0 1 3\n0 2 3\n1 2 3\n"
    assert parse_complex(text) == boundary_simplex(3)


def test_info_command(tmp_path, capsys):
    path = write_complex(tmp_path, "d5.txt", boundary_simplex(5))
    assert main(["info", path]) == 0
    out = capsys.readouterr().out
    assert "f = 1 6 15 20 15 6" in out
    assert "g2 = 0" in out
    assert "singular: none" in out


def test_info_fold_instance(tmp_path, capsys):
    record = vertex_folded_instance(7)
    path = write_complex(tmp_path, "fold.txt", record.complex)
    assert main(["info", path]) == 0
    out = capsys.readouterr().out
    assert "g2 = 10" in out
    assert f"singular: {record.tracked}" in out


def test_info_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("0 1 x\n")
    assert main(["info", str(path)]) == 2


def test_check_command(tmp_path, capsys):
    good = write_complex(tmp_path, "good.txt", boundary_simplex(5))
    assert main(["check", good]) == 0
    bad = write_complex(tmp_path, "bad.txt", pinched_complex())
    assert main(["check", bad]) == 1
    out = capsys.readouterr().out
    assert "disconnected_links" in out


def test_check_strict_unknown_verdict(tmp_path):
    j = join(boundary_simplex(2), Complex([[3, 4], [4, 5], [3, 5]]))
    susp = one_vertex_suspension(j, 0)
    path = write_complex(tmp_path, "susp.txt", susp)
    assert main(["check", path]) == 0
    assert main(["check", path, "--strict"]) == 3


def test_build_command(tmp_path, capsys):
    script = tmp_path / "script.json"
    script.write_text(dump_script(random_script(5)))
    out_file = tmp_path / "out.txt"
    assert main(["build", str(script), "-o", str(out_file)]) == 0
    printed = capsys.readouterr().out
    assert "ok" in printed
    parse_complex(out_file.read_text())


def test_build_rejects_bad_script(tmp_path, capsys):
    script = tmp_path / "script.json"
    script.write_text(json.dumps({"version": 1, "steps": [{"op": "nope"}]}))
    assert main(["build", str(script)]) == 2


def test_build_inadmissible_fold_exit_code(tmp_path):
    b5 = boundary_simplex(5)
    f1, f2 = b5.facets[0], b5.facets[1]
    doc = {
        "version": 1,
        "steps": [
            {"op": "boundary_simplex", "n": 5},
            {
                "op": "vertex_fold",
                "operand": 0,
                "source_facet": list(f1),
                "target_facet": list(f2),
                "pairs": [[a, b] for a, b in zip(f1, f2)],
            },
        ],
    }
    script = tmp_path / "script.json"
    script.write_text(json.dumps(doc))
    assert main(["build", str(script)]) == 4


def test_build_script_replay_byte_identical(tmp_path):
    script = tmp_path / "script.json"
    script.write_text(dump_script(random_script(11)))
    out1, out2 = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["build", str(script), "-o", str(out1)]) == 0
    assert main(["build", str(script), "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_decompose_command(tmp_path, capsys):
    record = vertex_folded_instance(9)
    path = write_complex(tmp_path, "fold.txt", record.complex)
    tree_file = tmp_path / "tree.json"
    code = main([
        "decompose", path, "--vertex", str(record.tracked),
        "--mode", "one-singularity", "-o", str(tree_file),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "vertex_folds=1" in out
    doc = json.loads(tree_file.read_text())
    assert doc["version"] == 1


def test_decompose_not_optimal_exit(tmp_path):
    j = join(boundary_simplex(2), Complex([[3, 4], [4, 5], [3, 5]]))
    susp = one_vertex_suspension(j, 0)
    path = write_complex(tmp_path, "susp.txt", susp)
    apex = max(susp.vertices)
    assert main(["decompose", path, "--vertex", str(apex), "--mode", "one-singularity"]) == 5


def test_decompose_edge_mode_cli(tmp_path, capsys):
    record = edge_folded_instance(10)
    path = write_complex(tmp_path, "edge.txt", record.complex)
    assert main(["decompose", path, "--vertex", str(record.tracked)]) == 0
    out = capsys.readouterr().out
    assert "edge_folds=1" in out
    assert "6*1 + 10*0" in out


def test_decompose_irreducible_exit(tmp_path, monkeypatch, capsys):
    import psf.cli as cli
    from psf.decompose import DecompositionTree, TreeNode

    k = boundary_simplex(5)
    path = write_complex(tmp_path, "d5.txt", k)
    fake = DecompositionTree(
        [TreeNode("leaf", leaf_kind="irreducible_base", facets=k.facets)],
        0,
        {"irreducible": 1},
    )
    monkeypatch.setattr(cli, "decompose", lambda *a, **kw: fake)
    assert main(["decompose", path, "--vertex", "0"]) == 6


def test_verify_identities_command(capsys):
    assert main(["verify-identities", "--seeds", "6"]) == 0
    out = capsys.readouterr().out
    assert "all identities exact" in out
