"""Command-line behaviour: README examples as golden tests, exit codes, JSON."""
import io
import json
import re
import shlex
from pathlib import Path

import pytest

from tropica import cli

ROOT = Path(__file__).resolve().parents[1]
README = ROOT / "README.md"


def readme_examples():
    """Yield (command, expected stdout) for every `$ tropica` line in console blocks."""
    text = README.read_text()
    out = []
    for block in re.findall(r"```console\n(.*?)```", text, flags=re.S):
        cmd, lines = None, []
        for line in block.splitlines():
            if line.startswith("$ "):
                if cmd is not None:
                    out.append((cmd, "\n".join(lines)))
                cmd, lines = line[2:], []
            else:
                lines.append(line)
        if cmd is not None:
            out.append((cmd, "\n".join(lines)))
    return out


EXAMPLES = readme_examples()


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def _in_repo(monkeypatch):
    monkeypatch.chdir(ROOT)


def test_readme_has_examples():
    assert len(EXAMPLES) >= 10


@pytest.mark.parametrize("command,expected", EXAMPLES, ids=[c for c, _ in EXAMPLES])
def test_readme_example(command, expected):
    argv = shlex.split(command)
    assert argv[0] == "tropica"
    code, out, err = invoke(argv[1:])
    assert out.rstrip("\n") == expected.rstrip("\n")
    assert code in (cli.EXIT_OK, cli.EXIT_NEGATIVE), err


@pytest.mark.parametrize("argv,code", [
    (["det", "fixtures/D3.mat"], 0),
    (["solve", "--mode", "sym", "data/balanced_A.mat", "data/balanced_b.vec"], 2),
    (["witness", "--kind", "gm", "fixtures/trop_vs_gm.mat"], 2),
    (["witness", "fixtures/gm_vectors.mat"], 0),
    (["identities", "det_mult", "2"], 0),
])
def test_exit_codes(argv, code):
    assert invoke(argv)[0] == code


def test_parse_error_exit(tmp_path):
    bad = tmp_path / "ragged.mat"
    bad.write_text("0 1\n2\n")
    code, out, err = invoke(["det", str(bad)])
    assert code == cli.EXIT_ERROR
    assert "ParseError" in err
    assert out == ""


def test_missing_file_is_error():
    code, _, err = invoke(["det", "no/such/file.mat"])
    assert code == cli.EXIT_ERROR
    assert err.startswith("tropica det:")


def test_semiring_mismatch(tmp_path):
    f = tmp_path / "a.json"
    f.write_text(json.dumps({"rows": 1, "cols": 1, "semiring": "te", "entries": ["0"]}))
    code, _, err = invoke(["det", str(f), "--semiring", "smax"])
    assert code == cli.EXIT_ERROR
    assert "SemiringMismatch" in err


def test_json_schema_on_every_command():
    cases = [
        ["det", "fixtures/D3.mat"],
        ["ranks", "fixtures/D3.mat", "--only", "trop,rk_det"],
        ["witness", "fixtures/gm_vectors.mat"],
        ["radon", "fixtures/gm_vectors.mat"],
        ["identities", "det_mult", "2"],
        ["fixtures"],
    ]
    for argv in cases:
        code, out, _ = invoke(argv + ["--format", "json"])
        doc = json.loads(out)
        assert doc["schema"] == 1, argv
        assert code == 0


def test_ranks_only_subset():
    code, out, _ = invoke(["ranks", "fixtures/D3.mat", "--only", "trop,rk_det", "--format", "json"])
    assert code == 0
    ranks = json.loads(out)["ranks"]
    assert ranks["trop"] == 2 and ranks["rk_det"] == 3
    assert ranks["f"] == {"unknown": "not requested"}


def test_strong_form_unavailable_is_reported():
    # Weak transfer holds, but Q+ and Q- share monomials, so no residual exists.
    code, out, _ = invoke(["identities", "algebraicity", "1", "--strong"])
    assert code == cli.EXIT_OK
    assert "R unavailable (MonomialOverlap)" in out


def test_main_returns_code(capsys):
    assert cli.main(["det", "fixtures/D3.mat"]) == cli.EXIT_OK
    assert "det_plus: 0" in capsys.readouterr().out


def test_gm_search_reports_no_separation():
    code, out, _ = invoke(["gm-search", "--rows", "2", "--cols", "3", "--samples", "20", "--seed", "1"])
    assert code == cli.EXIT_NEGATIVE
    assert "separates" in out
