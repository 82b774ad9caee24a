import pytest

from src import cli
from src.cli import build_parser, run
from src.poset import Verdict
from src.verify import CLAIMS_BY_ID, Check, Claim, verify_theorems


def output(capsys) -> list[str]:
    return capsys.readouterr().out.splitlines()


class TestCheck:
    def test_quasi_lattice(self, capsys):
        assert run(["check", "fixture:nonassoc8", "--expect", "quasi-lattice"]) == 0
        assert output(capsys) == ["kind: quasi-lattice", "witness: x y (mub)"]

    def test_lattice(self, capsys):
        assert run(["check", "fixture:m3", "--expect", "lattice"]) == 0
        assert output(capsys) == ["kind: lattice"]

    def test_unexpected_kind(self, capsys):
        assert run(["check", "fixture:hex6", "--expect", "lattice"]) == 1
        assert "expected lattice, got quasi-lattice" in output(capsys)

    def test_properties(self, capsys):
        status = run(["check", "fixture:nonassoc8", "--property", "associative",
                      "--property", "identities"])
        assert status == 1
        lines = output(capsys)
        assert "associative: fails [join] at (x, y, z): {x_yz} != {x_yz, xy_z}" in lines
        assert "identities: holds" in lines

    def test_modular(self, capsys):
        assert run(["check", "fixture:n5", "--property", "modular"]) == 1
        assert output(capsys)[-1].startswith("modular: fails [modular]")

    def test_invalid_choice(self):
        assert run(["check", "fixture:m3", "--expect", "semilattice"]) == 2


def test_mub(capsys):
    assert run(["mub", "fixture:nonassoc8", "x", "y"]) == 0
    assert output(capsys) == ["xy x_yz"]


def test_mlb(capsys):
    assert run(["mlb", "fixture:hex6", "c", "d"]) == 0
    assert output(capsys) == ["a b"]


def test_unknown_label(capsys):
    assert run(["mub", "fixture:m3", "a", "w"]) == 2
    assert "error:" in capsys.readouterr().err


class TestStructures:
    def test_closure(self, capsys):
        assert run(["ideals", "fixture:nonassoc8", "--closure", "x,y"]) == 0
        assert output(capsys) == ["{0;x;x_yz;xy;xy_z;y;yz;z}"]

    def test_list_filters(self, capsys):
        assert run(["filters", "fixture:chain3"]) == 0
        assert output(capsys) == ["{}", "{1}", "{1;m}", "{0;1;m}"]

    def test_check(self, capsys):
        assert run(["ideals", "fixture:nonassoc8", "--check", "0,x"]) == 0
        assert output(capsys) == ["ideal: holds"]
        assert run(["ideals", "fixture:nonassoc8", "--check", "x"]) == 1
        assert output(capsys)[0].startswith("ideal: fails [ii]")

    def test_closure_and_check_are_exclusive(self):
        assert run(["ideals", "fixture:m3", "--closure", "a", "--check", "a"]) == 2


class TestCongruences:
    def test_list(self, capsys):
        assert run(["congruences", "fixture:chain3"]) == 0
        assert output(capsys) == ["0,m,1", "0,m|1", "0|m,1", "0|m|1"]

    def test_check_fails(self, capsys):
        assert run(["congruences", "fixture:hex6", "--check", "⊥|a,b,c,d|⊤"]) == 1
        lines = output(capsys)
        assert lines[0].startswith("congruence: fails [a-meet] at (a, a, a, b)")
        assert lines[1] == "star: holds"

    def test_bad_partition(self, capsys):
        assert run(["congruences", "fixture:chain3", "--check", "0,m"]) == 2


class TestQuotient:
    def test_chain3(self, capsys):
        status = run(["quotient", "fixture:chain3", "--partition", "0,m|1",
                      "--expect-iso", "fixture:chain2"])
        assert status == 0
        assert output(capsys) == [
            "poset quotient",
            "elements 0 1",
            "cover 0 1",
            "projection 0:0,m:0,1:1",
            "isomorphic: yes 0:0,1:1",
        ]

    def test_not_isomorphic(self, capsys):
        status = run(["quotient", "fixture:chain3", "--partition", "0|m|1",
                      "--expect-iso", "fixture:chain2"])
        assert status == 1
        assert output(capsys)[-1] == "isomorphic: no"

    def test_not_a_congruence(self, capsys):
        assert run(["quotient", "fixture:hex6", "--partition", "⊥|a,b,c,d|⊤"]) == 1
        assert "failed:" in capsys.readouterr().err

    def test_partition_required(self):
        assert run(["quotient", "fixture:chain3"]) == 2


class TestHom:
    def test_swap(self, capsys):
        assert run(["hom", "fixture:chain2", "fixture:chain2", "--map", "0:1,1:0"]) == 1
        assert output(capsys) == ["q-homomorphism: fails [join] at (0, 1): {0} != {1}"]

    def test_kernel(self, capsys):
        status = run(["hom", "fixture:m3", "fixture:m3", "--map", "0:0,a:a,b:b,c:c,1:1",
                      "--kernel"])
        assert status == 0
        assert output(capsys) == ["q-homomorphism: holds", "kernel: 0|a|b|c|1"]

    def test_projection_kernel(self, capsys):
        status = run(["hom", "fixture:chain3", "fixture:chain2", "--map", "0:0,m:0,1:1",
                      "--kernel"])
        assert status == 0
        assert output(capsys)[-1] == "kernel: 0,m|1"

    @pytest.mark.parametrize("mapping", ["0-1,1:0", "0:1,0:0", "0:1", ":1,1:0"])
    def test_bad_map(self, mapping):
        assert run(["hom", "fixture:chain2", "fixture:chain2", "--map", mapping]) == 2


class TestEnumerate:
    def test_small_sweep(self, capsys, tmp_path):
        status = run(["enumerate", "--n", "2", "--jobs", "1", "--out-dir", str(tmp_path)])
        assert status == 0
        lines = output(capsys)
        assert lines[0] == "sweep n_max=2"
        assert "n=2: 3 posets (not-quasi-lattice 1, quasi-lattice 0, lattice 2)" in lines
        assert lines[-1] == "counterexamples: 0"
        assert not list(tmp_path.iterdir())

    def test_selected_claims(self, capsys, tmp_path):
        status = run(["enumerate", "--n", "3", "--claims", "associativity,star",
                      "--out-dir", str(tmp_path)])
        assert status == 0
        assert "claims: associativity, star" in output(capsys)

    def test_unknown_claim(self, capsys):
        assert run(["enumerate", "--n", "2", "--claims", "thm99"]) == 2
        assert "thm99" in capsys.readouterr().err

    def test_bound_exceeded(self):
        assert run(["enumerate", "--n", "5", "--claims", "kernel"]) == 2

    def test_default_bound_is_per_claim(self, monkeypatch, tmp_path):
        seen = {}

        def fake_sweep(**kwargs):
            seen.update(kwargs)
            return verify_theorems(n_max=1, claims=kwargs["claims"], out_dir=kwargs["out_dir"],
                                   show_progress=False)

        monkeypatch.setattr(cli, "verify_theorems", fake_sweep)
        assert run(["enumerate", "--claims", "identities", "--out-dir", str(tmp_path)]) == 0
        assert seen["n_max"] is None

    @pytest.mark.slow
    def test_default_sweep_reaches_five(self, capsys, tmp_path):
        status = run(["enumerate", "--claims", "associativity", "--jobs", "4",
                      "--out-dir", str(tmp_path)])
        assert status == 0
        lines = output(capsys)
        assert lines[0] == "sweep n_max=5"
        assert any(line.startswith("n=5: 4231 posets") for line in lines)
        assert any(line.startswith("  associativity: ") and line.endswith("(n<=5)") for line in lines)

    def test_unwritable_out_dir(self, capsys, monkeypatch, tmp_path):
        original = CLAIMS_BY_ID["identities"]
        monkeypatch.setitem(CLAIMS_BY_ID, "identities", Claim(
            original.id, original.description, original.default_n, original.max_n,
            lambda case: iter([Check("forced", Verdict.fail("forced", case.poset.labels[:1]))]),
        ))
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")
        status = run(["enumerate", "--n", "1", "--jobs", "1", "--claims", "identities",
                      "--out-dir", str(blocker / "out")])
        assert status == 2
        assert capsys.readouterr().err.startswith("error: ")


def test_dot(capsys):
    assert run(["dot", "fixture:chain3"]) == 0
    lines = output(capsys)
    assert lines[0] == 'digraph "chain3" {'
    assert '  "m" -> "1";' in lines


def test_missing_file(capsys, tmp_path):
    assert run(["check", str(tmp_path / "absent.qlat")]) == 2
    assert "introuvable" in capsys.readouterr().err


def test_directory_path(capsys, tmp_path):
    assert run(["check", str(tmp_path)]) == 2
    assert "lecture impossible" in capsys.readouterr().err


def test_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.qlat"
    path.write_text("cover a b\n", encoding="utf-8")
    assert run(["check", str(path)]) == 2
    assert "ligne 1" in capsys.readouterr().err


def test_no_command(capsys):
    assert run([]) == 2


def test_help():
    assert run(["--help"]) == 0


def test_parser_commands():
    parser = build_parser()
    for command in ("check", "mub", "mlb", "ideals", "filters", "congruences",
                    "quotient", "hom", "enumerate", "dot"):
        assert parser.parse_args(_minimal(command)).command == command


def _minimal(command: str) -> list[str]:
    return {
        "mub": ["mub", "f", "a", "b"],
        "mlb": ["mlb", "f", "a", "b"],
        "quotient": ["quotient", "f", "--partition", "a"],
        "hom": ["hom", "f", "g", "--map", "a:b"],
        "enumerate": ["enumerate"],
    }.get(command, [command, "f"])
