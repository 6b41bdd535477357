import subprocess
import sys
from pathlib import Path

import pytest

from setbdd.cli import RunOptions, main, parse_script, run
from setbdd.lang import SetSyntaxError

GOLDEN = Path(__file__).parent / "golden"

SUBSET_SCRIPT = "decl A B; assume A <= B; check A & B == A;"
BOTTOM_SCRIPT = "decl A;\nassume A <= 0;\nassume U <= A;\ncheck false;\n"
PROJECT_SCRIPT = "decl A B C;\nassume A <= B and B <= C;\nproject B;\ncheck A <= C;\n"


def test_subset_script():
    report, code = run(SUBSET_SCRIPT)
    assert code == 0
    assert report == (
        "L1: decl A B -> ok\n"
        "L1: assume (A <= B) -> ok\n"
        "L1: check ((A & B) == A) -> pass\n"
    )


def test_bottom_script():
    report, code = run(BOTTOM_SCRIPT, RunOptions(universe=1))
    assert code == 0
    assert report.splitlines()[2:] == ["L3: assume (U <= A) -> bottom", "L4: check false -> pass"]


def test_projection_script():
    report, code = run(PROJECT_SCRIPT)
    assert code == 0
    assert report.splitlines()[-1] == "L4: check (A <= C) -> pass"


def test_failed_check_exits_2():
    report, code = run("decl A B;\ncheck A <= B;\ncheck true;\n")
    assert code == 2
    assert "L2: check (A <= B) -> fail" in report
    assert "L3: check true -> pass" in report


def test_checknot_is_satisfiability():
    assert run("decl A; checknot false;")[1] == 0
    assert run("decl A; assume A <= 0 and U <= A; checknot false;")[1] == 2


@pytest.mark.parametrize("script, fragment", [
    ("decl A; assume A <= ;", "error: 1:21:"),
    ("decl A; frobnicate;", "unknown command 'frobnicate'"),
    ("decl A; check A <= B;", "unbound set variable 'B'"),
    ("check A <= A; decl A;", "unbound set variable 'A'"),
    ("decl A; pop;", "cannot pop the last state"),
    ("decl A; join;", "join needs two states"),
    ("decl A; gamma;", "no universe"),
    ("universe 1; universe 2;", "at most one universe"),
    ("decl A; decl A;", "declared twice"),
    ("decl A B; push; project A; join;", "binding mismatch"),
    ("decl A B; project A; check A <= B;", "unbound set variable 'A'"),
    ("decl A", "expected ';'"),
    ('decl A; dot "unterminated;', "unterminated string"),
])
def test_errors_exit_1(script, fragment):
    report, code = run(script)
    assert code == 1
    assert fragment in report


def test_oracle_cap_exceeded_exits_1():
    report, code = run("universe 3; decl A B C; gamma;", RunOptions(max_enum=100))
    assert code == 1
    assert "exceed the enumeration cap" in report


def test_stats_with_universe():
    report, code = run("decl A B; stats;", RunOptions(universe=1))
    assert report.splitlines()[-1] == "L1: stats -> nodes=0 support=[] gamma=4"


def test_stats_skips_gamma_beyond_cap():
    report, _ = run("decl A B; stats;", RunOptions(universe=3, max_enum=10))
    assert report.splitlines()[-1] == "L1: stats -> nodes=0 support=[]"


def test_gamma_listing():
    report, code = run("universe 1; decl A B; assume A <= B; gamma;")
    assert code == 0
    assert report.splitlines()[-1] == (
        "L1: gamma -> 3 valuations: {A={}, B={}} {A={}, B={1}} {A={1}, B={1}}"
    )


def test_push_join_widen():
    report, code = run(
        "universe 2; decl A;\n"
        "push; assume A <= 0;\n"
        "swap; assume U <= A;\n"
        "push; pop;\n"
        "join; gamma;\n"
        "push; widen; check true;\n"
    )
    assert code == 0, report
    lines = report.splitlines()
    # the join of A = {} and A = U is the true BDD: all four valuations
    assert lines[9] == "L5: gamma -> 4 valuations: {A={}} {A={2}} {A={1}} {A={1,2}}"
    assert lines[-2] == "L6: widen -> ok (depth 1)"


def test_swap():
    report, code = run("universe 1; decl A; push; assume A <= 0; swap; gamma; swap; gamma;")
    assert code == 0
    assert report.splitlines()[-3:] == [
        "L1: gamma -> 2 valuations: {A={}} {A={1}}",
        "L1: swap -> ok (depth 2)",
        "L1: gamma -> 1 valuations: {A={}}",
    ]
    assert run("decl A; swap;")[1] == 1


def test_order_alpha_changes_variable_order(tmp_path):
    script = 'decl B A; assume A <= B; dot "g.dot";'
    run(script, RunOptions(order="decl", dot_dir=str(tmp_path)))
    by_decl = (tmp_path / "g.dot").read_text()
    run(script, RunOptions(order="alpha", dot_dir=str(tmp_path)))
    by_alpha = (tmp_path / "g.dot").read_text()
    assert by_decl != by_alpha
    # alphabetical order puts A at the root
    assert by_alpha == (GOLDEN / "a_subset_b.dot").read_text()


def test_dot_subset(tmp_path):
    report, code = run('decl A B; assume A <= B; dot "ab.dot";', RunOptions(dot_dir=str(tmp_path)))
    assert code == 0
    dot = (tmp_path / "ab.dot").read_text()
    assert dot == (GOLDEN / "a_subset_b.dot").read_text()
    assert dot.count("shape=circle") == 2
    # A's else edge goes to true, its then edge tests B
    assert "n5 -> n1 [style=solid];" in dot and "n5 -> n3 [style=dashed];" in dot


def test_dot_top(tmp_path):
    run('decl A; dot "t.dot";', RunOptions(dot_dir=str(tmp_path)))
    assert (tmp_path / "t.dot").read_text() == 'digraph bdd {\n  n1 [label="T", shape=box];\n}\n'


def test_dot_write_failure(tmp_path):
    report, code = run('decl A; dot "missing/dir/x.dot";', RunOptions(dot_dir=str(tmp_path)))
    assert code == 1
    assert "cannot write" in report


def test_determinism(tmp_path):
    script = PROJECT_SCRIPT + 'stats; gamma; dot "p.dot";\n'
    outs = []
    for _ in range(2):
        report, code = run(script, RunOptions(universe=2, dot_dir=str(tmp_path)))
        outs.append((report, code, (tmp_path / "p.dot").read_bytes()))
    assert outs[0] == outs[1]


def test_comments_and_line_numbers():
    report, _ = run("# header\ndecl A;   # names\n\ncheck A <= A;\n")
    assert report == "L2: decl A -> ok\nL4: check (A <= A) -> pass\n"


def test_main_reads_script_file(tmp_path, capsys):
    path = tmp_path / "s.sets"
    path.write_text(SUBSET_SCRIPT)
    assert main(["--script", str(path)]) == 0
    assert capsys.readouterr().out.endswith("-> pass\n")
    assert main(["--script", str(tmp_path / "nope")]) == 1


def test_console_entry_point_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "setbdd.cli", "--universe", "1"],
        input=BOTTOM_SCRIPT, capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "L4: check false -> pass"
    proc = subprocess.run(
        [sys.executable, "-m", "setbdd.cli"], input="decl A B; check A <= B;",
        capture_output=True, text=True,
    )
    assert proc.returncode == 2


def test_parse_script_reports_position():
    with pytest.raises(SetSyntaxError) as exc:
        parse_script("decl A;\n\n  assume A <= B <= C;")
    assert (exc.value.line, exc.value.col) == (3, 17)
