import io
import json

import pytest

from sldtree.cli import (EXIT_ERROR, EXIT_NO_ANSWERS, EXIT_OK, EXIT_TRUNCATED,
                         RunConfig, main, run)
from sldtree.engine import Limits
from sldtree.fixtures import FIXTURES


def invoke(cfg):
    out, err = io.StringIO(), io.StringIO()
    code = run(cfg, out, err)
    return code, out.getvalue(), err.getvalue()


def test_fixture_db_with_answers():
    code, out, err = invoke(RunConfig(db="romance", query="jealous(X, Y)"))
    assert code == EXIT_OK
    assert err == ""
    assert "[jealous(X,Y)]" in out
    assert out.endswith(
        "X = vincent, Y = vincent\n\n"
        "X = vincent, Y = marsellus\n\n"
        "X = marsellus, Y = vincent\n\n"
        "X = marsellus, Y = marsellus\n")


def test_tree_and_answers_are_separated_by_a_blank_line():
    code, out, _ = invoke(RunConfig(db="member", query="member(X, [a])"))
    assert code == EXIT_OK
    tree_part, answer_part = out.rsplit("\n\n", 1)
    assert tree_part.startswith("")
    assert answer_part == "X = a\n"


def test_no_answers_prints_false_and_exits_1():
    code, out, err = invoke(RunConfig(db="member", query="member(x, [a,b,c])"))
    assert code == EXIT_NO_ANSWERS
    assert out.endswith("false.\n")
    assert err == ""


def test_ground_success_prints_true():
    code, out, _ = invoke(RunConfig(db="member", query="member(a, [a])"))
    assert code == EXIT_OK
    assert out.endswith("\n\ntrue.\n")


def test_answers_only_format():
    code, out, _ = invoke(RunConfig(db="romance", query="jealous(X, Y)",
                                    format="answers-only"))
    assert code == EXIT_OK
    assert out.startswith("X = vincent, Y = vincent\n")
    assert "[" not in out  # no tree, no boxes


def test_canonical_format_emits_the_json_document():
    code, out, _ = invoke(RunConfig(db="member", query="member(X, [a])",
                                    format="canonical"))
    assert code == EXIT_OK
    doc_text, answers = out.rsplit("\n\n", 1)
    doc = json.loads(doc_text)
    assert doc["format"] == "sld-search-tree/1"
    assert answers == "X = a\n"


def test_file_db(tmp_path):
    db = tmp_path / "kb.pl"
    db.write_text("p(file_wins).\n", encoding="utf-8")
    code, out, _ = invoke(RunConfig(db=str(db), query="p(X)"))
    assert code == EXIT_OK
    assert "X = file_wins" in out


def test_missing_db_and_query_is_a_usage_error():
    code, out, err = invoke(RunConfig())
    assert code == EXIT_ERROR
    assert out == ""
    assert "required" in err


def test_unknown_db_name():
    code, _, err = invoke(RunConfig(db="no_such_thing", query="p"))
    assert code == EXIT_ERROR
    assert "no such file or bundled fixture: no_such_thing" in err


def test_parse_error_reports_position():
    code, _, err = invoke(RunConfig(db="romance", query="jealous(X,"))
    assert code == EXIT_ERROR
    assert err.startswith("error: line 1, column")


def test_unknown_predicate_error_mode():
    code, _, err = invoke(RunConfig(db="magic", query="magic(Hermione)",
                                    unknown="error"))
    assert code == EXIT_ERROR
    assert err == "error: unknown predicate wizard/1 in goal wizard(X)\n"


def test_unknown_predicate_fail_mode_still_answers():
    code, out, _ = invoke(RunConfig(db="magic", query="magic(X)"))
    assert code == EXIT_OK
    assert "X = dobby" in out


def test_truncation_warns_and_exits_3(tmp_path):
    db = tmp_path / "loop.pl"
    db.write_text("p :- p.\n", encoding="utf-8")
    code, out, err = invoke(RunConfig(db=str(db), query="p",
                                      limits=Limits(max_depth=20)))
    assert code == EXIT_TRUNCATED
    assert "..." in out
    assert out.endswith("false.\n")
    assert err == "warning: tree truncated by depth/node limits\n"


def test_list_fixtures():
    code, out, err = invoke(RunConfig(list_fixtures=True))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == len(FIXTURES)
    assert "romance: jealous(X,Y)" in lines
    names = [line.split(":")[0] for line in lines]
    assert names == [f.name for f in FIXTURES]


def test_run_is_deterministic():
    cfg = RunConfig(db="descend", query="descend(anne, donna)", width=60)
    assert invoke(cfg) == invoke(cfg)


def test_rename_style_flows_through():
    code, out, _ = invoke(RunConfig(db="member", query="member(X, [a,b])",
                                    rename="numeric"))
    assert code == EXIT_OK
    assert "X1" in out and "X'" not in out


def test_width_flows_through():
    wide = invoke(RunConfig(db="descend", query="descend(anne, donna)",
                            width=400))
    narrow = invoke(RunConfig(db="descend", query="descend(anne, donna)",
                              width=60))
    assert wide[0] == narrow[0] == EXIT_OK
    assert wide[1] != narrow[1]


# -- argv entry point --------------------------------------------------------

def test_main_happy_path(capsys):
    code = main(["--db", "romance", "--query", "jealous(X, Y)"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert "X = marsellus, Y = marsellus" in captured.out


def test_main_rejects_bad_limits(capsys):
    code = main(["--db", "romance", "--query", "p", "--max-depth", "0"])
    assert code == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_main_rejects_bad_width(capsys):
    code = main(["--db", "romance", "--query", "p", "--width", "10"])
    assert code == EXIT_ERROR
    assert "max_width" in capsys.readouterr().err


def test_main_rejects_unknown_format():
    with pytest.raises(SystemExit):
        main(["--db", "romance", "--query", "p", "--format", "yaml"])


def test_main_list_fixtures(capsys):
    assert main(["--list-fixtures"]) == EXIT_OK
    assert "member:" in capsys.readouterr().out
