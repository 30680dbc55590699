import json

import pytest

from rwcalc.cli import main
from rwcalc.matfac import koszul
from rwcalc.poly import Variable, poly, vdiff


def test_series_specialized(capsys):
    assert main(["series", "--g", "2", "--n", "1", "--subs", "s=-t"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "(1 - t*u)*(1 - t*u^-1)*t"


def test_series_json(capsys):
    assert main(["series", "--g", "1", "--n", "1", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert "numerator-terms" in data and "denominator-factors" in data


def test_eval_genus(capsys):
    assert main(["eval", "--genus", "1", "--n", "1", "--graded"]) == 0
    out = capsys.readouterr().out
    assert "series:" in out


def test_eval_word_file(tmp_path, capsys):
    f = tmp_path / "word.txt"
    f.write_text("cap . cup")
    assert main(["eval", "--word", str(f), "--n", "1", "--graded",
                 "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert "series" in data


def test_eval_twists(capsys):
    assert main(["eval", "--genus", "0", "--n", "1", "--graded",
                 "--twists", "r_nh=-1/2,r_sh=-1/2"]) == 0
    out = capsys.readouterr().out
    assert "t^-1" in out


def test_check_zorro(capsys):
    assert main(["check", "zorro", "--n", "1"]) == 0
    out = capsys.readouterr().out
    assert out.count(": ok") == 8


def test_normalize(tmp_path, capsys):
    x, y = Variable("x1"), Variable("y1")
    a, ap = Variable("a1"), Variable("a1", 1)
    w = koszul(vdiff(y, x), vdiff(ap, a)).tensor(
        koszul(vdiff(ap, a), vdiff(x, y)), shared={a, ap, x, y}
    ).with_internal([a, ap, x, y])
    f = tmp_path / "w.json"
    f.write_text(json.dumps(w.to_json()))
    assert main(["normalize", str(f), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["word"]["factors"] and data["trace"]


def test_usage_error():
    assert main(["series", "--g", "1"]) == 2  # missing --n
    assert main(["eval", "--n", "1"]) == 2    # neither word nor genus


def test_bad_substitution(capsys):
    assert main(["series", "--g", "1", "--n", "1", "--subs", "s=t"]) == 2
