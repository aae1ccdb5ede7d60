import csv
import json

import pytest

from stieltjes_lab.cli import TABLE_HEADER, main, parse_measure
from stieltjes_lab.errors import ParameterError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(text.splitlines()))


class TestVerify:
    def test_prop1_passes(self, capsys, tmp_path):
        out = tmp_path / "rep.csv"
        code, _, err = run(capsys, "verify", "--suite", "prop1", "--tolerance", "1e-8", "-o", str(out))
        assert code == 0
        table = rows(out.read_text())
        assert table[0][:3] == ["identity", "params", "grid_size"]
        ks = {r[1].split(",")[0] for r in table[1:] if r[0] == "prop1-vs-quadrature-rel"}
        assert ks == {"k=0", "k=1", "k=2", "k=3"}

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "nope")
        assert code == 2 and "unknown suite" in err

    def test_tight_tolerance_fails(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "humbert", "--tolerance", "1e-30")
        assert code == 1

    def test_bad_config_is_usage_error(self, capsys, tmp_path):
        f = tmp_path / "c.cfg"
        f.write_text("tolerance = -1\n")
        code, _, err = run(capsys, "verify", "--suite", "prop1", "--config", str(f))
        assert code == 2 and "tolerance" in err

    def test_unknown_flag(self, capsys):
        code, _, _ = run(capsys, "verify", "--frobnicate")
        assert code == 2


class TestEval:
    def test_wigner(self, capsys):
        code, out, _ = run(capsys, "eval", "--measure", "wigner", "--lambda", "1", "--z", "2")
        assert code == 0
        table = rows(out)
        assert table[0] == ["z_re", "z_im", "value_re", "value_im", "err", "method"]
        assert {r[5] for r in table[1:]} == {"closed_form", "quadrature"}
        for r in table[1:]:
            assert abs(float(r[2]) - 0.5358984) < 1e-7

    def test_beta_square(self, capsys):
        _, out, _ = run(capsys, "eval", "--measure", "beta:gamma=1.5,beta=1.5", "--lambda", "2", "--z", "2")
        for r in rows(out)[1:]:
            assert abs(float(r[2]) - 0.2871871) < 1e-7

    def test_bernoulli_json(self, capsys):
        _, out, _ = run(capsys, "eval", "--measure", "bernoulli", "--z", "2", "--format", "json")
        data = json.loads(out)
        assert all(abs(d["value_re"] - 2.0 / 3.0) < 1e-15 for d in data)

    def test_support_rows_are_flagged(self, capsys):
        code, out, _ = run(capsys, "eval", "--measure", "wigner", "--z", "0.5", "--z", "3i")
        table = rows(out)
        assert code == 0
        assert table[1][5] == "support_error" and table[1][2] == "nan"
        assert len(table) == 4

    def test_unknown_measure(self, capsys):
        code, _, _ = run(capsys, "eval", "--measure", "cauchy", "--z", "2")
        assert code == 2

    def test_measure_ids(self):
        m, closed = parse_measure("kappa-product:lambda=2", 2.0)
        assert closed is not None
        m, closed = parse_measure("kappa:lambda=2", 2.0)
        assert closed is None
        with pytest.raises(ParameterError):
            parse_measure("bernoulli-power:lambda=0.5")


class TestTable:
    def test_shrinkage_sixty_rows(self, capsys, tmp_path):
        out = tmp_path / "t.csv"
        code, _, _ = run(
            capsys, "table", "--identity", "shrinkage", "--p", "0.5", "--lambda", "3",
            "--grid", "re=0:1.9:0.1;im=0.5,1,2", "-o", str(out),
        )
        table = rows(out.read_text())
        assert code == 0
        assert out.read_text().splitlines()[0] == ",".join(TABLE_HEADER)
        assert len(table) == 61

    def test_empty_grid(self, capsys, tmp_path):
        out = tmp_path / "e.csv"
        code, _, _ = run(capsys, "table", "--identity", "gst1", "--grid", "re=0:1:0.5;im=", "-o", str(out))
        assert code == 0
        assert out.read_text() == ",".join(TABLE_HEADER) + "\n"

    def test_deterministic(self, capsys, tmp_path, monkeypatch):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["table", "--identity", "prop2", "--lambda", "2.5", "--k", "2", "--grid", "re=-2:2:0.5;im=0.5,1"]
        run(capsys, *args, "-o", str(a), "--threads", "4")
        monkeypatch.setenv("STIELTJES_LAB_THREADS", "1")
        run(capsys, *args, "-o", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_number_format(self, capsys):
        _, out, _ = run(capsys, "table", "--identity", "wigner-functional", "--z", "3+2i")
        value = rows(out)[1][0]
        assert value == "3.0000000000000000e+00"

    def test_humbert_sector_map(self, capsys):
        code, out, _ = run(capsys, "table", "--identity", "humbert-sector", "--grid", "re=-1:1:0.5;im=0.2,1")
        table = rows(out)
        assert code == 0 and len(table) == 11
        assert any(r[6] == "nan" for r in table[1:])

    def test_cut_point_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "table", "--identity", "gst1", "--z", "0.5")
        assert code == 2


class TestExpandHumbert:
    def test_expand(self, capsys):
        code, out, _ = run(capsys, "expand", "--lambda", "2", "--gamma", "0.5", "--beta", "0.5", "--z", "2+1j", "--n-max", "5")
        table = rows(out)
        assert code == 0 and table[0] == ["n", "coeff_re", "coeff_im"] and len(table) == 7

    def test_humbert(self, capsys):
        code, out, _ = run(capsys, "humbert", "--d", "2", "--alpha", "1.5", "--y-grid", "re=-2:2:1;im=1,3")
        table = rows(out)
        assert code == 0 and len(table) == 11
        assert max(float(r[4]) for r in table[1:]) < 1e-10
        assert max(float(r[6]) for r in table[1:]) < 1e-8

    def test_humbert_literal_mismatch_for_odd_d(self, capsys):
        _, out, _ = run(capsys, "humbert", "--d", "3", "--literal", "--y-grid", "re=0:0:1;im=3")
        assert float(rows(out)[1][5]) > 1e-6
