import pytest

from thermalbell.cli import main
from thermalbell.report import CSV_HEADER, csv_text


def read(path):
    return path.read_bytes().decode("utf-8")


def test_threshold_prints_analytic_value(capsys):
    code = main("threshold --quantity C --axis temperature --n 2 --j 1 --delta 1 --b 0 --lo 0.5 --hi 3".split())
    assert code == 0
    assert capsys.readouterr().out.strip() == "1.820478"


def test_threshold_no_crossing(capsys):
    code = main("threshold --quantity M --axis temperature --n 3 --j -1 --delta 0 --lo 0.01 --hi 5".split())
    assert code == 0
    assert capsys.readouterr().out.startswith("no crossing")


def test_threshold_csv_row(tmp_path):
    out = tmp_path / "t.csv"
    assert main(f"threshold --quantity C --axis field --n 2 --j -1 --delta 0 --t 0.05 "
                f"--lo 0 --hi 10 --floor 1e-10 --out {out}".split()) == 0
    lines = read(out).splitlines()
    assert len(lines) == 2 and lines[1].startswith("field,") and ",C-threshold," in lines[1]


def test_figure_one_layout_and_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["figure", "--id", "1", "--out", str(a)]) == 0
    assert main(["figure", "--id", "1", "--out", str(b)]) == 0
    raw = a.read_bytes()
    assert raw == b.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "axis,value,curve,M,C,D,chsh_max"
    assert len(lines) == 1 + 4 * 200
    assert {line.split(",")[2] for line in lines[1:]} == {"B=0", "B=1", "B=2", "B=2.5"}


def test_figure_png(tmp_path):
    csv_path, png = tmp_path / "f5.csv", tmp_path / "f5.png"
    assert main(["figure", "--id", "5", "--out", str(csv_path), "--plot", str(png)]) == 0
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_sweep_single_point(tmp_path):
    out = tmp_path / "s.csv"
    assert main(f"sweep --n 2 --j 1 --delta 1 --b 0 --axis temperature --from 0.5 --to 0.5 "
                f"--points 1 --quantities M,C --out {out}".split()) == 0
    lines = read(out).splitlines()
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert fields[:3] == ["temperature", "0.5", "N=2"]
    assert fields[5] == "" and fields[6] == ""
    # twelve significant digits
    assert len(fields[3].lstrip("-").replace(".", "").lstrip("0")) <= 12


def test_sweep_field_needs_temperature(capsys):
    assert main("sweep --n 2 --axis field --from 0 --to 1 --points 3 --out x.csv".split()) == 2


@pytest.mark.parametrize("argv", [
    "sweep --n 2 --axis temperature --from 0.1 --to 1 --points 0 --out x.csv",
    "sweep --n 2 --axis temperature --from 0.1 --to 1 --points 3 --quantities M,Q --out x.csv",
    "sweep --n 2 --axis temperature --from 0.1 --to 1 --points 3 --out x.csv --bogus 1",
    "sweep --n 1 --axis temperature --from 0.1 --to 1 --points 3 --out x.csv",
    "sweep --n 2 --axis temperature --from 0 --to 1 --points 3 --out x.csv",
    "figure --id 6 --out x.csv",
    "figure --out x.csv",
    "threshold --quantity C --axis temperature --n 2 --lo 3 --hi 1",
    "threshold --quantity X --axis temperature --n 2 --lo 0.1 --hi 1",
    "verify --max-n 1",
    "verify --max-n 13",
    "",
])
def test_usage_errors_exit_2(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv.split()) == 2


def test_unwritable_path_exits_3(tmp_path):
    target = tmp_path / "missing" / "f.csv"
    assert main(["figure", "--id", "2", "--out", str(target)]) == 3


def test_verify_passes(capsys):
    assert main("verify --max-n 4 --seed 42 --draws 3".split()) == 0
    out = capsys.readouterr().out
    for suite in ("oracle-equivalence", "symmetry", "consistency-triangle", "threshold-ordering"):
        assert f"{suite}" in out
    assert "FAIL" not in out


def test_verify_failure_exits_1(monkeypatch):
    from thermalbell import verification

    monkeypatch.setattr(verification, "ORACLE_TOL", -1.0)
    assert main("verify --max-n 2 --seed 1 --draws 1".split()) == 1


def test_csv_text_empty_rows():
    assert csv_text([]) == ",".join(CSV_HEADER) + "\n"
