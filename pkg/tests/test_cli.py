import pytest

from hopsym.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_table_seven(tmp_path, capsys):
    code, out = run(capsys, "table", "--max-degree", "7", "--out", str(tmp_path))
    assert code == 0
    rows = [ln for ln in out.out.splitlines() if ln.startswith("| ") and not ln.startswith("| No.")]
    assert len(rows) == 20
    assert (tmp_path / "table.csv").exists() and (tmp_path / "table.cfg.txt").exists()


def test_table_two(tmp_path, capsys):
    code, out = run(capsys, "table", "--max-degree", "2", "--out", str(tmp_path))
    rows = [ln for ln in out.out.splitlines() if ln.startswith("| ") and not ln.startswith("| No.")]
    assert code == 0 and len(rows) == 1 and "2.1" in rows[0]


def test_table_rejects_degree_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["table", "--max-degree", "1"])
    assert exc.value.code == 2


def test_spectrum_counts(tmp_path, capsys):
    code, _ = run(capsys, "spectrum", "--k", "1,-1,1", "--samples", "401", "--out", str(tmp_path), "--no-figure")
    assert code == 0
    lines = (tmp_path / "spectrum_kpmp.csv").read_text().splitlines()
    assert lines[0] == "re,im,t_index" and len(lines) == 1 + 1203


def test_spectrum_negative_first_sign(tmp_path, capsys):
    code, _ = run(capsys, "spectrum", "--k", "-1,1", "--samples", "5", "--out", str(tmp_path), "--no-figure")
    assert code == 0


def test_bad_sign_token(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--k", "1,+,1"])
    assert exc.value.code == 2
    assert "'+'" in capsys.readouterr().err


def test_verify_bogus_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_verify_prop1_single(capsys):
    code, out = run(capsys, "verify", "--suite", "prop1", "--k", "1")
    assert code == 0 and out.out.startswith("PASS prop1 k=(1)")


def test_verify_thm2_sweep(capsys):
    code, out = run(capsys, "verify", "--suite", "thm2")
    lines = out.out.splitlines()
    assert code == 0 and len(lines) == 135 and all(ln.startswith("PASS") for ln in lines)


def test_finite_spectrum(capsys):
    code, out = run(capsys, "finite-spectrum", "--k", "1")
    assert code == 0 and out.out.splitlines()[0] == "re,im" and len(out.out.splitlines()) == 3


def test_render_preimage_with_sidecar(tmp_path, capsys):
    args = ["render", "--kind", "preimage", "--poly", "0,0,1", "--resolution", "64", "--out", str(tmp_path)]
    code, _ = run(capsys, *args, "--name", "disk", "--format", "both")
    assert code == 0
    for name in ("disk.ppm", "disk.png", "disk.fig.png", "disk.cfg.txt"):
        assert (tmp_path / name).exists()
    side = (tmp_path / "disk.cfg.txt").read_text()
    assert "kind = preimage" in side and "resolution = 64" in side
    first = (tmp_path / "disk.ppm").read_bytes()
    run(capsys, *args, "--name", "disk", "--threads", "3")
    assert (tmp_path / "disk.ppm").read_bytes() == first


def test_render_julia_rejects_many_polys(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["render", "--kind", "julia", "--max-degree", "4", "--resolution", "16", "--no-figure"])
    assert exc.value.code == 2


def test_config_file_defaults(tmp_path, capsys):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("# julia job\nkind = julia\nk = 1,-1,1\nresolution = 32\nfigure = false\nname = j\n")
    code, _ = run(capsys, "--config", str(cfg), "render", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "j.ppm").exists() and not (tmp_path / "j.fig.png").exists()
    assert f"config = {cfg}" in (tmp_path / "j.cfg.txt").read_text()


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(SystemExit) as exc:
        main(["--config", str(cfg), "table"])
    assert exc.value.code == 2


def test_closure_and_enumerate(tmp_path, capsys):
    code, out = run(capsys, "closure", "--max-degree", "6", "--out", str(tmp_path))
    assert code == 0 and "λ^4" in out.out
    code, out = run(capsys, "enumerate", "--max-degree", "8", "--out", str(tmp_path))
    assert code == 0 and (tmp_path / "symmetries.csv").exists() and (tmp_path / "symmetry_counts.png").exists()
