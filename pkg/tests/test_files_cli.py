import io
import os

import pytest

from supervec.cli import main
from supervec.errors import FileFormatError
from supervec.files import (
    bundled_manifold_names,
    load_bundled_manifold,
    load_manifold,
    load_pullback,
    manifold_text,
    parse_manifold_text,
    parse_pullback_text,
    pullback_text,
    resolve_manifold,
)
from supervec.geometry import CHART0
from supervec.grassmann import PullbackData


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_bundled_manifolds_roundtrip():
    names = bundled_manifold_names()
    assert names == sorted(
        ["k-1", "k0", "k1", "k2", "k3", "k5", "split-2-2", "split-3-1", "nonsplit-2-2", "c01"]
    )
    from importlib import resources

    for name in names:
        manifold = load_bundled_manifold(name)
        raw = resources.files("supervec").joinpath("manifolds", name + ".smf").read_text()
        assert manifold_text(manifold) == raw
        assert parse_manifold_text(manifold_text(manifold)) == manifold


def test_manifold_file_errors(tmp_path):
    bad = tmp_path / "bad.smf"
    bad.write_text("[manifold]\nname = x\n")
    with pytest.raises(FileFormatError):
        load_manifold(bad)
    bad.write_text("[manifold]\nname = x\nodd_dim = 1\n")
    with pytest.raises(FileFormatError):
        load_manifold(bad)
    bad.write_text("[manifold]\nname = x\nodd_dim = 1\nkind = weird\n")
    with pytest.raises(FileFormatError):
        load_manifold(bad)
    bad.write_text("[manifold]\nname = x\nodd_dim = 2\n\n[transition]\nw = z^-1\neta1 = z*t1\n")
    with pytest.raises(FileFormatError):
        load_manifold(bad)
    with pytest.raises(FileFormatError):
        load_manifold(tmp_path / "missing.smf")
    with pytest.raises(FileFormatError):
        resolve_manifold("no-such-bundle")


def test_pullback_roundtrip(tmp_path):
    text = "[pullback]\nz = z + 2*z^3*t1*t2\nt1 = t1\nt2 = t2\n"
    p = parse_pullback_text(text)
    assert p.source_chart == CHART0 and p.target_chart == CHART0
    assert pullback_text(p) == text
    path = tmp_path / "p.spb"
    path.write_text(text)
    assert load_pullback(path) == p


def test_pullback_file_errors(tmp_path):
    with pytest.raises(FileFormatError):
        parse_pullback_text("[pullback]\nz = z\nt2 = t2\n")
    with pytest.raises(FileFormatError):
        parse_pullback_text("[pullback]\nt1 = t1\n")
    with pytest.raises(FileFormatError):
        # odd image with even parity
        parse_pullback_text("[pullback]\nz = z\nt1 = 1\n")


def test_cli_vec_bundled():
    code, out, err = run(["vec", "--manifold", "k2"])
    assert code == 0 and not err
    assert "dim even: 4" in out and "dim odd: 4" in out


def test_cli_vec_machine_deterministic():
    runs = [run(["vec", "--manifold", "nonsplit-2-2", "--machine"]) for _ in range(2)]
    assert runs[0] == runs[1]
    code, out, _ = runs[0]
    assert code == 0
    assert "dim_even=6" in out and "dim_odd=6" in out


def test_cli_gr_emits_split_file():
    code, out, err = run(["gr", "--manifold", "nonsplit-2-2"])
    assert code == 0
    assert "w = z^-1\n" in out
    assert "even 6" in out and "even 7" in out
    assert "total 12 <= 13: holds" in out


def test_cli_check_bad_file(tmp_path):
    bad = tmp_path / "bad.smf"
    bad.write_text("[manifold]\nname = bad\nodd_dim = 1\n\n[transition]\nw = z\neta1 = t1\n")
    code, out, err = run(["check", "--manifold", str(bad)])
    assert code == 2
    assert "BadReducedMap" in err
    assert not out


def test_cli_check_ok(tmp_path):
    code, out, err = run(["check", "--manifold", "c01"])
    assert code == 0 and "ok: c01" in out


def test_cli_syntax_error_exit_2(tmp_path):
    bad = tmp_path / "bad.smf"
    bad.write_text("[manifold]\nname = bad\nodd_dim = 1\n\n[transition]\nw = z^-1\neta1 = t1*t1\n")
    code, out, err = run(["check", "--manifold", str(bad)])
    assert code == 2
    assert "RepeatedOddVariable" in err


def test_cli_math_error_exit_3():
    code, out, err = run(["vec", "--manifold", "k5", "--cap", "3"])
    assert code == 3
    assert "CapNotSaturated" in err


def test_cli_weights():
    code, out, err = run(["weights", "--manifold", "k1", "--cartan", "1"])
    assert code == 0
    assert "multiplicity" in out
    code, out, err = run(["weights", "--manifold", "k1", "--cartan", "5"])
    assert code == 3 and "OddCartan" in err


def test_cli_brackets_point():
    code, out, err = run(["brackets", "--manifold", "c01"])
    assert code == 0
    assert "[b0,b1] = -1*b1" in out
    assert "jacobi: pass" in out


def test_cli_flow_and_files(tmp_path):
    code, out, err = run(["flow", "--field", "z^3*t1*t2", "--time", "2"])
    assert code == 0
    assert out == "[pullback]\nz = z + 2*z^3*t1*t2\nt1 = t1\nt2 = t2\n"
    p = tmp_path / "p.spb"
    p.write_text(out)
    code, inv_text, err = run(["invert", "--pullback", str(p)])
    assert code == 0
    assert inv_text == "[pullback]\nz = z - 2*z^3*t1*t2\nt1 = t1\nt2 = t2\n"
    q = tmp_path / "q.spb"
    q.write_text(inv_text)
    code, composed, err = run(["compose", str(p), str(q)])
    assert code == 0
    assert composed == "[pullback]\nz = z\nt1 = t1\nt2 = t2\n"


def test_cli_decompose(tmp_path):
    p = tmp_path / "p.spb"
    p.write_text("[pullback]\nz = z + z^2*t1*t2\nt1 = 2*t1\nt2 = 1/2*t2\n")
    code, out, err = run(["decompose", "--pullback", str(p)])
    assert code == 0
    assert "z = z\nt1 = 2*t1\nt2 = 1/2*t2" in out
    assert "generator" in out and "d/dz" in out


def test_cli_report_machine():
    code, out, err = run(["report", "--manifold", "k3", "--machine"])
    assert code == 0
    assert "split_supergroup=true" in out
    assert "jacobi=true" in out
    code, out, err = run(["report", "--manifold", "k1", "--machine"])
    assert "split_supergroup=false" in out


def test_cli_report_human_deterministic():
    a = run(["report", "--manifold", "split-3-1"])
    b = run(["report", "--manifold", "split-3-1"])
    assert a == b and a[0] == 0


def test_cli_missing_args_exit_2():
    code, out, err = run(["vec"])
    assert code == 2


def test_point_file_rejects_higher_odd_dim(tmp_path):
    bad = tmp_path / "bad.smf"
    bad.write_text("[manifold]\nname = pt\nodd_dim = 2\nkind = c01\n")
    with pytest.raises(FileFormatError):
        load_manifold(bad)


def test_cli_gr_machine():
    code, out, err = run(["gr", "--manifold", "nonsplit-2-2", "--machine"])
    assert code == 0
    assert "dim_even=6" in out and "gr.dim_even=7" in out and "split=false" in out


def test_cli_report_echoes_transition():
    code, out, err = run(["report", "--manifold", "nonsplit-2-2", "--machine"])
    assert code == 0
    assert "transition.w=z^-1 + z^-3*t1*t2" in out
    assert "gr.inequality=holds" in out
    code, out, err = run(["report", "--manifold", "k2"])
    assert "w = z^-1" in out
    assert "gr inequality (total 8 <= 8): holds" in out
