import pytest

from hyperreg.cli import main, run


@pytest.fixture
def d(tmp_path):
    return tmp_path


def ok(argv):
    res = run([str(a) for a in argv])
    assert res.code == 0, res.stderr
    return res.stdout.splitlines()


def test_template_verify_and_count(d):
    t = d / "t.hgr"
    assert ok(["template", "--h", 2, "--k", 3, "-o", t]) == ["vertices=24 edges=48 negative=24"]
    lines = ok(["verify", "template", "-i", t])
    assert lines[0] == "YES" and lines[1] == "p1_lambda=2"
    assert ok(["clique", "-i", t, "--count", "--template"]) == ["8"]
    assert ok(["clique", "-i", t])[0] == "YES"


def test_regularize_and_verify_product(d):
    g, t, gp, m = d / "g.hgr", d / "t.hgr", d / "gp.hgr", d / "map.txt"
    g.write_text("hgr k=3 h=2 parts=1,1,1\ne 0:0 1:0\ne 0:0 2:0\ne 1:0 2:0\n")
    ok(["template", "--h", 2, "--k", 3, "-o", t])
    assert ok(["regularize", "-i", g, "--k", 3, "-o", gp, "--map", m]) == ["vertices=72 edges=216 lambda=6"]
    assert ok(["verify", "product", "-i", g, "-i2", t, "-i3", gp]) == ["YES", "lambda=6 expected=6"]
    assert ok(["verify", "regular", "-i", gp, "--s", 1]) == ["YES", "lambda=6"]
    assert ok(["clique", "-i", gp, "--count"]) == ["48"]
    assert len(m.read_text().splitlines()) == 72


def test_verify_regular_no(d):
    g = d / "g.hgr"
    g.write_text("hgr k=3 h=2 parts=2,2,2\ne 0:0 1:0\n")
    lines = ok(["verify", "regular", "-i", g, "--s", 1])
    assert lines == ["NO", "witness=0:1 count=0"]


def test_reduce_and_solve(d):
    g, c = d / "g.hgr", d / "c.csp"
    ok(["gen", "sum-regular", "--k", 4, "--n", 4, "--t", 2, "--seed", 3, "--zero-clique", "-o", g])
    line = ok(["reduce", "csp", "-i", g, "--fn-tt", "00010111", "-o", c])[0]
    assert line.startswith("tau=") and "case=beta_pos" in line
    brute = ok(["solve", "-i", c, "--method", "brute"])
    fast = ok(["solve", "-i", c])
    assert brute[0] == fast[0]
    tau = int(line.split()[0].split("=")[1])
    assert int(brute[0].split("=")[1]) >= tau
    assert ok(["clique", "-i", g])[0] == "YES"


def test_c4_pipeline(d):
    g, c = d / "g.hgr", d / "c.graph"
    ok(["gen", "parity-regular", "--k", 4, "--n", 4, "--seed", 0, "-o", g])
    assert ok(["reduce", "c4", "-i", g, "-o", c]) == ["vertices=64 degree=7"]
    assert ok(["c4", "-i", c]) == ["NO"]
    assert ok(["clique", "-i", g]) == ["NO"]


def test_gen_is_deterministic(d):
    for kind in (["sum-regular", "--t", 2], ["parity-regular"], ["random", "--p", 0.5]):
        a, b = d / "a", d / "b"
        args = ["gen", kind[0], "--k", 4, "--n", 4, "--seed", 9] + kind[1:]
        ok(args + ["-o", a])
        ok(args + ["-o", b])
        assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "argv,code",
    [
        (["gen", "sum-regular", "--k", "4", "--n", "4", "--t", "2"], 2),  # no seed
        (["gen", "sum-regular", "--k", "4", "--n", "4", "--seed", "1", "-o", "x"], 2),  # no t
        (["bogus"], 2),
        (["template", "--h", "3", "--k", "8", "-o", "x"], 3),  # too large
        (["gen", "sum-regular", "--k", "4", "--n", "4", "--t", "4", "--seed", "1", "-o", "x"], 3),
        (["solve", "-i", "/nonexistent/file"], 2),
    ],
)
def test_exit_codes(d, argv, code):
    argv = [str(d / a) if a == "x" else a for a in argv]
    res = run(argv)
    assert res.code == code
    assert res.stderr


def test_bad_input_file(d):
    g = d / "g.hgr"
    g.write_text("hgr k=3 h=2 parts=2,2,2\ne 0:0 0:1\n")
    assert run(["clique", "-i", str(g)]).code == 2
    c = d / "c.csp"
    c.write_text("csp vars=3\nfn f arity=2 tt=0110\nct f 0 1\n")
    assert run(["solve", "-i", str(c)]).code == 2  # no k anywhere
    assert run(["solve", "-i", str(c), "--k", "5"]).code == 3


def test_main_writes_streams(capsys, d):
    t = d / "t.hgr"
    assert main(["template", "--h", "2", "--k", "3", "-o", str(t)]) == 0
    assert "vertices=24" in capsys.readouterr().out
