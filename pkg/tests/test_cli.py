import json

import pytest

from dgzgalois.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_q2(capsys):
    code, out, _ = run(capsys, "build", "--q", "2")
    data = json.loads(out)
    assert code == 0 and data["degree"] == 4 and data["schema_version"] == 1
    assert data["checks"]["matches_quartic_closed_form"]


def test_build_q3(capsys):
    code, out, _ = run(capsys, "build", "--q", "3")
    assert code == 0 and json.loads(out)["degree"] == 18


def test_not_prime_power(capsys):
    code, _, err = run(capsys, "build", "--q", "6")
    assert code == 2 and "prime power" in err


def test_missing_q_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build"])
    assert exc.value.code == 2


def test_verify_facts_q2_skips(capsys):
    code, out, _ = run(capsys, "verify-facts", "--q", "2")
    data = json.loads(out)
    assert code == 0 and data["facts"]["status"] == "skipped"


def test_verify_facts_q3(capsys):
    code, out, _ = run(capsys, "verify-facts", "--q", "3")
    data = json.loads(out)
    assert code == 0
    assert data["singular_locus"]["count"] == 78
    assert not data["fact3"]["violations"] and not data["fact4"]["violations"]


def test_verify_facts_q3_ext_bound_1(capsys):
    code, out, _ = run(capsys, "verify-facts", "--q", "3", "--ext-bound", "1")
    data = json.loads(out)
    assert code == 0 and data["singular_locus"]["count"] == 0


def test_ext_bound_must_divide_L(capsys):
    code, _, err = run(capsys, "verify-facts", "--q", "3", "--ext-bound", "5")
    assert code == 2


def test_scan_q3_samples_0(capsys):
    code, out, _ = run(capsys, "scan", "--q", "3", "--samples", "0")
    data = json.loads(out)
    assert code == 0 and data["summary"]["galois_count"] == 13


def test_scan_q2(capsys):
    code, out, _ = run(capsys, "scan", "--q", "2")
    data = json.loads(out)
    assert code == 0 and data["summary"]["galois_count"] == 7
    assert not data["summary"]["inconclusive"]


def test_certify_positive(capsys):
    code, out, _ = run(capsys, "certify", "--q", "3", "--point", "0,1,0")
    data = json.loads(out)
    assert code == 0
    assert data["certificate"]["verdict"] == "Positive"
    assert data["certificate"]["evidence"]["order"] == 18


def test_certify_singular_point(capsys):
    code, out, _ = run(capsys, "certify", "--q", "3", "--point", "1,0:1,0")
    data = json.loads(out)
    assert code == 0
    cert = data["certificate"]
    assert cert["verdict"] == "Negative"
    assert cert["evidence"]["kind"] == "index-not-dividing-degree"
    assert cert["point"]["def_degree"] == 2


@pytest.mark.parametrize("point", ["0,0,0", "1,2", "a,b,c", "0,3,0", "1,0:0:0:0:0,0"])
def test_certify_bad_points(capsys, point):
    code, _, _ = run(capsys, "certify", "--q", "3", "--point", point, "--subfield", "2")
    assert code == 2


def test_q4_digits():
    from dgzgalois import ctx_for_q
    from dgzgalois.cli import parse_point

    ctx = ctx_for_q(4, 12)
    theta = ctx.subfield_generator(1)  # digit 2 is theta_1, digit 3 is 1 + theta_1
    P, k = parse_point(ctx, 4, "1,2,3", None)
    assert k == 1 and P.coords == (1, theta, ctx.add(1, theta)) and P.def_degree == 1
    t2 = ctx.subfield_generator(2)
    Q, k = parse_point(ctx, 4, "1,0:1,2:3", None)
    assert k == 2 and Q.coords == (1, t2, ctx.add(theta, ctx.mul(ctx.add(1, theta), t2)))
    assert Q.def_degree == 2


def test_json_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["scan", "--q", "3", "--samples", "3", "--seed", "7"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_text_format(capsys):
    code, out, _ = run(capsys, "certify", "--q", "3", "--point", "0,1,0", "--format", "text")
    assert code == 0 and out.rstrip().endswith("PASS") and "Positive" in out
