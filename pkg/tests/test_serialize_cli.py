"""JSON wire formats and the command-line front end, run in-process."""

import json

import pytest

from torushecke.algebra import AlgebraElement
from torushecke.cli import run_cli
from torushecke.demazure import normal_form, sigma_along_word
from torushecke.laurent import RatFunc
from torushecke.rootdata import canonicalize_word, preset_datum
from torushecke.scalars import QScalar
from torushecke.serialize import (
    SerializeError,
    dump_report,
    element_from_dict,
    element_to_dict,
    load_json,
    normal_form_to_dict,
)

Q = QScalar.q_power(1)


def _write_element(tmp_path, name, x):
    path = tmp_path / name
    path.write_text(dump_report(element_to_dict(x)))
    return str(path)


def test_element_round_trip():
    a2 = preset_datum("A2")
    x = sigma_along_word(a2, (1, 2, 1)) + AlgebraElement.character(a2, (1, -1))
    assert element_from_dict(a2, element_to_dict(x)) == x

    b2 = preset_datum("B2")
    alpha = b2.simple_root_obj(2)
    y = AlgebraElement.from_function(
        b2,
        RatFunc.character(b2, (0, 1)).with_den_factor(alpha.negate(), Q ** 2),
    )
    assert element_from_dict(b2, element_to_dict(y)) == y

    aff = preset_datum("A1aff")
    z = sigma_along_word(aff, (0, 1)) + AlgebraElement.character(
        aff, aff.affine.delta_char
    )
    assert element_from_dict(aff, element_to_dict(z)) == z


def test_element_from_dict_errors_cite_location():
    datum = preset_datum("A2")
    with pytest.raises(SerializeError, match="'terms'"):
        element_from_dict(datum, {"items": []})
    with pytest.raises(SerializeError, match=r"terms\[0\]\.num\[0\]"):
        element_from_dict(
            datum,
            {"terms": [{"word": [], "num": [{"coef": "1", "exp": [0]}], "den": []}]},
        )
    with pytest.raises(SerializeError, match=r"terms\[0\]\.word"):
        element_from_dict(datum, {"terms": [{"word": [9], "num": [], "den": []}]})
    with pytest.raises(SerializeError, match=r"terms\[0\]\.den\[0\]"):
        element_from_dict(
            datum,
            {
                "terms": [
                    {
                        "word": [1],
                        "num": [{"coef": "1", "exp": [0, 0]}],
                        "den": [{"root": [1, 0], "target": "x"}],
                    }
                ]
            },
        )


def test_dump_report_and_load_json():
    text = dump_report({"b": 1, "a": 2})
    assert text.endswith("\n")
    data = json.loads(text)
    assert data == {"a": 2, "b": 1, "schema": "1"}
    assert list(data) == sorted(data)
    with pytest.raises(SerializeError, match="line 2, column"):
        load_json('{\n  "a": }')


def test_normal_form_payload_shape():
    datum = preset_datum("A2")
    nf = normal_form(sigma_along_word(datum, (1, 1)))
    payload = normal_form_to_dict(nf)
    assert payload == {
        "coefficients": [
            {"word": [], "scalar": "1"},
            {"word": [1], "scalar": "(q^2-1)/q"},
        ]
    }


def test_cli_datum(capsys):
    assert run_cli(["datum", "-d", "B2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["kind"] == "finite"
    assert data["cartan"] == [[2, -1], [-2, 2]]
    assert {"coords": [1, 2], "char": [0, 2]} in data["positive_real_roots"]


def test_cli_datum_from_json_file(tmp_path, capsys):
    cfg = tmp_path / "a1.json"
    cfg.write_text('{"cartan": [[2]]}')
    assert run_cli(["datum", "-d", str(cfg)]) == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "finite"


def test_cli_mul_then_nf(tmp_path, capsys):
    datum = preset_datum("A2")
    f1 = _write_element(tmp_path, "s1.json", sigma_along_word(datum, (1,)))
    f2 = _write_element(tmp_path, "s2.json", sigma_along_word(datum, (2,)))
    out = tmp_path / "prod.json"
    assert run_cli(["mul", "-d", "A2", f1, f2, "-o", str(out)]) == 0
    prod = element_from_dict(datum, load_json(out.read_text()))
    assert prod == sigma_along_word(datum, (1, 2))

    assert run_cli(["nf", "-d", "A2", str(out)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["in_span"] is True
    assert payload["coefficients"] == [{"word": [1, 2], "scalar": "1"}]


def test_cli_check_exit_codes(tmp_path, capsys):
    datum = preset_datum("A1")
    s = _write_element(
        tmp_path,
        "bare.json",
        AlgebraElement.group_term(datum, canonicalize_word(datum, (1,))),
    )
    assert run_cli(["check", "-d", "A1", s, "--level", "htilde"]) == 0
    assert run_cli(["check", "-d", "A1", s, "--level", "hq"]) == 1
    capsys.readouterr()
    # the report is still written on failure
    out = tmp_path / "rep.json"
    assert run_cli(["check", "-d", "A1", s, "--level", "hq", "-o", str(out)]) == 1
    data = json.loads(out.read_text())
    assert data["ok"] is False
    assert data["violations"][0]["condition"] == "1.3.3"


def test_cli_nf_not_in_span(tmp_path, capsys):
    datum = preset_datum("A1")
    path = _write_element(
        tmp_path, "mono.json", AlgebraElement.character(datum, (1,))
    )
    assert run_cli(["nf", "-d", "A1", path]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["in_span"] is False
    assert payload["stage"] == "scalar"


def test_cli_verify_quadratic(tmp_path, capsys):
    out = tmp_path / "quad.json"
    assert run_cli(["verify", "-d", "G2", "--suite", "quadratic", "-o", str(out)]) == 0
    captured = capsys.readouterr()
    assert "5.2.1" in captured.err
    data = json.loads(out.read_text())
    assert data["suite"] == "quadratic"
    assert data["ok"] is True
    assert len(data["entries"]) == 2


def test_cli_verify_mismatches_exit_2(capsys):
    assert run_cli(["verify", "-d", "A2", "--suite", "daha"]) == 2
    assert "affine" in capsys.readouterr().err
    assert run_cli(["verify", "-d", "A1aff", "--suite", "delta-criterion"]) == 2
    assert run_cli(["verify", "-d", "A2", "--suite", "nonsense"]) == 2
    assert run_cli([]) == 2
    assert run_cli(["check", "-d", "A1", "/nonexistent/elt.json"]) == 2


def test_cli_bad_json_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{oops")
    assert run_cli(["check", "-d", "A1", str(path)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_cli_byte_stable_reports(tmp_path):
    args = ["verify", "-d", "A2", "--suite", "membership-closure",
            "--samples", "5", "--seed", "4"]
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run_cli(args + ["-o", str(a)]) == 0
    assert run_cli(args + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_seed_env_override(tmp_path, monkeypatch):
    base = ["verify", "-d", "A1", "--suite", "delta-criterion", "--samples", "4"]
    plain = tmp_path / "plain.json"
    assert run_cli(base + ["--seed", "7", "-o", str(plain)]) == 0
    monkeypatch.setenv("HECKE_SEED", "7")
    via_env = tmp_path / "env.json"
    assert run_cli(base + ["--seed", "999", "-o", str(via_env)]) == 0
    assert plain.read_bytes() == via_env.read_bytes()
    monkeypatch.setenv("HECKE_SEED", "many")
    assert run_cli(base) == 2


def test_cli_elliptic(tmp_path, capsys):
    out = tmp_path / "inv.json"
    assert run_cli(["elliptic", "--suite", "involution", "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["ok"] is True
    assert all(e["check"] == "identity-deviation" for e in data["entries"])
    assert run_cli(["elliptic", "--suite", "involution", "--tau", "zz"]) == 2
    # the shift may not be a half period
    assert run_cli(["elliptic", "--suite", "involution", "--q=-0.25"]) == 2
    assert "error" in capsys.readouterr().err
