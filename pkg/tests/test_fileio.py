import pytest

from overlapcodes.families import balanced_family, enumerate_families, family
from overlapcodes.fileio import (FormatError, RunManifest, format_code,
                                 format_family, parse_code, parse_family,
                                 read_code, read_family, sha256_digest,
                                 write_code, write_family, write_manifest)
from overlapcodes.words import code


def test_code_round_trip(tmp_path):
    c = code(3, 4, {"0212", "0012"}, window=(1, 2))
    path = tmp_path / "c.txt"
    write_code(c, path, comment="two words")
    back = read_code(path)
    assert back.words == c.words and back.q == 3 and back.n == 4
    text = path.read_text()
    assert text.startswith("# two words\nq=3 n=4\n")


def test_code_parse_errors():
    with pytest.raises(FormatError, match="header"):
        parse_code("0011\n")
    with pytest.raises(FormatError, match="length"):
        parse_code("q=2 n=4\n001\n")
    with pytest.raises(FormatError, match="alphabet"):
        parse_code("q=2 n=3\n021\n")
    with pytest.raises(FormatError):
        parse_code("q=2 m=3\n")
    with pytest.raises(FormatError):
        parse_code("")


def test_code_comments_and_blank_lines():
    c = parse_code("# heading\nq=2 n=3\n\n001  # inline note\n011\n")
    assert c.words == {"001", "011"}


def test_family_round_trip(tmp_path):
    f = family(3, [({"0", "1"}, {"2"}), ({"02"}, {"12"})])
    path = tmp_path / "f.txt"
    write_family(f, path)
    back = read_family(path)
    assert back.levels == f.levels
    text = path.read_text()
    assert "q=3 k=2" in text and "L1: 0 1" in text


def test_family_empty_levels_round_trip(tmp_path):
    f = balanced_family(2, 1, 3, "L_empty")
    path = tmp_path / "f.txt"
    write_family(f, path)
    assert read_family(path).levels == f.levels


def test_family_parser_validates():
    # well-formed but invalid: level 2 misses the word 12
    bad = "q=3 k=2\nL1: 0 1\nR1: 2\nL2: 02\nR2:\n"
    with pytest.raises(FormatError, match="level 2"):
        parse_family(bad)
    with pytest.raises(FormatError, match="tag"):
        parse_family("q=2 k=1\nX1: 0\n")
    with pytest.raises(FormatError, match="outside"):
        parse_family("q=2 k=1\nL3: 0\n")


def test_every_enumerated_family_survives_round_trip():
    for f in enumerate_families(3, 2):
        assert parse_family(format_family(f)).levels == f.levels


def test_manifest_and_digest(tmp_path):
    target = tmp_path / "out.txt"
    target.write_text("payload")
    digest = sha256_digest(target)
    manifest = RunManifest(command="verify", parameters={"x": 1},
                           version="0.1.0", seed=None, wall_time_s=0.1,
                           outputs={str(target): digest})
    mpath = tmp_path / "out.txt.manifest.json"
    write_manifest(manifest, mpath)
    import json

    data = json.loads(mpath.read_text())
    assert data["outputs"][str(target)] == digest
    assert data["command"] == "verify"
