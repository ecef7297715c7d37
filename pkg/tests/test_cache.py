import os

import pytest

from hopfzeta.polylog import zeta_value
from hopfzeta.zetacache import ZetaCache, ZetaCacheEntry


def test_empty_file(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text("")
    assert len(ZetaCache(p)) == 0


def test_missing_file_is_empty(tmp_path):
    assert len(ZetaCache(tmp_path / "nope.jsonl")) == 0


def test_reload_is_bit_identical(tmp_path):
    p = tmp_path / "c.jsonl"
    c = ZetaCache(p)
    a = zeta_value((2,), tol=1e-14, cache=c)
    d = ZetaCache(p)
    assert len(d) == 1
    e = d.entries()[0]
    assert e.word == "2" and e.value == a.value and e.precision_bits == 128
    assert (e.value.man, e.value.exp) == (a.value.man, a.value.exp)


def test_corrupt_line_skipped(tmp_path):
    p = tmp_path / "c.jsonl"
    c = ZetaCache(p)
    zeta_value((3,), tol=1e-12, cache=c)
    with open(p, "a") as fh:
        fh.write('{"word": "2", "value": \n')
        fh.write("garbage\n")
    d = ZetaCache(p)
    assert len(d) == 1 and d.corrupt_lines == 2


def test_lookup_respects_tolerance_and_precision(tmp_path):
    c = ZetaCache()
    a = zeta_value((2,), tol=1e-8, cache=c)
    assert c.get("2", 1e-8, 128) is not None
    assert c.get("2", a.bound / 10, 128) is None
    assert c.get("2", 1e-8, 256) is None
    assert c.get("2", 1e-8, 64) is not None


@pytest.mark.skipif(os.geteuid() == 0, reason="root ignores file permissions")
def test_unwritable_path_chmod(tmp_path):
    d = tmp_path / "ro"
    d.mkdir()
    os.chmod(d, 0o500)
    c = ZetaCache(d / "c.jsonl")
    with pytest.raises(OSError):
        zeta_value((2,), tol=1e-8, cache=c)


def test_unwritable_path(tmp_path):
    c = ZetaCache(tmp_path / "missing_dir" / "c.jsonl")
    with pytest.raises(OSError):
        zeta_value((2,), tol=1e-8, cache=c)


def test_entry_json_round_trip():
    import mpmath
    mpmath.mp.prec = 128
    e = ZetaCacheEntry("2,1", -mpmath.zeta(3), 1e-20, 7, 128)
    assert ZetaCacheEntry.from_json(e.to_json()) == e
