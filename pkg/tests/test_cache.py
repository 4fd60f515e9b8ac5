from fractions import Fraction as F

import cylasym.cache as cache
from cylasym.exact import coeff_B


def _fresh(tmp_path, monkeypatch):
    monkeypatch.setenv("CYLASYM_CACHE", str(tmp_path))
    monkeypatch.setattr(cache, "_loaded", {})


def test_roundtrip(tmp_path, monkeypatch):
    _fresh(tmp_path, monkeypatch)
    p = cache.cached_coeff("B", 7)
    assert p.coeffs == coeff_B(7).coeffs
    path = tmp_path / "coeff_B.txt"
    assert path.exists()
    assert path.read_text().splitlines()[0] == "cylasym-coeffs v1 kind=B"
    monkeypatch.setattr(cache, "_loaded", {})
    again = cache.cached_coeff("B", 7)
    assert again.coeffs == p.coeffs


def test_lazy_load_and_kinds(tmp_path, monkeypatch):
    _fresh(tmp_path, monkeypatch)
    d = cache.cached_coeff("D", 3)
    assert d.coeffs == (F(1, 10), F(0), F(1, 2), F(0))
    assert (tmp_path / "coeff_D.txt").exists()
    assert not (tmp_path / "coeff_B.txt").exists()


def test_corrupted_records_are_dropped(tmp_path, monkeypatch):
    _fresh(tmp_path, monkeypatch)
    cache.cached_coeff("B", 2)
    path = tmp_path / "coeff_B.txt"
    lines = path.read_text().splitlines()
    lines.append("3 1/1")  # truncated record
    lines.append("4 9/1 0/1 9/1 0/1 9/1")  # violates the leading-coefficient invariant
    path.write_text("\n".join(lines) + "\n")
    monkeypatch.setattr(cache, "_loaded", {})
    assert cache.cached_coeff("B", 2).coeffs == coeff_B(2).coeffs
    assert cache.cached_coeff("B", 3).coeffs == coeff_B(3).coeffs
    assert cache.cached_coeff("B", 4).coeffs == coeff_B(4).coeffs


def test_unknown_version_ignored(tmp_path, monkeypatch):
    _fresh(tmp_path, monkeypatch)
    (tmp_path / "coeff_B.txt").write_text("cylasym-coeffs v999 kind=B\n2 1/1 0/1 1/1\n")
    assert cache.cached_coeff("B", 2).coeffs == coeff_B(2).coeffs
