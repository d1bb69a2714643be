import json

import numpy as np
import pytest

from matchscheme import cache
from matchscheme.scheme import intersection_numbers
from matchscheme.spectrum import character_table


def test_roundtrip_equals_fresh_computation(tmp_path):
    data = cache.load(4, tmp_path)
    assert cache.entry_path(4, tmp_path).exists()
    fresh = cache.build_entry(4)
    stored = json.loads(cache.entry_path(4, tmp_path).read_text())
    assert stored == fresh
    assert data.table == character_table(4)
    assert np.array_equal(data.intersection.p, intersection_numbers(4).p)


def test_values_are_decimal_strings(tmp_path):
    cache.load(3, tmp_path)
    entry = json.loads(cache.entry_path(3, tmp_path).read_text())
    assert entry["format_version"] == cache.FORMAT_VERSION
    assert entry["order_tag"] == "smallest-unmatched-first-lex"
    assert entry["partitions"] == ["3", "2,1", "1,1,1"]
    assert all(isinstance(v, str) for row in entry["P"] for v in row)
    assert entry["zonal"][0] == ["1", "-1/4", "1/4"]


@pytest.mark.parametrize("field,mutate", [
    ("P", lambda e: e["P"][1].__setitem__(1, str(int(e["P"][1][1]) + 1))),
    ("multiplicities", lambda e: e["multiplicities"].__setitem__(0, "2")),
    ("p", lambda e: e["p"][0][0].__setitem__(0, "999")),
    ("format_version", lambda e: e.__setitem__("format_version", 0)),
    ("order_tag", lambda e: e.__setitem__("order_tag", "other")),
    ("idempotents", lambda e: e["idempotents"][0].__setitem__(0, "1/2")),
])
def test_corrupt_entry_is_rejected_and_rebuilt(tmp_path, field, mutate):
    cache.load(4, tmp_path)
    path = cache.entry_path(4, tmp_path)
    entry = json.loads(path.read_text())
    mutate(entry)
    with pytest.raises(cache.CacheError):
        cache.decode_entry(entry)
    path.write_text(json.dumps(entry))
    cache.load(4, tmp_path)
    assert json.loads(path.read_text()) == cache.build_entry(4)


def test_garbage_file_is_rebuilt(tmp_path):
    path = cache.entry_path(3, tmp_path)
    path.write_text("{not json")
    cache.load(3, tmp_path)
    assert json.loads(path.read_text())["n"] == 3


def test_env_var_selects_directory(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path / "x"))
    assert cache.default_cache_dir() == tmp_path / "x"
    monkeypatch.delenv(cache.ENV_VAR)
    monkeypatch.setenv("XDG_DATA_HOME", str(tmp_path / "xdg"))
    assert cache.default_cache_dir() == tmp_path / "xdg" / "matchscheme"


def test_no_temp_files_left(tmp_path):
    cache.load(2, tmp_path)
    assert sorted(p.name for p in tmp_path.iterdir()) == [".lock", "scheme-n2.json"]
