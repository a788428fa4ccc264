import numpy as np
import pytest

from twistedcubic import action as act
from twistedcubic import pg3, twisted as tw
from twistedcubic.bulk import Engine, isin_sorted
from twistedcubic.gfq import make_field

AGREE_Q = (2, 3, 4, 5, 7, 8, 9)


def test_engine_requires_dense_tables():
    with pytest.raises(ValueError):
        Engine(make_field(81))


@pytest.mark.parametrize("q", AGREE_Q)
def test_bulk_classification_matches_scalar(field, model, engine, q):
    f = field(q)
    m = model(q)
    eng = engine(q)
    scalar = {}
    for line in pg3.all_lines(f):
        scalar.setdefault(tw.classify_line(line, m), []).append(
            eng.pack_tuple(line.plucker))
    bulk = eng.class_keys()
    assert set(bulk) == set(tw.valid_line_classes(f))
    for cls in bulk:
        assert sorted(scalar.get(cls, [])) == bulk[cls].tolist(), (q, cls)
    assert eng.klein_violations() == 0


def test_key_pack_round_trip(engine):
    eng = engine(9)
    for keys in eng.class_keys().values():
        for k in keys[:: max(1, len(keys) // 7)]:
            line = eng.line_from_key(k)
            assert eng.pack_tuple(line.plucker) == int(k)


def test_polar_keys_match_two_plane_definition(field, engine):
    f = field(5)
    eng = engine(5)
    for line in pg3.all_lines(f):
        got = eng.polar_keys(np.array([eng.pack_tuple(line.plucker)], np.int64))
        want = eng.pack_tuple(tw.null_polarity_line(f, line).plucker)
        assert got.tolist() == [want]


def test_orbit_sweep_matches_bfs(field, model, engine):
    for q in (5, 8):
        f = field(q)
        eng = engine(q)
        for seed in (model(q).tangent_of[tw.INF],
                     pg3.line_through(f, (0, 0, 0, 1), (1, 0, 0, 0)),
                     pg3.line_through(f, (0, 0, 0, 1), (1, 0, 1, 0))):
            bfs = sorted(eng.pack_tuple(l.plucker) for l in act.orbit_of(f, seed))
            assert eng.orbit_sweep(seed).tolist() == bfs


def test_orbit_partition_matches_scalar(field, model, engine):
    f = field(5)
    m = model(5)
    eng = engine(5)
    by_cls = {}
    for line in pg3.all_lines(f):
        by_cls.setdefault(tw.classify_line(line, m), []).append(line)
    for cls, lines in by_cls.items():
        scalar = act.orbit_partition(f, lines, cls)
        bulk = eng.orbit_partition_keys(eng.class_keys()[cls])
        assert [(r.size, r.stabilizer_order, eng.pack_tuple(r.representative.plucker))
                for r in scalar] == bulk


def test_orbit_partition_rejects_unclosed_keys(engine):
    eng = engine(5)
    keys = eng.class_keys()[tw.UNG]
    with pytest.raises(ValueError):
        eng.orbit_partition_keys(keys[:10])


def test_bulk_stabilizer_matches_scalar(field, engine):
    f = field(5)
    eng = engine(5)
    reps = [
        pg3.line_through(f, (1, 0, 0, 0), (0, 1, 0, 0)),
        pg3.line_through(f, (0, 0, 0, 1), (1, 0, 0, 0)),
        pg3.line_through(f, (0, 0, 0, 1), (1, 0, 1, 0)),
        pg3.line_through(f, (1, 0, 2, 0), (0, 1, 0, 2)),
    ]
    for line in reps:
        assert eng.stabilizer_abcd(line) == [g.abcd for g in act.stabilizer(f, line)]


def test_plane_counts_closed_forms(engine):
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16):
        eng = engine(q)
        n = q**3 - q
        assert eng.plane_class_counts() == {
            "gamma": q + 1, "2C": q * q + q, "3C": n // 6,
            "1C": n // 2, "0C": n // 3,
        }


def test_isin_sorted():
    table = np.array([3, 5, 9], dtype=np.int64)
    vals = np.array([1, 3, 4, 5, 9, 10], dtype=np.int64)
    assert isin_sorted(vals, table).tolist() == [False, True, False, True, True, False]
    assert isin_sorted(vals, np.empty(0, np.int64)).tolist() == [False] * 6


def test_class_counts_match_closed_forms_larger_q(engine):
    for q in (11, 13, 16):
        eng = engine(q)
        assert eng.class_counts() == tw.expected_class_sizes(eng.field)
        assert eng.klein_violations() == 0


def test_tiny_chunks_split_enumeration_consistently(field, model, engine):
    eng = Engine(field(5), model(5), chunk=100)
    assert eng.class_counts() == engine(5).class_counts()
    for cls, keys in eng.class_keys().items():
        assert keys.tolist() == engine(5).class_keys()[cls].tolist()
