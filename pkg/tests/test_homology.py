"""Smith normal form, homology tables, exactness oracle."""

import math
import random

import pytest

from khtorsion import (Chain, NotACycleError, SizeGuardError, SparseIntMatrix,
                       class_order, differential, enumerate_states,
                       homology_at, is_exact, khovanov_table, monocircular,
                       parse_pd, pretzel, smith_normal_form)
from khtorsion.knotdata import HOPF_2, KNOT_3_1, KNOT_6_1

KH_6_1_MIRROR = {
    (2, 5): (1, ()), (2, 3): (0, (2,)), (0, 1): (2, ()), (1, 1): (1, ()),
    (-1, -1): (1, ()), (0, -1): (1, (2,)), (-1, -3): (1, (2,)),
    (-3, -5): (1, ()), (-2, -5): (1, ()), (-3, -7): (0, (2,)),
    (-4, -9): (1, ()),
}


def dense(rows):
    m = SparseIntMatrix(len(rows), len(rows[0]) if rows else 0)
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            m.set(r, c, v)
    return m


def test_snf_1x1():
    res = smith_normal_form(dense([[2]]))
    assert res.factors == [2] and res.rank == 1


def test_snf_already_diagonal():
    res = smith_normal_form(dense([[1, 0], [0, 2]]))
    assert res.factors == [1, 2]


def test_snf_hand_elimination_oracle():
    res = smith_normal_form(dense([[2, 4], [6, 8]]))
    assert res.factors == [2, 4]


def test_snf_empty():
    res = smith_normal_form(dense([]))
    assert res.factors == [] and res.rank == 0


def test_snf_transforms_umv():
    rng = random.Random(5)
    for _ in range(25):
        rows = [[rng.randint(-4, 4) for _ in range(rng.randint(1, 5))]
                for _ in range(rng.randint(1, 5))]
        width = max(len(r) for r in rows)
        rows = [r + [0] * (width - len(r)) for r in rows]
        m = dense(rows)
        res = smith_normal_form(m)
        prod = res.u.matmul(m).matmul(res.v)
        assert prod.to_dense() == res.s_matrix().to_dense()
        for a, b in zip(res.factors, res.factors[1:]):
            assert b % a == 0
        assert all(f > 0 for f in res.factors)


def test_unknot_kink_homology():
    t = khovanov_table(pretzel([1]))
    assert t.hq_entries() == {(0, 1): (1, ()), (0, -1): (1, ())}


def test_trefoil_table():
    t = khovanov_table(parse_pd(KNOT_3_1))
    assert t.hq_entries() == {
        (-3, -9): (1, ()), (-2, -7): (0, (2,)), (-2, -5): (1, ()),
        (0, -3): (1, ()), (0, -1): (1, ()),
    }


def test_6_1_mirror_full_grid():
    t = khovanov_table(parse_pd(KNOT_6_1))
    assert t.hq_entries() == KH_6_1_MIRROR


def test_homology_at_examples():
    d = parse_pd(KNOT_6_1)
    p, n, _ = d.stats()
    # knot degrees (-3, -7) -> Z2 only
    assert homology_at(d, -3 + n, -7 - p + 2 * n) == (0, (2,))
    d2 = pretzel([-1, -1, -1, 6])
    p2, n2, _ = d2.stats()
    assert homology_at(d2, 3 + n2, 9 - p2 + 2 * n2) == (1, (2, 2))


def test_rank_nullity_consistency():
    from khtorsion.homology import _snf, basis
    d = pretzel([-1, 3])
    n = d.n_total
    for i in range(0, n + 1):
        for j in range(-2 * n - 2, 2 * n + 3):
            dim = len(basis(d, i, j))
            if dim == 0:
                continue
            free, _ = homology_at(d, i, j)
            r_i = _snf(d, i, j, transforms=False).rank
            r_prev = _snf(d, i - 1, j, transforms=False).rank
            assert r_i + r_prev + free == dim


def test_euler_characteristic_consistency():
    d = parse_pd(KNOT_3_1)
    n = d.n_total
    t = khovanov_table(d)
    for j in range(-3 * n, 3 * n + 1):
        chi_dim = sum((-1) ** i * len(enumerate_states(d, i, j))
                      for i in range(0, n + 1))
        chi_rank = sum((-1) ** i * t.entry(i, j)[0] for i in range(0, n + 1))
        assert chi_dim == chi_rank


def test_size_guard():
    d = pretzel([1] * 19)
    with pytest.raises(SizeGuardError):
        khovanov_table(d)
    with pytest.raises(SizeGuardError):
        khovanov_table(d, limit=10)


def test_is_exact_zero_and_image():
    d = parse_pd(HOPF_2)
    z = Chain(d, 1, 0)
    ok, wit = is_exact(z)
    assert ok and wit.is_zero()
    s = enumerate_states(d, 0, 0)[0]
    v = differential(d, s)
    ok, wit = is_exact(v)
    assert ok
    assert differential(d, wit) == v


def test_is_exact_requires_cycle():
    d = parse_pd(KNOT_3_1)
    s = enumerate_states(d, 0, smooth_j(d))[0]
    c = Chain(d, 0, smooth_j(d), {s: 1})
    if not differential(d, c).is_zero():
        with pytest.raises(NotACycleError):
            is_exact(c)


def smooth_j(d):
    from khtorsion import smooth
    return smooth(d, 0).circles


def test_class_order_free_generator():
    # a free generator at the top homological degree of the Hopf diagram
    d = parse_pd(HOPF_2)
    found = math.nan
    for s in enumerate_states(d, 2, 2):
        v = Chain(d, 2, 2, {s: 1})
        assert differential(d, v).is_zero()
        order = class_order(v)
        assert order in (1, math.inf)
        if order == math.inf:
            found = order
    assert found == math.inf


def test_exactness_vs_order_equivalences():
    d = monocircular(2, 3)
    n = d.n_total
    rng = random.Random(2)
    for i in range(0, n + 1):
        for j in range(-2 * n - 2, 2 * n + 3):
            for s in enumerate_states(d, i, j):
                v = differential(d, s)
                if v.is_zero():
                    continue
                exact, _ = is_exact(v)
                assert exact and class_order(v) == 1


def test_table_json_shape():
    t = khovanov_table(parse_pd(HOPF_2))
    payload = t.to_json()
    assert payload["schema"] == 1
    assert set(payload["offsets"]) == {"p", "n"}
    for key, entry in payload["table"].items():
        i, j = key.split(",")
        int(i), int(j)
        assert set(entry) == {"rank", "torsion"}
