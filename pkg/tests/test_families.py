from collections import Counter

import numpy as np
import pytest

from framedf import catalog
from framedf.families import (FDF, PDF, RELATIVE_DF, SDF, DesignFamily,
                              DifferenceMatrix, delta_block, is_homogeneous,
                              verify_dm, verify_fdf, verify_pdf,
                              verify_relative_df, verify_sdf)
from framedf.groups import AbelianGroup
from framedf.lifting import lift_sdf, mul_table_dm


def brute_delta(group, elems):
    out = []
    for a in range(len(elems)):
        for b in range(len(elems)):
            if a != b:
                out.append(int(group.sub(elems[a], elems[b])))
    return out


def test_delta_block_examples():
    z7 = AbelianGroup.cyclic(7)
    assert sorted(delta_block(z7, (0, 1, 3)).tolist()) == [1, 2, 3, 4, 5, 6]
    assert delta_block(z7, (0, 0)).tolist() == [0, 0]
    z63 = AbelianGroup.cyclic(63)
    blk = tuple(x % 63 for x in (20, 20, -20, -20, 29, 29, -29, -29))
    d = delta_block(z63, blk)
    assert len(d) == 56
    assert int((d == 0).sum()) == 8
    with pytest.raises(ValueError):
        delta_block(z7, (3,))


def test_delta_block_matches_brute_force_and_is_symmetric():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        n = int(rng.integers(2, 201))
        g = AbelianGroup.cyclic(n)
        k = int(rng.integers(2, 9))
        blk = tuple(int(x) for x in rng.integers(0, n, size=k))
        got = sorted(delta_block(g, blk).tolist())
        assert got == sorted(brute_delta(g, blk))
        assert len(got) == k * (k - 1)
        counts = Counter(got)
        assert all(counts[x] == counts[(n - x) % n] for x in counts)


def test_verify_sdf_catalog_and_necessary_conditions():
    fam = catalog.family("z7_8_8")
    rep = verify_sdf(fam)
    assert rep.ok and rep.mu == 8
    rep125 = verify_sdf(catalog.family("z125_6_6"))
    assert rep125.ok and rep125.mu == 6
    odd = DesignFamily(SDF, AbelianGroup.cyclic(7), 7, ((0, 0, 1, 1, 2, 2, 4, 4),))
    assert not verify_sdf(odd).parity_ok


def test_verify_sdf_against_dictionary_oracle():
    rng = np.random.default_rng(3)
    for _ in range(100):
        n = int(rng.integers(3, 40))
        g = AbelianGroup.cyclic(n)
        k = int(rng.integers(2, 6))
        blocks = tuple(tuple(int(x) for x in rng.integers(0, n, size=k))
                       for _ in range(int(rng.integers(1, 5))))
        counts = Counter()
        for blk in blocks:
            counts.update(brute_delta(g, blk))
        mus = {counts[h] for h in range(n)}
        mu = mus.pop() if len(mus) == 1 else -1
        fam = DesignFamily(SDF, g, max(mu, 0), blocks)
        rep = verify_sdf(fam)
        expect = (mu >= 0 and mu % 2 == 0 and (mu * n) % (k * (k - 1)) == 0)
        assert rep.ok == expect


def test_single_block_is_difference_set_not_sdf():
    z7 = AbelianGroup.cyclic(7)
    fam = DesignFamily(SDF, z7, 1, ((0, 1, 3),))
    assert not verify_sdf(fam).ok
    ds = DesignFamily(RELATIVE_DF, z7, 1, ((0, 1, 3),), subgroup=(0,))
    assert verify_relative_df(ds).ok


def test_relative_df_vacuous_and_violations():
    z7 = AbelianGroup.cyclic(7)
    empty = DesignFamily(RELATIVE_DF, z7, 1, (), subgroup=tuple(range(7)))
    assert verify_relative_df(empty).ok
    g = AbelianGroup.product(AbelianGroup.cyclic(7), AbelianGroup.cyclic(2))
    n = tuple(int(x) for x in g.factor_slice_subgroup(0))
    blk = (int(g.pack(0, 0)), int(g.pack(0, 1)))
    fam = DesignFamily(RELATIVE_DF, g, 1, (blk,), subgroup=tuple(sorted(n)))
    rep = verify_relative_df(fam)
    assert not rep.ok
    # the difference (0,1) equals its own negative in the Z2 coordinate
    assert any(count == 2 for _, count in rep.violations)


def test_verify_fdf_and_partition_perturbation():
    fdf = lift_sdf(catalog.lifting_datum("fdf_z7xF89"))
    assert len(fdf.frame_partition) == 1
    assert verify_fdf(fdf).ok
    # moving a block between parts must break the frame property
    parts = (fdf.frame_partition[0][:-1], (fdf.frame_partition[0][-1],))
    broken = DesignFamily(FDF, fdf.group, fdf.lam, fdf.blocks, fdf.subgroup, parts)
    rep = verify_fdf(broken)
    assert not rep.partition_ok and not rep.ok


def test_verify_fdf_partition_must_cover():
    fdf = lift_sdf(catalog.lifting_datum("fdf_z7xF89"))
    bad = DesignFamily(FDF, fdf.group, fdf.lam, fdf.blocks, fdf.subgroup,
                       (fdf.frame_partition[0][:-1],))
    with pytest.raises(ValueError):
        verify_fdf(bad)


def test_verify_pdf_cases():
    z5 = AbelianGroup.cyclic(5)
    fam = DesignFamily(PDF, z5, 3, ((1, 2, 3, 4),), subgroup=(0,))
    assert verify_pdf(fam).ok     # each nonzero difference appears |G|-2 = 3 times
    overlap = DesignFamily(PDF, z5, 3, ((0, 1, 2), (2, 3, 4)))
    assert not verify_pdf(overlap).ok


def test_verify_dm_cases():
    dm3 = mul_table_dm(__import__("framedf.fields", fromlist=["make_field"]).make_field(3))
    rep = verify_dm(dm3)
    assert rep.ok and not is_homogeneous(dm3)      # zero row present
    rows = dm3.rows[1:]
    assert is_homogeneous(DifferenceMatrix(dm3.group, rows))
    dup = DifferenceMatrix(dm3.group, (dm3.rows[1], dm3.rows[1]))
    assert not verify_dm(dup).ok
    with pytest.raises(ValueError):
        DifferenceMatrix(dm3.group, ((0, 1), (0, 1, 2)))


def test_verify_dm_infers_lambda():
    from framedf.fields import make_field
    z3 = AbelianGroup.cyclic(3)
    rows = ((0, 1, 2, 0, 1, 2), (0, 2, 1, 1, 0, 2))
    dm = DifferenceMatrix(z3, rows)
    assert verify_dm(dm).ok        # lambda = 2 inferred from 6 columns
    assert not verify_dm(dm, 1).ok
