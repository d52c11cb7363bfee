from decimal import Decimal

import numpy as np
import pytest

from framedf import catalog
from framedf.families import verify_fdf
from framedf.fields import make_field
from framedf.lifting import check_lifting_conditions, lift_sdf
from framedf.search import (ConstraintSystem, Form, RepairError, UniformityGroup,
                            generic_system, paired_pattern_system,
                            paley3_pattern_system, q_bound, q_bound_bracket,
                            repair_block, solve, z125_system)


def sig6(x: Decimal) -> str:
    return f"{x:.5E}"


@pytest.mark.parametrize("d,m,printed", [
    (3, 7, "6.43306E+7"),
    (6, 6, "3.4829E+10"),
    (12, 12, "7.94968E+27"),
    (6, 11, "8.77844E+18"),
])
def test_q_bound_printed_values(d, m, printed):
    val = q_bound(d, m)
    mant, expo = printed.split("E+")
    digits = len(mant.replace(".", ""))
    assert f"%.{digits - 1}E" % val == f"{mant}E+{int(expo):02d}"


def test_q_bound_within_exact_bracket():
    for d in range(1, 17):
        for m in range(1, 17):
            lo, hi = q_bound_bracket(d, m)
            val = q_bound(d, m)
            assert Decimal(lo.numerator) / lo.denominator <= val
            assert val <= Decimal(hi.numerator) / hi.denominator


def test_generic_system_shape_z7():
    sysm = generic_system(catalog.family("z7_8_8"), 89, 88, 8, 1)
    assert len(sysm.unknowns) == 8
    assert len(sysm.groups) == 8        # 7 difference slots + 1 element group
    halved = [g for g in sysm.groups if g.modulus == 4]
    assert len(halved) == 1 and len(halved[0].forms) == 4


def test_generic_system_shape_z125():
    sysm = generic_system(catalog.family("z125_6_6"), 67, 66, 6, 1)
    assert len(sysm.unknowns) == 150
    assert len(sysm.groups) == 125 + 25


def test_generic_system_congruence_guard():
    with pytest.raises(ValueError):
        generic_system(catalog.family("z7_8_8"), 97, 96, 8, 1)   # 97 != 9 (mod 16)


def test_generic_solve_z7_at_89():
    sysm = generic_system(catalog.family("z7_8_8"), 89, 88, 8, 1)
    res = solve(sysm, seed=0, budget=3_000_000)
    assert res.status == "sat"
    data = sysm.lifting_builder([res.assignment[u] for u in sysm.unknowns])
    assert check_lifting_conditions(data).ok
    assert verify_fdf(lift_sdf(data)).ok


def test_paired_pattern_shapes():
    assert len(paired_pattern_system(catalog.family("paley2", 7), 113).unknowns) == 4
    assert paired_pattern_system(catalog.family("paley2", 7), 113).d == 4
    tw = paired_pattern_system(catalog.family("twinPrime", 3), 17)
    assert len(tw.unknowns) == 8 and tw.d == 8
    for m in (3, 4, 5):
        s = paired_pattern_system(catalog.family("singer", 2, m), 2 ** m + 1
                                  if False else _first_q(2 ** m))
        assert len(s.unknowns) == 2 ** (m - 1)


def _first_q(mod):
    from framedf.fields import is_prime
    q = mod + 1
    while not is_prime(q):
        q += mod
    return q


def test_paired_solve_small():
    sysm = paired_pattern_system(catalog.family("paley2", 7), 113)
    res = solve(sysm, seed=0)
    assert res.status == "sat"
    data = sysm.lifting_builder([res.assignment[u] for u in sysm.unknowns])
    assert check_lifting_conditions(data).ok
    fdf = lift_sdf(data)
    assert verify_fdf(fdf).ok
    assert fdf.group.order == 7 * 113


def test_paley3_structure_and_solve():
    sysm = paley3_pattern_system(5, 61)
    assert len(sysm.unknowns) == 6 and sysm.d == 6
    sdf = solve(sysm, seed=0)
    assert sdf.status == "sat"
    data = sysm.lifting_builder([sdf.assignment[u] for u in sysm.unknowns])
    # block layout per the third-type pattern: (0,0,w^2,w^2,w^4,w^4) / (0,0,w,w,w^3,w^3)
    f5 = make_field(5)
    b1, b2 = data.sdf.blocks
    w = f5.generator
    assert b1 == (0, 0, pow(w, 2, 5), pow(w, 2, 5), pow(w, 4, 5), pow(w, 4, 5))
    assert b2 == (0, 0, w, w, pow(w, 3, 5), pow(w, 3, 5))
    assert verify_fdf(lift_sdf(data)).ok
    assert len(paley3_pattern_system(13, 337).unknowns) == 14


def test_paley3_congruence_guards():
    with pytest.raises(ValueError):
        paley3_pattern_system(7, 61)      # 7 = 3 (mod 4)
    with pytest.raises(ValueError):
        paley3_pattern_system(5, 37 + 1)  # not 1 (mod 12) prime structure


def test_z125_system_statics():
    sysm = z125_system(67)
    assert len(sysm.unknowns) == 51
    mod3 = [g for g in sysm.groups if g.modulus == 3]
    mod6 = [g for g in sysm.groups if g.modulus == 6]
    assert len(mod3) == 63
    assert len(mod6) == 13
    assert all(len(g.forms) == 3 for g in mod3)
    assert all(len(g.forms) == 6 for g in mod6)


def test_z125_system_d33_and_hints():
    sysm = z125_system(67)
    names = {f.name: i for i, f in enumerate(sysm.forms)}
    # slot group for the pair {33, 92} holds exactly the printed expressions
    target = {"y_10_2-y_10_1", "y_18_3+y_18_1", "y_18_4-y_18_3"}
    found = [g for g in sysm.groups if g.modulus == 3 and
             {sysm.forms[fi].name for fi in g.forms} == target]
    assert len(found) == 1
    assert sysm.hints[names["y_10_2-y_10_1"]] == 1
    assert sysm.hints[names["2y_2_1"]] == 1     # g(2 y_{2,1}) for the first column


def test_z125_conditions_per_unknown():
    """The count of slot-table expressions per unknown follows the published
    accounting: 7 for the inner pair, 5 for the outer pair (plus their row
    membership), 5 for the unpaired block."""
    sysm = z125_system(67)
    mod3_forms = {fi for g in sysm.groups if g.modulus == 3 for fi in g.forms}
    per_unknown = {u: 0 for u in range(len(sysm.unknowns))}
    for fi in mod3_forms:
        for u, _ in sysm.forms[fi].terms:
            per_unknown[u] += 1
    name = {u: sysm.unknowns[u] for u in per_unknown}
    for u, cnt in per_unknown.items():
        nm = name[u]
        _, blk, pos = nm.split("_")
        if blk == "1":
            assert cnt == 5, nm
        elif pos in ("1", "2"):
            assert cnt == 7, nm
        else:
            assert cnt == 5, nm     # membership in the row group is the sixth
    # outer-pair unknowns really do carry the row-membership constraint
    mod6_forms = {fi for g in sysm.groups if g.modulus == 6 for fi in g.forms}
    for u, nm in name.items():
        if nm.split("_")[2] in ("3", "4"):
            assert any(u in [t[0] for t in sysm.forms[fi].terms] for fi in mod6_forms)


def test_type_iv_expressions_sit_in_two_slots():
    sysm = z125_system(67)
    names = {i: f.name for i, f in enumerate(sysm.forms)}
    mod3 = [g for g in sysm.groups if g.modulus == 3]
    membership = {}
    for g in mod3:
        for fi in g.forms:
            membership.setdefault(fi, 0)
            membership[fi] += 1
    twice = sorted(names[fi] for fi, c in membership.items() if c == 2)
    assert len(twice) == 24
    # every doubled expression is an inner-pair one: y_{2i,2} +- y_{2i,1}
    for nm in twice:
        lhs, rhs = nm.replace("+", " ").replace("-", " ").split()
        assert lhs.endswith("_2") and rhs.endswith("_1")


def test_z125_accepts_printed_solution_and_solves_fresh():
    assert check_lifting_conditions(catalog.lifting_datum("fdf_z125xF67")).ok
    res = solve(z125_system(79), seed=0)
    assert res.status == "sat"


def test_solver_determinism():
    s1 = solve(paired_pattern_system(catalog.family("twinPrime", 3), 17), seed=5)
    s2 = solve(paired_pattern_system(catalog.family("twinPrime", 3), 17), seed=5)
    assert s1.status == "sat" and s1.assignment == s2.assignment


def test_solver_exhausts_toy_unsat():
    fld = make_field(7)
    sysm = ConstraintSystem(
        fld, 2, ("y",),
        (Form("y", ((0, 1),)), Form("y", ((0, 1),))),
        (UniformityGroup((0, 1), 2, 1),),
    )
    assert solve(sysm).status == "exhausted"


def test_repair_identity_and_blank_recovery():
    data = catalog.lifting_datum("fdf_z7xF89")
    assert repair_block(data, []) is data
    blanked = data.replace_phi([(0,) + data.phi[0][1:]])
    fixed = repair_block(blanked, [(0, 0)])
    assert check_lifting_conditions(fixed).ok


def test_repair_narrow_fails_then_widens():
    data = catalog.lifting_datum("fdf_z63xF25")
    zeros = data.zero_positions()
    with pytest.raises(RepairError):
        repair_block(data, zeros, widen=False)
    fixed = repair_block(data, zeros)
    rep = check_lifting_conditions(fixed)
    assert rep.ok
    # the block with no suspects is untouched, as are the ingested tables
    assert fixed.phi[0] == data.phi[0]
    assert fixed.sdf is data.sdf and fixed.partition == data.partition
    assert verify_fdf(lift_sdf(fixed)).ok


def test_repair_precondition_guard():
    data = catalog.lifting_datum("fdf_z63xF25")
    with pytest.raises(ValueError):
        repair_block(data, [(0, 0)])      # failures touch other positions too


def test_z125_solves_at_67_too():
    sysm = z125_system(67)
    res = solve(sysm, seed=0)
    assert res.status == "sat"
    data = sysm.lifting_builder([res.assignment[u] for u in sysm.unknowns])
    assert check_lifting_conditions(data).ok


def test_generic_system_even_lambda_branch():
    """With an even index the 2-torsion slot carries half multiplicity over
    the full class range instead of the sign-halved range."""
    sdf = catalog.family("paley3", 5)      # (F5+, 6, 12): lam = 2, t = 1, d = 6
    sysm = generic_system(sdf, 7, 6, 6, 2)
    assert len(sysm.unknowns) == 12
    halved = [g for g in sysm.groups if g.multiplicity == 1 and g.modulus == 6
              and len(g.forms) == 6]
    regular = [g for g in sysm.groups if g.multiplicity == 2]
    assert len(regular) == 4               # h = 1..4
    assert len(sysm.groups) == 5 + 2       # five slots plus two element groups
