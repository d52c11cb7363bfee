import numpy as np
import pytest

from framedf.fields import make_field
from framedf.groups import AbelianGroup, crt_iso


def z7xf89():
    return AbelianGroup.product(AbelianGroup.cyclic(7),
                                AbelianGroup.cyclic(89))


def test_group_ops_basics():
    g = AbelianGroup.cyclic(125)
    assert g.add(100, 50) == 25
    assert g.neg(g.zero) == g.zero
    assert sorted(g.enumerate().tolist()) == list(range(125))


def test_element_order_lcm():
    g = z7xf89()
    e = g.element((1, 1))
    assert g.element_order(e.encoding) == 623
    assert g.element_order(g.element((1, 0)).encoding) == 7


def test_product_pack_unpack():
    g = z7xf89()
    enc = g.pack(3, 41)
    assert g.unpack(enc) == (3, 41)
    arr = g.pack_arrays(np.array([0, 1]), np.array([0, 2]))
    assert g.unpack(arr)[0].tolist() == [0, 1]


def test_additive_field_group():
    g = AbelianGroup.additive(make_field(5, 2))
    assert g.order == 25
    # characteristic five: every nonzero element has order 5
    assert g.element_order(7) == 5
    assert g.add(4, 4) == 3       # digitwise mod 5: 4+4=8 -> digit 3


def test_cross_group_mixing_rejected():
    a = AbelianGroup.cyclic(6).element(1)
    b = AbelianGroup.cyclic(7).element(1)
    with pytest.raises(ValueError):
        a + b


def test_crt_examples():
    g = z7xf89()
    iso = crt_iso(g)
    assert iso.apply(g.pack(0, 0)) == 0
    assert iso.apply(g.pack(1, 1)) == 1
    x = iso.apply(g.pack(1, 0))
    assert x == 267 and x % 89 == 0 and x % 7 == 1


def test_crt_bijective_homomorphism():
    g = AbelianGroup.product(AbelianGroup.cyclic(9), AbelianGroup.cyclic(11),
                             AbelianGroup.cyclic(35))
    iso = crt_iso(g)
    encs = g.enumerate()
    image = iso.apply(encs)
    assert sorted(image.tolist()) == list(range(g.order))
    assert np.array_equal(iso.invert(image), encs)
    rng = np.random.default_rng(0)
    a = rng.integers(0, g.order, size=500)
    b = rng.integers(0, g.order, size=500)
    lhs = iso.apply(g.add(a, b))
    rhs = (iso.apply(a) + iso.apply(b)) % g.order
    assert np.array_equal(lhs, rhs)


def test_crt_rejects_bad_factors():
    with pytest.raises(ValueError):
        crt_iso(AbelianGroup.product(AbelianGroup.cyclic(6), AbelianGroup.cyclic(9)))
    with pytest.raises(ValueError):
        crt_iso(AbelianGroup.product(AbelianGroup.cyclic(7),
                                     AbelianGroup.additive(make_field(5, 2))))


def test_factor_slice_subgroup():
    g = z7xf89()
    sub = g.factor_slice_subgroup(0)
    assert len(sub) == 7
    assert all(g.unpack(int(x))[1] == 0 for x in sub)


def test_descriptor_round_trip_equality():
    g1 = z7xf89()
    g2 = AbelianGroup.product(AbelianGroup.cyclic(7), AbelianGroup.cyclic(89))
    assert g1 == g2 and hash(g1) == hash(g2)
