import json

from framedf import catalog, serialize
from framedf.designs import affine_plane
from framedf.fields import make_field
from framedf.groups import AbelianGroup
from framedf.lifting import lift_sdf


def test_field_round_trip():
    for fld in (make_field(89), make_field(5, 2), make_field(2, 5)):
        d = serialize.field_to_dict(fld)
        back = serialize.field_from_dict(json.loads(json.dumps(d)))
        assert back is fld or back == fld


def test_group_round_trip():
    g = AbelianGroup.product(AbelianGroup.cyclic(63),
                             AbelianGroup.additive(make_field(5, 2)))
    d = serialize.group_to_dict(g)
    assert serialize.group_from_dict(json.loads(json.dumps(d))) == g


def test_family_round_trip_lossless():
    fam = lift_sdf(catalog.lifting_datum("fdf_z7xF89"))
    d = serialize.family_to_dict(fam)
    back = serialize.family_from_dict(json.loads(json.dumps(d)))
    assert back.blocks == fam.blocks
    assert back.subgroup == fam.subgroup
    assert back.frame_partition == fam.frame_partition
    assert back.group == fam.group
    assert back.lam == fam.lam


def test_lifting_round_trip():
    data = catalog.lifting_datum("fdf_z119xF25")
    d = serialize.lifting_to_dict(data)
    back = serialize.lifting_from_dict(json.loads(json.dumps(d)))
    assert back.phi == data.phi
    assert back.partition == data.partition
    assert back.sdf.blocks == data.sdf.blocks
    assert (back.e, back.d, back.lam) == (data.e, data.d, data.lam)


def test_design_round_trip(tmp_path):
    design, res = affine_plane(4)
    path = tmp_path / "ap4.json"
    serialize.dump(serialize.design_to_dict(design, res), path)
    back, back_res = serialize.design_from_dict(serialize.load(path))
    assert back.blocks == design.blocks
    assert back_res.classes == res.classes
