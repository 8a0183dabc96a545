import pytest

from hypgluing import developing as D
from hypgluing.shapes import INF, DegenerateShapeError, ShapeAssignment, is_inf, tetra_shape_from_vertices
from hypgluing.solver import solve

from conftest import BORROMEAN_TABLE, FIXTURES, REGULAR


def _close(p, q, tol=1e-9):
    if q == "inf" or is_inf(q):
        return is_inf(p)
    return not is_inf(p) and abs(p - q) < tol


def test_anchor_normalization(borromean_shapes):
    d = D.normalize_anchor(3, borromean_shapes)
    assert d.coords == (0j, INF, 1j, 1 + 0j)
    assert D.normalize_anchor(0, ShapeAssignment.from_z([REGULAR])).coords == (0, INF, REGULAR, 1)
    with pytest.raises(DegenerateShapeError):
        D.normalize_anchor(0, ShapeAssignment.from_z([-1j]))


def test_develop_reproduces_table(borromean, borromean_shapes):
    dev = D.develop(borromean[0], borromean_shapes, anchor=3)
    assert dev.coords[3] == D.normalize_anchor(3, borromean_shapes).coords
    for tet, row in BORROMEAN_TABLE.items():
        assert all(_close(p, q) for p, q in zip(dev.coords[tet], row)), tet
        assert abs(tetra_shape_from_vertices(*dev.coords[tet]) - borromean_shapes[tet].z) < 1e-9
    assert set(dev.order) == set(range(8)) and dev.order[0] == 3
    assert len(dev.tree) == 7


def test_table_rows_give_shapes(borromean_shapes):
    for tet, row in BORROMEAN_TABLE.items():
        pts = [INF if p == "inf" else p for p in row]
        assert abs(tetra_shape_from_vertices(*pts) - borromean_shapes[tet].z) < 1e-12


@pytest.mark.parametrize("anchor", range(8))
def test_every_anchor_recovers_shapes(borromean, borromean_shapes, anchor):
    dev = D.develop(borromean[0], borromean_shapes, anchor=anchor)
    for tet in range(8):
        assert abs(dev.tets[tet].shape() - borromean_shapes[tet].z) < 1e-9


def test_figure8(figure8):
    t, curves = figure8
    from hypgluing.equations import build_system
    s = solve(build_system(t, curves)).shapes
    dev = D.develop(t, s)
    assert all(abs(dev.tets[k].shape() - REGULAR) < 1e-9 for k in range(2))


def test_unsolved_shapes_are_inconsistent(borromean):
    s = ShapeAssignment.from_z([0.3 + 0.9j] * 8)
    with pytest.raises(D.DevelopingError):
        D.develop(borromean[0], s, anchor=3)


def test_bad_anchor(borromean, borromean_shapes):
    with pytest.raises(IndexError):
        D.develop(borromean[0], borromean_shapes, anchor=8)


@pytest.mark.parametrize("text, value", [
    ("inf", INF), ("i", 1j), ("-i", -1j), ("1+2i", 1 + 2j), ("-1", -1),
    ("0.5-0.25i", 0.5 - 0.25j), ("1e-3+2i", 0.001 + 2j), ("2-i", 2 - 1j),
])
def test_parse_point(text, value):
    got = D.parse_point(text)
    assert got is INF if value is INF else got == value


def test_parse_point_rejects_garbage():
    with pytest.raises(ValueError):
        D.parse_point("1+2j+")


def test_table_file_matches(borromean, borromean_shapes):
    table = D.parse_table((FIXTURES / "borromean.table").read_text())
    dev = D.develop(borromean[0], borromean_shapes, anchor=3)
    dev_ = D.compare_table(dev, table)
    assert max(dev_.values()) < 1e-9
    broken = dict(table)
    broken[4] = (INF,) + table[4][1:]
    assert D.compare_table(dev, broken)[4] == float("inf")
