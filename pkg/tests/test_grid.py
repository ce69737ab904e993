import numpy as np
import pytest

from quartdyn import escape
from quartdyn.grid import (
    GridSpec,
    canonical_labels,
    classify_julia_grid,
    classify_parameter_grid,
    label_components,
)


def test_grid_spec_mapping():
    spec = GridSpec(0j, 6.0, 4.0, 3, 2)
    pts = spec.points()
    assert pts.shape == (2, 3)
    assert pts[0, 0] == pytest.approx(-2.0 + 1.0j)  # top-left
    assert pts[1, 2] == pytest.approx(2.0 - 1.0j)  # bottom-right
    assert spec.point_of(0, 0) == pts[0, 0]
    assert spec.pixel_of(-2.0 + 1.0j) == (0, 0)
    assert spec.pixel_of(10.0) is None


def test_grid_symmetric_sampling():
    # centered grids sample exactly negated points under 180-degree rotation
    spec = GridSpec(0j, 6.4, 5.0, 160, 128)
    pts = spec.points()
    assert np.all(pts == -pts[::-1, ::-1])


def test_grid_rows_slice_matches_full():
    spec = GridSpec(0.3 - 0.1j, 5.0, 4.0, 64, 48)
    full = spec.points()
    part = spec.points(10, 20)
    assert np.array_equal(full[10:20], part)


def test_label_components_simple():
    mask = np.array(
        [
            [1, 1, 0, 0, 1],
            [0, 1, 0, 1, 1],
            [0, 0, 0, 0, 0],
            [1, 0, 1, 1, 0],
        ],
        dtype=bool,
    )
    labels, count = label_components(mask)
    assert count == 4
    assert labels[0, 0] == labels[1, 1]  # L-shape is 4-connected
    assert labels[0, 4] == labels[1, 3]
    assert labels[3, 0] != labels[3, 2]
    assert labels[mask].min() >= 1
    assert (labels[~mask] == 0).all()


def test_label_components_diagonal_not_connected():
    mask = np.eye(5, dtype=bool)
    labels, count = label_components(mask)
    assert count == 5


def test_label_components_spiral():
    mask = np.zeros((7, 7), bool)
    mask[0, :] = True
    mask[:, 6] = True
    mask[6, :] = True
    mask[2:7, 0] = True
    mask[2, 2:5] = True
    labels, count = label_components(mask)
    assert count == 2  # the outer ring-with-tail and the inner bar


def test_canonical_labels():
    a = np.array([[0, 1, 1], [2, 2, 0]])
    b = np.array([[0, 5, 5], [9, 9, 0]])
    assert np.array_equal(canonical_labels(a), canonical_labels(b))


def test_parameter_grid_agrees_with_scalar():
    spec = GridSpec(0j, 6.0, 6.0, 24, 24)
    res = classify_parameter_grid(spec, max_iter=400, period_max=4)
    pts = spec.points()
    for j in range(0, 24, 5):
        for i in range(0, 24, 5):
            t = complex(pts[j, i])
            v = escape.classify_parameter(t, max_iter=400)
            if v.kind == escape.KIND_ESCAPE:
                assert res.level[j, i] == v.level
            elif v.kind == escape.KIND_CYCLE and v.cycle.period <= 4:
                assert res.period[j, i] in (0, v.cycle.period)


def test_julia_grid_agrees_with_scalar():
    t = 2.0
    spec = GridSpec(0j, 7.0, 7.0, 20, 20)
    res = classify_julia_grid(t, spec, max_iter=300)
    pts = spec.points()
    for j in range(0, 20, 3):
        for i in range(0, 20, 3):
            z = complex(pts[j, i])
            v = escape.classify_dynamical(t, z, max_iter=300)
            if v.kind == escape.KIND_ESCAPE:
                assert res.level[j, i] == v.level
            else:
                assert res.level[j, i] == -1


def test_parameter_grid_symmetry():
    spec = GridSpec(0j, 5.0, 5.0, 64, 64)
    res = classify_parameter_grid(spec, max_iter=500, period_max=3)
    assert np.array_equal(res.level, res.level[::-1, ::-1])
    assert np.array_equal(res.period, res.period[::-1, ::-1])
