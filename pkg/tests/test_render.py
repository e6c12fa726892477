import numpy as np
import pytest

from hopsym import render as r
from hopsym.polyring import IntPoly
from hopsym.symmetries import enumerate_S

L = IntPoly.x()
W128 = r.Window.square(1.8, 128)


def test_window_pixel_centres():
    w = r.Window.square(1.0, 4)
    assert np.allclose(w.xs(), [-0.75, -0.25, 0.25, 0.75])
    assert np.allclose(w.ys(), [0.75, 0.25, -0.25, -0.75])
    pts = w.points()
    assert np.array_equal(pts, -pts[::-1, ::-1])


@pytest.mark.parametrize("p,R", [(L**2, 2), (L**3 - L, 2), (L**5 - 3 * L**3 + L, 5)])
def test_escape_radius(p, R):
    assert r.escape_radius(p) == R


def test_escape_radius_rejects_non_monic():
    with pytest.raises(ValueError):
        r.escape_radius(2 * L**2)


def test_square_preimage_is_disk():
    w = r.Window.square(1.8, 256)
    assert np.array_equal(r.raster_preimage_disk(L**2, w).mask, r.unit_disk_raster(w).mask)
    assert np.array_equal(r.raster_union([L**2], w).mask, r.unit_disk_raster(w).mask)


def test_pointwise_membership():
    w = r.Window(0j, 2.5, 0.5, 5, 1)  # centres at -2, -1, 0, 1, 2
    m = r.raster_preimage_disk(L**3 - L, w).mask[0]
    assert m[2] and not m[4] and not m[0]


def test_union_contains_disk_and_grows():
    S = enumerate_S(7)
    polys = S.polynomials()
    disk = r.unit_disk_raster(W128).mask
    acc = np.zeros_like(disk)
    for i in range(1, len(polys) + 1):
        cur = r.raster_union(polys[:i], W128).mask
        assert (cur >= acc).all()
        acc = cur
    assert (acc >= disk).all() and acc.sum() > disk.sum()


def test_iterated_nesting():
    p = L**3 - L
    prev = r.raster_iterated_preimage(p, 1, W128)
    assert np.array_equal(prev.mask, r.raster_preimage_disk(p, W128).mask)
    for n in range(2, 7):
        cur = r.raster_iterated_preimage(p, n, W128)
        assert (cur.mask >= prev.mask).all()
        prev = cur


def test_iterated_disk_invariant():
    assert np.array_equal(r.raster_iterated_preimage(L**2, 5, W128).mask, r.unit_disk_raster(W128).mask)


def test_julia_of_square_is_disk():
    w = r.Window.square(1.8, 200)
    assert np.array_equal(r.raster_filled_julia(L**2, 100, w).mask, r.unit_disk_raster(w).mask)


def test_julia_escape_soundness():
    p = L**3 - L
    img = r.raster_filled_julia(p, 60, W128, counts=True)
    R = r.escape_radius(p)
    z = W128.points()
    assert not img.mask[np.abs(z) >= R].any()
    # members never left the escape disk within the iteration budget
    zz = z[img.mask].copy()
    for _ in range(60):
        assert (np.abs(zz) < R).all()
        zz = zz**3 - zz


def test_symmetry_closure_is_rotation_invariant():
    p = L**3 - L + IntPoly([0, 0, 1])  # no quarter-turn symmetry
    img = r.raster_union([p], W128, symmetry_closure=True).mask
    assert np.array_equal(img, np.rot90(img))
    assert np.array_equal(img, img[::-1, :])
    plain = r.raster_union([p], W128).mask
    assert not np.array_equal(plain, np.rot90(plain))


def test_thread_count_does_not_change_output():
    polys = enumerate_S(8).polynomials()
    w = r.Window.square(1.8, 200)
    a = r.raster_union(polys, w, threads=1)
    b = r.raster_union(polys, w, threads=4)
    assert r.ppm_bytes(a) == r.ppm_bytes(b)
    j1 = r.raster_filled_julia(L**3 - L, 50, w, threads=1)
    j3 = r.raster_filled_julia(L**3 - L, 50, w, threads=3)
    assert np.array_equal(j1.values, j3.values)


def test_ppm_header_and_body(tmp_path):
    img = r.RasterImage(r.Window.square(1.0, 2), np.ones((2, 2), np.uint8))
    assert r.ppm_bytes(img) == b"P6\n2 2\n255\n" + bytes(12)
    a = r.export_image(img, tmp_path / "a.ppm")
    b = r.export_image(img, tmp_path / "b.ppm")
    assert a.read_bytes() == b.read_bytes()


def test_png_export_is_deterministic(tmp_path):
    img = r.raster_preimage_disk(L**3 - L, W128)
    a = r.export_image(img, tmp_path / "a.png", "png", circle=True)
    b = r.export_image(img, tmp_path / "b.png", "png", circle=True)
    assert a.read_bytes() == b.read_bytes()


def test_circle_overlay():
    w = r.Window.square(1.5, 301)
    img = r.RasterImage(w, np.zeros((301, 301), np.uint8))
    rgb = r.to_rgb(img, circle=True)
    z = w.points()
    near = np.abs(np.abs(z) - 1) <= 0.5 * w.pixel_size[0]
    assert near.any()
    assert (rgb[near] == (255, 0, 0)).all()
    assert (rgb[~near] == (255, 255, 255)).all()


def test_export_error_names_path(tmp_path):
    img = r.unit_disk_raster(r.Window.square(1, 4))
    bad = tmp_path / "missing" / "x.ppm"
    with pytest.raises(OSError, match="missing"):
        r.export_image(img, bad)


@pytest.mark.parametrize("n", [63, 64])
@pytest.mark.parametrize("supersample", [False, True])
def test_grid_closure_matches_pointwise_closure(n, supersample):
    # the fast path permutes pixels; the oracle evaluates all 8 images of every centre
    w = r.Window.square(1.8, n)
    polys = [L**3 - L + IntPoly([0, 0, 1]), L**4 + IntPoly([0, 1, 0, 1])]

    def oracle(z):
        return np.logical_or.reduce([r.union_mask(polys, g) for g in r.symmetry_images(z)])

    want = r._membership(w, oracle, 1, supersample).mask
    assert np.array_equal(r.raster_union(polys, w, True, supersample=supersample).mask, want)


def test_off_centre_closure_uses_images():
    w = r.Window(0.1 + 0.05j, 1.8, 1.8, 40, 40)
    img = r.raster_union([L**2 + IntPoly([0, 1])], w, symmetry_closure=True)
    assert img.count() > 0
