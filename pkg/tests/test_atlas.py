import math
import pathlib

import numpy as np
import pytest

from quartdyn import atlas, cycles
from quartdyn.grid import GridSpec

DATA = pathlib.Path(__file__).parent / "data"


def test_ppm_header_bytes():
    img = atlas.ImageBuffer(1, 1, bytearray(b"\xff\xff\xff"))
    assert atlas.encode_ppm(img) == b"P6\n1 1\n255\n\xff\xff\xff"


def test_ppm_round_trip():
    spec = GridSpec(0j, 3.0, 2.0, 30, 20)
    img = atlas.render_julia(math.sqrt(2.0), spec, max_iter=200)
    back = atlas.decode_ppm(atlas.encode_ppm(img))
    assert (back.nx, back.ny) == (img.nx, img.ny)
    assert bytes(back.rgb) == bytes(img.rgb)


def test_ppm_decode_rejects_junk():
    with pytest.raises(ValueError):
        atlas.decode_ppm(b"P5\n1 1\n255\n\x00")
    with pytest.raises(ValueError):
        atlas.decode_ppm(b"P6\n2 2\n255\n\x00\x00\x00")


def test_color_tables_documented_values():
    assert atlas.GREY_RAMP[0] == 250
    assert atlas.GREY_RAMP[1] == 240
    assert atlas.color_for_period(1) == (220, 40, 40)  # red
    assert atlas.color_for_period(2) == (40, 180, 70)  # green
    assert atlas.color_for_period(3) == (60, 90, 220)  # blue
    assert atlas.color_for_period(4) == (230, 220, 50)  # yellow
    assert atlas.color_for_period(9) == atlas.color_for_period(1)  # cycles


def test_parameter_render_palette_spots():
    spec = GridSpec(0j, 6.0, 4.0, 120, 80)
    img = atlas.render_parameter(spec, max_iter=500, period_max=4)
    # t ~ 0.01: period-1 red; t ~ sqrt2: period-2 green; t ~ 2.9: escape grey
    j, i = spec.pixel_of(0.01 + 0j)
    assert img.get(j, i) == atlas.color_for_period(1)
    j, i = spec.pixel_of(math.sqrt(2.0) + 0j)
    assert img.get(j, i) == atlas.color_for_period(2)
    j, i = spec.pixel_of(2.9 + 0j)
    r, g, b = img.get(j, i)
    assert r == g == b and r in atlas.GREY_RAMP


def test_julia_render_has_two_kinds_of_basins():
    # an attracting fixed point coexists with the basin of infinity
    spec = GridSpec(0j, 6.0, 6.0, 96, 96)
    img = atlas.render_julia(0.4 + 1.3j, spec, max_iter=600)
    arr = np.frombuffer(bytes(img.rgb), np.uint8).reshape(96, 96, 3)
    grey = (arr[..., 0] == arr[..., 1]) & (arr[..., 1] == arr[..., 2]) & (arr[..., 0] > 0)
    colored = (arr[..., 0] != arr[..., 1]) | (arr[..., 1] != arr[..., 2])
    assert grey.any() and colored.any()
    j, i = spec.pixel_of(0j)
    assert tuple(arr[j, i]) == atlas.color_for_period(1)


def test_render_determinism_across_workers():
    spec = GridSpec(0j, 6.0, 4.0, 160, 128)
    imgs = [
        atlas.render_parameter(spec, max_iter=300, period_max=4, workers=w)
        for w in (1, 3, 8)
    ]
    assert bytes(imgs[0].rgb) == bytes(imgs[1].rgb) == bytes(imgs[2].rgb)


def test_render_rotation_symmetry():
    spec = GridSpec(0j, 5.0, 3.0, 150, 90)
    img = atlas.render_parameter(spec, max_iter=300, period_max=4)
    assert bytes(atlas.rotate180(img).rgb) == bytes(img.rgb)
    jul = atlas.render_julia(1.0 + 0.4j, GridSpec(0j, 6.0, 6.0, 80, 80), max_iter=300)
    assert bytes(atlas.rotate180(jul).rgb) == bytes(jul.rgb)


def test_julia_render_golden_bytes():
    spec = GridSpec(0j, 4.0, 4.0, 64, 64)
    img = atlas.render_julia(math.sqrt(2.0), spec, max_iter=400)
    golden = (DATA / "julia_sqrt2_64.ppm").read_bytes()
    assert atlas.encode_ppm(img) == golden


def test_julia_render_perceptual_hash():
    tm = math.sqrt(4.0 + 2.0 * math.sqrt(2.0))
    spec = GridSpec(0j, 6.0, 6.0, 256, 256)
    img = atlas.render_julia(tm - 1e-4, spec, max_iter=2000)
    want = int((DATA / "julia_sierpinski_256.ahash").read_text().strip(), 16)
    got = atlas.average_hash(img)
    assert bin(got ^ want).count("1") <= 3  # small drift tolerated


def test_parameter_render_perceptual_hash():
    spec = GridSpec(0j, 6.0, 4.0, 240, 160)
    img = atlas.render_parameter(spec, max_iter=600, period_max=6)
    want = int((DATA / "param_plane_240.ahash").read_text().strip(), 16)
    assert bin(atlas.average_hash(img) ^ want).count("1") <= 3


def test_every_pixel_written_once():
    spec = GridSpec(0j, 6.0, 4.0, 64, 48)
    img = atlas.render_parameter(spec, max_iter=400, period_max=4)
    arr = np.frombuffer(bytes(img.rgb), np.uint8).reshape(48, 64, 3)
    # every pixel is grey ramp, palette, or black; nothing unclassified
    greys = set(atlas.GREY_RAMP)
    pal = set(atlas.PERIOD_PALETTE)
    for row in range(0, 48, 7):
        for col in range(0, 64, 7):
            px = tuple(int(v) for v in arr[row, col])
            ok = px == (0, 0, 0) or px in pal or (px[0] == px[1] == px[2] and px[0] in greys)
            assert ok, px
