import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from aaca.image import (
    ALIGN_CORNERS,
    PGMFormatError,
    axis_coords,
    downscale,
    encode_pgm,
    load_pgm,
    map_output_coord,
    parse_pgm,
    save_pgm,
)
from aaca.interpolate import nearest
from aaca.validation import ImageValidationError

images = arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12)))


class TestPGM:
    def test_p5_bytes(self, tmp_path):
        path = tmp_path / "a.pgm"
        path.write_bytes(b"P5\n2 2\n255\n" + bytes([0, 100, 100, 200]))
        img = load_pgm(path)
        assert img.shape == (2, 2)
        assert img.tolist() == [[0, 100], [100, 200]]

    def test_p2_with_comments(self):
        data = b"P2\n# made by hand\n3 2 # w h\n255\n0 1 2\n253 254 255\n"
        assert parse_pgm(data).tolist() == [[0, 1, 2], [253, 254, 255]]

    def test_short_payload_rejected(self):
        with pytest.raises(PGMFormatError):
            parse_pgm(b"P5\n2 2\n255\n" + bytes([1, 2, 3]))

    @pytest.mark.parametrize("data", [
        b"P5\n2 2\n65535\n" + bytes(8),
        b"P5\n2 2\n15\n" + bytes(4),
        b"P6\n1 1\n255\n" + bytes(3),
        b"P5\n2 x\n255\n" + bytes(4),
        b"P5\n2 2\n",
        b"P2\n2 1\n255\n0 256\n",
        b"P2\n2 1\n255\n0\n",
        b"",
    ])
    def test_malformed(self, data):
        with pytest.raises(PGMFormatError):
            parse_pgm(data)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_pgm(tmp_path / "nope.pgm")

    def test_single_pixel_payload(self, tmp_path):
        save_pgm(np.array([[42]], dtype=np.uint8), tmp_path / "one.pgm")
        raw = (tmp_path / "one.pgm").read_bytes()
        assert raw.startswith(b"P5")
        assert raw[-1] == 42

    def test_saturated_payload(self):
        raw = encode_pgm(np.full((3, 5), 255, dtype=np.uint8))
        assert raw.endswith(b"\xff" * 15)
        assert raw[: -15] == b"P5\n5 3\n255\n"

    @given(images)
    def test_round_trip(self, img):
        assert np.array_equal(parse_pgm(encode_pgm(img)), img)


class TestMapping:
    def test_top_edge_clamps(self):
        c = map_output_coord(0, 0, 4, 128, 128)
        assert (c.x, c.u, c.dx) == (0.0, 0, 0.0)

    def test_interior(self):
        c = map_output_coord(2, 2, 4, 128, 128)
        assert c.x == pytest.approx(0.125)
        assert c.u == 0
        assert c.dx == pytest.approx(0.125)

    def test_bottom_edge_clamps(self):
        c = map_output_coord(511, 511, 4, 128, 128)
        assert (c.x, c.u, c.dx) == (127.0, 126, 1.0)
        assert (c.y, c.v, c.dy) == (127.0, 126, 1.0)

    def test_scale_must_be_two_or_more(self):
        with pytest.raises(ValueError):
            map_output_coord(0, 0, 1, 8, 8)

    @given(st.integers(2, 40), st.integers(2, 6), st.sampled_from(["half_pixel", "align_corners"]))
    def test_vectorised_agrees_and_in_bounds(self, n, scale, mode):
        pos, base, frac = axis_coords(n, scale, mode)
        assert np.all(np.diff(pos) >= 0)
        assert np.all((frac >= 0) & (frac <= 1))
        assert np.all((base >= 0) & (base + 1 <= n - 1))
        for X in range(n * scale):
            c = map_output_coord(X, 0, scale, n, 2, mode)
            assert (c.x, c.u, c.dx) == (pos[X], base[X], frac[X])

    def test_align_corners_endpoints(self):
        pos, _, _ = axis_coords(10, 3, ALIGN_CORNERS)
        assert pos[0] == 0 and pos[-1] == 9


class TestDownscale:
    def test_dimensions(self):
        assert downscale(np.zeros((512, 512), np.uint8), 4).shape == (128, 128)

    @pytest.mark.parametrize("mode", ["decimate", "box"])
    @pytest.mark.parametrize("factor", [2, 3, 4])
    def test_constant(self, mode, factor):
        img = np.full((12, 12), 77, np.uint8)
        assert np.all(downscale(img, factor, mode) == 77)

    def test_box_average(self):
        img = np.array([[0, 100], [100, 200]], np.uint8)
        assert downscale(img, 2, "box").tolist() == [[100]]

    def test_box_rounds_half_up(self):
        img = np.array([[0, 1], [0, 1]], np.uint8)  # mean 0.5
        assert downscale(img, 2, "box").tolist() == [[1]]

    def test_decimate_picks_top_left(self):
        img = np.arange(16, dtype=np.uint8).reshape(4, 4)
        assert downscale(img, 2).tolist() == [[0, 2], [8, 10]]

    def test_not_divisible(self):
        with pytest.raises(ImageValidationError):
            downscale(np.zeros((10, 12), np.uint8), 4)

    @given(arrays(np.uint8, st.tuples(st.integers(2, 9), st.integers(2, 9))), st.integers(2, 5))
    def test_nearest_then_decimate_recovers(self, img, scale):
        assert np.array_equal(downscale(nearest(img, scale), scale, "decimate"), img)
