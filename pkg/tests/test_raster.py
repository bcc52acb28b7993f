import numpy as np
import pytest
from hypothesis import given, strategies as st
from PIL import Image

from quadtok.raster import (
    ImageDecodeError,
    build_sat,
    load_image,
    region_max_gradient,
    region_sums,
    region_variance,
    resize_to_block_multiple,
    round_to_multiple,
    to_grayscale,
)

from oracles import naive_max_gradient, naive_region_sum, naive_region_variance


def rgb(*shape_and_value):
    h, w, value = shape_and_value
    img = np.empty((h, w, 3), dtype=np.uint8)
    img[:] = value
    return img


class TestLoadImage:
    def test_white_pixel_png(self, tmp_path):
        path = tmp_path / "w.png"
        Image.fromarray(rgb(1, 1, 255)).save(path)
        img = load_image(path)
        assert img.shape == (1, 1, 3)
        assert img.tolist() == [[[255, 255, 255]]]

    def test_known_pixels_roundtrip(self, tmp_path):
        arr = np.arange(2 * 3 * 3, dtype=np.uint8).reshape(3, 2, 3) * 10
        path = tmp_path / "px.png"
        Image.fromarray(arr).save(path)
        assert np.array_equal(load_image(path), arr)

    def test_jpeg_decodes(self, tmp_path):
        path = tmp_path / "img.jpg"
        Image.fromarray(rgb(20, 30, 128)).save(path, format="JPEG")
        img = load_image(path)
        assert img.shape == (20, 30, 3)
        assert img.dtype == np.uint8

    def test_alpha_discarded(self, tmp_path):
        rgba = np.zeros((2, 2, 4), dtype=np.uint8)
        rgba[..., 0] = 200
        rgba[..., 3] = 50
        path = tmp_path / "a.png"
        Image.fromarray(rgba, mode="RGBA").save(path)
        img = load_image(path)
        assert img.shape == (2, 2, 3)
        assert img[0, 0, 0] == 200

    def test_truncated_png_is_decode_error(self, tmp_path):
        path = tmp_path / "t.png"
        Image.fromarray(np.zeros((64, 64, 3), dtype=np.uint8)).save(path)
        data = path.read_bytes()
        path.write_bytes(data[: len(data) // 2])
        with pytest.raises(ImageDecodeError):
            load_image(path)

    def test_garbage_is_decode_error(self, tmp_path):
        path = tmp_path / "g.png"
        path.write_bytes(b"definitely not an image")
        with pytest.raises(ImageDecodeError):
            load_image(path)

    def test_unsupported_format_rejected(self, tmp_path):
        path = tmp_path / "img.bmp"
        Image.fromarray(rgb(4, 4, 10)).save(path, format="BMP")
        with pytest.raises(ImageDecodeError, match="unsupported"):
            load_image(path)

    def test_missing_file_is_os_error(self, tmp_path):
        with pytest.raises(OSError):
            load_image(tmp_path / "nope.png")


class TestGrayscale:
    def test_white_maps_to_max(self):
        assert to_grayscale(rgb(1, 1, 255))[0, 0] == 255

    def test_black_maps_to_zero(self):
        assert to_grayscale(rgb(1, 1, 0))[0, 0] == 0

    def test_pure_red(self):
        img = np.zeros((1, 1, 3), dtype=np.uint8)
        img[0, 0] = (255, 0, 0)
        # round(0.299 * 255) = 76
        assert to_grayscale(img)[0, 0] == 76

    def test_idempotent_on_gray_triples(self):
        values = np.arange(256, dtype=np.uint8)
        img = np.stack([values, values, values], axis=-1)[None, :, :]
        assert np.array_equal(to_grayscale(img)[0], values)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            to_grayscale(np.zeros((4, 4), dtype=np.uint8))


class TestResize:
    def test_phone_screenshot_dims(self):
        out = resize_to_block_multiple(rgb(2400, 1080, 99), 28)
        assert out.shape == (2408, 1092, 3)

    def test_aligned_input_unchanged(self):
        img = rgb(28, 28, 42)
        out = resize_to_block_multiple(img, 28)
        assert out.shape == (28, 28, 3)
        assert np.array_equal(out, img)

    def test_minimum_is_one_block(self):
        assert resize_to_block_multiple(rgb(14, 14, 7), 28).shape == (28, 28, 3)

    @given(dim=st.integers(1, 5000), b=st.integers(1, 64))
    def test_rounding_rule(self, dim, b):
        out = round_to_multiple(dim, b)
        assert out % b == 0 and out >= b
        if out != b or dim >= b:
            # nearest multiple within b/2 (ties go up)
            assert abs(out - dim) * 2 <= b
            if abs(out - dim) * 2 == b:
                assert out > dim

    def test_ties_round_up(self):
        assert round_to_multiple(42, 28) == 56


class TestSummedAreaTable:
    def test_zero_image(self):
        sat = build_sat(np.zeros((4, 4), dtype=np.uint8))
        assert sat.sums.sum() == 0 and sat.sq_sums.sum() == 0

    def test_all_255_corner(self):
        sat = build_sat(np.full((2, 2), 255, dtype=np.uint8))
        assert sat.sums[2, 2] == 1020
        assert sat.sq_sums[2, 2] == 4 * 255 * 255

    def test_random_rect_sums_match_naive(self):
        rng = np.random.default_rng(11)
        gray = rng.integers(0, 256, size=(8, 8)).astype(np.uint8)
        sat = build_sat(gray)
        for _ in range(50):
            w = int(rng.integers(1, 9))
            h = int(rng.integers(1, 9))
            x = int(rng.integers(0, 9 - w))
            y = int(rng.integers(0, 9 - h))
            total, sq_total = region_sums(sat, (x, y, w, h))
            assert total == naive_region_sum(gray, (x, y, w, h))
            sq = gray.astype(np.int64) ** 2
            assert sq_total == int(sq[y : y + h, x : x + w].sum())


class TestRegionVariance:
    def test_uniform_region_is_zero(self):
        sat = build_sat(np.full((6, 6), 137, dtype=np.uint8))
        assert region_variance(sat, (0, 0, 6, 6)) == 0.0

    def test_two_value_split(self):
        gray = np.zeros((4, 4), dtype=np.uint8)
        gray[:, 2:] = 255
        sat = build_sat(gray)
        assert region_variance(sat, (0, 0, 4, 4)) == pytest.approx(16256.25, abs=0)

    def test_matches_naive_two_pass(self):
        rng = np.random.default_rng(13)
        gray = rng.integers(0, 256, size=(40, 30)).astype(np.uint8)
        sat = build_sat(gray)
        for _ in range(40):
            w = int(rng.integers(1, 31))
            h = int(rng.integers(1, 41))
            x = int(rng.integers(0, 31 - w))
            y = int(rng.integers(0, 41 - h))
            got = region_variance(sat, (x, y, w, h))
            want = naive_region_variance(gray, (x, y, w, h))
            assert got == pytest.approx(want, rel=1e-6, abs=1e-9)

    def test_zero_iff_constant(self):
        gray = np.full((5, 5), 9, dtype=np.uint8)
        gray[4, 4] = 10
        sat = build_sat(gray)
        assert region_variance(sat, (0, 0, 4, 4)) == 0.0
        assert region_variance(sat, (0, 0, 5, 5)) > 0.0

    def test_rejects_bad_rects(self):
        sat = build_sat(np.zeros((4, 4), dtype=np.uint8))
        with pytest.raises(ValueError):
            region_variance(sat, (0, 0, 0, 2))
        with pytest.raises(ValueError):
            region_variance(sat, (2, 2, 4, 4))
        with pytest.raises(ValueError):
            region_variance(sat, (-1, 0, 2, 2))


class TestRegionMaxGradient:
    def test_uniform_region(self):
        gray = np.full((8, 8), 77, dtype=np.uint8)
        assert region_max_gradient(gray, (0, 0, 8, 8)) == 0.0

    def test_vertical_step_edge(self):
        gray = np.zeros((4, 6), dtype=np.uint8)
        gray[:, 3:] = 255
        assert region_max_gradient(gray, (0, 0, 6, 4)) == 255.0

    def test_diagonal_ramp(self):
        ramp = np.arange(0, 60, 10, dtype=np.int64)
        gray = (ramp[:, None] + ramp[None, :]).clip(0, 255).astype(np.uint8)
        assert region_max_gradient(gray, (0, 0, 6, 6)) == pytest.approx(14.142, abs=1e-3)

    def test_single_pixel_rect(self):
        gray = np.arange(16, dtype=np.uint8).reshape(4, 4)
        assert region_max_gradient(gray, (2, 2, 1, 1)) == 0.0

    def test_matches_naive(self):
        rng = np.random.default_rng(17)
        gray = rng.integers(0, 256, size=(12, 12)).astype(np.uint8)
        for _ in range(25):
            w = int(rng.integers(1, 13))
            h = int(rng.integers(1, 13))
            x = int(rng.integers(0, 13 - w))
            y = int(rng.integers(0, 13 - h))
            got = region_max_gradient(gray, (x, y, w, h))
            assert got == pytest.approx(naive_max_gradient(gray, (x, y, w, h)), abs=1e-9)

    def test_rejects_out_of_bounds(self):
        gray = np.zeros((4, 4), dtype=np.uint8)
        with pytest.raises(ValueError):
            region_max_gradient(gray, (0, 0, 5, 4))
