import numpy as np
import pytest

from rsos.vision import (
    FeatureKind,
    GrayImage,
    HaarFeature,
    Rect,
    TiltedRect,
    Window,
    feature_value,
    integral_image,
    rect_sum,
    rotated_integral_image,
    tilted_rect_sum,
)

from vision_oracles import (
    brute_feature_value,
    brute_prefix,
    brute_pyramid,
    brute_rect_sum,
    brute_tilted_sum,
    tilted_pixels,
)


def random_image(rng: np.random.Generator, w: int, h: int) -> GrayImage:
    return GrayImage(rng.integers(0, 256, size=(h, w), dtype=np.uint8))


class TestIntegralImage:
    def test_single_pixel(self):
        ii = integral_image(GrayImage(np.array([[7]], dtype=np.uint8)))
        assert ii.sums.tolist() == [[7]]

    def test_all_ones_3x3(self):
        ii = integral_image(GrayImage(np.ones((3, 3), dtype=np.uint8)))
        assert ii.sums.tolist() == [[1, 2, 3], [2, 4, 6], [3, 6, 9]]

    def test_matches_brute_force_everywhere(self):
        rng = np.random.default_rng(81)
        img = random_image(rng, 8, 8)
        ii = integral_image(img)
        for y in range(8):
            for x in range(8):
                assert int(ii.sums[y, x]) == brute_prefix(img.pixels, x, y)

    def test_monotone_for_nonnegative_images(self):
        rng = np.random.default_rng(82)
        ii = integral_image(random_image(rng, 6, 5))
        assert (np.diff(ii.sums, axis=0) >= 0).all()
        assert (np.diff(ii.sums, axis=1) >= 0).all()


class TestRectSum:
    def test_full_image(self):
        ii = integral_image(GrayImage(np.ones((3, 3), dtype=np.uint8)))
        assert rect_sum(ii, Rect(0, 0, 3, 3)) == 9

    def test_unit_rects_equal_pixels(self):
        rng = np.random.default_rng(83)
        img = random_image(rng, 4, 4)
        ii = integral_image(img)
        for y in range(4):
            for x in range(4):
                assert rect_sum(ii, Rect(x, y, 1, 1)) == img.pixel(x, y)

    def test_random_rects_match_brute_force(self):
        rng = np.random.default_rng(84)
        for _ in range(20):
            img = random_image(rng, 16, 16)
            ii = integral_image(img)
            for _ in range(30):
                w = int(rng.integers(1, 17))
                h = int(rng.integers(1, 17))
                x = int(rng.integers(0, 17 - w))
                y = int(rng.integers(0, 17 - h))
                assert rect_sum(ii, Rect(x, y, w, h)) == brute_rect_sum(
                    img.pixels, x, y, w, h
                )

    def test_adjacent_rects_are_additive(self):
        rng = np.random.default_rng(85)
        img = random_image(rng, 12, 12)
        ii = integral_image(img)
        whole = rect_sum(ii, Rect(2, 3, 8, 6))
        left = rect_sum(ii, Rect(2, 3, 3, 6))
        right = rect_sum(ii, Rect(5, 3, 5, 6))
        assert whole == left + right

    def test_out_of_bounds_rejected(self):
        ii = integral_image(GrayImage(np.zeros((4, 4), dtype=np.uint8)))
        with pytest.raises(ValueError, match="bounds"):
            rect_sum(ii, Rect(2, 2, 3, 3))


class TestRotatedIntegralImage:
    def test_single_pixel(self):
        rii = rotated_integral_image(GrayImage(np.array([[5]], dtype=np.uint8)))
        assert rii.pyramid_sum(0, 0) == 5

    def test_pyramid_matches_brute_force(self):
        rng = np.random.default_rng(86)
        img = random_image(rng, 8, 8)
        rii = rotated_integral_image(img)
        for y in range(8):
            for x in range(-8, 16):
                assert rii.pyramid_sum(x, y) == brute_pyramid(img.pixels, x, y), (x, y)

    def test_unit_tilted_rect_area_on_ones(self):
        img = GrayImage(np.ones((6, 6), dtype=np.uint8))
        rii = rotated_integral_image(img)
        # anchored at (3, 1): covers the 2 pixels (3,2) and (3,3)
        rect = TiltedRect(3, 1, 1, 1)
        assert len(tilted_pixels(3, 1, 1, 1, (6, 6))) == 2
        assert tilted_rect_sum(rii, rect) == 2

    def test_all_tilted_rects_match_brute_force(self):
        rng = np.random.default_rng(87)
        img = random_image(rng, 8, 8)
        rii = rotated_integral_image(img)
        checked = 0
        for w in range(1, 4):
            for h in range(1, 4):
                for x in range(-2, 10):
                    for y in range(-1, 8):
                        rect = TiltedRect(x, y, w, h)
                        mnx, mny, mxx, mxy = rect.pixel_bounds()
                        if mnx < 0 or mny < 0 or mxx >= 8 or mxy >= 8:
                            continue
                        assert tilted_rect_sum(rii, rect) == brute_tilted_sum(
                            img.pixels, x, y, w, h
                        ), rect
                        checked += 1
        assert checked > 50

    def test_out_of_bounds_rejected(self):
        rii = rotated_integral_image(GrayImage(np.zeros((4, 4), dtype=np.uint8)))
        with pytest.raises(ValueError, match="bounds"):
            tilted_rect_sum(rii, TiltedRect(0, 0, 3, 3))


def all_kinds_features(window=(8, 8)):
    return [
        HaarFeature(FeatureKind.TWO_RECT_HORIZONTAL, Rect(0, 0, 8, 8), window),
        HaarFeature(FeatureKind.TWO_RECT_VERTICAL, Rect(1, 1, 6, 6), window),
        HaarFeature(FeatureKind.THREE_RECT, Rect(1, 0, 6, 4), window),
        HaarFeature(FeatureKind.FOUR_RECT, Rect(2, 2, 4, 4), window),
        HaarFeature(FeatureKind.TILTED, TiltedRect(3, 0, 2, 2), window),
    ]


class TestFeatureValue:
    def test_constant_image_balances_to_zero(self):
        img = GrayImage(np.full((8, 8), 77, dtype=np.uint8))
        ii, rii = integral_image(img), rotated_integral_image(img)
        for feat in all_kinds_features():
            assert feature_value(ii, rii, feat, Window(0, 0, 8, 8)) == 0

    def test_step_edge_sign_convention(self):
        # left half black, right half white; +1 weight sits on the left
        pixels = np.zeros((8, 8), dtype=np.uint8)
        pixels[:, 4:] = 255
        img = GrayImage(pixels)
        ii = integral_image(img)
        feat = HaarFeature(FeatureKind.TWO_RECT_HORIZONTAL, Rect(0, 0, 8, 8), (8, 8))
        value = feature_value(ii, None, feat, Window(0, 0, 8, 8))
        assert value == -(4 * 8 * 255)
        flipped = GrayImage(255 - pixels)
        assert feature_value(integral_image(flipped), None, feat, Window(0, 0, 8, 8)) == 4 * 8 * 255

    def test_random_features_match_brute_force(self):
        rng = np.random.default_rng(88)
        for _ in range(15):
            img = random_image(rng, 16, 16)
            ii, rii = integral_image(img), rotated_integral_image(img)
            for feat in all_kinds_features():
                for win in (Window(0, 0, 8, 8), Window(3, 5, 8, 8), Window(2, 1, 12, 12)):
                    assert feature_value(ii, rii, feat, win) == brute_feature_value(
                        img.pixels, feat, win
                    ), (feat.kind, win)

    def test_linearity_in_intensity(self):
        rng = np.random.default_rng(89)
        base = rng.integers(0, 64, size=(8, 8), dtype=np.uint8)
        img1, img3 = GrayImage(base), GrayImage(base * 3)
        for feat in all_kinds_features():
            v1 = feature_value(integral_image(img1), rotated_integral_image(img1), feat, Window(0, 0, 8, 8))
            v3 = feature_value(integral_image(img3), rotated_integral_image(img3), feat, Window(0, 0, 8, 8))
            assert v3 == 3 * v1

    def test_constant_shift_leaves_balanced_kinds_unchanged(self):
        rng = np.random.default_rng(90)
        base = rng.integers(0, 100, size=(8, 8), dtype=np.uint8)
        shifted = GrayImage(base + 100)
        img = GrayImage(base)
        for feat in all_kinds_features():
            v = feature_value(integral_image(img), rotated_integral_image(img), feat, Window(0, 0, 8, 8))
            vs = feature_value(
                integral_image(shifted), rotated_integral_image(shifted), feat, Window(0, 0, 8, 8)
            )
            assert vs == v, feat.kind

    def test_balance_invariant(self):
        for feat in all_kinds_features():
            parts = feat.rects()
            if feat.kind is FeatureKind.TILTED:
                assert sum(w * (2 * r.w * r.h) for r, w in parts) == 0
            else:
                assert sum(w * r.area for r, w in parts) == 0

    def test_feature_exceeding_window_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            HaarFeature(FeatureKind.TWO_RECT_HORIZONTAL, Rect(4, 0, 8, 8), (8, 8))
        img = GrayImage(np.zeros((6, 6), dtype=np.uint8))
        feat = HaarFeature(FeatureKind.TWO_RECT_HORIZONTAL, Rect(0, 0, 8, 8), (8, 8))
        with pytest.raises(ValueError, match="outside"):
            feature_value(integral_image(img), None, feat, Window(0, 0, 8, 8))

    def test_scaled_window_stays_balanced(self):
        img = GrayImage(np.full((16, 16), 200, dtype=np.uint8))
        ii, rii = integral_image(img), rotated_integral_image(img)
        for feat in all_kinds_features():
            assert feature_value(ii, rii, feat, Window(0, 0, 13, 13)) == 0
