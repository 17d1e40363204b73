"""Tests for the constellation families and their metrics."""

import math

import numpy as np
import pytest

from apsk_shaper import (
    BOX_MULLER,
    DVB_VARIANT,
    SQUARE_QAM,
    DomainError,
    average_power,
    box_muller_apsk,
    canonical_family,
    dvb_variant_apsk,
    make_constellation,
    min_distance,
    papr,
    peak_power,
    square_qam,
    validate_constellation,
)

SQRT_LN2 = 0.8325546111576977
SQRT_LN4 = 1.1774100225154747
SQRT_LN4_3 = 0.5363600213026516
BM2_AVG = 0.8369882167858357
BM4_AVG = 0.9159514541404551  # == (1/4) ln(4096/105)
LN8 = 2.0794415416798357
LN4 = 1.3862943611198906
BM4_PAPR = 2.2702530055277004  # ln8 / ((1/4) ln(4096/105))
DVB4_PAPR = 1.6562889815145494  # ln4 / ((ln4 + ln(4/3))/2)


def closed_form_avg_box(n, power):
    # independent route: the ring-radius sum, not the point mean
    k = np.arange(n)
    return -(power / n) * np.log((2 * k + 1) / (2.0 * n)).sum()


class TestBoxMuller:
    def test_single_point(self):
        c = box_muller_apsk(1)
        assert c.points.shape == (1, 2)
        assert c.points[0, 0] == pytest.approx(-SQRT_LN2, abs=1e-15)
        assert abs(c.points[0, 1]) < 1e-15
        assert c.rings[0].radius == pytest.approx(SQRT_LN2, abs=1e-15)
        assert c.rings[0].phase_offset == pytest.approx(math.pi, abs=1e-15)

    def test_n2_geometry(self):
        c = box_muller_apsk(2)
        # two rings on the imaginary axis, phase indices fastest
        assert np.allclose(np.abs(c.points[:, 0]), 0.0, atol=1e-15)
        assert c.points[:, 1] == pytest.approx(
            [SQRT_LN4, -SQRT_LN4, SQRT_LN4_3, -SQRT_LN4_3], abs=1e-15
        )
        assert [r.radius for r in c.rings] == pytest.approx([SQRT_LN4, SQRT_LN4_3])
        assert [r.points_per_ring for r in c.rings] == [2, 2]

    def test_cardinality(self):
        for n in (1, 2, 3, 5, 8, 17):
            assert box_muller_apsk(n).points.shape == (n * n, 2)

    def test_average_power_examples(self):
        assert average_power(box_muller_apsk(2)) == pytest.approx(BM2_AVG, abs=1e-14)
        assert average_power(box_muller_apsk(4)) == pytest.approx(BM4_AVG, abs=1e-14)

    @pytest.mark.parametrize("n", [1, 2, 3, 7, 16, 33, 64])
    @pytest.mark.parametrize("power", [0.5, 1.0, 10.0])
    def test_average_power_matches_closed_form(self, n, power):
        avg = average_power(box_muller_apsk(n, power))
        ref = closed_form_avg_box(n, power)
        assert avg == pytest.approx(ref, rel=1e-12)

    def test_power_bound_strict(self):
        for n in range(1, 129):
            assert average_power(box_muller_apsk(n)) < 1.0

    def test_ring_membership(self):
        c = box_muller_apsk(6)
        radii = np.sqrt((c.points**2).sum(axis=1)).reshape(6, 6)
        for ring, row in zip(c.rings, radii):
            assert np.all(np.abs(row - ring.radius) <= 1e-9 * ring.radius)

    def test_rotational_symmetry(self):
        c = box_muller_apsk(5)
        th = 2 * math.pi / 5
        rot = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
        rotated = c.points @ rot.T
        for p in rotated:
            assert np.min(np.sum((c.points - p) ** 2, axis=1)) < (1e-9) ** 2

    def test_scaling_equivariance(self):
        base = box_muller_apsk(4, 1.0).points
        scaled = box_muller_apsk(4, 2.5).points
        np.testing.assert_allclose(scaled, math.sqrt(2.5) * base, rtol=1e-12, atol=1e-15)

    def test_deterministic(self):
        a = box_muller_apsk(9, 2.0)
        b = box_muller_apsk(9, 2.0)
        assert np.array_equal(a.points, b.points)
        assert a.rings == b.rings

    def test_normalize(self):
        c = box_muller_apsk(4, 2.0, normalize=True)
        assert average_power(c) == pytest.approx(2.0, rel=1e-12)
        validate_constellation(c)

    def test_rejects_bad_args(self):
        with pytest.raises(DomainError):
            box_muller_apsk(0)
        with pytest.raises(DomainError):
            box_muller_apsk(2, power=0.0)
        with pytest.raises(DomainError):
            box_muller_apsk(2, power=-1.0)


class TestDvbVariant:
    def test_n2_single_ring(self):
        c = dvb_variant_apsk(2)
        assert len(c.rings) == 1
        assert c.rings[0].radius == pytest.approx(SQRT_LN2, abs=1e-15)
        phases = np.arctan2(c.points[:, 1], c.points[:, 0])
        expected = [math.pi / 4, 3 * math.pi / 4, 5 * math.pi / 4 - 2 * math.pi, 7 * math.pi / 4 - 2 * math.pi]
        assert phases == pytest.approx(expected, abs=1e-12)

    def test_n4_two_rings(self):
        c = dvb_variant_apsk(4)
        assert [r.radius for r in c.rings] == pytest.approx([SQRT_LN4, SQRT_LN4_3], abs=1e-15)
        assert [r.points_per_ring for r in c.rings] == [8, 8]
        assert c.points.shape == (16, 2)
        assert average_power(c) == pytest.approx(BM2_AVG, abs=1e-14)

    def test_odd_n_rejected(self):
        with pytest.raises(DomainError, match="even"):
            dvb_variant_apsk(3)

    def test_rotational_symmetry(self):
        c = dvb_variant_apsk(4)
        th = 2 * math.pi / 8  # 2n points per ring
        rot = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
        rotated = c.points @ rot.T
        for p in rotated:
            assert np.min(np.sum((c.points - p) ** 2, axis=1)) < (1e-9) ** 2

    def test_power_bound_strict(self):
        for n in range(2, 129, 2):
            assert average_power(dvb_variant_apsk(n)) < 1.0


class TestSquareQam:
    def test_n2(self):
        c = square_qam(2)
        d = 0.7071067811865476
        order = np.lexsort((c.points[:, 1], c.points[:, 0]))
        np.testing.assert_allclose(
            c.points[order], [[-d, -d], [-d, d], [d, -d], [d, d]], atol=1e-15
        )
        assert average_power(c) == pytest.approx(1.0, rel=1e-12)

    def test_n4_coordinates(self):
        c = square_qam(4)
        coords = np.unique(np.round(c.points, 12))
        np.testing.assert_allclose(
            coords,
            [-0.9486832980505138, -0.31622776601683794, 0.31622776601683794, 0.9486832980505138],
            atol=1e-12,
        )
        assert average_power(c) == pytest.approx(1.0, rel=1e-12)

    def test_n1_origin(self):
        c = square_qam(1)
        assert np.array_equal(c.points, [[0.0, 0.0]])
        assert average_power(c) == 0.0

    @pytest.mark.parametrize("n", [2, 3, 5, 8, 16])
    def test_exact_normalization(self, n):
        assert average_power(square_qam(n, 3.0)) == pytest.approx(3.0, rel=1e-12)


class TestMetrics:
    def test_peak_and_papr(self):
        assert peak_power(box_muller_apsk(4)) == pytest.approx(LN8, abs=1e-14)
        assert papr(box_muller_apsk(4)) == pytest.approx(BM4_PAPR, abs=1e-12)
        assert peak_power(dvb_variant_apsk(4)) == pytest.approx(LN4, abs=1e-14)
        assert papr(dvb_variant_apsk(4)) == pytest.approx(DVB4_PAPR, abs=1e-12)
        assert papr(dvb_variant_apsk(2)) == pytest.approx(1.0, rel=1e-12)

    def test_papr_rejects_origin(self):
        with pytest.raises(DomainError):
            papr(square_qam(1))

    def test_min_distance(self):
        assert min_distance(square_qam(2)) == pytest.approx(1.4142135623730951, abs=1e-14)
        assert min_distance(box_muller_apsk(2)) == pytest.approx(
            SQRT_LN4 - SQRT_LN4_3, abs=1e-12
        )
        with pytest.raises(DomainError):
            min_distance(box_muller_apsk(1))

    def test_min_distance_flags_duplicates(self):
        c = square_qam(2)
        dup = np.array(c.points)
        dup[1] = dup[0]
        broken = type(c)(c.label, c.family, c.n, c.power, dup, None)
        assert min_distance(broken) == 0.0
        with pytest.raises(DomainError, match="distinct"):
            validate_constellation(broken)


class TestFamilies:
    def test_aliases(self):
        assert canonical_family("box_muller") == BOX_MULLER
        assert canonical_family("dvb_variant_apsk") == DVB_VARIANT
        assert canonical_family("qam") == SQUARE_QAM
        with pytest.raises(DomainError):
            canonical_family("psk")

    def test_make_constellation_dispatch(self):
        assert make_constellation("qam", 2).family == SQUARE_QAM
        assert make_constellation("box_muller", 2).family == BOX_MULLER
        assert make_constellation("dvb_variant", 2).family == DVB_VARIANT
        with pytest.raises(DomainError):
            make_constellation("qam", 2, normalize=True)

    def test_validate_passes_on_fresh_constellations(self):
        for c in (box_muller_apsk(3), dvb_variant_apsk(4), square_qam(4), square_qam(1)):
            validate_constellation(c)

    def test_points_are_read_only(self):
        c = box_muller_apsk(2)
        with pytest.raises(ValueError):
            c.points[0, 0] = 1.0
