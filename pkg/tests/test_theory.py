import math

import pytest

from docsim.errors import ConfigError
from docsim.theory import median_nn_distance, required_points


class TestMedianDistance:

    def test_single_point_on_line(self):
        assert median_nn_distance(1, 1) == pytest.approx(0.5)

    def test_three_points_on_line(self):
        assert median_nn_distance(1, 3) == pytest.approx(1 - 0.5 ** (1 / 3))
        assert median_nn_distance(1, 3) == pytest.approx(0.2063, abs=1e-4)

    def test_grows_with_dimension(self):
        values = [median_nn_distance(m, 1000) for m in (1, 2, 5, 10, 50, 100)]
        assert values == sorted(values)
        assert all(0 < v < 1 for v in values)

    def test_large_n_keeps_precision(self):
        # naivní 1 - 0.5**(1/N) by pro N=1e15 ztratil většinu platných číslic
        n = 10 ** 15
        assert median_nn_distance(1, n) == pytest.approx(math.log(2) / n, rel=1e-9)

    @pytest.mark.parametrize("m, n", [(0, 5), (3, 0), (1.5, 3), (True, 3)])
    def test_invalid(self, m, n):
        with pytest.raises(ConfigError):
            median_nn_distance(m, n)


class TestRequiredPoints:

    def test_one_dimension(self):
        raw = required_points(0.21, 1)
        assert raw == pytest.approx(2.94, abs=0.01)
        assert math.ceil(raw) == 3

    def test_three_dimensions(self):
        assert 74.0 <= required_points(0.21, 3) <= 75.0

    def test_ten_dimensions(self):
        raw = required_points(0.21, 10)
        assert abs(raw - 4155587) <= 1
        # přesná hodnota je 4155587.94..., zaokrouhlení nahoru tedy 4155588
        assert math.ceil(raw) == 4155588

    def test_inverse_of_median_distance(self):
        for m in (1, 2, 3, 5, 8, 10):
            for d in (0.1, 0.21, 0.5, 0.9):
                n = required_points(d, m)
                # dosazení zpět přes spojité N
                back = (-math.expm1(math.log(0.5) / n)) ** (1.0 / m)
                assert back == pytest.approx(d, rel=1e-6)

    def test_round_trip_from_point_count(self):
        for m in range(1, 11):
            for n in range(1, 1001):
                assert required_points(median_nn_distance(m, n), m) == pytest.approx(n, rel=1e-12)

    def test_tiny_distance_stays_finite(self):
        # d^M = 1e-200, N ~ ln 2 / d^M
        assert required_points(1e-100, 2) == pytest.approx(math.log(2) * 1e200, rel=1e-12)

    def test_underflow_is_config_error(self):
        with pytest.raises(ConfigError):
            required_points(1e-200, 2)

    @pytest.mark.parametrize("d", [0.0, 1.0, -0.2, 1.3])
    def test_invalid_distance(self, d):
        with pytest.raises(ConfigError):
            required_points(d, 3)
