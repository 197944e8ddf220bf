import numpy as np
import pytest

from gluecop import (
    ClaytonCopula,
    DomainError,
    Example1Copula,
    Example4Model,
    FrankCopula,
    FrechetLowerCopula,
    FrechetUpperCopula,
    IndependenceCopula,
    IntegrationSpec,
    PiecewiseRegressionModel,
    RegressionClass,
    RegressionModel,
    UniformMarginal,
    classify_regression_dependence,
    glue,
    mean_regression,
    median_psi,
    median_regression,
    piecewise_regression,
    tent,
)

PI = IndependenceCopula()
M = FrechetUpperCopula()
W = FrechetLowerCopula()
UNIT = UniformMarginal()


class TestMedianPsi:
    def test_product(self):
        for u in (0.1, 0.5, 0.9):
            assert median_psi(PI, u) == pytest.approx(0.5, abs=1e-9)

    def test_frechet_upper(self):
        assert median_psi(M, 0.3) == pytest.approx(0.3, abs=1e-9)

    def test_frechet_lower(self):
        assert median_psi(W, 0.3) == pytest.approx(0.7, abs=1e-9)


class TestMedianRegression:
    def test_tent_first_branch(self):
        m = RegressionModel(Example1Copula(0.5), UNIT, UNIT)
        assert median_regression(m, 0.25) == pytest.approx(0.5, abs=1e-9)

    def test_product_constant_half(self):
        m = RegressionModel(PI, UNIT, UNIT)
        xs = np.linspace(0, 1, 11)
        assert np.allclose([median_regression(m, x) for x in xs], 0.5, atol=1e-9)

    def test_parabola_model(self):
        model = Example4Model(k=0.1)
        m = RegressionModel(model.copula(), model.marginal_x(), model.marginal_y())
        assert median_regression(m, 0.3) == pytest.approx(0.04, abs=1e-4)

    def test_outside_support_rejected(self):
        m = RegressionModel(PI, UNIT, UNIT)
        with pytest.raises(DomainError):
            median_regression(m, 1.5)


class TestMeanRegression:
    def test_product_uniform(self):
        m = RegressionModel(PI, UNIT, UNIT)
        assert mean_regression(m, 0.3) == pytest.approx(0.5, abs=1e-3)

    def test_tent_degenerate_conditional(self):
        # conditional law is a point mass, so mean equals median
        m = RegressionModel(Example1Copula(0.5), UNIT, UNIT)
        assert mean_regression(m, 0.7) == pytest.approx(0.6, abs=1e-3)

    def test_parabola_model(self):
        model = Example4Model(k=0.1)
        m = RegressionModel(model.copula(), model.marginal_x(), model.marginal_y())
        assert mean_regression(m, 0.8) == pytest.approx(0.09, abs=1e-2)

    def test_mean_close_to_median_for_symmetric_conditional(self):
        model = Example4Model(k=0.1)
        m = RegressionModel(model.copula(), model.marginal_x(), model.marginal_y())
        for x in (0.2, 0.5, 0.8):
            assert mean_regression(m, x) == pytest.approx(
                median_regression(m, x), abs=2e-2)

    def test_tail_check_passes_for_bounded_support(self):
        m = RegressionModel(PI, UNIT, UNIT)
        spec = IntegrationSpec(check=True)
        assert mean_regression(m, 0.4, spec) == pytest.approx(0.5, abs=1e-3)


class TestPiecewise:
    def tent_model(self, theta=0.5):
        return PiecewiseRegressionModel((theta,), (M, W), UNIT, UNIT)

    def test_tent_two_segments(self):
        pm = self.tent_model()
        assert piecewise_regression(pm, 0.25) == pytest.approx(0.5, abs=1e-9)
        assert piecewise_regression(pm, 0.7) == pytest.approx(0.6, abs=1e-9)

    def test_all_product_segments_constant(self):
        pm = PiecewiseRegressionModel((0.4,), (PI, PI), UNIT, UNIT)
        xs = np.linspace(0, 1, 21)
        assert np.allclose(piecewise_regression(pm, xs), 0.5, atol=1e-9)

    def test_unknown_statistic(self):
        with pytest.raises(DomainError):
            piecewise_regression(self.tent_model(), 0.3, statistic="mode")

    def test_segment_count_mismatch(self):
        with pytest.raises(DomainError):
            PiecewiseRegressionModel((0.5,), (M,), UNIT, UNIT)

    def test_parabola_decomposition_monotone_per_segment(self):
        model = Example4Model(k=0.1)
        p1, p2 = model.pieces()
        pm = PiecewiseRegressionModel((0.5,), (p1, p2), model.marginal_x(),
                                      model.marginal_y())
        left = piecewise_regression(pm, np.linspace(0.02, 0.5, 25))
        right = piecewise_regression(pm, np.linspace(0.5, 0.98, 25))
        assert np.all(np.diff(left) <= 1e-9)
        assert np.all(np.diff(right) >= -1e-9)


class TestGluingEquivalence:
    @pytest.mark.parametrize("pair", [(M, W), (ClaytonCopula(2), FrankCopula(-4)),
                                      (PI, FrankCopula(3))],
                             ids=["M-W", "clayton-frank", "pi-frank"])
    @pytest.mark.parametrize("theta", [0.25, 0.5, 0.75])
    def test_glued_median_equals_piecewise(self, pair, theta):
        a, b = pair
        glued = RegressionModel(glue([a, b], [theta]), UNIT, UNIT)
        pw = PiecewiseRegressionModel((theta,), (a, b), UNIT, UNIT)
        # skip x == theta: the two formulations use opposite closed sides there
        xs = np.linspace(0, 1, 101)
        xs = xs[xs != theta]
        mu_glued = np.array([median_regression(glued, x) for x in xs])
        mu_pw = piecewise_regression(pw, xs)
        assert np.max(np.abs(mu_glued - mu_pw)) < 1e-8


class TestMonotoneRegression:
    @pytest.mark.parametrize("c,expected", [
        (ClaytonCopula(3.0), RegressionClass.PRD),
        (FrankCopula(-5.0), RegressionClass.NRD),
    ], ids=["clayton-prd", "frank-nrd"])
    def test_prd_nrd_implies_monotone_regression(self, c, expected):
        assert classify_regression_dependence(c) is expected
        m = RegressionModel(c, UNIT, UNIT)
        xs = np.linspace(0.01, 0.99, 101)
        mu = np.array([median_regression(m, x) for x in xs])
        diffs = np.diff(mu)
        if expected is RegressionClass.PRD:
            assert np.all(diffs >= -1e-8)
        else:
            assert np.all(diffs <= 1e-8)
        # mean regression on a coarser grid, same monotonicity
        mean = np.array([mean_regression(m, x) for x in xs[::10]])
        if expected is RegressionClass.PRD:
            assert np.all(np.diff(mean) >= -1e-6)
        else:
            assert np.all(np.diff(mean) <= 1e-6)
