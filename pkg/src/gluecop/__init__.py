"""Bivariate copula gluing, dependence diagnostics and piecewise regression."""

from .changepoint import (Crossing, CrossingReport, breakpoint_from_gluing_point,
                          diagonal_crossings, pqd_nqd_prescreen)
from .copulas import (AxiomReport, ClaytonCopula, Copula, Example1Copula,
                      FGMCopula, FrankCopula, FrechetLowerCopula,
                      FrechetUpperCopula, GumbelCopula, IndependenceCopula,
                      PlackettCopula, check_copula_axioms, conditional_cdf,
                      conditional_quantile, make_copula)
from .dependence import (DependenceReport, QuadrantClass, RegressionClass,
                         classify_quadrant, classify_regression_dependence,
                         dependence_report, schweizer_wolff_sigma, spearman_rho)
from .empirical import (EmpiricalCopula, FitResult, PiecewiseFit, PseudoSample,
                        empirical_breakpoints, empirical_crossing_report,
                        empirical_tolerance, fit_piecewise, fit_segment, pseudo_observations,
                        simulate_copula)
from .errors import (DataError, DomainError, GluecopError, NumericalError,
                     ParameterError)
from .gluing import GluedCopula, decompose, glue
from .marginals import (EmpiricalMarginal, Marginal, TruncatedMarginal,
                        UniformMarginal)
from .model_io import (copula_from_dict, copula_to_dict, load_model,
                       model_from_dict, model_to_dict, save_model)
from .reference import (Example4Copula, Example4Model, Example4Piece, Sample,
                        example1_copula, simulate_example1, simulate_example4,
                        tent)
from .regression import (IntegrationSpec, PiecewiseRegressionModel,
                         RegressionModel, mean_regression, median_psi,
                         median_regression, piecewise_regression)

__version__ = "0.1.0"
