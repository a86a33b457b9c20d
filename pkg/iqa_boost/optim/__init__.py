"""
Nonlinear least-squares optimization.
"""

from .levenberg_marquardt import LeastSquaresProblem, LMOptions, LMResult, lm_fit

__all__ = ["LeastSquaresProblem", "LMOptions", "LMResult", "lm_fit"]
