"""
Boosting regressors: a single-hidden-layer network and a linear SVR.
"""

from .base import BaseLearner, standardize
from .neural_network import NNLearner, train_nn, predict_nn
from .svr import SVRLearner, train_svr, predict_svr, solve_svr_dual, dual_objective, kkt_violations
from .serialization import save_model, load_model

__all__ = [
    "BaseLearner",
    "standardize",
    "NNLearner",
    "train_nn",
    "predict_nn",
    "SVRLearner",
    "train_svr",
    "predict_svr",
    "solve_svr_dual",
    "dual_objective",
    "kkt_violations",
    "save_model",
    "load_model",
]
