"""
Boosting full-reference image-quality estimators.

Fuses the scores of existing quality estimators with a small neural network
or a linear support vector regressor and measures the gain under a seeded
k-fold protocol.
"""

__version__ = "1.0.0"
