"""Scikit-learn style front end to the exact embedding decision."""

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .metric import MetricSpace, validate_metric
from .planar import embed


def _exact(value):
    # Floats go through their decimal repr, so 0.25 means 1/4, not the
    # nearest binary double of some longer literal.
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


class PlaneEmbedding(BaseEstimator):
    """Decide whether a precomputed distance matrix embeds in the l1 plane.

    fit(X) takes a square symmetric distance matrix whose entries may be
    ints, Fractions, strings like "3/2", or floats.  Arithmetic is exact
    throughout; float inputs are interpreted through their decimal repr.

    Attributes after fit:
        embeddable_: bool
        embedding_exact_: list of exact (x, y) coordinate pairs, or None
        embedding_: float ndarray of shape (n, 2), or None
        scenes_tried_: how many candidate configurations were examined

    Parameters:
        validate: run full metric-axiom validation on X (default True);
            turn off only for matrices known valid by construction.
    """

    def __init__(self, validate=True):
        self.validate = validate

    def fit(self, X, y=None):
        rows = [[_exact(v) for v in row] for row in X]
        if self.validate:
            ms = validate_metric(rows)
        else:
            ms = MetricSpace.from_table(rows)
        result = embed(ms)
        self.n_features_in_ = ms.n
        self.embeddable_ = result.embeddable
        self.scenes_tried_ = result.scenes_tried
        if result.embeddable:
            self.embedding_exact_ = [(p.x, p.y) for p in result.points]
            self.embedding_ = np.array(
                [[float(p.x), float(p.y)] for p in result.points])
        else:
            self.embedding_exact_ = None
            self.embedding_ = None
        return self

    def fit_transform(self, X, y=None):
        """Coordinates realizing X, as floats; raises when X does not embed."""
        self.fit(X)
        if not self.embeddable_:
            raise ValueError("metric does not embed isometrically into the l1 plane")
        return self.embedding_

    def transform(self, X=None):
        """Coordinates from the fitted matrix (no out-of-sample mapping)."""
        if not hasattr(self, "embeddable_"):
            raise NotFittedError("PlaneEmbedding instance is not fitted yet")
        if not self.embeddable_:
            raise ValueError("metric does not embed isometrically into the l1 plane")
        return self.embedding_
