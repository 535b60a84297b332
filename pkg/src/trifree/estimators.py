"""scikit-learn style wrappers around the detectors and listers.

Each sample of X is one graph.  ``fit`` only resolves the pattern and the
algorithm; there is nothing to learn.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .cli import pick_algorithm, solve
from .graph import Graph, Triangle
from .patterns import builtin_pattern, classify


def check_graph(x) -> Graph:
    """Accept a Graph, a square symmetric 0/1 adjacency array, or an iterable of (u, v) pairs."""
    if isinstance(x, Graph):
        return x
    if isinstance(x, np.ndarray) or (hasattr(x, "shape") and len(getattr(x, "shape", ())) == 2):
        a = np.asarray(x)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(a) != 0):
            raise ValueError("adjacency matrix has self-loops")
        if not np.isin(a, (0, 1)).all():
            raise ValueError("adjacency matrix must be 0/1")
        i, j = np.nonzero(np.triu(a, 1))
        return Graph(a.shape[0], list(zip(i.tolist(), j.tolist())))
    try:
        edges = [(int(u), int(v)) for u, v in x]
    except (TypeError, ValueError):
        raise ValueError(f"cannot interpret {type(x).__name__} as a graph") from None
    n = 1 + max((max(e) for e in edges), default=-1)
    return Graph(n, edges)


def _check_many(X) -> list[Graph]:
    if isinstance(X, (Graph, np.ndarray)):
        X = [X]
    return [check_graph(x) for x in X]


class _Base(BaseEstimator):
    def __init__(self, pattern="C5", algorithm="auto", seed=0, k=None, t=None,
                 c_s=None, c_a=None, c_cc=None):
        self.pattern = pattern
        self.algorithm = algorithm
        self.seed = seed
        self.k = k
        self.t = t
        self.c_s = c_s
        self.c_a = c_a
        self.c_cc = c_cc

    def fit(self, X=None, y=None):
        h = self.pattern
        if isinstance(h, str):
            h = builtin_pattern(h)
        elif h is not None:
            h = check_graph(h)
        self.pattern_ = h
        self.category_ = classify(h).name if h is not None else None
        self.algorithm_ = pick_algorithm(self.algorithm, h)
        return self

    def _run(self, g: Graph, listing: bool):
        if not hasattr(self, "algorithm_"):
            raise ValueError(f"{type(self).__name__} is not fitted; call fit first")
        consts = {"c_s": self.c_s, "c_a": self.c_a, "c_cc": self.c_cc}
        out, _, _ = solve(g, self.pattern_, self.algorithm_, listing, self.seed, self.k, self.t, consts)
        return out


class TriangleDetector(_Base):
    """predict(X) -> bool per graph; detect(g) -> one triangle or None."""

    def detect(self, g) -> Triangle | None:
        return self._run(check_graph(g), False)

    def predict(self, X) -> np.ndarray:
        return np.array([self.detect(g) is not None for g in _check_many(X)], dtype=bool)


class TriangleLister(_Base):
    """transform(X) -> list of triangle lists, one per graph."""

    def transform(self, X) -> list[list[Triangle]]:
        return [self._run(g, True) for g in _check_many(X)]

    def fit_transform(self, X, y=None):
        return self.fit(X).transform(X)
