"""Single-frame analysis: operators, optimal bounds, duals.

A Frame is an indexed finite family of vectors in R^d, stored row-wise
(``vectors[j]`` is the j-th frame vector).  The synthesis matrix keeps the
vectors as columns, so the analysis operator is its transpose and the frame
operator is T T^T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NotAFrameError, ShapeMismatchError
from .linalg import spd_inverse, sym_eig_bounds, zero_threshold

DEFAULT_DUAL_TOL = 1e-10


@dataclass(frozen=True)
class Frame:
    """n vectors in R^d.  Never mutated after construction."""

    vectors: np.ndarray
    label: str | None = None

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise InvalidArgumentError(
                f"a frame needs an (n, d) array of vectors, got shape {v.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise InvalidArgumentError("frame vectors must be finite")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def size(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class Bounds:
    """Optimal lower/upper frame bounds.  lower == 0 means Bessel only."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper):
            raise InvalidArgumentError(
                f"bounds must satisfy 0 <= lower <= upper, got ({self.lower}, {self.upper})"
            )


def synthesis(frame: Frame) -> np.ndarray:
    """d x n matrix with the frame vectors as columns."""
    return frame.vectors.T.copy()


def frame_operator(frame: Frame) -> np.ndarray:
    """S = T T^T = sum_j f_j f_j^T (symmetric PSD)."""
    t = frame.vectors.T
    s = t @ t.T
    return 0.5 * (s + s.T)


def frame_bounds(frame: Frame) -> Bounds:
    """Optimal frame bounds: the extreme eigenvalues of the frame operator.

    A smallest eigenvalue at or below the positivity threshold is reported as
    exactly 0 (Bessel but not a frame).
    """
    lam_min, lam_max = sym_eig_bounds(frame_operator(frame))
    lam_max = max(lam_max, 0.0)
    if lam_min <= zero_threshold(lam_max):
        lam_min = 0.0
    return Bounds(lam_min, lam_max)


def is_frame(frame: Frame) -> bool:
    return frame_bounds(frame).lower > 0.0


def canonical_dual(frame: Frame) -> Frame:
    """The frame {S^{-1} f_j}."""
    if not is_frame(frame):
        raise NotAFrameError("family does not span, canonical dual undefined")
    s_inv = spd_inverse(frame_operator(frame))
    return Frame(frame.vectors @ s_inv.T, label=frame.label)


def is_dual_pair(f: Frame, g: Frame, tol: float = DEFAULT_DUAL_TOL):
    """True iff T_F T_G^T = I within tol.  Returns (verdict, witness matrix)."""
    if (f.dim, f.size) != (g.dim, g.size):
        raise ShapeMismatchError(
            f"frames of shape ({f.dim}, {f.size}) and ({g.dim}, {g.size}) cannot be dual"
        )
    witness = f.vectors.T @ g.vectors
    deviation = float(np.max(np.abs(witness - np.eye(f.dim))))
    return deviation <= tol, witness


def analyze(frame: Frame, f) -> np.ndarray:
    """Analysis coefficients <f, f_j> for all j."""
    vec = np.asarray(f, dtype=float)
    if vec.shape != (frame.dim,):
        raise ShapeMismatchError(
            f"vector of shape {vec.shape} does not match dimension {frame.dim}"
        )
    return frame.vectors @ vec
