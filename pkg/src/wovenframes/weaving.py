"""Partition machinery, weaving assembly and bounds, the exact wovenness
oracle, and duals of weavings.

A partition of the index set {0..n-1} over m frames is encoded as a base-m
assignment word: ``assignment[j]`` names the frame contributing vector j.
Exhaustive enumeration walks the words in integer (lexicographic) order, so
witness selection is deterministic: the smallest word among minimizers wins.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    CapExceededError,
    ConstraintViolatedError,
    IndexOutOfRangeError,
    InvalidArgumentError,
    NotAFrameError,
    ShapeMismatchError,
)
from .frames import Bounds, Frame, frame_bounds, frame_operator, synthesis
from .linalg import jacobi_eigh_batch, null_space_basis, operator_norm, spd_inverse, zero_threshold

DEFAULT_CAP = 2**22
_CHUNK = 16384


@dataclass(frozen=True)
class FrameFamily:
    """m frames sharing (dim, size)."""

    frames: tuple[Frame, ...]

    def __init__(self, frames):
        frames = tuple(frames)
        if not frames:
            raise InvalidArgumentError("a frame family needs at least one frame")
        d, n = frames[0].dim, frames[0].size
        for fr in frames[1:]:
            if (fr.dim, fr.size) != (d, n):
                raise ShapeMismatchError(
                    f"all frames must share shape ({d}, {n}), got ({fr.dim}, {fr.size})"
                )
        object.__setattr__(self, "frames", frames)

    @property
    def m(self) -> int:
        return len(self.frames)

    @property
    def dim(self) -> int:
        return self.frames[0].dim

    @property
    def size(self) -> int:
        return self.frames[0].size

    def stacked(self) -> np.ndarray:
        """(m, n, d) array of all vectors."""
        return np.stack([fr.vectors for fr in self.frames])


@dataclass(frozen=True)
class Partition:
    """Assignment of each index j to a frame, plus the frame count m."""

    assignment: tuple[int, ...]
    num_frames: int

    def __post_init__(self):
        a = tuple(int(x) for x in self.assignment)
        if self.num_frames < 1:
            raise InvalidArgumentError("num_frames must be >= 1")
        if not a:
            raise InvalidArgumentError("empty assignment")
        if any(x < 0 or x >= self.num_frames for x in a):
            raise IndexOutOfRangeError(
                f"assignment entries must lie in [0, {self.num_frames})"
            )
        object.__setattr__(self, "assignment", a)

    @property
    def size(self) -> int:
        return len(self.assignment)

    @classmethod
    def from_word(cls, word: int, num_frames: int, size: int) -> "Partition":
        digits = []
        for _ in range(size):
            digits.append(word % num_frames)
            word //= num_frames
        return cls(tuple(reversed(digits)), num_frames)

    def word(self) -> int:
        w = 0
        for digit in self.assignment:
            w = w * self.num_frames + digit
        return w

    def block(self, i: int) -> tuple[int, ...]:
        """sigma_i: the indices assigned to frame i."""
        if not 0 <= i < self.num_frames:
            raise IndexOutOfRangeError(f"frame index {i} out of range [0, {self.num_frames})")
        return tuple(j for j, x in enumerate(self.assignment) if x == i)


@dataclass(frozen=True)
class CoefficientVector:
    """Values indexed by (frame i, vector j), supported on j in sigma_i."""

    values: np.ndarray
    partition: Partition

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        m, n = self.partition.num_frames, self.partition.size
        if v.shape != (m, n):
            raise ShapeMismatchError(f"expected values of shape ({m}, {n}), got {v.shape}")
        mask = np.zeros((m, n), dtype=bool)
        mask[self.partition.assignment, np.arange(n)] = True
        v = np.where(mask, v, 0.0)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.values**2)))


@dataclass(frozen=True)
class WeavingReport:
    woven: bool
    universal_lower: float
    universal_upper: float
    witness_partition: Partition
    partitions_examined: int
    mode: str  # "exhaustive" | "sampled"
    seed: int | None = None


def _check_partition(family: FrameFamily, p: Partition):
    if p.num_frames != family.m or p.size != family.size:
        raise ShapeMismatchError(
            f"partition over {p.num_frames} frames / {p.size} indices does not match "
            f"family with m={family.m}, n={family.size}"
        )


def weave(family: FrameFamily, p: Partition) -> Frame:
    """The mixed frame whose j-th vector is f_{p[j], j}."""
    _check_partition(family, p)
    rows = family.stacked()[list(p.assignment), np.arange(family.size)]
    return Frame(rows)


def selection_matrix(p: Partition, i: int) -> np.ndarray:
    """n x n diagonal 0/1 matrix selecting sigma_i."""
    if not 0 <= i < p.num_frames:
        raise IndexOutOfRangeError(f"frame index {i} out of range [0, {p.num_frames})")
    diag = np.array([1.0 if x == i else 0.0 for x in p.assignment])
    return np.diag(diag)


def weaving_analyze(family: FrameFamily, p: Partition, f) -> CoefficientVector:
    """Analysis coefficients <f, f_ij> on the support of the partition."""
    _check_partition(family, p)
    vec = np.asarray(f, dtype=float)
    if vec.shape != (family.dim,):
        raise ShapeMismatchError(f"vector of shape {vec.shape} does not match dim {family.dim}")
    return CoefficientVector(family.stacked() @ vec, p)


def weaving_operator(family: FrameFamily, p: Partition) -> np.ndarray:
    """S_W = sum_j f_{p[j], j} f_{p[j], j}^T (= frame operator of the weaving)."""
    return frame_operator(weave(family, p))


def weaving_bounds(family: FrameFamily, p: Partition) -> Bounds:
    return frame_bounds(weave(family, p))


def bessel_upper_bound(family: FrameFamily) -> float:
    """sum_i B_i: an upper bound valid for every weaving of the family."""
    return float(sum(frame_bounds(fr).upper for fr in family.frames))


def _rank_one_table(family: FrameFamily) -> np.ndarray:
    v = family.stacked()
    return np.einsum("ijd,ije->ijde", v, v)


def _scan_words(outer: np.ndarray, words: np.ndarray, m: int, n: int):
    """Extrema of the weaving spectra over the given assignment words.

    Returns (min lambda_min, word attaining it, max lambda_max); ties on the
    minimum resolve to the first (lowest) word in ``words``.
    """
    powers = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    digits = (words[:, None] // powers[None, :]) % m
    s = outer[digits, np.arange(n)].sum(axis=1)
    w, _ = jacobi_eigh_batch(s)
    lo = w[:, 0]
    k = int(np.argmin(lo))
    return float(lo[k]), int(words[k]), float(np.max(w[:, -1]))


def _reduce_scan(chunks):
    best_lo, best_word, best_hi = np.inf, None, -np.inf
    examined = 0
    for lo, word, hi, count in chunks:
        if lo < best_lo:
            best_lo, best_word = lo, word
        best_hi = max(best_hi, hi)
        examined += count
    return best_lo, best_word, best_hi, examined


def _make_report(family, best_lo, best_word, best_hi, examined, mode, seed=None):
    lower = max(best_lo, 0.0)
    upper = max(best_hi, 0.0)
    woven = lower > zero_threshold(upper)
    witness = Partition.from_word(best_word, family.m, family.size)
    return WeavingReport(woven, lower, upper, witness, examined, mode, seed)


def exhaustive_woven_check(
    family: FrameFamily, cap: int = DEFAULT_CAP, threads: int = 1
) -> WeavingReport:
    """Decide wovenness exactly by enumerating all m^n assignment words.

    The word range is split into fixed chunks; chunks may be evaluated on a
    thread pool, and the min/max reduction runs in chunk order, so the report
    is identical for any thread count.
    """
    m, n = family.m, family.size
    total = m**n
    if total > cap:
        raise CapExceededError(
            f"m^n = {total} exceeds cap {cap}; use sampled mode for an estimate"
        )
    outer = _rank_one_table(family)
    ranges = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]

    def run(rng):
        lo, hi = rng
        words = np.arange(lo, hi, dtype=np.int64)
        wmin, word, wmax = _scan_words(outer, words, m, n)
        return wmin, word, wmax, hi - lo

    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, ranges))
    else:
        results = [run(r) for r in ranges]
    return _make_report(family, *_reduce_scan(results), "exhaustive")


def sampled_woven_estimate(
    family: FrameFamily, samples: int, seed: int, threads: int = 1
) -> WeavingReport:
    """Seeded random scan over assignment words (PCG64, 64-bit, reproducible).

    The result is an estimate: the reported lower bound can only overestimate
    the true universal lower bound, since sampling may miss bad partitions.
    """
    if samples < 1:
        raise InvalidArgumentError("samples must be >= 1")
    m, n = family.m, family.size
    outer = _rank_one_table(family)
    rng = np.random.Generator(np.random.PCG64(seed))
    powers = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    results = []
    drawn = 0
    while drawn < samples:
        k = min(_CHUNK, samples - drawn)
        digits = rng.integers(0, m, size=(k, n), dtype=np.int64)
        words = digits @ powers
        # tie-break on the lowest word within the chunk as well
        order = np.argsort(words, kind="stable")
        wmin, word, wmax = _scan_words(outer, words[order], m, n)
        results.append((wmin, word, wmax, k))
        drawn += k
    return _make_report(family, *_reduce_scan(results), "sampled", seed)


def weaving_canonical_dual(family: FrameFamily, p: Partition) -> Frame:
    """The frame {S_W^{-1} w_j} for the weaving W of the given partition."""
    w = weave(family, p)
    bounds = frame_bounds(w)
    if bounds.lower <= 0.0:
        raise NotAFrameError("weaving is not a frame, canonical dual undefined")
    s_inv = spd_inverse(frame_operator(w))
    return Frame(w.vectors @ s_inv.T)


def weaving_alternate_dual(
    family: FrameFamily,
    p: Partition,
    kernel_coefficients,
    tol: float = 1e-10,
) -> Frame:
    """Dual of the weaving of the form S_W^{-1} T_W + U with T_W U^T = 0.

    ``kernel_coefficients`` is either a d x r matrix of combinations of the
    orthonormal kernel basis of T_W (r = kernel dimension), or a raw d x n
    matrix U whose rows are then verified to lie in the kernel.
    """
    w = weave(family, p)
    bounds = frame_bounds(w)
    if bounds.lower <= 0.0:
        raise NotAFrameError("weaving is not a frame, duals undefined")
    t_w = synthesis(w)
    d, n = t_w.shape
    kernel = null_space_basis(t_w)
    r = len(kernel)
    c = np.asarray(kernel_coefficients, dtype=float)
    if c.ndim != 2 or c.shape[0] != d:
        raise ShapeMismatchError(
            f"kernel coefficients need {d} rows (one per output coordinate), got shape {c.shape}"
        )
    if c.shape[1] == r and r != n:
        u = c @ np.array(kernel).reshape(r, n) if r else np.zeros((d, n))
    elif c.shape[1] == n:
        u = c
    else:
        raise ShapeMismatchError(
            f"kernel coefficients must have {r} (kernel) or {n} (raw) columns, got {c.shape[1]}"
        )
    residual = float(np.max(np.abs(t_w @ u.T))) if u.size else 0.0
    if residual > tol * (1.0 + operator_norm(t_w)):
        raise ConstraintViolatedError(
            f"T_W U^T is not zero (max entry {residual:.3e}); rows of U must lie in ker(T_W)"
        )
    dual = spd_inverse(frame_operator(w)) @ t_w + u
    witness = t_w @ dual.T
    if np.max(np.abs(witness - np.eye(d))) > max(tol, 1e-10) * (1.0 + operator_norm(t_w)):
        raise ConstraintViolatedError("constructed operator fails the duality identity")
    return Frame(dual.T)


def is_tight_weaving(f: Frame, g: Frame, p: Partition, tol: float = 1e-10):
    """The tightness constant A when S_W = A I within tol, else None.

    A is the least-squares scalar fit trace(S_W)/d before the residual test.
    """
    family = FrameFamily([f, g])
    s_w = weaving_operator(family, p)
    a = float(np.trace(s_w)) / family.dim
    if operator_norm(s_w - a * np.eye(family.dim)) <= tol:
        return a
    return None
