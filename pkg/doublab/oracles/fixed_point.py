"""Fixed point of the linearised degree dynamics.

With ``x_i`` the proportion of nodes with i children (the tail ``>= m`` lumped
into ``x_m``), the mean drift is ``A x`` for the matrix built below. Its
null vector is ``v_i = 2^{-(i+1)}`` (i < m), ``v_m = 2^{-m}``, and the
quadratic form is non-positive on zero-sum vectors.
"""

import logging
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from ..errors import InvariantViolation
from ..rng import RngStream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeFixedPoint:
    m: int
    A: np.ndarray  # integer (m+1)x(m+1)
    v: tuple[Fraction, ...]


@dataclass
class FixedPointReport:
    m: int
    trials: int
    null_vector_ok: bool
    max_quadratic: int
    max_eigen_real: float

    def to_dict(self) -> dict:
        return asdict(self)


def drift_matrix(m: int) -> np.ndarray:
    if m < 2:
        raise ValueError("m must be at least 2")
    A = np.zeros((m + 1, m + 1), dtype=np.int64)
    A[0, 0] = -1
    A[0, 1:] = 1
    for i in range(1, m):
        A[i, i - 1] = 1
        A[i, i] = -2
    A[m, m - 1] = 1
    A[m, m] = -1
    return A


def fixed_point(m: int) -> DegreeFixedPoint:
    v = tuple(Fraction(1, 2 ** (i + 1)) for i in range(m)) + (Fraction(1, 2**m),)
    return DegreeFixedPoint(m=m, A=drift_matrix(m), v=v)


def zero_sum_vectors(m: int, trials: int, rng: RngStream, bound: int = 5) -> np.ndarray:
    """Integer vectors of length m+1 with entries summing to zero."""
    head = rng.generator.integers(-bound, bound + 1, size=(trials, m))
    return np.concatenate([head, -head.sum(axis=1, keepdims=True)], axis=1)


def fixed_point_check(m: int, trials: int, rng: RngStream) -> FixedPointReport:
    """Check ``A v = 0`` exactly and ``<x, A x> <= 0`` on random zero-sum x."""
    fp = fixed_point(m)
    if sum(fp.v) != 1 or any(x <= 0 for x in fp.v):
        raise InvariantViolation(f"v is not a probability vector for m={m}")

    Av = fp.A.astype(object) @ np.array(fp.v, dtype=object)
    null_ok = all(x == 0 for x in Av)
    if not null_ok:
        raise InvariantViolation(f"A v != 0 for m={m}: {list(Av)}")

    X = zero_sum_vectors(m, trials, rng)
    quad = np.einsum("ti,ij,tj->t", X, fp.A, X)
    max_quad = int(quad.max()) if trials else 0
    if max_quad > 0:
        worst = X[int(quad.argmax())]
        raise InvariantViolation(f"<x, Ax> = {max_quad} > 0 for x = {worst.tolist()}")

    eig = float(np.linalg.eigvals(fp.A.astype(float)).real.max())
    logger.info("fixed point m=%d: A v = 0, %d quadratic forms <= 0, top eigenvalue %.2e", m, trials, eig)
    return FixedPointReport(m=m, trials=trials, null_vector_ok=null_ok, max_quadratic=max_quad, max_eigen_real=eig)
