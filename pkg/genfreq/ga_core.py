"""
Real-vector geometric algebra restricted to what frequency needs.

Vectors are plain 1-D float64 numpy arrays (``VecN``). Bivectors keep only
their strictly upper-triangular coefficients b_ij (i < j) in row-major pair
order: (1,2), (1,3), ..., (1,n), (2,3), ... The ``*_batch`` kernels operate
row-wise on ``(N, dim)`` arrays and are what the estimators use.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

import numpy as np
import numpy.typing as npt

from genfreq.exceptions import DimensionMismatchError, NonOrthogonalError

VecN = npt.NDArray[np.float64]

ORTHOGONALITY_TOL = 1e-12


def as_vec(components: Iterable[float]) -> VecN:
    """Validate and freeze a vector: 1-D, non-empty, finite."""
    arr = np.array(components, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"a vector needs at least one component, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector components must be finite")
    arr.flags.writeable = False
    return arr


def _pair(x: VecN, y: VecN) -> Tuple[VecN, VecN]:
    x = as_vec(x)
    y = as_vec(y)
    if x.size != y.size:
        raise DimensionMismatchError(x.size, y.size)
    return x, y


@lru_cache(maxsize=None)
def pair_indices(dim: int) -> Tuple[np.ndarray, np.ndarray]:
    """Zero-based (i, j) index arrays of the bivector coefficients for ``dim``."""
    i, j = np.triu_indices(dim, k=1)
    i.flags.writeable = False
    j.flags.writeable = False
    return i, j


def n_pairs(dim: int) -> int:
    return dim * (dim - 1) // 2


def pair_labels(dim: int) -> List[str]:
    i, j = pair_indices(dim)
    return [f"b_{a + 1}{b + 1}" for a, b in zip(i, j)]


@dataclass(frozen=True, eq=False)
class Bivector:
    dim: int
    coeffs: npt.NDArray[np.float64]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("bivector dimension must be positive")
        coeffs = np.array(self.coeffs, dtype=np.float64).reshape(-1)
        if coeffs.size != n_pairs(self.dim):
            raise ValueError(
                f"dim {self.dim} bivector needs {n_pairs(self.dim)} coefficients, got {coeffs.size}"
            )
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, dim: int) -> "Bivector":
        return cls(dim, np.zeros(n_pairs(dim)))

    @classmethod
    def from_dict(cls, dim: int, coeffs: Dict[Tuple[int, int], float]) -> "Bivector":
        """Build from 1-based ``{(i, j): b_ij}``; pairs with i > j are stored as b_ji = -b_ij."""
        out = np.zeros(n_pairs(dim))
        index = {pair: k for k, pair in enumerate(zip(*pair_indices(dim)))}
        for (i, j), value in coeffs.items():
            if i == j or not (1 <= i <= dim and 1 <= j <= dim):
                raise ValueError(f"invalid bivector index ({i}, {j}) for dim {dim}")
            if i < j:
                out[index[(i - 1, j - 1)]] += value
            else:
                out[index[(j - 1, i - 1)]] -= value
        return cls(dim, out)

    @classmethod
    def from_matrix(cls, matrix: npt.ArrayLike) -> "Bivector":
        m = np.asarray(matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("bivector matrix must be square")
        if not np.allclose(m, -m.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(m).max(initial=0.0))):
            raise ValueError("bivector matrix must be skew-symmetric")
        i, j = pair_indices(m.shape[0])
        return cls(m.shape[0], m[i, j])

    def coeff(self, i: int, j: int) -> float:
        """1-based coefficient access; b_ji == -b_ij and b_ii == 0."""
        if i == j:
            return 0.0
        if i > j:
            return -self.coeff(j, i)
        k = self._offset(i, j)
        return float(self.coeffs[k])

    def _offset(self, i: int, j: int) -> int:
        if not (1 <= i < j <= self.dim):
            raise IndexError(f"invalid bivector index ({i}, {j}) for dim {self.dim}")
        a, b = i - 1, j - 1
        return a * self.dim - a * (a + 1) // 2 + (b - a - 1)

    def to_matrix(self) -> npt.NDArray[np.float64]:
        m = np.zeros((self.dim, self.dim))
        i, j = pair_indices(self.dim)
        m[i, j] = self.coeffs
        m[j, i] = -self.coeffs
        return m

    def as_dict(self) -> Dict[Tuple[int, int], float]:
        i, j = pair_indices(self.dim)
        return {(int(a) + 1, int(b) + 1): float(c) for a, b, c in zip(i, j, self.coeffs)}

    def cyclic_triple(self) -> Tuple[float, float, float]:
        """(b_12, b_23, b_31) display order for dim 3."""
        if self.dim != 3:
            raise ValueError("cyclic display is only defined for dim 3")
        return self.coeff(1, 2), self.coeff(2, 3), self.coeff(3, 1)

    def labels(self) -> List[str]:
        return pair_labels(self.dim)

    @property
    def magnitude(self) -> float:
        return bivector_magnitude(self)

    def scaled(self, factor: float) -> "Bivector":
        return Bivector(self.dim, self.coeffs * factor)

    def __neg__(self) -> "Bivector":
        return Bivector(self.dim, -self.coeffs)

    def __add__(self, other: "Bivector") -> "Bivector":
        if self.dim != other.dim:
            raise DimensionMismatchError(self.dim, other.dim)
        return Bivector(self.dim, self.coeffs + other.coeffs)

    def __sub__(self, other: "Bivector") -> "Bivector":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bivector):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.dim, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        terms = ", ".join(f"{k}={v:.6g}" for k, v in zip(self.labels(), self.coeffs))
        return f"Bivector(dim={self.dim}, {terms})"


@dataclass(frozen=True)
class Multivector:
    """Scalar plus bivector; no products between multivectors are defined."""

    scalar: float
    bivector: Bivector

    def __post_init__(self):
        if not np.isfinite(self.scalar):
            raise ValueError("multivector scalar part must be finite")
        object.__setattr__(self, "scalar", float(self.scalar))

    def to_complex(self) -> complex:
        """Dim-2 isomorphism: scalar ↔ real part, b_12 ↔ imaginary part."""
        if self.bivector.dim != 2:
            raise ValueError("complex view is only defined for dim 2")
        return complex(self.scalar, self.bivector.coeffs[0])


def inner(x: VecN, y: VecN) -> float:
    x, y = _pair(x, y)
    return float(np.sum(x * y))


def magnitude(x: VecN) -> float:
    x = as_vec(x)
    return float(np.sqrt(np.sum(x * x)))


def outer(x: VecN, y: VecN) -> npt.NDArray[np.float64]:
    x, y = _pair(x, y)
    return np.outer(x, y)


def wedge(x: VecN, y: VecN) -> Bivector:
    x, y = _pair(x, y)
    return Bivector(x.size, wedge_batch(x, y))


def bivector_magnitude(b: Bivector) -> float:
    return float(np.sqrt(np.sum(b.coeffs * b.coeffs)))


def geometric_product(x: VecN, y: VecN) -> Multivector:
    x, y = _pair(x, y)
    return Multivector(scalar=inner(x, y), bivector=wedge(x, y))


def orthogonality_error(q: npt.ArrayLike) -> float:
    q = np.asarray(q, dtype=np.float64)
    return float(np.max(np.abs(q.T @ q - np.eye(q.shape[0]))))


def check_orthogonal(q: npt.ArrayLike) -> npt.NDArray[np.float64]:
    q = np.asarray(q, dtype=np.float64)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise NonOrthogonalError(f"expected a square matrix, got shape {q.shape}")
    err = orthogonality_error(q)
    if not err <= ORTHOGONALITY_TOL:
        raise NonOrthogonalError(f"matrix is not orthogonal: max |QᵀQ - I| = {err:.3e}")
    return q


def apply_orthogonal(x: VecN, q: npt.ArrayLike) -> VecN:
    x = as_vec(x)
    q = check_orthogonal(q)
    if q.shape[0] != x.size:
        raise DimensionMismatchError(q.shape[0], x.size)
    return as_vec(q @ x)


# Row-wise kernels ---------------------------------------------------------


def inner_batch(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.sum(x * y, axis=-1)


def wedge_batch(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Coefficients x_i y_j - y_i x_j over the last axis."""
    if x.shape != y.shape:
        raise DimensionMismatchError(x.shape[-1], y.shape[-1])
    i, j = pair_indices(x.shape[-1])
    return x[..., i] * y[..., j] - y[..., i] * x[..., j]
