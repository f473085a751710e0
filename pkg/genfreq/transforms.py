# Three-phase reference frame transformations

from typing import Tuple

import numpy as np

SQRT3 = np.sqrt(3.0)


# Clarke transform, amplitude invariant: abc to alpha-beta (zero sequence dropped)
def clarke(abc: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    a, b, c = abc[..., 0], abc[..., 1], abc[..., 2]
    alpha = (2.0 / 3.0) * (a - b / 2.0 - c / 2.0)
    beta = (b - c) / SQRT3
    return alpha, beta


# Park transform: d-axis aligned with alpha at theta = 0, q leads d
def park(alpha, beta, theta) -> Tuple[np.ndarray, np.ndarray]:
    c, s = np.cos(theta), np.sin(theta)
    d = alpha * c + beta * s
    q = -alpha * s + beta * c
    return d, q


def inverse_park(d, q, theta) -> Tuple[np.ndarray, np.ndarray]:
    c, s = np.cos(theta), np.sin(theta)
    return d * c - q * s, d * s + q * c
