"""Gauss-Lobatto-Legendre nodal bases for polynomial orders 0 to 3.

Nodes, weights and derivative matrices are written out in closed form
instead of being computed from Legendre polynomials.  Only p <= 3 is
supported, and the closed forms double as test oracles.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import UnsupportedOrderError

SUPPORTED_ORDERS = (0, 1, 2, 3)

_S5 = np.sqrt(5.0)
_A = np.sqrt(1.0 / 5.0)

_NODES = {
    0: [0.0],
    1: [-1.0, 1.0],
    2: [-1.0, 0.0, 1.0],
    3: [-1.0, -_A, _A, 1.0],
}

_WEIGHTS = {
    0: [2.0],
    1: [1.0, 1.0],
    2: [1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0],
    3: [1.0 / 6.0, 5.0 / 6.0, 5.0 / 6.0, 1.0 / 6.0],
}

# D[i, k] = l_k'(xi_i)
_DERIV = {
    0: [[0.0]],
    1: [[-0.5, 0.5],
        [-0.5, 0.5]],
    2: [[-1.5, 2.0, -0.5],
        [-0.5, 0.0, 0.5],
        [0.5, -2.0, 1.5]],
    3: [[-3.0, 1.25 * (1.0 + _S5), 1.25 * (1.0 - _S5), 0.5],
        [-0.25 * (1.0 + _S5), 0.0, 0.5 * _S5, 0.25 * (1.0 - _S5)],
        [0.25 * (_S5 - 1.0), -0.5 * _S5, 0.0, 0.25 * (1.0 + _S5)],
        [-0.5, 1.25 * (_S5 - 1.0), -1.25 * (1.0 + _S5), 3.0]],
}


@dataclass(frozen=True, eq=False)
class NodalBasis:
    """Lagrange basis on the GLL points of [-1, 1].

    Attributes
    ----------
    order : int
        Polynomial degree p.
    nodes : ndarray, shape (p+1,)
        GLL points, strictly increasing.
    weights : ndarray, shape (p+1,)
        GLL quadrature weights.
    deriv : ndarray, shape (p+1, p+1)
        ``deriv[i, k]`` is the derivative of the k-th interpolant at node i.
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray
    deriv: np.ndarray

    @property
    def size(self):
        return self.order + 1

    def interpolants(self, xi):
        """Evaluate every interpolant at the points ``xi``.

        Returns an array of shape ``xi.shape + (p+1,)``.
        """
        xi = np.asarray(xi, dtype=float)
        out = np.ones(xi.shape + (self.size,))
        for k in range(self.size):
            for m in range(self.size):
                if m != k:
                    out[..., k] *= (xi - self.nodes[m]) / (self.nodes[k] - self.nodes[m])
        return out


@lru_cache(maxsize=None)
def make_basis(p):
    """Return the GLL nodal basis of order ``p`` (0, 1, 2 or 3)."""
    if p not in SUPPORTED_ORDERS:
        raise UnsupportedOrderError(f"polynomial order must be one of {SUPPORTED_ORDERS}, got {p!r}")
    arrays = []
    for table in (_NODES, _WEIGHTS, _DERIV):
        a = np.array(table[p], dtype=float)
        a.setflags(write=False)
        arrays.append(a)
    return NodalBasis(p, *arrays)


def eval_interpolant(b, k, xi):
    """Value of the k-th Lagrange interpolant of ``b`` at ``xi``.

    Points outside [-1, 1] are allowed; the polynomial is simply extended.
    """
    if not 0 <= k <= b.order:
        raise IndexError(f"node index {k} out of range for order {b.order}")
    return float(b.interpolants(xi)[k]) if np.ndim(xi) == 0 else b.interpolants(xi)[..., k]


def quad_ref(b, vals):
    """GLL quadrature of nodal values over the reference element."""
    vals = np.asarray(vals, dtype=float)
    if vals.shape[-1] != b.size:
        raise ValueError(f"expected {b.size} nodal values, got {vals.shape[-1]}")
    return vals @ b.weights
