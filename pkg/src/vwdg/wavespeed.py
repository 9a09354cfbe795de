"""Wave speed of the planar director model, c(psi)^2 = alpha cos^2 + beta sin^2."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ElasticConstants:
    alpha: float = 0.5
    beta: float = 1.5

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError(f"elastic constants must be positive, got alpha={self.alpha}, beta={self.beta}")


def c(ec, psi):
    # alpha cos^2 + beta sin^2 written with a single cosine
    mean = 0.5 * (ec.alpha + ec.beta)
    half_diff = 0.5 * (ec.alpha - ec.beta)
    return np.sqrt(mean + half_diff * np.cos(2.0 * psi))


def c_prime(ec, psi):
    """Analytic derivative dc/dpsi."""
    return (ec.beta - ec.alpha) * np.sin(psi) * np.cos(psi) / c(ec, psi)


def c_sup(ec):
    """Supremum of c over all angles."""
    return float(np.sqrt(max(ec.alpha, ec.beta)))
