"""Quantum dilogarithm, the pentagon operator K and the cluster structures it
intertwines. Thin wrappers over the C++ core in ``qpent._core``."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from . import _core
from ._core import (
    Error,
    NumericalError,
    dilog_L2,
    duality_residual,
    phi,
    phi_product,
    shift_residuals,
    suite_names,
    tropical_gamma,
)

__all__ = [
    "Error",
    "NumericalError",
    "apply_K",
    "canonical_IA",
    "canonical_IAq",
    "cross_ratio",
    "dilog_L2",
    "duality_residual",
    "gaussian",
    "independence_check",
    "intertwine_basic",
    "multiply_in_basis",
    "pentagon",
    "phi",
    "phi_product",
    "regular_function",
    "run_suite",
    "sample_vectors",
    "shift_residuals",
    "suite_names",
    "tropical_gamma",
    "unitarity_ratio",
]


def gaussian(a: float, b: complex = 0.0, coeffs: Sequence[complex] = (1.0,)) -> list[dict]:
    """The W-vector P(x) exp(-a x^2 / 2 + b x), P given by ascending coefficients."""
    b = complex(b)
    return [
        {
            "a": float(a),
            "b_re": b.real,
            "b_im": b.imag,
            "coeffs": [[complex(c).real, complex(c).imag] for c in coeffs],
        }
    ]


def sample_vectors(seed: int, count: int) -> list[list[dict]]:
    return json.loads(_core.sample_vectors(seed, count))


def apply_K(w: list[dict], z: Iterable[complex], hbar: float, tol: float = 1e-10) -> list[complex]:
    """K w / (2 pi sqrt(hbar)) at the points z."""
    return _core.apply_K(json.dumps(w), [complex(x) for x in z], hbar, tol)


def unitarity_ratio(w: list[dict], hbar: float) -> float:
    return _core.unitarity_ratio(json.dumps(w), hbar)


def intertwine_basic(idx: int, w: list[dict], hbar: float, tol: float = 1e-12) -> float:
    """Relative L2 residual of basic intertwining identity idx (1, 2 or 3)."""
    return _core.intertwine_basic(idx, json.dumps(w), hbar, tol)


def pentagon(hbar: float = 1.0, N: int = 4096, L: float = 40.0, seed: int = 20240601, samples: int = 4) -> dict:
    """Fit U^5 v = lambda v for sample vectors; returns the JSON report as a dict."""
    return json.loads(_core.pentagon(hbar, N, L, seed, samples))


def canonical_IA(a: int, b: int) -> dict[tuple[int, int], int]:
    """Canonical basis element IA(a, b) as {(m, n): coefficient}."""
    return {(m, n): c for m, n, c in json.loads(_core.canonical_IA(a, b))}


def canonical_IAq(a: int, b: int) -> dict[tuple[int, int], dict[int, int]]:
    """Quantum canonical element as {(m, n): {q-power: coefficient}}."""
    return {(t["m"], t["n"]): {k: c for k, c in t["coeff"]} for t in json.loads(_core.canonical_IAq(a, b))}


def multiply_in_basis(p: tuple[int, int], p2: tuple[int, int]) -> dict[tuple[int, int], int]:
    """Structure constants of IA(p) IA(p2) in the canonical basis."""
    return {(a, b): c for a, b, c in json.loads(_core.multiply_in_basis(tuple(p), tuple(p2)))}


def _point(x) -> str:
    if x is None or x == "inf":
        return "inf"
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def cross_ratio(x1, x2, x3, x4) -> Fraction:
    """Exact cross-ratio; points are rationals or None for infinity."""
    return Fraction(_core.cross_ratio([_point(x) for x in (x1, x2, x3, x4)]))


def regular_function(points: Sequence, a: int, b: int, c: int) -> Fraction:
    """The regular function with label (a, b; c) at a configuration of 5 points."""
    return Fraction(_core.regular_function([_point(x) for x in points], a, b, c))


def independence_check(degree: int = 2) -> dict:
    return json.loads(_core.independence_check(degree))


def run_suite(name: str, seed: int = 20240601, timing: bool = False) -> dict:
    """Run a verification suite by name (see suite_names()) and return its report."""
    return json.loads(_core.run_suite(name, seed, timing))
