"""JSON schemas for matrices, density matrices and models.

A matrix is stored row-major as {"n": int, "re": [[...]], "im": [[...]]},
with "im" optional for real matrices.  A model is {"rho": <matrix>,
"generators": [<matrix>, ...]}.  Density matrices are additionally
validated (Hermitian, unit trace, faithful) on load.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import InputError
from .matfun import DensityMatrix, density
from .submanifold import SubmanifoldModel, submanifold_model


def matrix_from_json(obj) -> np.ndarray:
    """Parse and validate the matrix schema into a complex array."""
    if not isinstance(obj, dict):
        raise InputError(f"matrix object must be a JSON object, got {type(obj).__name__}")
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
        im = (np.asarray(obj["im"], dtype=float) if "im" in obj
              else np.zeros((n, n)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix object: {exc}") from exc
    if re.shape != (n, n):
        raise InputError(f'"re" must be {n}x{n}, got shape {re.shape}')
    if im.shape != (n, n):
        raise InputError(f'"im" must be {n}x{n}, got shape {im.shape}')
    return re + 1j * im


def matrix_to_json(m) -> dict:
    a = np.asarray(m, dtype=complex)
    return {"n": a.shape[0], "re": a.real.tolist(), "im": a.imag.tolist()}


def density_from_json(obj) -> DensityMatrix:
    """Parse a matrix object and validate it as a faithful density matrix."""
    return density(matrix_from_json(obj))


def model_from_json(obj, orthonormalize: bool = False) -> SubmanifoldModel:
    if not isinstance(obj, dict) or "rho" not in obj or "generators" not in obj:
        raise InputError('model object needs "rho" and "generators" entries')
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        raise InputError('"generators" must be a non-empty list of matrix objects')
    return submanifold_model(density_from_json(obj["rho"]),
                             [matrix_from_json(g) for g in gens],
                             orthonormalize=orthonormalize)


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc
