"""Eigen-decomposition of real symmetric 3x3 matrices.

Eigenvalues come from the trigonometric solution of the characteristic cubic.
When the roots are well separated the eigenvectors are cross products of rows
of ``A - lambda I``; near a degeneracy that construction loses accuracy, so we
fall back to cyclic Jacobi rotations instead.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import NotSymmetric

SYM_TOL = 1e-9
_SEPARATION = 1e-4  # relative root gap below which Jacobi takes over
_JACOBI_SWEEPS = 50


class Eigh3(NamedTuple):
    values: np.ndarray   # descending
    vectors: np.ndarray  # columns, matching values

    def pairs(self):
        return [(float(self.values[i]), self.vectors[:, i].copy()) for i in range(3)]


def _cubic_roots(a: np.ndarray) -> np.ndarray:
    p1 = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    if p1 <= (1e-100 * np.max(np.abs(a))) ** 2:
        # effectively diagonal; the residual check below routes any doubt to Jacobi
        return np.sort(np.diag(a))[::-1].copy()
    q = np.trace(a) / 3.0
    p2 = (a[0, 0] - q) ** 2 + (a[1, 1] - q) ** 2 + (a[2, 2] - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    if p == 0.0:
        return np.full(3, q)
    b = (a - q * np.eye(3)) / p
    r = np.linalg.det(b) / 2.0
    phi = math.acos(min(1.0, max(-1.0, r))) / 3.0
    e1 = q + 2.0 * p * math.cos(phi)
    e3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    e2 = 3.0 * q - e1 - e3
    return np.array([e1, e2, e3])


def _null_vector(a: np.ndarray, lam: float) -> np.ndarray:
    r = a - lam * np.eye(3)
    cands = [np.cross(r[0], r[1]), np.cross(r[0], r[2]), np.cross(r[1], r[2])]
    best = max(cands, key=lambda c: float(c @ c))
    norm = np.linalg.norm(best)
    if not np.isfinite(norm) or norm < 1e-150:
        return None
    return best / norm


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = a.copy()
    v = np.eye(3)
    scale = np.max(np.abs(a))
    for _ in range(_JACOBI_SWEEPS):
        off = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
        if off <= (1e-17 * scale) ** 2:
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            apq = a[p, q]
            if apq == 0.0:
                continue
            diff = a[q, q] - a[p, p]
            if abs(apq) < 1e-150 * abs(diff):
                t = apq / diff
            else:
                theta = diff / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(3)
            rot[p, p] = rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            v = v @ rot
    return np.diag(a).copy(), v


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    for c in vec:
        if abs(c) > 1e-12:
            return vec if c > 0 else -vec
    return vec


def sym3_eigen(m) -> Eigh3:
    """Eigenpairs of a real symmetric 3x3 matrix, sorted by descending eigenvalue.

    Each eigenvector has its first non-negligible component positive.
    """
    a = np.asarray(m, dtype=float)
    if a.shape != (3, 3):
        raise NotSymmetric(f"expected a 3x3 matrix, got shape {a.shape}")
    asym = np.max(np.abs(a - a.T))
    if not np.isfinite(asym) or asym > SYM_TOL:
        raise NotSymmetric(f"matrix asymmetry {asym:.3e} exceeds {SYM_TOL}")
    a = 0.5 * (a + a.T)
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return Eigh3(np.zeros(3), np.eye(3))

    roots = _cubic_roots(a)
    gaps = np.abs(np.diff(roots))
    vectors = None
    if np.all(np.isfinite(roots)) and np.all(gaps > _SEPARATION * scale):
        v0 = _null_vector(a, roots[0])
        v2 = _null_vector(a, roots[2])
        if v0 is not None and v2 is not None:
            v2 = v2 - (v2 @ v0) * v0
            v2 /= np.linalg.norm(v2)
            v1 = np.cross(v2, v0)
            cand = np.column_stack([v0, v1, v2])
            resid = np.max(np.abs(a @ cand - cand * (np.sum(cand * (a @ cand), axis=0))))
            if resid < 1e-12 * scale:
                vectors = cand
    if vectors is None:
        _, vectors = _jacobi(a)
    values = np.sum(vectors * (a @ vectors), axis=0)  # Rayleigh quotients
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = np.column_stack([_fix_sign(vectors[:, i]) for i in order])
    return Eigh3(values, vectors)


def degeneracy(values: np.ndarray, tol: float = 1e-9) -> int:
    """Multiplicity of the top eigenvalue (relative tolerance, absolute below ``tol``)."""
    top = float(values[0])
    thresh = tol * abs(top) if abs(top) >= tol else tol
    return int(np.sum(np.abs(values - top) <= thresh))
