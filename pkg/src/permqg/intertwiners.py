"""Finite linear algebra for the operators attached to a permutation array.

The vector E in C^27, the maps P (3x3) and Q, Q* (9x9), the basis vectors
x_k in C^9 and the morphism data for T and T-bar.  Index triples (i, j, k)
flatten as 9*(i-1) + 3*(j-1) + (k-1); the verifier's tensor powers use the
same convention.  Inner products are linear in the second argument, with
conjugation on the first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .invariants import InvariantReport
from .perm_array import PermArray


@dataclass(frozen=True)
class IntertwinerSet:
    e_vec: np.ndarray        # (27,)  E as a vector in the triple tensor product
    p_mat: np.ndarray        # (3, 3) P, diagonal with the diagonal constants
    q_mat: np.ndarray        # (9, 9) Q
    qstar_mat: np.ndarray    # (9, 9) adjoint of Q
    x_basis: np.ndarray      # (3, 9) rows are x_k = sum E_kab e_a (x) e_b
    gram: np.ndarray         # (3, 3) <x_j, x_k>, diagonal with the modular constants
    t_vec: np.ndarray        # (27,)  sum_i e_i (x) x_i
    tbar_coeffs: np.ndarray  # (3,)   weights 1/M_i of the adjoint of T-bar at 1


def build(a: PermArray) -> IntertwinerSet:
    t = a.tensor
    e_vec = t.reshape(27).copy()
    # P[a, x] = sum_jk conj(E_xjk) E_jka; off-diagonal terms always contain a
    # zero factor, so P is diagonal by structure, not merely numerically.
    p_mat = np.einsum("xjk,jka->ax", t.conj(), t)
    q_mat = np.einsum("xyk,kab->abxy", t.conj(), t).reshape(9, 9)
    qstar_mat = np.einsum("abk,kxy->abxy", t, t.conj()).reshape(9, 9)
    x_basis = t.reshape(3, 9).copy()
    gram = x_basis.conj() @ x_basis.T
    t_vec = e_vec.copy()
    tbar_coeffs = 1.0 / np.real(np.diag(gram))
    for arr in (e_vec, p_mat, q_mat, qstar_mat, x_basis, gram, t_vec, tbar_coeffs):
        arr.setflags(write=False)
    return IntertwinerSet(e_vec, p_mat, q_mat, qstar_mat, x_basis, gram, t_vec, tbar_coeffs)


def q_range_residual(s: IntertwinerSet) -> float:
    """How far Q(C^9) sticks out of span{x_1, x_2, x_3} (relative)."""
    basis = s.x_basis.T  # (9, 3)
    coef, *_ = np.linalg.lstsq(basis, s.q_mat, rcond=None)
    resid = s.q_mat - basis @ coef
    norms = np.linalg.norm(resid, axis=0)
    scales = 1.0 + np.linalg.norm(s.q_mat, axis=0)
    return float((norms / scales).max())


def check_static_identities(s: IntertwinerSet, inv: InvariantReport) -> dict[str, float]:
    """Residuals of identities that need no representation.

    Keys: p_offdiagonal, p_diag_vs_diagonal, gram_vs_modular, t_star_eval,
    qstar_adjoint, q_range_in_span.
    """
    p = s.p_mat
    off = p - np.diag(np.diag(p))
    diag_resid = float(np.abs(np.diag(p) - np.asarray(inv.diagonal)).max())
    gram_resid = float(np.abs(s.gram - np.diag(inv.modular)).max())
    # <e_a (x) x_b, t_vec> = delta_ab M_a
    t3 = s.t_vec.reshape(3, 9)
    tstar = t3 @ s.x_basis.conj().T
    tstar_resid = float(np.abs(tstar - np.diag(inv.modular)).max())
    qstar_resid = float(np.abs(s.qstar_mat - s.q_mat.conj().T).max())
    return {
        "p_offdiagonal": float(np.abs(off).max()),
        "p_diag_vs_diagonal": diag_resid,
        "gram_vs_modular": gram_resid,
        "t_star_eval": tstar_resid,
        "qstar_adjoint": qstar_resid,
        "q_range_in_span": q_range_residual(s),
    }
