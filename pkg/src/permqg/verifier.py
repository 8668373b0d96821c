"""Numerical verification of the generator relations on a representation.

Each check evaluates one family of identities and reports the worst
residual.  Residual norms are Frobenius, normalized by sqrt(size), so a
single perturbed entry of size eps in a d x d block scores eps / d.
Thresholds are configurable per check; an optional projector compresses
every residual block (used for truncated models whose defect is confined
to the boundary basis vector).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import intertwiners
from .errors import DimensionMismatch, InvalidParam
from .invariants import characteristic_constants, modular_constants
from .perm_array import PERMS, PermArray, complement
from .representations import (
    DEFAULT_SIZE_CAP,
    Representation,
    blocks_to_matrix,
    interior_projector,
    tensor_power,
)

DEFAULT_THRESHOLD = 1e-10


def _resid(mat: np.ndarray, projector: Optional[np.ndarray]) -> float:
    if projector is not None:
        mat = projector @ mat @ projector
    return float(np.linalg.norm(mat)) / math.sqrt(mat.size)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_residual: float
    threshold: float
    passed: bool
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "max_residual": self.max_residual,
            "threshold": self.threshold,
            "pass": self.passed,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {
            "checks": [c.to_json_dict() for c in self.checks],
            "overall_pass": self.overall_pass,
        }

    def to_markdown(self) -> str:
        lines = [
            "| check | max residual | threshold | pass |",
            "| --- | --- | --- | --- |",
        ]
        for c in self.checks:
            lines.append(
                f"| {c.name} | {c.max_residual:.3e} | {c.threshold:.1e} |"
                f" {'yes' if c.passed else 'NO'} |"
            )
        lines.append(f"\noverall: {'pass' if self.overall_pass else 'FAIL'}")
        return "\n".join(lines)


class _Worst:
    """Track the largest residual and where it happened."""

    def __init__(self):
        self.value = 0.0
        self.where = ""

    def update(self, value: float, where: str):
        if value > self.value:
            self.value = value
            self.where = where


# ---------------------------------------------------------------------------
# Relation coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationCoefficients:
    """Coefficients of u_rn u_kl = A u_kl u_rn + B u_kn u_rl and of the
    adjoint exchange u*_rn u_kl = C u_kl u*_rn."""

    A: complex
    B: complex
    C: complex
    branch: str      # "ne1" when C(l, n) != 1, else "eq1"


def relation_coefficients(a: PermArray, r: int, k: int, n: int, l: int) -> RelationCoefficients:
    """Coefficients for row pair (r, k) and column pair (n, l), r != k, n != l."""
    if r == k or n == l:
        raise InvalidParam("need r != k and n != l")
    i = complement(r, k)
    j = complement(n, l)
    chars = characteristic_constants(a)
    ckr = chars[(k, r)]
    cln = chars[(l, n)]
    row_ratio = a.entry(i, r, k) / a.entry(i, k, r)
    col_ratio = a.entry(j, l, n) / a.entry(j, n, l)
    if abs(cln - 1.0) > a.tolerance:
        branch = "ne1"
        coeff_a = row_ratio * col_ratio * (1.0 - ckr) / (1.0 - cln)
        coeff_b = row_ratio * (1.0 - ckr * cln) / (1.0 - cln)
    else:
        branch = "eq1"
        row_inv2 = abs(1.0 / row_ratio) ** 2
        col2 = abs(col_ratio) ** 2
        denom = 1.0 + col2
        coeff_a = row_ratio * col_ratio * (1.0 + ckr * row_inv2) / denom
        coeff_b = row_ratio * (1.0 - ckr * col2 * row_inv2) / denom
    coeff_c = (a.entry(r, i, k) / a.entry(r, k, i)) * (a.entry(n, l, j) / a.entry(n, j, l))
    return RelationCoefficients(A=coeff_a, B=coeff_b, C=coeff_c, branch=branch)


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------

def check_unitarity(rep: Representation, projector: Optional[np.ndarray] = None) -> tuple[float, str]:
    """Row and column orthonormality of the block grid."""
    d = rep.dim
    eye = np.eye(d, dtype=complex)
    worst = _Worst()
    for j in range(1, 4):
        for k in range(1, 4):
            delta = eye if j == k else 0.0
            rows = sum(rep.block(j, s) @ rep.block(k, s).conj().T for s in range(1, 4)) - delta
            cols = sum(rep.block(s, j).conj().T @ rep.block(s, k) for s in range(1, 4)) - delta
            worst.update(_resid(rows, projector), f"rows ({j},{k})")
            worst.update(_resid(cols, projector), f"cols ({j},{k})")
    return worst.value, worst.where


def check_twisted_determinant(rep: Representation, a: PermArray,
                              projector: Optional[np.ndarray] = None) -> tuple[float, str]:
    """Determinant-style sums over all 27 row triples."""
    d = rep.dim
    eye = np.eye(d, dtype=complex)
    worst = _Worst()
    for a1 in (1, 2, 3):
        for a2 in (1, 2, 3):
            for a3 in (1, 2, 3):
                acc = -a.entry(a1, a2, a3) * eye
                for (i1, i2, i3) in PERMS:
                    acc = acc + a.entry(i1, i2, i3) * (
                        rep.block(a1, i1) @ rep.block(a2, i2) @ rep.block(a3, i3)
                    )
                worst.update(_resid(acc, projector), f"triple ({a1},{a2},{a3})")
    return worst.value, worst.where


def check_modular(rep: Representation, a: PermArray,
                  projector: Optional[np.ndarray] = None) -> tuple[float, str]:
    """Weighted unitarity with the modular constants."""
    mod = modular_constants(a)
    d = rep.dim
    eye = np.eye(d, dtype=complex)
    worst = _Worst()
    for x in (1, 2, 3):
        for y in (1, 2, 3):
            first = sum(mod[s - 1] * rep.block(s, x) @ rep.block(s, y).conj().T
                        for s in range(1, 4))
            first -= (mod[x - 1] * eye if x == y else 0.0)
            second = sum((1.0 / mod[i - 1]) * rep.block(x, i).conj().T @ rep.block(y, i)
                         for i in range(1, 4))
            second -= ((1.0 / mod[x - 1]) * eye if x == y else 0.0)
            worst.update(_resid(first, projector), f"left ({x},{y})")
            worst.update(_resid(second, projector), f"right ({x},{y})")
    return worst.value, worst.where


def check_adjoint_formulas(rep: Representation, a: PermArray,
                           projector: Optional[np.ndarray] = None) -> tuple[float, str]:
    """Adjoint of each generator as a two-term quadratic expression.

    Both variants are checked, each for both admissible completions of the
    fixed row and column index.  The conjugate-coefficient variant carries
    the modular ratio M_n / M_r: it arises from an adjoint operator whose
    matrix in the non-normalized x basis picks up the Gram weights.  For
    arrays with equal modular constants the ratio is 1.
    """
    mod = modular_constants(a)
    worst = _Worst()
    for r in (1, 2, 3):
        others_r = [x for x in (1, 2, 3) if x != r]
        for n in (1, 2, 3):
            others_n = [x for x in (1, 2, 3) if x != n]
            target = rep.block(r, n).conj().T
            for (i, k) in (others_r, others_r[::-1]):
                j, l = others_n
                expr = (a.entry(n, j, l) / a.entry(r, i, k)) * rep.block(i, j) @ rep.block(k, l) \
                    + (a.entry(n, l, j) / a.entry(r, i, k)) * rep.block(i, l) @ rep.block(k, j)
                worst.update(_resid(target - expr, projector), f"form1 ({r},{n}) via ({i},{k})")
            ratio = mod[n - 1] / mod[r - 1]
            for (j, l) in (others_n, others_n[::-1]):
                i, k = others_r
                expr = ratio * (
                    (a.entry(r, i, k).conjugate() / a.entry(n, j, l).conjugate())
                    * rep.block(i, j) @ rep.block(k, l)
                    + (a.entry(r, k, i).conjugate() / a.entry(n, j, l).conjugate())
                    * rep.block(k, j) @ rep.block(i, l)
                )
                worst.update(_resid(target - expr, projector), f"form2 ({r},{n}) via ({j},{l})")
    return worst.value, worst.where


def check_commutation(rep: Representation, a: PermArray,
                      projector: Optional[np.ndarray] = None) -> tuple[float, str]:
    """Branching commutation relations between generators.

    For each column pair (l, n) the branch is picked by C(l, n): away from
    1 the same-row and same-column products vanish and the mixed relation
    has the rational coefficients; at 1 the products anticommute up to an
    entry ratio.  When every characteristic constant differs from 1 the
    adjoint exchange relations with the C coefficient are checked as well,
    and the mixed-adjoint exchange is checked wherever its two gating
    constants equal 1.
    """
    chars = characteristic_constants(a)
    tol = a.tolerance
    worst = _Worst()
    blk = rep.block
    for (l, n) in ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)):
        j = complement(l, n)
        if abs(chars[(l, n)] - 1.0) > tol:
            for row in (1, 2, 3):
                worst.update(_resid(blk(row, n) @ blk(row, l), projector),
                             f"row zero a={row} (n,l)=({n},{l})")
                worst.update(_resid(blk(l, row) @ blk(n, row), projector),
                             f"col zero a={row} (l,n)=({l},{n})")
        else:
            ratio = a.entry(j, l, n) / a.entry(j, n, l)
            for row in (1, 2, 3):
                worst.update(
                    _resid(blk(row, n) @ blk(row, l) + ratio * blk(row, l) @ blk(row, n), projector),
                    f"row exchange a={row} (n,l)=({n},{l})")
                worst.update(
                    _resid(blk(n, row) @ blk(l, row)
                           + ratio.conjugate() * blk(l, row) @ blk(n, row), projector),
                    f"col exchange a={row} (n,l)=({n},{l})")
        for r in (1, 2, 3):
            for k in (1, 2, 3):
                if r == k:
                    continue
                co = relation_coefficients(a, r, k, n, l)
                mixed = blk(r, n) @ blk(k, l) - co.A * blk(k, l) @ blk(r, n) \
                    - co.B * blk(k, n) @ blk(r, l)
                worst.update(_resid(mixed, projector),
                             f"mixed (r,k)=({r},{k}) (n,l)=({n},{l})")
    if all(abs(c - 1.0) > tol for c in chars.values()):
        for r in (1, 2, 3):
            for k in (1, 2, 3):
                if r == k:
                    continue
                for n in (1, 2, 3):
                    worst.update(_resid(blk(r, n) @ blk(k, n).conj().T, projector),
                                 f"star col ({r},{k}) n={n}")
                    worst.update(_resid(blk(r, n).conj().T @ blk(k, n), projector),
                                 f"col star ({r},{k}) n={n}")
                    for l in (1, 2, 3):
                        if l == n:
                            continue
                        co = relation_coefficients(a, r, k, n, l)
                        expr = blk(r, n).conj().T @ blk(k, l) \
                            - co.C * blk(k, l) @ blk(r, n).conj().T
                        worst.update(_resid(expr, projector),
                                     f"star exchange (r,k)=({r},{k}) (n,l)=({n},{l})")
            # same-row products against an adjoint vanish as well
            for n in (1, 2, 3):
                for l in (1, 2, 3):
                    if l == n:
                        continue
                    worst.update(_resid(blk(r, n) @ blk(r, l).conj().T, projector),
                                 f"row star ({r}) ({n},{l})")
                    worst.update(_resid(blk(r, n).conj().T @ blk(r, l), projector),
                                 f"star row ({r}) ({n},{l})")
    # mixed-adjoint exchange, gated on its two unit constants
    for r in (1, 2, 3):
        others_r = [x for x in (1, 2, 3) if x != r]
        for n in (1, 2, 3):
            others_n = [x for x in (1, 2, 3) if x != n]
            for (i, k) in (others_r, others_r[::-1]):
                for (j2, l2) in (others_n, others_n[::-1]):
                    if abs(chars[(k, i)] - 1.0) <= tol and abs(chars[(j2, l2)] - 1.0) <= tol:
                        co = relation_coefficients(a, i, k, j2, l2)
                        expr = blk(i, j2) @ blk(r, n).conj().T \
                            - co.A * blk(r, n).conj().T @ blk(i, j2)
                        worst.update(_resid(expr, projector),
                                     f"adjoint exchange (i,j)=({i},{j2}) (r,n)=({r},{n})")
    return worst.value, worst.where


def check_partial_isometries(rep: Representation, a: PermArray,
                             projector: Optional[np.ndarray] = None,
                             hypothesis_threshold: float = DEFAULT_THRESHOLD) -> tuple[float, str]:
    """Partial-isometry and normality tests, gated on the vanishing hypotheses.

    The conclusion is conditional: entry (R, J) qualifies only when all
    same-column products against row R and all same-row products against
    column J vanish numerically.  Non-qualifying entries are skipped and
    listed in the detail string.
    """
    worst = _Worst()
    skipped = []
    for big_r in (1, 2, 3):
        for big_j in (1, 2, 3):
            hyp = 0.0
            for j in (1, 2, 3):
                for i in (1, 2, 3):
                    if i != big_r:
                        hyp = max(hyp, _resid(rep.block(big_r, j) @ rep.block(i, j), projector))
            for r in (1, 2, 3):
                for l in (1, 2, 3):
                    if l != big_j:
                        hyp = max(hyp, _resid(rep.block(r, big_j) @ rep.block(r, l), projector))
            if hyp > hypothesis_threshold:
                skipped.append(f"({big_r},{big_j})")
                continue
            u = rep.block(big_r, big_j)
            worst.update(_resid(u @ u.conj().T @ u - u, projector),
                         f"partial isometry ({big_r},{big_j})")
            worst.update(_resid(u @ u.conj().T - u.conj().T @ u, projector),
                         f"normality ({big_r},{big_j})")
    detail = worst.where
    if skipped:
        detail = (detail + "; " if detail else "") + "skipped " + " ".join(skipped)
    return worst.value, detail


def check_morphism(rep: Representation, x: np.ndarray, n_from: int, n_to: int,
                   projector: Optional[np.ndarray] = None,
                   size_cap: int = DEFAULT_SIZE_CAP) -> tuple[float, str]:
    """Exchange identity (X (x) id) u^(n_from) = u^(n_to) (X (x) id).

    X maps the n_from-fold tensor space to the n_to-fold one.  The
    residual is the worst block of the difference, so for X = E and
    powers 0 -> 3 it reproduces the determinant-style residual exactly.
    """
    x = np.asarray(x, dtype=complex)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    if x.shape != (3 ** n_to, 3 ** n_from):
        raise DimensionMismatch(
            f"operator shape {x.shape} does not map 3^{n_from} to 3^{n_to}")
    d = rep.dim
    big_from = blocks_to_matrix(tensor_power(rep, n_from, size_cap))
    big_to = blocks_to_matrix(tensor_power(rep, n_to, size_cap))
    x_op = np.kron(x, np.eye(d, dtype=complex))
    diff = x_op @ big_from - big_to @ x_op
    view = diff.reshape(3 ** n_to, d, 3 ** n_from, d)
    worst = _Worst()
    for big_i in range(3 ** n_to):
        for big_j in range(3 ** n_from):
            worst.update(_resid(view[big_i, :, big_j, :], projector),
                         f"block ({big_i},{big_j})")
    return worst.value, worst.where


# ---------------------------------------------------------------------------
# Aggregate runner
# ---------------------------------------------------------------------------

def _auto_projector(rep: Representation) -> Optional[np.ndarray]:
    if rep.meta.get("truncated"):
        return interior_projector(rep.dim)
    return None


def run_all(rep: Representation, a: PermArray,
            thresholds: Optional[dict[str, float]] = None,
            projector="auto",
            include_morphisms: bool = True,
            size_cap: int = DEFAULT_SIZE_CAP) -> VerificationReport:
    """Run every check of a representation against an array.

    projector="auto" compresses to the interior for truncated models
    (keyed by rep.meta["truncated"]); pass None or an explicit matrix to
    override.  Morphism checks for E (0 -> 3), P (1 -> 1) and Q (2 -> 2)
    are included unless disabled.
    """
    if projector == "auto":
        projector = _auto_projector(rep)
    thr = {name: DEFAULT_THRESHOLD for name in (
        "unitarity", "twisted_determinant", "modular", "adjoint_formulas",
        "commutation", "partial_isometries", "morphism_E", "morphism_P", "morphism_Q",
    )}
    if thresholds:
        thr.update(thresholds)
    results = []

    def add(name, value, detail):
        results.append(CheckResult(name=name, max_residual=value,
                                   threshold=thr[name], passed=value <= thr[name],
                                   detail=detail))

    add("unitarity", *check_unitarity(rep, projector))
    add("twisted_determinant", *check_twisted_determinant(rep, a, projector))
    add("modular", *check_modular(rep, a, projector))
    add("adjoint_formulas", *check_adjoint_formulas(rep, a, projector))
    add("commutation", *check_commutation(rep, a, projector))
    add("partial_isometries",
        *check_partial_isometries(rep, a, projector, thr["partial_isometries"]))
    if include_morphisms:
        ops = intertwiners.build(a)
        add("morphism_E", *check_morphism(rep, ops.e_vec, 0, 3, projector, size_cap))
        add("morphism_P", *check_morphism(rep, ops.p_mat, 1, 1, projector, size_cap))
        add("morphism_Q", *check_morphism(rep, ops.q_mat, 2, 2, projector, size_cap))
    return VerificationReport(checks=tuple(results))
