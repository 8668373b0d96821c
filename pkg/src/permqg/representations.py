"""Explicit matrix representations for the classified families.

A representation is a 3x3 grid of d x d complex blocks; block (i, j)
realizes the (i, j) generator.  Builders cover: one-dimensional diagonal
representations (valid for every array), the three families attached to
the Apkm arrays with k + m not divisible by 3, torus-like representations
for k = -m (mod 3), the twisted point representations of the classical
group behind the k = m arrays, and the one-dimensional plus truncated
weighted-shift representations of the two-block family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    BadFamily,
    CommutationMismatch,
    DimensionOverflow,
    InvalidParam,
    UnsupportedParam,
)
from .perm_array import zeta_pow

#: one-line forms of the two 3-cycles
SIGMA_A = (2, 3, 1)
SIGMA_B = (3, 1, 2)

DEFAULT_SIZE_CAP = 4096


def _cpair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


@dataclass(frozen=True)
class Representation:
    dim: int
    blocks: np.ndarray                 # (3, 3, dim, dim) complex
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        b = np.asarray(self.blocks, dtype=complex)
        if b.shape != (3, 3, self.dim, self.dim):
            raise InvalidParam(f"blocks must have shape (3, 3, {self.dim}, {self.dim}), got {b.shape}")
        b.setflags(write=False)
        object.__setattr__(self, "blocks", b)

    def block(self, i: int, j: int) -> np.ndarray:
        """Block for generator (i, j), 1-based indices."""
        return self.blocks[i - 1, j - 1]

    def to_json_dict(self) -> dict:
        blocks = [
            [[[_cpair(z) for z in row] for row in self.blocks[i, j]] for j in range(3)]
            for i in range(3)
        ]
        return {"dim": self.dim, "blocks": blocks, "meta": dict(self.meta)}


def representation_from_json(doc: dict) -> Representation:
    dim = int(doc["dim"])
    blocks = np.zeros((3, 3, dim, dim), dtype=complex)
    for i in range(3):
        for j in range(3):
            for r in range(dim):
                for c in range(dim):
                    re, im = doc["blocks"][i][j][r][c]
                    blocks[i, j, r, c] = complex(re, im)
    return Representation(dim=dim, blocks=blocks, meta=dict(doc.get("meta", {})))


def _grid(dim: int) -> np.ndarray:
    return np.zeros((3, 3, dim, dim), dtype=complex)


def _unit_phase(name: str, z: complex) -> complex:
    z = complex(z)
    if abs(abs(z) - 1.0) > 1e-9:
        raise InvalidParam(f"{name} must have modulus 1, got |{name}| = {abs(z)!r}")
    return z


# ---------------------------------------------------------------------------
# Clock and shift
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RotationRepSpec:
    """Phase data for a pair of unitaries with V1 V2 = exp(2j*pi*numer/3) V2 V1."""

    numer: int
    phases: tuple[complex, complex] = (1.0 + 0.0j, 1.0 + 0.0j)

    def __post_init__(self):
        object.__setattr__(self, "numer", int(self.numer))
        phases = (_unit_phase("phase 1", self.phases[0]), _unit_phase("phase 2", self.phases[1]))
        object.__setattr__(self, "phases", phases)

    @property
    def theta(self) -> float:
        return self.numer / 3.0

    @property
    def omega(self) -> complex:
        return zeta_pow(self.numer)


def clock_shift_pair(spec: RotationRepSpec) -> tuple[np.ndarray, np.ndarray]:
    """3x3 unitaries V1 = phase * diag(1, w, w^2), V2 = phase * cyclic shift.

    The diagonal is filled from the root-of-unity table, so the exchange
    relation V1 V2 = w V2 V1 holds to machine precision.
    """
    w_diag = np.diag([zeta_pow(0), zeta_pow(spec.numer), zeta_pow(2 * spec.numer)])
    shift = np.zeros((3, 3), dtype=complex)
    for j in range(3):
        shift[(j + 1) % 3, j] = 1.0
    return spec.phases[0] * w_diag, spec.phases[1] * shift


# ---------------------------------------------------------------------------
# Family builders
# ---------------------------------------------------------------------------

def diagonal_rep(z1: complex = 1.0, z2: complex = 1.0, meta: Optional[dict] = None) -> Representation:
    """One-dimensional diagonal representation diag(z1, z2, conj(z1 z2)).

    Satisfies the defining relations of every permutation array: the
    determinant-style sums collapse to z1 * z2 * conj(z1 z2) = 1.
    """
    z1 = _unit_phase("z1", z1)
    z2 = _unit_phase("z2", z2)
    blocks = _grid(1)
    blocks[0, 0, 0, 0] = z1
    blocks[1, 1, 0, 0] = z2
    blocks[2, 2, 0, 0] = (z1 * z2).conjugate()
    info = {"label": "diagonal", "z1": _cpair(z1), "z2": _cpair(z2)}
    if meta:
        info.update(meta)
    return Representation(dim=1, blocks=blocks, meta=info)


def akm_irreps(p: complex, k: int, m: int, which: str, *,
               z: tuple[complex, complex] = (1.0, 1.0),
               phases: tuple[complex, complex] = (1.0, 1.0)) -> Representation:
    """Irreducible representations attached to the Apkm arrays.

    which = "diag": the one-dimensional family (parameters z).
    which = "family2": nonzero blocks at (1,2), (2,3), (3,1) built from a
    clock-shift pair at numerator k - m; block (3,1) carries zeta^-m.
    which = "family3": nonzero blocks at (1,3), (2,1), (3,2) with
    numerator m - k and twist zeta^m.  Families 2 and 3 require
    k + m not divisible by 3.
    """
    if complex(p) == 0:
        raise InvalidParam("parameter p must be nonzero")
    if k not in (0, 1, 2) or m not in (0, 1, 2):
        raise InvalidParam("k and m must be in {0, 1, 2}")
    base_meta = {"family": "Apkm", "p": _cpair(p), "k": k, "m": m, "label": which}
    if which == "diag":
        return diagonal_rep(z[0], z[1], meta=base_meta)
    if which not in ("family2", "family3"):
        raise InvalidParam(f"which must be diag, family2 or family3, got {which!r}")
    if (k + m) % 3 == 0:
        raise BadFamily("families 2 and 3 need k + m not divisible by 3")
    if which == "family2":
        spec = RotationRepSpec(numer=k - m, phases=phases)
        v1, v2 = clock_shift_pair(spec)
        blocks = _grid(3)
        blocks[0, 1] = v1
        blocks[1, 2] = v2
        blocks[2, 0] = zeta_pow(-m) * (v2.conj().T @ v1.conj().T)
    else:
        spec = RotationRepSpec(numer=m - k, phases=phases)
        w1, w2 = clock_shift_pair(spec)
        blocks = _grid(3)
        blocks[0, 2] = w1
        blocks[1, 0] = w2
        blocks[2, 1] = zeta_pow(m) * (w2.conj().T @ w1.conj().T)
    return Representation(dim=3, blocks=blocks, meta=base_meta)


def apm_torus_rep(p: complex, m: int, sigma: str,
                  spec: Optional[RotationRepSpec] = None,
                  one_dimensional: bool = False) -> Representation:
    """Torus-like representation for the arrays with k = -m (mod 3).

    sigma = "a" places the nonzero blocks on the (2, 3, 1) pattern and
    needs V1 V2 = zeta^m V2 V1; sigma = "b" uses (3, 1, 2) and zeta^-m.
    Block (3, sigma(3)) carries the conjugate twist times V2* V1*.
    """
    if complex(p) == 0:
        raise InvalidParam("parameter p must be nonzero")
    if m not in (0, 1, 2):
        raise InvalidParam("m must be in {0, 1, 2}")
    if sigma == "a":
        perm, numer = SIGMA_A, m
    elif sigma == "b":
        perm, numer = SIGMA_B, (-m) % 3
    else:
        raise InvalidParam(f"sigma must be 'a' or 'b', got {sigma!r}")
    c_sigma = zeta_pow(numer)
    meta = {"family": "Apkm", "p": _cpair(p), "k": (-m) % 3, "m": m,
            "label": f"torus_sigma_{sigma}"}
    if one_dimensional:
        if spec is None:
            spec = RotationRepSpec(numer=0)
        if abs(1.0 - c_sigma) > 1e-12:
            raise CommutationMismatch("scalar unitaries need a trivial commutation phase (m = 0)")
        v1 = np.array([[spec.phases[0]]], dtype=complex)
        v2 = np.array([[spec.phases[1]]], dtype=complex)
        dim = 1
    else:
        if spec is None:
            spec = RotationRepSpec(numer=numer)
        if abs(spec.omega - c_sigma) > 1e-12:
            raise CommutationMismatch(
                f"clock-shift phase {spec.omega!r} does not match the required twist {c_sigma!r}"
            )
        v1, v2 = clock_shift_pair(spec)
        dim = 3
    v3 = c_sigma.conjugate() * (v2.conj().T @ v1.conj().T)
    blocks = _grid(dim)
    for row, v in zip((1, 2, 3), (v1, v2, v3)):
        blocks[row - 1, perm[row - 1] - 1] = v
    return Representation(dim=dim, blocks=blocks, meta=meta)


# ---------------------------------------------------------------------------
# Two-block family: one-dimensional and truncated weighted-shift models
# ---------------------------------------------------------------------------

def uq2_one_dim(q: complex, z_a: complex = 1.0, z_v: complex = 1.0) -> Representation:
    """Scalar model: the off-diagonal generator vanishes, the rest are phases."""
    if complex(q) == 0:
        raise InvalidParam("parameter q must be nonzero")
    z_a = _unit_phase("z_a", z_a)
    z_v = _unit_phase("z_v", z_v)
    blocks = _grid(1)
    blocks[0, 0, 0, 0] = z_v
    blocks[1, 1, 0, 0] = z_a
    blocks[2, 2, 0, 0] = z_a.conjugate() * z_v.conjugate()
    meta = {"family": "Uq2", "q": _cpair(q), "label": "one_dim"}
    return Representation(dim=1, blocks=blocks, meta=meta)


def uq2_generators(q: float, dim: int, lam_phase: complex = 1.0,
                   mu_phase: complex = 1.0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Truncated weighted shift a, diagonal c, scalar v on basis e_0..e_{dim-1}.

    a e_n = sqrt(1 - q^(2n)) e_{n-1}, c e_n = lam * q^n e_n, v = mu * 1.
    Requires real q in (0, 1); the truncation makes exactly one relation
    fail, at the top corner, by 1 - q^(2*dim).
    """
    qc = complex(q)
    if abs(qc.imag) > 0 or not (0.0 < qc.real < 1.0):
        raise UnsupportedParam("weighted-shift model needs real q with 0 < q < 1")
    if dim < 2:
        raise UnsupportedParam("need dim >= 2")
    q = qc.real
    lam_phase = _unit_phase("lam_phase", lam_phase)
    mu_phase = _unit_phase("mu_phase", mu_phase)
    a = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        a[n - 1, n] = math.sqrt(1.0 - q ** (2 * n))
    c = np.diag([lam_phase * q ** n for n in range(dim)]).astype(complex)
    v = mu_phase * np.eye(dim, dtype=complex)
    return a, c, v


def uq2_fock_truncated(q: float, dim: int = 20, lam_phase: complex = 1.0,
                       mu_phase: complex = 1.0) -> Representation:
    """Truncated shift model assembled into the two-block grid.

    The (2, 3) block is E_132 * c* v* with E_132 = -q, matching the grid
    that actually satisfies the determinant-style relations of the
    two-block witness array.
    """
    a, c, v = uq2_generators(q, dim, lam_phase, mu_phase)
    blocks = _grid(dim)
    blocks[0, 0] = v
    blocks[1, 1] = a
    blocks[1, 2] = (-q) * (c.conj().T @ v.conj().T)
    blocks[2, 1] = c
    blocks[2, 2] = a.conj().T @ v.conj().T
    meta = {"family": "Uq2", "q": _cpair(q), "label": "fock_truncated",
            "truncated": True, "interior_dim": dim - 1}
    return Representation(dim=dim, blocks=blocks, meta=meta)


def uq2_reps(q: complex, kind: str, **kwargs) -> Representation:
    """Dispatch: kind = "one_dim" or "fock_truncated"."""
    if kind == "one_dim":
        return uq2_one_dim(q, **kwargs)
    if kind == "fock_truncated":
        return uq2_fock_truncated(q, **kwargs)
    raise InvalidParam(f"kind must be one_dim or fock_truncated, got {kind!r}")


def interior_projector(dim: int) -> np.ndarray:
    """Projection onto span{e_0 .. e_{dim-2}}."""
    proj = np.eye(dim, dtype=complex)
    proj[dim - 1, dim - 1] = 0.0
    return proj


def uq2_generator_residuals(q: float, a: np.ndarray, c: np.ndarray, v: np.ndarray,
                            interior: bool = True) -> dict[str, float]:
    """Max-entry residuals of the defining generator relations.

    With interior=True the residual matrices are compressed to
    span{e_0..e_{dim-2}} first; the full-space defect of the relation
    a a* + |q|^2 c* c = 1 sits at the top corner and is reported under
    the key "boundary".
    """
    dim = a.shape[0]
    eye = np.eye(dim, dtype=complex)
    t = complex(q)
    phase = (t.conjugate() / t) if t.imag else 1.0  # exp(-2j * arg q)
    rels = {
        "ac_qbar_ca": a @ c - np.conj(t) * (c @ a),
        "ac*_q_c*a": a @ c.conj().T - t * (c.conj().T @ a),
        "a*a+c*c": a.conj().T @ a + c.conj().T @ c - eye,
        "aa*+q2c*c": a @ a.conj().T + abs(t) ** 2 * (c.conj().T @ c) - eye,
        "cc*_normal": c @ c.conj().T - c.conj().T @ c,
        "vv*": v @ v.conj().T - eye,
        "v*v": v.conj().T @ v - eye,
        "av_va": a @ v - v @ a,
        "cv_phase_vc": c @ v - phase * (v @ c),
    }
    boundary = float(np.abs(rels["aa*+q2c*c"]).max())
    if interior:
        proj = interior_projector(dim)
        rels = {name: proj @ mat @ proj for name, mat in rels.items()}
    out = {name: float(np.abs(mat).max()) for name, mat in rels.items()}
    out["boundary"] = boundary
    return out


# ---------------------------------------------------------------------------
# Twisted point representations of the classical group behind k = m
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemidirectElement:
    """Group element (z, w; a) with |z| = |w| = 1 and a in {e, x, y}."""

    z: complex
    w: complex
    a: str

    def __post_init__(self):
        if self.a not in ("e", "x", "y"):
            raise InvalidParam(f"component a must be e, x or y, got {self.a!r}")
        object.__setattr__(self, "z", _unit_phase("z", self.z))
        object.__setattr__(self, "w", _unit_phase("w", self.w))


def semidirect_mul(g1: SemidirectElement, g2: SemidirectElement,
                   theta: complex) -> SemidirectElement:
    """Product in the twisted group; theta is the unit-modulus twist."""
    theta = _unit_phase("theta", theta)
    z1, w1, z2, w2 = g1.z, g1.w, g2.z, g2.w
    bar = (z2 * w2).conjugate()
    if g1.a == "e":
        return SemidirectElement(z1 * z2, w1 * w2, g2.a)
    if g1.a == "x":
        if g2.a == "e":
            return SemidirectElement(z1 * w2, w1 * bar, "x")
        if g2.a == "x":
            return SemidirectElement(z1 * w2, theta * w1 * bar, "y")
        return SemidirectElement(z1 * w2, theta.conjugate() * w1 * bar, "e")
    # g1.a == "y"
    if g2.a == "e":
        return SemidirectElement(z1 * bar, w1 * z2, "y")
    if g2.a == "x":
        return SemidirectElement(theta * z1 * bar, w1 * z2, "e")
    return SemidirectElement(theta.conjugate() * z1 * bar, w1 * z2, "x")


def semidirect_matrix(g: SemidirectElement, theta: complex) -> np.ndarray:
    """3x3 unitary attached to a group element."""
    theta = _unit_phase("theta", theta)
    z, w = g.z, g.w
    bar = (z * w).conjugate()
    mat = np.zeros((3, 3), dtype=complex)
    if g.a == "e":
        mat[0, 0], mat[1, 1], mat[2, 2] = z, w, bar
    elif g.a == "x":
        mat[0, 1], mat[1, 2], mat[2, 0] = z, w, theta * bar
    else:
        mat[0, 2], mat[1, 0], mat[2, 1] = z, w, theta.conjugate() * bar
    return mat


def semidirect_point_rep(g: SemidirectElement, theta: complex,
                         meta: Optional[dict] = None) -> Representation:
    """Evaluation at a group point as a 3x3 grid of scalars (dim 1)."""
    mat = semidirect_matrix(g, theta)
    blocks = _grid(1)
    blocks[:, :, 0, 0] = mat
    info = {"label": f"semidirect_point_{g.a}", "z": _cpair(g.z), "w": _cpair(g.w),
            "theta": _cpair(theta)}
    if meta:
        info.update(meta)
    return Representation(dim=1, blocks=blocks, meta=info)


# ---------------------------------------------------------------------------
# Tensor powers
# ---------------------------------------------------------------------------

def tensor_power(rep: Representation, n: int, size_cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    """Blocks of the n-th tensor power: (3^n, 3^n, d, d) with block (I, J)
    the ordered product of the component blocks.  Multi-indices flatten in
    base 3, most significant factor first, matching the intertwiner layout.
    """
    if n < 0 or n > 3:
        raise InvalidParam(f"tensor power must have 0 <= n <= 3, got {n}")
    total = (3 ** n) * rep.dim
    if total > size_cap:
        raise DimensionOverflow(f"tensor power size {total} exceeds cap {size_cap}")
    d = rep.dim
    eye = np.eye(d, dtype=complex)
    out = eye.reshape(1, 1, d, d).copy()
    for _ in range(n):
        m = out.shape[0]
        out = np.einsum("IJab,klbc->IkJlac", out, rep.blocks).reshape(3 * m, 3 * m, d, d)
    return out


def blocks_to_matrix(blocks: np.ndarray) -> np.ndarray:
    """Flatten a (B, B, d, d) block array into a (B*d, B*d) matrix."""
    nb, _, d, _ = blocks.shape
    return blocks.transpose(0, 2, 1, 3).reshape(nb * d, nb * d)
