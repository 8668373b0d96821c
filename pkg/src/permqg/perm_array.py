"""Six-entry complex arrays indexed by the permutations of (1, 2, 3).

An array stores exactly one nonzero complex value per permutation; every
other index triple is implicitly zero and never stored.  Construction
enforces the nonzero condition, so downstream code may divide by entries
freely.  All equality decisions downstream use the array's tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Iterator, Mapping, Optional

import numpy as np

from .errors import InvalidParam, ZeroEntry, ZeroScale

#: The six permutations of (1, 2, 3) in lexicographic order.
PERMS: tuple[tuple[int, int, int], ...] = (
    (1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1),
)

DEFAULT_TOLERANCE = 1e-9

# Primitive third root of unity; powers come from a fixed 3-entry table so
# that repeated exponentiation cannot drift.
_ZETA = complex(-0.5, math.sqrt(3.0) / 2.0)
_ZETA_POWERS = (1.0 + 0.0j, _ZETA, _ZETA.conjugate())


def zeta_pow(n: int) -> complex:
    """exp(2j*pi*n/3), looked up in a 3-entry table."""
    return _ZETA_POWERS[n % 3]


def complement(i: int, j: int) -> int:
    """The unique index making (i, j, complement) a permutation of (1, 2, 3)."""
    if i == j or i not in (1, 2, 3) or j not in (1, 2, 3):
        raise InvalidParam(f"no complement for indices ({i}, {j})")
    return 6 - i - j


def _key(sigma) -> tuple[int, int, int]:
    key = tuple(int(x) for x in sigma)
    if key not in PERMS:
        raise InvalidParam(f"{sigma!r} is not a permutation of (1, 2, 3)")
    return key


@dataclass(frozen=True)
class PermArray:
    """Map from each permutation of (1, 2, 3) to a nonzero complex scalar.

    Immutable after construction; all operations on it are pure.
    """

    values: Mapping[tuple[int, int, int], complex]
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if not (self.tolerance >= 0.0):
            raise InvalidParam(f"tolerance must be nonnegative, got {self.tolerance}")
        vals = {_key(sigma): complex(v) for sigma, v in self.values.items()}
        if set(vals) != set(PERMS):
            missing = set(PERMS) - set(vals)
            raise InvalidParam(f"array needs all six permutation entries, missing {sorted(missing)}")
        for sigma, v in vals.items():
            if abs(v) <= self.tolerance:
                raise ZeroEntry(f"entry {sigma} has modulus {abs(v):.3e} <= tolerance {self.tolerance:.3e}")
        object.__setattr__(self, "values", vals)
        t = np.zeros((3, 3, 3), dtype=complex)
        for (i, j, k), v in vals.items():
            t[i - 1, j - 1, k - 1] = v
        t.setflags(write=False)
        object.__setattr__(self, "_tensor", t)

    @property
    def tensor(self) -> np.ndarray:
        """Dense (3, 3, 3) tensor, zero off the permutation support. Read-only."""
        return self._tensor

    def entry(self, i: int, j: int, k: int) -> complex:
        """E_ijk, zero when (i, j, k) is not a permutation."""
        return self.values.get((i, j, k), 0.0 + 0.0j)

    @property
    def is_normalized(self) -> bool:
        return abs(self.entry(1, 2, 3) - 1.0) <= self.tolerance

    def with_tolerance(self, tolerance: float) -> "PermArray":
        return replace(self, tolerance=tolerance)

    def as_tuple(self) -> tuple[complex, ...]:
        """Entries in the lexicographic permutation order of PERMS."""
        return tuple(self.values[s] for s in PERMS)

    def __iter__(self) -> Iterator[tuple[tuple[int, int, int], complex]]:
        return iter(self.values.items())


@dataclass(frozen=True)
class ArrayParams:
    """The five free entries of a normalized array.

    p = E_132, q = E_213, r = E_231, s = E_312, t = E_321.
    """

    p: complex
    q: complex
    r: complex
    s: complex
    t: complex

    @classmethod
    def from_array(cls, a: PermArray) -> "ArrayParams":
        if not a.is_normalized:
            raise InvalidParam("parameters are defined only for a normalized array (E_123 = 1)")
        return cls(p=a.entry(1, 3, 2), q=a.entry(2, 1, 3), r=a.entry(2, 3, 1),
                   s=a.entry(3, 1, 2), t=a.entry(3, 2, 1))


def from_tuple(entries, tolerance: float = DEFAULT_TOLERANCE) -> PermArray:
    """Build an array from six values in the lexicographic PERMS order."""
    entries = tuple(entries)
    if len(entries) != 6:
        raise InvalidParam(f"need 6 entries, got {len(entries)}")
    return PermArray(dict(zip(PERMS, entries)), tolerance)


def all_ones(tolerance: float = DEFAULT_TOLERANCE) -> PermArray:
    return from_tuple((1, 1, 1, 1, 1, 1), tolerance)


def normalize(a: PermArray) -> PermArray:
    """Divide every entry by E_123; the result has E_123 == 1 exactly.

    Classification is invariant under this rescaling, so the normalized
    array represents the same object.  Idempotent.
    """
    e0 = a.entry(1, 2, 3)
    vals = {sigma: v / e0 for sigma, v in a.values.items()}
    vals[(1, 2, 3)] = 1.0 + 0.0j
    return PermArray(vals, a.tolerance)


def permute_and_scale(a: PermArray, sigma, c: complex) -> PermArray:
    """Relabeled and rescaled array with entries E'_(i1 i2 i3) = E_(s(i1) s(i2) s(i3)) / c.

    Relabeling the indices and rescaling produce an isomorphic object, so
    every classification-level quantity must be stable under this map.
    """
    sig = _key(sigma)
    c = complex(c)
    if c == 0:
        raise ZeroScale("scaling constant must be nonzero")
    vals = {}
    for (i, j, k) in PERMS:
        vals[(i, j, k)] = a.entry(sig[i - 1], sig[j - 1], sig[k - 1]) / c
    return PermArray(vals, a.tolerance)


def random_array(rng: np.random.Generator, tolerance: float = DEFAULT_TOLERANCE,
                 mod_range: tuple[float, float] = (0.1, 10.0)) -> PermArray:
    """Random array with log-uniform moduli and uniform phases."""
    lo, hi = math.log(mod_range[0]), math.log(mod_range[1])
    vals = {}
    for sigma in PERMS:
        modulus = math.exp(rng.uniform(lo, hi))
        phase = rng.uniform(0.0, 2.0 * math.pi)
        vals[sigma] = modulus * complex(math.cos(phase), math.sin(phase))
    return PermArray(vals, tolerance)


# ---------------------------------------------------------------------------
# Named constructors
# ---------------------------------------------------------------------------

def _nonzero(name: str, value: complex) -> complex:
    value = complex(value)
    if value == 0:
        raise InvalidParam(f"parameter {name} must be nonzero")
    return value


def _check_km(name: str, value: int) -> int:
    if value not in (0, 1, 2):
        raise InvalidParam(f"parameter {name} must be in {{0, 1, 2}}, got {value!r}")
    return int(value)


def su3_inversions(q: complex, tolerance: float = DEFAULT_TOLERANCE) -> PermArray:
    """Entries (-q)**inv(sigma), counting inversions of each permutation."""
    q = _nonzero("q", q)
    inv = (0, 1, 1, 2, 2, 3)
    return from_tuple(tuple((-q) ** n for n in inv), tolerance)


def uq2_cycles(q: complex, tolerance: float = DEFAULT_TOLERANCE) -> PermArray:
    """Entries (-q)**(3 - c(sigma)), with c the number of cycles."""
    q = _nonzero("q", q)
    cycles = (3, 2, 2, 1, 1, 2)
    return from_tuple(tuple((-q) ** (3 - c) for c in cycles), tolerance)


def uq2_example(q: complex, alpha: complex = 1.0, beta: complex = 1.0,
                tolerance: float = DEFAULT_TOLERANCE) -> PermArray:
    """(1, -q, alpha, beta, -alpha*conj(q), -beta*q); two-block witness array."""
    q = _nonzero("q", q)
    alpha = _nonzero("alpha", alpha)
    beta = _nonzero("beta", beta)
    return from_tuple((1.0, -q, alpha, beta, -alpha * q.conjugate(), -beta * q), tolerance)


def def_su(p: complex, m: int, tolerance: float = DEFAULT_TOLERANCE) -> PermArray:
    """(1, p, p*z^-m, |p|^2*z^m, |p|^2*z^-m, |p|^2*p*z^m) with z = exp(2j*pi/3)."""
    p = _nonzero("p", p)
    m = _check_km("m", m)
    p2 = abs(p) ** 2
    return from_tuple((
        1.0,
        p,
        p * zeta_pow(-m),
        p2 * zeta_pow(m),
        p2 * zeta_pow(-m),
        p2 * p * zeta_pow(m),
    ), tolerance)


def def_akm(p: complex, k: int, m: int, tolerance: float = DEFAULT_TOLERANCE) -> PermArray:
    """(1, p, p*z^k, z^m, z^-m, p*z^-k) with z = exp(2j*pi/3)."""
    p = _nonzero("p", p)
    k = _check_km("k", k)
    m = _check_km("m", m)
    return from_tuple((
        1.0,
        p,
        p * zeta_pow(k),
        zeta_pow(m),
        zeta_pow(-m),
        p * zeta_pow(-k),
    ), tolerance)


NAMED_KINDS: dict[str, Callable[..., PermArray]] = {
    "SUq3_inversions": su3_inversions,
    "Uq2_cycles": uq2_cycles,
    "Uq2_example": uq2_example,
    "DefSU": def_su,
    "DefAKM": def_akm,
}


def named_array(kind: str, **params) -> PermArray:
    """Dispatch to one of the named constructors by kind string."""
    try:
        builder = NAMED_KINDS[kind]
    except KeyError:
        raise InvalidParam(f"unknown array kind {kind!r}; choose from {sorted(NAMED_KINDS)}")
    return builder(**params)


# ---------------------------------------------------------------------------
# JSON round trip
# ---------------------------------------------------------------------------

def to_json_dict(a: PermArray) -> dict:
    """{"E": {"123": [re, im], ...}, "tolerance": t}"""
    e = {"".join(map(str, sigma)): [v.real, v.imag] for sigma, v in a.values.items()}
    return {"E": e, "tolerance": a.tolerance}


def from_json_dict(doc: dict, tolerance: Optional[float] = None) -> PermArray:
    try:
        entries = doc["E"]
    except (KeyError, TypeError):
        raise InvalidParam('array document must contain an "E" object')
    vals = {}
    for key, pair in entries.items():
        sigma = tuple(int(ch) for ch in str(key))
        if isinstance(pair, (int, float)):
            vals[sigma] = complex(pair)
        else:
            re, im = pair
            vals[sigma] = complex(float(re), float(im))
    tol = tolerance if tolerance is not None else float(doc.get("tolerance", DEFAULT_TOLERANCE))
    return PermArray(vals, tol)
