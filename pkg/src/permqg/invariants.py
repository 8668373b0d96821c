"""Scalar invariants of a permutation array.

Diagonal constants p_j, modular constants M_n, characteristic constants
C(l, n), the character scale and the Kac flag.  These are the quantities
the classification decision tree branches on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentInvariants
from .perm_array import PermArray, complement

#: Ordered pairs (l, n) with l != n, lexicographic.
CHAR_PAIRS: tuple[tuple[int, int], ...] = (
    (1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2),
)


def diagonal_constants(a: PermArray) -> np.ndarray:
    """p_j = sum_{a,b} conj(E_jab) * E_abj; two nonzero terms each."""
    t = a.tensor
    return np.einsum("jab,abj->j", t.conj(), t)


def modular_constants(a: PermArray) -> np.ndarray:
    """M_n = sum_{j,k} |E_njk|^2; strictly positive."""
    t = a.tensor
    return np.einsum("njk,njk->n", t.conj(), t).real.copy()


def characteristic_constants(a: PermArray) -> dict[tuple[int, int], complex]:
    """C(l, n) = (E_jln / E_jnl) * (E_nlj / E_lnj), j completing (j, l, n)."""
    out = {}
    for l, n in CHAR_PAIRS:
        j = complement(l, n)
        out[(l, n)] = (a.entry(j, l, n) / a.entry(j, n, l)) * (a.entry(n, l, j) / a.entry(l, n, j))
    return out


def character_scale_and_kac(modular, tolerance: float) -> tuple[float, bool]:
    """scale = sqrt((sum 1/M_i) / (sum M_i)); Kac iff all M_i agree."""
    m = np.asarray(modular, dtype=float)
    scale = math.sqrt((1.0 / m).sum() / m.sum())
    spread = float(m.max() - m.min())
    kac = spread <= tolerance * float(m.max())
    return scale, kac


def cluster_indices(values, scale: float) -> tuple[list[list[int]], bool]:
    """Partition 1-based indices of `values` by closeness within `scale`.

    Clustering is the transitive closure of pairwise closeness.  A chain
    a~b, b~c with a and c not close is merged anyway and flagged, so the
    caller can surface the ambiguity instead of deciding silently.
    """
    vals = list(values)
    n = len(vals)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    close = [[abs(vals[i] - vals[j]) <= scale for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if close[i][j]:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i + 1)
    classes = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    ambiguous = any(
        not close[i - 1][j - 1]
        for g in classes
        for i in g
        for j in g
    )
    return classes, ambiguous


@dataclass(frozen=True)
class InvariantReport:
    diagonal: tuple[complex, complex, complex]
    modular: tuple[float, float, float]
    char_constants: dict[tuple[int, int], complex]
    character_scale: float
    kac: bool
    diagonal_partition: tuple[tuple[int, ...], ...]
    partition_ambiguous: bool
    char_one_count: int

    def to_json_dict(self) -> dict:
        return {
            "diagonal": [[z.real, z.imag] for z in self.diagonal],
            "modular": list(self.modular),
            "char_constants": {
                f"{l}{n}": [c.real, c.imag] for (l, n), c in sorted(self.char_constants.items())
            },
            "character_scale": self.character_scale,
            "kac": self.kac,
            "diagonal_partition": [list(g) for g in self.diagonal_partition],
            "partition_ambiguous": self.partition_ambiguous,
            "char_one_count": self.char_one_count,
        }


def compute_invariants(a: PermArray) -> InvariantReport:
    """All invariants in one report.

    Raises InconsistentInvariants when the number of characteristic
    constants equal to 1 is not 0, 2 or 6: the group relations
    C(n,j)C(j,n) = 1 and C(n,l)C(l,j) = C(n,j) admit no other count, so any
    other observation means the tolerance does not fit the data.
    """
    tol = a.tolerance
    diag = diagonal_constants(a)
    mod = modular_constants(a)
    chars = characteristic_constants(a)
    scale, kac = character_scale_and_kac(mod, tol)
    dscale = tol * (1.0 + float(np.abs(diag).max()))
    partition, ambiguous = cluster_indices(diag, dscale)
    count = sum(1 for c in chars.values() if abs(c - 1.0) <= tol)
    if count not in (0, 2, 6):
        raise InconsistentInvariants(
            f"{count} characteristic constants equal 1 within tolerance; expected 0, 2 or 6"
        )
    return InvariantReport(
        diagonal=tuple(complex(z) for z in diag),
        modular=tuple(float(x) for x in mod),
        char_constants=chars,
        character_scale=scale,
        kac=kac,
        diagonal_partition=tuple(tuple(g) for g in partition),
        partition_ambiguous=ambiguous,
        char_one_count=count,
    )
