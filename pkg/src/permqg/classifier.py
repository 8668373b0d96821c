"""Decision tree sorting a permutation array into one of four families.

Families: Torus (commutative, functions on the 2-torus), Uq2 (one complex
parameter q), Apkm (complex p plus k, m in {0, 1, 2}) and SUpm (complex p
plus m in {0, 1, 2}).  The tree branches on the diagonal-constant
partition first, then on how many characteristic constants equal 1.

Branch logic:

* three distinct diagonal constants  -> Torus;
* exactly two equal                  -> two-block test with the singleton
  index; a successful q-match gives Uq2, otherwise Torus;
* all equal -> count characteristic constants equal to 1:
    0 -> Apkm pattern match, else a two-equal modular-constant block test
         (Uq2), else Torus;
    2 -> relabel so the matching pair sits at (2, 3), then the same
         two-block test with singleton 1 (heuristic-grade step: the proof
         only guarantees the answer is Uq2 or Torus);
    6 -> match the four closed forms of the equal-diagonal all-ratio-one
         constraint system and reduce to Apkm or SUpm.

Every step is recorded in the trace; exactly one leaf is reached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidParam, Unclassifiable
from .invariants import CHAR_PAIRS, cluster_indices, compute_invariants
from .perm_array import (
    DEFAULT_TOLERANCE,
    PermArray,
    complement,
    from_tuple,
    normalize,
    permute_and_scale,
    zeta_pow,
)


def _cpair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


@dataclass(frozen=True)
class BlockStructure:
    """Shape of the block decomposition forced by the diagonal constants."""

    kind: str                       # three_blocks | two_blocks | irreducible_candidate
    singleton: Optional[int] = None
    pair: Optional[tuple[int, int]] = None

    @classmethod
    def from_partition(cls, partition) -> "BlockStructure":
        sizes = sorted(len(g) for g in partition)
        if sizes == [1, 1, 1]:
            return cls("three_blocks")
        if sizes == [1, 2]:
            single = next(g[0] for g in partition if len(g) == 1)
            pair = next(tuple(g) for g in partition if len(g) == 2)
            return cls("two_blocks", singleton=single, pair=pair)
        return cls("irreducible_candidate")


@dataclass(frozen=True)
class Classification:
    family: str                     # Torus | Uq2 | Apkm | SUpm
    q: Optional[complex] = None
    p: Optional[complex] = None
    k: Optional[int] = None
    m: Optional[int] = None
    nontrivial: str = "unknown"
    note: Optional[str] = None
    alias: Optional[dict] = None
    trace: tuple = field(default_factory=tuple)

    def params(self) -> dict:
        out = {}
        for name in ("q", "p", "k", "m"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out

    def to_json_dict(self) -> dict:
        doc: dict = {"family": self.family}
        if self.q is not None:
            doc["q"] = _cpair(self.q)
        if self.p is not None:
            doc["p"] = _cpair(self.p)
        if self.k is not None:
            doc["k"] = self.k
        if self.m is not None:
            doc["m"] = self.m
        doc["nontrivial"] = self.nontrivial
        doc["note"] = self.note
        doc["alias"] = self.alias
        doc["trace"] = [dict(step) for step in self.trace]
        return doc


# ---------------------------------------------------------------------------
# Two-block parameter match
# ---------------------------------------------------------------------------

def _uq2_match_detail(a: PermArray, k: int) -> dict:
    """Relabel so the singleton block sits at index 1 and test both ratio
    conditions; a successful match pins q = -E'_132."""
    if k not in (1, 2, 3):
        raise InvalidParam(f"singleton index must be 1, 2 or 3, got {k!r}")
    i, r = sorted(x for x in (1, 2, 3) if x != k)
    sigma0 = (k, i, r)
    relabeled = normalize(permute_and_scale(a, sigma0, a.entry(*sigma0)))
    mu = relabeled.entry(1, 3, 2)
    scale = a.tolerance * (1.0 + abs(mu))
    alpha2 = abs(relabeled.entry(3, 2, 1) / relabeled.entry(2, 3, 1) - mu)
    alpha3 = abs(relabeled.entry(3, 1, 2) / relabeled.entry(2, 1, 3) - mu.conjugate())
    matched = alpha2 <= scale and alpha3 <= scale
    return {
        "relabel": list(sigma0),
        "mu": _cpair(mu),
        "alpha2_residual": alpha2,
        "alpha3_residual": alpha3,
        "matched": matched,
        "q": -mu if matched else None,
    }


def uq2_match(a: PermArray, k: int) -> Optional[complex]:
    """q for the two-block family with singleton index k, or None."""
    return _uq2_match_detail(a, k)["q"]


# ---------------------------------------------------------------------------
# Pattern matches against the closed forms
# ---------------------------------------------------------------------------

def akm_pattern_match(a: PermArray) -> Optional[tuple[complex, int, int]]:
    """(p, k, m) when the normalized array is of the Apkm defining shape."""
    if not a.is_normalized:
        raise InvalidParam("pattern match requires a normalized array")
    p = a.entry(1, 3, 2)
    scale = a.tolerance * (1.0 + abs(p))
    for k in range(3):
        for m in range(3):
            ok = (
                abs(a.entry(2, 1, 3) - p * zeta_pow(k)) <= scale
                and abs(a.entry(2, 3, 1) - zeta_pow(m)) <= scale
                and abs(a.entry(3, 1, 2) - zeta_pow(-m)) <= scale
                and abs(a.entry(3, 2, 1) - p * zeta_pow(-k)) <= scale
            )
            if ok:
                return p, k, m
    return None


def constrained_family_array(case: int, p: complex, m: int,
                             tolerance: float = DEFAULT_TOLERANCE) -> PermArray:
    """Closed-form solution of the equal-diagonal, all-ratio-one system.

    Four one-complex-parameter families indexed by case in {1, 2, 3, 4};
    every normalized array with equal diagonal constants and all six
    characteristic constants equal to 1 is of one of these shapes.
    """
    p = complex(p)
    if p == 0:
        raise InvalidParam("parameter p must be nonzero")
    if m not in (0, 1, 2):
        raise InvalidParam(f"m must be in {{0, 1, 2}}, got {m!r}")
    p2 = abs(p) ** 2
    zp, zm = zeta_pow(m), zeta_pow(-m)
    if case == 1:
        row = (1.0, p, p * zm, zp, zm, p * zp)
    elif case == 2:
        row = (1.0, p, p * zm, p2 * zp, p2 * zm, p2 * p * zp)
    elif case == 3:
        row = (1.0, p, zm / p.conjugate(), zp, p2 * zm, p * zp)
    elif case == 4:
        row = (1.0, p, zm / p.conjugate(), zp / p2, zm, zp / p.conjugate())
    else:
        raise InvalidParam(f"case must be 1..4, got {case!r}")
    return from_tuple(row, tolerance)


@dataclass(frozen=True)
class Case3Solution:
    case: int
    p: complex
    m: int
    matches: tuple[tuple[int, int], ...]   # every (case, m) whose row fits

    @property
    def coincident(self) -> bool:
        return len(self.matches) > 1


def case3_solve(a: PermArray) -> Case3Solution:
    """Match a normalized array against the four closed forms.

    Returns the first matching case in numeric order; all matches are kept
    so coincidences (|p| = 1 makes the four rows collapse) stay visible.
    Raises Unclassifiable when nothing fits, which contradicts the branch
    hypothesis and therefore signals noisy input.
    """
    if not a.is_normalized:
        raise InvalidParam("closed-form matching requires a normalized array")
    p = a.entry(1, 3, 2)
    got = a.as_tuple()
    matches = []
    for case in (1, 2, 3, 4):
        for m in range(3):
            row = constrained_family_array(case, p, m, a.tolerance).as_tuple()
            if all(abs(g - e) <= a.tolerance * (1.0 + abs(e)) for g, e in zip(got, row)):
                matches.append((case, m))
    if not matches:
        raise Unclassifiable(
            "equal diagonal constants and all characteristic constants 1, "
            "but no closed form matches; input looks inconsistent"
        )
    case, m = matches[0]
    return Case3Solution(case=case, p=p, m=m, matches=tuple(matches))


def reduce_case3(case: int, p: complex, m: int,
                 tolerance: float = DEFAULT_TOLERANCE) -> tuple[str, dict, Optional[dict]]:
    """Map a matched closed form to its family label.

    Cases 3 and 4 are relabelings of case 2 with transformed parameter.
    At |p| = 1 cases 1 and 2 describe the same object; the SUpm label is
    returned and the Apkm reading is kept as an alias.
    """
    p = complex(p)
    unit = abs(abs(p) - 1.0) <= tolerance
    if case == 1:
        if unit:
            alias = {"family": "Apkm", "p": _cpair(p), "k": (-m) % 3, "m": m}
            return "SUpm", {"p": p, "m": m}, alias
        return "Apkm", {"p": p, "k": (-m) % 3, "m": m}, None
    if case == 2:
        if unit:
            alias = {"family": "Apkm", "p": _cpair(p), "k": (-m) % 3, "m": m}
            return "SUpm", {"p": p, "m": m}, alias
        return "SUpm", {"p": p, "m": m}, None
    if case == 3:
        return "SUpm", {"p": p.conjugate() * zeta_pow(-m), "m": m}, None
    if case == 4:
        return "SUpm", {"p": 1.0 / p, "m": m}, None
    raise InvalidParam(f"case must be 1..4, got {case!r}")


# ---------------------------------------------------------------------------
# Non-triviality
# ---------------------------------------------------------------------------

def nontriviality(family: str, *, q: Optional[complex] = None, p: Optional[complex] = None,
                  k: Optional[int] = None, m: Optional[int] = None,
                  tolerance: float = DEFAULT_TOLERANCE) -> tuple[str, Optional[str]]:
    """Verdict (yes | no | yes-with-note | unknown) plus a short reason."""
    if family == "Torus":
        return "no", "commutative: functions on the two-dimensional torus"
    if family == "Uq2":
        assert q is not None
        if abs(q - 1.0) <= tolerance:
            return "no", "q = 1 collapses to a commutative algebra"
        return "yes", None
    if family == "Apkm":
        assert p is not None and k is not None and m is not None
        near_real = abs(p.imag) <= tolerance * (1.0 + abs(p))
        unit = abs(abs(p) - 1.0) <= tolerance
        if (k + m) % 3 != 0:
            if k != m:
                return "yes", "noncommutative rotation-algebra representations exist"
            return "no", "k = m: all permutation-supported unitaries commute"
        # k = -m (mod 3)
        if m != 0:
            return "yes", "torus-like representation with nontrivial commutation phase"
        if unit and not near_real:
            return "yes", "coincides with the SUpm family; contains a noncommutative subgroup"
        if near_real and abs(p - 1.0) > tolerance and abs(p + 1.0) > tolerance:
            return "no", "isomorphic to functions on a classical semidirect product"
        return "unknown", "boundary parameters p = 1 or p = -1 not decided here"
    if family == "SUpm":
        assert p is not None
        if abs(p + 1.0) <= tolerance:
            return "unknown", "subgroup argument degenerates at p = -1"
        return (
            "yes-with-note",
            "contains the two-block family at parameter -p, nontrivial since -p != 1; "
            "a stricter reading asks for p != 1 and m != 0",
        )
    raise InvalidParam(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# The decision tree
# ---------------------------------------------------------------------------

def _finish(family: str, params: dict, alias: Optional[dict], trace: list,
            tolerance: float) -> Classification:
    verdict, note = nontriviality(family, tolerance=tolerance, **params)
    trace.append({"step": "leaf", "family": family,
                  "params": {k: (_cpair(v) if isinstance(v, complex) else v)
                             for k, v in params.items()}})
    return Classification(
        family=family,
        q=params.get("q"),
        p=params.get("p"),
        k=params.get("k"),
        m=params.get("m"),
        nontrivial=verdict,
        note=note,
        alias=alias,
        trace=tuple(trace),
    )


def classify(a: PermArray) -> Classification:
    """Classify a permutation array; see the module docstring for the tree."""
    tol = a.tolerance
    trace: list[dict] = []
    an = normalize(a)
    trace.append({"step": "normalize", "scale": _cpair(a.entry(1, 2, 3))})
    inv = compute_invariants(an)
    trace.append({
        "step": "diagonal_partition",
        "values": [_cpair(z) for z in inv.diagonal],
        "classes": [list(g) for g in inv.diagonal_partition],
        "ambiguous": inv.partition_ambiguous,
    })
    block = BlockStructure.from_partition(inv.diagonal_partition)
    trace.append({"step": "block_structure", "kind": block.kind,
                  "singleton": block.singleton, "pair": list(block.pair) if block.pair else None})

    if block.kind == "three_blocks":
        return _finish("Torus", {}, None, trace, tol)

    if block.kind == "two_blocks":
        detail = _uq2_match_detail(an, block.singleton)
        trace.append({"step": "uq2_match", "singleton": block.singleton, **{
            key: val for key, val in detail.items() if key != "q"}})
        if detail["matched"]:
            return _finish("Uq2", {"q": detail["q"]}, None, trace, tol)
        return _finish("Torus", {}, None, trace, tol)

    # all diagonal constants equal
    count = inv.char_one_count
    trace.append({"step": "char_one_count", "count": count})

    if count == 0:
        akm = akm_pattern_match(an)
        if akm is not None:
            p, k, m = akm
            trace.append({"step": "akm_pattern", "matched": True,
                          "p": _cpair(p), "k": k, "m": m})
            return _finish("Apkm", {"p": p, "k": k, "m": m}, None, trace, tol)
        trace.append({"step": "akm_pattern", "matched": False})
        mscale = tol * (1.0 + max(inv.modular))
        mclasses, _ = cluster_indices(inv.modular, mscale)
        trace.append({"step": "modular_partition", "classes": [list(g) for g in mclasses]})
        if sorted(len(g) for g in mclasses) == [1, 2]:
            singleton = next(g[0] for g in mclasses if len(g) == 1)
            detail = _uq2_match_detail(an, singleton)
            trace.append({"step": "uq2_match", "singleton": singleton, **{
                key: val for key, val in detail.items() if key != "q"}})
            if detail["matched"]:
                return _finish("Uq2", {"q": detail["q"]}, None, trace, tol)
        return _finish("Torus", {}, None, trace, tol)

    if count == 2:
        pair = next((l, n) for (l, n) in CHAR_PAIRS
                    if abs(inv.char_constants[(l, n)] - 1.0) <= tol)
        l0, n0 = pair
        sigma = (complement(l0, n0), l0, n0)
        trace.append({
            "step": "relabel_char_pair",
            "pair": [l0, n0],
            "sigma": list(sigma),
            "note": "heuristic-grade: two-block test decides between the two possible outcomes",
        })
        relabeled = normalize(permute_and_scale(an, sigma, an.entry(*sigma)))
        detail = _uq2_match_detail(relabeled, 1)
        trace.append({"step": "uq2_match", "singleton": 1, **{
            key: val for key, val in detail.items() if key != "q"}})
        if detail["matched"]:
            return _finish("Uq2", {"q": detail["q"]}, None, trace, tol)
        return _finish("Torus", {}, None, trace, tol)

    # count == 6
    sol = case3_solve(an)
    trace.append({"step": "closed_form_match", "case": sol.case, "p": _cpair(sol.p),
                  "m": sol.m, "matches": [list(t) for t in sol.matches]})
    family, params, alias = reduce_case3(sol.case, sol.p, sol.m, tol)
    return _finish(family, params, alias, trace, tol)
