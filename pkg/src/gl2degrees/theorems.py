"""Degree sets for elliptic curves with rational j-invariant (not 0, 1728).

For a standard subgroup M, ``assemble_E`` gives the degrees d of subfields
of the ell-torsion field over which the mod-ell image belongs to M. From
it come the minimal degrees ``S_M``, the abelian-subextension degrees
``K_set``, and the minimal degrees ``T_set`` of fields over which a curve
acquires a point of order ell. CM images use closed forms; non-CM images
combine the full group's closed form with brute force over the catalog.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .catalog import class_number, cm_profile, exceptional_images
from .indexsets import (ImageKind, div_min, index_set_bruteforce, index_set_formula,
                        torsion_divmin_formula, torsion_index_set)
from .modarith import _check_odd_prime
from .standard import SIX, StandardKind, kind


class CurveFilter(enum.Enum):
    any = "any"
    cm = "cm"
    non_cm = "non_cm"

    def __str__(self) -> str:
        return self.value


def _filter(f) -> CurveFilter:
    return f if isinstance(f, CurveFilter) else CurveFilter(f)


TORSION_MODES = {"rational_j": "twisted", "over_Q": "strict"}


def _torsion_mode(mode: str) -> str:
    if mode not in TORSION_MODES:
        raise ValueError(f"mode must be one of {sorted(TORSION_MODES)}, got {mode!r}")
    return TORSION_MODES[mode]


@lru_cache(maxsize=None)
def _E_cm(ell: int, M: StandardKind) -> frozenset[int]:
    out: set[int] = set()
    for image in cm_profile(ell).image_kinds:
        out |= index_set_formula(image, M, ell).values
    return frozenset(out)


@lru_cache(maxsize=None)
def _E_non_cm(ell: int, M: StandardKind) -> frozenset[int]:
    out = set(index_set_formula(ImageKind.GL2, M, ell).values)
    groups = exceptional_images(ell)
    if groups:
        out |= index_set_bruteforce(groups, M).values
    return frozenset(out)


def assemble_E(ell: int, M, filter="any") -> set[int]:
    """Indices of subgroups belonging to M, over the images allowed by ``filter``."""
    _check_odd_prime(ell)
    M, filter = kind(M), _filter(filter)
    if M not in SIX:
        raise ValueError(f"no degree set for {M}")
    out: set[int] = set()
    if filter is not CurveFilter.non_cm:
        out |= _E_cm(ell, M)
    if filter is not CurveFilter.cm:
        out |= _E_non_cm(ell, M)
    return out


def S_M(ell: int, M, filter="any") -> set[int]:
    return div_min(assemble_E(ell, M, filter))


def K_set(ell: int, filter="any") -> set[int]:
    """Exact degrees d of subfields K with Q(E[ell])/K abelian."""
    out: set[int] = set()
    for M in (StandardKind.Z, StandardKind.Cs, StandardKind.Cns, StandardKind.Cr):
        out |= assemble_E(ell, M, filter)
    return out


@lru_cache(maxsize=None)
def _T_cm(ell: int, tmode: str) -> frozenset[int]:
    out: set[int] = set()
    for image in cm_profile(ell).image_kinds:
        out |= torsion_divmin_formula(image, tmode, ell)
    return frozenset(div_min(out))


@lru_cache(maxsize=None)
def _T_non_cm(ell: int, tmode: str) -> frozenset[int]:
    out = set(torsion_divmin_formula(ImageKind.GL2, tmode, ell))
    groups = exceptional_images(ell)
    if groups:
        out |= torsion_index_set(groups, tmode).values
    return frozenset(div_min(out))


def T_set(ell: int, filter="any", mode: str = "rational_j") -> set[int]:
    """Minimal degrees over which a point of order ell appears.

    ``rational_j`` allows any curve over K with rational j (twists
    included); ``over_Q`` only base changes of curves over Q.
    """
    _check_odd_prime(ell)
    filter, tmode = _filter(filter), _torsion_mode(mode)
    out: set[int] = set()
    if filter is not CurveFilter.non_cm:
        out |= _T_cm(ell, tmode)
    if filter is not CurveFilter.cm:
        out |= _T_non_cm(ell, tmode)
    return div_min(out)


@dataclass(frozen=True)
class DegreeSets:
    ell: int
    filter: CurveFilter
    E: dict
    S: dict
    K: frozenset[int]
    T: frozenset[int]
    T_Q: frozenset[int]

    @classmethod
    def compute(cls, ell: int, filter="any") -> "DegreeSets":
        filter = _filter(filter)
        E = {M: frozenset(assemble_E(ell, M, filter)) for M in SIX}
        S = {M: frozenset(div_min(v)) for M, v in E.items()}
        return cls(ell, filter, E, S, frozenset(K_set(ell, filter)),
                   frozenset(T_set(ell, filter, "rational_j")), frozenset(T_set(ell, filter, "over_Q")))


def _witness(S: set[int], d: int) -> int | None:
    hits = [s for s in sorted(S) if d % s == 0]
    return hits[0] if hits else None


def _check_degree(d: int) -> None:
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"degree must be a positive integer, got {d!r}")


def thm1(ell: int, d: int, M, filter="any") -> tuple[bool, int | None]:
    """Is there a degree-d field over which the image belongs to M?
    Returns the verdict and the smallest dividing minimal degree."""
    _check_degree(d)
    M = kind(M)
    if M not in SIX[:5]:
        raise ValueError(f"thm1 takes Z, Cs, Cns, Ns or Nns; got {M}")
    w = _witness(S_M(ell, M, filter), d)
    return w is not None, w


def thm2(ell: int, d: int, filter="any") -> bool:
    """Is there a degree-d subfield K of Q(E[ell]) with Q(E[ell])/K abelian?"""
    _check_degree(d)
    return d in K_set(ell, filter)


def thm3(ell: int, d: int, filter="any", mode: str = "rational_j") -> tuple[bool, int | None]:
    """Is there a degree-d field over which a curve gains a point of order ell?"""
    _check_degree(d)
    w = _witness(T_set(ell, filter, mode), d)
    return w is not None, w


def cm_odd_degree_verdict(ell: int) -> tuple[int, str]:
    """For ell = 3 mod 4: the number h * (ell-1)/2 and whether all or none of
    its odd multiples are degrees of ell-torsion for CM curves."""
    _check_odd_prime(ell)
    if ell % 4 != 3:
        raise ValueError(f"needs ell = 3 mod 4, got {ell}")
    w = class_number(ell) * (ell - 1) // 2
    T = T_set(ell, "cm")
    if any(w % t == 0 for t in T):
        return w, "all"
    # an odd multiple of w is reachable only through an odd t
    if all(t % 2 == 0 for t in T):
        return w, "none"
    raise AssertionError(f"odd multiples of {w} split at ell={ell}")


# descriptive names for the short ones above
eligible_degrees = assemble_E
minimal_degrees = S_M
abelian_subextension_degrees = K_set
torsion_degrees = T_set
