"""Index sets of subgroups and the Delta-set notation used to print them.

``Delta(L, U)`` is the set of n with r | n | s for some r in L and s in U,
optionally minus a finite set of exclusions. Brute-force index sets come
from full subgroup enumeration; the closed forms below give the same
sets for the full group, the two Cartan normalizers, and the Borel-type
CM images, for every odd prime.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .matgroup import MatGroup, all_subgroups, decode, fixes_nonzero_vector
from .modarith import _check_odd_prime, divisors, nu2, prime_profile
from .standard import (BELOW, StandardKind, build_canonical, conj_into, kind,
                       projective_order)


class ImageKind(enum.Enum):
    GL2 = "GL2"
    Ns = "Ns"
    Nns = "Nns"
    BorelTrio = "BorelTrio"
    Exceptional = "Exceptional"

    def __str__(self) -> str:
        return self.value


# ---------------------------------------------------------------------------
# divisibility helpers


def div_min(S: Iterable[int]) -> set[int]:
    """Elements of S with no proper divisor in S."""
    S = sorted(set(S))
    out: list[int] = []
    for n in S:
        if not any(n % m == 0 for m in out):
            out.append(n)
    return set(out)


def div_max(S: Iterable[int]) -> set[int]:
    """Elements of S with no proper multiple in S."""
    S = sorted(set(S), reverse=True)
    out: list[int] = []
    for n in S:
        if not any(m % n == 0 for m in out):
            out.append(n)
    return set(out)


def _expand(lower: Iterable[int], upper: Iterable[int]) -> set[int]:
    lower = sorted(set(lower))
    out: set[int] = set()
    for s in set(upper):
        for n in divisors(s):
            if any(n % r == 0 for r in lower):
                out.add(n)
    return out


@dataclass(frozen=True)
class DeltaSet:
    """``Delta(lower, upper)`` minus ``exclude``."""

    lower: tuple[int, ...]
    upper: tuple[int, ...]
    exclude: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for name in ("lower", "upper", "exclude"):
            vals = tuple(sorted(set(int(v) for v in getattr(self, name))))
            if any(v < 1 for v in vals):
                raise ValueError(f"{name} must hold positive integers")
            object.__setattr__(self, name, vals)
        if not self.lower or not self.upper:
            raise ValueError("Delta needs nonempty lower and upper sets")
        if self.exclude:
            full = _expand(self.lower, self.upper)
            dead = set(self.exclude) - full
            if dead:
                raise ValueError(f"excluded values {sorted(dead)} are not members anyway")

    @classmethod
    def from_set(cls, S: Iterable[int]) -> "DeltaSet | None":
        """Shortest description of a finite set: its div-minima, its
        div-maxima, and whatever in between is missing. ``None`` for the
        empty set."""
        S = set(S)
        if not S:
            return None
        lo, hi = div_min(S), div_max(S)
        return cls(tuple(lo), tuple(hi), tuple(_expand(lo, hi) - S))

    @cached_property
    def values(self) -> frozenset[int]:
        return frozenset(_expand(self.lower, self.upper) - set(self.exclude))

    def expand(self) -> set[int]:
        return set(self.values)

    def member(self, n: int) -> bool:
        return n in self.values

    def to_json(self) -> dict:
        return {"lower": list(self.lower), "upper": list(self.upper), "exclude": list(self.exclude)}

    def __str__(self) -> str:
        core = "Δ({}∣{})".format(",".join(map(str, self.lower)), ",".join(map(str, self.upper)))
        if self.exclude:
            core += "∖{" + ",".join(map(str, self.exclude)) + "}"
        return core


def delta(L: Iterable[int], U: Iterable[int]) -> DeltaSet:
    return DeltaSet(tuple(L), tuple(U))


EMPTY_TEXT = "∅"


@dataclass(frozen=True)
class IndexSet:
    """A finite set of indices, with an optional symbolic Delta form."""

    values: frozenset[int]
    provenance: str
    delta: DeltaSet | None = field(default=None, compare=False)

    @classmethod
    def from_delta(cls, d: DeltaSet | None, provenance: str = "formula") -> "IndexSet":
        if d is None:
            return cls(frozenset(), provenance, None)
        return cls(d.values, provenance, d)

    @classmethod
    def from_values(cls, vals: Iterable[int], provenance: str = "bruteforce") -> "IndexSet":
        vals = frozenset(vals)
        return cls(vals, provenance, DeltaSet.from_set(vals))

    def expand(self) -> set[int]:
        return set(self.values)

    def __str__(self) -> str:
        return str(self.delta) if self.delta is not None else EMPTY_TEXT

    def to_json(self):
        return self.delta.to_json() if self.delta is not None else None


def render_set(S: Iterable[int]) -> str:
    """A set in Delta notation, or the empty-set sign."""
    d = DeltaSet.from_set(S)
    return str(d) if d is not None else EMPTY_TEXT


# ---------------------------------------------------------------------------
# brute force


@dataclass(frozen=True)
class SubgroupProfile:
    """What the index-set computations need to know about one subgroup."""

    index: int
    conj: dict
    proj_order: int
    fixes_vector: bool
    twist_fixes_vector: bool

    def belongs(self, M: StandardKind, ell: int) -> bool:
        if M is StandardKind.Cr:
            return self.proj_order == ell
        return self.conj[M] and not any(self.conj[low] for low in BELOW[M])


def twist_fixes_vector(H: MatGroup) -> bool:
    """True iff some twist of H fixes a nonzero vector.

    Equivalently, some line is mapped to itself by H with every element
    acting on it by +1 or -1; the kernel of that sign character inside
    <H, -1> is then a twist fixing the line pointwise.
    """
    ell = H.ell
    gens = H.gen_codes
    x = np.concatenate([np.arange(ell), [1]])
    y = np.concatenate([np.ones(ell, dtype=np.int64), [0]])
    ok = np.ones(ell + 1, dtype=bool)
    for c in gens:
        a, b, cc, d = (int(t) for t in decode(np.int64(c), ell))
        u, v = (a * x + b * y) % ell, (cc * x + d * y) % ell
        plus = (u == x) & (v == y)
        minus = (u == (-x) % ell) & (v == (-y) % ell)
        ok &= plus | minus
    return bool(ok.any())


_PROFILE_CACHE: dict[bytes, list[SubgroupProfile]] = {}


def subgroup_profiles(G: MatGroup, budget: int | None = None) -> list[SubgroupProfile]:
    """Profiles of every subgroup of G (cached by G's element set)."""
    key = G.key + G.ell.to_bytes(4, "little")
    if key not in _PROFILE_CACHE:
        out = []
        for H in all_subgroups(G, budget=budget):
            conj = {M: conj_into(H, M) for M in (StandardKind.Z, StandardKind.Cs, StandardKind.Cns,
                                                 StandardKind.Ns, StandardKind.Nns)}
            out.append(SubgroupProfile(G.order // H.order, conj, projective_order(H),
                                       fixes_nonzero_vector(H), twist_fixes_vector(H)))
        _PROFILE_CACHE[key] = out
    return _PROFILE_CACHE[key]


def index_set_bruteforce(G: MatGroup | Iterable[MatGroup], M, budget: int | None = None) -> IndexSet:
    """Indices [G:H] over subgroups H belonging to M (union over several G)."""
    M = kind(M)
    if M not in BELOW:
        raise ValueError(f"'belongs to' is not defined for {M}")
    groups = [G] if isinstance(G, MatGroup) else list(G)
    vals = set()
    for g in groups:
        vals |= {p.index for p in subgroup_profiles(g, budget) if p.belongs(M, g.ell)}
    return IndexSet.from_values(vals)


def torsion_index_set(G: MatGroup | Iterable[MatGroup], mode: str = "twisted",
                      budget: int | None = None) -> IndexSet:
    """Indices of subgroups fixing a nonzero vector (``strict``) or having
    a twist that does (``twisted``)."""
    if mode not in ("twisted", "strict"):
        raise ValueError(f"mode must be 'twisted' or 'strict', got {mode!r}")
    groups = [G] if isinstance(G, MatGroup) else list(G)
    vals = set()
    for g in groups:
        for p in subgroup_profiles(g, budget):
            if (p.twist_fixes_vector if mode == "twisted" else p.fixes_vector):
                vals.add(p.index)
    return IndexSet.from_values(vals)


def image_groups(image: ImageKind, ell: int) -> list[MatGroup]:
    """The concrete group(s) standing for a non-exceptional image kind."""
    c = build_canonical(ell)
    if image is ImageKind.GL2:
        return [c.Full]
    if image is ImageKind.Ns:
        return [c.Ns]
    if image is ImageKind.Nns:
        return [c.Nns]
    if image is ImageKind.BorelTrio:
        return list(c.borel_trio())
    raise ValueError(f"no canonical group for {image}")


# ---------------------------------------------------------------------------
# closed forms


def _image(k) -> ImageKind:
    return k if isinstance(k, ImageKind) else ImageKind(k)


def _mod4_q(n: int) -> int:
    return 4 if n % 4 == 0 else 2


def index_set_formula(image, M, ell: int) -> IndexSet:
    """Closed-form index set for a non-exceptional image and standard M."""
    _check_odd_prime(ell)
    image, M = _image(image), kind(M)
    l = ell
    gl = l * (l + 1) * (l - 1) ** 2
    pi_m, pi_odd_m = prime_profile(l - 1)
    _, pi_odd_p = prime_profile(l + 1)
    two_cns = 2 ** (nu2(l - 1) + 1)
    S = StandardKind
    table = {
        (ImageKind.GL2, S.Z): ([l * (l + 1) * (l - 1)], [gl]),
        (ImageKind.GL2, S.Cs): ([l * (l + 1)], [gl // q for q in pi_m]),
        (ImageKind.GL2, S.Cns): ([l * (l - 1)], [gl // q for q in set(pi_odd_p) | {two_cns}]),
        (ImageKind.GL2, S.Ns): ([l * (l + 1) // 2],
                                [gl // (2 * q) for q in set(pi_odd_m) | {_mod4_q(l - 1)}]),
        (ImageKind.GL2, S.Nns): ([l * (l - 1) // 2], [gl // 2]),
        (ImageKind.GL2, S.Cr): ([l * l - 1], [(l + 1) * (l - 1) ** 2]),
        (ImageKind.Ns, S.Z): ([2 * (l - 1)], [2 * (l - 1) ** 2]),
        (ImageKind.Ns, S.Cs): ([2], [2 * (l - 1) ** 2 // q for q in pi_m]),
        (ImageKind.Ns, S.Cns): ([l - 1], [(l - 1) ** 2 // 2 ** nu2(l - 1)]),
        (ImageKind.Ns, S.Ns): ([1], [(l - 1) ** 2 // q for q in set(pi_odd_m) | {_mod4_q(l - 1)}]),
        (ImageKind.Ns, S.Nns): ([(l - 1) // 2], [(l - 1) ** 2]),
        (ImageKind.Ns, S.Cr): None,
        (ImageKind.Nns, S.Z): ([2 * (l + 1)], [2 * (l * l - 1)]),
        (ImageKind.Nns, S.Cs): ([l + 1], [l * l - 1]),
        (ImageKind.Nns, S.Cns): ([2], [2 * (l * l - 1) // q for q in set(pi_odd_p) | {two_cns}]),
        (ImageKind.Nns, S.Ns): ([(l + 1) // 2], [(l * l - 1) // 2 ** nu2(l - 1)]),
        (ImageKind.Nns, S.Nns): ([1], [l * l - 1]),
        (ImageKind.Nns, S.Cr): None,
        (ImageKind.BorelTrio, S.Z): ([2 * l], [2 * l * (l - 1)]),
        (ImageKind.BorelTrio, S.Cs): ([l], [l * (l - 1)]),
        (ImageKind.BorelTrio, S.Cns): None,
        (ImageKind.BorelTrio, S.Ns): None,
        (ImageKind.BorelTrio, S.Nns): ([l], [l * (l - 1)]),
        (ImageKind.BorelTrio, S.Cr): ([2], [2 * (l - 1)]),
    }
    if (image, M) not in table:
        raise ValueError(f"no closed form for image {image} and kind {M}")
    entry = table[(image, M)]
    return IndexSet.from_delta(None if entry is None else DeltaSet(*entry), "formula")


def torsion_divmin_formula(image, mode: str, ell: int) -> set[int]:
    """Div-minima of the torsion index set for a non-exceptional image."""
    _check_odd_prime(ell)
    image = _image(image)
    if mode not in ("twisted", "strict"):
        raise ValueError(f"mode must be 'twisted' or 'strict', got {mode!r}")
    l = ell
    twisted = mode == "twisted"
    if image is ImageKind.GL2 or image is ImageKind.Nns:
        return {(l * l - 1) // 2 if twisted else l * l - 1}
    if image is ImageKind.Ns:
        return {l - 1 if twisted else 2 * (l - 1)}
    if image is ImageKind.BorelTrio:
        if l % 4 != 3:
            raise ValueError("the Borel-type torsion minima are only known for ell = 3 mod 4")
        return {(l - 1) // 2}
    raise ValueError(f"no closed form for image {image}")
