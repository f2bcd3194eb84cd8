"""Known exceptional non-CM mod-ell images, CM image selection, class numbers.

The exceptional images ship in ``data/table1.txt``. Rows for ell = 2 are
kept in the file for completeness; everything here works with odd primes
only, so the loader skips them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import gcd

from .indexsets import ImageKind
from .matgroup import Mat2, MatGroup, closure
from .modarith import _check_odd_prime, legendre, make_ctx

CM_DISCRIMINANTS = (3, 4, 7, 8, 11, 19, 43, 67, 163)
CLASS_NUMBER_ONE = frozenset({3, 7, 11, 19, 43, 67, 163})
CATALOG_PRIMES = (3, 5, 7, 11, 13, 17, 37)


class CatalogError(ValueError):
    """The embedded data file is malformed or inconsistent."""


@dataclass(frozen=True)
class ExceptionalRecord:
    ell: int
    index_in_gl2: int
    generators: tuple[Mat2, ...]

    @property
    def order(self) -> int:
        return make_ctx(self.ell).gl2_order // self.index_in_gl2

    def group(self) -> MatGroup:
        G = closure(make_ctx(self.ell), self.generators,
                    name=f"Excep({self.ell}, index {self.index_in_gl2})")
        if G.order * self.index_in_gl2 != make_ctx(self.ell).gl2_order:
            raise CatalogError(f"record {self}: generated group has order {G.order}, "
                               f"expected {self.order}")
        return G

    def __str__(self) -> str:
        gens = ";".join("{},{},{},{}".format(g.a, g.b, g.c, g.d) for g in self.generators)
        return f"{self.ell} {self.index_in_gl2} {gens}"


def parse_catalog(text: str) -> list[tuple[int, int, list[tuple[int, int, int, int]]]]:
    """Parse the data-file format into raw ``(ell, index, generator tuples)`` rows."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise CatalogError(f"line {lineno}: expected 3 fields, got {len(parts)}")
        try:
            ell, index = int(parts[0]), int(parts[1])
            gens = [] if parts[2] == "-" else [
                tuple(int(x) for x in g.split(",")) for g in parts[2].split(";")]
        except ValueError as exc:
            raise CatalogError(f"line {lineno}: {exc}") from None
        if any(len(g) != 4 for g in gens):
            raise CatalogError(f"line {lineno}: a generator needs four entries")
        rows.append((ell, index, gens))
    return rows


@lru_cache(maxsize=None)
def _load() -> tuple[ExceptionalRecord, ...]:
    text = resources.files("gl2degrees").joinpath("data/table1.txt").read_text()
    out = []
    for ell, index, gens in parse_catalog(text):
        if ell == 2:
            continue
        if ell not in CATALOG_PRIMES:
            raise CatalogError(f"unexpected prime {ell} in catalog")
        order = make_ctx(ell).gl2_order
        if order % index:
            raise CatalogError(f"index {index} does not divide |GL2({ell})|")
        out.append(ExceptionalRecord(ell, index, tuple(Mat2(*g, ell) for g in gens)))
    return tuple(out)


def all_records() -> list[ExceptionalRecord]:
    return list(_load())


def exceptional_groups(ell: int) -> list[ExceptionalRecord]:
    """Catalog records at ``ell`` (possibly none)."""
    _check_odd_prime(ell)
    return [r for r in _load() if r.ell == ell]


@lru_cache(maxsize=None)
def exceptional_images(ell: int) -> tuple[MatGroup, ...]:
    """The generated groups of the catalog records at ``ell`` (cached)."""
    return tuple(r.group() for r in exceptional_groups(ell))


def cm_legendre_vector(ell: int) -> tuple[int, ...]:
    return tuple(legendre(-D, ell) for D in CM_DISCRIMINANTS)


def pq_membership(ell: int) -> tuple[bool, bool]:
    """(every -D is a nonzero square mod ell, every -D is a nonsquare mod ell)."""
    vec = cm_legendre_vector(ell)
    return all(v == 1 for v in vec), all(v == -1 for v in vec)


@dataclass(frozen=True)
class CmProfile:
    ell: int
    in_P: bool
    in_Q: bool
    class_number_one: bool
    image_kinds: frozenset[ImageKind]


def cm_profile(ell: int) -> CmProfile:
    """Which images a CM curve with rational j (not 0, 1728) can have mod ell."""
    _check_odd_prime(ell)
    in_p, in_q = pq_membership(ell)
    h1 = ell in CLASS_NUMBER_ONE
    if h1:
        kinds = {ImageKind.Ns, ImageKind.Nns, ImageKind.BorelTrio}
    elif in_p:
        kinds = {ImageKind.Ns}
    elif in_q:
        kinds = {ImageKind.Nns}
    else:
        kinds = {ImageKind.Ns, ImageKind.Nns}
    return CmProfile(ell, in_p, in_q, h1, frozenset(kinds))


def class_number(ell: int) -> int:
    """Class number of Q(sqrt(-ell)) for a prime ell = 3 mod 4, counting
    reduced primitive forms a x^2 + b xy + c y^2 of discriminant -ell."""
    _check_odd_prime(ell)
    if ell % 4 != 3:
        raise ValueError(f"class_number needs ell = 3 mod 4, got {ell}")
    disc = -ell
    h = 0
    a = 1
    while 3 * a * a <= ell:
        for b in range(-a + 1, a + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h
