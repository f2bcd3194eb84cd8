"""The standard subgroups of GL2(Z/ell) and classification predicates.

Conjugacy into a standard subgroup is decided geometrically, from the
action of a group's generators on the projective line:

* split Cartans are pointwise stabilizers of two distinct points of
  P^1(F_l), their normalizers the stabilizers of the unordered pair;
* nonsplit Cartans are stabilizers of a point of P^1(F_{l^2}) \\ P^1(F_l),
  their normalizers the stabilizers of a Galois-conjugate pair;
* a group lies in a conjugate of the ramified Cartan iff its image in
  PGL2 has order 1 or ell.

``conj_into_bruteforce`` searches all of GL2 and serves as the oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .matgroup import (Mat2, MatGroup, decode, encode, full_gl2, gl2_codes,
                       inv_codes, mul_codes)
from .modarith import PrimeCtx, make_ctx


class StandardKind(enum.Enum):
    Z = "Z"
    Cs = "Cs"
    Cns = "Cns"
    Ns = "Ns"
    Nns = "Nns"
    Cr = "Cr"
    Borel = "Borel"
    Full = "Full"

    def __str__(self) -> str:
        return self.value


FIVE = (StandardKind.Z, StandardKind.Cs, StandardKind.Cns, StandardKind.Ns, StandardKind.Nns)
SIX = FIVE + (StandardKind.Cr,)

# strict containments among the five (the inclusion diagram)
BELOW = {
    StandardKind.Z: (),
    StandardKind.Cs: (StandardKind.Z,),
    StandardKind.Cns: (StandardKind.Z,),
    StandardKind.Ns: (StandardKind.Cs, StandardKind.Z),
    StandardKind.Nns: (StandardKind.Cns, StandardKind.Z),
    StandardKind.Cr: (StandardKind.Z,),
}


def kind(name) -> StandardKind:
    if isinstance(name, StandardKind):
        return name
    aliases = {"C_s": "Cs", "C_ns": "Cns", "N_s": "Ns", "N_ns": "Nns", "C_r": "Cr",
               "B": "Borel", "GL2": "Full"}
    return StandardKind(aliases.get(name, name))


# ---------------------------------------------------------------------------
# canonical groups


def _group(ctx: PrimeCtx, rows, gens, name: str) -> MatGroup:
    ell = ctx.ell
    codes = np.array([encode(a % ell, b % ell, c % ell, d % ell, ell) for a, b, c, d in rows],
                     dtype=np.int64)
    return MatGroup(ctx, codes, [Mat2(*g, ell) for g in gens], name=name)


def _cns_generator(ctx: PrimeCtx) -> tuple[int, int, int, int]:
    ell, eps = ctx.ell, ctx.epsilon
    target = ell * ell - 1
    for x in range(ell):
        for y in range(1, ell):
            if Mat2(x, eps * y, y, x, ell).order() == target:
                return (x, eps * y, y, x)
    raise AssertionError("no generator of the nonsplit Cartan")


@dataclass(frozen=True)
class CanonicalGroups:
    """The named subgroups of GL2(Z/ell), built from explicit element formulas."""

    ctx: PrimeCtx

    @property
    def ell(self) -> int:
        return self.ctx.ell

    @cached_property
    def Z(self) -> MatGroup:
        ell, al = self.ell, self.ctx.alpha
        return _group(self.ctx, [(x, 0, 0, x) for x in range(1, ell)], [(al, 0, 0, al)], "Z")

    @cached_property
    def Cs(self) -> MatGroup:
        ell, al = self.ell, self.ctx.alpha
        rows = [(x, 0, 0, y) for x in range(1, ell) for y in range(1, ell)]
        return _group(self.ctx, rows, [(al, 0, 0, 1), (1, 0, 0, al)], "Cs")

    @cached_property
    def Cns(self) -> MatGroup:
        ell, eps = self.ell, self.ctx.epsilon
        rows = [(x, eps * y, y, x) for x in range(ell) for y in range(ell) if (x, y) != (0, 0)]
        return _group(self.ctx, rows, [_cns_generator(self.ctx)], "Cns")

    @cached_property
    def Ns(self) -> MatGroup:
        ell, al = self.ell, self.ctx.alpha
        rows = [(x, 0, 0, y) for x in range(1, ell) for y in range(1, ell)]
        rows += [(0, x, y, 0) for x in range(1, ell) for y in range(1, ell)]
        return _group(self.ctx, rows, [(al, 0, 0, 1), (1, 0, 0, al), (0, 1, 1, 0)], "Ns")

    @cached_property
    def Nns(self) -> MatGroup:
        ell, eps = self.ell, self.ctx.epsilon
        pairs = [(x, y) for x in range(ell) for y in range(ell) if (x, y) != (0, 0)]
        rows = [(x, eps * y, y, x) for x, y in pairs] + [(x, -eps * y, y, -x) for x, y in pairs]
        return _group(self.ctx, rows, [_cns_generator(self.ctx), (1, 0, 0, -1)], "Nns")

    @cached_property
    def Cr(self) -> MatGroup:
        ell, al = self.ell, self.ctx.alpha
        rows = [(a, b, 0, a) for a in range(1, ell) for b in range(ell)]
        return _group(self.ctx, rows, [(al, 0, 0, al), (1, 1, 0, 1)], "Cr")

    @cached_property
    def Borel(self) -> MatGroup:
        ell, al = self.ell, self.ctx.alpha
        rows = [(a, b, 0, d) for a in range(1, ell) for b in range(ell) for d in range(1, ell)]
        return _group(self.ctx, rows, [(al, 0, 0, 1), (1, 0, 0, al), (1, 1, 0, 1)], "B")

    @cached_property
    def Full(self) -> MatGroup:
        return full_gl2(self.ctx)

    @cached_property
    def G(self) -> MatGroup:
        ell, al = self.ell, self.ctx.alpha
        rows = [(a, b, 0, s * a) for a in range(1, ell) for b in range(ell) for s in (1, -1)]
        return _group(self.ctx, rows, [(al, 0, 0, al), (1, 1, 0, 1), (1, 0, 0, -1)], "G")

    @cached_property
    def H1(self) -> MatGroup:
        ell, al = self.ell, self.ctx.alpha
        sq = sorted({a * a % ell for a in range(1, ell)})
        rows = [(a, b, 0, s * a) for a in sq for b in range(ell) for s in (1, -1)]
        return _group(self.ctx, rows, [(al * al, 0, 0, al * al), (1, 1, 0, 1), (1, 0, 0, -1)], "H1")

    @cached_property
    def H2(self) -> MatGroup:
        ell, al = self.ell, self.ctx.alpha
        sq = sorted({a * a % ell for a in range(1, ell)})
        rows = [(s * a, b, 0, a) for a in sq for b in range(ell) for s in (1, -1)]
        return _group(self.ctx, rows, [(al * al, 0, 0, al * al), (1, 1, 0, 1), (-1, 0, 0, 1)], "H2")

    def get(self, k) -> MatGroup:
        if isinstance(k, str) and k in ("G", "H1", "H2"):
            return getattr(self, k)
        return getattr(self, kind(k).value)

    def borel_trio(self) -> tuple[MatGroup, MatGroup, MatGroup]:
        return (self.G, self.H1, self.H2)


@lru_cache(maxsize=None)
def build_canonical(ctx: PrimeCtx | int) -> CanonicalGroups:
    ctx = make_ctx(ctx) if isinstance(ctx, int) else ctx
    return CanonicalGroups(ctx)


# ---------------------------------------------------------------------------
# action on the projective line


@lru_cache(maxsize=1 << 16)
def _line_perm(code: int, ell: int) -> np.ndarray:
    """Permutation of P^1(F_l); point x < ell is [x:1], point ell is [1:0]."""
    a, b, c, d = (int(t) for t in decode(np.int64(code), ell))
    out = np.empty(ell + 1, dtype=np.int64)
    for x in range(ell):
        num, den = (a * x + b) % ell, (c * x + d) % ell
        out[x] = ell if den == 0 else num * pow(den, -1, ell) % ell
    out[ell] = ell if c == 0 else a * pow(c, -1, ell) % ell
    return out


@lru_cache(maxsize=1 << 16)
def _omega_perm(code: int, ell: int, eps: int) -> np.ndarray:
    """Permutation of F_{l^2} \\ F_l = {u + v*s : v != 0}, s^2 = eps,
    indexed by u*ell + v (entries with v = 0 are unused)."""
    a, b, c, d = (int(t) for t in decode(np.int64(code), ell))
    u, v = np.divmod(np.arange(ell * ell, dtype=np.int64), ell)
    n0, n1 = (a * u + b) % ell, (a * v) % ell
    d0, d1 = (c * u + d) % ell, (c * v) % ell
    norm = (d0 * d0 - eps * d1 * d1) % ell
    inv = np.array([0] + [pow(t, -1, ell) for t in range(1, ell)], dtype=np.int64)[norm]
    r0 = (n0 * d0 - eps * n1 * d1) * inv % ell
    r1 = (n1 * d0 - n0 * d1) * inv % ell
    out = r0 * ell + r1
    out[v == 0] = np.arange(ell * ell)[v == 0]
    return out


def _omega_conj(ell: int) -> np.ndarray:
    u, v = np.divmod(np.arange(ell * ell, dtype=np.int64), ell)
    return u * ell + (-v % ell)


def _gen_codes(H: MatGroup) -> list[int]:
    return [int(c) for c in H.gen_codes]


def fixed_lines(H: MatGroup) -> np.ndarray:
    """Points of P^1(F_l) fixed by every element of H."""
    ell = H.ell
    keep = np.ones(ell + 1, dtype=bool)
    for c in _gen_codes(H):
        keep &= _line_perm(c, ell) == np.arange(ell + 1)
    return np.nonzero(keep)[0]


def _has_stable_line_pair(H: MatGroup) -> bool:
    ell = H.ell
    gens = _gen_codes(H)
    if not gens:
        return True
    P = np.stack([_line_perm(c, ell) for c in gens])
    pts = np.arange(ell + 1)
    moved = P != pts
    if (~moved.any(axis=0)).sum() >= 2:
        return True
    cols = np.nonzero(moved.any(axis=0))[0]
    first = moved[:, cols].argmax(axis=0)
    q = P[first, cols]
    ok = np.ones(len(cols), dtype=bool)
    for row in P:
        ok &= (row[cols] == cols) | (row[cols] == q)
        ok &= (row[q] == cols) | (row[q] == q)
    return bool(ok.any())


def _omega_condition(H: MatGroup, allow_swap: bool) -> bool:
    ell, eps = H.ell, H.ctx.epsilon
    gens = _gen_codes(H)
    if not gens:
        return True
    v = np.arange(ell * ell) % ell
    live = v != 0
    pts = np.arange(ell * ell)
    conj = _omega_conj(ell)
    for c in gens:
        img = _omega_perm(c, ell, eps)
        good = img == pts
        if allow_swap:
            good |= img == conj
        live &= good
    return bool(live.any())


def scalar_count(H: MatGroup) -> int:
    a, b, c, d = decode(H.codes, H.ell)
    return int(np.count_nonzero((b == 0) & (c == 0) & (a == d)))


def projective_order(H: MatGroup) -> int:
    """Order of the image of H in PGL2."""
    return H.order // scalar_count(H)


def conj_into(H: MatGroup, M) -> bool:
    """True iff some GL2-conjugate of H lies in the standard subgroup M."""
    M = kind(M)
    ell = H.ell
    if M is StandardKind.Full:
        return True
    if M is StandardKind.Z:
        return all(Mat2.from_code(c, ell).is_scalar() for c in _gen_codes(H))
    if M is StandardKind.Cs:
        return len(fixed_lines(H)) >= 2
    if M is StandardKind.Borel:
        return len(fixed_lines(H)) >= 1
    if M is StandardKind.Cns:
        return _omega_condition(H, allow_swap=False)
    if M is StandardKind.Ns:
        return _has_stable_line_pair(H)
    if M is StandardKind.Nns:
        return _omega_condition(H, allow_swap=True)
    if M is StandardKind.Cr:
        return projective_order(H) in (1, ell)
    raise ValueError(f"unknown kind {M}")


def conj_into_bruteforce(H: MatGroup, M, canon: CanonicalGroups | None = None,
                         _gl2: dict = {}) -> bool:
    """Oracle: search every g in GL2 for g H g^-1 inside the canonical M."""
    M = kind(M)
    ell = H.ell
    canon = canon or build_canonical(H.ctx)
    target = canon.get(M)
    gens = H.gen_codes
    if not len(gens):
        return True
    if ell not in _gl2:
        g = gl2_codes(ell)
        _gl2[ell] = (g, inv_codes(g, ell))
    g, ginv = _gl2[ell]
    live = np.ones(len(g), dtype=bool)
    for h in gens:
        idx = np.nonzero(live)[0]
        c = mul_codes(mul_codes(g[idx], np.int64(h), ell), ginv[idx], ell)
        live[idx] = np.isin(c, target.codes)
        if not live.any():
            return False
    return True


def belongs_to(H: MatGroup, M) -> bool:
    """H is conjugate into M but into no smaller standard subgroup below M.

    Accepts Z, Cs, Cns, Ns, Nns, and Cr (for which only Z counts as
    smaller). Borel and Full have no such notion.
    """
    M = kind(M)
    if M not in BELOW:
        raise ValueError(f"'belongs to' is not defined for {M}")
    if M is StandardKind.Cr:
        return belongs_to_cr(H)
    return conj_into(H, M) and not any(conj_into(H, low) for low in BELOW[M])


def belongs_to_cr(H: MatGroup) -> bool:
    return projective_order(H) == H.ell


# ---------------------------------------------------------------------------
# Dickson's classification


class DicksonClass(enum.Enum):
    BorelWithEllElement = "borel"
    ContainsSL2 = "contains-sl2"
    CartanCyclicImage = "cartan"
    NormalizerDihedralImage = "normalizer"
    ExceptionalA4S4A5 = "exceptional"


def dickson_class(H: MatGroup) -> DicksonClass:
    ell = H.ell
    if H.order % ell == 0:
        a, b, c, d = decode(H.codes, ell)
        det_one = int(np.count_nonzero((a * d - b * c) % ell == 1))
        if det_one == ell * (ell * ell - 1):
            return DicksonClass.ContainsSL2
        return DicksonClass.BorelWithEllElement
    if conj_into(H, StandardKind.Cs) or conj_into(H, StandardKind.Cns):
        return DicksonClass.CartanCyclicImage
    if conj_into(H, StandardKind.Ns) or conj_into(H, StandardKind.Nns):
        return DicksonClass.NormalizerDihedralImage
    return DicksonClass.ExceptionalA4S4A5


def projective_image(H: MatGroup) -> np.ndarray:
    """Codes of the elements of H scaled so their first nonzero entry is 1;
    distinct codes are distinct elements of PGL2."""
    ell = H.ell
    a, b, c, d = decode(H.codes, ell)
    lead = np.where(a != 0, a, b)
    inv = np.array([0] + [pow(t, -1, ell) for t in range(1, ell)], dtype=np.int64)[lead]
    return np.unique(encode(a * inv % ell, b * inv % ell, c * inv % ell, d * inv % ell, ell))


def projective_element_orders(H: MatGroup) -> np.ndarray:
    """Order in PGL2 of each element of H (aligned with ``H.codes``)."""
    ell = H.ell
    codes = H.codes
    out = np.zeros(len(codes), dtype=np.int64)
    power = codes.copy()
    for k in range(1, ell + 2):
        a, b, c, d = decode(power, ell)
        hit = (out == 0) & (b == 0) & (c == 0) & (a == d)
        out[hit] = k
        if (out > 0).all():
            return out
        power = mul_codes(power, codes, ell)
    raise AssertionError("PGL2 element order exceeds ell + 1")


def dickson_property_holds(H: MatGroup, cls: DicksonClass) -> bool:
    """Check the defining property of a Dickson class directly on H."""
    ell = H.ell
    has_ell = H.order % ell == 0
    n = projective_order(H)
    orders = projective_element_orders(H)
    cyclic = int(orders.max()) == n
    # dihedral of order n (n >= 4): a cyclic subgroup of index 2 and at
    # least n/2 involutions; the Klein four-group counts as dihedral
    involutions = int(np.count_nonzero(orders == 2)) // scalar_count(H)
    dihedral = (n >= 4 and not cyclic and int(orders.max()) * 2 == n
                and 2 * involutions >= n)
    if cls is DicksonClass.ContainsSL2:
        a, b, c, d = decode(H.codes, ell)
        return int(np.count_nonzero((a * d - b * c) % ell == 1)) == ell * (ell * ell - 1)
    if cls is DicksonClass.BorelWithEllElement:
        return has_ell and conj_into(H, StandardKind.Borel)
    if has_ell:
        return False
    if cls is DicksonClass.CartanCyclicImage:
        return cyclic and (conj_into(H, StandardKind.Cs) or conj_into(H, StandardKind.Cns))
    if cls is DicksonClass.NormalizerDihedralImage:
        return (dihedral and (conj_into(H, StandardKind.Ns) or conj_into(H, StandardKind.Nns))
                and not (conj_into(H, StandardKind.Cs) or conj_into(H, StandardKind.Cns)))
    if cls is DicksonClass.ExceptionalA4S4A5:
        return (n in (12, 24, 60) and not cyclic and not dihedral
                and not (conj_into(H, StandardKind.Ns) or conj_into(H, StandardKind.Nns)))
    raise ValueError(f"unknown class {cls}")
