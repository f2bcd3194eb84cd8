"""2x2 matrices over Z/ell, explicit finite matrix groups, and subgroup
enumeration.

Matrices act on column vectors from the left. Internally a matrix
``[[a, b], [c, d]]`` is encoded as the integer ``((a*l + b)*l + c)*l + d``;
groups hold sorted arrays of these codes so that membership, hashing and
set operations are cheap numpy operations.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .modarith import PrimeCtx, factorize, legendre, make_ctx

log = logging.getLogger(__name__)

BUDGET_ENV = "GL2DEGREES_BUDGET"
DEFAULT_BUDGET = 20000
# multiplication tables are built for frames up to this order
_TABLE_LIMIT = 2600


class BudgetExceeded(RuntimeError):
    """Raised when a group is too large for subgroup enumeration."""

    def __init__(self, order: int, budget: int):
        super().__init__(f"group of order {order} exceeds enumeration budget {budget}")
        self.order = order
        self.budget = budget


def enumeration_budget() -> int:
    """Current enumeration budget, overridable through ``GL2DEGREES_BUDGET``."""
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# single matrices


@dataclass(frozen=True, slots=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int
    ell: int

    def __post_init__(self) -> None:
        ell = self.ell
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % ell)
        if (self.a * self.d - self.b * self.c) % ell == 0:
            raise ValueError(f"singular matrix {self.rows()} mod {ell}")

    @classmethod
    def from_code(cls, code: int, ell: int) -> "Mat2":
        code, d = divmod(int(code), ell)
        code, c = divmod(code, ell)
        a, b = divmod(code, ell)
        return cls(a, b, c, d, ell)

    @classmethod
    def identity(cls, ell: int) -> "Mat2":
        return cls(1, 0, 0, 1, ell)

    @classmethod
    def scalar(cls, x: int, ell: int) -> "Mat2":
        return cls(x, 0, 0, x, ell)

    @property
    def code(self) -> int:
        ell = self.ell
        return ((self.a * ell + self.b) * ell + self.c) * ell + self.d

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __mul__(self, other: "Mat2") -> "Mat2":
        if self.ell != other.ell:
            raise ValueError("matrices over different primes")
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.ell)

    __matmul__ = __mul__

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.ell

    def trace(self) -> int:
        return (self.a + self.d) % self.ell

    def inverse(self) -> "Mat2":
        ell = self.ell
        t = pow(self.det(), -1, ell)
        return Mat2(self.d * t, -self.b * t, -self.c * t, self.a * t, ell)

    def __pow__(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = Mat2.identity(self.ell)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def is_identity(self) -> bool:
        return self.is_scalar() and self.a == 1

    def order(self) -> int:
        # every element order divides ell*(ell^2 - 1)
        ell = self.ell
        n = ell * (ell * ell - 1)
        for p in factorize(n):
            while n % p == 0 and (self ** (n // p)).is_identity():
                n //= p
        return n

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        x, y = v
        return ((self.a * x + self.b * y) % self.ell, (self.c * x + self.d * y) % self.ell)

    def __repr__(self) -> str:
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]] mod {self.ell})"


def mat(rows: Sequence[Sequence[int]], ell: int) -> Mat2:
    (a, b), (c, d) = rows
    return Mat2(a, b, c, d, ell)


def spectral_profile(m: Mat2) -> str:
    """One of ``scalar``, ``split-semisimple``, ``irreducible``, ``nonsemisimple``."""
    if m.is_scalar():
        return "scalar"
    disc = (m.trace() ** 2 - 4 * m.det()) % m.ell
    if disc == 0:
        return "nonsemisimple"
    return "split-semisimple" if legendre(disc, m.ell) == 1 else "irreducible"


# ---------------------------------------------------------------------------
# vectorized code arithmetic


def decode(codes: np.ndarray, ell: int) -> tuple[np.ndarray, ...]:
    codes = np.asarray(codes, dtype=np.int64)
    d = codes % ell
    c = (codes // ell) % ell
    b = (codes // ell**2) % ell
    a = codes // ell**3
    return a, b, c, d


def encode(a, b, c, d, ell: int) -> np.ndarray:
    return ((a * ell + b) * ell + c) * ell + d


def mul_codes(x: np.ndarray, y: np.ndarray, ell: int) -> np.ndarray:
    """Elementwise (broadcast) product of encoded matrices."""
    a, b, c, d = decode(x, ell)
    e, f, g, h = decode(y, ell)
    return encode((a * e + b * g) % ell, (a * f + b * h) % ell,
                  (c * e + d * g) % ell, (c * f + d * h) % ell, ell)


def inv_codes(x: np.ndarray, ell: int) -> np.ndarray:
    a, b, c, d = decode(x, ell)
    det = (a * d - b * c) % ell
    inv = np.array([0] + [pow(t, -1, ell) for t in range(1, ell)], dtype=np.int64)[det]
    return encode(d * inv % ell, -b * inv % ell, -c * inv % ell, a * inv % ell, ell)


def gl2_codes(ell: int) -> np.ndarray:
    """Sorted codes of every element of GL2(Z/ell)."""
    allc = np.arange(ell**4, dtype=np.int64)
    a, b, c, d = decode(allc, ell)
    return allc[(a * d - b * c) % ell != 0]


# ---------------------------------------------------------------------------
# groups


class MatGroup:
    """A finite subgroup of GL2(Z/ell) given by its full element set.

    ``codes`` is the sorted array of element codes; ``generators`` generate
    the group.
    """

    def __init__(self, ctx: PrimeCtx, codes, generators: Iterable[Mat2] | None = None,
                 name: str | None = None, _trusted: bool = False):
        self.ctx = ctx
        arr = np.unique(np.asarray(list(codes) if not isinstance(codes, np.ndarray) else codes,
                                   dtype=np.int64))
        arr.setflags(write=False)
        self.codes = arr
        self.name = name
        if generators is None:
            generators = _greedy_generators(ctx.ell, arr)
        self.generators = tuple(generators)
        if not _trusted:
            self._validate()

    def _validate(self) -> None:
        ell = self.ctx.ell
        if self.ctx.gl2_order % len(self.codes):
            raise ValueError(f"order {len(self.codes)} does not divide |GL2({ell})|")
        ident = Mat2.identity(ell).code
        if not self.contains_code(ident):
            raise ValueError("identity missing")
        gens = np.array([g.code for g in self.generators], dtype=np.int64)
        if len(gens):
            prods = mul_codes(self.codes[:, None], gens[None, :], ell).ravel()
            if not np.all(np.isin(prods, self.codes)):
                raise ValueError("element set is not closed under the generators")
            if not np.all(np.isin(gens, self.codes)):
                raise ValueError("generators outside the element set")
        # closure(generators) must be everything
        if len(_closure_codes(ell, gens)) != len(self.codes):
            raise ValueError("generators do not generate the element set")

    @property
    def ell(self) -> int:
        return self.ctx.ell

    @property
    def order(self) -> int:
        return len(self.codes)

    def __len__(self) -> int:
        return len(self.codes)

    @cached_property
    def key(self) -> bytes:
        return self.codes.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, MatGroup) and self.ell == other.ell and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.ell, self.key))

    def contains_code(self, code: int) -> bool:
        i = np.searchsorted(self.codes, code)
        return bool(i < len(self.codes) and self.codes[i] == code)

    def __contains__(self, m: Mat2) -> bool:
        return self.contains_code(m.code)

    def issubset(self, other: "MatGroup") -> bool:
        return bool(np.all(np.isin(self.codes, other.codes, assume_unique=True)))

    @cached_property
    def elements(self) -> frozenset[Mat2]:
        return frozenset(Mat2.from_code(c, self.ell) for c in self.codes)

    @cached_property
    def gen_codes(self) -> np.ndarray:
        return np.array([g.code for g in self.generators], dtype=np.int64)

    def contains_minus_identity(self) -> bool:
        return self.contains_code(Mat2.scalar(-1, self.ell).code)

    def is_abelian(self) -> bool:
        g = self.gen_codes
        if len(g) < 2:
            return True
        ell = self.ell
        return bool(np.array_equal(mul_codes(g[:, None], g[None, :], ell),
                                   mul_codes(g[None, :], g[:, None], ell)))

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"MatGroup({label}order={self.order}, ell={self.ell})"


class Subgroup(MatGroup):
    """A subgroup of a parent ``MatGroup``; carries its index."""

    def __init__(self, parent: MatGroup, codes, generators: Iterable[Mat2] | None = None,
                 name: str | None = None, _trusted: bool = False):
        super().__init__(parent.ctx, codes, generators, name, _trusted=_trusted)
        self.parent = parent
        if parent.order % self.order:
            raise ValueError("Lagrange violated: order does not divide parent order")

    @property
    def index(self) -> int:
        return self.parent.order // self.order


def closure(ctx: PrimeCtx, gens: Sequence[Mat2], name: str | None = None) -> MatGroup:
    """Smallest subgroup of GL2(Z/ell) containing ``gens``."""
    gens = list(gens)
    for g in gens:
        if g.ell != ctx.ell:
            raise ValueError("generator over a different prime")
    if not gens:
        gens = []
    codes = _closure_codes(ctx.ell, np.array([g.code for g in gens], dtype=np.int64))
    return MatGroup(ctx, codes, gens or [], name=name, _trusted=True)


def _closure_codes(ell: int, gens: np.ndarray) -> np.ndarray:
    """Dimino's algorithm on raw codes (no frame)."""
    ident = np.array([Mat2.identity(ell).code], dtype=np.int64)
    group = ident
    used: list[int] = []
    for s in np.asarray(gens, dtype=np.int64):
        s = int(s)
        if np.isin(s, group):
            continue
        used.append(s)
        prev = group
        blocks = [prev]
        members = set(prev.tolist())
        reps = [s]
        blocks.append(mul_codes(prev, s, ell))
        members.update(blocks[-1].tolist())
        pos = 0
        while pos < len(reps):
            r = reps[pos]
            for g in used:
                e = int(mul_codes(np.int64(r), np.int64(g), ell))
                if e not in members:
                    reps.append(e)
                    blk = mul_codes(prev, e, ell)
                    blocks.append(blk)
                    members.update(blk.tolist())
            pos += 1
        group = np.unique(np.concatenate(blocks))
    return group


def _greedy_generators(ell: int, codes: np.ndarray) -> list[Mat2]:
    """A small generating set: repeatedly add an element of largest order
    not yet generated."""
    if len(codes) == 1:
        return []
    mats = [Mat2.from_code(c, ell) for c in codes]
    orders = np.array([m.order() for m in mats])
    order_idx = np.argsort(-orders, kind="stable")
    gens: list[Mat2] = []
    current = np.array([Mat2.identity(ell).code], dtype=np.int64)
    for i in order_idx:
        if len(current) == len(codes):
            break
        if np.isin(codes[i], current):
            continue
        gens.append(mats[i])
        current = _closure_codes(ell, np.array([g.code for g in gens], dtype=np.int64))
    return gens


def from_elements(ctx: PrimeCtx, mats: Iterable[Mat2], name: str | None = None) -> MatGroup:
    return MatGroup(ctx, [m.code for m in mats], name=name)


def conjugate(g: Mat2, H: MatGroup) -> MatGroup:
    """The group g H g^-1."""
    ell = H.ell
    ginv = g.inverse()
    codes = mul_codes(mul_codes(np.int64(g.code), H.codes, ell), np.int64(ginv.code), ell)
    gens = [g * h * ginv for h in H.generators]
    if isinstance(H, Subgroup):
        parent = H.parent
        if np.all(np.isin(codes, parent.codes)):
            return Subgroup(parent, codes, gens, _trusted=True)
    return MatGroup(H.ctx, codes, gens, _trusted=True)


def _kernel(m: Mat2):
    """Kernel of m - I: ``'all'``, a normalized vector spanning a line, or None."""
    ell = m.ell
    a, b, c, d = (m.a - 1) % ell, m.b, m.c, (m.d - 1) % ell
    if a == b == c == d == 0:
        return "all"
    if (a * d - b * c) % ell:
        return None
    # rank one: kernel is orthogonal to a nonzero row
    x, y = (a, b) if (a, b) != (0, 0) else (c, d)
    v = (-y % ell, x % ell)
    return _normalize(v, ell)


def _normalize(v: tuple[int, int], ell: int) -> tuple[int, int]:
    x, y = v
    if x % ell:
        t = pow(x, -1, ell)
        return (1, y * t % ell)
    return (0, 1)


def fixes_nonzero_vector(H) -> bool:
    """True iff the common fixed space of H (kernels of h - I) is nonzero.

    ``H`` is a ``MatGroup`` (its generators are used) or an iterable of
    ``Mat2``.
    """
    mats = H.generators if isinstance(H, MatGroup) else list(H)
    space = "all"
    for h in mats:
        k = _kernel(h)
        if k is None:
            return False
        if k == "all":
            continue
        if space == "all":
            space = k
        elif space != k:
            return False
    return True


def with_minus_identity(G: MatGroup) -> MatGroup:
    if G.contains_minus_identity():
        return G
    ell = G.ell
    minus = Mat2.scalar(-1, ell)
    codes = np.concatenate([G.codes, mul_codes(G.codes, np.int64(minus.code), ell)])
    return MatGroup(G.ctx, codes, list(G.generators) + [minus], _trusted=True)


def index2_subgroups(G: MatGroup) -> list[MatGroup]:
    """All subgroups of index 2 in G."""
    ell = G.ell
    codes = G.codes
    squares = mul_codes(codes, codes, ell)
    sq = _closure_codes(ell, np.unique(squares))
    if len(sq) == len(codes):
        return []
    # G / <squares> is elementary abelian; label each element by its coordinates
    label = np.full(len(codes), -1, dtype=np.int64)
    label[np.searchsorted(codes, sq)] = 0
    covered = sq
    rank = 0
    while len(covered) < len(codes):
        x = codes[label < 0][0]
        shifted = mul_codes(covered, np.int64(x), ell)
        pos_new = np.searchsorted(codes, shifted)
        pos_old = np.searchsorted(codes, covered)
        label[pos_new] = label[pos_old] | (1 << rank)
        covered = np.unique(np.concatenate([covered, shifted]))
        rank += 1
    out = []
    for f in range(1, 1 << rank):
        parity = np.array([bin(int(v) & f).count("1") % 2 for v in label])
        out.append(MatGroup(G.ctx, codes[parity == 0], _trusted=True))
    return out


def twists(G: MatGroup) -> list[MatGroup]:
    """<G, -I> together with its index-2 subgroups not containing -I."""
    K = with_minus_identity(G)
    out = [K]
    seen = {K.key}
    for N in index2_subgroups(K):
        if not N.contains_minus_identity() and N.key not in seen:
            seen.add(N.key)
            out.append(N)
    return out


# ---------------------------------------------------------------------------
# indexed frames and subgroup enumeration


class Frame:
    """A group with its elements indexed 0..n-1, for fast enumeration."""

    def __init__(self, G: MatGroup):
        self.group = G
        self.ell = ell = G.ell
        self.codes = G.codes
        self.n = n = len(self.codes)
        self.identity = int(np.searchsorted(self.codes, Mat2.identity(ell).code))
        self.table = None
        if n <= _TABLE_LIMIT:
            self.table = np.empty((n, n), dtype=np.int32)
            step = max(1, 200_000 // n)
            for lo in range(0, n, step):
                blk = mul_codes(self.codes[lo:lo + step, None], self.codes[None, :], ell)
                self.table[lo:lo + step] = np.searchsorted(self.codes, blk)
        self.inv = self.index_of(inv_codes(self.codes, ell))
        self.minus = None
        m = Mat2.scalar(-1, ell).code
        if G.contains_code(m):
            self.minus = int(np.searchsorted(self.codes, m))

    def index_of(self, codes: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.codes, codes).astype(np.int32)

    def mul(self, i, j) -> np.ndarray:
        if self.table is not None:
            return self.table[i, j]
        return self.index_of(mul_codes(self.codes[i], self.codes[j], self.ell))

    def conj(self, g, h) -> np.ndarray:
        """g h g^-1 (broadcast)."""
        return self.mul(self.mul(g, h), self.inv[g])

    @cached_property
    def orders(self) -> np.ndarray:
        n = self.n
        order = np.zeros(n, dtype=np.int64)
        idx = np.arange(n, dtype=np.int32)
        cur = idx.copy()
        k = 1
        live = np.ones(n, dtype=bool)
        while live.any():
            done = live & (cur == self.identity)
            order[done] = k
            live &= ~done
            if not live.any():
                break
            cur[live] = self.mul(cur[live], idx[live])
            k += 1
        return order

    def powers(self, i: int) -> np.ndarray:
        """[1, x, x^2, ..., x^(ord-1)] as indices."""
        o = int(self.orders[i])
        out = np.empty(o, dtype=np.int32)
        out[0] = self.identity
        for k in range(1, o):
            out[k] = self.mul(out[k - 1], i)
        return out

    def closure(self, gens: Sequence[int], base: np.ndarray | None = None,
                base_gens: Sequence[int] = ()) -> np.ndarray:
        """Dimino closure of ``base`` (a subgroup, sorted indices) and gens."""
        mask = np.zeros(self.n, dtype=bool)
        group = np.array([self.identity], dtype=np.int32) if base is None else base
        mask[group] = True
        used = list(base_gens)
        for s in gens:
            s = int(s)
            if mask[s]:
                continue
            used.append(s)
            prev = group
            blocks = [prev]
            reps = [s]
            blk = self.mul(prev, s)
            mask[blk] = True
            blocks.append(blk)
            pos = 0
            while pos < len(reps):
                r = reps[pos]
                for g in used:
                    e = int(self.mul(r, g))
                    if not mask[e]:
                        reps.append(e)
                        blk = self.mul(prev, e)
                        mask[blk] = True
                        blocks.append(blk)
                pos += 1
            group = np.sort(np.concatenate(blocks)).astype(np.int32)
        return group

    def subgroup(self, idx: np.ndarray, gens: Sequence[int], parent: MatGroup | None = None) -> Subgroup:
        ell = self.ell
        return Subgroup(parent or self.group, self.codes[idx],
                        [Mat2.from_code(self.codes[g], ell) for g in gens], _trusted=True)

    # -- structure helpers

    def derived(self, idx: np.ndarray, gens: Sequence[int]) -> tuple[np.ndarray, list[int]]:
        """Derived subgroup of the subgroup (idx, gens): normal closure of
        commutators of generators."""
        gens = list(gens)
        comm = []
        for x in gens:
            for y in gens:
                c = int(self.mul(self.mul(x, y), self.mul(self.inv[x], self.inv[y])))
                if c != self.identity:
                    comm.append(c)
        d_gens: list[int] = []
        group = np.array([self.identity], dtype=np.int32)
        pending = comm
        while pending:
            mask = np.zeros(self.n, dtype=bool)
            mask[group] = True
            new = [c for c in dict.fromkeys(pending) if not mask[c]]
            if not new:
                break
            group = self.closure(new, group, d_gens)
            d_gens.extend(new)
            mask = np.zeros(self.n, dtype=bool)
            mask[group] = True
            pending = []
            for g in gens:
                conj = self.conj(np.full(len(d_gens), g, dtype=np.int32), np.array(d_gens, dtype=np.int32))
                pending.extend(int(c) for c in conj[~mask[conj]])
        return group, d_gens

    def is_perfect(self, idx: np.ndarray, gens: Sequence[int]) -> bool:
        d, _ = self.derived(idx, gens)
        return len(d) == len(idx)


def _zuppos(frame: Frame) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One generator per cyclic subgroup of prime-power order > 1.

    Returns (generator, prime, generator**prime) index arrays.
    """
    orders = frame.orders
    seen = np.zeros(frame.n, dtype=bool)
    gens, primes, gp = [], [], []
    for i in np.argsort(orders, kind="stable"):
        o = int(orders[i])
        if o == 1 or seen[i]:
            continue
        f = factorize(o)
        if len(f) != 1:
            continue
        p = next(iter(f))
        pw = frame.powers(int(i))
        ks = np.arange(o)
        seen[pw[ks % p != 0]] = True
        gens.append(int(i))
        primes.append(p)
        gp.append(int(pw[p % o]))
    return (np.array(gens, dtype=np.int32), np.array(primes, dtype=np.int64),
            np.array(gp, dtype=np.int32))


def _perfect_seeds(frame: Frame) -> list[tuple[np.ndarray, list[int]]]:
    """Nontrivial perfect subgroups of the frame group.

    Perfect subgroups of GL2 over a prime field are SL2(ell) or copies of
    SL2(5); both are 2-generated, so they are found as <x, y> with x
    running over class representatives of the perfect core.
    """
    all_idx = np.arange(frame.n, dtype=np.int32)
    top_gens = list(frame.index_of(frame.group.gen_codes))
    cur, cur_gens = all_idx, top_gens
    while True:
        d, d_gens = frame.derived(cur, cur_gens)
        if len(d) == len(cur) or len(d) == 1:
            break
        cur, cur_gens = d, d_gens
    if len(d) == 1:
        return []
    core, core_gens = d, d_gens
    # conjugacy class reps of the core under itself
    seen = np.zeros(frame.n, dtype=bool)
    reps = []
    for x in core:
        if seen[x]:
            continue
        reps.append(int(x))
        seen[frame.conj(core, np.full(len(core), x, dtype=np.int32))] = True
    found: dict[bytes, tuple[np.ndarray, list[int]]] = {}
    tried: set[bytes] = set()
    for x in reps:
        if x == frame.identity:
            continue
        for y in core:
            P = frame.closure([x, int(y)])
            k = P.tobytes()
            if k in tried:
                continue
            tried.add(k)
            gens = [x, int(y)]
            if len(P) > 1 and frame.is_perfect(P, gens):
                found[k] = (P, gens)
    # close under conjugation by the whole group
    out: dict[bytes, tuple[np.ndarray, list[int]]] = {}
    for P, gens in found.values():
        for g in range(frame.n):
            Q = np.sort(frame.conj(np.full(len(P), g, dtype=np.int32), P)).astype(np.int32)
            k = Q.tobytes()
            if k not in out:
                qg = [int(frame.conj(g, h)) for h in gens]
                out[k] = (Q, qg)
    return list(out.values())


def subgroup_lattice(frame: Frame, budget: int | None = None) -> list[tuple[np.ndarray, list[int]]]:
    """Every subgroup of the frame group as (sorted indices, generators).

    Cyclic extension: starting from the trivial group and the perfect
    subgroups, repeatedly adjoin a prime-power-order element z that
    normalizes the current subgroup H, lies outside it and has z^p in H.
    Every subgroup K arises this way since K / K^infinity is solvable.
    """
    budget = enumeration_budget() if budget is None else budget
    if frame.n > budget:
        raise BudgetExceeded(frame.n, budget)
    zg, zp, zgp = _zuppos(frame)
    trivial = np.array([frame.identity], dtype=np.int32)
    found: dict[bytes, tuple[np.ndarray, list[int]]] = {trivial.tobytes(): (trivial, [])}
    queue = [found[trivial.tobytes()]]
    for seed in _perfect_seeds(frame):
        k = seed[0].tobytes()
        if k not in found:
            found[k] = seed
            queue.append(seed)
    pos = 0
    while pos < len(queue):
        H, gens = queue[pos]
        pos += 1
        mask = np.zeros(frame.n, dtype=bool)
        mask[H] = True
        cand = ~mask[zg] & mask[zgp]
        # p * |H| must divide |G|
        cand &= (frame.n % (len(H) * zp) == 0)
        if not cand.any():
            continue
        ci = np.nonzero(cand)[0]
        for h in gens:
            conj = frame.conj(zg[ci], np.full(len(ci), h, dtype=np.int32))
            ci = ci[mask[conj]]
            if not len(ci):
                break
        done = np.zeros(frame.n, dtype=bool)
        for c in ci:
            z = int(zg[c])
            if done[z]:
                continue
            p = int(zp[c])
            zpow = [frame.identity, z]
            for _ in range(p - 2):
                zpow.append(int(frame.mul(zpow[-1], z)))
            K = np.sort(frame.mul(H[:, None], np.array(zpow, dtype=np.int32)[None, :]).ravel()).astype(np.int32)
            done[K] = True
            k = K.tobytes()
            if k not in found:
                entry = (K, list(gens) + [z])
                found[k] = entry
                queue.append(entry)
    out = list(found.values())
    out.sort(key=lambda e: (len(e[0]), e[0].tobytes()))
    return out


def subgroup_lattice_naive(frame: Frame) -> list[tuple[np.ndarray, list[int]]]:
    """Oracle: close the set of cyclic subgroups under pairwise joins."""
    seen = np.zeros(frame.n, dtype=bool)
    cyc = []
    for i in range(frame.n):
        if seen[i]:
            continue
        pw = frame.powers(i)
        o = len(pw)
        ks = np.arange(o)
        seen[pw[np.gcd(ks, o) == 1]] = True
        cyc.append(i)
    found: dict[bytes, tuple[np.ndarray, list[int]]] = {}
    queue = []
    for i in cyc:
        C = np.sort(frame.powers(i)).astype(np.int32)
        found[C.tobytes()] = (C, [i] if i != frame.identity else [])
        queue.append(found[C.tobytes()])
    pos = 0
    while pos < len(queue):
        H, gens = queue[pos]
        pos += 1
        mask = np.zeros(frame.n, dtype=bool)
        mask[H] = True
        for i in cyc:
            if mask[i]:
                continue
            K = frame.closure([i], H, gens)
            k = K.tobytes()
            if k not in found:
                found[k] = (K, list(gens) + [i])
                queue.append(found[k])
    out = list(found.values())
    out.sort(key=lambda e: (len(e[0]), e[0].tobytes()))
    return out


def all_subgroups(G: MatGroup, budget: int | None = None, method: str = "cyclic") -> list[Subgroup]:
    """Every subgroup of G exactly once, as ``Subgroup`` objects.

    ``method`` is ``"cyclic"`` (cyclic extension) or ``"naive"`` (join
    closure of cyclic subgroups; only sensible for small groups).
    """
    budget = enumeration_budget() if budget is None else budget
    if G.order > budget:
        raise BudgetExceeded(G.order, budget)
    frame = Frame(G)
    if method == "cyclic":
        lat = subgroup_lattice(frame, budget)
    elif method == "naive":
        lat = subgroup_lattice_naive(frame)
    else:
        raise ValueError(f"unknown method {method!r}")
    log.debug("%s: %d subgroups of a group of order %d", method, len(lat), G.order)
    return [frame.subgroup(idx, gens) for idx, gens in lat]


def full_gl2(ctx: PrimeCtx | int) -> MatGroup:
    ctx = make_ctx(ctx) if isinstance(ctx, int) else ctx
    ell = ctx.ell
    gens = [Mat2(1, 1, 0, 1, ell), Mat2(ctx.alpha, 0, 0, 1, ell),
            Mat2(1, 0, 0, ctx.alpha, ell), Mat2(0, 1, 1, 0, ell)]
    return MatGroup(ctx, gl2_codes(ell), gens, name="GL2", _trusted=True)
