"""Self-checks comparing closed forms and shortcuts against brute force."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .catalog import all_records
from .indexsets import (ImageKind, div_min, image_groups, index_set_bruteforce,
                        index_set_formula, torsion_divmin_formula, torsion_index_set,
                        twist_fixes_vector)
from .matgroup import all_subgroups, fixes_nonzero_vector, full_gl2, twists
from .standard import (FIVE, SIX, StandardKind, belongs_to, build_canonical, conj_into,
                       conj_into_bruteforce, dickson_class, dickson_property_holds)

SCOPES = ("formulas", "torsion", "twists", "dickson", "catalog")
FAST_GL2_MAX = 5
SLOW_GL2_MAX = 7


@dataclass(frozen=True)
class Check:
    scope: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'} {self.scope} {self.name}{tail}"


def _images(ell: int, slow: bool) -> list[ImageKind]:
    out = [ImageKind.Ns, ImageKind.Nns, ImageKind.BorelTrio]
    if ell <= (SLOW_GL2_MAX if slow else FAST_GL2_MAX):
        out.insert(0, ImageKind.GL2)
    return out


def check_formulas(ells: Sequence[int], slow: bool = False) -> Iterator[Check]:
    for ell in ells:
        for image in _images(ell, slow):
            groups = image_groups(image, ell)
            for M in SIX:
                want = index_set_formula(image, M, ell)
                got = index_set_bruteforce(groups, M)
                ok = want.values == got.values
                yield Check("formulas", f"ell={ell} {image} {M}", ok,
                            "" if ok else f"formula {want}, brute force {got}")


def check_torsion(ells: Sequence[int], slow: bool = False) -> Iterator[Check]:
    for ell in ells:
        for image in _images(ell, slow):
            if image is ImageKind.BorelTrio and ell % 4 != 3:
                continue
            groups = image_groups(image, ell)
            for mode in ("twisted", "strict"):
                want = torsion_divmin_formula(image, mode, ell)
                got = div_min(torsion_index_set(groups, mode).values)
                ok = want == got
                yield Check("torsion", f"ell={ell} {image} {mode}", ok,
                            "" if ok else f"formula {sorted(want)}, brute force {sorted(got)}")


def check_twists(ells: Sequence[int], slow: bool = False) -> Iterator[Check]:
    """Twists belong to the same standard subgroup, and the line criterion
    for twisted torsion agrees with trying every twist."""
    for ell in ells:
        c = build_canonical(ell)
        parents = [("Ns", c.Ns), ("Nns", c.Nns)]
        if ell == 3:
            parents.append(("GL2", c.Full))
        for pname, P in parents:
            bad_belong = bad_fix = 0
            subs = all_subgroups(P)
            for H in subs:
                base = {M: belongs_to(H, M) for M in FIVE}
                tws = twists(H)
                for T in tws:
                    if any(belongs_to(T, M) != base[M] for M in FIVE):
                        bad_belong += 1
                if twist_fixes_vector(H) != any(fixes_nonzero_vector(T) for T in tws):
                    bad_fix += 1
            yield Check("twists", f"ell={ell} {pname} belonging", bad_belong == 0,
                        f"{len(subs)} subgroups, {bad_belong} violations")
            yield Check("twists", f"ell={ell} {pname} twisted torsion", bad_fix == 0,
                        f"{len(subs)} subgroups, {bad_fix} violations")


def check_dickson(ells: Sequence[int], slow: bool = False) -> Iterator[Check]:
    for ell in ells:
        if ell > (SLOW_GL2_MAX if slow else FAST_GL2_MAX):
            yield Check("dickson", f"ell={ell}", True, "skipped; needs --slow or smaller ell")
            continue
        subs = all_subgroups(full_gl2(ell))
        bad_cls = bad_conj = 0
        for H in subs:
            if not dickson_property_holds(H, dickson_class(H)):
                bad_cls += 1
            if ell <= 5:
                for M in StandardKind:
                    if M is not StandardKind.Full and conj_into(H, M) != conj_into_bruteforce(H, M):
                        bad_conj += 1
        yield Check("dickson", f"ell={ell} classification", bad_cls == 0,
                    f"{len(subs)} subgroups, {bad_cls} violations")
        if ell <= 5:
            yield Check("dickson", f"ell={ell} conjugacy tests vs search", bad_conj == 0,
                        f"{bad_conj} disagreements")


def check_catalog(ells: Sequence[int] = (), slow: bool = False) -> Iterator[Check]:
    for r in all_records():
        try:
            r.group()
            ok, detail = True, ""
        except ValueError as exc:
            ok, detail = False, str(exc)
        yield Check("catalog", f"ell={r.ell} index {r.index_in_gl2}", ok, detail)


RUNNERS = {
    "formulas": check_formulas, "torsion": check_torsion, "twists": check_twists,
    "dickson": check_dickson, "catalog": check_catalog,
}


def run(scope: str, ells: Sequence[int], slow: bool = False) -> list[Check]:
    if scope not in RUNNERS:
        raise ValueError(f"unknown scope {scope!r}")
    return list(RUNNERS[scope](ells, slow))
