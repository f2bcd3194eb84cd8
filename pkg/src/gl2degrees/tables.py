"""Row builders and renderers for the published tables.

Each table is a header plus rows of cells. A cell is an int, a string, a
set of ints (printed comma-separated, sorted), or an ``IndexSet`` (printed
in Delta notation). Rendering is deterministic so output can be diffed
against committed golden files.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Callable, Sequence

from .catalog import CATALOG_PRIMES, class_number, exceptional_images
from .indexsets import (ImageKind, IndexSet, div_min, index_set_bruteforce, index_set_formula,
                        torsion_divmin_formula, torsion_index_set)
from .modarith import odd_primes
from .standard import FIVE, SIX
from .theorems import S_M, T_set, cm_odd_degree_verdict, thm2

GRID_ELL_MAX = 97
GRID_D_MAX = 45


@dataclass
class Table:
    name: str
    header: list[str]
    rows: list[list]


def _fmt(cell) -> str:
    if isinstance(cell, IndexSet):
        return str(cell)
    if isinstance(cell, (set, frozenset)):
        return ",".join(map(str, sorted(cell))) if cell else "∅"
    return str(cell)


def _json_cell(cell):
    if isinstance(cell, IndexSet):
        return cell.to_json()
    if isinstance(cell, (set, frozenset)):
        return sorted(cell)
    return cell


def render(table: Table, fmt: str = "text") -> str:
    if fmt == "text":
        lines = [" | ".join(table.header)]
        lines += [" | ".join(_fmt(c) for c in row) for row in table.rows]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.header)
        for row in table.rows:
            w.writerow([_fmt(c) for c in row])
        return buf.getvalue()
    if fmt == "json":
        rows = [dict(zip(table.header, (_json_cell(c) for c in row))) for row in table.rows]
        return json.dumps({"table": table.name, "rows": rows}, indent=1, ensure_ascii=False) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _s_table(name: str, filter: str, ells: Sequence[int]) -> Table:
    rows = [[ell] + [S_M(ell, M, filter) for M in FIVE] for ell in ells]
    return Table(name, ["ell"] + [str(M) for M in FIVE], rows)


def _t_table(name: str, mode: str, ells: Sequence[int]) -> Table:
    rows = [[ell] + [T_set(ell, f, mode) for f in ("any", "cm", "non_cm")] for ell in ells]
    return Table(name, ["ell", "T", "T_cm", "T_non_cm"], rows)


def table_rml(ells): return _s_table("rml", "any", ells)
def table_rmcml(ells): return _s_table("rmcml", "cm", ells)
def table_rmnoncml(ells): return _s_table("rmnoncml", "non_cm", ells)
def table_tjl(ells): return _t_table("tjl", "rational_j", ells)
def table_tl(ells): return _t_table("tl", "over_Q", ells)


def table_cm(ells) -> Table:
    rows = []
    for ell in ells:
        w, verdict = cm_odd_degree_verdict(ell)
        rows.append([ell, class_number(ell), w, T_set(ell, "cm"), verdict])
    return Table("cm", ["ell", "h", "h*(ell-1)/2", "T_cm", "degrees"], rows)


def table_eml(ells) -> Table:
    rows = []
    for ell in ells:
        groups = exceptional_images(ell)
        rows.append([ell] + [index_set_bruteforce(groups, M) if groups else IndexSet.from_values(())
                             for M in SIX])
    return Table("eml", ["ell"] + [str(M) for M in SIX], rows)


def table_setml(ells) -> Table:
    rows = []
    for ell in ells:
        for image in (ImageKind.GL2, ImageKind.Ns, ImageKind.Nns, ImageKind.BorelTrio):
            for M in SIX:
                rows.append([ell, str(image), str(M), index_set_formula(image, M, ell)])
    return Table("setml", ["ell", "image", "M", "indices"], rows)


def table_eejl(ells) -> Table:
    rows = []
    for ell in ells:
        groups = exceptional_images(ell)
        if groups:
            tw = div_min(torsion_index_set(groups, "twisted").values)
            st = div_min(torsion_index_set(groups, "strict").values)
        else:
            tw = st = set()
        rows.append([ell, tw, st])
    return Table("eejl", ["ell", "twisted", "strict"], rows)


def table_setl(ells) -> Table:
    rows = []
    for ell in ells:
        for image in (ImageKind.GL2, ImageKind.Ns, ImageKind.Nns, ImageKind.BorelTrio):
            if image is ImageKind.BorelTrio and ell % 4 != 3:
                continue
            rows.append([ell, str(image), torsion_divmin_formula(image, "twisted", ell),
                         torsion_divmin_formula(image, "strict", ell)])
    return Table("setl", ["ell", "image", "twisted", "strict"], rows)


def grid_bits(ell_max: int = GRID_ELL_MAX, d_max: int = GRID_D_MAX) -> list[list[int]]:
    """Rows for odd primes up to ``ell_max``: bit d-1 is 1 iff d is an
    abelian-subextension degree."""
    return [[int(thm2(ell, d)) for d in range(1, d_max + 1)] for ell in odd_primes(3, ell_max)]


def table_grid(ell_max: int = GRID_ELL_MAX, d_max: int = GRID_D_MAX) -> Table:
    ells = odd_primes(3, ell_max)
    rows = [[ell, " ".join(map(str, bits))] for ell, bits in zip(ells, grid_bits(ell_max, d_max))]
    return Table("grid", ["ell", "d=1.." + str(d_max)], rows)


DEFAULT_ELLS: dict[str, Callable[[], list[int]]] = {
    "rml": lambda: list(CATALOG_PRIMES) + [19, 23, 43],
    "rmcml": lambda: [3, 5, 7, 11, 13, 17, 19, 23, 37, 43],
    "rmnoncml": lambda: list(CATALOG_PRIMES) + [19, 23],
    "tjl": lambda: list(CATALOG_PRIMES) + [19, 23, 43],
    "tl": lambda: list(CATALOG_PRIMES) + [19, 23, 43],
    "cm": lambda: [p for p in odd_primes(3, 83) if p % 4 == 3],
    "eml": lambda: list(CATALOG_PRIMES),
    "setml": lambda: [3, 5, 7],
    "eejl": lambda: list(CATALOG_PRIMES),
    "setl": lambda: [3, 5, 7],
}

BUILDERS = {
    "rml": table_rml, "rmcml": table_rmcml, "rmnoncml": table_rmnoncml,
    "tjl": table_tjl, "tl": table_tl, "cm": table_cm, "eml": table_eml,
    "setml": table_setml, "eejl": table_eejl, "setl": table_setl,
}

TABLE_NAMES = tuple(BUILDERS) + ("grid",)


def build_table(name: str, ells: Sequence[int] | None = None, ell_max: int | None = None,
                d_max: int | None = None) -> Table:
    if name == "grid":
        return table_grid(ell_max or GRID_ELL_MAX, d_max or GRID_D_MAX)
    if name not in BUILDERS:
        raise ValueError(f"unknown table {name!r}")
    if ells is None:
        ells = DEFAULT_ELLS[name]()
        if ell_max is not None:
            ells = [e for e in ells if e <= ell_max]
    return BUILDERS[name](list(ells))
