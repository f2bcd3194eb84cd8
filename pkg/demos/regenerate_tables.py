"""
Regenerate the tables and diff against the committed copies
===========================================================

Every table the command line prints is also available as a ``Table``
object. This script rebuilds each one and compares it with the golden
file kept under ``tests/golden/v1``.
"""

import difflib
from pathlib import Path

from gl2degrees.tables import TABLE_NAMES, build_table, render

golden = Path(__file__).resolve().parent.parent / "tests" / "golden" / "v1"

for name in TABLE_NAMES:
    text = render(build_table(name))
    path = golden / f"{name}.txt"
    if not path.exists():
        print(f"{name:9s} no golden copy")
        continue
    diff = list(difflib.unified_diff(path.read_text().splitlines(), text.splitlines(), lineterm=""))
    print(f"{name:9s} {'identical' if not diff else f'{len(diff)} diff lines'}")

print()
print(render(build_table("eml", ells=[5, 11])))
