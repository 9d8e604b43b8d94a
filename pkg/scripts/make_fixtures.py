"""Regenerate the bundled fixture datasets from the toric builders.

    python scripts/make_fixtures.py           # rewrite src/eqchern/fixtures
    python scripts/make_fixtures.py --check   # exit 1 if any file is stale
"""
import argparse
import sys
import tempfile
from pathlib import Path

from eqchern import samples
from eqchern.fixedpoint import FixedPointDatum, save_dataset

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "eqchern" / "fixtures"


def build():
    cp1 = samples.cp(1)
    return {
        "cp1.json": cp1,
        "cp2.json": samples.cp(2),
        "cp1xcp1.json": samples.product(cp1, cp1),
        "cancelled_pair.json": samples.cancelled_pair(FixedPointDatum([(1, 0), (0, 1)])),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    stale = []
    for name, d in build().items():
        path = FIXTURES / name
        if args.check:
            with tempfile.TemporaryDirectory() as tmp:
                fresh = Path(tmp) / name
                save_dataset(d, fresh)
                if not path.exists() or path.read_text() != fresh.read_text():
                    stale.append(name)
        else:
            save_dataset(d, path)
            print(f"wrote {path}")
    if stale:
        print("stale: " + ", ".join(stale))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
