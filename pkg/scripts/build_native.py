#!/usr/bin/env python3
"""Compile the Rust group backend and drop the extension into the package.

Run from anywhere:

    python scripts/build_native.py [--debug]

Requires a Rust toolchain (cargo). The compiled module is written to
src/ibpsc/_bls12381.so, which the package loads at import time. The
repository ships a prebuilt copy so this only needs rerunning after
changes under native/.
"""

import argparse
import shutil
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
CRATE = ROOT / "native"
DEST = ROOT / "src" / "ibpsc" / "_bls12381.so"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--debug", action="store_true", help="build without optimizations")
    args = ap.parse_args()

    profile = "debug" if args.debug else "release"
    cmd = ["cargo", "build"] + ([] if args.debug else ["--release"])
    print(f"$ {' '.join(cmd)}  (in {CRATE})")
    proc = subprocess.run(cmd, cwd=CRATE)
    if proc.returncode != 0:
        return proc.returncode

    built = None
    for name in ("lib_bls12381.so", "lib_bls12381.dylib", "_bls12381.dll"):
        candidate = CRATE / "target" / profile / name
        if candidate.exists():
            built = candidate
            break
    if built is None:
        print("error: cargo succeeded but no cdylib found under target/", file=sys.stderr)
        return 1

    DEST.parent.mkdir(parents=True, exist_ok=True)
    shutil.copy2(built, DEST)
    print(f"installed {built} -> {DEST}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
