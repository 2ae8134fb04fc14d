#!/usr/bin/env python3
"""Smoke test for the potentsum_py extension module.

Builds nothing itself: expects `cargo build -p potentsum-py` to have produced
target/{debug,release}/libpotentsum_py.so. Copies the cdylib under the
importable name into a scratch directory and exercises the bindings.

Run from the repository root:

    cargo build -p potentsum-py
    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def locate_cdylib() -> Path:
    candidates = [
        REPO / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("libpotentsum_py.so", "potentsum_py.so", "libpotentsum_py.dylib")
    ]
    for path in candidates:
        if path.exists():
            return path
    sys.exit("cdylib not found; run `cargo build -p potentsum-py` first")


def main() -> None:
    cdylib = locate_cdylib()
    scratch = Path(tempfile.mkdtemp(prefix="potentsum_py_"))
    shutil.copy2(cdylib, scratch / "potentsum_py.so")
    sys.path.insert(0, str(scratch))

    import potentsum_py as ps

    # Prime-power parsing and rejection.
    assert ps.parse_prime_power(125) == (5, 3)
    assert ps.parse_prime_power(8192) == (2, 13)
    for bad in (0, 1, 12, 100):
        try:
            ps.parse_prime_power(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"{bad} accepted as a prime power")

    # Potent-set arithmetic without a field.
    assert ps.normalize_exponent(21, 41) == 21
    assert ps.normalize_exponent(17, 13) == 5
    assert ps.potent_count(5, 13) == 5
    assert ps.prime_powers_up_to(30) == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]

    # Field arithmetic in F_13 and F_9.
    f13 = ps.Field(13)
    assert (f13.q, f13.p, f13.v) == (13, 13, 1)
    assert f13.generator == 2
    assert f13.add(9, 8) == 4
    assert f13.mul(5, 8) == 1
    assert f13.pow(2, 12) == 1
    assert f13.dlog(4) == 2
    assert f13.potents(5) == [0, 1, 5, 8, 12]
    assert f13.covered_by(5, 7)
    assert not f13.covered_by(2, 2)

    f9 = ps.Field(9)
    assert f9.modulus == [1, 0, 1]
    assert f9.add(1, 2) == 0, "characteristic 3"
    for x in range(9):
        assert f9.pow(x, 9) == x, "Frobenius fixes F_9 under x -> x^9"

    # Character sums: the (13, 7) pair vanishes, the (37, 19) non-pair does not.
    assert f13.exact_s(2, 5) == 0
    f37 = ps.Field(37)
    assert f37.exact_s(2, 5) == 64
    assert not f37.covered_by(5, 19)

    # Search reproductions.
    pairs = ps.check_all(5, 130)
    assert pairs == [
        (3, 2), (5, 2), (5, 3), (7, 4), (9, 3), (9, 5), (13, 5), (13, 7), (17, 9),
        (25, 9), (25, 13), (29, 15), (41, 21), (49, 25), (53, 27), (73, 37),
        (81, 41), (125, 63),
    ]
    assert ps.check_all(3, 10000) == [(3, 2), (5, 3), (7, 4), (9, 5)]
    triples = ps.triple_search(100)
    assert len(triples) == 34
    assert (4, 2) in triples

    # Bounds and thresholds.
    assert ps.threshold_m(5) == 25600
    assert ps.threshold_m(10) == 104857600
    assert ps.refined_square_threshold(5) == 2809
    assert math.isclose(ps.weil_lower_bound(2, 5, 2809), 52.0, abs_tol=1e-9)
    assert not ps.weil_bound_is_positive(5, 2711)
    assert ps.weil_bound_is_positive(5, 2712)

    print("potentsum_py smoke test: all assertions passed")


if __name__ == "__main__":
    main()
