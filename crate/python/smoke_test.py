"""Smoke test for the labudde extension module.

Build and install it first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

from fractions import Fraction
from math import comb

import labudde


def main() -> None:
    a = [[2.0, 1.0], [1.0, 2.0]]
    r = labudde.charpoly(a)
    assert r.coeffs == [-4.0, 3.0], r.coeffs
    assert r.route == "symmetric" and len(r) == 2
    assert all(b >= 0.0 for b in r.bounds)

    n = 30
    hansen = labudde.gallery("hansen", n)
    alpha = [hansen[i][i] for i in range(n)]
    beta = [hansen[i + 1][i] for i in range(n - 1)]
    sym = labudde.charpoly_sym(alpha, beta)
    for j, c in enumerate(sym.coeffs, start=1):
        exact = (-1) ** j * comb(2 * n - j, j)
        assert abs(c - exact) <= sym.bounds[j - 1], (j, c, exact)

    coeffs = [1.5, -2.0, 0.25, 7.0]
    comp = labudde.gallery("companion", coeffs=coeffs)
    assert labudde.charpoly_hess(comp).coeffs == coeffs

    frank = labudde.gallery("frank", 12)
    exact = [Fraction(s) for s in labudde.exact_charpoly(frank)]
    got = labudde.charpoly(frank)
    assert got.route == "hessenberg"
    for c, e, b in zip(got.coeffs, exact, got.bounds):
        assert abs(Fraction(c) - e) <= Fraction(b)

    h, err = labudde.to_hessenberg(labudde.gallery("chow", 8))
    assert err > 0.0 and all(h[i][j] == 0.0 for i in range(8) for j in range(i - 1))
    al, be, _ = labudde.to_tridiagonal(hansen)
    assert len(al) == n and len(be) == n - 1

    ones = labudde.gallery("all-ones", 40)
    assert max(abs(c) for c in labudde.leverrier(ones).coeffs[21:]) > 1e15
    assert labudde.poly_via_eig(a).method == "eig-summation"

    sym_int = [[4.0, 1.0, -2.0], [1.0, 3.0, 0.0], [-2.0, 0.0, 5.0]]
    totals = labudde.overall_bound(sym_int)
    exact = [Fraction(s) for s in labudde.exact_charpoly(sym_int)]
    for c, e, t in zip(labudde.charpoly(sym_int).coeffs, exact, totals):
        assert abs(Fraction(c) - e) <= Fraction(t)

    try:
        labudde.overall_bound(sym_int, nu=1e20)
    except labudde.HypothesisError:
        pass
    else:
        raise AssertionError("expected HypothesisError")
    try:
        labudde.charpoly_hess(labudde.gallery("chow", 5))
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for non-Hessenberg input")

    print("labudde smoke test passed")


if __name__ == "__main__":
    main()
