import random
from fractions import Fraction

import pytest

from nilpath.errors import DuplicateSampleError, ZeroPolynomialError
from nilpath.matrix import Matrix
from nilpath.polynomials import (
    RatPoly,
    certify_nonvanishing_segment,
    poly_interpolate_entries,
    poly_matrix_det,
    sturm_root_count,
)
from nilpath.scalar import Scalar


def rp(*coeffs):
    return RatPoly([Scalar(Fraction(c)) for c in coeffs])


def linear_factor_product(roots):
    poly = rp(1)
    for r in roots:
        poly = poly * RatPoly([Scalar(-Fraction(r)), Scalar(1)])
    return poly


def test_sturm_examples():
    assert sturm_root_count(rp(-2, 0, 1), Fraction(0), Fraction(2)) == 1  # x^2-2
    assert sturm_root_count(rp(1, 0, 1), Fraction(-10), Fraction(10)) == 0  # x^2+1
    assert sturm_root_count(rp(0, -1, 1), Fraction(1, 4), Fraction(3, 4)) == 0  # x(x-1)


def test_sturm_endpoint_roots_are_excluded():
    f = rp(0, -1, 1)  # roots at 0 and 1
    assert sturm_root_count(f, Fraction(0), Fraction(1)) == 0
    assert sturm_root_count(f, Fraction(-1), Fraction(2)) == 2


def test_sturm_counts_distinct_roots_of_non_squarefree():
    f = rp(0, 0, 1) * rp(-1, 1)  # x^2 (x-1)
    assert sturm_root_count(f, Fraction(-1, 2), Fraction(2)) == 2


def test_sturm_against_linear_factor_oracle():
    rng = random.Random(77)
    for _ in range(40):
        k = rng.randint(1, 5)
        roots = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(k)]
        f = linear_factor_product(roots)
        lo = Fraction(rng.randint(-9, 0), rng.randint(1, 3))
        hi = lo + Fraction(rng.randint(1, 12), rng.randint(1, 3))
        expected = len({r for r in roots if lo < r < hi})
        assert sturm_root_count(f, lo, hi) == expected, (roots, lo, hi)


def test_sturm_with_high_multiplicities():
    rng = random.Random(123)
    for _ in range(25):
        base = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        roots = []
        for r in base:
            roots.extend([r] * rng.randint(1, 4))
        f = linear_factor_product(roots)
        lo, hi = Fraction(-5), Fraction(5)
        while any(r == lo for r in base):
            lo -= 1
        while any(r == hi for r in base):
            hi += 1
        expected = len({r for r in base if lo < r < hi})
        assert sturm_root_count(f, lo, hi) == expected, (roots, lo, hi)


def test_sturm_rejects_zero_poly_and_bad_interval():
    with pytest.raises(ZeroPolynomialError):
        sturm_root_count(RatPoly(()), Fraction(0), Fraction(1))
    with pytest.raises(ValueError):
        sturm_root_count(rp(1, 1), Fraction(1), Fraction(0))
    with pytest.raises(ValueError):
        sturm_root_count(RatPoly([Scalar(0, 1), Scalar(1)]), Fraction(0), Fraction(1))


def test_certify_examples():
    z = RatPoly([Scalar(0), Scalar(1)])
    assert certify_nonvanishing_segment(z, Scalar(1), Scalar(1, 1))
    z_half = RatPoly([Scalar(Fraction(-1, 2)), Scalar(1)])
    assert not certify_nonvanishing_segment(z_half, Scalar(0), Scalar(1))
    z2p1 = rp(1, 0, 1)
    assert certify_nonvanishing_segment(z2p1, Scalar(-1), Scalar(1))


def test_certify_endpoint_root_fails():
    z = RatPoly([Scalar(0), Scalar(1)])
    assert not certify_nonvanishing_segment(z, Scalar(0), Scalar(1))


def test_certify_complex_root_on_segment():
    # root at i/2 sits on the segment from 0 to i
    f = RatPoly([Scalar(0, Fraction(-1, 2)), Scalar(1)])
    assert not certify_nonvanishing_segment(f, Scalar(0), Scalar(0, 1))
    # but not on the segment from 1 to 1+i
    assert certify_nonvanishing_segment(f, Scalar(1), Scalar(1, 1))


def test_certify_sampled_soundness():
    polys = [
        rp(1, -3, 1, 2),
        RatPoly([Scalar(1, 1), Scalar(Fraction(1, 3), Fraction(-1, 2)), Scalar(2)]),
        rp(5),
    ]
    seg = (Scalar(Fraction(-1, 3), Fraction(1, 7)), Scalar(2, Fraction(-1, 5)))
    for f in polys:
        if not certify_nonvanishing_segment(f, *seg):
            continue
        z0, z1 = seg
        d = z1 - z0
        for i in range(0, 1001):
            s = Scalar(Fraction(i, 1000))
            assert not f.eval(z0 + d * s).is_zero()


def test_poly_arithmetic_and_divmod():
    f = rp(2, 0, 1)
    g = rp(1, 1)
    q, r = f.divmod(g)
    assert q * g + r == f
    assert r.degree() < g.degree()


def test_compose_affine():
    f = rp(0, 0, 1)  # x^2
    comp = f.compose_affine(Scalar(1), Scalar(2))  # (1+2s)^2
    assert comp == rp(1, 4, 4)


def test_interpolation_constant():
    m = Matrix.from_rows([[Fraction(3, 7)]])
    polys = poly_interpolate_entries([(Fraction(0), m), (Fraction(1), m)], 1)
    assert polys[0][0].degree() <= 0
    assert polys[0][0].eval(Scalar(Fraction(1, 2))) == Scalar(Fraction(3, 7))


def test_interpolation_linear_entries_recheck_at_third_point():
    def u(t):
        return Matrix.from_rows([[Fraction(1) - t, t], [t, Fraction(2) * t]])

    samples = [(Fraction(0), u(Fraction(0))), (Fraction(1), u(Fraction(1)))]
    polys = poly_interpolate_entries(samples, 1)
    t = Fraction(3, 5)
    probe = u(t)
    for i in range(2):
        for j in range(2):
            assert polys[i][j].eval(Scalar(t)) == probe.data[i][j]


def test_interpolation_errors():
    m = Matrix.identity(1)
    with pytest.raises(ValueError):
        poly_interpolate_entries([(Fraction(0), m)], 1)  # arity mismatch
    with pytest.raises(DuplicateSampleError):
        poly_interpolate_entries([(Fraction(0), m), (Fraction(0), m)], 1)


def test_poly_matrix_det():
    # det [[1, t], [t, 1]] = 1 - t^2
    entries = [[rp(1), rp(0, 1)], [rp(0, 1), rp(1)]]
    d = poly_matrix_det(entries)
    assert d == rp(1, 0, -1)
