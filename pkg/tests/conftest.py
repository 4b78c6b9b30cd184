import sympy
from sympy import Poly, symbols

X = symbols("x")


def to_sympy(f):
    """IntPoly -> sympy Poly, for independent oracle computations."""
    return Poly(list(reversed(f.coeffs)), X)


def brute_roots(coeffs, p):
    return [r for r in range(p) if sum(c * pow(r, i, p) for i, c in enumerate(coeffs)) % p == 0]


def sympy_index(f):
    """[Z_K : Z[theta]] via sympy's round-two integral basis."""
    from sympy.polys.numberfields.basis import round_two

    P = to_sympy(f)
    _, dK = round_two(P)
    ratio = sympy.discriminant(P) // dK
    root = sympy.integer_nthroot(ratio, 2)
    assert root[1]
    return int(root[0])
