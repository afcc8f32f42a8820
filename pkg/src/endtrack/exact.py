"""Exact rational linear algebra: matrices, characteristic polynomials,
Perron data and Sturm-certified dominant roots.

Everything here works over ``fractions.Fraction``; floats never enter the
arithmetic.  Approximate answers (bisection fallback) are explicitly
flagged so callers can surface them instead of silently degrading.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Matrix = Tuple[Tuple[Fraction, ...], ...]
Vector = Tuple[Fraction, ...]


class SpectralError(ValueError):
    """Raised when a matrix has no usable dominant eigenvalue."""


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Normalise nested sequences into a square tuple-of-tuples of Fractions."""
    mat = tuple(tuple(Fraction(x) for x in row) for row in rows)
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise ValueError(f"expected a nonempty square matrix, got shape {[len(r) for r in mat]}")
    return mat


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum((a[i][j] * v[j] for j in range(len(v))), Fraction(0)) for i in range(len(a)))


def mat_pow(a: Matrix, k: int) -> Matrix:
    if k < 0:
        raise ValueError("negative matrix power")
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def char_poly(a: Matrix) -> List[Fraction]:
    """Coefficients of det(xI - A), highest degree first, via Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [Fraction(1)]
    m = identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -trace(m) / k
        coeffs.append(c)
        for i in range(n):
            m = tuple(
                tuple(m[r][j] + (c if r == j else 0) for j in range(n)) if r == i else m[r]
                for r in range(n)
            )
    return coeffs


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_derive(coeffs: Sequence[Fraction]) -> List[Fraction]:
    n = len(coeffs) - 1
    return [coeffs[i] * (n - i) for i in range(n)]


def _poly_divmod(num: List[Fraction], den: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    num = list(num)
    out = []
    while len(num) >= len(den) and any(num):
        lead = num[0] / den[0]
        out.append(lead)
        for i in range(len(den)):
            num[i] -= lead * den[i]
        num.pop(0)
    while num and num[0] == 0:
        num.pop(0)
    return out, num


def sturm_chain(coeffs: Sequence[Fraction]) -> List[List[Fraction]]:
    chain = [list(coeffs)]
    deriv = poly_derive(coeffs)
    if deriv:
        chain.append(deriv)
    while len(chain[-1]) > 1:
        _, rem = _poly_divmod(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_changes(chain: List[List[Fraction]], x: Fraction) -> int:
    signs = []
    for poly in chain:
        v = poly_eval(poly, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_in(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    chain = sturm_chain(coeffs)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def _divisors(n: int) -> List[int]:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(coeffs: Sequence[Fraction]) -> List[Fraction]:
    """All rational roots of the polynomial (with multiplicity collapsed)."""
    denom = 1
    for c in coeffs:
        denom = denom * c.denominator // _gcd(denom, c.denominator)
    ints = [int(c * denom) for c in coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)
    if not ints:
        return []
    tail = ints[-1]
    zero_root = []
    while tail == 0:
        zero_root = [Fraction(0)]
        ints.pop()
        if not ints:
            return zero_root
        tail = ints[-1]
    lead = ints[0]
    roots = set(zero_root)
    for p in _divisors(tail):
        for q in _divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if poly_eval([Fraction(c) for c in ints], cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def nullspace_vector(a: Matrix) -> Optional[Vector]:
    """One nonzero kernel vector of a singular matrix, or None."""
    n = len(a)
    rows = [list(row) for row in a]
    pivots: List[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][col] for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    col = free[0]
    vec = [Fraction(0)] * n
    vec[col] = Fraction(1)
    for rank, pc in enumerate(pivots):
        vec[pc] = -rows[rank][col]
    return tuple(vec)


def perron(rows: Sequence[Sequence], tol: Fraction = Fraction(1, 10**12)) -> Dict[str, object]:
    """Dominant eigenvalue and nonnegative eigenvector of a nonnegative matrix.

    Returns a dict with keys ``value``, ``vector`` (sum-normalised), ``exact``
    (False only when the bisection fallback fired), and ``irreducible``
    (False when the eigenvector has a zero entry).  Raises SpectralError for
    nilpotent matrices.
    """
    a = to_matrix(rows)
    n = len(a)
    if any(x < 0 for row in a for x in row):
        raise ValueError("perron expects a nonnegative matrix")
    coeffs = char_poly(a)
    if all(c == 0 for c in coeffs[1:]):
        raise SpectralError("matrix is nilpotent; no dominant eigenvalue")
    bound = max(sum(row, Fraction(0)) for row in a) + 1
    candidates = [r for r in rational_roots(coeffs) if r > 0]
    value: Optional[Fraction] = None
    exact = True
    for cand in sorted(candidates, reverse=True):
        if count_roots_in(coeffs, cand, bound) == 0:
            value = cand
            break
    if value is None:
        lo, hi = Fraction(0), bound
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if count_roots_in(coeffs, mid, bound) > 0:
                lo = mid
            else:
                hi = mid
        value = (lo + hi) / 2
        exact = False
    if value == 0:
        raise SpectralError("spectral radius is zero; no dominant eigenvalue")
    if exact:
        shifted = tuple(
            tuple(a[i][j] - (value if i == j else 0) for j in range(n)) for i in range(n)
        )
        vec = nullspace_vector(shifted)
        if vec is None:
            raise SpectralError(f"no kernel vector at eigenvalue {value}")
    else:
        vec = tuple(Fraction(1) for _ in range(n))
        for _ in range(60):
            nxt = mat_vec(a, vec)
            total = sum(nxt, Fraction(0))
            if total == 0:
                break
            vec = tuple(x / total for x in nxt)
    if all(x <= 0 for x in vec):
        vec = tuple(-x for x in vec)
    if any(x < 0 for x in vec):
        raise SpectralError("dominant eigenvector changes sign; matrix too degenerate")
    total = sum(vec, Fraction(0))
    vec = tuple(x / total for x in vec)
    return {
        "value": value,
        "vector": vec,
        "exact": exact,
        "irreducible": all(x > 0 for x in vec),
    }


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def nth_root(x: Fraction, p: int) -> Optional[Fraction]:
    """Exact p-th root of a positive rational, or None when irrational."""
    if x <= 0:
        raise ValueError(f"nth_root expects a positive rational, got {x}")
    num = _int_root(x.numerator, p)
    den = _int_root(x.denominator, p)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(n: int, p: int) -> Optional[int]:
    if n == 0:
        return 0
    r = round(n ** (1.0 / p))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**p == n:
            return cand
    return None
