from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, List, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Node = int
EdgePair = Tuple[int, int]
EdgeSet = Tuple[int, ...]
Rational = Union[int, Fraction]
Vector = Tuple[Fraction, ...]

# Refuse enumerations whose predicted partition count exceeds this
ENUMERATION_BUDGET = 10 ** 8

# Hull engine limits
HULL_MAX_EDGES = 24
HULL_MAX_GENERATORS = 50_000

# Largest star size k and tree size l the tree separators accept
SEPARATION_MAX_SIZE = 6

# check_integer_points scans {0, ..., INTEGER_POINT_BOUND}^E
INTEGER_POINT_BOUND = 2


def to_fraction(value: Union[Rational, str]) -> Fraction:
    """Exact conversion; strings may be written as ``p/q``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError('floating point value {!r} is not exact'.format(value))
    return Fraction(value)


def to_fractions(values: Iterable[Union[Rational, str]]) -> Vector:
    return tuple(to_fraction(v) for v in values)


def format_rational(value: Rational) -> str:
    return str(Fraction(value))


def format_edge_set(edges: Iterable[int]) -> str:
    edges = list(edges)
    if not edges:
        return '-'
    return ' '.join(str(e) for e in edges)


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices_of(mask: int) -> EdgeSet:
    result = []
    while mask:
        low = mask & -mask
        result.append(low.bit_length() - 1)
        mask ^= low
    return tuple(result)


def popcount(mask: int) -> int:
    return bin(mask).count('1')


def incidence_vector(edges: Iterable[int], dimension: int) -> Tuple[int, ...]:
    x = [0] * dimension
    for e in edges:
        x[e] = 1
    return tuple(x)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else max(a, b)


def scale_to_integers(values: Sequence[Rational]) -> List[int]:
    """Multiply by the least common denominator."""
    fractions = [to_fraction(v) for v in values]
    common = reduce(lcm, (f.denominator for f in fractions), 1)
    return [int(f * common) for f in fractions]


def divide_by_gcd(values: Sequence[int]) -> List[int]:
    g = reduce(gcd, (abs(v) for v in values), 0)
    if g <= 1:
        return list(values)
    return [v // g for v in values]


def _to_domain(rows: Sequence[Sequence[Rational]]) -> DomainMatrix:
    width = len(rows[0])
    elements = [[QQ(to_fraction(a).numerator, to_fraction(a).denominator) for a in row] for row in rows]
    return DomainMatrix(elements, (len(rows), width), QQ)


def from_sympy(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def matrix_rank(rows: Sequence[Sequence[Rational]]) -> int:
    """Exact rank over the rationals."""
    if not rows or not rows[0]:
        return 0
    return _to_domain(rows).rank()


def independent_rows(rows: Sequence[Sequence[Rational]]) -> Tuple[int, ...]:
    """Indices of the earliest maximal linearly independent subset of ``rows``."""
    if not rows or not rows[0]:
        return ()
    _, pivots = _to_domain(rows).transpose().rref()
    return tuple(pivots)


def inverse(rows: Sequence[Sequence[Rational]]) -> List[List[Fraction]]:
    inv = _to_domain(rows).inv().to_Matrix()
    return [[from_sympy(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]
