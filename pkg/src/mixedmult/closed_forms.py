"""Closed-form evaluators used as independent oracles.

Conventions: 0^0 = 1, empty sums are 0, empty products are 1.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, prod

from .errors import InputError, PreconditionError


def _power(b: int, k: int) -> int:
    return 1 if k == 0 else b ** k


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 0:
            yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def complete_homogeneous(total: int, values) -> int:
    """sum over j_1 + ... + j_q = total of prod values_k^{j_k}; zero for total < 0."""
    if total < 0:
        return 0
    return sum(prod(_power(v, j) for v, j in zip(values, js)) for js in _compositions(total, len(values)))


def colon_chain_length(dims) -> int:
    """s = max{i : dim A/I_i = dim A/I_1 - i + 1} for the colon ideals I_1, I_2, ..."""
    s = 0
    for i, dim in enumerate(dims, start=1):
        if dim == dims[0] - i + 1:
            s = i
    return s


def htu_rees(e_list, dims, dim_A: int, e_A: int) -> int:
    """Herzog-Trung-Ulrich multiplicity of the Rees algebra of a d-sequence.

    ``e_list[j-1]`` and ``dims[j-1]`` are e(A/I_j) and dim A/I_j for the colon
    ideals I_j = (x_1..x_{j-1}) : x_j.
    """
    if len(e_list) != len(dims) or not dims:
        raise InputError("e_list and dims must be nonempty and of equal length")
    if dims[0] > dim_A:
        raise InputError("dim A/I_1 cannot exceed dim A")
    s = colon_chain_length(dims)
    head = sum(e_list[:s])
    if dims[0] == dim_A:
        return head
    if dims[0] == dim_A - 1:
        return head + e_A
    return e_A


def hoang_mixed(e_list, dims, length: int) -> list[int]:
    """Hoang: e_i(m|I) = e(A/I_{i+1}) for i < s and 0 beyond, for i = 0..length-1."""
    s = colon_chain_length(dims)
    return [e_list[i] if i < s else 0 for i in range(length)]


def _check_sorted(a):
    if any(x < 1 for x in a):
        raise InputError("degrees must be positive")
    if list(a) != sorted(a):
        raise PreconditionError("degrees must be non-decreasing")


def filter_regular_rees(a, e_A: int = 1) -> int:
    """(1 + sum_{i=1}^{n-1} a_1...a_i) e(A)."""
    a = list(a)
    _check_sorted(a)
    return (1 + sum(prod(a[:i]) for i in range(1, len(a)))) * e_A


def filter_regular_extended(a, e_A: int = 1) -> int:
    """(1 + sum_{i=l}^{n-1} a_1...a_i) e(A) with l the last index where a_l = 1 (0 if none)."""
    a = list(a)
    _check_sorted(a)
    ones = [i + 1 for i, x in enumerate(a) if x == 1]
    l = max(ones) if ones else 0
    return (1 + sum(prod(a[:i]) for i in range(l, len(a)))) * e_A


def dsequence_rees_mixed(degrees, e_list, dims) -> list[int]:
    """Hoang-Trung e_i(A[It]) for a homogeneous d-sequence, i = 0..s.

    ``e_list`` and ``dims`` describe the colon ideals I_q as in htu_rees.
    """
    d = list(degrees)
    _check_sorted(d)
    s = dims[0] - 1
    ms = [q for q in range(1, len(dims) + 1) if dims[q - 1] + q - 2 == s]
    m = max(ms) if ms else 0
    out = []
    for i in range(s + 1):
        total = 0
        for q in range(1, min(m, s - i + 1) + 1):
            k = s - q - i + 1
            total += (-1) ** k * e_list[q - 1] * complete_homogeneous(k, d[:q])
        out.append(total)
    return out


def regular_sequence_rees_mixed(degrees, e_A: int, n_vars: int, m: int | None = None) -> list[int]:
    """e_i(A[It]) for a homogeneous regular sequence of the given degrees, i = 0..s, s = dim A - 1.

    The upper summation bound is min{m, s - i + 1} with m the length of the
    sequence unless given.
    """
    d = list(degrees)
    _check_sorted(d)
    s = n_vars - 1
    m = len(d) if m is None else m
    out = []
    for i in range(s + 1):
        total = 0
        for q in range(1, min(m, s - i + 1) + 1):
            k = s - q - i + 1
            inner = 0
            for js in _compositions(k, q):
                inner += prod(_power(d[t], js[t] + 1) for t in range(q - 1)) * _power(d[q - 1], js[q - 1])
            total += (-1) ** k * e_A * inner
        out.append(total)
    return out


def minors_mixed(r: int) -> list[int]:
    """e_i(A[It]) for the maximal minors of a generic (r-1) x r matrix, as displayed
    in the closed form, with the summation bound min{r, s - i + 1}."""
    if r < 2:
        raise InputError("minors formula needs r >= 2")
    s = (r - 1) * r - 1
    out = []
    for i in range(s + 1):
        total = 0
        for q in range(1, min(r, s - i + 1) + 1):
            k = s - q - i + 1
            total += (-1) ** k * comb(r - 1, q - 1) * comb(s - i, q - 1) * _power(r, k)
        out.append(total)
    return out


def katz_verma_rhs(e_front: int, e_list, d: int) -> Fraction:
    """(1/2^d)[e(m^2 + I) + sum_{j<d} 2^j e_j(m^2 + I | I)]."""
    e_list = list(e_list)
    if len(e_list) != d:
        raise InputError(f"need exactly {d} mixed multiplicities")
    return Fraction(e_front + sum(2 ** j * e for j, e in enumerate(e_list)), 2 ** d)


def bigraded_free_mixed(m: int, n: int, degrees) -> list[int]:
    """e_i of k[X_1..X_m, Y_1..Y_n] with deg X = (1,0), deg Y_j = (d_j, 1), i = 0..m+n-2."""
    if m < 1 or n < 1:
        raise InputError("need m, n >= 1")
    degrees = list(degrees)
    if len(degrees) != n:
        raise InputError("one degree per Y variable")
    out = []
    for i in range(m + n - 1):
        if i >= m:
            out.append(0)
        else:
            out.append((-1) ** (m - i - 1) * complete_homogeneous(m - 1 - i, degrees))
    return out


def embedded_degree_formula(e_list, c: int, e: int) -> int:
    """sum_i binom(s, i) e_i c^i e^{s-i} with s = len(e_list) - 1."""
    s = len(e_list) - 1
    return sum(comb(s, i) * x * _power(c, i) * _power(e, s - i) for i, x in enumerate(e_list))


def bernstein_simplex_bound(degrees) -> int:
    """Bezout number prod d_i."""
    return prod(degrees)


ORACLES = {
    "htu": htu_rees,
    "hoang": hoang_mixed,
    "filter_regular": filter_regular_rees,
    "extended_filter_regular": filter_regular_extended,
    "regular_sequence_rees": regular_sequence_rees_mixed,
    "dsequence_rees": dsequence_rees_mixed,
    "maximal_minors": minors_mixed,
    "katz_verma": katz_verma_rhs,
    "bigraded_free": bigraded_free_mixed,
    "embedded": embedded_degree_formula,
}
