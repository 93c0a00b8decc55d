"""
Exact Counting
Closed forms for the extremal sizes and the number of optimal sets.

Everything here is integer arithmetic (sympy factorials and binomials,
converted to Python ints); no floating point is involved.
"""
from typing import Dict, List, NewType, Tuple

from sympy import binomial, factorial

from errors import InvalidSizeError
from perm_core import check_size

ExactCount = NewType('ExactCount', int)


# Values below the range of the general formulas.
# |Q*_2| = 1: {21} is the only cover of the single inversion.
# |Q*_3| = 3: the three size-2 sets {132,231}, {213,312}, {231,312}
#   (the general odd formula would give 2).
SMALL_Q_STAR: Dict[int, int] = {2: 1, 3: 3}

# |P*_2| = 1: S_2 itself.
# |P*_3| = 2: the two circular-shift orbits {123,231,312} and {132,213,321}.
# |P*_4| = 12: six shift orbits plus six relabelings of the unique Q*_4.
SMALL_P_STAR: Dict[int, int] = {2: 1, 3: 2, 4: 12}


def _check_c(n: int, c: int) -> None:
    if not 1 <= c < n:
        raise InvalidSizeError(f"c must satisfy 1 <= c < n = {n}, got {c}")


def gamma_I(n: int) -> ExactCount:
    """Maximum size of a minimal inversion-complete set: ⌊n²/4⌋."""
    check_size(n)
    return ExactCount(n * n // 4)


def gamma_P(n: int) -> ExactCount:
    """Maximum size of a minimal pair-complete set: max(n, ⌊n²/4⌋)."""
    check_size(n)
    return ExactCount(max(n, n * n // 4))


mu = gamma_P


def family_size(n: int, c: int) -> ExactCount:
    """|F_{i,c,j}| = (c-1)!(n-c-1)!, independent of i and j."""
    check_size(n)
    _check_c(n, c)
    return ExactCount(int(factorial(c - 1) * factorial(n - c - 1)))


def transversal_count(n: int, c: int) -> ExactCount:
    """Number of transversals of the c(n-c) pairwise disjoint families F_{i,c,j}."""
    return ExactCount(family_size(n, c) ** (c * (n - c)))


def theorem_even_form(n: int) -> ExactCount:
    """[((n/2)-1)!]^(n²/2), the even-n closed form of |Q*_n|."""
    check_size(n)
    if n % 2:
        raise InvalidSizeError(f"the even form needs even n, got {n}")
    return ExactCount(int(factorial(n // 2 - 1)) ** (n * n // 2))


def theorem_odd_form(n: int) -> ExactCount:
    """2[(⌊n/2⌋-1)! ⌊n/2⌋!]^⌊n²/4⌋, the odd-n closed form of |Q*_n|."""
    check_size(n)
    if n % 2 == 0:
        raise InvalidSizeError(f"the odd form needs odd n, got {n}")
    h = n // 2
    return ExactCount(2 * int(factorial(h - 1) * factorial(h)) ** (n * n // 4))


def count_Q_star(n: int) -> ExactCount:
    """|Q*_n|, the number of maximum minimal inversion-complete subsets of S_n."""
    check_size(n)
    if n in SMALL_Q_STAR:
        return ExactCount(SMALL_Q_STAR[n])
    if n % 2 == 0:
        return theorem_even_form(n)
    return theorem_odd_form(n)


def count_P_star(n: int) -> ExactCount:
    """|P*_n|, the number of maximum minimal pair-complete subsets of S_n."""
    check_size(n)
    if n in SMALL_P_STAR:
        return ExactCount(SMALL_P_STAR[n])
    return ExactCount(int(binomial(n, n // 2)) * count_Q_star(n))


def count_table(n_max: int) -> List[Tuple[int, int, int, int, int]]:
    """Rows (n, γ_I, γ_P, |Q*_n|, |P*_n|) for 2 <= n <= n_max."""
    check_size(n_max)
    return [(n, gamma_I(n), gamma_P(n), count_Q_star(n), count_P_star(n))
            for n in range(2, n_max + 1)]


if __name__ == '__main__':
    print(f"{'n':>3} {'γ_I':>5} {'γ_P':>5} {'|Q*_n|':>24} {'|P*_n|':>26}")
    for row in count_table(10):
        print(f"{row[0]:>3} {row[1]:>5} {row[2]:>5} {row[3]:>24} {row[4]:>26}")
