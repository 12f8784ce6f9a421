"""Exact feasibility LP over the rationals (phase-one simplex, Bland's rule)."""

from fractions import Fraction
from typing import List, Optional, Sequence


def find_belief(rows: Sequence[Sequence[Fraction]], n: int) -> Optional[List[Fraction]]:
    """Find p in the simplex of dimension n with ``row . p >= 0`` for every row.

    Returns an exact solution or None if the system is infeasible.
    """
    m = len(rows)
    # columns: p_0..p_{n-1}, slack_0..slack_{m-1}, art_0..art_m
    ncol = n + m + (m + 1)
    tab: List[List[Fraction]] = []
    for k, r in enumerate(rows):
        line = [Fraction(x) for x in r] + [Fraction(0)] * (m + m + 1) + [Fraction(0)]
        line[n + k] = Fraction(-1)
        line[n + m + k] = Fraction(1)
        tab.append(line)
    last = [Fraction(1)] * n + [Fraction(0)] * (m + m + 1) + [Fraction(1)]
    last[n + m + m] = Fraction(1)
    tab.append(last)
    basis = [n + m + k for k in range(m + 1)]
    art_start = n + m

    def reduced_cost(j):
        # minimize the sum of artificials
        c = Fraction(1) if j >= art_start else Fraction(0)
        return c - sum((tab[r][j] for r in range(m + 1) if basis[r] >= art_start), Fraction(0))

    while True:
        enter = next((j for j in range(ncol) if j not in basis and reduced_cost(j) < 0), None)
        if enter is None:
            break
        best_r, best_ratio = None, None
        for r in range(m + 1):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][-1] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[r] < basis[best_r])):
                    best_r, best_ratio = r, ratio
        if best_r is None:
            # unbounded cannot happen for a phase-one problem bounded below by 0
            break
        piv = tab[best_r][enter]
        tab[best_r] = [x / piv for x in tab[best_r]]
        for r in range(m + 1):
            if r != best_r and tab[r][enter]:
                f = tab[r][enter]
                tab[r] = [x - f * y for x, y in zip(tab[r], tab[best_r])]
        basis[best_r] = enter

    infeas = sum((tab[r][-1] for r in range(m + 1) if basis[r] >= art_start), Fraction(0))
    if infeas != 0:
        return None
    p = [Fraction(0)] * n
    for r, b in enumerate(basis):
        if b < n:
            p[b] = tab[r][-1]
    return p
