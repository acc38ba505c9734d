"""Shared oracles and corpus builders.

Oracles here are deliberately independent of the package's code paths:
rank comes from fraction-free (Bareiss) elimination on integers, GF(2)
subspaces from closure enumeration, and set-system clauses from plain
Python sets over element lists.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest

from bollobas import (
    SetSystem,
    random_compatible_pair_system,
    random_valid_system,
)
from bollobas.systems_model import elements_of_mask


# ---------------------------------------------------------------------------
# independent linear-algebra oracles


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(n_rows):
            if r != rank:
                for c in range(n_cols):
                    if c == col:
                        continue
                    m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) // prev
                m[r][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == n_rows:
            break
    return rank


def fractions_to_int_rows(rows) -> list[list[int]]:
    """Clear denominators row by row; rank is unchanged."""
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        lcm = 1
        for f in fracs:
            lcm = lcm * f.denominator // _gcd(lcm, f.denominator)
        out.append([int(f * lcm) for f in fracs])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def rational_rank(rows) -> int:
    return bareiss_rank(fractions_to_int_rows(rows))


def gf2_subspaces_bruteforce(n: int) -> list[frozenset[tuple[int, ...]]]:
    """All subspaces of GF(2)^n as vector sets: subsets containing 0 that are
    closed under addition.  Exponential; fine for n <= 3."""
    vectors = [tuple((i >> k) & 1 for k in range(n)) for i in range(1 << n)]
    zero = tuple([0] * n)
    out = []
    nonzero = [v for v in vectors if v != zero]
    for r in range(len(nonzero) + 1):
        for chosen in combinations(nonzero, r):
            s = frozenset((zero,) + chosen)
            if all(_xor(a, b) in s for a in s for b in s):
                out.append(s)
    return out


def _xor(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x ^ y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# independent set-system clause oracle (element lists, no bitmasks)


def set_tuple_lists(system: SetSystem, i: int) -> list[set[int]]:
    return [set(elements_of_mask(mask)) for mask in system.tuples[i - 1]]


def oracle_set_verify(system: SetSystem, flavor: str) -> bool:
    tuples = [set_tuple_lists(system, i) for i in range(1, system.m + 1)]
    for t in tuples:
        for p in range(len(t)):
            for q in range(p + 1, len(t)):
                if t[p] & t[q]:
                    return False
    m = len(tuples)
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            if flavor == "bollobas":
                if not (tuples[i][0] & tuples[j][1]):
                    return False
            elif i < j:
                hits = []
                for p in range(system.d):
                    for q in range(p + 1, system.d):
                        fwd = bool(tuples[i][p] & tuples[j][q])
                        bwd = bool(tuples[i][q] & tuples[j][p])
                        hits.append(fwd or (flavor == "weak" and bwd))
                if not any(hits):
                    return False
    return True


# ---------------------------------------------------------------------------
# seeded corpora


@pytest.fixture(scope="session")
def skew_set_pair_corpus():
    """Deterministic random skew set-pair systems, n <= 5."""
    out = []
    for seed in range(60):
        n = 2 + seed % 4  # 2..5
        out.append(
            random_valid_system("set", n, 2, "skew", target_m=2 + seed % 5, seed=seed)
        )
    return out


@pytest.fixture(scope="session")
def weak_set_tuple_corpus():
    out = []
    for seed in range(40):
        n = 2 + seed % 3
        d = 2 + seed % 3
        out.append(
            random_valid_system("set", n, d, "weak", target_m=2 + seed % 4, seed=100 + seed)
        )
    return out


@pytest.fixture(scope="session")
def compatible_pair_corpus():
    """Random skew decomposition-compatible subspace pair systems over Q."""
    out = []
    blocks_by_n = {
        2: [[1], [2]],
        3: [[1, 2], [3]],
        4: [[1, 2], [3, 4]],
    }
    for seed in range(40):
        n = 2 + seed % 3
        out.append(
            random_compatible_pair_system(
                n, blocks_by_n[n], target_m=2 + seed % 4, seed=200 + seed
            )
        )
    return out
