"""Shared fixtures: brute-force oracles and seeded random generators.

The oracle helpers here deliberately avoid the library's linear algebra and
matroid code paths so that expected values in tests are computed
independently of the functions they check.
"""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from flagmatroids import flag_core as fl
from flagmatroids import gf_linalg as gl
from flagmatroids import graphic as gr
from flagmatroids import matroid_core as mc
from flagmatroids.representability import FlagRepresentation

FANO_ROWS = [
    [1, 1, 1, 1, 0, 0, 0],
    [1, 1, 0, 0, 1, 1, 0],
    [1, 0, 1, 0, 1, 0, 1],
]


def oracle_rank_mod_p(rows, p):
    """Gaussian elimination written from scratch for test oracles."""
    work = [list(r) for r in rows]
    rank = 0
    cols = len(work[0]) if work else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(work)) if work[i][c] % p), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = pow(work[rank][c], p - 2, p)
        work[rank] = [x * inv % p for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][c] % p:
                f = work[i][c]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def oracle_independent_columns(rows, cols_idx, p):
    sub = [[r[j] for j in cols_idx] for r in rows]
    return oracle_rank_mod_p(sub, p) == len(cols_idx)


def oracle_matroid_rank(bases, subset):
    """Max intersection with a basis-generated independent set, by brute force."""
    best = 0
    for b in bases:
        for k in range(len(subset), -1, -1):
            for sub in combinations(subset, k):
                if set(sub) <= set(b):
                    best = max(best, k)
                    break
            else:
                continue
            break
    return best


@pytest.fixture(scope="session")
def fano():
    return gl.matrix(2, FANO_ROWS)


@pytest.fixture(scope="session")
def f7(fano):
    return mc.linear_matroid(fano)


def random_gf_matrix(rng: random.Random, p: int, rows: int, cols: int) -> gl.GFMatrix:
    return gl.matrix(p, [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)])


def random_prefix_chain_matrix(rng: random.Random, p: int, r: int, n: int, tries: int = 200):
    """A random r x n matrix over GF(p) whose every row prefix has full rank."""
    for _ in range(tries):
        a = random_gf_matrix(rng, p, r, n)
        if all(gl.rank(gl.prefix_rows(a, d)) == d for d in range(1, r + 1)):
            return a
    return None


def random_representation(rng: random.Random, p: int, max_n: int = 6):
    """A random valid flag representation (random levels over a prefix-full
    matrix)."""
    while True:
        n = rng.randint(2, max_n)
        r = rng.randint(1, min(n, 4))
        a = random_prefix_chain_matrix(rng, p, r, n)
        if a is None:
            continue
        pool = list(range(1, r))
        k = rng.randint(0, len(pool))
        levels = tuple(sorted(rng.sample(pool, k))) + (r,)
        return FlagRepresentation(a, levels)


def random_multigraph(rng: random.Random, vertices: int, edges: int) -> gr.MultiGraph:
    out = []
    for _ in range(edges):
        u = rng.randrange(vertices)
        v = rng.randrange(vertices)
        out.append((u, v))
    return gr.multigraph(vertices, out)


def random_connected_multigraph(rng: random.Random, vertices: int, extra: int) -> gr.MultiGraph:
    edges = [(rng.randrange(i), i) for i in range(1, vertices)]
    for _ in range(extra):
        u = rng.randrange(vertices)
        v = rng.randrange(vertices)
        edges.append((u, v))
    return gr.multigraph(vertices, edges)


def random_merge_chain(rng: random.Random, vertices: int, steps: int) -> gr.PartitionChain:
    """Chain ending in singletons where each coarsening merges two cells."""
    parts = [gr.singletons(vertices)]
    current = [list(c) for c in gr.singletons(vertices)]
    for _ in range(steps):
        if len(current) < 2:
            break
        i, j = sorted(rng.sample(range(len(current)), 2))
        current[i] = current[i] + current[j]
        del current[j]
        parts.append(tuple(tuple(sorted(c)) for c in current))
    parts.reverse()
    return gr.chain_of(vertices, parts)


def random_full_flag(rng: random.Random, max_n: int = 5) -> fl.FlagMatroid:
    """Random full flag matroids from a mix of constructions."""
    kind = rng.randrange(4)
    if kind == 0:
        # prefix chain of a random matrix over a random small field
        p = rng.choice([2, 3, 5])
        n = rng.randint(2, max_n)
        r = rng.randint(1, min(n, max_n - 1))
        a = random_prefix_chain_matrix(rng, p, r, n)
        if a is None:
            return random_full_flag(rng, max_n)
        lo = rng.randint(0, r - 1)
        return fl.from_sequence(
            [mc.linear_matroid(gl.prefix_rows(a, d)) for d in range(lo, r + 1)]
        )
    if kind == 1:
        # graphic chain merging one pair per step
        v = rng.randint(2, max_n)
        g = random_connected_multigraph(rng, v, rng.randint(0, max_n - v + 1))
        g = gr.MultiGraph(g.vertices, g.edges[:max_n])
        if not g.edges:
            return random_full_flag(rng, max_n)
        chain = random_merge_chain(rng, v, rng.randint(0, v - 1))
        try:
            return gr.graphic_flag(g, chain)
        except Exception:
            return random_full_flag(rng, max_n)
    if kind == 2:
        # consecutive interval of a random linear matroid
        p = rng.choice([2, 3, 5, 7])
        n = rng.randint(2, max_n)
        r = rng.randint(1, n)
        m = mc.linear_matroid(random_gf_matrix(rng, p, r, n))
        if m.rank == 0:
            return random_full_flag(rng, max_n)
        s = rng.randint(0, m.rank)
        t = rng.randint(s, min(m.rank, n))
        try:
            return fl.flag_interval(m, s, t)
        except Exception:
            return random_full_flag(rng, max_n)
    m = mc.uniform(rng.randint(1, 3), rng.randint(3, max_n))
    return fl.independent_flag(m)


def random_flag(rng: random.Random, max_n: int = 6) -> fl.FlagMatroid:
    """Random flag matroids, not necessarily full."""
    fm = random_full_flag(rng, max_n)
    cards = list(fm.cardinalities)
    while len(cards) > 1 and rng.random() < 0.4:
        fm = fl.chop(fm, rng.choice(cards))
        cards = list(fm.cardinalities)
    return fm
