"""Vectorised brute-force helpers shared by the test modules."""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache

import numpy as np

from ghostlab.cochain import enumerate_ker_partial
from ghostlab.ghosts import order_counts
from ghostlab.graph import DualGraph


def coboundary_rows(graph: DualGraph, ell: int) -> np.ndarray:
    """Every ``δx`` with ``x`` zero at the root, one per row."""
    others = [v for v in range(graph.n_vertices) if v != graph.root]
    grid = np.array(list(itertools.product(range(ell), repeat=len(others))),
                    dtype=np.int64).reshape(ell ** len(others), len(others))
    D = np.zeros((graph.n_edges, len(others)), dtype=np.int64)
    for i, (t, h) in enumerate(graph.ends):
        if h != graph.root:
            D[i, others.index(h)] += 1
        if t != graph.root:
            D[i, others.index(t)] -= 1
    return (grid @ D.T) % ell


def multiplicity_rows(graph: DualGraph, ell: int) -> np.ndarray:
    rows = [c.values for c in enumerate_ker_partial(graph, ell)]
    return np.array(rows, dtype=np.int64).reshape(len(rows), graph.n_edges)


def ghost_tables(graph: DualGraph, ell: int):
    """For every M in ker ∂: the ghost rows (ξ-exponents) found by scanning cuts.

    Yields ``(M_values, ghosts)`` with ``ghosts`` an ``(n, E)`` array.
    """
    Ms = multiplicity_rows(graph, ell)
    B = coboundary_rows(graph, ell)
    g = np.gcd(Ms, ell)
    r = ell // g
    m = (Ms // g) % r
    inv = np.zeros_like(m)
    for idx in zip(*np.nonzero(r > 1)):
        inv[idx] = pow(int(m[idx]), -1, int(r[idx]))
    ok = ~((B[None, :, :] % g[:, None, :]).any(axis=2))
    A = (B[None, :, :] * inv[:, None, :]) % ell
    for k in range(len(Ms)):
        yield tuple(int(x) for x in Ms[k]), A[k][ok[k]]


def row_orders(rows: np.ndarray, ell: int) -> Counter:
    if rows.shape[1] == 0:
        return Counter({1: len(rows)})
    gcds = np.gcd.reduce(np.concatenate([rows, np.full((len(rows), 1), ell)], axis=1), axis=1)
    return Counter((ell // gcds).tolist())


@lru_cache(maxsize=None)
def expected_orders(divisors: tuple[int, ...], ell: int) -> Counter:
    return Counter(order_counts(divisors, ell))
