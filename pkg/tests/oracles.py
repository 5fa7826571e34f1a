"""Brute-force reference implementations used only by the tests."""

from itertools import permutations

import numpy as np


def all_subgroups(G):
    """Every subgroup, found by adjoining one element at a time."""
    e = G.identity
    start = frozenset([e])
    seen = {start}
    stack = [start]
    while stack:
        H = stack.pop()
        for g in range(G.order):
            if g in H:
                continue
            K = set(H) | {g}
            frontier = list(K)
            while frontier:
                x = frontier.pop()
                for y in list(K):
                    for z in (G.mul(x, y), G.mul(y, x)):
                        if z not in K:
                            K.add(z)
                            frontier.append(z)
            K = frozenset(K)
            if K not in seen:
                seen.add(K)
                stack.append(K)
    return seen


def is_normal(G, H):
    return all(G.mul(G.mul(g, h), G.inverse(g)) in H for g in range(G.order) for h in H)


def normal_subgroups(G):
    return {H for H in all_subgroups(G) if is_normal(G, H)}


def coset_order(G, g, N):
    x, m = g, 1
    while x not in N:
        x = G.mul(x, g)
        m += 1
    return m


def max_quotient_order(G, N):
    return max(coset_order(G, g, N) for g in range(G.order))


def isomorphic(G, H):
    """Try every bijection fixing the identity."""
    if G.order != H.order:
        return False
    n = G.order
    TG, TH = np.asarray(G.table), np.asarray(H.table)
    eg, eh = G.identity, H.identity
    rest_g = [i for i in range(n) if i != eg]
    rest_h = [i for i in range(n) if i != eh]
    for perm in permutations(rest_h):
        phi = np.empty(n, dtype=np.int64)
        phi[eg] = eh
        phi[rest_g] = perm
        if (phi[TG] == TH[phi[:, None], phi[None, :]]).all():
            return True
    return False
