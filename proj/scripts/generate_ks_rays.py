#!/usr/bin/env python3
"""Generate the shipped Kochen-Specker ray set (data/ks61.vec).

Seeds: all integer rays with entries in {-2..2} and squared norm at most 5,
canonicalized up to scalar.  The set is closed under cross products of
orthogonal pairs, which yields 61 rays.  Before writing the file the script
re-verifies the three properties the repository relies on:

  * the orthogonality graph is a facet graph with clique number 3,
  * the set is basis-complete (every ray lies in an orthogonal triple),
  * no non-contextual colouring exists (exhaustive backtracking search).
"""

import itertools
import math
import os
import sys


def canon(v):
    g = math.gcd(math.gcd(abs(v[0]), abs(v[1])), abs(v[2]))
    if g:
        v = tuple(x // g for x in v)
    for x in v:
        if x != 0:
            if x < 0:
                v = tuple(-y for y in v)
            break
    return v


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def closure(seeds):
    rays = set(seeds)
    while True:
        new = set()
        ordered = sorted(rays)
        for i, u in enumerate(ordered):
            for v in ordered[i + 1:]:
                if dot(u, v) == 0:
                    w = canon(cross(u, v))
                    if w not in rays:
                        new.add(w)
        if not new:
            return rays
        rays |= new
        if len(rays) > 5000:
            raise RuntimeError("closure blew up")


def analyze(rays):
    ordered = sorted(rays)
    n = len(ordered)
    adj = [set() for _ in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if dot(ordered[i], ordered[j]) == 0:
                adj[i].add(j)
                adj[j].add(i)
                edges.append((i, j))
    bases = []
    for (i, j) in edges:
        for k in adj[i] & adj[j]:
            if k > j:
                bases.append((i, j, k))
    facet = all(adj[i] for i in range(n)) and all(adj[i] & adj[j] for (i, j) in edges)
    basis_complete = all(any(i in b for b in bases) for i in range(n))

    colour = [None] * n

    def backtrack(b):
        if b == len(bases):
            return True
        tri = bases[b]
        ones = [t for t in tri if colour[t] == 1]
        unset = [t for t in tri if colour[t] is None]
        if len(ones) > 1:
            return False
        if len(ones) == 1:
            for t in unset:
                colour[t] = 0
            if backtrack(b + 1):
                return True
            for t in unset:
                colour[t] = None
            return False
        if not unset:
            return False
        for pick in unset:
            saved = []
            for t in tri:
                if colour[t] is None:
                    colour[t] = 1 if t is pick else 0
                    saved.append(t)
            bad = any(colour[j] == 1 for j in adj[pick])
            if not bad and backtrack(b + 1):
                return True
            for t in saved:
                colour[t] = None
        return False

    colourable = backtrack(0)
    return ordered, edges, bases, facet, basis_complete, colourable


def main():
    seeds = {canon(v)
             for v in itertools.product(range(-2, 3), repeat=3)
             if v != (0, 0, 0) and dot(v, v) <= 5}
    rays = closure(seeds)
    ordered, edges, bases, facet, basis_complete, colourable = analyze(rays)
    print(f"rays={len(ordered)} edges={len(edges)} bases={len(bases)} "
          f"facet={facet} basis_complete={basis_complete} colourable={colourable}")
    if not facet or not basis_complete or colourable:
        print("verification failed; not writing output", file=sys.stderr)
        return 1

    out = os.path.join(os.path.dirname(__file__), "..", "data", "ks61.vec")
    with open(out, "w") as fh:
        fh.write("# Kochen-Specker ray set: closure of the norm^2 <= 5 integer rays\n")
        fh.write("# under cross products of orthogonal pairs.  Facet, basis-complete,\n")
        fh.write("# and not non-contextually colourable (see scripts/generate_ks_rays.py).\n")
        names = {}
        for i, v in enumerate(ordered):
            names[v] = f"r{i + 1}"
            fh.write(f"vec r{i + 1} {v[0]} {v[1]} {v[2]}\n")
        for (i, j, k) in sorted(bases):
            fh.write(f"basis r{i + 1} r{j + 1} r{k + 1}\n")
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
