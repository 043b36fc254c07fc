"""Triangulated dunce hat: a subdivided triangle whose three sides are glued
by the word a a a^-1. Prints maximal simplices as vertex-index triples."""
import itertools
import sys
from fractions import Fraction

import numpy as np


def mid(a, b):
    return tuple((x + y) / 2 for x, y in zip(a, b))


def centroid(p, q, r):
    return tuple((x + y + z) / 3 for x, y, z in zip(p, q, r))


def dunce_hat(k):
    tris = []
    for i in range(k):
        for j in range(k - i):
            tris.append(((i, j), (i + 1, j), (i, j + 1)))
            if i + j < k - 1:
                tris.append(((i + 1, j), (i + 1, j + 1), (i, j + 1)))
    # two barycentric subdivisions keep the glued corners from producing degenerate triangles
    fine = [tuple(tuple(Fraction(c) for c in v) for v in t) for t in tris]
    for _ in range(2):
        fine = [(a, mid(a, b), centroid(p, q, r))
                for p, q, r in fine for a, b, _c in itertools.permutations((p, q, r))]
    # corners P0=(0,0), P1=(k,0), P2=(0,k); sides P0->P1, P1->P2, P0->P2 all read as a
    def key(p):
        i, j = p
        if j == 0:
            return ("a", i % k)
        if i + j == k:
            return ("a", j % k)
        if i == 0:
            return ("a", j % k)
        return p
    labels = {}
    faces = set()
    for t in fine:
        f = []
        for p in t:
            f.append(labels.setdefault(key(p), len(labels)))
        f = tuple(sorted(f))
        if len(set(f)) < 3 or f in faces:
            return None
        faces.add(f)
    return sorted(faces)


def gf2_rank(rows):
    m = np.array(rows, dtype=np.uint8) % 2
    r = 0
    for c in range(m.shape[1]):
        piv = next((i for i in range(r, m.shape[0]) if m[i, c]), None)
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        for i in range(m.shape[0]):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
    return r


def check(faces):
    edges = sorted({e for f in faces for e in itertools.combinations(f, 2)})
    verts = sorted({v for f in faces for v in f})
    d1 = [[int(v in e) for e in edges] for v in verts]
    d2 = [[int(set(e) <= set(f)) for f in faces] for e in edges]
    r1, r2 = gf2_rank(d1), gf2_rank(d2)
    b0 = len(verts) - 1 - r1
    b1 = len(edges) - r1 - r2
    b2 = len(faces) - r2
    cofaces = {e: sum(set(e) <= set(f) for f in faces) for e in edges}
    free = [e for e, c in cofaces.items() if c == 1]
    return (b0, b1, b2), free, len(verts)


for k in range(1, 6):
    faces = dunce_hat(k)
    if faces is None:
        continue
    betti, free, nv = check(faces)
    print(f"k={k} vertices={nv} triangles={len(faces)} betti={betti} free_edges={len(free)}", file=sys.stderr)
    print(faces)
    break
