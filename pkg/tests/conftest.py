"""Shared test corpus.

Named complexes: standard simplices through dimension 3, the circle and
2-sphere boundaries, the 6-vertex projective plane, a 7-vertex annulus;
plus 50 seeded random face-closed complexes on at most 6 vertices (facet
size capped at 4 to keep exhaustive checks affordable).
"""

import random

import pytest

from cupi.simplicial import build_complex, standard_simplex


RP2_FACETS = [(1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 6), (1, 5, 6),
              (2, 3, 5), (2, 3, 6), (2, 4, 6), (3, 4, 5), (4, 5, 6)]

ANNULUS_FACETS = [(0, 3, 4), (0, 1, 4), (1, 4, 5), (1, 2, 5), (2, 5, 6),
                  (0, 2, 6), (0, 3, 6)]


def rp2():
    return build_complex(RP2_FACETS)


def annulus():
    return build_complex(ANNULUS_FACETS)


def circle():
    return build_complex([(0, 1), (0, 2), (1, 2)])


def sphere():
    return build_complex([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def named_corpus():
    out = {f"delta{n}": standard_simplex(n) for n in range(4)}
    out["circle"] = circle()
    out["sphere"] = sphere()
    out["rp2"] = rp2()
    out["annulus"] = annulus()
    return out


def random_complexes(count=50, seed=20250808, max_vertices=6, max_facet=4):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        nverts = rng.randint(1, max_vertices)
        verts = list(range(nverts))
        nfac = rng.randint(1, 6)
        facets = []
        for _ in range(nfac):
            size = rng.randint(1, min(max_facet, nverts))
            facets.append(tuple(sorted(rng.sample(verts, size))))
        X = build_complex(facets)
        if X.simplices:
            out.append(X)
    return out


@pytest.fixture(scope="session")
def corpus():
    return named_corpus()


@pytest.fixture(scope="session")
def random_corpus():
    return random_complexes()


@pytest.fixture(scope="session")
def full_corpus(corpus, random_corpus):
    return list(corpus.values()) + random_corpus
