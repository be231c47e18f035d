"""Ordered simplicial complexes, delta-complexes, and degeneracy-free simplicial sets.

An ordered simplicial complex stores its simplices as strictly increasing
vertex tuples, closed under taking faces.  A delta-complex keeps indexed cells
with face operators only.  Freely adding degeneracies to a delta-complex gives
a degeneracy-free simplicial set, represented here as pairs (theta, c) of an
order-preserving surjection theta and a core cell c; the full simplicial set is
never materialized, every dimension is enumerated on demand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


class InvalidComplexError(ValueError):
    """Raised when input data violates a complex invariant."""


# ---------------------------------------------------------------------------
# monotone maps n -> m, encoded as tuples of values (f(0), ..., f(n))
# ---------------------------------------------------------------------------

def identity_map(n):
    return tuple(range(n + 1))


def is_weakly_monotone(values):
    return all(a <= b for a, b in zip(values, values[1:]))


def is_surjection_onto(values, n):
    """True if values describe a weakly monotone surjection onto {0..n}."""
    return is_weakly_monotone(values) and set(values) == set(range(n + 1))


@lru_cache(maxsize=None)
def surjections(m, n):
    """All order-preserving surjections m -> n as value tuples, sorted.

    Encoded by the (m-n)-subset of positions in {1..m} where the value
    repeats, so there are binom(m, n) of them.
    """
    if n > m or n < 0:
        return ()
    out = []
    for repeats in itertools.combinations(range(1, m + 1), m - n):
        vals = [0]
        for i in range(1, m + 1):
            vals.append(vals[-1] if i in repeats else vals[-1] + 1)
        out.append(tuple(vals))
    return tuple(sorted(out))


def coface(i, m):
    """delta_i: m-1 -> m, the injection missing value i."""
    return tuple(j if j < i else j + 1 for j in range(m))


def codegeneracy(i, m):
    """sigma_i: m+1 -> m, hitting value i twice."""
    return tuple(j if j <= i else j - 1 for j in range(m + 2))


def compose_maps(outer, inner):
    """(outer . inner)(j) = outer[inner[j]]."""
    return tuple(outer[j] for j in inner)


def epi_mono_factor(values):
    """Factor a weakly monotone map as injection . surjection.

    Returns (surj_values, image_values): the surjection onto {0..r} followed
    by the injection picking out the (sorted) image values.
    """
    image = sorted(set(values))
    pos = {v: i for i, v in enumerate(image)}
    return tuple(pos[v] for v in values), tuple(image)


# ---------------------------------------------------------------------------
# ordered simplicial complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderedComplex:
    """Finite ordered simplicial complex.

    `simplices[k]` lists the k-dimensional simplices as strictly increasing
    vertex tuples, sorted lexicographically.  Instances are immutable and
    hashable; build one with :func:`build_complex`.
    """

    vertices: tuple
    simplices: tuple  # simplices[k] = tuple of (k+1)-vertex tuples

    @property
    def dim(self):
        return len(self.simplices) - 1

    def f_vector(self):
        return tuple(len(s) for s in self.simplices)

    def simplices_of_dim(self, k):
        if 0 <= k < len(self.simplices):
            return self.simplices[k]
        return ()

    def all_simplices(self):
        for level in self.simplices:
            yield from level

    def has_simplex(self, simplex):
        k = len(simplex) - 1
        return simplex in set(self.simplices_of_dim(k))

    def to_delta(self):
        """View as a delta-complex: cells are the simplices, d_i drops vertex i."""
        cells = {k: tuple(self.simplices[k]) for k in range(self.dim + 1)}
        faces = {}
        for k in range(1, self.dim + 1):
            for s in self.simplices[k]:
                faces[s] = tuple(s[:i] + s[i + 1:] for i in range(len(s)))
        return DeltaComplex(cells=cells, faces=faces)


def build_complex(facets):
    """Face-closure of a facet list; idempotent on already closed input.

    Raises InvalidComplexError on non-increasing or duplicated vertices.
    """
    closed = set()
    for facet in facets:
        facet = tuple(facet)
        if len(set(facet)) != len(facet):
            raise InvalidComplexError(f"facet {facet} has duplicate vertices")
        if any(a >= b for a, b in zip(facet, facet[1:])):
            raise InvalidComplexError(f"facet {facet} is not strictly increasing")
        if not all(isinstance(v, int) for v in facet):
            raise InvalidComplexError(f"facet {facet} has non-integer vertex ids")
        for r in range(1, len(facet) + 1):
            closed.update(itertools.combinations(facet, r))
    if not closed:
        return OrderedComplex(vertices=(), simplices=())
    dim = max(len(s) for s in closed) - 1
    by_dim = tuple(tuple(sorted(s for s in closed if len(s) == k + 1))
                   for k in range(dim + 1))
    vertices = tuple(v for (v,) in by_dim[0])
    return OrderedComplex(vertices=vertices, simplices=by_dim)


def standard_simplex(n):
    """The full n-simplex on vertices 0..n."""
    return build_complex([tuple(range(n + 1))])


# ---------------------------------------------------------------------------
# delta-complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DeltaComplex:
    """Indexed cells with face operators d_0..d_n per n-cell.

    `cells[n]` is a tuple of hashable labels (globally unique across
    dimensions); `faces[c]` lists (d_0 c, ..., d_n c) for every cell of
    positive dimension.  Treated as immutable after construction.
    """

    cells: dict
    faces: dict

    def __eq__(self, other):
        if not isinstance(other, DeltaComplex):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash(tuple(sorted((n, tuple(cs)) for n, cs in self.cells.items())))

    def __post_init__(self):
        seen = set()
        for n, cs in self.cells.items():
            for c in cs:
                if c in seen:
                    raise InvalidComplexError(f"duplicate cell label {c!r}")
                seen.add(c)
            if n > 0:
                for c in cs:
                    if len(self.faces.get(c, ())) != n + 1:
                        raise InvalidComplexError(f"cell {c!r} lacks {n + 1} faces")
        self._check_face_identities()

    @property
    def dim(self):
        return max(self.cells) if self.cells else -1

    def cells_of_dim(self, n):
        return self.cells.get(n, ())

    def face(self, cell, i):
        return self.faces[cell][i]

    def _check_face_identities(self):
        # d_i d_j = d_{j-1} d_i for i < j
        for n, cs in self.cells.items():
            if n < 2:
                continue
            for c in cs:
                for j in range(n + 1):
                    for i in range(j):
                        if self.face(self.face(c, j), i) != self.face(self.face(c, i), j - 1):
                            raise InvalidComplexError(
                                f"face identity d_{i} d_{j} fails on {c!r}")

    def apply_injection(self, image_values, cell, ambient):
        """Dual of the injection {0..r} -> {0..ambient} hitting image_values.

        Applies the face operators for the missed values, largest first.
        """
        missing = [v for v in range(ambient + 1) if v not in set(image_values)]
        for v in sorted(missing, reverse=True):
            cell = self.face(cell, v)
        return cell

    def same_as(self, other, strict_order=True):
        """Exact equality of cell sets and face operators."""
        if set(self.cells) != set(other.cells):
            return False
        for n in self.cells:
            a, b = self.cells[n], other.cells[n]
            if (tuple(a) != tuple(b)) if strict_order else (set(a) != set(b)):
                return False
            if n > 0 and any(self.faces[c] != other.faces[c] for c in a):
                return False
        return True


# ---------------------------------------------------------------------------
# degeneracy-free simplicial sets: the functor adding degeneracies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplicialSetDF:
    """Degeneracy-free simplicial set presented by its core delta-complex.

    m-simplices are pairs (theta, c) with theta an order-preserving
    surjection m -> n (a value tuple) and c an n-cell of the core; only the
    core is stored, dimensions are enumerated on demand.
    """

    core: DeltaComplex

    def simplices_of_dim(self, m):
        out = []
        for n in sorted(self.core.cells):
            if n > m:
                break
            for theta in surjections(m, n):
                for c in self.core.cells_of_dim(n):
                    out.append((theta, c))
        return tuple(out)

    def count(self, m):
        from math import comb
        return sum(comb(m, n) * len(self.core.cells_of_dim(n))
                   for n in self.core.cells)

    def is_nondegenerate(self, simplex):
        theta, _ = simplex
        return theta == identity_map(len(theta) - 1)

    def apply_monotone(self, simplex, phi):
        """Act by an arbitrary weakly monotone map phi (contravariantly)."""
        theta, c = simplex
        psi = compose_maps(theta, phi)
        surj, image = epi_mono_factor(psi)
        cell = self.core.apply_injection(image, c, max(theta))
        return (surj, cell)

    def face(self, simplex, i):
        m = len(simplex[0]) - 1
        return self.apply_monotone(simplex, coface(i, m))

    def degeneracy(self, simplex, i):
        m = len(simplex[0]) - 1
        return self.apply_monotone(simplex, codegeneracy(i, m))


def adjoin(core):
    """Freely add degenerate simplices to a delta-complex."""
    if not isinstance(core, DeltaComplex):
        raise InvalidComplexError("adjoin expects a DeltaComplex")
    return SimplicialSetDF(core=core)


def forget(sset, up_to):
    """Drop degeneracy operators: every simplex through dimension up_to
    becomes a cell of a delta-complex."""
    cells = {}
    faces = {}
    for m in range(up_to + 1):
        cells[m] = sset.simplices_of_dim(m)
        if m > 0:
            for s in cells[m]:
                faces[s] = tuple(sset.face(s, i) for i in range(m + 1))
    return DeltaComplex(cells=cells, faces=faces)


def core_of(sset):
    """The nondegenerate simplices and their faces (here: the stored core)."""
    return sset.core


def apply_surjection_degeneracies(sset, theta, simplex):
    """theta*(simplex): peel elementary degeneracies off theta one repeat
    position at a time and apply the simplicial-set operators."""
    if is_surjection_onto(theta, len(theta) - 1):  # identity
        return simplex
    p = next(i for i in range(1, len(theta)) if theta[i] == theta[i - 1])
    shorter = theta[:p] + theta[p + 1:]
    return sset.degeneracy(apply_surjection_degeneracies(sset, shorter, simplex),
                           p - 1)


def core_comparison_is_iso(sset, up_to):
    """Check that the canonical map adjoin(core_of(X)) -> X is an isomorphism
    through dimension up_to, by pairwise simplex matching.

    The map sends (theta, c) to the theta-degeneracy of the nondegenerate
    simplex (id, c), computed through the operator algebra.
    """
    rebuilt = adjoin(core_of(sset))
    for m in range(up_to + 1):
        image = []
        for theta, c in rebuilt.simplices_of_dim(m):
            n = max(theta) if theta else 0
            base = (identity_map(n), c)
            image.append(apply_surjection_degeneracies(sset, theta, base))
        if sorted(image) != sorted(sset.simplices_of_dim(m)):
            return False
    return True


def unit(core):
    """The inclusion of a delta-complex into forget(adjoin(core)): c -> (id, c)."""
    def iota(cell):
        for n, cs in core.cells.items():
            if cell in cs:
                return (identity_map(n), cell)
        raise KeyError(cell)
    return iota


def counit(sset):
    """The map adjoin(forget(X)) -> X sending a promoted degenerate back to
    its original: (phi, x) -> x . phi."""
    def g(pair):
        phi, x = pair  # x is itself a simplex (theta, c) of sset
        theta, c = x
        return (compose_maps(theta, phi), c)
    return g


# ---------------------------------------------------------------------------
# vertex maps and the simplicial map count
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexMap:
    """A map of vertex sets between ordered complexes."""

    source: OrderedComplex
    target: OrderedComplex
    mapping: tuple  # sorted tuple of (v, image) pairs

    @classmethod
    def from_dict(cls, source, target, mapping):
        return cls(source=source, target=target, mapping=tuple(sorted(mapping.items())))

    def as_dict(self):
        return dict(self.mapping)

    def __call__(self, v):
        return dict(self.mapping)[v]

    def apply_simplex(self, simplex):
        """Image vertex set of a simplex, as a sorted tuple (no repeats)."""
        m = self.as_dict()
        return tuple(sorted({m[v] for v in simplex}))

    def is_order_preserving(self):
        m = self.as_dict()
        vs = sorted(m)
        return all(m[a] <= m[b] for a, b in zip(vs, vs[1:]))

    def is_simplicial(self):
        """Every simplex image spans a simplex of the target."""
        return all(self.target.has_simplex(self.apply_simplex(s))
                   for s in self.source.all_simplices())


def simplicial_maps(n, X):
    """All weakly order-preserving maps {0..n} -> vertices(X) whose image
    spans a simplex, as VertexMaps from the standard n-simplex.

    These are in bijection with the dimension-n simplices of adjoin(X).
    """
    source = standard_simplex(n)
    out = []
    for k in range(min(n, X.dim) + 1):
        for tau in X.simplices_of_dim(k):
            for theta in surjections(n, k):
                mapping = {i: tau[theta[i]] for i in range(n + 1)}
                out.append(VertexMap.from_dict(source, X, mapping))
    return out
