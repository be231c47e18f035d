"""Free integer chain complexes, chain maps, tensor products, and homology.

Everything is exact over the integers: sparse coefficient dicts keyed by
basis labels, and Smith normal form on Python ints (no overflow, no floats).
Signs follow the Koszul convention throughout:
(f (x) g)(a (x) b) = (-1)^(deg g * deg a) f(a) (x) g(b).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


def _add_into(acc, key, coeff):
    if coeff:
        new = acc.get(key, 0) + coeff
        if new:
            acc[key] = new
        else:
            del acc[key]


# ---------------------------------------------------------------------------
# chains and complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Chain:
    """Integer combination of basis labels in a single degree."""

    degree: int
    coeffs: tuple  # sorted tuple of (label, coeff), no zeros

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        # the zero chain is degree-agnostic
        return not self.coeffs or self.degree == other.degree

    def __hash__(self):
        return hash((self.degree if self.coeffs else None, self.coeffs))

    @classmethod
    def from_dict(cls, degree, d):
        return cls(degree, tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self):
        return dict(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if self.degree != other.degree and self.coeffs and other.coeffs:
            raise ValueError("degree mismatch")
        out = self.as_dict()
        for k, v in other.coeffs:
            _add_into(out, k, v)
        return Chain.from_dict(self.degree if self.coeffs else other.degree, out)

    def scale(self, c):
        return Chain.from_dict(self.degree, {k: c * v for k, v in self.coeffs})

    def __sub__(self, other):
        return self + other.scale(-1)


class FreeChainComplex:
    """Nonnegatively graded free Z-complex with labeled bases.

    basis[n] lists the degree-n labels (globally unique across degrees);
    diff maps each label to the sparse dict of its boundary.  d.d = 0 is
    checked at construction.
    """

    def __init__(self, basis, diff):
        self.basis = {n: tuple(labels) for n, labels in basis.items() if labels}
        self.diff = {label: dict(d) for label, d in diff.items()}
        self.degree_of = {}
        for n, labels in self.basis.items():
            for lb in labels:
                if lb in self.degree_of:
                    raise ValueError(f"duplicate basis label {lb!r}")
                self.degree_of[lb] = n
        self.top_degree = max(self.basis) if self.basis else -1
        self._check_d_squared()

    def _check_d_squared(self):
        for label in self.degree_of:
            acc = {}
            for face, c in self.diff.get(label, {}).items():
                for ff, cc in self.diff.get(face, {}).items():
                    _add_into(acc, ff, c * cc)
            if acc:
                raise ValueError(f"d.d != 0 at basis element {label!r}")

    def rank(self, n):
        return len(self.basis.get(n, ()))

    def zero(self, degree):
        return Chain(degree, ())

    def generator(self, label):
        return Chain.from_dict(self.degree_of[label], {label: 1})

    def boundary_of(self, label):
        return self.diff.get(label, {})

    def boundary(self, chain):
        out = {}
        for label, c in chain.coeffs:
            for face, s in self.boundary_of(label).items():
                _add_into(out, face, c * s)
        return Chain.from_dict(chain.degree - 1, out)

    def boundary_matrix(self, n):
        """Matrix of d_n : C_n -> C_{n-1}, rows indexed by degree n-1 basis."""
        rows = self.basis.get(n - 1, ())
        cols = self.basis.get(n, ())
        ridx = {lb: i for i, lb in enumerate(rows)}
        M = [[0] * len(cols) for _ in rows]
        for j, lb in enumerate(cols):
            for face, c in self.boundary_of(lb).items():
                M[ridx[face]][j] += c
        return M


class GradedMap:
    """Graded Z-linear map between complexes, of a fixed degree shift.

    comps maps each source basis label to a sparse dict over target labels
    in degree (source degree + shift).  Not required to commute with d.
    """

    def __init__(self, source, target, shift, comps):
        self.source = source
        self.target = target
        self.shift = shift
        self.comps = {lb: {k: v for k, v in d.items() if v}
                      for lb, d in comps.items()}
        self.comps = {lb: d for lb, d in self.comps.items() if d}
        for lb, d in self.comps.items():
            n = source.degree_of[lb] + shift
            for tgt in d:
                if target.degree_of[tgt] != n:
                    raise ValueError(f"{lb!r} -> {tgt!r} breaks the degree shift")

    def apply_label(self, label):
        return self.comps.get(label, {})

    def apply(self, chain):
        out = {}
        for label, c in chain.coeffs:
            for tgt, v in self.apply_label(label).items():
                _add_into(out, tgt, c * v)
        return Chain.from_dict(chain.degree + self.shift, out)

    def commutator_with_boundary(self):
        """The hom-complex differential of this map:
        df = f . d_source - (-1)^shift d_target . f."""
        sgn = -((-1) ** self.shift)
        comps = {}
        for label in self.source.degree_of:
            acc = {}
            for face, c in self.source.boundary_of(label).items():
                for tgt, v in self.apply_label(face).items():
                    _add_into(acc, tgt, c * v)
            for tgt, v in self.apply_label(label).items():
                for face, c in self.target.boundary_of(tgt).items():
                    _add_into(acc, face, sgn * v * c)
            if acc:
                comps[label] = acc
        return GradedMap(self.source, self.target, self.shift - 1, comps)

    def is_chain_map(self):
        return self.shift == 0 and not self.commutator_with_boundary().comps

    def first_commutator_witness(self):
        """Smallest degree where f d != d f, or None."""
        resid = self.commutator_with_boundary().comps
        if not resid:
            return None
        return min(self.source.degree_of[lb] for lb in resid)

    def compose(self, inner):
        """self . inner (inner applied first)."""
        comps = {}
        for lb, d in inner.comps.items():
            acc = {}
            for mid, c in d.items():
                for tgt, v in self.apply_label(mid).items():
                    _add_into(acc, tgt, c * v)
            if acc:
                comps[lb] = acc
        return GradedMap(inner.source, self.target, self.shift + inner.shift, comps)

    def equals(self, other):
        return (self.shift == other.shift and self.comps == other.comps)

    @classmethod
    def identity(cls, C):
        return cls(C, C, 0, {lb: {lb: 1} for lb in C.degree_of})


class ChainMap(GradedMap):
    """A degree-0 graded map that commutes with the boundaries; the
    commutation law is checked at construction."""

    def __init__(self, source, target, comps):
        super().__init__(source, target, 0, comps)
        bad = self.first_commutator_witness()
        if bad is not None:
            raise ValueError(f"not a chain map: fails in degree {bad}")


def hom_differential(f):
    """Differential of the Hom-complex: df = f d - (-1)^deg(f) d f.

    A degree-0 map is a chain map exactly when this vanishes.
    """
    return f.commutator_with_boundary()


# ---------------------------------------------------------------------------
# chain functors
# ---------------------------------------------------------------------------

def normalized_chains(X):
    """N(X): one generator per simplex/cell, d = alternating face sum.

    Accepts an OrderedComplex or a DeltaComplex.
    """
    if hasattr(X, "to_delta"):
        X = X.to_delta()
    basis = {n: tuple(X.cells_of_dim(n)) for n in X.cells}
    diff = {}
    for n in X.cells:
        if n == 0:
            continue
        for c in X.cells_of_dim(n):
            acc = {}
            for i in range(n + 1):
                _add_into(acc, X.face(c, i), (-1) ** i)
            diff[c] = acc
    return FreeChainComplex(basis, diff)


def unnormalized_chains(sset, up_to):
    """C(X) of a degeneracy-free simplicial set, materialized through degree
    up_to; basis elements are (theta, cell) pairs including degeneracies."""
    basis = {}
    diff = {}
    for m in range(up_to + 1):
        basis[m] = sset.simplices_of_dim(m)
        if m > 0:
            for s in basis[m]:
                acc = {}
                for i in range(m + 1):
                    _add_into(acc, sset.face(s, i), (-1) ** i)
                if acc:
                    diff[s] = acc
    return FreeChainComplex(basis, diff)


def chain_map_from_vertex_map(vmap, NA=None, NB=None):
    """The chain map N(theta) of a simplicial vertex map: a simplex goes to
    its image when the map is injective on it, to zero otherwise."""
    NA = NA if NA is not None else normalized_chains(vmap.source)
    NB = NB if NB is not None else normalized_chains(vmap.target)
    m = vmap.as_dict()
    comps = {}
    for s in vmap.source.all_simplices():
        image = tuple(sorted({m[v] for v in s}))
        if len(image) == len(s):
            comps[s] = {image: 1}
    return ChainMap(NA, NB, comps)


# ---------------------------------------------------------------------------
# tensor complexes and Koszul signs
# ---------------------------------------------------------------------------

def tensor_complex(A, B):
    """A (x) B with pair labels and Koszul boundary
    d(a (x) b) = da (x) b + (-1)^deg(a) a (x) db."""
    basis = {}
    for na, als in A.basis.items():
        for nb, bls in B.basis.items():
            basis.setdefault(na + nb, [])
            basis[na + nb].extend((a, b) for a in als for b in bls)
    diff = {}
    for n, labels in basis.items():
        for (a, b) in labels:
            acc = {}
            for fa, c in A.boundary_of(a).items():
                _add_into(acc, (fa, b), c)
            sgn = (-1) ** A.degree_of[a]
            for fb, c in B.boundary_of(b).items():
                _add_into(acc, (a, fb), sgn * c)
            if acc:
                diff[(a, b)] = acc
    basis = {n: tuple(sorted(ls)) for n, ls in basis.items()}
    return FreeChainComplex(basis, diff)


def koszul_tensor(f, g, source=None, target=None):
    """f (x) g on tensor complexes, with the Koszul sign
    (-1)^(deg g * deg a) on each source generator a (x) b."""
    source = source if source is not None else tensor_complex(f.source, g.source)
    target = target if target is not None else tensor_complex(f.target, g.target)
    comps = {}
    for (a, b) in source.degree_of:
        fa = f.apply_label(a)
        gb = g.apply_label(b)
        if not fa or not gb:
            continue
        sgn = (-1) ** (g.shift * f.source.degree_of[a])
        acc = {}
        for ta, ca in fa.items():
            for tb, cb in gb.items():
                _add_into(acc, (ta, tb), sgn * ca * cb)
        if acc:
            comps[(a, b)] = acc
    return GradedMap(source, target, f.shift + g.shift, comps)


# ---------------------------------------------------------------------------
# tensor chains over normalized simplex bases
# ---------------------------------------------------------------------------

def simplex_degree(s):
    return len(s) - 1


@dataclass(frozen=True, eq=False)
class TensorChain:
    """Integer combination of arity-k tuples of simplices.

    Labels are tuples of strictly increasing vertex tuples; the degree of a
    label is the sum of the factor degrees.  Koszul signs are computed at
    application time, never stored.
    """

    arity: int
    degree: int
    coeffs: tuple  # sorted ((s_1, ..., s_k), coeff) pairs

    def __eq__(self, other):
        if not isinstance(other, TensorChain):
            return NotImplemented
        if self.arity != other.arity or self.coeffs != other.coeffs:
            return False
        return not self.coeffs or self.degree == other.degree

    def __hash__(self):
        return hash((self.arity, self.degree if self.coeffs else None,
                     self.coeffs))

    @classmethod
    def from_dict(cls, arity, degree, d):
        for key in d:
            if len(key) != arity:
                raise ValueError("arity mismatch in tensor label")
            if sum(simplex_degree(s) for s in key) != degree:
                raise ValueError("degree mismatch in tensor label")
        return cls(arity, degree, tuple(sorted((k, v) for k, v in d.items() if v)))

    @classmethod
    def zero(cls, arity, degree):
        return cls(arity, degree, ())

    def as_dict(self):
        return dict(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        if self.degree != other.degree and self.coeffs and other.coeffs:
            raise ValueError("degree mismatch")
        out = self.as_dict()
        for k, v in other.coeffs:
            _add_into(out, k, v)
        return TensorChain.from_dict(
            self.arity, self.degree if self.coeffs else other.degree, out)

    def scale(self, c):
        return TensorChain.from_dict(self.arity, self.degree,
                                     {k: c * v for k, v in self.coeffs})

    def __sub__(self, other):
        return self + other.scale(-1)

    def boundary(self):
        """Koszul alternating-face boundary of each tensor factor."""
        out = {}
        for key, c in self.coeffs:
            sign_prefix = 1
            for pos, s in enumerate(key):
                if simplex_degree(s) > 0:
                    for i in range(len(s)):
                        face = s[:i] + s[i + 1:]
                        newkey = key[:pos] + (face,) + key[pos + 1:]
                        _add_into(out, newkey, c * sign_prefix * ((-1) ** i))
                sign_prefix *= (-1) ** simplex_degree(s)
        return TensorChain.from_dict(self.arity, self.degree - 1, out)

    def swap(self):
        """Transposition of an arity-2 tensor with the Koszul sign
        (-1)^(deg a * deg b)."""
        if self.arity != 2:
            raise ValueError("swap is defined for arity-2 tensors")
        out = {}
        for (a, b), c in self.coeffs:
            sgn = (-1) ** (simplex_degree(a) * simplex_degree(b))
            _add_into(out, (b, a), c * sgn)
        return TensorChain.from_dict(2, self.degree, out)

    def map_factors(self, f):
        """Apply a degree-0 chain map to every factor (no Koszul signs arise)."""
        out = {}
        for key, c in self.coeffs:
            images = [f.apply_label(s) for s in key]
            if any(not im for im in images):
                continue
            for combo in itertools.product(*[im.items() for im in images]):
                newkey = tuple(t for t, _ in combo)
                coeff = c
                for _, v in combo:
                    coeff *= v
                _add_into(out, newkey, coeff)
        return TensorChain.from_dict(self.arity, self.degree, out)


# ---------------------------------------------------------------------------
# Smith normal form and homology
# ---------------------------------------------------------------------------

def smith_normal_form(M):
    """(D, U, V) with D = U M V diagonal, divisibility d1 | d2 | ..., and
    U, V unimodular.  Dense lists of Python ints; exact."""
    m = len(M)
    n = len(M[0]) if m else 0
    D = [row[:] for row in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):      # row dst += k * row src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        # pick pivot of least absolute value in the remaining block
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < best):
                    best = abs(D[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = False
        for i in range(t + 1, m):
            if D[i][t]:
                q = D[i][t] // D[t][t]
                add_row(i, t, -q)
                dirty = dirty or D[i][t] != 0
        for j in range(t + 1, n):
            if D[t][j]:
                q = D[t][j] // D[t][t]
                add_col(j, t, -q)
                dirty = dirty or D[t][j] != 0
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        stray = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                      if D[i][j] % D[t][t]), None)
        if stray is not None:
            add_row(t, stray[0], 1)
            continue
        if D[t][t] < 0:
            negate_row(t)
        t += 1
    return D, U, V


def _diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def matrix_rank(M):
    if not M or not M[0]:
        return 0
    D, _, _ = smith_normal_form(M)
    return len(_diagonal(D))


def solve_integer(M, b):
    """One integer solution x of M x = b, or None.  M dense, b a list."""
    m = len(M)
    n = len(M[0]) if m else 0
    if m == 0:
        return [0] * n
    D, U, V = smith_normal_form(M)
    c = [sum(U[i][j] * b[j] for j in range(m)) for i in range(m)]
    y = [0] * n
    r = 0
    for i in range(min(m, n)):
        if D[i][i]:
            if c[i] % D[i][i]:
                return None
            y[i] = c[i] // D[i][i]
            r = i + 1
    if any(c[i] for i in range(r, m)):
        return None
    return [sum(V[i][j] * y[j] for j in range(n)) for i in range(n)]


def in_column_span(M, b):
    return solve_integer(M, b) is not None


def kernel_basis(M):
    """Columns forming a Z-basis of ker M (unimodular V columns past the rank)."""
    m = len(M)
    n = len(M[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    D, _, V = smith_normal_form(M)
    rank = len(_diagonal(D))
    return [[V[i][j] for i in range(n)] for j in range(rank, n)]


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    betti: int
    torsion: tuple

    def as_json(self):
        return {"degree": self.degree, "betti": self.betti,
                "torsion": list(self.torsion)}


def homology(C, up_to=None):
    """Integral homology invariants per degree, via Smith normal form."""
    top = C.top_degree if up_to is None else up_to
    out = []
    for n in range(top + 1):
        rank_n = C.rank(n)
        dn = C.boundary_matrix(n)
        dn1 = C.boundary_matrix(n + 1)
        r_n = matrix_rank(dn) if n > 0 else 0
        if C.rank(n + 1):
            D, _, _ = smith_normal_form(dn1)
            invariants = _diagonal(D)
        else:
            invariants = []
        betti = rank_n - r_n - len(invariants)
        torsion = tuple(d for d in invariants if abs(d) > 1)
        out.append(HomologyGroup(n, betti, torsion))
    return out


class HomologyClasses:
    """Cycle/boundary data of one degree, with canonical class coordinates.

    Exposes a Z-basis of cycles, a presentation of H_n = Z^k / im(boundaries
    in cycle coordinates) via SNF, and the reduction of any cycle to a
    canonical coordinate tuple, so induced maps can be compared exactly.
    """

    def __init__(self, C, n):
        self.C = C
        self.n = n
        self.labels = C.basis.get(n, ())
        dn = C.boundary_matrix(n) if n > 0 else [[0] * len(self.labels)]
        self.K = kernel_basis(dn)  # list of kernel columns
        self.kmat = [[col[i] for col in self.K] for i in range(len(self.labels))]
        bnd = C.boundary_matrix(n + 1)
        cols = []
        for j in range(C.rank(n + 1)):
            b = [bnd[i][j] for i in range(len(self.labels))]
            coords = solve_integer(self.kmat, b)
            if coords is None:
                raise ValueError("boundary not in cycle lattice")
            cols.append(coords)
        k = len(self.K)
        pres = [[cols[j][i] for j in range(len(cols))] for i in range(k)]
        if k and cols:
            self.D, self.U, _ = smith_normal_form(pres)
        else:
            self.D = []
            self.U = [[int(i == j) for j in range(k)] for i in range(k)]
        self.invariants = _diagonal(self.D) if self.D else []

    def generators(self):
        """Cycle chains generating H_n (images of the kernel basis)."""
        gens = []
        for col in self.K:
            gens.append(Chain.from_dict(
                self.n, {lb: col[i] for i, lb in enumerate(self.labels) if col[i]}))
        return gens

    def class_coords(self, cycle):
        """Canonical coordinates of [cycle]: free part exact, torsion reduced."""
        vec = [cycle.as_dict().get(lb, 0) for lb in self.labels]
        a = solve_integer(self.kmat, vec)
        if a is None:
            raise ValueError("chain is not a cycle")
        k = len(self.K)
        w = [sum(self.U[i][j] * a[j] for j in range(k)) for i in range(k)]
        out = []
        for i in range(k):
            d = abs(self.invariants[i]) if i < len(self.invariants) else 0
            if d == 1:
                continue  # killed coordinate
            out.append(w[i] % d if d else w[i])
        return tuple(out)

    def is_zero_class(self, cycle):
        return all(c == 0 for c in self.class_coords(cycle))
