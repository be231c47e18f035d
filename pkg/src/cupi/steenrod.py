"""The Steenrod diagonal on normalized chains of ordered simplicial complexes.

W denotes the normalized bar resolution of Z over the group ring of the
order-two group {1, T}: one free generator e_n per degree, with differential

    d e_n = (1 + (-1)^n T) e_{n-1},        d e_0 = 0.

The structure map xi : W (x) N(X) -> N(X) (x) N(X) is assembled from
universal tables on standard simplices.  Table level (i, k) is produced by
degree-by-degree extension with the explicit cone contraction of
N(Delta^k) (x) N(Delta^k) (prepend vertex 0), then the top coefficient is
pinned to eta_k = (-1)^(k(k+1)/2) by an even cycle correction one level
down.  The construction satisfies, exactly over Z:

  C1  chain map:      d xi(e_i (x) s) = xi(d e_i (x) s) + (-1)^i xi(e_i (x) ds)
  C2  equivariance:   xi(T b (x) s) = Tswap xi(b (x) s)
  C3  base case:      xi(e_0 (x) s) = Alexander-Whitney diagonal
  C4  top identity:   xi(e_k (x) s) = eta_k s (x) s   for k-simplices s
  C5  naturality under order-preserving injections (tables are positional)

Tables are built lazily, cached per dimension, and transported to concrete
simplices by vertex position.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import TensorChain, _add_into, normalized_chains, simplex_degree


def eta(k):
    """The top-identity sign (-1)^(k(k+1)/2): pattern -,-,+,+ from k = 1."""
    return (-1) ** (k * (k + 1) // 2)


# ---------------------------------------------------------------------------
# the bar resolution W
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BarElement:
    """Integer combination of generators T^g e_n of the bar resolution."""

    coeffs: tuple  # sorted (((g, n), coeff), ...) with g in {0, 1}, no zeros

    @classmethod
    def from_dict(cls, d):
        for (g, n) in d:
            if g not in (0, 1) or n < 0:
                raise ValueError(f"bad bar generator {(g, n)}")
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)))

    @classmethod
    def e(cls, n):
        return cls.from_dict({(0, n): 1})

    @classmethod
    def te(cls, n):
        return cls.from_dict({(1, n): 1})

    def as_dict(self):
        return dict(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        out = self.as_dict()
        for k, v in other.coeffs:
            _add_into(out, k, v)
        return BarElement.from_dict(out)

    def scale(self, c):
        return BarElement.from_dict({k: c * v for k, v in self.coeffs})

    def __sub__(self, other):
        return self + other.scale(-1)

    def t_action(self):
        """Left multiplication by T (T^2 = 1)."""
        return BarElement.from_dict({(1 - g, n): c for (g, n), c in self.coeffs})

    def degrees(self):
        return {n for (_, n), _ in self.coeffs}


def bar_boundary(b):
    """d(T^g e_n) = T^g e_{n-1} + (-1)^n T^(1-g) e_{n-1}; equivariant, d.d = 0."""
    out = {}
    for (g, n), c in b.coeffs:
        if n == 0:
            continue
        _add_into(out, (g, n - 1), c)
        _add_into(out, (1 - g, n - 1), c * ((-1) ** n))
    return BarElement.from_dict(out)


def bar_augmentation(b):
    """e_0 and T e_0 both augment to 1."""
    return sum(c for (g, n), c in b.coeffs if n == 0)


# ---------------------------------------------------------------------------
# universal diagonal tables on standard simplices
# ---------------------------------------------------------------------------
# Table entries are dicts {(A, B): coeff} where A, B are increasing tuples of
# positions in {0..k}; transporting along a simplex's vertex list gives the
# value on any simplex of any complex (naturality is built in).

def _t_bdry(t):
    out = {}
    for (a, b), c in t.items():
        if len(a) > 1:
            for i in range(len(a)):
                _add_into(out, (a[:i] + a[i + 1:], b), c * ((-1) ** i))
        sgn = (-1) ** (len(a) - 1)
        if len(b) > 1:
            for i in range(len(b)):
                _add_into(out, (a, b[:i] + b[i + 1:]), c * sgn * ((-1) ** i))
    return out


def _t_swap(t):
    out = {}
    for (a, b), c in t.items():
        _add_into(out, (b, a), c * ((-1) ** ((len(a) - 1) * (len(b) - 1))))
    return out


def _t_scale(t, s):
    return {k: c * s for k, c in t.items()} if s else {}


def _t_sum(*ts):
    out = {}
    for t in ts:
        for k, c in t.items():
            _add_into(out, k, c)
    return out


def _t_transport(t, verts):
    out = {}
    for (a, b), c in t.items():
        key = (tuple(verts[i] for i in a), tuple(verts[i] for i in b))
        _add_into(out, key, c)
    return out


def _aw_table(k):
    top = tuple(range(k + 1))
    return {(top[:p + 1], top[p:]): 1 for p in range(k + 1)}


def _contract(t):
    """Tensor-square cone contraction H = h (x) 1 + e (x) h, h = prepend 0."""
    out = {}
    for (a, b), c in t.items():
        if a[0] != 0:
            _add_into(out, ((0,) + a, b), c)
        if len(a) == 1 and b[0] != 0:
            _add_into(out, ((0,), (0,) + b), c)
    return out


_TABLES = {(0, 0): _aw_table(0)}
_LEVEL_BUILT = 0


def _table(i, k):
    if i < 0 or i > k:
        return {}
    return _TABLES[(i, k)]


def _rhs(i, k):
    """Right side of the chain-map law for the level-(i, k) table."""
    top = tuple(range(k + 1))
    prev = _table(i - 1, k)
    parts = [prev, _t_scale(_t_swap(prev), (-1) ** i)]
    if i <= k - 1:
        lower = _table(i, k - 1)
        for j in range(k + 1):
            face = top[:j] + top[j + 1:]
            parts.append(_t_scale(_t_transport(lower, face), (-1) ** (i + j)))
    return _t_sum(*parts)


def _build_level(k):
    top = tuple(range(k + 1))
    _TABLES[(0, k)] = _aw_table(k)
    for i in range(1, k + 1):
        R = _rhs(i, k)
        assert not _t_bdry(R), f"internal: rhs not a cycle at {(i, k)}"
        D = _contract(R)
        if i == k:
            lam = D.get((top, top), 0)
            if lam != eta(k):
                # realign the top coefficient with an even cycle correction
                mu = (eta(k) - lam) // 2
                corr = _t_scale(_t_bdry({(top, top): 1}), mu)
                _TABLES[(k - 1, k)] = _t_sum(_TABLES[(k - 1, k)], corr)
                R = _rhs(i, k)
                D = _contract(R)
            assert D == {(top, top): eta(k)}, f"internal: top identity at k={k}"
        assert _t_bdry(D) == R, f"internal: chain-map law at {(i, k)}"
        _TABLES[(i, k)] = D


def ensure_tables(k):
    global _LEVEL_BUILT
    while _LEVEL_BUILT < k:
        _LEVEL_BUILT += 1
        _build_level(_LEVEL_BUILT)


def cup_table(i, k):
    """Universal table of Delta_i on the standard k-simplex (positions)."""
    if i < 0:
        raise ValueError("negative cup index")
    if i > k:
        return {}
    ensure_tables(k)
    return dict(_TABLES[(i, k)])


# ---------------------------------------------------------------------------
# diagonals on concrete simplices
# ---------------------------------------------------------------------------

def aw_diagonal(simplex):
    """Alexander-Whitney diagonal: sum of front (x) back faces."""
    k = simplex_degree(simplex)
    out = {(simplex[:p + 1], simplex[p:]): 1 for p in range(k + 1)}
    return TensorChain.from_dict(2, k, out)


def higher_diagonal(i, simplex):
    """Delta_i(simplex) = xi(e_i (x) simplex); zero when i exceeds the dimension."""
    if i < 0:
        raise ValueError("negative cup index")
    k = simplex_degree(simplex)
    if i > k:
        return TensorChain.zero(2, i + k)
    table = cup_table(i, k)
    return TensorChain.from_dict(2, i + k, _t_transport(table, simplex))


# ---------------------------------------------------------------------------
# per-complex structure
# ---------------------------------------------------------------------------

class SteenrodStructure:
    """The table {(i, simplex) -> Delta_i(simplex)} presenting xi on N(X).

    Built eagerly through max_i (default 2 * dim X); immutable once built.
    """

    def __init__(self, X, max_i=None, _table=None):
        self.complex = X
        self.chains = normalized_chains(X) if X.simplices else None
        self.max_i = 2 * X.dim if max_i is None else max_i
        if _table is not None:
            self.table = dict(_table)
        else:
            self.table = {}
            for s in X.all_simplices():
                for i in range(self.max_i + 1):
                    self.table[(i, s)] = higher_diagonal(i, s)

    @classmethod
    def from_table(cls, X, max_i, table):
        """Wrap an explicit (possibly tampered) table; no checks run."""
        return cls(X, max_i=max_i, _table=table)

    def delta(self, i, simplex):
        if i < 0:
            raise ValueError("negative cup index")
        if i > self.max_i:
            raise KeyError(f"structure built through max_i={self.max_i}")
        return self.table[(i, simplex)]

    def xi(self, bar, chain):
        """xi(b (x) c) for b in W and c a chain of this complex.

        Linear in both slots; T acts through the Koszul-signed swap.
        """
        degs = bar.degrees()
        if len(degs) > 1:
            raise ValueError("bar element must be homogeneous")
        if not degs or chain.is_zero():
            n = next(iter(degs), 0)
            return TensorChain.zero(2, n + chain.degree)
        n = degs.pop()
        out = TensorChain.zero(2, n + chain.degree)
        for (g, m), bc in bar.coeffs:
            for simplex, cc in chain.coeffs:
                piece = self.delta(m, simplex).scale(bc * cc)
                if g == 1:
                    piece = piece.swap()
                out = out + piece
        return out


_structure_cache = {}


def structure_for(X, max_i=None):
    key = (X, max_i)
    if key not in _structure_cache:
        _structure_cache[key] = SteenrodStructure(X, max_i=max_i)
    return _structure_cache[key]


# ---------------------------------------------------------------------------
# structure verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureReport:
    ok: bool
    check: str = ""
    witness: tuple = ()

    def as_json(self):
        if self.ok:
            return {"status": "pass"}
        return {"status": "fail", "check": self.check,
                "witness": [list(w) if isinstance(w, tuple) else w
                            for w in self.witness]}


def _fail(check, *witness):
    return StructureReport(False, check, witness)


def verify_structure(S):
    """Exhaustive check of C1-C5 and completeness through max_i.

    Returns the first violation found (as re-checkable data) or success.
    """
    X = S.complex
    for s in X.all_simplices():
        for i in range(S.max_i + 1):
            if (i, s) not in S.table:
                return _fail("completeness", i, s)
    for s in X.all_simplices():
        k = simplex_degree(s)
        # C3: base case is Alexander-Whitney
        if S.table[(0, s)] != aw_diagonal(s):
            return _fail("C3", 0, s)
        # C4: top identity with the eta sign
        want = TensorChain.from_dict(2, 2 * k, {(s, s): eta(k)})
        if k <= S.max_i and S.table[(k, s)] != want:
            return _fail("C4", k, s)
        # vanishing above the dimension
        for i in range(k + 1, S.max_i + 1):
            if not S.table[(i, s)].is_zero():
                return _fail("vanishing", i, s)
        ds = S.chains.boundary(S.chains.generator(s))
        for i in range(S.max_i + 1):
            # C1: boundary of the table entry matches the chain-map law
            lhs = S.table[(i, s)].boundary()
            rhs = TensorChain.zero(2, i + k - 1)
            if i >= 1:
                prev = S.table[(i - 1, s)]
                rhs = rhs + prev + prev.swap().scale((-1) ** i)
            acc = TensorChain.zero(2, i + k - 1)
            for face, c in ds.coeffs:
                acc = acc + S.table[(i, face)].scale(c)
            rhs = rhs + acc.scale((-1) ** i)
            if lhs != rhs:
                return _fail("C1", i, s)
            # C2: T acts by the Koszul-signed swap
            gen = S.chains.generator(s)
            if S.xi(BarElement.te(i), gen) != S.xi(BarElement.e(i), gen).swap():
                return _fail("C2", i, s)
        # C5: the table is the transport of the universal one
        for i in range(min(k, S.max_i) + 1):
            universal = cup_table(i, k)
            if S.table[(i, s)] != TensorChain.from_dict(
                    2, i + k, _t_transport(universal, s)):
                return _fail("C5", i, s)
    return StructureReport(True)


def naturality_holds(vmap, max_i=None):
    """C5 across complexes: for an order-preserving injection theta: X -> Y,
    (N(theta) (x) N(theta)) . xi_X = xi_Y . (1 (x) N(theta))."""
    from .chains import chain_map_from_vertex_map
    X, Y = vmap.source, vmap.target
    if not (vmap.is_order_preserving() and vmap.is_simplicial()):
        raise ValueError("expected an order-preserving simplicial map")
    if len(set(vmap.as_dict().values())) != len(vmap.as_dict()):
        raise ValueError("expected an injection")
    bound = 2 * max(X.dim, Y.dim) if max_i is None else max_i
    SX = structure_for(X, max_i=bound)
    SY = structure_for(Y, max_i=bound)
    f = chain_map_from_vertex_map(vmap, SX.chains, SY.chains)
    for s in X.all_simplices():
        image = vmap.apply_simplex(s)
        for i in range(bound + 1):
            left = SX.xi(BarElement.e(i), SX.chains.generator(s)).map_factors(f)
            right = SY.xi(BarElement.e(i), SY.chains.generator(image))
            if left != right:
                return False
    return True


# ---------------------------------------------------------------------------
# mod-2 cohomology and Steenrod squares
# ---------------------------------------------------------------------------
# GF(2) vectors are int bitmasks over the simplex list of one dimension.

def _rref_bits(rows):
    """Reduced row echelon form of GF(2) row vectors (bitmask ints)."""
    basis = []  # (pivot_bit, row)
    for r in rows:
        for pivot, b in basis:
            if r & pivot:
                r ^= b
        if r:
            pivot = 1 << (r.bit_length() - 1)
            for idx, (p2, b2) in enumerate(basis):
                if b2 & pivot:
                    basis[idx] = (p2, b2 ^ r)
            basis.append((pivot, r))
    return basis


def _reduce_bits(basis, r):
    for pivot, b in basis:
        if r & pivot:
            r ^= b
    return r


class Mod2Cohomology:
    """Cochain-level mod-2 cohomology of an ordered complex.

    Cochains in degree j are bitmask ints over simplices_of_dim(j); exposes a
    basis of H^j by cocycle representatives and canonical class coordinates.
    """

    def __init__(self, X):
        self.X = X
        self.simplices = {j: list(X.simplices_of_dim(j)) for j in range(X.dim + 1)}
        self.index = {j: {s: i for i, s in enumerate(self.simplices[j])}
                      for j in self.simplices}
        self._cob_basis = {}   # rref of coboundary image in degree j
        self._reps = {}        # H^j representatives (bitmasks)
        for j in range(X.dim + 1):
            self._cob_basis[j] = _rref_bits([self._coboundary(u, j - 1)
                                             for u in self._unit_cochains(j - 1)])
            cocycles = self._cocycle_basis(j)
            reps = []
            span = [b for _, b in self._cob_basis[j]]
            ref = _rref_bits(span)
            for z in cocycles:
                red = _reduce_bits(ref, z)
                if red:
                    reps.append(red)
                    ref = _rref_bits(span + reps)
            self._reps[j] = reps

    def _unit_cochains(self, j):
        return [1 << i for i in range(len(self.simplices.get(j, [])))] if j >= 0 else []

    def _coboundary(self, u, j):
        """delta: C^j -> C^(j+1), (delta u)(s) = sum u(d_i s)."""
        out = 0
        for i, s in enumerate(self.simplices.get(j + 1, [])):
            val = 0
            for p in range(len(s)):
                face = s[:p] + s[p + 1:]
                if u >> self.index[j][face] & 1:
                    val ^= 1
            if val:
                out |= 1 << i
        return out

    def _cocycle_basis(self, j):
        n = len(self.simplices.get(j, []))
        if n == 0:
            return []
        if j == self.X.dim:
            return [1 << i for i in range(n)]
        # kernel of delta_j by elimination on (image, source) pairs
        pairs = [(self._coboundary(1 << i, j), 1 << i) for i in range(n)]
        kernel = []
        basis = []
        for img, src in pairs:
            for pimg, pb, psrc in basis:
                if img & pimg:
                    img ^= pb
                    src ^= psrc
            if img:
                pivot = 1 << (img.bit_length() - 1)
                basis.append((pivot, img, src))
            else:
                kernel.append(src)
        return kernel

    def betti(self, j):
        return len(self._reps.get(j, []))

    def representatives(self, j):
        return list(self._reps.get(j, []))

    def class_coords(self, u, j):
        """Coordinates of the class [u] in the chosen H^j basis."""
        if self._coboundary(u, j):
            raise ValueError("cochain is not a cocycle")
        reps = self._reps.get(j, [])
        span = [b for _, b in self._cob_basis[j]]
        # solve u = sum x_r reps[r] (mod coboundaries) by elimination
        pairs = [(r, 1 << idx) for idx, r in enumerate(reps)] + \
                [(b, 0) for b in span]
        basis = []
        for vec, tag in pairs:
            for pvec, pb, ptag in basis:
                if vec & pvec:
                    vec ^= pb
                    tag ^= ptag
            if vec:
                basis.append((1 << (vec.bit_length() - 1), vec, tag))
        tag = 0
        vec = u
        for pvec, pb, ptag in basis:
            if vec & pvec:
                vec ^= pb
                tag ^= ptag
        if vec:
            raise ValueError("cocycle not reducible to the chosen basis")
        return tuple((tag >> r) & 1 for r in range(len(reps)))

    def cochain_from_bits(self, u, j):
        return {s for i, s in enumerate(self.simplices[j]) if u >> i & 1}


def cup_product_value(struct, m, u_set, v_set, simplex, p, q):
    """(u cup_m v)(simplex) mod 2 for cochain supports u_set in C^p, v_set in C^q."""
    total = 0
    for (a, b), _ in struct.delta(m, simplex).coeffs:
        if len(a) - 1 == p and len(b) - 1 == q and a in u_set and b in v_set:
            total ^= 1
    return total


def steenrod_square_matrix(X, i, j, coh=None, struct=None):
    """Matrix of Sq^i : H^j -> H^(j+i) over GF(2).

    Column c lists the target coordinates of Sq^i of the c-th basis class,
    computed as u cup_(j-i) u on cocycle representatives.
    """
    coh = coh or Mod2Cohomology(X)
    struct = struct or structure_for(X)
    source = coh.representatives(j)
    rows = coh.betti(j + i)
    matrix = [[0] * len(source) for _ in range(rows)]
    target_dim = j + i
    for c, rep in enumerate(source):
        u = coh.cochain_from_bits(rep, j)
        out = 0
        if 0 <= j - i and target_dim <= X.dim:
            for idx, s in enumerate(coh.simplices[target_dim]):
                if cup_product_value(struct, j - i, u, u, s, j, j):
                    out |= 1 << idx
        coords = coh.class_coords(out, target_dim) if target_dim <= X.dim else ()
        for r, bit in enumerate(coords):
            matrix[r][c] = bit
    return matrix


def steenrod_squares(X, i):
    """Sq^i on all of H*(X; Z/2): {j: matrix of Sq^i on H^j}."""
    coh = Mod2Cohomology(X)
    struct = structure_for(X)
    return {j: steenrod_square_matrix(X, i, j, coh=coh, struct=struct)
            for j in range(X.dim + 1)}
