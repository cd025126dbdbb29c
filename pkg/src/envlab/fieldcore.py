"""Matrices and modules over finite fields: commutants, MeatAxe splitting,
composition factors, semisimplification.

Modules are given by the action matrices of a free generating set; no
relations are checked unless a group closure is materialized.  All values
are immutable after construction; randomized routines take an explicit
seed and a budget of random algebra elements.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (ClosureOverflow, DimensionMismatch, RandomBudgetExceeded,
                     ValidationError)
from .gf import GF, field_make

DEFAULT_SEED = 20240901
DEFAULT_MEATAXE_BUDGET = 200
DEFAULT_CLOSURE_CAP = 10 ** 7
SPLITTING_DEGREE_BOUND = 6


def _key(arr) -> bytes:
    return np.ascontiguousarray(arr, dtype=np.int64).tobytes()


class Mat:
    """An n x n matrix over a finite field.  Hashable and immutable."""

    __slots__ = ("field", "array", "_hash")

    def __init__(self, fld: GF, array):
        self.field = fld
        a = np.array(array, dtype=np.int64)
        if fld.d == 1:
            a %= fld.ell
        a.setflags(write=False)
        self.array = a
        self._hash = None

    @property
    def n(self):
        return self.array.shape[0]

    def __matmul__(self, other):
        return Mat(self.field, self.field.matmul(self.array, other.array))

    def __eq__(self, other):
        return isinstance(other, Mat) and self.field == other.field \
            and self.array.shape == other.array.shape and (self.array == other.array).all()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(_key(self.array))
        return self._hash

    def __repr__(self):
        return f"Mat({self.field}, {self.array.tolist()})"

    def inverse(self):
        return Mat(self.field, self.field.inv_matrix(self.array))

    def is_identity(self):
        return (self.array == np.eye(self.n, dtype=np.int64)).all()

    def is_invertible(self):
        try:
            self.field.inv_matrix(self.array)
            return True
        except ZeroDivisionError:
            return False

    def order(self, cap: int = 10 ** 6) -> int:
        acc, k = self, 1
        while not acc.is_identity():
            acc = acc @ self
            k += 1
            if k > cap:
                raise ClosureOverflow(f"element order exceeds cap {cap}")
        return k

    @staticmethod
    def identity(fld: GF, n: int) -> "Mat":
        return Mat(fld, np.eye(n, dtype=np.int64))


class FinMatGroup:
    """A finite matrix group presented by generators, with explicit closure."""

    def __init__(self, fld: GF, generators):
        self.field = fld
        self.generators = [g if isinstance(g, Mat) else Mat(fld, g) for g in generators]
        for g in self.generators:
            if not g.is_invertible():
                raise ValidationError("generator is not invertible")
        self.n = self.generators[0].n if self.generators else None
        self._elements = None
        self._words = None
        self._index = None

    def closure(self, cap: int = DEFAULT_CLOSURE_CAP):
        """BFS closure.  Returns the element list; caches words in the generators."""
        if self._elements is not None:
            return self._elements
        if self.n is None:
            raise ValidationError("group has no generators and no dimension")
        ident = Mat.identity(self.field, self.n)
        elements = [ident]
        words = [()]
        index = {_key(ident.array): 0}
        frontier = [0]
        while frontier:
            nxt = []
            for ei in frontier:
                for gi, g in enumerate(self.generators):
                    prod = elements[ei] @ g
                    k = _key(prod.array)
                    if k not in index:
                        if len(elements) >= cap:
                            raise ClosureOverflow(f"closure exceeded cap {cap}")
                        index[k] = len(elements)
                        elements.append(prod)
                        words.append(words[ei] + (gi,))
                        nxt.append(index[k])
            frontier = nxt
        self._elements = elements
        self._words = words
        self._index = index
        return elements

    @property
    def order(self) -> int:
        return len(self.closure())

    def __contains__(self, m: Mat) -> bool:
        self.closure()
        return _key(m.array) in self._index

    def element_index(self, m: Mat) -> int:
        self.closure()
        return self._index[_key(m.array)]

    def word_for(self, m: Mat):
        """A word in the generators (indices) evaluating to m."""
        self.closure()
        return self._words[self.element_index(m)]

    def is_subgroup_of(self, other: "FinMatGroup") -> bool:
        other.closure()
        return all(g in other for g in self.generators)

    def is_normal_in(self, other: "FinMatGroup") -> bool:
        """Checked on generators; assumes self is a subgroup of other."""
        self.closure()
        for g in other.generators:
            gi = g.inverse()
            for u in self.generators:
                if (g @ u @ gi) not in self:
                    return False
        return True

    @staticmethod
    def trivial(fld: GF, n: int) -> "FinMatGroup":
        g = FinMatGroup(fld, [Mat.identity(fld, n)])
        return g

    # -- JSON interchange (the fieldcore matrix-group format) --

    @staticmethod
    def from_json(doc) -> "FinMatGroup":
        if isinstance(doc, str):
            doc = json.loads(doc)
        fld = GF(int(doc["ell"]), int(doc.get("d", 1)),
                 tuple(doc["modulus"]) if "modulus" in doc else None)
        n = int(doc["n"])
        gens = []
        for flat in doc["generators"]:
            entries = [fld.from_coeffs(e) if isinstance(e, list) else int(e) % fld.q
                       for e in flat]
            gens.append(Mat(fld, np.array(entries, dtype=np.int64).reshape(n, n)))
        return FinMatGroup(fld, gens)

    def to_json(self) -> dict:
        fld = self.field
        gens = []
        for g in self.generators:
            flat = g.array.reshape(-1).tolist()
            if fld.d > 1:
                flat = [list(fld.coeffs(e)) for e in flat]
            gens.append(flat)
        doc = {"ell": fld.ell, "d": fld.d, "n": self.n, "generators": gens}
        if fld.d > 1:
            doc["modulus"] = list(fld.modulus)
        return doc


@dataclass(frozen=True)
class ModuleRep:
    """A module over a free presentation: one action matrix per generator."""

    field: GF
    action: tuple

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(
            m if isinstance(m, Mat) else Mat(self.field, m) for m in self.action))

    @property
    def dim(self) -> int:
        return self.action[0].n if self.action else 0

    @property
    def matrices(self):
        return [m.array for m in self.action]

    def direct_sum(self, other: "ModuleRep") -> "ModuleRep":
        if self.field != other.field or len(self.action) != len(other.action):
            raise DimensionMismatch("direct sum needs matching field and generator count")
        blocks = []
        for a, b in zip(self.action, other.action):
            m = np.zeros((a.n + b.n, a.n + b.n), dtype=np.int64)
            m[:a.n, :a.n] = a.array
            m[a.n:, a.n:] = b.array
            blocks.append(m)
        return ModuleRep(self.field, tuple(blocks))


def module_of_group(G: FinMatGroup) -> ModuleRep:
    """The natural module of a matrix group (generators acting as themselves)."""
    return ModuleRep(G.field, tuple(G.generators))


# -- intertwiners and commutants --

def intertwiners(rho: ModuleRep, sigma: ModuleRep):
    """Basis of {X : rho(g) X = X sigma(g) for all generators g}.

    Returns a list of (rho.dim x sigma.dim) arrays; its length is
    dim Hom(sigma, rho) in the category of modules over the free algebra.
    """
    if rho.field != sigma.field:
        raise DimensionMismatch("modules live over different fields")
    if len(rho.action) != len(sigma.action):
        raise DimensionMismatch("generator lists differ in length")
    fld = rho.field
    n, m = rho.dim, sigma.dim
    if not rho.action:
        raise DimensionMismatch("empty generator list")
    rows = []
    Im = fld.eye(m)
    In = fld.eye(n)
    for R, S in zip(rho.action, sigma.action):
        # row-major vec: vec(R X) = (R kron I) vec, vec(X S) = (I kron S^T) vec
        rows.append(fld.sub(fld.kron(R.array, Im), fld.kron(In, S.array.T)))
    system = np.concatenate(rows, axis=0)
    basis = fld.nullspace(system)
    return [b.reshape(n, m) for b in basis]


def commutant(rho: ModuleRep):
    """(basis, dim) of the algebra commuting with the module action."""
    basis = intertwiners(rho, rho)
    return basis, len(basis)


def invariants_dim(rho: ModuleRep) -> int:
    """Dimension of the simultaneous fixed space of all action matrices."""
    fld = rho.field
    n = rho.dim
    rows = [fld.sub(m.array, fld.eye(n)) for m in rho.action]
    if not rows:
        return n
    return fld.nullspace(np.concatenate(rows, axis=0)).shape[0]


# -- polynomial machinery over GF(q) for the MeatAxe --

def _poly_mul(fld, a, b):
    if not a or not b:
        return []
    c = [np.int64(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                c[i + j] = fld.add(c[i + j], fld.mul(ai, bj))
    while c and not c[-1]:
        c.pop()
    return c


def _poly_divmod(fld, a, b):
    a = list(a)
    binv = fld.inv(int(b[-1]))
    quot = [np.int64(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        coef = fld.mul(a[-1], np.int64(binv))
        off = len(a) - len(b)
        quot[off] = coef
        for j in range(len(b)):
            a[off + j] = fld.sub(a[off + j], fld.mul(coef, b[j]))
        a.pop()
        while a and not a[-1]:
            a.pop()
    return quot, a


def _poly_gcd(fld, a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _poly_divmod(fld, a, b)
        a, b = b, r
    if a:
        inv = np.int64(fld.inv(int(a[-1])))
        a = [fld.mul(c, inv) for c in a]
    return a


def _poly_powmod(fld, a, e, mod):
    r = [np.int64(1)]
    a = _poly_divmod(fld, a, mod)[1]
    while e:
        if e & 1:
            r = _poly_divmod(fld, _poly_mul(fld, r, a), mod)[1]
        a = _poly_divmod(fld, _poly_mul(fld, a, a), mod)[1]
        e >>= 1
    return r


def _irreducible_factor(fld, p, rng):
    """One irreducible factor of the monic polynomial p, of least degree."""
    # distinct-degree stage
    x = [np.int64(0), np.int64(1)]
    for k in range(1, len(p)):
        xqk = _poly_powmod(fld, x, fld.q ** k, p)
        diff = list(xqk) + [np.int64(0)] * max(0, 2 - len(xqk))
        diff[1] = fld.sub(diff[1], np.int64(1))
        while diff and not diff[-1]:
            diff.pop()
        g = _poly_gcd(fld, p, diff)
        if len(g) - 1 > 0:
            return _equal_degree_factor(fld, g, k, rng)
    return p


def _equal_degree_factor(fld, g, k, rng):
    """Cantor-Zassenhaus on a monic product of irreducibles of degree k."""
    while len(g) - 1 > k:
        deg = len(g) - 1
        r = [np.int64(int(c)) for c in rng.integers(0, fld.q, size=deg)]
        while r and not r[-1]:
            r.pop()
        if len(r) < 2:
            continue
        if fld.ell == 2:
            # additive trace splits in characteristic 2
            h = list(r)
            t = list(r)
            for _ in range(k * fld.d - 1):
                t = _poly_divmod(fld, _poly_mul(fld, t, t), g)[1]
                h = [fld.add(a, b) for a, b in
                     zip(h + [np.int64(0)] * (len(t) - len(h)),
                         t + [np.int64(0)] * (len(h) - len(t)))]
        else:
            h = _poly_powmod(fld, r, (fld.q ** k - 1) // 2, g)
            h = list(h) + [np.int64(0)] * max(0, 1 - len(h))
            h[0] = fld.sub(h[0], np.int64(1))
        while h and not h[-1]:
            h.pop()
        if not h:
            continue
        d = _poly_gcd(fld, g, h)
        if 0 < len(d) - 1 < len(g) - 1:
            other = _poly_divmod(fld, g, d)[0]
            g = d if len(d) <= len(other) else other
    return g


def _vector_minpoly(fld, matrices_combo, v):
    """Monic minimal polynomial of the vector v under the matrix A (Krylov)."""
    A = matrices_combo
    cur = v.copy()
    power = 0
    reps = []  # (reduced echelon row, pivot, Krylov combination)
    while True:
        # reduce cur against current echelon basis, tracking the combination
        combo = np.zeros(power + 1, dtype=np.int64)
        combo[power] = 1
        red = cur.copy()
        for (prow, ppiv, pcombo) in reps:
            c = red[ppiv]
            if c:
                red = fld.sub(red, fld.mul(np.int64(c), prow))
                pc = np.zeros(power + 1, dtype=np.int64)
                pc[:len(pcombo)] = pcombo
                combo = fld.sub(combo, fld.mul(np.int64(c), pc))
        nz = np.nonzero(red)[0]
        if nz.size == 0:
            # combo gives sum_j combo[j] A^j v = 0 with combo[power] != 0
            lead = fld.inv(int(combo[power]))
            poly = [fld.mul(np.int64(lead), np.int64(int(c))) for c in combo]
            return poly
        piv = int(nz[0])
        inv = np.int64(fld.inv(int(red[piv])))
        red = fld.mul(red, inv)
        combo = fld.mul(combo, inv)
        reps.append((red, piv, combo))
        cur = fld.matmul(A, cur[:, None])[:, 0]
        power += 1


class SpinBasis:
    """Incrementally echelonized basis of a spin-closed subspace."""

    def __init__(self, fld, n):
        self.fld = fld
        self.n = n
        self.rows = []   # (vector, pivot) with pivot strictly increasing insert order
        self.queue = []

    def add(self, vec) -> bool:
        v = vec.copy()
        fld = self.fld
        for row, piv in self.rows:
            c = v[piv]
            if c:
                v = fld.sub(v, fld.mul(np.int64(int(c)), row))
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        v = fld.mul(v, np.int64(fld.inv(int(v[piv]))))
        self.rows.append((v, piv))
        self.queue.append(v)
        return True

    @property
    def dim(self):
        return len(self.rows)

    def basis_matrix(self):
        return np.array([r for r, _ in self.rows], dtype=np.int64) \
            if self.rows else np.zeros((0, self.n), dtype=np.int64)


def spin(fld, matrices, seeds):
    """Smallest subspace containing the seed vectors and closed under the
    (column) action of the given matrices.  Returns a SpinBasis."""
    n = matrices[0].shape[0] if matrices else seeds[0].shape[0]
    sb = SpinBasis(fld, n)
    for s in seeds:
        sb.add(s)
    while sb.queue:
        v = sb.queue.pop()
        for M in matrices:
            sb.add(fld.matmul(M, v[:, None])[:, 0])
    return sb


@dataclass(frozen=True)
class IrreducibleWitness:
    """Norton certificate: p(A) has nullity deg p for an irreducible p, a
    kernel vector spins to the whole space and a transpose-kernel vector
    spins to the whole dual space."""

    algebra_element: object
    factor_degree: int


def _random_algebra_element(fld, matrices, n, rng):
    acc = np.zeros((n, n), dtype=np.int64)
    for _ in range(int(rng.integers(1, 4))):
        word = fld.eye(n)
        for _ in range(int(rng.integers(1, 4))):
            word = fld.matmul(word, matrices[int(rng.integers(0, len(matrices)))])
        c = np.int64(int(rng.integers(1, fld.q)))
        acc = fld.add(acc, fld.mul(c, word))
    if int(rng.integers(0, 2)):
        acc = fld.add(acc, fld.mul(np.int64(int(rng.integers(0, fld.q))), fld.eye(n)))
    return acc


def _eval_poly_at_matrix(fld, poly, A):
    n = A.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    for c in reversed(poly):
        acc = fld.matmul(acc, A)
        acc = fld.add(acc, fld.mul(np.int64(int(c)), fld.eye(n)))
    return acc


def meataxe_split(rho: ModuleRep, seed: int = DEFAULT_SEED,
                  budget: int = DEFAULT_MEATAXE_BUDGET):
    """Either an IrreducibleWitness or the row basis of a proper nonzero
    invariant subspace (as a numpy array)."""
    fld = rho.field
    n = rho.dim
    if n == 1:
        return IrreducibleWitness(None, 1)
    mats = rho.matrices
    if not mats:
        e1 = np.zeros((1, n), dtype=np.int64)
        e1[0, 0] = 1
        return e1
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        A = _random_algebra_element(fld, mats, n, rng)
        v = np.asarray(rng.integers(0, fld.q, size=n), dtype=np.int64)
        if not v.any():
            v[0] = 1
        p = _vector_minpoly(fld, A, v)
        if len(p) <= 1:
            continue
        p0 = _irreducible_factor(fld, p, rng)
        theta = _eval_poly_at_matrix(fld, p0, A)
        null = fld.nullspace(theta)
        if null.shape[0] == 0:
            continue
        w = spin(fld, mats, [null[0]])
        if 0 < w.dim < n:
            return w.basis_matrix()
        nullT = fld.nullspace(theta.T)
        matsT = [m.T for m in mats]
        wT = spin(fld, matsT, [nullT[0]])
        if 0 < wT.dim < n:
            # annihilator of a proper dual submodule is a proper submodule
            return fld.nullspace(wT.basis_matrix())
        if null.shape[0] == len(p0) - 1:
            return IrreducibleWitness(A, len(p0) - 1)
    raise RandomBudgetExceeded(f"no verdict within {budget} random algebra elements")


def is_irreducible(rho: ModuleRep, seed: int = DEFAULT_SEED,
                   budget: int = DEFAULT_MEATAXE_BUDGET) -> bool:
    return isinstance(meataxe_split(rho, seed, budget), IrreducibleWitness)


def _submodule_action(fld, mats, basis):
    """Restrict a module to the invariant row-space `basis` and form the
    quotient.  Returns (sub_mats, quot_mats)."""
    k, n = basis.shape
    # complete basis to a full one with unit vectors at the free columns
    R, pivots = fld.rref(basis)
    free = [c for c in range(n) if c not in pivots]
    Q = np.zeros((n, n), dtype=np.int64)
    Q[:k] = R
    for i, c in enumerate(free):
        Q[k + i, c] = 1
    # columns of Q^T are the new basis vectors
    QT = Q.T
    QTinv = fld.inv_matrix(QT)
    subs, quots = [], []
    for M in mats:
        Mp = fld.matmul(QTinv, fld.matmul(M, QT))
        if Mp[k:, :k].any():
            raise ValidationError("claimed subspace is not invariant")
        subs.append(Mp[:k, :k])
        quots.append(Mp[k:, k:])
    return subs, quots


def modules_isomorphic(a: ModuleRep, b: ModuleRep) -> bool:
    """Isomorphism test via a nonzero intertwiner; exact for irreducibles."""
    if a.dim != b.dim:
        return False
    return len(intertwiners(a, b)) > 0


def composition_factors(rho: ModuleRep, seed: int = DEFAULT_SEED,
                        budget: int = DEFAULT_MEATAXE_BUDGET):
    """Multiset of irreducible factors, as a list of (ModuleRep, multiplicity)."""
    fld = rho.field
    irreducibles = []
    stack = [tuple(rho.matrices)]
    salt = 0
    while stack:
        mats = stack.pop()
        sub = ModuleRep(fld, mats)
        verdict = meataxe_split(sub, seed + salt, budget)
        salt += 1
        if isinstance(verdict, IrreducibleWitness):
            irreducibles.append(sub)
        else:
            subs, quots = _submodule_action(fld, list(mats), verdict)
            stack.append(tuple(subs))
            stack.append(tuple(quots))
    classes = []
    for m in irreducibles:
        for entry in classes:
            if modules_isomorphic(entry[0], m):
                entry[1] += 1
                break
        else:
            classes.append([m, 1])
    assert sum(m.dim * k for m, k in classes) == rho.dim
    return [(m, k) for m, k in classes]


def semisimplify(rho: ModuleRep, seed: int = DEFAULT_SEED,
                 budget: int = DEFAULT_MEATAXE_BUDGET) -> ModuleRep:
    """Block-diagonal direct sum of the composition factors."""
    factors = composition_factors(rho, seed, budget)
    acc = None
    for m, k in factors:
        for _ in range(k):
            acc = m if acc is None else acc.direct_sum(m)
    return acc


def splitting_degree(rho: ModuleRep, seed: int = DEFAULT_SEED) -> int:
    """For an irreducible module, the degree of its commutant field over the
    base field (1 means absolutely irreducible)."""
    _, dim = commutant(rho)
    return dim


def is_absolutely_irreducible(rho: ModuleRep, seed: int = DEFAULT_SEED,
                              budget: int = DEFAULT_MEATAXE_BUDGET) -> bool:
    """Irreducible with scalar commutant.  The commutant of an irreducible
    module over a finite field is a field extension of the base, so no
    scalar extension is needed to decide absolute irreducibility."""
    return is_irreducible(rho, seed, budget) and commutant(rho)[1] == 1


def extend_scalars(rho: ModuleRep, d: int) -> ModuleRep:
    """View a module over the prime field F_ell inside the canonical
    GF(ell^d).  Entries of prime-field matrices are constants, so the
    embedding is the identity on encodings."""
    if rho.field.d != 1:
        raise ValidationError("extend_scalars starts from a prime field")
    big = field_make(rho.field.ell, d)
    return ModuleRep(big, tuple(m.array for m in rho.action))
