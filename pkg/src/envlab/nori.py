"""Exponential generation of finite matrix groups in characteristic ell:
truncated exp/log, one-parameter subgroups, the normal subgroup generated by
order-ell elements, and the F_ell-points of the exponentially generated
closure together with its matrix Lie algebra.

Requires ell >= n so that the truncated series terminate and invert each
other on unipotent matrices.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CharTooSmall, EmptyAlgebra, NotUnipotent
from .fieldcore import DEFAULT_CLOSURE_CAP, DEFAULT_SEED, FinMatGroup, Mat
from .gf import GF


def default_ell_threshold(n: int) -> int:
    """Smallest ell at which the exponential-generation properties are
    asserted by the tests.  The true constant is not effective here; 4n is
    a workable desk-scale default."""
    return 4 * n


@dataclass(frozen=True)
class NilpotentMat:
    mat: Mat
    index: int  # least k with mat^k = 0


@dataclass
class NoriResult:
    plus_group: FinMatGroup
    nori_points: FinMatGroup
    lie_algebra: list
    quotient_order: int
    warnings: list

    def to_json(self, lie_rank=None):
        doc = {
            "plus_order": self.plus_group.order,
            "nori_order": self.nori_points.order,
            "quotient_order": self.quotient_order,
            "lie_dim": len(self.lie_algebra),
            "warnings": list(self.warnings),
        }
        return doc


def _check_char(fld: GF, n: int):
    if fld.d != 1:
        raise NotUnipotent("exp/log work over the prime field F_ell")
    if fld.ell < n:
        raise CharTooSmall(f"need ell >= n, got ell={fld.ell}, n={n}")


def _nilpotency_index(fld, N, n):
    acc = N.copy()
    k = 1
    while acc.any():
        if k >= n:
            return None
        acc = fld.matmul(acc, N)
        k += 1
    return k


def unipotent_log(x: Mat) -> NilpotentMat:
    """Truncated series -sum_{i=1}^{ell-1} (1-x)^i / i on a unipotent x."""
    fld = x.field
    n = x.n
    _check_char(fld, n)
    one_minus = fld.sub(fld.eye(n), x.array)
    idx = _nilpotency_index(fld, one_minus, n) if one_minus.any() else 1
    if one_minus.any() and idx is None:
        raise NotUnipotent("(x - 1)^n != 0")
    acc = np.zeros((n, n), dtype=np.int64)
    term = fld.eye(n)
    for i in range(1, n):
        term = fld.matmul(term, one_minus)
        coef = np.int64(fld.neg(fld.inv(i % fld.ell)))
        acc = fld.add(acc, fld.mul(coef, term))
    nil_idx = _nilpotency_index(fld, acc, n) if acc.any() else 1
    return NilpotentMat(Mat(fld, acc), nil_idx or n)


def nilpotent_exp(N: NilpotentMat | Mat) -> Mat:
    """Truncated series sum_{i=0}^{ell-1} N^i / i! on a nilpotent N."""
    arr = N.mat.array if isinstance(N, NilpotentMat) else N.array
    fld = N.mat.field if isinstance(N, NilpotentMat) else N.field
    n = arr.shape[0]
    _check_char(fld, n)
    if arr.any() and _nilpotency_index(fld, arr, n) is None:
        raise NotUnipotent("N^n != 0")
    acc = fld.eye(n)
    term = fld.eye(n)
    fact = 1
    for i in range(1, n):
        term = fld.matmul(term, arr)
        fact = (fact * i) % fld.ell
        acc = fld.add(acc, fld.mul(np.int64(fld.inv(fact)), term))
    return Mat(fld, acc)


def is_unipotent(x: Mat) -> bool:
    fld = x.field
    one_minus = fld.sub(fld.eye(x.n), x.array)
    return (not one_minus.any()) or _nilpotency_index(fld, one_minus, x.n) is not None


def order_ell_elements(G: FinMatGroup, cap: int = DEFAULT_CLOSURE_CAP):
    """G[ell]: the non-trivial unipotent elements of G."""
    _check_char(G.field, G.n)
    out = []
    for g in G.closure(cap):
        if not g.is_identity() and is_unipotent(g):
            out.append(g)
    return out


def one_param_subgroup(x: Mat):
    """The ell matrices x^t = exp(t log x) for t in F_ell."""
    fld = x.field
    N = unipotent_log(x)
    out = []
    for t in range(fld.ell):
        scaled = Mat(fld, fld.mul(np.int64(t), N.mat.array))
        out.append(nilpotent_exp(NilpotentMat(scaled, N.index)))
    return out


def _closure_from_candidates(fld, n, candidates, cap):
    """Group generated by a large candidate set, adding generators only
    when they fall outside the closure built so far."""
    group = FinMatGroup.trivial(fld, n)
    gens = []
    for c in candidates:
        if c.is_identity():
            continue
        if c in group:
            continue
        gens.append(c)
        group = FinMatGroup(fld, gens)
        group.closure(cap)
    if not gens:
        return FinMatGroup.trivial(fld, n)
    return group


def plus_subgroup(G: FinMatGroup, cap: int = DEFAULT_CLOSURE_CAP) -> FinMatGroup:
    """The subgroup generated by the order-ell elements (normal in G)."""
    unis = order_ell_elements(G, cap)
    return _closure_from_candidates(G.field, G.n, unis, cap)


def lie_closure(fld: GF, seeds, n: int):
    """Bracket-and-span closure of a set of n x n matrices, as a basis list."""
    basis = []      # echelonized flat vectors
    mats = []
    def reduce(v):
        for row, piv in basis:
            c = v[piv]
            if c:
                v = fld.sub(v, fld.mul(np.int64(int(c)), row))
        return v
    def add(M):
        v = reduce(M.reshape(-1).copy())
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        v = fld.mul(v, np.int64(fld.inv(int(v[piv]))))
        basis.append((v, piv))
        mats.append(v.reshape(n, n))
        return True
    for s in seeds:
        add(np.asarray(s, dtype=np.int64))
    i = 0
    while i < len(mats):
        for j in range(i + 1):
            a, b = mats[i], mats[j]
            br = fld.sub(fld.matmul(a, b), fld.matmul(b, a))
            add(br)
        i += 1
    return mats


def nori_points(G: FinMatGroup, cap: int = DEFAULT_CLOSURE_CAP,
                collect_warnings: bool = True) -> NoriResult:
    """F_ell-points of the group generated by the one-parameter subgroups
    over G[ell], with the associated Lie algebra and the order of the
    quotient by its own plus-subgroup."""
    fld = G.field
    n = G.n
    warns = []
    if fld.ell < default_ell_threshold(n):
        msg = (f"ell={fld.ell} is below the default threshold {default_ell_threshold(n)} "
               f"for n={n}; exponential-generation properties are only asserted above it")
        warns.append(msg)
        if collect_warnings:
            warnings.warn(msg)
    unis = order_ell_elements(G, cap)
    candidates = []
    logs = []
    for x in unis:
        logs.append(unipotent_log(x).mat.array)
        candidates.extend(one_param_subgroup(x))
    S = _closure_from_candidates(fld, n, candidates, cap)
    S_plus = plus_subgroup(S, cap)
    quotient_order = S.order // S_plus.order
    algebra = lie_closure(fld, logs, n)
    return NoriResult(plus_group=plus_subgroup(G, cap), nori_points=S,
                      lie_algebra=algebra, quotient_order=quotient_order,
                      warnings=warns)


def quotient_is_abelian(S: FinMatGroup, S_plus: FinMatGroup) -> bool:
    """S/S_plus abelian, checked via generator commutators (S_plus normal)."""
    for a in S.generators:
        for b in S.generators:
            comm = a @ b @ a.inverse() @ b.inverse()
            if comm not in S_plus and not comm.is_identity():
                return False
    return True


@dataclass(frozen=True)
class LieRankReport:
    dim: int
    derived_dim: int
    rank_estimate: int
    sample_count: int


def _coords_in_span(fld, basis_mats, M):
    """Coordinates of M in the span of basis_mats (list), or None."""
    if not basis_mats:
        return None if M.any() else np.zeros(0, dtype=np.int64)
    B = np.array([b.reshape(-1) for b in basis_mats], dtype=np.int64)
    aug = np.concatenate([B.T, M.reshape(-1, 1)], axis=1)
    R, pivots = fld.rref(aug)
    k = len(basis_mats)
    if k in pivots:
        return None
    coords = np.zeros(k, dtype=np.int64)
    for r, p in enumerate(pivots):
        coords[p] = R[r, k]
    return coords


def lie_rank_estimate(basis, fld: GF, samples: int = 25,
                      seed: int = DEFAULT_SEED) -> LieRankReport:
    """(dim, derived dim, sampled rank upper bound) of a matrix Lie algebra.

    rank_estimate is min over sampled x in the derived algebra of
    dim ker(ad x | derived); it is an upper bound for the reductive rank,
    not a certificate.
    """
    if not basis:
        raise EmptyAlgebra("zero Lie algebra")
    n = basis[0].shape[0]
    dim = len(basis)
    brackets = []
    for i in range(dim):
        for j in range(i):
            brackets.append(fld.sub(fld.matmul(basis[i], basis[j]),
                                    fld.matmul(basis[j], basis[i])))
    derived = lie_closure(fld, brackets, n)
    ddim = len(derived)
    if ddim == 0:
        return LieRankReport(dim, 0, 0, 0)
    rng = np.random.default_rng(seed)
    best = ddim
    for _ in range(samples):
        coeffs = rng.integers(0, fld.q, size=ddim)
        x = np.zeros((n, n), dtype=np.int64)
        for c, b in zip(coeffs, derived):
            x = fld.add(x, fld.mul(np.int64(int(c)), b))
        # ad x as a matrix on the derived algebra
        ad = np.zeros((ddim, ddim), dtype=np.int64)
        ok = True
        for j, b in enumerate(derived):
            br = fld.sub(fld.matmul(x, b), fld.matmul(b, x))
            coords = _coords_in_span(fld, derived, br)
            if coords is None:
                ok = False
                break
            ad[:, j] = coords
        if not ok:
            continue
        ker = ddim - fld.rank(ad)
        best = min(best, ker)
    return LieRankReport(dim, ddim, best, samples)
