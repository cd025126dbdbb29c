"""Characters of the tame inertia quotient and their weight data: the
fundamental character of each level, ell-restricted digit expansions,
level raising and lowering along the norm relation, and the weight
multiset of a mod-ell representation of a procyclic group given by one
semisimple matrix.

No local fields appear; the inertia group is modeled abstractly by the
image of a topological generator, which is all the weight multiset
depends on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DimensionMismatch, NotCompatible, NotDivisor,
                     OrderDivisibleByEll, OutOfRange, ValidationError)
from .fieldcore import (Mat, ModuleRep, _poly_divmod, _poly_gcd, _poly_mul,
                        _vector_minpoly, composition_factors)
from .gf import field_make, is_prime


@dataclass(frozen=True)
class TameCharacter:
    """The character theta_level ^ exponent, with 0 <= exponent <= ell^level - 2."""

    ell: int
    level: int
    exponent: int

    def __post_init__(self):
        if not is_prime(self.ell):
            raise ValidationError(f"{self.ell} is not prime")
        if self.level < 1:
            raise ValidationError("level must be positive")
        top = self.ell ** self.level - 1
        if not 0 <= self.exponent <= top - 1:
            raise OutOfRange(
                f"exponent must lie in [0, {top - 1}], got {self.exponent}")


@dataclass(frozen=True)
class TameWeights:
    """Multiset of digits in [0, ell - 1], stored sorted."""

    ell: int
    digits: tuple

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(sorted(int(x) for x in self.digits)))
        for m in self.digits:
            if not 0 <= m <= self.ell - 1:
                raise OutOfRange(f"digit {m} outside [0, {self.ell - 1}]")

    def union(self, other: "TameWeights") -> "TameWeights":
        if self.ell != other.ell:
            raise NotCompatible("weight multisets over different primes")
        return TameWeights(self.ell, self.digits + other.digits)

    def bounded_by(self, n2: int) -> bool:
        return all(m <= n2 for m in self.digits)


def ell_restricted_digits(chi: TameCharacter):
    """Digits [m_0 .. m_{d-1}] with exponent = sum m_j ell^j.  The exponent
    range [0, ell^d - 2] forbids the all-(ell - 1) string, so the expansion
    is plain base-ell and unique."""
    e = chi.exponent
    out = []
    for _ in range(chi.level):
        out.append(e % chi.ell)
        e //= chi.ell
    return out


def digits_to_exponent(ell: int, digits) -> int:
    return sum(m * ell ** j for j, m in enumerate(digits))


def level_raise(chi: TameCharacter, new_level: int) -> TameCharacter:
    """theta_d = theta_D ^ ((ell^D - 1)/(ell^d - 1)) for d | D."""
    if new_level % chi.level != 0:
        raise NotDivisor(f"{chi.level} does not divide {new_level}")
    factor = (chi.ell ** new_level - 1) // (chi.ell ** chi.level - 1)
    return TameCharacter(chi.ell, new_level, chi.exponent * factor)


def level_lower(chi: TameCharacter, d: int) -> TameCharacter:
    """Inverse of level_raise when it exists; NotCompatible otherwise."""
    if chi.level % d != 0:
        raise NotDivisor(f"{d} does not divide {chi.level}")
    factor = (chi.ell ** chi.level - 1) // (chi.ell ** d - 1)
    if chi.exponent % factor != 0:
        raise NotCompatible(
            f"exponent {chi.exponent} is not a multiple of {factor}")
    return TameCharacter(chi.ell, d, chi.exponent // factor)


def _as_single_matrix(rho) -> Mat:
    if isinstance(rho, Mat):
        return rho
    if isinstance(rho, ModuleRep):
        if len(rho.action) != 1:
            raise DimensionMismatch("expected a representation of one generator")
        return rho.action[0]
    raise ValidationError("expected a Mat or one-generator ModuleRep")


def view_over_prime_field(rho) -> ModuleRep:
    """An n-dim representation over F_{ell^d} as an nd-dim one over F_ell,
    each entry replaced by its multiplication matrix in the power basis."""
    g = _as_single_matrix(rho)
    fld = g.field
    if fld.d == 1:
        return ModuleRep(fld, (g,))
    sub = field_make(fld.ell, 1)
    n = g.n
    d = fld.d
    big = np.zeros((n * d, n * d), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            a = int(g.array[i, j])
            for c in range(d):
                prod = fld.mul(np.int64(a), np.int64(fld.ell ** c))
                e = int(prod)
                for r in range(d):
                    big[i * d + r, j * d + c] = e % fld.ell
                    e //= fld.ell
    return ModuleRep(sub, (Mat(sub, big),))


def _poly_lcm(fld, a, b):
    g = _poly_gcd(fld, a, b)
    prod = _poly_mul(fld, a, b)
    q, r = _poly_divmod(fld, prod, g)
    assert not r
    lead = fld.inv(int(q[-1]))
    return [fld.mul(np.int64(lead), np.int64(int(c))) for c in q]


def matrix_minpoly(fld, A):
    """Monic minimal polynomial as the lcm of standard-basis vector
    minimal polynomials, coefficients low to high."""
    n = A.shape[0]
    poly = [np.int64(1)]
    for i in range(n):
        v = np.zeros(n, dtype=np.int64)
        v[i] = 1
        poly = _poly_lcm(fld, poly, _vector_minpoly(fld, A, v))
        if len(poly) == n + 1:
            break
    return poly


def _poly_derivative(fld, poly):
    return [fld.mul(np.int64(i % fld.ell), np.int64(int(c)))
            for i, c in enumerate(poly)][1:]


def _is_squarefree(fld, poly):
    der = _poly_derivative(fld, poly)
    while der and int(der[-1]) == 0:
        der.pop()
    if not der:
        return False
    return len(_poly_gcd(fld, poly, der)) == 1


def _poly_eval(ext, poly, x):
    acc = np.int64(0)
    for c in reversed(poly):
        acc = ext.add(ext.mul(acc, np.int64(x)), np.int64(int(c)))
    return int(acc)


def _factor_exponent(ell, poly):
    """For an irreducible degree-e polynomial over F_ell, the discrete log
    of one of its roots in the canonical F_{ell^e} against the least
    primitive element."""
    e = len(poly) - 1
    ext = field_make(ell, e)
    root = None
    for x in range(1, ext.q):
        if _poly_eval(ext, poly, x) == 0:
            root = x
            break
    assert root is not None
    return e, ext.dlog(root)


def tame_weights_of_rep(rho, twist: int = 0) -> TameWeights:
    """Weight multiset of the representation sending a fixed topological
    generator to the given matrix, twisted by the twist-th power of the
    level-one fundamental character.

    Each e-dimensional irreducible factor is a level-e character together
    with its ell-power conjugates and contributes the e base-ell digits of
    its exponent.  Representations over an extension field are first
    viewed over F_ell.
    """
    prim = view_over_prime_field(rho)
    fld = prim.field
    g = prim.action[0]
    if not g.is_invertible():
        raise ValidationError("generator image must be invertible")
    mp = matrix_minpoly(fld, g.array)
    if not _is_squarefree(fld, mp):
        raise OrderDivisibleByEll(
            "generator is not semisimple; its order is divisible by ell")
    digits = []
    for factor, mult in composition_factors(prim):
        A = factor.matrices[0]
        fpoly = matrix_minpoly(fld, A)
        e, c = _factor_exponent(fld.ell, fpoly)
        if twist:
            shift = twist * (fld.ell ** e - 1) // (fld.ell - 1)
            c = (c + shift) % (fld.ell ** e - 1)
        chi = TameCharacter(fld.ell, e, c)
        digits.extend(ell_restricted_digits(chi) * mult)
    return TameWeights(fld.ell, tuple(digits))


def bounded_weights_check(rho, n1: int, n2: int) -> bool:
    """Whether every tame inertia weight of the twist by the n1-th power
    of the level-one fundamental character lies in [0, n2]."""
    if n1 < 0 or n2 < 0:
        raise OutOfRange("n1 and n2 must be non-negative")
    return tame_weights_of_rep(rho, twist=n1).bounded_by(n2)


def unramified_check(matrices) -> bool:
    """Potential semistability in the unramified model: inertia acts
    trivially, i.e. every supplied matrix is the identity."""
    return all(m.is_identity() for m in matrices)
