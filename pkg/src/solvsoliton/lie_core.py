"""Lie algebras presented by structure constants.

Brackets, adjoints, Jacobi verification, Killing form, derived algebra,
unimodularity, complete solvability, the derivation space, and verification
of a declared abelian-plus-nilpotent splitting.  Everything is exact.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Matrix, char_poly, real_rooted, sparse_nullspace

__all__ = [
    "StructureConstants",
    "Splitting",
    "SplittingReport",
    "bracket",
    "check_jacobi",
    "ad_matrix",
    "killing_form",
    "derived_algebra",
    "is_unimodular",
    "is_solvable",
    "is_completely_solvable",
    "derivation_space",
    "derivation_flat_basis",
    "is_derivation",
    "verify_splitting",
    "subalgebra",
    "structure_to_json",
    "structure_from_json",
]


class StructureConstants:
    """Bracket tensor c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k."""

    __slots__ = ("dim", "c", "_sparse", "_cache")

    def __init__(self, dim: int, c):
        self.dim = dim
        self.c = [
            [[Fraction(c[i][j][k]) for k in range(dim)] for j in range(dim)]
            for i in range(dim)
        ]
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    if self.c[i][j][k] != -self.c[j][i][k]:
                        raise ValueError("structure constants are not antisymmetric")
        # sparse view: _sparse[i][j] = [(k, value), ...]
        self._sparse = [
            [[(k, v) for k, v in enumerate(self.c[i][j]) if v] for j in range(dim)]
            for i in range(dim)
        ]
        self._cache: dict = {}

    @classmethod
    def from_triples(cls, dim: int, triples) -> "StructureConstants":
        """Build from [e_i, e_j] += value * e_k entries given for i < j."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, k, value in triples:
            if not (0 <= i < j < dim and 0 <= k < dim):
                raise ValueError(f"bad triple ({i}, {j}, {k})")
            value = Fraction(value)
            c[i][j][k] += value
            c[j][i][k] -= value
        return cls(dim, c)

    def triples(self):
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k, v in self._sparse[i][j]:
                    out.append((i, j, k, v))
        return out

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.dim == other.dim and self.c == other.c

    def __hash__(self):
        return hash((self.dim, tuple(self.triples())))

    def __repr__(self):
        return f"StructureConstants(dim={self.dim}, nonzero={len(self.triples())})"


def bracket(L: StructureConstants, x, y) -> list:
    """[x, y] for coordinate vectors x, y of length dim."""
    d = L.dim
    if len(x) != d or len(y) != d:
        raise ValueError("vector length does not match the algebra dimension")
    out = [Fraction(0)] * d
    for i in range(d):
        xi = x[i]
        if not xi:
            continue
        row = L._sparse[i]
        for j in range(d):
            yj = y[j]
            if not yj:
                continue
            f = xi * yj
            for k, v in row[j]:
                out[k] += f * v
    return out


def _basis_vector(d: int, i: int) -> list:
    v = [Fraction(0)] * d
    v[i] = Fraction(1)
    return v


def check_jacobi(L: StructureConstants):
    """(ok, witness): witness is the first failing (i, j, k, defect vector)."""
    d = L.dim
    basis = [_basis_vector(d, i) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            bij = bracket(L, basis[i], basis[j])
            for k in range(j + 1, d):
                term = bracket(L, bij, basis[k])
                t2 = bracket(L, bracket(L, basis[j], basis[k]), basis[i])
                t3 = bracket(L, bracket(L, basis[k], basis[i]), basis[j])
                defect = [term[m] + t2[m] + t3[m] for m in range(d)]
                if any(defect):
                    return False, (i, j, k, defect)
    return True, None


def ad_matrix(L: StructureConstants, x) -> Matrix:
    """Matrix of y -> [x, y] in the fixed basis."""
    d = L.dim
    out = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        xi = x[i]
        if not xi:
            continue
        for j in range(d):
            for k, v in L._sparse[i][j]:
                out[k][j] += xi * v
    return Matrix(out)


def _ad_basis(L: StructureConstants) -> list:
    ads = L._cache.get("ad_basis")
    if ads is None:
        d = L.dim
        ads = [ad_matrix(L, _basis_vector(d, i)) for i in range(d)]
        L._cache["ad_basis"] = ads
    return ads


def killing_form(L: StructureConstants) -> Matrix:
    """beta(X, Y) = trace(ad X . ad Y) on the basis."""
    d = L.dim
    ads = _ad_basis(L)
    out = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            t = Fraction(0)
            for r in range(d):
                row = ads[i].data[r]
                for s in range(d):
                    a = row[s]
                    if a:
                        b = ads[j].data[s][r]
                        if b:
                            t += a * b
            out[i][j] = t
            out[j][i] = t
    return Matrix(out)


def _echelon_basis(vectors: list) -> list:
    """Row-echelon span of a list of coordinate vectors (dense Fractions)."""
    pivots = []  # list of (col, vector)
    for vec in vectors:
        v = list(vec)
        for col, pv in pivots:
            f = v[col]
            if f:
                v = [a - f * b for a, b in zip(v, pv)]
        lead = next((idx for idx, a in enumerate(v) if a), None)
        if lead is not None:
            d = v[lead]
            pivots.append((lead, [a / d for a in v]))
    pivots.sort(key=lambda t: t[0])
    return [v for _, v in pivots]


def _span_brackets(L: StructureConstants, basis_a: list, basis_b: list) -> list:
    return _echelon_basis(
        [bracket(L, x, y) for x in basis_a for y in basis_b]
    )


def derived_algebra(L: StructureConstants) -> list:
    """Echelonized basis of [L, L]."""
    d = L.dim
    basis = [_basis_vector(d, i) for i in range(d)]
    vecs = []
    for i in range(d):
        for j in range(i + 1, d):
            v = bracket(L, basis[i], basis[j])
            if any(v):
                vecs.append(v)
    return _echelon_basis(vecs)


def is_unimodular(L: StructureConstants) -> bool:
    return all(ad.trace() == 0 for ad in _ad_basis(L))


def is_solvable(L: StructureConstants) -> bool:
    """Derived series reaches zero."""
    d = L.dim
    current = [_basis_vector(d, i) for i in range(d)]
    while current:
        nxt = _span_brackets(L, current, current)
        if len(nxt) >= len(current):
            return False
        current = nxt
    return True


def _lower_central_series_vanishes(L: StructureConstants, basis: list) -> bool:
    """Nilpotency of the span of ``basis`` (assumed a subalgebra)."""
    current = basis
    while current:
        nxt = _span_brackets(L, basis, current)
        if len(nxt) >= len(current):
            return False
        current = nxt
    return True


def is_completely_solvable(
    L: StructureConstants, samples: int = 32, seed: int = 7
) -> bool:
    """All ad-eigenvalues real: exact on basis vectors, sampled beyond.

    Exactness note: the certificate is sound for the basis adjoints (Sturm
    decided) and heuristic beyond them, using ``samples`` pseudo-random
    rational combinations with a fixed seed.
    """
    if not is_solvable(L):
        raise ValueError("complete solvability is only defined for solvable algebras")
    d = L.dim
    for i in range(d):
        p = char_poly(ad_matrix(L, _basis_vector(d, i)))
        if not real_rooted(p):
            return False
    rng = random.Random(seed)
    for _ in range(samples):
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(d)]
        if not any(x):
            x[0] = Fraction(1)
        if not real_rooted(char_poly(ad_matrix(L, x))):
            return False
    return True


def derivation_space(L: StructureConstants) -> list:
    """Basis of {D : D[x,y] = [Dx,y] + [x,Dy]} as matrices.

    The Leibniz constraints over basis pairs form a sparse d^2 x d^2 linear
    system in the entries of D; its kernel is computed exactly.  Cached on
    the algebra.
    """
    cached = L._cache.get("derivation_space")
    if cached is not None:
        return cached
    d = L.dim
    # Unknown order: D[r][s] at index r*d + s.
    rows = []
    for i in range(d):
        for j in range(i + 1, d):
            cij = L._sparse[i][j]
            for k in range(d):
                row: dict[int, Fraction] = {}

                def add(idx, val, row=row):
                    nv = row.get(idx, Fraction(0)) + val
                    if nv:
                        row[idx] = nv
                    else:
                        row.pop(idx, None)

                # D[e_i, e_j] contributes D[k][m] for each bracket component m.
                for m, v in cij:
                    add(k * d + m, v)
                # -[D e_i, e_j] contributes -c[m][j][k] * D[m][i].
                for m in range(d):
                    v = L.c[m][j][k]
                    if v:
                        add(m * d + i, -v)
                # -[e_i, D e_j] contributes -c[i][m][k] * D[m][j].
                for m in range(d):
                    v = L.c[i][m][k]
                    if v:
                        add(m * d + j, -v)
                if row:
                    rows.append(row)
    kernel, free_cols = sparse_nullspace(rows, d * d, with_free=True)
    basis = [
        Matrix([vec[r * d : (r + 1) * d] for r in range(d)]) for vec in kernel
    ]
    L._cache["derivation_space"] = basis
    L._cache["derivation_flat"] = (kernel, free_cols)
    return basis


def derivation_flat_basis(L: StructureConstants):
    """Flattened derivation basis with marker columns, for span solves.

    Returns (vectors, free_cols) where vectors[j] is the row-major flattening
    of the j-th derivation basis matrix, vectors[j][free_cols[j]] = 1, and
    vectors[i][free_cols[j]] = 0 for i != j.  Membership of a flattened
    endomorphism in the derivation span then reduces to reading marker
    coordinates and checking the residual.
    """
    if "derivation_flat" not in L._cache:
        derivation_space(L)
    return L._cache["derivation_flat"]


def is_derivation(L: StructureConstants, D: Matrix):
    """(ok, witness): witness is the first failing basis pair (i, j)."""
    d = L.dim
    basis = [_basis_vector(d, i) for i in range(d)]
    cols = [D.column_vector(j) for j in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            b = bracket(L, basis[i], basis[j])
            lhs = [
                sum((D.data[r][m] * b[m] for m in range(d) if b[m]), Fraction(0))
                for r in range(d)
            ]
            rhs1 = bracket(L, cols[i], basis[j])
            rhs2 = bracket(L, basis[i], cols[j])
            if any(lhs[r] - rhs1[r] - rhs2[r] for r in range(d)):
                return False, (i, j)
    return True, None


@dataclass(frozen=True)
class Splitting:
    """Declared decomposition into an abelian part and a nilpotent ideal."""

    a_indices: tuple
    n_indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "a_indices", tuple(self.a_indices))
        object.__setattr__(self, "n_indices", tuple(self.n_indices))


@dataclass
class SplittingReport:
    n_is_ideal: bool
    n_is_nilpotent: bool
    n_contains_derived: bool
    a_is_abelian: bool
    a_orthogonal_to_n: bool
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.n_is_ideal
            and self.n_is_nilpotent
            and self.n_contains_derived
            and self.a_is_abelian
            and self.a_orthogonal_to_n
        )


def _in_span(echelon: list, vec: list) -> bool:
    v = list(vec)
    for row in echelon:
        lead = next(idx for idx, a in enumerate(row) if a)
        f = v[lead]
        if f:
            v = [x - f * y for x, y in zip(v, row)]
    return not any(v)


def verify_splitting(L: StructureConstants, s: Splitting, G: Matrix) -> SplittingReport:
    """Check the declared splitting against the algebra and the metric.

    The nilpotent part is a *declared* nilradical candidate: the report
    certifies ideal-ness, nilpotency, and containment of the derived algebra
    separately rather than computing a nilradical from scratch.
    """
    d = L.dim
    idx = sorted(s.a_indices) + sorted(s.n_indices)
    if sorted(idx) != list(range(d)):
        raise ValueError("splitting index sets must partition the basis")
    a_basis = [_basis_vector(d, i) for i in s.a_indices]
    n_basis = [_basis_vector(d, i) for i in s.n_indices]
    n_span = _echelon_basis(n_basis)
    full = [_basis_vector(d, i) for i in range(d)]

    n_is_ideal = all(
        _in_span(n_span, bracket(L, x, y)) for x in full for y in n_basis
    )
    n_is_nilpotent = _lower_central_series_vanishes(L, n_basis)
    n_contains_derived = all(_in_span(n_span, v) for v in derived_algebra(L))
    a_is_abelian = all(
        not any(bracket(L, x, y)) for x in a_basis for y in a_basis
    )
    ortho = True
    for i in s.a_indices:
        for j in s.n_indices:
            if G.data[i][j] != 0:
                ortho = False
    return SplittingReport(
        n_is_ideal=n_is_ideal,
        n_is_nilpotent=n_is_nilpotent,
        n_contains_derived=n_contains_derived,
        a_is_abelian=a_is_abelian,
        a_orthogonal_to_n=ortho,
    )


def subalgebra(L: StructureConstants, indices) -> StructureConstants:
    """Restriction to the span of the given basis indices (must be closed)."""
    indices = list(indices)
    pos = {g: i for i, g in enumerate(indices)}
    dsub = len(indices)
    c = [[[Fraction(0)] * dsub for _ in range(dsub)] for _ in range(dsub)]
    for a, ga in enumerate(indices):
        for b, gb in enumerate(indices):
            for k, v in L._sparse[ga][gb]:
                if k not in pos:
                    raise ValueError("index set does not span a subalgebra")
                c[a][b][pos[k]] = v
    return StructureConstants(dsub, c)


def structure_to_json(L: StructureConstants) -> str:
    payload = {
        "dim": L.dim,
        "triples": [[i, j, k, str(v)] for i, j, k, v in L.triples()],
    }
    return json.dumps(payload, sort_keys=True)


def structure_from_json(text: str) -> StructureConstants:
    payload = json.loads(text)
    triples = [
        (int(i), int(j), int(k), Fraction(v)) for i, j, k, v in payload["triples"]
    ]
    return StructureConstants.from_triples(int(payload["dim"]), triples)
