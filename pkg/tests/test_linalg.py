import random
from fractions import Fraction

import pytest
from gmpy2 import mpq

from parcomod.field import CyclotomicField
from parcomod.linalg import (
    DimensionMismatchError,
    Echelon,
    ExactMatrix,
    Subspace,
    kernel_basis,
    rref,
    solve,
)

F = CyclotomicField.get(24)


def mat(rows):
    return ExactMatrix(F, [[F.rational(x) if isinstance(x, int) else x for x in r] for r in rows])


def vec(xs):
    return [F.rational(x) if isinstance(x, int) else x for x in xs]


def test_rref_identity_and_zero():
    eye = ExactMatrix.identity(F, 3)
    r, rank, piv = rref(eye)
    assert r == eye and rank == 3 and piv == [0, 1, 2]
    zero = ExactMatrix.zero(F, 2, 4)
    r, rank, piv = rref(zero)
    assert rank == 0 and piv == [] and r == zero


def test_rref_idempotent_random():
    rng = random.Random(99)
    for _ in range(50):
        rows = [[F.rational(rng.randint(-4, 4)) for _ in range(5)] for _ in range(4)]
        m = ExactMatrix(F, rows)
        r1, rank1, piv1 = rref(m)
        r2, rank2, piv2 = rref(r1)
        assert r1 == r2 and rank1 == rank2 and piv1 == piv2


def _fraction_rref_rank(rows):
    """Independent elimination over Fraction for rational matrices."""
    m = [[Fraction(int(c.coeffs[0].numerator), int(c.coeffs[0].denominator)) for c in row] for row in rows]
    rank = 0
    for col in range(len(m[0]) if m else 0):
        sel = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if sel is None:
            continue
        m[rank], m[sel] = m[sel], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def test_rank_against_fraction_oracle():
    rng = random.Random(4)
    for _ in range(40):
        rows = [[F.rational(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(6)] for _ in range(5)]
        m = ExactMatrix(F, rows)
        _, rank, _ = rref(m)
        assert rank == _fraction_rref_rank([r for r in m.rows])


def test_kernel_and_solve():
    m = mat([[1, 2, 3], [2, 4, 6]])
    ker = kernel_basis(m)
    assert len(ker) == 2
    for v in ker:
        assert all(not c for c in m.apply(v))
    x = solve(mat([[1, 1], [0, 1]]), vec([3, 2]))
    assert x == vec([1, 2])
    assert solve(mat([[1, 1], [1, 1]]), vec([0, 1])) is None


def test_subspace_basic_ops():
    u = Subspace.from_vectors(F, 4, [vec([1, 0, 1, 0]), vec([0, 1, 0, 0])])
    assert u.dim == 2
    assert u.intersection(u) == u
    comp = Subspace.from_vectors(F, 4, [vec([0, 0, 1, 0]), vec([0, 0, 0, 1])])
    uc = Subspace.from_vectors(F, 4, [vec([1, 0, 0, 0]), vec([0, 1, 0, 0])])
    assert uc.intersection(comp).dim == 0
    assert uc.sum(comp) == Subspace.full(F, 4)
    assert u.contains(vec([1, 1, 1, 0]))
    assert not u.contains(vec([1, 1, 1, 1]))


def _random_subspace(rng, dim, ambient):
    vs = [[F.rational(rng.randint(-3, 3)) for _ in range(ambient)] for _ in range(dim)]
    return Subspace.from_vectors(F, ambient, vs)


def _intersection_dim_oracle(u, v):
    """Solve the joint linear system directly: stack bases, kernel dimension."""
    cols = len(u.basis) + len(v.basis)
    if not u.basis or not v.basis:
        return 0
    rows = []
    for k in range(u.ambient_dim):
        rows.append([b[k] for b in u.basis] + [-b[k] for b in v.basis])
    ker = kernel_basis(ExactMatrix(F, rows, cols))
    # dimension of the span of the resulting intersection vectors
    vecs = []
    for sol in ker:
        w = [F.zero()] * u.ambient_dim
        for a, b in zip(sol[: len(u.basis)], u.basis):
            w = [x + a * y for x, y in zip(w, b)]
        vecs.append(w)
    if not vecs:
        return 0
    _, rank, _ = rref(ExactMatrix(F, vecs, u.ambient_dim))
    return rank


def test_intersection_dim_against_oracle_and_formula():
    rng = random.Random(123)
    for _ in range(60):
        u = _random_subspace(rng, 3, 5)
        v = _random_subspace(rng, 3, 5)
        w = u.intersection(v)
        assert w.dim == _intersection_dim_oracle(u, v)
        assert u.dim + v.dim == u.sum(v).dim + w.dim
        assert u.contains_space(w) and v.contains_space(w)


def test_dimension_formula_fuzz_1000():
    rng = random.Random(777)
    for _ in range(1000):
        a = _random_subspace(rng, rng.randint(0, 4), 6)
        b = _random_subspace(rng, rng.randint(0, 4), 6)
        assert a.dim + b.dim == a.sum(b).dim + a.intersection(b).dim


def test_ambient_mismatch():
    u = _random_subspace(random.Random(1), 2, 4)
    v = _random_subspace(random.Random(2), 2, 5)
    with pytest.raises(DimensionMismatchError):
        u.intersection(v)


def test_complement_projection():
    u = Subspace.from_vectors(F, 3, [vec([1, 2, 0])])
    proj = u.complement_projection()
    # kernel of the projection is exactly u
    ker = Subspace.from_vectors(F, 3, kernel_basis(proj))
    assert ker == u
    # projection restricted to complement coords is the identity
    free = u.complement_coords()
    for row_idx, fj in enumerate(free):
        e = [F.zero()] * 3
        e[fj] = F.one()
        out = proj.apply(e)
        expected = [F.one() if i == row_idx else F.zero() for i in range(len(free))]
        assert out == expected


def test_preimage():
    m = mat([[1, 0, 0], [0, 1, 0]])  # projection k^3 -> k^2
    target = Subspace.from_vectors(F, 2, [vec([1, 1])])
    pre = target.preimage(m)
    assert pre.dim == 2
    assert pre.contains(vec([1, 1, 0])) and pre.contains(vec([0, 0, 1]))


def test_echelon_matches_subspace():
    rng = random.Random(5)
    for _ in range(30):
        vs = [[F.rational(rng.randint(-3, 3)) for _ in range(5)] for _ in range(4)]
        ech = Echelon(F, 5)
        for v in vs:
            ech.insert(list(v))
        assert ech.subspace() == Subspace.from_vectors(F, 5, vs)
        for v in vs:
            assert ech.contains(v)
