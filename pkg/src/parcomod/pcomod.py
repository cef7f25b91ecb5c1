"""Partial comodules: axiom checks, operator algebras, simplicity,
isomorphism testing, grouplike shifts and direct sums.

A coaction rho : M -> M (x) H is stored per basis vector as a sparse
tensor {(j, a): c}, meaning rho(m_i) = sum c * m_j (x) b_a. Iterating
rho inserts new H slots directly after the M slot, so after k steps the
key layout is (M, innermost H, ..., outermost H).
"""
from __future__ import annotations

import json

from .field import FieldElem
from .hopf import (
    FiniteDimHopf,
    HopfElement,
    ParentMismatchError,
    Tensor,
    is_grouplike,
    t_add_into,
    t_apply_comult,
    t_apply_functional,
    t_apply_linear,
    t_apply_mult,
    t_eq,
    t_scale,
    t_sub,
)
from .linalg import Echelon, ExactMatrix, Subspace, kernel_basis, rref


class PcmEquivalenceError(AssertionError):
    """PCM2&PCM3 disagreeing with PCM4&PCM5 indicates an arithmetic bug."""


def _apply_rho(t: Tensor, rho_images) -> Tensor:
    out: Tensor = {}
    for key, c in t.items():
        for (j, a), w in rho_images[key[0]].items():
            t_add_into(out, (j, a) + key[1:], c * w)
    return out


class PartialComodule:
    def __init__(self, parent: FiniteDimHopf, rho_images, provenance=None):
        self.parent = parent
        self.rho = [dict(r) for r in rho_images]
        self.dim = len(rho_images)
        self.provenance = provenance or {}
        for r in self.rho:
            for (j, a) in r:
                if not (0 <= j < self.dim and 0 <= a < parent.dim):
                    raise ValueError("coaction indices out of range")

    def __repr__(self):
        return f"<PartialComodule dim {self.dim} over {self.parent.name}>"

    # -- constructors ---------------------------------------------------
    @staticmethod
    def regular(H: FiniteDimHopf) -> "PartialComodule":
        rho = [dict(H.comult[i]) for i in range(H.dim)]
        return PartialComodule(H, rho, {"kind": "regular"})

    @staticmethod
    def one_dim(H: FiniteDimHopf, r: HopfElement) -> "PartialComodule":
        if r.parent is not H:
            raise ParentMismatchError("element of a different algebra")
        rho = [{(0, a): c for a, c in enumerate(r.coeffs) if c}]
        return PartialComodule(H, rho, {"kind": "one_dim", "element": str(r)})

    @staticmethod
    def trivial(H: FiniteDimHopf) -> "PartialComodule":
        return PartialComodule.one_dim(H, H.one())

    # -- operators --------------------------------------------------------
    def operator(self, a: int) -> list[list[FieldElem]]:
        """E_a = (id (x) <dual basis a>) rho as a dim x dim matrix."""
        z = self.parent.field.zero()
        d = self.dim
        m = [[z] * d for _ in range(d)]
        for i in range(d):
            for (j, b), c in self.rho[i].items():
                if b == a:
                    m[j][i] = m[j][i] + c
        return m

    def operators(self):
        return [self.operator(a) for a in range(self.parent.dim)]

    def apply_operator(self, a: int, vec):
        z = self.parent.field.zero()
        out = [z] * self.dim
        for i, c in enumerate(vec):
            if c:
                for (j, b), w in self.rho[i].items():
                    if b == a:
                        out[j] = out[j] + c * w
        return out

    # -- serialization ---------------------------------------------------
    def rho_matrix_rows(self):
        """Row i = coefficients of rho(m_i) over m_j (x) b_a, column j*n + a."""
        n = self.parent.dim
        z = self.parent.field.zero()
        rows = []
        for i in range(self.dim):
            row = [z] * (self.dim * n)
            for (j, a), c in self.rho[i].items():
                row[j * n + a] = c
            rows.append(row)
        return rows

    def to_json(self, inline_algebra=False) -> dict:
        rows = [[str(c) for c in row] for row in self.rho_matrix_rows()]
        alg = self.parent.to_json() if inline_algebra else self.parent.name
        return {"algebra": alg, "dim": self.dim, "rho": rows, "provenance": self.provenance}

    @staticmethod
    def from_json(data: dict, algebra: FiniteDimHopf | None = None) -> "PartialComodule":
        if algebra is None:
            if not isinstance(data["algebra"], dict):
                raise ValueError("algebra must be inline JSON or supplied explicitly")
            algebra = FiniteDimHopf.from_json(data["algebra"])
        n = algebra.dim
        d = int(data["dim"])
        f = algebra.field
        rho = []
        for i in range(d):
            entries = [f.parse(s) for s in data["rho"][i]]
            rho.append({(k // n, k % n): c for k, c in enumerate(entries) if c})
        return PartialComodule(algebra, rho, data.get("provenance"))


# ---------------------------------------------------------------------------
# axiom checking
# ---------------------------------------------------------------------------

class PcmReport:
    def __init__(self, results: dict, witnesses: dict, is_global: bool):
        self.results = results
        self.witnesses = witnesses
        self.is_global = is_global

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def to_dict(self):
        return {
            "ok": self.ok,
            "axioms": dict(self.results),
            "witnesses": {k: v for k, v in self.witnesses.items() if v is not None},
            "global_coaction": self.is_global,
        }

    def __repr__(self):
        return f"<PcmReport {'ok' if self.ok else self.results}>"


def check_pcm(m: PartialComodule) -> PcmReport:
    """All five axioms plus globality; equivalence of (2,3) with (4,5) enforced."""
    H = m.parent
    results = {f"PCM{k}": True for k in range(1, 6)}
    witnesses = {f"PCM{k}": None for k in range(1, 6)}
    is_global = True
    S, mu, D, eps = H.antipode, H.mult, H.comult, H.counit
    for i in range(m.dim):
        t1 = dict(m.rho[i])
        # PCM1
        if not t_eq(t_apply_functional(t1, 1, eps), {(i,): H.field.one()}):
            if results["PCM1"]:
                results["PCM1"], witnesses["PCM1"] = False, i
        t2 = _apply_rho(t1, m.rho)          # (M, h_inner, h_outer)
        t3 = _apply_rho(t2, m.rho)          # (M, h1, h2, h3) innermost first
        # global coaction
        if is_global and not t_eq(t2, t_apply_comult(t1, 1, D)):
            is_global = False
        # PCM2: comult inner slot of rho^2 vs rho^3
        lhs = t_apply_mult(t_apply_linear(t_apply_comult(t2, 1, D), 3, S), 2, mu)
        rhs = t_apply_mult(t_apply_linear(t3, 3, S), 2, mu)
        if not t_eq(lhs, rhs) and results["PCM2"]:
            results["PCM2"], witnesses["PCM2"] = False, i
        # PCM3
        lhs = t_apply_mult(t_apply_linear(t_apply_comult(t2, 2, D), 2, S), 1, mu)
        rhs = t_apply_mult(t_apply_linear(t3, 2, S), 1, mu)
        if not t_eq(lhs, rhs) and results["PCM3"]:
            results["PCM3"], witnesses["PCM3"] = False, i
        # PCM4
        lhs = t_apply_mult(t_apply_linear(t_apply_comult(t2, 1, D), 2, S), 2, mu)
        rhs = t_apply_mult(t_apply_linear(t3, 2, S), 2, mu)
        if not t_eq(lhs, rhs) and results["PCM4"]:
            results["PCM4"], witnesses["PCM4"] = False, i
        # PCM5
        lhs = t_apply_mult(t_apply_linear(t_apply_comult(t2, 2, D), 1, S), 1, mu)
        rhs = t_apply_mult(t_apply_linear(t3, 1, S), 1, mu)
        if not t_eq(lhs, rhs) and results["PCM5"]:
            results["PCM5"], witnesses["PCM5"] = False, i
    if (results["PCM2"] and results["PCM3"]) != (results["PCM4"] and results["PCM5"]):
        raise PcmEquivalenceError(
            f"axiom pair mismatch: {results} on {m!r}"
        )
    return PcmReport(results, witnesses, is_global)


def check_partial_comodule_algebra(m: PartialComodule, mult_b, unit_b) -> dict:
    """PC1-PC3 for an algebra structure on the underlying space.

    mult_b[i][j] is a dict {k: coeff}; unit_b a dict {i: coeff} with the
    usual unital-algebra meaning. Both equalities of the symmetric axiom
    are checked separately.
    """
    H = m.parent
    f = H.field
    d = m.dim
    # verify unitality of the supplied algebra first
    unit_vec = [f.zero()] * d
    for i, c in unit_b.items():
        unit_vec[i] = c
    if not any(unit_vec):
        raise ValueError("non-unital algebra structure")
    for j in range(d):
        left: Tensor = {}
        right: Tensor = {}
        for i, c in unit_b.items():
            for k, w in mult_b[i][j].items():
                t_add_into(left, (k,), c * w)
            for k, w in mult_b[j][i].items():
                t_add_into(right, (k,), c * w)
        if not t_eq(left, {(j,): f.one()}) or not t_eq(right, {(j,): f.one()}):
            raise ValueError("supplied unit is not a unit for the multiplication")

    def tensor_product(t1: Tensor, t2: Tensor, slot_mults) -> Tensor:
        out: Tensor = {}
        for k1, c1 in t1.items():
            for k2, c2 in t2.items():
                c = c1 * c2
                # expand slotwise products
                partial = [((), c)]
                for s, mult in enumerate(slot_mults):
                    nxt = []
                    for key, coeff in partial:
                        for r, w in mult[k1[s]][k2[s]].items():
                            nxt.append((key + (r,), coeff * w))
                    partial = nxt
                for key, coeff in partial:
                    t_add_into(out, key, coeff)
        return out

    results = {"PC1": True, "PC2": True, "PC3_left": True, "PC3_right": True}
    witnesses = {}
    rho_one: Tensor = {}
    for i, c in unit_b.items():
        for key, w in m.rho[i].items():
            t_add_into(rho_one, key, c * w)
    for i in range(d):
        t1 = dict(m.rho[i])
        if not t_eq(t_apply_functional(t1, 1, H.counit), {(i,): f.one()}):
            results["PC1"] = False
            witnesses.setdefault("PC1", i)
        for j in range(d):
            # rho(m_i m_j) = rho(m_i) rho(m_j)
            lhs: Tensor = {}
            for k, w in mult_b[i][j].items():
                for key, c in m.rho[k].items():
                    t_add_into(lhs, key, w * c)
            rhs = tensor_product(m.rho[i], m.rho[j], [mult_b, H.mult])
            if not t_eq(lhs, rhs):
                results["PC2"] = False
                witnesses.setdefault("PC2", (i, j))
        # PC3: (rho(1) (x) 1) (id (x) Delta) rho(a) = rho^2(a) = sym.
        mid = _apply_rho(t1, m.rho)
        dd = t_apply_comult(t1, 1, H.comult)
        one_t: Tensor = {}
        for key, c in rho_one.items():
            for hk, hc in H.unit.items():
                t_add_into(one_t, key + (hk,), c * hc)
        left = tensor_product(one_t, dd, [mult_b, H.mult, H.mult])
        right = tensor_product(dd, one_t, [mult_b, H.mult, H.mult])
        # mid has layout (M, inner, outer); products above are (M, h1, h2)
        # with h1 the Delta-left leg = inner slot
        if not t_eq(left, mid):
            results["PC3_left"] = False
            witnesses.setdefault("PC3_left", i)
        if not t_eq(right, mid):
            results["PC3_right"] = False
            witnesses.setdefault("PC3_right", i)
    return {"ok": all(results.values()), "axioms": results, "witnesses": witnesses}


# ---------------------------------------------------------------------------
# operator algebra and simplicity
# ---------------------------------------------------------------------------

class OperatorAlgebra:
    """Echelonized unital matrix algebra generated by the coaction operators."""

    def __init__(self, comodule: PartialComodule):
        self.comodule = comodule
        f = comodule.parent.field
        d = comodule.dim
        self.matrix_dim = d
        gens = [comodule.operator(a) for a in range(comodule.parent.dim)]
        self.generators = gens
        ident = [[f.one() if i == j else f.zero() for j in range(d)] for i in range(d)]
        ech = Echelon(f, d * d)
        basis_mats = []

        def flat(mat):
            return [c for row in mat for c in row]

        def push(mat):
            if ech.insert(flat(mat)) is not None:
                basis_mats.append(mat)
                return True
            return False

        push(ident)
        for g in gens:
            push(g)
        frontier = list(basis_mats)
        while frontier:
            new = []
            for mat in frontier:
                for g in gens:
                    for prod in (_mat_mul(mat, g), _mat_mul(g, mat)):
                        if push(prod):
                            new.append(prod)
            frontier = new
        self.echelon = ech
        self.dimension = ech.rank

    def contains(self, mat) -> bool:
        return self.echelon.contains([c for row in mat for c in row])


def _mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(p):
            acc = None
            for k in range(m):
                a = Ai[k]
                if a:
                    b = B[k][j]
                    if b:
                        acc = a * b if acc is None else acc + a * b
            row.append(acc if acc is not None else _zero_like(A))
        out.append(row)
    return out


def _zero_like(A):
    for row in A:
        for c in row:
            return c.field.zero()
    raise ValueError("empty matrix")


def operator_algebra(m: PartialComodule) -> OperatorAlgebra:
    return OperatorAlgebra(m)


class SimplicityResult:
    def __init__(self, status: str, operator_dim: int, witness: Subspace | None = None):
        self.status = status  # "simple" | "not_simple" | "inconclusive"
        self.operator_dim = operator_dim
        self.witness = witness

    @property
    def certified_simple(self):
        return self.status == "simple"

    def __repr__(self):
        return f"<{self.status} (operator algebra dim {self.operator_dim})>"


def _spin(m: PartialComodule, vec) -> Subspace:
    """Smallest coaction-operator-invariant subspace containing vec."""
    f = m.parent.field
    ech = Echelon(f, m.dim)
    if ech.insert(list(vec)) is None:
        return ech.subspace()
    frontier = [list(vec)]
    while frontier:
        new = []
        for v in frontier:
            for a in range(m.parent.dim):
                w = m.apply_operator(a, v)
                if any(w) and ech.insert(w) is not None:
                    new.append(w)
        frontier = new
    return ech.subspace()


def _witness_candidates(m: PartialComodule):
    f = m.parent.field
    d = m.dim
    z, o = f.zero(), f.one()
    for i in range(d):
        v = [z] * d
        v[i] = o
        yield v
    from itertools import combinations, product as iproduct

    for count in (2, 3):
        for idxs in combinations(range(d), count):
            for signs in iproduct((1, -1), repeat=count - 1):
                v = [z] * d
                v[idxs[0]] = o
                for pos, s in zip(idxs[1:], signs):
                    v[pos] = o if s > 0 else -o
                yield v


def is_simple(m: PartialComodule) -> SimplicityResult:
    """Density certificate: simple iff the operators generate all of End(M)."""
    oa = operator_algebra(m)
    d = m.dim
    if oa.dimension == d * d:
        return SimplicityResult("simple", oa.dimension)
    for v in _witness_candidates(m):
        sub = _spin(m, v)
        if 0 < sub.dim < d:
            return SimplicityResult("not_simple", oa.dimension, sub)
    return SimplicityResult("inconclusive", oa.dimension)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

class IntertwinerResult:
    def __init__(self, iso, solution_dim: int, undecided: bool = False):
        self.iso = iso            # dN x dM matrix or None
        self.solution_dim = solution_dim
        self.undecided = undecided

    @property
    def isomorphic(self):
        return self.iso is not None


def hom_space(m: PartialComodule, n: PartialComodule) -> list[list[list[FieldElem]]]:
    """Basis of {f : (f (x) id) rho_M = rho_N f} as dN x dM matrices."""
    if m.parent is not n.parent:
        raise ParentMismatchError("different parent algebras")
    H = m.parent
    f = H.field
    dM, dN, na = m.dim, n.dim, H.dim
    z = f.zero()
    # unknowns f[r][c] flattened r * dM + c
    rows = []
    for i in range(dM):
        for l in range(dN):
            for a in range(na):
                row = [z] * (dN * dM)
                for (j, aa), c in m.rho[i].items():
                    if aa == a:
                        row[l * dM + j] = row[l * dM + j] + c
                for jp in range(dN):
                    c = n.rho[jp].get((l, a))
                    if c:
                        row[jp * dM + i] = row[jp * dM + i] - c
                if any(row):
                    rows.append(row)
    if not rows:
        ker = [
            [f.one() if t == s else z for t in range(dN * dM)]
            for s in range(dN * dM)
        ]
    else:
        ker = kernel_basis(ExactMatrix(f, rows, dN * dM))
    return [[[sol[r * dM + c] for c in range(dM)] for r in range(dN)] for sol in ker]


def _is_invertible(mat, field) -> bool:
    n = len(mat)
    if n != len(mat[0]):
        return False
    _, rank, _ = rref(ExactMatrix(field, [list(r) for r in mat], n))
    return rank == n


def iso_test(
    m: PartialComodule,
    n: PartialComodule,
    m_simple: bool = False,
    n_simple: bool = False,
) -> IntertwinerResult:
    """Invertible intertwiner if one exists.

    For certified-simple inputs any nonzero morphism is invertible; otherwise
    a bounded deterministic search over small-integer combinations runs and
    the result may be reported undecided.
    """
    f = m.parent.field
    sols = hom_space(m, n)
    if m.dim != n.dim or not sols:
        return IntertwinerResult(None, len(sols))
    if m_simple and n_simple:
        cand = sols[0]
        if not _is_invertible(cand, f):
            raise AssertionError("nonzero morphism between certified simples not invertible")
        return IntertwinerResult(cand, len(sols))
    # generic combination sum (i+1) f_i, then small deterministic perturbations
    s = len(sols)

    def combo(coeffs):
        d1, d2 = n.dim, m.dim
        out = [[f.zero()] * d2 for _ in range(d1)]
        for c, mat in zip(coeffs, sols):
            if c:
                fc = f.rational(c)
                for r in range(d1):
                    for cc in range(d2):
                        if mat[r][cc]:
                            out[r][cc] = out[r][cc] + fc * mat[r][cc]
        return out

    cand = combo(list(range(1, s + 1)))
    if _is_invertible(cand, f):
        return IntertwinerResult(cand, s)
    for t in range(100):
        coeffs = []
        v = t + 1
        for _ in range(s):
            coeffs.append(v % 5 - 2)
            v //= 5
        if not any(coeffs):
            continue
        cand = combo(coeffs)
        if _is_invertible(cand, f):
            return IntertwinerResult(cand, s)
    return IntertwinerResult(None, s, undecided=True)


# ---------------------------------------------------------------------------
# constructions on comodules
# ---------------------------------------------------------------------------

def shift_by_grouplike(m: PartialComodule, g: HopfElement) -> PartialComodule:
    """Replace rho by (id (x) left-mult-by-g) rho."""
    if g.parent is not m.parent:
        raise ParentMismatchError("grouplike from a different algebra")
    if not is_grouplike(g):
        raise ValueError("shift element is not grouplike")
    images = m.parent.left_mult_images(g)
    rho = [t_apply_linear(r, 1, images) for r in m.rho]
    prov = {"kind": "shift", "by": str(g), "of": m.provenance}
    return PartialComodule(m.parent, rho, prov)


def direct_sum(parts: list[PartialComodule]) -> PartialComodule:
    if not parts:
        raise ValueError("empty direct sum")
    H = parts[0].parent
    for p in parts[1:]:
        if p.parent is not H:
            raise ParentMismatchError("summands over different algebras")
    rho = []
    offset = 0
    for p in parts:
        for r in p.rho:
            rho.append({(j + offset, a): c for (j, a), c in r.items()})
        offset += p.dim
    return PartialComodule(H, rho, {"kind": "direct_sum", "dims": [p.dim for p in parts]})
