"""The partial-comodule construction pipeline: subcentral idempotents,
generated right coideal subalgebras, quotient coalgebras, the He
bicomodule, cotensor products and coinvariants; on top of it the finite
group classification and the dual-group-algebra bridge.
"""
from __future__ import annotations

from .field import CyclotomicField, FieldElem
from .groups import FiniteGroup, character_table, linear_characters
from .catalog import (
    build_dual_group_algebra,
    build_group_algebra,
    central_primitive_idempotents,
    kac_subcentral_rows,
)
from .hopf import (
    FiniteDimHopf,
    HopfElement,
    Tensor,
    is_grouplike,
    t_add_into,
    t_apply_comult,
    t_apply_linear,
    t_eq,
)
from .linalg import Echelon, ExactMatrix, Subspace, kernel_basis
from .pcomod import PartialComodule, check_pcm, is_simple, iso_test


class ConstructionError(AssertionError):
    """A verified invariant of the construction failed; aborts the run."""


class GrouplikeSpanError(ValueError):
    """Quotient coalgebra candidates fail to span; reported, never ignored."""


# ---------------------------------------------------------------------------
# subcentral idempotents and coideal subalgebras
# ---------------------------------------------------------------------------

def subcentral_diagnostics(e: HopfElement) -> str | None:
    """None if subcentral, otherwise the first failed condition."""
    if e.is_zero():
        return "zero element"
    if e * e != e:
        return "not idempotent"
    H = e.parent
    de = e.comult()
    lhs = t_apply_linear(de, 0, H.left_mult_images(e))
    rhs = t_apply_linear(de, 0, H.right_mult_images(e))
    if not t_eq(lhs, rhs):
        return "e e_(1) (x) e_(2) != e_(1) e (x) e_(2)"
    return None


def is_subcentral(e: HopfElement) -> bool:
    return subcentral_diagnostics(e) is None


def satisfies_integral_identity(e: HopfElement) -> bool:
    """The stronger identity e e_(1) (x) e_(2) = e (x) e."""
    H = e.parent
    de = e.comult()
    lhs = t_apply_linear(de, 0, H.left_mult_images(e))
    target: Tensor = {}
    for i, a in enumerate(e.coeffs):
        if a:
            for j, b in enumerate(e.coeffs):
                if b:
                    target[(i, j)] = a * b
    rhs = t_apply_linear(de, 0, H.right_mult_images(e))
    return t_eq(lhs, target) and t_eq(rhs, target)


class CoidealSubalgebra:
    """A right coideal subalgebra generated by a subcentral idempotent."""

    def __init__(self, e: HopfElement, space: Subspace, basis_elems: list[HopfElement]):
        self.e = e
        self.parent = e.parent
        self.space = space
        self.basis_elems = basis_elems

    @property
    def dim(self):
        return self.space.dim

    def __repr__(self):
        return f"<CoidealSubalgebra dim {self.dim} in {self.parent.name}>"


def _comult_components(x: HopfElement) -> list[HopfElement]:
    """Left tensorands (id (x) dual basis) Delta(x)."""
    H = x.parent
    cols: dict[int, dict] = {}
    for (a, b), c in x.comult().items():
        t_add_into(cols.setdefault(b, {}), a, c)
    return [H.element_from_dict(cols[b]) for b in sorted(cols)]


def generate_coideal_subalgebra(e: HopfElement) -> CoidealSubalgebra:
    """Closure of the comultiplication components of e under products and
    further component extraction, alternating until the span is stable."""
    diag = subcentral_diagnostics(e)
    if diag is not None:
        raise ValueError(f"not a subcentral idempotent: {diag}")
    H = e.parent
    f = H.field
    ech = Echelon(f, H.dim)
    elems: list[HopfElement] = []

    def push(x: HopfElement) -> bool:
        if ech.insert(x.dense()) is not None:
            elems.append(x)
            return True
        return False

    push(H.one())
    for x in _comult_components(e):
        push(x)
    fresh = list(elems)
    while fresh:
        produced: list[HopfElement] = []
        for x in fresh:
            for y in list(elems):
                for p in (x * y, y * x):
                    if push(p):
                        produced.append(p)
        adjoined: list[HopfElement] = []
        for x in fresh + produced:
            for comp in _comult_components(x):
                if push(comp):
                    adjoined.append(comp)
        fresh = produced + adjoined
    space = ech.subspace()
    sub = CoidealSubalgebra(e, space, elems)
    # invariants: e inside, e central, right coideal
    if not space.contains(e.dense()):
        raise ConstructionError("generated subalgebra misses its idempotent")
    for x in elems:
        if e * x != x * e:
            raise ConstructionError("idempotent not central in generated subalgebra")
        for comp in _comult_components(x):
            if not space.contains(comp.dense()):
                raise ConstructionError("generated span is not a right coideal")
    return sub


# ---------------------------------------------------------------------------
# quotient coalgebra
# ---------------------------------------------------------------------------

class QuotientCoalgebra:
    """H / H A+ with its coalgebra structure and left H-action."""

    def __init__(self, sub: CoidealSubalgebra):
        H = sub.parent
        f = H.field
        n = H.dim
        self.parent = H
        self.sub = sub
        z = f.zero()
        # A+ = A  cap ker(eps)
        eps_row = ExactMatrix(f, [list(H.counit)], n)
        ker_eps = Subspace.from_vectors(f, n, kernel_basis(eps_row))
        aplus_space = sub.space.intersection(ker_eps)
        # H A+ spanned by left multiples of an A+ basis
        vecs = []
        for a_vec in aplus_space.basis:
            a_el = H.element(a_vec)
            for i in range(n):
                vecs.append((H.basis_element(i) * a_el).dense())
        self.ha_plus = Subspace.from_vectors(f, n, vecs)
        B = self.ha_plus
        # left ideal and two-sided coideal verification
        for v in B.basis:
            el = H.element(v)
            if el.counit():
                raise ConstructionError("H A+ not inside ker eps")
            for i in range(n):
                if not B.contains((H.basis_element(i) * el).dense()):
                    raise ConstructionError("H A+ is not a left ideal")
        self.proj = B.complement_projection()
        self.section_coords = B.complement_coords()
        self.dim = len(self.section_coords)
        # projection images of the H basis, for slot calculus
        self.pi_images = [
            {t: c for t, c in enumerate(col) if c}
            for col in zip(*self.proj.rows)
        ] if self.dim else [{} for _ in range(n)]
        # coideal: (pi (x) pi) Delta vanishes on B
        for v in B.basis:
            t = t_apply_linear(
                t_apply_linear(H.element(v).comult(), 0, self.pi_images), 1, self.pi_images
            )
            if t:
                raise ConstructionError("H A+ is not a coideal")
        # induced structure via the coordinate section
        self.comult_bar = []
        self.counit_bar = []
        for t in range(self.dim):
            b = H.basis_element(self.section_coords[t])
            dt = t_apply_linear(t_apply_linear(b.comult(), 0, self.pi_images), 1, self.pi_images)
            self.comult_bar.append(dt)
            self.counit_bar.append(H.counit[self.section_coords[t]])
        # left action images: act[h][t] = pi(b_h * section(t))
        self.action = []
        for h in range(n):
            row = []
            for t in range(self.dim):
                prod = H.basis_element(h) * H.basis_element(self.section_coords[t])
                row.append(self.project_element(prod))
            self.action.append(row)
        self._verify()
        self.grouplikes = self._find_grouplikes()

    # -- maps ---------------------------------------------------------
    def project_vec(self, vec) -> list[FieldElem]:
        return self.proj.apply(list(vec))

    def project_element(self, x: HopfElement) -> list[FieldElem]:
        return self.project_vec(x.dense())

    def _verify(self):
        H = self.parent
        # pi is a coalgebra map: Delta_bar(pi(b)) = (pi (x) pi) Delta(b)
        for i in range(H.dim):
            pb = self.project_element(H.basis_element(i))
            lhs: Tensor = {}
            for t, c in enumerate(pb):
                if c:
                    for key, w in self.comult_bar[t].items():
                        t_add_into(lhs, key, c * w)
            rhs = t_apply_linear(
                t_apply_linear(H.basis_element(i).comult(), 0, self.pi_images),
                1,
                self.pi_images,
            )
            if not t_eq(lhs, rhs):
                raise ConstructionError("projection is not a coalgebra map")
            # counit factors
            eps_bar = H.field.zero()
            for t, c in enumerate(pb):
                if c:
                    eps_bar = eps_bar + c * self.counit_bar[t]
            if eps_bar != H.counit[i]:
                raise ConstructionError("counit does not factor through the quotient")
        # coassociativity and counitality of the induced coalgebra
        for t in range(self.dim):
            dt = self.comult_bar[t]
            if not t_eq(
                t_apply_comult(dt, 0, self.comult_bar),
                t_apply_comult(dt, 1, self.comult_bar),
            ):
                raise ConstructionError("induced comultiplication not coassociative")
            unit_t = {(t,): self.parent.field.one()}
            from .hopf import t_apply_functional

            if not t_eq(t_apply_functional(dt, 0, self.counit_bar), unit_t):
                raise ConstructionError("induced counit fails")
            if not t_eq(t_apply_functional(dt, 1, self.counit_bar), unit_t):
                raise ConstructionError("induced counit fails")

    def is_grouplike_vec(self, vec) -> bool:
        f = self.parent.field
        eps = f.zero()
        for t, c in enumerate(vec):
            if c:
                eps = eps + c * self.counit_bar[t]
        if eps != 1:
            return False
        dd: Tensor = {}
        for t, c in enumerate(vec):
            if c:
                for key, w in self.comult_bar[t].items():
                    t_add_into(dd, key, c * w)
        target: Tensor = {}
        for t1, c1 in enumerate(vec):
            if c1:
                for t2, c2 in enumerate(vec):
                    if c2:
                        target[(t1, t2)] = c1 * c2
        return t_eq(dd, target)

    def _find_grouplikes(self) -> list[list[FieldElem]]:
        """Normalized candidate images of basis monomials and declared
        grouplikes; verified, deduplicated, deterministic order."""
        H = self.parent
        f = H.field
        seen = []
        candidates = [H.basis_element(i) for i in range(H.dim)]
        candidates += [H.basis_element(g) for g in H.grouplikes]
        for cand in candidates:
            vec = self.project_element(cand)
            if not any(vec):
                continue
            eps = f.zero()
            for t, c in enumerate(vec):
                if c:
                    eps = eps + c * self.counit_bar[t]
            if not eps:
                continue
            inv = eps.inverse()
            vec = [inv * c for c in vec]
            if self.is_grouplike_vec(vec) and vec not in seen:
                seen.append(vec)
        seen.sort(key=lambda v: tuple(c.sort_key() for c in v))
        return seen

    def grouplike_span_ok(self) -> bool:
        if not self.grouplikes:
            return self.dim == 0
        return Subspace.from_vectors(self.parent.field, self.dim, self.grouplikes).dim == self.dim

    def require_grouplike_basis(self):
        if not self.grouplike_span_ok():
            raise GrouplikeSpanError(
                "normalized candidate images do not span the quotient coalgebra"
            )


# ---------------------------------------------------------------------------
# comodules over the quotient coalgebra
# ---------------------------------------------------------------------------

class HbarComodule:
    """Right comodule over the quotient coalgebra, rho[i] = {(j, t): c}."""

    def __init__(self, quot: QuotientCoalgebra, rho, name: str = ""):
        self.quot = quot
        self.rho = [dict(r) for r in rho]
        self.dim = len(rho)
        self.name = name
        self._verify()

    def _verify(self):
        from .hopf import t_apply_functional

        q = self.quot
        f = q.parent.field
        for i in range(self.dim):
            t1 = dict(self.rho[i])
            if not t_eq(t_apply_functional(t1, 1, q.counit_bar), {(i,): f.one()}):
                raise ConstructionError("quotient comodule not counital")
            lhs: Tensor = {}
            for (j, t), c in t1.items():
                for (jj, tt), cc in self.rho[j].items():
                    t_add_into(lhs, (jj, tt, t), c * cc)
            rhs = t_apply_comult(t1, 1, q.comult_bar)
            if not t_eq(lhs, rhs):
                raise ConstructionError("quotient comodule not coassociative")

    @staticmethod
    def from_grouplike(quot: QuotientCoalgebra, g_vec) -> "HbarComodule":
        rho = [{(0, t): c for t, c in enumerate(g_vec) if c}]
        return HbarComodule(quot, rho, name="grouplike")

    @staticmethod
    def trivial(quot: QuotientCoalgebra) -> "HbarComodule":
        return HbarComodule.from_grouplike(quot, quot.project_element(quot.parent.one()))


def _spin_quotient_subcomodule(quot: QuotientCoalgebra, vec) -> Subspace:
    """Smallest subcomodule of the regular quotient comodule containing vec."""
    f = quot.parent.field
    ech = Echelon(f, quot.dim)
    if ech.insert(list(vec)) is None:
        return ech.subspace()
    frontier = [list(vec)]
    while frontier:
        new = []
        for v in frontier:
            # components (id (x) dual basis) Delta_bar(v)
            cols: dict[int, list] = {}
            for t, c in enumerate(v):
                if c:
                    for (a, b), w in quot.comult_bar[t].items():
                        col = cols.setdefault(b, [f.zero()] * quot.dim)
                        col[a] = col[a] + c * w
            for b in sorted(cols):
                if any(cols[b]) and ech.insert(cols[b]) is not None:
                    new.append(cols[b])
        frontier = new
    return ech.subspace()


def _quotient_comodule_on_subspace(quot: QuotientCoalgebra, space: Subspace) -> HbarComodule:
    rho = []
    f = quot.parent.field
    for v in space.basis:
        t1: Tensor = {}
        for t, c in enumerate(v):
            if c:
                for key, w in quot.comult_bar[t].items():
                    t_add_into(t1, key, c * w)
        # first slot must stay inside the subspace
        cols: dict[int, list] = {}
        for (a, b), c in t1.items():
            col = cols.setdefault(b, [f.zero()] * quot.dim)
            col[a] = col[a] + c
        entry: Tensor = {}
        for b, col in sorted(cols.items()):
            coords = space.coordinates(col)
            if coords is None:
                raise ConstructionError("spun subspace is not a subcomodule")
            for j, cc in enumerate(coords):
                if cc:
                    entry[(j, b)] = cc
        rho.append(entry)
    return HbarComodule(quot, rho, name=f"spun dim {space.dim}")


def _hbar_hom_dim(w1: HbarComodule, w2: HbarComodule) -> int:
    """Dimension of the comodule morphism space between quotient comodules."""
    q = w1.quot
    f = q.parent.field
    d1, d2, nb = w1.dim, w2.dim, q.dim
    rows = []
    z = f.zero()
    for i in range(d1):
        for l in range(d2):
            for t in range(nb):
                row = [z] * (d2 * d1)
                for (j, tt), c in w1.rho[i].items():
                    if tt == t:
                        row[l * d1 + j] = row[l * d1 + j] + c
                for jp in range(d2):
                    c = w2.rho[jp].get((l, t))
                    if c:
                        row[jp * d1 + i] = row[jp * d1 + i] - c
                if any(row):
                    rows.append(row)
    if not rows:
        return d1 * d2
    return len(kernel_basis(ExactMatrix(f, rows, d1 * d2)))


def simple_quotient_comodules(quot: QuotientCoalgebra) -> tuple[list[HbarComodule], bool]:
    """Simple right comodules of the quotient: grouplikes plus minimal spun
    subcomodules of the regular comodule; completeness certified by the
    squared-dimension count."""
    f = quot.parent.field
    out = [HbarComodule.from_grouplike(quot, g) for g in quot.grouplikes]
    gl_span = (
        Subspace.from_vectors(f, quot.dim, quot.grouplikes)
        if quot.grouplikes
        else Subspace.from_vectors(f, quot.dim, [])
    )
    if gl_span.dim < quot.dim:
        z, o = f.zero(), f.one()
        spun: list[Subspace] = []
        for i in range(quot.dim):
            v = [z] * quot.dim
            v[i] = o
            s = _spin_quotient_subcomodule(quot, v)
            if s.dim and s not in spun:
                spun.append(s)
        # keep minimal spaces only
        minimal = [
            s for s in spun if not any(t.dim < s.dim and s.contains_space(t) for t in spun)
        ]
        for s in minimal:
            if s.dim == 1 and gl_span.contains_space(s):
                continue
            w = _quotient_comodule_on_subspace(quot, s)
            if any(
                w.dim == prev.dim and _hbar_hom_dim(w, prev) for prev in out
            ):
                continue
            out.append(w)
    complete = sum(w.dim**2 for w in out) == quot.dim
    return out, complete


# ---------------------------------------------------------------------------
# the He bicomodule and the cotensor product
# ---------------------------------------------------------------------------

class HeBicomodule:
    def __init__(self, sub: CoidealSubalgebra, quot: QuotientCoalgebra):
        H = sub.parent
        f = H.field
        n = H.dim
        self.parent = H
        self.sub = sub
        self.quot = quot
        e = sub.e
        vecs = [(H.basis_element(i) * e).dense() for i in range(n)]
        self.space = Subspace.from_vectors(f, n, vecs)
        self.basis_elems = [H.element(v) for v in self.space.basis]
        d = self.space.dim
        # right partial coaction x -> x_(1) e (x) x_(2) in He coordinates
        re_images = H.right_mult_images(e)
        rho = []
        for x in self.basis_elems:
            t = t_apply_linear(x.comult(), 0, re_images)
            cols: dict[int, list] = {}
            for (a, b), c in t.items():
                col = cols.setdefault(b, [f.zero()] * n)
                col[a] = col[a] + c
            entry: Tensor = {}
            for b, col in sorted(cols.items()):
                coords = self.space.coordinates(col)
                if coords is None:
                    raise ConstructionError("partial coaction leaves He")
                for j, cc in enumerate(coords):
                    if cc:
                        entry[(j, b)] = cc
            rho.append(entry)
        self.comodule = PartialComodule(
            H, rho, {"kind": "He", "e": str(e)}
        )
        rep = check_pcm(self.comodule)
        if not rep.ok:
            raise ConstructionError(f"He fails the partial comodule axioms: {rep.results}")
        # left quotient coaction lambda(x) = pi(x_(1)) (x) x_(2), values in Hbar (x) He
        self.lam = []
        for x in self.basis_elems:
            t = t_apply_linear(x.comult(), 0, quot.pi_images)
            cols = {}
            for (tt, b), c in t.items():
                col = cols.setdefault(tt, [f.zero()] * n)
                col[b] = col[b] + c
            entry: Tensor = {}
            for tt, col in sorted(cols.items()):
                coords = self.space.coordinates(col)
                if coords is None:
                    raise ConstructionError("quotient coaction leaves Hbar (x) He")
                for j, cc in enumerate(coords):
                    if cc:
                        entry[(tt, j)] = cc
            self.lam.append(entry)
        self._verify_bicomodule()

    @property
    def dim(self):
        return self.space.dim

    def _verify_bicomodule(self):
        """Left quotient coaction is coassociative/counital and commutes
        with the right partial coaction."""
        q = self.quot
        f = self.parent.field
        for i in range(self.dim):
            lam_i = self.lam[i]
            # counital
            acc = [f.zero()] * self.dim
            for (tt, j), c in lam_i.items():
                acc[j] = acc[j] + c * q.counit_bar[tt]
            expected = [f.one() if j == i else f.zero() for j in range(self.dim)]
            if acc != expected:
                raise ConstructionError("quotient coaction not counital on He")
            # coassociative over the quotient coalgebra
            lhs = t_apply_comult(lam_i, 0, q.comult_bar)
            rhs: Tensor = {}
            for (tt, j), c in lam_i.items():
                for (tt2, j2), c2 in self.lam[j].items():
                    t_add_into(rhs, (tt, tt2, j2), c * c2)
            if not t_eq(lhs, rhs):
                raise ConstructionError("quotient coaction not coassociative on He")
            # commutation: (id (x) rho_e) lam = (pi (x) id (x) id)(Delta (x) id) rho_e
            lhs2: Tensor = {}
            for (tt, j), c in lam_i.items():
                for (j2, b), c2 in self.comodule.rho[j].items():
                    t_add_into(lhs2, (tt, j2, b), c * c2)
            rhs2: Tensor = {}
            for (j, b), c in self.comodule.rho[i].items():
                t = t_apply_linear(self.basis_elems[j].comult(), 0, q.pi_images)
                cols: dict[int, list] = {}
                for (tt, a), c2 in t.items():
                    col = cols.setdefault(tt, [f.zero()] * self.parent.dim)
                    col[a] = col[a] + c2
                for tt, col in sorted(cols.items()):
                    coords = self.space.coordinates(col)
                    if coords is None:
                        raise ConstructionError("commutation check left He")
                    for j2, cc in enumerate(coords):
                        if cc:
                            t_add_into(rhs2, (tt, j2, b), c * cc)
            if not t_eq(lhs2, rhs2):
                raise ConstructionError("bicomodule coactions do not commute")

    def element_vector(self, idx: int):
        return self.space.basis[idx]


def he_bicomodule(sub: CoidealSubalgebra, quot: QuotientCoalgebra) -> HeBicomodule:
    return HeBicomodule(sub, quot)


def cotensor_comodule(w: HbarComodule, he: HeBicomodule) -> PartialComodule:
    """Kernel of rho_W (x) id - id (x) lambda inside W (x) He, with the
    inherited partial coaction."""
    H = he.parent
    f = H.field
    quot = he.quot
    if w.quot is not quot:
        raise ValueError("comodule over a different quotient coalgebra")
    dw, dh, nb = w.dim, he.dim, quot.dim
    z = f.zero()
    # unknown x = sum c_{i,t} w_i (x) he_t; rows indexed (j, tbar, t')
    rows_map: dict[tuple, dict] = {}
    for i in range(dw):
        for t in range(dh):
            col = i * dh + t
            for (j, tb), c in w.rho[i].items():
                key = (j, tb, t)
                rows_map.setdefault(key, {})[col] = rows_map.setdefault(key, {}).get(col, z) + c
            for (tb, t2), c in he.lam[t].items():
                key = (i, tb, t2)
                rows_map.setdefault(key, {})[col] = rows_map.setdefault(key, {}).get(col, z) - c
    rows = []
    for key in sorted(rows_map):
        row = [z] * (dw * dh)
        for col, c in rows_map[key].items():
            row[col] = c
        if any(row):
            rows.append(row)
    ker = kernel_basis(ExactMatrix(f, rows, dw * dh)) if rows else [
        [f.one() if s == t else z for t in range(dw * dh)] for s in range(dw * dh)
    ]
    space = Subspace.from_vectors(f, dw * dh, ker)
    d = space.dim
    rho = []
    for v in space.basis:
        # apply id_W (x) rho_e to the He leg
        t_out: dict[tuple, FieldElem] = {}
        for col, c in enumerate(v):
            if not c:
                continue
            i, t = divmod(col, dh)
            for (t2, b), cc in he.comodule.rho[t].items():
                t_add_into(t_out, (i * dh + t2, b), c * cc)
        cols: dict[int, list] = {}
        for (col, b), c in t_out.items():
            colvec = cols.setdefault(b, [z] * (dw * dh))
            colvec[col] = colvec[col] + c
        entry: Tensor = {}
        for b, colvec in sorted(cols.items()):
            coords = space.coordinates(colvec)
            if coords is None:
                raise ConstructionError("cotensor coaction leaves the cotensor space")
            for j, cc in enumerate(coords):
                if cc:
                    entry[(j, b)] = cc
        rho.append(entry)
    prov = {
        "kind": "cotensor",
        "e": str(he.sub.e),
        "w": w.name or f"dim {w.dim}",
        "w_dim": w.dim,
        "empty": d == 0,
    }
    out = PartialComodule(H, rho, prov)
    out._cot_space = space
    if d and not check_pcm(out).ok:
        raise ConstructionError("cotensor comodule fails the axioms")
    return out


def coinvariants(he: HeBicomodule) -> tuple[PartialComodule, Subspace]:
    """Cotensor with the trivial quotient comodule; also returns the
    underlying subspace of He (in ambient H coordinates)."""
    w = HbarComodule.trivial(he.quot)
    m = cotensor_comodule(w, he)
    f = he.parent.field
    z = f.zero()
    # the subspace explicitly: x in He with lam(x) = pi(1) (x) x
    pi1 = he.quot.project_element(he.parent.one())
    cond: dict[tuple, list] = {}
    for t in range(he.dim):
        for (tb, t2), c in he.lam[t].items():
            cond.setdefault((tb, t2), [z] * he.dim)[t] = cond.setdefault((tb, t2), [z] * he.dim)[t] + c
        for tb, c in enumerate(pi1):
            if c:
                cond.setdefault((tb, t), [z] * he.dim)[t] = cond.setdefault((tb, t), [z] * he.dim)[t] - c
    mat_rows = [cond[k] for k in sorted(cond) if any(cond[k])]
    ker = kernel_basis(ExactMatrix(f, mat_rows, he.dim)) if mat_rows else [
        [f.one() if s == t else z for t in range(he.dim)] for s in range(he.dim)
    ]
    amb_vecs = []
    for sol in ker:
        acc = [z] * he.parent.dim
        for t, c in enumerate(sol):
            if c:
                acc = [a + c * b for a, b in zip(acc, he.space.basis[t])]
        amb_vecs.append(acc)
    space = Subspace.from_vectors(f, he.parent.dim, amb_vecs)
    if space.dim != m.dim:
        raise ConstructionError("coinvariant space disagrees with the trivial cotensor")
    return m, space


def ae_subspace(sub: CoidealSubalgebra) -> Subspace:
    """The span of A_e * e inside H."""
    H = sub.parent
    f = H.field
    vecs = [(H.element(v) * sub.e).dense() for v in sub.space.basis]
    return Subspace.from_vectors(f, H.dim, vecs)


# ---------------------------------------------------------------------------
# finite group classification
# ---------------------------------------------------------------------------

class GroupClassRow:
    def __init__(self, subgroup, e, equivalents, dim_i, index, comodules):
        self.subgroup = subgroup          # element index tuple in G
        self.e = e                        # HopfElement of kG
        self.equivalents = equivalents    # other idempotents in the orbit
        self.dim_i = dim_i
        self.index = index
        self.comodules = comodules        # [G:K] certified simple comodules

    def summary(self):
        return {
            "subgroup": self.subgroup,
            "e": str(self.e),
            "equivalents": [str(x) for x in self.equivalents],
            "dim_I": self.dim_i,
            "index": self.index,
            "n_simples": len(self.comodules),
            "dims": [m.dim for m in self.comodules],
        }


class GroupClassification:
    def __init__(self, G: FiniteGroup, kg: FiniteDimHopf, rows: list[GroupClassRow]):
        self.group = G
        self.algebra = kg
        self.rows = rows

    def bundle(self):
        return [m for row in self.rows for m in row.comodules]

    def dim_multiset(self):
        out: dict[int, int] = {}
        for row in self.rows:
            for m in row.comodules:
                out[m.dim] = out.get(m.dim, 0) + 1
        return out

    def sum_of_squares(self):
        return sum(d * d * c for d, c in self.dim_multiset().items())


def _character_action(kg: FiniteDimHopf, sub: tuple[int, ...], e: HopfElement, chi_values) -> HopfElement:
    """nu . e = sum nu(g) e_g g for g in the subgroup (chi indexed by subgroup position)."""
    f = kg.field
    coeffs = list(e.coeffs)
    out = [f.zero()] * kg.dim
    for pos, g in enumerate(sub):
        if coeffs[g]:
            out[g] = chi_values[pos] * coeffs[g]
    return kg.element(out)


def _canonical_orbit_rep(orbit: list[HopfElement]) -> HopfElement:
    """Most-rational, then lexicographically greatest coefficient key."""
    def key(e):
        nrat = sum(1 for c in e.coeffs if c.is_rational())
        return (nrat, tuple(c.sort_key() for c in e.coeffs))

    return max(orbit, key=key)


def classify_group_simples(
    G: FiniteGroup, field: CyclotomicField | None = None
) -> GroupClassification:
    """All simple partial comodules of kG from the construction: for every
    subgroup K, every central idempotent of kK whose support generates K,
    one representative per multiplicative-character orbit, with all
    [G:K] grouplike shifts. Every emitted comodule is certified simple."""
    from .field import default_field

    f = field or default_field()
    kg = build_group_algebra(G, f)
    rows: list[GroupClassRow] = []
    for sub in G.subgroups():
        K = G.subgroup_view(sub)
        prims_k = central_primitive_idempotents(K, f)
        # embed into kG
        prims = []
        for p in prims_k:
            coeffs = [f.zero()] * G.order
            for pos, g in enumerate(sub):
                coeffs[g] = p.coeffs[pos]
            prims.append(kg.element(coeffs))
        lin = linear_characters(K, f)
        # all nonzero sums of blocks, deterministic subset order
        from itertools import combinations

        candidates = []
        for r in range(1, len(prims) + 1):
            for idxs in combinations(range(len(prims)), r):
                acc = prims[idxs[0]]
                for t in idxs[1:]:
                    acc = acc + prims[t]
                candidates.append((idxs, acc))
        # support must generate exactly K
        kept = []
        for idxs, e in candidates:
            support = tuple(sorted(e.support()))
            if G.closure(support) == sub:
                kept.append(e)
        # orbits under the character action
        orbits: list[list[HopfElement]] = []
        seen: list[HopfElement] = []
        for e in kept:
            if any(e == x for x in seen):
                continue
            orbit = []
            for chi in lin:
                chi_vals = [m[0][0] for m in chi.images]
                img = _character_action(kg, sub, e, chi_vals)
                if not any(img == x for x in orbit):
                    orbit.append(img)
            for x in orbit:
                seen.append(x)
            # the orbit stays within the kept set
            orbits.append(orbit)
        for orbit in orbits:
            rep = _canonical_orbit_rep(orbit)
            equivalents = [x for x in orbit if x != rep]
            comods = construct_all_shifts(rep)
            dim_i = comods[0].dim
            rows.append(
                GroupClassRow(sub, rep, equivalents, dim_i, len(comods), comods)
            )
    return GroupClassification(G, kg, rows)


def construct_all_shifts(e: HopfElement) -> list[PartialComodule]:
    """Run the full construction for e and cotensor with every simple
    quotient comodule; each result must certify simple."""
    sub = generate_coideal_subalgebra(e)
    quot = QuotientCoalgebra(sub)
    he = HeBicomodule(sub, quot)
    ws, complete = simple_quotient_comodules(quot)
    if not complete:
        raise ConstructionError(
            "incomplete supply of simple quotient comodules "
            f"(got {[w.dim for w in ws]} over a quotient of dim {quot.dim})"
        )
    out = []
    for w in ws:
        m = cotensor_comodule(w, he)
        if m.dim == 0:
            raise ConstructionError("unexpected empty cotensor in the group case")
        res = is_simple(m)
        if not res.certified_simple:
            raise ConstructionError(
                f"constructed comodule not certified simple: {res.status}"
            )
        m.provenance["simple"] = "density"
        m.provenance["operator_dim"] = res.operator_dim
        out.append(m)
    return out


def group_direct_model(
    kg: FiniteDimHopf, sub: tuple[int, ...], e: HopfElement, shift: int
) -> PartialComodule:
    """The explicit model on I = kKe with x |-> x_(1) e (x) g_i x_(2)."""
    f = kg.field
    n = kg.dim
    vecs = [(kg.basis_element(g) * e).dense() for g in sub]
    space = Subspace.from_vectors(f, n, vecs)
    re_images = kg.right_mult_images(e)
    lg_images = kg.left_mult_images(kg.basis_element(shift))
    rho = []
    for v in space.basis:
        t = t_apply_linear(kg.element(v).comult(), 0, re_images)
        t = t_apply_linear(t, 1, lg_images)
        cols: dict[int, list] = {}
        for (a, b), c in t.items():
            col = cols.setdefault(b, [f.zero()] * n)
            col[a] = col[a] + c
        entry = {}
        for b, col in sorted(cols.items()):
            coords = space.coordinates(col)
            if coords is None:
                raise ConstructionError("direct model coaction leaves kKe")
            for j, cc in enumerate(coords):
                if cc:
                    entry[(j, b)] = cc
        rho.append(entry)
    return PartialComodule(kg, rho, {"kind": "group_direct", "shift": shift})


# ---------------------------------------------------------------------------
# Kac-Paljutkin classification
# ---------------------------------------------------------------------------

class KacClassRow:
    def __init__(self, name, e, dim_ae, comodules):
        self.subalgebra = name
        self.e = e
        self.dim_ae = dim_ae
        self.comodules = comodules

    def summary(self):
        return {
            "subalgebra": self.subalgebra,
            "e": str(self.e),
            "dim_Ae": self.dim_ae,
            "n_simples": len(self.comodules),
            "dims": [m.dim for m in self.comodules],
        }


def classify_kac(A: FiniteDimHopf) -> list[KacClassRow]:
    """The declared subcentral idempotents of the Kac-Paljutkin algebra,
    run through the full construction; simplicity certified by density."""
    rows = []
    for decl in kac_subcentral_rows(A):
        e = decl["e"]
        diag = subcentral_diagnostics(e)
        if diag is not None:
            raise ConstructionError(f"declared idempotent fails: {diag}")
        sub = generate_coideal_subalgebra(e)
        declared = Subspace.from_vectors(
            A.field, A.dim, [x.dense() for x in decl["span"]]
        )
        if sub.space != declared:
            raise ConstructionError(
                f"generated coideal subalgebra differs from the declared one for {decl['subalgebra']}"
            )
        quot = QuotientCoalgebra(sub)
        if sub.dim < A.dim:
            # every proper quotient here must have a basis of grouplikes
            quot.require_grouplike_basis()
        he = HeBicomodule(sub, quot)
        _, ae_space = coinvariants(he)
        ws, complete = simple_quotient_comodules(quot)
        if not complete:
            raise ConstructionError("incomplete simple comodule supply for the quotient")
        comods = []
        for w in ws:
            m = cotensor_comodule(w, he)
            res = is_simple(m)
            if not res.certified_simple:
                raise ConstructionError("Kac row comodule not certified simple")
            m.provenance["operator_dim"] = res.operator_dim
            comods.append(m)
        rows.append(KacClassRow(decl["subalgebra"], e, ae_space.dim, comods))
    return rows


# ---------------------------------------------------------------------------
# the dual group algebra bridge
# ---------------------------------------------------------------------------

class BridgeReport:
    def __init__(self, X, stabilizer, w_degree, dims, theta_ok, dimension_ok):
        self.X = X
        self.stabilizer = stabilizer
        self.w_degree = w_degree
        self.dims = dims
        self.theta_ok = theta_ok
        self.dimension_ok = dimension_ok

    @property
    def ok(self):
        return self.theta_ok and self.dimension_ok

    def to_dict(self):
        return {
            "X": list(self.X),
            "stabilizer": list(self.stabilizer),
            "w_degree": self.w_degree,
            "dims": self.dims,
            "theta_isomorphism": self.theta_ok,
            "dimensions_match": self.dimension_ok,
        }


def left_stabilizer(G: FiniteGroup, X: tuple[int, ...]) -> tuple[int, ...]:
    xs = set(X)
    stab = [g for g in range(G.order) if all(G.mul(g, x) in xs for x in X)]
    return tuple(sorted(stab))


def dual_group_bridge(
    G: FiniteGroup, X: tuple[int, ...], irrep, field: CyclotomicField | None = None
) -> BridgeReport:
    """Compare the cotensor construction for e = sum_{g in X} p_g in kG*
    against the induced-module model k X^{-1} (x)_{kK} W.

    irrep is an Irrep of the subgroup view of the left stabilizer K of X.
    """
    from .field import default_field

    f = field or default_field()
    if G.identity not in X:
        raise ValueError("X must contain the identity")
    K = left_stabilizer(G, X)
    kgd = build_dual_group_algebra(G, f)
    e = kgd.element([f.one() if g in X else f.zero() for g in range(G.order)])
    sub = generate_coideal_subalgebra(e)
    quot = QuotientCoalgebra(sub)
    he = HeBicomodule(sub, quot)
    # W as a quotient comodule: w_j -> sum_i w_i (x) pi(sum_h R(h)_{ij} p_h)
    dw = irrep.degree
    Kview_elems = K
    rho_w = []
    n = G.order
    for j in range(dw):
        entry = {}
        for i in range(dw):
            vec = [f.zero()] * n
            for pos, h in enumerate(Kview_elems):
                c = irrep.images[pos][i][j]
                if c:
                    vec[h] = vec[h] + c
            pvec = quot.project_vec(vec)
            for t, c in enumerate(pvec):
                if c:
                    entry[(i, t)] = entry.get((i, t), f.zero()) + c
        rho_w.append(entry)
    w = HbarComodule(quot, rho_w, name=f"irrep deg {dw}")
    m = cotensor_comodule(w, he)
    # induced module k X^{-1} (x)_{kK} W on basis (coset rep, W basis)
    k_index = {h: pos for pos, h in enumerate(Kview_elems)}
    # X is a union of right cosets K g_i
    reps = [cs[0] for cs in G.right_cosets(K) if set(cs) <= set(X)]
    if sum(len(K) for _ in reps) != len(X):
        raise ValueError("X is not a union of right cosets of its stabilizer")
    dim_dz = len(reps) * dw
    expected = (len(X) // len(K)) * dw
    dims = {"cotensor": m.dim, "induced": dim_dz, "expected": expected}
    dimension_ok = m.dim == dim_dz == expected

    def dz_action(g: int):
        """[g] acting on basis (rep i, w basis j)."""
        z = f.zero()
        mat = [[z] * dim_dz for _ in range(dim_dz)]
        for i, gi in enumerate(reps):
            # g . g_i^{-1} = (g_i g^{-1})^{-1}; decompose g_i g^{-1} = h' g_j
            t = G.mul(gi, G.inv(g))
            for j, gj in enumerate(reps):
                hp = G.mul(t, G.inv(gj))
                if hp in k_index:
                    # result g_j^{-1} h'^{-1} (x) w = g_j^{-1} (x) h'^{-1} w
                    hinv = k_index[G.inv(hp)]
                    rmat = irrep.images[hinv]
                    for a in range(dw):
                        for b in range(dw):
                            if rmat[a][b]:
                                mat[j * dw + a][i * dw + b] = rmat[a][b]
                    break
        return mat

    # theta: g_i^{-1} (x) w_j |-> sum_l w_l (x) sum_h R(h)_{lj} p_{h g_i}
    theta_cols = []
    dh = he.dim
    for i, gi in enumerate(reps):
        for j in range(dw):
            target = [f.zero()] * (dw * n)
            for l in range(dw):
                for pos, h in enumerate(Kview_elems):
                    c = irrep.images[pos][l][j]
                    if c:
                        target[l * n + G.mul(h, gi)] = target[l * n + G.mul(h, gi)] + c
            theta_cols.append(target)
    # express the image inside W (x) He coordinates, then in the cotensor basis
    he_space = he.space
    cot_cols = []
    for target in theta_cols:
        ok = True
        per_w = []
        for l in range(dw):
            hvec = target[l * n:(l + 1) * n]
            coords = he_space.coordinates(hvec)
            if coords is None:
                ok = False
                break
            per_w.append(coords)
        if not ok:
            raise ConstructionError("theta image leaves W (x) He")
        flat = [per_w[l][t] for l in range(dw) for t in range(dh)]
        cot_cols.append(flat)
    # theta as a matrix into the cotensor space
    theta_mat = []
    for flat in cot_cols:
        coords = _coords_in_kernel(m, flat)
        if coords is None:
            raise ConstructionError("theta image is not in the cotensor space")
        theta_mat.append(coords)
    # theta_mat rows are images; transpose to get matrix columns
    dcot = m.dim
    z = f.zero()
    theta_matrix = [[z] * dim_dz for _ in range(dcot)]
    for col, coords in enumerate(theta_mat):
        for r, c in enumerate(coords):
            theta_matrix[r][col] = c
    from .linalg import rref as _rref

    _, rank, _ = _rref(ExactMatrix(f, [list(r) for r in theta_matrix], dim_dz))
    theta_bij = rank == dim_dz == dcot
    # intertwining: theta T_g = E_g theta for all g
    inter_ok = True
    if theta_bij:
        for g in range(G.order):
            tg = dz_action(g)
            # E_g on the cotensor: operator indexed by the kG* basis element p_g
            eg = m.operator(g)
            lhs = _mat_mul_plain(theta_matrix, tg, f)
            rhs = _mat_mul_plain(eg, theta_matrix, f)
            if lhs != rhs:
                inter_ok = False
                break
    theta_ok = theta_bij and inter_ok
    return BridgeReport(X, K, dw, dims, theta_ok, dimension_ok)


def _coords_in_kernel(m: PartialComodule, flat):
    return m._cot_space.coordinates(flat)


def _mat_mul_plain(A, B, f):
    n, mm, p = len(A), len(B), len(B[0])
    z = f.zero()
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = z
            for k in range(mm):
                if A[i][k] and B[k][j]:
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out
