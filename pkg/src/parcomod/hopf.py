"""Finite-dimensional Hopf algebras given by structure constants.

Structure tensors are stored sparsely (dicts of nonzero coefficients).
Multi-tensor elements of M (x) H (x) ... (x) H are dicts keyed by index
tuples; the t_* helpers below implement the slot calculus used to state
all the axioms as exact identities.
"""
from __future__ import annotations

import json

from .field import CyclotomicField, FieldElem, default_field
from .linalg import ExactMatrix, rref

Tensor = dict  # tuple[int, ...] -> FieldElem


class ParentMismatchError(ValueError):
    """Raised when combining elements of different algebras."""


# ---------------------------------------------------------------------------
# tensor-slot calculus
# ---------------------------------------------------------------------------

def t_add_into(acc: Tensor, key: tuple, coeff: FieldElem):
    cur = acc.get(key)
    if cur is None:
        if coeff:
            acc[key] = coeff
    else:
        s = cur + coeff
        if s:
            acc[key] = s
        else:
            del acc[key]


def t_scale(t: Tensor, c: FieldElem) -> Tensor:
    if not c:
        return {}
    return {k: c * v for k, v in t.items()}


def t_sub(a: Tensor, b: Tensor) -> Tensor:
    out = dict(a)
    for k, v in b.items():
        t_add_into(out, k, -v)
    return out


def t_eq(a: Tensor, b: Tensor) -> bool:
    return not t_sub(a, b)


def t_apply_linear(t: Tensor, slot: int, images) -> Tensor:
    """Replace index i in `slot` via images[i] = dict{j: coeff}."""
    out: Tensor = {}
    for key, c in t.items():
        for j, w in images[key[slot]].items():
            t_add_into(out, key[:slot] + (j,) + key[slot + 1:], c * w)
    return out


def t_apply_comult(t: Tensor, slot: int, comult) -> Tensor:
    """Split `slot` in two via comult[i] = dict{(a, b): coeff}."""
    out: Tensor = {}
    for key, c in t.items():
        for (a, b), w in comult[key[slot]].items():
            t_add_into(out, key[:slot] + (a, b) + key[slot + 1:], c * w)
    return out


def t_apply_mult(t: Tensor, slot: int, mult) -> Tensor:
    """Merge adjacent slots (slot, slot+1) via mult[i][j] = dict{k: coeff}."""
    out: Tensor = {}
    for key, c in t.items():
        for k, w in mult[key[slot]][key[slot + 1]].items():
            t_add_into(out, key[:slot] + (k,) + key[slot + 2:], c * w)
    return out


def t_apply_functional(t: Tensor, slot: int, values) -> Tensor:
    """Contract `slot` against a linear functional given by basis values."""
    out: Tensor = {}
    for key, c in t.items():
        w = values[key[slot]]
        if w:
            t_add_into(out, key[:slot] + key[slot + 1:], c * w)
    return out


def t_from_vector(vec, offset_key=()) -> Tensor:
    return {offset_key + (i,): c for i, c in enumerate(vec) if c}


# ---------------------------------------------------------------------------
# the algebra
# ---------------------------------------------------------------------------

class FiniteDimHopf:
    """A Hopf algebra over Q(zeta_N) with explicit structure constants."""

    def __init__(
        self,
        field: CyclotomicField,
        name: str,
        labels: list[str],
        unit: dict,
        mult,            # mult[i][j]: dict {k: coeff}
        comult,          # comult[i]: dict {(a, b): coeff}
        counit,          # list of FieldElem
        antipode,        # antipode[i]: dict {k: coeff}
        grouplikes: list[int] | None = None,
        antipode_inverse=None,
    ):
        self.field = field
        self.name = name
        self.labels = list(labels)
        self.dim = len(labels)
        self.unit = dict(unit)
        self.mult = mult
        self.comult = comult
        self.counit = list(counit)
        self.antipode = antipode
        self.grouplikes = list(grouplikes or [])
        self._antipode_inverse = antipode_inverse
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        n = self.dim
        if len(mult) != n or any(len(row) != n for row in mult):
            raise ValueError("mult tensor shape mismatch")
        if len(comult) != n or len(counit) != n or len(antipode) != n:
            raise ValueError("structure tensor shape mismatch")

    def __repr__(self):
        return f"<Hopf {self.name} dim {self.dim} over {self.field!r}>"

    # -- elements ------------------------------------------------------
    def element(self, coeffs) -> "HopfElement":
        coeffs = list(coeffs)
        if len(coeffs) != self.dim:
            raise ValueError("coefficient length mismatch")
        return HopfElement(self, tuple(coeffs))

    def element_from_dict(self, d: dict) -> "HopfElement":
        z = self.field.zero()
        coeffs = [z] * self.dim
        for i, c in d.items():
            coeffs[i] = coeffs[i] + c
        return HopfElement(self, tuple(coeffs))

    def basis_element(self, i: int) -> "HopfElement":
        z, o = self.field.zero(), self.field.one()
        return HopfElement(self, tuple(o if j == i else z for j in range(self.dim)))

    def by_label(self, label: str) -> "HopfElement":
        return self.basis_element(self._label_index[label])

    def one(self) -> "HopfElement":
        return self.element_from_dict(self.unit)

    def zero(self) -> "HopfElement":
        return self.element([self.field.zero()] * self.dim)

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    # -- structure access ------------------------------------------------
    def antipode_inverse(self):
        """S^{-1} as images list; raises if the antipode matrix is singular."""
        if self._antipode_inverse is None:
            z, o = self.field.zero(), self.field.one()
            n = self.dim
            smat = [[z] * n for _ in range(n)]
            for i in range(n):
                for k, c in self.antipode[i].items():
                    smat[k][i] = c  # row k, col i
            aug_rows = [smat[k] + [o if j == k else z for j in range(n)] for k in range(n)]
            r, rank, piv = rref(ExactMatrix(self.field, aug_rows, 2 * n))
            if rank < n or any(p >= n for p in piv):
                raise ValueError(f"antipode of {self.name} is not invertible")
            inv = [row[n:] for row in r.rows[:n]]
            self._antipode_inverse = [
                {k: inv[k][i] for k in range(n) if inv[k][i]} for i in range(n)
            ]
        return self._antipode_inverse

    def left_mult_images(self, x: "HopfElement"):
        """images[j] = dict of x * b_j, for the slot calculus."""
        out = []
        for j in range(self.dim):
            acc: dict = {}
            for i, c in enumerate(x.coeffs):
                if c:
                    for k, w in self.mult[i][j].items():
                        t_add_into(acc, k, c * w)
            out.append(acc)
        return out

    def right_mult_images(self, x: "HopfElement"):
        out = []
        for j in range(self.dim):
            acc: dict = {}
            for i, c in enumerate(x.coeffs):
                if c:
                    for k, w in self.mult[j][i].items():
                        t_add_into(acc, k, c * w)
            out.append(acc)
        return out

    def identity_images(self):
        o = self.field.one()
        return [{i: o} for i in range(self.dim)]

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        f = self.field
        z = f.zero()

        def vec(d, n):
            out = [z] * n
            for k, c in d.items():
                out[k] = c
            return [str(c) for c in out]

        n = self.dim
        return {
            "name": self.name,
            "field": {"cyclotomic_order": f.order},
            "dim": n,
            "basis": list(self.labels),
            "unit": vec(self.unit, n),
            "mult": [[vec(self.mult[i][j], n) for j in range(n)] for i in range(n)],
            "comult": [
                vec({a * n + b: c for (a, b), c in self.comult[i].items()}, n * n)
                for i in range(n)
            ],
            "counit": [str(c) for c in self.counit],
            "antipode": [vec(self.antipode[i], n) for i in range(n)],
            "grouplikes": list(self.grouplikes),
        }

    @staticmethod
    def from_json(data: dict) -> "FiniteDimHopf":
        f = CyclotomicField.get(int(data["field"]["cyclotomic_order"]))
        n = int(data["dim"])

        def parse_vec(entries):
            return {i: c for i, c in ((i, f.parse(s)) for i, s in enumerate(entries)) if c}

        mult = [[parse_vec(data["mult"][i][j]) for j in range(n)] for i in range(n)]
        comult = []
        for i in range(n):
            flat = parse_vec(data["comult"][i])
            comult.append({(k // n, k % n): c for k, c in flat.items()})
        return FiniteDimHopf(
            field=f,
            name=data.get("name", "algebra"),
            labels=list(data["basis"]),
            unit=parse_vec(data["unit"]),
            mult=mult,
            comult=comult,
            counit=[f.parse(s) for s in data["counit"]],
            antipode=[parse_vec(row) for row in data["antipode"]],
            grouplikes=list(data.get("grouplikes", [])),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


class HopfElement:
    """Element of a FiniteDimHopf, dense coefficient tuple."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: FiniteDimHopf, coeffs: tuple):
        self.parent = parent
        self.coeffs = coeffs

    def _check(self, other):
        if isinstance(other, HopfElement):
            if other.parent is not self.parent:
                raise ParentMismatchError("elements of different algebras")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return HopfElement(self.parent, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return HopfElement(self.parent, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __neg__(self):
        return HopfElement(self.parent, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "HopfElement":
        return HopfElement(self.parent, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        H = self.parent
        acc: dict = {}
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        ab = a * b
                        for k, w in H.mult[i][j].items():
                            t_add_into(acc, k, ab * w)
        return H.element_from_dict(acc)

    def __eq__(self, other):
        if not isinstance(other, HopfElement):
            return NotImplemented
        return self.parent is other.parent and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.parent),) + self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def dense(self) -> list:
        return list(self.coeffs)

    def tensor(self) -> Tensor:
        return {(i,): c for i, c in enumerate(self.coeffs) if c}

    # -- hopf operations -------------------------------------------------
    def comult(self) -> Tensor:
        return t_apply_comult(self.tensor(), 0, self.parent.comult)

    def iterated_comult(self, k: int) -> Tensor:
        """Delta^(k): element of H^(x)(k+1); k = 0 is the element itself."""
        t = self.tensor()
        for _ in range(k):
            t = t_apply_comult(t, 0, self.parent.comult)
        return t

    def counit(self) -> FieldElem:
        acc = self.parent.field.zero()
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * self.parent.counit[i]
        return acc

    def antipode(self) -> "HopfElement":
        acc: dict = {}
        for i, c in enumerate(self.coeffs):
            if c:
                for k, w in self.parent.antipode[i].items():
                    t_add_into(acc, k, c * w)
        return self.parent.element_from_dict(acc)

    def antipode_inv(self) -> "HopfElement":
        sinv = self.parent.antipode_inverse()
        acc: dict = {}
        for i, c in enumerate(self.coeffs):
            if c:
                for k, w in sinv[i].items():
                    t_add_into(acc, k, c * w)
        return self.parent.element_from_dict(acc)

    def __str__(self):
        H = self.parent
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})*{H.labels[i]}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"<{self} in {self.parent.name}>"


def is_grouplike(x: HopfElement) -> bool:
    """Delta(x) = x (x) x and eps(x) = 1, exactly."""
    if x.counit() != 1:
        return False
    target: Tensor = {}
    for i, a in enumerate(x.coeffs):
        if a:
            for j, b in enumerate(x.coeffs):
                if b:
                    target[(i, j)] = a * b
    return t_eq(x.comult(), target)


# ---------------------------------------------------------------------------
# axiom verification
# ---------------------------------------------------------------------------

class AxiomCheck:
    __slots__ = ("name", "ok", "witness")

    def __init__(self, name, ok, witness=None):
        self.name = name
        self.ok = ok
        self.witness = witness

    def __repr__(self):
        return f"{self.name}: {'ok' if self.ok else f'FAIL {self.witness}'}"


class HopfReport:
    def __init__(self, checks: list[AxiomCheck]):
        self.checks = checks

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def to_dict(self):
        return {
            "ok": self.ok,
            "checks": [
                {"axiom": c.name, "ok": c.ok, "witness": c.witness} for c in self.checks
            ],
        }


def verify_hopf(H: FiniteDimHopf) -> HopfReport:
    """Check all Hopf axioms as exact identities; witnesses are basis labels."""
    checks = []
    n = H.dim
    one = H.one()
    z = H.field.zero()

    def first_fail(gen):
        for witness, ok in gen:
            if not ok:
                return AxiomCheck(name, False, witness)
        return AxiomCheck(name, True)

    name = "associativity"
    def assoc():
        bs = H.basis()
        for i in range(n):
            for j in range(n):
                ij = bs[i] * bs[j]
                for k in range(n):
                    yield (H.labels[i], H.labels[j], H.labels[k]), (
                        (ij * bs[k]).coeffs == (bs[i] * (bs[j] * bs[k])).coeffs
                    )
    checks.append(first_fail(assoc()))

    name = "unitality"
    def unital():
        for i in range(n):
            b = H.basis_element(i)
            yield H.labels[i], (one * b == b and b * one == b)
    checks.append(first_fail(unital()))

    name = "coassociativity"
    def coassoc():
        for i in range(n):
            t = H.basis_element(i).comult()
            yield H.labels[i], t_eq(
                t_apply_comult(t, 0, H.comult), t_apply_comult(t, 1, H.comult)
            )
    checks.append(first_fail(coassoc()))

    name = "counitality"
    def counital():
        for i in range(n):
            b = H.basis_element(i)
            t = b.comult()
            lhs = t_apply_functional(t, 0, H.counit)
            rhs = t_apply_functional(t, 1, H.counit)
            yield H.labels[i], (t_eq(lhs, b.tensor()) and t_eq(rhs, b.tensor()))
    checks.append(first_fail(counital()))

    name = "comult unit"
    d1 = H.one().comult()
    t1 = {}
    for i, a in H.unit.items():
        for j, b in H.unit.items():
            t_add_into(t1, (i, j), a * b)
    checks.append(AxiomCheck(name, t_eq(d1, t1), None if t_eq(d1, t1) else "1"))

    name = "comult multiplicative"
    def dmult():
        bs = H.basis()
        for i in range(n):
            di = bs[i].comult()
            for j in range(n):
                dj = bs[j].comult()
                prod: Tensor = {}
                for (a, b), c1 in di.items():
                    for (a2, b2), c2 in dj.items():
                        c12 = c1 * c2
                        for k1, w1 in H.mult[a][a2].items():
                            for k2, w2 in H.mult[b][b2].items():
                                t_add_into(prod, (k1, k2), c12 * w1 * w2)
                yield (H.labels[i], H.labels[j]), t_eq(prod, (bs[i] * bs[j]).comult())
    checks.append(first_fail(dmult()))

    name = "counit multiplicative"
    def emult():
        bs = H.basis()
        if one.counit() != 1:
            yield "1", False
        for i in range(n):
            for j in range(n):
                yield (H.labels[i], H.labels[j]), (
                    (bs[i] * bs[j]).counit() == bs[i].counit() * bs[j].counit()
                )
    checks.append(first_fail(emult()))

    name = "antipode"
    def antip():
        for i in range(n):
            b = H.basis_element(i)
            t = b.comult()
            lhs = t_apply_mult(t_apply_linear(t, 0, H.antipode), 0, H.mult)
            rhs = t_apply_mult(t_apply_linear(t, 1, H.antipode), 0, H.mult)
            target = t_scale(one.tensor(), b.counit())
            yield H.labels[i], (t_eq(lhs, target) and t_eq(rhs, target))
    checks.append(first_fail(antip()))

    name = "declared grouplikes"
    def grp():
        for g in H.grouplikes:
            yield H.labels[g], is_grouplike(H.basis_element(g))
    checks.append(first_fail(grp()))

    if H._antipode_inverse is not None:
        name = "declared antipode inverse"
        def sinv():
            for i in range(n):
                b = H.basis_element(i)
                yield H.labels[i], (
                    b.antipode().antipode_inv() == b and b.antipode_inv().antipode() == b
                )
        checks.append(first_fail(sinv()))

    return HopfReport(checks)


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

def dual_hopf(H: FiniteDimHopf) -> FiniteDimHopf:
    """The dual Hopf algebra on the dual basis.

    Products of dual functionals are transposed comultiplications and vice
    versa; the antipode dualizes to the transpose.
    """
    n = H.dim
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for c in range(n):
        for (a, b), w in H.comult[c].items():
            mult[a][b][c] = w
    comult = [dict() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, w in H.mult[i][j].items():
                comult[k][(i, j)] = comult[k].get((i, j), H.field.zero()) + w
    for k in range(n):
        comult[k] = {key: v for key, v in comult[k].items() if v}
    antipode = [dict() for _ in range(n)]
    for i in range(n):
        for k, w in H.antipode[i].items():
            antipode[k][i] = w
    unit = {i: c for i, c in enumerate(H.counit) if c}
    counit = [H.field.zero()] * n
    for i, c in H.unit.items():
        counit[i] = c
    return FiniteDimHopf(
        field=H.field,
        name=f"{H.name}^*",
        labels=[f"{lab}^" for lab in H.labels],
        unit=unit,
        mult=mult,
        comult=comult,
        counit=counit,
        antipode=antipode,
        grouplikes=[],
    )
