"""Builders for the example algebras: group algebras kG and their duals,
the 4-dimensional Taft/Sweedler algebra, and the 8-dimensional
Kac-Paljutkin algebra, plus group-algebra idempotent machinery and the
declared subcentral-idempotent inventories used by the classification.
"""
from __future__ import annotations

from .field import CyclotomicField, FieldElem, default_field
from .groups import (
    FiniteGroup,
    GROUP_PRESETS,
    UnsupportedGroupError,
    build_group,
    character_table,
)
from .hopf import FiniteDimHopf, HopfElement, dual_hopf, t_add_into


def build_group_algebra(G: FiniteGroup, field: CyclotomicField | None = None) -> FiniteDimHopf:
    """kG: basis G, Delta(g) = g (x) g, S(g) = g^{-1}."""
    f = field or default_field()
    o = f.one()
    n = G.order
    mult = [[{G.cayley[i][j]: o} for j in range(n)] for i in range(n)]
    comult = [{(i, i): o} for i in range(n)]
    antipode = [{G.inverse[i]: o} for i in range(n)]
    H = FiniteDimHopf(
        field=f,
        name=f"k[{G.name}]",
        labels=list(G.labels),
        unit={G.identity: o},
        mult=mult,
        comult=comult,
        counit=[o] * n,
        antipode=antipode,
        grouplikes=list(range(n)),
    )
    H.group = G
    return H


def build_dual_group_algebra(G: FiniteGroup, field: CyclotomicField | None = None) -> FiniteDimHopf:
    """kG^*: basis {p_g}, pointwise products, Delta(p_g) = sum_{ab=g} p_a (x) p_b."""
    f = field or default_field()
    o = f.one()
    n = G.order
    mult = [[({i: o} if i == j else {}) for j in range(n)] for i in range(n)]
    comult = [dict() for _ in range(n)]
    for a in range(n):
        for b in range(n):
            comult[G.cayley[a][b]][(a, b)] = o
    antipode = [{G.inverse[i]: o} for i in range(n)]
    counit = [f.zero()] * n
    counit[G.identity] = o
    H = FiniteDimHopf(
        field=f,
        name=f"k[{G.name}]^*",
        labels=[f"p_{lab}" for lab in G.labels],
        unit={i: o for i in range(n)},
        mult=mult,
        comult=comult,
        counit=counit,
        antipode=antipode,
        grouplikes=[],
    )
    H.group = G
    return H


# ---------------------------------------------------------------------------
# Taft/Sweedler algebra, dim 4
# ---------------------------------------------------------------------------

def build_sweedler(field: CyclotomicField | None = None) -> FiniteDimHopf:
    """Basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx."""
    f = field or default_field()
    if f.order % 2:
        raise ValueError("field must contain -1 (even cyclotomic order)")
    z, o = f.zero(), f.one()

    def idx(a, b):  # g^a x^b
        return a + 2 * b if b == 0 else 2 + a

    # explicit index map: 0 -> 1, 1 -> g, 2 -> x, 3 -> gx
    def mono(a, b):
        return {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}[(a, b)]

    mult = [[{} for _ in range(4)] for _ in range(4)]
    for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        for (c, d) in [(0, 0), (1, 0), (0, 1), (1, 1)]:
            if b + d >= 2:
                entry = {}
            else:
                sign = o if (b * c) % 2 == 0 else -o
                entry = {mono((a + c) % 2, b + d): sign}
            mult[mono(a, b)][mono(c, d)] = entry
    comult = [
        {(0, 0): o},                      # 1
        {(1, 1): o},                      # g
        {(0, 2): o, (2, 1): o},           # x: 1(x)x + x(x)g
        {(1, 3): o, (3, 0): o},           # gx: g(x)gx + gx(x)1
    ]
    counit = [o, o, z, z]
    antipode = [{0: o}, {1: o}, {3: o}, {2: -o}]  # S(x) = gx, S(gx) = -x
    return FiniteDimHopf(
        field=f,
        name="H4",
        labels=["1", "g", "x", "gx"],
        unit={0: o},
        mult=mult,
        comult=comult,
        counit=counit,
        antipode=antipode,
        grouplikes=[0, 1],
    )


# ---------------------------------------------------------------------------
# Kac-Paljutkin algebra, dim 8
# ---------------------------------------------------------------------------

def _kac_mono_index(a, b, c):
    # ordering 1, x, y, z, xy, xz, yz, xyz
    return {(0, 0, 0): 0, (1, 0, 0): 1, (0, 1, 0): 2, (0, 0, 1): 3,
            (1, 1, 0): 4, (1, 0, 1): 5, (0, 1, 1): 6, (1, 1, 1): 7}[(a, b, c)]


_KAC_MONOS = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
              (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]


def _kac_mono_product(m1, m2, half):
    """Product of monomials x^a y^b z^c as a dict {index: coeff}.

    Rewriting rules: x, y commute and square to 1, z x = y z, z y = x z,
    z^2 = (1 + x + y - xy)/2.
    """
    a, b, c = m1
    d, e, g = m2
    if c == 0:
        return {_kac_mono_index((a + d) % 2, (b + e) % 2, g): None}
    # z passes x^d y^e swapping the exponents
    a2, b2 = (a + e) % 2, (b + d) % 2
    if g == 0:
        return {_kac_mono_index(a2, b2, 1): None}
    # z^2 expansion; coefficient placeholders filled by caller with +-1/2
    out = {}
    for (dx, dy, sign) in [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, -1)]:
        out[_kac_mono_index((a2 + dx) % 2, (b2 + dy) % 2, 0)] = sign
    return out


def build_kac(field: CyclotomicField | None = None) -> FiniteDimHopf:
    """The 8-dim non-commutative non-cocommutative semisimple Hopf algebra."""
    f = field or default_field()
    if f.order % 8:
        raise ValueError("Kac-Paljutkin algebra needs an eighth root of unity")
    z0, o = f.zero(), f.one()
    half = f.rational(1, 2)
    n = 8
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for i, m1 in enumerate(_KAC_MONOS):
        for j, m2 in enumerate(_KAC_MONOS):
            raw = _kac_mono_product(m1, m2, half)
            if len(raw) == 1:
                (k, _), = raw.items()
                mult[i][j] = {k: o}
            else:
                mult[i][j] = {k: half if s > 0 else -half for k, s in raw.items()}
    # comultiplication: Delta is multiplicative; build from the generators
    dx = {(1, 1): o}
    dy = {(2, 2): o}
    dz = {(3, 3): half, (3, 5): half, (6, 3): half, (6, 5): -half}

    def tensor_mult(t1, t2):
        out = {}
        for (a, b), c1 in t1.items():
            for (a2, b2), c2 in t2.items():
                c12 = c1 * c2
                for k1, w1 in mult[a][a2].items():
                    for k2, w2 in mult[b][b2].items():
                        t_add_into(out, (k1, k2), c12 * w1 * w2)
        return out

    comult = []
    for (a, b, c) in _KAC_MONOS:
        t = {(0, 0): o}
        if a:
            t = tensor_mult(t, dx)
        if b:
            t = tensor_mult(t, dy)
        if c:
            t = tensor_mult(t, dz)
        comult.append(t)
    counit = [o] * n
    # antipode fixes x, y, z and reverses words
    antipode = []
    for (a, b, c) in _KAC_MONOS:
        if c == 0:
            antipode.append({_kac_mono_index(a, b, 0): o})
        else:
            # S(x^a y^b z) = z y^b x^a = x^b y^a z
            antipode.append({_kac_mono_index(b, a, 1): o})
    return FiniteDimHopf(
        field=f,
        name="KacPaljutkin",
        labels=["1", "x", "y", "z", "xy", "xz", "yz", "xyz"],
        unit={0: o},
        mult=mult,
        comult=comult,
        counit=counit,
        antipode=antipode,
        grouplikes=[0, 1, 2, 4],
    )


def kac_integral(A: FiniteDimHopf) -> HopfElement:
    """The normalized two-sided integral (1 + x + y + xy + z + xz + yz + xyz)/8."""
    c = A.field.rational(1, 8)
    return A.element([c] * 8)


def kac_s_elements(A: FiniteDimHopf) -> tuple[HopfElement, HopfElement]:
    """The skew generators s and s-bar of the exotic coideal subalgebras."""
    f = A.field
    i = f.zeta(4)
    half = f.rational(1, 2)
    z, xz = A.by_label("z"), A.by_label("xz")
    s = z.scale((f.one() - i) * half) + xz.scale((f.one() + i) * half)
    sbar = z.scale((f.one() + i) * half) + xz.scale((f.one() - i) * half)
    return s, sbar


def kac_subcentral_rows(A: FiniteDimHopf):
    """Declared subcentral idempotents of the Kac algebra with their
    generated coideal subalgebras, in the published row order."""
    f = A.field
    zeta = f.zeta(8)
    one = A.one()
    x, y, xy = A.by_label("x"), A.by_label("y"), A.by_label("xy")
    s, sbar = kac_s_elements(A)
    xys, xysbar = xy * s, xy * sbar

    def comb(parts, denom):
        acc = A.zero()
        for el, c in parts:
            acc = acc + el.scale(f.rational(c) if isinstance(c, int) else c)
        return acc.scale(f.rational(1, denom))

    q = f.rational
    rows = []

    def row(name, span, e):
        rows.append({"subalgebra": name, "span": span, "e": e})

    full = A.basis()
    grp4 = [one, x, y, xy]
    row("<1>", [one], one)
    row("<1,x>", [one, x], comb([(one, 1), (x, 1)], 2))
    row("<1,y>", [one, y], comb([(one, 1), (y, 1)], 2))
    row("<1,xy>", [one, xy], comb([(one, 1), (xy, 1)], 2))
    row("<1,x,y,xy>", grp4, comb([(one, 1), (x, 1), (y, 1), (xy, 1)], 4))
    row("<1,x,y,xy>", grp4, comb([(one, 3), (x, -1), (y, -1), (xy, -1)], 4))
    s1 = [one, xy, s, xys]
    row("S1", s1, comb([(one, 1), (xy, 1), (s, 1), (xys, 1)], 4))
    row("S1", s1, comb([(one, 2), (s, f.one() + zeta), (xys, f.one() - zeta)], 4))
    row("S1", s1, comb([(one, 3), (xy, -1), (s, -1), (xys, -1)], 4))
    s2 = [one, xy, sbar, xysbar]
    row("S2", s2, comb([(one, 1), (xy, 1), (sbar, 1), (xysbar, 1)], 4))
    row("S2", s2, comb([(one, 2), (sbar, f.one() - zeta), (xysbar, f.one() + zeta)], 4))
    row("S2", s2, comb([(one, 3), (xy, -1), (sbar, -1), (xysbar, -1)], 4))
    z, xz, yz, xyz = (A.by_label(l) for l in ("z", "xz", "yz", "xyz"))
    row("A", full, kac_integral(A))
    row("A", full, comb([(one, 3), (x, -1), (y, -1), (xy, 3), (z, 1), (xz, 1), (yz, 1), (xyz, 1)], 8))
    row("A", full, comb([(one, 5), (x, 1), (y, 1), (xy, -3), (z, 1), (xz, 1), (yz, 1), (xyz, 1)], 8))
    row("A", full, comb([(one, 7), (x, -1), (y, -1), (xy, -1), (z, -1), (xz, -1), (yz, -1), (xyz, -1)], 8))
    return rows


def sweedler_subcentral_family(H: FiniteDimHopf, gamma: FieldElem, sign: int = 1) -> HopfElement:
    """(1 +- g)/2 + gamma x; the + family satisfies the integral-type identity."""
    f = H.field
    half = f.rational(1, 2)
    e = H.one().scale(half) + H.by_label("g").scale(half if sign > 0 else -half)
    return e + H.by_label("x").scale(gamma)


# ---------------------------------------------------------------------------
# group-algebra idempotents
# ---------------------------------------------------------------------------

def central_primitive_idempotents(
    G: FiniteGroup, field: CyclotomicField | None = None, algebra: FiniteDimHopf | None = None
) -> list[HopfElement]:
    """e_V = (deg V / |K|) sum_h chi_V(h^{-1}) h, one per irreducible V."""
    f = field or (algebra.field if algebra is not None else default_field())
    kK = algebra or build_group_algebra(G, f)
    table = character_table(G, f)
    out = []
    scale_base = f.rational(1, G.order)
    for irr in table.irreps:
        chi = irr.character()
        coeffs = [scale_base * f.rational(irr.degree) * chi[G.inverse[h]] for h in range(G.order)]
        out.append(kK.element(coeffs))
    # idempotency and orthogonality are cheap and always verified
    for i, e in enumerate(out):
        if e * e != e:
            raise AssertionError("central idempotent fails e^2 = e")
        for j, e2 in enumerate(out):
            if i != j and (e * e2):
                raise AssertionError("central idempotents not orthogonal")
    total = out[0]
    for e in out[1:]:
        total = total + e
    if total != kK.one():
        raise AssertionError("central idempotents do not sum to 1")
    return out


# ---------------------------------------------------------------------------
# preset registry
# ---------------------------------------------------------------------------

ALGEBRA_PRESETS = ("sweedler", "kac") + tuple(GROUP_PRESETS)


def algebra_from_preset(name: str, dual: bool = False, field: CyclotomicField | None = None) -> FiniteDimHopf:
    """Resolve a preset name to a Hopf algebra; group names give kG (or kG^*)."""
    f = field or default_field()
    key = name.lower()
    if key == "sweedler":
        H = build_sweedler(f)
    elif key == "kac":
        H = build_kac(f)
    else:
        G = build_group(key)
        return build_dual_group_algebra(G, f) if dual else build_group_algebra(G, f)
    return dual_hopf(H) if dual else H
