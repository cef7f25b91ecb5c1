"""Finite groups as Cayley tables: presets, subgroups, cosets, characters.

Irreducible data for the non-abelian presets (S3, D8, Q8) is built in as
exact representation matrices and verified against orthogonality at load;
everything abelian is computed by brute-force homomorphism search.
"""
from __future__ import annotations

from itertools import product

from .field import CyclotomicField, FieldElem


class NotAGroupError(ValueError):
    pass


class UnsupportedGroupError(ValueError):
    pass


class FiniteGroup:
    def __init__(self, labels: list[str], cayley: list[list[int]], name: str = "group"):
        self.labels = list(labels)
        self.cayley = [list(r) for r in cayley]
        self.name = name
        self.order = len(labels)
        n = self.order
        if len(self.cayley) != n or any(len(r) != n for r in self.cayley):
            raise NotAGroupError("cayley table has wrong shape")
        for r in self.cayley:
            for v in r:
                if not 0 <= v < n:
                    raise NotAGroupError("cayley entry out of range")
        # identity
        ident = None
        for e in range(n):
            if all(self.cayley[e][x] == x and self.cayley[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise NotAGroupError("no identity element")
        self.identity = ident
        # inverses
        self.inverse = [None] * n
        for x in range(n):
            for y in range(n):
                if self.cayley[x][y] == ident and self.cayley[y][x] == ident:
                    self.inverse[x] = y
                    break
            if self.inverse[x] is None:
                raise NotAGroupError(f"element {self.labels[x]} has no inverse")
        # associativity
        for a in range(n):
            for b in range(n):
                ab = self.cayley[a][b]
                for c in range(n):
                    if self.cayley[ab][c] != self.cayley[a][self.cayley[b][c]]:
                        raise NotAGroupError(
                            f"associativity fails at ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})"
                        )

    def __repr__(self):
        return f"<Group {self.name} order {self.order}>"

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(
            self.cayley[a][b] == self.cayley[b][a]
            for a in range(self.order)
            for b in range(a)
        )

    def closure(self, seed) -> tuple[int, ...]:
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(seed)
        # multiply out until stable
        changed = True
        elems.update(gens)
        while changed:
            changed = False
            cur = sorted(elems)
            for a in cur:
                for g in gens:
                    for p in (self.mul(a, g), self.mul(g, a)):
                        if p not in elems:
                            elems.add(p)
                            changed = True
            gens = sorted(elems)
        return tuple(sorted(elems))

    def subgroups(self) -> list[tuple[int, ...]]:
        """All subgroups as sorted element tuples, ordered by (order, elements)."""
        found = {(self.identity,)}
        frontier = [(self.identity,)]
        while frontier:
            new = []
            for sub in frontier:
                inside = set(sub)
                for g in range(self.order):
                    if g in inside:
                        continue
                    ext = self.closure(sub + (g,))
                    if ext not in found:
                        found.add(ext)
                        new.append(ext)
            frontier = new
        return sorted(found, key=lambda t: (len(t), t))

    def left_cosets(self, sub: tuple[int, ...]) -> list[tuple[int, ...]]:
        """Cosets g*K, the coset of the identity first, then by least element."""
        seen = set()
        cosets = []
        for g in range(self.order):
            if g in seen:
                continue
            cs = tuple(sorted(self.mul(g, h) for h in sub))
            seen.update(cs)
            cosets.append(cs)
        return cosets

    def right_cosets(self, sub: tuple[int, ...]) -> list[tuple[int, ...]]:
        seen = set()
        cosets = []
        for g in range(self.order):
            if g in seen:
                continue
            cs = tuple(sorted(self.mul(h, g) for h in sub))
            seen.update(cs)
            cosets.append(cs)
        return cosets

    @staticmethod
    def transversal(cosets: list[tuple[int, ...]]) -> list[int]:
        """Least-index representatives; the identity's coset comes first."""
        return [cs[0] for cs in cosets]

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen = set()
        classes = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = {self.mul(self.mul(g, x), self.inv(g)) for g in range(self.order)}
            cls = tuple(sorted(cls))
            seen.update(cls)
            classes.append(cls)
        return classes

    def commutator_subgroup(self) -> tuple[int, ...]:
        comms = {
            self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
            for a in range(self.order)
            for b in range(self.order)
        }
        return self.closure(tuple(sorted(comms)))

    def generating_set(self) -> list[int]:
        """Greedy small generating set, deterministic."""
        gens: list[int] = []
        cur = (self.identity,)
        for g in sorted(range(self.order), key=lambda x: (-self.element_order(x), x)):
            if g not in cur:
                gens.append(g)
                cur = self.closure(tuple(gens))
                if len(cur) == self.order:
                    break
        return gens

    def subgroup_view(self, sub: tuple[int, ...]) -> "FiniteGroup":
        """The subgroup as a group in its own right (labels inherited)."""
        index = {g: i for i, g in enumerate(sub)}
        cayley = [[index[self.mul(a, b)] for b in sub] for a in sub]
        return FiniteGroup([self.labels[g] for g in sub], cayley, name=f"{self.name}|{{{','.join(self.labels[g] for g in sub)}}}")

    def to_json(self) -> dict:
        return {"order": self.order, "labels": list(self.labels), "cayley": [list(r) for r in self.cayley]}

    @staticmethod
    def from_json(data: dict) -> "FiniteGroup":
        return FiniteGroup(data["labels"], data["cayley"], name=data.get("name", "group"))


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    labels = ["1"] + [f"g{'' if k == 1 else k}" for k in range(1, n)]
    cayley = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(labels, cayley, name=f"C{n}")


def klein_group() -> FiniteGroup:
    # order (1, a, b, ab), component-wise xor
    labels = ["1", "a", "b", "ab"]
    cayley = [[a ^ b for b in range(4)] for a in range(4)]
    return FiniteGroup(labels, cayley, name="V4")


def symmetric3_group() -> FiniteGroup:
    # elements s^i a^j in the order 1, s, s2, a, sa, s2a; a s = s^2 a
    labels = ["1", "s", "s2", "a", "sa", "s2a"]

    def idx(i, j):
        return i + 3 * j

    cayley = [[0] * 6 for _ in range(6)]
    for i, j in product(range(3), range(2)):
        for k, l in product(range(3), range(2)):
            if j == 0:
                r = idx((i + k) % 3, l)
            else:
                r = idx((i + 2 * k) % 3, (1 + l) % 2)
            cayley[idx(i, j)][idx(k, l)] = r
    return FiniteGroup(labels, cayley, name="S3")


def dihedral8_group() -> FiniteGroup:
    # r^i f^j with f r = r^3 f
    labels = ["1", "r", "r2", "r3", "f", "rf", "r2f", "r3f"]

    def idx(i, j):
        return i + 4 * j

    cayley = [[0] * 8 for _ in range(8)]
    for i, j in product(range(4), range(2)):
        for k, l in product(range(4), range(2)):
            if j == 0:
                r = idx((i + k) % 4, l)
            else:
                r = idx((i + 3 * k) % 4, (1 + l) % 2)
            cayley[idx(i, j)][idx(k, l)] = r
    return FiniteGroup(labels, cayley, name="D8")


def quaternion_group() -> FiniteGroup:
    # units 1, -1, i, -i, j, -j, k, -k
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {"1": (1, "1"), "i": (1, "i"), "j": (1, "j"), "k": (1, "k")}

    def unit_mul(a, b):
        table = {
            ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
            ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
            ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
        }
        return table[(a, b)]

    def split(lbl):
        return (-1, lbl[1:]) if lbl.startswith("-") else (1, lbl)

    def join(sign, letter):
        if letter == "1":
            return "1" if sign == 1 else "-1"
        return letter if sign == 1 else "-" + letter

    index = {lbl: i for i, lbl in enumerate(labels)}
    cayley = [[0] * 8 for _ in range(8)]
    for a, la in enumerate(labels):
        sa, ua = split(la)
        for b, lb in enumerate(labels):
            sb, ub = split(lb)
            s, u = unit_mul(ua, ub)
            cayley[a][b] = index[join(sa * sb * s, u)]
    return FiniteGroup(labels, cayley, name="Q8")


GROUP_PRESETS = {
    "c1": lambda: cyclic_group(1),
    "c2": lambda: cyclic_group(2),
    "c3": lambda: cyclic_group(3),
    "c4": lambda: cyclic_group(4),
    "c6": lambda: cyclic_group(6),
    "klein": klein_group,
    "s3": symmetric3_group,
    "d8": dihedral8_group,
    "q8": quaternion_group,
}


def build_group(preset_or_table) -> FiniteGroup:
    if isinstance(preset_or_table, str):
        key = preset_or_table.lower()
        if key in GROUP_PRESETS:
            return GROUP_PRESETS[key]()
        if key.startswith("c") and key[1:].isdigit():
            return cyclic_group(int(key[1:]))
        raise UnsupportedGroupError(f"unknown group preset {preset_or_table!r}")
    if isinstance(preset_or_table, dict):
        return FiniteGroup.from_json(preset_or_table)
    raise UnsupportedGroupError("expected a preset name or group JSON")


# ---------------------------------------------------------------------------
# characters and irreducible representations
# ---------------------------------------------------------------------------

class Irrep:
    """Exact matrix representation: images[g] is a degree x degree list of lists."""

    def __init__(self, group: FiniteGroup, images: list[list[list[FieldElem]]], name: str):
        self.group = group
        self.images = images
        self.degree = len(images[0])
        self.name = name

    def character(self) -> list[FieldElem]:
        out = []
        for m in self.images:
            acc = m[0][0]
            for d in range(1, self.degree):
                acc = acc + m[d][d]
            out.append(acc)
        return out

    def verify(self) -> bool:
        G = self.group
        for a in range(G.order):
            for b in range(G.order):
                prod = _mat_mul(self.images[a], self.images[b])
                if prod != self.images[G.mul(a, b)]:
                    return False
        return True


def _mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = A[i][0] * B[0][j]
            for k in range(1, m):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def linear_characters(G: FiniteGroup, field: CyclotomicField) -> list[Irrep]:
    """All homomorphisms G -> mu_N by brute force over a generating set."""
    gens = G.generating_set()
    if not gens:
        return [Irrep(G, [[[field.one()]]] * G.order, "triv")]
    options = []
    for g in gens:
        m = G.element_order(g)
        if field.order % m:
            raise UnsupportedGroupError(
                f"element order {m} needs a root of unity missing from Q(zeta_{field.order})"
            )
        options.append([field.zeta_power(j * (field.order // m)) for j in range(m)])
    total = 1
    for o in options:
        total *= len(o)
        if total > 10**6:
            raise UnsupportedGroupError("linear character search too large")
    out = []
    for choice in product(*options):
        values = {G.identity: field.one()}
        queue = [G.identity]
        ok = True
        while queue and ok:
            x = queue.pop()
            vx = values[x]
            for g, vg in zip(gens, choice):
                y = G.mul(x, g)
                vy = vx * vg
                if y in values:
                    if values[y] != vy:
                        ok = False
                        break
                else:
                    values[y] = vy
                    queue.append(y)
        if ok and len(values) == G.order:
            images = [[[values[g]]] for g in range(G.order)]
            out.append(Irrep(G, images, f"chi{len(out)}"))
    # deterministic order by value vectors
    out.sort(key=lambda irr: tuple(v[0][0].sort_key() for v in irr.images))
    return out


def _builtin_two_dim(G: FiniteGroup, field: CyclotomicField) -> Irrep:
    """The 2-dim irreducible of S3, D8 or Q8 on a detected standard presentation."""
    n = G.order
    z, o = field.zero(), field.one()
    if n == 6:
        w = field.zeta(3)
        gens_target = None
        for s in range(n):
            if G.element_order(s) != 3:
                continue
            for a in range(n):
                if G.element_order(a) != 2:
                    continue
                if G.mul(G.mul(a, s), a) == G.mul(s, s):
                    gens_target = (s, a)
                    break
            if gens_target:
                break
        s, a = gens_target
        img = {s: [[w, z], [z, w * w]], a: [[z, o], [o, z]]}
    elif n == 8 and sum(1 for x in range(n) if G.element_order(x) == 2) == 1:
        # quaternion: i, j of order 4 with j i j^-1 = i^-1 and i^2 = j^2
        i4 = field.zeta(4)
        gens_target = None
        for i in range(n):
            if G.element_order(i) != 4:
                continue
            for j in range(n):
                if G.element_order(j) != 4 or j in (i, G.inv(i)):
                    continue
                if (
                    G.mul(G.mul(j, i), G.inv(j)) == G.inv(i)
                    and G.mul(i, i) == G.mul(j, j)
                ):
                    gens_target = (i, j)
                    break
            if gens_target:
                break
        i, j = gens_target
        img = {i: [[i4, z], [z, -i4]], j: [[z, -o], [o, z]]}
        s, a = i, j
    else:
        # dihedral: r of order 4, f of order 2 outside <r>, f r f = r^3
        gens_target = None
        for r in range(n):
            if G.element_order(r) != 4:
                continue
            rpow = {G.identity, r, G.mul(r, r), G.mul(G.mul(r, r), r)}
            for f in range(n):
                if G.element_order(f) != 2 or f in rpow:
                    continue
                if G.mul(G.mul(f, r), f) == G.inv(r):
                    gens_target = (r, f)
                    break
            if gens_target:
                break
        r, f = gens_target
        img = {r: [[z, -o], [o, z]], f: [[o, z], [z, -o]]}
        s, a = r, f
    # extend to the whole group by closing products from the identity
    images: dict[int, list] = {G.identity: [[o, z], [z, o]]}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in (s, a):
                y = G.mul(x, g)
                if y not in images:
                    images[y] = _mat_mul(images[x], img[g])
                    nxt.append(y)
        frontier = nxt
    irr = Irrep(G, [images[g] for g in range(n)], "std2")
    if not irr.verify():
        raise AssertionError("built-in 2-dim representation failed verification")
    return irr


class CharacterTable:
    def __init__(self, group: FiniteGroup, irreps: list[Irrep], field: CyclotomicField):
        self.group = group
        self.irreps = irreps
        self.field = field
        self.classes = group.conjugacy_classes()
        self._verify()

    def _verify(self):
        G = self.group
        n = G.order
        if sum(irr.degree**2 for irr in self.irreps) != n:
            raise AssertionError("sum of squared degrees != |G|")
        chars = [irr.character() for irr in self.irreps]
        for i, ci in enumerate(chars):
            for j, cj in enumerate(chars):
                acc = self.field.zero()
                for g in range(n):
                    acc = acc + ci[g] * cj[G.inv(g)]
                expected = self.field.rational(n) if i == j else self.field.zero()
                if acc != expected:
                    raise AssertionError("row orthogonality fails")

    def characters(self) -> list[list[FieldElem]]:
        return [irr.character() for irr in self.irreps]


def character_table(G: FiniteGroup, field: CyclotomicField) -> CharacterTable:
    """Irreducible characters; abelian computed, S3/D8/Q8 built in."""
    if G.is_abelian():
        irreps = linear_characters(G, field)
        if len(irreps) != G.order:
            raise UnsupportedGroupError(
                f"field Q(zeta_{field.order}) does not split the abelian group {G.name}"
            )
        return CharacterTable(G, irreps, field)
    lins = linear_characters(G, field)
    if G.order == 6 and len(lins) == 2:
        return CharacterTable(G, lins + [_builtin_two_dim(G, field)], field)
    if G.order == 8 and len(lins) == 4:
        return CharacterTable(G, lins + [_builtin_two_dim(G, field)], field)
    raise UnsupportedGroupError(f"no built-in character table for {G.name}")
