"""Surface groups: words, Dehn's algorithm, enumeration and matrix realizations.

Generators are numbered ``1..2p`` with ``a_i = 2i-1`` and ``b_i = 2i``;
negative integers are inverses.  The closed group is realized by the side
pairings of the regular hyperbolic 4p-gon centred at ``i`` with interior angle
``2pi/4p``, the punctured group by the regular ideal 4p-gon.
"""
from __future__ import annotations

import enum
import re
from collections import deque
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from flint import acb, arb

from .geom import (
    MobiusMap,
    PrecisionExhausted,
    contains_identity,
    escalating,
    _Lazy,
)


class IdentityWord(ValueError):
    pass


class ResourceCapExceeded(RuntimeError):
    pass


def letter_key(x: int) -> int:
    """Shortlex letter order a1 < A1 < b1 < B1 < a2 < ..."""
    return 2 * abs(x) - (2 if x > 0 else 1)


def free_reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    out: List[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class GroupWord:
    """A freely reduced word in the surface-group generators."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        self.letters = free_reduce(letters)

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        text = text.strip()
        if text in ("", "1", "e", "id"):
            return cls()
        tokens = re.findall(r"[aAbB]\d+|\S", text)
        letters = []
        for tok in tokens:
            m = re.fullmatch(r"([aAbB])(\d+)", tok)
            if not m or int(m.group(2)) < 1:
                raise ValueError(f"bad letter {tok!r} in word {text!r}")
            ch, i = m.group(1), int(m.group(2))
            gen = 2 * i - 1 if ch in "aA" else 2 * i
            letters.append(gen if ch.islower() else -gen)
        return cls(letters)

    def __str__(self):
        if not self.letters:
            return "1"
        out = []
        for x in self.letters:
            i = (abs(x) + 1) // 2
            ch = "a" if abs(x) % 2 == 1 else "b"
            out.append((ch if x > 0 else ch.upper()) + str(i))
        return " ".join(out)

    def __repr__(self):
        return f"GroupWord({self})"

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return GroupWord(self.letters[item])
        return self.letters[item]

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __pow__(self, n: int) -> "GroupWord":
        if n < 0:
            return self.inverse() ** (-n)
        return GroupWord(self.letters * n)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple(-x for x in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def sort_key(self):
        return (len(self.letters), tuple(letter_key(x) for x in self.letters))


class Kind(enum.Enum):
    Closed = "closed"
    Punctured = "punctured"


# --- polygon geometry -----------------------------------------------------


# The polygon is turned by this many radians so that no short axis passes
# through infinity; it is not a rational multiple of pi.
TWIST = Fraction(1, 10)


def _rotation(num: int, den: int, turn: int = 0) -> MobiusMap:
    """Rotation about ``i`` by the angle ``num*pi/den + turn*TWIST``."""

    def build():
        ang = arb.pi() * num / den + turn * arb(TWIST.numerator) / TWIST.denominator
        s, c = (ang / 2).sin_cos()
        return (c, s, -s, c)

    return MobiusMap(("fn", build))


class SurfaceGroup:
    """Genus-p surface group with a faithful side-pairing realization."""

    def __init__(self, genus: int, kind: Kind):
        self.genus = genus
        self.kind = kind
        self.n_sides = 4 * genus
        self.rank = 2 * genus
        self._expd = _Lazy()
        self._sides: Dict[int, MobiusMap] = {}
        self._center_lazy = _Lazy()
        self.side_letter: List[int] = [0] * self.n_sides
        self.gens: Dict[int, MobiusMap] = {}
        self.relator = GroupWord()
        self._nf_cache: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        self._build()
        self._dehn_table = self._make_dehn_table() if kind is Kind.Closed else {}
        self.basepoint = (Fraction(1, 10), Fraction(107, 100))

    # construction ---------------------------------------------------------

    def exp_inradius(self) -> arb:
        """e^d for the inradius d of the fundamental polygon."""

        def compute():
            n = self.n_sides
            s, c = (arb.pi() / n).sin_cos()
            ch = c / s if self.kind is Kind.Closed else 1 / s
            return ch + (ch * ch - 1).sqrt()

        return self._expd.get(compute)

    def _pairing(self, j: int, k: int) -> MobiusMap:
        """Orientation-preserving map taking side j to side k, P across side k."""
        n = self.n_sides
        psi_k = (2 * k + 1, n)
        # pi - psi_j = (n - 2j - 1) pi / n
        rot_k = _rotation(*psi_k, turn=1)
        rot_j = _rotation(n - 2 * j - 1, n, turn=-1)

        def build():
            e = self.exp_inradius()
            d2 = (e, arb(0), arb(0), 1 / e)
            acc = MobiusMap(("fn", lambda: d2))
            return MobiusMap(("product", (MobiusMap(("product", (rot_k, acc))), rot_j))).entries()

        return MobiusMap(("fn", build))

    def _build(self):
        p = self.genus
        best = None
        for flip_a in (False, True):
            for flip_b in (False, True):
                gens = {}
                letter = [0] * self.n_sides
                for h in range(p):
                    ia, ib = 2 * h + 1, 2 * h + 2
                    sa = (4 * h, 4 * h + 2) if not flip_a else (4 * h + 2, 4 * h)
                    sb = (4 * h + 1, 4 * h + 3) if not flip_b else (4 * h + 3, 4 * h + 1)
                    gens[ia] = self._pairing(*sa)
                    gens[ib] = self._pairing(*sb)
                    # tile across the target side is gen * P
                    letter[sa[1]], letter[sa[0]] = ia, -ia
                    letter[sb[1]], letter[sb[0]] = ib, -ib
                rel = []
                for h in range(p):
                    a, b = 2 * h + 1, 2 * h + 2
                    rel += [a, b, -a, -b]
                if self._relator_ok(gens, rel):
                    best = (gens, letter, rel)
                    break
            if best:
                break
        if best is None:
            raise RuntimeError("side pairing failed the relator check")
        gens, letter, rel = best
        self.gens = {}
        for g, m in gens.items():
            self.gens[g] = MobiusMap(m.recipe, word=GroupWord((g,)), group=self)
            self.gens[-g] = self.gens[g].inverse()
        self.side_letter = letter
        self.relator = GroupWord(rel)

    @escalating
    def _relator_ok(self, gens, rel) -> bool:
        m = _word_product(gens, rel)
        if self.kind is Kind.Closed:
            return contains_identity(m)
        t = m.trace()
        return (t.contains(arb(2)) or t.contains(arb(-2))) and not contains_identity(m)

    # matrices -------------------------------------------------------------

    def matrix(self, w: GroupWord) -> MobiusMap:
        letters = w.letters
        gens = self.gens
        full = {g: m for g, m in gens.items()}

        def build():
            return _word_product(full, letters).entries()

        return MobiusMap(("fn", build), word=w, group=self,
                         parabolic=self._is_peripheral(w))

    def _is_peripheral(self, w: GroupWord) -> bool:
        if self.kind is not Kind.Punctured or not w.letters:
            return False
        cyc = cyclic_free_reduce(w.letters)
        rel = self.relator.letters
        n = len(rel)
        if len(cyc) % n:
            return False
        k = len(cyc) // n
        for base in (rel, tuple(-x for x in reversed(rel))):
            for r in range(n):
                rot = base[r:] + base[:r]
                if cyc == rot * k:
                    return True
        return False

    def apply(self, w: GroupWord, z: acb) -> acb:
        for x in reversed(w.letters):
            z = self.gens[x].act(z)
        return z

    def basepoint_value(self) -> acb:
        x, y = self.basepoint
        return acb(arb(x.numerator) / x.denominator, arb(y.numerator) / y.denominator)

    # polygon sides --------------------------------------------------------

    def side_rotation(self, k: int) -> MobiusMap:
        """Rotation by -psi_k, sending side k to the circle |z| = e^d."""
        m = self._sides.get(k)
        if m is None:
            m = _rotation(-(2 * k + 1), self.n_sides, turn=-1)
            self._sides[k] = m
        return m

    def _centers(self):
        """Centres s_k(i) of the tiles across each side, as (x, y, 1/y)."""

        def compute():
            out = []
            for k in range(self.n_sides):
                c = self.gens[self.side_letter[k]].act(acb(0, 1))
                out.append((c.real, c.imag, 1 / c.imag))
            return out

        return self._center_lazy.get(compute)

    def outside_side(self, z: acb, k: int) -> bool:
        """Certified test that z lies strictly beyond side k of the polygon.

        Sides are perpendicular bisectors between i and the neighbouring
        centres, so z is beyond side k iff it is closer to that centre.
        """
        return self._outside_flags(z, (k,))[0]

    def _outside_flags(self, z: acb, ks) -> List[bool]:
        x, y = z.real, z.imag
        home = x * x + (y - 1) * (y - 1)
        out = []
        for k in ks:
            cx, cy, inv = self._centers()[k]
            v = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) * inv - home
            if v < 0:
                out.append(True)
            elif v > 0:
                out.append(False)
            else:
                raise PrecisionExhausted("point near a polygon side")
        return out

    def reduce_point(self, z: acb, limit: int = 10000) -> Tuple[Tuple[int, ...], acb]:
        """Greedy Dirichlet reduction of z into the polygon.

        Returns the tile word (z lies in word * P) and the reduced point.
        Every side must be decided so the result is precision independent.
        """
        word: List[int] = []
        for _ in range(limit):
            flags = self._outside_flags(z, range(self.n_sides))
            try:
                k = flags.index(True)
            except ValueError:
                return tuple(word), z
            s = self.side_letter[k]
            word.append(s)
            z = self.gens[-s].act(z)
        raise ResourceCapExceeded("point reduction did not terminate")

    @escalating
    def _nf_at_precision(self, letters: Tuple[int, ...]) -> Tuple[int, ...]:
        z = self.apply(GroupWord(letters), self.basepoint_value())
        return self.reduce_point(z)[0]

    def nf(self, w: GroupWord) -> Tuple[int, ...]:
        """Canonical tile word of the element: the tile containing w*O."""
        if self.kind is Kind.Punctured:
            return w.letters
        res = self._nf_cache.get(w.letters)
        if res is None:
            res = self._nf_at_precision(w.letters)
            self._nf_cache[w.letters] = res
        return res

    def normal_form(self, w: GroupWord) -> GroupWord:
        return GroupWord(self.nf(w))

    # word problem ---------------------------------------------------------

    def _rotations(self) -> List[Tuple[int, ...]]:
        r = self.relator.letters
        ri = tuple(-x for x in reversed(r))
        out = []
        for base in (r, ri):
            for s in range(len(base)):
                out.append(base[s:] + base[:s])
        return out

    def _make_dehn_table(self) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
        n = len(self.relator)
        half = n // 2
        table = {}
        for rot in self._rotations():
            for ln in range(half + 1, n + 1):
                u, v = rot[:ln], rot[ln:]
                table[u] = tuple(-x for x in reversed(v))
        return table

    def dehn_reduce(self, w: GroupWord) -> GroupWord:
        if self.kind is Kind.Punctured:
            return GroupWord(w.letters)
        n = len(self.relator)
        half = n // 2
        letters = list(free_reduce(w.letters))
        changed = True
        while changed:
            changed = False
            for i in range(len(letters)):
                for ln in range(min(n, len(letters) - i), half, -1):
                    rep = self._dehn_table.get(tuple(letters[i:i + ln]))
                    if rep is not None:
                        letters[i:i + ln] = rep
                        letters = list(free_reduce(letters))
                        changed = True
                        break
                if changed:
                    break
        return GroupWord(letters)

    def is_identity(self, w: GroupWord) -> bool:
        return not self.dehn_reduce(w).letters

    def equal(self, w1: GroupWord, w2: GroupWord) -> bool:
        return self.is_identity(w1 * w2.inverse())

    def commute(self, w1: GroupWord, w2: GroupWord) -> bool:
        return self.is_identity(w1 * w2 * w1.inverse() * w2.inverse())

    def cyclic_dehn_reduce(self, letters: Sequence[int]) -> Tuple[int, ...]:
        """Dehn reduction of a cyclic word; the result is a cyclic word."""
        w = cyclic_free_reduce(letters)
        if self.kind is Kind.Punctured:
            return w
        n = len(self.relator)
        half = n // 2
        changed = True
        while changed and w:
            changed = False
            L = len(w)
            ww = w + w
            for i in range(L):
                for ln in range(min(n, L), half, -1):
                    rep = self._dehn_table.get(ww[i:i + ln])
                    if rep is not None:
                        rotated = ww[i:i + L]
                        w = cyclic_free_reduce(rep + rotated[ln:])
                        changed = True
                        break
                if changed:
                    break
        return w


def _word_product(gens: Dict[int, MobiusMap], letters: Sequence[int]) -> MobiusMap:
    one, zero = arb(1), arb(0)
    a, b, c, d = one, zero, zero, one
    for x in letters:
        if x > 0:
            e, f, g, h = gens[x].entries()
        else:
            h, f, g, e = gens[-x].entries()
            f, g = -f, -g
        a, b, c, d = a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h
    return MobiusMap(("fn", lambda: (a, b, c, d)))


def cyclic_free_reduce(letters: Sequence[int]) -> Tuple[int, ...]:
    w = list(free_reduce(letters))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def build_group(p: int, kind: Kind = Kind.Closed) -> SurfaceGroup:
    if isinstance(kind, str):
        kind = Kind(kind.lower())
    if not isinstance(p, int) or p < 2:
        raise ValueError("genus must be an integer >= 2")
    return SurfaceGroup(p, kind)


def dehn_reduce(w: GroupWord, grp: SurfaceGroup) -> GroupWord:
    return grp.dehn_reduce(w)


def matrix(w: GroupWord, grp: SurfaceGroup) -> MobiusMap:
    return grp.matrix(w)


def all_letters(grp: SurfaceGroup) -> List[int]:
    return sorted([x for g in range(1, grp.rank + 1) for x in (g, -g)], key=letter_key)


def enumerate_words(grp: SurfaceGroup, maxlen: int, cap: int = 2_000_000) -> Iterator[GroupWord]:
    """One shortlex-geodesic representative per element of length <= maxlen."""
    if maxlen < 0:
        return
    letters = all_letters(grp)
    seen: Dict[Tuple[int, ...], GroupWord] = {(): GroupWord()}
    yield GroupWord()
    frontier = [GroupWord()]
    count = 1
    for _ in range(maxlen):
        nxt = []
        for u in frontier:
            for x in letters:
                if u.letters and u.letters[-1] == -x:
                    continue
                w = GroupWord(u.letters + (x,))
                key = grp.nf(w)
                other = seen.get(key)
                if other is not None:
                    if not grp.equal(w, other):
                        raise RuntimeError(f"normal form collision between {w} and {other}")
                    continue
                seen[key] = w
                nxt.append(w)
                count += 1
                if count > cap:
                    raise ResourceCapExceeded("enumeration cap exceeded")
                yield w
        frontier = nxt


enumerate = enumerate_words  # noqa: A001 - public name used by callers


class ConjugacyClass:
    __slots__ = ("representative", "root", "power")

    def __init__(self, representative: GroupWord, root: GroupWord, power: int):
        self.representative = representative
        self.root = root
        self.power = power

    def __eq__(self, other):
        return isinstance(other, ConjugacyClass) and self.representative == other.representative

    def __hash__(self):
        return hash(self.representative)

    def __repr__(self):
        return f"ConjugacyClass({self.representative}, root={self.root}, power={self.power})"


def _canonical_rotation(w: Tuple[int, ...]) -> Tuple[int, ...]:
    inv = tuple(-x for x in reversed(w))
    best = None
    for base in (w, inv):
        for s in range(len(base)):
            rot = base[s:] + base[:s]
            key = tuple(letter_key(x) for x in rot)
            if best is None or key < best[0]:
                best = (key, rot)
    return best[1]


def _period(w: Tuple[int, ...]) -> int:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return d
    return n


def conjugacy_class(w: GroupWord, grp: SurfaceGroup) -> ConjugacyClass:
    cyc = grp.cyclic_dehn_reduce(w.letters)
    if not cyc:
        raise IdentityWord(str(w))
    rep = _canonical_rotation(cyc)
    per = _period(rep)
    root, power = GroupWord(rep[:per]), len(rep) // per
    if not grp.equal(root ** power, GroupWord(rep)):
        raise RuntimeError("root validation failed")
    return ConjugacyClass(GroupWord(rep), root, power)
