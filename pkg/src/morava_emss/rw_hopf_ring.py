"""The Hopf ring of Morava K-theory of mod-p Eilenberg-Mac Lane spaces.

For an odd prime p and height n, the K(n)-homology of the spaces
K(Z/p, m) is a Hopf ring generated by circle-product classes a^I indexed
by multi-indices I over {0,1}.  As a star-algebra it is

    (tensor over I, i_0 = 0, of  P_{t_1(I)+1}(a^I))  tensor  R(a^{1...1}),

with the degree-zero component block generated by [1]-[0] = a^{0...0}.
Classes a^I with i_0 = 1 (other than the top index) are signed p-th
star-power aliases of generators.  Each weight-m slice K(n)_*(K(Z/p,m))
is a finite coalgebra whose coproduct is block-diagonal with one
divided-power block per index I with i_0 = 1 and Sum I = m, of height
t_0(I)+1; the divided-power basis class in position p^k of block I is
exactly a^{unshift(I,k)}.

Classes are kept in "atom" form: a star monomial is a sorted tuple of
(index, exponent) with 1 <= exponent < p, one factor per index.  Exact
star products, Frobenius, and Verschiebung go through the generator
normal form; the circle product works on atoms by support-disjoint index
addition plus the Hopf ring distributivity law.  Internal degrees are
residues mod 2(p^n - 1); all classes sit in even degree, so no Koszul
signs arise inside a slice.
"""

from __future__ import annotations

from math import comb

from .graded_hopf import GeneratorSpec, HopfPresentation
from .multi_index import MultiIndex, all_indices, leading_ones, zero_index


class CircleOverlapError(ValueError):
    """Circle product outside the reduction table (overlapping support)."""


class NormalizeError(ValueError):
    pass


def _factorial_mod(k: int, p: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out = out * i % p
    return out


class RWGenerator:
    """One star-algebra generator of the Hopf ring."""

    __slots__ = ("index", "kind", "height", "degree", "raw_degree", "name")

    def __init__(self, index: MultiIndex, kind: str, height: int, degree: int,
                 raw_degree: int):
        self.index = index
        self.kind = kind          # "truncated" | "r_u" | "component"
        self.height = height      # exponent bound is p**height
        self.degree = degree
        self.raw_degree = raw_degree
        self.name = f"a^{{{index}}}"

    def __repr__(self):
        return f"RWGenerator({self.name}, {self.kind}, h={self.height})"


class HopfRing:
    def __init__(self, p: int, n: int):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.p = p
        self.n = n
        self.period = 2 * (p ** n - 1)
        self.top = leading_ones(n, n)
        self.generators: dict[MultiIndex, RWGenerator] = {}
        for I in all_indices(n):
            raw = self.raw_degree(I)
            if I == self.top:
                self.generators[I] = RWGenerator(I, "r_u", 1, raw % self.period, raw)
            elif I.bits[0] == 0:
                kind = "component" if I.weight == 0 else "truncated"
                h = I.trailing_count(1) + 1
                self.generators[I] = RWGenerator(I, kind, h, raw % self.period, raw)
        self._slices: dict[int, SliceCoalgebra] = {}

    # -- index bookkeeping ------------------------------------------------------

    def raw_degree(self, I: MultiIndex) -> int:
        return sum(b * 2 * self.p ** v for v, b in enumerate(I.bits))

    def degree(self, I: MultiIndex) -> int:
        return self.raw_degree(I) % self.period

    def generator_table(self, m: int | None = None) -> list[RWGenerator]:
        gens = sorted(self.generators.values(), key=lambda g: g.index.bits)
        if m is None:
            return gens
        return [g for g in gens if g.index.weight == m]

    def normalize(self, I: MultiIndex):
        """Express a^I with i_0 = 1, I != (1,...,1) as a signed generator power.

        Returns (sign, c^m I, m) with m the number of leading ones,
        meaning a^I = sign * (a^{c^m I})^{* p^m}.
        """
        if I.n != self.n:
            raise ValueError("index length mismatch")
        if I == self.top:
            raise NormalizeError(f"a^{{{I}}} is the R_u generator")
        if I.bits[0] == 0:
            raise NormalizeError(f"a^{{{I}}} is already a generator")
        m = I.leading(1)
        sign = -1 if (m * I.weight) % 2 else 1
        return sign, I.cyclic(m), m

    def class_normal_form(self, I: MultiIndex):
        """(sign, generator index, star exponent) for the class a^I."""
        if I == self.top or I.bits[0] == 0:
            return 1, I, 1
        sign, gen, m = self.normalize(I)
        return sign, gen, self.p ** m

    def atom_for_digit(self, G: MultiIndex, j: int) -> MultiIndex:
        """The index X with a^X = +/- (a^G)^{* p^j}, for a generator G."""
        if j == 0:
            return G
        gen = self.generators[G]
        if gen.kind == "r_u":
            return G  # x^p = x
        if j >= gen.height:
            raise ValueError("digit beyond truncation height")
        return G.cyclic(-j % G.n)

    # -- atom monomials -----------------------------------------------------------
    #
    # An atom monomial is a sorted tuple of (index, exponent), exponents in
    # 1..p-1, one factor per index; the empty monomial is the slice unit
    # [0].  A class is {atom monomial: coefficient}.

    def mono_weight(self, mono) -> int | None:
        if not mono:
            return None
        weights = {X.weight for X, _ in mono}
        if len(weights) != 1:
            raise ValueError(f"mixed-slice star monomial {mono}")
        return weights.pop()

    def mono_raw_degree(self, mono) -> int:
        return sum(e * self.raw_degree(X) for X, e in mono)

    def _atoms_to_nf(self, mono):
        """(sign, {generator: exponent}) with exact truncation, or None if zero."""
        sign = 1
        exps: dict[MultiIndex, int] = {}
        for X, e in mono:
            s, G, base = self.class_normal_form(X)
            if s == -1 and e % 2:
                sign = -sign
            exps[G] = exps.get(G, 0) + base * e
        for G in list(exps):
            gen = self.generators[G]
            e = exps[G]
            if gen.kind == "r_u":
                if e >= self.p:
                    e = (e - 1) % (self.p - 1) + 1
                    exps[G] = e
                continue
            if e >= self.p ** gen.height:
                return None
            exps[G] = e
        return sign, exps

    def _nf_to_atoms(self, exps: dict):
        """(sign, atom monomial) from exact generator exponents."""
        sign = 1
        atoms = []
        for G, e in exps.items():
            if not e:
                continue
            j = 0
            while e:
                d = e % self.p
                e //= self.p
                if d:
                    X = self.atom_for_digit(G, j)
                    s, _, _ = self.class_normal_form(X)
                    if s == -1 and d % 2:
                        sign = -sign
                    atoms.append((X, d))
                j += 1
        atoms.sort(key=lambda t: t[0].bits)
        return sign, tuple(atoms)

    def star_mul_mono(self, m1, m2):
        """Exact star product of atom monomials: (coeff, monomial) or None."""
        joined = {}
        for X, e in m1 + m2:
            joined[X] = joined.get(X, 0) + e
        sign = 1
        mono = tuple(sorted(joined.items(), key=lambda t: t[0].bits))
        nf = self._atoms_to_nf(mono)
        if nf is None:
            return None
        s1, exps = nf
        s2, atoms = self._nf_to_atoms(exps)
        return (s1 * s2 * sign) % self.p, atoms

    def star_mul(self, c1: dict, c2: dict) -> dict:
        out: dict = {}
        for m1, a1 in c1.items():
            for m2, a2 in c2.items():
                term = self.star_mul_mono(m1, m2)
                if term is None:
                    continue
                c, m = term
                v = (out.get(m, 0) + a1 * a2 * c) % self.p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def class_of_index(self, I: MultiIndex) -> dict:
        """The class a^I (an atom)."""
        if I.n != self.n:
            raise ValueError("index length mismatch")
        return {((I, 1),): 1}

    def one(self) -> dict:
        """[1] = [0] + a^{0...0}, the circle unit."""
        return {(): 1, ((zero_index(self.n), 1),): 1}

    def frobenius(self, cls: dict) -> dict:
        """p-th star power (c^p = c on coefficients)."""
        out: dict = {}
        for mono, c in cls.items():
            nf = self._atoms_to_nf(mono)
            if nf is None:
                continue
            sign, exps = nf
            dead = False
            new: dict = {}
            for G, e in exps.items():
                gen = self.generators[G]
                if gen.kind == "r_u":
                    new[G] = e  # x^{pe} = (x^p)^e = x^e
                    continue
                if self.p * e >= self.p ** gen.height:
                    dead = True
                    break
                new[G] = self.p * e
            if dead:
                continue
            s2, atoms = self._nf_to_atoms(new)
            v = (out.get(atoms, 0) + c * sign * s2) % self.p
            if v:
                out[atoms] = v
            else:
                out.pop(atoms, None)
        return out

    def verschiebung(self, cls: dict) -> dict:
        """V, multiplicative on monomials; V(a^X) = a^{sX} for atoms with x_0 = 0."""
        out: dict = {}
        for mono, c in cls.items():
            acc = {(): c % self.p}
            for X, e in mono:
                if X.bits[0] == 1:
                    acc = {}
                    break
                piece = {((X.shift(), 1),): 1} if X.weight else {((X, 1),): 1}
                powered = {(): 1}
                for _ in range(e):
                    powered = self.star_mul(powered, piece)
                acc = self.star_mul(acc, powered)
            for m2, c2 in acc.items():
                v = (out.get(m2, 0) + c2) % self.p
                if v:
                    out[m2] = v
                else:
                    out.pop(m2, None)
        return out

    # -- slices ---------------------------------------------------------------

    def slice(self, m: int) -> "SliceCoalgebra":
        if m < 0:
            raise ValueError("slice must be nonnegative")
        if m not in self._slices:
            self._slices[m] = SliceCoalgebra(self, m)
        return self._slices[m]

    # -- circle products --------------------------------------------------------

    def circle(self, c1: dict, m1: int, c2: dict, m2: int) -> dict:
        """Circle product of classes in slices m1 and m2, landing in m1 + m2."""
        out: dict = {}
        for mono1, a1 in c1.items():
            for mono2, a2 in c2.items():
                for m, c in self._circle_mono(mono1, m1, mono2, m2).items():
                    v = (out.get(m, 0) + a1 * a2 * c) % self.p
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return out

    @staticmethod
    def _is_atomic(mono) -> bool:
        return len(mono) == 1 and mono[0][1] == 1

    def _circle_mono(self, mono1, m1: int, mono2, m2: int) -> dict:
        # [0] o x = counit(x) [0]
        if not mono1:
            return {(): 1} if not mono2 else {}
        if not mono2:
            return {}
        if self._is_atomic(mono1) and self._is_atomic(mono2):
            X, Y = mono1[0][0], mono2[0][0]
            try:
                total = X + Y
            except ValueError:
                raise CircleOverlapError(
                    f"unsupported overlap: a^{{{X}}} o a^{{{Y}}}"
                ) from None
            return self.class_of_index(total)
        # All slice degrees are even, so the circle product commutes on the nose.
        if not self._is_atomic(mono2):
            # x o (f * rest) = sum (x' o f) * (x'' o rest) over Psi(x)
            factors = []
            for X, e in mono2:
                factors.extend([(X, 1)] * e)
            f = (factors[0],)
            rest = self._mono_from_factors(factors[1:])
            if not rest:
                return {}
            sl1 = self.slice(m1)
            result: dict = {}
            for (left, right), c in sl1.coproduct_class(mono1).items():
                part1 = self.circle({left: 1}, m1, {f: 1}, m2)
                if not part1:
                    continue
                part2 = self.circle({right: 1}, m1, rest, m2)
                if not part2:
                    continue
                for mm, cc in self.star_mul(part1, part2).items():
                    v = (result.get(mm, 0) + c * cc) % self.p
                    if v:
                        result[mm] = v
                    else:
                        result.pop(mm, None)
            return result
        return self._circle_mono(mono2, m2, mono1, m1)

    def _mono_from_factors(self, factors) -> dict:
        cls = {(): 1}
        for X, e in factors:
            cls = self.star_mul(cls, {((X, e),): 1})
        return cls

    # -- p-fold coproduct decision ------------------------------------------------

    def psi_p_reduced(self, I: MultiIndex):
        """Reduced p-fold coproduct of the class a^I.

        Returns ("zero",) when i_0 = 1, else
        ("power", sI, leading_coeff, decomposables): the leading term is
        leading_coeff * (a^{sI})^{(x) p}, decomposables the word-element
        remainder.
        """
        sl = self.slice(I.weight)
        el = sl.to_basis_element(self.class_of_index(I))
        words = {(mono,): c for mono, c in el.items()}
        for _ in range(self.p - 1):
            words = _expand_first_slot(sl.presentation, words)
            if not words:
                return ("zero",)
        shifted = I.shift()
        lead_el = sl.to_basis_element(self.class_of_index(shifted))
        if len(lead_el) != 1:
            raise AssertionError("shifted class is not a basis multiple")
        (lead_mono, lead_c), = lead_el.items()
        diag = (lead_mono,) * self.p
        lead_coeff = 0
        rest: dict = {}
        for word, c in words.items():
            if word == diag:
                lead_coeff = c * pow(lead_c, -self.p, self.p) % self.p
            else:
                rest[word] = c
        if lead_coeff == 0:
            raise AssertionError("missing leading term in p-fold coproduct")
        return ("power", shifted, lead_coeff, rest)


def _expand_first_slot(pres: HopfPresentation, words: dict) -> dict:
    """Apply the reduced coproduct to slot 0 of each word."""
    out: dict = {}
    for word, c in words.items():
        head, tail = word[0], word[1:]
        for (a, b), v in pres.reduced_coproduct_mono(head).items():
            key = (a, b) + tail
            w = (out.get(key, 0) + c * v) % pres.p
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


class SliceCoalgebra:
    """The coalgebra K(n)_*(K(Z/p, m)) with its star-algebra dictionary.

    ``presentation`` carries the exact coproduct on the block basis; the
    dictionary maps atom monomials to scalar multiples of basis monomials
    bijectively.  Star products of slice classes are exact at the atom
    layer, not on the block basis.
    """

    def __init__(self, ring: HopfRing, m: int):
        self.ring = ring
        self.m = m
        p, n = ring.p, ring.n
        if m == 0:
            self.blocks = [zero_index(n)]
            gens = [GeneratorSpec(f"a^{{{self.blocks[0]}}}", 0, "truncated", 1,
                                  coproduct="group_like_minus_unit")]
            self._block_styles = ["binomial"]
            self._block_heights = [1]
        elif m <= n:
            self.blocks = sorted(
                (I for I in all_indices(n) if I.bits[0] == 1 and I.weight == m),
                key=lambda I: I.bits,
            )
            gens = []
            self._block_heights = []
            for I in self.blocks:
                h = I.trailing_count(0) + 1
                self._block_heights.append(h)
                gens.append(GeneratorSpec(
                    f"a^{{{I}}}", ring.degree(I), "divided_power_truncated", h))
            self._block_styles = ["divided"] * len(self.blocks)
        else:
            self.blocks = []
            gens = []
            self._block_styles = []
            self._block_heights = []
        self.presentation = HopfPresentation(p, gens, period=ring.period)
        self.rank = self.presentation.rank()
        self.algebra_generators = ring.generator_table(m)
        self._build_atom_maps()
        self._coproduct_class_cache: dict = {}
        expected = p ** comb(n, m) if m <= n else 1
        if self.rank != expected:
            raise AssertionError(
                f"slice rank {self.rank} != p^binom(n,m) = {expected}")

    def _build_atom_maps(self):
        """Position the slice atoms a^{unshift(I,k)} inside the blocks.

        Also checks that the atoms cover the generator digit positions
        (G, j), j < height(G), bijectively: the two truncation counts of
        the presentation agree.
        """
        ring = self.ring
        self._atom_pos: dict[MultiIndex, tuple[int, int]] = {}
        covered = set()
        for bi, I in enumerate(self.blocks):
            for ordpos in range(self._block_heights[bi]):
                X = I.unshift(ordpos)
                if X in self._atom_pos:
                    raise AssertionError("atom collision in slice dictionary")
                self._atom_pos[X] = (bi, ordpos)
                sign, G, e = ring.class_normal_form(X)
                j = 0
                while ring.p ** j < e:
                    j += 1
                if ring.p ** j != e:
                    raise AssertionError("normal form exponent is not a p-power")
                covered.add((G, j))
        expected = {
            (g.index, j)
            for g in self.algebra_generators
            for j in range(g.height)
        }
        if covered != expected:
            raise AssertionError("slice dictionary does not cover generator digits")

    # -- dictionary ------------------------------------------------------------

    def atom_position(self, X: MultiIndex):
        pos = self._atom_pos.get(X)
        if pos is None:
            raise ValueError(f"a^{{{X}}} is not an atom of slice {self.m}")
        return pos

    def star_mono_to_basis(self, mono):
        """(coefficient, presentation monomial): mono = coeff * basis class."""
        p = self.ring.p
        coeff = 1
        jvals = [0] * len(self.blocks)
        for X, e in mono:
            if X.weight != self.m:
                raise ValueError("star monomial is not in this slice")
            if not 1 <= e < p:
                # exponent carries: renormalize through the atom layer
                raise ValueError("atom exponent out of digit range")
            bi, ordpos = self.atom_position(X)
            jvals[bi] += e * p ** ordpos
            if self._block_styles[bi] == "divided":
                coeff = coeff * _factorial_mod(e, p)
        return coeff % p, tuple(jvals)

    def basis_mono_to_star(self, mono):
        """(coefficient, atom monomial) inverse to star_mono_to_basis."""
        p = self.ring.p
        coeff = 1
        atoms = []
        for bi, j in enumerate(mono):
            I = self.blocks[bi]
            rem, ordpos = j, 0
            while rem:
                d = rem % p
                rem //= p
                if d:
                    atoms.append((I.unshift(ordpos), d))
                    if self._block_styles[bi] == "divided":
                        coeff = coeff * pow(_factorial_mod(d, p), -1, p)
                ordpos += 1
        atoms.sort(key=lambda t: t[0].bits)
        return coeff % p, tuple(atoms)

    def to_basis_element(self, cls: dict) -> dict:
        out: dict = {}
        for mono, c in cls.items():
            coeff, bm = self.star_mono_to_basis(mono)
            v = (out.get(bm, 0) + c * coeff) % self.ring.p
            if v:
                out[bm] = v
            else:
                out.pop(bm, None)
        return out

    def from_basis_element(self, el: dict) -> dict:
        out: dict = {}
        for mono, c in el.items():
            coeff, star = self.basis_mono_to_star(mono)
            v = (out.get(star, 0) + c * coeff) % self.ring.p
            if v:
                out[star] = v
            else:
                out.pop(star, None)
        return out

    def coproduct_class(self, mono) -> dict:
        """Psi of an atom monomial as {(left atoms, right atoms): coeff}."""
        if mono in self._coproduct_class_cache:
            return self._coproduct_class_cache[mono]
        lam, bm = self.star_mono_to_basis(mono)
        seen: dict = {}
        for (lm, rm), c in self.presentation.coproduct_mono(bm).items():
            mul, ls = self.basis_mono_to_star(lm)
            mur, rs = self.basis_mono_to_star(rm)
            key = (ls, rs)
            v = (seen.get(key, 0) + lam * c * mul * mur) % self.ring.p
            if v:
                seen[key] = v
            else:
                seen.pop(key, None)
        self._coproduct_class_cache[mono] = seen
        return seen


def hopf_ring(p: int, n: int) -> HopfRing:
    return HopfRing(p, n)


def presentation(p: int, n: int) -> list[RWGenerator]:
    """The full generator table: one entry per star-algebra generator."""
    return hopf_ring(p, n).generator_table()


def normalize(p: int, n: int, I: MultiIndex):
    return hopf_ring(p, n).normalize(I)


def slice_coalgebra(p: int, n: int, m: int) -> SliceCoalgebra:
    return hopf_ring(p, n).slice(m)


def slice_rank(p: int, n: int, m: int) -> int:
    return slice_coalgebra(p, n, m).rank
