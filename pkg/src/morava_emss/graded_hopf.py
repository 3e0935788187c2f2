"""Finite-type graded Hopf algebras over F_p presented by generators.

Supported one-generator building blocks (tensored freely):

* ``polynomial``                 P(x):   polynomial algebra, binomial coproduct
* ``truncated`` (height k)       P_k(x): P(x)/(x^{p^k})
* ``divided_power``              G(x):   divided power algebra, tensor coproduct
* ``divided_power_truncated``    G_k(x): sub-coalgebra on x_i, i < p^k
* ``exterior``                   L(y):   exterior on a primitive generator
* ``r_u``                        R(x):   P(x)/(x^p - x), x primitive (unit u = 1)

A generator may override its coproduct with the rule
``group_like_minus_unit`` (x = g - 1 for a group-like g), used by the
degree-zero component block of the Hopf ring.

Degrees are internal degrees; in periodic mode they are residues mod an
even period, and parities are read off the stored degree (folding by an
even period preserves parity).  Koszul signs follow
(a x b)(c x d) = (-1)^{|b||c|} (ac x bd).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

KINDS = (
    "polynomial",
    "truncated",
    "divided_power",
    "divided_power_truncated",
    "exterior",
    "r_u",
)
_TRUNCATED_KINDS = ("truncated", "divided_power_truncated")
_BINOMIAL_KINDS = ("polynomial", "truncated", "r_u")
_DIVIDED_KINDS = ("divided_power", "divided_power_truncated")


class InfiniteBasisError(ValueError):
    """Raised when a degree slice of the basis is not finite."""


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    kind: str
    height: int | None = None
    coproduct: str = "auto"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind in _TRUNCATED_KINDS:
            if self.height is None or self.height < 1:
                raise ValueError(f"invalid height {self.height!r} for {self.kind}")
        elif self.height is not None:
            raise ValueError(f"kind {self.kind} takes no height")
        if self.degree < 0:
            raise ValueError("generator degree must be nonnegative")
        if self.coproduct not in ("auto", "group_like_minus_unit"):
            raise ValueError(f"unknown coproduct rule {self.coproduct!r}")
        if self.coproduct == "group_like_minus_unit" and self.kind not in _BINOMIAL_KINDS:
            raise ValueError("group_like_minus_unit needs a binomial-basis kind")

    def exponent_bound(self, p: int) -> int | None:
        """Exclusive exponent bound, or None for an unbounded generator."""
        if self.kind in _TRUNCATED_KINDS:
            return p ** self.height
        if self.kind == "exterior":
            return 2
        if self.kind == "r_u":
            return p
        return None


def _check_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"p must be an odd prime, got {p}")
        d += 2


class HopfPresentation:
    """A graded Hopf algebra over F_p given by a list of generators.

    Elements are plain dicts {monomial: coefficient}; a monomial is a
    tuple of exponents aligned with the generator list.
    """

    def __init__(self, p: int, generators, period: int | None = None):
        _check_odd_prime(p)
        if period is not None and (period <= 0 or period % 2):
            raise ValueError("period must be a positive even integer")
        self.p = p
        self.period = period
        self.generators = tuple(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for g in self.generators:
            if g.kind == "exterior" and period is None and g.degree % 2 == 0:
                raise ValueError(
                    f"exterior generator {g.name} needs odd degree outside periodic mode"
                )
            if g.kind == "r_u":
                if period is None:
                    if g.degree != 0:
                        raise ValueError("r_u generator needs periodic mode")
                elif ((self.p - 1) * g.degree) % period:
                    raise ValueError("r_u degree incompatible with the period")
            if g.exponent_bound(p) is None and g.degree == 0:
                raise ValueError(f"unbounded degree-zero generator {g.name}")
        self._coproduct_cache: dict = {}
        self._basis_cache: dict = {}
        self._all_monomials = None

    # -- degrees -----------------------------------------------------------

    def fold(self, d: int) -> int:
        return d % self.period if self.period is not None else d

    def mono_degree(self, mono) -> int:
        return self.fold(sum(e * g.degree for e, g in zip(mono, self.generators)))

    def mono_parity(self, mono) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.generators)) % 2

    def unit(self):
        return (0,) * len(self.generators)

    def is_finite(self) -> bool:
        return all(g.exponent_bound(self.p) is not None for g in self.generators)

    def rank(self) -> int:
        if not self.is_finite():
            raise InfiniteBasisError("presentation has unbounded generators")
        r = 1
        for g in self.generators:
            r *= g.exponent_bound(self.p)
        return r

    # -- bases -------------------------------------------------------------

    def all_monomials(self):
        if self._all_monomials is None:
            if not self.is_finite():
                raise InfiniteBasisError("presentation has unbounded generators")
            monos = [()]
            for g in self.generators:
                bound = g.exponent_bound(self.p)
                monos = [m + (e,) for m in monos for e in range(bound)]
            self._all_monomials = sorted(monos)
        return self._all_monomials

    def basis_in_degree(self, d: int):
        """Complete, duplicate-free, sorted monomial basis in internal degree d."""
        key = d
        if key in self._basis_cache:
            return self._basis_cache[key]
        if self.period is not None:
            if not self.is_finite():
                raise InfiniteBasisError(
                    "periodic mode folds infinitely many monomials into each degree"
                )
            d %= self.period
            result = [m for m in self.all_monomials() if self.mono_degree(m) == d]
        else:
            result = sorted(self._basis_unperiodic(d))
        self._basis_cache[key] = result
        return result

    def _basis_unperiodic(self, d: int):
        if d < 0:
            return
        gens = self.generators

        def rec(i, remaining, prefix):
            if i == len(gens):
                if remaining == 0:
                    yield tuple(prefix)
                return
            g = gens[i]
            bound = g.exponent_bound(self.p)
            if g.degree == 0:
                top = bound
            else:
                top = remaining // g.degree + 1
                if bound is not None:
                    top = min(top, bound)
            for e in range(top):
                rest = remaining - e * g.degree
                if rest < 0:
                    break
                prefix.append(e)
                yield from rec(i + 1, rest, prefix)
                prefix.pop()

        yield from rec(0, d, [])

    # -- algebra structure ---------------------------------------------------

    def _gen_product(self, g: GeneratorSpec, e: int, f: int):
        """(coefficient, exponent) for x^e * x^f in the block of g, or None."""
        p = self.p
        if e == 0:
            return (1, f)
        if f == 0:
            return (1, e)
        if g.kind == "exterior":
            return None
        s = e + f
        bound = g.exponent_bound(p)
        if g.kind == "r_u":
            if s < p:
                return (1, s)
            return (1, s - p + 1)
        if g.kind in _DIVIDED_KINDS:
            if bound is not None and s >= bound:
                return None
            c = comb(s, e) % p
            return (c, s) if c else None
        if bound is not None and s >= bound:
            return None
        return (1, s)

    def mono_mul(self, m1, m2):
        """Product of two basis monomials as an element (at most one term)."""
        coeff = 1
        out = []
        sign_exp = 0
        suffix_parity = 0
        parities1 = [e * g.degree % 2 for e, g in zip(m1, self.generators)]
        for i in range(len(self.generators) - 1, -1, -1):
            e2 = m2[i]
            if e2:
                sign_exp += (e2 * self.generators[i].degree % 2) * suffix_parity
            suffix_parity = (suffix_parity + parities1[i]) % 2
        for g, e, f in zip(self.generators, m1, m2):
            term = self._gen_product(g, e, f)
            if term is None:
                return {}
            c, s = term
            coeff = coeff * c % self.p
            out.append(s)
        if sign_exp % 2:
            coeff = (-coeff) % self.p
        return {tuple(out): coeff} if coeff else {}

    def el_mul(self, e1: dict, e2: dict) -> dict:
        out: dict = {}
        for m1, c1 in e1.items():
            for m2, c2 in e2.items():
                for m, c in self.mono_mul(m1, m2).items():
                    v = (out.get(m, 0) + c1 * c2 * c) % self.p
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return out

    def el_add(self, e1: dict, e2: dict) -> dict:
        out = dict(e1)
        for m, c in e2.items():
            v = (out.get(m, 0) + c) % self.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def el_scale(self, c: int, e: dict) -> dict:
        c %= self.p
        if not c:
            return {}
        return {m: (c * v) % self.p for m, v in e.items()}

    # -- coalgebra structure ---------------------------------------------------

    def _gen_coproduct(self, gi: int, e: int):
        """Coproduct of the e-th basis element in block gi: [(coeff, a, b)]."""
        g = self.generators[gi]
        p = self.p
        if e == 0:
            return [(1, 0, 0)]
        if g.coproduct == "group_like_minus_unit":
            bound = g.exponent_bound(p)
            out = []
            for a in range(min(e, bound - 1) + 1):
                for b in range(min(e, bound - 1) + 1):
                    c = 0
                    for j in range(max(a, b), e + 1):
                        c += comb(e, j) * (-1) ** (e - j) * comb(j, a) * comb(j, b)
                    c %= p
                    if c:
                        out.append((c, a, b))
            return out
        if g.kind == "exterior":
            return [(1, 1, 0), (1, 0, 1)]
        if g.kind in _DIVIDED_KINDS:
            return [(1, e - j, j) for j in range(e + 1)]
        out = []
        for j in range(e + 1):
            c = comb(e, j) % p
            if c:
                out.append((c, j, e - j))
        return out

    def coproduct_mono(self, mono) -> dict:
        """Psi(mono) as {(left mono, right mono): coeff}, Koszul signs included."""
        if mono in self._coproduct_cache:
            return self._coproduct_cache[mono]
        p = self.p
        terms = {(self.unit(), self.unit()): 1}
        for gi, e in enumerate(mono):
            if e == 0:
                continue
            deg_par = self.generators[gi].degree % 2
            expansion = self._gen_coproduct(gi, e)
            new: dict = {}
            for (ml, mr), c0 in terms.items():
                par_r = self.mono_parity(mr)
                for c, a, b in expansion:
                    sign = -1 if (par_r * (a * deg_par)) % 2 else 1
                    nl = ml[:gi] + (a,) + ml[gi + 1:]
                    nr = mr[:gi] + (b,) + mr[gi + 1:]
                    key = (nl, nr)
                    v = (new.get(key, 0) + sign * c0 * c) % p
                    if v:
                        new[key] = v
                    else:
                        new.pop(key, None)
            terms = new
        self._coproduct_cache[mono] = terms
        return terms

    def coproduct(self, el: dict) -> dict:
        out: dict = {}
        for m, c in el.items():
            for key, v in self.coproduct_mono(m).items():
                w = (out.get(key, 0) + c * v) % self.p
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
        return out

    def reduced_coproduct_mono(self, mono) -> dict:
        """Psi(x) - x(x)1 - 1(x)x on a non-unit basis monomial."""
        unit = self.unit()
        out = dict(self.coproduct_mono(mono))
        for key in ((mono, unit), (unit, mono)):
            v = (out.get(key, 0) - 1) % self.p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return out

    def counit(self, el: dict) -> int:
        return el.get(self.unit(), 0) % self.p

    # -- Frobenius and Verschiebung ---------------------------------------------

    def frobenius(self, el: dict) -> dict:
        """p-th power map."""
        out = {self.unit(): 1}
        for _ in range(self.p):
            out = self.el_mul(out, el)
        return out

    def _gen_verschiebung(self, g: GeneratorSpec, e: int):
        """(coeff, exponent) for V on the e-th basis element, or None."""
        if e == 0:
            return (1, 0)
        if g.coproduct == "group_like_minus_unit":
            return (1, e)
        if g.kind == "exterior":
            return None
        if g.kind in _DIVIDED_KINDS:
            return (1, e // self.p) if e % self.p == 0 else None
        # binomial kinds: the symmetric part of Psi^p vanishes on x^e, e >= 1
        return None

    def verschiebung(self, el: dict) -> dict:
        out: dict = {}
        for mono, c in el.items():
            coeff = c
            image = []
            dead = False
            for g, e in zip(self.generators, mono):
                term = self._gen_verschiebung(g, e)
                if term is None:
                    dead = True
                    break
                tc, te = term
                coeff = coeff * tc % self.p
                image.append(te)
            if dead or not coeff:
                continue
            key = tuple(image)
            v = (out.get(key, 0) + coeff) % self.p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return out

    # -- constructions ---------------------------------------------------------

    def dualize(self) -> "HopfPresentation":
        """Graded dual, with product and coproduct transposed."""
        dual_gens = []
        for g in self.generators:
            if g.coproduct == "group_like_minus_unit":
                raise NotImplementedError("dual of a group-like block is not supported")
            if g.kind == "polynomial":
                kind, height = "divided_power", None
            elif g.kind == "divided_power":
                kind, height = "polynomial", None
            elif g.kind == "truncated":
                kind, height = "divided_power_truncated", g.height
            elif g.kind == "divided_power_truncated":
                kind, height = "truncated", g.height
            elif g.kind == "exterior":
                kind, height = "exterior", None
            else:  # r_u: rank-p binomial coalgebra; dual algebra is height-1 truncated
                kind, height = "truncated", 1
            dual_gens.append(GeneratorSpec(g.name + "'", g.degree, kind, height))
        return HopfPresentation(self.p, dual_gens, self.period)

    def tensor(self, other: "HopfPresentation") -> "HopfPresentation":
        if self.p != other.p or self.period != other.period:
            raise ValueError("tensor factors must share p and period")
        gens = list(self.generators)
        names = {g.name for g in gens}
        for g in other.generators:
            name = g.name
            k = 2
            while name in names:
                name = f"{g.name}_{k}"
                k += 1
            names.add(name)
            gens.append(GeneratorSpec(name, g.degree, g.kind, g.height, g.coproduct))
        return HopfPresentation(self.p, gens, self.period)

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> str:
        data = {
            "p": self.p,
            "period": self.period,
            "generators": [
                {
                    "name": g.name,
                    "degree": g.degree,
                    "kind": g.kind,
                    "height": g.height,
                    "coproduct": g.coproduct,
                }
                for g in self.generators
            ],
        }
        return json.dumps(data, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "HopfPresentation":
        data = json.loads(text)
        gens = [
            GeneratorSpec(
                g["name"], g["degree"], g["kind"], g.get("height"),
                g.get("coproduct", "auto"),
            )
            for g in data["generators"]
        ]
        return cls(data["p"], gens, data.get("period"))

    def __repr__(self):
        gens = ", ".join(
            f"{g.name}:{g.kind}" + (f"({g.height})" if g.height else "")
            for g in self.generators
        )
        return f"HopfPresentation(p={self.p}, period={self.period}, [{gens}])"


_STANDARD_KINDS = {
    "exterior": ("exterior", False),
    "polynomial": ("polynomial", False),
    "truncated": ("truncated", True),
    "divided_power": ("divided_power", False),
    "divided_power_truncated": ("divided_power_truncated", True),
    "r_u": ("r_u", False),
}


def standard(kind: str, degree: int, p: int, height: int | None = None,
             period: int | None = None, name: str = "x") -> HopfPresentation:
    """The named one-generator Hopf algebra with the usual basis conventions."""
    if kind not in _STANDARD_KINDS:
        raise ValueError(f"unknown standard kind {kind!r}")
    real_kind, needs_height = _STANDARD_KINDS[kind]
    if needs_height:
        if height is None or height < 1:
            raise ValueError(f"invalid height {height!r}")
    elif height is not None:
        raise ValueError(f"{kind} takes no height")
    gen = GeneratorSpec(name, degree, real_kind, height)
    return HopfPresentation(p, [gen], period)
