"""The Eilenberg-Moore spectral sequence of path-loop fibrations on K(Z/p, m).

Pages are bigraded-commutative algebras presented by generators: one
exterior suspension class and one polynomial cotranspotence class per
index I with i_0 = 1 and Sum I = m.  Differential rules send suspension
classes to p-power Frobenius powers of cotranspotence classes; pages
turn by extending a rule as a derivation (Leibniz with Koszul signs on
total degree t - s), taking homology per bidegree with exact F_p linear
algebra, and re-presenting the surviving generators.  The symbolic
re-presentation is asserted against the matrix homology dimensions on
the whole window at every turn.

Differentials are inputs carried by rules, not deduced from the
coalgebra; the engine checks consistency (d^2 = 0, bidegree shifts,
rank bookkeeping, representative matching) and corroborates the rules
independently through the filtration-jump search of
``discover_differential``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

from . import cobar, fp_linear
from .cobar import CobarWindow
from .fp_linear import FpMatrix
from .multi_index import MultiIndex, unit_index, zero_index
from .rw_hopf_ring import HopfRing, hopf_ring


class PageError(RuntimeError):
    pass


class RepresentativeError(RuntimeError):
    pass


class NotFoundError(RuntimeError):
    pass


@dataclass(frozen=True)
class PageGenerator:
    name: str
    s: int
    t: int
    flavor: str                  # "exterior" | "polynomial"
    bound: int | None = None     # exclusive exponent bound; None = untruncated
    index: MultiIndex | None = None
    role: str = ""               # "sigma" | "phi"

    @property
    def parity(self) -> int:
        return (self.t - self.s) % 2

    def exponent_range(self, s_cap: int):
        if self.flavor == "exterior":
            top = 2
        else:
            top = s_cap // self.s + 1
        if self.bound is not None:
            top = min(top, self.bound)
        return range(top)


@dataclass(frozen=True)
class DifferentialRule:
    page: int
    source: str
    target_coeff: int
    target: tuple                # ((generator name, exponent), ...)
    provenance: str              # "paper-4a" | "paper-4b-corrected" | "discovered"

    def describe(self) -> str:
        monos = "*".join(
            f"{name}^{e}" if e != 1 else name for name, e in self.target)
        return f"d^{self.page}({self.source}) = {monos or '0'}"


class Page:
    """One page of the spectral sequence, restricted to s <= max_s."""

    def __init__(self, r: int, p: int, period: int, generators, max_s: int):
        self.r = r
        self.p = p
        self.period = period
        self.generators = tuple(generators)
        self.max_s = max_s
        self._basis_cache: dict = {}

    def gen_position(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(name)

    def mono_bidegree(self, mono):
        s = sum(e * g.s for e, g in zip(mono, self.generators))
        t = sum(e * g.t for e, g in zip(mono, self.generators)) % self.period
        return s, t

    def mono_parity(self, mono) -> int:
        return sum(e * g.parity for e, g in zip(mono, self.generators)) % 2

    def monomials(self, s_cap: int):
        """All window monomials with s <= s_cap, grouped by bidegree."""
        if s_cap in self._basis_cache:
            return self._basis_cache[s_cap]
        table: dict = {}
        monos = [()]
        for g in self.generators:
            monos = [m + (e,) for m in monos for e in g.exponent_range(s_cap)]
        for m in monos:
            s, t = self.mono_bidegree(m)
            if s <= s_cap:
                table.setdefault((s, t), []).append(m)
        for v in table.values():
            v.sort()
        self._basis_cache[s_cap] = table
        return table

    def dims(self, s_cap: int | None = None) -> dict:
        cap = self.max_s if s_cap is None else s_cap
        return {k: len(v) for k, v in self.monomials(cap).items()}

    def total_rank(self) -> int:
        return sum(self.dims().values())

    def mono_mul(self, m1, m2):
        """(coeff, monomial) or None, with Koszul signs on total degree."""
        sign_exp = 0
        suffix = 0
        for i in range(len(self.generators) - 1, -1, -1):
            if m2[i]:
                sign_exp += (m2[i] * self.generators[i].parity) * suffix
            suffix = (suffix + m1[i] * self.generators[i].parity) % 2
        out = []
        for g, e, f in zip(self.generators, m1, m2):
            s = e + f
            if g.flavor == "exterior" and s > 1:
                return None
            if g.bound is not None and s >= g.bound:
                return None
            out.append(s)
        coeff = -1 if sign_exp % 2 else 1
        return coeff, tuple(out)

    def to_dict(self, rules=None) -> dict:
        return {
            "page": self.r,
            "generators": [
                {
                    "name": g.name,
                    "s": g.s,
                    "t": g.t,
                    "flavor": g.flavor,
                    "height": _bound_to_height(g.bound, self.p),
                }
                for g in self.generators
            ],
            "dims": [
                {"s": s, "t": t, "dim": d}
                for (s, t), d in sorted(self.dims().items())
            ],
            "rules": [
                {
                    "page": rule.page,
                    "source": rule.source,
                    "target": rule.describe().split(" = ")[1],
                    "provenance": rule.provenance,
                }
                for rule in (rules or [])
            ],
        }


def _bound_to_height(bound: int | None, p: int):
    if bound is None:
        return None
    h = 0
    while p ** h < bound:
        h += 1
    return h if p ** h == bound else bound


@dataclass
class ConvergenceReport:
    p: int
    n: int
    m: int
    max_s: int
    verdict: str                   # "N-convergent" | "non-convergent" | "inconclusive"
    N: int | None
    collapse_page: int
    support_max_s: int | None
    einfty_rank: int | None
    target_rank: int
    reason: str = ""
    einfty_dims: dict = field(default_factory=dict)
    einfty_heights: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "m": self.m,
            "max_s": self.max_s,
            "verdict": self.verdict,
            "N": self.N,
            "collapse_page": self.collapse_page,
            "support_max_s": self.support_max_s,
            "einfty_rank": self.einfty_rank,
            "target_rank": self.target_rank,
            "reason": self.reason,
            "einfty_dims": [
                {"s": s, "t": t, "dim": d}
                for (s, t), d in sorted(self.einfty_dims.items())
            ],
            "einfty_heights": dict(sorted(self.einfty_heights.items())),
        }


# -- E^2 ------------------------------------------------------------------------


def suspension_bidegree(ring: HopfRing, I: MultiIndex):
    return 1, ring.degree(I)


def cotranspotence_bidegree(ring: HopfRing, I: MultiIndex):
    """The class attached to block I sits at (2, p * deg a^{unshift(I, t_0)})."""
    K = I.unshift(I.trailing_count(0))
    return 2, (ring.p * ring.raw_degree(K)) % ring.period


def sigma_name(I: MultiIndex) -> str:
    return f"sigma(a^{{{I}}})"


def phi_name(I: MultiIndex) -> str:
    return f"phi(a^{{{I}}})"


def e2_closed_form(p: int, n: int, m: int, max_s: int) -> Page:
    """E^2 of the slice-m path-loop EMSS: one exterior suspension class and
    one polynomial cotranspotence class per coalgebra block."""
    if m < 1:
        raise ValueError("m must be at least 1")
    ring = hopf_ring(p, n)
    gens = []
    for I in ring.slice(m).blocks:
        s, t = suspension_bidegree(ring, I)
        gens.append(PageGenerator(sigma_name(I), s, t, "exterior", None, I, "sigma"))
        s, t = cotranspotence_bidegree(ring, I)
        gens.append(PageGenerator(phi_name(I), s, t, "polynomial", None, I, "phi"))
    return Page(2, p, ring.period, gens, max_s)


def e2_from_cobar(p: int, n: int, m: int, max_s: int,
                  word_cap: int | None = None) -> dict:
    """Cotor dimensions of the slice coalgebra by brute-force cobar homology."""
    sl = hopf_ring(p, n).slice(m)
    window = CobarWindow(sl.presentation, max_s, word_cap=word_cap)
    return window.cotor_dims()


# -- differential rules ------------------------------------------------------------


def rule_target_index(I: MultiIndex) -> MultiIndex:
    """The cotranspotence block hit by the suspension class of block I.

    Writing I = 1^m 0^{m'} I' (I' empty or starting with 1), the target
    is I itself when I' is empty, else I' 0 1^m 0^{m'-1}.
    """
    if I.bits[0] != 1:
        raise ValueError("sources have i_0 = 1")
    n = I.n
    mm = I.leading(1)
    rest = I.bits[mm:]
    mprime = 0
    while mprime < len(rest) and rest[mprime] == 0:
        mprime += 1
    iprime = rest[mprime:]
    if not iprime:
        return I
    return MultiIndex(iprime + (0,) + (1,) * mm + (0,) * (mprime - 1))


def rule_target_index_shift_formula(I: MultiIndex) -> MultiIndex:
    """Shift/cyclic form of the target index for sources that are not of
    the form 1^m 0^{n-m}: s^{m'} c^{m-1} s I + Delta_{n-m'}."""
    mm = I.leading(1)
    mprime = I.shift(mm).leading(0)
    base = I.shift().cyclic(mm - 1).shift(mprime)
    return base + unit_index(I.n, I.n - mprime)


def differential_rules(p: int, n: int, m: int) -> list[DifferentialRule]:
    """All differential rules for the slice-m spectral sequence.

    The suspension class of block I supports d^{2 p^{l_1(I)} - 1} with
    target the p^{l_1(I)}-th power of the cotranspotence class of
    rule_target_index(I).
    """
    ring = hopf_ring(p, n)
    rules = []
    for I in ring.slice(m).blocks:
        mm = I.leading(1)
        J = rule_target_index(I)
        is_first_kind = J == I
        page = 2 * p ** mm - 1
        exponent = p ** mm
        src_s, src_t = suspension_bidegree(ring, I)
        tgt_s, tgt_t = cotranspotence_bidegree(ring, J)
        if (src_s + page, (src_t + page - 1) % ring.period) != \
                (exponent * tgt_s, (exponent * tgt_t) % ring.period):
            raise PageError(f"rule bidegree inconsistency at source {I}")
        rules.append(DifferentialRule(
            page=page,
            source=sigma_name(I),
            target_coeff=1,
            target=((phi_name(J), exponent),),
            provenance="paper-4a" if is_first_kind else "paper-4b-corrected",
        ))
    rules.sort(key=lambda r: (r.page, r.source))
    return rules


# -- page turning -------------------------------------------------------------------


def _leibniz_matrix(page: Page, rules_by_gen: dict, s: int, t: int,
                    src_table: dict, tgt_table: dict) -> FpMatrix:
    p = page.p
    r = page.r
    src = src_table.get((s, t), [])
    tgt_key = (s + r, (t + r - 1) % page.period)
    tgt = tgt_table.get(tgt_key, [])
    tgt_index = {mono: i for i, mono in enumerate(tgt)}
    entries: dict = {}
    for col, mono in enumerate(src):
        prefix_parity = 0
        for gi, e in enumerate(mono):
            g = page.generators[gi]
            if e and g.name in rules_by_gen:
                coeff, target_mono = rules_by_gen[g.name]
                lowered = mono[:gi] + (e - 1,) + mono[gi + 1:]
                term = page.mono_mul(lowered, target_mono)
                if term is not None:
                    c2, result = term
                    sign = -1 if prefix_parity % 2 else 1
                    row = tgt_index.get(result)
                    if row is None:
                        raise PageError("Leibniz image left the window")
                    v = (entries.get((row, col), 0)
                         + sign * e * coeff * c2) % p
                    if v:
                        entries[(row, col)] = v
                    else:
                        entries.pop((row, col), None)
            prefix_parity += e * g.parity
    return FpMatrix(p, len(tgt), len(src), entries)


def turn_page(page: Page, rules: list[DifferentialRule]) -> Page:
    """Homology of a page under the rules acting at its page number.

    The rules are extended to all basis monomials by the Leibniz rule;
    homology is taken per bidegree and the re-presented page (sources
    removed, targets truncated at the rule exponent) is asserted to match
    the matrix dimensions on the whole window.
    """
    r = page.r
    for rule in rules:
        if rule.page != r:
            raise PageError(f"rule page {rule.page} does not match page {r}")
    if not rules:
        return Page(r + 1, page.p, page.period, page.generators, page.max_s)
    rules_by_gen: dict = {}
    sources = set()
    truncations: dict = {}
    for rule in rules:
        src_gen = page.generators[page.gen_position(rule.source)]
        if src_gen.flavor != "exterior":
            raise PageError("only suspension classes may support differentials")
        target_mono = [0] * len(page.generators)
        for name, e in rule.target:
            pos = page.gen_position(name)
            tgt_gen = page.generators[pos]
            if tgt_gen.bound is not None and e >= tgt_gen.bound:
                raise PageError("rule target vanishes on this page")
            target_mono[pos] += e
        rules_by_gen[rule.source] = (rule.target_coeff, tuple(target_mono))
        sources.add(rule.source)
        if len(rule.target) == 1:
            truncations[rule.target[0][0]] = rule.target[0][1]
        else:
            raise PageError("re-presentation needs single-generator rule targets")
        # targets must be cocycles: no rule may hit another rule's source
        for name, _ in rule.target:
            if any(ru.source == name for ru in rules):
                raise PageError("d^2 != 0: a rule target is itself a source")

    enum_cap = page.max_s + 2 * r
    table = page.monomials(enum_cap)

    # d^2 = 0 as matrices
    for (s, t) in sorted(table):
        if s > page.max_s:
            continue
        d1 = _leibniz_matrix(page, rules_by_gen, s, t, table, table)
        d2 = _leibniz_matrix(page, rules_by_gen, s + r, (t + r - 1) % page.period,
                             table, table)
        if not d2.compose(d1).is_zero():
            raise PageError(f"d^2 != 0 at bidegree {(s, t)}")

    # symbolic next page
    new_gens = []
    for g in page.generators:
        if g.name in sources:
            continue
        if g.name in truncations:
            bound = truncations[g.name]
            if g.bound is not None and g.bound <= bound:
                raise PageError("rule target vanishes on this page")
            new_gens.append(PageGenerator(
                g.name, g.s, g.t, g.flavor, bound, g.index, g.role))
        else:
            new_gens.append(g)
    new_page = Page(r + 1, page.p, page.period, new_gens, page.max_s)

    # matrix homology must match the re-presentation, and never grow
    old_dims = page.dims()
    new_dims = new_page.dims()
    keys = set(old_dims) | set(new_dims)
    for (s, t) in sorted(keys):
        if s > page.max_s:
            continue
        d_out = _leibniz_matrix(page, rules_by_gen, s, t, table, table)
        prev = (s - r, (t - r + 1) % page.period)
        if prev[0] >= 0:
            d_in = _leibniz_matrix(page, rules_by_gen, prev[0], prev[1],
                                   table, table)
        else:
            d_in = FpMatrix.zero(page.p, len(table.get((s, t), [])), 0)
        h = fp_linear.homology(d_in, d_out)
        if h.dimension != new_dims.get((s, t), 0):
            raise PageError(
                f"re-presentation mismatch at {(s, t)}: "
                f"homology {h.dimension} != symbolic {new_dims.get((s, t), 0)}")
        if h.dimension > old_dims.get((s, t), 0):
            raise PageError(f"page dimensions grew at {(s, t)}")
    return new_page


# -- the full run ----------------------------------------------------------------


@dataclass
class RunResult:
    pages: dict                    # page number -> Page (E^2 and each turn)
    rules: list
    report: ConvergenceReport
    final: Page

    def page_at(self, r: int) -> Page:
        best = None
        for rr, page in self.pages.items():
            if rr <= r and (best is None or rr > best):
                best = rr
        page = self.pages[best]
        return Page(r, page.p, page.period, page.generators, page.max_s)


def run_to_collapse(p: int, n: int, m: int, max_s: int) -> RunResult:
    """Run the slice-m spectral sequence to its last differential.

    Applies the differential rules in page order, asserts that no rule
    lives past page 2p^n - 1, compares the E^infinity window with the
    loop-space slice rank and the closed-form truncation heights, and
    emits a window-relative convergence verdict.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    ring = hopf_ring(p, n)
    page = e2_closed_form(p, n, m, max_s)
    rules = differential_rules(p, n, m)
    horizon = 2 * p ** n - 1
    for rule in rules:
        if rule.page > horizon:
            raise PageError(f"rule beyond page {horizon}: {rule.describe()}")
    pages = {2: page}
    for r in sorted({rule.page for rule in rules}):
        page = Page(r, p, ring.period, page.generators, max_s)
        page = turn_page(page, [rule for rule in rules if rule.page == r])
        pages[page.r] = page
    final = page
    collapse_page = max((rule.page for rule in rules), default=1) + 1
    final = Page(collapse_page, p, ring.period, final.generators, max_s)
    pages[collapse_page] = final

    target_rank = ring.slice(m - 1).rank
    if any(g.bound is None or g.flavor == "exterior" for g in final.generators):
        support = None
    else:
        support = sum((g.bound - 1) * g.s for g in final.generators)
    heights = {
        g.name: _bound_to_height(g.bound, p)
        for g in final.generators if g.role == "phi"
    }
    dims = final.dims()
    window_rank = sum(dims.values())

    if support is None:
        verdict, N, reason = "inconclusive", None, "E^infinity window is unbounded"
        einfty_rank = None
    elif support > max_s:
        verdict, N, reason = "inconclusive", None, (
            f"window too small: E^infinity support reaches s = {support} > {max_s}")
        einfty_rank = None
    else:
        _check_prop5_heights(ring, m, final)
        einfty_rank = window_rank
        if window_rank == target_rank:
            verdict = "N-convergent"
            N = max(collapse_page, support + 1)
            reason = (f"E^infinity rank {window_rank} matches the loop-space "
                      f"slice rank; no differentials past page {collapse_page - 1}")
        else:
            verdict = "non-convergent"
            N = None
            reason = (f"E^infinity rank {window_rank} != target rank "
                      f"{target_rank}")
    report = ConvergenceReport(
        p=p, n=n, m=m, max_s=max_s,
        verdict=verdict, N=N,
        collapse_page=collapse_page,
        support_max_s=support,
        einfty_rank=einfty_rank,
        target_rank=target_rank,
        reason=reason,
        einfty_dims=dims,
        einfty_heights=heights,
    )
    return RunResult(pages=pages, rules=rules, report=report, final=final)


def _check_prop5_heights(ring: HopfRing, m: int, final: Page) -> None:
    """E^infinity truncation heights match the closed form: the class of
    block I is truncated at exponent p^{t_1(unshift(I, t_0(I)))}."""
    expected = {}
    for I in ring.slice(m).blocks:
        K = I.unshift(I.trailing_count(0))
        expected[phi_name(I)] = ring.p ** K.trailing_count(1)
    actual = {g.name: g.bound for g in final.generators if g.role == "phi"}
    if expected != actual:
        raise PageError(
            f"E^infinity heights {actual} do not match the closed form {expected}")


# -- representatives ------------------------------------------------------------------


def einfty_representative_index(n: int, I: MultiIndex) -> MultiIndex:
    """The cotranspotence block representing a^I (i_0 = 0) in the loop space."""
    if I.bits[0] == 1:
        raise RepresentativeError(f"a^{{{I}}} is not a slice generator")
    l0 = I.leading(0)
    return I.shift(l0) + unit_index(n, n - l0)


def einfty_representatives(p: int, n: int, m: int, run: RunResult | None = None) -> dict:
    """Map the slice-(m-1) algebra generators to their E^infinity classes.

    Asserts equal multiplicative orders: p^{t_1(I)+1} for a^I against
    p^{E^infinity height} for the representing class.  Requires an
    N-convergent run.
    """
    if run is None:
        run = run_to_collapse(p, n, m, max_s=4 * p ** n)
    if run.report.verdict != "N-convergent":
        raise RepresentativeError("representatives need an N-convergent run")
    ring = hopf_ring(p, n)
    out = {}
    heights = {g.name: g.bound for g in run.final.generators if g.role == "phi"}
    for gen in ring.slice(m - 1).algebra_generators:
        if gen.kind == "r_u":
            continue
        I = gen.index
        J = einfty_representative_index(n, I)
        rep = phi_name(J)
        if rep not in heights:
            raise RepresentativeError(f"no E^infinity class for a^{{{I}}}")
        order_target = p ** gen.height
        order_rep = heights[rep]
        if order_target != order_rep:
            raise RepresentativeError(
                f"order mismatch: a^{{{I}}} has order {order_target}, "
                f"{rep} has order {order_rep}")
        out[gen.name] = rep
    return out


# -- differential discovery --------------------------------------------------------------


@dataclass(frozen=True)
class DiscoveredDifferential:
    page: int
    source_index: MultiIndex
    target_index: MultiIndex
    target_exponent: int
    sign: int

    @property
    def source(self) -> str:
        return sigma_name(self.source_index)

    def as_rule(self) -> DifferentialRule:
        return DifferentialRule(
            page=self.page,
            source=self.source,
            target_coeff=self.sign,
            target=((phi_name(self.target_index), self.target_exponent),),
            provenance="discovered",
        )


def discover_differential(p: int, n: int, x, eta, search_limit: int = 200):
    """Locate the differential on x o eta predicted by the filtration jump.

    x is ("sigma", index) or ("phi", index) on a slice page; only the
    base class sigma a_{(0)} carries a known starting differential, whose
    target represents [1] - [0].  For eta a Hopf ring class, the product
    class x o eta supports d^m with target t^{(1)}, t a permanent cycle
    representing ([1]-[0]) o V(eta); the page m is located by bidegree
    arithmetic and the representatives are validated in small cobar
    windows.  Returns a DiscoveredDifferential, or None when x o eta is a
    permanent cycle.
    """
    ring = hopf_ring(p, n)
    kind, index = x
    if kind == "phi":
        return None
    if kind != "sigma":
        raise ValueError("x must be ('sigma', index) or ('phi', index)")
    base = unit_index(n, 0)
    if index != base:
        raise NotFoundError(
            "the starting differential is only known for sigma a_{(0)}")
    if isinstance(eta, MultiIndex):
        eta_cls = ring.class_of_index(eta)
        r_eta = eta.weight
    elif eta == "one":
        eta_cls = ring.one()
        r_eta = 0
    else:
        eta_cls = dict(eta)
        r_eta = None
        for mono in eta_cls:
            if mono:
                w = ring.mono_weight(mono)
                if r_eta is not None and w != r_eta:
                    raise ValueError("eta must be homogeneous in one slice")
                r_eta = w
        if r_eta is None:
            r_eta = 0

    # the product class x o eta: a suspension class over slice 1 + r_eta
    source_cls = ring.circle(ring.class_of_index(base), 1, eta_cls, r_eta)
    m_slice = 1 + r_eta
    source_atoms = [mono for mono in source_cls if mono]
    if len(source_atoms) != 1 or not ring._is_atomic(source_atoms[0]):
        raise NotFoundError("x o eta is not a single suspension class")
    source_index = source_atoms[0][0][0]

    # the predicted permanent target class: ([1]-[0]) o V(eta)
    target_cls = ring.circle(ring.class_of_index(zero_index(n)), 0,
                             ring.verschiebung(eta_cls), r_eta)
    target_cls = {mono: c for mono, c in target_cls.items() if mono}
    if not target_cls:
        return None
    nf = _single_generator_power(ring, target_cls)
    if nf is None:
        raise NotFoundError("predicted target is not a generator power")
    sign, G, e = nf
    m0 = 0
    while p ** m0 < e:
        m0 += 1
    if p ** m0 != e:
        raise NotFoundError("predicted target exponent is not a p-power")

    J = einfty_representative_index(n, G)
    exponent = p ** (m0 + 1)
    tgt_s, tgt_t = cotranspotence_bidegree(ring, J)
    src_s, src_t = suspension_bidegree(ring, source_index)
    page = exponent * tgt_s - src_s
    if page < 2 or page > search_limit:
        raise NotFoundError("not found within limit")
    if (src_t + page - 1) % ring.period != (exponent * tgt_t) % ring.period:
        raise NotFoundError("bidegree arithmetic rejects the predicted target")

    # validate the representatives in small cobar windows
    sl = ring.slice(m_slice)
    window = CobarWindow(sl.presentation, 3)
    src_el = sl.to_basis_element(ring.class_of_index(source_index))
    src_word = {(mono,): c for mono, c in src_el.items()}
    t_word = sl.presentation.mono_degree(next(iter(src_el)))
    if not window.is_cocycle(src_word, 1, t_word):
        raise NotFoundError("source suspension word is not a cocycle")
    k = J.trailing_count(0)
    rep = cobar.transpotence_rep(window, f"a^{{{J}}}", k)
    del rep  # existence (cocycle, non-boundary) is the validation
    return DiscoveredDifferential(
        page=page,
        source_index=source_index,
        target_index=J,
        target_exponent=exponent,
        sign=sign,
    )


def _single_generator_power(ring: HopfRing, cls: dict):
    """(sign, generator, exponent) when the class is +/- a generator power."""
    if len(cls) != 1:
        return None
    (mono, c), = cls.items()
    nf = ring._atoms_to_nf(mono)
    if nf is None:
        return None
    sign, exps = nf
    live = [(G, e) for G, e in exps.items() if e]
    if len(live) != 1:
        return None
    G, e = live[0]
    return (sign * c) % ring.p, G, e


# -- rendering ---------------------------------------------------------------------------


def render_chart(page: Page) -> str:
    """Plain-text chart: s across (Adams style), t - s mod period down."""
    dims = page.dims()
    rows = sorted({(t - s) % page.period for (s, t) in dims})
    width = max(2, len(str(max(dims.values(), default=0))))
    lines = [f"page E^{page.r}  (columns s = 0..{page.max_s}, rows t-s mod {page.period})"]
    header = "t-s\\s " + " ".join(f"{s:>{width}}" for s in range(page.max_s + 1))
    lines.append(header)
    for u in rows:
        cells = []
        for s in range(page.max_s + 1):
            d = dims.get((s, (s + u) % page.period), 0)
            cells.append(f"{d:>{width}}" if d else " " * (width - 1) + ".")
        lines.append(f"{u:>5} " + " ".join(cells))
    return "\n".join(lines)


def run_to_json(run: RunResult) -> str:
    pages = [run.pages[r].to_dict(run.rules if r == 2 else [])
             for r in sorted(run.pages)]
    data = {
        "pages": pages,
        "rules": [
            {"page": rule.page, "source": rule.source,
             "target": rule.describe().split(" = ")[1],
             "provenance": rule.provenance}
            for rule in run.rules
        ],
        "report": run.report.to_dict(),
    }
    return json.dumps(data, sort_keys=True, separators=(",", ":"))
