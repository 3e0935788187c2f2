"""Reduced cobar complex of a finite-type graded coalgebra.

Words [x_1 | ... | x_s] have non-unit basis monomials as entries and
bidegree (s, t) with t the sum of internal degrees (mod the period in
periodic mode).  The differential inserts the reduced coproduct at each
slot,

    d[x_1|...|x_s] = sum_i (-1)^{e_i + |x_i'|} [x_1|...|x_i'|x_i''|...|x_s],
    e_i = sum_{j<i} (|x_j| - 1),

which is the tensor-algebra derivation convention on the desuspension;
d^2 = 0 is asserted as a matrix identity by the tests.  Homology of a
window computes Cotor in bidegrees (s, t) with s < max_s.

The module also builds the distinguished representatives: suspensions
[x], cotranspotence classes (solved as genuine window cocycles with the
stated two-slot leading terms), and the circle pairing against Hopf ring
classes.
"""

from __future__ import annotations

import os

from . import fp_linear
from .fp_linear import FpMatrix, HomologySummand
from .graded_hopf import HopfPresentation
from .rw_hopf_ring import HopfRing

DEFAULT_WORD_CAP = 400_000


class WindowOverflowError(RuntimeError):
    pass


class NoCocycleError(ValueError):
    pass


def _word_cap(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("EMSS_WORD_CAP")
    if env:
        return int(env)
    return DEFAULT_WORD_CAP


class CobarWindow:
    """All cobar words of a coalgebra with s <= max_s inside a degree window.

    In periodic mode the degree window is the full period; otherwise a
    t_max bound is required and words are enumerated with t <= t_max.
    """

    def __init__(self, coalgebra: HopfPresentation, max_s: int,
                 t_max: int | None = None, word_cap: int | None = None):
        if max_s < 0:
            raise ValueError("max_s must be nonnegative")
        self.coalgebra = coalgebra
        self.max_s = max_s
        self.periodic = coalgebra.period is not None
        if self.periodic:
            self.t_max = None
        else:
            if t_max is None:
                raise ValueError("t_max is required outside periodic mode")
            self.t_max = t_max
        self.word_cap = _word_cap(word_cap)
        self._matrices: dict = {}
        self._build()

    # -- construction -----------------------------------------------------------

    def _entry_pool(self):
        """Non-unit basis monomials usable as word entries, with degrees."""
        pres = self.coalgebra
        unit = pres.unit()
        pool = []
        if self.periodic:
            for mono in pres.all_monomials():
                if mono != unit:
                    pool.append((mono, pres.mono_degree(mono)))
        else:
            for d in range(1, self.t_max + 1):
                for mono in pres.basis_in_degree(d):
                    pool.append((mono, d))
        return pool

    def _build(self):
        pres = self.coalgebra
        pool = self._entry_pool()
        self.words: dict = {(0, 0): [()]}
        self.index: dict = {(0, 0): {(): 0}}
        total = 1
        frontier = {(0, 0): [()]}
        for s in range(1, self.max_s + 1):
            new: dict = {}
            for (s0, t0), ws in frontier.items():
                for w in ws:
                    for mono, d in pool:
                        t = t0 + d
                        if self.periodic:
                            t %= pres.period
                        elif t > self.t_max:
                            continue
                        new.setdefault((s, t), []).append(w + (mono,))
            total += sum(len(v) for v in new.values())
            if total > self.word_cap:
                raise WindowOverflowError(
                    f"window overflow: more than {self.word_cap} words at s={s}")
            for key, ws in new.items():
                ws.sort()
                self.words[key] = ws
                self.index[key] = {w: i for i, w in enumerate(ws)}
            frontier = new

    # -- access ------------------------------------------------------------------

    def bidegrees(self):
        return sorted(self.words)

    def dim(self, s: int, t: int) -> int:
        return len(self.words.get((s, t), ()))

    def t_values(self, s: int):
        return sorted(t for (ss, t) in self.words if ss == s)

    # -- the differential ----------------------------------------------------------

    def differential(self, s: int, t: int) -> FpMatrix:
        """d: (s,t) -> (s+1,t) as a sparse matrix (columns index source words)."""
        key = (s, t)
        if key in self._matrices:
            return self._matrices[key]
        pres = self.coalgebra
        p = pres.p
        src = self.words.get(key, [])
        tgt_index = self.index.get((s + 1, t), {})
        entries: dict = {}
        for col, word in enumerate(src):
            sign_prefix = 0
            for i, mono in enumerate(word):
                for (a, b), c in pres.reduced_coproduct_mono(mono).items():
                    sign = sign_prefix + pres.mono_parity(a)
                    new_word = word[:i] + (a, b) + word[i + 1:]
                    row = tgt_index.get(new_word)
                    if row is None:
                        if self.periodic or sum(
                                pres.mono_degree(m) for m in new_word) <= (self.t_max or 0):
                            raise AssertionError("differential left the window")
                        continue
                    v = c if sign % 2 == 0 else -c
                    cur = (entries.get((row, col), 0) + v) % p
                    if cur:
                        entries[(row, col)] = cur
                    else:
                        entries.pop((row, col), None)
                sign_prefix += pres.mono_parity(mono) + 1
        mat = FpMatrix(p, len(self.words.get((s + 1, t), ())), len(src), entries)
        self._matrices[key] = mat
        return mat

    def check_d_squared(self) -> None:
        for (s, t) in self.bidegrees():
            if s + 2 > self.max_s:
                continue
            if not self.differential(s + 1, t).compose(self.differential(s, t)).is_zero():
                raise AssertionError(f"d^2 != 0 at bidegree {(s, t)}")

    # -- Cotor -----------------------------------------------------------------------

    def cotor(self, s: int, t: int) -> HomologySummand:
        """Homology at (s, t); needs s < max_s for the outgoing differential."""
        if s >= self.max_s:
            raise ValueError("need s < max_s for the outgoing differential")
        if self.periodic:
            t %= self.coalgebra.period
        d_out = self.differential(s, t)
        if s == 0:
            d_in = FpMatrix.zero(self.coalgebra.p, self.dim(s, t), 0)
        else:
            d_in = self.differential(s - 1, t)
        return fp_linear.homology(d_in, d_out)

    def cotor_dimension(self, s: int, t: int) -> int:
        return self.cotor(s, t).dimension

    def cotor_dims(self) -> dict:
        """All Cotor dimensions with s < max_s, as {(s, t): dim}, zeros omitted."""
        out = {}
        for (s, t) in self.bidegrees():
            if s >= self.max_s:
                continue
            d = self.cotor_dimension(s, t)
            if d:
                out[(s, t)] = d
        return out

    def summary(self) -> list[dict]:
        """Window summary rows: bidegree, word count, Cotor dimension."""
        rows = []
        for (s, t) in self.bidegrees():
            if s >= self.max_s:
                continue
            rows.append({
                "bidegree": [s, t],
                "dim_E1": self.dim(s, t),
                "dim_E2": self.cotor_dimension(s, t),
            })
        return rows

    def vector_of(self, combo: dict, s: int, t: int) -> dict:
        idx = self.index[(s, t)]
        return {idx[w]: c for w, c in combo.items() if c % self.coalgebra.p}

    def is_cocycle(self, combo: dict, s: int, t: int) -> bool:
        vec = self.vector_of(combo, s, t)
        return not self.differential(s, t).apply(vec)

    def is_boundary(self, combo: dict, s: int, t: int) -> bool:
        if s == 0:
            return False
        vec = self.vector_of(combo, s, t)
        image = self.differential(s - 1, t).col_dicts()
        return not fp_linear.reduce_mod_span(vec, image, self.coalgebra.p)


def suspension_rep(window: CobarWindow, mono) -> tuple:
    """The length-1 word [x] for x in the augmentation coideal."""
    if mono == window.coalgebra.unit():
        raise ValueError("not in coideal")
    t = window.coalgebra.mono_degree(mono)
    if (1, t) not in window.index or mono not in [w[0] for w in window.words[(1, t)]]:
        raise ValueError("monomial not in the window")
    return (mono,)


def transpotence_rep(window: CobarWindow, gen_name: str, k: int) -> dict:
    """A window cocycle with leading terms sum_l u_l [x^{l p^k} | x^{(p-l) p^k}].

    x is the named truncated generator of height k+1; the units u_l and
    the decomposable tail are solved by linear algebra at the target
    bidegree.  Raises NoCocycleError when no cocycle has a nonzero
    leading part.
    """
    pres = window.coalgebra
    p = pres.p
    gi = None
    for i, g in enumerate(pres.generators):
        if g.name == gen_name:
            gi = i
            break
    if gi is None:
        raise ValueError(f"no generator named {gen_name!r}")
    g = pres.generators[gi]
    bound = g.exponent_bound(p)
    if bound is None:
        raise NoCocycleError(f"no transpotence for untruncated generator {gen_name}")
    if k < 0 or (p - 1) * p ** k >= bound:
        raise NoCocycleError(f"level {k} exceeds the truncation height of {gen_name}")
    unit = pres.unit()

    def gen_power(e):
        return unit[:gi] + (e,) + unit[gi + 1:]

    t = pres.fold(p ** (k + 1) * g.degree)
    key = (2, t)
    if key not in window.words:
        raise NoCocycleError(f"bidegree (2, {t}) not in the window")
    candidates = [
        (gen_power(l * p ** k), gen_power((p - l) * p ** k)) for l in range(1, p)
    ]
    idx = window.index[key]
    for w in candidates:
        if w not in idx:
            raise NoCocycleError("candidate word missing from the window")
    # order coordinates with the candidate words first, then solve d v = 0
    order = [idx[w] for w in candidates]
    rest = [i for i in range(len(window.words[key])) if i not in set(order)]
    reorder = {pos: j for j, pos in enumerate(order + rest)}
    kernel = fp_linear.kernel_basis(window.differential(2, t))
    pivots: dict = {}
    best = None
    for vec in kernel:
        re_vec = {reorder[i]: v for i, v in vec.items()}
        col = fp_linear._insert_row(re_vec, pivots, p)
        if col is not None and col < p - 1 and (best is None or col < best[0]):
            best = (col, pivots[col])
    if best is None:
        raise NoCocycleError("no cocycle in span of the transpotence candidates")
    inv_order = {j: pos for pos, j in reorder.items()}
    words = window.words[key]
    combo = {words[inv_order[j]]: v for j, v in best[1].items()}
    if window.is_boundary(combo, 2, t):
        raise NoCocycleError("transpotence candidate degenerated to a boundary")
    return combo


# -- circle pairing ---------------------------------------------------------------


def iterated_reduced_coproduct(pres: HopfPresentation, el: dict, s: int) -> dict:
    """Reduced s-fold coproduct of an element, as {word of monomials: coeff}."""
    if s < 1:
        raise ValueError("s must be at least 1")
    words = {(mono,): c for mono, c in el.items() if mono != pres.unit()}
    from .rw_hopf_ring import _expand_first_slot
    for _ in range(s - 1):
        words = _expand_first_slot(pres, words)
    return words


def circle_pairing(ring: HopfRing, word_combo: dict, r: int, eta: dict, r_eta: int) -> dict:
    """Pair cobar words over slice r with a class eta over slice r_eta.

    [x_1|...|x_s] o eta = sum [x_1 o eta(1) | ... | x_s o eta(s)] over the
    reduced s-fold coproduct of eta; terms with a unit slot vanish since
    x o [0] = 0 on reduced x.  Entries of the output are basis monomials
    of the slice r + r_eta coalgebra.
    """
    sl_src = ring.slice(r)
    sl_eta = ring.slice(r_eta)
    sl_tgt = ring.slice(r + r_eta)
    p = ring.p
    out: dict = {}
    eta_el = sl_eta.to_basis_element(eta)
    by_length: dict = {}
    for word, c in word_combo.items():
        by_length.setdefault(len(word), {})[word] = c
    for s, combos in by_length.items():
        if s == 0:
            continue
        eta_words = iterated_reduced_coproduct(sl_eta.presentation, eta_el, s)
        for word, c in combos.items():
            for eta_word, ce in eta_words.items():
                parts = []
                for x_mono, eta_mono in zip(word, eta_word):
                    x_cls = sl_src.from_basis_element({x_mono: 1})
                    e_cls = sl_eta.from_basis_element({eta_mono: 1})
                    prod = ring.circle(x_cls, r, e_cls, r_eta)
                    el = sl_tgt.to_basis_element(prod)
                    if not el:
                        parts = None
                        break
                    parts.append(el)
                if parts is None:
                    continue
                terms = [((), 1)]
                for el in parts:
                    terms = [
                        (w + (mono,), coef * cm % p)
                        for (w, coef) in terms
                        for mono, cm in el.items()
                    ]
                for w, coef in terms:
                    v = (out.get(w, 0) + c * ce * coef) % p
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
    return out


# -- closed-form Cotor dimensions ---------------------------------------------------


def cotor_closed_form_generators(kind: str, degree: int, p: int,
                                 height: int | None, t_max: int) -> list:
    """Symbolic Cotor generators [(flavor, s, t)] for one standard coalgebra.

    flavor is "ext" (exterior; exponent 0 or 1) or "poly" (polynomial).
    For binomial-basis coalgebras the digit splitting contributes one
    exterior and one polynomial class per p-power digit of the exponent
    range; only digits with suspension degree <= t_max are listed.
    """
    gens = []
    if kind == "exterior":
        gens.append(("poly", 1, degree))
    elif kind == "divided_power":
        gens.append(("ext", 1, degree))
    elif kind == "divided_power_truncated":
        gens.append(("ext", 1, degree))
        gens.append(("poly", 2, p ** height * degree))
    elif kind in ("polynomial", "truncated"):
        j = 0
        while (height is None or j < height) and p ** j * degree <= t_max:
            gens.append(("ext", 1, p ** j * degree))
            gens.append(("poly", 2, p ** (j + 1) * degree))
            j += 1
    else:
        raise ValueError(f"no closed form for kind {kind!r}")
    return gens


def cotor_closed_form_dims(kind: str, degree: int, p: int, height: int | None,
                           s_max: int, t_max: int) -> dict:
    """Predicted Cotor dimensions {(s, t): dim} for s <= s_max, t <= t_max."""
    gens = cotor_closed_form_generators(kind, degree, p, height, t_max)
    table = {(0, 0): 1}
    for flavor, gs, gt in gens:
        new = dict(table)
        for (s, t), d in table.items():
            e = 1
            while True:
                if flavor == "ext" and e > 1:
                    break
                ns, nt = s + e * gs, t + e * gt
                if ns > s_max or nt > t_max:
                    break
                key = (ns, nt)
                new[key] = new.get(key, 0) + d
                e += 1
        table = new
    return table
