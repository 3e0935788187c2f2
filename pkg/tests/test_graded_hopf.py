import random

import pytest

from morava_emss import graded_hopf as gh
from morava_emss.graded_hopf import GeneratorSpec, HopfPresentation, InfiniteBasisError


def tensor_mul(pres, t1, t2):
    """Product on C (x) C with the Koszul sign (a(x)b)(c(x)d) = (-1)^{|b||c|} ac(x)bd."""
    out = {}
    for (a, b), c1 in t1.items():
        for (c, d), c2 in t2.items():
            sign = -1 if (pres.mono_parity(b) * pres.mono_parity(c)) % 2 else 1
            for ml, cl in pres.mono_mul(a, c).items():
                for mr, cr in pres.mono_mul(b, d).items():
                    key = (ml, mr)
                    v = (out.get(key, 0) + sign * c1 * c2 * cl * cr) % pres.p
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
    return out


def test_standard_exterior():
    L = gh.standard("exterior", 3, 3, name="y")
    assert L.basis_in_degree(0) == [(0,)]
    assert L.basis_in_degree(3) == [(1,)]
    assert L.coproduct_mono((1,)) == {((1,), (0,)): 1, ((0,), (1,)): 1}


def test_standard_truncated_p3():
    P1 = gh.standard("truncated", 2, 3, height=1)
    degrees = [P1.mono_degree(m) for d in (0, 2, 4) for m in P1.basis_in_degree(d)]
    assert degrees == [0, 2, 4]
    assert P1.basis_in_degree(8) == []


def test_divided_power_truncated_product():
    G1 = gh.standard("divided_power_truncated", 2, 3, height=1)
    assert G1.el_mul({(1,): 1}, {(1,): 1}) == {(2,): 2}


def test_invalid_height():
    with pytest.raises(ValueError, match="invalid height"):
        gh.standard("truncated", 2, 3, height=0)


def test_exterior_needs_odd_degree_unperiodic():
    with pytest.raises(ValueError, match="odd degree"):
        gh.standard("exterior", 2, 3)


def test_basis_in_degree_gamma():
    G = gh.standard("divided_power", 2, 3)
    assert G.basis_in_degree(4) == [(2,)]


def test_basis_in_degree_tensor():
    L = gh.standard("exterior", 3, 3, name="y")
    P = gh.standard("polynomial", 2, 3, name="x")
    T = L.tensor(P)
    assert T.basis_in_degree(7) == [(1, 2)]


def test_coproduct_divided_basis():
    G = gh.standard("divided_power", 2, 3)
    assert G.coproduct_mono((2,)) == {
        ((2,), (0,)): 1, ((1,), (1,)): 1, ((0,), (2,)): 1}


def test_coproduct_of_divided_square():
    # Psi(x_1 * x_1) = Psi(2 x_2) in Gamma at p = 3
    G = gh.standard("divided_power", 2, 3)
    lhs = tensor_mul(G, G.coproduct_mono((1,)), G.coproduct_mono((1,)))
    rhs = {k: 2 * v % 3 for k, v in G.coproduct_mono((2,)).items()}
    assert lhs == rhs


def test_bialgebra_axiom_random():
    rng = random.Random(41)
    kinds = [
        ("truncated", 2, 2), ("divided_power_truncated", 2, 2),
        ("exterior", 3, None), ("truncated", 4, 1),
        ("divided_power_truncated", 2, 1), ("exterior", 5, None),
    ]
    for _ in range(12):
        p = rng.choice([3, 5])
        k1, d1, h1 = rng.choice(kinds)
        k2, d2, h2 = rng.choice(kinds)
        A = gh.standard(k1, d1, p, height=h1, name="u")
        B = gh.standard(k2, d2, p, height=h2, name="v")
        T = A.tensor(B)
        monos = T.all_monomials()
        for _ in range(6):
            m1 = rng.choice(monos)
            m2 = rng.choice(monos)
            prod = T.mono_mul(m1, m2)
            lhs = {}
            for m, c in prod.items():
                for key, v in T.coproduct_mono(m).items():
                    lhs[key] = (lhs.get(key, 0) + c * v) % p
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = tensor_mul(T, T.coproduct_mono(m1), T.coproduct_mono(m2))
            assert lhs == rhs, (m1, m2)


def coassoc_check(pres, monos):
    for mono in monos:
        lhs = {}
        for (a, b), c in pres.coproduct_mono(mono).items():
            for (a1, a2), c2 in pres.coproduct_mono(a).items():
                key = (a1, a2, b)
                lhs[key] = (lhs.get(key, 0) + c * c2) % pres.p
        rhs = {}
        for (a, b), c in pres.coproduct_mono(mono).items():
            for (b1, b2), c2 in pres.coproduct_mono(b).items():
                key = (a, b1, b2)
                rhs[key] = (rhs.get(key, 0) + c * c2) % pres.p
        assert {k: v for k, v in lhs.items() if v} == \
               {k: v for k, v in rhs.items() if v}, mono


def test_coassociativity():
    for pres in [
        gh.standard("truncated", 2, 3, height=2),
        gh.standard("divided_power_truncated", 2, 5, height=1),
        gh.standard("exterior", 3, 3).tensor(gh.standard("divided_power_truncated", 2, 3, height=1)),
        HopfPresentation(3, [GeneratorSpec("g", 0, "truncated", 1,
                                           coproduct="group_like_minus_unit")],
                         period=4),
    ]:
        coassoc_check(pres, pres.all_monomials())


def test_group_like_minus_unit_counit():
    pres = HopfPresentation(3, [GeneratorSpec("g", 0, "truncated", 1,
                                              coproduct="group_like_minus_unit")],
                            period=4)
    # counit axiom: (eps (x) 1) Psi = id on every basis element
    for mono in pres.all_monomials():
        total = {}
        for (a, b), c in pres.coproduct_mono(mono).items():
            if a == pres.unit():
                total[b] = (total.get(b, 0) + c) % 3
        assert {k: v for k, v in total.items() if v} == {mono: 1}


def test_dualize_truncated():
    P1 = gh.standard("truncated", 2, 3, height=1)
    D = P1.dualize()
    assert D.generators[0].kind == "divided_power_truncated"
    assert D.generators[0].height == 1
    assert D.generators[0].degree == 2


def test_dualize_exterior_self_dual():
    L = gh.standard("exterior", 3, 3, name="y")
    assert L.dualize().generators[0].kind == "exterior"


def test_double_dual_random():
    rng = random.Random(4)
    kinds = ["polynomial", "truncated", "divided_power",
             "divided_power_truncated", "exterior"]
    for _ in range(10):
        kind = rng.choice(kinds)
        height = rng.randrange(1, 3) if "truncated" in kind else None
        deg = 3 if kind == "exterior" else 2 * rng.randrange(1, 4)
        A = gh.standard(kind, deg, 3, height=height)
        DD = A.dualize().dualize()
        g0, g1 = A.generators[0], DD.generators[0]
        assert (g0.kind, g0.height, g0.degree) == (g1.kind, g1.height, g1.degree)


def test_frobenius_on_truncated():
    P1 = gh.standard("truncated", 2, 3, height=1)
    assert P1.frobenius({(1,): 1}) == {}


def test_frobenius_r_u():
    R = gh.standard("r_u", 0, 3, name="x")
    assert R.frobenius({(1,): 1}) == {(1,): 1}


def test_verschiebung_divided():
    G = gh.standard("divided_power", 2, 3)
    assert G.verschiebung({(3,): 1}) == {(1,): 1}
    assert G.verschiebung({(2,): 1}) == {}


def test_verschiebung_kills_odd_primitives():
    L = gh.standard("exterior", 3, 3, name="y")
    assert L.verschiebung({(1,): 1}) == {}


def test_vf_equals_fv_on_standard_bases():
    presentations = [
        gh.standard("polynomial", 2, 3),
        gh.standard("truncated", 2, 3, height=2),
        gh.standard("divided_power_truncated", 2, 3, height=2),
        gh.standard("exterior", 3, 3),
        gh.standard("r_u", 0, 5),
    ]
    for pres in presentations:
        monos = pres.all_monomials() if pres.is_finite() else \
            [m for d in range(0, 13) for m in pres.basis_in_degree(d)]
        for mono in monos:
            el = {mono: 1}
            vf = pres.verschiebung(pres.frobenius(el))
            fv = pres.frobenius(pres.verschiebung(el))
            assert vf == fv, (pres, mono)


def test_json_round_trip():
    A = gh.standard("divided_power_truncated", 2, 3, height=2, name="a")
    B = HopfPresentation.from_json(A.to_json())
    assert B.to_json() == A.to_json()
    assert B.generators == A.generators


def test_infinite_basis_error_in_periodic_mode():
    pres = HopfPresentation(3, [GeneratorSpec("x", 2, "polynomial")], period=4)
    with pytest.raises(InfiniteBasisError):
        pres.basis_in_degree(0)


def test_r_u_needs_compatible_degree():
    # degree 2 with period 4 at p = 3: (p-1)*2 = 4 = period, fine
    gh.standard("r_u", 2, 3, period=4)
    with pytest.raises(ValueError):
        gh.standard("r_u", 2, 3, period=8)
