"""Acceptance criteria 1-10, one test each, with wall-clock limits.

Each test records a one-line verdict; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""
import io
import random
import time
from fractions import Fraction

import pytest

from drinfeld_heights.cli import main
from drinfeld_heights.drinfeld import (DrinfeldModule, carlitz, check_frobenius_congruence,
                                       cyclotomic_field, torsion_points_in)
from drinfeld_heights.field_arith.algebraic import Ambient, certify_irreducible
from drinfeld_heights.field_arith.places import Place
from drinfeld_heights.field_arith.polya import irreducibles_up_to, poly_ring
from drinfeld_heights.field_arith.ratfunc import RatFunc
from drinfeld_heights.heights import (canonical_height, check_functional_equation,
                                      check_isogeny_relation, check_translation_invariance,
                                      conjugate_module, is_torsion, weil_height,
                                      weil_height_by_places)
from drinfeld_heights.ore import OrePoly
from drinfeld_heights.paperlab import (CongruenceParams, UnitGroup, check_acceleration,
                                       check_carlitz_bound, check_lemclef1, check_lemclef2,
                                       pigeonhole_check, pigeonhole_find, pigeonhole_refined,
                                       subgroups_of_unit_group, subgroups_oracle)
from drinfeld_heights.paperlab.suite import lemma_samples

VERDICTS = []
TOL = Fraction(1, 8)


class Timer:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        ok = exc_type is None and dt < self.limit
        line = (f"criterion {self.number:2d} {'PASS' if ok else 'FAIL'}: {self.title} "
                f"({dt:.2f}s, limit {self.limit}s)")
        if exc_type is not None:
            line += f" [{exc_type.__name__}: {exc}]"
        VERDICTS.append(line)
        print(line)
        if exc_type is None:
            assert dt < self.limit, line
        return False


def random_irreducible(rng, q, d, max_coeff_degree=2):
    A = poly_ring(q)
    while True:
        f = [A.random(rng, max_coeff_degree) for _ in range(d)] + [A.random(rng, 1, nonzero=True,
                                                                           monic=True)]
        try:
            certify_irreducible(f)
        except ValueError:
            continue
        return Ambient(f)


# ---------------------------------------------------------------------------


def test_criterion_01_frobenius_congruence():
    with Timer(1, "C_P = tau^deg P mod P for all monic irreducible P, deg <= 4, q in {2,3}", 10):
        count = 0
        for q in (2, 3):
            C = carlitz(q)
            for P in irreducibles_up_to(C.Fq, 4):
                rep = check_frobenius_congruence(C, P)
                assert rep.leading_is_one and rep.lower_divisible, str(P)
                count += 1
        # 2+1+2+3 monic irreducibles for q = 2 and 3+3+8+18 for q = 3
        assert count == 8 + 32


def test_criterion_02_weil_height_oracle():
    with Timer(2, "Weil height: 200 rationals vs max degree, 20+20 extension elements vs "
                  "place sum", 30):
        rng = random.Random(2)
        for i in range(200):
            q = (2, 3)[i % 2]
            A = poly_ring(q)
            x = RatFunc(A.random(rng, 8), A.random(rng, 8, nonzero=True))
            assert weil_height(x) == max(x.num.degree, x.den.degree, 0)
        for d in (2, 3):
            for i in range(20):
                q = (2, 3)[i % 2]
                amb = random_irreducible(rng, q, d)
                x = amb.random_element(rng, 3, nonzero=True)
                assert weil_height(x) == weil_height_by_places(x), (str(amb), str(x))


def test_criterion_03_height_axioms():
    with Timer(3, "h(x^n) = |n| h(x), subadditivity of h(x+y) and h(xy) on 100 pairs", 30):
        rng = random.Random(3)
        ambs = [random_irreducible(rng, q, d) for q in (2, 3) for d in (1, 2, 3)]
        for i in range(100):
            amb = ambs[i % len(ambs)]
            x = amb.random_element(rng, 2, nonzero=True)
            y = amb.random_element(rng, 2, nonzero=True)
            hx = weil_height(x)
            for n in (-3, -2, -1, 1, 2, 3):
                assert weil_height(x ** n) == abs(n) * hx
            assert weil_height(x + y) <= hx + weil_height(y)
            assert weil_height(x * y) <= hx + weil_height(y)


def test_criterion_04_functional_equation():
    with Timer(4, "hhat(phi_a x) meets q^(deg a) hhat(x) on 30 samples, tol 1/8", 120):
        rng = random.Random(4)
        for i in range(30):
            q = (2, 3)[i % 2]
            A = poly_ring(q)
            C = carlitz(q)
            if i % 3 == 2:
                amb = random_irreducible(rng, q, 2)
                x = amb.random_element(rng, 1, nonzero=True)
            else:
                x = RatFunc(A.random(rng, 3, nonzero=True), A.random(rng, 3, nonzero=True))
            a = A.random(rng, 2)
            while a.degree < 1:
                a = A.random(rng, 2)
            r = check_functional_equation(C, x, a, TOL)
            assert r.passed, r.as_dict()


def test_criterion_05_torsion_and_translation():
    with Timer(5, "cyclotomic torsion (deg P <= 2) has hhat = 0; hhat(x + lambda) meets "
                  "hhat(x) on 10 samples", 120):
        rng = random.Random(5)
        pool = []
        for q in (2, 3):
            C = carlitz(q)
            for P in irreducibles_up_to(C.Fq, 2):
                amb, lam = cyclotomic_field(q, P)
                pts = torsion_points_in(C, P, amb)
                assert len(pts) == q ** P.degree
                for t in pts:
                    cert = is_torsion(C, t.value)
                    assert cert.torsion
                    assert not C.evaluate(cert.annihilator, t.value)
                    assert canonical_height(C, t.value, TOL).contains(0)
                pool.append((C, amb, pts))
        for i in range(10):
            C, amb, pts = pool[i % len(pool)]
            x = amb.random_element(rng, 2, nonzero=True)
            lam = pts[rng.randrange(1, len(pts))]
            r = check_translation_invariance(C, x, lam, TOL)
            assert r.passed, r.as_dict()


def test_criterion_06_isogeny():
    with Timer(6, "isogeny relation: 5 scalar conjugations and 5 self-isogenies", 60):
        rng = random.Random(6)
        for i in range(10):
            q = (2, 3)[i % 2]
            A = poly_ring(q)
            x = RatFunc(A.random(rng, 3, nonzero=True), A.random(rng, 2, nonzero=True))
            if i < 5:
                rho = DrinfeldModule([A.T, A.random(rng, 2), A.random(rng, 1, nonzero=True)], q)
                z = RatFunc(A.random(rng, 2, nonzero=True), A.random(rng, 2, nonzero=True))
                varrho = conjugate_module(rho, z)
                r = check_isogeny_relation(rho, varrho, OrePoly([z]), x, TOL)
            else:
                C = carlitz(q)
                a = A.random(rng, 2)
                while a.degree < 1:
                    a = A.random(rng, 2)
                r = check_isogeny_relation(C, C, C.action(a), x, TOL)
            assert r.passed, r.as_dict()


def test_criterion_07_pigeonhole():
    with Timer(7, "pigeonhole pairs on all subgroups of index < B of (A/T^e)^x, q=2, "
                  "e in {4,5,6}, B in {2,3}, with subgroup oracle", 60):
        N = 4
        checked = refined = excluded = 0
        for e in (4, 5, 6):
            G = UnitGroup(2, poly_ring(2).T, e)
            for B in (2, 3):
                subs = subgroups_of_unit_group(G, B)
                assert {H.keys for H in subs} == set(subgroups_oracle(G, B))
                for H in subs:
                    if 2 ** e < 2 * N * B:
                        # outside the stated range q^e >= 2NB: the call must refuse
                        with pytest.raises(ValueError):
                            pigeonhole_find(G, H, B)
                        with pytest.raises(ValueError):
                            pigeonhole_refined(G, H, B)
                        excluded += 1
                        continue
                    r = pigeonhole_check(G, H, B)
                    g, dm = r.witnesses["deg(b-a)"], r.witnesses["d_m"]
                    assert r.passed and 2 < 2 ** g < 2 * N * B * 2 ** dm
                    checked += 1
                    rr = pigeonhole_refined(G, H, B)
                    w = rr.witnesses
                    assert rr.passed and w["deg_a"] == w["deg_b"] and w["mu_a"] == w["mu_b"]
                    refined += 1
        assert checked == refined and checked > 0 and excluded == 4


def test_criterion_08_ultrametric_lemmas():
    with Timer(8, "lemmas on the exhaustive cyclotomic set (deg P <= 2, q=2) and 100 random "
                  "samples; acceleration for l in {0,1,2}", 120):
        rng = random.Random(8)
        A = poly_ring(2)
        T = A.T
        places = [Place(P) for P in irreducibles_up_to(A.F, 2)]
        for P in irreducibles_up_to(A.F, 2):
            params = CongruenceParams(2, P, P.degree)
            C = carlitz(2)
            amb, _ = cyclotomic_field(2, P)
            pts = [t.value for t in torsion_points_in(C, P, amb)]
            shifts = [amb.zero, amb.one, amb(T), amb(RatFunc(A.one, T)), amb(RatFunc(A.one, P))]
            xs = [t + s for t in pts for s in shifts]
            for x in xs:
                for v in places:
                    assert check_lemclef1(params, x, v).passed
                assert check_lemclef2(params, x).passed
                for c in (1, 2):
                    y = x + amb(P ** c) * (x + 1)
                    r = check_acceleration(params, x, y, c)
                    assert r.passed, r.as_dict()
        checked_accel = 0
        for i in range(100):
            d = 1 + i % 3
            amb = random_irreducible(rng, 2, d)
            P = places[i % len(places)].P
            params = CongruenceParams(2, P, P.degree)
            x = lemma_samples(amb, P, rng, 1)[0]
            assert check_lemclef1(params, x, places[(i // 3) % len(places)]).passed
            assert check_lemclef2(params, x).passed
            z = amb.element([A.random(rng, 2) for _ in range(amb.d)])
            r = check_acceleration(params, x, x + z * P ** 2, 2)
            assert r.passed, r.as_dict()
            if r.witnesses["status"] == "checked":
                assert [lv["l"] for lv in r.witnesses["levels"]] == [0, 1, 2]
                checked_accel += 1
        assert checked_accel == 100


def test_criterion_09_main_bound():
    with Timer(9, "q=2, P=T^2+T+1: samples classified, hhat lower endpoints exceed "
                  "q^(-11 q gamma), margin > 1", 300):
        A = poly_ring(2)
        T = A.T
        P = T ** 2 + T + 1
        C = carlitz(2)
        amb, lam = cyclotomic_field(2, P)
        l = lam.value
        samples = [l + 1, l + T, l * l + l]
        r = check_carlitz_bound(2, P, samples)
        verdict = {w["x"]: w for w in r.witnesses}
        for x in samples:
            w = verdict[str(x)]
            cert = is_torsion(C, x)
            assert w["torsion"] == cert.torsion
            if cert.torsion:
                assert not C.evaluate(cert.annihilator, x)
            else:
                assert w["exceeds"] and Fraction(w["hhat"]["lo"]) > 0
        assert [verdict[str(x)]["torsion"] for x in samples] == [True, True, False]
        assert r.passed and r.margins["margin_gt_1"] and r.margins["min_log_q_margin"] > 0
        print("  margins:", r.margins)


def test_criterion_10_determinism():
    with Timer(10, "verify all --seed 7 twice gives byte-identical reports", 120):
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            code = main(["verify", "all", "--seed", "7", "--output", "json"], buf)
            assert code == 0
            outs.append(buf.getvalue().encode())
        assert outs[0] == outs[1] and len(outs[0]) > 1000


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except Exception:
                failed += 1
    sys.exit(1 if failed else 0)
