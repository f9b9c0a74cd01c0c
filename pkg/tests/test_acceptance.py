"""One test group per acceptance criterion; a pass/fail line per criterion is printed at the end of the run.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest.
"""

import random
import subprocess
import sys
import time
from itertools import combinations

import pytest

from galois2.arith import vp
from galois2.certifier import (
    CERTIFIED,
    NOT_CERTIFIED,
    certify_split,
    certify_thm1,
    index_bound,
    replay,
    scan,
    sigma_class,
)
from galois2.homology import HomClassF2, c_class, c_class_report, moebius_shift, pairing_f2
from galois2.poly import IntPoly, discriminant, parse_poly
from galois2.symplectic import (
    enumerated_index,
    layer_structure_report,
    proof_congruence_report,
    prop32_certify,
    prop34_certify,
    sp_basis_certify,
)

CRITERIA = {
    1: "sp basis rank 2g^2+g for g <= 4, genus-one base case",
    2: "containment of Gamma(2^N) mod 2^(N+1) with strictness",
    3: "degree-4 subgroup equals Gamma(2^n) mod 2^(n+layers)",
    4: "t^2 = 0, power and commutator congruences",
    5: "layer order, elementary abelian, squaring bijection",
    6: "c-class pairings and closed forms",
    7: "certify --roots 0,1,6 end to end",
    8: "single-lambda fixtures and replay",
    9: "index bound values and enumerated index",
    10: "discriminant against root products",
    11: "scan agrees with sigma_class(f, lam, 1)",
    12: "root shift preserves valuations",
}

X3M2 = parse_poly("x^3-2")


def timed(fn, *args):
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


# 1
@pytest.mark.parametrize("g, rank", [(1, 3), (2, 10), (3, 21), (4, 36)])
def test_c01_sp_basis_rank(g, rank):
    report, dt = timed(sp_basis_certify, g)
    assert report["pass"] and report["rank"] == rank
    assert dt < 1.0


def test_c01_base_case_matrices():
    report = sp_basis_certify(1)
    assert report["base_case"] == [[[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, 1]]]


# 2
@pytest.mark.parametrize("g, n, nprime, budget", [(1, 1, 1, 1.0), (1, 1, 2, 1.0), (1, 2, 1, 1.0), (2, 1, 1, 60.0)])
def test_c02_congruence_containment(g, n, nprime, budget):
    report, dt = timed(prop32_certify, g, n, nprime, 1)
    assert report["contained"] and report["strict"]
    assert report["e"] == report["N"] + 1
    assert dt < budget


# 3
@pytest.mark.parametrize("n, layers, order", [(1, 1, 8), (1, 2, 64), (2, 1, 8)])
def test_c03_degree_four_equality(n, layers, order):
    report, dt = timed(prop34_certify, n, layers)
    assert report["equal"] and report["subgroup_order"] == order
    assert dt < 1.0


# 4
def test_c04_proof_congruences():
    report = proof_congruence_report(3, (1, 2))
    assert report["pass"], report["failures"]
    assert report["checks"]["t_squared_zero"] == 2 + 4 + 6


# 5
@pytest.mark.parametrize("g, k", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_c05_layer_structure(g, k):
    r = layer_structure_report(g, k)
    assert r.order == 2 ** (2 * g * g + g)
    assert r.elementary_abelian
    assert r.squaring_bijective, f"squaring is not injective: {r.squaring_counterexample}"


# 6
@pytest.mark.parametrize("g", range(1, 6))
def test_c06_homology_oracle(g):
    report = c_class_report(g)
    cs = [c_class(i, g) for i in range(1, 2 * g + 1)]
    assert all(pairing_f2(cs[i], cs[j]) == 1 for i, j in combinations(range(2 * g), 2))
    assert report.odd_closed_form_matches
    assert report.even_discrepancies


def test_c06_genus_one_values():
    a1, b1 = HomClassF2.basis("a", 1, 1), HomClassF2.basis("b", 1, 1)
    assert c_class(1, 1) == a1 + b1
    assert c_class(2, 1) == b1


# 7
def test_c07_split_example_end_to_end():
    import json

    cmd = [sys.executable, "-m", "galois2", "certify", "--roots", "0,1,6"]
    best = float("inf")
    for _ in range(3):
        t = time.perf_counter()
        proc = subprocess.run(cmd, capture_output=True, text=True)
        best = min(best, time.perf_counter() - t)
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["status"] == CERTIFIED
    assert [(w["p"], w["m"]) for w in data["witnesses"]] == [(3, 1), (5, 1)]
    assert data["gamma_level"] == 4
    assert best < 0.1


# 8
def test_c08_single_lambda_fixtures():
    c1 = certify_thm1(X3M2, 3)
    c2 = certify_thm1(parse_poly("x^4+x+1"), 2)
    c3 = certify_thm1(X3M2, 1)
    assert c1.status == CERTIFIED and c1.gamma_level == 4
    assert c2.status == CERTIFIED and c2.gamma_level == 4
    assert c3.status == NOT_CERTIFIED and c3.reason == "UnitValue"
    assert replay(c1, X3M2, 3) and replay(c2, parse_poly("x^4+x+1"), 2)


def test_c08_replay_over_scan():
    for lam in range(-200, 201):
        c = certify_thm1(X3M2, lam)
        if c.certified:
            assert replay(c, X3M2, lam)


# 9
@pytest.mark.parametrize("args, value", [((0, 1, 3), 2), ((1, 1, 3), 32), ((0, 2, 5), 64)])
def test_c09_index_bound(args, value):
    assert index_bound(*args) == value


def test_c09_enumerated_index():
    r = enumerated_index(1, 0, 3)
    assert r["index"] <= index_bound(0, 1, 3)


# 10
def test_c10_discriminant_oracle():
    rng = random.Random(2024)
    for _ in range(50):
        roots = [rng.randint(-40, 40) for _ in range(rng.randint(1, 6))]
        expected = 1
        for a, b in combinations(roots, 2):
            expected *= (a - b) ** 2
        f = IntPoly.from_roots(roots)
        if f.degree >= 1:
            assert discriminant(f) == expected
    assert discriminant(X3M2) == -108
    assert discriminant(parse_poly("x^4+x+1")) == 229


# 11
def _scan_classes():
    report = scan(X3M2, -50, 50)
    obstructed = {r["lambda"] for r in report.rows if r["outcome"] in ("SigmaObstructed", "UnitValue")}
    sigma = {lam for lam in range(-50, 51) if X3M2(lam) != 0 and sigma_class(X3M2, lam, 1)}
    return obstructed, sigma


def test_c11_obstructed_implies_sigma():
    (obstructed, sigma), dt = timed(_scan_classes)
    assert obstructed <= sigma
    assert dt < 5.0


def test_c11_sigma_implies_obstructed():
    obstructed, sigma = _scan_classes()
    assert sigma <= obstructed, f"sigma_class true but certified: {sorted(sigma - obstructed)[:10]}"


# 12
def test_c12_root_shift():
    r = moebius_shift([0, 1, 6], 5)
    assert all(before == after for _, _, before, after in r.pair_valuations)
    assert all(vp(r.extra - s, 5) == 0 for s in r.shifted)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
