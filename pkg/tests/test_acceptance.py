"""Acceptance suite: eleven exact criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed even
without ``-s``).
"""

import itertools
import random

import pytest

from conftest import random_torus, random_torus_element
from quadid.extend import (
    PressedAssignment,
    build_weights,
    exponent_witness,
    extend_f0,
    lemma_violations,
    reconstruct,
    verify_wcast,
)
from quadid.grid import ExtendedGrid, enumerate_flows, flow_weight, grid_commutation, path_matrix, pressed_corteges
from quadid.identities import (
    coplucker_instances,
    dodgson_instances,
    evaluate_qi,
    make_dodgson,
    plucker_instances,
)
from quadid.ncalg import AlgebraElement, QMatrixPresentation, pbw_reduce, rewrite_normal_form, torus_left_divide
from quadid.qminor import Cortege, all_corteges, double_intervals, generic_qmatrix, interval_qc, manin_violations, quantum_minor
from quadid.scalar import q

C = Cortege.of
UP_TO_3 = [(m, n) for m in range(1, 4) for n in range(1, 4)]


@pytest.fixture
def report(capsys):
    def emit(number, title, failures, checked):
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number:>2}: {title} ({checked} checks, {len(failures)} failures)")
        assert not failures, failures[:5]

    return emit


def _vanish(exprs, X):
    return [str(e) for e in exprs if not evaluate_qi(e, X).is_zero()]


def test_c01_manin_generic(report):
    fails, checked = [], 0
    for m, n in [(3, 3), (3, 4)]:
        fails += manin_violations(generic_qmatrix(m, n))
        checked += 1
    report(1, "Manin relations on generic 3x3 and 3x4", fails, checked)


def test_c02_plucker(report):
    e3, e4 = plucker_instances(3, 3), plucker_instances(4, 4)
    fails = _vanish(e3, generic_qmatrix(3, 3)) + _vanish(e4, generic_qmatrix(4, 4))
    assert e3 and e4
    report(2, "Plucker family, all instances at 3x3 and 4x4", fails, len(e3) + len(e4))


def test_c03_coplucker(report):
    e3, e4 = coplucker_instances(3, 3), coplucker_instances(4, 4)
    fails = _vanish(e3, generic_qmatrix(3, 3)) + _vanish(e4, generic_qmatrix(4, 4))
    assert e3 and e4
    report(3, "co-Plucker family, all instances at 3x3 and 4x4", fails, len(e3) + len(e4))


def test_c04_dodgson(report):
    fails, checked = [], 0
    for m in range(1, 5):
        X = generic_qmatrix(m, m)
        exprs = dodgson_instances(m, m)
        fails += _vanish(exprs, X)
        checked += len(exprs)
    # with A = B = empty the identity is the literal 2x2 expansion
    X = generic_qmatrix(4, 4)
    d = lambda r, c: quantum_minor(X, C(r, c))  # noqa: E731
    for i, j in itertools.product(range(1, 4), repeat=2):
        k, l = i + 1, j + 1
        literal = d([i, k], [j, l]) - (d([i], [j]) * d([k], [l]) - (d([i], [l]) * d([k], [j])).scale(q(1)))
        ours = evaluate_qi(make_dodgson(i, k, j, l, 4, 4), X)
        checked += 1
        if literal or ours:
            fails.append((i, k, j, l))
    report(4, "Dodgson family for m=n<=4 and the literal base case", fails, checked)


def test_c05_interval_qc(report):
    X = generic_qmatrix(3, 3)
    fails, checked = [], 0
    cs = double_intervals(3, 3)
    for a, b in itertools.product(cs, repeat=2):
        ok, c = interval_qc(a, b)
        if not ok:
            continue
        checked += 1
        big, small = (a, b) if a.size >= b.size else (b, a)
        I, J = big.rows, big.cols
        alpha = sum(i < I[0] for i in small.rows)
        beta = sum(i > I[-1] for i in small.rows)
        gamma = sum(j < J[0] for j in small.cols)
        delta = sum(j > J[-1] for j in small.cols)
        formula = beta + delta - alpha - gamma
        if (c if big == a else -c) != formula:
            fails.append((str(a), str(b), "exponent"))
        da, db = quantum_minor(X, a), quantum_minor(X, b)
        if da * db != (db * da).scale(q(c)):
            fails.append((str(a), str(b), "pbw"))
    report(5, "interval quasi-commutation verdicts on 3x3", fails, checked)


def test_c06_lindstrom(report):
    fails, checked = [], 0
    for m, n in UP_TO_3:
        g = ExtendedGrid(m, n)
        P = path_matrix(g)
        for c in all_corteges(m, n):
            total = AlgebraElement.zero(g.torus)
            for f in enumerate_flows(g, c):
                total = total + flow_weight(g, f)
            checked += 1
            if quantum_minor(P, c) != total:
                fails.append(((m, n), str(c)))
    report(6, "Lindstrom flow expansion for m,n<=3", fails, checked)


def test_c07_path_matrix_is_quantum(report):
    P = path_matrix(ExtendedGrid(3, 3))
    report(7, "path matrix of G_3,3 satisfies Manin relations", manin_violations(P), 1)


def test_c08_exponent_calculus(report):
    fails, checked = [], 0
    for m, n in itertools.product(range(1, 5), repeat=2):
        cs = pressed_corteges(m, n)
        for p1, p2 in itertools.product(cs, repeat=2):
            w = exponent_witness(p1, p2, strict=False)
            u, v = w.vertices
            checked += 1
            expect = 0 if u == v else grid_commutation(u, v)
            if not w.consistent or w.d != expect:
                fails.append(((m, n), str(p1), str(p2), w.d, w.phi + w.psi, expect))
            for clause in lemma_violations(w):
                fails.append(((m, n), str(p1), str(p2), clause))
    report(8, "exponent calculus on pressed pairs for m,n<=4", fails, checked)


def test_c09_extension_pipeline(report):
    fails, checked = [], 0
    for m, n in UP_TO_3:
        pa = PressedAssignment.generic(m, n)
        fails += [f.describe() for f in verify_wcast(build_weights(pa), pa)]
        table = extend_f0(pa)
        for c in pa.corteges:
            checked += 1
            if table[c] != pa[c]:
                fails.append(((m, n), "restriction", str(c)))
        exprs = plucker_instances(m, n) + coplucker_instances(m, n) + dodgson_instances(m, n)
        checked += len(exprs)
        fails += [((m, n), s) for s in _vanish(exprs, table)]
    report(9, "extension of generic pressed values for m,n<=3", fails, checked)


def test_c10_reconstruction(report):
    fails, checked = [], 0
    for m, n in UP_TO_3:
        pa = PressedAssignment.generic(m, n)
        table = extend_f0(pa)
        trace = []
        rebuilt = reconstruct(table.restrict_to_pint(), pa.torus, m, n, trace=trace)
        checked += len(table)
        fails += [((m, n), str(c)) for c in rebuilt.differences(table)]
        fails += [((m, n), "zero pivot", str(s.pivot)) for s in trace if not table[s.pivot]]
    report(10, "reconstruction from pressed values for m,n<=3", fails, checked)


def test_c11_property_suites(report):
    rng = random.Random(11)
    alg = QMatrixPresentation(3, 3)
    fails = []
    for _ in range(1000):
        word = [rng.randrange(9) for _ in range(rng.randint(0, 6))]
        if pbw_reduce(alg, word) != rewrite_normal_form(alg, word, rng=rng):
            fails.append(("confluence", word))
    for _ in range(1000):
        T = random_torus(rng, rng.randint(1, 4))
        a, b, c = (random_torus_element(rng, T) for _ in range(3))
        if (a * b) * c != a * (b * c):
            fails.append(("associativity", str(a), str(b), str(c)))
    for _ in range(1000):
        T = random_torus(rng, rng.randint(1, 4))
        p, x = random_torus_element(rng, T), random_torus_element(rng, T)
        if torus_left_divide(p, p * x) != x:
            fails.append(("division", str(p), str(x)))
    report(11, "confluence, associativity and division round trips", fails, 3000)
