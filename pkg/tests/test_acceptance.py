"""The eleven acceptance checks, one test each; a summary line per check is printed at the end of the run."""

import itertools
import random
from math import gcd

import pytest

from kanenobu.cyclotomic import CyclotomicNumber
from kanenobu.diagrams import (
    KanenobuParams,
    bbeta_sweep,
    bbeta_white_graph,
    beta_n,
    build_kanenobu_diagram,
    goeritz_matrix,
    kanenobu_sweep,
    mirror_sweep,
    realize,
    white_graph,
)
from kanenobu.intmatrix import determinant, smith_normal_form
from kanenobu.invariants import (
    bracket_state_sum,
    bracket_transfer,
    casson_walker,
    d_invariant_profile,
    jones_polynomial,
    signature,
)
from kanenobu.obstructions import (
    CuspMatrix,
    edge_angle_check,
    lens_bound,
    lens_table,
    shape_parameters_coincide,
    surgery_obstruction,
    verify_cusp_equations,
    weight_one,
)
from kanenobu.presentations import (
    FreeWord,
    abelianize,
    cyclic_canonical,
    enumerate_family,
    kanenobu_matrix,
    kanenobu_presentation,
    match_generators,
    presentation_from_white_graph,
)
from kanenobu.torsion import (
    abelian_fox_matrix,
    delta44,
    fox_matrix,
    torsion_vector,
)

from oracles import reduce_mod_cyclotomic, symbolic_phi_a

GRID = [(n, p, q) for n in range(2, 7) for p in range(-5, 6) for q in range(-5, 6)]


def admissible(n, p, q):
    return gcd(4 * q + p, 2 * n + 1) == 1


@pytest.mark.criterion(1, "determinants of M_{n,p,q} and of the B_beta Goeritz form")
def test_c01_determinants(record_property):
    for n, p, q in GRID:
        assert abs(determinant(kanenobu_matrix(KanenobuParams(n, p, q)))) == (2 * n + 1) ** 2
    for n in range(2, 7):
        assert determinant(goeritz_matrix(bbeta_white_graph(n))) == 2 * n + 1
    record_property("detail", f"{len(GRID)} grid points")


@pytest.mark.criterion(2, "white-graph relators equal the template up to rotation/inversion")
def test_c02_presentation_oracle(record_property):
    rng = random.Random(20260)
    samples = rng.sample(GRID, 20)
    for n, p, q in samples:
        k = KanenobuParams(n, p, q)
        pres = presentation_from_white_graph(white_graph(build_kanenobu_diagram(k)))
        template = kanenobu_presentation(k)
        perm = match_generators(pres, template)
        assert perm is not None, (n, p, q)
        images = {i: FreeWord.gen(perm[i]) for i in range(4)}
        got = sorted(cyclic_canonical(r.substitute(images)) for r in pres.relators)
        assert got == sorted(cyclic_canonical(r) for r in template.relators)
    for n, p, q in GRID:
        k = KanenobuParams(n, p, q)
        assert abelianize(kanenobu_presentation(k)) == kanenobu_matrix(k)
    record_property("detail", "20 sampled diagrams, abelianization on the full grid")


@pytest.mark.criterion(3, "SNF cyclicity matches both gcd tests")
def test_c03_cyclicity(record_property):
    cyclic = 0
    for n, p, q in GRID:
        m = 2 * n + 1
        st = smith_normal_form(kanenobu_matrix(KanenobuParams(n, p, q))).structure
        g1 = gcd(2 * q + (n + 1) * p, m) == 1
        g2 = gcd(4 * q + p, m) == 1
        assert st.is_cyclic == g1 == g2
        if st.is_cyclic:
            cyclic += 1
            assert st.invariant_factors == (1, 1, 1, m * m)
    record_property("detail", f"{cyclic}/{len(GRID)} cyclic")


@pytest.mark.criterion(4, "phi(A) matches the displayed entries; augmentation equals M")
def test_c04_fox_matrix(record_property):
    for n in (2, 3, 4):
        m = 2 * n + 1
        z = CyclotomicNumber.zeta(m)
        one = CyclotomicNumber.from_int(m, 1)
        c = lambda v: CyclotomicNumber.from_int(m, v)
        zn = z ** (n + 1)
        samples = [(p, q) for p in range(-3, 4) for q in range(-3, 4) if admissible(n, p, q)][::7][:5]
        assert len(samples) == 5
        for p, q in samples:
            phi = fox_matrix(kanenobu_presentation(KanenobuParams(n, p, q)), anchor=3).under(m)
            display = [
                [c(-p - 1) - zn, zn, c(p)],
                [one, c(-q) - (one - z ** -(n + 1)) / (one - z ** -1), c(0)],
                [c(p), c(0), one + zn - c(p)],
            ]
            A = symbolic_phi_a(n, p, q)
            for i in range(3):
                assert phi[i][:3] == display[i]
                for j in range(3):
                    assert phi[i][j].coeffs == reduce_mod_cyclotomic(A[i, j], m)
    for n, p, q in GRID:
        k = KanenobuParams(n, p, q)
        fm = abelian_fox_matrix(kanenobu_presentation(k), (0, 0, 0, 0), 1)
        assert [[int(v) for v in r] for r in fm.augmented()] == kanenobu_matrix(k).tolist()
    record_property("detail", "15 symbolic samples, augmentation on the full grid")


def second_differences_vanish(ps, ys, m):
    for (pa, ya), (pb, yb), (pc, yc) in zip(zip(ps, ys), zip(ps[1:], ys[1:]), zip(ps[2:], ys[2:])):
        left = (yb - ya) / CyclotomicNumber.from_int(m, pb - pa)
        right = (yc - yb) / CyclotomicNumber.from_int(m, pc - pb)
        if left != right:
            return False
    return True


@pytest.mark.criterion(5, "phi(Delta^{4,4}) is affine in p with slope -(zeta^{n+1}+zeta+1)")
def test_c05_torsion_linearity(record_property):
    counts = []
    for n in (2, 3):
        m = 2 * n + 1
        _, members = enumerate_family(n, 0, 1, range(-10, 11))
        ps = [k.p for k in members]
        ys = [delta44(k) for k in members]
        assert len(ps) >= 10
        assert second_differences_vanish(ps, ys, m)
        z = CyclotomicNumber.zeta(m)
        slope = -(z ** (n + 1) + z + CyclotomicNumber.from_int(m, 1))
        for p, y in zip(ps, ys):
            assert y == ys[0] + slope * CyclotomicNumber.from_int(m, p - ps[0])
        counts.append(len(ps))
    record_property("detail", f"{counts[0]} and {counts[1]} admissible p values")


def torsion_instances():
    for n in (2, 3):
        _, members = enumerate_family(n, 0, 1, range(-12, 13))
        yield from members
    for k in [(4, 1, 1), (4, -2, 3), (5, 0, 1)]:
        yield KanenobuParams(*k)


@pytest.mark.criterion(6, "torsion vectors sum to zero and are translates of their reversal")
def test_c06_zero_sum_and_symmetry(record_property):
    asym = []
    total = 0
    for k in torsion_instances():
        tv = torsion_vector(k)
        assert tv.total() == 0
        if not tv.has_reversal_symmetry():
            asym.append((k.n, k.p, k.q))
        total += 1
    assert not asym, f"no reversal symmetry for {asym}"
    record_property("detail", f"{total} instances")


def d_extremes(members):
    lam = casson_walker(members[0])
    highs, lows = [[], []], [[], []]
    for k in members:
        prof = d_invariant_profile(k, lam=lam)
        for i, cand in enumerate(prof.sign_candidates):
            highs[i].append(max(cand))
            lows[i].append(min(cand))
    return highs, lows


def strict_from(values, k, up):
    tail = values[k:]
    return all((b > a) if up else (b < a) for a, b in zip(tail, tail[1:]))


def threshold(ps, highs, lows):
    """Least index from which every candidate's max increases and min decreases strictly."""
    for k in range(len(ps) - 1):
        if all(strict_from(h, k, True) and strict_from(l, k, False) for h, l in zip(highs, lows)):
            return k
    return None


@pytest.mark.criterion(7, "d-invariant max/min grow without bound along (2,0,1)")
def test_c07_unboundedness(record_property):
    found = []
    for lo, hi, sign in ((1, 50, 1), (-50, -1, -1)):
        _, members = enumerate_family(2, 0, 1, range(lo, hi + 1))
        members = sorted(members, key=lambda k: sign * k.p)
        ps = [k.p for k in members]
        highs, lows = d_extremes(members)
        k = threshold(ps, highs, lows)
        assert k is not None
        assert len(ps) - k >= 10
        found.append(ps[k])
    record_property("detail", f"monotone from p={found[0]} upward and p={found[1]} downward")


@pytest.mark.criterion(8, "Jones, signature and Casson-Walker suite")
def test_c08_jones_suite(record_property):
    for n in (2, 3):
        for p, q in [(0, 0), (3, -1), (-2, 4), (5, 5), (-5, 2)]:
            a, b = jones_polynomial(KanenobuParams(n, p, q)), jones_polynomial(KanenobuParams(n, p + 1, q - 1))
            assert a == b
            assert abs(a(-1)) == (2 * n + 1) ** 2
        bb = bbeta_sweep(beta_n(n))
        assert jones_polynomial(KanenobuParams(n, 0, 0)) == jones_polynomial(bb) * jones_polynomial(mirror_sweep(bb))
    compared = 0
    for n, p, q in [(2, 0, 0), (2, 1, 0), (2, 0, -1), (2, 1, 1), (2, -1, 1), (2, 2, 0), (3, 0, 0), (2, -2, 0)]:
        k = KanenobuParams(n, p, q)
        ev = kanenobu_sweep(k.braid(), k.p, k.q)
        d = realize(ev)
        if len(d.crossings) <= 12:
            assert bracket_transfer(ev) == bracket_state_sum(d)
            compared += 1
    assert compared >= 6
    for n in (2, 3):
        for p, q in itertools.product(range(-3, 4), repeat=2):
            assert signature(build_kanenobu_diagram(KanenobuParams(n, p, q))) == 0
    lams = {}
    for n in (2, 3):
        _, members = enumerate_family(n, 0, 1, range(-8, 9))
        vals = {casson_walker(k) for k in members}
        assert len(vals) == 1
        lams[n] = vals.pop()
    record_property("detail", f"{compared} diagrams vs state sum; lambda = {lams[2]} (n=2), {lams[3]} (n=3)")


@pytest.mark.criterion(9, "weight-one reduction exponents and verdicts")
def test_c09_weight_one(record_property):
    proven = 0
    for n in range(2, 6):
        for p, q in itertools.product(range(-5, 6), repeat=2):
            r = weight_one(KanenobuParams(n, p, q))
            x = 2 * q + (n + 1) * p
            assert r.exponents == (x + 2 * n + 1, x)
            assert (r.verdict == "proven") == (gcd(x, 2 * n + 1) == 1)
            proven += r.verdict == "proven"
    record_property("detail", f"{proven}/484 proven")


# Below |p| = 67 the extreme d-invariants of this family stay inside the r = 25
# lens bound, so the window |p| <= 50 alone has no obstructed member.  The
# window is widened so the exceptional set is visibly finite.
WIDE = 130


@pytest.mark.criterion(10, "surgery obstruction along (2,0,1) outside a finite exceptional set")
def test_c10_surgery_obstruction(record_property):
    table = lens_table(25)
    assert len(table) == 20 and all(len(v) == 25 for v in table.values())
    bound = lens_bound(25)
    assert bound == 6
    _, members = enumerate_family(2, 0, 1, range(-WIDE, WIDE + 1))
    lam = casson_walker(members[0])
    verdict = {k.p: surgery_obstruction(d_invariant_profile(k, lam=lam), 25).verdict for k in members}
    exceptional = sorted(p for p, v in verdict.items() if v != "obstructed")
    lo, hi = exceptional[0], exceptional[-1]
    # the exceptional set is an interval of admissible p well inside the window
    assert exceptional == [p for p in sorted(verdict) if lo <= p <= hi]
    assert -WIDE + 40 < lo and hi < WIDE - 40
    in_window = [p for p in verdict if abs(p) <= 50]
    obstructed_in_window = sum(verdict[p] == "obstructed" for p in in_window)
    record_property(
        "detail",
        f"lens bound 6; exceptional set = admissible p in [{lo}, {hi}] ({len(exceptional)} members); "
        f"obstructed everywhere else up to |p| = {WIDE}; within |p| <= 50: {obstructed_in_window}/{len(in_window)} obstructed",
    )


@pytest.mark.criterion(11, "cusp equations hold at z = e^(i pi/3)")
def test_c11_cusp(record_property):
    m = CuspMatrix.load()
    assert all(sum(r) == 0 for r in m.rows)
    assert verify_cusp_equations(m)
    assert shape_parameters_coincide()
    assert edge_angle_check(6)
    record_property("detail", "8 rows, all triple-sums 0")
