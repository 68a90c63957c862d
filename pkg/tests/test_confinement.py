import random
import warnings
from fractions import Fraction as F

import flint
import pytest

from trihom.catalog import catalog_entry
from trihom.confinement import (InfeasibleSystem, PeriodTooSmall, coordinates, effective_period,
                                generate_constraints, generic_system, solve_constraints, solve_ladder,
                                stabilized_period, verify_membership)
from trihom.patterns import iter_all_patterns, make_pattern, parse_pattern
from trihom.sequences import QuasiPeriodicSequence as Q


def rel_strings(pattern_id):
    return {str(c) for c in generate_constraints(parse_pattern(pattern_id)).constraints}


def test_odd_c1_7711_relations():
    rels = rel_strings("odd.c1.7-7-1-1")
    assert "C[0] + A[1] = zeta[0]" in rels
    assert "A[0] + C[3] = z[0]+zeta[0]+z[1]+zeta[1]+z[2]+zeta[2]+z[3]" in rels


def test_odd_c2_7171_relations():
    rels = rel_strings("odd.c2.7-1-7-1")
    assert "B[0] + D[0] = z[0]" in rels
    assert "C[0] + B[4] = zeta[0]+z[1]+zeta[1]+z[2]+zeta[2]+z[3]+zeta[3]" in rels


def test_generic_relations():
    rels = {str(c) for c in generic_system().constraints}
    assert "A1[0] + C1[0] = z[0]" in rels and "C1[0] + A1[1] = zeta[0]" in rels


@pytest.mark.parametrize("p", list(iter_all_patterns())[::7])
def test_length_law(p):
    for c, (e, f, s) in zip(generate_constraints(p).constraints, p.triples()):
        assert len(c.right) == s
        names = [t.symbol for t in c.right]
        first = "z" if e in "AB" else "zeta"
        assert names[0] == first
        assert all(a != b for a, b in zip(names, names[1:]))


def dense_dimension(cs, L):
    """Independent oracle: nullity of the full slope/table system at period L."""
    syms = list(cs.symbols)
    ncol = len(syms) * (L + 1)
    col = lambda s, r: syms.index(s) * (L + 1) + (0 if r is None else 1 + r % L)
    rows = []
    for rel in cs.relations():
        slope_row = [0] * ncol
        for c, t in rel.terms():
            slope_row[col(t.symbol, None)] += c
        rows.append(slope_row)
        for r in range(L):
            row = [0] * ncol
            for c, t in rel.terms():
                row[col(t.symbol, None)] += c * (r + t.shift) - c * r
                row[col(t.symbol, r + t.shift)] += c
            rows.append(row)
    flat = [flint.fmpq(c.numerator, c.denominator) for row in rows for c in map(F, row)]
    return ncol - flint.fmpq_mat(len(rows), ncol, flat).rank()


@pytest.mark.parametrize("pid", ["odd.c1.7-7-1-1", "odd.c2.13-1-1-1", "mixed.c1.11-2-1-2", "mixed.c3.7-4-4-1",
                                 "even.c1.6-6-2-2"])
@pytest.mark.parametrize("L", [1, 2, 6, 12])
@pytest.mark.filterwarnings("ignore::trihom.confinement.PeriodTooSmall")
def test_dimension_against_dense_oracle(pid, L):
    cs = generate_constraints(parse_pattern(pid))
    assert solve_constraints(cs, L, strict=False).dimension == dense_dimension(cs, L)


@pytest.mark.filterwarnings("ignore::trihom.confinement.PeriodTooSmall")
def test_monotone_dimension():
    cs = generate_constraints(parse_pattern("odd.c2.5-5-5-1"))
    dims = {L: solve_constraints(cs, L, strict=False).dimension for L in (1, 2, 3, 6, 9, 18, 36)}
    for a in dims:
        for b in dims:
            if b % a == 0:
                assert dims[a] <= dims[b]


def test_generic_space():
    for L in (1, 6, 60, 2520):
        sp = solve_constraints(generic_system(), L)
        assert sp.dimension == 9
        for b in sp.basis:
            z, zeta = b["z"], b["zeta"]
            assert z.period == 1
            assert all(z(n + 1) - 2 * z(n) + z(n - 1) == 0 for n in range(10))
            assert all(2 * zeta(n) == z(n + 1) + z(n) for n in range(10))


def test_infeasible_with_certificate():
    cs = generate_constraints(parse_pattern("even.c1.10-2-2-2"))
    with pytest.raises(InfeasibleSystem) as err:
        solve_constraints(cs)
    cert = err.value.certificate
    assert {c["functional"] for c in cert} == {"slope(z+zeta)", "mean(z+zeta)"}
    assert all(c["combination"] for c in cert)


def test_period_too_small_warns():
    cs = generate_constraints(parse_pattern("odd.c2.5-5-5-1"))
    with pytest.warns(PeriodTooSmall):
        sp = solve_constraints(cs, 6)
    assert sp.hint
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        solve_constraints(cs, 2520)


def test_ladder_stabilization():
    sp = solve_ladder(generate_constraints(parse_pattern("odd.c2.13-1-1-1")))
    assert stabilized_period(sp) == 60
    assert [d for _, d in sp.ladder] == sorted(d for _, d in sp.ladder)


def test_effective_period_divides():
    cs = generate_constraints(parse_pattern("odd.c1.7-7-1-1"))
    L_eff, det = effective_period(cs, 2520)
    assert 2520 % L_eff == 0 and L_eff == 12


def test_substitution_and_infinity_relations():
    cs = generate_constraints(parse_pattern("mixed.c2.7-4-1-4"))
    sp = solve_constraints(cs)
    m = sp.random_member(random.Random(3))
    L = sp.period
    assert cs.first_residual(m, range(2 * L)) is None
    for n in range(2 * L):
        assert m["A"](n) + m["B"](n) == 2 * (m["z"](n) + m["zeta"](n - 1))
        assert m["C"](n) + m["D"](n) == 2 * (m["z"](n) + m["zeta"](n))


def test_membership():
    e = catalog_entry("odd.c2.13-1-1-1")
    sp = solve_constraints(generate_constraints(e.pattern))
    fam = e.instantiate()
    assert verify_membership(sp, fam)
    bad = dict(fam)
    t = list(bad["A"].table)
    t[0] += 1
    bad["A"] = Q(bad["A"].slope, t)
    assert not verify_membership(sp, bad)
    assert verify_membership(sp, sp.particular)
    assert coordinates(sp, sp.member([1] * sp.dimension)) == [F(1)] * sp.dimension


def test_homogeneous_zero_in_every_space():
    for pid in ("odd.c1.7-7-1-1", "mixed.c1.3-6-1-6"):
        sp = solve_constraints(generate_constraints(parse_pattern(pid)))
        zero = {s: Q() for s in sp.system.symbols}
        assert verify_membership(sp, zero)
