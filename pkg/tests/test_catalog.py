import json
from collections import Counter

import pytest

from trihom.catalog import (CatalogError, ExpressionError, Instantiation, adjudicate_class, catalog_entry,
                            catalog_list, catalog_verify, entry_membership, evaluate_expression,
                            literal_reading_fails, load_catalog)
from trihom.patterns import enumerate_patterns, iter_all_patterns, symmetry_images

import random

ENTRIES = catalog_list()
PRINTED = [e for e in ENTRIES if e.source == "printed"]


def test_counts():
    assert len(PRINTED) == 47 and len(ENTRIES) == 50
    by_parity = Counter(e.pattern.parity.value for e in PRINTED)
    assert by_parity == {"odd": 20, "mixed": 27}
    mixed = Counter(e.pattern.klass for e in PRINTED if e.pattern.parity.value == "mixed")
    assert mixed == {1: 17, 2: 8, 3: 2}


def test_derived_stubs():
    derived = {e.pattern.multiset if hasattr(e.pattern, "multiset") else tuple(sorted(e.pattern.steps, reverse=True))
               for e in catalog_list("derived")}
    assert derived == {(12, 2, 1, 1), (10, 4, 1, 1), (8, 6, 1, 1)}


def test_named_entries():
    e = catalog_entry("mixed.c3.7-4-4-1")
    assert "phi3t" in " ".join(e.formulas.values())
    assert "psi6t" in " ".join(catalog_entry("odd.c2.7-3-3-3").formulas.values())


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.id)
def test_verify(entry):
    r = catalog_verify(entry)
    assert r.passed, r.describe()


@pytest.mark.parametrize("entry", [e for e in ENTRIES if e.corrected], ids=lambda e: e.id)
def test_corrections_are_needed(entry):
    assert entry.corrections
    assert literal_reading_fails(entry)


def test_verbatim_entries_have_no_corrections():
    for e in ENTRIES:
        if e.status == "verbatim":
            assert e.printed_formulas() == e.formulas


def test_al_half_reading():
    e = catalog_entry("mixed.ci.9-2-3-2")
    assert e.corrected and any("al/2" in c["printed"] for c in e.corrections)
    assert catalog_verify(e).passed


def test_flipped_sign_fails_with_location():
    e = catalog_entry("odd.c1.7-7-1-1")
    forms = dict(e.formulas)
    forms["D"] = "-(" + forms["D"] + ")"
    env = Instantiation(random.Random(1))
    from trihom.catalog import check_assignment
    from trihom.confinement import generate_constraints
    assign = {s: evaluate_expression(forms[s], env) for s in forms}
    r = check_assignment(generate_constraints(e.pattern), assign, e.id, "test")
    assert not r.passed and r.relation and r.n is not None and r.residual != 0


def test_patterns_are_enumerated():
    reps = set(enumerate_patterns(dedup=False))
    for e in ENTRIES:
        assert e.pattern in reps


def test_5533_adjudication():
    assert adjudicate_class(catalog_entry("odd.c1.5-5-3-3")) == [1]
    assert adjudicate_class(catalog_entry("odd.c2.5-5-3-3")) == [2]


@pytest.mark.parametrize("pid", ["odd.c1.7-7-1-1", "odd.c2.5-5-5-1", "mixed.c1.7-2-5-2", "mixed.c1.1-8-1-6"])
def test_membership(pid):
    assert entry_membership(catalog_entry(pid))


def test_seed_reproducible():
    e = catalog_entry("odd.c2.9-1-5-1")
    assert e.instantiate(5) == e.instantiate(5)
    assert e.instantiate(5) != e.instantiate(6)


@pytest.mark.parametrize("text", ["n*n", "1/n", "phi3(2*n)", "import os", "phi3(n+1/2)"])
def test_expression_errors(text):
    with pytest.raises(ExpressionError):
        evaluate_expression(text, Instantiation(random.Random(0)))


def test_expression_shift():
    env = Instantiation(random.Random(0))
    a = evaluate_expression("phi5(n+2)", env)
    b = evaluate_expression("phi5(n)", env)
    assert all(a(n) == b(n + 2) for n in range(10))


def test_bad_catalog_format(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"format": "other", "version": 1, "entries": []}))
    with pytest.raises(CatalogError):
        load_catalog(p)
