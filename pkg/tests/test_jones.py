import random
from itertools import combinations

import pytest

from kervaire.f2core import rank
from kervaire.grouphom import RelatorError, generated_group, local_homology, permutation_representation
from kervaire.jones import (
    CATALOG,
    PAIRS,
    STATED_PAIRS,
    NamedCycle,
    QEntry,
    QPair,
    QTable,
    arf_jones,
    base_graded_sum,
    build_jones_data,
    catalog_checks,
    declared_arf,
    default_q_table,
    flat_bundle_checks,
    full_betti_vector,
    gram_checks,
    h15_consistency_report,
    monodromy_checks,
    pair_name,
    paper_cycles,
    relator_chain_map,
    subset_permutation,
    trivial_form_checks,
)
from kervaire.quadform import RefinementError
from kervaire.report import FAIL

DATA = build_jones_data()
BETTI = [1, 3, 1, 0, 0, 0, 0, 1, 6, 1, 0, 0, 0, 0, 2, 10, 2, 0, 0, 0, 0, 1, 6, 1, 0, 0, 0, 0, 1, 3, 1]


def _orbits(perms, n):
    seen, out = set(), []
    for start in range(n):
        if start in seen:
            continue
        orbit, todo = {start}, [start]
        while todo:
            x = todo.pop()
            for p in perms:
                if p[x] not in orbit:
                    orbit.add(p[x])
                    todo.append(p[x])
        seen |= orbit
        out.append(sorted(orbit))
    return out


def _shapiro_h1(pres, perms):
    """Sum over orbits of b_1 of the connected cover of P^2 of that degree."""
    chi = pres.euler_characteristic
    return sum(2 - chi * len(o) for o in _orbits(list(perms.values()), len(next(iter(perms.values())))))


def test_pair_helpers():
    assert pair_name("da") == "AD"
    with pytest.raises(ValueError):
        pair_name("AA")
    assert PAIRS == ("AB", "AC", "AD", "BC", "BD", "CD")
    assert subset_permutation([1, 0, 2, 3], 2) == [0, 3, 4, 1, 2, 5]


def test_monodromy_group_and_fixed_pairs():
    assert DATA.group_order == 8 == len(generated_group(DATA.point_perms.values()))
    om = DATA.omega
    assert om.fixed_pairs("a") == ["AC", "BD"]
    assert om.fixed_pairs("b1") == ["AB", "CD"]
    assert om.fixed_pairs("b2") == ["AD", "BC"]
    assert all(c.status != FAIL for c in monodromy_checks(DATA))


def test_covering_space_oracle():
    # Omega splits into the orbit {AC, BD} (degree 2 cover) and the other four pairs (degree 4)
    perms = {g: subset_permutation(p, 2) for g, p in DATA.point_perms.items()}
    orbits = _orbits(list(perms.values()), 6)
    assert sorted(len(o) for o in orbits) == [2, 4]
    dims = []
    for o in orbits:
        relabel = {x: i for i, x in enumerate(o)}
        sub = {g: [relabel[p[x]] for x in o] for g, p in perms.items()}
        dims.append(local_homology(DATA.presentation, permutation_representation(DATA.presentation, sub)).dims)
    assert sorted(dims) == [(1, 4, 1), (1, 6, 1)]
    assert local_homology(DATA.presentation, DATA.omega.representation).dims == (2, 10, 2)


def test_shapiro_oracle_random_representations():
    rng = random.Random(11)
    pres = DATA.presentation
    tried = 0
    while tried < 25:
        perms = {g: rng.sample(range(4), 4) for g in pres.generators}
        try:
            rep = permutation_representation(pres, {g: subset_permutation(p, 2) for g, p in perms.items()})
        except RelatorError:
            continue
        tried += 1
        pair_perms = {g: subset_permutation(p, 2) for g, p in perms.items()}
        assert local_homology(pres, rep).dims[1] == _shapiro_h1(pres, pair_perms)


def test_betti_vector_frozen():
    b = full_betti_vector(DATA)
    assert b == BETTI
    assert sum((-1) ** n * x for n, x in enumerate(b)) == 0
    assert base_graded_sum(DATA) == -16


def test_h15_report():
    checks = {c.name: c for c in h15_consistency_report(DATA)}
    assert all(c.status != FAIL for c in checks.values())
    assert checks["b_15"].computed == "10" and checks["b_15"].status == "mismatch"
    assert checks["rank of boundary map (relator chain map)"].status == "pass"
    R = relator_chain_map(DATA)
    om = DATA.omega
    assert R.apply(om.vector("AC", "BD")).is_zero()
    assert R.apply(om.vector("AB", "AD", "BC", "CD")).is_zero()
    assert not R.apply(om.vector("AB", "CD")).is_zero()


def test_gram():
    gram = DATA.duality().gram
    assert gram.rows == 10 and rank(gram) == 10
    assert gram.is_symmetric() and gram.diagonal().is_zero()
    assert all(c.status != FAIL for c in gram_checks(DATA))


def test_catalog_facts():
    cat = paper_cycles(DATA)
    assert len(cat.classes) == len(CATALOG) == 11
    i, j = STATED_PAIRS[0]
    assert cat.intersection(i, j) == 1
    # pairs 2 and 4 do not intersect
    assert cat.intersection(*STATED_PAIRS[1]) == 0
    assert cat.intersection(*STATED_PAIRS[3]) == 0
    # transport around a b1 a^-1 moves AC and CD
    assert not cat.classes[cat.index("[A x C x a b1 a^-1]'")].valid
    assert not cat.classes[cat.index("[C x D x a b1 a^-1]'")].valid
    assert cat.same_class(cat.index("[C x D x b1]"), cat.index("[A x D x a b1 a^-1]'"))
    assert cat.same_class(cat.index("[B x C x b2]"), cat.index("[A x B x a b2 a^-1]'"))
    assert all(c.status != FAIL for c in catalog_checks(DATA))


def test_named_cycle_labels():
    assert NamedCycle.make("b1", "DC").label == "[C x D x b1]"
    assert NamedCycle.make("a b1 a^-1", "AD").label == "[A x D x a b1 a^-1]'"


def test_declared_arf():
    res = declared_arf(default_q_table())
    assert res.value == 1 and res.completions == 18 and res.dim == 8
    rng = random.Random(2)
    for _ in range(5):
        perm = list(range(8))
        rng.shuffle(perm)
        assert declared_arf(default_q_table(), perm).value == 1


def test_declared_arf_oracle_is_sum_of_products():
    rng = random.Random(5)
    C = NamedCycle.make
    for _ in range(30):
        vals = [(rng.randint(0, 1), rng.randint(0, 1)) for _ in range(4)]
        table = QTable(tuple(QPair(QEntry(C("a", "AC"), x), QEntry(C("a", "BD"), y)) for x, y in vals))
        assert declared_arf(table).value == sum(x * y for x, y in vals) % 2


def test_undetermined_and_inconsistent_tables():
    C = NamedCycle.make
    loose = QTable((QPair(QEntry(C("a", "AC"), None), QEntry(C("a", "BD"), None)),))
    assert declared_arf(loose).value is None
    with pytest.raises(ValueError):
        QTable((QPair(QEntry(C("a", "AC"), 1), QEntry(C("a", "BD"), 1), contribution=0),))
    with pytest.raises(ValueError):
        QTable((QPair(QEntry(C("a", "AC"), 2), QEntry(C("a", "BD"), 0)),))


def test_arf_jones_report_and_strict():
    rep = arf_jones(data=DATA)
    assert rep.declared.value == 1 and rep.b15 == 10 and rep.covered_dim == 8
    assert len(rep.realized.gram_mismatches) == 2
    assert len(rep.realized.invalid) == 1
    assert rep.realized.q_conflicts == ()
    assert (rep.realized.span_dim, rep.realized.span_rank) == (5, 2)
    with pytest.raises(RefinementError):
        arf_jones(data=DATA, strict=True)


def test_flat_bundle_classes():
    checks = {c.name: c for c in flat_bundle_checks()}
    assert checks["w1 on (a, b1, b2)"].computed == "(1, 0, 0)"
    assert checks["w1^2 [P^2]"].computed == "1"
    assert checks["w2 [P^2] (Pin+ obstruction)"].computed == "1"
    assert checks["(w2 + w1^2) [P^2] (Pin- obstruction)"].computed == "0"
    assert all(c.status == "pass" for c in trivial_form_checks())


def test_other_monodromy():
    # identity monodromy: Omega trivial of rank 6 and dim H_1(P^2; F2) = 3
    data = build_jones_data({"a": "()", "b1": "()", "b2": "()"})
    assert data.group_order == 1
    assert full_betti_vector(data)[15] == 18
    assert full_betti_vector(data) == full_betti_vector(data)[::-1]
    assert [len(list(combinations(range(4), s))) for s in range(5)] == [1, 4, 6, 4, 1]
