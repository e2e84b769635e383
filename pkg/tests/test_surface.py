import random

from hypothesis import given, settings
from hypothesis import strategies as st

from flatstring import (canonical_form, carter_genus, diagram_components,
                        load_genus_table, mirror, parse, trace_faces)
from conftest import random_code


def test_kink_faces():
    d = trace_faces(parse("a+ a+"))
    assert (d.vertices, d.edges, d.n_faces) == (1, 2, 3)
    assert sorted(f.degree for f in d.faces) == [1, 1, 2]


def test_two_loops_one_crossing_faces():
    d = trace_faces(parse("a+ / a+"))
    assert (d.vertices, d.edges, d.n_faces) == (1, 2, 1)


def test_empty_loop_sphere_convention():
    d = trace_faces(parse("()"))
    assert (d.vertices, d.edges, d.n_faces) == (0, 0, 2)
    rep = carter_genus(parse("()"))
    assert rep == (0, (0,), 1, True)


def test_hemispheres_pair():
    rep = carter_genus(parse("() / ()"))
    assert rep.genus_total == 0
    assert rep.component_count == 2
    assert not rep.connected


def test_genus_examples():
    assert carter_genus(parse("a+ a+")).genus_total == 0
    assert carter_genus(parse("a+ / a+")) == (1, (1,), 1, True)


def test_diagram_components_grouping():
    assert diagram_components(parse("a+ / a+")) == ((0, 1),)
    assert diagram_components(parse("a+ a+ / b+ b+")) == ((0,), (1,))
    assert diagram_components(parse("() / ()")) == ((0,), (1,))
    assert diagram_components(parse("a+ b+ / a+ / b+")) == ((0, 1, 2),)


def test_genus_table_oracle():
    table = load_genus_table()
    assert len(table) == 23
    for entry in table:
        rep = carter_genus(entry.code)
        d = trace_faces(entry.code)
        assert rep.genus_total == int(entry.expect["genus"]), entry.name
        assert rep.component_count == int(entry.expect["surface_components"]), entry.name
        assert d.n_faces == int(entry.expect["faces"]), entry.name
        degs = ",".join(str(x) for x in sorted(f.degree for f in d.faces))
        assert degs == entry.expect["face_degrees"], entry.name


def test_genus_table_covers_every_small_class():
    """Exhaustive cross-check: every valid code with <= 2 crossings and no
    crossing-free component canonicalizes into the table (plus the two
    pure crossing-free rows)."""
    import itertools

    from flatstring import GaussCode, Passage, canonical_text

    table_canon = {canonical_text(e.code) for e in load_genus_table()}

    found = {canonical_text(parse("()")), canonical_text(parse("() / ()"))}
    labels = ["a", "b"]
    for k in (1, 2):
        use = labels[:k]
        pool = [lab for lab in use for _ in range(2)]
        for n_comp in range(1, 2 * k + 1):
            for assignment in itertools.product(range(n_comp), repeat=2 * k):
                if set(assignment) != set(range(n_comp)):
                    continue
                words: list[list[str]] = [[] for _ in range(n_comp)]
                for lab, ci in zip(pool, assignment):
                    words[ci].append(lab)
                perms_per_comp = [set(itertools.permutations(w)) for w in words]
                for arrangement in itertools.product(*perms_per_comp):
                    for roles in itertools.product([True, False], repeat=k):
                        first_seen: dict[str, bool] = {}
                        comps = []
                        ok = True
                        for word in arrangement:
                            comp = []
                            for lab in word:
                                if lab not in first_seen:
                                    first_seen[lab] = True
                                    comp.append(Passage(lab, roles[use.index(lab)]))
                                else:
                                    comp.append(Passage(lab, not roles[use.index(lab)]))
                            comps.append(tuple(comp))
                        code = GaussCode(tuple(comps))
                        found.add(canonical_text(code))
    assert found == table_canon
    assert len(found) == 20


@given(st.integers(0, 10**9))
@settings(max_examples=200, deadline=None)
def test_degree_sum_and_parity(seed):
    code = random_code(random.Random(seed))
    d = trace_faces(code)
    assert d.degree_sum == 2 * d.edges
    for g in d.groups:
        assert g.euler % 2 == 0
        assert g.genus >= 0
        if g.vertices:
            assert g.edges == 2 * g.vertices


@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_genus_invariant_under_canonical_and_mirror(seed):
    code = random_code(random.Random(seed))
    rep = carter_genus(code)
    canon_rep = carter_genus(canonical_form(code))
    assert canon_rep.genus_total == rep.genus_total
    assert sorted(canon_rep.genus_per_component) == sorted(rep.genus_per_component)
    assert canon_rep.component_count == rep.component_count
    mirror_rep = carter_genus(mirror(code))
    assert mirror_rep.genus_total == rep.genus_total
    assert mirror_rep.genus_per_component == rep.genus_per_component
