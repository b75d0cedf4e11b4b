import json
import random

import pytest

from leavitt_lab import zoo
from leavitt_lab.errors import (
    HasSources,
    NotCycleBase,
    NotDegreeFree,
    NotSPI,
    OmegaUnsupported,
    ZeroElement,
)
from leavitt_lab.graph import Graph, Path
from leavitt_lab.lpa import (
    degree_component,
    gauss,
    involute,
    multiply,
    path_element,
    vertex_element,
    zero,
)
from leavitt_lab.sample import random_element
from leavitt_lab.spi import (
    annihilating_closed_path,
    cohn_embedding,
    equal_length_closed_paths,
    incomparable_closed_path,
    least_cycle_at,
    path_to_cycle_base,
    spi_witness,
    witness_from_json_obj,
)


# ---------------------------------------------------------------------------
# closed-path machinery
# ---------------------------------------------------------------------------


def test_least_cycle_and_incomparable(r2):
    alpha = least_cycle_at(r2, "v")
    assert alpha == Path("v", ("e",))
    beta = incomparable_closed_path(r2, "v", alpha)
    assert beta == Path("v", ("f",))


def test_least_cycle_rotates_to_base(spi3):
    assert least_cycle_at(spi3, "a") == Path("a", ("e1", "e2", "e3"))
    assert least_cycle_at(spi3, "b") == Path("b", ("e2", "e3", "e1"))
    with pytest.raises(NotCycleBase):
        least_cycle_at(zoo.rand4a(), "zz") if False else least_cycle_at(
            Graph(("u", "v"), (("g", "u", "v"), ("e", "v", "v"), ("f", "v", "v"))), "u"
        )


def test_path_to_cycle_base():
    g = Graph(("u", "v"), (("g", "u", "v"), ("e", "v", "v"), ("f", "v", "v")))
    assert path_to_cycle_base(g, "u") == Path("u", ("g",))
    assert path_to_cycle_base(g, "v") == Path("v")


# ---------------------------------------------------------------------------
# equal-length closed-path families
# ---------------------------------------------------------------------------


def test_family_r2_m2(r2):
    fam = equal_length_closed_paths(r2, ["v"], 2)
    assert fam.common_length == 3
    assert fam.paths["v"] == (Path("v", ("e", "f", "e")), Path("v", ("e", "e", "f")))


def test_family_r2_m1(r2):
    fam = equal_length_closed_paths(r2, ["v"], 1)
    assert fam.common_length == 2
    assert fam.paths["v"] == (Path("v", ("e", "f")),)


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_family_orthogonality(r2, m):
    fam = equal_length_closed_paths(r2, ["v"], m)
    paths = fam.paths["v"]
    assert len(paths) == len(set(paths)) == m
    assert all(p.length == fam.common_length for p in paths)
    v = vertex_element(r2, "v")
    for i, p in enumerate(paths):
        for j, q in enumerate(paths):
            prod = multiply(involute(path_element(r2, p)), path_element(r2, q))
            assert prod == (v if i == j else zero(r2))


def test_family_multi_vertex_common_length(spi3):
    fam = equal_length_closed_paths(spi3, ["a", "b"], 2)
    for v in ("a", "b"):
        assert all(p.length == fam.common_length for p in fam.paths[v])
        assert len(set(fam.paths[v])) == 2


def test_family_common_length_is_lcm():
    # per-vertex lengths 9 and 7 over the two interlocking cycles, so the
    # equalized family lives at their least common multiple
    g = zoo.rand4b()
    fam = equal_length_closed_paths(g, ["p", "q"], 2)
    assert fam.common_length == 63
    for v in ("p", "q"):
        paths = fam.paths[v]
        assert len(set(paths)) == 2
        assert all(p.length == 63 and p.source == v and g.range_of(p) == v for p in paths)
        unit = vertex_element(g, v)
        for i, p in enumerate(paths):
            for j, q_ in enumerate(paths):
                prod = multiply(involute(path_element(g, p)), path_element(g, q_))
                assert prod == (unit if i == j else zero(g))


def test_family_requires_spi(r1):
    with pytest.raises(NotSPI):
        equal_length_closed_paths(r1, ["v"], 2)


def test_family_requires_cycle_base():
    g = Graph(("u", "v"), (("g", "u", "v"), ("e", "v", "v"), ("f", "v", "v")))
    with pytest.raises(NotCycleBase):
        equal_length_closed_paths(g, ["u"], 2)


# ---------------------------------------------------------------------------
# Cohn relation elements
# ---------------------------------------------------------------------------


def test_cohn_r2(r2):
    q = cohn_embedding(r2, "v")
    assert q.s1 == path_element(r2, ("e",))
    assert q.s2 == path_element(r2, ("f",))
    assert q.t1 == involute(q.s1)
    v = vertex_element(r2, "v")
    grid = [[multiply(t, s) for s in (q.s1, q.s2)] for t in (q.t1, q.t2)]
    assert grid[0][0] == v and grid[1][1] == v
    assert grid[0][1].is_zero and grid[1][0].is_zero
    # the range idempotents are orthogonal
    p1 = multiply(q.s1, q.t1)
    p2 = multiply(q.s2, q.t2)
    assert multiply(p1, p2).is_zero


def test_cohn_every_vertex_of_every_spi_fixture():
    fixtures = dict(zoo.spi_fixtures())
    fixtures["omega_spi"] = zoo.omega_spi()
    fixtures["source_spi"] = Graph(
        ("u", "v"), (("g", "u", "v"), ("e", "v", "v"), ("f", "v", "v"))
    )
    for name, g in fixtures.items():
        for v in g.vertices:
            q = cohn_embedding(g, v)
            unit = vertex_element(g, v)
            for i, t in enumerate((q.t1, q.t2)):
                for j, s in enumerate((q.s1, q.s2)):
                    want = unit if i == j else zero(g)
                    assert multiply(t, s) == want, (name, v, i, j)


def test_cohn_multi_edge_routing():
    # two parallel routes from the sourceless... from a non-cycle-base vertex:
    # plain conjugation along one path would give t·s = (route idempotent), not u;
    # the sum over routes telescopes to u by the range relation
    g = Graph(
        ("u", "v"),
        (("g1", "u", "v"), ("g2", "u", "v"), ("e", "v", "v"), ("f", "v", "v")),
    )
    q = cohn_embedding(g, "u")
    u = vertex_element(g, "u")
    assert multiply(q.t1, q.s1) == u
    assert multiply(q.t1, q.s2).is_zero


def test_cohn_deep_and_branching_routes():
    # u1 routes through u2; u3 branches both into the chain and straight to
    # the cycle base, so the recursion mixes depths
    g = Graph(
        ("u1", "u2", "u3", "v"),
        (
            ("a1", "u1", "u2"),
            ("a2", "u2", "v"),
            ("b1", "u3", "u2"),
            ("b2", "u3", "v"),
            ("e", "v", "v"),
            ("f", "v", "v"),
        ),
    )
    for u in ("u1", "u2", "u3", "v"):
        q = cohn_embedding(g, u)
        unit = vertex_element(g, u)
        for i, t in enumerate((q.t1, q.t2)):
            for j, s in enumerate((q.s1, q.s2)):
                want = unit if i == j else zero(g)
                assert multiply(t, s) == want, (u, i, j)


def test_cohn_requires_spi(a2):
    with pytest.raises(NotSPI):
        cohn_embedding(a2, "u")


# ---------------------------------------------------------------------------
# annihilating closed paths
# ---------------------------------------------------------------------------


def test_annihilator_b_is_edge(r2):
    b = path_element(r2, ("e",))
    sigma = annihilating_closed_path(b, "v")
    assert sigma == Path("v", ("f",))
    s = path_element(r2, sigma)
    assert multiply(multiply(involute(s), b), s).is_zero


def test_annihilator_mixed_degrees(r2):
    b = path_element(r2, ("e",)) + involute(path_element(r2, ("e",)))
    sigma = annihilating_closed_path(b, "v")
    assert sigma == Path("v", ("f",))


def test_annihilator_zero_takes_first_candidate(r2):
    assert annihilating_closed_path(zero(r2), "v") == Path("v", ("e",))


def test_annihilator_rejects_degree_zero_part(r2):
    with pytest.raises(NotDegreeFree):
        annihilating_closed_path(vertex_element(r2, "v"), "v")


def test_annihilator_random(spi3, r3):
    rng = random.Random(17)
    for g, v in ((spi3, "a"), (r3, "v")):
        for _ in range(20):
            x = random_element(g, rng, max_terms=4, max_len=3, nonzero=False)
            b = x - degree_component(x, 0)
            sigma = annihilating_closed_path(b, v)
            assert sigma.source == v and g.range_of(sigma) == v
            s = path_element(g, sigma)
            assert multiply(multiply(involute(s), b), s).is_zero


# ---------------------------------------------------------------------------
# the witness
# ---------------------------------------------------------------------------


def check_witness(g, a, w):
    assert multiply(multiply(w.x, a), w.y) == vertex_element(g, w.v)


def test_witness_vertex(r2):
    a = vertex_element(r2, "v")
    w = spi_witness(a)
    check_witness(r2, a, w)
    assert w.v == "v"


def test_witness_single_edge(r2):
    a = path_element(r2, ("e",))
    w = spi_witness(a)
    check_witness(r2, a, w)
    steps = [t["step"] for t in w.trace]
    assert steps == ["Normalize", "Step4", "Step3", "Step2"]
    step4 = w.trace[1]
    assert step4["n"] == 1 and step4["alpha"] == ["e"]
    # frozen deterministic output, derived by hand from the stage choices
    assert w.x == involute(path_element(r2, ("e", "e")))
    assert w.y == path_element(r2, ("e",))


def test_witness_mixed_terms(r2):
    # ef* + f has a nonzero degree-zero part, so the degree shift is skipped
    # and the work happens in the extraction and annihilation stages
    ef = multiply(path_element(r2, ("e",)), involute(path_element(r2, ("f",))))
    a = ef + path_element(r2, ("f",))
    w = spi_witness(a)
    check_witness(r2, a, w)
    steps = [t["step"] for t in w.trace]
    assert steps == ["Normalize", "Step3", "Step2"]
    step2 = [t for t in w.trace if t["step"] == "Step2"][0]
    assert step2["z"] == "omitted (exact)"
    assert not [c for c in step2["b"]] == [] or True  # b may or may not vanish


def test_witness_with_nontrivial_every_stage(r2):
    # purely positive-degree input whose shift leaves an off-degree remainder:
    # the degree shift, extraction and annihilation stages all do real work
    a = path_element(r2, ("e",)) + path_element(r2, ("e", "e")).scale(2)
    w = spi_witness(a)
    check_witness(r2, a, w)
    steps = [t["step"] for t in w.trace]
    assert steps == ["Normalize", "Step4", "Step3", "Step2"]
    step2 = [t for t in w.trace if t["step"] == "Step2"][0]
    assert step2["b"] != []  # the annihilation stage had a nonzero remainder
    assert w.x == involute(path_element(r2, ("e", "f")))
    assert w.y == path_element(r2, ("f",))


def test_witness_negative_degree(r2):
    a = involute(path_element(r2, ("e", "f")))
    w = spi_witness(a)
    check_witness(r2, a, w)
    step4 = [t for t in w.trace if t["step"] == "Step4"][0]
    assert step4["n"] == -2


def test_witness_errors(r1, r2, a2, omega_spi):
    with pytest.raises(ZeroElement):
        spi_witness(zero(r2))
    with pytest.raises(NotSPI):
        spi_witness(vertex_element(r1, "v"))
    with pytest.raises(HasSources):
        spi_witness(vertex_element(zoo.source_into_rose(), "v"))
    with pytest.raises(OmegaUnsupported):
        spi_witness(vertex_element(omega_spi, "v"))
    # acyclic graphs are caught by the sources check or the classifier
    with pytest.raises((HasSources, NotSPI)):
        spi_witness(vertex_element(a2, "u"))


def test_witness_soundness_random_sample():
    rng = random.Random(555)
    for name, g in zoo.spi_fixtures().items():
        for _ in range(15):
            a = random_element(g, rng, max_terms=6, max_len=4)
            w = spi_witness(a)
            check_witness(g, a, w)


def test_witness_corner_locality():
    rng = random.Random(808)
    for g, v in ((zoo.r2(), "v"), (zoo.spi3(), "b")):
        for _ in range(10):
            a = random_element(g, rng, max_terms=4, max_len=3, corner=v)
            vv = vertex_element(g, v)
            assert multiply(multiply(vv, a), vv) == a
            w = spi_witness(a)
            check_witness(g, a, w)
            p = vertex_element(g, w.v)
            assert multiply(multiply(p, multiply(multiply(w.x, a), w.y)), p) == p


def test_step4_shift_identity():
    # shifting a by a ghost path moves the degree-n component to degree 0
    rng = random.Random(99)
    g = zoo.spi3()
    from leavitt_lab.graph import enumerate_paths

    for _ in range(20):
        a = random_element(g, rng, max_terms=4, max_len=3)
        degs = [d for d in a.degrees() if d > 0]
        if not degs:
            continue
        n = degs[0]
        comp = degree_component(a, n)
        w = next(v for v in g.vertices if any(m.beta.source == v for m, _ in comp.terms()))
        alpha = enumerate_paths(g, n, end=w)[0]
        ae = path_element(g, alpha)
        lhs = multiply(degree_component(multiply(a, involute(ae)), 0), ae)
        rhs = multiply(comp, vertex_element(g, w))
        assert lhs == rhs
        assert not rhs.is_zero


def test_witness_fuzz_random_spi_graphs():
    # sample small random multigraphs, keep the source-free SPI ones, and
    # check the witness identity on random elements over each
    from leavitt_lab.graph import Verdict, classify_graph

    rng = random.Random(160693)
    found = 0
    attempts = 0
    while found < 12 and attempts < 4000:
        attempts += 1
        nv = rng.randint(1, 4)
        verts = tuple(f"v{i}" for i in range(nv))
        ne = rng.randint(1, 6)
        edges = tuple(
            (f"e{j}", rng.choice(verts), rng.choice(verts)) for j in range(ne)
        )
        g = Graph(verts, edges)
        if any(g.is_source(v) for v in g.vertices):
            continue
        if classify_graph(g).verdict is not Verdict.SIMPLE_PURELY_INFINITE:
            continue
        found += 1
        for _ in range(5):
            a = random_element(g, rng, max_terms=4, max_len=3)
            w = spi_witness(a)
            check_witness(g, a, w)
    assert found >= 8, f"sampler only found {found} SPI graphs"


def test_witness_deterministic(r2):
    a = path_element(r2, ("e",)) + vertex_element(r2, "v").scale(gauss(0, 1))
    w1 = spi_witness(a)
    w2 = spi_witness(a)
    assert w1.x == w2.x and w1.y == w2.y and w1.v == w2.v
    assert w1.to_json() == w2.to_json()


def test_witness_json_roundtrip(r2):
    a = path_element(r2, ("e",))
    w = spi_witness(a)
    obj = json.loads(w.to_json())
    w2 = witness_from_json_obj(r2, obj)
    assert w2.to_json() == w.to_json()
    check_witness(r2, a, w2)
