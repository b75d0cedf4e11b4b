"""A small zoo of standard graphs used across tests, scripts and docs."""

from __future__ import annotations

from .graph import Graph


def rose(n: int) -> Graph:
    """One vertex with n loops l1..ln (l1 named e, l2 f, l3 g for small n)."""
    names = ["e", "f", "g", "h", "k", "l", "m", "n"]
    loops = [names[i] if i < len(names) else f"l{i+1}" for i in range(n)]
    return Graph(("v",), tuple((eid, "v", "v") for eid in loops))


def r1() -> Graph:
    return rose(1)


def r2() -> Graph:
    return rose(2)


def r3() -> Graph:
    return rose(3)


def a2() -> Graph:
    """u -> v via e; the 2x2 matrix algebra."""
    return Graph(("u", "v"), (("e", "u", "v"),))


def a3() -> Graph:
    """u -> v -> w; the 3x3 matrix algebra."""
    return Graph(("u", "v", "w"), (("e1", "u", "v"), ("e2", "v", "w")))


def line(n_edges: int) -> Graph:
    """A directed line with n_edges edges v0 -> v1 -> ... -> vn."""
    vertices = tuple(f"v{i}" for i in range(n_edges + 1))
    edges = tuple((f"e{i}", f"v{i-1}", f"v{i}") for i in range(1, n_edges + 1))
    return Graph(vertices, edges)


def two_isolated() -> Graph:
    return Graph(("u", "v"))


def two_roses() -> Graph:
    """Disjoint union of two copies of the 2-rose."""
    return Graph(
        ("v1", "v2"),
        (("e1", "v1", "v1"), ("f1", "v1", "v1"), ("e2", "v2", "v2"), ("f2", "v2", "v2")),
    )


def spi3() -> Graph:
    """3-cycle a -> b -> c -> a with a chord b -> a; simple purely infinite."""
    return Graph(
        ("a", "b", "c"),
        (("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a"), ("f", "b", "a")),
    )


def spi4() -> Graph:
    """4-cycle a -> b -> c -> d -> a with a chord c -> a; sink-free and SPI."""
    return Graph(
        ("a", "b", "c", "d"),
        (
            ("e1", "a", "b"),
            ("e2", "b", "c"),
            ("e3", "c", "d"),
            ("e4", "d", "a"),
            ("f", "c", "a"),
        ),
    )


def loop_with_sink() -> Graph:
    """A loop without exit next to an isolated sink; not simple."""
    return Graph(("v", "w"), (("e", "v", "v"),))


def omega_spi() -> Graph:
    """v emits countably many edges to w, w returns to v; simple purely infinite."""
    return Graph(("v", "w"), (("f", "w", "v"),), (("v", "w"),))


def omega_to_sink() -> Graph:
    """v emits countably many edges into a sink w; not simple."""
    return Graph(("v", "w"), (), (("v", "w"),))


def source_into_rose() -> Graph:
    """A source feeding the 2-rose; SPI with a removable source."""
    return Graph(("u", "v"), (("g", "u", "v"), ("e", "v", "v"), ("f", "v", "v")))


def rand4a() -> Graph:
    """A fixed 4-vertex sample: 3-cycle feeding an exitless loop; not simple."""
    return Graph(
        ("p", "q", "r", "s"),
        (
            ("g1", "p", "q"),
            ("g2", "q", "r"),
            ("g3", "r", "p"),
            ("g4", "r", "s"),
            ("g5", "s", "s"),
        ),
    )


def rand4b() -> Graph:
    """A fixed 4-vertex sample: two interlocking cycles through q; SPI."""
    return Graph(
        ("p", "q", "r", "s"),
        (
            ("g1", "p", "q"),
            ("g2", "q", "p"),
            ("g3", "q", "r"),
            ("g4", "r", "s"),
            ("g5", "s", "q"),
        ),
    )


def standard_graphs() -> dict[str, Graph]:
    """The 12-graph classification fixture set."""
    return {
        "r1": r1(),
        "r2": r2(),
        "r3": r3(),
        "a2": a2(),
        "a3": a3(),
        "two_isolated": two_isolated(),
        "two_roses": two_roses(),
        "spi3": spi3(),
        "loop_with_sink": loop_with_sink(),
        "omega_spi": omega_spi(),
        "rand4a": rand4a(),
        "rand4b": rand4b(),
    }


def spi_fixtures() -> dict[str, Graph]:
    """Every row-finite fixture that classifies simple purely infinite."""
    return {"r2": r2(), "r3": r3(), "spi3": spi3(), "spi4": spi4(), "rand4b": rand4b()}
