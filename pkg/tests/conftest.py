import pytest

from embedlimit.documents import load_family, load_graph

MATRIX_FIXTURES = ["claw_genus", "claw_euler", "ladder_genus", "ladder_euler", "example_q3", "constant_two"]
SEEDED_FIXTURES = MATRIX_FIXTURES + ["grid_genus"]
PUBLISHED_FIXTURES = ["claw_genus", "claw_euler", "grid_genus", "grid_euler", "ladders_genus", "ladders_euler"]
GRAPH_FIXTURES = ["graph_c3", "graph_b2", "graph_d3", "graph_k4", "graph_tree", "graph_p2"]


def family(name):
    return load_family(f"fixture:{name}")


def graph(name):
    return load_graph(f"fixture:{name}")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
