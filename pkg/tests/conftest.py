import itertools
import sys
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from stretchwidth.graph import build_ordered_graph  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def ordered_graphs(draw, min_n=0, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_ordered_graph(n, [p for p, c in zip(pairs, chosen) if c])


@st.composite
def merge_sequences(draw, n):
    """Random full merge chain on n vertices, as representative pairs."""
    live = list(range(n))
    merges = []
    while len(live) > 1:
        i, j = sorted(draw(st.lists(st.integers(0, len(live) - 1), min_size=2, max_size=2, unique=True)))
        a, b = live[i], live[j]
        merges.append((a, b))
        live.remove(max(a, b))
    return merges


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {name} {detail}".rstrip())
