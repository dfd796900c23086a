from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_rationals = st.fractions(min_value=0, max_value=8, max_denominator=6)
signed_rationals = st.fractions(min_value=-8, max_value=8, max_denominator=6)


def quad(strategy=small_rationals):
    return st.tuples(strategy, strategy, strategy, strategy)


def aligned_bond_json():
    return {"n": 2, "edges": [[[0, p], [1, p]] for p in (1, 2, 3, 4)]}


F = Fraction


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
