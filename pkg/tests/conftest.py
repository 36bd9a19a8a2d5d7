from fractions import Fraction

from hypothesis import strategies as st

from discretez.numeric import DiscreteSet

small_rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)
positive_rationals = st.fractions(min_value=Fraction(1, 40), max_value=60, max_denominator=40)


def discrete_sets(elements=small_rationals, min_size=0, max_size=20):
    return st.lists(elements, min_size=min_size, max_size=max_size, unique=True).map(DiscreteSet.of)


def positive_sets(min_size=1, max_size=20):
    return st.lists(positive_rationals, min_size=min_size, max_size=max_size, unique=True).map(
        lambda xs: DiscreteSet.of(xs, positive_only=True)
    )


# acceptance verdicts, one line per criterion, echoed after the run
_VERDICTS = []


def record_verdict(line: str):
    _VERDICTS.append(line)


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
