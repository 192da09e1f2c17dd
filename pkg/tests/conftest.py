from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from lietriple.scalars import exact_array

small_q = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def q_matrix(rows, cols, elements=small_q):
    """Strategy for exact ``rows x cols`` object arrays."""
    return st.lists(elements, min_size=rows * cols, max_size=rows * cols).map(
        lambda xs: exact_array(np.array(xs, dtype=object).reshape(rows, cols))
    )


def frac_list(arr):
    return [[Fraction(x) for x in row] for row in arr]


def pytest_terminal_summary(terminalreporter):
    rows = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            for name, value in getattr(rep, "user_properties", []):
                if name == "criterion":
                    rows.append(value)
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status, elapsed, limit in sorted(rows):
        budget = f" (limit {limit:g}s)" if limit else ""
        terminalreporter.write_line(f"criterion {number:2d} {status}  {elapsed:6.2f}s{budget}  {title}")
