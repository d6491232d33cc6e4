"""Shared fixtures and the printed-value tolerance rule.

Golden values quoted from published tables and figure captions carry
limited precision, so ``assert_printed`` accepts the looser of (a) one
unit in the last printed digit and (b) 2% relative.
"""

import os

import pytest

HERE = os.path.dirname(__file__)
CUSHNY_CSV = os.path.join(HERE, "data", "cushny_peebles.csv")

# Cushny & Peebles (1905) extra-sleep data, the classic two-drug example.
CUSHNY_A = [0.7, -1.6, -0.2, -1.2, -0.1, 3.4, 3.7, 0.8, 0.0, 2.0]
CUSHNY_B = [1.9, 0.8, 1.1, 0.1, -0.1, 4.4, 5.5, 1.6, 4.6, 3.4]


def last_digit_unit(printed):
    """One unit in the last printed digit of a decimal literal."""
    s = printed.strip().lower()
    if "e" in s:
        mant, exp = s.split("e")
        return last_digit_unit(mant) * 10.0 ** int(exp)
    if "." in s:
        return 10.0 ** -(len(s.split(".")[1]))
    return 1.0


def printed_tol(printed):
    value = float(printed)
    return max(last_digit_unit(printed), 0.02 * abs(value))


def assert_printed(got, printed, label=""):
    """Assert ``got`` matches a printed golden value at its tolerance."""
    value = float(printed)
    tol = printed_tol(printed)
    assert abs(got - value) <= tol, (
        f"{label or 'value'}: got {got!r}, printed value {printed} "
        f"(tolerance {tol:g})"
    )


@pytest.fixture
def cushny():
    return list(CUSHNY_A), list(CUSHNY_B)


@pytest.fixture
def cushny_csv():
    return CUSHNY_CSV
