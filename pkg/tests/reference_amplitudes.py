"""Closed-form on-axis amplitudes T^(mM) with unit moments and E0 = 1.

Each entry maps ``(m, M)`` to a function of ``(p, k, w0, a, b)`` where
``(a, b)`` is the Jones pair.  Cells not listed vanish.
"""
import math

SP = math.sqrt(math.pi)
S2 = math.sqrt(2.0)
S3 = math.sqrt(3.0)


def _c1(p, k, w0):
    return math.sqrt(p + 1) / (SP * k * w0)


def _c2(p, k, w0):
    return math.sqrt((p + 1) * (p + 2)) / (SP * k * w0**2)


def _c2m(p, k, w0):
    return math.sqrt((p + 1) * (p + 2)) / (SP * (k * w0) ** 2)


def _lam(p, k, w0):
    return (8 * p + 4 - (k * w0) ** 2) / (k * w0**2 * SP)


def _mu(p, k, w0):
    return math.sqrt(p + 1) * (8 * p + 8 - 3 * (k * w0) ** 2) / (S3 * SP * k**2 * w0**3)


def _nu(p, k, w0):
    return math.sqrt(p + 1) / (SP * w0)


GENERAL = {
    "E1": {
        (-1, 0): lambda p, k, w0, a, b: -2 * S2 * _c1(p, k, w0) * (a + 1j * b),
        (0, -1): lambda p, k, w0, a, b: -1j * S2 * (a - 1j * b) / SP,
        (0, 1): lambda p, k, w0, a, b: 1j * S2 * (a + 1j * b) / SP,
        (1, 0): lambda p, k, w0, a, b: -2 * S2 * _c1(p, k, w0) * (a - 1j * b),
    },
    "M1": {
        (-2, -1): lambda p, k, w0, a, b: 4 * S2 * _c2m(p, k, w0) * (a + 1j * b),
        (-1, 0): lambda p, k, w0, a, b: -2j * S2 * _c1(p, k, w0) * (a + 1j * b),
        (0, -1): lambda p, k, w0, a, b: -S2 / SP * (a - 1j * b),
        (0, 1): lambda p, k, w0, a, b: -S2 / SP * (a + 1j * b),
        (1, 0): lambda p, k, w0, a, b: 2j * S2 * _c1(p, k, w0) * (a - 1j * b),
        (2, 1): lambda p, k, w0, a, b: 4 * S2 * _c2m(p, k, w0) * (a - 1j * b),
    },
    "E2": {
        # (-2, -1) and (0, 1) carry the sign that the spin +1 and linear forms imply
        (-2, -1): lambda p, k, w0, a, b: -4 * S2 * _c2(p, k, w0) * (a + 1j * b),
        (-1, -2): lambda p, k, w0, a, b: 4j * _nu(p, k, w0) * (a - 1j * b),
        (-1, 0): lambda p, k, w0, a, b: 2j * S2 * _mu(p, k, w0) * (a + 1j * b),
        (0, -1): lambda p, k, w0, a, b: S2 * _lam(p, k, w0) * (a - 1j * b),
        (0, 1): lambda p, k, w0, a, b: -S2 * _lam(p, k, w0) * (a + 1j * b),
        (1, 0): lambda p, k, w0, a, b: 2j * S2 * _mu(p, k, w0) * (a - 1j * b),
        (1, 2): lambda p, k, w0, a, b: 4j * _nu(p, k, w0) * (a + 1j * b),
        (2, 1): lambda p, k, w0, a, b: 4 * S2 * _c2(p, k, w0) * (a - 1j * b),
    },
}

SPIN_MINUS = {
    "E1": {
        (0, -1): lambda p, k, w0: -2j / SP,
        (1, 0): lambda p, k, w0: -4 * _c1(p, k, w0),
    },
    "M1": {
        (0, -1): lambda p, k, w0: -2 / SP,
        (1, 0): lambda p, k, w0: 4j * _c1(p, k, w0),
        (2, 1): lambda p, k, w0: 8 * _c2m(p, k, w0),
    },
    "E2": {
        (-1, -2): lambda p, k, w0: 4j * S2 * _nu(p, k, w0),
        (0, -1): lambda p, k, w0: 2 * _lam(p, k, w0),
        (1, 0): lambda p, k, w0: 4j * _mu(p, k, w0),
        (2, 1): lambda p, k, w0: 8 * _c2(p, k, w0),
    },
}

SPIN_PLUS = {
    "E1": {
        (-1, 0): lambda p, k, w0: -4 * _c1(p, k, w0),
        (0, 1): lambda p, k, w0: 2j / SP,
    },
    "M1": {
        (-2, -1): lambda p, k, w0: 8 * _c2m(p, k, w0),
        (-1, 0): lambda p, k, w0: -4j * _c1(p, k, w0),
        (0, 1): lambda p, k, w0: -2 / SP,
    },
    "E2": {
        (-2, -1): lambda p, k, w0: -8 * _c2(p, k, w0),
        (-1, 0): lambda p, k, w0: 4j * _mu(p, k, w0),
        (0, 1): lambda p, k, w0: -2 * _lam(p, k, w0),
        (1, 2): lambda p, k, w0: 4j * S2 * _nu(p, k, w0),
    },
}

LINEAR = {
    "E1": {
        (-1, 0): lambda p, k, w0: -2 * S2 * _c1(p, k, w0),
        (0, -1): lambda p, k, w0: -1j * S2 / SP,
        (0, 1): lambda p, k, w0: 1j * S2 / SP,
        (1, 0): lambda p, k, w0: -2 * S2 * _c1(p, k, w0),
    },
    "M1": {
        (-2, -1): lambda p, k, w0: 4 * S2 * _c2m(p, k, w0),
        (-1, 0): lambda p, k, w0: -2j * S2 * _c1(p, k, w0),
        (0, -1): lambda p, k, w0: -S2 / SP,
        (0, 1): lambda p, k, w0: -S2 / SP,
        (1, 0): lambda p, k, w0: 2j * S2 * _c1(p, k, w0),
        (2, 1): lambda p, k, w0: 4 * S2 * _c2m(p, k, w0),
    },
    "E2": {
        (-2, -1): lambda p, k, w0: -4 * S2 * _c2(p, k, w0),
        (-1, -2): lambda p, k, w0: 4j * _nu(p, k, w0),
        (-1, 0): lambda p, k, w0: 2j * S2 * _mu(p, k, w0),
        (0, -1): lambda p, k, w0: S2 * _lam(p, k, w0),
        (0, 1): lambda p, k, w0: -S2 * _lam(p, k, w0),
        (1, 0): lambda p, k, w0: 2j * S2 * _mu(p, k, w0),
        (1, 2): lambda p, k, w0: 4j * _nu(p, k, w0),
        (2, 1): lambda p, k, w0: 4 * S2 * _c2(p, k, w0),
    },
}

SPECIALIZED = {"circ-": SPIN_MINUS, "circ+": SPIN_PLUS, "linear": LINEAR}
