"""Hand-verified constructions used across the test suite.

The running worked example is the 1x2 row function
``F(z) = (phi(z), 1) / sqrt(2)`` with ``phi`` the Blaschke factor at
``alpha``; for ``|alpha| < 1`` it is lossless with a one-state realization
whose gramians are known in closed form.
"""

import numpy as np

from paraunit import COISO, BlaschkePotapovForm, Pole, StateSpaceRealization

SQRT2 = np.sqrt(2.0)


def row_example_bp(alpha=0.5):
    """Product form of F(z) = (phi_alpha(z), 1) / sqrt(2)."""
    return BlaschkePotapovForm(
        COISO,
        1,
        2,
        [(Pole(alpha), np.array([1.0, 0.0], dtype=complex))],
        np.array([[1.0, 1.0]], dtype=complex) / SQRT2,
    )


def row_example_ss_normalized(alpha=0.5):
    """The balanced one-state realization (realization matrix coisometric)."""
    s = np.sqrt(1.0 - abs(alpha) ** 2)
    return StateSpaceRealization(
        [[alpha]],
        [[s, 0.0]],
        [[s / SQRT2]],
        [[-np.conj(alpha) / SQRT2, 1.0 / SQRT2]],
    )


def row_example_ss_unnormalized(alpha=0.5):
    """An equivalent realization of the same function, C = 1 (not coisometric)."""
    return StateSpaceRealization(
        [[alpha]],
        [[(1.0 - abs(alpha) ** 2) / SQRT2, 0.0]],
        [[1.0]],
        [[-np.conj(alpha) / SQRT2, 1.0 / SQRT2]],
    )


def row_example_embedded(alpha=0.5):
    """Unitary completion of the balanced realization matrix (one extra row)."""
    s = np.sqrt(1.0 - abs(alpha) ** 2)
    return np.array(
        [
            [alpha, s, 0.0],
            [s / SQRT2, -np.conj(alpha) / SQRT2, 1.0 / SQRT2],
            [s / SQRT2, -np.conj(alpha) / SQRT2, -1.0 / SQRT2],
        ],
        dtype=complex,
    )


def row_example_value(alpha, z):
    """Direct evaluation of F(z) = (phi(z), 1)/sqrt(2), bypassing the forms."""
    phi = (1.0 - np.conj(alpha) * z) / (z - alpha)
    return np.array([[phi, 1.0]], dtype=complex) / SQRT2


def square_embedding_value(alpha, z):
    """The doubly-indexed square member with F(z) = (1, 0) @ F_m(z)."""
    phi = (1.0 - np.conj(alpha) * z) / (z - alpha)
    return np.array([[phi, 1.0], [-1.0, 1.0 / phi]], dtype=complex) / SQRT2
