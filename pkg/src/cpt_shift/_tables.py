"""
Closed-form coefficients of the strong-coupling absorption profile

    chi''_1(delta) = Gamma * rabi_2**2 * sum_n A_n delta**n / sum_n B_n delta**n

for uniform decay, gamma_12 = 0 and real drive. ``A_0 = B_0 = 0`` in this
normalization (numerator and denominator share the factor ``-delta``), so
only ``A_1..A_7`` and ``B_1..B_9`` are tabulated.

Two tables are kept. ``printed_table`` transcribes the tabulated listing
literally, including its misprints; ``corrected_table`` is the form that
agrees identically with the adiabatic solution. They differ in A_2, A_3,
A_4, B_2, B_3, B_5 and B_7.
"""
from __future__ import annotations


def _common(G, w, o1, o2, p1, p2):
    a1, a2 = o1 ** 2, o2 ** 2
    q1, q2 = 1 + p1 ** 2, 1 + p2 ** 2
    return a1, a2, q1, q2, a1 + a2, q1 * a1 + q2 * a2


def _shared(G, w, o1, o2, p1, p2, A, B):
    # entries where the listing is correct as printed
    a1, a2, q1, q2, S, T = _common(G, w, o1, o2, p1, p2)
    A[1] = -64 * (p1 - p2) ** 2 * (G ** 2 * T ** 2
                                   + (q1 * a1 ** 2 + 2 * (1 + p1 * p2) * a1 * a2 + q2 * a2 ** 2) * w ** 2)
    A[5] = 16 * (-2 * G ** 2 * q1 * q2 + 2 * w ** 2 - p2 ** 2 * w ** 2 + p1 ** 4 * a1
                 - 2 * p1 ** 3 * p2 * a1 + p2 ** 2 * a1 + p2 ** 2 * a2 + p2 ** 4 * a2
                 - 2 * p1 * p2 * (a1 + q2 * a2) + p1 ** 2 * (-w ** 2 + q2 * a1 + q2 * a2))
    A[6] = 16 * w * (p2 ** 2 - p1 ** 2)
    A[7] = -4 * q1 * q2
    B[1] = (-64 * w ** 4 * S ** 3 - 64 * G ** 4 * T ** 3
            - 64 * G ** 2 * w ** 2 * S * ((2 + 3 * p1 ** 2 + p1 ** 4) * a1 ** 2
                                          + (4 + 3 * p2 ** 2 + p1 ** 2 * (3 + 2 * p2 ** 2)) * a1 * a2
                                          + (2 + 3 * p2 ** 2 + p2 ** 4) * a2 ** 2))
    B[4] = 32 * w * (p1 ** 2 * a1 - p2 ** 2 * a2) * (-2 * G ** 4 + w ** 2 * S + 2 * G ** 2 * T)
    # the listing reads "([)-4 Gamma^2 + ..."; the evident reading is used
    B[6] = 8 * w * (p1 ** 2 * a1 - p2 ** 2 * a2) * (-4 * G ** 2 + q1 * a1 + q2 * a2)
    B[8] = -4 * w * (p1 ** 2 * a1 - p2 ** 2 * a2)
    B[9] = -T


def printed_table(G, w, o1, o2, p1, p2):
    """Literal transcription of the tabulated ``A_1..A_7``, ``B_1..B_9`` (index 0 unused)."""
    a1, a2, q1, q2, S, T = _common(G, w, o1, o2, p1, p2)
    A, B = [0.0] * 8, [0.0] * 10
    _shared(G, w, o1, o2, p1, p2, A, B)
    A[2] = 64 * (p1 - p2) * w * (-p2 * a1 ** 2 - p2 ** 3 * a1 * a2 + p1 ** 3 * a1 * (2 * G ** 2 + a1 - a2)
                                 + p2 * a2 * (G ** 2 + 2 * w ** 2 + a2)
                                 + p1 * (2 * G ** 2 * a1 + a1 ** 2 - p2 ** 2 * a1 - q2 * a2 ** 2
                                         + 2 * q2 * a1 * a2))
    A[3] = -16 * (4 * G ** 2 * a1 * a2 + 4 * w ** 4 - 4 * p2 ** 2 * w ** 2 * a1 + p2 ** 6 * a1 ** 2
                  - 2 * p1 ** 5 * p2 * a1 ** 2 + p2 ** 2 * a1 ** 2
                  + 4 * p2 ** 2 * w ** 2 * a2 + 2 * p2 ** 2 * a1 * a2 + 2 * p2 ** 4 * a1 * a2
                  + p2 ** 2 * a2 ** 2 + 2 * p2 ** 4 * a2 ** 2 + p2 ** 6 * a2 ** 2
                  - 4 * p1 ** 3 * p2 * (a1 + q2 * a2) * a1 - 2 * p1 * p2 * (a1 + q2 * a2) ** 2
                  + p1 ** 4 * (a1 ** 2 + 2 * q2 * a1 * a2)
                  - 4 * w ** 2 * (-2 * w ** 2 + p1 ** 4 * a1 - 2 * p1 ** 3 * p2 * a1 + p2 ** 4 * a2
                                  + p2 ** 2 * (-w ** 2 + a1 + a2) - 2 * p1 * p2 * (a1 + q2 * a2)
                                  + p1 ** 2 * (-w ** 2 + q2 * a1 + q2 * a2))
                  + p1 ** 2 * ((1 + 2 * p2 ** 2) * a1 ** 2 - 4 * w ** 2 * a2 + q2 * a2 ** 2
                               + 2 * a1 * (2 * w ** 2 + q2 * a2)))
    A[4] = 32 * w * (p1 - p2) * (p1 ** 3 * a1 - p1 * (G ** 2 + a1 - 2 * a2)
                                 + p2 * (-G ** 2 + 2 * a1 + (-1 + p2 ** 2) * a2))
    B[2] = 64 * w * (q1 * a1 - q2 * a2) * (2 * G ** 2 * w ** 2 * S - w ** 2 * S ** 2 + 2 * G ** 4 * T)
    B[3] = (-64 * G ** 2 * T
            + 64 * G ** 4 * (q1 * a1 ** 2 - (2 + p2 ** 2) * w ** 2 * a2 + q2 * a2 ** 2
                             + a1 * (-(2 + p1 ** 2) * w ** 2 + 2 * q1 * q2 * a2))
            - 16 * w ** 2 * S * ((p1 ** 4 - 2 - p1 ** 2) * a1 ** 2 + (p2 ** 4 - 2 - p2 ** 2) * a2 ** 2
                                 - 4 * w ** 2 * a2 - 4 * w ** 2 * a1
                                 + (-4 - p2 ** 2 + p1 ** 2 * (-1 + 2 * p2 ** 2)) * a2)
            - 32 * G ** 2 * (q1 * a1 ** 3 + 2 * w ** 4 * a2 - 4 * w ** 2 * a2 ** 2 + q2 * a2 ** 3
                             + a1 ** 2 * (-4 * w ** 2 + 3 * q1 * q2 * a2)
                             + a1 * (2 * w ** 4 - 8 * w ** 2 * a2 + 3 * q1 * q2 * a2 ** 2)))
    B[5] = -4 * (q1 * a1 ** 3 + 4 * w ** 4 * a2 + 8 * w ** 2 * a2 ** 2 + a2 ** 3 + 3 * p2 ** 2 * a2 ** 3
                 + 3 * p2 ** 4 * a2 ** 3 + p2 ** 6 * a2 ** 3 + 12 * G ** 2 * T
                 + a1 ** 2 * (8 * w ** 2 + 3 * q1 * q2 * a2)
                 + a1 * (4 * w ** 4 + 16 * w ** 2 * a2 + 3 * q1 * q2 * a2 ** 2)
                 - 8 * G ** 2 * (q1 * a1 ** 2 - p2 ** 2 * w ** 2 * a2 + q2 * a2 ** 2
                                 + a1 * (-p1 ** 2 * w ** 2 + 2 * q1 * q2 * a2)))
    B[7] = 4 * (q1 * a1 ** 2 - (p2 ** 2 - 2) * w ** 2 * a2 + q2 * a2 ** 2 - 3 * G ** 2 * T
                + a1 * (-(p1 ** 2 - 2) * w ** 2 + 2 * q1 * q2 * a2))
    return A, B


def corrected_table(G, w, o1, o2, p1, p2):
    """Coefficients that reproduce the adiabatic solution exactly (index 0 unused)."""
    a1, a2, q1, q2, S, T = _common(G, w, o1, o2, p1, p2)
    A, B = [0.0] * 8, [0.0] * 10
    _shared(G, w, o1, o2, p1, p2, A, B)
    A[2] = 64 * w * (p1 - p2) * (2 * G ** 2 * (p1 * q1 * a1 + p2 * q2 * a2)
                                 + 2 * w ** 2 * (p1 * a1 + p2 * a2) + (p1 - p2) * (a1 - a2) * T)
    A[3] = -16 * (4 * G ** 4 * q1 * q2 + 4 * G ** 2 * w ** 2 * (q1 + q2) + 4 * w ** 4
                  - 4 * G ** 2 * (p1 - p2) ** 2 * T + (p1 - p2) ** 2 * T ** 2
                  + 4 * w ** 2 * (p1 ** 2 - p2 ** 2) * (a1 - a2))
    A[4] = 32 * w * (p1 - p2) * (p1 ** 3 * a1 - p1 * (2 * G ** 2 + a1 - 2 * a2)
                                 + p2 * (-2 * G ** 2 + 2 * a1 + (-1 + p2 ** 2) * a2))
    B[2] = 64 * w * (p1 ** 2 * a1 - p2 ** 2 * a2) * (2 * G ** 2 * w ** 2 * S - w ** 2 * S ** 2
                                                     + 2 * G ** 4 * T)
    B[3] = (-64 * G ** 6 * T
            + 64 * G ** 4 * (q1 ** 2 * a1 ** 2 - (2 + p2 ** 2) * w ** 2 * a2 + q2 ** 2 * a2 ** 2
                             + a1 * (-(2 + p1 ** 2) * w ** 2 + 2 * q1 * q2 * a2))
            - 16 * w ** 2 * S * ((p1 ** 4 - 2 - p1 ** 2) * a1 ** 2 + (p2 ** 4 - 2 - p2 ** 2) * a2 ** 2
                                 - 4 * w ** 2 * a2 - 4 * w ** 2 * a1
                                 + (-4 - p2 ** 2 + p1 ** 2 * (-1 + 2 * p2 ** 2)) * a1 * a2)
            - 32 * G ** 2 * (q1 ** 3 * a1 ** 3 + 2 * w ** 4 * a2 - 4 * w ** 2 * a2 ** 2 + q2 ** 3 * a2 ** 3
                             + a1 ** 2 * (-4 * w ** 2 + 3 * q1 ** 2 * q2 * a2)
                             + a1 * (2 * w ** 4 - 8 * w ** 2 * a2 + 3 * q1 * q2 ** 2 * a2 ** 2)))
    B[5] = -4 * (q1 ** 3 * a1 ** 3 + 4 * w ** 4 * a2 + 8 * w ** 2 * a2 ** 2 + q2 ** 3 * a2 ** 3
                 + 12 * G ** 4 * T + a1 ** 2 * (8 * w ** 2 + 3 * q1 ** 2 * q2 * a2)
                 + a1 * (4 * w ** 4 + 16 * w ** 2 * a2 + 3 * q1 * q2 ** 2 * a2 ** 2)
                 - 8 * G ** 2 * (q1 ** 2 * a1 ** 2 - p2 ** 2 * w ** 2 * a2 + q2 ** 2 * a2 ** 2
                                 + a1 * (-p1 ** 2 * w ** 2 + 2 * q1 * q2 * a2)))
    B[7] = 4 * (q1 ** 2 * a1 ** 2 - (p2 ** 2 - 2) * w ** 2 * a2 + q2 ** 2 * a2 ** 2 - 3 * G ** 2 * T
                + a1 * (-(p1 ** 2 - 2) * w ** 2 + 2 * q1 * q2 * a2))
    return A, B
