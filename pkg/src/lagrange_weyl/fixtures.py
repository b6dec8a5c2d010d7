"""Exact data printed in the worked Z2 and Z3 examples.

Weyl matrices are keyed by (j, k) for U_(j, phi_k); entries use the form
notation of :mod:`lagrange_weyl.forms` ("1", "-1", "e(1/3)", "0").
Element lists use flattened (g, phi) coordinates.  The printed Z3 forms for
H3 and H4 are kept only for the discrepancy report; their reference values
are computed.
"""

from __future__ import annotations

import copy

W = "e(1/3)"   # exp(2 pi i / 3)
WB = "e(-1/3)"  # exp(-2 pi i / 3)

_PRISTINE = {
    "2": {
        "weyl": {
            (0, 0): [["1", "0"], ["0", "1"]],
            (1, 0): [["0", "1"], ["1", "0"]],
            (0, 1): [["1", "0"], ["0", "-1"]],
            (1, 1): [["0", "-1"], ["1", "0"]],
        },
        "lagrangians": {
            "H1": [(0, 0), (1, 0)],
            "H2": [(0, 0), (0, 1)],
            "H3": [(0, 0), (1, 1)],
        },
        "forms": {
            "H1": [["a", "b"], ["b", "a"]],
            "H2": [["a", "0"], ["0", "b"]],
            "H3": [["a", "b"], ["-b", "a"]],
        },
        "printed_only": {},
    },
    "3": {
        "weyl": {
            (0, 0): [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
            (1, 0): [["0", "0", "1"], ["1", "0", "0"], ["0", "1", "0"]],
            (2, 0): [["0", "1", "0"], ["0", "0", "1"], ["1", "0", "0"]],
            (0, 1): [["1", "0", "0"], ["0", W, "0"], ["0", "0", WB]],
            (1, 1): [["0", "0", WB], ["1", "0", "0"], ["0", W, "0"]],
            (2, 1): [["0", W, "0"], ["0", "0", WB], ["1", "0", "0"]],
            (0, 2): [["1", "0", "0"], ["0", WB, "0"], ["0", "0", W]],
            (1, 2): [["0", "0", W], ["1", "0", "0"], ["0", WB, "0"]],
            (2, 2): [["0", WB, "0"], ["0", "0", W], ["1", "0", "0"]],
        },
        "lagrangians": {
            "H1": [(0, 0), (1, 0), (2, 0)],
            "H2": [(0, 0), (0, 1), (0, 2)],
            "H3": [(0, 0), (1, 1), (2, 2)],
            "H4": [(0, 0), (1, 2), (2, 1)],
        },
        "forms": {
            "H1": [["a", "b", "c"], ["c", "a", "b"], ["b", "c", "a"]],
            "H2": [["a", "0", "0"], ["0", "b", "0"], ["0", "0", "c"]],
        },
        "printed_only": {
            "H3": [["a", f"{WB}*b", f"{WB}*c"], ["c", "a", f"{W}*c"], ["b", f"{W}*c", "a"]],
            "H4": [["a", f"{W}*b", f"{W}*c"], ["c", "a", f"{WB}*b"], ["b", f"{WB}*c", "a"]],
        },
    },
}

FIXTURES = copy.deepcopy(_PRISTINE)


def reset() -> None:
    """Restore FIXTURES after a test has tampered with it."""
    FIXTURES.clear()
    FIXTURES.update(copy.deepcopy(_PRISTINE))
