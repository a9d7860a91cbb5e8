"""Quasi-extremity toolkit for contractive multipliers of the Drury-Arveson space.

Thin wrapper over the compiled ``_daqe`` extension. All polynomial and
free-coefficient arguments are the same JSON documents the CLI consumes.
"""

import json

try:
    # installed layout: the extension lives inside the package
    from ._daqe import (
        column_positivity,
        construct_a,
        fock_shift,
        outer_a,
        poly_degree,
        poly_eval,
        report,
        szego_integral,
        verdict,
    )
except ImportError:
    # build-tree layout: the extension sits on sys.path
    from _daqe import (
        column_positivity,
        construct_a,
        fock_shift,
        outer_a,
        poly_degree,
        poly_eval,
        report,
        szego_integral,
        verdict,
    )

__all__ = [
    "column_positivity",
    "construct_a",
    "fock_shift",
    "outer_a",
    "poly",
    "poly_degree",
    "poly_eval",
    "report",
    "report_dict",
    "szego_integral",
    "verdict",
]


def poly(d, coeffs):
    """Build a Poly JSON document from ``{tuple(alpha): complex}`` coefficients."""
    entries = []
    for alpha, c in coeffs.items():
        c = complex(c)
        entries.append({"alpha": list(alpha), "re": c.real, "im": c.imag})
    return json.dumps({"d": d, "coeffs": entries})


def report_dict(poly_json, **kwargs):
    """Run the full analysis and return the report as a dict."""
    return json.loads(report(poly_json, **kwargs))
