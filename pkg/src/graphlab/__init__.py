"""Exact computation of packing-type graph invariants.

The package is organized bottom-up: ``graph_core`` (bit-row graphs and
structural helpers), ``solvers`` (exact packing / open packing / limited
packing / domination solvers plus a brute-force oracle), ``bounds``
(inequality checkers with tightness verdicts), ``families`` (generators
and recognizers for the sharpness families), ``corpus`` (graph6 parsing,
small-graph enumeration, sweep reports) and ``cli``.
"""

__version__ = "0.1.0"
