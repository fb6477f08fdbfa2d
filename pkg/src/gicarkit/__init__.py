"""Exact computations for gauge-invariant CAR algebras and their diagram categories.

Modules:

* ``scalar``: cyclotomic scalars and sparse exact matrices.
* ``diagram``: rectangular and annular partial-injection diagrams.
* ``word``: generator words, standard-form rewriting and the word/diagram bijection.
* ``fock``: Fock-space operators and the diagrammatic GICAR representation.
* ``algebra``: matrix units, rotational idempotents and the Bratteli tower.
* ``cmodule``: modules over the diagram categories and their decomposition.
* ``tensorrep``: the tensor-power representation with a one-dimensional base.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .diagram import AnnDiagram, Decorated, RectDiagram, compose, count_formula, enumerate_diagrams
from .lincomb import LinComb
from .scalar import Cyc, Matrix, zeta
from .word import StandardWord, Word, normalize, parse_word, psi, psi_inverse

__all__ = [
    "AnnDiagram",
    "Cyc",
    "Decorated",
    "LinComb",
    "Matrix",
    "RectDiagram",
    "StandardWord",
    "Word",
    "compose",
    "count_formula",
    "enumerate_diagrams",
    "normalize",
    "parse_word",
    "psi",
    "psi_inverse",
    "zeta",
]
