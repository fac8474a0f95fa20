"""Exact verification toolkit for unmixed free quotients of products of curves.

Modules:

* :mod:`ipv.groups` -- permutation groups with indexed element tables
* :mod:`ipv.presentation`, :mod:`ipv.todd_coxeter` -- finite presentations
* :mod:`ipv.ramification` -- admissible genus-zero ramification types
* :mod:`ipv.ledger` -- arithmetic bounds on dimension and group order
* :mod:`ipv.search` -- spherical systems, Sigma sets and the structure search
* :mod:`ipv.catalog` -- the group catalog and its cache
* :mod:`ipv.checks`, :mod:`ipv.cli` -- registered checks and the command line
"""

__version__ = "0.1.0"
