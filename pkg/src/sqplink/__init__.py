"""Fiberedness and strong quasi-positivity of links in the 3-sphere.

The classical side (PD codes, braids, Seifert matrices, Conway polynomial,
signature) uses exact integer arithmetic.  A combinatorial grid model of link
Floer homology serves as an independent oracle on small grids.
"""

from .braid import BandFactorization, BraidWord, braid_closure, expand_band_factorization, parse_braid, self_linking_of_braid
from .detector import (
    ConsistencyAlarm,
    InvariantReport,
    Method,
    classify,
    detect_fibered_alternating,
    detect_sqp_alternating,
    fiberedness_and_sqp_via_oracle,
    main_theorem_check,
    max_self_linking,
    tau_alternating,
)
from .diagram import DiagramError, LinkDiagram, parse_pd
from .grid import GridDiagram, grid_from_arc_notation, grid_to_diagram, parse_grid
from .gridfloer import GridHomologyTable, enumerate_states, fully_blocked_homology, grid_homology, tau_from_filtration
from .invariants import conway_by_skein, conway_polynomial, genus_and_norm_alternating, signature
from .polynomial import ConwayPolynomial, parse_conway
from .seifert import SeifertData, seifert_algorithm

__version__ = "0.1.0"


def mirror(d: LinkDiagram) -> LinkDiagram:
    return d.mirror()


def is_alternating(d: LinkDiagram) -> bool:
    return d.is_alternating()


def is_split_diagram(d: LinkDiagram) -> bool:
    return d.is_split_diagram()


def component_count(d: LinkDiagram) -> int:
    return d.n


def o_count(d: LinkDiagram) -> int:
    return d.o_count()
