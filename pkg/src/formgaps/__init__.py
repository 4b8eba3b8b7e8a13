"""Representation functions, local densities, correlation censuses and gap
constructions for sums of two squares and the x^2 + x*y + y^2 form."""

__version__ = "0.1.0"

from . import (  # noqa: F401
    analytic_constants,
    arith,
    census,
    characters,
    gaps,
    local_densities,
    repr_sets,
    verify,
)
