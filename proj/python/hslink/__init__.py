"""Invariants of immersed links in odd-dimensional unit spheres.

The heavy lifting lives in the compiled extension; this package re-exports
its surface: catalog immersions, pointwise invariants (contact form,
isotropy deviation, stationarity residuals, Hopf function, Lagrangian
angle), the Legendrian point scan, and the homogeneous torus classifier
and search.
"""

from ._core import (
    ConfigError,
    DomainError,
    Link,
    NumericalError,
    analyze,
    catalog,
    classify,
    find_legendrian_points,
    make,
    search,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Link",
    "NumericalError",
    "analyze",
    "catalog",
    "classify",
    "find_legendrian_points",
    "make",
    "search",
]

__version__ = "0.1.0"
