"""Exact truncated Witt-vector arithmetic and finite-level cohomology of
Witt divisorial sheaves on projective space.

The library is organized in layers:

* :mod:`wittlab.universal` -- universal integer polynomials (ghost
  components; addition, negation and product companions) with exact
  divisions and a canonical cache format;
* :mod:`wittlab.rings` -- finite fields, quotient rings and multigraded
  Laurent chart rings, all with exact arithmetic;
* :mod:`wittlab.witt` -- truncated Witt vectors and the Teichmüller,
  Frobenius, Verschiebung and restriction operators;
* :mod:`wittlab.divisors` -- rational divisors on P^N and the section
  spaces of the associated Witt divisorial sheaves;
* :mod:`wittlab.cech` -- multigraded Čech cohomology: brute-force group
  enumeration and long-exact-sequence certificates;
* :mod:`wittlab.maps` -- induced Frobenius/Verschiebung maps on top
  cohomology and injectivity experiments;
* :mod:`wittlab.kummer` -- cyclic Kummer covers, the Galois trace
  splitting, and etale base change;
* :mod:`wittlab.teich` -- Teichmüller lifts of invertible-sheaf cocycles;
* :mod:`wittlab.cli` -- the ``wittlab`` experiment runner.
"""

from .errors import (ChartMismatch, DivisorNotCompatible,
                     EnumerationBoundExceeded, ExponentOutOfChart,
                     InexactDivision, LengthMismatch, MembershipViolation,
                     NotACocycle, OrderDivisibleByP, RingMismatch,
                     WittlabError)
from .rings import (GF, FiniteField, LaurentRing, PolyQuotientRing,
                    chart_ring, cyclotomic_quotient, function_field_ring)
from .universal import (UniversalPoly, ghost, homogeneity_check, neg_polys,
                        prod_polys, sum_polys)
from .witt import (WittVector, frobenius_witt, restrict, teichmuller,
                   verschiebung, verschiebung_trunc, witt_add, witt_inverse,
                   witt_mul, witt_neg, witt_one, witt_zero)
from .divisors import (RDivisor, divisor, format_divisor, membership,
                       parse_divisor, perturbation_invariance,
                       witt_section, witt_section_add, witt_section_scale)
from .cech import (CohomologyReport, GradedCechComplex, classical_h,
                   h0_growth_table, vanishing_certificate, witt_cech_H,
                   witt_cech_H_total, witt_serre_check)
from .maps import (finite_level_torsion_probe, frobenius_on_top_H,
                   verschiebung_on_H)
from .kummer import EtaleExtension, KummerCover, etale_pullback_iso_check
from .teich import div_vs_teichmuller, teichmuller_cocycle

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
