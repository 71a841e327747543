"""Exact intersection theory for the four Sarkisov-link families joining
index-2 Fano fourfolds to P^4: Schubert calculus on Gr(2,n), blowup
intersection tables with Riemann-Roch counts, and the singular cubic
threefolds appearing on the P^4 side.  All arithmetic is exact."""

from .blowup import (BlowupTable, DivisorExpr, FourfoldAmbient,
                     InconsistentTableError, SurfaceInvariants,
                     SurfacePairings, exceptional_slope_coeffs,
                     exceptional_slope_identity, intersection_number,
                     nodal_blowup_table, riemann_roch_chi,
                     smooth_blowup_table)
from .schubert import (ChowClassGr, SchubertIndex, adjunct_linear_sections,
                       euler_characteristic_section, integrate, multiply,
                       pairing_on_section, pieri_multiply, sigma,
                       tangent_chern)
from .sarkisov import (LinkCase, PlaneBlowupModel, catalog,
                       relations_roundtrip, surface_from_plane_blowup,
                       verify_forward, verify_reverse)
from .symfun import (ChernVector, GradedRing, dual, invert_total_class,
                     tensor_chern, whitney_sum)

__version__ = "0.1.0"
