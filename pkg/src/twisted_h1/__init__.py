"""Exact computation of first non-abelian cohomology for cyclic groups
acting on simple algebraic groups through diagram automorphisms, together
with the alcove and Kac coordinate classifications of finite-order
automorphisms and component counts for equivariant bundle moduli."""

from .roots import (Isogeny, LatticeMap, RootDatum, SimpleType,
                    build_root_datum, highest_root, highest_short_root,
                    weyl_generators)
from .folding import (DiagramAutomorphism, FoldedDatum, averaging,
                      diagram_automorphism, folded_datum,
                      folded_weyl_generators, invariant_sublattice,
                      norm_operator)
from .lattice import (FiniteAbelianGroup, QuotientElement, enumerate_elements,
                      quotient)
from .cohomology import (CohomologySet, TorusElement, h1_group, h1_torus,
                         representative_coweight)
from .alcove import (AutomorphismDescriptor, KacCoordinates,
                     ParahoricDescriptor, RationalCoweight, alcove_to_kac,
                     classify_automorphisms, enumerate_alcove_points,
                     enumerate_kac_coordinates, fundamental_alcove,
                     kac_classes, kac_to_alcove, parahoric_descriptor,
                     reduce_to_alcove, reduce_to_alcove_with_witness)
from .bundles import (CoveringData, LocalTypeAssignment, RamifiedOrbit,
                      bundle_label, component_count, covering_exists,
                      local_type_sets)
from .oracle import brute_force_h1_group, brute_force_h1_torus

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
