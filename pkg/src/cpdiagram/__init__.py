"""Local qubit channels acting on a Bell pair, seen in the concurrence-purity plane."""
from .channels import (AffineChannel, CanonicalChannel, apply, canonicalize, is_cp,
                       is_cp_unital, purity_of_image, sample_nonunital, sample_unital,
                       shifted_eigenvalues)
from .diagram import (CPPoint, Region, RegionReport, c_max_unital, c_min_unital, classify,
                      mems_boundary, mems_unreachable_check, scan_nonunital, scan_unital)
from .dynamics import (Process, SemigroupProcess, Trajectory, channel_at,
                       entanglement_breaking_time, trajectory, verify_semigroup)
from .entanglement import (concurrence, concurrence_bell_diagonal, concurrence_shifted,
                           concurrence_wootters, spin_flip, tangle)
from .states import (bell_basis, linear_entropy_pure, mems, partial_trace, purity, singlet,
                     werner)

__version__ = "0.1.0"
