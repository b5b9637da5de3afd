"""Temporal self-similarity and divisibility of qubit dynamical maps."""

from .channels import (
    ADQDS, ENM, NMAD, OUN, PLN, RTN, ADRate, ModOUN, PauliRates,
    damping_factor, decay_rate, decoherence_G, first_singularity, from_spec,
    generator_choi, kraus, markov_limit, mixing_p, pauli_eigenvalues,
    qds_limit_rate, scalar_rate, to_spec,
)
from .errors import (
    DomainError, FamilyMismatchError, GeneratorSingularityError, ShapeError,
    SingularityError, UnsupportedRepresentationError,
)
from .maps import (
    AMap, ChoiMat, WitnessReport, a_matrix, choi, cp_witness, intermediate_a,
    intermediate_choi, involution, p_witness, tss_witness,
)
from .measures import (
    HolevoPoint, MeasureResult, holevo_bound, holevo_curve, rate_distance,
    von_neumann_entropy, zeta, zeta_upper_bound,
)

__version__ = "0.1.0"
