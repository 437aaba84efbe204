"""Architecture-level Monte Carlo model of repeat-until-success T-gate
magic-state injection in GKP-encoded photonic qubits, with an outer
surface-code scaling-law layer and seeded parameter sweeps."""

__version__ = "0.1.0"

from .analysis import (BoundaryTargets, PhaseBoundary, SensitivityGrid,
                       phase_boundary, sensitivity_maps)
from .injection import (AttemptOutcome, PointStats, RusConfig, RusRecord,
                        estimate_point, injection_attempt,
                        prepare_magic_ancilla, rus_inject)
from .noise import (ChannelDraw, NoiseParams, erasure_prob, p_z_of_squeezing,
                    sample_composite, trial_rng)
from .outer_code import (OuterCodeParams, effective_phys_rate,
                         logical_error_rate, protect_fidelity)
from .qmath import (apply_unitary, bloch_vector, dephasing_channel,
                    depolarizing_channel, fidelity_pure, measure_ancilla_x,
                    pure_state_density, validate_density)
from .sweep import GridSpec, SweepResult, SweepTable, read_csv, run_sweep, write_csv
