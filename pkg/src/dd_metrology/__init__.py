"""Dephasing of a collective spin under dynamical decoupling: squeezing, purity and QFI."""
from .errors import DegenerateDirection, InvalidArgument, NumericFailure, OutOfRange
from .kernels import BACKEND
from .pulses import (PulseSequence, f_kernel, filter_function, free_sequence, make_sequence,
                     modulation, pdd_filter_closed, pdd_times, udd_filter_approx, udd_times)
from .quadrature import QuadratureResult, QuadratureSpec, integrate_semi_infinite
from .noise import (DephasingRecord, NoiseSpec, decoherence_R, dephasing_record,
                    free_Omega_closed, free_R_closed, interacting_spectrum, spectral_density,
                    twisting_Omega)
from .spin import (CollectiveOps, CollectiveState, collective_ops, css_state, evolve,
                   expectation, purity, pure_expectations_closed)
from .squeezing import (SqueezingResult, squeezing_analytic, squeezing_limit, squeezing_numeric)
from .qfi import (QfiResult, amplification_closed, c_matrix_mixed, c_matrix_pure, qcr_bound,
                  qfi_max, qfi_pure_closed, qfi_state)
from .experiments import Dataset, SweepConfig, run_figure, run_sweep

__version__ = "0.1.0"
