"""spineq: the two-level spin equation i dV/dt = (sigma . F(t)) V.

Library layout:

* spinors     — two-component spinor algebra, L-vectors, eigenvalue problem
* specfun     — Gauss 2F1, Kummer Phi, parabolic cylinder D_p, complex gamma
* expr/fields — field DSL, field specs and their JSON envelope
* reductions  — field-equivalence transforms and the Schrodinger reduction
* dynamics    — numerical oracle, evolution operators, Bloch and canonical forms
* solutions   — general solution by quadrature, inverse problem
* catalog     — the 26 exact (field, solution) families
* darboux     — structure-preserving Darboux transformation
* cli         — the ``spineq`` command
"""

from .errors import (AccuracyError, DomainError, FieldParseError,
                     IntegrationError, SingularityError, SpinEqError)
from .specfun import (SeriesResult, USING_COMPILED, complex_gamma, gauss_2f1,
                      kummer_phi, parabolic_d)
from .spinors import (AngleRep, CVec3, EigenPair, Spinor, anticonjugate,
                      decompose, eigenpairs, frame, from_angles, inner,
                      l_vector, sigma_apply, to_angles,
                      vector_from_eigenvectors)
from .fields import (CatalogField, ConstField, ExprField, eval_field,
                     load_field_json, parse_field_spec, split_kg)
from .dynamics import (BlochState, Trajectory, bloch_propagate,
                       evolution_constant_direction, evolution_from_q,
                       field_from_q, hamiltonian_check, propagate,
                       stationary_solutions)
from .reductions import (ReductionPlan, SigmaMap, reduce_field,
                         reparametrize_time, sigma_map,
                         to_schrodinger_potentials, transform_solution)
from .solutions import (general_solution, invert_field,
                        invert_field_selfadjoint)
from .catalog import entry, entry_solution, scale_family, verify_entry
from .darboux import (DarbouxParams, darboux_apply, darboux_field,
                      darboux_from_seed, darboux_params_constant_f)

__version__ = "0.1.0"
