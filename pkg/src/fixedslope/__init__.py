"""Fixed slope iteration with a-priori convergence certificates.

Solve F(x) = 0 by x_{k+1} = x_k - B F(x_k) for a constant slope matrix B,
certify convergence and uniqueness ahead of time from a continuity
measure of B F'(x), verify the certified bounds against actual iteration
traces, and compare the certification threshold with the classical
alternatives.
"""

from .certificate import (
    BOUNDARY_CLOSED,
    BOUNDARY_OPEN,
    ConvergenceCertificate,
    HoelderParams,
    certify,
    check_holder_condition,
    holder_eta_max,
    holder_roots,
)
from .comparison import (
    ConditionReport,
    ahues_condition,
    ahues_eta_max,
    ahues_f,
    ahues_roots,
    compare_report,
    kantorovich_condition,
)
from .errors import (
    BadParameters,
    CertificateMissing,
    ConditionFails,
    EvaluationFailed,
    FixedSlopeError,
    JacobianMissing,
    NotCertifiedError,
    NuNotContractive,
    RadiusOutOfRange,
    UnknownFixture,
)
from .majorant import (
    HoelderOmega,
    MajorantModel,
    TabulatedOmega,
    eval_omega,
    g,
    gamma_star,
    lambda_star,
    maximal_root,
    minimal_root,
    phi,
    scalar_sequence,
)
from .norms import matrix_norm, vector_norm
from .problems import Fixture, analytic_model, build_fixture, fixture_names
from .solver import (
    IterationTrace,
    MajorizationReport,
    Problem,
    StoppingRule,
    UniquenessReport,
    estimate_majorant,
    estimate_omega,
    fsi_solve,
    fsi_step,
    uniqueness_probe,
    verify_majorization,
)

__version__ = "0.1.0"
