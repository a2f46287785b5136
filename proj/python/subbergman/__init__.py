"""Weighted Bergman and sub-Bergman spaces on the unit disk."""

import json as _json

from ._core import (
    BlaschkeProduct,
    ContractViolation,
    DomainError,
    MoebiusMap,
    __version__,
    apply_defect,
    command_names,
    cyclicity_residuals,
    defect_matrix,
    kernel_eval,
    monomial_norm_squared,
    oneminus_test,
    radial_probe,
    sub_bergman_kernel,
    run_job_json as _core_run,
    toeplitz_conj_blaschke,
)


def run_job(command, **parameters):
    """Run one job and return the report envelope as a dict."""
    doc = {"command": command, "parameters": parameters}
    return _json.loads(_core_run(_json.dumps(doc)))


__all__ = [
    "BlaschkeProduct",
    "ContractViolation",
    "DomainError",
    "MoebiusMap",
    "apply_defect",
    "command_names",
    "cyclicity_residuals",
    "defect_matrix",
    "kernel_eval",
    "monomial_norm_squared",
    "oneminus_test",
    "radial_probe",
    "run_job",
    "sub_bergman_kernel",
    "toeplitz_conj_blaschke",
]
