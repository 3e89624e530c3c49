from .certify import (
    EXACT_PASS,
    FAIL,
    INTERVAL_PASS,
    BoundCheck,
    CertificateError,
    VerificationReport,
    Verdict,
    check_bound,
    verify_certificate,
    verify_construction,
)

__all__ = [
    "EXACT_PASS",
    "FAIL",
    "INTERVAL_PASS",
    "BoundCheck",
    "CertificateError",
    "VerificationReport",
    "Verdict",
    "check_bound",
    "verify_certificate",
    "verify_construction",
]

from .oracle import OracleComparison, OracleResult, oracle_compare, oracle_discover  # noqa: E402

__all__ += ["OracleComparison", "OracleResult", "oracle_compare", "oracle_discover"]
