"""Certified error bounds for the two-parameter three-point quadrature rule.

``quadcert.bounds`` holds the closed forms, ``quadcert.oracle`` the brute-force
numerics used to check them, ``quadcert.zoo`` certified test functions,
``quadcert.means`` the special-means inequalities and ``quadcert.harness``
the verification campaigns.
"""

from .errors import ConfigError, DomainError, MomentSignError, OracleError, UnsupportedRuleError

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DomainError",
    "MomentSignError",
    "OracleError",
    "UnsupportedRuleError",
    "__version__",
]
