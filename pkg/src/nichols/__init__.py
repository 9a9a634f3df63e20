"""Certificates of infinite dimension for Nichols algebras over the Mathieu groups."""

__version__ = "0.1.0"

from .criteria import classify_group, classify_pair, verify_certificate  # noqa: E402

__all__ = ["__version__", "classify_group", "classify_pair", "verify_certificate"]
