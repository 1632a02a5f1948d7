"""Certified digits of prime-representing constants.

Thin convenience layer over the compiled core: structured results come back
as plain dictionaries decoded from the core's JSON documents.
"""

import json as _json

from ._core import (  # noqa: F401
    GapViolationError,
    PrecisionExhaustedError,
    SequenceExhaustedError,
    SpecParseError,
    admissible_a,
    digits_of_bracket,
    factorial_n0,
    is_prime,
)
from . import _core


def compute(family, source="primes", terms=None, digits=12, precision_start=128,
            precision_cap=1 << 20, mr_rounds=16, seed_index=None, resume=None,
            gap_fit_limit="1000000"):
    """Run a construction and return the result document as a dict."""
    return _json.loads(_core.compute_json(
        family, source, terms, digits, precision_start, precision_cap,
        mr_rounds, seed_index, resume, str(gap_fit_limit)))


def verify(document, sequence_file=None):
    """Re-verify a result document (dict or JSON string); returns a report dict."""
    if not isinstance(document, str):
        document = _json.dumps(document)
    return _json.loads(_core.verify_json(document, sequence_file))


def scan_gaps(limit, gap_spec, source="primes"):
    return _json.loads(_core.scan_gaps_json(str(limit), gap_spec, source))


def fit_gap_constant(limit, k):
    return _json.loads(_core.fit_gap_constant_json(str(limit), str(k)))


def check_hypothesis(family, n_lo, n_hi, samples=100, rng_seed=1):
    return _json.loads(_core.check_hypothesis_json(family, n_lo, n_hi, samples, rng_seed))


__all__ = [
    "GapViolationError",
    "PrecisionExhaustedError",
    "SequenceExhaustedError",
    "SpecParseError",
    "admissible_a",
    "check_hypothesis",
    "compute",
    "digits_of_bracket",
    "factorial_n0",
    "fit_gap_constant",
    "is_prime",
    "scan_gaps",
    "verify",
]
