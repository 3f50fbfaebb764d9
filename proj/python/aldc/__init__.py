"""Approximate-LDC configurations: generation, verification, reduction, and
certification. Thin wrapper over the compiled `_core` extension; report-style
results come back as plain dicts."""

import json as _json

from aldc._core import (
    AldcError,
    CodeConfig,
    basis_code,
    boundedness,
    default_subset_size,
    general_bound,
    good_edge_probability_bound,
    hypercube,
    is_simple,
    load,
    perturbed_hypercube,
    qquery_bound,
    random_code,
    save,
    simple_alpha,
    span_weight,
    subset_direction_count,
    weight,
)
from aldc import _core

__all__ = [
    "AldcError",
    "CodeConfig",
    "basis_code",
    "boundedness",
    "bounded_code_bound",
    "bucket_to_2bounded",
    "certify_cut",
    "certify_tiling",
    "default_subset_size",
    "general_bound",
    "good_edge_probability_bound",
    "hypercube",
    "is_simple",
    "load",
    "matching_witness_bound",
    "one_query_bound_check",
    "perturbed_hypercube",
    "qquery_bound",
    "random_code",
    "reduce_to_simple",
    "save",
    "simple_alpha",
    "span_weight",
    "spectral_report",
    "subset_direction_count",
    "verify",
    "weight",
]


def verify(code, alpha):
    """Verification report for the approximate-LDC property, as a dict."""
    return _json.loads(_core.verify_json(code, alpha))


def reduce_to_simple(code, alpha, k=None):
    """(simple code, reduction trace dict)."""
    out, trace = _core.reduce_to_simple(code, alpha, k)
    return out, _json.loads(trace)


def bucket_to_2bounded(code):
    """(2-bounded code, bucket trace dict)."""
    out, trace = _core.bucket_to_2bounded(code)
    return out, _json.loads(trace)


def certify_cut(code, budget=0, seed=1):
    """Recursive random-cut certificate, as a dict."""
    return _json.loads(_core.certify_cut_json(code, budget, seed))


def certify_tiling(code, eps, t, retries=16, seed=1, kappa=-1.0):
    """Tiled-cut certificate, as a dict."""
    return _json.loads(_core.certify_tiling_json(code, eps, t, retries, seed, kappa))


def spectral_report(code):
    """Trace-norm inequality report, as a dict."""
    return _json.loads(_core.spectral_report_json(code))


def matching_witness_bound(code, i):
    """Dual-witness trace-norm floor for direction i, as a dict."""
    return _json.loads(_core.matching_witness_json(code, i))


def one_query_bound_check(code, alpha):
    """1-query length bound report, as a dict."""
    return _json.loads(_core.one_query_bound_json(code, alpha))


def bounded_code_bound(alpha, delta, c, d):
    """Explicit simple c-bounded code bound, as a dict."""
    return _json.loads(_core.bounded_code_bound(alpha, delta, c, d))
