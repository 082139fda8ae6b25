"""Extremal functions, polynomial hulls, certificates and convergence sets."""

import json

from . import _plurikit
from ._plurikit import (
    BudgetExhausted,
    DomainError,
    FormalSeries,
    GridRegion,
    GridSpec,
    branch_threshold,
    bracket,
    conv_membership,
    envelope_gap,
    neighborhood,
    polynomial_hull,
    rasterize_annulus,
    rasterize_circle,
    rasterize_disk,
    rasterize_point,
    read_region,
    sigma_star_ball,
    solve_lambda,
    write_region,
)

FORMAT_VERSION = 1


def q_lower_bound(K, Z, t, **budget):
    """Certificate dict for a lower bound of Q_{K,Z}(t)."""
    return json.loads(_plurikit.q_lower_bound(K, Z, t, **budget))


def property_j_certificate(K, X, eta, eps, **budget):
    return json.loads(_plurikit.property_j_certificate(K, X, eta, eps, **budget))


def refute_hull_level(K, Z, m, **budget):
    """Certificate dict showing Z outside K^(m), or None when undecided."""
    c = _plurikit.refute_hull_level(K, Z, m, **budget)
    return None if c is None else json.loads(c)


def reverify(certificate, K):
    """(ok, reason) from an independent re-evaluation of a certificate dict."""
    return _plurikit.reverify(json.dumps(certificate), K)


def build_series_main(sets, k_max, **options):
    """(FormalSeries, warnings) from sample sets K_1, K_2, ... of points in C^{n+1}."""
    return _plurikit.build_series_main(sets, k_max, **options)


__all__ = [name for name in dir() if not name.startswith("_")]
