"""Hook-up probabilities for conformal loop ensembles (C++ core)."""

from ._core import (  # noqa: F401
    Error,
    KappaContext,
    McEstimate,
    __version__,
    aspect_to_cross,
    avoid_probability,
    bessel_localtime,
    cardy_hit_probability,
    cross_to_aspect,
    excursion_ratio,
    fk_crossing,
    fpl_hookup,
    hookup,
    hyp2f1,
    interval_hit_probability,
    localtime_expectation,
    make_context,
    relate,
    run_cli,
    sle_hit,
)
