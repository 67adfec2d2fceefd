"""Sum-product recursion for q-colorings on b-ary trees.

Exact message arithmetic travels as "num/den" strings; `frac` converts them
to fractions.Fraction. Experiment drivers return JSON report strings; the
*_report helpers parse them into dicts.
"""

import json
from fractions import Fraction

from ._bethemix import (  # noqa: F401
    BethemixError,
    UnsatisfiableError,
    UnsupportedRegimeError,
    ZeroDenominatorError,
    __version__,
    bound_lemma_bb,
    bound_lemma_prod,
    bound_lemma_prodnew,
    build_complete_tree,
    brute_force_marginal,
    brute_force_message,
    coupled,
    g,
    in_set,
    kappa,
    kappa_q4b2,
    l1_distance,
    lemma14_secondary_bound,
    min_contracting_q,
    pinned_message,
    product_sum,
    propagate,
    root_marginal,
    run_decay,
    solve_c,
    threshold_q,
    uniform_message,
    update,
    update_float,
    verify_lemma,
)


def frac(text):
    """'num/den' string -> Fraction."""
    return Fraction(text)


def fracs(entries):
    return [Fraction(e) for e in entries]


def verify_report(lemma, **kwargs):
    """verify_lemma, parsed into a dict."""
    return json.loads(verify_lemma(lemma, **kwargs))


def decay_report(**kwargs):
    """run_decay, parsed into a dict."""
    return json.loads(run_decay(**kwargs))
