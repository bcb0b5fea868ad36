"""Python bindings for the polynomial threshold function laboratory."""

from ptflab._core import (
    BoolFun,
    GroupShape,
    GVariant,
    IntPolynomial,
    MsbPosition,
    Variant,
    certify_lemma,
    check_sign_representation,
    compare,
    enumerate_order,
    make_g,
    make_gt,
    make_hard,
    min_weight,
    preset_names,
    replay_certificate,
    run_preset,
    sign_degree,
    solve_lp,
    symmetrize,
    theorem_bound,
    to_uv,
    witness_gate,
)

__all__ = [
    "BoolFun",
    "GroupShape",
    "GVariant",
    "IntPolynomial",
    "MsbPosition",
    "Variant",
    "certify_lemma",
    "check_sign_representation",
    "compare",
    "enumerate_order",
    "make_g",
    "make_gt",
    "make_hard",
    "min_weight",
    "preset_names",
    "replay_certificate",
    "run_preset",
    "sign_degree",
    "solve_lp",
    "symmetrize",
    "theorem_bound",
    "to_uv",
    "witness_gate",
]
