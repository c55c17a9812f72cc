"""Randomized limited-view adversary codes.

Folded Reed-Solomon list decoding is combined with a one-time MAC so that the
decoder returns the sent message or an explicit failure, never a wrong message.
"""

from ._kernel import BACKEND
from .adversary import AdversarySpec, apply_adversary, rmt_transmit, simulate, strategy_exhaustive_best
from .field import PrimeField, primitive_root
from .frs import FrsParams, frs_encode, list_decode, max_correctable
from .lvcode import (
    DecodeOutcome, LvCodeword, LvParams, delta_bound, derive_params, lv_decode, lv_encode, rho_bound,
)
from .mac import MacKey, MacParams, mac_tag_matrix, mac_tag_poly, mac_verify

__all__ = [
    "BACKEND", "AdversarySpec", "apply_adversary", "rmt_transmit", "simulate",
    "strategy_exhaustive_best", "PrimeField", "primitive_root", "FrsParams", "frs_encode",
    "list_decode", "max_correctable", "DecodeOutcome", "LvCodeword", "LvParams", "delta_bound",
    "derive_params", "lv_decode", "lv_encode", "rho_bound", "MacKey", "MacParams",
    "mac_tag_matrix", "mac_tag_poly", "mac_verify",
]
