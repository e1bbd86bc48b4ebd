"""Exact arithmetic for Z_p-towers of function fields over finite fields.

Witt vectors over F_q, F_q((T)) and F_q(X); Artin-Schreier-Witt normal
forms; the local symbol and conductors; genus sequences of global towers.
"""

__version__ = "0.1.0"

from .algebra import FFElem, FieldSpec, UnramElem, ZpApprox, choose_alpha
from .asw import GlobalStandardForm, LocalStandardForm, eval_form, in_wp_image, reduce_global_p1, reduce_local
from .cft import LocalUnit, ValuationProfile, conductor_exponent, ramification_break, symbol_residue, symbol_sum
from .ratfunc import RatFunc
from .series import LaurentSeries
from .tower import RamificationProfile, TowerDatum, genus_sequence, stability_classify
from .witt import WittVec, universal_polys

__all__ = [
    "FFElem",
    "FieldSpec",
    "UnramElem",
    "ZpApprox",
    "choose_alpha",
    "LaurentSeries",
    "RatFunc",
    "WittVec",
    "universal_polys",
    "LocalStandardForm",
    "GlobalStandardForm",
    "reduce_local",
    "reduce_global_p1",
    "eval_form",
    "in_wp_image",
    "LocalUnit",
    "ValuationProfile",
    "symbol_residue",
    "symbol_sum",
    "conductor_exponent",
    "ramification_break",
    "TowerDatum",
    "RamificationProfile",
    "genus_sequence",
    "stability_classify",
]
