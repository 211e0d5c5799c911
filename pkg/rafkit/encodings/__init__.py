"""
Decomposition-guided QBF encodings of stable-extension existence.
"""

from typing import Union

from ..core.model import AF, RAF
from ..decomposition.td import TreeDecomposition
from .base import Encoding, Family, Fragment, Provenance
from .induced import WIDTH_BOUNDS, check_width, induced_td, width_bound
from .programs import encode_stab_disj, encode_stab_tight
from .stable import encode_stab, encode_stab_prop, encode_stab_simple

_ENCODERS = {
    Fragment.SIMPLE: encode_stab_simple,
    Fragment.PROP: encode_stab_prop,
    Fragment.TIGHT: encode_stab_tight,
    Fragment.DISJ: encode_stab_disj,
}


def encode(obj: Union[AF, RAF], td: TreeDecomposition, fragment: Union[str, Fragment]) -> Encoding:
    """Run the encoder of ``fragment``; ``stab`` takes the AF of a RAF."""
    fragment = Fragment(fragment)
    if fragment is Fragment.STAB:
        return encode_stab(obj.af if isinstance(obj, RAF) else obj, td)
    if not isinstance(obj, RAF):
        obj = RAF.make(obj)
    return _ENCODERS[fragment](obj, td)


__all__ = [
    "Encoding",
    "Family",
    "Fragment",
    "Provenance",
    "WIDTH_BOUNDS",
    "check_width",
    "encode",
    "encode_stab",
    "encode_stab_disj",
    "encode_stab_prop",
    "encode_stab_simple",
    "encode_stab_tight",
    "induced_td",
    "width_bound",
]
