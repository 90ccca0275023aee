from .bridge import BridgeResult, check_ring_bridge, element_images
from .construct import PQuotientSpec, construct_abelian, construct_pquotient
from .ring import RingModel, ring_model, ring_model_multiply

__all__ = [
    "PQuotientSpec", "construct_abelian", "construct_pquotient",
    "RingModel", "ring_model", "ring_model_multiply",
    "BridgeResult", "check_ring_bridge", "element_images",
]
