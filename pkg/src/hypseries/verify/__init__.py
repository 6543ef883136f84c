"""Identity registry and checking harness."""
from .harness import (AdmissibleDrawExhausted, UnknownIdentity, check_all, check_identity,
                      choose_square_discriminant_t, negative_control, summarize)
from .properties import basic_property_suite
from .registry import IdentityCase, get_case, registry_hash, registry_list

__all__ = [
    "AdmissibleDrawExhausted", "UnknownIdentity", "IdentityCase", "basic_property_suite", "check_all",
    "check_identity", "choose_square_discriminant_t", "get_case", "negative_control",
    "registry_hash", "registry_list", "summarize",
]
