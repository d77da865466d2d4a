"""Factory for sufficient-statistic chains."""

from ..errors import ConfigError
from .base import Chain
from .degree import DegreeChain
from .profile import ProfileChain
from .size import SizeChain
from .tagged import ATTACH_MODES, TaggedChain

CHAIN_NAMES = ("size", "degree", "profile", "tagged")


def get_chain(name: str, k: int = 1, attach: str = "uniform") -> Chain:
    """Create a chain by name; ``tagged_2`` is shorthand for ``tagged`` with k=2."""
    if name.startswith("tagged_"):
        name, _, suffix = name.partition("_")
        try:
            k = int(suffix)
        except ValueError as e:
            raise ConfigError(f"Bad tag count in chain name: {suffix}") from e

    if name == "size":
        return SizeChain()
    if name == "degree":
        return DegreeChain()
    if name == "profile":
        return ProfileChain()
    if name == "tagged":
        if k < 1:
            raise ConfigError("tagged chains need k >= 1")
        if attach not in ATTACH_MODES:
            raise ConfigError(f"Unknown attach mode: {attach}")
        return TaggedChain(k=k, attach=attach)
    raise ConfigError(f"Unknown chain: {name}. Choose from {', '.join(CHAIN_NAMES)}")
