"""Faddeev and Yakubovsky component equations on small lattices."""

from ._fy import (
    FyError,
    __version__,
    chain_orbit_sizes,
    chains,
    config_echo,
    faddeev_ground,
    hardcore3,
    hardcore4_defect,
    oracle,
    presets,
    spectrum_check,
    yakubovsky_ground,
)

__all__ = [
    "FyError",
    "__version__",
    "chain_orbit_sizes",
    "chains",
    "config_echo",
    "faddeev_ground",
    "hardcore3",
    "hardcore4_defect",
    "oracle",
    "presets",
    "spectrum_check",
    "yakubovsky_ground",
]
