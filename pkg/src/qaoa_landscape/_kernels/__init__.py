"""Hot-loop kernels: compiled extension when built, numpy fallback otherwise.

Set QAOA_LANDSCAPE_PUREPY=1 to force the fallback (used by the benchmark).
"""

import os

if os.environ.get("QAOA_LANDSCAPE_PUREPY"):
    from ._pyref import apply_mixer, pairwise_profiles

    BACKEND = "python"
else:
    try:
        from ._ext import apply_mixer, pairwise_profiles

        BACKEND = "cython"
    except ImportError:
        from ._pyref import apply_mixer, pairwise_profiles

        BACKEND = "python"

__all__ = ["apply_mixer", "pairwise_profiles", "BACKEND"]
