"""Deterministic per-replication seed derivation.

Kept in its own module so the exact algorithm is easy to pin down and
reimplement elsewhere: any implementation that reproduces ``derive_seed``
and the Philox/inverse-transform sampling path of
:func:`exorder.distributions.sample_from` reproduces every experiment
stream bit for bit.
"""

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """The standard splitmix64 finalizer on unsigned 64-bit integers."""
    z = x & _MASK
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return (z ^ (z >> 31)) & _MASK


def derive_seed(master_seed: int, index: int) -> int:
    """Seed for replication ``index`` of an experiment with ``master_seed``."""
    return splitmix64((master_seed + (index + 1) * _GOLDEN) & _MASK)
