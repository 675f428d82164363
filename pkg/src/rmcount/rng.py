"""Reproducible random streams.

Each :class:`RngStream` is a xoshiro256** generator whose 256-bit state is
derived from ``(seed, stream_id)`` with :class:`numpy.random.SeedSequence`.
Child streams extend the id tuple, so independent chains get independent
streams regardless of the order in which they are run.  The compiled kernel
implements the same generator and advances the same state, so both backends
produce identical draws.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
_INV_2_53 = 1.0 / 9007199254740992.0


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


def derive_state(seed: int, stream_id: tuple[int, ...]) -> np.ndarray:
    ss = np.random.SeedSequence(entropy=seed & MASK64, spawn_key=tuple(stream_id))
    state = ss.generate_state(4, np.uint64)
    if not state.any():  # xoshiro's one forbidden state
        state[0] = 1
    return state


def derive_states(seed: int, prefix: tuple[int, ...], count: int) -> np.ndarray:
    """States for streams ``prefix + (j,)`` with ``j`` in ``range(count)``, shape ``(count, 4)``."""
    out = np.empty((count, 4), dtype=np.uint64)
    for j in range(count):
        out[j] = derive_state(seed, prefix + (j,))
    return out


class RngStream:
    """Seeded xoshiro256** stream identified by ``(seed, stream_id)``."""

    __slots__ = ("seed", "stream_id", "_s")

    def __init__(self, seed: int = 0, stream_id: tuple[int, ...] = ()) -> None:
        if seed < 0 or seed > MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = int(seed)
        self.stream_id = tuple(int(i) for i in stream_id)
        self._s = [int(v) for v in derive_state(self.seed, self.stream_id)]

    def derive(self, *ids: int) -> RngStream:
        """Child stream; depends only on ``(seed, stream_id + ids)``, not on draws so far."""
        return RngStream(self.seed, self.stream_id + tuple(ids))

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def uniform(self) -> float:
        """Double in [0, 1) from the top 53 bits of one draw."""
        return (self.next_u64() >> 11) * _INV_2_53

    def bits(self, count: int) -> int:
        """``count`` uniform bits (``count <= 64``) from one draw."""
        if not 0 < count <= 64:
            raise ValueError(f"count must be in [1, 64], got {count}")
        return self.next_u64() >> (64 - count)

    def state_array(self) -> np.ndarray:
        return np.array(self._s, dtype=np.uint64)

    def set_state(self, state) -> None:
        self._s = [int(v) for v in state]

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"
