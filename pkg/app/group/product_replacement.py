"""Random group elements by product replacement with a rattle accumulator.

The slot tuple starts as the generators cycled to fill ``slots`` entries.
Each step picks two distinct slots ``i != j``, replaces ``slots[i]`` by a
product with ``slots[j]`` or its inverse on a random side, and multiplies
the accumulator by the new ``slots[i]``. The accumulator is the sample.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from app.domain.constants import PR_BURN_IN, PR_SLOTS, PR_STEPS_PER_DRAW
from app.domain.exceptions import ConfigurationError
from app.group.perm import Perm, compose, identity, inverse, is_identity


class Sampler:
    """Stateful sampler; confine one instance to one chain."""

    def __init__(
        self,
        gens: Sequence[Sequence[int]],
        *,
        slots: int = PR_SLOTS,
        burn_in: int = PR_BURN_IN,
        steps_per_draw: int = PR_STEPS_PER_DRAW,
        degree: int | None = None,
    ):
        if slots < 2:
            raise ConfigurationError("product replacement needs at least 2 slots")
        if burn_in < 0 or steps_per_draw < 1:
            raise ConfigurationError("burn_in must be >= 0 and steps_per_draw >= 1")
        gens = [tuple(g) for g in gens if not is_identity(g)]
        if not gens and degree is None:
            raise ConfigurationError("an empty generator list needs an explicit degree")
        self.degree = len(gens[0]) if gens else degree
        self.burn_in = burn_in
        self.steps_per_draw = steps_per_draw
        size = max(slots, len(gens))
        self._slots: list[Perm] = [gens[i % len(gens)] for i in range(size)] if gens else []
        self._accumulator: Perm = identity(self.degree)
        self._warm = False
        self.draws = 0

    @property
    def trivial(self) -> bool:
        return not self._slots

    def _step(self, rng: np.random.Generator) -> None:
        size = len(self._slots)
        i = int(rng.integers(size))
        j = int(rng.integers(size - 1))
        if j >= i:
            j += 1
        other = self._slots[j]
        if rng.integers(2):
            other = inverse(other)
        if rng.integers(2):
            self._slots[i] = compose(self._slots[i], other)
        else:
            self._slots[i] = compose(other, self._slots[i])
        self._accumulator = compose(self._accumulator, self._slots[i])

    def next(self, rng: np.random.Generator) -> Perm:
        if self.trivial:
            return self._accumulator
        if not self._warm:
            for _ in range(self.burn_in):
                self._step(rng)
            self._warm = True
        for _ in range(self.steps_per_draw):
            self._step(rng)
        self.draws += 1
        return self._accumulator


def prng_sampler(
    gens: Sequence[Sequence[int]],
    slots: int = PR_SLOTS,
    burn_in: int = PR_BURN_IN,
    steps_per_draw: int = PR_STEPS_PER_DRAW,
    *,
    degree: int | None = None,
) -> Sampler:
    return Sampler(
        gens,
        slots=slots,
        burn_in=burn_in,
        steps_per_draw=steps_per_draw,
        degree=degree,
    )


__all__ = ["Sampler", "prng_sampler"]
