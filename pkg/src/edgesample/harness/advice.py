"""Edge-count advice handed to the samplers.

The samplers need an estimate ``mtilde`` of the edge count that lies within
``e^{+-1/10}`` of the truth with probability at least ``1 - r``. Estimating
it is a separate problem, so these providers stand in for an estimator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ..oracle import OracleSession

__all__ = ["AdviceProvider", "parse_advice", "ADVICE_NOISE_BOUND"]

#: Largest multiplicative log-error the samplers are designed to tolerate.
ADVICE_NOISE_BOUND = 0.1


@dataclass(frozen=True)
class AdviceProvider:
    """Source of the edge-count estimate.

    Attributes:
        mode: ``"exact"`` (true edge count, no queries), ``"noisy_exact"``
            (true count times ``e^{U}`` with ``U`` uniform in
            ``[-noise, noise]``), ``"adversarial_fixed"`` (always ``value``)
            or ``"external"`` (``estimator(session, r)``).
        noise: log-scale noise bound for ``noisy_exact``; at most 1/10.
        failure_prob: chance that ``noisy_exact`` instead emits an
            out-of-contract value (true count times ``e^{+-1/2}``).
        value: the fixed answer for ``adversarial_fixed``.
        estimator: callable for ``external``; its queries are billed to the
            session's advice counter by the entry points.
    """

    mode: str = "exact"
    noise: float = ADVICE_NOISE_BOUND
    failure_prob: float = 0.0
    value: float | None = None
    estimator: Callable[[OracleSession, float], float] | None = None

    def __post_init__(self):
        if self.mode not in ("exact", "noisy_exact", "adversarial_fixed", "external"):
            raise ValueError(f"unknown advice mode {self.mode!r}")
        if not 0.0 <= self.noise <= ADVICE_NOISE_BOUND:
            raise ValueError(f"noise bound must lie in [0, {ADVICE_NOISE_BOUND}]")
        if not 0.0 <= self.failure_prob <= 1.0:
            raise ValueError("failure_prob must lie in [0, 1]")
        if self.mode == "adversarial_fixed" and (self.value is None or self.value < 0):
            raise ValueError("adversarial_fixed advice needs a non-negative value")
        if self.mode == "external" and self.estimator is None:
            raise ValueError("external advice needs an estimator")

    def estimate(self, s: OracleSession, r: float) -> float:
        """Edge-count estimate for the session's graph at error budget ``r``."""
        if self.mode == "exact":
            return float(s.graph.m)
        if self.mode == "adversarial_fixed":
            return float(self.value)
        if self.mode == "external":
            return float(self.estimator(s, r))
        m = s.graph.m
        rng = s.rng
        if self.failure_prob and rng.random() < self.failure_prob:
            return m * math.exp(0.5 if rng.random() < 0.5 else -0.5)
        return m * math.exp(rng.uniform(-self.noise, self.noise))

    def describe(self) -> str:
        if self.mode == "adversarial_fixed":
            return f"fixed:{self.value:g}"
        if self.mode == "noisy_exact":
            return "noisy"
        return self.mode


def parse_advice(text: str) -> AdviceProvider:
    """Parse the command-line forms ``exact``, ``noisy`` and ``fixed:V``."""
    if text == "exact":
        return AdviceProvider("exact")
    if text == "noisy":
        return AdviceProvider("noisy_exact")
    if text.startswith("fixed:"):
        try:
            value = float(text[len("fixed:"):])
        except ValueError:
            raise ValueError(f"bad fixed advice {text!r}") from None
        return AdviceProvider("adversarial_fixed", value=value)
    raise ValueError(f"unknown advice {text!r}; expected exact, noisy or fixed:V")
