"""Value-function cuts exchanged between neighbouring stage problems.

A backward solve of stage ``y`` at trial incoming state ``m̂`` yields its
LP value ``Ĉ`` and the link-row duals ``μ`` (cost per unit of incoming
state).  Convexity of the LP value function gives, for any state ``m``:

    cost-to-go(m)  >=  Ĉ + μ·(m − m̂)

which lands in stage ``y−1`` as the row

    alpha − Σ_e μ_e · out_col_e  >=  Ĉ − μ·m̂
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class BendersCut:
    intercept: float                  # Ĉ − μ·m̂
    slopes: dict[str, float]          # state key -> μ_e

    def value_at(self, state: dict[str, float]) -> float:
        return self.intercept + sum(mu * state.get(key, 0.0)
                                    for key, mu in self.slopes.items())


@dataclass
class CutPool:
    """Deduplicated cuts attached to one stage's cost-to-go column."""
    cuts: list[BendersCut] = field(default_factory=list)
    tol: float = 1e-9

    def add(self, cut: BendersCut) -> bool:
        """Store the cut; False when an indistinguishable one exists."""
        for other in self.cuts:
            if abs(other.intercept - cut.intercept) > self.tol:
                continue
            keys = set(other.slopes) | set(cut.slopes)
            if all(abs(other.slopes.get(k, 0.0) - cut.slopes.get(k, 0.0))
                   <= self.tol for k in keys):
                return False
        self.cuts.append(cut)
        return True

    def __len__(self) -> int:
        return len(self.cuts)
