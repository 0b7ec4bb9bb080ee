"""
Numeric tolerances shared by execution, verification and solving.
"""

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Every numeric knob of the toolkit, with its default."""

    coincidence: float = 1e-9        # geometric coincidence of points/segments
    unit_length: float = 1e-9        # max |len - 1| for unit edges
    clearance_floor: float = 1e-6    # min feature distance counted as "no contact"
    residual: float = 1e-12          # root-finding residual, length units
    bracket_width: float = 1e-13     # root-finding bracket width, degrees
    max_iterations: int = 200
    copy_anchor: float = 1e-9        # copied point vs. existing target
    sweep_steps: int = 201
    prune_coincidence: float = 1e-3  # vertex coincidence during calibration

    def __post_init__(self):
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not value > 0:
                raise ValueError(f"tolerance {field.name} must be positive, got {value!r}")
        if self.sweep_steps < 2:
            raise ValueError("sweep_steps must be at least 2")

    def replace(self, **overrides):
        """Return a copy with the given fields changed; None values are ignored."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **changes)


DEFAULT_TOLERANCES = Tolerances()
