from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class DensestResult:
    """Outcome of a densest-subgraph solver.

    ``members`` holds internal node ids; map them through ``Graph.labels``
    (or :meth:`Graph.to_labels`) for the input id space.
    ``certificate_gap`` is the dual bound minus the found density where the
    solver has a dual bound, else ``nan``.
    """

    members: frozenset
    density: float
    sweeps: int = 0
    certificate_gap: float = float("nan")
    certified: bool = False

    @property
    def size(self) -> int:
        return len(self.members)
