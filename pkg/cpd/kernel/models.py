"""Addressing of Z^d x G_F and kernel blocks."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, slots=True)
class ProductPoint:
    """
    Vertex n + v_p of Z^d x G_F.

    Attributes:
        n: Lattice coordinate in Z^d
        p: Vertex index in G_F
    """

    n: tuple[int, ...]
    p: int

    @property
    def d(self) -> int:
        return len(self.n)

    @classmethod
    def of(cls, n: list[int] | tuple[int, ...], p: int) -> "ProductPoint":
        """Build from any integer sequence."""
        return cls(n=tuple(int(v) for v in n), p=int(p))

    def shifted(self, a: tuple[int, ...]) -> "ProductPoint":
        """Translate the lattice coordinate by a."""
        return ProductPoint(n=tuple(x + y for x, y in zip(self.n, a, strict=True)), p=self.p)


@dataclass(frozen=True, slots=True)
class KernelBlock:
    """
    All propagator amplitudes between G_F copies at lattice offset nu.

    block[p, q] = exp(i t H)(n + v_p, m + v_q) for any n - m = nu. Every
    entry shares the scalar lattice factor, so block = factor * exp(i t H_{G_F}).
    """

    nu: tuple[int, ...]
    t: float
    factor: complex
    block: np.ndarray

    def to_dict(self) -> dict[str, object]:
        """JSON-ready representation with real and imaginary parts."""
        return {
            "nu": list(self.nu),
            "t": self.t,
            "factor": {"re": self.factor.real, "im": self.factor.imag},
            "block": {
                "re": [[float(v) for v in row] for row in self.block.real],
                "im": [[float(v) for v in row] for row in self.block.imag],
            },
        }
