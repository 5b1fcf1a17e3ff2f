"""
Finite chunk [-L, L]^d x G_F of the product graph.

The truncated Hamiltonian is the Kronecker sum of open path adjacencies on
each lattice axis with H_{G_F} on every layer:

    H = sum_j I (x) .. (x) P_{2L+1} (x) .. (x) I (x) I_k  +  I_lattice (x) H_{G_F}

which is exactly the Cartesian-product adjacency restricted to the box plus
the potential copied across layers.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from cpd.config import get_logger, get_settings
from cpd.exceptions import BoxTooLargeError
from cpd.graphs import FiniteGraph, hamiltonian_matrix
from cpd.kernel import ProductPoint

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class LatticeBox:
    """
    Index map between points (n, p) with ||n||_inf <= L and flat indices.

    Flat index = lattice_index * k + p, lattice_index row-major in
    (n_1 + L, ..., n_d + L).
    """

    d: int
    L: int
    k: int

    @property
    def side(self) -> int:
        return 2 * self.L + 1

    @property
    def size(self) -> int:
        """Total vertex count N = (2L + 1)^d k."""
        return self.side**self.d * self.k

    def contains(self, point: ProductPoint) -> bool:
        return (
            point.d == self.d
            and 0 <= point.p < self.k
            and all(abs(c) <= self.L for c in point.n)
        )

    def index(self, point: ProductPoint) -> int:
        """Flat index of a point in the box."""
        if not self.contains(point):
            raise ValueError(f"{point} lies outside the box of radius {self.L}")
        lattice = int(
            np.ravel_multi_index(
                tuple(c + self.L for c in point.n), (self.side,) * self.d
            )
        )
        return lattice * self.k + point.p

    def point(self, index: int) -> ProductPoint:
        """Point at a flat index."""
        if not 0 <= index < self.size:
            raise ValueError(f"index {index} outside 0..{self.size - 1}")
        lattice, p = divmod(index, self.k)
        coords = np.unravel_index(lattice, (self.side,) * self.d)
        return ProductPoint(n=tuple(int(c) - self.L for c in coords), p=p)

    def lattice_norms(self) -> np.ndarray:
        """||n||_inf for every flat index."""
        grids = np.indices((self.side,) * self.d).reshape(self.d, -1) - self.L
        norms = np.max(np.abs(grids), axis=0)
        return np.repeat(norms, self.k)


@dataclass(frozen=True, slots=True)
class TruncatedHamiltonian:
    """
    Sparse Hamiltonian on a LatticeBox.

    Attributes:
        box: Index map
        matrix: N x N real symmetric CSR matrix
        bound: Spectral-radius bound 2d + max-degree(G_F) + max|Q|
    """

    box: LatticeBox
    matrix: sparse.csr_matrix
    bound: float

    @property
    def edge_count(self) -> int:
        """Undirected edges of the truncated product graph."""
        return int(sparse.triu(self.matrix, k=1).count_nonzero())

    def max_row_degree(self) -> int:
        """Largest number of off-diagonal neighbours of any vertex."""
        off = self.matrix - sparse.diags(self.matrix.diagonal())
        off = sparse.csr_matrix(off)
        off.eliminate_zeros()
        return int(np.max(np.diff(off.indptr))) if off.shape[0] else 0


def _path_adjacency(m: int) -> sparse.csr_matrix:
    if m == 1:
        return sparse.csr_matrix((1, 1))
    ones = np.ones(m - 1)
    return sparse.diags([ones, ones], [-1, 1], format="csr")


def assemble_truncated(
    g: FiniteGraph,
    d: int,
    L: int,
    max_size: int | None = None,
) -> TruncatedHamiltonian:
    """
    Build the open-boundary truncated Hamiltonian on [-L, L]^d x G_F.

    Args:
        g: The finite graph
        d: Lattice dimension
        L: Box radius (L = 0 gives a single layer)
        max_size: Cap on N (default: settings.max_box_size)

    Raises:
        BoxTooLargeError: If N exceeds the cap
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if L < 0:
        raise ValueError(f"L must be >= 0, got {L}")

    limit = max_size if max_size is not None else get_settings().max_box_size
    box = LatticeBox(d=d, L=L, k=g.k)
    if box.size > limit:
        raise BoxTooLargeError(box.size, limit)

    side = box.side
    path = _path_adjacency(side)
    layer = sparse.csr_matrix(hamiltonian_matrix(g))
    lattice_size = side**d

    h = sparse.kron(sparse.identity(lattice_size, format="csr"), layer, format="csr")
    for j in range(d):
        before = sparse.identity(side**j, format="csr")
        after = sparse.identity(side ** (d - j - 1) * g.k, format="csr")
        h = h + sparse.kron(sparse.kron(before, path), after, format="csr")

    h = sparse.csr_matrix(h)
    h.eliminate_zeros()
    bound = 2.0 * d + g.max_degree + float(np.max(np.abs(g.potential_vector)))

    truncated = TruncatedHamiltonian(box=box, matrix=h, bound=bound)
    logger.debug(
        "Assembled truncated Hamiltonian",
        d=d,
        L=L,
        size=box.size,
        edges=truncated.edge_count,
        bound=bound,
    )
    return truncated
