""" Weighted sensor graph, cloudlet partitioning and cross-cloudlet
    dependency closures.

    Nodes are referred to by their integer index in the graph's
    node_ids order. String sensor identifiers only appear at file
    boundaries (see matrixmodel).

    Created: Oct 02, 2026
    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import logging
from dataclasses import dataclass, field

# Third party
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra
from scipy.spatial.distance import cdist

##########
# Logger #
##########
logger = logging.getLogger(__name__)

##############
# Exceptions #
##############
class AsymmetricDistances(ValueError):
    """ Distance matrix is not symmetric. """
    pass


class UncoveredNodes(ValueError):
    """ One or more nodes lie outside every cloudlet radius. """
    pass


class UnknownNode(KeyError):
    """ Node index is not part of the graph. """
    pass

#################
# WeightedGraph #
#################
@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """ Sensor topology with a symmetric weight matrix W.

        distances holds road distances in meters (np.inf where
        unknown). positions is an optional (n, 2) array of planar
        coordinates in meters. parent_index maps each node back to
        the graph this one was induced from (None for a root graph).
    """
    node_ids: tuple
    adjacency: np.ndarray
    distances: np.ndarray
    positions: np.ndarray = None
    parent_index: np.ndarray = None

    def __post_init__(self):
        n = len(self.node_ids)
        if self.adjacency.shape != (n, n):
            raise ValueError(
                f"Adjacency shape {self.adjacency.shape} does not match "
                f"{n} nodes")
        self.adjacency.setflags(write=False)
        self.distances.setflags(write=False)
        if self.positions is not None:
            self.positions.setflags(write=False)

    @property
    def n_nodes(self):
        return len(self.node_ids)

    @property
    def support(self):
        """ Unweighted edge set: edge present iff weight > 0. """
        return self.adjacency > 0

    def neighbours(self, node):
        return np.flatnonzero(self.adjacency[node] > 0)

    def hop_ball(self, sources, l_hops):
        """ All nodes within l_hops positive-weight hops of any
            source node (sources included).
        """
        sources = sorted(int(s) for s in sources)
        if not sources:
            return frozenset()
        if l_hops <= 0:
            return frozenset(sources)
        hops = dijkstra(
            csr_matrix(self.support.astype(float)),
            directed=False,
            indices=sources,
            unweighted=True,
            limit=l_hops
            )
        reached = np.isfinite(np.atleast_2d(hops)).any(axis=0)
        return frozenset(int(i) for i in np.flatnonzero(reached))

#####################
# CloudletPartition #
#####################
@dataclass(frozen=True, eq=False)
class CloudletPartition:
    """ Disjoint node -> cloudlet assignment plus, once the closure
        has been computed, the per-cloudlet cross-cloudlet
        dependencies.
    """
    assignment: np.ndarray
    cloudlet_centers: np.ndarray = None
    radius: float = None
    l_hops: int = 0
    dependencies: dict = field(default_factory=dict)
    cloudlet_adjacency: frozenset = frozenset()

    def __post_init__(self):
        self.assignment.setflags(write=False)

    @property
    def cloudlet_ids(self):
        return tuple(int(c) for c in np.unique(self.assignment))

    def local_nodes(self, cloudlet):
        return tuple(int(i) for i in np.flatnonzero(
            self.assignment == cloudlet))

    def owner(self, node):
        return int(self.assignment[node])

    def neighbours(self, cloudlet):
        """ Cloudlets that exchange features with this one. """
        linked = set()
        for a, b in self.cloudlet_adjacency:
            if a == cloudlet:
                linked.add(b)
            elif b == cloudlet:
                linked.add(a)
        return tuple(sorted(linked))

    def check(self):
        """ Assert exhaustiveness, disjointness and closure
            exclusivity.
        """
        assert self.assignment.ndim == 1
        assert (self.assignment >= 0).all()
        for c, deps in self.dependencies.items():
            assert not set(deps) & set(self.local_nodes(c))
        return True

##############
# Operations #
##############
def build_adjacency(distances, kernel_sigma=10_000.0, cutoff=20_000.0,
                    node_ids=None, positions=None):
    """ Gaussian-kernel weights exp(-d^2 / sigma^2) for pairs within
        the cutoff. Unknown distances are np.inf.
    """
    d = np.asarray(distances, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"Distance matrix must be square, got {d.shape}")
    if kernel_sigma <= 0 or cutoff <= 0:
        raise ValueError("kernel_sigma and cutoff must be positive")
    n = d.shape[0]
    if node_ids is None:
        node_ids = tuple(str(i) for i in range(n))
    node_ids = tuple(node_ids)

    # inf == inf counts as symmetric
    mismatch = ~((d == d.T) | (np.isinf(d) & np.isinf(d.T)))
    if mismatch.any():
        i, j = (int(x) for x in np.argwhere(mismatch)[0])
        raise AsymmetricDistances(
            f"Distance from {node_ids[i]} to {node_ids[j]} "
            f"({d[i, j]}) differs from the reverse ({d[j, i]})")

    weights = np.zeros_like(d)
    within = np.isfinite(d) & (d <= cutoff)
    weights[within] = np.exp(-(d[within] ** 2) / kernel_sigma ** 2)
    np.fill_diagonal(weights, 0.0)
    logger.debug("Built adjacency with %d edges",
                 int(np.count_nonzero(weights)) // 2)

    return WeightedGraph(
        node_ids=node_ids,
        adjacency=weights,
        distances=d.copy(),
        positions=None if positions is None
            else np.asarray(positions, dtype=float).copy()
        )


def distances_from_positions(positions):
    """ Straight-line distances for graphs without a road table. """
    pos = np.asarray(positions, dtype=float)
    return cdist(pos, pos)


def partition_by_radius(graph, centers, radius):
    """ Assign each node to its nearest cloudlet center. Ties go to
        the lowest cloudlet id (argmin returns the first minimum).
    """
    if graph.positions is None:
        raise ValueError("Radius partitioning needs node positions")
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    if centers.size == 0:
        raise ValueError("At least one cloudlet center is required")

    dist = cdist(graph.positions, centers)
    uncovered = np.flatnonzero(~(dist <= radius).any(axis=1))
    if uncovered.size:
        ids = [graph.node_ids[i] for i in uncovered]
        raise UncoveredNodes(
            f"{len(ids)} node(s) outside all cloudlet radii: {ids}")

    assignment = np.argmin(dist, axis=1)
    logger.info("Partitioned %d nodes into %d cloudlets (radius %.0f m)",
                graph.n_nodes, centers.shape[0], radius)
    return CloudletPartition(
        assignment=assignment.astype(int),
        cloudlet_centers=centers.copy(),
        radius=float(radius)
        )


def partition_from_assignment(graph, mapping):
    """ Explicit node_id -> cloudlet mapping (bypasses radius
        placement).
    """
    missing = [n for n in graph.node_ids if n not in mapping]
    if missing:
        raise UncoveredNodes(f"No cloudlet assigned to: {missing}")
    assignment = np.array([int(mapping[n]) for n in graph.node_ids])
    return CloudletPartition(assignment=assignment)


def dependency_closure(graph, partition, l_hops):
    """ Per-cloudlet l-hop closure over the unweighted support of W,
        minus the cloudlet's own nodes.
    """
    if l_hops < 0:
        raise ValueError("l_hops must be >= 0")

    dependencies = {}
    for c in partition.cloudlet_ids:
        local = partition.local_nodes(c)
        ball = graph.hop_ball(local, l_hops)
        dependencies[c] = frozenset(ball - set(local))

    links = set()
    for c, deps in dependencies.items():
        for node in deps:
            other = partition.owner(node)
            links.add((min(c, other), max(c, other)))

    for c, deps in dependencies.items():
        logger.debug("Cloudlet %d: %d local, %d cross-cloudlet nodes",
                     c, len(partition.local_nodes(c)), len(deps))

    return CloudletPartition(
        assignment=np.array(partition.assignment),
        cloudlet_centers=partition.cloudlet_centers,
        radius=partition.radius,
        l_hops=int(l_hops),
        dependencies=dependencies,
        cloudlet_adjacency=frozenset(links)
        )


def induced_subgraph(graph, local_nodes, active_cross_nodes):
    """ Subgraph over local + active cross nodes, local nodes first,
        each group in index order.
    """
    local = sorted(int(n) for n in local_nodes)
    cross = sorted(int(n) for n in active_cross_nodes)
    overlap = set(local) & set(cross)
    if overlap:
        raise ValueError(f"Nodes are both local and cross: {sorted(overlap)}")
    for node in local + cross:
        if not 0 <= node < graph.n_nodes:
            raise UnknownNode(node)

    order = np.array(local + cross, dtype=int)
    sub = np.ix_(order, order)
    return WeightedGraph(
        node_ids=tuple(graph.node_ids[i] for i in order),
        adjacency=np.array(graph.adjacency[sub]),
        distances=np.array(graph.distances[sub]),
        positions=None if graph.positions is None
            else np.array(graph.positions[order]),
        parent_index=order
        )


if __name__ == "__main__":
    pass
