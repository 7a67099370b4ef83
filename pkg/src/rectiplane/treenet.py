"""Incremental tree networks realizing a metric, detection of the first
non-tree quadruplet, and drawing of at-most-4-leaf trees in the l1 plane."""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .metric import PlanePoint, ops


class TooManyLeaves(ValueError):
    pass


@dataclass(frozen=True)
class FirstFailure:
    """Insertion step at which the metric stopped being a tree metric.

    a, b: the consecutive pair whose path received terminal xi; xj: the
    first terminal in breadth-first order from xi whose tree distance to xi
    disagrees with the metric.  The quadruplet {a, b, xi, xj} always has a
    non-degenerate tight span.
    """
    a: int
    b: int
    xi: int
    xj: int

    @property
    def quadruplet(self):
        return (self.a, self.b, self.xi, self.xj)


class TreeNetwork:
    """Weighted tree over terminal and attachment nodes.

    adj maps node -> {neighbor: positive edge length}; terminal_node maps a
    terminal's metric index to its node; node_terminal is the reverse (one
    terminal per node at most, duplicates are rejected by metric validation).
    """

    def __init__(self):
        self.adj = {}
        self.terminal_node = {}
        self.node_terminal = {}
        self._next = 0

    def new_node(self, terminal=None):
        node = self._next
        self._next += 1
        self.adj[node] = {}
        if terminal is not None:
            self.terminal_node[terminal] = node
            self.node_terminal[node] = terminal
        return node

    def add_edge(self, u, v, length):
        assert length > 0
        self.adj[u][v] = length
        self.adj[v][u] = length

    def split_edge(self, u, v, offset):
        """Insert a node on edge (u,v) at `offset` from u and return it."""
        total = self.adj[u][v]
        assert 0 < offset < total
        del self.adj[u][v]
        del self.adj[v][u]
        w = self.new_node()
        self.add_edge(u, w, offset)
        self.add_edge(w, v, total - offset)
        return w

    def path_nodes(self, src, dst):
        """Nodes along the unique path from src to dst, inclusive."""
        parent = {src: None}
        stack = [src]
        while stack:
            x = stack.pop()
            if x == dst:
                break
            for y in self.adj[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        path = [dst]
        while path[-1] != src:
            path.append(parent[path[-1]])
        path.reverse()
        return path

    def distances_from(self, src):
        """Tree distance from src to every node."""
        dist = {src: Fraction(0)}
        stack = [src]
        while stack:
            x = stack.pop()
            for y, length in self.adj[x].items():
                if y not in dist:
                    dist[y] = dist[x] + length
                    stack.append(y)
        return dist

    def consecutive_pairs(self):
        """Terminal pairs whose connecting path contains no other terminal.

        Every such pair either shares an edge or is separated by one
        component of attachment nodes; each component contributes all pairs
        of its boundary terminals.
        """
        pairs = set()
        for u in self.adj:
            tu = self.node_terminal.get(u)
            if tu is None:
                continue
            for v in self.adj[u]:
                tv = self.node_terminal.get(v)
                if tv is not None and tu < tv:
                    pairs.add((tu, tv))
        seen = set()
        for s in self.adj:
            if s in self.node_terminal or s in seen:
                continue
            boundary = []
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y in self.node_terminal:
                        boundary.append(self.node_terminal[y])
                    elif y not in seen:
                        seen.add(y)
                        stack.append(y)
            boundary.sort()
            for i in range(len(boundary)):
                for j in range(i + 1, len(boundary)):
                    pairs.add((boundary[i], boundary[j]))
        return sorted(pairs)

    def degree(self, node):
        return len(self.adj[node])


def count_leaves(tree):
    """Number of degree-1 nodes; a single isolated node counts as one leaf."""
    if len(tree.adj) == 1:
        return 1
    return sum(1 for node in tree.adj if tree.degree(node) == 1)


def build_tree_network(ms):
    """Insert terminals in input order, attaching each at the consecutive
    pair minimizing its Gromov product, and verify all tree distances after
    every insertion.  Returns the completed TreeNetwork, or the FirstFailure
    describing the earliest insertion whose distances cannot be realized.
    """
    tree = TreeNetwork()
    tree.new_node(terminal=0)
    if ms.n == 1:
        return tree
    node1 = tree.new_node(terminal=1)
    tree.add_edge(tree.terminal_node[0], node1, ms.d(0, 1))
    for i in range(2, ms.n):
        pairs = tree.consecutive_pairs()
        ops.add(len(pairs) + len(tree.adj))
        best = None
        for a, b in pairs:
            alpha = (ms.d(i, a) + ms.d(i, b) - ms.d(a, b)) / 2
            if best is None or (alpha, (a, b)) < best:
                best = (alpha, (a, b))
        alpha, (a, b) = best
        offset = (ms.d(a, b) + ms.d(a, i) - ms.d(b, i)) / 2
        path = tree.path_nodes(tree.terminal_node[a], tree.terminal_node[b])
        walked = Fraction(0)
        c = path[0]
        if offset > 0:
            for u, v in zip(path, path[1:]):
                step = tree.adj[u][v]
                if walked + step < offset:
                    walked += step
                    c = v
                    continue
                if walked + step == offset:
                    c = v
                else:
                    c = tree.split_edge(u, v, offset - walked)
                break
        if alpha == 0:
            # Lands inside the pair's path, so c is never a terminal node.
            assert c not in tree.node_terminal
            tree.terminal_node[i] = c
            tree.node_terminal[c] = i
        else:
            node_i = tree.new_node(terminal=i)
            tree.add_edge(c, node_i, alpha)
        # Verify by breadth-first search from the new terminal; the first
        # failing terminal in visit order keeps {a, b, i, j} non-degenerate
        # (terminals nearer on the path to j have already passed).
        start = tree.terminal_node[i]
        dist = {start: Fraction(0)}
        queue = deque([start])
        ops.add(len(tree.adj))
        while queue:
            x = queue.popleft()
            j = tree.node_terminal.get(x)
            if j is not None and j != i and dist[x] != ms.d(i, j):
                return FirstFailure(a, b, i, j)
            for y, length in tree.adj[x].items():
                if y not in dist:
                    dist[y] = dist[x] + length
                    queue.append(y)
    return tree


def _branch_paths(tree, center, block=None):
    """Paths leaving `center` (skipping the neighbor `block`), each a list of
    (node, distance from center), sorted by the smallest terminal metric
    index found along the branch."""
    branches = []
    for nbr in tree.adj[center]:
        if nbr == block:
            continue
        nodes = []
        dist = tree.adj[center][nbr]
        prev, cur = center, nbr
        while True:
            nodes.append((cur, dist))
            nxt = [y for y in tree.adj[cur] if y != prev]
            if not nxt:
                break
            assert len(nxt) == 1, "branch contains a ramification node"
            prev, cur = cur, nxt[0]
            dist = dist + tree.adj[prev][cur]
        key = min((tree.node_terminal[n] for n, _ in nodes
                   if n in tree.node_terminal), default=len(tree.adj))
        branches.append((key, nodes))
    branches.sort(key=lambda item: item[0])
    return [nodes for _, nodes in branches]


_AXIS = (Fraction(1), Fraction(-1))


def embed_tree(tree):
    """Draw a tree network with at most four leaves isometrically.

    The path between ramification nodes (there are at most two) runs along
    the x axis.  A lone ramification node sends its branches along the four
    axis directions in branch order; with two ramification nodes the left
    one uses up then left, the right one right then down.  Returns the
    terminal coordinates in metric-index order.
    """
    if count_leaves(tree) > 4:
        raise TooManyLeaves(f"{count_leaves(tree)} leaves")
    pos = {}
    rams = [node for node in tree.adj if tree.degree(node) >= 3]
    if not rams:
        # A bare path; start from the endpoint with the smallest terminal.
        ends = [node for node in tree.adj if tree.degree(node) <= 1]
        start = min(ends, key=lambda node: tree.node_terminal.get(node, len(tree.adj)))
        for node, dist in tree.distances_from(start).items():
            pos[node] = PlanePoint(dist, Fraction(0))
    elif len(rams) == 1:
        center = rams[0]
        pos[center] = PlanePoint(Fraction(0), Fraction(0))
        dirs = ((1, 0), (-1, 0), (0, 1), (0, -1))
        for direction, nodes in zip(dirs, _branch_paths(tree, center)):
            dx, dy = direction
            for node, dist in nodes:
                pos[node] = PlanePoint(dx * dist, dy * dist)
    else:
        assert len(rams) == 2
        r1, r2 = rams
        spine = tree.path_nodes(r1, r2)

        def side_key(center, spine_nbr):
            return min((tree.node_terminal[n]
                        for nodes in _branch_paths(tree, center, spine_nbr)
                        for n, _ in nodes if n in tree.node_terminal),
                       default=len(tree.adj))

        if side_key(r1, spine[1]) > side_key(r2, spine[-2]):
            r1, r2 = r2, r1
            spine = list(reversed(spine))
        pos[r1] = PlanePoint(Fraction(0), Fraction(0))
        walked = Fraction(0)
        for u, v in zip(spine, spine[1:]):
            walked += tree.adj[u][v]
            pos[v] = PlanePoint(walked, Fraction(0))
        for center, spine_nbr, dirs in ((r1, spine[1], ((0, 1), (-1, 0))),
                                        (r2, spine[-2], ((1, 0), (0, -1)))):
            side = _branch_paths(tree, center, spine_nbr)
            assert len(side) == 2
            base = pos[center]
            for (dx, dy), nodes in zip(dirs, side):
                for node, dist in nodes:
                    pos[node] = PlanePoint(base.x + dx * dist, base.y + dy * dist)
    return [pos[tree.terminal_node[i]] for i in sorted(tree.terminal_node)]
