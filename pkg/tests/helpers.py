import random

from specgraph.graph import Graph, is_connected


def random_graph(rng: random.Random, n: int, p: float = None) -> Graph:
    p = rng.uniform(0.15, 0.85) if p is None else p
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_connected_graph(rng: random.Random, n: int) -> Graph:
    while True:
        g = random_graph(rng, n)
        if is_connected(g):
            return g


def random_permutation(rng: random.Random, n: int) -> list:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm
