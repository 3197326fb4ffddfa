"""Strongly connected components of implicitly represented digraphs.

Iterative Tarjan with an explicit work stack: state spaces of 2**n vertices
blow past the interpreter recursion limit long before they stress memory.
Vertices are the integers 0..num_vertices-1 and the graph is given as a
successor function, so nothing is ever materialized.
"""
from __future__ import annotations

from typing import Callable, Iterable, List


def strongly_connected_components(
    num_vertices: int, successors: Callable[[int], Iterable[int]]
) -> List[List[int]]:
    """Return all SCCs, each a list of vertices.

    Components are emitted in reverse topological order of the condensation:
    every component appears before any component that can reach it.
    """
    index = [0] * num_vertices  # 0 = unvisited, else visit order + 1
    lowlink = [0] * num_vertices
    on_stack = bytearray(num_vertices)
    stack: List[int] = []
    components: List[List[int]] = []
    counter = 1

    for root in range(num_vertices):
        if index[root]:
            continue
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = 1
        work = [(root, iter(successors(root)))]
        while work:
            v, it = work[-1]
            descended = False
            for w in it:
                if not index[w]:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = 1
                    work.append((w, iter(successors(w))))
                    descended = True
                    break
                if on_stack[w] and index[w] < lowlink[v]:
                    lowlink[v] = index[w]
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if lowlink[v] < lowlink[parent]:
                    lowlink[parent] = lowlink[v]
            if lowlink[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    component.append(w)
                    if w == v:
                        break
                components.append(component)
    return components
