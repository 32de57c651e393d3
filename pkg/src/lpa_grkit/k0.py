"""Ungraded Grothendieck group of a Leavitt path algebra."""

from .intlin import cokernel, k0_relation_matrix


def k0_nongraded(g):
    """coker(N^t - I : Z^(non-sinks) -> Z^(vertices)).

    >>> from lpa_grkit.graph import parse_graph
    >>> str(k0_nongraded(parse_graph("vertex v\\nedge a v v\\nedge b v v\\nedge c v v\\nedge d v v")))
    'Z/3'
    """
    return cokernel(k0_relation_matrix(g), len(g.vertices))
