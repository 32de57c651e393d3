from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import fixture, make_graph, random_comet_graph, random_polycephaly_graph, relabel, rng_from
from lpa_grkit.graded import ResidueVector
from lpa_grkit.graph import is_acyclic, path_length_counts
from lpa_grkit.polycephaly import (
    HeadKind,
    NotPolycephaly,
    Reason,
    classify,
    decomposition_report,
    format_report,
    reduce_to_e1,
)


def report(g):
    return format_report(decomposition_report(classify(g)))


def test_five_heads_lengths():
    d = classify(fixture("five_heads"))
    assert [(h.kind, h.lengths) for h in d.heads] == [
        (HeadKind.COMET, (0, 1, 1, 2, 2)),
        (HeadKind.COMET, (0, 1, 1, 2)),
        (HeadKind.ROSE, (0, 1, 1, 1, 2, 2, 2)),
    ]
    assert d.heads[0].cycle_length == 1 and d.heads[1].cycle_length == 2
    assert d.heads[2].petals == 2
    assert is_acyclic(d.reduced_graph)


def test_five_heads_report():
    assert report(fixture("five_heads")) == (
        "M_5(K[x,x^-1])(0,1,1,2,2) ⊕ M_4(K[x^2,x^-2])(0,1,1,2) ⊕ M_7(L(1,2))(0,1,1,1,2,2,2)")


def test_small_reports():
    assert report(fixture("single_sink")) == "M_1(K)(0)"
    assert report(fixture("rose2_fed")) == "M_2(L(1,2))(0,1)"
    assert report(fixture("rose2")) == "M_1(L(1,2))(0)"
    assert report(fixture("edge_uv")) == "M_2(K)(0,1)"
    assert report(fixture("loop_fan")) == "M_3(K[x,x^-1])(0,1,1)"


def test_single_loop_is_a_comet():
    d = classify(make_graph(["v"], [("v", "v")]))
    assert d.heads[0].kind is HeadKind.COMET and d.heads[0].cycle == ("v",)


def test_rejections():
    r = classify(fixture("notpoly"))
    assert isinstance(r, NotPolycephaly) and r.reason is Reason.CYCLE_WITH_EXIT
    assert str(r).startswith("not a polycephaly graph: cycle has exit")
    r = classify(make_graph(["v", "w"], [("v", "v"), ("v", "v"), ("v", "w")]))
    assert r.reason is Reason.ROSE_WITH_EXIT
    r = classify(fixture("three_vertex"))
    assert r.reason is Reason.CYCLE_WITH_EXIT
    assert "shares a vertex" in r.detail or "leaves the cycle" in r.detail


def test_isolated_rose_and_sink_together():
    g = make_graph(["r", "s"], [("r", "r"), ("r", "r"), ("r", "r")])
    d = classify(g)
    assert [h.kind for h in d.heads] == [HeadKind.ROSE, HeadKind.SINK]
    assert [h.component for h in d.heads] == [0, 1]


def test_reduce_rejects_inconsistent_heads():
    g = fixture("two_cycle")
    with pytest.raises(RuntimeError):
        reduce_to_e1(g, [])


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_comet_base_rotation(seed):
    rng = rng_from(seed)
    g, cyc = random_comet_graph(rng)
    d = classify(g)
    (head,) = d.heads
    base = ResidueVector.from_lengths(head.lengths, head.cycle_length)
    orbit = {base.rotate(k) for k in range(head.cycle_length)}
    for v in cyc:
        other = classify(g, bases={v}).heads[0]
        assert other.vertex == v
        assert len(other.lengths) == len(head.lengths)
        assert ResidueVector.from_lengths(other.lengths, other.cycle_length) in orbit


def _head_signature(h):
    if h.kind is HeadKind.COMET:
        rv = ResidueVector.from_lengths(h.lengths, h.cycle_length)
        return (h.kind.value, h.cycle_length, len(h.lengths),
                min(rv.rotate(k).counts for k in range(h.cycle_length)))
    return (h.kind.value, h.petals, h.lengths)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_polycephaly_properties(seed):
    rng = rng_from(seed)
    g = random_polycephaly_graph(rng)
    d = classify(g)
    assert not isinstance(d, NotPolycephaly)
    E1 = d.reduced_graph
    assert is_acyclic(E1)
    for h in d.heads:
        assert h.size == sum(path_length_counts(E1, h.vertex).values())
    h2, names = relabel(g, rng)
    d2 = classify(h2)
    assert Counter(map(_head_signature, d.heads)) == Counter(map(_head_signature, d2.heads))
    for h in d.heads:
        if h.kind is not HeadKind.COMET:
            assert names[h.vertex] in {k.vertex for k in d2.heads}
