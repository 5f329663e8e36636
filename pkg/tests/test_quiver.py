import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from sigquiver.acceptance import BUMP_REFERENCE, _same_cycle
from sigquiver.errors import SimpleSignatureError
from sigquiver.gallery import simple_signature_curvature
from sigquiver.quiver import SignatureQuiver, build_quiver, export_dot, match_labels, relabel, self_intersections, traced_word
from sigquiver.signature import signature_of
from sigquiver.words import canonical, parse_word

# edge list of the reference Musso-Nicolodi quiver, vertices numbered 1..4
MN_REFERENCE = (
    ("h", 1, 4, None),
    ("a", 4, 1, None),
    ("g", 2, 4, None),
    ("b", 3, 1, None),
    ("e", 2, 3, None),
    ("d", 3, 2, None),
    ("c", 1, 2, None),
    ("f", 4, 3, None),
)


def test_bump_quiver_has_one_vertex_at_origin(wb):
    q = wb.bump_quivers[0]
    assert len(q.vertices) == 1
    assert np.hypot(*q.vertices[0].location) <= 1e-4 * q.diag


def test_bump_quiver_edges_and_weights(wb):
    q = wb.bump_quivers[0]
    assert [e.multiplicity_mu for e in q.edges] == [6, 6, 6, 6]
    want = {"a": -2 * math.pi / 3, "b": -math.pi / 3, "c": math.pi / 3, "d": math.pi}
    for e in q.edges:
        assert e.from_vertex == e.to_vertex == 0
        assert abs(e.weight_omega - want[e.id]) <= 1e-4


@pytest.mark.parametrize("i, word", [(0, "(cadb)^6"), (2, "(cadbcdab)^3")])
def test_bump_traced_words(wb, i, word):
    assert _same_cycle(traced_word(wb.bump_quivers[i]), parse_word(word))


def test_mn_vertices_are_off_the_axis(wb):
    q = wb.mn_quiver
    assert len(q.vertices) == 4
    assert all(abs(v.location[1]) > 1e-2 * q.diag for v in q.vertices)


def test_mn_quiver_matches_reference_graph(wb):
    q = relabel(wb.mn_quiver, match_labels(wb.mn_quiver, MN_REFERENCE))
    assert len(q.edges) == 8 and all(e.multiplicity_mu == 5 for e in q.edges)
    assert _same_cycle(traced_word(q), parse_word("(bhfdgace)^5"))


def test_cogwheel_word(wb):
    q = wb.cog_quiver
    assert len(q.vertices) == 1
    assert canonical(traced_word(q)) == canonical(parse_word("a^3b^4c^5d^6"))


def test_simple_signature_has_no_quiver():
    f = simple_signature_curvature()
    assert self_intersections(signature_of(f)) == []
    with pytest.raises(SimpleSignatureError):
        build_quiver(f)


def test_vertex_preimages_lie_in_one_period(wb):
    for q in [wb.mn_quiver, wb.cog_quiver, *wb.bump_quivers]:
        pre = [x for v in q.vertices for x in v.preimages]
        assert min(pre) >= 0 and max(pre) < q.ell
        assert sorted(pre) == sorted(q.breakpoints)


def test_edges_partition_the_period(wb):
    for q in [wb.mn_quiver, wb.cog_quiver, *wb.bump_quivers]:
        ivs = sorted(iv for e in q.edges for iv in e.intervals)
        total = sum(b - a for a, b in ivs)
        assert abs(total - q.ell) <= 1e-9 * q.ell
        assert len(ivs) == len(q.word_per_period)


def test_weight_multiplicity_identity(wb):
    for q in [wb.mn_quiver, wb.cog_quiver, *wb.bump_quivers]:
        assert abs(q.weighted_sum - 2 * math.pi * q.xi) <= 1e-5
        assert all(e.multiplicity_mu % q.m == 0 for e in q.edges)
        assert q.sig_index == min(e.multiplicity_mu for e in q.edges)


def _local_index(f, L, p, eps):
    """Count parameters in [0, L) whose signature point lies within eps of sigma(p), by grid search and polishing."""
    target = np.array(f.eval(p))
    n = int(8192 * L / f.period)
    s = L * np.arange(n) / n
    k, kd = f.eval(s)
    d = np.hypot(k - target[0], kd - target[1])
    h = L / n
    count = 0
    for i in np.nonzero((d <= np.roll(d, 1)) & (d <= np.roll(d, -1)) & (d < 50 * eps + 1e-2))[0]:
        r = minimize_scalar(lambda x: float(np.hypot(*(np.array(f.eval(x)) - target))), bounds=(s[i] - h, s[i] + h), method="bounded", options={"xatol": 1e-13})
        count += min(r.fun, d[i]) <= eps
    return count


@pytest.mark.parametrize("which", ["bump", "mn", "cog"])
def test_local_index_equals_multiplicity(wb, which):
    q = {"bump": wb.bump_quivers[2], "mn": wb.mn_quiver, "cog": wb.cog_quiver}[which]
    f = q.source
    L = q.m * q.ell
    for e in q.edges:
        a, b = e.representative_interval
        p = a + 0.37 * (b - a)  # generic interior point
        assert _local_index(f, L, p, 1e-4 * q.diag) == e.multiplicity_mu, e.id


def test_dot_export(wb):
    dot = export_dot(wb.bump_quivers[0])
    lines = dot.splitlines()
    assert lines[0] == "digraph signature_quiver {" and lines[-1] == "}"
    arcs = [x for x in lines if "->" in x]
    assert len(arcs) == 4 and all(x.strip().startswith("q0 -> q0") for x in arcs)
    assert 'label="d:6:3.141593"' in dot
    assert export_dot(wb.bump_quivers[0]) == dot


def test_dot_export_mn(wb):
    dot = export_dot(wb.mn_quiver)
    assert sum("->" in x for x in dot.splitlines()) == 8
    assert sum("[label=\"q" in x for x in dot.splitlines()) == 4


def test_json_round_trip(wb):
    q = wb.mn_quiver
    r = SignatureQuiver.from_json(q.to_json())
    assert r.edges == q.edges and r.vertices == q.vertices
    assert r.word_per_period == q.word_per_period and r.m == q.m and r.xi == q.xi
    s = np.linspace(0, q.ell, 101)
    assert np.array_equal(r.source.kappa(s), q.source.kappa(s))


def test_match_labels_reproduces_reference(wb):
    q = wb.bump_quivers[1]
    assert match_labels(q, BUMP_REFERENCE) == {e.id: e.id for e in q.edges}


def test_relabel_must_be_one_to_one(wb):
    with pytest.raises(ValueError):
        relabel(wb.bump_quivers[0], {"a": "b"})
