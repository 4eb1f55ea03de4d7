import pytest

from contclust import gons as g


def test_diagonal_validation():
    with pytest.raises(ValueError):
        g.diag(3, 1)
    with pytest.raises(ValueError):
        g.diag(1, 2)  # adjacent vertices are a side
    with pytest.raises(ValueError):
        g.Diagonal(g.NEG_V, g.POS_V)  # the generic diagonal is a side


def test_diag_crossing_examples():
    assert g.diag_crossing(g.diag(1, 3), g.diag(2, 4))
    assert not g.diag_crossing(g.diag(0, 2), g.diag(0, 5))
    assert not g.diag_crossing(g.adic(0), g.prufer(0))
    assert g.diag_crossing(g.adic(1), g.prufer(0))


def test_catalan_counts_small():
    assert [len(g.enumerate_triangulations(n)) for n in (1, 2, 3)] == [2, 5, 14]
    with pytest.raises(g.LimitExceededError):
        g.enumerate_triangulations(10)


def test_flip_examples_and_involution():
    square = g.finite_triangulation(1, [(1, 3)])
    t2, new = g.flip(square, g.diag(1, 3))
    assert new == g.diag(2, 4) and t2.explicit == frozenset([g.diag(2, 4)])
    pentagon = g.finite_triangulation(2, [(1, 3), (1, 4)])
    t2, new = g.flip(pentagon, g.diag(1, 3))
    assert new == g.diag(2, 4)
    back, old = g.flip(t2, new)
    assert old == g.diag(1, 3) and back.explicit == pentagon.explicit


def test_flip_involution_all_fixtures():
    for n in (1, 2, 3, 4):
        for t in g.enumerate_triangulations(n):
            for d in t.explicit:
                t2, new = g.flip(t, d)
                t3, old = g.flip(t2, new)
                assert old == d and t3.explicit == t.explicit


def test_exchange_graph_regular_connected():
    for n in (1, 2, 3):
        graph = g.exchange_graph(n)
        assert graph.is_connected()
        assert all(graph.degree(v) == n for v in graph.nodes)
    assert g.exchange_graph(2).diameter() == 2


def test_exchange_graph_dot():
    dot = g.exchange_graph(1).to_dot()
    assert dot.startswith("graph exchange {") and "--" in dot


def fountain_at_zero():
    return g.infinite_triangulation([], [g.Fan(0, g.LEFT, -2), g.Fan(0, g.RIGHT, 2)])


def left_right_fixture():
    return g.infinite_triangulation(
        [g.diag(0, 2), g.diag(0, 3)], [g.Fan(0, g.LEFT, -2), g.Fan(3, g.RIGHT, 5)]
    )


def zigzag_fixture():
    return g.infinite_triangulation([g.diag(-1, 1)], [g.Zigzag(2)])


def test_fountain_classification():
    assert g.classify_fountains(zigzag_fixture()).kind == g.LOCALLY_FINITE
    rep = g.classify_fountains(fountain_at_zero())
    assert (rep.left, rep.right) == (0, 0)
    rep = g.classify_fountains(left_right_fixture())
    assert (rep.left, rep.right) == (0, 3)


def test_completions_fountain():
    t = fountain_at_zero()
    done = g.prufer_completion(g.adic_completion(t))
    added = done.explicit - t.explicit
    assert added == {g.adic(0), g.prufer(0)}
    done.validate()


def test_completions_locally_finite_add_nothing():
    t = zigzag_fixture()
    done = g.prufer_completion(g.adic_completion(t))
    assert done.explicit == t.explicit


def test_completions_left_right():
    done = g.prufer_completion(g.adic_completion(left_right_fixture()))
    adics = {d for d in done.explicit if d.is_adic}
    prufers = {d for d in done.explicit if d.is_prufer}
    assert adics == {g.adic(0), g.adic(3)}
    assert prufers == {g.prufer(3)}


def test_frozen_prufer():
    done = g.prufer_completion(g.adic_completion(fountain_at_zero()))
    with pytest.raises(g.FrozenDiagonalError):
        g.flip(done, g.prufer(0))
    with pytest.raises(g.FrozenDiagonalError):
        g.flip(done, g.adic(0))


def test_flip_tail_member():
    t = fountain_at_zero()
    t2, new = g.flip(t, g.diag(-3, 0))
    assert new == g.diag(-4, -2)
    t2.validate()
    t3, old = g.flip(t2, new)
    assert old == g.diag(-3, 0)
    assert all(t3.contains(d) for d in t.members_in_window(10))


def test_tail_crossing_closed_forms_match_truncation():
    tails = [
        g.Fan(0, g.LEFT, -2),
        g.Fan(0, g.RIGHT, 2),
        g.Fan(3, g.RIGHT, 5),
        g.Fan(-1, g.LEFT, -4),
        g.Zigzag(2),
        g.Zigzag(4),
    ]
    radius = 20
    for t1 in tails:
        for t2 in tails:
            if t1 == t2:
                continue
            brute = any(
                d1 != d2 and g.diag_crossing(d1, d2)
                for d1 in t1.window_members(radius)
                for d2 in t2.window_members(radius)
            )
            assert g.tails_cross(t1, t2) == brute, (t1, t2)


def test_diag_vs_tail_closed_forms_match_truncation():
    tails = [g.Fan(0, g.LEFT, -2), g.Fan(0, g.RIGHT, 2), g.Zigzag(2)]
    radius = 20
    probes = [g.diag(i, j) for i in range(-6, 6) for j in range(i + 2, 7)]
    probes += [g.adic(j) for j in range(-5, 6)] + [g.prufer(i) for i in range(-5, 6)]
    for tail in tails:
        for d in probes:
            brute = any(g.diag_crossing(d, m) for m in tail.window_members(radius))
            assert tail.crosses(d) == brute, (tail, d)


def test_serialization_round_trip():
    for t in (fountain_at_zero(), left_right_fixture(), zigzag_fixture(),
              g.finite_triangulation(2, [(1, 3), (1, 4)])):
        back = g.GonTriangulation.from_json_dict(t.to_json_dict())
        assert back == t


def test_validate_rejects_crossing():
    bad = g.infinite_triangulation([g.diag(0, 2), g.diag(1, 3)])
    with pytest.raises(ValueError):
        bad.validate()


def test_completion_maximal_on_probe_window():
    """Completed images leave no addable diagonal inside a probe window."""
    fixtures = [fountain_at_zero(), left_right_fixture(), zigzag_fixture()]
    for t in fixtures:
        done = g.prufer_completion(g.adic_completion(
            g.GonTriangulation(g.COMPLETED, None, t.explicit, t.tails)))
        probes = []
        for i in range(-8, 9):
            probes.append(g.adic(i))
            probes.append(g.prufer(i))
            for j in range(i + 2, 9):
                probes.append(g.diag(i, j))
        for d in probes:
            assert done.contains(d) or done.crosses_member(d), (t, d)
