import math
import random
from fractions import Fraction as F

import pytest

from contclust import clusters as cl
from contclust import intervals as iv
from contclust import mutation as mu
from contclust.arcs import e_compatible
from contclust.quiver import STRAIGHT_DESCENDING as SD

from conftest import random_interval


def reps_agree(r1, r2, probes):
    return all(r1.member(p) == r2.member(p) for p in probes)


@pytest.fixture(scope="module")
def schedules():
    return mu.projectives_to_injectives_schedules()


@pytest.fixture()
def probes(rng):
    out = [iv.whole_line()]
    for _ in range(80):
        out.append(random_interval(rng))
        x = F(rng.randrange(-30, 30), rng.choice([1, 2, 4]))
        out += [iv.left_ray(x, True), iv.left_ray(x, False), iv.singleton(x),
                iv.right_ray(x, True), iv.right_ray(x, False)]
    return out


def test_schedule_endpoints(schedules, probes):
    mu1, mu2 = schedules
    assert reps_agree(mu1.source, mu.projectives_cluster(), probes)
    assert reps_agree(mu1.target, mu.middle_cluster(), probes)
    assert reps_agree(mu2.source, mu.middle_cluster(), probes)
    assert reps_agree(mu2.target, mu.injectives_cluster(), probes)
    assert reps_agree(mu1.cluster_at(0.0, False), mu1.source, probes)
    assert reps_agree(mu1.cluster_at(1.0, True), mu1.target, probes)


def test_repaired_clock_values(schedules):
    # open rays run through (0, 1/2), closed rays through (1/2, 1)
    assert mu._open_ray_clock(0.0) == 0.25
    assert mu._closed_ray_clock(0.0) == 0.75
    assert 0.0 < mu._open_ray_clock(100.0) < mu._open_ray_clock(-100.0) < 0.5
    assert 0.5 < mu._closed_ray_clock(100.0) < mu._closed_ray_clock(-100.0) < 1.0


def test_swap_at_half(schedules):
    _, mu2 = schedules
    before = mu2.cluster_at(0.5, False)
    after = mu2.cluster_at(0.5, True)
    assert before.member(iv.singleton(0)) and not before.member(iv.right_ray(0, False))
    assert not after.member(iv.singleton(0)) and after.member(iv.right_ray(0, False))
    step = mu2.step_at(0.5)
    assert step == ("mutation", iv.singleton(0), iv.right_ray(0, False))


def test_mu1_pairing(schedules):
    mu1, _ = schedules
    t = mu._open_ray_clock(2.0)
    step = mu1.step_at(t)
    assert step == ("mutation", iv.left_ray(2, False), iv.singleton(2))
    t = mu._closed_ray_clock(-3.0)
    step = mu1.step_at(t)
    assert step == ("mutation", iv.left_ray(-3, True), iv.right_ray(-3, True))


def test_sampled_prefixes_are_clusters(schedules, probes, rng):
    for sched in schedules:
        for k in range(21):
            t = k / 20
            for inclusive in (False, True):
                c = sched.cluster_at(t, inclusive)
                c.verify_internal(rng, pair_samples=40)
                assert not c.probe_failures(probes[:120])
            step = sched.step_at(t)
            if step[0] == "mutation":
                _, out_m, in_m = step
                assert not e_compatible(SD, out_m, in_m)
                assert not sched.cluster_at(t, False).member(in_m)
                assert sched.cluster_at(t, True).member(in_m)


def test_clock_injectivity_on_samples(rng, schedules):
    for sched in schedules:
        for ch in sched.channels:
            seen = {}
            for _ in range(1000):
                x = F(rng.randrange(-4000, 4000), rng.choice([1, 2, 4, 8]))
                t = ch.clock(float(x))
                if t in seen:
                    assert seen[t] == x
                seen[t] = x


def test_invert(schedules, probes):
    mu1, _ = schedules
    inv = mu1.invert()
    assert reps_agree(inv.source, mu.middle_cluster(), probes)
    assert reps_agree(inv.target, mu.projectives_cluster(), probes)
    assert reps_agree(inv.invert().cluster_at(0.3, True), mu1.cluster_at(0.3, True), probes)
    for t in (0.2, 0.5, 0.8):
        assert reps_agree(inv.cluster_at(t, False), mu1.cluster_at(1 - t, True), probes)
        fwd = mu1.step_at(1 - t)
        bwd = inv.step_at(t)
        if fwd[0] == "mutation":
            assert bwd == ("mutation", fwd[2], fwd[1])


def test_time_warp_fixture():
    w = mu.TimeWarp(0.1)
    i, t = w.local_time(0.625)
    a, b = w.bounds(i)
    assert i == 0
    assert abs(a - 0.5) < 1e-12 and abs(b - 0.75) < 1e-12
    assert abs(t - 0.5) < 1e-12


def test_time_warp_plateaus():
    w = mu.TimeWarp(0.1)
    for s in (0.5, 0.51, 0.5249):
        assert w.local_time(s) == (0, 0.0)
    i, t = w.local_time(0.74)
    assert i == 0 and t == 1.0
    with pytest.raises(ValueError):
        mu.TimeWarp(0.6)


def test_path_endpoints(probes):
    path = mu.proj_to_inj_path(0.1)
    assert reps_agree(path.at(0.0, 0), mu.projectives_cluster(), probes)
    assert reps_agree(path.at(1.0, 1), mu.injectives_cluster(), probes)
    # the slot boundary between the two stages is the middle cluster
    assert reps_agree(path.at(0.75, 0), mu.middle_cluster(), probes)
    # far-left slots are constant at the source
    assert reps_agree(path.at(0.2, 1), mu.projectives_cluster(), probes)


def test_path_steps_and_tiers(probes):
    path = mu.proj_to_inj_path(0.1)
    for k in range(21):
        s = k / 20
        lo = path.at(s, 0)
        hi = path.at(s, 1)
        step = path.step(s)
        diff = [p for p in probes if lo.member(p) != hi.member(p)]
        if step[0] == "trivial":
            assert not diff
        else:
            # tiers differ by at most the swapped pair
            assert set(diff) <= {step[1], step[2]}


def test_compose_and_invert_paths(probes):
    path = mu.proj_to_inj_path(0.1)
    inv = mu.invert_path(path)
    assert reps_agree(inv.at(0.0, 0), mu.injectives_cluster(), probes)
    assert reps_agree(inv.at(1.0, 1), mu.projectives_cluster(), probes)
    double = mu.invert_path(inv)
    for s in (0.0, 0.3, 0.6, 1.0):
        assert reps_agree(double.at(s, 1), path.at(s, 1), probes[:60])
    const = mu.ConstantPath(path.at(1.0, 1))
    comp = mu.compose_paths(path, const, probes[:40])
    assert reps_agree(comp.at(0.25, 0), path.at(0.5, 0), probes[:60])
    assert reps_agree(comp.at(1.0, 1), path.at(1.0, 1), probes[:60])
    loop = mu.compose_paths(path, inv, probes[:40])
    assert reps_agree(loop.at(0.0, 0), loop.at(1.0, 1), probes[:60])


def test_compose_rejects_mismatched_endpoints(probes):
    path = mu.proj_to_inj_path(0.1)
    with pytest.raises(mu.EndpointMismatchError):
        mu.compose_paths(path, mu.ConstantPath(mu.projectives_cluster()), probes[:40])


def test_chain_mismatch_detected():
    mu1, mu2 = mu.projectives_to_injectives_schedules()
    with pytest.raises(mu.ChainMismatchError):
        mu.path_from_long_sequence([mu1, mu1], mu.TimeWarp(0.1))


def test_reachability_demo():
    square = mu.reachability_demo(1)
    assert square == {"n": 1, "nodes": 2, "connected": True, "regular": True, "diameter": 1}
    pent = mu.reachability_demo(2)
    assert pent["nodes"] == 5 and pent["diameter"] == 2 and pent["connected"]
    hexa = mu.reachability_demo(3)
    assert hexa["nodes"] == 14 and hexa["connected"] and hexa["regular"]


def test_path_composition_associative_up_to_reparametrization(probes):
    base = mu.proj_to_inj_path(0.1)
    p1 = base
    p2 = mu.ConstantPath(base.at(1.0, 1))
    p3 = mu.ConstantPath(base.at(1.0, 1))
    left = mu.compose_paths(mu.compose_paths(p1, p2), p3)
    right = mu.compose_paths(p1, mu.compose_paths(p2, p3))
    # ((p1.p2).p3) traverses p1 on [0,1/4]; (p1.(p2.p3)) on [0,1/2]
    for s in (0.0, 0.1, 0.2, 0.25):
        a = left.at(s, 1)
        b = right.at(2 * s if 2 * s <= 0.5 else 1.0, 1)
        assert reps_agree(a, b, probes[:50]), s
    assert reps_agree(left.at(1.0, 1), right.at(1.0, 1), probes[:50])
