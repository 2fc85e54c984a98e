"""Tower construction, graph covers, winding words, and thread dynamics."""

import math

import pytest

from hyperper import (
    ATMTower,
    CapExceeded,
    CoverMap,
    DiGraph,
    InsufficientDepth,
    SeedStream,
    Thread,
    advance,
    atm_cover,
    atm_graph,
    build_atm,
    coordinate_after,
    cover_index,
    cylinder_threads,
    edge_label,
    level_trajectory,
    minimal_extension,
    minimality_witness,
    nth_preimage,
    orbit_coverage,
    preimage_count,
    random_thread,
    rewind,
    thread_back,
    thread_from_top,
    thread_step,
    tower_dot,
    validate_cover,
    validate_thread,
    winding_word,
)


# ---------------------------------------------------------------------------
# graphs and cover validation


def test_digraph_rejects_bad_input():
    with pytest.raises(ValueError):
        DiGraph(0, frozenset())
    with pytest.raises(ValueError):
        DiGraph(2, frozenset({(0, 2)}))
    with pytest.raises(ValueError):
        # vertex 1 has no out-edge
        DiGraph(2, frozenset({(0, 0), (0, 1), (1, 0), (1, 1)} - {(1, 0), (1, 1)}))


def test_covermap_rejects_bad_vertex_map():
    loop = DiGraph(1, frozenset({(0, 0)}))
    two = DiGraph(2, frozenset({(0, 1), (1, 0)}))
    with pytest.raises(ValueError):
        CoverMap(two, loop, (0,))  # too short
    with pytest.raises(ValueError):
        CoverMap(two, loop, (0, 1))  # 1 outside the target


def test_validate_cover_all_ok_case():
    loop = DiGraph(1, frozenset({(0, 0)}))
    two = DiGraph(2, frozenset({(0, 1), (1, 0)}))
    report = validate_cover(CoverMap(two, loop, (0, 0)))
    assert report.all_ok
    assert report.to_json() == {
        "homomorphism": True,
        "plus_directional": True,
        "bidirectional": True,
        "edge_surjective": True,
    }


def test_validate_cover_detects_non_homomorphism():
    two = DiGraph(2, frozenset({(0, 1), (1, 0)}))
    target = DiGraph(2, frozenset({(0, 0), (0, 1), (1, 1)}))
    # (1, 0) maps to (1, 0), which is not an edge of the target
    report = validate_cover(CoverMap(two, target, (0, 1)))
    assert not report.homomorphism
    assert not report.all_ok


def test_validate_cover_detects_directional_failures():
    # identity map on a graph where vertex 0 has two out-neighbours with
    # distinct images: a homomorphism, but not a directional cover.
    fan = DiGraph(3, frozenset({(0, 1), (0, 2), (1, 0), (2, 0)}))
    report = validate_cover(CoverMap(fan, fan, (0, 1, 2)))
    assert report.homomorphism
    assert not report.plus_directional
    assert not report.bidirectional
    assert report.edge_surjective


def test_validate_cover_detects_missing_edges():
    loop = DiGraph(1, frozenset({(0, 0)}))
    loop2 = DiGraph(2, frozenset({(0, 0), (0, 1), (1, 0)}))
    report = validate_cover(CoverMap(loop, loop2, (0,)))
    assert report.homomorphism and report.plus_directional and report.bidirectional
    assert not report.edge_surjective
    assert not report.all_ok


# ---------------------------------------------------------------------------
# tower construction


def test_tower_sizes_and_constants_frozen():
    tower = build_atm(7)
    assert tower.sizes == (1, 3, 11, 79, 1993, 239641, 172545841, 869631068881)
    assert tower.constants == (1, 2, 2, 4, 4, 6, 6)
    assert tower.depth == 7


def test_tower_recurrence_and_coprimality():
    tower = build_atm(9)
    for i, c in enumerate(tower.constants):
        fact = math.factorial(i + 1)
        assert tower.sizes[i + 1] == (tower.sizes[i] + c) * fact + 1
        assert math.gcd(tower.sizes[i] + c, fact) == 1
        # minimality: no smaller positive constant is coprime
        for smaller in range(1, c):
            assert math.gcd(tower.sizes[i] + smaller, fact) != 1


def test_tower_override_accepts_valid_and_rejects_invalid():
    tower = build_atm(3, constants=(1, 2, 2))
    assert tower.sizes == (1, 3, 11, 79)
    assert tower.custom_constants
    assert tower.to_json()["constants_overridden"] is True
    with pytest.raises(ValueError):
        build_atm(2, constants=(1, 1))  # 3 + 1 shares a factor with 2!
    with pytest.raises(ValueError):
        build_atm(2, constants=(1,))  # wrong length
    with pytest.raises(ValueError):
        build_atm(-1)


def test_tower_json():
    tower = build_atm(2)
    assert tower.to_json() == {"sizes": [1, 3, 11], "constants": [1, 2]}


# ---------------------------------------------------------------------------
# cover index and winding words


def test_cover_index_frozen_values():
    tower = build_atm(6)
    assert cover_index(tower, 1, 3) == 1
    assert cover_index(tower, 1, 4) == 2
    assert cover_index(tower, 1, 8) == 1
    for i in range(tower.depth - 1):
        assert cover_index(tower, i, 0) == 0
        assert cover_index(tower, i, 1) == 0


def test_cover_index_range_errors():
    tower = build_atm(3)
    with pytest.raises(ValueError):
        cover_index(tower, 3, 0)  # level must stay below depth
    with pytest.raises(ValueError):
        cover_index(tower, 1, 11)  # vertex outside level 2
    with pytest.raises(ValueError):
        cover_index(tower, 1, -1)


def test_cover_index_moves_along_edges():
    # walking one level up moves the image along an edge one level down
    tower = build_atm(4)
    for i in range(1, 3):
        graph = atm_graph(tower, i)
        n_up = tower.sizes[i + 1]
        for k in range(n_up):
            pair = (cover_index(tower, i, k), cover_index(tower, i, (k + 1) % n_up))
            assert pair in graph.edges


def test_atm_graph_shape():
    tower = build_atm(4)
    g = atm_graph(tower, 2)
    assert g.vertex_count == 11
    expected = {(0, 0)} | {(v, (v + 1) % 11) for v in range(11)}
    assert set(g.edges) == expected
    with pytest.raises(CapExceeded):
        atm_graph(tower, 4, cap=100)


def test_winding_words_frozen():
    tower = build_atm(6)
    assert winding_word(tower, 0) == ["e0", "e0", "e0"]
    assert winding_word(tower, 1) == [
        "e0", "e0", "f1", "f2", "f3",
        "e0", "e0", "f1", "f2", "f3",
        "e0",
    ]
    word2 = winding_word(tower, 2)
    block = ["e0", "e0"] + [f"f{j}" for j in range(1, 12)]
    assert word2 == block * 6 + ["e0"]
    assert len(word2) == tower.sizes[3]


def test_winding_word_matches_cover_index_walk():
    # the word letter at position k must label the edge the cover image
    # traverses between positions k and k+1
    tower = build_atm(5)
    for i in range(1, 4):
        word = winding_word(tower, i)
        n_up = tower.sizes[i + 1]
        derived = [
            edge_label(tower, i, (cover_index(tower, i, k),
                                  cover_index(tower, i, (k + 1) % n_up)))
            for k in range(n_up)
        ]
        assert word == derived


def test_winding_word_cap():
    tower = build_atm(6)
    with pytest.raises(CapExceeded):
        winding_word(tower, 5, cap=1000)


def test_edge_label_values_and_error():
    tower = build_atm(4)
    assert edge_label(tower, 2, (0, 0)) == "e0"
    assert edge_label(tower, 2, (0, 1)) == "f1"
    assert edge_label(tower, 2, (10, 0)) == "f11"
    with pytest.raises(ValueError):
        edge_label(tower, 2, (3, 7))


def test_atm_cover_validates_at_low_levels():
    tower = build_atm(4)
    for level in range(4):
        report = validate_cover(atm_cover(tower, level))
        assert report.all_ok, f"cover onto level {level} failed: {report.to_json()}"


def test_minimality_witness():
    tower = build_atm(6)
    for m in range(3):
        assert minimality_witness(tower, m)
    with pytest.raises(InsufficientDepth):
        minimality_witness(build_atm(2), 2)


def test_minimality_witness_fails_without_coprimality():
    # constants may be forced directly; 3 + 3 shares a factor with 2!, so the
    # winding at level 1 misses vertices and the witness must say so
    bad = ATMTower((1, 3, 13), (1, 3))
    assert minimality_witness(bad, 1) is False


# ---------------------------------------------------------------------------
# threads


def test_thread_validation():
    tower = build_atm(4)
    validate_thread(tower, Thread((0, 1, 3)))
    with pytest.raises(ValueError):
        Thread(())
    with pytest.raises(ValueError):
        validate_thread(tower, Thread((0, 2, 8)))  # 2 != cover_index(1, 8)
    with pytest.raises(ValueError):
        validate_thread(tower, Thread((0, 0, 0, 0, 0, 0)))  # deeper than tower
    with pytest.raises(ValueError):
        validate_thread(tower, Thread((0, 5)))  # 5 outside level 1


def test_thread_from_top_folds_down():
    tower = build_atm(5)
    th = thread_from_top(tower, 4, 100)
    assert th.coords[4] == 100
    for i in range(4):
        assert th.coords[i] == cover_index(tower, i, th.coords[i + 1])
    validate_thread(tower, th)
    assert thread_from_top(tower, 0, 0).coords == (0,)
    with pytest.raises(ValueError):
        thread_from_top(tower, 6, 0)


def test_minimal_extension_frozen_and_consistent():
    tower = build_atm(6)
    assert minimal_extension(tower, 1, 1, 4).coords == (0, 1, 3, 5, 9)
    assert minimal_extension(tower, 1, 0, 4).coords == (0, 0, 0, 0, 0)
    th = minimal_extension(tower, 2, 7, 5)
    validate_thread(tower, th)
    assert th.coords[2] == 7
    # above a nonzero vertex each level adds its winding constant
    for i in range(2, 5):
        assert th.coords[i + 1] == th.coords[i] + tower.constants[i]
    with pytest.raises(ValueError):
        minimal_extension(tower, 2, 7, 1)


def test_is_fixed():
    tower = build_atm(4)
    assert Thread((0, 0, 0)).is_fixed
    assert not Thread((0, 1)).is_fixed
    assert thread_from_top(tower, 3, 0).is_fixed


def test_thread_step_and_back_frozen():
    tower = build_atm(6)
    assert thread_step(tower, Thread((0, 1, 3))).coords == (0, 2)
    assert thread_back(tower, Thread((0, 2, 4))).coords == (0, 1)
    assert thread_back(tower, Thread((0, 2, 9))).coords == (0, 1)
    with pytest.raises(InsufficientDepth):
        thread_step(tower, Thread((0,)))
    with pytest.raises(InsufficientDepth):
        thread_back(tower, Thread((0,)))


def test_step_back_round_trip_property():
    # stepping then backing (in either order) reproduces the thread with the
    # two deepest levels consumed
    tower = build_atm(6)
    stream = SeedStream(11)
    for _ in range(60):
        th = random_thread(tower, 6, stream)
        a = thread_back(tower, thread_step(tower, th))
        b = thread_step(tower, thread_back(tower, th))
        assert a.coords == th.coords[:5]
        assert b.coords == th.coords[:5]


def test_fixed_thread_is_a_fixed_point():
    tower = build_atm(5)
    fixed = thread_from_top(tower, 5, 0)
    assert thread_step(tower, fixed).coords == fixed.coords[:5]
    assert thread_back(tower, fixed).coords == fixed.coords[:5]


def test_advance_matches_honest_stepping():
    tower = build_atm(10)
    stream = SeedStream(23)
    for _ in range(25):
        th = random_thread(tower, 10, stream)
        honest = th
        for t in range(1, 9):
            honest = thread_step(tower, honest)
            fast = advance(tower, th, t)
            common = min(fast.depth, honest.depth)
            assert fast.coords[: common + 1] == honest.coords[: common + 1]


def test_rewind_matches_honest_backing():
    tower = build_atm(10)
    stream = SeedStream(29)
    for _ in range(25):
        th = random_thread(tower, 10, stream)
        honest = th
        for t in range(1, 9):
            honest = thread_back(tower, honest)
            fast = rewind(tower, th, t)
            common = min(fast.depth, honest.depth)
            assert fast.coords[: common + 1] == honest.coords[: common + 1]


def test_advance_rewind_round_trip_far():
    tower = build_atm(40)
    th = minimal_extension(tower, 1, 1, 40)
    jump = 10 ** 6
    there = advance(tower, th, jump)
    back = rewind(tower, there, jump)
    common = min(back.depth, th.depth)
    assert back.coords[: common + 1] == th.coords[: common + 1]
    assert advance(tower, th, 0).coords == th.coords


def test_coordinate_after_signed():
    tower = build_atm(10)
    th = random_thread(tower, 10, SeedStream(31))
    honest = th
    for t in range(1, 8):
        honest = thread_step(tower, honest)
        assert coordinate_after(tower, th, t, 1) == honest.coords[1]
    honest = th
    for t in range(1, 8):
        honest = thread_back(tower, honest)
        assert coordinate_after(tower, th, -t, 1) == honest.coords[1]
    assert coordinate_after(tower, th, 0, 3) == th.coords[3]


def test_level_trajectory_frozen_and_honest():
    tower = build_atm(13)
    start = minimal_extension(tower, 1, 1, 13)
    traj = level_trajectory(tower, start, 1, 12)
    assert traj == [1, 2, 0, 0, 0, 1, 2, 0, 0, 0, 0, 0, 0]
    cur, honest = start, [start.coords[1]]
    for _ in range(12):
        cur = thread_step(tower, cur)
        honest.append(cur.coords[1])
    assert traj == honest


def test_orbit_coverage_example_and_preconditions():
    tower = build_atm(13)
    start = minimal_extension(tower, 1, 1, 13)
    assert orbit_coverage(tower, start, 1, 1, 12) == {0, 1, 2}
    # honest stepping contract: budget must fit the thread depth
    with pytest.raises(InsufficientDepth):
        orbit_coverage(tower, start, 1, 1, 13)
    with pytest.raises(ValueError):
        orbit_coverage(tower, start, 1, 0, 4)


def test_orbit_coverage_stride():
    tower = build_atm(30)
    start = minimal_extension(tower, 1, 1, 30)
    strided = orbit_coverage(tower, start, 1, 2, 14)
    dense = orbit_coverage(tower, start, 1, 1, 28)
    assert strided <= dense
    assert dense == {0, 1, 2}


# ---------------------------------------------------------------------------
# preimages and seeded threads


def test_preimage_count_matches_brute_force():
    tower = build_atm(4)
    for i in (1, 2):
        for v in range(tower.sizes[i]):
            brute = [k for k in range(tower.sizes[i + 1])
                     if cover_index(tower, i, k) == v]
            assert preimage_count(tower, i, v) == len(brute)
            listed = [nth_preimage(tower, i, v, idx) for idx in range(len(brute))]
            assert listed == brute


def test_preimage_count_formula():
    tower = build_atm(6)
    for i in range(1, 5):
        fact = math.factorial(i + 1)
        assert preimage_count(tower, i, 0) == fact * (tower.constants[i] + 1) + 1
        assert preimage_count(tower, i, 1) == fact
    with pytest.raises(ValueError):
        nth_preimage(tower, 1, 1, 2)
    with pytest.raises(ValueError):
        preimage_count(tower, 1, 3)


def test_cylinder_threads_frozen_and_valid():
    tower = build_atm(6)
    threads = cylinder_threads(tower, 1, 2, 4, 4, seed=7)
    assert [t.coords for t in threads] == [
        (0, 2, 4, 6, 10),
        (0, 2, 4, 45, 132),
        (0, 2, 4, 19, 1683),
        (0, 2, 4, 6, 1255),
    ]
    for t in threads:
        validate_thread(tower, t)
        assert t.coords[1] == 2
    assert threads[0].coords == minimal_extension(tower, 1, 2, 4).coords
    again = cylinder_threads(tower, 1, 2, 4, 4, seed=7)
    assert [t.coords for t in again] == [t.coords for t in threads]


def test_random_thread_deterministic_and_valid():
    tower = build_atm(8)
    a = random_thread(tower, 8, SeedStream(5))
    b = random_thread(tower, 8, SeedStream(5))
    assert a.coords == b.coords
    validate_thread(tower, a)


# ---------------------------------------------------------------------------
# export


def test_tower_dot_smoke():
    tower = build_atm(3)
    dot = tower_dot(tower, 2)
    assert dot.startswith("digraph")
    assert "v1_0" in dot and "v2_10" in dot
    with pytest.raises(CapExceeded):
        tower_dot(build_atm(5), 5, cap=100)
