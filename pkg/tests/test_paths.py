import json
from fractions import Fraction

import pytest

from nilpath.errors import (
    DegenerateParameterError,
    MissingCellsError,
    PowerMismatchError,
    WindowViolationError,
)
from nilpath.jordan import nilpotent_profile, similarity_witness
from nilpath.matrix import (
    Matrix,
    direct_sum,
    inverse,
    jordan_cell,
    matrix_mul,
    matrix_pow,
)
from nilpath.paths import (
    adjacency_segment,
    basic_family,
    basic_family_similarity,
    centralizer_segment,
    connect_roots,
    evaluate,
    lift_family,
    path_from_json_obj,
    path_to_json_obj,
    verify,
)
from nilpath.profiles import AdjacencyMove, Profile, apply_move
from nilpath.scalar import Scalar


def conjugate(m, p):
    return matrix_mul(p, matrix_mul(m, inverse(p)))


# -- basic family -------------------------------------------------------------


def test_basic_family_at_zero():
    for k, l in ((2, 4), (0, 2), (1, 3)):
        assert basic_family(k, l, 0) == direct_sum([jordan_cell(k), jordan_cell(l)])


def test_basic_family_endpoint_profile():
    u1 = basic_family(2, 4, 1)
    assert nilpotent_profile(u1) == Profile({3: 2})
    u1 = basic_family(2, 3, 1)
    assert nilpotent_profile(u1) == Profile({3: 1, 2: 1})


def test_basic_family_small_square_is_zero():
    for num in range(0, 5):
        t = Fraction(num, 4)
        u = basic_family(1, 2, t)
        assert matrix_pow(u, 2).is_zero()


def test_basic_family_similarity_identity():
    for t in (Fraction(1, 2), Fraction(1, 3), Fraction(999, 1000)):
        r = basic_family_similarity(2, 4, t)
        expected = conjugate(direct_sum([jordan_cell(2), jordan_cell(4)]), r)
        assert expected == basic_family(2, 4, t)


def test_basic_family_similarity_determinant():
    from nilpath.matrix import det

    r = basic_family_similarity(2, 4, Fraction(1, 2))
    d = det(r)
    assert d == Scalar(Fraction(1, 8)) or d == Scalar(Fraction(-1, 8))


def test_basic_family_similarity_degenerate():
    for t in (Fraction(0), Fraction(1)):
        with pytest.raises(DegenerateParameterError):
            basic_family_similarity(2, 4, t)


def test_basic_family_similarity_near_zero_structure():
    # as t -> 0 the basis tends to the standard arrangement: unit-size diagonal
    t = Fraction(1, 1000)
    r = basic_family_similarity(2, 4, t)
    for i in range(6):
        d = r.data[i][i]
        assert d == Scalar(1) or d == Scalar(1 - t)
        for j in range(6):
            if i != j:
                off = r.data[i][j]
                assert off.is_zero() or off == Scalar(t)


# -- lift ---------------------------------------------------------------------


def test_lift_window_violation():
    with pytest.raises(WindowViolationError):
        lift_family(0, 3, 2)  # 3 > 2 = p*(a+1) for a = 0, and a >= 1 needs pa <= 0


def test_lift_endpoints():
    lift = lift_family(2, 4, 2)
    assert lift.gamma(0) == direct_sum([jordan_cell(2), jordan_cell(4)])
    assert nilpotent_profile(lift.gamma(1)) == Profile({3: 2})


def test_lift_constant_power():
    lift = lift_family(2, 4, 2)
    a0 = lift.base_power
    for num in range(0, 9):
        t = Fraction(num, 8)
        assert matrix_pow(lift.gamma(t), 2) == a0


def test_lift_partition_point_consistency():
    # inside-interval formula agrees with the stored conjugators at the seams
    lift = lift_family(2, 3, 2)
    for t, q in zip(lift.partition, lift.conjugators):
        assert lift.q_at(t) == q


def test_lift_ladder_reproduces_valid_conjugators():
    # the step-halving fallback must satisfy the same exact power identity
    lift = lift_family(2, 4, 2)
    a0 = lift.base_power
    for i, t in ((0, Fraction(1, 8)), (1, Fraction(3, 8)), (3, Fraction(15, 16))):
        q = lift._ladder(i, t)
        u_p = matrix_pow(lift.family_matrix(t), 2)
        assert u_p == matrix_mul(q, matrix_mul(a0, inverse(q)))


def test_lift_interval_formula_continuous_at_seams():
    # evaluate each interval's rule directly at both of its endpoints
    for k, l, p in ((2, 3, 2), (2, 4, 2), (3, 4, 3)):
        lift = lift_family(k, l, p)
        for i, iv in enumerate(lift.intervals):
            for t, stored in (
                (iv.left, lift.conjugators[i]),
                (iv.right, lift.conjugators[i + 1]),
            ):
                u_p = matrix_pow(lift.family_matrix(t), p)
                b = matrix_mul(iv.anchor_inv, matrix_mul(u_p, iv.anchor))
                g = lift.section.conjugator_at(b)
                formula = matrix_mul(matrix_mul(iv.anchor, g), iv.correction)
                assert formula == stored, (k, l, p, i, t)


def test_lift_degenerate_base():
    lift = lift_family(0, 2, 2)  # base power is the zero matrix
    assert lift.base_power.is_zero()
    for num in range(0, 5):
        t = Fraction(num, 4)
        assert matrix_pow(lift.gamma(t), 2).is_zero()
    assert nilpotent_profile(lift.gamma(1)) == Profile({1: 2})


def test_lift_higher_power():
    lift = lift_family(3, 4, 3)  # window a = 1: 3 <= 3 < 4 <= 6
    a0 = lift.base_power
    for num in range(0, 7):
        t = Fraction(num, 6)
        assert matrix_pow(lift.gamma(t), 3) == a0
    assert nilpotent_profile(lift.gamma(1)) == Profile({4: 1, 3: 1})


def test_lift_battery_all_small_windows():
    # every admissible window with total dimension at most 7
    windows = set()
    for p in (2, 3, 4):
        for a in range(0, 3):
            for k in range(p * a, p * (a + 1)):
                for l in range(max(k + 1, 1), p * (a + 1) + 1):
                    if 2 <= k + l <= 7:
                        windows.add((k, l, p))
    assert len(windows) >= 15
    for k, l, p in sorted(windows):
        lift = lift_family(k, l, p)
        a0 = lift.base_power
        for num in range(0, 7):
            t = Fraction(num, 6)
            assert matrix_pow(lift.gamma(t), p) == a0, (k, l, p, t)
        endpoint = nilpotent_profile(lift.gamma(1))
        assert endpoint == Profile.single(k + 1) + Profile.single(l - 1), (k, l, p)


# -- centralizer segments -------------------------------------------------------


def test_centralizer_identity_path():
    x = jordan_cell(3)
    a = matrix_pow(x, 2)
    seg = centralizer_segment(a, 2, x, x)
    assert seg.conjugator == Matrix.identity(3)
    for num in range(0, 5):
        assert seg.evaluate(Fraction(num, 4)) == x


def test_centralizer_e_fixture():
    x = jordan_cell(3)
    e = matrix_pow(x, 2)
    y = Matrix.from_rows([[0, 2, 0], [0, 0, Fraction(1, 2)], [0, 0, 0]])
    seg = centralizer_segment(e, 2, x, y)
    assert seg.start == x and seg.end == y
    for num in range(0, 11):
        m = seg.evaluate(Fraction(num, 10))
        assert matrix_pow(m, 2) == e
        # the root family of e: strictly upper triangular, (0,1)*(1,2) = 1
        assert m.data[0][1] * m.data[1][2] == Scalar(1)
        for i in range(3):
            for j in range(3):
                if (i, j) not in ((0, 1), (0, 2), (1, 2)):
                    assert m.data[i][j].is_zero()


def test_centralizer_detour_engages():
    # witness diag(1,-1,1) makes the blend determinant vanish at z = 1/2
    x = jordan_cell(3)
    e = matrix_pow(x, 2)
    y = x.scale(Scalar(-1))
    assert matrix_pow(y, 2) == e
    seg = centralizer_segment(e, 2, x, y)
    assert len(seg.waypoints) == 4  # three-piece detour
    assert all(c["ok"] for c in seg.certifications)
    assert seg.start == x and seg.end == y
    for num in range(0, 13):
        assert matrix_pow(seg.evaluate(Fraction(num, 12)), 2) == e


def test_centralizer_commutation_along_path():
    x = direct_sum([jordan_cell(3), jordan_cell(1)])
    a = matrix_pow(x, 2)
    d = Matrix.from_rows(
        [[1, 0, 0, 0], [0, Fraction(1, 2), 0, 0], [0, 0, 1, 0], [0, 0, 0, 5]]
    )
    y = conjugate(x, d)
    assert matrix_pow(y, 2) == a
    seg = centralizer_segment(a, 2, x, y)
    for num in range(0, 7):
        s = Fraction(num, 6)
        z = seg._omega(s)
        qz = seg._blend(z)
        assert matrix_mul(qz, a) == matrix_mul(a, qz)


def test_centralizer_power_mismatch():
    x = jordan_cell(3)
    with pytest.raises(PowerMismatchError):
        centralizer_segment(matrix_pow(x, 2), 2, x, jordan_cell(3).scale(Scalar(2)))


# -- adjacency segments -----------------------------------------------------------


def test_adjacency_forward_example():
    x = direct_sum([jordan_cell(4), jordan_cell(2)])
    a = matrix_pow(x, 2)
    mv = AdjacencyMove(1, 2, 4, "forward", 2)
    seg = adjacency_segment(a, 2, x, mv)
    assert seg.start == x
    assert nilpotent_profile(seg.end) == Profile({3: 2})
    for num in range(0, 9):
        assert matrix_pow(seg.evaluate(Fraction(num, 8)), 2) == a


def test_adjacency_zero_matrix_backward():
    z = Matrix.zeros(2, 2)
    mv = AdjacencyMove(0, 0, 2, "backward", 2)
    seg = adjacency_segment(z, 2, z, mv)
    assert seg.start == z
    assert nilpotent_profile(seg.end) == Profile({2: 1})
    for num in range(0, 5):
        assert matrix_pow(seg.evaluate(Fraction(num, 4)), 2).is_zero()


def test_adjacency_missing_cells():
    x = direct_sum([jordan_cell(3), jordan_cell(3)])
    a = matrix_pow(x, 2)
    mv = AdjacencyMove(1, 2, 4, "forward", 2)
    with pytest.raises(MissingCellsError):
        adjacency_segment(a, 2, x, mv)


def test_adjacency_with_bystander_cells():
    x = direct_sum([jordan_cell(4), jordan_cell(2), jordan_cell(1)])
    a = matrix_pow(x, 2)
    mv = AdjacencyMove(1, 2, 4, "forward", 2)
    seg = adjacency_segment(a, 2, x, mv)
    assert seg.start == x
    assert nilpotent_profile(seg.end) == apply_move(nilpotent_profile(x), mv)
    for num in range(0, 5):
        assert matrix_pow(seg.evaluate(Fraction(num, 4)), 2) == a


# -- connect + verify ---------------------------------------------------------------


def test_connect_identical_roots():
    x = direct_sum([jordan_cell(2), jordan_cell(1)])
    a = matrix_pow(x, 2)
    path = connect_roots(a, 2, x, x)
    assert len(path.segments) == 1
    assert path.segments[0].kind == "centralizer"
    for num in range(0, 5):
        assert evaluate(path, Fraction(num, 4)) == x


def test_connect_main_example():
    x = direct_sum([jordan_cell(4), jordan_cell(2)])
    a = matrix_pow(x, 2)
    model = direct_sum([jordan_cell(3), jordan_cell(3)])
    s = similarity_witness(matrix_pow(model, 2), a)
    y = conjugate(model, s)
    path = connect_roots(a, 2, x, y)
    assert [seg.kind for seg in path.segments] == ["adjacency", "centralizer"]
    assert path.start == x and path.end == y
    cert = verify(path, 25)
    assert cert.ok
    assert all(res for _, res, _ in cert.samples)
    assert {p for _, _, p in cert.samples} <= {Profile({4: 1, 2: 1}), Profile({3: 2})}


def test_connect_zero_matrix_crossing():
    z = Matrix.zeros(2, 2)
    j2 = jordan_cell(2)
    path = connect_roots(z, 2, z, j2)
    assert evaluate(path, 0) == z
    assert evaluate(path, 1) == j2
    cert = verify(path, 40)
    assert cert.ok
    profs = {p for _, _, p in cert.samples}
    assert profs == {Profile({1: 2}), Profile({2: 1})}


def test_connect_power_mismatch():
    x = jordan_cell(3)
    a = matrix_pow(x, 2)
    with pytest.raises(PowerMismatchError):
        connect_roots(a, 2, x, jordan_cell(3).scale(Scalar(2)))


def test_connect_longer_chain():
    # p = 2, target profile {1:4}: zero 4x4 matrix; roots range over sizes
    z = Matrix.zeros(4, 4)
    x = z
    y = direct_sum([jordan_cell(2), jordan_cell(2)])
    path = connect_roots(z, 2, x, y)
    cert = verify(path, 30)
    assert cert.ok


def test_connect_three_move_chain():
    z = Matrix.zeros(6, 6)
    x = z
    y = direct_sum([jordan_cell(2), jordan_cell(2), jordan_cell(2)])
    path = connect_roots(z, 2, x, y)
    assert sum(1 for s in path.segments if s.kind == "adjacency") == 3
    cert = verify(path, 36)
    assert cert.ok
    profs = {p for _, _, p in cert.samples}
    assert Profile({1: 6}) in profs and Profile({2: 3}) in profs


def test_connect_main_example_reversed():
    # same endpoints swapped: exercises a backward move on a 6x6 root
    x = direct_sum([jordan_cell(4), jordan_cell(2)])
    a = matrix_pow(x, 2)
    model = direct_sum([jordan_cell(3), jordan_cell(3)])
    s = similarity_witness(matrix_pow(model, 2), a)
    y = conjugate(model, s)
    path = connect_roots(a, 2, y, x)
    assert path.start == y and path.end == x
    adj = [seg for seg in path.segments if seg.kind == "adjacency"]
    assert len(adj) == 1 and adj[0].reversed_time
    cert = verify(path, 25)
    assert cert.ok


def test_connect_cube_roots():
    x = direct_sum([jordan_cell(4), jordan_cell(2)])
    a = matrix_pow(x, 3)
    assert nilpotent_profile(a) == Profile({2: 1, 1: 4})
    model = direct_sum([jordan_cell(4), jordan_cell(1), jordan_cell(1)])
    s = similarity_witness(matrix_pow(model, 3), a)
    y = conjugate(model, s)
    path = connect_roots(a, 3, x, y)
    assert path.start == x and path.end == y
    cert = verify(path, 24)
    assert cert.ok


def test_path_segments_stitch_exactly():
    x = direct_sum([jordan_cell(4), jordan_cell(2)])
    a = matrix_pow(x, 2)
    model = direct_sum([jordan_cell(3), jordan_cell(3)])
    s = similarity_witness(matrix_pow(model, 2), a)
    y = conjugate(model, s)
    path = connect_roots(a, 2, x, y)
    for s0, s1 in zip(path.segments, path.segments[1:]):
        assert s0.end == s1.start


def test_path_json_roundtrip():
    z = Matrix.zeros(2, 2)
    path = connect_roots(z, 2, z, jordan_cell(2))
    obj = path_to_json_obj(path)
    text = json.dumps(obj)
    again = path_from_json_obj(json.loads(text))
    assert again.start == path.start and again.end == path.end
    for num in range(0, 9):
        t = Fraction(num, 8)
        assert again.evaluate(t) == path.evaluate(t)
    assert json.dumps(path_to_json_obj(again)) == text


def test_path_json_roundtrip_with_complex_detour():
    x = jordan_cell(3)
    e = matrix_pow(x, 2)
    y = x.scale(Scalar(-1))
    path = connect_roots(e, 2, x, y)
    detours = [s for s in path.segments if s.kind == "centralizer"]
    assert any(len(s.waypoints) == 4 for s in detours)  # complex corners present
    text = json.dumps(path_to_json_obj(path))
    again = path_from_json_obj(json.loads(text))
    for num in range(0, 13):
        t = Fraction(num, 12)
        assert again.evaluate(t) == path.evaluate(t)
    assert json.dumps(path_to_json_obj(again)) == text


def test_certificate_json_schema():
    z = Matrix.zeros(2, 2)
    path = connect_roots(z, 2, z, jordan_cell(2))
    cert = verify(path, 4).to_json_obj()
    assert set(cert) == {"mode", "samples", "segmentCertifications", "ok"}
    for sample in cert["samples"]:
        assert set(sample) == {"t", "residualZero", "profile"}
        assert isinstance(sample["t"], str) and "/" in sample["t"]
    pathobj = path_to_json_obj(path)
    assert set(pathobj) == {"A", "p", "endpoints", "segments"}
    assert set(pathobj["endpoints"]) == {"X", "Y"}


def test_verify_certified_mode():
    z = Matrix.zeros(2, 2)
    path = connect_roots(z, 2, z, jordan_cell(2), mode="certified")
    cert = verify(path, 10, mode="certified")
    assert cert.ok
    assert cert.mode == "certified"
    kinds = {c["kind"] for c in cert.segment_certifications}
    assert kinds == {"adjacency", "centralizer"}


def test_certified_path_json_keeps_certifications():
    x = direct_sum([jordan_cell(2), jordan_cell(1)])
    a = matrix_pow(x, 2)
    z3 = Matrix.zeros(3, 3)
    assert a == z3  # (J2+J1)^2 = 0
    path = connect_roots(a, 2, x, z3, mode="certified")
    obj = path_to_json_obj(path)
    again = path_from_json_obj(json.loads(json.dumps(obj)))
    cert = verify(again, 8, mode="certified")
    assert cert.ok
    for seg_cert in cert.segment_certifications:
        assert seg_cert["ok"]


def test_certified_mode_on_nontrivial_lift():
    lift = lift_family(2, 3, 2, mode="certified")
    assert lift.certifications is not None
    assert all(c["ok"] for c in lift.certifications)
    a0 = lift.base_power
    for num in range(0, 7):
        assert matrix_pow(lift.gamma(Fraction(num, 6)), 2) == a0


def test_evaluate_rejects_out_of_range():
    z = Matrix.zeros(2, 2)
    path = connect_roots(z, 2, z, jordan_cell(2))
    with pytest.raises(ValueError):
        evaluate(path, Fraction(3, 2))


def test_connect_mixed_direction_chain():
    # chain {4:1,1:2} -> {4:1,2:1} -> {3:2} mixes a backward and a forward move
    x = direct_sum([jordan_cell(4), jordan_cell(1), jordan_cell(1)])
    a = matrix_pow(x, 2)
    model = direct_sum([jordan_cell(3), jordan_cell(3)])
    s = similarity_witness(matrix_pow(model, 2), a)
    y = conjugate(model, s)
    path = connect_roots(a, 2, x, y)
    directions = [seg.move.direction for seg in path.segments if seg.kind == "adjacency"]
    assert directions == ["backward", "forward"]
    cert = verify(path, 30)
    assert cert.ok
    profs = {p for _, _, p in cert.samples}
    assert profs == {Profile({4: 1, 1: 2}), Profile({4: 1, 2: 1}), Profile({3: 2})}


def test_randomized_end_to_end_battery():
    import random

    from nilpath.jordan import profile_matrix
    from nilpath.matrix import random_invertible
    from nilpath.profiles import enumerate_preimages, profiles_of_size

    rng = random.Random(2024)
    cases = 0
    while cases < 20:
        p = rng.choice((2, 3))
        n = rng.randint(2, 7)
        root_profile = rng.choice(list(profiles_of_size(n)))
        x_model = profile_matrix(root_profile)
        r = random_invertible(n, rng)
        x = conjugate(x_model, r)
        a = matrix_pow(x, p)
        options = sorted(
            enumerate_preimages(nilpotent_profile(a), p), key=lambda q: q.partition()
        )
        y_profile = rng.choice(options)
        y_model = profile_matrix(y_profile)
        s = similarity_witness(matrix_pow(y_model, p), a)
        y = conjugate(y_model, s)

        path = connect_roots(a, p, x, y)
        assert path.start == x and path.end == y
        cert = verify(path, 12)
        assert cert.ok, (root_profile, y_profile, p)
        cases += 1
