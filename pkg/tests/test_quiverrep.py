import pytest

from conekit.rootsys import NotReduced, cartan_matrix
from conekit.quiverrep import (
    NotAdapted,
    RepContext,
    all_orientations,
    ar_quiver,
    check_superfluous_conjecture,
    enumerate_adapted_words,
    equioriented_a,
    euler_form,
    is_adapted,
    ktheory_cones,
    parse_quiver,
    quiver_from_arrows,
)

STAIR3 = (3, 2, 3, 1, 2, 3)


def _staircase_ctx() -> RepContext:
    return RepContext(equioriented_a(3), STAIR3)


def test_parse_quiver_grammar():
    q = parse_quiver("1>2,2>3")
    assert q.n == 3
    assert q.arrows == ((1, 2), (2, 3))
    assert q.sinks() == (3,)
    with pytest.raises(ValueError):
        parse_quiver("1-2")
    with pytest.raises(ValueError):
        parse_quiver("")


def test_quiver_from_arrows_rejects_non_dynkin():
    with pytest.raises(ValueError):
        quiver_from_arrows(2, ((1, 2), (1, 2)))
    with pytest.raises(ValueError):
        quiver_from_arrows(3, ((1, 2), (2, 3), (3, 1)))


def test_equioriented_shape():
    q = equioriented_a(4)
    assert q.arrows == ((1, 2), (2, 3), (3, 4))
    assert q.sinks() == (4,)


def test_adaptedness():
    q = equioriented_a(3)
    assert is_adapted(q, STAIR3)
    assert not is_adapted(q, (1, 2, 3, 1, 2, 1))


def test_sink_sequences_need_not_be_reduced():
    # (3,2,1,3,2,1) reflects through sinks all the way but is not reduced,
    # so it passes is_adapted yet never appears in the enumeration
    q = equioriented_a(3)
    word = (3, 2, 1, 3, 2, 1)
    assert is_adapted(q, word)
    assert word not in enumerate_adapted_words(q)
    with pytest.raises(NotReduced):
        RepContext(q, word)


def test_adapted_word_counts():
    assert enumerate_adapted_words(equioriented_a(2)) == [(2, 1, 2)]
    assert enumerate_adapted_words(equioriented_a(3)) == [
        (3, 2, 1, 3, 2, 3),
        STAIR3,
    ]
    counts = [len(enumerate_adapted_words(q)) for q in all_orientations(cartan_matrix("A", 3))]
    assert counts == [2, 4, 4, 2]
    assert len(enumerate_adapted_words(equioriented_a(4))) == 12


def test_adapted_word_count_d4():
    center = quiver_from_arrows(4, ((1, 2), (3, 2), (4, 2)))
    words = enumerate_adapted_words(center)
    assert len(words) == 216
    assert all(is_adapted(center, w) for w in words[:10])


def test_euler_form_values():
    q = equioriented_a(3)
    assert euler_form(q, (1, 0, 0), (0, 1, 0)) == -1
    assert euler_form(q, (0, 1, 0), (1, 0, 0)) == 0
    # each indecomposable is rigid with endomorphism algebra k
    ctx = _staircase_ctx()
    for beta in ctx.betas:
        assert euler_form(q, beta, beta) == 1
    with pytest.raises(ValueError):
        euler_form(q, (1, 0), (0, 1, 0))


def test_context_requires_adapted_word():
    with pytest.raises(NotAdapted):
        RepContext(equioriented_a(3), (1, 2, 3, 1, 2, 1))


def test_ar_structure_staircase():
    ctx = _staircase_ctx()
    data = ctx.ar_data()
    assert data["betas"] == [
        [0, 0, 1],
        [0, 1, 1],
        [0, 1, 0],
        [1, 1, 1],
        [1, 1, 0],
        [1, 0, 0],
    ]
    assert data["projectives"] == [1, 2, 4]
    assert data["injectives"] == [4, 5, 6]
    # tau pairs each non-projective with the predecessor of its mesh
    assert data["translation"] == [[3, 1], [5, 2], [6, 3]]
    assert ar_quiver(equioriented_a(3), STAIR3).ar_data() == data


def test_hom_ext_directedness():
    ctx = _staircase_ctx()
    for k in range(1, 7):
        assert ctx.hom_indec(k, k) == 1
        assert ctx.ext_indec(k, k) == 0
        for l in range(k + 1, 7):
            # Hom runs forward along the adapted order, Ext backward
            assert ctx.hom_indec(l, k) == 0
            assert ctx.ext_indec(k, l) == 0


def test_ext_pairs_staircase():
    ctx = _staircase_ctx()
    pairs = [
        (k, l)
        for k in range(1, 7)
        for l in range(k + 1, 7)
        if ctx.ext_indec(l, k)
    ]
    assert pairs == [(1, 3), (1, 5), (2, 5), (2, 6), (3, 6)]
    for k, l in pairs:
        assert ctx.ext_indec(l, k) == 1


def test_middle_terms_staircase():
    ctx = _staircase_ctx()
    assert ctx.middle_terms(2, 5) == [(0, 0, 1, 1, 0, 0)]
    assert ctx.middle_terms(1, 3) == [(0, 1, 0, 0, 0, 0)]
    assert ctx.middle_terms(1, 2) == []
    with pytest.raises(ValueError):
        ctx.middle_terms(5, 2)
    with pytest.raises(ValueError):
        ctx.middle_terms(1, 3, mode="fast")


def test_middle_term_dimension_vectors_add_up():
    for q in all_orientations(cartan_matrix("A", 3)):
        for word in enumerate_adapted_words(q):
            ctx = RepContext(q, word)
            for k in range(1, 7):
                for l in range(k + 1, 7):
                    for mid in ctx.middle_terms(k, l):
                        total = tuple(
                            sum(m * ctx.betas[t][v] for t, m in enumerate(mid))
                            for v in range(3)
                        )
                        expected = tuple(
                            ctx.betas[k - 1][v] + ctx.betas[l - 1][v]
                            for v in range(3)
                        )
                        assert total == expected


def test_middle_term_modes_agree_in_type_a():
    for q in all_orientations(cartan_matrix("A", 3)):
        for word in enumerate_adapted_words(q):
            ctx = RepContext(q, word)
            for k in range(1, 7):
                for l in range(k + 1, 7):
                    assert ctx.middle_terms(k, l) == ctx.middle_terms(
                        k, l, mode="filter"
                    )


def test_degeneration_order_a2():
    ctx = RepContext(equioriented_a(2), (2, 1, 2))
    s2, p1, s1 = ctx.unit(1), ctx.unit(2), ctx.unit(3)
    split = tuple(a + b for a, b in zip(s1, s2))
    assert ctx.degenerates_properly(p1, s1, s2)
    assert not ctx.degenerates_properly(split, s1, s2)
    with pytest.raises(Exception):
        ctx.degenerates_properly(s1, s1, s2)


def test_superfluous_check_reports_agreement():
    report = check_superfluous_conjecture(equioriented_a(3), STAIR3)
    assert report["agreement"] is True
    assert report["counterexamples"] == []
    assert report["pairs_checked"] == len(report["pairs"])
    assert report["pairs_checked"] >= 5


def test_ktheory_cones_staircase():
    out = ktheory_cones(equioriented_a(3), STAIR3)
    assert out["duality_verdict"] == "equal"
    assert out["stabilized"] is True
    assert out["lambda_rank"] == 3
    assert out["D_independent"] is True
    assert out["D_count"] == len(out["D_generators"])
    assert out["D_count"] == 6 - 3


def test_ktheory_cones_a2():
    out = ktheory_cones(equioriented_a(2), (2, 1, 2))
    assert out["duality_verdict"] == "equal"
    assert out["lambda_rank"] == 1
    assert out["lambda_basis"] == [[1, -1, 1]]
    assert out["D_count"] == 1
