"""The shift-and-difference engine.

The independent oracle for values is the closed product formula; the
structural checks (boundary stratification, shift policies, recursion
bookkeeping) are validated against finite lattice sums and hand-built
cases.
"""

import itertools
import random

import pytest

from twistzeta import (
    PointTerm,
    Restricted,
    ShiftVector,
    StructuredQuadratic,
    TwistVector,
    ValueCache,
    ZetaInstance,
    boundary_decompose,
    choose_shift,
    linear_special_value,
    quadratic_delta,
    quadratic_special_value,
    special_value,
)
from twistzeta._rational import rat
from twistzeta.closedform import closed_value
from twistzeta.cyclotomic import CyclotomicField
from twistzeta.errors import (
    ApproxIllConditioned,
    DependencyConditionViolated,
    DimensionMismatch,
    EngineError,
    MuPowerIsOne,
    NotLinearForm,
    OrthogonalityViolated,
)
from twistzeta.multipoly import SparsePolynomial

from _support import (
    box_partition_holds,
    oracle_corpus,
    random_instance,
    random_valid_shift,
    term_value,
)


def _alt_1d():
    mus = TwistVector.exact(2, [1])
    return ZetaInstance(
        SparsePolynomial.one(1), (SparsePolynomial.variable(1, 1),), mus
    )


def test_hand_unrolled_value():
    # (1 - mu) Z(-1) = mu Z(-0) + mu * 1 with mu = -1 and Z(-0) = -1/2
    inst = _alt_1d()
    field = CyclotomicField.get(2)
    assert special_value(inst, (0,)) == field.constant(rat(-1, 2))
    assert special_value(inst, (1,)) == field.constant(rat(-1, 4))


def test_zero_numerator_is_zero():
    mus = TwistVector.exact(4, [1, 1])
    inst = ZetaInstance(
        SparsePolynomial.zero(2),
        (SparsePolynomial.variable(2, 1) + 1,),
        mus,
    )
    assert special_value(inst, (5,)) == mus.zero_scalar()


def test_oracle_agreement_on_random_instances():
    for inst in oracle_corpus(1105, 25):
        session = ValueCache()
        for k in itertools.product(range(3), repeat=inst.nfactors):
            got = special_value(inst, k, cache=session)
            want = closed_value(inst.Q, inst.Ps, k, inst.mus)
            assert got == want, (inst.canonical_text(), k)


def test_linearity_in_q():
    rng = random.Random(17)
    from _support import random_polynomial, random_twists

    for _ in range(10):
        N = rng.choice([1, 2])
        mus = random_twists(rng, N)
        A = random_polynomial(rng, N)
        B = random_polynomial(rng, N)
        P = random_polynomial(rng, N)
        k = (rng.randint(0, 3),)
        c = rat(rng.randint(1, 5), rng.randint(1, 3))
        session = ValueCache()
        lhs = special_value(
            ZetaInstance(A * c + B, (P,), mus), k, cache=session
        )
        va = special_value(ZetaInstance(A, (P,), mus), k, cache=session)
        vb = special_value(ZetaInstance(B, (P,), mus), k, cache=session)
        assert lhs == mus.scale(va, c) + vb


def test_shift_independence_explicit_vectors():
    rng = random.Random(23)
    for inst in oracle_corpus(2205, 10):
        k = tuple(
            rng.randint(0, 2) for _ in range(inst.nfactors)
        )
        session = ValueCache()
        base = special_value(inst, k, cache=session)
        for _ in range(4):
            a = random_valid_shift(rng, inst.mus)
            assert special_value(inst, k, shift=a, cache=session) == base
        try:
            choose_shift(inst.mus, "all-ones")
        except MuPowerIsOne:
            continue
        assert (
            special_value(inst, k, shift="all-ones", cache=session) == base
        )


def test_explicit_shift_skips_top_level_cache():
    inst = _alt_1d()
    session = ValueCache()
    v = special_value(inst, (2,), cache=session)
    key = session.value_key(inst, (2,))
    poisoned = CyclotomicField.get(2).constant(999)
    session.values[key] = poisoned
    # default policy returns the stored entry, an explicit shift recomputes
    assert special_value(inst, (2,), cache=session) == poisoned
    assert special_value(inst, (2,), shift=(3,), cache=session) == v


def test_index_forms_agree_with_fresh_sessions():
    for inst in oracle_corpus(3305, 10):
        for k in itertools.product(range(3), repeat=inst.nfactors):
            a = special_value(inst, k, cache=ValueCache("residual"))
            b = special_value(inst, k, cache=ValueCache("consumed"))
            assert a == b


def test_session_index_form_conflicts_are_rejected():
    inst = _alt_1d()
    session = ValueCache("consumed")
    with pytest.raises(ValueError):
        special_value(inst, (1,), cache=session, index_form="residual")
    with pytest.raises(ValueError):
        ValueCache("sideways")


def test_cache_hits_are_returned():
    inst = _alt_1d()
    session = ValueCache()
    v = special_value(inst, (3,), cache=session)
    key = session.value_key(inst, (3,))
    assert key in session.values
    assert special_value(inst, (3,), cache=session) is session.values[key]
    assert v == session.values[key]


# shift selection -----------------------------------------------------


def test_choose_shift_default_is_first_unit_vector():
    mus = TwistVector.exact(4, [1, 3, 2])
    assert choose_shift(mus).a == (1, 0, 0)


def test_choose_shift_validates_explicit_vectors():
    mus = TwistVector.exact(2, [1, 1])
    with pytest.raises(MuPowerIsOne):
        choose_shift(mus, (1, 1))
    with pytest.raises(MuPowerIsOne):
        choose_shift(mus, "all-ones")
    assert choose_shift(mus, (1, 0)).a == (1, 0)
    with pytest.raises(ValueError):
        choose_shift(mus, (0, 0))
    with pytest.raises(ValueError):
        choose_shift(mus, (-1, 2))
    with pytest.raises(DimensionMismatch):
        choose_shift(mus, (1, 0, 0))
    with pytest.raises(ValueError):
        choose_shift(mus, "sideways")


def test_shift_vector_validation():
    with pytest.raises(ValueError):
        ShiftVector((0, 0))
    with pytest.raises(ValueError):
        ShiftVector((-1,))
    assert tuple(ShiftVector((2, 0))) == (2, 0)


# boundary decomposition ----------------------------------------------


def _inst_2d():
    mus = TwistVector.exact(4, [1, 3])
    P = SparsePolynomial.variable(2, 1) + SparsePolynomial.variable(2, 2)
    return ZetaInstance(SparsePolynomial.one(2), (P,), mus)


def test_default_shift_boundary_is_single_restriction():
    inst = _inst_2d()
    pieces = boundary_decompose(inst, (1, 0))
    assert len(pieces) == 1
    piece = pieces[0]
    assert isinstance(piece, Restricted)
    assert piece.kept == (2,)
    assert piece.fixed == ((1, 1),)
    assert piece.sub.nvars == 1
    # prefactor is mu_1^0-free: only the frozen value b = 1 contributes
    assert piece.prefactor == CyclotomicField.get(4).root(1)


def test_one_variable_boundary_is_points():
    inst = _alt_1d()
    pieces = boundary_decompose(inst, (2,))
    assert [p.point for p in pieces] == [(1,), (2,)]
    assert all(isinstance(p, PointTerm) for p in pieces)


def test_boundary_piece_count_matches_stratification():
    inst = _inst_2d()
    a = (2, 2)
    pieces = boundary_decompose(inst, a)
    restricted = [p for p in pieces if isinstance(p, Restricted)]
    points = [p for p in pieces if isinstance(p, PointTerm)]
    # one stratum per proper nonempty subset and frozen value: 2 * 2,
    # plus the 2 * 2 points below a
    assert len(restricted) == 4
    assert len(points) == 4


def test_restricted_prefactor_collects_kept_coordinates():
    # with a = (2, 1) and I = {2}, the prefactor is mu_1^b * mu_2^a2
    inst = _inst_2d()
    pieces = boundary_decompose(inst, (2, 1))
    field = CyclotomicField.get(4)
    got = {
        (p.kept, p.fixed): p.prefactor
        for p in pieces
        if isinstance(p, Restricted)
    }
    assert got[((2,), ((1, 1),))] == field.root(1 + 3)
    assert got[((2,), ((1, 2),))] == field.root(2 + 3)
    assert got[((1,), ((2, 1),))] == field.root(2 + 3)


def test_zero_entries_suppress_point_terms():
    inst = _inst_2d()
    pieces = boundary_decompose(inst, (0, 2))
    assert all(isinstance(p, Restricted) for p in pieces)
    kept_sets = {p.kept for p in pieces}
    assert kept_sets == {(1,)}


def test_partition_identity_randomized():
    rng = random.Random(99)
    for _ in range(12):
        inst = random_instance(rng, ns=(1, 2, 3), ts=(1,))
        k = (rng.randint(0, 2),)
        a = tuple(rng.randint(0, 3) for _ in range(inst.nvars))
        if not any(a):
            a = (1,) + a[1:]
        M = rng.randint(max(a) + 1, 7)
        assert box_partition_holds(inst, k, a, M)


# validation and errors -----------------------------------------------


def test_instance_validation():
    mus = TwistVector.exact(2, [1, 1])
    Q = SparsePolynomial.one(2)
    with pytest.raises(EngineError):
        ZetaInstance(Q, (SparsePolynomial.zero(2),), mus)
    with pytest.raises(DimensionMismatch):
        ZetaInstance(SparsePolynomial.one(1), (Q,), mus)
    with pytest.raises(DimensionMismatch):
        ZetaInstance(Q, (SparsePolynomial.one(1),), mus)
    with pytest.raises(DimensionMismatch):
        ZetaInstance(Q, (), mus)


def test_k_validation():
    inst = _alt_1d()
    with pytest.raises(DimensionMismatch):
        special_value(inst, (1, 2))
    with pytest.raises(ValueError):
        special_value(inst, (-1,))


def test_approx_conditioning_error():
    mus = TwistVector.approx([1e-12])
    inst = ZetaInstance(
        SparsePolynomial.one(1), (SparsePolynomial.variable(1, 1),), mus
    )
    with pytest.raises(ApproxIllConditioned):
        special_value(inst, (1,))


def test_approx_agrees_with_exact_embedding():
    exact = _inst_2d()
    approx = ZetaInstance(exact.Q, exact.Ps, exact.mus.to_approx())
    for k in [(0,), (1,), (2,), (3,)]:
        ve = special_value(exact, k).embed()
        va = special_value(approx, k)
        assert abs(ve - va) < 1e-9


# linear fast path ----------------------------------------------------


def test_linear_path_known_values():
    inst = _alt_1d()
    field = CyclotomicField.get(2)
    assert linear_special_value(inst, (1,), (1,)) == field.constant(
        rat(-1, 4)
    )
    mus = TwistVector.exact(2, [1, 1])
    P = SparsePolynomial.variable(2, 1) + SparsePolynomial.variable(2, 2)
    inst2 = ZetaInstance(SparsePolynomial.one(2), (P,), mus)
    assert linear_special_value(inst2, (1,), (1, 0)) == field.constant(
        rat(1, 4)
    )


def test_linear_path_matches_general_engine():
    rng = random.Random(31)
    for _ in range(8):
        N = rng.choice([1, 2, 3])
        T = rng.choice([1, 2])
        from _support import random_twists

        mus = random_twists(rng, N)
        Ps = []
        for _ in range(T):
            coeffs = {
                (tuple(1 if i == n else 0 for i in range(N))): rat(
                    rng.randint(1, 5), rng.randint(1, 3)
                )
                for n in range(N)
            }
            Ps.append(SparsePolynomial(N, coeffs))
        inst = ZetaInstance(SparsePolynomial.one(N), tuple(Ps), mus)
        k = tuple(rng.randint(0, 2) for _ in range(T))
        a = random_valid_shift(rng, mus)
        assert linear_special_value(inst, k, a) == special_value(inst, k)


def test_linear_path_rejects_structures():
    mus = TwistVector.exact(2, [1, 1])
    X1 = SparsePolynomial.variable(2, 1)
    X2 = SparsePolynomial.variable(2, 2)
    with pytest.raises(NotLinearForm):
        linear_special_value(
            ZetaInstance(X1, (X1 + X2,), mus), (1,), (1, 0)
        )
    with pytest.raises(NotLinearForm):
        linear_special_value(
            ZetaInstance(SparsePolynomial.one(2), (X1 + 1,), mus),
            (1,),
            (1, 0),
        )
    with pytest.raises(NotLinearForm):
        linear_special_value(
            ZetaInstance(SparsePolynomial.one(2), (X1 * X1 + X2,), mus),
            (1,),
            (1, 0),
        )
    with pytest.raises(DependencyConditionViolated):
        linear_special_value(
            ZetaInstance(SparsePolynomial.one(2), (X1,), mus), (1,), (1, 0)
        )


# structured quadratics -----------------------------------------------


def test_quadratic_delta_values():
    P = StructuredQuadratic(squares=((1, -1),), linear=(1, 1), constant=1)
    assert quadratic_delta(P, (1, 1)) == 2
    P2 = StructuredQuadratic(squares=(), linear=(3, 2))
    assert quadratic_delta(P2, (1, 0)) == 3
    with pytest.raises(OrthogonalityViolated):
        quadratic_delta(
            StructuredQuadratic(squares=((1, 0),), linear=(1, 1)), (1, 0)
        )


def test_quadratic_expand():
    P = StructuredQuadratic(squares=((1, -1),), linear=(1, 1), constant=1)
    X1 = SparsePolynomial.variable(2, 1)
    X2 = SparsePolynomial.variable(2, 2)
    want = (X1 - X2) * (X1 - X2) + X1 + X2 + 1
    assert P.expand() == want


def test_quadratic_validation():
    with pytest.raises(ValueError):
        StructuredQuadratic(squares=(), linear=(1, 0))
    with pytest.raises(ValueError):
        StructuredQuadratic(squares=(), linear=(1, 1), constant=-1)
    with pytest.raises(DimensionMismatch):
        StructuredQuadratic(squares=((1,),), linear=(1, 1))


def test_quadratic_pipeline_matches_general_engine():
    P = StructuredQuadratic(squares=((1, -1),), linear=(1, 1), constant=1)
    mus = TwistVector.exact(4, [1, 1])
    inst = ZetaInstance(SparsePolynomial.one(2), (P.expand(),), mus)
    for k in [(0,), (1,), (2,), (3,)]:
        fast = quadratic_special_value((P,), mus, k, (1, 1))
        general = special_value(inst, k, shift=(1, 2))
        oracle = closed_value(inst.Q, inst.Ps, k, mus)
        assert fast == general == oracle


def test_point_terms_use_exact_factor_powers():
    # 1-D instance with a = (3): three point terms, finite values only
    mus = TwistVector.exact(4, [1])
    P = SparsePolynomial.variable(1, 1) + 1
    inst = ZetaInstance(SparsePolynomial.one(1), (P,), mus)
    v1 = special_value(inst, (2,))
    v2 = special_value(inst, (2,), shift=(3,))
    assert v1 == v2
    total = mus.zero_scalar()
    # check against the raw translate relation at a = 3:
    # (1 - mu^3) Z = mu^3 [shifted series terms] + boundary points
    pieces = boundary_decompose(inst, (3,))
    assert [p.point for p in pieces] == [(1,), (2,), (3,)]
    for p in pieces:
        total = total + term_value(inst, (2,), p.point)
    assert total == sum(
        (term_value(inst, (2,), (m,)) for m in (1, 2, 3)),
        mus.zero_scalar(),
    )
