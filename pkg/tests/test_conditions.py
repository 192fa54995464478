"""Condition report verdicts.

Each rule is sufficient-only: pass needs a matching certificate, fail
needs a violated necessary condition, everything else stays unknown.
"""

from twistzeta import (
    StructuredQuadratic,
    TwistVector,
    ZetaInstance,
    validate_conditions,
)
from twistzeta.conditions import _gram_psd
from twistzeta._rational import rat
from twistzeta.multipoly import SparsePolynomial


def _mk(Ps, N=2, order=2):
    mus = TwistVector.exact(order, [1] * N)
    return ZetaInstance(SparsePolynomial.one(N), tuple(Ps), mus)


X1 = SparsePolynomial.variable(2, 1)
X2 = SparsePolynomial.variable(2, 2)


def test_growth_fails_when_a_variable_is_absent():
    report = validate_conditions(_mk([X1]))
    assert report.positivity == "pass"
    assert report.hypoellipticity == "pass"
    assert report.growth == "fail"
    assert any("X2" in n for n in report.notes)
    assert not report.all_pass


def test_all_positive_coefficients_pass_everything():
    P = X1 * X2 + X1 + X2 + 1
    report = validate_conditions(_mk([P]))
    assert (report.positivity, report.hypoellipticity, report.growth) == (
        "pass",
        "pass",
        "pass",
    )
    assert report.all_pass


def test_vanishing_at_the_corner_fails():
    # X1^2 - X2 is zero at (1, 1), violating positivity outright
    report = validate_conditions(_mk([X1 * X1 - X2]))
    assert report.positivity == "fail"
    assert report.hypoellipticity == "fail"


def test_mixed_signs_with_positive_corner_stay_unknown():
    P = X1 * X1 - X2 + 3
    report = validate_conditions(_mk([P]))
    assert report.positivity == "unknown"
    assert report.hypoellipticity == "unknown"
    assert report.growth == "unknown"


def test_structured_quadratic_certifies_hypoellipticity():
    sq = StructuredQuadratic(squares=((1, -1),), linear=(1, 1), constant=1)
    report = validate_conditions(_mk([sq.expand()], order=4))
    assert report.hypoellipticity == "pass"
    assert report.growth == "pass"
    # the expanded form has a negative cross term, so the plain
    # coefficient rule cannot certify positivity
    assert report.positivity == "unknown"


def test_indefinite_quadratic_part_is_not_certified():
    P = X1 * X1 - 3 * X1 * X2 + X2 * X2 + X1 + X2 + 1
    report = validate_conditions(_mk([P]))
    assert report.hypoellipticity == "unknown"


def test_positive_linear_form_certifies():
    report = validate_conditions(_mk([X1 + X2]))
    assert report.hypoellipticity == "pass"
    assert report.positivity == "pass"


def test_growth_uses_only_certified_factors():
    # X2 occurs, but only in a factor that is not certified
    good = X1 + 1
    shaky = X2 * X2 - X2 + 1
    report = validate_conditions(_mk([good, shaky]))
    assert report.factor_hypoellipticity == ("pass", "unknown")
    assert report.growth == "unknown"


def test_per_factor_verdicts_are_reported():
    report = validate_conditions(_mk([X1 + X2, X1 * X1 - X2]))
    assert report.factor_positivity == ("pass", "fail")
    assert report.positivity == "fail"


def test_report_lines_are_printable():
    lines = validate_conditions(_mk([X1])).lines()
    assert lines[0].startswith("positivity:")
    assert lines[1].startswith("hypoellipticity:")
    assert lines[2].startswith("growth:")


def test_gram_psd_edge_cases():
    q = lambda n: rat(n, 1)
    assert _gram_psd([[q(0), q(0)], [q(0), q(1)]])
    assert not _gram_psd([[q(0), q(1)], [q(1), q(0)]])
    assert _gram_psd([[q(1), q(-1)], [q(-1), q(1)]])
    assert not _gram_psd([[q(-1)]])
    assert _gram_psd([])
    # PSD with a dependent row: (x - y)^2 + (x + y)^2 - 2x^2 = 2y^2...
    # Gram of 2x^2 + 2y^2 + 4xy - rank check
    assert _gram_psd([[q(2), q(2)], [q(2), q(2)]])
    assert not _gram_psd([[q(2), q(3)], [q(3), q(2)]])
