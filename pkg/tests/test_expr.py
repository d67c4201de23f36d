import pytest

from carlitz.errors import ContextError, ExprSyntaxError
from carlitz.expr import (FIELD, TPOLY, eval_element, eval_tpoly,
                          parse_element, print_expr)

# canonical-form corpus: print(parse(s)) == s
ROUNDTRIP_CORPUS = [
    "1", "42", "th", "z", "pi", "t",
    "-1", "-th", "th+1", "th-1", "1+2+3", "1-2-3",
    "th*z", "th/z", "th*z*pi", "th/z/pi",
    "th^2", "th^-2", "z^-1", "pi^3", "t^2",
    "th^2+1", "th^2-th", "z^2*th", "2*th^3",
    "(th)", "(th+1)", "(th+1)*z", "z*(th+1)", "1/(th+1)",
    "(th+1)^2", "(th+1)^-1", "((th))",
    "t^2+th*t", "t^3-z*t+1", "(t+th)*(t-th)",
    "th*t^2+z^2*t", "1+t+t^2", "-t^2",
    "th^2*z^-1", "pi^-4", "2/th", "1/2",
    "(z+pi)^3", "th*(z+1)^2", "(1+pi)^-2",
    "t*(t+1)", "th^10", "z^-5*pi^5", "(t^2+1)*(t+1)",
    "1-(th+1)", "-(th+1)", "2*2*2",
]


@pytest.mark.parametrize("text", ROUNDTRIP_CORPUS)
def test_print_parse_roundtrip(text):
    ctx = TPOLY if "t" in text.replace("th", "") else FIELD
    expr = parse_element(text, ctx)
    assert print_expr(expr.ast) == text


def test_corpus_size():
    assert len(ROUNDTRIP_CORPUS) >= 50


def test_eval_symbols(cfg3):
    assert eval_element(parse_element("th", FIELD), cfg3) == cfg3.theta()
    assert eval_element(parse_element("z", FIELD), cfg3) == cfg3.zeta()
    assert eval_element(parse_element("pi", FIELD), cfg3) == cfg3.pi()
    assert eval_element(parse_element("5", FIELD), cfg3) == cfg3.from_int(5)


def test_eval_zeta_negative_power(cfg3):
    # z^-1 = pi^(ram/(q-1))
    got = eval_element(parse_element("z^-1", FIELD), cfg3)
    assert got == cfg3.monomial(cfg3.ram // (cfg3.q - 1))


def test_eval_unit_inverse_truncates(cfg3):
    got = eval_element(parse_element("1/(th+1)", FIELD), cfg3, prec=60)
    assert not got.is_exact()
    check = got * (cfg3.theta() + cfg3.one()) - cfg3.one()
    assert check.is_zero_at_prec()


def test_eval_precedence(cfg3):
    # ^ binds tighter than *, which binds tighter than +
    got = eval_element(parse_element("th^2+2*th+1", FIELD), cfg3)
    th = cfg3.theta()
    assert got == th * th + th.scale(2) + cfg3.one()
    # left associativity of subtraction
    got2 = eval_element(parse_element("1-2-3", FIELD), cfg3)
    assert got2 == cfg3.from_int(-4)


def test_eval_tpoly(cfg3):
    poly = eval_tpoly(parse_element("t^2 + th*t", TPOLY), cfg3)
    assert poly.degree == 2
    assert poly.coeff(0).is_exact_zero()
    assert poly.coeff(1) == cfg3.theta()
    assert poly.coeff(2) == cfg3.one()


def test_t_rejected_in_field_context():
    with pytest.raises(ContextError):
        parse_element("t+1", FIELD)


def test_syntax_errors_carry_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse_element("th + ", FIELD)
    assert info.value.position == 5  # end of input
    with pytest.raises(ExprSyntaxError) as info:
        parse_element("th $ 1", FIELD)
    assert info.value.position == 3
    with pytest.raises(ExprSyntaxError) as info:
        parse_element("(th+1", FIELD)
    assert info.value.position == 5
    with pytest.raises(ExprSyntaxError):
        parse_element("th^z", FIELD)  # exponent must be an integer
    with pytest.raises(ExprSyntaxError):
        parse_element("foo", FIELD)


def test_division_by_poly_rejected(cfg3):
    with pytest.raises(ContextError):
        eval_tpoly(parse_element("1/t", TPOLY), cfg3)
    with pytest.raises(ContextError):
        eval_tpoly(parse_element("(t+1)^-1", TPOLY), cfg3)
