import sympy
from hypothesis import settings

from csgin import LEX, DEGREVLEX, RingConfig

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def sympy_symbols(ring: RingConfig):
    return [sympy.Symbol(f"x_{v.row}_{v.col}") for v in ring.variables]


def to_sympy(f, ring: RingConfig):
    xs = sympy_symbols(ring)
    expr = 0
    for mono, c in f.terms.items():
        term = sympy.Integer(c)
        for x, e in zip(xs, mono):
            term *= x**e
        expr += term
    return expr


def sympy_order_name(order) -> str:
    return {"lex": "lex", "degrevlex": "grevlex"}[order.kind]


# criterion number -> (passed, description); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {text}")
