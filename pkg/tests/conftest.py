import pytest

from _cases import SCENARIOS

from metakernel.core import Symbol, parse
from metakernel.metafns import defstobj_expand
from metakernel.world import EMPTY_WORLD, RewriteRule, add_defun, add_rewrite_rule, EQUAL


def sym(name):
    return Symbol(name)


@pytest.fixture(scope="session")
def atom_world():
    return add_defun(sym("ATOM"), (sym("X"),), parse("(not (consp x))"), EMPTY_WORLD)


@pytest.fixture(scope="session")
def stobj_world():
    fields = [sym(f"FLD{i}") for i in range(1, 21)]
    return defstobj_expand(sym("ST"), fields, EMPTY_WORLD)


@pytest.fixture(scope="session")
def car_cons_world(atom_world):
    rule = RewriteRule((), EQUAL, parse("(car (cons x y))"), parse("x"), None, sym("CAR-CONS"))
    return add_rewrite_rule(rule, atom_world)


@pytest.fixture(scope="session")
def logapp_world():
    rule = RewriteRule((parse("(equal (logtail m n) '0)"),), EQUAL,
                       parse("(logand n (logapp m a b))"), parse("(logand n a)"))
    return add_rewrite_rule(rule, EMPTY_WORLD)


@pytest.fixture
def scenarios():
    return SCENARIOS
