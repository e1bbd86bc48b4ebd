import random

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from zptower.algebra import FFElem, FieldSpec

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)
F4 = FieldSpec.standard(2, 2)
F8 = FieldSpec.standard(2, 3)
F9 = FieldSpec.standard(3, 2)
F25 = FieldSpec.standard(5, 2)
SMALL_FIELDS = [F2, F3, F5, F4, F8, F9, F25]


def ff(spec):
    return st.integers(0, spec.q - 1).map(lambda k: FFElem.from_int(spec, k))


def ff_nonzero(spec):
    return st.integers(1, spec.q - 1).map(lambda k: FFElem.from_int(spec, k))


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
