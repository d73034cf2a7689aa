import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pfres.polyring import ZERO, c, const, t, u

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "golden"
sys.path.insert(0, str(Path(__file__).parent))

_atoms = st.one_of(
    st.tuples(st.just("t"), st.integers(1, 4), st.integers(1, 4)).filter(lambda x: x[1] < x[2]),
    st.tuples(st.just("c"), st.integers(1, 3), st.integers(1, 3)).filter(lambda x: x[1] < x[2]),
    st.tuples(st.just("u"), st.integers(1, 3), st.integers(1, 3)),
)
_MAKE = {"t": t, "c": c, "u": u}


@st.composite
def monomials(draw, max_factors=3):
    m = const(draw(st.integers(-5, 5)))
    for fam, i, j in draw(st.lists(_atoms, max_size=max_factors)):
        m = m * _MAKE[fam](i, j)
    return m


@st.composite
def polynomials(draw, max_terms=4):
    p = ZERO
    for mono in draw(st.lists(monomials(), max_size=max_terms)):
        p = p + mono
    return p
