import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from idp.qarith import LaurentPoly, RatFunc

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def laurent(draw, lo=-6, hi=6, max_terms=4, coeff=20):
    terms = draw(
        st.dictionaries(st.integers(lo, hi), st.integers(-coeff, coeff), max_size=max_terms)
    )
    return LaurentPoly(terms)


@st.composite
def nonzero_laurent(draw, **kw):
    p = draw(laurent(**kw))
    if not p:
        p = LaurentPoly.monomial(draw(st.integers(-3, 3)), draw(st.sampled_from([1, -1, 2])))
    return p


@st.composite
def ratfunc(draw):
    return RatFunc(draw(laurent(max_terms=3, coeff=5)), draw(nonzero_laurent(max_terms=3, coeff=5)))


@st.composite
def bar_invariant(draw, top=6):
    """Symmetric integer Laurent polynomials."""
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=1, max_size=top + 1))
    terms = {0: coeffs[0]}
    for i, c in enumerate(coeffs[1:], start=1):
        terms[i] = terms.get(i, 0) + c
        terms[-i] = terms.get(-i, 0) + c
    return LaurentPoly(terms)
