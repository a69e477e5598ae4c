from __future__ import annotations

from hypothesis import HealthCheck, settings, strategies as st

from charslope.algebra import FieldSpec, Poly

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F4 = FieldSpec(2, 2, (1, 1, 1))
F8 = FieldSpec(2, 3, (1, 1, 0, 1))
F9 = FieldSpec(3, 2, (1, 0, 1))
FIELDS = (F2, F3, FieldSpec(5), F4, F8, F9)


@st.composite
def polys(draw, field: FieldSpec, nvars: int, max_terms: int = 4, max_deg: int = 4,
          nonzero: bool = False) -> Poly:
    exp = st.tuples(*[st.integers(0, max_deg)] * nvars)
    coef = st.integers(1, field.q - 1)
    terms = draw(st.dictionaries(exp, coef, min_size=1 if nonzero else 0, max_size=max_terms))
    return Poly(field, nvars, terms)


fields = st.sampled_from(FIELDS)
