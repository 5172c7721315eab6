import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from miser.files import gen_items
from miser.geom import Rect, Seg

settings.register_profile(
    "default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# three rectangles used across modules
R1 = Rect("R1", 0, 2, 0, 2, 5)
R2 = Rect("R2", 3, 5, 0, 2, 4)
R3 = Rect("R3", 1, 4, 1, 3, 6)
INSTANCE_A = (R1, R2, R3)

S1 = Seg.h("S1", 0, 3, 0, 2)
S2 = Seg.h("S2", 4, 6, 0, 3)
S3 = Seg.v("S3", 2, -1, 1, 4)
INSTANCE_S = (S1, S2, S3)


@st.composite
def rects(draw, id=0, lo=0, hi=10, weights=st.integers(1, 20)):
    x1, x2 = sorted((draw(st.integers(lo, hi)), draw(st.integers(lo, hi))))
    y1, y2 = sorted((draw(st.integers(lo, hi)), draw(st.integers(lo, hi))))
    return Rect(id, x1, x2, y1, y2, draw(weights))


@st.composite
def segs(draw, id=0, lo=0, hi=10, weights=st.integers(1, 20)):
    a, b = sorted((draw(st.integers(lo, hi)), draw(st.integers(lo, hi))))
    c = draw(st.integers(lo, hi))
    return Seg(id, draw(st.booleans()), c, a, b, draw(weights))


@st.composite
def rect_sets(draw, max_n=8, hi=20, weights=st.integers(1, 20)):
    n = draw(st.integers(0, max_n))
    return [draw(rects(id=i, hi=hi, weights=weights)) for i in range(n)]


@st.composite
def seg_sets(draw, max_n=8, hi=20, weights=st.integers(1, 20)):
    n = draw(st.integers(0, max_n))
    return [draw(segs(id=i, hi=hi, weights=weights)) for i in range(n)]


def random_instances(kind, count, max_n, coord_max, weight_spec, seed=0):
    """Seeded (seed, items) pairs with 1 <= n <= max_n."""
    for i in range(count):
        rng = random.Random(seed * 100_003 + i)
        yield i, gen_items(kind, rng.randint(1, max_n), coord_max, weight_spec, rng)


@pytest.fixture
def instance_a():
    return list(INSTANCE_A)
