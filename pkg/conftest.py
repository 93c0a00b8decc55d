import os

# Keep the test session off the on-disk report cache
os.environ['PERMCOVER_USE_CACHE'] = '0'
os.environ.pop('NO_COLOR', None)

import hypothesis
from hypothesis import strategies as st

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@st.composite
def permutations_of(draw, min_n=2, max_n=10):
    """A Permutation of a drawn size n."""
    from perm_core import Permutation

    n = draw(st.integers(min_value=min_n, max_value=max_n))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@st.composite
def permutation_pairs(draw, min_n=2, max_n=10):
    """Two permutations of the same drawn size."""
    from perm_core import Permutation

    n = draw(st.integers(min_value=min_n, max_value=max_n))
    first = Permutation(tuple(draw(st.permutations(range(1, n + 1)))))
    second = Permutation(tuple(draw(st.permutations(range(1, n + 1)))))
    return first, second
