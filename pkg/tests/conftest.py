import numpy as np
import pytest

from steinerlab import all_faces, complex_from_dfaces


def random_complex(n, d, gen, min_faces=1, max_faces=None):
    """Random sub-complex with complete skeleton: a random subset of d-faces."""
    faces = list(all_faces(n, d))
    cap = len(faces) if max_faces is None else min(max_faces, len(faces))
    count = int(gen.integers(min_faces, cap + 1))
    idx = gen.choice(len(faces), size=count, replace=False)
    return complex_from_dfaces(n, d, [faces[i] for i in idx])


@pytest.fixture
def gen():
    return np.random.default_rng(20240817)
