import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from surfkernel import GeneratingVector, OrbifoldSignature, make_symmetric  # noqa: E402

S3_NAMES = ["1", "A", "B", "C", "D", "E"]


@pytest.fixture(scope="session")
def s3():
    return make_symmetric(3).relabel(S3_NAMES)


@pytest.fixture(scope="session")
def s3_data(s3):
    sig = OrbifoldSignature(0, (2, 2, 2, 2, 2, 2, 3, 3))
    phi = GeneratingVector((), (), (1, 1, 2, 2, 3, 3, 4, 5))
    return s3, sig, phi


@pytest.fixture(scope="session")
def s3_pipeline(s3_data):
    from surfkernel.schreier import pipeline
    grp, sig, phi = s3_data
    raw, simple = pipeline(sig, grp, phi)
    return raw, simple


@pytest.fixture(scope="session")
def s3_homology(s3_pipeline):
    from surfkernel import homology_matrices
    return homology_matrices(s3_pipeline[1])
