"""Shared instances: building the S3-sized structures once keeps the suite fast."""

import pytest

from mhopf.actions import adjoint_action, trivial_action, verify_module_algebra
from mhopf.aqg import make_aqg
from mhopf.instances import (
    canonical_pair,
    cyclic_group,
    function_algebra,
    grading_action,
    group_algebra,
    integer_group,
    symmetric_group_3,
    translation_action,
    trivial_group,
)
from mhopf.pairing import pair_of_aqg
from mhopf.smash import smash


@pytest.fixture(scope="session")
def z1():
    return trivial_group()


@pytest.fixture(scope="session")
def z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic_group(3)


@pytest.fixture(scope="session")
def s3():
    return symmetric_group_3()


@pytest.fixture(scope="session")
def zz():
    return integer_group()


@pytest.fixture(scope="session")
def kz2(z2):
    return function_algebra(z2)


@pytest.fixture(scope="session")
def cz2(z2):
    return group_algebra(z2)


@pytest.fixture(scope="session")
def kz3(z3):
    return function_algebra(z3)


@pytest.fixture(scope="session")
def cz3(z3):
    return group_algebra(z3)


@pytest.fixture(scope="session")
def ks3(s3):
    return function_algebra(s3)


@pytest.fixture(scope="session")
def cs3(s3):
    return group_algebra(s3)


@pytest.fixture(scope="session")
def kz(zz):
    return function_algebra(zz)


@pytest.fixture(scope="session")
def cz(zz):
    return group_algebra(zz)


@pytest.fixture(scope="session")
def cz2_aqg(cz2):
    return make_aqg(cz2)


@pytest.fixture(scope="session")
def kz2_aqg(kz2):
    return make_aqg(kz2)


@pytest.fixture(scope="session")
def cs3_aqg(cs3):
    return make_aqg(cs3)


@pytest.fixture(scope="session")
def pair_z2(z2):
    return canonical_pair(z2)


@pytest.fixture(scope="session")
def pair_z3(z3):
    return canonical_pair(z3)


@pytest.fixture(scope="session")
def pair_s3(s3):
    return canonical_pair(s3)


@pytest.fixture(scope="session")
def pair_z(zz):
    return canonical_pair(zz)


@pytest.fixture(scope="session")
def dual_pair_cz2(cz2_aqg):
    return pair_of_aqg(cz2_aqg)


@pytest.fixture(scope="session")
def dual_pair_cs3(cs3_aqg):
    return pair_of_aqg(cs3_aqg)


@pytest.fixture(scope="session")
def translation_z2(z2):
    spec = translation_action(z2)
    assert verify_module_algebra(spec).ok
    return spec


@pytest.fixture(scope="session")
def grading_z2(z2):
    spec = grading_action(z2)
    assert verify_module_algebra(spec).ok
    return spec


@pytest.fixture(scope="session")
def adjoint_cs3(cs3):
    spec = adjoint_action(cs3)
    assert verify_module_algebra(spec).ok
    return spec


@pytest.fixture(scope="session")
def trivial_cs3(cs3):
    spec = trivial_action(cs3, cs3.algebra)
    assert verify_module_algebra(spec).ok
    return spec


@pytest.fixture(scope="session")
def smash_translation_z2(translation_z2):
    return smash(translation_z2)


@pytest.fixture(scope="session")
def smash_adjoint_cs3(adjoint_cs3):
    return smash(adjoint_cs3)
