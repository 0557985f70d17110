import os

from qtorus import (
    CyclicModulePresentation,
    QTorusPresentation,
    QuantumTorus,
    ScalarEmbedding,
    ScalarGroup,
)

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")

Z = ScalarGroup(1, 0)


def fixture(name):
    return os.path.join(FIXTURES, name)


def presentation(rank, entries=None, group=Z):
    return QTorusPresentation.from_entries(rank, group, entries or {})


def prime_algebra(rank, entries=None, prime=2):
    return QuantumTorus(presentation(rank, entries), ScalarEmbedding.primes(Z, [prime]))


def symbolic_algebra(rank, entries=None):
    return QuantumTorus(presentation(rank, entries), ScalarEmbedding.symbolic(Z))


def plane(prime=2):
    """
    The quantum plane u2 u1 = q u1 u2 with q = prime.

    """
    return prime_algebra(2, {(1, 0): 1}, prime)


def module(algebra, *relations):
    return CyclicModulePresentation(algebra, [algebra.parse(r) for r in relations])
