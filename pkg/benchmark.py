# Usage:
# python benchmark.py
# QTORUS_DEGREE_BOUND=2 QTORUS_SEED=3 python benchmark.py

import threading
import time

from qtorus import (
    CyclicModulePresentation,
    QTorusPresentation,
    QuantumTorus,
    ScalarEmbedding,
    ScalarGroup,
    SearchBounds,
    construct_simple_module,
    delta_module,
    example_generator,
    gk_dimension,
    tensor_module,
    torsion_free_check,
)
from qtorus.conf import get_seed

LOOPS = 5
THREADS = 4
RESULTS = []

group = ScalarGroup(1, 0)
plane = QuantumTorus(
    QTorusPresentation.from_entries(2, group, {(1, 0): 1}),
    ScalarEmbedding.primes(group, [2]),
)
tropical = CyclicModulePresentation(plane, [plane.parse("1 + u1 + u2")])
product = tensor_module(tropical, tensor_module(tropical, tropical))
bounds = SearchBounds.from_env(degree_bound=1)


def compute():
    for _ in range(LOOPS):
        RESULTS.append((gk_dimension(product, bounds), delta_module(product, bounds)))


threads = [threading.Thread(target=compute) for _ in range(THREADS)]

t0 = time.perf_counter()

for thread in threads:
    thread.start()

for thread in threads:
    thread.join()

t1 = time.perf_counter()

assert len(set(RESULTS)) == 1
assert RESULTS[0][0].value == 3

print(
    f"{LOOPS} loops x {THREADS} threads in {t1 - t0:.2f} seconds"
    f" = {LOOPS * THREADS / (t1 - t0):.1f} Δ and GK computations / second"
)

t0 = time.perf_counter()

seed = get_seed()
for k in range(1, 4):
    P, gamma = example_generator(2, [2, 3], k, seed + k)
    module = construct_simple_module(gamma, gamma.algebra)
    assert module.rank == k
    assert torsion_free_check(module)

t1 = time.perf_counter()

print(f"simple modules of rank 1 to 3 in {t1 - t0:.2f} seconds")
