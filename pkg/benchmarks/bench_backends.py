"""Compare the compiled kernels against the pure numpy fallback.

Times the two hot paths (plan scoring and edge-subset search) on synthetic
workloads sized like the verification batteries.  Run from the repo root:

    python benchmarks/bench_backends.py
"""

import time

import numpy as np

from movnet import _purekernels, gadgets, randgen
from movnet.backend import (
    MOV,
    base_arrays,
    edge_endpoint_arrays,
    enumerate_presence,
    ops,
    pack_plans,
)
from movnet.edges import _SubsetSearch


def bench_plan_values(backend, plans=20_000):
    inst = randgen.random_instance(123, max_nodes=9, min_nodes=6, seeded=False)
    en = enumerate_presence(inst.graph.edges)
    base, dm1, dmul = base_arrays(inst)
    esrc, edst = edge_endpoint_arrays(inst.graph.edges)
    reach = np.asarray(_purekernels.closure_stack(
        inst.node_count, esrc, edst, en.presence))
    import random
    rng = random.Random(5)
    k = inst.candidates
    batch = []
    for _ in range(plans):
        seeds = rng.sample(range(inst.node_count), rng.randint(1, 3))
        batch.append([(s, tuple(rng.randint(-2, 2) for _ in range(k)), -1)
                      for s in seeds])
    ptr, ps, pm, pb = pack_plans(batch, k)
    weights = en.require_int_weights()
    t0 = time.perf_counter()
    vals = backend.plan_values(reach, weights, base, dm1, dmul,
                               ptr, ps, pm, pb, MOV)
    dt = time.perf_counter() - t0
    return dt, int(np.asarray(vals).sum())


def bench_subset_values(backend, masks=1 << 14):
    sc = gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2)
    inst = gadgets.setcover_removal(sc).instance
    search = _SubsetSearch(inst, "removal")
    mask_arr = np.arange(masks, dtype=np.uint64)
    args = (inst.node_count, search.base, search.dm1, search.dmul,
            search.esrc, search.edst, search.det, search.rand_idx,
            search.cand_idx, search.base_live, 1, mask_arr,
            search.assign_present, search.assign_w,
            search.seed_ids, search.msgs, search.bribed, MOV)
    t0 = time.perf_counter()
    vals = backend.subset_values(*args)
    dt = time.perf_counter() - t0
    return dt, int(np.asarray(vals).sum())


def main():
    rows = []
    for label, fn, size in [("plan scoring (20k plans)", bench_plan_values, None),
                            ("subset search (16k masks)", bench_subset_values, None)]:
        fast_t, fast_sum = fn(ops)
        pure_t, pure_sum = fn(_purekernels)
        assert fast_sum == pure_sum, "backend results diverge"
        rows.append((label, fast_t, pure_t))
    print(f"active backend: {ops.NAME}")
    print(f"{'workload':<28} {'compiled' if ops.NAME != 'pure' else 'active':>10} "
          f"{'pure':>10} {'speedup':>9}")
    for label, fast_t, pure_t in rows:
        print(f"{label:<28} {fast_t:>9.3f}s {pure_t:>9.3f}s {pure_t / fast_t:>8.1f}x")


if __name__ == "__main__":
    main()
