"""Pure numpy backend for the batch evaluation kernels.

Same contract as the compiled `_kernels` extension; selected automatically
when the extension is missing (or when MOVNET_BACKEND=pure).  Correct at any
size but much slower on large plan/subset enumerations, see
benchmarks/bench_backends.py.

Shared conventions:
  * scores enter as `base` (n, k) int64; a revised row is compared through
    its integer form  dm1 * base + dmul * received  with dm1 = D-1,
    dmul = D, D = 1 + max initial score (so eps = 1/D).
  * objective codes: 0 margin of victory, 1 influenced-node count,
    2 votes of candidate 0, 3 influenced nodes not already won for
    candidate 0 (the seeding guarantee's greedy objective).
  * `bribed` entries >= 0 pin the seed's vote to that candidate.
"""

from __future__ import annotations

import numpy as np

MOV, CHI, VOTES0, NEWCHI = 0, 1, 2, 3

NAME = "pure"


def closure_stack(n, esrc, edst, present):
    """Reachability closure per live graph: out[g, u, v] = v reachable from u."""
    g_count = present.shape[0]
    out = np.zeros((g_count, n, n), dtype=np.uint8)
    eye = np.eye(n, dtype=bool)
    for g in range(g_count):
        adj = np.zeros((n, n), dtype=bool)
        live = present[g].astype(bool)
        adj[esrc[live], edst[live]] = True
        reach = adj | eye
        while True:
            nxt = reach | (reach @ reach)
            if (nxt == reach).all():
                break
            reach = nxt
        out[g] = reach
    return out


def seed_reach_stack(n, esrc, edst, present, seeds):
    """Rows of the closure restricted to the given seed nodes."""
    full = closure_stack(n, esrc, edst, present)
    return np.ascontiguousarray(full[:, np.asarray(seeds, dtype=np.int64), :])


def _values_from_reach(reach, base, dm1, dmul, msgs, bribed, seed_ids, objective):
    """(G,) objective values for one assignment given per-seed reach rows."""
    g_count, s_count, n = reach.shape
    k = base.shape[1]
    if objective in (CHI, NEWCHI):
        if s_count == 0:
            return np.zeros(g_count, dtype=np.int64)
        influenced = reach.any(axis=1)
        if objective == NEWCHI:
            influenced = influenced & (base.argmax(axis=1) != 0)[None, :]
        return influenced.sum(axis=1).astype(np.int64)
    rec = np.einsum("gsn,sk->gnk", reach.astype(np.int64), msgs) if s_count \
        else np.zeros((g_count, n, k), dtype=np.int64)
    scores = dm1 * base[None, :, :] + dmul * rec
    winners = scores.argmax(axis=2)
    for j in range(s_count):
        if bribed[j] >= 0:
            winners[:, seed_ids[j]] = bribed[j]
    votes = (winners[:, :, None] == np.arange(k)[None, None, :]).sum(axis=1)
    if objective == VOTES0:
        return votes[:, 0].astype(np.int64)
    return (votes[:, 0] - votes[:, 1:].max(axis=1)).astype(np.int64)


def assignment_graph_values(reach, base, dm1, dmul, seed_ids, msgs, bribed, objective):
    return _values_from_reach(reach, base, dm1, dmul, msgs, bribed, seed_ids, objective)


def plan_values(reach, weights, base, dm1, dmul,
                plan_ptr, plan_seed, plan_msg, plan_bribed, objective):
    """Weighted objective sum per plan over a stack of live-graph closures."""
    p_count = plan_ptr.shape[0] - 1
    out = np.empty(p_count, dtype=np.int64)
    for p in range(p_count):
        lo, hi = plan_ptr[p], plan_ptr[p + 1]
        seeds = plan_seed[lo:hi]
        sub = np.ascontiguousarray(reach[:, seeds, :])
        vals = _values_from_reach(sub, base, dm1, dmul,
                                  plan_msg[lo:hi], plan_bribed[lo:hi], seeds, objective)
        out[p] = int(np.dot(weights, vals))
    return out


def _bfs_reach(adj, start, n):
    seen = np.zeros(n, dtype=bool)
    seen[start] = True
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return seen


def subset_values(n, base, dm1, dmul, esrc, edst, det_state, rand_idx, cand_idx,
                  base_live, removal, masks, assign_present, assign_w,
                  seed_ids, msgs, bribed, objective):
    """Weighted objective per candidate-edge subset mask.

    Each edge is live when it is selected by the mask rule and its random
    state (if any) is on.  Removal searches drop masked candidate edges;
    addition searches include them.
    """
    e_count = len(esrc)
    a_count = assign_present.shape[0]
    out = np.empty(len(masks), dtype=np.int64)
    k = base.shape[1]
    seeds = list(seed_ids)
    for mi, mask in enumerate(masks):
        mask = int(mask)
        selected = np.empty(e_count, dtype=bool)
        for e in range(e_count):
            if cand_idx[e] < 0:
                selected[e] = bool(base_live[e])
            else:
                bit = mask >> int(cand_idx[e]) & 1
                selected[e] = (not bit) if removal else bool(bit)
        acc = 0
        for a in range(a_count):
            live = selected.copy()
            for e in range(e_count):
                if not live[e]:
                    continue
                if det_state[e] == 0:
                    live[e] = False
                elif det_state[e] < 0:
                    live[e] = bool(assign_present[a, rand_idx[e]])
            adj = [[] for _ in range(n)]
            for e in range(e_count):
                if live[e]:
                    adj[esrc[e]].append(edst[e])
            if objective in (CHI, NEWCHI):
                union = np.zeros(n, dtype=bool)
                for s in seeds:
                    union |= _bfs_reach(adj, s, n)
                if objective == NEWCHI:
                    union &= base.argmax(axis=1) != 0
                val = int(union.sum())
            else:
                rec = np.zeros((n, k), dtype=np.int64)
                for j, s in enumerate(seeds):
                    reach = _bfs_reach(adj, s, n)
                    rec[reach] += msgs[j]
                scores = dm1 * base + dmul * rec
                winners = scores.argmax(axis=1)
                for j, s in enumerate(seeds):
                    if bribed[j] >= 0:
                        winners[s] = bribed[j]
                votes = np.bincount(winners, minlength=k)
                val = int(votes[0]) if objective == VOTES0 \
                    else int(votes[0] - votes[1:].max())
            acc += int(assign_w[a]) * val
        out[mi] = acc
    return out
