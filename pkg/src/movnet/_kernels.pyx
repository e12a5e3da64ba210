"""Compiled backend for the batch evaluation kernels.

Mirrors movnet._purekernels; see that module for the contract.  Everything
here works on integer-scaled scores, so results are exact.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

MOV, CHI, VOTES0, NEWCHI = 0, 1, 2, 3

NAME = "cython"

ctypedef cnp.int64_t i64
ctypedef cnp.uint64_t u64
ctypedef cnp.uint8_t u8
ctypedef cnp.int8_t i8


def closure_stack(int n, i64[::1] esrc, i64[::1] edst, u8[:, ::1] present):
    cdef Py_ssize_t g_count = present.shape[0]
    cdef Py_ssize_t e_count = esrc.shape[0]
    out_arr = np.zeros((g_count, n, n), dtype=np.uint8)
    cdef u8[:, :, ::1] out = out_arr
    stack_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] stack = stack_arr
    adj_ptr_arr = np.empty(n + 1, dtype=np.int64)
    adj_dst_arr = np.empty(e_count if e_count else 1, dtype=np.int64)
    cdef i64[::1] adj_ptr = adj_ptr_arr
    cdef i64[::1] adj_dst = adj_dst_arr
    deg_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] deg = deg_arr
    cdef Py_ssize_t g, e, u, v, s, top
    cdef u8 *row
    for g in range(g_count):
        # rebuild CSR adjacency for this live graph
        for u in range(n):
            deg[u] = 0
        for e in range(e_count):
            if present[g, e]:
                deg[esrc[e]] += 1
        adj_ptr[0] = 0
        for u in range(n):
            adj_ptr[u + 1] = adj_ptr[u] + deg[u]
            deg[u] = 0
        for e in range(e_count):
            if present[g, e]:
                u = esrc[e]
                adj_dst[adj_ptr[u] + deg[u]] = edst[e]
                deg[u] += 1
        for s in range(n):
            row = &out[g, s, 0]
            row[s] = 1
            stack[0] = s
            top = 1
            while top:
                top -= 1
                u = stack[top]
                for e in range(adj_ptr[u], adj_ptr[u + 1]):
                    v = adj_dst[e]
                    if not row[v]:
                        row[v] = 1
                        stack[top] = v
                        top += 1
    return out_arr


def seed_reach_stack(int n, i64[::1] esrc, i64[::1] edst, u8[:, ::1] present,
                     i64[::1] seeds):
    full = closure_stack(n, esrc, edst, present)
    return np.ascontiguousarray(full[:, np.asarray(seeds), :])


cdef inline i64 _tally_value(i64[::1] votes, Py_ssize_t k, int objective) nogil:
    cdef i64 best
    cdef Py_ssize_t c
    if objective == 2:  # VOTES0
        return votes[0]
    best = votes[1]
    for c in range(2, k):
        if votes[c] > best:
            best = votes[c]
    return votes[0] - best


def assignment_graph_values(u8[:, :, ::1] reach, i64[:, ::1] base,
                            i64 dm1, i64 dmul, i64[::1] seed_ids,
                            i64[:, ::1] msgs, i64[::1] bribed, int objective):
    """Objective value on every live graph for one fixed assignment."""
    cdef Py_ssize_t g_count = reach.shape[0]
    cdef Py_ssize_t s_count = reach.shape[1]
    cdef Py_ssize_t n = reach.shape[2]
    cdef Py_ssize_t k = base.shape[1]
    out_arr = np.empty(g_count, dtype=np.int64)
    cdef i64[::1] out = out_arr

    base_winner_arr = np.asarray(base).argmax(axis=1).astype(np.int64)
    cdef i64[::1] base_winner = base_winner_arr
    base_votes_arr = np.bincount(base_winner_arr, minlength=k).astype(np.int64)
    cdef i64[::1] base_votes = base_votes_arr

    rec_arr = np.zeros((n, k), dtype=np.int64)
    cdef i64[:, ::1] rec = rec_arr
    votes_arr = np.empty(k, dtype=np.int64)
    cdef i64[::1] votes = votes_arr
    stamp_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] stamp = stamp_arr
    infl_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] infl = infl_arr
    pin_arr = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] pin = pin_arr

    cdef Py_ssize_t g, j, v, c, cnt, idx, w
    cdef i64 cur = 0
    cdef i64 best, sc, val
    for j in range(s_count):
        if bribed[j] >= 0:
            pin[seed_ids[j]] = bribed[j]
    for g in range(g_count):
        cur += 1
        cnt = 0
        for j in range(s_count):
            for v in range(n):
                if reach[g, j, v]:
                    if stamp[v] != cur:
                        stamp[v] = cur
                        infl[cnt] = v
                        cnt += 1
                    for c in range(k):
                        rec[v, c] += msgs[j, c]
        if objective == 1:  # CHI
            out[g] = cnt
        elif objective == 3:  # NEWCHI
            val = 0
            for idx in range(cnt):
                if base_winner[infl[idx]] != 0:
                    val += 1
            out[g] = val
        else:
            for c in range(k):
                votes[c] = base_votes[c]
            for idx in range(cnt):
                v = infl[idx]
                if pin[v] >= 0:
                    w = pin[v]
                else:
                    best = dm1 * base[v, 0] + dmul * rec[v, 0]
                    w = 0
                    for c in range(1, k):
                        sc = dm1 * base[v, c] + dmul * rec[v, c]
                        if sc > best:
                            best = sc
                            w = c
                votes[base_winner[v]] -= 1
                votes[w] += 1
            out[g] = _tally_value(votes, k, objective)
        for idx in range(cnt):
            v = infl[idx]
            for c in range(k):
                rec[v, c] = 0
    return out_arr


def plan_values(u8[:, :, ::1] reach, i64[::1] weights, i64[:, ::1] base,
                i64 dm1, i64 dmul, i64[::1] plan_ptr, i64[::1] plan_seed,
                i64[:, ::1] plan_msg, i64[::1] plan_bribed, int objective):
    """Weighted objective sum per plan; reach holds full closures per graph."""
    cdef Py_ssize_t p_count = plan_ptr.shape[0] - 1
    cdef Py_ssize_t g_count = reach.shape[0]
    cdef Py_ssize_t n = reach.shape[2]
    cdef Py_ssize_t k = base.shape[1]
    out_arr = np.empty(p_count, dtype=np.int64)
    cdef i64[::1] out = out_arr

    base_winner_arr = np.asarray(base).argmax(axis=1).astype(np.int64)
    cdef i64[::1] base_winner = base_winner_arr
    base_votes_arr = np.bincount(base_winner_arr, minlength=k).astype(np.int64)
    cdef i64[::1] base_votes = base_votes_arr

    rec_arr = np.zeros((n, k), dtype=np.int64)
    cdef i64[:, ::1] rec = rec_arr
    votes_arr = np.empty(k, dtype=np.int64)
    cdef i64[::1] votes = votes_arr
    stamp_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] stamp = stamp_arr
    infl_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] infl = infl_arr
    pin_stamp_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] pin_stamp = pin_stamp_arr
    pin_val_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] pin_val = pin_val_arr

    cdef Py_ssize_t p, g, t, v, c, cnt, idx, w, s
    cdef i64 cur = 0, pcur = 0
    cdef i64 best, sc, acc, val
    for p in range(p_count):
        pcur += 1
        for t in range(plan_ptr[p], plan_ptr[p + 1]):
            if plan_bribed[t] >= 0:
                pin_stamp[plan_seed[t]] = pcur
                pin_val[plan_seed[t]] = plan_bribed[t]
        acc = 0
        for g in range(g_count):
            cur += 1
            cnt = 0
            for t in range(plan_ptr[p], plan_ptr[p + 1]):
                s = plan_seed[t]
                for v in range(n):
                    if reach[g, s, v]:
                        if stamp[v] != cur:
                            stamp[v] = cur
                            infl[cnt] = v
                            cnt += 1
                        for c in range(k):
                            rec[v, c] += plan_msg[t, c]
            if objective == 1:  # CHI
                val = cnt
            elif objective == 3:  # NEWCHI
                val = 0
                for idx in range(cnt):
                    if base_winner[infl[idx]] != 0:
                        val += 1
            else:
                for c in range(k):
                    votes[c] = base_votes[c]
                for idx in range(cnt):
                    v = infl[idx]
                    if pin_stamp[v] == pcur:
                        w = pin_val[v]
                    else:
                        best = dm1 * base[v, 0] + dmul * rec[v, 0]
                        w = 0
                        for c in range(1, k):
                            sc = dm1 * base[v, c] + dmul * rec[v, c]
                            if sc > best:
                                best = sc
                                w = c
                    votes[base_winner[v]] -= 1
                    votes[w] += 1
                val = _tally_value(votes, k, objective)
            acc += weights[g] * val
            for idx in range(cnt):
                v = infl[idx]
                for c in range(k):
                    rec[v, c] = 0
        out[p] = acc
    return out_arr


def subset_values(int n, i64[:, ::1] base, i64 dm1, i64 dmul,
                  i64[::1] esrc, i64[::1] edst, i8[::1] det_state,
                  i64[::1] rand_idx, i64[::1] cand_idx, u8[::1] base_live,
                  int removal, u64[::1] masks, u8[:, ::1] assign_present,
                  i64[::1] assign_w, i64[::1] seed_ids, i64[:, ::1] msgs,
                  i64[::1] bribed, int objective):
    """Weighted objective per candidate-edge subset mask (removal/addition)."""
    cdef Py_ssize_t m_count = masks.shape[0]
    cdef Py_ssize_t a_count = assign_present.shape[0]
    cdef Py_ssize_t e_count = esrc.shape[0]
    cdef Py_ssize_t s_count = seed_ids.shape[0]
    cdef Py_ssize_t k = base.shape[1]
    out_arr = np.empty(m_count, dtype=np.int64)
    cdef i64[::1] out = out_arr

    base_winner_arr = np.asarray(base).argmax(axis=1).astype(np.int64)
    cdef i64[::1] base_winner = base_winner_arr
    base_votes_arr = np.bincount(base_winner_arr, minlength=k).astype(np.int64)
    cdef i64[::1] base_votes = base_votes_arr

    # static CSR over the edge universe; liveness is tested per edge id
    adj_ptr_arr = np.zeros(n + 1, dtype=np.int64)
    cdef i64[::1] adj_ptr = adj_ptr_arr
    adj_eid_arr = np.empty(e_count if e_count else 1, dtype=np.int64)
    cdef i64[::1] adj_eid = adj_eid_arr
    deg_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] deg = deg_arr
    cdef Py_ssize_t e, u
    for e in range(e_count):
        deg[esrc[e]] += 1
    for u in range(n):
        adj_ptr[u + 1] = adj_ptr[u] + deg[u]
        deg[u] = 0
    for e in range(e_count):
        u = esrc[e]
        adj_eid[adj_ptr[u] + deg[u]] = e
        deg[u] += 1

    live_arr = np.empty(e_count if e_count else 1, dtype=np.uint8)
    cdef u8[::1] live = live_arr
    sel_arr = np.empty(e_count if e_count else 1, dtype=np.uint8)
    cdef u8[::1] sel = sel_arr
    rec_arr = np.zeros((n, k), dtype=np.int64)
    cdef i64[:, ::1] rec = rec_arr
    votes_arr = np.empty(k, dtype=np.int64)
    cdef i64[::1] votes = votes_arr
    stamp_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] stamp = stamp_arr
    seen_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] seen = seen_arr
    infl_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] infl = infl_arr
    stack_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] stack = stack_arr
    pin_arr = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] pin = pin_arr

    cdef Py_ssize_t mi, a, j, v, c, cnt, idx, w, top, s, ei
    cdef u64 mask
    cdef i64 cur = 0, bcur = 0
    cdef i64 best, sc, acc, val
    cdef int bit

    for j in range(s_count):
        if bribed[j] >= 0:
            pin[seed_ids[j]] = bribed[j]

    for mi in range(m_count):
        mask = masks[mi]
        for e in range(e_count):
            if cand_idx[e] < 0:
                sel[e] = base_live[e]
            else:
                bit = (mask >> <u64>cand_idx[e]) & 1
                sel[e] = (1 - bit) if removal else bit
        acc = 0
        for a in range(a_count):
            for e in range(e_count):
                if not sel[e]:
                    live[e] = 0
                elif det_state[e] == 1:
                    live[e] = 1
                elif det_state[e] == 0:
                    live[e] = 0
                else:
                    live[e] = assign_present[a, rand_idx[e]]
            cur += 1
            cnt = 0
            for j in range(s_count):
                s = seed_ids[j]
                bcur += 1
                seen[s] = bcur
                stack[0] = s
                top = 1
                while top:
                    top -= 1
                    v = stack[top]
                    if stamp[v] != cur:
                        stamp[v] = cur
                        infl[cnt] = v
                        cnt += 1
                    for c in range(k):
                        rec[v, c] += msgs[j, c]
                    for idx in range(adj_ptr[v], adj_ptr[v + 1]):
                        ei = adj_eid[idx]
                        if live[ei] and seen[edst[ei]] != bcur:
                            seen[edst[ei]] = bcur
                            stack[top] = edst[ei]
                            top += 1
            if objective == 1:  # CHI
                val = cnt
            elif objective == 3:  # NEWCHI
                val = 0
                for idx in range(cnt):
                    if base_winner[infl[idx]] != 0:
                        val += 1
            else:
                for c in range(k):
                    votes[c] = base_votes[c]
                for idx in range(cnt):
                    v = infl[idx]
                    if pin[v] >= 0:
                        w = pin[v]
                    else:
                        best = dm1 * base[v, 0] + dmul * rec[v, 0]
                        w = 0
                        for c in range(1, k):
                            sc = dm1 * base[v, c] + dmul * rec[v, c]
                            if sc > best:
                                best = sc
                                w = c
                    votes[base_winner[v]] -= 1
                    votes[w] += 1
                val = _tally_value(votes, k, objective)
            acc += assign_w[a] * val
            for idx in range(cnt):
                v = infl[idx]
                for c in range(k):
                    rec[v, c] = 0
        out[mi] = acc
    return out_arr
