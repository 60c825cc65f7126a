# Compiled inner loops. Every kernel mirrors a pure-Python routine elsewhere in
# the package and works on the raw Graph / Distribution arrays.
import numpy as np
from numba import njit


@njit(cache=True)
def lowd_sweep(eu, ev, w, fu, loads):
    for e in range(eu.shape[0]):
        u = eu[e]
        v = ev[e]
        lu = loads[u]
        lv = loads[v]
        if lu > lv:
            d = min((lu - lv) / 2.0, fu[e])
            fu[e] -= d
            loads[u] = lu - d
            loads[v] = lv + d
        elif lv > lu:
            d = min((lv - lu) / 2.0, w[e] - fu[e])
            if d > 0.0:
                fu[e] = min(fu[e] + d, w[e])
                loads[u] = lu + d
                loads[v] = lv - d


@njit(cache=True)
def lowd_sweep_audited(eu, ev, w, fu, loads, qp_slack):
    """One sweep that recomputes sum(load**2) around every update.

    Returns (worst increase, strict-decrease misses, max conservation error).
    A miss is a positive step whose float decrease is not visible while the
    exact decrease exceeds ``qp_slack``.
    """
    worst = -np.inf
    misses = 0
    cons = 0.0
    qp = 0.0
    for i in range(loads.shape[0]):
        qp += loads[i] * loads[i]
    for e in range(eu.shape[0]):
        u = eu[e]
        v = ev[e]
        lu = loads[u]
        lv = loads[v]
        d = 0.0
        if lu > lv:
            d = min((lu - lv) / 2.0, fu[e])
            fu[e] -= d
            loads[u] = lu - d
            loads[v] = lv + d
            gap = lu - lv
        elif lv > lu:
            d = min((lv - lu) / 2.0, w[e] - fu[e])
            if d > 0.0:
                fu[e] = min(fu[e] + d, w[e])
                loads[u] = lu + d
                loads[v] = lv - d
            gap = lv - lu
        else:
            gap = 0.0
        after = 0.0
        for i in range(loads.shape[0]):
            after += loads[i] * loads[i]
        delta = after - qp
        if delta > worst:
            worst = delta
        if d > 0.0 and not (after < qp) and 2.0 * d * (gap - d) > qp_slack:
            misses += 1
        fv = w[e] - fu[e]
        err = abs(fu[e] + fv - w[e])
        if fu[e] < 0.0:
            err = max(err, -fu[e])
        if fv < 0.0:
            err = max(err, -fv)
        cons = max(cons, err)
        qp = after
    return worst, misses, cons


@njit(cache=True)
def recompute_loads(n, eu, ev, w, fu):
    loads = np.zeros(n)
    for e in range(eu.shape[0]):
        loads[eu[e]] += fu[e]
        loads[ev[e]] += w[e] - fu[e]
    return loads


@njit(cache=True)
def peel_best_prefix(order, indptr, adj_nodes, adj_edges, w, total_weight):
    """Remove nodes in ``order``; return (#removed before best set, best density).

    Equal densities keep the earlier, larger set.
    """
    n = order.shape[0]
    alive = np.ones(n, dtype=np.bool_)
    remaining = total_weight
    best = remaining / n
    best_k = 0
    for i in range(n - 1):
        x = order[i]
        alive[x] = False
        for j in range(indptr[x], indptr[x + 1]):
            if alive[adj_nodes[j]]:
                remaining -= w[adj_edges[j]]
        dens = remaining / (n - i - 1)
        if dens > best:
            best = dens
            best_k = i + 1
    return best_k, best


@njit(cache=True)
def lowd_run(eu, ev, w, fu, loads, indptr, adj_nodes, adj_edges, total_weight,
             max_sweeps, cert_thr, plateau_tol, refresh, trace, best_mask):
    """Run up to ``max_sweeps`` sweeps, filling ``trace`` rows 0..t.

    ``trace`` columns: sweep, max load, best density so far, sum of squared
    loads. Stops after the first row whose certificate gap falls below
    ``cert_thr`` (if > 0) or whose squared-load change is below
    ``plateau_tol`` (if > 0). Returns the number of sweeps performed.
    """
    n = loads.shape[0]
    best = -1.0
    t = 0
    prev_qp = np.inf
    while True:
        if refresh > 0 and t > 0 and t % refresh == 0:
            fresh = recompute_loads(n, eu, ev, w, fu)
            for i in range(n):
                loads[i] = fresh[i]
        order = np.argsort(loads, kind="mergesort")
        k, dens = peel_best_prefix(order, indptr, adj_nodes, adj_edges, w, total_weight)
        if dens > best:
            best = dens
            for i in range(n):
                best_mask[i] = True
            for i in range(k):
                best_mask[order[i]] = False
        dual = loads.max()
        qp = 0.0
        for i in range(n):
            qp += loads[i] * loads[i]
        trace[t, 0] = t
        trace[t, 1] = dual
        trace[t, 2] = best
        trace[t, 3] = qp
        if t >= max_sweeps:
            break
        if cert_thr > 0.0 and dual - best < cert_thr:
            break
        if plateau_tol > 0.0 and abs(prev_qp - qp) < plateau_tol:
            break
        prev_qp = qp
        lowd_sweep(eu, ev, w, fu, loads)
        t += 1
    return t


@njit(cache=True)
def peel_min_key(n, indptr, adj_nodes, adj_edges, w, carry):
    """Greedy peeling by minimum (carry + induced degree), ties by lowest id.

    Binary heap with lazy deletion. Returns the removal order and the
    induced degree of each node at its removal time.
    """
    deg = np.zeros(n)
    for v in range(n):
        for j in range(indptr[v], indptr[v + 1]):
            deg[v] += w[adj_edges[j]]
    alive = np.ones(n, dtype=np.bool_)
    cap = n + adj_nodes.shape[0] + 1
    hk = np.empty(cap)
    hv = np.empty(cap, dtype=np.int64)
    size = 0
    for v in range(n):
        size = _heap_push(hk, hv, size, carry[v] + deg[v], v)
    order = np.empty(n, dtype=np.int64)
    at_removal = np.empty(n)
    done = 0
    while done < n:
        key, v, size = _heap_pop(hk, hv, size)
        if not alive[v] or key != carry[v] + deg[v]:
            continue
        alive[v] = False
        order[done] = v
        at_removal[v] = deg[v]
        done += 1
        for j in range(indptr[v], indptr[v + 1]):
            x = adj_nodes[j]
            if alive[x]:
                deg[x] -= w[adj_edges[j]]
                size = _heap_push(hk, hv, size, carry[x] + deg[x], x)
    return order, at_removal


@njit(cache=True)
def _less(hk, hv, a, b):
    return hk[a] < hk[b] or (hk[a] == hk[b] and hv[a] < hv[b])


@njit(cache=True)
def _heap_push(hk, hv, size, key, val):
    i = size
    hk[i] = key
    hv[i] = val
    while i > 0:
        p = (i - 1) // 2
        if _less(hk, hv, i, p):
            hk[i], hk[p] = hk[p], hk[i]
            hv[i], hv[p] = hv[p], hv[i]
            i = p
        else:
            break
    return size + 1


@njit(cache=True)
def _heap_pop(hk, hv, size):
    key = hk[0]
    val = hv[0]
    size -= 1
    hk[0] = hk[size]
    hv[0] = hv[size]
    i = 0
    while True:
        l = 2 * i + 1
        r = l + 1
        m = i
        if l < size and _less(hk, hv, l, m):
            m = l
        if r < size and _less(hk, hv, r, m):
            m = r
        if m == i:
            break
        hk[i], hk[m] = hk[m], hk[i]
        hv[i], hv[m] = hv[m], hv[i]
        i = m
    return key, val, size
