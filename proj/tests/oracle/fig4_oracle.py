#!/usr/bin/env python3
"""Exact-rational oracle for the confirmation-scheduling model.

Prices a policy by solving the absorbing Markov chain over verified states
(expected cost to absorption, (I - P) v = c) with Fractions, then takes the
minimum over every forward policy. Shares no code path with the C++ solver;
the values it prints are frozen into tests/solver_test.cpp and
tests/oracle_test.cpp.
"""
from fractions import Fraction as F
from itertools import product


def chain_costs(p, tc, td, tk, tr, policy, with_correct):
    n = len(p)
    # Unknowns v[0..n-1]; v[n] = 0.
    rows = []
    for i in range(n):
        j = policy[i]
        coef = [F(0)] * n
        const = F(tc[j - 1])
        surv = F(1)
        for m in range(i + 1, j + 1):
            q = surv * (1 - p[m - 1])
            cost = sum(td[k - 1] for k in range(i + 1, m + 1))
            if with_correct:
                cost += tk[m - 1]
            cost += sum(tr[k - 1] for k in range(m, j + 1))
            const += q * cost
            coef[m - 1] += q
            surv *= p[m - 1]
        if j < n:
            coef[j] += surv
        row = [(-c) for c in coef]
        row[i] += 1
        rows.append(row + [const])
    # Gauss-Jordan on rationals.
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)] + [F(0)]


def best(p, tc, td, tk, tr, with_correct):
    n = len(p)
    choices = [range(i + 1, n + 1) for i in range(n)]
    best_v, best_pol = None, None
    per_state = [None] * n
    for pol in product(*choices):
        v = chain_costs(p, tc, td, tk, tr, pol, with_correct)
        if best_v is None or v[0] < best_v[0]:
            best_v, best_pol = v, pol
        for i in range(n):
            if per_state[i] is None or v[i] < per_state[i][0]:
                per_state[i] = (v[i], pol[i])
    return best_v, best_pol, per_state


def policy_iteration(p, tc, td, tk, tr, with_correct):
    """Howard policy iteration; each policy priced by the exact chain solve."""
    n = len(p)
    pol = [n] * n
    while True:
        v = chain_costs(p, tc, td, tk, tr, pol, with_correct)
        improved = list(pol)
        for i in range(n):
            best_j, best_q = pol[i], None
            for j in range(i + 1, n + 1):
                trial = list(pol)
                trial[i] = j
                # One-step lookahead with v held fixed.
                q = chain_row(p, tc, td, tk, tr, i, j, v, with_correct)
                if best_q is None or q < best_q:
                    best_q, best_j = q, j
            if chain_row(p, tc, td, tk, tr, i, pol[i], v, with_correct) <= best_q:
                best_j = pol[i]
            improved[i] = best_j
        if improved == pol:
            return v, pol
        pol = improved


def chain_row(p, tc, td, tk, tr, i, j, v, with_correct):
    total = F(tc[j - 1])
    surv = F(1)
    for m in range(i + 1, j + 1):
        q = surv * (1 - p[m - 1])
        cost = sum(td[k - 1] for k in range(i + 1, m + 1))
        if with_correct:
            cost += tk[m - 1]
        cost += sum(tr[k - 1] for k in range(m, j + 1))
        total += q * (cost + v[m - 1])
        surv *= p[m - 1]
    return total + surv * v[j]


def uniform(n, pa, conf, diag, corr, redo):
    return ([F(pa)] * n, [F(conf)] * n, [F(diag)] * n, [F(corr)] * n,
            [F(redo)] * n)


if __name__ == "__main__":
    for name, pa, redo in (("shopping", "0.875", 20), ("image-editing", "0.91", 10),
                           ("overcooked", "0.93", 10)):
        args = uniform(12, pa, 8, 4, 10, redo)
        v, pol = policy_iteration(*args, False)
        n = 12
        end = chain_costs(*args, [n] * n, False)
        every = chain_costs(*args, list(range(1, n + 1)), False)
        print(name, "V_opt %.15f" % float(v[0]), "policy", pol,
              "V_end %.15f" % float(end[0]), "V_every %.15f" % float(every[0]))
    p = [F(7, 10), F(7, 10), F(9, 10), F(85, 100), F(85, 100)]
    ones = [F(1)] * 5
    for wc in (False, True):
        v, pol, per_state = best(p, ones, ones, ones, ones, wc)
        print("with_correct" if wc else "without_correct")
        print("  best policy from 0:", pol)
        print("  per-state optimum:", [(float(a), b) for a, b in per_state])
        print("  V:", ["%.15f" % float(x) for x in v])
    for name, pol in (("end", (5, 5, 5, 5, 5)), ("every", (1, 2, 3, 4, 5))):
        v = chain_costs(p, ones, ones, ones, ones, pol, False)
        print(name, ["%.15f" % float(x) for x in v])
