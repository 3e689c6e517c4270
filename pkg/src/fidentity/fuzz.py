"""Seeded property checks over random inputs, reported as JSON.

Each case draws from its own ``random.Random`` seeded with the string
``"<seed>:<suite>:<index>"``, so a case can be replayed alone and results do
not depend on worker count or completion order.  Reports contain no timings
or other run-dependent data; the same arguments give byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .decompose import (
    adjugate_power,
    adjugate_solve,
    engel_check,
    fi_decompose,
    is_commuting,
    l2_reduce,
    standard_form,
)
from .errors import FIError, TheoremViolation
from .oracle import fi_decompose_oracle
from .polymat import charpoly_data, commutator, evaluate, generic_matrix
from .randgen import (
    planted_identity,
    random_l2_pair,
    random_nonzero_poly,
    random_poly,
    random_rational_matrix,
    random_scalar,
    random_sparse_trace_map,
    random_standard_coefficients,
    random_trace_map,
    standard_map,
)
from .tracemaps import TraceMap, product_rule_check

PRNG = "python random.Random (MT19937), case seed string '<seed>:<suite>:<index>'"


@dataclass(frozen=True)
class FuzzConfig:
    seed: int
    cases: int
    n: int
    d: int
    m: int = 1


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _ring(rng: random.Random, cfg: FuzzConfig):
    n = cfg.n
    f, g, h = (random_poly(rng, n, rng.randint(0, cfg.d)) for _ in range(3))
    g = g if g else random_nonzero_poly(rng, n, 1)
    ok = ((f * g) * h == f * (g * h) and f * g == g * f and f * (g + h) == f * g + f * h
          and (f * g).exact_divide(g) == f)
    point = {k: v for k, v in enumerate(sum(random_rational_matrix(rng, n), []))}
    ok = ok and (f * g).substitute(point) == f.substitute(point) * g.substitute(point)
    return ok, [f.to_json(), g.to_json(), h.to_json()], {}


def _charpoly(rng: random.Random, cfg: FuzzConfig):
    n = cfg.n
    point = random_rational_matrix(rng, n)
    data = charpoly_data(n)
    y = evaluate(generic_matrix(n), point)
    adj = evaluate(data.adjugate, point)
    det = data.determinant.substitute({k: v for k, v in enumerate(sum(point, []))})
    prod = [[sum(y[i][k] * adj[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    ok = all(prod[i][j] == (det if i == j else 0) for i in range(n) for j in range(n))
    return ok, [[str(v) for v in r] for r in point], {}


def _standard_form(rng: random.Random, cfg: FuzzConfig):
    coeffs = random_standard_coefficients(rng, cfg.n, cfg.d)
    q = standard_map(coeffs, cfg.d)
    form = standard_form(q)
    ok = [mu.poly for mu in form.coefficients] == [mu.poly for mu in coeffs]
    return ok, q.to_json(), {}


def _engel(rng: random.Random, cfg: FuzzConfig):
    commuting_input = rng.random() < 0.5
    if commuting_input:
        q = standard_map(random_standard_coefficients(rng, cfg.n, cfg.d), cfg.d)
    else:
        q = random_sparse_trace_map(rng, cfg.n, cfg.d)
    form = engel_check(q)
    commutes = is_commuting(q)
    y = generic_matrix(cfg.n)
    double = commutator(commutator(q.body, y), y).is_zero()
    ok = (form is not None) == commutes == double
    return ok, q.to_json(), {"commuting": commutes}


def _l2(rng: random.Random, cfg: FuzzConfig):
    d = max(cfg.d, 1)
    q, r = random_l2_pair(rng, cfg.n, d)
    p = l2_reduce(q, r, debug=True)
    return p.d == d - 1, [q.to_json(), r.to_json()], {}


def _adjugate(rng: random.Random, cfg: FuzzConfig):
    n, m = cfg.n, cfg.m
    mu = random_scalar(rng, n, cfg.d)
    q = TraceMap(n, cfg.d + m * (n - 1), adjugate_power(n, m) * mu.poly)
    lam = adjugate_solve(q, m)
    if mu.is_zero():
        ok = lam is None
    else:
        ok = lam is not None and lam.poly == mu.poly and q.d == lam.d + m * (n - 1)
    return ok, q.to_json(), {}


def _decompose(rng: random.Random, cfg: FuzzConfig):
    d = max(cfg.d, 1)
    inst = planted_identity(rng, cfg.n, cfg.m, d, zero_lambda=rng.random() < 0.25)
    dec = fi_decompose(inst.q_list, debug=True)
    oracle = fi_decompose_oracle(inst.q_list)
    ok = dec.verified and oracle.verified and dec.lam == inst.lam == oracle.lam
    return ok, [q.to_json() for q in inst.q_list], {"case": dec.case}


def _product_rule(rng: random.Random, cfg: FuzzConfig):
    d = max(cfg.d, 1)
    q1 = random_trace_map(rng, cfg.n, rng.randint(1, d), 2)
    q2 = random_trace_map(rng, cfg.n, rng.randint(1, d), 2)
    return product_rule_check(q1, q2), [q1.to_json(), q2.to_json()], {}


SUITES: dict[str, Callable] = {
    "ring": _ring,
    "charpoly": _charpoly,
    "standard-form": _standard_form,
    "engel": _engel,
    "l2": _l2,
    "adjugate": _adjugate,
    "decompose": _decompose,
    "product-rule": _product_rule,
}


def run_case(suite: str, index: int, cfg: FuzzConfig) -> dict:
    case_seed = f"{cfg.seed}:{suite}:{index}"
    rng = random.Random(case_seed)
    record = {"suite": suite, "index": index, "case_seed": case_seed}
    try:
        ok, inputs, detail = SUITES[suite](rng, cfg)
    except TheoremViolation as exc:
        record.update(status="violation", error=type(exc).__name__, message=exc.message)
        return record
    except FIError as exc:
        record.update(status="error", error=type(exc).__name__, message=str(exc))
        return record
    record.update(status="pass" if ok else "fail", input_digest=_digest(inputs), **detail)
    return record


def _run_packed(args) -> dict:
    return run_case(*args)


def run_fuzz(cfg: FuzzConfig, suites: list[str], workers: int = 1) -> dict:
    jobs = [(suite, i, cfg) for suite in suites for i in range(cfg.cases)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_packed, jobs, chunksize=4))
    else:
        results = [_run_packed(job) for job in jobs]
    summary = {key: sum(r["status"] == key for r in results)
               for key in ("pass", "fail", "error", "violation")}
    return {
        "header": {
            "tool": "fidentity fuzz",
            "seed": cfg.seed,
            "prng": PRNG,
            "suites": suites,
            "cases_per_suite": cfg.cases,
            "n": cfg.n,
            "d": cfg.d,
            "m": cfg.m,
        },
        "results": results,
        "summary": summary,
    }
