"""Theorem-level checkers that emit replayable JSON certificates.

Each checker returns a :class:`VerificationReport`. A counterexample witness is
a list of entries ``(N, weight, m, quantity, value)`` plus the relation that
failed; :func:`replay_witness` recomputes every entry from scratch.

"Valid k" always means ``s(N, 2k) >= 2``, since a_2 is undefined otherwise.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable

from heckelab import bounds, class_numbers, trace as tr
from heckelab.arith import is_prime
from heckelab.errors import PreconditionError
from heckelab.hecke_algebra import a2_value

SCHEMA_VERSION = 1
DEFAULT_CAP = 10

CLAIMS = ("T2_MONOTONE", "T4_NONREPEAT", "T3_LT_T2", "PRIME_LEVEL", "DISTINGUISH", "CONJ_SCAN")
VERDICTS = ("verified", "counterexample", "skipped")


@dataclass
class VerificationReport:
    claim_id: str
    parameters: dict
    verdict: str
    witnesses: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    runtime_ms: int = 0

    def __post_init__(self):
        if self.claim_id not in CLAIMS:
            raise ValueError(f"unknown claim {self.claim_id!r}")
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def ok(self) -> bool:
        return self.verdict != "counterexample"

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "claim_id": self.claim_id,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "details": self.details,
        }
        if include_timing:
            out["runtime_ms"] = self.runtime_ms
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(
            d["claim_id"],
            d["parameters"],
            d["verdict"],
            d.get("witnesses", []),
            d.get("details", {}),
            d.get("runtime_ms", 0),
        )

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        return cls.from_dict(json.loads(text))


def entry(N: int, weight: int, m: int, quantity: str) -> dict:
    """A witness entry with its value computed now."""
    return {"N": N, "weight": weight, "m": m, "quantity": quantity, "value": str(_quantity(N, weight, m, quantity))}


def _quantity(N: int, weight: int, m: int, quantity: str) -> int:
    if quantity == "a2":
        return a2_value(N, weight, m)
    if quantity == "trace":
        return tr.trace_value(N, weight, m)
    if quantity == "dim":
        return tr.dim(N, weight)
    raise ValueError(f"unknown quantity {quantity!r}")


def witness(relation: str, *entries: dict) -> dict:
    return {"relation": relation, "entries": list(entries)}


def replay_witness(w: dict) -> bool:
    """Recompute every entry of a witness; True when all values agree."""
    return all(
        str(_quantity(e["N"], e["weight"], e["m"], e["quantity"])) == e["value"] for e in w["entries"]
    )


def replay_report(report: VerificationReport) -> bool:
    return all(replay_witness(w) for w in report.witnesses)


def valid_ks(N: int, k_max: int, k_min: int = 1) -> list[int]:
    return [k for k in range(k_min, k_max + 1) if tr.dim(N, 2 * k) >= 2]


def _prepare_worker(max_n: int) -> None:
    class_numbers.preload(max_n)


def _map_levels(fn, levels: list[int], args: tuple, workers: int, max_n: int) -> list:
    """Apply ``fn(N, *args)`` to every level, in order; parallel when ``workers > 1``."""
    if workers <= 1 or len(levels) <= 1:
        _prepare_worker(max_n)
        return [fn(N, *args) for N in levels]
    with ProcessPoolExecutor(workers, initializer=_prepare_worker, initargs=(max_n,)) as pool:
        return list(pool.map(fn, levels, *[[a] * len(levels) for a in args], chunksize=max(1, len(levels) // (4 * workers))))


def _levels(N) -> list[int]:
    levels = [N] if isinstance(N, int) else sorted(set(N))
    for n in levels:
        if n < 1:
            raise PreconditionError(f"level must be positive, got {n}")
    return levels


def _finish(claim, params, witnesses, details, cap, t0, checked) -> VerificationReport:
    if witnesses:
        verdict = "counterexample"
        witnesses = witnesses[:cap]
    elif checked == 0:
        verdict = "verified"  # vacuous
        details["vacuous"] = True
    else:
        verdict = "verified"
    details["checks"] = checked
    return VerificationReport(claim, params, verdict, witnesses, details, int((time.perf_counter() - t0) * 1000))


def _t2_level(N: int, k_max: int, record: bool):
    ks = valid_ks(N, k_max)
    vals = {k: a2_value(N, 2 * k, 2) for k in ks}
    k_N = bounds.k_threshold(N, "T2")
    bad, tail_pairs, tail_bad, rec = [], 0, 0, []
    for k1, k2 in zip(ks, ks[1:]):
        if not vals[k2] < vals[k1]:
            bad.append(witness(
                "a2(T_2(N,2k2)) < a2(T_2(N,2k1)) with k1 < k2",
                entry(N, 2 * k1, 2, "a2"), entry(N, 2 * k2, 2, "a2"),
            ))
        if k1 >= k_N and k2 == k1 + 1:
            tail_pairs += 1
            tail_bad += vals[k2] >= vals[k1]
    if record:
        rec = [entry(N, 2 * k, 2, "a2") for k in ks]
    return N, bad, len(ks) - 1 if ks else 0, k_N, tail_pairs, tail_bad, rec


def verify_T2_monotone(
    N: int | Iterable[int], k_max: int, *, cap: int = DEFAULT_CAP, workers: int = 1, record_values: bool = False
) -> VerificationReport:
    """Check that a_2(T_2(N, 2k)) strictly decreases over valid ``k <= k_max``.

    Also counts the consecutive pairs with ``k >= k_threshold(N, T2)``, where
    the bound argument alone predicts a decrease; any failure there is reported
    under ``details["tail_exceptions"]`` and as a counterexample.
    """
    t0 = time.perf_counter()
    levels = _levels(N)
    for n in levels:
        if n % 2 == 0:
            raise PreconditionError(f"level must be odd, got {n}")
    results = _map_levels(_t2_level, levels, (k_max, record_values), workers, 16)
    witnesses, checked, k_N, tail_pairs, tail_bad, recorded = [], 0, {}, 0, 0, []
    for n, bad, c, kn, tp, tb, rec in results:
        witnesses.extend(bad)
        checked += c
        k_N[str(n)] = kn
        tail_pairs += tp
        tail_bad += tb
        recorded.extend(rec)
    details = {"k_N": k_N, "tail_pairs": tail_pairs, "tail_exceptions": tail_bad}
    if record_values:
        details["values"] = recorded
    params = {"levels": _range_desc(levels), "k_max": k_max, "m": 2}
    return _finish("T2_MONOTONE", params, witnesses, details, cap, t0, checked)


def _t4_level(N: int, k_max: int, record: bool):
    ks = valid_ks(N, k_max)
    vals = {k: a2_value(N, 2 * k, 4) for k in ks}
    bad = []
    seen: dict[int, int] = {}
    for k in ks:
        v = vals[k]
        if v in seen:
            k0 = seen[v]
            bad.append(witness(
                "a2(T_4(N,2k1)) != a2(T_4(N,2k2))",
                entry(N, 2 * k0, 4, "a2"), entry(N, 2 * k, 4, "a2"),
            ))
        else:
            seen[v] = k
    k_N = bounds.k_threshold(N, "T4")
    increasing = all(vals[a] < vals[b] for a, b in zip(ks, ks[1:]))
    tail = [k for k in ks if k >= k_N]
    tail_increasing = all(vals[a] < vals[b] for a, b in zip(tail, tail[1:]))
    if k_N in vals:
        early_below = all(vals[k] < vals[k_N] for k in ks if k < k_N)
    else:
        early_below = None  # k_N outside the scanned range
    flags = {
        "k_N": k_N,
        "increasing_on_range": increasing,
        "increasing_from_k_N": tail_increasing if tail else None,
        "early_below_k_N_value": early_below,
    }
    rec = [entry(N, 2 * k, 4, "a2") for k in ks] if record else []
    return N, bad, len(ks), flags, rec


def verify_T4_nonrepeat(
    N: int | Iterable[int], k_max: int, *, cap: int = DEFAULT_CAP, workers: int = 1, record_values: bool = False
) -> VerificationReport:
    """Check that a_2(T_4(N, 2k)) takes no repeated value over valid ``k <= k_max``.

    Monotonicity is recorded per level but is not part of the verdict: the
    sequence need not increase for small ``k``.
    """
    t0 = time.perf_counter()
    levels = _levels(N)
    for n in levels:
        if n % 2 == 0:
            raise PreconditionError(f"level must be odd, got {n}")
    results = _map_levels(_t4_level, levels, (k_max, record_values), workers, 64)
    witnesses, checked, flags, recorded = [], 0, {}, []
    for n, bad, c, f, rec in results:
        witnesses.extend(bad)
        checked += max(0, c - 1)
        flags[str(n)] = f
        recorded.extend(rec)
    details = {"levels": flags}
    if record_values:
        details["values"] = recorded
    params = {"levels": _range_desc(levels), "k_max": k_max, "m": 4}
    return _finish("T4_NONREPEAT", params, witnesses, details, cap, t0, checked)


def verify_T3_lt_T2(k_max: int, k_min: int = 12, *, cap: int = DEFAULT_CAP) -> VerificationReport:
    """Check a_2(T_3(1, 2k)) < a_2(T_2(1, 2k)) for ``k_min <= k <= k_max``."""
    if k_max < k_min:
        raise PreconditionError(f"k_max {k_max} < k_min {k_min}")
    t0 = time.perf_counter()
    class_numbers.preload(36)
    witnesses, skipped, checked = [], [], 0
    for k in range(k_min, k_max + 1):
        if tr.dim(1, 2 * k) < 2:
            skipped.append(k)
            continue
        checked += 1
        if not a2_value(1, 2 * k, 3) < a2_value(1, 2 * k, 2):
            witnesses.append(witness("a2(T_3(1,2k)) < a2(T_2(1,2k))", entry(1, 2 * k, 3, "a2"), entry(1, 2 * k, 2, "a2")))
            if len(witnesses) >= cap:
                break
    params = {"k_min": k_min, "k_max": k_max, "N": 1}
    return _finish("T3_LT_T2", params, witnesses, {"skipped_k": skipped}, cap, t0, checked)


THEOREM_PRIME_LEVEL_K = 58


def verify_prime_level(
    k: int, primes: Iterable[int], include_one: bool = True, *, cap: int = DEFAULT_CAP
) -> VerificationReport:
    """Check a_2(T_2(p, 2k)) > a_2(T_2(q, 2k)) for every pair ``p < q`` of levels."""
    primes = sorted(set(primes))
    for p in primes:
        if p == 2 or not is_prime(p):
            raise PreconditionError(f"not an odd prime: {p}")
    levels = ([1] if include_one else []) + [p for p in primes if p != 1]
    t0 = time.perf_counter()
    class_numbers.preload(16)
    vals = {p: a2_value(p, 2 * k, 2) for p in levels}
    witnesses, checked = [], 0
    for p, q in combinations(levels, 2):
        checked += 1
        if not vals[p] > vals[q]:
            witnesses.append(witness("a2(T_2(p,2k)) > a2(T_2(q,2k)) with p < q", entry(p, 2 * k, 2, "a2"), entry(q, 2 * k, 2, "a2")))
            if len(witnesses) >= cap:
                break
    details = {"theorem_mode": k >= THEOREM_PRIME_LEVEL_K}
    if k < THEOREM_PRIME_LEVEL_K:
        details["note"] = f"exploratory: k < {THEOREM_PRIME_LEVEL_K}"
    params = {"k": k, "levels": levels, "include_one": include_one}
    return _finish("PRIME_LEVEL", params, witnesses, details, cap, t0, checked)


def verify_distinguish(m: int, k_max: int, *, cap: int = DEFAULT_CAP) -> VerificationReport:
    """Check that the eigenvalue multisets of T_m(1, 2k) differ across weights.

    Multisets are compared through ``(dim, trace, a_2)``; one-dimensional spaces
    by the trace alone. A signature collision is reported for manual review
    (it does not prove the multisets equal). The non-repetition check the
    argument relies on is re-run and must also pass.
    """
    if m not in (2, 4):
        raise PreconditionError(f"m must be 2 or 4, got {m}")
    t0 = time.perf_counter()
    params = {"m": m, "k_max": k_max, "N": 1}
    weights = [2 * k for k in range(1, k_max + 1) if tr.dim(1, 2 * k) >= 1]
    if not weights:
        return VerificationReport("DISTINGUISH", params, "skipped", [], {"reason": "no cusp forms"}, int((time.perf_counter() - t0) * 1000))
    class_numbers.preload(4 * m * m)
    sigs = {}
    for w in weights:
        d = tr.dim(1, w)
        sigs[w] = (d, tr.trace_value(1, w, m), a2_value(1, w, m) if d >= 2 else None)
    witnesses, checked = [], 0
    for w1, w2 in combinations(weights, 2):
        if sigs[w1][0] != sigs[w2][0]:
            continue
        checked += 1
        if sigs[w1] == sigs[w2]:
            q = ("trace",) if sigs[w1][0] == 1 else ("trace", "a2")
            witnesses.append(witness(
                "signature collision (manual review)",
                *[entry(1, w, m, x) for w in (w1, w2) for x in q],
            ))
    one_dim = [w for w in weights if sigs[w][0] == 1]
    sub = verify_T2_monotone(1, k_max) if m == 2 else verify_T4_nonrepeat(1, k_max)
    witnesses.extend(sub.witnesses)
    details = {
        "one_dimensional_weights": one_dim,
        "one_dimensional_traces": {str(w): str(sigs[w][1]) for w in one_dim},
        "nonrepetition": {"claim_id": sub.claim_id, "verdict": sub.verdict},
    }
    return _finish("DISTINGUISH", params, witnesses, details, cap, t0, checked + sub.details["checks"])


def _conj_level(N: int, m: int, k_max: int):
    ks = valid_ks(N, k_max)
    seen: dict[int, int] = {}
    bad = []
    for k in ks:
        v = a2_value(N, 2 * k, m)
        if v in seen:
            bad.append(witness(
                "a2(T_m(N,2k1)) != a2(T_m(N,2k2))",
                entry(N, 2 * seen[v], m, "a2"), entry(N, 2 * k, m, "a2"),
            ))
        else:
            seen[v] = k
    return N, bad, max(0, len(ks) - 1)


def conjecture_scan(
    m: int, levels: Iterable[int], k_max: int, *, cap: int = DEFAULT_CAP, workers: int = 1
) -> VerificationReport:
    """Search for repeated a_2(T_m(N, 2k)) values as ``k`` varies, per level."""
    if m < 2:
        raise PreconditionError(f"m must be >= 2, got {m}")
    t0 = time.perf_counter()
    levels = _levels(levels)
    for n in levels:
        if gcd(n, m) != 1:
            raise PreconditionError(f"gcd(N, m) != 1 for N={n}, m={m}")
    results = _map_levels(_conj_level, levels, (m, k_max), workers, 4 * m * m)
    witnesses, checked = [], 0
    for _, bad, c in results:
        witnesses.extend(bad)
        checked += c
    params = {"m": m, "levels": _range_desc(levels), "k_max": k_max}
    return _finish("CONJ_SCAN", params, witnesses, {}, cap, t0, checked)


def _range_desc(levels: list[int]):
    """Compact description: ``{"from", "to", "step"}`` for arithmetic runs, else the list."""
    if len(levels) >= 3:
        step = levels[1] - levels[0]
        if all(b - a == step for a, b in zip(levels, levels[1:])):
            return {"from": levels[0], "to": levels[-1], "step": step, "count": len(levels)}
    return list(levels)
