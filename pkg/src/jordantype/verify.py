"""Estimate the generic Jordan type Q(P) of the nilpotent commutator and run
the consistency checks relating it to the poset invariants."""

from __future__ import annotations

import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .commutator import core, gf
from .greene import greene_lambda
from .partitions import Dominance, Partition, all_partitions, dominance_cmp, dominates, parse_partition, r_P
from .poset import build_diagram, longest_chain
from .uchains import lambda_U, maximal_specs, oblak_recursion, u_sequence

EXHAUSTIVE_DIM_LIMIT = 14
SWEEP_MAX_N = 12
_BATCH = 8192

PASS, FAIL, FINDING, SKIP = "pass", "fail", "finding", "skip"


def _key(P: Partition) -> tuple:
    return tuple(-x for x in P.parts)


def dominance_max(types) -> tuple[Partition, bool]:
    """The element dominating all others, or (a lexicographically largest
    maximal element, False) when there is none."""
    types = sorted(set(types), key=_key)
    top = types[0]
    return top, all(dominates(top, t) for t in types)


@dataclass(frozen=True)
class QEstimate:
    partition: Partition
    samples: int
    field: int
    estimate: Partition
    histogram: dict[str, int]
    dominates_all: bool = True

    @property
    def finding(self) -> str | None:
        if self.dominates_all:
            return None
        return f"sampled types have no common upper bound among {sorted(self.histogram)}"

    def to_json(self) -> dict:
        return {"partition": str(self.partition), "samples": self.samples, "field": self.field,
                "estimate": str(self.estimate), "histogram": self.histogram,
                "dominates_all": self.dominates_all}


def _histogram(types) -> dict[str, int]:
    counts = Counter(types)
    return {str(t): counts[t] for t in sorted(counts, key=_key)}


def sample_types(P: Partition, p: int, samples: int, seed) -> list[Partition]:
    rng = np.random.default_rng(seed)
    return core.jordan_types(core.random_UB_elements(P, p, samples, rng), p)


def estimate_Q(P: Partition, p: int = gf.DEFAULT_PRIME, samples: int = 25, seed=0) -> QEstimate:
    """Dominance maximum of the Jordan types of random elements of U_B."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    p = gf.check_modulus(p)
    types = sample_types(P, p, samples, seed)
    top, ok = dominance_max(types)
    return QEstimate(P, samples, p, top, _histogram(types), ok)


def exhaustive_Q(P: Partition, q: int = 3) -> Partition:
    """Dominance maximum of the Jordan types of every element of U_B over GF(q)."""
    if q not in (2, 3):
        raise ValueError("exhaustive enumeration supports fields of size 2 or 3")
    dim = core.ub_dimension(P)
    if dim > EXHAUSTIVE_DIM_LIMIT:
        raise ValueError(f"U_B has dimension {dim}, above the limit {EXHAUSTIVE_DIM_LIMIT}")
    total = q ** dim
    weights = q ** np.arange(dim, dtype=np.int64)
    seen: set[tuple[int, ...]] = set()
    for start in range(0, total, _BATCH):
        idx = np.arange(start, min(total, start + _BATCH), dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % q
        ranks = gf.rank_sequence(core.ub_from_coordinates(P, digits), q)
        seen.update(map(tuple, np.unique(ranks, axis=0).tolist()))
    types = [Partition(gf.type_from_ranks(r)) for r in seen]
    top, _ = dominance_max(types)
    return top


@dataclass(frozen=True)
class CheckConfig:
    samples: int = 25
    field: int = gf.DEFAULT_PRIME
    seed: int = 0
    det_trials: int = 3
    idempotence_samples: int = 5


@dataclass
class Check:
    name: str
    status: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness:
            out["witness"] = self.witness
        return out


@dataclass
class CheckReport:
    partition: Partition
    r_p: int
    lambda_u: Partition
    oblak: Partition
    greene: Partition
    q_estimate: QEstimate
    checks: list[Check]
    seed: int
    field: int
    elapsed: float = 0.0

    def status(self, name: str) -> str:
        return next(c.status for c in self.checks if c.name == name)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def findings(self) -> list[Check]:
        return [c for c in self.checks if c.status == FINDING]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_json(self) -> dict:
        return {
            "partition": str(self.partition),
            "n": self.partition.n,
            "r_p": self.r_p,
            "lambda_u": str(self.lambda_u),
            "oblak": str(self.oblak),
            "greene": str(self.greene),
            "q_estimate": str(self.q_estimate.estimate),
            "histogram": self.q_estimate.histogram,
            "checks": [c.to_json() for c in self.checks],
            "seed": self.seed,
            "field": self.field,
        }


def _seed_sequence(P: Partition, seed: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed, spawn_key=(P.n,) + P.parts)


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def check_partition(P: Partition, config: CheckConfig | None = None) -> CheckReport:
    config = config or CheckConfig()
    start = time.perf_counter()
    p = gf.check_modulus(config.field)
    ss_q, ss_idem, ss_det = _seed_sequence(P, config.seed).spawn(3)
    r = r_P(P)
    lam_u = lambda_U(P)
    obl = oblak_recursion(P)
    grn = greene_lambda(build_diagram(P))
    est = estimate_Q(P, p, config.samples, ss_q)
    Q = est.estimate
    sampled = [parse_partition(t) for t in est.histogram]
    checks: list[Check] = []

    def add(name, status, **witness):
        checks.append(Check(name, status, witness))

    add("sampled_types_have_maximum", PASS if est.dominates_all else FINDING,
        **({} if est.dominates_all else {"histogram": est.histogram}))
    add("q_dominates_lambda_u", _status(dominates(Q, lam_u)),
        **({} if dominates(Q, lam_u) else {"q": str(Q), "lambda_u": str(lam_u)}))

    not_below = [str(t) for t in sampled if not dominates(grn, t)]
    add("greene_dominates_samples", _status(not not_below),
        **({"greene": str(grn), "types": not_below} if not_below else {}))

    u1 = u_sequence(P)[1]
    lc = longest_chain(build_diagram(P))
    ok = Q.parts[0] == u1 == lc
    add("first_part_is_longest_chain", _status(ok),
        **({} if ok else {"q_first": Q.parts[0], "longest_uchain": u1, "longest_chain": lc}))

    ok = Q.smallest == lam_u.smallest
    add("min_part_matches_lambda_u", _status(ok),
        **({} if ok else {"q": str(Q), "lambda_u": str(lam_u)}))

    if r <= 3:
        ok = Q == lam_u == grn
        add("small_r_equality", _status(ok),
            **({} if ok else {"q": str(Q), "lambda_u": str(lam_u), "greene": str(grn)}))
    else:
        add("small_r_equality", SKIP, r_p=r)

    ok = all(a - b >= 2 for a, b in zip(Q.parts, Q.parts[1:]))
    add("q_parts_differ_by_two", _status(ok), **({} if ok else {"q": str(Q)}))

    # composes two estimates, so a mismatch is only a heuristic signal
    QQ = estimate_Q(Q, p, config.idempotence_samples, ss_idem).estimate
    add("q_idempotent_heuristic", PASS if QQ == Q else FINDING,
        **({} if QQ == Q else {"q": str(Q), "q_of_q": str(QQ)}))

    ok = len(Q) == r
    add("part_count_is_r_p", _status(ok), **({} if ok else {"q": str(Q), "r_p": r}))

    add("greene_equals_lambda_u", PASS if grn == lam_u else FINDING,
        **({} if grn == lam_u else {"greene": str(grn), "lambda_u": str(lam_u)}))

    zero_specs, partial = [], []
    det_seeds = ss_det.spawn(1)[0]
    for spec in maximal_specs(P):
        trial_seeds = det_seeds.spawn(config.det_trials)
        zeros = sum(core.det_M(P, spec, "numeric", p, s) == 0 for s in trial_seeds)
        if zeros == config.det_trials:
            zero_specs.append(str(spec))
        elif zeros:
            partial.append(str(spec))
    if zero_specs:
        add("det_m_nonzero", FAIL, specs=zero_specs, seed=config.seed)
    elif partial:
        add("det_m_nonzero", FINDING, specs=partial, seed=config.seed)
    else:
        add("det_m_nonzero", PASS)

    return CheckReport(P, r, lam_u, obl, grn, est, checks, config.seed, p,
                       time.perf_counter() - start)


def _check_task(args) -> CheckReport:
    P, config = args
    return check_partition(P, config)


@dataclass
class SweepResult:
    max_n: int
    config: CheckConfig
    reports: list[CheckReport]
    timings: dict[int, float] | None = None

    def summary(self) -> dict:
        statuses = Counter(c.status for rep in self.reports for c in rep.checks)
        by_check: dict[str, Counter] = {}
        for rep in self.reports:
            for c in rep.checks:
                by_check.setdefault(c.name, Counter())[c.status] += 1
        return {
            "partitions": len(self.reports),
            "failed_partitions": sum(not rep.ok for rep in self.reports),
            "findings": statuses.get(FINDING, 0),
            "status_counts": dict(sorted(statuses.items())),
            "by_check": {k: dict(sorted(v.items())) for k, v in sorted(by_check.items())},
        }

    @property
    def ok(self) -> bool:
        return all(rep.ok for rep in self.reports)

    def to_json(self) -> dict:
        data = {"max_n": self.max_n, "config": asdict(self.config), "summary": self.summary(),
                "reports": [rep.to_json() for rep in self.reports]}
        if self.timings is not None:
            data["timings"] = {str(n): round(t, 6) for n, t in sorted(self.timings.items())}
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def sweep(max_n: int, config: CheckConfig | None = None, jobs: int = 1,
          include_timing: bool = False) -> SweepResult:
    """check_partition on every partition of 1..max_n, in a fixed order.

    Wall-clock timing per n is only attached when ``include_timing`` is set,
    so the default output is reproducible byte for byte.
    """
    if not 1 <= max_n <= SWEEP_MAX_N:
        raise ValueError(f"max_n must be between 1 and {SWEEP_MAX_N}")
    config = config or CheckConfig()
    parts = list(all_partitions(max_n))
    tasks = [(P, config) for P in parts]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_check_task, tasks, chunksize=8))
    else:
        reports = [_check_task(t) for t in tasks]
    timings = None
    if include_timing:
        timings = {}
        for rep in reports:
            timings[rep.partition.n] = timings.get(rep.partition.n, 0.0) + rep.elapsed
    return SweepResult(max_n, config, reports, timings)


def compare_exhaustive(P: Partition, q: int = 3, config: CheckConfig | None = None) -> dict:
    """Small-field maximum next to the large-field estimate; disagreement is
    recorded, not treated as an error."""
    config = config or CheckConfig()
    small = exhaustive_Q(P, q)
    big = estimate_Q(P, config.field, config.samples, config.seed).estimate
    rel = dominance_cmp(big, small)
    return {"partition": str(P), "field_size": q, "exhaustive": str(small), "estimate": str(big),
            "estimate_dominates": rel in (Dominance.GREATER, Dominance.EQUAL),
            "status": PASS if small == big else FINDING}
