"""Structured test sets and the sweep harness that runs claims over them.

``random_subset`` draws from a splitmix64 stream so that a corpus is fully
determined by its seed::

    state += 0x9E3779B97F4A7C15                      (mod 2**64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9         (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB         (mod 2**64)
    output z ^ (z >> 31)

Sampling is a partial Fisher-Yates shuffle of the pool: for ``i = 0..N-1``
swap position ``i`` with ``i + (next() mod (len(pool) - i))``.
"""

from __future__ import annotations

import csv
import heapq
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence

from .budget import DEFAULT_BUDGET, Budget
from .errors import InvalidSpec, SumprodError, UnknownClaim
from .exactnum import as_rational, is_prime
from .inequalities import PARAM_NAMES, REGISTRY, ClaimInstance, Verdict, _json_number, error_verdict, verify
from .multdim import LatticeSet
from .setalg import FiniteSet, read_set

MASK64 = (1 << 64) - 1
KINDS = ("range", "ap", "gp", "smooth", "file", "random_subset")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: Dict[str, Any] = field(default_factory=dict)

    def label(self) -> Dict[str, Any]:
        return {"kind": self.kind, **{k: _jsonable(v) for k, v in sorted(self.params.items())}}

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "FamilySpec":
        if not isinstance(d, dict) or "kind" not in d:
            raise InvalidSpec(f"family spec needs a 'kind': {d!r}")
        params = {k: v for k, v in d.items() if k != "kind"}
        return cls(d["kind"], params)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _int_param(spec: FamilySpec, name: str, default=None) -> int:
    v = spec.params.get(name, default)
    if v is None:
        raise InvalidSpec(f"{spec.kind} needs parameter {name!r}")
    if isinstance(v, bool) or not isinstance(v, int):
        raise InvalidSpec(f"{spec.kind}.{name} must be an integer, got {v!r}")
    return v


def _rat_param(spec: FamilySpec, name: str, default=None) -> Fraction:
    v = spec.params.get(name, default)
    if v is None:
        raise InvalidSpec(f"{spec.kind} needs parameter {name!r}")
    try:
        return as_rational(v)
    except (TypeError, ValueError):
        raise InvalidSpec(f"{spec.kind}.{name} must be rational, got {v!r}") from None


def smooth_numbers(y: int, N: int) -> List[int]:
    """The N smallest positive integers with no prime factor above y."""
    primes = [p for p in range(2, y + 1) if is_prime(p)]
    out: List[int] = []
    heap, seen = [1], {1}
    while heap and len(out) < N:
        v = heapq.heappop(heap)
        out.append(v)
        for p in primes:
            if v * p not in seen:
                seen.add(v * p)
                heapq.heappush(heap, v * p)
    return out


def generate(spec: FamilySpec) -> FiniteSet:
    kind = spec.kind
    if kind == "file":
        path = spec.params.get("path")
        if not path:
            raise InvalidSpec("file family needs 'path'")
        return read_set(path)
    N = _int_param(spec, "N")
    if N < 0:
        raise InvalidSpec("N must be nonnegative")
    if kind == "range":
        return FiniteSet(range(1, N + 1))
    if kind == "ap":
        a, d = _rat_param(spec, "a", 0), _rat_param(spec, "d", 1)
        if d == 0 and N > 1:
            raise InvalidSpec("ap difference must be nonzero")
        return FiniteSet(a + i * d for i in range(N))
    if kind == "gp":
        a, r = _rat_param(spec, "a", 1), _rat_param(spec, "r", 2)
        if N > 1 and (a == 0 or r in (0, 1, -1)):
            raise InvalidSpec("gp needs a != 0 and ratio outside {0, 1, -1}")
        return FiniteSet(a * r**i for i in range(N))
    if kind == "smooth":
        y = _int_param(spec, "y")
        if y < 1:
            raise InvalidSpec("smoothness bound must be positive")
        return FiniteSet(smooth_numbers(y, N))
    if kind == "random_subset":
        seed = _int_param(spec, "seed")
        pool = spec.params.get("pool", 100)
        if isinstance(pool, int) and not isinstance(pool, bool):
            items = list(range(1, pool + 1))
        else:
            items = list(FiniteSet(pool))
        if N > len(items):
            raise InvalidSpec(f"cannot draw {N} elements from a pool of {len(items)}")
        rng = SplitMix64(seed)
        for i in range(N):
            j = i + rng.below(len(items) - i)
            items[i], items[j] = items[j], items[i]
        return FiniteSet(items[:N])
    raise InvalidSpec(f"unknown family kind {kind!r}")


# -- sweeps -------------------------------------------------------------------

@dataclass(frozen=True)
class ClaimSpec:
    id: str
    params: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "ClaimSpec":
        if not isinstance(d, dict) or "id" not in d:
            raise InvalidSpec(f"claim entry needs an 'id': {d!r}")
        params = d.get("params", {}) or {}
        if not isinstance(params, dict):
            raise InvalidSpec(f"claim params must be an object: {params!r}")
        return cls(d["id"], params)


_SET_PARAMS = {"A", "B"}
_LATTICE_PARAMS = {"X", "Y"}
_RATIONAL_PARAMS = {"alpha", "C_ratio", "K_param", "epsilon"}


def _set_param(value) -> FiniteSet:
    if isinstance(value, dict):
        return generate(FamilySpec.from_dict(value))
    if isinstance(value, (list, tuple)):
        return FiniteSet(value)
    raise InvalidSpec(f"set parameter must be a list or a family spec: {value!r}")


def build_instance(claim: ClaimSpec, A: FiniteSet) -> ClaimInstance:
    """Instance of ``claim`` on the family set A.

    Claim params may supply any instance field; ``A`` and ``B`` default to
    the family set where the claim uses them.
    """
    if claim.id not in REGISTRY:
        raise UnknownClaim(claim.id)
    entry = REGISTRY[claim.id]
    kwargs: Dict[str, Any] = {}
    for name, value in claim.params.items():
        if name not in PARAM_NAMES:
            raise InvalidSpec(f"unknown claim parameter {name!r}")
        if name in _SET_PARAMS:
            kwargs[name] = _set_param(value)
        elif name in _LATTICE_PARAMS:
            kwargs[name] = LatticeSet(value)
        elif name in _RATIONAL_PARAMS:
            kwargs[name] = as_rational(value)
        else:
            kwargs[name] = value
    uses = entry.required | entry.optional
    if "A" in uses and "A" not in kwargs and not ({"X", "Y"} & kwargs.keys()):
        kwargs["A"] = A
    if "B" in uses and "B" not in kwargs and "A" in kwargs:
        kwargs["B"] = kwargs["A"]
    return ClaimInstance(claim.id, **kwargs)


def _run_one(spec: FamilySpec, claim: ClaimSpec, budget: Budget) -> Verdict:
    params = {"family": spec.label(), "claim_params": _jsonable_params(claim.params)}
    try:
        A = generate(spec)
        inst = build_instance(claim, A)
        v = verify(inst, budget)
    except (SumprodError, OSError, ValueError, TypeError, ArithmeticError, AssertionError) as exc:
        return error_verdict(claim.id, params, exc)
    v.params = {**params, **v.params}
    return v


def _jsonable_params(p: Dict[str, Any]) -> Dict[str, Any]:
    return {k: _jsonable(v) for k, v in sorted(p.items())}


def sweep(
    specs: Sequence[FamilySpec], claims: Sequence[ClaimSpec], budget: Budget = DEFAULT_BUDGET,
    threads: int = 1,
) -> List[Verdict]:
    """Evaluate every (family, claim) pair, ordered by (spec index, claim index).

    Per-instance failures become error verdicts; the sweep never aborts.
    """
    jobs = [(s, c) for s in specs for c in claims]
    if threads <= 1 or len(jobs) <= 1:
        return [_run_one(s, c, budget) for s, c in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda job: _run_one(job[0], job[1], budget), jobs))


def expand_families(entries: Sequence[Dict[str, Any]], seed: int = 0) -> List[FamilySpec]:
    """Manifest family entries to specs.

    A list-valued ``N`` expands into one spec per value.  ``random_subset``
    entries without a seed get one derived from ``seed`` and the entry index.
    """
    out: List[FamilySpec] = []
    for idx, entry in enumerate(entries):
        spec = FamilySpec.from_dict(entry)
        if spec.kind not in KINDS:
            raise InvalidSpec(f"unknown family kind {spec.kind!r}")
        params = dict(spec.params)
        if spec.kind == "random_subset" and "seed" not in params:
            params["seed"] = SplitMix64(seed ^ (idx * 0x9E3779B97F4A7C15)).next()
        Ns = params.get("N")
        if isinstance(Ns, list):
            out.extend(FamilySpec(spec.kind, {**params, "N": n}) for n in Ns)
        else:
            out.append(FamilySpec(spec.kind, params))
    return out


def load_manifest(text: str, seed: int = 0):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"manifest is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InvalidSpec("manifest must be a JSON object")
    families = expand_families(data.get("families", []), seed)
    claims = [ClaimSpec.from_dict(c) for c in data.get("claims", [])]
    return families, claims


# -- reports ------------------------------------------------------------------

def report_json(verdicts: Sequence[Verdict], timing: bool = False) -> str:
    if not verdicts:
        return "[]\n"
    return "[\n" + ",\n".join("  " + v.to_json(timing) for v in verdicts) + "\n]\n"


CSV_COLUMNS = ("claim", "params", "lhs", "rhs", "holds", "slack_log", "mode", "elapsed_ms")


def report_csv(verdicts: Sequence[Verdict], timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for v in verdicts:
        lhs = v.lhs_exact if v.lhs_exact is not None else _json_number(v.lhs_log)
        rhs = v.rhs_exact if v.rhs_exact is not None else _json_number(v.rhs_log)
        w.writerow([
            v.claim,
            json.dumps(v.params, sort_keys=True, separators=(",", ":")),
            "" if lhs == "null" else lhs,
            "" if rhs == "null" else rhs,
            "true" if v.holds else "false",
            "" if v.slack_log is None else _json_number(v.slack_log),
            v.mode,
            _json_number(round(v.elapsed_ms, 3) if timing else 0),
        ])
    return buf.getvalue()


def summarize(verdicts: Sequence[Verdict]) -> Dict[str, int]:
    out = {"assert_holds": 0, "assert_fails": 0, "report_holds": 0, "report_fails": 0, "errors": 0}
    for v in verdicts:
        if v.failed_assert:
            out["assert_fails"] += 1
        elif v.error is not None:
            out["errors"] += 1
        else:
            out[f"{v.mode}_{'holds' if v.holds else 'fails'}"] += 1
    return out
