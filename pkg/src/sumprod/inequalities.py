"""Checkable instances of sum-product inequalities.

Each registered claim maps a :class:`ClaimInstance` to a :class:`Verdict`.
Claims that are true for every finite instance run in ``assert`` mode and are
compared exactly whenever both sides are integers or rationals.  Asymptotic
statements, or ones with unspecified constants or premises, run in
``report`` mode: both sides are measured and the slack is recorded, but a
failure is information rather than a defect.

Quantities with tower-sized exponents (``h**(65h)``, ``t**(12t)``,
``(6d)**(3d)``) are only ever handled as natural logarithms in an mpmath
context, never materialised as integers.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import mpmath

from . import counting, multdim, setalg
from .budget import DEFAULT_BUDGET, Budget
from .errors import MissingParam, ParamError, PremiseViolated, UnexpectedParam, UnknownClaim
from .multdim import LatticeSet
from .setalg import FiniteSet

LOG_TOL = 1e-9

_mp = mpmath.MPContext()
_mp.dps = 40

Exact = Union[int, Fraction]
Side = Union[int, Fraction, "mpmath.mpf", None]


# -- small numeric helpers ---------------------------------------------------

def gamma0(t: int) -> int:
    if t < 1:
        raise ValueError("gamma0 needs t >= 1")
    return t // 2


def gamma1(t: int) -> int:
    """``floor(t/2)`` for odd t, ``t/2 - 1`` for even t."""
    if t < 1:
        raise ValueError("gamma1 needs t >= 1")
    return t // 2 if t % 2 else t // 2 - 1


def log_D(t: int, m: int):
    """Natural log of ``exp(t**(12t) * (m+1))``, i.e. ``t**(12t) * (m+1)``, as an mpf."""
    if t < 1 or m < 0:
        raise ValueError("log_D needs t >= 1 and m >= 0")
    return _mp.mpf(t) ** (12 * t) * (m + 1)


def log_ess(d: int, r: int):
    """Natural log of the bound ``exp((6d)**(3d) * (r+1))`` on nondegenerate solutions."""
    return _mp.mpf(6 * d) ** (3 * d) * (r + 1)


def ln(x) -> "mpmath.mpf":
    if isinstance(x, Fraction):
        if x <= 0:
            return _mp.ninf if x == 0 else _mp.nan
        return _mp.log(_mp.mpf(x.numerator)) - _mp.log(_mp.mpf(x.denominator))
    if isinstance(x, int):
        if x <= 0:
            return _mp.ninf if x == 0 else _mp.nan
        return _mp.log(_mp.mpf(x))
    return _mp.log(x)


def logaddexp(a, b):
    hi, lo = (a, b) if a >= b else (b, a)
    if lo == _mp.ninf:
        return hi
    return hi + _mp.log1p(_mp.exp(lo - hi))


# -- data types ---------------------------------------------------------------

PARAM_NAMES = (
    "A", "B", "X", "Y", "h", "k", "l", "n", "m",
    "alpha", "C_ratio", "K_param", "epsilon", "assume_large_d",
)


@dataclass
class ClaimInstance:
    claim_id: str
    A: Optional[FiniteSet] = None
    B: Optional[FiniteSet] = None
    X: Optional[LatticeSet] = None
    Y: Optional[LatticeSet] = None
    h: Optional[int] = None
    k: Optional[int] = None
    l: Optional[int] = None
    n: Optional[int] = None
    m: Optional[int] = None
    alpha: Optional[Fraction] = None
    C_ratio: Optional[Fraction] = None
    K_param: Optional[Fraction] = None
    epsilon: Optional[Fraction] = None
    assume_large_d: Optional[bool] = None

    def present(self) -> set:
        return {name for name in PARAM_NAMES if getattr(self, name) is not None}

    def echo(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for name in PARAM_NAMES:
            v = getattr(self, name)
            if v is None:
                continue
            if isinstance(v, FiniteSet):
                out[name] = [str(x) for x in v]
            elif isinstance(v, LatticeSet):
                out[name] = [list(p) for p in v]
            elif isinstance(v, Fraction):
                out[name] = str(v)
            else:
                out[name] = v
        return out


@dataclass
class Verdict:
    claim: str
    params: Dict[str, Any]
    lhs_log: Any = None
    rhs_log: Any = None
    lhs_exact: Optional[str] = None
    rhs_exact: Optional[str] = None
    holds: bool = False
    slack_log: Any = None
    mode: str = "assert"
    elapsed_ms: float = 0.0
    info: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def failed_assert(self) -> bool:
        """An assert-mode claim that did not hold, or tripped an internal consistency check."""
        if self.mode != "assert" or self.holds:
            return False
        return self.error is None or self.error.startswith("AssertionError")

    def to_json(self, timing: bool = True) -> str:
        """One JSON object; numbers outside float range are written in full exponent form."""
        parts = [
            f'"claim": {json.dumps(self.claim)}',
            f'"params": {json.dumps(self.params, sort_keys=True)}',
            f'"lhs_log": {_json_number(self.lhs_log)}',
            f'"rhs_log": {_json_number(self.rhs_log)}',
            f'"lhs_exact": {json.dumps(self.lhs_exact)}',
            f'"rhs_exact": {json.dumps(self.rhs_exact)}',
            f'"holds": {json.dumps(bool(self.holds))}',
            f'"slack_log": {_json_number(self.slack_log)}',
            f'"mode": {json.dumps(self.mode)}',
            f'"elapsed_ms": {_json_number(round(self.elapsed_ms, 3) if timing else 0)}',
            f'"info": {json.dumps(self.info, sort_keys=True)}',
            f'"error": {json.dumps(self.error)}',
        ]
        return "{" + ", ".join(parts) + "}"


def _json_number(x) -> str:
    if x is None:
        return "null"
    if isinstance(x, bool):
        return json.dumps(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return repr(x) if math.isfinite(x) else "null"
    if not _mp.isfinite(x):
        return "null"
    f = float(x)
    if math.isfinite(f) and (f != 0.0 or x == 0):
        return repr(f)
    return _mp.nstr(x, 17, min_fixed=1, max_fixed=0)


def _as_float(x):
    if x is None:
        return None
    f = float(x)
    return f if math.isfinite(f) else None


# -- outcome plumbing -----------------------------------------------------------

@dataclass
class _Outcome:
    lhs: Side
    rhs: Side
    relation: str  # ">=", "<=", "==", "<"
    info: Dict[str, Any] = field(default_factory=dict)


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _log_of(x):
    if x is None:
        return None
    return ln(x) if _is_exact(x) else x


def _judge(out: _Outcome) -> Tuple[bool, Any]:
    """Return ``(holds, slack_log)``; slack is positive when the claim holds with room."""
    lhs, rhs, rel = out.lhs, out.rhs, out.relation
    if rhs is None or lhs is None:
        return False, None
    llog, rlog = _log_of(lhs), _log_of(rhs)
    if rel in (">=", "=="):
        slack = llog - rlog
    else:
        slack = rlog - llog
    if _is_exact(lhs) and _is_exact(rhs):
        holds = {">=": lhs >= rhs, "<=": lhs <= rhs, "==": lhs == rhs, "<": lhs < rhs}[rel]
        if rel == "==" and lhs == rhs:
            slack = _mp.mpf(0)
    else:
        holds = {
            ">=": slack >= -LOG_TOL,
            "<=": slack >= -LOG_TOL,
            "==": abs(slack) <= LOG_TOL,
            "<": slack > LOG_TOL,
        }[rel]
    return bool(holds), slack


# -- helpers shared by claims ---------------------------------------------------

def _require_nonempty(**sets):
    for name, s in sets.items():
        if not len(s):
            raise PremiseViolated(f"{name} must be nonempty")


def _joint_free_points(A: FiniteSet, B: FiniteSet) -> Tuple[LatticeSet, LatticeSet, multdim.Embedding]:
    E = multdim.embed(A.union(B))
    index = {x: v for x, (_, v) in zip(E.elements, E.coords)}
    X = LatticeSet((index[a] for a in A.nonzero()), dim=E.free_rank)
    Y = LatticeSet((index[b] for b in B.nonzero()), dim=E.free_rank)
    return X, Y, E


def _alpha(inst: ClaimInstance, prod_size: int, base: int, strict: bool) -> Tuple[Fraction, Dict[str, Any]]:
    """Return alpha (given or measured) with the premise status for ``|AB| (<|<=) alpha |A|``."""
    measured = Fraction(prod_size, base)
    if inst.alpha is None:
        return measured, {"alpha": str(measured), "alpha_measured": True, "premise_alpha": not strict}
    ok = prod_size < inst.alpha * base if strict else prod_size <= inst.alpha * base
    return inst.alpha, {"alpha": str(inst.alpha), "alpha_measured": False, "premise_alpha": ok}


def _C(inst: ClaimInstance, A: FiniteSet, B: FiniteSet) -> Fraction:
    C = Fraction(len(B), len(A))
    if inst.C_ratio is not None and inst.C_ratio != C:
        raise ParamError(f"C_ratio={inst.C_ratio} does not match |B|/|A|={C}")
    return C


# -- claims ---------------------------------------------------------------------

def _cs_iterated(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A, h = inst.A, inst.h
    _require_nonempty(A=A)
    if h < 1:
        raise PremiseViolated("h must be >= 1")
    rep = counting.rep_function(h, A, budget=budget)
    M = rep.sum_of_squares()
    lhs = len(rep.entries)
    rhs = Fraction(len(A) ** (2 * h), M)
    constant = len(set(rep.entries.values())) == 1
    if lhs == rhs and not constant:
        raise AssertionError("Cauchy-Schwarz equality with a nonconstant representation function")
    return _Outcome(lhs, rhs, ">=", {"energy": M, "rep_constant": constant})


def _cs_distinct(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A, B, k, l = inst.A, inst.B, inst.k, inst.l
    _require_nonempty(A=A, B=B)
    if k < 0 or l < 0 or k + l < 1:
        raise PremiseViolated("need k, l >= 0 and k + l >= 1")
    rep = counting.rep_function(k, A, l, B, budget=budget)
    M = rep.sum_of_squares()
    return _Outcome(len(rep.entries), Fraction(len(A) ** (2 * k) * len(B) ** (2 * l), M), ">=", {"tuples": M})


def _ruzsa_rn(inst: ClaimInstance, budget: Budget) -> _Outcome:
    X, Y = inst.X, inst.Y
    if not len(X) or not len(Y):
        raise PremiseViolated("X and Y must be nonempty")
    swapped = len(X) > len(Y)
    if swapped:
        X, Y = Y, X
    S = multdim.lattice_sumset(X, Y, budget)
    n = multdim.affine_dim(S)
    rhs = len(Y) + n * len(X) - n * (n + 1) // 2
    return _Outcome(len(S), rhs, ">=", {"n": n, "swapped": swapped})


def _ab_lower(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A, B = inst.A, inst.B
    _require_nonempty(A=A, B=B)
    if 0 in A or 0 in B:
        raise PremiseViolated("0 must not lie in A or B")
    X, Y, E = _joint_free_points(A, B)
    if E.torsion:
        raise PremiseViolated("-1 lies in the group generated by A and B; no torsion-free embedding")
    AB = setalg.productset(A, B, budget)
    S = multdim.lattice_sumset(X, Y, budget)
    if len(S) != len(AB):
        raise AssertionError("embedding does not preserve |AB|")
    d = multdim.affine_dim(S)
    small, large = sorted((len(A), len(B)))
    rhs = large + d * small - d * (d + 1) // 2
    return _Outcome(len(AB), rhs, ">=", {"d": d, "swapped": len(A) > len(B)})


def _plunnecke(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A, B, n, m = inst.A, inst.B, inst.n, inst.m
    _require_nonempty(A=A, B=B)
    if n < 0 or m < 0 or n + m < 1:
        raise PremiseViolated("need n, m >= 0 and n + m >= 1")
    K = Fraction(len(setalg.sumset(A, B, budget)), len(A))
    lhs = len(setalg.difference_combo(n, m, B, budget))
    return _Outcome(lhs, K ** (n + m) * len(A), "<=", {"K": str(K)})


def _simple_sum_chain(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A, h = inst.A, inst.h
    if not 1 <= h <= len(A):
        raise PremiseViolated("need 1 <= h <= |A|")
    rep = counting.rep_function(h, A, budget=budget)
    aplus = setalg.subset_sums(A, budget)
    covered = sum(c for x, c in rep.entries.items() if x in aplus)
    return _Outcome(math.comb(len(A), h), covered, "<=", {})


def _dilated_simple_sum(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A, h = inst.A, inst.h
    _require_nonempty(A=A)
    if 0 in A:
        raise PremiseViolated("0 must not lie in A")
    if h < 1:
        raise PremiseViolated("h must be >= 1")
    E = multdim.embed(A)
    if E.torsion:
        raise PremiseViolated("-1 lies in <A*>; the exponent lattice is not torsion-free")
    size = multdim.bounded_sums_count([v for _, v in E.coords], h, budget)
    return _Outcome(size, h ** E.dim, ">=", {"mult_dim": E.dim})


def _identity_15(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A = inst.A
    _require_nonempty(A=A)
    if 0 in A:
        raise PremiseViolated("0 must not lie in A")
    E = multdim.embed(A)
    lhs = len(setalg.subset_products(A, budget))
    rhs = len(multdim.coordinate_subset_sums(E))
    return _Outcome(lhs, rhs, "==", {"free_rank": E.free_rank, "torsion": E.torsion})


def _gamma_props(inst: ClaimInstance, budget: Budget) -> _Outcome:
    kmax = inst.k if inst.k is not None else 50
    lmax = inst.l if inst.l is not None else 50
    passed = total = 0
    failures: List[str] = []
    for k in range(1, kmax + 1):
        for l in range(1, lmax + 1):
            if k + l <= 2:
                continue
            checks = [("a", gamma1(k + l - 1) == gamma0(k + l) - 1),
                      ("c", gamma0(k) + gamma1(l) <= gamma1(k + l))]
            if k >= 2 and l >= 2 and not (k % 2 and l % 2):
                checks.append(("b", gamma1(k + l - 1) == gamma0(k) + gamma0(l) - 1))
            for tag, ok in checks:
                total += 1
                passed += ok
                if not ok and len(failures) < 10:
                    failures.append(f"{tag}:k={k},l={l}")
    return _Outcome(passed, total, "==", {"checks": total, "failures": failures})


def _multdim_ratio(inst: ClaimInstance, budget: Budget) -> _Outcome:
    star = inst.A.nonzero()
    if not len(star):
        raise PremiseViolated("A* is empty")
    m = multdim.mult_dim(star)
    sq = len(setalg.productset(star, star, budget))
    return _Outcome(m, Fraction(sq, len(star)), "<=", {"mult_dim": m, "productset_size": sq})


def _multdim_ab(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A, B = inst.A, inst.B
    _require_nonempty(A=A, B=B)
    if 0 in A or 0 in B:
        raise PremiseViolated("0 must not lie in A or B")
    C = _C(inst, A, B)
    AB = setalg.productset(A, B, budget)
    alpha, info = _alpha(inst, len(AB), len(A), strict=True)
    X, Y, E = _joint_free_points(A, B)
    d = multdim.affine_dim(multdim.lattice_sumset(X, Y, budget))
    K = inst.K_param if inst.K_param is not None else Fraction(len(A) + len(B), d + 2)
    m = max(multdim.mult_dim(A), multdim.mult_dim(B))
    info.update(d=d, m=m, C=str(C), K=str(K), torsion=E.torsion,
                premise_K=len(A) + len(B) >= K * (d + 2))
    if C >= 1 and K > C:
        bound = (alpha - C) / (1 - C / K)
        info["branch"] = "a"
    elif C < 1 and K > 1:
        bound = (alpha - 1) / (C * (1 - 1 / K))
        info["branch"] = "b"
    else:
        info["branch"] = None
        return _Outcome(m, None, "<", info)
    return _Outcome(m, bound, "<", info)


def _bases_productset(inst: ClaimInstance, budget: Budget) -> _Outcome:
    if inst.X is not None or inst.Y is not None:
        if inst.X is None or inst.Y is None:
            raise MissingParam("bases_productset needs both X and Y")
        X, Y = inst.X, inst.Y
    elif inst.A is not None and inst.B is not None:
        if 0 in inst.A or 0 in inst.B:
            raise PremiseViolated("0 must not lie in A or B")
        X, Y, _ = _joint_free_points(inst.A, inst.B)
    else:
        raise MissingParam("bases_productset needs X, Y or A, B")
    if not len(X) or not len(Y):
        raise PremiseViolated("X and Y must be nonempty")
    S = multdim.lattice_sumset(X, Y, budget)
    d = multdim.affine_dim(S)
    C = Fraction(len(Y), len(X))
    K = Fraction(len(X) + len(Y), d + 2)
    logx = ln(len(X))
    info = {
        "d": d, "C": str(C), "K": str(K),
        "premise_C": bool(ln(C) <= _mp.log(logx)) if len(X) > 1 else False,
        "premise_K": bool(ln(K) <= _mp.log(logx)) if len(X) > 1 else False,
        "premise_large_d": bool(inst.assume_large_d),
    }
    if len(X) < 2:
        info["premise_logx"] = False
        return _Outcome(len(S), None, ">=", info)
    rhs = ln(len(X)) + ln(len(Y)) - 10 * _mp.log(2) - 2 * _mp.log(logx)
    return _Outcome(len(S), rhs, ">=", info)


def _thm_sumprod(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A, h = inst.A, inst.h
    _require_nonempty(A=A)
    if h < 2:
        raise PremiseViolated("h must be >= 2")
    sq = len(setalg.productset(A, A, budget))
    alpha, info = _alpha(inst, sq, len(A), strict=False)
    if not info["premise_alpha"]:
        raise PremiseViolated(f"|A^2| = {sq} exceeds alpha*|A|")
    lhs = len(setalg.linear_combo(h, A, budget=budget))
    rhs = -(_mp.mpf(h) ** (65 * h)) * (_mp.mpf(alpha.numerator) / alpha.denominator + 1) + h * ln(len(A))
    return _Outcome(lhs, rhs, ">=", info)


def _thm_sumproddiff(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A, B, k, l = inst.A, inst.B, inst.k, inst.l
    _require_nonempty(A=A, B=B)
    if k < 0 or l < 0 or k + l < 1:
        raise PremiseViolated("need k, l >= 0 and k + l >= 1")
    C = _C(inst, A, B)
    AB = setalg.productset(A, B, budget)
    alpha, info = _alpha(inst, len(AB), len(A), strict=True)
    t = k + l
    threshold_log = -65 * t * _mp.log(t) + _mp.log(ln(len(A))) if len(A) > 1 else _mp.ninf
    biggest = max(alpha, C, alpha / C)
    premise = bool(ln(biggest) <= threshold_log)
    lhs = len(setalg.linear_combo(k, A, l, B, budget))
    rhs = len(A) ** k * len(B) ** l
    info.update(C=str(C), max_param=str(biggest), premise_threshold_log=_as_float(threshold_log),
                premise=premise and info["premise_alpha"], ratio=str(Fraction(lhs, rhs)))
    return _Outcome(lhs, rhs, ">=", info)


def _mu_logs(t: int, l: int, C: Fraction, m: int, size: int):
    base = (l // 2) * ln(C)
    logA = ln(size)
    lD = log_D(t, m)
    g0, g1 = gamma0(t), gamma1(t)
    if t % 2:
        mu0 = base + lD + g0 * logA
        mu1 = base + logaddexp(g1 * logA, lD + (g1 - 1) * logA)
    else:
        mu0 = base + logaddexp(g0 * logA, lD + (g0 - 1) * logA)
        mu1 = base + lD + g1 * logA
    return mu0, mu1


def _sigma_bounds(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A, B, k, l = inst.A, inst.B, inst.k, inst.l
    _require_nonempty(A=A, B=B)
    if k < 0 or l < 0 or k + l < 2:
        raise PremiseViolated("need k, l >= 0 and k + l >= 2")
    C = _C(inst, A, B)
    rep = counting.rep_function(k, A, l, B, budget=budget)
    s0, s1 = rep[0], rep[1]
    m = max(multdim.mult_dim(A) if len(A.nonzero()) else 0, multdim.mult_dim(B) if len(B.nonzero()) else 0)
    mu0, mu1 = _mu_logs(k + l, l, C, m, len(A))
    second = _Outcome(s1, mu1, "<=")
    ok1, slack1 = _judge(second)
    info = {
        "sigma0": s0, "sigma1": s1, "m": m,
        "mu1_log": _as_float(mu1), "sigma1_holds": ok1, "sigma1_slack_log": _as_float(slack1),
        "premise_symmetric": A == A.negated() and B == B.negated(),
        "premise_zero_free": 0 not in A and 0 not in B,
    }
    return _Outcome(s0, mu0, "<=", info)


def _addtuples_bound(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A, B, k, l = inst.A, inst.B, inst.k, inst.l
    _require_nonempty(A=A, B=B)
    if k < 1 or l < 0:
        raise PremiseViolated("need k >= 1 and l >= 0")
    C = _C(inst, A, B)
    AB = setalg.productset(A, B, budget)
    alpha, info = _alpha(inst, len(AB), len(A), strict=True)
    a_eff = alpha if C >= 1 else alpha / C
    M = counting.mixed_tuples(k, A, l, B, budget)
    t = k + l
    la, lb = ln(len(A)), ln(len(B))
    tower = _mp.mpf(t) ** (65 * t) * (_mp.mpf(a_eff.numerator) / a_eff.denominator)
    rhs = logaddexp(k * la + l * lb, tower + (k - 1) * la + l * lb)
    info.update(C=str(C), branch="C>=1" if C >= 1 else "C<1", implicit_constant=1)
    return _Outcome(M, rhs, "<=", info)


def _gK_lower(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A = inst.A
    N = len(A)
    if N < 16:
        raise PremiseViolated("needs |A| >= 16 so that log log log N > 0")
    eps = inst.epsilon if inst.epsilon is not None else Fraction(0)
    gp = setalg.g_proxy(A, budget)
    lnN = _mp.log(N)
    lnln = _mp.log(lnN)
    lnlnln = _mp.log(lnln)
    expo = (_mp.mpf(1) / 264 - _mp.mpf(eps.numerator) / eps.denominator) * lnln / lnlnln
    rhs = expo * lnN
    return _Outcome(gp.g, rhs, ">=", {"Aplus": gp.aplus, "Atimes": gp.atimes, "log_base": "e",
                                      "rhs_value": _as_float(_mp.exp(rhs))})


def _ess_bound_value(inst: ClaimInstance, budget: Budget) -> _Outcome:
    A = inst.A
    d = inst.n if inst.n is not None else 2
    if d < 1:
        raise PremiseViolated("number of variables must be >= 1")
    star = A.nonzero()
    if not len(star):
        raise PremiseViolated("A* is empty")
    r = d * multdim.mult_dim(star)
    nondeg, total = counting.nondegenerate_count([1] * d, [star] * d, 1, budget)
    return _Outcome(nondeg, log_ess(d, r), "<=", {"d": d, "r": r, "solutions": total})


@dataclass(frozen=True)
class Claim:
    fn: Callable[[ClaimInstance, Budget], _Outcome]
    mode: str
    required: frozenset
    optional: frozenset = frozenset()


def _c(fn, mode, required, optional=()):
    return Claim(fn, mode, frozenset(required), frozenset(optional))


REGISTRY: Dict[str, Claim] = {
    "cs_iterated": _c(_cs_iterated, "assert", {"A", "h"}),
    "cs_distinct": _c(_cs_distinct, "assert", {"A", "B", "k", "l"}),
    "ruzsa_rn": _c(_ruzsa_rn, "assert", {"X", "Y"}),
    "ab_lower": _c(_ab_lower, "assert", {"A", "B"}),
    "plunnecke": _c(_plunnecke, "assert", {"A", "B", "n", "m"}),
    "simple_sum_chain": _c(_simple_sum_chain, "assert", {"A", "h"}),
    "dilated_simple_sum": _c(_dilated_simple_sum, "assert", {"A", "h"}),
    "identity_15": _c(_identity_15, "assert", {"A"}),
    "gamma_props": _c(_gamma_props, "assert", (), {"k", "l"}),
    "thm_sumprod": _c(_thm_sumprod, "assert", {"A", "h"}, {"alpha"}),
    "multdim_ratio": _c(_multdim_ratio, "report", {"A"}),
    "multdim_ab": _c(_multdim_ab, "report", {"A", "B"}, {"alpha", "K_param", "C_ratio"}),
    "bases_productset": _c(_bases_productset, "report", (), {"X", "Y", "A", "B", "assume_large_d"}),
    "thm_sumproddiff": _c(_thm_sumproddiff, "report", {"A", "B", "k", "l"}, {"alpha", "C_ratio"}),
    "sigma_bounds": _c(_sigma_bounds, "report", {"A", "B", "k", "l"}, {"C_ratio"}),
    "addtuples_bound": _c(_addtuples_bound, "report", {"A", "B", "k", "l"}, {"alpha", "C_ratio"}),
    "gK_lower": _c(_gK_lower, "report", {"A"}, {"epsilon"}),
    "ess_bound_value": _c(_ess_bound_value, "report", {"A"}, {"n"}),
}


def claim_mode(claim_id: str) -> str:
    try:
        return REGISTRY[claim_id].mode
    except KeyError:
        raise UnknownClaim(claim_id) from None


def check_params(inst: ClaimInstance) -> Claim:
    try:
        claim = REGISTRY[inst.claim_id]
    except KeyError:
        raise UnknownClaim(inst.claim_id) from None
    present = inst.present()
    missing = claim.required - present
    if missing:
        raise MissingParam(f"{inst.claim_id} needs {', '.join(sorted(missing))}")
    extra = present - claim.required - claim.optional
    if extra:
        raise UnexpectedParam(f"{inst.claim_id} does not take {', '.join(sorted(extra))}")
    return claim


def verify(inst: ClaimInstance, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Evaluate one claim instance.

    Raises UnknownClaim, MissingParam/UnexpectedParam, PremiseViolated or
    BudgetExceeded; everything else comes back inside the Verdict.
    """
    claim = check_params(inst)
    start = time.perf_counter()
    out = claim.fn(inst, budget)
    holds, slack = _judge(out)
    elapsed = (time.perf_counter() - start) * 1000.0
    return Verdict(
        claim=inst.claim_id,
        params=inst.echo(),
        lhs_log=_finite_or_none(_log_of(out.lhs)),
        rhs_log=_finite_or_none(_log_of(out.rhs)),
        lhs_exact=str(out.lhs) if _is_exact(out.lhs) else None,
        rhs_exact=str(out.rhs) if _is_exact(out.rhs) else None,
        holds=holds,
        slack_log=_finite_or_none(slack),
        mode=claim.mode,
        elapsed_ms=elapsed,
        info={"relation": out.relation, **out.info},
    )


def _finite_or_none(x):
    if x is None:
        return None
    if isinstance(x, float):
        return x if math.isfinite(x) else None
    return x if _mp.isfinite(x) else None


def error_verdict(claim_id: str, params: Dict[str, Any], exc: BaseException) -> Verdict:
    try:
        mode = claim_mode(claim_id)
    except UnknownClaim:
        mode = "report"
    if isinstance(exc, PremiseViolated):
        mode = "report"
    return Verdict(claim=claim_id, params=params, holds=False, mode=mode,
                   error=f"{type(exc).__name__}: {exc}")
