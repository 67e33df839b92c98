"""Search for violations of F_{n,mu} >= F_{n,lam} on the nonnegative orthant.

Two exact searches are combined: a scan over two-value profiles
(t,...,t,1,...,1), where interior minimizers of the d = 8 difference live,
and seeded random sampling that visits boundary points (some coordinates
zero) before interior ones.  Neither is a proof; the certificates module
supplies that for the d >= 8 pairs.
"""

from __future__ import annotations

import enum
import json
import logging
import math
import random
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from . import kernels
from .certificates import (
    boundary_identity,
    default_d8_certificate,
    odd_reduction_identity,
    ratio_step_identity,
)
from .errors import CertificateError, ClaimViolation, DomainError, ParseError
from .partitions import Partition, comparable, counterexample_pair, enumerate_partitions, majorizes
from .symmetric import (
    EvalPoint,
    Family,
    complete_h_upto,
    eval_normalized,
    format_rational,
    integer_scaling,
    normalization_constant,
    parse_rational,
    random_point,
)

log = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_T_GRID",
    "Config",
    "ProfilePoint",
    "ProfileScan",
    "Status",
    "Witness",
    "InequalityVerdict",
    "TheoremEvidence",
    "PairScan",
    "profile_scan",
    "sample_check",
    "check_pair",
    "boundary_identity_check",
    "gradient_J",
    "fits_common_quadratic",
    "verify_counterexample",
    "scan_incomparable",
]


def _default_grid() -> Tuple[Fraction, ...]:
    grid = {Fraction(j, 16) for j in range(65)}
    grid |= {Fraction(v) for v in (2, 3, 5, 10, 100, 1000)}
    grid |= {Fraction(1, 32), Fraction(1, 64)}
    return tuple(sorted(grid))


# 71 distinct values: dense on [0, 4] plus a few far-out ones
DEFAULT_T_GRID = _default_grid()


@dataclass(frozen=True)
class Config:
    samples: int = 1000
    seed: int = 0
    t_grid: Tuple[Fraction, ...] = DEFAULT_T_GRID
    n_range: Tuple[int, int] = (1, 6)
    numerator_bound: int = 100
    chain_samples: int = 100

    def __post_init__(self):
        if self.samples < 1 or self.chain_samples < 1:
            raise DomainError("sample counts must be positive")
        if self.numerator_bound < 1:
            raise DomainError("numerator_bound must be positive")
        lo, hi = self.n_range
        if lo < 1 or hi < lo:
            raise DomainError(f"bad n range {lo}..{hi}")
        if not self.t_grid or any(t < 0 for t in self.t_grid):
            raise DomainError("t_grid must be nonempty and nonnegative")

    @property
    def ns(self) -> range:
        return range(self.n_range[0], self.n_range[1] + 1)

    @classmethod
    def from_mapping(cls, data: dict, base: Optional["Config"] = None) -> "Config":
        """Build from JSON-style values (strings like ``"2..5"`` accepted)."""
        base = base or cls()
        known = {f.name for f in fields(cls)}
        changes = {}
        for key, value in data.items():
            key = key.replace("-", "_")
            if key not in known:
                raise DomainError(f"unknown config key {key!r}")
            if key == "t_grid":
                if isinstance(value, str):
                    value = value.split(",")
                changes[key] = tuple(sorted({parse_rational(str(v)) for v in value}))
            elif key == "n_range":
                changes[key] = parse_n_range(value)
            else:
                changes[key] = int(value)
        return replace(base, **changes)

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "t_grid": [format_rational(t) for t in self.t_grid],
            "n_range": list(self.n_range),
            "numerator_bound": self.numerator_bound,
            "chain_samples": self.chain_samples,
        }


def parse_n_range(value) -> Tuple[int, int]:
    """``3``, ``"3"``, ``"2..5"``, ``[2, 5]`` -> inclusive ``(lo, hi)``."""
    if isinstance(value, int):
        return (value, value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return (int(value[0]), int(value[1]))
    text = str(value).strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return (int(lo), int(hi))
        return (int(text), int(text))
    except ValueError:
        raise ParseError(f"bad n range {value!r}; use N or LO..HI") from None


# -- result types -----------------------------------------------------------------------


class Status(str, enum.Enum):
    HOLDS = "holds_on_evidence"
    COUNTEREXAMPLE = "counterexample_found"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ProfilePoint:
    """``(t, ..., t, 1, ..., 1)`` with ``u`` copies of t and ``v`` ones."""

    t: Fraction
    u: int
    v: int

    def __post_init__(self):
        if self.u < 1 or self.v < 0 or self.t < 0:
            raise DomainError(f"bad profile t={self.t}, u={self.u}, v={self.v}")

    @property
    def n(self) -> int:
        return self.u + self.v

    def point(self) -> EvalPoint:
        return EvalPoint([self.t] * self.u + [Fraction(1)] * self.v)

    def on_simplex(self) -> EvalPoint:
        return self.point().scaled(Fraction(1) / (self.u * self.t + self.v))

    def to_dict(self) -> dict:
        return {"t": format_rational(self.t), "u": self.u, "v": self.v}


@dataclass(frozen=True)
class Witness:
    point: EvalPoint
    value_mu: Fraction
    value_lam: Fraction

    def to_dict(self) -> dict:
        return {
            "point": [format_rational(c) for c in self.point],
            "value_mu": format_rational(self.value_mu),
            "value_lam": format_rational(self.value_lam),
        }


@dataclass(frozen=True)
class ProfileScan:
    minimum: Fraction
    profile: ProfilePoint
    profiles_checked: int

    def to_dict(self) -> dict:
        return {
            "minimum": format_rational(self.minimum),
            "argmin": self.profile.to_dict(),
            "profiles_checked": self.profiles_checked,
        }


@dataclass
class InequalityVerdict:
    mu: Partition
    lam: Partition
    n_range: Tuple[int, int]
    status: Status
    family: Family = Family.COMPLETE_H
    witness: Optional[Witness] = None
    evidence: List[dict] = field(default_factory=list)

    def __post_init__(self):
        if self.status is Status.COUNTEREXAMPLE:
            w = self.witness
            if w is None or not w.value_mu < w.value_lam:
                raise DomainError("a counterexample verdict needs a strict violation witness")

    def to_dict(self) -> dict:
        return {
            "mu": self.mu.compact(),
            "lambda": self.lam.compact(),
            "family": self.family.value,
            "n_range": list(self.n_range),
            "status": self.status.value,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "evidence": self.evidence,
        }


# -- evaluation helpers -----------------------------------------------------------------


def _witness(family: Family, mu: Partition, lam: Partition, pt: EvalPoint) -> Witness:
    return Witness(pt, eval_normalized(family, pt.n, mu, pt), eval_normalized(family, pt.n, lam, pt))


def _profile_difference_h(mu: Partition, lam: Partition, prof: ProfilePoint,
                          w_mu: int, w_lam: int, kmax: int) -> Fraction:
    # power sums at a profile are u t^i + v, no need to expand the point
    psums = [prof.n] + [prof.u * prof.t ** i + prof.v for i in range(1, kmax + 1)]
    h = kernels.h_from_power_sums(psums, kmax)
    a = math.prod((h[p] for p in mu.parts), start=Fraction(1))
    b = math.prod((h[p] for p in lam.parts), start=Fraction(1))
    return Fraction(a) / w_mu - Fraction(b) / w_lam


def profile_scan(pair: Tuple[Partition, Partition], n: int,
                 t_grid: Sequence = DEFAULT_T_GRID, family=Family.COMPLETE_H) -> ProfileScan:
    """Exact minimum of F_mu - F_lam over profiles with u + v = n, u >= 1, t in the grid.

    Ties keep the first profile in (u ascending, grid order).
    """
    mu, lam = pair
    family = Family.parse(family)
    if n < 2:
        raise DomainError(f"profile scans need n >= 2, got {n}")
    grid = [Fraction(t) for t in t_grid]
    if not grid or any(t < 0 for t in grid):
        raise DomainError("t_grid must be nonempty and nonnegative")
    best: Optional[Tuple[Fraction, ProfilePoint]] = None
    count = 0
    if family is Family.COMPLETE_H:
        w_mu = normalization_constant(family, n, mu)
        w_lam = normalization_constant(family, n, lam)
        kmax = max(mu.parts + lam.parts)
    for u in range(1, n + 1):
        for t in grid:
            prof = ProfilePoint(t, u, n - u)
            if family is Family.COMPLETE_H:
                diff = _profile_difference_h(mu, lam, prof, w_mu, w_lam, kmax)
            else:
                pt = prof.point()
                diff = eval_normalized(family, n, mu, pt) - eval_normalized(family, n, lam, pt)
            count += 1
            if best is None or diff < best[0]:
                best = (diff, prof)
    return ProfileScan(best[0], best[1], count)


def _vertex_points(n: int) -> List[EvalPoint]:
    return [EvalPoint([1] * k + [0] * (n - k)) for k in range(1, n + 1)]


def _sample_points(n: int, samples: int, seed: int, bound: int) -> Tuple[List[EvalPoint], int]:
    """Boundary points first, then interior ones; returns (points, boundary_count)."""
    rng = random.Random(seed)
    n_boundary = samples // 2 if n >= 2 else 0
    pts = [random_point(rng, n, bound, zeros=rng.randint(1, n - 1)) for _ in range(n_boundary)]
    pts += [random_point(rng, n, bound) for _ in range(samples - n_boundary)]
    return pts, n_boundary


def _first_violation(family: Family, mu: Partition, lam: Partition,
                     points: Sequence[EvalPoint]) -> int:
    n = points[0].n if points else 0
    if family is Family.COMPLETE_H:
        # degrees match, so scaling to integers multiplies both sides by L^d
        ints = [integer_scaling(p.coords)[0] for p in points]
        return kernels.first_violation(
            ints, mu.parts, lam.parts,
            normalization_constant(family, n, mu), normalization_constant(family, n, lam),
        )
    for idx, pt in enumerate(points):
        if eval_normalized(family, n, mu, pt) < eval_normalized(family, n, lam, pt):
            return idx
    return -1


def _run_stages(family: Family, mu: Partition, lam: Partition, n: int, seed: int,
                stages) -> Tuple[Optional[Witness], List[dict]]:
    evidence = []
    for name, points in stages:
        if not points:
            continue
        idx = _first_violation(family, mu, lam, points)
        checked = len(points) if idx < 0 else idx + 1
        evidence.append({"check": name, "n": n, "count": checked, "seed": seed})
        if idx >= 0:
            return _witness(family, mu, lam, points[idx]), evidence
    return None, evidence


def _validate(pair, n: int, family: Family):
    mu, lam = pair
    if mu.degree != lam.degree:
        raise DomainError("both partitions must have the same degree")
    if n < 1:
        raise DomainError(f"need n >= 1, got n={n}")
    for part in (mu, lam):
        normalization_constant(family, n, part)  # validates family/shape


def _verdict(mu, lam, n, family, witness, evidence) -> InequalityVerdict:
    status = Status.HOLDS if witness is None else Status.COUNTEREXAMPLE
    return InequalityVerdict(mu, lam, (n, n), status, family, witness, evidence)


def sample_check(pair: Tuple[Partition, Partition], n: int, samples: int = 1000,
                 seed: int = 0, family=Family.COMPLETE_H,
                 numerator_bound: int = 100, vertices: bool = True) -> InequalityVerdict:
    """Seeded exact falsifier for F_{n,mu} >= F_{n,lam}.

    Visits the 0/1 points (1^k, 0^(n-k)) unless ``vertices`` is false, then
    ``samples`` random rational points (the first half with forced zero
    coordinates).  Stops at the first violation.
    """
    mu, lam = pair
    family = Family.parse(family)
    _validate(pair, n, family)
    if samples < 1:
        raise DomainError(f"samples must be positive, got {samples}")
    stages = [("vertices", _vertex_points(n))] if vertices else []
    pts, n_boundary = _sample_points(n, samples, seed, numerator_bound)
    stages.append(("boundary_samples", pts[:n_boundary]))
    stages.append(("interior_samples", pts[n_boundary:]))
    witness, evidence = _run_stages(family, mu, lam, n, seed, stages)
    return _verdict(mu, lam, n, family, witness, evidence)


def check_pair(pair: Tuple[Partition, Partition], n: int, config: Config = Config(),
               family=Family.COMPLETE_H) -> InequalityVerdict:
    """0/1 vertices, then the profile scan (n >= 2), then random sampling, for one n."""
    mu, lam = pair
    family = Family.parse(family)
    _validate(pair, n, family)
    witness, evidence = _run_stages(family, mu, lam, n, config.seed,
                                    [("vertices", _vertex_points(n))])
    if witness is None and n >= 2:
        scan = profile_scan(pair, n, config.t_grid, family)
        evidence.append({"check": "profile_scan", "n": n, **scan.to_dict()})
        if scan.minimum < 0:
            witness = _witness(family, mu, lam, scan.profile.point())
    if witness is None:
        rest = sample_check(pair, n, config.samples, config.seed, family,
                            config.numerator_bound, vertices=False)
        witness = rest.witness
        evidence += rest.evidence
    return _verdict(mu, lam, n, family, witness, evidence)


def _merge(mu, lam, family, verdicts: Sequence[InequalityVerdict]) -> InequalityVerdict:
    lo = min(v.n_range[0] for v in verdicts)
    hi = max(v.n_range[1] for v in verdicts)
    evidence = [e for v in verdicts for e in v.evidence]
    for v in verdicts:
        if v.status is Status.COUNTEREXAMPLE:
            return InequalityVerdict(mu, lam, (lo, hi), v.status, family, v.witness, evidence)
    return InequalityVerdict(mu, lam, (lo, hi), Status.HOLDS, family, None, evidence)


# -- structural checks ------------------------------------------------------------------


def boundary_identity_check(n: int, p) -> bool:
    """k1 J_n(p) - k2 J_{n-1}(p~) == (T(n) - T(n-1)) h_{n,(2^4)}(p) at a boundary point."""
    coords = p.coords if isinstance(p, EvalPoint) else p
    lhs, rhs = boundary_identity(n, coords)
    return lhs == rhs


def gradient_J(x: Sequence) -> List[Fraction]:
    """Exact gradient of J_n = H_{(2^4)} - H_{(3,1^5)} via d h_k / d x_i = sum_j h_j x_i^(k-1-j)."""
    xs = [Fraction(c) for c in x]
    n = len(xs)
    h = complete_h_upto(EvalPoint(xs, identity_mode=True), 3)
    k1 = math.comb(n + 1, 2) ** 4
    k2 = math.comb(n + 2, 3) * n ** 5
    out = []
    for xi in xs:
        dh1 = h[0]
        dh2 = h[0] * xi + h[1]
        dh3 = h[0] * xi ** 2 + h[1] * xi + h[2]
        first = 4 * h[2] ** 3 * dh2 / k1
        second = (dh3 * h[1] ** 5 + 5 * h[3] * h[1] ** 4 * dh1) / k2
        out.append(first - second)
    return out


def fits_common_quadratic(xs: Sequence, ys: Sequence) -> bool:
    """True iff all pairs (x_i, y_i) lie on one polynomial of degree <= 2."""
    nodes = {}
    for x, y in zip(xs, ys):
        x, y = Fraction(x), Fraction(y)
        if x in nodes and nodes[x] != y:
            return False
        nodes[x] = y
    pts = list(nodes.items())
    if len(pts) <= 3:
        return True
    base = pts[:3]

    def interp(z):
        total = Fraction(0)
        for i, (xi, yi) in enumerate(base):
            term = yi
            for j, (xj, _) in enumerate(base):
                if i != j:
                    term *= (z - xj) / (xi - xj)
            total += term
        return total

    return all(interp(x) == y for x, y in pts[3:])


# -- theorem evidence ---------------------------------------------------------------------


@dataclass
class TheoremEvidence:
    d: int
    mu: Partition
    lam: Partition
    mu_majorizes_lam: bool
    verdict: InequalityVerdict
    certificate: dict
    reductions: List[dict]
    config: Config

    @property
    def supported(self) -> bool:
        return (not self.mu_majorizes_lam and self.verdict.status is Status.HOLDS
                and self.certificate.get("valid", False))

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "mu": self.mu.compact(),
            "lambda": self.lam.compact(),
            "mu_majorizes_lambda": self.mu_majorizes_lam,
            "verdict": self.verdict.to_dict(),
            "violations": 0 if self.verdict.status is Status.HOLDS else 1,
            "certificate": self.certificate,
            "reductions": self.reductions,
            "supported": self.supported,
        }


def _reduction_chain(d: int, config: Config) -> List[dict]:
    """Identities tying the degree-d pair back to the d = 8 certificate."""
    m = d // 2
    steps = []
    if d % 2:
        for n in config.ns:
            odd_reduction_identity(n, m, config.chain_samples, config.seed)
        steps.append({"name": "odd_reduction", "from_degree": d, "to_degree": 2 * m,
                      "ns": list(config.n_range), "samples": config.chain_samples,
                      "status": "pass"})
    for mm in range(m, 4, -1):
        for n in config.ns:
            ratio_step_identity(n, mm, mode="sampled", samples=config.chain_samples, seed=config.seed)
        steps.append({"name": "ratio_step", "from_degree": 2 * mm, "to_degree": 2 * mm - 2,
                      "ns": list(config.n_range), "samples": config.chain_samples,
                      "status": "pass"})
    return steps


def verify_counterexample(d: int, config: Config = Config(), strict: bool = True) -> TheoremEvidence:
    """Collect the evidence that the degree-d pair refutes "inequality implies majorization".

    Any negative evidence contradicts a proved statement; with ``strict``
    (the default) it raises ClaimViolation instead of being returned.
    """
    mu, lam = counterexample_pair(d)
    maj = majorizes(mu, lam)
    per_n = [check_pair((mu, lam), n, config) for n in config.ns]
    verdict = _merge(mu, lam, Family.COMPLETE_H, per_n)
    cert = default_d8_certificate()
    try:
        reductions = _reduction_chain(d, config)
    except CertificateError as exc:
        reductions = [{"name": exc.step, "status": "fail", "error": str(exc)}]
    evidence = TheoremEvidence(d, mu, lam, maj, verdict, cert.to_dict(), reductions, config)
    problems = []
    if maj:
        problems.append(f"{mu} unexpectedly majorizes {lam}")
    if verdict.status is Status.COUNTEREXAMPLE:
        problems.append(f"violation at {verdict.witness.point}")
    if not cert.valid:
        problems.append("d = 8 certificate failed")
    if any(r["status"] != "pass" for r in reductions):
        problems.append("reduction chain failed")
    if problems:
        msg = f"evidence contradicts the d={d} claim: " + "; ".join(problems)
        log.error(msg)
        if strict:
            raise ClaimViolation(msg, verdict)
    return evidence


# -- exploratory scan -------------------------------------------------------------------


@dataclass
class PairScan:
    mu: Partition
    lam: Partition
    verdicts: List[InequalityVerdict]

    @property
    def violated(self) -> bool:
        return any(v.status is Status.COUNTEREXAMPLE for v in self.verdicts)

    @property
    def witness(self) -> Optional[Witness]:
        for v in self.verdicts:
            if v.witness is not None:
                return v.witness
        return None

    def to_dict(self) -> dict:
        w = self.witness
        witness_n = next((v.n_range[0] for v in self.verdicts if v.witness is not None), None)
        return {
            "mu": self.mu.compact(),
            "lambda": self.lam.compact(),
            "violated": self.violated,
            "witness_n": witness_n,
            "witness": None if w is None else w.to_dict(),
            "per_n": {str(v.n_range[0]): v.status.value for v in self.verdicts},
        }


def incomparable_pairs(d: int) -> List[Tuple[Partition, Partition]]:
    """Ordered pairs of partitions of d with neither majorizing the other."""
    parts = enumerate_partitions(d)
    return [(a, b) for a in parts for b in parts if a != b and not comparable(a, b)]


def scan_incomparable(d: int, config: Config = Config(), family=Family.COMPLETE_H,
                      pairs: Optional[Iterable[Tuple[Partition, Partition]]] = None) -> List[PairScan]:
    """Search every ordered incomparable pair of Par(d) for violations.

    A pair without a violation over the whole n range is a candidate
    counterexample to "inequality for all n implies majorization".  Each
    pair stops at its first violating n.
    """
    if d < 2:
        raise DomainError(f"d must be at least 2, got {d}")
    family = Family.parse(family)
    out = []
    for mu, lam in (incomparable_pairs(d) if pairs is None else pairs):
        verdicts = []
        for n in config.ns:
            if family is Family.MONOMIAL and max(len(mu), len(lam)) > n:
                continue
            v = check_pair((mu, lam), n, config, family)
            verdicts.append(v)
            if v.status is Status.COUNTEREXAMPLE:
                break
        out.append(PairScan(mu, lam, verdicts))
    return out
