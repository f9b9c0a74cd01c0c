"""Certificates for 2-adic image containments of hyperelliptic Jacobians over Q.

Three input shapes are supported:

* ``y^2 = f(x)(x - lam)`` with f irreducible,
* ``y^2 = f(x)(x - lam)(x - lam2)``,
* ``y^2 = prod(x - alpha_i)`` with integer roots.

A certificate asserts that the hypotheses of the relevant criterion hold for
the recorded witness primes, hence that the 2-adic image intersected with
Sp(T_2) properly contains Gamma(2^k). The image itself is never computed.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from galois2.arith import FactorBudget, FactorizationIncomplete, factor, is_prime, v2, vp
from galois2.poly import IntPoly, discriminant, format_poly, irreducibility_witness, is_squarefree

CERTIFIED = "Certified"
CONDITIONAL = "CertifiedConditional"
NOT_CERTIFIED = "NotCertified"

THM_LAMBDA = "irreducible_plus_lambda"
THM_TWO_LAMBDAS = "irreducible_plus_two_lambdas"
THM_SPLIT = "split_roots"

HYPOTHESES = {
    THM_LAMBDA: "y^2 = f(x)(x - lam): some prime p | f(lam) with p not dividing 2*disc(f)",
    THM_TWO_LAMBDAS: (
        "y^2 = f(x)(x - lam)(x - lam'): p | f(lam), p not dividing (lam - lam')*2*disc(f); "
        "p' | lam - lam', p' not dividing f(lam)*2*disc(f)"
    ),
    THM_SPLIT: (
        "y^2 = prod(x - alpha_i): distinct odd primes p_i | alpha_d' - alpha_i dividing "
        "no other root difference"
    ),
}


class NotApplicable(ValueError):
    pass


def genus_of(d_prime: int) -> int:
    return (d_prime - 1) // 2


@dataclass
class Witness:
    p: int
    m: int
    v2m: int


@dataclass
class Certificate:
    status: str
    theorem: str
    d: int
    d_prime: int
    genus: int
    witnesses: list[Witness] = field(default_factory=list)
    level_exponent: int | None = None
    gamma_level: int | None = None
    openness: bool = False
    index_bound: int | None = None
    conditional_reasons: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    reason: str | None = None

    @property
    def certified(self) -> bool:
        return self.status in (CERTIFIED, CONDITIONAL)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> Certificate:
        data = dict(data)
        data["witnesses"] = [Witness(**w) for w in data.get("witnesses", [])]
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        return cls.from_dict(json.loads(text))

    def human(self) -> str:
        lines = [f"status: {self.status}" + (f" ({self.reason})" if self.reason else "")]
        lines.append(f"hypothesis: {HYPOTHESES[self.theorem]}")
        lines.append(f"model degree d' = {self.d_prime}, genus {self.genus}")
        for w in self.witnesses:
            lines.append(f"witness p = {w.p}, m = {w.m}, v2(m) = {w.v2m}")
        if self.level_exponent is not None:
            rel = "contains" if self.d_prime == 4 and self.theorem == THM_SPLIT else "properly contains"
            lines.append(f"G_2 meet Sp(T_2 J) {rel} Gamma({self.gamma_level}) (k = {self.level_exponent})")
        if self.index_bound is not None:
            lines.append(f"[Gamma(2) : G_2] <= {self.index_bound}")
        lines += [f"conditional: {c}" for c in self.conditional_reasons]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def _with_level(cert: Certificate, k: int) -> Certificate:
    cert.level_exponent = k
    cert.gamma_level = 1 << k
    cert.openness = True
    return cert


def index_bound(n: int, g: int, d_prime: int, nprime: int | None = None) -> int:
    """2^((2n+1)(2g^2+g) - (n+1)(d'-1)), stated only for n = n'."""
    if nprime is not None and nprime != n:
        raise NotApplicable("index bound is only available when n = n'")
    if n < 0 or g < 1:
        raise NotApplicable("need n >= 0 and g >= 1")
    exp = (2 * n + 1) * (2 * g * g + g) - (n + 1) * (d_prime - 1)
    if exp < 0:
        raise NotApplicable(f"exponent {exp} is negative")
    return 1 << exp


def _try_index_bound(n: int, g: int, d_prime: int) -> int | None:
    try:
        return index_bound(n, g, d_prime)
    except NotApplicable:
        return None


def _check_f(f: IntPoly) -> None:
    if not f.is_monic:
        raise ValueError("f must be monic")
    if f.degree < 2:
        raise ValueError("f must have degree >= 2")
    if not is_squarefree(f):
        raise ValueError("f must be squarefree")


def level_one_lambda(v: int, d: int) -> int:
    k = 2 * v + 2
    return min(k, v + 1) if d == 3 else k


def level_two_lambdas(v: int, vprime: int, d: int) -> int:
    k = 2 * v + 2 if (vprime <= v or d % 2 == 0) else v + vprime + 2
    return min(k, max(v, vprime) + 1) if d == 2 else k


def level_split(n: int, nprime: int, d_prime: int) -> int:
    k = 2 * n + 2 if (nprime <= n or d_prime % 2 == 0) else n + nprime + 2
    return min(k, max(n, nprime) + 1) if d_prime == 4 else k


def _irreducibility(f: IntPoly, cert: Certificate) -> bool:
    """Record the irreducibility verdict; False means f is proven reducible."""
    verdict = irreducibility_witness(f)
    if verdict.disproven:
        cert.status = NOT_CERTIFIED
        cert.reason = "Reducible"
        cert.notes.append(f"f is reducible ({verdict.witness})")
        return False
    if not verdict.proven:
        cert.conditional_reasons.append("irreducibility of f not proven")
    else:
        cert.notes.append(f"f irreducible: {verdict.witness}")
    return True


def _finish(cert: Certificate) -> Certificate:
    cert.status = CONDITIONAL if cert.conditional_reasons else CERTIFIED
    return cert


def certify_thm1(f: IntPoly, lam: int, budget: FactorBudget | None = None) -> Certificate:
    """Certificate for y^2 = f(x)(x - lam). Raises FactorizationIncomplete to abstain."""
    _check_f(f)
    d = f.degree
    cert = Certificate(NOT_CERTIFIED, THM_LAMBDA, d, d + 1, genus_of(d + 1))
    value = f(lam)
    if value == 0:
        raise ValueError(f"f({lam}) = 0, so the curve is singular")
    if not _irreducibility(f, cert):
        return cert
    if abs(value) == 1:
        cert.reason = "UnitValue"
        return cert
    two_delta = 2 * discriminant(f)
    good = [(v2(m), p, m) for p, m in factor(value, budget) if two_delta % p]
    if not good:
        cert.reason = "AllPrimesDivide2Delta"
        cert.notes.append(f"every prime of f(lam) = {value} divides 2*disc = {two_delta}")
        return cert
    v, p, m = min(good)
    cert.witnesses = [Witness(p, m, v)]
    _with_level(cert, level_one_lambda(v, d))
    cert.index_bound = _try_index_bound(v, cert.genus, cert.d_prime)
    return _finish(cert)


def certify_thm2(f: IntPoly, lam: int, lam2: int, budget: FactorBudget | None = None) -> Certificate:
    """Certificate for y^2 = f(x)(x - lam)(x - lam2)."""
    _check_f(f)
    if lam == lam2:
        raise ValueError("lam and lam' must differ")
    d = f.degree
    cert = Certificate(NOT_CERTIFIED, THM_TWO_LAMBDAS, d, d + 2, genus_of(d + 2))
    value, value2 = f(lam), f(lam2)
    if value == 0 or value2 == 0:
        raise ValueError("f(lam) and f(lam') must be nonzero")
    if not _irreducibility(f, cert):
        return cert
    if abs(value) == 1:
        cert.reason = "UnitValue"
        return cert
    diff = lam - lam2
    two_delta = 2 * discriminant(f)
    ps = [(p, m) for p, m in factor(value, budget) if diff % p and two_delta % p]
    pps = [] if abs(diff) == 1 else [(p, m) for p, m in factor(diff, budget) if value % p and two_delta % p]
    if not pps:
        cert.reason = "NoPrimeForDifference"
        if not ps:
            cert.notes.append("no qualifying prime for f(lam) either")
        return cert
    if not ps:
        cert.reason = "NoPrimeForFLambda"
        return cert
    k, p, pp, m, mm = min(
        (level_two_lambdas(v2(m), v2(mm), d), p, pp, m, mm) for p, m in ps for pp, mm in pps
    )
    cert.witnesses = [Witness(p, m, v2(m)), Witness(pp, mm, v2(mm))]
    _with_level(cert, k)
    if v2(m) == v2(mm):
        cert.index_bound = _try_index_bound(v2(m), cert.genus, cert.d_prime)
    return _finish(cert)


def split_candidates(roots: Sequence[int], budget: FactorBudget | None = None) -> list[list[tuple[int, int]]]:
    """For each i < d', the odd primes (with multiplicity) isolating the pair {alpha_i, alpha_d'}."""
    last = roots[-1]
    out = []
    for i in range(len(roots) - 1):
        diff = last - roots[i]
        others = [
            roots[a] - roots[b]
            for a, b in combinations(range(len(roots)), 2)
            if {a, b} != {i, len(roots) - 1}
        ]
        cands = []
        if abs(diff) > 1:
            for p, m in factor(diff, budget):
                if p != 2 and all(x % p for x in others):
                    cands.append((p, m))
        out.append(cands)
    return out


def _assignments(cands: list[list[tuple[int, int]]]) -> Iterator[list[tuple[int, int]]]:
    chosen: list[tuple[int, int]] = []
    used: set[int] = set()

    def walk(i):
        if i == len(cands):
            yield list(chosen)
            return
        for p, m in cands[i]:
            if p in used:
                continue
            used.add(p)
            chosen.append((p, m))
            yield from walk(i + 1)
            chosen.pop()
            used.discard(p)

    yield from walk(0)


def certify_split(roots: Sequence[int], budget: FactorBudget | None = None) -> Certificate:
    """Certificate for y^2 = prod(x - alpha_i); the last root is the distinguished one."""
    roots = [int(a) for a in roots]
    dp = len(roots)
    if dp < 3:
        raise ValueError("need at least 3 roots")
    if len(set(roots)) != dp:
        raise ValueError("roots must be pairwise distinct")
    cert = Certificate(NOT_CERTIFIED, THM_SPLIT, dp, dp, genus_of(dp))
    best = None
    for assignment in _assignments(split_candidates(roots, budget)):
        vs = [v2(m) for _, m in assignment]
        n = max(vs[:-1])
        k = level_split(n, vs[-1], dp)
        key = (k, [p for p, _ in assignment])
        if best is None or key < best[0]:
            best = (key, assignment)
    if best is None:
        cert.reason = "NoAssignment"
        return cert
    (k, _), assignment = best
    cert.witnesses = [Witness(p, m, v2(m)) for p, m in assignment]
    _with_level(cert, k)
    if dp == 4:
        cert.notes.append("degree-4 level is a containment, not necessarily proper")
    if len({w.v2m for w in cert.witnesses}) == 1:
        cert.index_bound = _try_index_bound(cert.witnesses[0].v2m, cert.genus, dp)
    return _finish(cert)


def sigma_class(f: IntPoly, lam: int, s: int, budget: FactorBudget | None = None) -> bool:
    """Whether f(lam) lies in Sigma * (Q^x)^s, Sigma generated by primes dividing 2*disc(f).

    s = 0 tests membership in Sigma (up to sign) itself.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    value = f(lam)
    if value == 0:
        raise ValueError(f"f({lam}) = 0")
    two_delta = 2 * discriminant(f)
    for p, m in factor(value, budget):
        if two_delta % p and (m != 0 if s == 0 else m % s):
            return False
    return True


SCAN_OUTCOMES = (
    "Certified",
    "CertifiedConditional",
    "SigmaObstructed",
    "UnitValue",
    "Degenerate",
    "Reducible",
    "Abstained",
)


@dataclass
class ScanReport:
    f: str
    lo: int
    hi: int
    rows: list[dict]

    @property
    def counts(self) -> dict[str, int]:
        out = {k: 0 for k in SCAN_OUTCOMES}
        for r in self.rows:
            out[r["outcome"]] += 1
        return out

    @property
    def non_certified(self) -> list[int]:
        return [r["lambda"] for r in self.rows if r["outcome"] not in ("Certified", "CertifiedConditional")]

    def outcome(self, lam: int) -> str:
        return self.rows[lam - self.lo]["outcome"]

    def to_dict(self) -> dict:
        return {
            "f": self.f,
            "range": [self.lo, self.hi],
            "counts": self.counts,
            "non_certified": self.non_certified,
            "rows": self.rows,
        }


def scan(f: IntPoly, lo: int, hi: int, budget: FactorBudget | None = None) -> ScanReport:
    """certify_thm1 over lam in [lo, hi]; an empty range gives an empty report."""
    _check_f(f)
    rows = []
    for lam in range(lo, hi + 1):
        row = {"lambda": lam, "outcome": None, "level_exponent": None}
        if f(lam) == 0:
            row["outcome"] = "Degenerate"
        else:
            try:
                cert = certify_thm1(f, lam, budget)
            except FactorizationIncomplete:
                row["outcome"] = "Abstained"
            else:
                if cert.certified:
                    row["outcome"] = cert.status
                    row["level_exponent"] = cert.level_exponent
                elif cert.reason == "AllPrimesDivide2Delta":
                    row["outcome"] = "SigmaObstructed"
                else:
                    row["outcome"] = cert.reason
        rows.append(row)
    return ScanReport(format_poly(f), lo, hi, rows)


# ---- replay ---------------------------------------------------------------


def _exact(x: int, p: int, m: int) -> bool:
    return x != 0 and vp(x, p) == m


def replay(
    cert: Certificate,
    f: IntPoly | None = None,
    lam: int | None = None,
    lam2: int | None = None,
    roots: Sequence[int] | None = None,
) -> bool:
    """Re-verify a certified certificate from its inputs without reusing any search state."""
    if not cert.certified:
        return True
    ws = cert.witnesses
    if any(not is_prime(w.p) or w.v2m != v2(w.m) or w.m < 1 for w in ws):
        return False
    if cert.gamma_level != 1 << cert.level_exponent:
        return False
    if cert.theorem == THM_LAMBDA:
        two_delta = 2 * discriminant(f)
        (w,) = ws
        return (
            _exact(f(lam), w.p, w.m)
            and two_delta % w.p != 0
            and cert.d_prime == f.degree + 1
            and cert.level_exponent == level_one_lambda(w.v2m, f.degree)
        )
    if cert.theorem == THM_TWO_LAMBDAS:
        two_delta = 2 * discriminant(f)
        w, ww = ws
        value, diff = f(lam), lam - lam2
        return (
            _exact(value, w.p, w.m)
            and diff % w.p != 0
            and two_delta % w.p != 0
            and _exact(diff, ww.p, ww.m)
            and value % ww.p != 0
            and two_delta % ww.p != 0
            and cert.d_prime == f.degree + 2
            and cert.level_exponent == level_two_lambdas(w.v2m, ww.v2m, f.degree)
        )
    if cert.theorem == THM_SPLIT:
        roots = list(roots)
        dp = len(roots)
        if len(ws) != dp - 1 or len({w.p for w in ws}) != len(ws):
            return False
        for i, w in enumerate(ws):
            if w.p == 2 or not _exact(roots[-1] - roots[i], w.p, w.m):
                return False
            for a, b in combinations(range(dp), 2):
                if {a, b} != {i, dp - 1} and (roots[a] - roots[b]) % w.p == 0:
                    return False
        n = max(w.v2m for w in ws[:-1])
        return cert.level_exponent == level_split(n, ws[-1].v2m, dp)
    return False
