"""Fiberedness and strong quasi-positivity of links, with tau and SL.

Two routes are available.  Non-split alternating diagrams use closed
formulas in the Conway polynomial and the signature.  Other links need the
grid oracle: fiberedness from the top Alexander grading of the hat theory,
and strong quasi-positivity from comparing tau_max with s_top.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .diagram import LinkDiagram
from .gridfloer import GridHomologyTable
from .invariants import conway_polynomial, genus_and_norm_alternating, signature
from .polynomial import ConwayPolynomial
from .seifert import seifert_algorithm


class Method(str, Enum):
    ALTERNATING = "alternating-formula"
    GRID = "grid-oracle"
    UNKNOWN = "unknown"


class ConsistencyAlarm(RuntimeError):
    """Computed data contradict one of the identities the pipeline relies on."""


def detect_fibered_alternating(conway: ConwayPolynomial, n: int, split: bool) -> bool:
    """A non-split alternating link is fibered iff its Conway polynomial is monic up to sign."""
    if split or conway.is_zero():
        return False
    return abs(conway.leading_coefficient) == 1


def detect_sqp_alternating(conway: ConwayPolynomial, sigma: int) -> bool:
    """True iff the Conway polynomial is +-z^(-sigma) plus lower order terms."""
    if conway.is_zero() or -sigma < 0:
        return False
    return conway.degree == -sigma and abs(conway.leading_coefficient) == 1


def tau_alternating(sigma: int, n: int) -> int:
    num = n - 1 - sigma
    if num % 2:
        raise ArithmeticError(f"n - 1 - sigma = {num} is odd (n={n}, sigma={sigma})")
    return num // 2


def max_self_linking(tau: int, n: int) -> int:
    return 2 * tau - n


def main_theorem_check(tau: int, g3: int, n: int) -> bool:
    """For a fibered link: strongly quasi-positive iff tau = g3 + n - 1."""
    return tau == g3 + n - 1


def mirror_conway(conway: ConwayPolynomial, n: int) -> ConwayPolynomial:
    return conway if n % 2 else -conway


@dataclass
class InvariantReport:
    name: str | None
    n: int
    alternating: bool
    split: bool
    conway: ConwayPolynomial | None
    signature: int | None
    g3: int | None = None
    norm: int | None = None
    fibered: bool | None = None
    sqp_L: bool | None = None
    sqp_mirror: bool | None = None
    tau: int | None = None
    tau_mirror: int | None = None
    SL: int | None = None
    method: Method = Method.UNKNOWN
    s_top: int | None = None
    tau_min: int | None = None
    tau_max: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def sqp(self) -> bool | None:
        """The table-facing flag: L or its mirror is strongly quasi-positive."""
        if self.sqp_L is None and self.sqp_mirror is None:
            return None
        return bool(self.sqp_L) or bool(self.sqp_mirror)

    @property
    def verdict(self) -> str:
        if self.fibered is None or self.method is Method.UNKNOWN:
            return "unknown"
        if not self.fibered:
            # strong quasi-positivity is only decided for fibered links
            return "unknown"
        if self.sqp:
            return f"Y ({self.SL})"
        return "N"

    def table_line(self) -> str:
        return f"{self.name or '-'}  {self.verdict}"

    def to_dict(self) -> dict:
        def poly(p):
            return None if p is None else str(p)

        return {
            "name": self.name,
            "n": self.n,
            "alternating": self.alternating,
            "split": self.split,
            "conway": poly(self.conway),
            "signature": self.signature,
            "g3": self.g3,
            "thurston_norm": self.norm,
            "fibered": self.fibered,
            "sqp_L": self.sqp_L,
            "sqp_mirror": self.sqp_mirror,
            "sqp": self.sqp,
            "tau": self.tau,
            "SL": self.SL,
            "s_top": self.s_top,
            "tau_min": self.tau_min,
            "tau_max": self.tau_max,
            "method": self.method.value,
            "verdict": self.verdict,
            "mirror": {
                "conway": poly(None if self.conway is None else mirror_conway(self.conway, self.n)),
                "signature": None if self.signature is None else -self.signature,
                "tau": self.tau_mirror,
                "sqp": self.sqp_mirror,
            },
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def to_text(self) -> str:
        def yn(v):
            return "?" if v is None else ("Y" if v else "N")

        d = self.to_dict()
        lines = [
            f"name        {self.name or '-'}",
            f"components  {self.n}",
            f"alternating {yn(self.alternating)}",
            f"split       {yn(self.split)}",
            f"conway      {d['conway']}",
            f"signature   {self.signature}",
            f"g3          {self.g3 if self.g3 is not None else '?'}",
            f"norm        {self.norm if self.norm is not None else '?'}",
            f"fibered     {yn(self.fibered)}",
            f"sqp (L)     {yn(self.sqp_L)}",
            f"sqp (L*)    {yn(self.sqp_mirror)}",
            f"tau         {self.tau if self.tau is not None else '?'}",
            f"SL          {self.SL if self.SL is not None else '?'}",
        ]
        if self.s_top is not None:
            lines.append(f"s_top       {self.s_top}")
            lines.append(f"tau_min     {self.tau_min}")
            lines.append(f"tau_max     {self.tau_max}")
        lines.append(f"method      {self.method.value}")
        lines.append(f"verdict     {self.verdict}")
        lines.extend(f"note        {x}" for x in self.notes)
        return "\n".join(lines)


def _is_unknot_evidence(r: InvariantReport, d: LinkDiagram) -> bool:
    if not d.crossings:
        return True
    return r.n == 1 and r.g3 == 0


def _check_consistency(r: InvariantReport, d: LinkDiagram):
    if r.sqp_L and r.sqp_mirror and not _is_unknot_evidence(r, d):
        raise ConsistencyAlarm(f"{r.name}: both the link and its mirror are flagged strongly quasi-positive")
    if r.fibered and r.sqp_L and r.tau is not None and r.g3 is not None:
        if r.tau != r.g3 + r.n - 1 or r.SL != 2 * r.tau - r.n:
            raise ConsistencyAlarm(f"{r.name}: SQP fibered link violates tau = g3 + n - 1")


def _classical(d: LinkDiagram):
    if d.is_split_diagram():
        return None, ConwayPolynomial.zero(), None
    sd = seifert_algorithm(d)
    return sd, conway_polynomial(sd), signature(sd)


def classify(d: LinkDiagram, oracle: GridHomologyTable | None = None) -> InvariantReport:
    """Full report for the link of ``d`` and its mirror."""
    split = d.is_split_diagram()
    alternating = d.is_alternating()
    sd, conway, sigma = _classical(d)
    r = InvariantReport(d.name, d.n, alternating, split, conway, sigma)

    if split:
        # split links are never fibered
        r.fibered = False
        r.method = Method.ALTERNATING if alternating else Method.UNKNOWN
        r.notes.append("split diagram: not fibered")
        if oracle is not None:
            _apply_oracle(r, oracle, cross_check=True)
        return r

    if alternating:
        r.method = Method.ALTERNATING
        r.g3, r.norm = genus_and_norm_alternating(d, conway, sd)
        r.fibered = detect_fibered_alternating(conway, r.n, split)
        r.tau = tau_alternating(sigma, r.n)
        r.tau_mirror = tau_alternating(-sigma, r.n)
        if r.fibered:
            r.sqp_L = detect_sqp_alternating(conway, sigma)
            r.sqp_mirror = detect_sqp_alternating(mirror_conway(conway, r.n), -sigma)
            if r.sqp_L:
                r.SL = max_self_linking(r.tau, r.n)
            elif r.sqp_mirror:
                r.SL = max_self_linking(r.tau_mirror, r.n)
        if oracle is not None:
            _apply_oracle(r, oracle, cross_check=True)
    elif oracle is not None:
        r.method = Method.GRID
        _apply_oracle(r, oracle, cross_check=False)
    else:
        r.notes.append("non-alternating diagram without grid oracle")
    if r.fibered is False:
        r.notes.append("not fibered: strong quasi-positivity left undecided")
    _check_consistency(r, d)
    return r


def fiberedness_and_sqp_via_oracle(table: GridHomologyTable, g3: int | None = None) -> dict:
    """Fibered/SQP data for L and its mirror from grid homology alone."""
    n = table.n
    out: dict = {"fibered": table.dim_top == 1, "s_top": table.s_top,
                 "tau_min": table.tau_min, "tau_max": table.tau_max}
    out["g3"] = table.s_top - n + 1 if out["fibered"] else g3
    if out["fibered"]:
        out["norm"] = 2 * table.s_top - n if table.s_top else 0
        out["sqp_L"] = table.tau_max == table.s_top
        out["sqp_mirror"] = -table.tau_min == table.s_top
        out["tau"] = table.tau_max
        out["tau_mirror"] = -table.tau_min
        if out["sqp_L"]:
            out["SL"] = 2 * table.tau_max - n
        elif out["sqp_mirror"]:
            out["SL"] = -2 * table.tau_min - n
        else:
            out["SL"] = None
    return out


def _apply_oracle(r: InvariantReport, table: GridHomologyTable, cross_check: bool):
    if table.n != r.n:
        raise ConsistencyAlarm(f"{r.name}: grid has {table.n} components, diagram {r.n}")
    res = fiberedness_and_sqp_via_oracle(table)
    r.s_top, r.tau_min, r.tau_max = table.s_top, table.tau_min, table.tau_max
    if cross_check:
        problems = []
        if r.fibered is not None and res["fibered"] != r.fibered:
            problems.append("fiberedness")
        if r.fibered and r.g3 is not None and res["g3"] != r.g3:
            problems.append("s_top vs g3 + n - 1")
        if not r.split and r.tau is not None and table.tau_max != r.tau:
            problems.append("tau_max vs (n - 1 - sigma)/2")
        if problems:
            raise ConsistencyAlarm(f"{r.name}: grid oracle disagrees on " + ", ".join(problems))
        return
    r.fibered = res["fibered"]
    r.g3 = res["g3"]
    if r.fibered:
        r.norm = res["norm"]
        r.sqp_L, r.sqp_mirror = res["sqp_L"], res["sqp_mirror"]
        r.tau, r.tau_mirror, r.SL = res["tau"], res["tau_mirror"], res["SL"]
    else:
        r.tau = table.tau_max
        r.tau_mirror = -table.tau_min
