"""
Built-in scenarios, user configurations, and the run/search drivers behind the CLI.

A configuration is a JSON object::

    {
      "name": "rational-z4z4",
      "field": {"kind": "rationals"},
      "curve": "rational",                      # or "fermat-cubic"
      "G1": [["1", "-1", "1", "1"]],            # generators, row-major 2x2
      "G2": [["0", "1", "-1/2", "1"]],
      "P1": ["2", "1"], "P2": ["-1", "1"],
      "excluded_characteristics": [2, 3],
      "expect": {"degree": 5, "structures": ["Z/4", "Z/4"], "mode": "inner"}
    }

Field elements are strings ("-1/2") or, over an extension field, lists of
base-field strings, low-to-high in the generator ("a - 1" is ["-1", "1"]).
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from . import criterion
from .elliptic import (
    CubicPoint,
    FermatCubic,
    build_quartic_model,
    find_elliptic_witness,
    outer_delta_check,
    verify_theorem4,
)
from .embedding import construct_model
from .errors import ConfigError, GaloisPointError, InfiniteField
from .fields import Field, field_from_json
from .projective import (
    DEFAULT_CAP,
    FiniteMoebiusGroup,
    generate,
    moebius_from_json,
    point_from_json,
    projective_line,
)

EXIT_OK = 0
EXIT_CRITERION = 2
EXIT_CONSTRUCTION = 3
EXIT_EXPECTATION = 4
EXIT_CONFIG = 5
EXIT_IO = 6


def _klein(alpha: str, neg_inv_alpha: str):
    return [["0", "1", alpha, "0"], ["1", neg_inv_alpha, "1", "-1"]]


SCENARIOS = {
    "rational-z4z4": {
        "name": "rational-z4z4",
        "field": {"kind": "rationals"},
        "curve": "rational",
        "G1": [["1", "-1", "1", "1"]],
        "G2": [["0", "1", "-1/2", "1"]],
        "P1": ["2", "1"],
        "P2": ["-1", "1"],
        "excluded_characteristics": [2, 3],
        "expect": {"degree": 5, "structures": ["Z/4", "Z/4"], "mode": "inner"},
    },
    "rational-klein": {
        "name": "rational-klein",
        "field": {"kind": "rationals"},
        "curve": "rational",
        "params": {"alpha": "2", "alpha_prime": "3"},
        "G1": _klein("2", "-1/2"),
        "G2": _klein("3", "-1/3"),
        "P1": ["1", "3"],
        "P2": ["1", "2"],
        "excluded_characteristics": [2],
        "comment": (
            "Points are taken verbatim with the column action (x:y) -> (ax+by : cx+dy) "
            "and affine coordinate t = x/y; condition (c) holds in this reading. The "
            "published parametrization is written in s = y/x = 1/t; substituting "
            "t = 1/s maps our coordinates onto it up to rescaling X and Y."
        ),
        "expect": {"degree": 5, "structures": ["Z/2xZ/2", "Z/2xZ/2"], "mode": "inner"},
    },
    "rational-mixed": {
        "name": "rational-mixed",
        "field": {"kind": "rationals"},
        "curve": "rational",
        "params": {"alpha": "2"},
        "G1": [["1", "-1", "1", "1"]],
        "G2": _klein("2", "-1/2"),
        "P1": ["1", "2"],
        "P2": ["1", "-1"],
        "excluded_characteristics": [2],
        "comment": "Same point convention as rational-klein.",
        "expect": {"degree": 5, "structures": ["Z/4", "Z/2xZ/2"], "mode": "inner"},
    },
    "rational-z5z5": {
        "name": "rational-z5z5",
        "field": {"kind": "extension", "base": {"kind": "rationals"}, "minpoly": ["-1", "1", "1"]},
        "curve": "rational",
        "G1": [["1", "-1", "1", ["0", "-1"]]],
        "G2": [["0", "1", ["-1", "1"], "1"]],
        "P1": [["0", "1"], ["-1", "2"]],
        "P2": ["1", ["1", "1"]],
        "excluded_characteristics": [2],
        "expect": {"degree": 6, "structures": ["Z/5", "Z/5"], "mode": "inner"},
    },
    "elliptic-fermat": {
        "name": "elliptic-fermat",
        "field": {"kind": "prime", "p": 19},
        "curve": "fermat-cubic",
        "Q": None,
        "excluded_characteristics": [3],
        "comment": "Q = null scans admissible points of E(F_19) in enumeration order.",
        "expect": {"degree": 4, "structures": ["Z/3", "Z/3"], "mode": "inner"},
    },
}


def builtin_config(name: str) -> dict:
    if name not in SCENARIOS:
        raise ConfigError(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}")
    return copy.deepcopy(SCENARIOS[name])


# configuration parsing --------------------------------------------------------------

@dataclass
class RationalSetup:
    field: Field
    G1: FiniteMoebiusGroup
    G2: FiniteMoebiusGroup
    P1: object = None
    P2: object = None
    Q: object = None


def _field(config) -> Field:
    try:
        F = field_from_json(config["field"])
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad field descriptor: {exc}") from exc
    excluded = config.get("excluded_characteristics", [])
    if F.characteristic in excluded:
        raise ConfigError(f"characteristic {F.characteristic} is excluded for this scenario")
    return F


def parse_rational(config: dict, mode: str | None = None) -> RationalSetup:
    F = _field(config)
    try:
        gens1 = [moebius_from_json(F, m) for m in config["G1"]]
        gens2 = [moebius_from_json(F, m) for m in config["G2"]]
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"missing or malformed generators: {exc}") from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"matrix not invertible over {F!r}: {exc}") from exc
    cap = int(config.get("cap", DEFAULT_CAP))
    try:
        G1, G2 = generate(gens1, cap), generate(gens2, cap)
    except GaloisPointError as exc:
        raise ConfigError(str(exc)) from exc
    setup = RationalSetup(F, G1, G2)
    mode = mode or config.get("expect", {}).get("mode", "inner")
    try:
        if mode == "inner" and "P1" in config:
            setup.P1 = point_from_json(F, config["P1"])
            setup.P2 = point_from_json(F, config["P2"])
            if setup.P1 == setup.P2:
                raise ConfigError(f"P1 = P2 = {setup.P1} over {F!r}; two different points are required")
        if config.get("Q") is not None:
            setup.Q = point_from_json(F, config["Q"])
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ConfigError(f"bad point: {exc}") from exc
    return setup


# run reports ----------------------------------------------------------------------------

@dataclass
class RunReport:
    name: str
    config: dict
    status: int = EXIT_OK
    criterion: criterion.CriterionReport | None = None
    model: object = None
    extra: dict = field(default_factory=dict)
    expectation_diffs: list = field(default_factory=list)
    error: str = ""
    lines: list = field(default_factory=list)

    def to_json(self):
        return {
            "name": self.name,
            "config": self.config,
            "status": self.status,
            "criterion": self.criterion.to_json() if self.criterion else None,
            "model": self.model.to_json() if self.model is not None else None,
            "extra": self.extra,
            "expectation_diffs": self.expectation_diffs,
            "error": self.error,
        }

    def render_text(self) -> str:
        out = [f"scenario {self.name}"] + self.lines
        if self.expectation_diffs:
            out.append("expectation mismatches:")
            out += [f"  {d}" for d in self.expectation_diffs]
        if self.error:
            out.append(f"error: {self.error}")
        out.append(f"status: {'OK' if self.status == 0 else 'FAILED'} (exit {self.status})")
        return "\n".join(out) + "\n"


def _group_line(label, G):
    gens = ", ".join(str(g) for g in G.generators)
    return f"{label} = <{gens}>  order {len(G)}  {G.structure()}"


def _criterion_lines(rep: criterion.CriterionReport, p1="P1", p2="P2"):
    lines = [
        f"(a) {'holds' if rep.cond_a.holds else 'FAILS'}: {rep.cond_a.justification}",
        f"(b) {'holds' if rep.cond_b.holds else 'FAILS'}: |G1 ∩ G2| = {rep.cond_b.size}"
        + (f", shared {', '.join(str(g) for g in rep.cond_b.shared)}" if rep.cond_b.shared else ""),
    ]
    c = rep.cond_c
    if rep.mode == "inner":
        lines.append(f"(c) {'holds' if c.holds else 'FAILS'}: {p1} + sum g({p2}) = {c.lhs}")
        lines.append(f"    {p2} + sum h({p1}) = {c.rhs}")
    else:
        lines.append(f"(c') {'holds' if c.holds else 'FAILS'}: sum g(Q) = {c.lhs}; sum h(Q) = {c.rhs}")
    if c.reason:
        lines.append(f"    {c.reason}")
    if c.holds:
        lines.append(f"D = {c.lhs}")
        lines.append(f"deg D = {c.lhs.degree}")
    return lines


def _check_expectations(report: RunReport, degree: int, structures: list):
    exp = report.config.get("expect", {})
    if "degree" in exp and exp["degree"] != degree:
        report.expectation_diffs.append(f"degree: expected {exp['degree']}, got {degree}")
    if "structures" in exp and list(exp["structures"]) != list(structures):
        report.expectation_diffs.append(f"structures: expected {exp['structures']}, got {structures}")
    if report.expectation_diffs and report.status == EXIT_OK:
        report.status = EXIT_EXPECTATION


def _run_rational(config: dict, report: RunReport) -> RunReport:
    setup = parse_rational(config)
    G1, G2 = setup.G1, setup.G2
    mode = config.get("expect", {}).get("mode", "inner")
    report.lines += [f"field: {setup.field!r}", _group_line("G1", G1), _group_line("G2", G2)]
    if mode == "outer":
        if setup.Q is None:
            raise ConfigError("outer mode needs a point Q")
        rep = criterion.evaluate(0, G1, G2, Q=setup.Q, mode="outer")
        report.criterion = rep
        report.lines += [f"Q = {setup.Q}"] + _criterion_lines(rep)
        report.status = EXIT_OK if rep.holds else EXIT_CRITERION
        return report
    report.lines += [f"P1 = {setup.P1}", f"P2 = {setup.P2}"]
    rep = criterion.evaluate(0, G1, G2, setup.P1, setup.P2)
    report.criterion = rep
    report.lines += _criterion_lines(rep)
    if not rep.holds:
        report.status = EXIT_CRITERION
        return report
    try:
        model = construct_model(G1, G2, setup.P1, setup.P2, rep.cond_c.divisor)
    except GaloisPointError as exc:
        report.status = EXIT_CONSTRUCTION
        report.error = f"{type(exc).__name__}: {exc}"
        return report
    report.model = model
    report.lines += [
        f"f = {model.f}",
        f"g = {model.g}",
        f"phi = (f : g : 1) = {model.render()}",
        f"implicit: {model.implicit} = 0",
        f"deg phi(C) = {model.degree}",
    ]
    for key, label in (("P1", "phi(P1) = (0:1:0)"), ("P2", "phi(P2) = (1:0:0)")):
        cert = model.certificates[key]
        report.lines.append(
            f"Galois at {label}: {'holds' if cert.holds else 'FAILS'}, "
            f"group {cert.structure}, map degree {cert.map_degree}, fibers checked {cert.fibers_checked}"
        )
    if not all(c.holds for c in model.certificates.values()):
        report.status = EXIT_CONSTRUCTION
        return report
    _check_expectations(report, model.degree, [G1.structure(), G2.structure()])
    return report


def _run_elliptic(config: dict, report: RunReport) -> RunReport:
    F = _field(config)
    if not F.is_finite or F.characteristic != getattr(F, "p", None):
        raise ConfigError("the Fermat cubic scenario needs a prime field")
    p = F.characteristic
    try:
        curve = FermatCubic(p)
    except GaloisPointError as exc:
        raise ConfigError(str(exc)) from exc
    report.lines.append(f"curve: X^3 + Y^3 + Z^3 = 0 over {F!r}, {len(curve)} points, omega = {curve.omega}")
    try:
        if config.get("Q") is not None:
            Q = CubicPoint(F, *(F(v) for v in config["Q"]))
            cert, skipped = verify_theorem4(p, Q, curve), []
        else:
            cert, skipped = find_elliptic_witness(p)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    except GaloisPointError as exc:
        report.status = EXIT_CRITERION
        report.error = f"{type(exc).__name__}: {exc}"
        return report
    report.criterion = cert.report
    report.extra["certificate"] = cert.to_json()
    report.extra["skipped_Q"] = [[Q.to_json(), why] for Q, why in skipped]
    report.lines += [
        f"Q = {cert.Q}" + (f" (skipped {len(skipped)} degenerate candidates)" if skipped else ""),
        "G1 = <sigma>, sigma(X:Y:Z) = (omega X : Y : Z)",
        "G2 = <tau>, tau = eta sigma^2 eta, eta(P) = (Q + sigma(Q)) - P",
        f"P1 = tau^2(Q) = {cert.P1}",
        f"P2 = sigma^2(Q) = {cert.P2}",
        f"fixed points: sigma {cert.fixed_sigma}, tau {cert.fixed_tau}",
    ]
    report.lines += _criterion_lines(cert.report)
    report.lines += [f"check {k}: {'ok' if v else 'FAILS'}" for k, v in sorted(cert.checks.items())]
    if not cert.holds:
        report.status = EXIT_CRITERION
        return report
    try:
        model = build_quartic_model(p, cert.Q, curve)
    except GaloisPointError as exc:
        report.status = EXIT_CONSTRUCTION
        report.error = f"{type(exc).__name__}: {exc}"
        return report
    report.model = model
    outer = outer_delta_check(p, curve)
    report.extra["outer_galois_points"] = outer.to_json()
    report.lines += [
        f"poles of f = {model.poles_f}",
        f"poles of g = {model.poles_g}",
        f"image points fitted: {len(model.image)}, kernel dimension {model.kernel_dim}",
        f"quartic: {model.quartic} = 0",
        f"deg phi(E) = {model.quartic.total_degree}",
        "outer Galois point witnesses: "
        + ", ".join(f"{k} {'ok' if v else 'FAILS'}" for k, v in sorted(outer.results.items())),
    ]
    if not outer.holds:
        report.status = EXIT_CONSTRUCTION
        return report
    _check_expectations(report, model.quartic.total_degree, ["Z/3", "Z/3"])
    return report


def run_scenario(name_or_config) -> RunReport:
    """Run a built-in scenario (by name) or a configuration dict end to end."""
    try:
        config = builtin_config(name_or_config) if isinstance(name_or_config, str) else copy.deepcopy(name_or_config)
    except ConfigError as exc:
        return RunReport(str(name_or_config), {}, EXIT_CONFIG, error=str(exc))
    report = RunReport(config.get("name", "custom"), config)
    try:
        curve = config.get("curve", "rational")
        if curve == "rational":
            return _run_rational(config, report)
        if curve == "fermat-cubic":
            return _run_elliptic(config, report)
        raise ConfigError(f"unknown curve {curve!r}")
    except ConfigError as exc:
        report.status = EXIT_CONFIG
        report.error = str(exc)
        return report


# search ----------------------------------------------------------------------------------

@dataclass
class SearchReport:
    config: dict
    mode: str
    hits: list
    filtered: str = ""
    status: int = EXIT_OK
    error: str = ""

    def to_json(self):
        return {
            "config": self.config,
            "mode": self.mode,
            "filtered": self.filtered,
            "count": len(self.hits),
            "hits": self.hits,
            "status": self.status,
            "error": self.error,
        }

    def render_text(self) -> str:
        out = [f"search ({self.mode}): {len(self.hits)} hits"]
        if self.filtered:
            out.append(f"filtered: {self.filtered}")
        for h in self.hits:
            if self.mode == "inner":
                out.append(f"  P1 = {h['P1_text']}, P2 = {h['P2_text']}, D = {h['D_text']}")
            else:
                out.append(f"  Q = {h['Q_text']}, divisor = {h['D_text']}")
        if self.error:
            out.append(f"error: {self.error}")
        out.append(f"status: exit {self.status}")
        return "\n".join(out) + "\n"


def run_search(config: dict) -> SearchReport:
    """Enumerate witnesses for (c) or (c') over a finite field or explicit candidates."""
    mode = config.get("mode", "inner")
    try:
        setup = parse_rational(config, mode="search")
        F = setup.field
        if "candidates" in config:
            cands = [point_from_json(F, c) for c in config["candidates"]]
        elif F.is_finite:
            cands = projective_line(F)
        else:
            raise InfiniteField(f"{F!r} is infinite and no candidate list was given")
        if mode not in ("inner", "outer"):
            raise ConfigError(f"unknown mode {mode!r}")
    except (ConfigError, InfiniteField, ValueError, TypeError) as exc:
        return SearchReport(config, mode, [], status=EXIT_CONFIG, error=str(exc))
    G1, G2 = setup.G1, setup.G2
    if mode == "inner":
        b = criterion.check_b(G1, G2)
        if not b.holds:
            return SearchReport(config, mode, [], filtered=f"condition (b) fails: |G1 ∩ G2| = {b.size}")
        hits = [
            {
                "P1": P1.to_json(), "P2": P2.to_json(), "D": D.to_json(), "degree": D.degree,
                "P1_text": str(P1), "P2_text": str(P2), "D_text": str(D),
            }
            for P1, P2, D in criterion.search_inner(G1, G2, cands)
        ]
    else:
        hits = [
            {"Q": Q.to_json(), "D": D.to_json(), "degree": D.degree, "Q_text": str(Q), "D_text": str(D)}
            for Q, D in criterion.search_outer(G1, G2, cands)
        ]
    return SearchReport(config, mode, hits)
