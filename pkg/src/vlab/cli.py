"""Command line front end: ``python -m vlab <command> ...``.

Every command prints a report (text or JSON).  Configuration comes from
flags, then ``VLAB_*`` environment variables, then defaults:

    VLAB_FIELD, VLAB_CHECK_PRIME, VLAB_DEG_CAP, VLAB_HOM_CAP, VLAB_SEED,
    VLAB_BUDGET_PAIRS, VLAB_FORMAT

Exit codes: 0 success, 1 a mathematical check failed, 2 parse/usage error,
3 zero form, 4 Groebner budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__
from .apolarity import (
    DEFAULT_SEED,
    ZeroForm,
    build_aronhold,
    classify_stratum,
    orbit_representatives,
    AronholdQuartic,
)
from .arith import CHECK_PRIME, DEFAULT_PRIME, GF, PrimeField, field_from_spec
from .diagonal import (
    build_complex_F,
    complex_homology,
    diagonal_generators,
    lemma_checks,
    rees_module,
    rees_presentation,
    remark_H,
    segre_presentation,
    BigradedQuotient,
    bigraded_polynomial_ring,
)
from .groebner import Budget, BudgetExceeded, Ideal
from .poly import ParseError, Ring
from .presentation import (
    generator_profile,
    pinched_veronese_generators,
    projection_ring,
    subalgebra_presentation,
)
from .resolution import (
    GradedAlgebra,
    betti_over_polynomial_ring,
    koszul_probe,
    regularity,
    residue_field,
    truncated_resolution,
)

SCHEMA = 1
EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_ZERO, EXIT_BUDGET = 0, 1, 2, 3, 4
PRESET_FORMS = ("F1", "F2", "F3", "F4", "F5")
PRESETS = PRESET_FORMS + ("pinched", "remark-H", "segre-3x3")
DEFAULT_QUADRICS = "x1^2, x2^2, x3^2"


class CheckFailed(Exception):
    """A mathematical check did not hold; the report is still printed."""


@dataclass
class Config:
    field: str = f"gf:{DEFAULT_PRIME}"
    check_prime: int = CHECK_PRIME
    deg_cap: int = 8
    hom_cap: int = 4
    seed: int = DEFAULT_SEED
    budget_pairs: int = 200_000
    format: str = "text"

    def validate(self):
        F = field_from_spec(self.field)
        if self.check_prime:
            GF(self.check_prime)
        if self.hom_cap < 2 or self.deg_cap < 4:
            raise ValueError("caps must satisfy s >= 2 and D >= 4")
        if self.format not in ("text", "json"):
            raise ValueError("format must be text or json")
        return F

    @property
    def budget(self) -> Budget:
        return Budget(pairs=self.budget_pairs)


_ENV = {
    "field": ("VLAB_FIELD", str),
    "check_prime": ("VLAB_CHECK_PRIME", int),
    "deg_cap": ("VLAB_DEG_CAP", int),
    "hom_cap": ("VLAB_HOM_CAP", int),
    "seed": ("VLAB_SEED", int),
    "budget_pairs": ("VLAB_BUDGET_PAIRS", int),
    "format": ("VLAB_FORMAT", str),
}


def make_config(ns: argparse.Namespace, environ=None) -> Config:
    environ = os.environ if environ is None else environ
    cfg = Config()
    for name, (var, conv) in _ENV.items():
        if var in environ:
            setattr(cfg, name, conv(environ[var]))
        val = getattr(ns, name, None)
        if val is not None:
            setattr(cfg, name, val)
    return cfg


# ---------------------------------------------------------------------------
# helpers


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


def _prime_field(cfg: Config, caveats: list) -> PrimeField:
    F = field_from_spec(cfg.field)
    if not isinstance(F, PrimeField):
        caveats.append(f"resolutions run over GF({DEFAULT_PRIME}); field q replaced")
        F = GF(DEFAULT_PRIME)
    return F


def _cubic_ring(field) -> Ring:
    return Ring(["y0", "y1", "y2"], field=field)


def _form(args, field):
    ring = _cubic_ring(field)
    if args.preset:
        if args.preset not in PRESET_FORMS:
            raise ParseError(f"preset {args.preset} is not a cubic form")
        return orbit_representatives(ring)[args.preset]
    if not args.form:
        raise ParseError("no cubic given")
    return ring(args.form)


_VAR = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _natural(name: str):
    m = re.match(r"([A-Za-z_]+)(\d*)", name)
    return (m.group(1), int(m.group(2) or 0), name)


def _quadrics(text: str, field):
    names = sorted(set(_VAR.findall(text)), key=_natural)
    if not names:
        raise ParseError("no variables in quadrics")
    ring = Ring(names, field=field)
    gs = ring.parse_list(text)
    if len(gs) != 3:
        raise ParseError("expected exactly three quadrics")
    return gs


def _algebra(name: str, F, cfg: Config, caveats: list):
    """Presets usable as standard graded algebras."""
    key = name[2:] if name.startswith("A_") else name
    if key in PRESET_FORMS:
        pr = projection_ring(orbit_representatives(_cubic_ring(F))[key], present=False)
        P = pr.present(budget=cfg.budget)
        return GradedAlgebra.quotient(P.ideal, label=name), P.ideal
    if key == "pinched":
        P = subalgebra_presentation(pinched_veronese_generators(Ring(["x0", "x1", "x2"], field=F)), budget=cfg.budget)
        return GradedAlgebra.quotient(P.ideal, label=name), P.ideal
    if key == "segre-3x3":
        P = segre_presentation(3, 3, F)
        return GradedAlgebra.quotient(P.ideal, label=name), P.ideal
    if key == "remark-H":
        caveats.append("(S/H)_Delta is handled as a diagonal algebra; no presentation ideal")
        return remark_H(F).diagonal().algebra(), None
    raise ParseError(f"unknown ring preset {name!r}")


# ---------------------------------------------------------------------------
# commands; each returns (result payload, caveats) and may raise CheckFailed


def cmd_classify(args, cfg: Config):
    F0 = field_from_spec(cfg.field)
    form = _form(args, F0)
    oracle = AronholdQuartic.load(args.aronhold) if args.aronhold else None
    v = classify_stratum(form, oracle)
    res = {"form": str(form), **v.as_dict()}
    caveats = []
    if cfg.check_prime and (not isinstance(F0, PrimeField) or F0.p != cfg.check_prime):
        w = classify_stratum(_form(args, GF(cfg.check_prime)))
        res["check_prime"] = cfg.check_prime
        res["check_agrees"] = w.stratum == v.stratum
        if not res["check_agrees"]:
            caveats.append("stratum differs at the check prime (bad reduction?)")
            raise CheckFailed(res, caveats)
    if oracle is not None and v.aronhold_agrees is False:
        raise CheckFailed(res, ["Aronhold oracle disagrees with the CI rule"])
    return res, caveats


def cmd_project(args, cfg: Config):
    F = field_from_spec(cfg.field)
    pr = projection_ring(_form(args, F))
    return {"form": str(pr.form), "dimension": len(pr.basis), "basis": [str(b) for b in pr.basis]}, []


def _presentation_for(args, F, cfg):
    if args.preset in PRESET_FORMS or args.form:
        pr = projection_ring(_form(args, F))
        return pr.present(budget=cfg.budget)
    if args.preset == "pinched":
        return subalgebra_presentation(pinched_veronese_generators(Ring(["x0", "x1", "x2"], field=F)), budget=cfg.budget)
    if args.preset == "segre-3x3":
        return segre_presentation(3, 3, F)
    raise ParseError("present needs a cubic, or --preset F1..F5|pinched|segre-3x3")


def cmd_present(args, cfg: Config):
    F = field_from_spec(cfg.field)
    P = _presentation_for(args, F, cfg)
    cap = args.cap
    prof = generator_profile(P, cap)
    hf = P.hilbert_series().series(args.hilbert_upto)
    res = {
        "relations": len(P.ideal.gens),
        "generator_profile": {str(k): v for k, v in sorted(prof.items())},
        "quadratic_up_to_cap": set(prof) <= {2},
        "cap": cap,
        "hilbert_function": hf,
        "substitution_check": P.substitution_check(),
    }
    if args.show_relations:
        res["ideal"] = [str(g) for g in P.ideal.gens]
    caveats = [f"minimal generators counted in degrees <= {cap}"]
    if not res["substitution_check"]:
        raise CheckFailed(res, caveats)
    if cfg.check_prime and (not isinstance(F, PrimeField) or F.p != cfg.check_prime):
        Q = _presentation_for(args, GF(cfg.check_prime), cfg)
        other = generator_profile(Q, cap)
        res["check_prime"] = cfg.check_prime
        res["check_agrees"] = other == prof
        if other != prof:
            raise CheckFailed(res, caveats + ["profiles differ at the check prime"])
    return res, caveats


def cmd_betti(args, cfg: Config):
    caveats: list = []
    F = _prime_field(cfg, caveats)
    s, D = cfg.hom_cap, cfg.deg_cap
    if args.ideal:
        names = sorted(set(_VAR.findall(args.ideal)), key=_natural)
        ring = Ring(names, field=F)
        I = Ideal(ring, ring.parse_list(args.ideal))
        A = None
    else:
        A, I = _algebra(args.ring or args.preset or "pinched", F, cfg, caveats)
    if args.over == "poly":
        if I is None:
            raise ParseError("this ring has no presentation ideal; use --over K")
        table = betti_over_polynomial_ring(I, s, D)
    else:
        if A is None:
            A = GradedAlgebra.quotient(I)
        table = truncated_resolution(A, residue_field(A), s, D).table
    caveats.append(f"entries beyond (s, D) = ({s}, {D}) are unknown")
    res = {"over": args.over, "table": table.as_dict(), "text": table.to_text()}
    if table.nonzero():
        res["regularity"] = str(regularity(table))
    return res, caveats


def cmd_koszul_probe(args, cfg: Config):
    caveats: list = []
    F = _prime_field(cfg, caveats)
    s, D = cfg.hom_cap, cfg.deg_cap
    name = args.ring or args.preset or "pinched"
    A, _ = _algebra(name, F, cfg, caveats)
    v = koszul_probe(A, s, D)
    res = {"ring": name, **v.as_dict()}
    if cfg.check_prime and F.p != cfg.check_prime:
        B, _ = _algebra(name, GF(cfg.check_prime), cfg, [])
        w = koszul_probe(B, s, D)
        res["check_prime"] = cfg.check_prime
        res["check_agrees"] = str(w) == str(v)
        if not res["check_agrees"]:
            raise CheckFailed(res, caveats + ["verdict differs at the check prime"])
    caveats.append(f"verdict holds up to (s, D) = ({s}, {D}) only")
    return res, caveats


def cmd_rees(args, cfg: Config):
    F = field_from_spec(cfg.field)
    gs = _quadrics(args.quadrics, F)
    P = rees_presentation(*gs)
    r1, r2 = P.syzygy_residuals()
    res = {
        "ring": list(P.ring.names),
        "X": [[str(p) for p in row] for row in P.X],
        "f": [str(f) for f in P.f],
        "syzygies_vanish": r1.is_zero() and r2.is_zero(),
        "diagonal_generators": [str(g) for g in diagonal_generators(gs)],
    }
    caveats: list = []
    if args.regularity:
        Fp = _prime_field(cfg, caveats)
        s, D = args.s_reg, args.d_reg
        B, M = rees_module(P, Fp)
        table = truncated_resolution(B, M, s, D).table
        res["betti_over_B_Delta"] = table.as_dict()
        res["regularity"] = str(regularity(table))
        caveats.append(f"regularity is a window value at (s, D) = ({s}, {D})")
    if not res["syzygies_vanish"]:
        raise CheckFailed(res, caveats)
    return res, caveats


def cmd_lemma_check(args, cfg: Config):
    F = field_from_spec(cfg.field)
    P = rees_presentation(*_quadrics(args.quadrics, F))
    checks = lemma_checks(P, cfg.budget)
    res = {"f": [str(f) for f in P.f], "checks": {k: ("PASS" if v else "FAIL") for k, v in checks.items()}}
    if not all(checks.values()):
        raise CheckFailed(res, [])
    return res, []


def cmd_complexF(args, cfg: Config):
    caveats: list = []
    F = _prime_field(cfg, caveats)
    P = rees_presentation(*_quadrics(args.quadrics, F))
    C = build_complex_F(P, args.length)
    window = tuple(int(x) for x in args.window.split(","))
    H = complex_homology(C, window)
    diag = {str(i): H.diagonal(i, min(window)) for i in range(1, C.length)}
    res = {
        "is_complex": C.is_complex(),
        "shifts": [list(s) for s in C.shifts],
        "homology": H.as_dict(),
        "diagonal_homology": diag,
        "diagonal_vanishes": all(not any(v) for v in diag.values()),
        "complex": C.to_text(),
    }
    caveats.append(f"homology computed for p <= {window[0]}, q <= {window[1]} only")
    if not (res["is_complex"] and res["diagonal_vanishes"]):
        raise CheckFailed(res, caveats)
    return res, caveats


def _hilbert_host(name: str, F) -> BigradedQuotient:
    if name == "remark-H":
        return remark_H(F)
    if name in ("pinched", "rees-J"):
        R = Ring(["x1", "x2", "x3"], field=F)
        return rees_presentation(*R.parse_list(DEFAULT_QUADRICS)).rees()
    raise ParseError(f"unknown bigraded preset {name!r} (use pinched | remark-H)")


def cmd_hilbert(args, cfg: Config):
    F = field_from_spec(cfg.field)
    upto = args.upto
    name = args.preset or "pinched"
    host = _hilbert_host(name, F)
    diag = host.diagonal().hilbert_function(upto)
    res = {"ring": name, "diagonal_hilbert_function": diag, "upto": upto}
    if args.compare:
        other = _hilbert_host(args.compare, F).diagonal().hilbert_function(upto)
        res["compare"] = {"ring": args.compare, "diagonal_hilbert_function": other, "equal": other == diag}
        if other != diag:
            raise CheckFailed(res, [])
    return res, []


def cmd_aronhold_build(args, cfg: Config):
    caveats: list = []
    F = _prime_field(cfg, caveats)
    Q = build_aronhold(seed=cfg.seed, sample_count=args.samples, field=F)
    Q.save(args.out)
    ring = _cubic_ring(F)
    reps = orbit_representatives(ring)
    vanish = {k: Q.evaluate(reps[k]) == 0 for k in ("F3", "F4", "F5")}
    outside = Q.evaluate(ring("y0*y1*y2"))
    res = {
        "file": args.out,
        "field": F.spec,
        "seed": cfg.seed,
        "samples": args.samples,
        "interpolation_dimension": 1,
        "degree": Q.degree(),
        "vanishes_on": {k: bool(v) for k, v in vanish.items()},
        "value_on_y0y1y2": str(outside),
    }
    if not all(vanish.values()) or outside == 0:
        raise CheckFailed(res, caveats)
    return res, caveats


COMMANDS = {
    "classify": cmd_classify,
    "project": cmd_project,
    "present": cmd_present,
    "betti": cmd_betti,
    "koszul-probe": cmd_koszul_probe,
    "rees": cmd_rees,
    "lemma-check": cmd_lemma_check,
    "complexF": cmd_complexF,
    "hilbert": cmd_hilbert,
    "aronhold-build": cmd_aronhold_build,
}


# ---------------------------------------------------------------------------
# parser and reporting


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="q or gf:p (default gf:32003)")
    common.add_argument("--check-prime", dest="check_prime", type=int, help="second prime for cross-checks; 0 disables")
    common.add_argument("--deg-cap", "--D", dest="deg_cap", type=int, help="internal degree cap D")
    common.add_argument("--hom-cap", "--s", dest="hom_cap", type=int, help="homological cap s")
    common.add_argument("--seed", type=int)
    common.add_argument("--budget-pairs", dest="budget_pairs", type=int)
    common.add_argument("--format", choices=["text", "json"])
    common.add_argument("--preset", choices=PRESETS)

    p = _Parser(prog="vlab", description="Projections of the cubic Veronese surface and Koszulness checks")
    p.add_argument("--version", action="version", version=f"vlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    for name, help_ in (("classify", "stratum of a ternary cubic"), ("project", "the space U_F of apolar cubics")):
        q = add(name, help_)
        q.add_argument("form", nargs="?", help="cubic in y0, y1, y2")
        if name == "classify":
            q.add_argument("--aronhold", help="oracle file written by aronhold-build")
    q = add("present", "presentation of A_F (or a preset algebra)")
    q.add_argument("form", nargs="?")
    q.add_argument("--cap", type=int, default=4)
    q.add_argument("--hilbert-upto", dest="hilbert_upto", type=int, default=6)
    q.add_argument("--show-relations", dest="show_relations", action="store_true")
    q = add("betti", "truncated Betti table")
    q.add_argument("--ring", help="A_F1..A_F5, pinched, remark-H, segre-3x3")
    q.add_argument("--ideal", help="homogeneous ideal, comma separated")
    q.add_argument("--over", choices=["poly", "K"], default="K",
                   help="poly: ring/I over its polynomial ring; K: resolve K over the algebra")
    q = add("koszul-probe", "first nonlinear Betti number of K, up to the caps")
    q.add_argument("--ring")
    for name, help_ in (("rees", "Rees presentation of three quadrics"),
                        ("lemma-check", "colon and regular sequence identities"),
                        ("complexF", "homology of the two-periodic complex")):
        q = add(name, help_)
        q.add_argument("--quadrics", default=DEFAULT_QUADRICS)
        if name == "rees":
            q.add_argument("--regularity", action="store_true", help="also resolve Rees(I)_Delta over B_Delta")
            q.add_argument("--reg-s", dest="s_reg", type=int, default=3)
            q.add_argument("--reg-D", dest="d_reg", type=int, default=7)
        if name == "complexF":
            q.add_argument("--length", type=int, default=8)
            q.add_argument("--window", default="10,6", help="p,q bounds")
    q = add("hilbert", "diagonal Hilbert function of a bigraded preset")
    q.add_argument("--upto", type=int, default=8)
    q.add_argument("--compare", help="second preset that must agree")
    q.set_defaults(preset=None)
    q = add("aronhold-build", "interpolate and save the Aronhold quartic")
    q.add_argument("--out", required=True)
    q.add_argument("--samples", type=int, default=720)
    return p


def _render_text(report: dict) -> str:
    lines = [f"vlab {report['command']}"]
    res = report["result"]
    for k, v in res.items():
        if isinstance(v, str) and "\n" in v:
            lines.append(f"{k}:")
            lines.extend("  " + ln for ln in v.rstrip("\n").split("\n"))
        elif isinstance(v, list) and v and all(isinstance(x, str) for x in v):
            lines.append(f"{k}:")
            lines.extend(f"  {x}" for x in v)
        else:
            lines.append(f"{k}: {json.dumps(_jsonable(v), sort_keys=True)}")
    for c in report["caveats"]:
        lines.append(f"note: {c}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = make_config(ns)
        cfg.validate()
    except ValueError as e:
        print(f"vlab: configuration error: {e}", file=sys.stderr)
        return EXIT_PARSE
    cmd = COMMANDS[ns.command]
    t0 = time.perf_counter()
    status, code = "ok", EXIT_OK
    try:
        result, caveats = cmd(ns, cfg)
    except CheckFailed as e:
        result, caveats = e.args
        status, code = "check-failed", EXIT_CHECK
    except ParseError as e:
        print(f"vlab: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ZeroForm as e:
        print(f"vlab: zero form: {e}", file=sys.stderr)
        return EXIT_ZERO
    except BudgetExceeded as e:
        print(f"vlab: budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        # inputs outside an operation's domain (not a cubic, not a complete
        # intersection, window too small) are usage errors
        print(f"vlab: invalid input: {e}", file=sys.stderr)
        return EXIT_PARSE
    report = {
        "schema": SCHEMA,
        "command": ns.command,
        "config": asdict(cfg),
        "result": _jsonable(result),
        "caveats": caveats,
        "status": status,
        "timing": {"seconds": round(time.perf_counter() - t0, 3)},
    }
    if cfg.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
