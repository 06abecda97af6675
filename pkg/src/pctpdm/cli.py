"""Command-line front end.

    pctpdm spectrum   --config run.json
    pctpdm potential  --config run.json --grid -3,3,601 --format csv
    pctpdm wavefunction --config run.json --levels 2
    pctpdm verify     --config run.json --out report.json
    pctpdm compare    --config run.json

Exit status: 0 success, 2 bad configuration, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field, fields

import numpy as np

from . import verify
from .engine import SignConvention, build_target, paper_mode
from .errors import ConfigError, ConvergenceError, PCTError
from .mass import MassDistribution, MassKind
from .numerics import Grid
from .potentials import Family, ReferenceProblem

log = logging.getLogger("pctpdm")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

_MASS_KEYS = {"kind", "alpha", "q"}
_FAMILY_KEYS = {
    Family.MORSE: {"alpha", "V1", "V2"},
    Family.MORSE_NON_PT: {"A", "B", "C"},
    Family.MORSE_PT: {"alpha", "V1", "V2", "omega", "D"},
    Family.POSCHL_TELLER: {"alpha", "V0", "q"},
    Family.POSCHL_TELLER_NON_PT: {"alpha", "V0", "q"},
    Family.POSCHL_TELLER_PT: {"alpha", "V0", "q"},
}


def _number(value, key, allow_complex=False):
    """Parse a finite number; complex values are written ``[re, im]``."""
    if allow_complex and isinstance(value, list):
        if len(value) != 2:
            raise ConfigError(f"{key}: complex values are [re, im]")
        z = complex(_number(value[0], key), _number(value[1], key))
        return z.real if z.imag == 0 else z
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{key}: must be finite")
    return float(value)


@dataclass
class RunConfig:
    mass: dict = field(default_factory=lambda: {"kind": "constant"})
    potential: dict = field(default_factory=lambda: {"family": "morse", "alpha": 1.0,
                                                     "V1": 1.0, "V2": 10.0})
    paper_mode: bool = False
    sign: str = "corrected"
    grid: tuple | None = None
    levels: int = 2
    format: str = "csv"
    out: str | None = None
    kinetic: float = 0.5
    tol: float = 1e-2
    corpus_only: bool = False

    @classmethod
    def from_dict(cls, doc) -> "RunConfig":
        if not isinstance(doc, dict):
            raise ConfigError("configuration must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
        cfg = cls(**doc)
        cfg.validate()
        return cfg

    @classmethod
    def from_json(cls, text) -> "RunConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc)

    def validate(self):
        self.build_mass()
        self.build_reference()
        if self.sign not in ("printed", "corrected"):
            raise ConfigError(f"sign must be 'printed' or 'corrected', got {self.sign!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', got {self.format!r}")
        if isinstance(self.levels, bool) or not isinstance(self.levels, int) or self.levels < 0:
            raise ConfigError("levels must be a non-negative integer")
        for key in ("kinetic", "tol"):
            if not _number(getattr(self, key), key) > 0:
                raise ConfigError(f"{key} must be positive")
        if self.grid is not None:
            self.build_grid()

    # -- builders ---------------------------------------------------------

    def build_mass(self) -> MassDistribution:
        m = dict(self.mass)
        unknown = set(m) - _MASS_KEYS
        if unknown:
            raise ConfigError(f"unknown mass keys: {sorted(unknown)}")
        try:
            kind = MassKind(m.pop("kind", "constant"))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        args = {k: _number(v, f"mass.{k}") for k, v in m.items()}
        try:
            return MassDistribution(kind, **args)
        except PCTError as exc:
            raise ConfigError(str(exc)) from exc

    def build_reference(self) -> ReferenceProblem:
        p = dict(self.potential)
        try:
            family = Family(p.pop("family", "morse"))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        unknown = set(p) - _FAMILY_KEYS[family]
        if unknown:
            raise ConfigError(f"unknown keys for {family.value}: {sorted(unknown)}")
        args = {k: _number(v, f"potential.{k}", allow_complex=k in ("V1", "V2", "V0"))
                for k, v in p.items()}
        try:
            if family is Family.MORSE:
                return ReferenceProblem.morse(**args)
            if family is Family.MORSE_NON_PT:
                return ReferenceProblem.morse_non_pt(args.get("A", 1.0), args.get("B", 1.0),
                                                     args.get("C", 2.0))
            if family is Family.MORSE_PT:
                if "omega" in args or "D" in args:
                    return ReferenceProblem.morse_pt_oscillator(args.get("omega", 1.0),
                                                                args.get("D", 1.0))
                return ReferenceProblem.morse_pt(**args)
            ctor = {Family.POSCHL_TELLER: ReferenceProblem.poschl_teller,
                    Family.POSCHL_TELLER_NON_PT: ReferenceProblem.poschl_teller_non_pt,
                    Family.POSCHL_TELLER_PT: ReferenceProblem.poschl_teller_pt}[family]
            return ctor(**args)
        except (PCTError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc

    def build_grid(self) -> Grid:
        g = self.grid
        if g is None:
            raise ConfigError("this command needs a grid (--grid xmin,xmax,N)")
        if not isinstance(g, (list, tuple)) or len(g) != 3:
            raise ConfigError("grid is [x_min, x_max, N]")
        lo, hi = _number(g[0], "grid.x_min"), _number(g[1], "grid.x_max")
        n = g[2]
        if isinstance(n, float) and n.is_integer():
            n = int(n)
        try:
            return Grid(lo, hi, n)
        except PCTError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def sign_convention(self) -> SignConvention:
        return SignConvention(self.sign)

    def system(self):
        dist, ref = self.build_mass(), self.build_reference()
        if self.paper_mode:
            ref = paper_mode(dist, ref)
        return dist, ref


# -- output -----------------------------------------------------------------

def _fmt(v):
    return "null" if v is None or not math.isfinite(v) else format(v, ".17g")


def _samples_csv(rows):
    buf = io.StringIO()
    buf.write("x,re,im,source\n")
    for x, z, tag in rows:
        re_, im_ = (None, None) if z is None or not np.isfinite(z) else (z.real, z.imag)
        buf.write(f"{_fmt(x)},{_fmt(re_)},{_fmt(im_)},{tag}\n")
    return buf.getvalue()


def _samples_json(rows, kind):
    out = []
    for x, z, tag in rows:
        ok = z is not None and np.isfinite(z)
        out.append({"x": float(x), "re": float(z.real) if ok else None,
                    "im": float(z.imag) if ok else None, "source": tag})
    return json.dumps({"schema": verify.SCHEMA, "kind": kind, "rows": out},
                      indent=2, sort_keys=True)


def _emit(text, cfg):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _formula_for(cfg, dist, ref):
    """The printed target potential matching the configured pair, if any."""
    if dist.kind is MassKind.CONSTANT or ref.family is Family.MORSE_PT and ref.omega is not None:
        return None
    p = cfg.potential
    kw = {"alpha": dist.alpha, "q": dist.q}
    fam = ref.family
    if fam in (Family.MORSE, Family.MORSE_PT):
        kw.update(V1=complex(ref.V1).real, V2=complex(ref.V2).real)
    elif fam is Family.MORSE_NON_PT:
        kw.update(A=ref.A, B=ref.B, C=ref.C)
    elif fam is Family.POSCHL_TELLER_PT:
        kw.update(V0_pt=float(p.get("V0", 1.0)))
    else:
        kw.update(V0=float(p.get("V0", 1.0)))
    want = f"{fam.value}/{dist.kind.value}"
    for pf in verify.paper_corpus(**kw):
        if pf.id == want:
            return pf
    return None


# -- commands ---------------------------------------------------------------

def cmd_spectrum(cfg: RunConfig) -> int:
    dist, ref = cfg.system()
    k = cfg.levels
    count = ref.bound_state_count()
    if count is not None and k > count:
        log.warning("only %d bound states; truncating %d requested levels", count, k)
        k = count
    rows = [(n, ref.energy(n), "closed_form") for n in range(k)]
    if cfg.grid is not None and k > 0:
        grid = cfg.build_grid()
        ts = build_target(dist, ref, cfg.sign_convention, grid, cfg.kinetic)
        vals = verify.solve_target(ts, grid, k).eigenvalues
        rows += [(n, complex(v), "numeric") for n, v in enumerate(vals)]
    if cfg.format == "json":
        doc = {"schema": verify.SCHEMA, "kind": "spectrum",
               "rows": [{"n": n, "re": e.real, "im": e.imag, "source": t} for n, e, t in rows]}
        text = json.dumps(doc, indent=2, sort_keys=True)
    else:
        text = "n,re,im,source\n" + "".join(
            f"{n},{_fmt(e.real)},{_fmt(e.imag)},{t}\n" for n, e, t in rows)
    _emit(text, cfg)
    return EXIT_OK


def _pointwise(fn, x):
    return verify._pointwise(fn, np.asarray(x, dtype=float))


def cmd_potential(cfg: RunConfig) -> int:
    dist, ref = cfg.system()
    grid = cfg.build_grid()
    x = grid.points()
    ts = build_target(dist, ref, cfg.sign_convention, grid, cfg.kinetic)
    rows = [(xi, v, "engine") for xi, v in zip(x, _pointwise(ts.potential, x))]
    if cfg.paper_mode:
        pf = _formula_for(cfg, dist, ref)
        if pf is None:
            log.info("no printed formula for this pair")
        else:
            rows += [(xi, v, "printed") for xi, v in zip(x, _pointwise(pf, x))]
    rows = [(xi, None if not np.isfinite(v) else complex(v), tag) for xi, v, tag in rows]
    _emit(_samples_json(rows, "potential") if cfg.format == "json" else _samples_csv(rows), cfg)
    return EXIT_OK


def _energy_for(ref, n, kinetic):
    try:
        return ref.exact_energy(n, kinetic)
    except PCTError:
        return ref.energy(n)


def cmd_wavefunction(cfg: RunConfig) -> int:
    dist, ref = cfg.system()
    grid = cfg.build_grid()
    ts = build_target(dist, ref, cfg.sign_convention, grid, cfg.kinetic)
    x = grid.points()
    count = ref.bound_state_count()
    k = cfg.levels if count is None else min(cfg.levels, count)
    rows = []
    for n in range(k):
        psi, _ = verify.normalize(ts.wavefunction(n, x, energy=_energy_for(ref, n, cfg.kinetic)),
                                  grid)
        rows += [(xi, complex(v), f"psi_{n}") for xi, v in zip(x, psi)]
    _emit(_samples_json(rows, "wavefunction") if cfg.format == "json" else _samples_csv(rows), cfg)
    return EXIT_OK


def _ledger_rows(entries):
    return [e.to_dict() for e in entries]


def cmd_verify(cfg: RunConfig) -> int:
    report = {"schema": verify.SCHEMA, "kind": "verify_report", "warnings": [],
              "isospectral": None, "residuals": [], "ledger": [], "passed": True}
    status = EXIT_OK
    try:
        if cfg.corpus_only:
            report["ledger"] = _ledger_rows(verify.run_corpus(kinetic=cfg.kinetic))
        else:
            _verify_system(cfg, report)
    except ConvergenceError as exc:
        report["warnings"].append(f"solver did not converge: {exc}")
        report["passed"] = False
        status = EXIT_NUMERIC
    if status == EXIT_OK and not report["passed"]:
        status = 1
    _emit(json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n", cfg)
    return status


def _verify_system(cfg, report):
    dist, ref = cfg.system()
    count = ref.bound_state_count()
    k = cfg.levels if count is None else min(cfg.levels, count)
    if count == 0:
        report["warnings"].append("no bound states")
        log.warning("no bound states for this reference problem")
    pf = _formula_for(cfg, dist, ref) if cfg.paper_mode else None
    if pf is not None:
        ts = build_target(dist, ref, cfg.sign_convention, None, 0.5)
        report["ledger"].append(verify.compare_forms(ts, pf).to_dict())
    if k == 0:
        return
    grid = cfg.build_grid()
    iso = verify.isospectral_check(dist, ref, grid, k, cfg.kinetic, cfg.tol,
                                   tie_alpha=cfg.paper_mode)
    report["isospectral"] = iso.to_dict()
    if not iso.winners:
        report["passed"] = False
    if ref.family in (Family.MORSE, Family.POSCHL_TELLER):
        ts = build_target(dist, ref, cfg.sign_convention, grid, cfg.kinetic)
        for n in range(k):
            r = verify.residual_norm(ts, n, grid, _energy_for(ref, n, cfg.kinetic))
            report["residuals"].append({"n": n, "residual": r})


def cmd_compare(cfg: RunConfig) -> int:
    if cfg.corpus_only or not cfg.paper_mode:
        entries = verify.run_corpus(kinetic=cfg.kinetic, sign=cfg.sign_convention)
    else:
        dist, ref = cfg.system()
        pf = _formula_for(cfg, dist, ref)
        if pf is None:
            raise ConfigError("no printed formula for this mass/family pair")
        ts = build_target(dist, ref, cfg.sign_convention, None, cfg.kinetic)
        entries = [verify.compare_forms(ts, pf)]
    if cfg.format == "csv":
        text = "id,verdict,corrected,printed,poles_skipped\n" + "".join(
            f"{e.id},{e.verdict.value},{_fmt(e.deviations[SignConvention.CORRECTED])},"
            f"{_fmt(e.deviations[SignConvention.AS_PRINTED])},{e.poles_skipped}\n"
            for e in entries)
    else:
        text = verify.ledger_json(entries) + "\n"
    _emit(text, cfg)
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "potential": cmd_potential,
    "wavefunction": cmd_wavefunction,
    "verify": cmd_verify,
    "compare": cmd_compare,
}


def _parse_grid(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError("--grid expects xmin,xmax,N")
    try:
        return [float(parts[0]), float(parts[1]), int(parts[2])]
    except ValueError as exc:
        raise ConfigError(f"--grid: {exc}") from exc


def build_parser():
    p = argparse.ArgumentParser(prog="pctpdm", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--levels", type=int)
    p.add_argument("--grid", help="xmin,xmax,N")
    p.add_argument("--paper-mode", action="store_true", default=None)
    p.add_argument("--sign", choices=("printed", "corrected"))
    p.add_argument("--kinetic", type=float, help="kinetic prefactor (default 0.5)")
    return p


def _setup_logging():
    level = os.environ.get("PCTPDM_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.ERROR), stream=sys.stderr,
                        format="pctpdm: %(levelname)s: %(message)s", force=True)
    if level not in levels:
        log.error("PCTPDM_LOG=%r not recognised; using 'error'", level)


def load_config(args) -> RunConfig:
    doc = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {args.config}: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("configuration must be a JSON object")
    overrides = {"out": args.out, "format": args.format, "levels": args.levels,
                 "paper_mode": args.paper_mode, "sign": args.sign, "kinetic": args.kinetic}
    doc.update({k: v for k, v in overrides.items() if v is not None})
    if args.grid:
        doc["grid"] = _parse_grid(args.grid)
    return RunConfig.from_dict(doc)


def _join_grid(argv):
    # "--grid -1,1,21" would otherwise be read as an unknown option
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--grid":
            nxt = next(it, None)
            out.append("--grid" if nxt is None else f"--grid={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    _setup_logging()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_grid(argv))
    try:
        cfg = load_config(args)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"pctpdm: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"pctpdm: no convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except PCTError as exc:
        print(f"pctpdm: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
