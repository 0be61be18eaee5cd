"""Command-line interface.

Subcommands: ``kernels``, ``edgeworth``, ``simulate``, ``table1``, ``diagnose``.
Every random quantity derives from the single ``--seed``:

* logistic population:      ``derive_seed(seed, 1)``
* Monte-Carlo σ̃ for size n: ``derive_seed(seed, 2, n)``
* simulated CDF for size n: ``derive_seed(seed, 3, n)``

Exit codes: 0 success, 2 invalid configuration, 3 numeric domain error,
4 enumeration capacity exceeded.
"""

import argparse
import csv
import io
import logging
import math
import os
import sys

import numpy as np

from . import _backend, rng
from .edgeworth import (
    DEFAULT_MC_REPLICATES,
    build_model,
    charfn_diagnostics,
    edgeworth_cdf,
    normal_cdf,
    normal_quantile,
)
from .errors import CapacityError, DomainError, PopulationParseError
from .kernels import KernelSet
from .montecarlo import SimulationPlan, simulate_cdf
from .population import load_population, simulate_logistic
from .weights import load_weights, parse_weights_spec, smoothness_constants

log = logging.getLogger("lstat_edgeworth")

TABLE1_Q = (0.01, 0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.95, 0.99)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_CAPACITY = 4

SEED_POPULATION = 1
SEED_SIGMA = 2
SEED_CDF = 3


class ConfigError(Exception):
    pass


def _int_list(text):
    try:
        return [int(v) for v in str(text).replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(v) for v in str(text).replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _count(text):
    """Integer count that also accepts forms like ``1e6``."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a count, got {text!r}") from None
    if not value.is_integer() or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file mirroring the long flags")
    src = common.add_mutually_exclusive_group()
    src.add_argument("--population", metavar="FILE", help="population file, one value per line")
    src.add_argument("--logistic", metavar="N", type=int, help="simulate a logistic population of size N")
    wts = common.add_mutually_exclusive_group()
    wts.add_argument("--weights", default=None, metavar="KIND[:P]",
                     help="constant | gini | center | trimmed:t1,t2 | custom:TABLE.csv (default center)")
    wts.add_argument("--weights-file", metavar="PATH", help="explicit weights c_1..c_n, one per line")
    common.add_argument("--n", type=_int_list, default=None, metavar="LIST", help="sample sizes, e.g. 5,15,30")
    common.add_argument("--q", type=_float_list, default=None, metavar="LIST", help="probabilities")
    common.add_argument("--replicates", type=_count, default=1_000_000, metavar="R")
    common.add_argument("--sigma-replicates", type=_count, default=DEFAULT_MC_REPLICATES, metavar="R")
    common.add_argument("--seed", type=int, default=0, metavar="S")
    common.add_argument("--sigma-mode", choices=("auto", "exact", "mc", "montecarlo", "linear"), default="auto")
    common.add_argument("--workers", type=int, default=1, metavar="W")
    common.add_argument("--out", metavar="DIR", help="output directory (default: stdout)")
    common.add_argument("--format", choices=("csv", "text"), default="text")
    common.add_argument("--grid", default="-4:4:0.1", metavar="LO:HI:STEP", help="x grid for edgeworth CSV")
    common.add_argument("--eps", type=float, default=0.1)
    common.add_argument("--band-b", type=float, default=10.0, dest="band_b")
    common.add_argument("--grid-step", type=float, default=1e-3)
    common.add_argument("--dump", action="store_true", help="simulate: also dump raw realizations")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="lstat-edgeworth",
        description="Hoeffding kernels and Edgeworth expansion for finite population L-statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("kernels", parents=[common], help="tabulate g1 and g2 as CSV")
    sub.add_parser("edgeworth", parents=[common], help="expansion parameters and G_n on a grid")
    sub.add_parser("simulate", parents=[common], help="Monte-Carlo quantiles of the standardized statistic")
    sub.add_parser("table1", parents=[common], help="quantile comparison of simulation, G_n and Φ")
    sub.add_parser("diagnose", parents=[common], help="weight smoothness and characteristic-function bands")
    return parser


def read_config(path):
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            key, sep, value = text.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            out[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return out


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            cfg = read_config(args.config)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        flat = [args.command]
        for key, value in cfg.items():
            flag = "--" + key.replace("_", "-")
            if value.lower() in ("true", "yes") and key == "dump":
                flat.append(flag)
            else:
                flat.extend([flag, value])
        try:
            base = parser.parse_args(flat)
        except SystemExit:
            raise ConfigError(f"invalid entry in config file {args.config}") from None
        defaults = parser.parse_args([args.command])
        # flags given on the command line override the file
        for key, value in vars(args).items():
            if value != getattr(defaults, key):
                setattr(base, key, value)
        base.config = args.config
        args = base
    return args


# ---------------------------------------------------------------------------

def _load_population(args):
    if args.population and args.logistic:
        raise ConfigError("use either --population or --logistic")
    if args.population:
        if not os.path.exists(args.population):
            raise ConfigError(f"population file not found: {args.population}")
        return load_population(args.population)
    N = args.logistic if args.logistic is not None else 100
    if N < 2:
        raise ConfigError("--logistic needs N >= 2")
    return simulate_logistic(N, rng.derive_seed(args.seed, SEED_POPULATION))


def _weights_factory(args):
    if args.weights_file:
        if not os.path.exists(args.weights_file):
            raise ConfigError(f"weights file not found: {args.weights_file}")
        fixed = load_weights(args.weights_file)

        def factory(n):
            if n != fixed.n:
                raise ConfigError(f"weights file has {fixed.n} weights but n={n} was requested")
            return fixed

        return factory, [fixed.n]
    try:
        return parse_weights_spec(args.weights or "center"), None
    except DomainError as exc:
        raise ConfigError(f"bad --weights: {exc}") from None


def _validate(args, pop, default_n):
    ns = args.n or default_n or [5, 15, 30]
    for n in ns:
        if n < 1:
            raise ConfigError(f"sample size n={n} must be positive")
        # kernels reports n >= N as the kernel-window domain error instead
        if args.command != "kernels" and n >= pop.N:
            raise ConfigError(f"sample size n={n} must satisfy 1 <= n < N={pop.N}")
    qs = args.q or list(TABLE1_Q)
    for q in qs:
        if not 0 < q < 1:
            raise ConfigError(f"probability q={q} outside (0, 1)")
    if args.workers < 1:
        raise ConfigError("--workers must be at least 1")
    return ns, qs


def _sigma_mode(args):
    return "montecarlo" if args.sigma_mode == "mc" else args.sigma_mode


def _model(args, pop, w, kernels=None):
    return build_model(
        pop, w, sigma_mode=_sigma_mode(args), replicates=args.sigma_replicates,
        seed=rng.derive_seed(args.seed, SEED_SIGMA, w.n), workers=args.workers, kernels=kernels,
    )


class Output:
    """Writes named artifacts to ``--out`` or concatenates them on stdout."""

    def __init__(self, out_dir, stream=None):
        self.out_dir = out_dir
        self.stream = stream or sys.stdout
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)

    def emit(self, name, text):
        if self.out_dir:
            with open(os.path.join(self.out_dir, name), "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            self.stream.write(text)

    def emit_binary(self, name, writer):
        if not self.out_dir:
            raise ConfigError("--dump needs --out")
        writer(os.path.join(self.out_dir, name))


def _csv(rows, header):
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    return buf.getvalue()


def _r(v):
    return repr(float(v))


def _text_table(header, rows):
    cells = [header] + [[c if isinstance(c, str) else f"{c:.3f}" for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = []
    for r in cells:
        lines.append("  ".join(c.rjust(wd) if i else c.ljust(wd) for i, (c, wd) in enumerate(zip(r, widths))))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands

def cmd_kernels(args, pop, factory, ns, qs, out):
    for n in ns:
        w = factory(n)
        K = KernelSet(pop, w)
        g1 = K.g1
        out.emit(f"g1_n{n}.csv", _csv([[k + 1, _r(v)] for k, v in enumerate(g1)], ["k", "value"]))
        if n == 1 or n == pop.N - 1:
            log.warning("g2 is undefined at N=%d, n=%d; only g1 written", pop.N, n)
            continue
        table = K.g2_table()
        rows = [[k + 1, l + 1, _r(table[k, l])] for k in range(pop.N) for l in range(k + 1, pop.N)]
        out.emit(f"g2_n{n}.csv", _csv(rows, ["k", "l", "value"]))


def _grid(spec):
    try:
        lo, hi, step = (float(v) for v in spec.split(":"))
    except ValueError:
        raise ConfigError(f"--grid expects LO:HI:STEP, got {spec!r}") from None
    if not (hi > lo and step > 0):
        raise ConfigError(f"bad grid {spec!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def cmd_edgeworth(args, pop, factory, ns, qs, out):
    xs = _grid(args.grid)
    for n in ns:
        w = factory(n)
        m = _model(args, pop, w)
        out.emit(f"edgeworth_n{n}.txt", f"weights = {w.describe()}\n" + m.report())
        rows = [[_r(x), _r(normal_cdf(x)), _r(edgeworth_cdf(m, x))] for x in xs]
        out.emit(f"cdf_grid_n{n}.csv", _csv(rows, ["x", "Phi", "G_n"]))


def cmd_simulate(args, pop, factory, ns, qs, out):
    rows = []
    for n in ns:
        w = factory(n)
        m = _model(args, pop, w)
        seed = rng.derive_seed(args.seed, SEED_CDF, n)
        ecdf = simulate_cdf(pop, w, SimulationPlan(args.replicates, seed, n, m.mean_L, m.sigma_tilde),
                            workers=args.workers)
        rows.extend([n, q, ecdf.quantile(q)] for q in qs)
        if args.dump:
            out.emit_binary(f"realizations_n{n}.f64", ecdf.dump)
    if args.format == "csv":
        out.emit("quantiles.csv", _csv([[n, _r(q), _r(v)] for n, q, v in rows], ["n", "q", "quantile"]))
    else:
        out.emit("quantiles.txt", _text_table(["n", "q", "quantile"],
                                              [[str(n), f"{q:g}", v] for n, q, v in rows]))


def table1_rows(args, pop, factory, ns, qs):
    """Rows ``(label, n, values)``: simulated and G_n quantiles per n, then Φ^{-1}."""
    rows = []
    for n in ns:
        w = factory(n)
        m = _model(args, pop, w)
        seed = rng.derive_seed(args.seed, SEED_CDF, n)
        ecdf = simulate_cdf(pop, w, SimulationPlan(args.replicates, seed, n, m.mean_L, m.sigma_tilde),
                            workers=args.workers)
        rows.append(("F_sim", n, [ecdf.quantile(q) for q in qs]))
        rows.append(("G", n, [m.quantile(q) for q in qs]))
    rows.append(("Phi", "", [normal_quantile(q) for q in qs]))
    return rows


def cmd_table1(args, pop, factory, ns, qs, out):
    rows = table1_rows(args, pop, factory, ns, qs)
    header = ["row", "n"] + [f"{q:g}" for q in qs]
    csv_text = _csv([[lab, n] + [_r(v) for v in vals] for lab, n, vals in rows], header)
    labels = {"F_sim": "F~_{n}^-1(q)", "G": "G_{n}^-1(q)", "Phi": "Phi^-1(q)"}
    text_rows = [[labels[lab].format(n=n)] + [0.0 if abs(v) < 5e-4 else v for v in vals] for lab, n, vals in rows]
    text = _text_table(["q ="] + [f"{q:.2f}" for q in qs], text_rows)
    if args.out:
        out.emit("table1.csv", csv_text)
        out.emit("table1.txt", text)
    else:
        out.emit("table1", csv_text if args.format == "csv" else text)


def cmd_diagnose(args, pop, factory, ns, qs, out):
    lines = []
    for n in ns:
        w = factory(n)
        sm = smoothness_constants(w)
        K = KernelSet(pop, w)
        g1 = K.g1
        sigma1 = math.sqrt(math.fsum(g1 ** 2) / pop.N)
        tau = math.sqrt(pop.N * (n / pop.N) * (1 - n / pop.N))
        lines.append(f"[n = {n}]")
        lines.append(f"weights = {w.describe()}")
        for key, value in sm.as_dict().items():
            lines.append(f"{key} = {value!r}")
        if n >= 10 and sm.b / n > 0.5 * sm.a:
            lines.append("warning = weights jump between neighbours; smoothness conditions look violated")
        if sigma1 == 0.0:
            lines.append("sigma1 = 0.0")
            lines.append("warning = degenerate linear part; characteristic-function bands skipped")
            continue
        diag = charfn_diagnostics(g1, sigma1, tau, eps=args.eps, B=args.band_b, grid_step=args.grid_step)
        lines.append(f"sigma1 = {sigma1!r}")
        lines.append(f"tau = {tau!r}")
        lines.append(f"band_nonlattice = [{args.eps!r}, {args.band_b!r}]")
        lines.append(f"nonlattice_sup = {diag['nonlattice_sup']!r}")
        lines.append(f"band_cramer = [{args.eps!r}, {tau!r}]")
        lines.append(f"cramer_sup = {diag['cramer_sup']!r}")
    out.emit("diagnose.txt", "\n".join(lines) + "\n")


COMMANDS = {
    "kernels": cmd_kernels,
    "edgeworth": cmd_edgeworth,
    "simulate": cmd_simulate,
    "table1": cmd_table1,
    "diagnose": cmd_diagnose,
}


def run(argv=None, stdout=None):
    """Run the CLI and return its exit code."""
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    log.info("backend=%s generator=%s", _backend.BACKEND, rng.GENERATOR_VERSION)
    try:
        pop = _load_population(args)
        factory, default_n = _weights_factory(args)
        ns, qs = _validate(args, pop, default_n)
        out = Output(args.out, stdout)
        COMMANDS[args.command](args, pop, factory, ns, qs, out)
    except (ConfigError, PopulationParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
