"""Command-line interface: gin, check-cs, predict, classify, kpoly and psi.

Every command prints one JSON report (to stdout or ``--output``) and a short
human summary on stderr.  Exit codes: 0 success / CS certified, 10 refuted
(NOT_CS, prediction mismatch), 20 inconclusive or timeout, 30 contract
violation, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path

from . import __version__
from .algebra import DEFAULT_PRIME, ParseError, RingConfig, is_prime, order_from_name
from .classify import classify_blocks, classify_hypergraph
from .combinatorics import Hypergraph, all_graphs, format_hypergraph, load_hypergraph, predict_gin_generators
from .groebner import GroebnerTimeout, Ideal, MonomialIdeal
from .hilbert import (
    k_polynomial,
    parse_t_ideal,
    psi,
    psi_inverse,
    verify_jande,
)
from .models import (
    block_minor_ideal,
    hypergraph_minor_ideal,
    parse_blocks_text,
    parse_generators_text,
    transpose,
)
from .multigrading import ContractError, CsStatus, check_cs, in_brad, multigraded_gin

SCHEMA = "csgin.report/1"

EXIT_OK = 0
EXIT_REFUTED = 10
EXIT_INCONCLUSIVE = 20
EXIT_CONTRACT = 30
EXIT_USAGE = 2


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    cols: int | None
    rows: int | None
    blocks: list[int] | None
    prime: int
    order: str
    grading: str
    samples: int
    seed: int
    cross_check_prime: int | None
    output: str | None
    timeout: float
    method: str

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        blocks = None
        if args.blocks:
            try:
                blocks = [int(t) for t in args.blocks.split(",")]
            except ValueError:
                raise UsageError(f"--blocks expects comma-separated integers, got {args.blocks!r}") from None
        cfg = cls(
            cols=args.cols,
            rows=args.rows,
            blocks=blocks,
            prime=args.prime,
            order=args.order,
            grading=args.grading,
            samples=args.samples,
            seed=args.seed,
            cross_check_prime=args.cross_check_prime,
            output=args.output,
            timeout=args.timeout,
            method=args.method,
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        for name in ("cols", "rows"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise UsageError(f"--{name} must be positive")
        if self.blocks is not None and (not self.blocks or min(self.blocks) < 1):
            raise UsageError("--blocks entries must be positive")
        if self.blocks is not None and self.cols is not None and len(self.blocks) != self.cols:
            raise UsageError("--blocks length disagrees with --cols")
        for name in ("prime", "cross_check_prime"):
            p = getattr(self, name)
            if p is not None and (p <= 2 or not is_prime(p)):
                raise UsageError(f"--{name.replace('_', '-')} must be an odd prime, got {p}")
        if self.samples < 1:
            raise UsageError("--samples must be at least 1")
        if self.timeout <= 0:
            raise UsageError("--timeout must be positive")

    def ring(self, prime: int | None = None) -> RingConfig | None:
        p = prime or self.prime
        if self.blocks is not None:
            return RingConfig(tuple(self.blocks), p)
        if self.cols is not None and self.rows is not None:
            return RingConfig.uniform(self.cols, self.rows, p)
        return None


# ---------------------------------------------------------------- inputs


def resolve_path(name: str) -> Path:
    """A path on disk, or else the name of a bundled fixture."""
    path = Path(name)
    if path.exists():
        return path
    bundled = resources.files("csgin") / "fixtures" / path.name
    if bundled.is_file():
        return Path(str(bundled))
    raise UsageError(f"no such file or bundled fixture: {name}")


_VAR = re.compile(r"x\[\s*(\d+)\s*,\s*(\d+)\s*\]")


def _infer_ring(text: str, cfg: RunConfig, prime: int) -> RingConfig:
    ring = cfg.ring(prime)
    if ring is not None:
        return ring
    pairs = [(int(i), int(j)) for i, j in _VAR.findall(text)]
    rows = cfg.rows or max((i for i, _ in pairs), default=1)
    cols = cfg.cols or max((j for _, j in pairs), default=1)
    return RingConfig.uniform(cols, rows, prime)


def _hypergraph_rows(H: Hypergraph, cfg: RunConfig) -> int:
    if cfg.blocks is not None:
        if len(set(cfg.blocks)) != 1 or len(cfg.blocks) != H.n:
            raise UsageError("hypergraph ideals live on a rectangular matrix; use --rows")
        return cfg.blocks[0]
    return cfg.rows or max(H.s, 2)


def build_ideal(args: argparse.Namespace, cfg: RunConfig, prime: int | None = None) -> tuple[Ideal, dict]:
    """The ideal named on the command line, in the requested grading."""
    p = prime or cfg.prime
    sources = [s for s in ("graph", "hypergraph", "gens", "ideal", "blocks_file") if getattr(args, s, None)]
    if len(sources) != 1:
        raise UsageError("give exactly one of --graph, --hypergraph, --gens, --ideal, --blocks-file")
    src = sources[0]
    value = getattr(args, src)
    echo: dict = {"source": src.replace("_", "-"), "value": value}
    if src in ("graph", "hypergraph"):
        H = load_hypergraph(resolve_path(value))
        if src == "graph" and H.s != 2:
            raise UsageError("--graph expects a file with uniformity 2")
        m = _hypergraph_rows(H, cfg)
        I = hypergraph_minor_ideal(H, m, p)
        echo["hypergraph"] = format_hypergraph(H).splitlines()
    elif src == "blocks_file":
        m, n, blocks = parse_blocks_text(resolve_path(value).read_text())
        I = block_minor_ideal(blocks, RingConfig.uniform(n, m, p))
    else:
        text = resolve_path(value).read_text() if src == "gens" else value.replace(";", "\n")
        I = parse_generators_text(text, _infer_ring(text, cfg, p))
    if cfg.grading == "rows":
        I = transpose(I)
    echo["blocks"] = list(I.ring.blocks)
    return I, echo


def _monomial_ideal(I: Ideal) -> MonomialIdeal:
    gens = []
    for f in I.generators:
        if len(f.terms) != 1:
            raise ContractError(f"generator {f.render()} is not a monomial")
        gens.append(next(iter(f.terms)))
    return MonomialIdeal(I.ring, tuple(gens))


def _ideal_json(J: MonomialIdeal) -> dict:
    return {"generators": J.as_pairs(), "rendered": J.render()}


# ---------------------------------------------------------------- commands


def _deadline(cfg: RunConfig) -> float:
    return time.monotonic() + cfg.timeout


def cmd_gin(args, cfg: RunConfig) -> tuple[dict, int]:
    I, echo = build_ideal(args, cfg)
    order = order_from_name(cfg.order)
    try:
        rep = multigraded_gin(I, order, cfg.samples, cfg.seed, deadline=_deadline(cfg))
    except GroebnerTimeout:
        return {"input": echo, "status": "TIMEOUT"}, EXIT_INCONCLUSIVE
    result = {
        "input": echo,
        "stable": rep.stable,
        "sample_seeds": rep.sample_seeds,
        "samples": [_ideal_json(J) for J in rep.ideals],
    }
    if rep.gin is not None:
        result["gin"] = _ideal_json(rep.gin)
        result["squarefree"] = rep.gin.is_squarefree()
    summary = f"gin: {'stable' if rep.stable else 'UNSTABLE'}"
    if rep.gin is not None:
        summary += f", {len(rep.gin.gens)} generators"
    _say(summary)
    return result, EXIT_OK if rep.stable else EXIT_INCONCLUSIVE


def _verdict_json(v) -> dict:
    out = {
        "status": v.status.value,
        "method": v.method,
        "prime": v.prime,
        "order": v.order.kind,
        "reason": v.reason,
        "stable": v.stable,
        "witness_seed": v.witness_seed,
        "witness_complete": v.witness_complete,
        "witness": _ideal_json(v.witness) if v.witness is not None else None,
        "witness_rechecked": v.recheck(),
        "k_polynomial": v.k_polynomial.to_json() if v.k_polynomial is not None else None,
        "samples": [
            {
                "seed": o.seed,
                "complete": o.complete,
                "truncated_degree": o.truncated_degree,
                "radical": o.radical,
                "borel": o.borel,
            }
            for o in v.samples
        ],
    }
    return out


_STATUS_EXIT = {
    CsStatus.CS_CERTIFIED: EXIT_OK,
    CsStatus.NOT_CS: EXIT_REFUTED,
    CsStatus.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def _method(args, cfg: RunConfig) -> str:
    if cfg.method != "auto":
        return cfg.method
    return "hilbert" if getattr(args, "blocks_file", None) else "gin"


def _check(args, cfg: RunConfig, prime: int, deadline: float):
    I, echo = build_ideal(args, cfg, prime)
    v = check_cs(
        I, order_from_name(cfg.order), cfg.samples, cfg.seed, deadline=deadline, method=_method(args, cfg)
    )
    return v, echo


def cmd_check_cs(args, cfg: RunConfig) -> tuple[dict, int]:
    deadline = _deadline(cfg)
    v, echo = _check(args, cfg, cfg.prime, deadline)
    result = {"input": echo, "verdicts": [_verdict_json(v)]}
    status = v.status
    if cfg.cross_check_prime is not None:
        w, _ = _check(args, cfg, cfg.cross_check_prime, deadline)
        result["verdicts"].append(_verdict_json(w))
        if w.status is not v.status:
            status = CsStatus.INCONCLUSIVE
            result["reason"] = "verdicts differ between primes"
    result["status"] = status.value
    _say(f"check-cs: {status.value}" + (f" ({v.reason})" if v.reason else ""))
    return result, _STATUS_EXIT[status]


def _predict_one(G: Hypergraph, m: int, cfg: RunConfig, verify: bool, deadline: float) -> dict:
    predicted = predict_gin_generators(G, m, cfg.prime)
    item = {
        "graph": [list(e) for e in G.edges],
        "n": G.n,
        "rows": m,
        "predicted": _ideal_json(predicted),
    }
    if verify:
        I = hypergraph_minor_ideal(G, m, cfg.prime)
        try:
            rep = multigraded_gin(I, order_from_name(cfg.order), cfg.samples, cfg.seed, deadline=deadline)
        except GroebnerTimeout:
            item["verification"] = "TIMEOUT"
            return item
        if not rep.stable:
            item["verification"] = "UNSTABLE"
        else:
            item["verification"] = "MATCH" if rep.gin == predicted else "MISMATCH"
            if rep.gin != predicted:
                item["computed"] = _ideal_json(rep.gin)
    return item


def cmd_predict(args, cfg: RunConfig) -> tuple[dict, int]:
    m = cfg.rows or 2
    deadline = _deadline(cfg)
    if args.all_graphs is not None:
        graphs = all_graphs(args.all_graphs)
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            items = list(pool.map(lambda G: _predict_one(G, m, cfg, args.verify, deadline), graphs))
    else:
        if not args.graph:
            raise UsageError("predict needs --graph FILE or --all-graphs N")
        G = load_hypergraph(resolve_path(args.graph))
        if G.s != 2:
            raise UsageError("predict works on graphs (uniformity 2)")
        items = [_predict_one(G, m, cfg, args.verify, deadline)]
    result: dict = {"instances": items}
    code = EXIT_OK
    if args.verify:
        outcomes = [it["verification"] for it in items]
        if "MISMATCH" in outcomes:
            code = EXIT_REFUTED
        elif any(o != "MATCH" for o in outcomes):
            code = EXIT_INCONCLUSIVE
        result["verification"] = "MATCH" if code == EXIT_OK else (
            "MISMATCH" if code == EXIT_REFUTED else "INCOMPLETE"
        )
        _say(f"predict: {result['verification']} on {len(items)} instance(s)")
    else:
        _say(f"predict: {sum(len(it['predicted']['generators']) for it in items)} generators")
    return result, code


def cmd_classify(args, cfg: RunConfig) -> tuple[dict, int]:
    if bool(args.hypergraph) == bool(args.blocks_file):
        raise UsageError("classify needs exactly one of --hypergraph or --blocks-file")
    if args.hypergraph:
        H = load_hypergraph(resolve_path(args.hypergraph))
        m = _hypergraph_rows(H, cfg)
        rep = classify_hypergraph(H, m)
    else:
        _, _, blocks = parse_blocks_text(resolve_path(args.blocks_file).read_text())
        rep = classify_blocks(blocks)
    result = {"classification": rep.verdict.value, "details": _jsonable(rep.details)}
    code = EXIT_OK
    if args.verify and rep.verdict.decisive:
        v, _ = _check(args, cfg, cfg.prime, _deadline(cfg))
        result["check_cs"] = _verdict_json(v)
        expected = CsStatus.CS_CERTIFIED if rep.verdict.claims_cs else CsStatus.NOT_CS
        if v.status is CsStatus.INCONCLUSIVE:
            result["concordant"] = None
            code = EXIT_INCONCLUSIVE
        else:
            result["concordant"] = v.status is expected
            code = EXIT_OK if v.status is expected else EXIT_REFUTED
    _say(f"classify: {rep.verdict.value}" + (
        f", check-cs concordant={result['concordant']}" if "concordant" in result else ""
    ))
    return result, code


def cmd_kpoly(args, cfg: RunConfig) -> tuple[dict, int]:
    I, echo = build_ideal(args, cfg)
    K = k_polynomial(I, order_from_name(cfg.order))
    _say(f"K = {K.render()}")
    return {"input": echo, "k_polynomial": {"terms": K.to_json(), "rendered": K.render()}}, EXIT_OK


def cmd_psi(args, cfg: RunConfig) -> tuple[dict, int]:
    if args.inverse:
        I, echo = build_ideal(args, cfg)
        J = _monomial_ideal(I)
        T = psi_inverse(J)
        back = psi(T)
        result = {
            "input": echo,
            "t_ideal": {"bounds": list(T.bounds), "generators": [list(g) for g in T.gens], "rendered": T.render()},
            "roundtrip": back == J,
            "jande": verify_jande(T, J),
        }
        _say(f"psi^-1 = ({', '.join(T.render())})")
        return result, EXIT_OK
    if not args.t_ideal:
        raise UsageError("psi needs --t-ideal TEXT (or --inverse with an ideal)")
    ring = cfg.ring()
    if ring is None:
        raise UsageError("psi needs the bounds as --blocks m1,...,mn or --cols/--rows")
    T = parse_t_ideal(args.t_ideal, ring.blocks)
    J = psi(T)
    result = {
        "t_ideal": {"bounds": list(T.bounds), "generators": [list(g) for g in T.gens], "rendered": T.render()},
        "psi": _ideal_json(J),
        "in_brad": in_brad(J),
        "roundtrip": psi_inverse(J) == T,
        "jande": verify_jande(T, J),
    }
    _say(f"psi = ({', '.join(J.render())}), roundtrip {'OK' if result['roundtrip'] else 'FAILED'}")
    return result, EXIT_OK


# ---------------------------------------------------------------- plumbing


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items) if isinstance(x, (set, frozenset)) else items
    return x


def _say(text: str) -> None:
    print(text, file=sys.stderr)


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("ring and run configuration")
    g.add_argument("--cols", type=int, help="number of columns n")
    g.add_argument("--rows", type=int, help="rows m of a uniform block vector")
    g.add_argument("--blocks", help="block sizes m1,...,mn")
    g.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    g.add_argument("--order", choices=("lex", "degrevlex"), default="lex")
    g.add_argument("--grading", choices=("columns", "rows"), default="columns")
    g.add_argument("--samples", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--cross-check-prime", type=int)
    g.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
    g.add_argument("--timeout", type=float, default=300.0, help="seconds per command")
    g.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    g.add_argument(
        "--method",
        choices=("auto", "gin", "hilbert"),
        default="auto",
        help="CS test: sampled gins, or matching the Hilbert series (auto: hilbert for blocks files)",
    )
    return p


def _add_ideal_sources(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("ideal")
    g.add_argument("--graph", help="graph file (binomial edge ideal)")
    g.add_argument("--hypergraph", help="hypergraph file (s-minors on every edge)")
    g.add_argument("--gens", help="file with one polynomial per line")
    g.add_argument("--ideal", help="inline generators separated by ';'")
    g.add_argument("--blocks-file", help="maximal-minor blocks file ('rows | cols' lines)")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="csgin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gin", parents=[common], help="multigraded generic initial ideal")
    _add_ideal_sources(p)
    p.set_defaults(func=cmd_gin)

    p = sub.add_parser("check-cs", parents=[common], help="certify or refute the CS property")
    _add_ideal_sources(p)
    p.set_defaults(func=cmd_check_cs)

    p = sub.add_parser("predict", parents=[common], help="predicted gin of a binomial edge ideal")
    p.add_argument("--graph", help="graph file")
    p.add_argument("--all-graphs", type=int, metavar="N", help="every labeled graph on N vertices")
    p.add_argument("--verify", action="store_true", help="compare against the computed gin")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for --all-graphs")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("classify", parents=[common], help="combinatorial CS classification")
    p.add_argument("--hypergraph", help="hypergraph file")
    p.add_argument("--blocks-file", help="maximal-minor blocks file")
    p.add_argument("--verify", action="store_true", help="cross-check decisive verdicts with check-cs")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("kpoly", parents=[common], help="multigraded K-polynomial")
    _add_ideal_sources(p)
    p.set_defaults(func=cmd_kpoly)

    p = sub.add_parser("psi", parents=[common], help="bounded monomial ideals <-> Brad(S)")
    p.add_argument("--t-ideal", help="monomials in y1..yn, comma separated")
    p.add_argument("--inverse", action="store_true", help="apply psi^-1 to a monomial ideal")
    _add_ideal_sources(p)
    p.set_defaults(func=cmd_psi)
    return parser


def run(argv: list[str] | None = None) -> tuple[dict, int]:
    """Parse argv, run the command and return (report, exit code)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        cfg = RunConfig.from_args(args)
        result, code = args.func(args, cfg)
    except ContractError as exc:
        result, code = {"error": str(exc), "kind": "contract"}, EXIT_CONTRACT
    except (UsageError, ParseError, ValueError, IndexError, OSError) as exc:
        _say(f"error: {exc}")
        return {"schema": SCHEMA, "command": args.command, "error": str(exc)}, EXIT_USAGE
    if code == EXIT_CONTRACT:
        _say(f"error: {result['error']}")
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "command": args.command,
        "config": asdict(cfg),
        "result": result,
        "exit_code": code,
    }
    if args.timings:
        report["timings"] = {"wall_seconds": round(time.perf_counter() - started, 3)}
    return report, code


def dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv: list[str] | None = None) -> int:
    report, code = run(argv)
    text = dump(report)
    out = report.get("config", {}).get("output")
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
