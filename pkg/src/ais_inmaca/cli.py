"""Command-line client.

Subcommands mirror the service endpoints one-to-one.  By default requests
are served in process (the ASGI app is mounted directly, no socket), so the
CLI works offline and stays deterministic; --server points the same client
at a remote instance instead.

Exit codes: 0 success, 1 usage/config error, 2 input/parse error,
3 model/schema mismatch.
"""

from __future__ import annotations

import argparse
import asyncio
import sys

import httpx

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3

_CODE_EXITS = {"input": EXIT_INPUT, "mismatch": EXIT_MISMATCH, "config": EXIT_USAGE}
_STATUS_EXITS = {422: EXIT_INPUT, 409: EXIT_MISMATCH}


class _Parser(argparse.ArgumentParser):
    """argparse's default usage-error exit status is 2; this contract uses 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _json_or_empty(resp: httpx.Response):
    try:
        return resp.json()
    except ValueError:
        return {}


def _post(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    if server:
        resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=None)
        return resp.status_code, _json_or_empty(resp)

    from .service import app  # deferred so --help stays fast

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://ais-inmaca") as client:
            return await client.post(path, json=payload, timeout=None)

    resp = asyncio.run(go())
    return resp.status_code, _json_or_empty(resp)


def _fail(status: int, body) -> int:
    detail = body.get("detail") if isinstance(body, dict) else None
    code = None
    message = None
    if isinstance(detail, dict):
        code = detail.get("code")
        message = detail.get("message")
    elif detail is not None:
        message = str(detail)
    print(f"error: {message or f'service returned HTTP {status}'}", file=sys.stderr)
    if code in _CODE_EXITS:
        return _CODE_EXITS[code]
    return _STATUS_EXITS.get(status, EXIT_USAGE)


def cmd_train(args) -> int:
    payload = {
        "table": _read_text(args.data),
        "n": args.n,
        "size": args.size,
        "population": args.pop,
        "generations": args.gens,
        "metric": args.metric,
        "seed": args.seed,
    }
    status, body = _post(args.server, "/train", payload)
    if status != 200:
        return _fail(status, body)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(body["model"])
    lines = ["generation\tbest_fitness"]
    for gen, fit in enumerate(body["best_fitness_per_generation"]):
        lines.append(f"{gen}\t{fit:.6f}")
    lines.append(f"final_fitness\t{body['final_fitness']:.6f}")
    lines.append(f"evaluations\t{body['evaluations']}")
    sys.stdout.write("\n".join(lines) + "\n")
    print(f"model written to {args.out}", file=sys.stderr)
    return EXIT_OK


def _report_command(args, path: str, payload: dict) -> int:
    status, body = _post(args.server, path, payload)
    if status != 200:
        return _fail(status, body)
    sys.stdout.write(body["report"])
    return EXIT_OK


def cmd_predict(args) -> int:
    return _report_command(
        args,
        "/predict",
        {
            "model": _read_text(args.model),
            "fasta": _read_text(args.fasta),
            "task": args.task,
            "window": args.window,
            "stride": args.stride,
            "threshold": args.threshold,
            "format": args.format,
            "both_strands": args.both_strands,
        },
    )


def cmd_evaluate(args) -> int:
    return _report_command(
        args,
        "/evaluate",
        {
            "predictions": _read_text(args.pred),
            "truth": _read_text(args.truth),
            "sequence_length": args.len,
        },
    )


def cmd_basins(args) -> int:
    payload = {
        "model": _read_text(args.model) if args.model else None,
        "rules": args.rules,
        "n": args.n,
        "size": args.size,
    }
    return _report_command(args, "/basins", payload)


def cmd_features(args) -> int:
    return _report_command(
        args,
        "/features",
        {
            "fasta": _read_text(args.fasta),
            "task": args.task,
            "window": args.window,
            "stride": args.stride,
        },
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ais-inmaca",
        description="Fuzzy multiple-attractor CA classifier for coding and promoter regions.",
    )
    common = _Parser(add_help=False)
    common.add_argument("--server", metavar="URL", default=None,
                        help="send requests to a running service instead of in-process")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("train", parents=[common],
                       help="search rule vectors on a labeled table, write a model file")
    p.add_argument("--data", required=True, help="labeled dataset table (tab or comma separated)")
    p.add_argument("--n", type=int, default=6, help="fuzzy level count (default 6)")
    p.add_argument("--size", type=int, default=None, help="lattice size (default: feature width)")
    p.add_argument("--pop", type=int, default=50, help="population size (default 50)")
    p.add_argument("--gens", type=int, default=50, help="generations (default 50)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--metric", choices=("accuracy", "cc"), default="accuracy",
                   help="fitness metric (default accuracy)")
    p.add_argument("--out", required=True, help="path for the model file")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", parents=[common],
                       help="scan FASTA windows with a model and render a report")
    p.add_argument("--model", required=True)
    p.add_argument("--fasta", required=True)
    p.add_argument("--task", choices=("coding", "promoter"), required=True)
    p.add_argument("--window", type=int, default=None,
                   help="window width (default: 120 coding, 50 promoter)")
    p.add_argument("--stride", type=int, default=None, help="window stride (default 10)")
    p.add_argument("--threshold", type=float, default=0.5,
                   help="confidence threshold for positive windows (default 0.5)")
    p.add_argument("--format", choices=("exon-table", "promoter-table", "raw"), default=None,
                   help="report format (default: exon-table coding, promoter-table promoter)")
    p.add_argument("--both-strands", action="store_true",
                   help="also scan the reverse complement (exon-table only)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", parents=[common],
                       help="nucleotide-level metrics of predictions against truth regions")
    p.add_argument("--pred", required=True, help="predicted regions (id<TAB>start<TAB>end)")
    p.add_argument("--truth", required=True, help="true regions (id<TAB>start<TAB>end)")
    p.add_argument("--len", type=int, required=True, help="sequence length per record")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("basins", parents=[common],
                       help="exhaustive attractor/basin listing for a model or rule vector")
    p.add_argument("--model", default=None, help="model file (mutually exclusive with --rules)")
    p.add_argument("--rules", default=None,
                   help="rule spec, e.g. 'IDENTITY*3' or 'OR3~,MAJ3,ZERO'")
    p.add_argument("--n", type=int, default=None, help="fuzzy level count (with --rules)")
    p.add_argument("--size", type=int, default=None, help="lattice size check (with --rules)")
    p.set_defaults(func=cmd_basins)

    p = sub.add_parser("features", parents=[common],
                       help="dump per-window feature vectors for a FASTA file")
    p.add_argument("--fasta", required=True)
    p.add_argument("--task", choices=("coding", "promoter"), required=True)
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--stride", type=int, default=None)
    p.set_defaults(func=cmd_features)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except httpx.HTTPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
