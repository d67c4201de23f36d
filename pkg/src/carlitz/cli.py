"""Command-line front end: a thin client of the HTTP service.

By default requests are dispatched in-process against the FastAPI app (no
server needed); --server http://host:port talks to a running instance
(`carlitz serve`).  Flags have CARLITZ_-prefixed environment variable
overrides, element arguments accept `-` for stdin.

Exit codes: 0 success/PASS, 1 verification FAIL, 2 usage or domain error,
3 extension required.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Dict, Optional

import httpx

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_EXTENSION = 3


def _env(name: str, default, cast):
    raw = os.environ.get(f"CARLITZ_{name.upper()}")
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(f"bad CARLITZ_{name.upper()}={raw!r}")


def _add_common_flags(ap: argparse.ArgumentParser, suppress: bool) -> None:
    # the same flags hang off every subcommand (with SUPPRESS defaults so a
    # subcommand never clobbers a value given before it), so both
    # `--prec 200 verify omega-fe` and `verify omega-fe --prec 200` work
    d = (lambda name, val, cast: argparse.SUPPRESS) if suppress else _env
    ap.add_argument("--p", type=int, default=d("p", 3, int))
    ap.add_argument("--m", type=int, default=d("m", 1, int))
    ap.add_argument("--e", type=int, default=d("e", 1, int))
    ap.add_argument("--ram", type=int, default=d("ram", 0, int),
                    help="ramification index (0 = minimal q-1)")
    ap.add_argument("--prec", type=int, default=d("prec", 200, int))
    ap.add_argument("--tdeg", type=int, default=d("tdeg", 40, int))
    ap.add_argument("--seed", type=int, default=d("seed", 0, int))
    ap.add_argument("--json", action="store_true",
                    default=argparse.SUPPRESS if suppress else False,
                    help="raw JSON output")
    ap.add_argument("--server",
                    default=(argparse.SUPPRESS if suppress
                             else os.environ.get("CARLITZ_SERVER")),
                    help="base URL of a running service (default: in-process)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="carlitz",
        description="Exact Carlitz/Anderson function-field arithmetic")
    _add_common_flags(ap, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    _add_common_flags(shared, suppress=True)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=(
        lambda **kw: argparse.ArgumentParser(parents=[shared], **kw)))

    sub.add_parser("pitilde", help="the Carlitz period")
    sub.add_parser("omega", help="the Omega series")
    for name, help_text in [("cexp", "Carlitz exponential"),
                            ("clog", "Carlitz logarithm")]:
        s = sub.add_parser(name, help=help_text)
        s.add_argument("z", help="field element expression, or - for stdin")
    for name in ("lalpha", "laplha"):
        s = sub.add_parser(name, help="the series L_alpha"
                           + (" (alias)" if name == "laplha" else ""))
        s.add_argument("alpha", help="field element expression")
    s = sub.add_parser("caction", help="Carlitz module action C_a(x)")
    s.add_argument("poly", help="F_q[t] polynomial expression, e.g. 't^2+1'")
    s.add_argument("x", help="field element expression")
    s = sub.add_parser("reduce-log", help="greedy t-division reduction")
    s.add_argument("beta", help="field element expression")
    s = sub.add_parser("verify", help="identity / presentation checks")
    s.add_argument("target",
                   help="omega-fe | pitilde-link | torsion-log | lalpha-fe | "
                        "path to a presentation JSON file")
    s.add_argument("--alpha", default=None, help="alpha for lalpha-fe")
    s = sub.add_parser("relations", help="linear-relation search")
    s.add_argument("--alphas", required=True,
                   help="comma-separated field element expressions")
    s.add_argument("--dt", type=int, default=1)
    s.add_argument("--vlo", type=int, default=-1)
    s.add_argument("--vhi", type=int, default=0)
    s.add_argument("--margin", type=int, default=2)
    sub.add_parser("selftest", help="run the acceptance suite")
    s = sub.add_parser("serve", help="start the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)
    return ap


class _InProcessClient:
    """Dispatches requests straight into the ASGI app, no server needed."""

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    def post(self, path: str, json: Dict[str, Any]) -> httpx.Response:
        import asyncio

        from .service import app

        async def go():
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                    transport=transport, base_url="http://carlitz.local",
                    timeout=None) as client:
                return await client.post(path, json=json)

        return asyncio.run(go())


def _client(args):
    if args.server:
        return httpx.Client(base_url=args.server, timeout=600.0)
    return _InProcessClient()


def _config_payload(args) -> Dict[str, Any]:
    return {"p": args.p, "m": args.m, "e": args.e, "ram": args.ram,
            "prec": args.prec, "t_deg": args.tdeg, "seed": args.seed}


def _read_operand(value: str) -> str:
    if value == "-":
        return sys.stdin.read().strip()
    return value


def _element_text(data: Dict[str, Any]) -> str:
    coeffs = data.get("coeffs", [])
    if not coeffs:
        body = "0"
    else:
        parts = []
        for exp, coords in coeffs:
            c = coords[0] if len(coords) == 1 else tuple(coords)
            parts.append(f"{c}*pi^{exp}" if exp else f"{c}")
        body = " + ".join(parts)
    prec = data.get("prec")
    return body if prec is None else f"{body} + O(pi^{prec})"


def _print(args, payload: Dict[str, Any]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    if "value" in payload:
        print(_element_text(payload["value"]))
    elif "series" in payload:
        series = payload["series"]
        for j, c in enumerate(series["coeffs"]):
            if c["coeffs"]:
                print(f"t^{j}: {_element_text(c)}")
        tail = series.get("tail")
        if tail:
            print(f"tail: {tail['kind']}")
    elif "alpha" in payload:
        print(f"n = {payload['n']}")
        print(f"alpha = {_element_text(payload['alpha'])}")
    elif "results" in payload:
        for r in payload["results"]:
            mark = "PASS" if r["passed"] else "FAIL"
            print(f"{mark} [{r['number']:2d}] {r['name']}: {r['detail']}")
    elif "passed" in payload:
        print(("PASS" if payload["passed"] else "FAIL")
              + (f": {payload['detail']}" if payload.get("detail") else ""))
    elif "gamma" in payload:
        g = payload["gamma"]
        print(f"relations: {len(payload['relations'])} "
              f"(kernel dim {payload['kernel_dim']})")
        print(f"dim Gamma_X = {g['dim']} (conjectural transcendence degree)")
        for ev in payload["evaluated"]:
            print(f"  pitilde coeff {_element_text(ev['c_pitilde'])}; "
                  f"log coeffs {[_element_text(c) for c in ev['c_log']]}")
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn
        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    cfg = _config_payload(args)
    try:
        with _client(args) as client:
            if args.command == "pitilde":
                resp = client.post("/pitilde", json={"config": cfg})
            elif args.command == "omega":
                resp = client.post("/omega", json={"config": cfg})
            elif args.command in ("cexp", "clog"):
                resp = client.post(f"/{args.command}",
                                   json={"config": cfg, "z": _read_operand(args.z)})
            elif args.command in ("lalpha", "laplha"):
                resp = client.post("/lalpha",
                                   json={"config": cfg,
                                         "z": _read_operand(args.alpha)})
            elif args.command == "caction":
                resp = client.post("/caction", json={"config": cfg,
                                                     "poly": args.poly,
                                                     "x": _read_operand(args.x)})
            elif args.command == "reduce-log":
                resp = client.post("/reduce-log",
                                   json={"config": cfg,
                                         "z": _read_operand(args.beta)})
            elif args.command == "verify":
                body: Dict[str, Any] = {"config": cfg}
                if os.path.exists(args.target):
                    with open(args.target) as fh:
                        body["presentation"] = json.load(fh)
                else:
                    body["target"] = args.target
                    if args.alpha:
                        body["alpha"] = args.alpha
                resp = client.post("/verify", json=body)
            elif args.command == "relations":
                resp = client.post("/relations", json={
                    "config": cfg,
                    "alphas": [a.strip() for a in args.alphas.split(",")],
                    "d_t": args.dt, "v_lo": args.vlo, "v_hi": args.vhi,
                    "margin": args.margin})
            elif args.command == "selftest":
                resp = client.post("/selftest", json={"config": cfg})
            else:  # pragma: no cover
                raise SystemExit(EXIT_USAGE)
    except httpx.HTTPError as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if resp.status_code == 422:
        payload = resp.json()
        print(f"error: {payload.get('error')}: {payload.get('detail')}",
              file=sys.stderr)
        if payload.get("error") == "ExtensionRequired":
            return EXIT_EXTENSION
        return EXIT_USAGE
    if resp.status_code != 200:
        print(f"error: HTTP {resp.status_code}: {resp.text}", file=sys.stderr)
        return EXIT_USAGE
    payload = resp.json()
    _print(args, payload)
    if "passed" in payload and not payload["passed"]:
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
