"""klift <script.kl> [--json] [--parallel] [--seed n]"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .. import __version__
from .commands import execute
from .dsl import Command, DSLError, parse

SCHEMA = "klift-result/1"
DEFAULT_BOUNDS = {"N_max": 5, "D": 12, "i_max": 4, "resolution_slack": 2}


def run(script, *, parallel: bool = False, threads: int | None = None, seed: int = 0) -> dict:
    """Execute every command of a parsed script; results keep script order."""
    cmds = script.commands
    if parallel and len(cmds) > 1:
        workers = threads or int(os.environ.get("KLIFT_THREADS", "0") or 0) or os.cpu_count() or 1
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            results = list(pool.map(execute, cmds))
    else:
        results = [execute(c) for c in cmds]
    return {"schema": SCHEMA, "version": __version__, "seed": seed, "bounds": dict(DEFAULT_BOUNDS),
            "ok": all(r["ok"] for r in results), "results": results}


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _flatten(prefix: str, v, rows: list):
    if isinstance(v, dict) and v and not ("min_degree" in v and "dims" in v):
        for k in sorted(v):
            _flatten(f"{prefix}.{k}" if prefix else k, v[k], rows)
    elif isinstance(v, dict):
        if v.get("min_degree") is None:
            rows.append((prefix, "0"))
        else:
            tail = "" if v.get("finite", True) else " ..."
            rows.append((prefix, f"from {v['min_degree']}: {json.dumps(v['dims'])}{tail}"))
    elif isinstance(v, list) and v and all(isinstance(e, dict) and e for e in v):
        for k, e in enumerate(v):
            _flatten(f"{prefix}[{k}]", e, rows)
    else:
        rows.append((prefix, json.dumps(v, ensure_ascii=False)))


def render_text(doc: dict) -> str:
    out = []
    for r in doc["results"]:
        out.append(f"[{r['index']}] {r['command']}  {'ok' if r['ok'] else 'FAILED'}")
        if "error" in r:
            out.append(f"    {r['error']}")
            continue
        rows: list = []
        _flatten("", r["payload"], rows)
        w = max((len(k) for k, _ in rows), default=0)
        out.extend(f"    {k.ljust(w)}  {v}" for k, v in rows)
    out.append("all commands ok" if doc["ok"] else "some commands failed")
    return "\n".join(out) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="klift", description="Lifting graded modules along Koszul quotients.")
    ap.add_argument("script", nargs="?", help="script file ('-' for stdin)")
    ap.add_argument("--json", action="store_true", help="structured output")
    ap.add_argument("--parallel", action="store_true", help="run commands concurrently (KLIFT_THREADS caps workers)")
    ap.add_argument("--seed", type=int, default=0, help="recorded in the output; all algorithms are deterministic")
    ap.add_argument("--paper-examples", action="store_true", help="run the pinned regression fixtures")
    args = ap.parse_args(argv)
    if args.script is None and not args.paper_examples:
        ap.error("a script or --paper-examples is required")
    text = ""
    if args.script == "-":
        text = sys.stdin.read()
    elif args.script:
        try:
            with open(args.script, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"klift: {exc}", file=sys.stderr)
            return 2
    try:
        script = parse(text)
    except DSLError as exc:
        print(f"{args.script or '<fixtures>'}:{exc}", file=sys.stderr)
        return 2
    if args.paper_examples:
        script.commands.append(Command(len(script.commands), "paper-examples", "paper-examples", {}, {}, 0))
    doc = run(script, parallel=args.parallel, seed=args.seed)
    sys.stdout.write(dumps(doc) if args.json else render_text(doc))
    return 0 if doc["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
