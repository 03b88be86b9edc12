"""Command-line front end and manifest runner.

Exit status: 0 when every claim verified, 1 when a verification failed,
2 for bad input (schema violations, unreadable files, out-of-domain
parameters, exhausted budgets).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import jsonschema

from .errors import BudgetError, ConstructionError, DomainError, ErlabError, ParseError, PreconditionError, SizeError
from .operations import REGISTRY

SCHEMA_VERSION = 1
COMMANDS = ("construct", "solve", "verify", "rho", "preset")

MANIFEST_SCHEMA = {
    "type": "object",
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "command": {"enum": list(COMMANDS)},
        "operation": {"type": "string"},
        "params": {"type": "object"},
        "inputs": {"type": "array", "items": {"type": "string"}},
        "output": {"type": "string"},
        "artifacts": {"type": "string"},
        "seeds": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
        "parallelism": {"type": "integer", "minimum": 1},
    },
    "required": ["schema", "command", "params", "seeds"],
    "additionalProperties": False,
}

INPUT_ERRORS = (DomainError, ParseError, PreconditionError, BudgetError, SizeError, OSError)


class InputError(Exception):
    pass


def operation_key(manifest: dict) -> str:
    cmd = manifest["command"]
    op = manifest.get("operation")
    key = cmd if op is None else f"{cmd}.{op}"
    if key not in REGISTRY:
        known = sorted(k for k in REGISTRY if k.split(".")[0] == cmd)
        raise InputError(f"$.operation: unknown operation {op!r} for {cmd!r}; known: {known}")
    return key


def _where(err: jsonschema.ValidationError, prefix: str = "$") -> str:
    path = prefix + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)
    return f"{path}: {err.message}"


def validate_manifest(manifest) -> str:
    errors = sorted(jsonschema.Draft202012Validator(MANIFEST_SCHEMA).iter_errors(manifest), key=lambda e: list(e.path))
    if errors:
        raise InputError("\n".join(_where(e) for e in errors))
    key = operation_key(manifest)
    schema = REGISTRY[key][1]
    errors = sorted(jsonschema.Draft202012Validator(schema).iter_errors(manifest["params"]), key=lambda e: list(e.path))
    if errors:
        raise InputError("\n".join(_where(e, "$.params") for e in errors))
    return key


def load_manifest(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read manifest: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _execute(task: tuple) -> dict:
    key, params, seed, inputs = task
    try:
        result = REGISTRY[key][0](params, seed, inputs)
    except ConstructionError as exc:
        return {"seed": str(seed), "verified": False, "error": f"ConstructionError: {exc}"}
    except INPUT_ERRORS as exc:
        return {"seed": str(seed), "verified": False, "input_error": f"{type(exc).__name__}: {exc}"}
    result["seed"] = str(seed)
    return result


def _artifact_paths(base: str, seed: int, multi: bool) -> dict[str, Path]:
    p = Path(base)
    stem = p.name[:-3] if p.suffix == ".g6" else p.name
    if multi:
        stem = f"{stem}-seed{seed}"
    d = p.parent
    return {"graph6": d / f"{stem}.g6", "incidence": d / f"{stem}.inc", "plan": d / f"{stem}.plan.json"}


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str, ensure_ascii=False) + "\n"


def run_manifest(manifest: dict, jobs: int | None = None, artifact_base: str | None = None) -> tuple[dict, int]:
    key = validate_manifest(manifest)
    seeds = manifest["seeds"]
    inputs = manifest.get("inputs", [])
    for path in inputs:
        if not os.path.exists(path):
            raise InputError(f"$.inputs: {path} does not exist")
    jobs = jobs or manifest.get("parallelism", 1)
    tasks = [(key, manifest["params"], s, inputs) for s in seeds]
    start = time.perf_counter()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_execute, tasks))
    else:
        results = [_execute(t) for t in tasks]
    wall = time.perf_counter() - start
    base = artifact_base or manifest.get("artifacts")
    written = []
    for seed, res in zip(seeds, results):
        arts = res.pop("_artifacts", {})
        if base and arts and res.get("verified"):
            paths = _artifact_paths(base, seed, len(seeds) > 1)
            for name, payload in arts.items():
                path = paths[name]
                path.parent.mkdir(parents=True, exist_ok=True)
                if isinstance(payload, bytes):
                    path.write_bytes(payload)
                else:
                    path.write_text(_dumps(payload))
                written.append(str(path))
    report = {
        "schema": SCHEMA_VERSION,
        "command": manifest["command"],
        "operation": manifest.get("operation"),
        "parameters": manifest["params"],
        "seeds": [str(s) for s in seeds],
        "results": results,
        "artifacts": written,
        "verified": all(r.get("verified") for r in results),
        "wall_time": wall,
    }
    if any("input_error" in r for r in results):
        status = 2
    else:
        status = 0 if report["verified"] else 1
    return report, status


def report_text(report: dict, with_wall_time: bool = False) -> str:
    """Canonical JSON text.  Wall time is left out by default so that the
    same manifest gives byte-identical reports at any parallelism."""
    if not with_wall_time:
        report = {k: v for k, v in report.items() if k != "wall_time"}
    return _dumps(report)


# -- argument parsing ---------------------------------------------------
def _caster(spec: dict):
    t = spec.get("type")
    if t == "integer":
        return int
    if t == "boolean":
        return lambda s: s.lower() in ("1", "true", "yes")
    return str


def _add_common(p: argparse.ArgumentParser, seeds: bool = True) -> None:
    if seeds:
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--seeds", type=int, nargs="+", help="several seeds; overrides --seed")
        p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="artifact path (graph6); sidecars are written next to it")
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall_time in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="erlab", description="Erdős–Rogers experiments: build, solve, verify.")
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in ("construct", "solve", "verify", "preset"):
        cp = sub.add_parser(cmd)
        ops = cp.add_subparsers(dest="operation", required=True)
        for key, (_, schema) in REGISTRY.items():
            c, _, op = key.partition(".")
            if c != cmd:
                continue
            op_parser = ops.add_parser(op)
            for name, spec in schema["properties"].items():
                if name == "graph6":
                    continue
                flags = [f"--{name}"] + ([f"--{name.replace('_', '-')}"] if "_" in name else [])
                kw = {"dest": f"param_{name}", "type": _caster(spec)}
                if "enum" in spec:
                    kw["choices"] = spec["enum"]
                op_parser.add_argument(*flags, **kw)
            op_parser.add_argument("--in", dest="inputs", action="append", default=[], help="input graph6 file")
            _add_common(op_parser)
    rp = sub.add_parser("rho")
    for name, spec in REGISTRY["rho"][1]["properties"].items():
        rp.add_argument(f"--{name.replace('_', '-')}", dest=f"param_{name}", type=_caster(spec))
    _add_common(rp, seeds=False)
    run = sub.add_parser("run")
    run.add_argument("manifest")
    run.add_argument("--jobs", type=int)
    _add_common(run, seeds=False)
    return parser


def _manifest_from_args(args) -> dict:
    params = {k[len("param_"):]: v for k, v in vars(args).items() if k.startswith("param_") and v is not None}
    m = {"schema": SCHEMA_VERSION, "command": args.command, "params": params,
         "seeds": getattr(args, "seeds", None) or [getattr(args, "seed", 0)]}
    if args.command != "rho":
        m["operation"] = args.operation
    if getattr(args, "inputs", None):
        m["inputs"] = args.inputs
    return m


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            manifest = load_manifest(args.manifest)
            jobs = args.jobs
        else:
            manifest = _manifest_from_args(args)
            jobs = getattr(args, "jobs", 1)
        report, status = run_manifest(manifest, jobs, args.out)
    except InputError as exc:
        print(f"erlab: input error\n{exc}", file=sys.stderr)
        return 2
    except ErlabError as exc:
        print(f"erlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = report_text(report, with_wall_time=args.timing)
    target = args.report or (manifest.get("output") if isinstance(manifest, dict) else None)
    if target:
        Path(target).parent.mkdir(parents=True, exist_ok=True)
        Path(target).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
