"""Command-line front end.

Every analysis is a subcommand.  Each run prints a JSON report to stdout
(command, parameters, seed, elapsed seconds, result payload) and a short
human summary to stderr.  Exit codes: 0 success, 1 the computation ran but
the check failed (invalid word, missed collision), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
import time
from dataclasses import asdict, dataclass
from typing import Any

from .boolanalysis import (
    FirstStepsError,
    activity_csv,
    boolean_diff_table,
    derive_activity,
    isolated_condition_count,
    monte_carlo_local_collision,
    msb_disturbance,
    satisfy_first16,
)
from .codewords import (
    SearchParams,
    build_generator,
    extend_codeword,
    fig2_sweep,
    load_codeword_file,
    low_weight_search,
    resolve_word_order,
    single_bit_census,
    sweep_csv,
    verify_codeword,
    zero_band_report,
)
from .disturbance import (
    CollisionError,
    build_characteristic,
    find_collision_add_linear,
    random_block,
)
from .primitives import FIPS_IV, ExpansionKind, compress, digest_hex, pad_single_block, seq_weight
from .ringalg import (
    condition_residuals,
    element_order,
    enumerate_module,
    solve_disturbance_kernel,
)
from .variants import VariantConfig, make_variant

PRESETS = ("standard", "add_linear", "no_sbox", "xor_expansion")


def _hex(w: int) -> str:
    return f"{w & 0xFFFFFFFF:08x}"


def _hexlist(words) -> list[str]:
    return [_hex(w) for w in words]


@dataclass
class RunReport:
    command: str
    parameters: dict[str, Any]
    seed: int | None
    elapsed_secs: float
    result: Any

    def dump(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=False)


def _resolve_seed(raw: str) -> int:
    if raw == "random":
        return secrets.randbits(32)
    return int(raw)


def _parse_kind(name: str) -> ExpansionKind:
    try:
        return ExpansionKind(name)
    except ValueError:
        raise SystemExit(f"unknown expansion kind {name!r}; choose from "
                         + ", ".join(k.value for k in ExpansionKind))


def _config(args: argparse.Namespace) -> VariantConfig:
    cfg = make_variant(args.variant)
    if getattr(args, "steps", None) is not None:
        cfg = cfg.replace(steps=args.steps)
    return cfg


# ---------------------------------------------------------------------------
# handlers: each returns (result payload, human summary, exit code)


def cmd_vectors(args) -> tuple[Any, str, int]:
    out: dict[str, dict[str, str]] = {}
    for text in ("abc", ""):
        block = pad_single_block(text.encode())
        per = {}
        for name in PRESETS:
            state = compress(FIPS_IV, block, make_variant(name))
            per[name] = digest_hex(state)
        out["empty" if text == "" else text] = per
    lines = [f"{msg}/{name}: {dig}" for msg, per in out.items() for name, dig in per.items()]
    return out, "\n".join(lines), 0


def cmd_variant_run(args) -> tuple[Any, str, int]:
    cfg = _config(args)
    block = pad_single_block(args.message.encode())
    state = compress(FIPS_IV, block, cfg)
    result = {"variant": json.loads(cfg.to_json()), "message": args.message,
              "digest": digest_hex(state)}
    return result, f"{args.variant}({args.message!r}) = {digest_hex(state)}", 0


def cmd_solve_disturbance(args) -> tuple[Any, str, int]:
    gens = solve_disturbance_kernel(strict=args.strict)
    delta = gens[0]
    multiples = enumerate_module(gens)
    residuals = condition_residuals(delta, strict=args.strict)
    result = {
        "strict": args.strict,
        "generator": _hexlist(delta),
        "order": element_order(delta),
        "distinct_patterns": len(multiples),
        "residuals_zero": all(x == 0 for rs in residuals for x in rs),
        "low28_zero": all(w % (1 << 28) == 0 for w in delta),
    }
    human = (f"kernel generator ({'strict' if args.strict else 'relaxed'}): "
             + " ".join(_hexlist(delta))
             + f"\norder {result['order']}, {result['distinct_patterns']} patterns, "
             + f"residuals zero: {result['residuals_zero']}")
    return result, human, 0


def cmd_collide(args) -> tuple[Any, str, int]:
    import random as _random
    rng = _random.Random(args.seed)
    succeeded = 0
    sample = None
    failure = None
    for trial in range(args.count):
        m = random_block(rng)
        try:
            res = find_collision_add_linear(m, args.multiple, seed=args.seed,
                                            strict=args.strict)
            succeeded += 1
            if sample is None:
                sample = json.loads(res.to_json())
        except CollisionError as exc:
            if failure is None:
                failure = {"trial": trial, "mismatch_steps": list(exc.mismatch_steps),
                           "digest_delta": _hexlist(exc.digest_delta)}
    result = {"requested": args.count, "succeeded": succeeded,
              "multiple": args.multiple, "strict": args.strict,
              "sample": sample, "first_failure": failure}
    ok = succeeded == args.count
    human = f"collisions: {succeeded}/{args.count} (multiple {args.multiple})"
    return result, human, 0 if ok else 1


def cmd_table1(args) -> tuple[Any, str, int]:
    # symbolic correction table: register coefficients for a disturbance at i
    probe = [0] * 24
    probe[8] = 1
    chara = build_characteristic(probe)
    rows = []
    names = "abcdefgh"
    for off in range(10):
        diffs = chara.register_diffs[8 + off]
        coeffs = {}
        for name, d in zip(names, diffs):
            signed = d if d < (1 << 31) else d - (1 << 32)
            if signed:
                coeffs[name.upper()] = signed
        rows.append({"offset": off, "coefficients": coeffs})
    lines = []
    for row in rows:
        body = " ".join(f"{k}:{v:+d}" for k, v in row["coefficients"].items()) or "all zero"
        lines.append(f"i+{row['offset']}: {body}")
    return rows, "\n".join(lines), 0


def cmd_table2(args) -> tuple[Any, str, int]:
    rows = []
    for e in boolean_diff_table():
        rows.append({
            "function": e.func,
            "input_diff": "".join(str(b) for b in e.input_diff),
            "probability": str(e.probability),
            "condition": e.condition,
        })
    lines = [f"{r['function']}({r['input_diff']}): p={r['probability']}"
             + (f" unless {r['condition']}" if r["condition"] else "")
             for r in rows]
    return rows, "\n".join(lines), 0


def cmd_table3(args) -> tuple[Any, str, int]:
    delta = solve_disturbance_kernel()[0]
    dstar, msb_string = msb_disturbance(delta)
    activity = derive_activity(dstar)
    csv = activity_csv(activity)
    total = sum(r.cost_e for r in activity)
    first16 = sum(r.cost_e for r in activity if r.step < 16)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv)
    result = {"msb_string": msb_string, "msb_weight": msb_string.count("1"),
              "total_cost": total, "first16_cost": first16,
              "csv": None if args.out else csv, "out": args.out}
    human = (f"disturbance weight {msb_string.count('1')}, total cost {total}, "
             f"steps 0..15 cost {first16}")
    return result, human, 0


def cmd_local_collision_mc(args) -> tuple[Any, str, int]:
    trials = args.trials if args.trials is not None else (args.iterations or 1 << 16)
    mc = monte_carlo_local_collision(args.start_step, trials, seed=args.seed,
                                     workers=args.workers)
    e_local = isolated_condition_count(args.start_step)
    result = {"start_step": args.start_step, "trials": mc.trials,
              "successes": mc.successes, "rate": mc.rate,
              "log2_rate": mc.log2_rate, "e_local": e_local}
    human = (f"local collision at step {args.start_step}: {mc.successes}/{mc.trials}"
             f" = 2^{mc.log2_rate:.3f} (independence model 2^-{e_local})")
    return result, human, 0


def cmd_census(args) -> tuple[Any, str, int]:
    kind = _parse_kind(args.kind)
    lo, hi = single_bit_census(kind, args.steps)
    return {"min": lo, "max": hi}, f"{args.kind} @ {args.steps}: min {lo}, max {hi}", 0


def cmd_search(args) -> tuple[Any, str, int]:
    kind = _parse_kind(args.kind)
    g = build_generator(kind, args.steps)
    boot = tuple(int(x) for x in args.bootstrap.split(",") if x) if args.bootstrap else ()
    params = SearchParams(
        algorithm=args.algorithm, iterations=args.iterations,
        budget_secs=args.budget_secs, seed=args.seed, workers=args.workers,
        bootstrap_lengths=boot,
    )
    res = low_weight_search(g, params)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(f"# weight {res.weight} at {res.n_steps} steps, kind {kind.value}\n")
            fh.write(f"# seed {res.seed}, {res.iterations_run} iterations, origin {res.origin}\n")
            for w in res.words:
                fh.write(_hex(w) + "\n")
    result = {"weight": res.weight, "words": _hexlist(res.words),
              "steps": res.n_steps, "kind": kind.value,
              "algorithm": res.algorithm, "iterations_run": res.iterations_run,
              "found_at_iteration": res.found_at_iteration, "origin": res.origin,
              "out": args.out}
    human = (f"best weight {res.weight} at {args.steps} steps "
             f"({res.iterations_run} iterations, origin {res.origin})")
    return result, human, 0


def cmd_verify_word(args) -> tuple[Any, str, int]:
    kind = _parse_kind(args.kind)
    words = load_codeword_file(args.file)
    resolved, order, valid, weight = resolve_word_order(words, kind)
    if args.steps is not None and len(resolved) != args.steps:
        raise SystemExit(f"file has {len(resolved)} words, expected {args.steps}")
    result = {"valid": valid, "weight": weight, "order": order,
              "support": zero_band_report(resolved)["support"]}
    human = f"{args.file}: valid={valid} weight={weight} (read order: {order})"
    return result, human, 0 if valid else 1


def cmd_extend_word(args) -> tuple[Any, str, int]:
    kind = _parse_kind(args.kind)
    words = load_codeword_file(args.file)
    resolved, order, valid, _ = resolve_word_order(words, kind)
    if not valid:
        return ({"valid": False, "order": order},
                f"{args.file}: not a valid word, cannot extend", 1)
    ext = extend_codeword(resolved, args.steps, kind)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(f"# extended from {len(resolved)} to {args.steps} steps\n")
            for w in ext:
                fh.write(_hex(w) + "\n")
    result = {"valid": True, "from_steps": len(resolved), "to_steps": args.steps,
              "weight": seq_weight(ext), "words": _hexlist(ext), "order": order,
              "out": args.out}
    return result, f"extended to {args.steps} steps: weight {seq_weight(ext)}", 0


def cmd_fig2(args) -> tuple[Any, str, int]:
    kind = _parse_kind(args.kind)
    params = SearchParams(
        algorithm=args.algorithm, iterations=args.iterations,
        budget_secs=args.budget_secs if args.iterations is None else args.budget_secs,
        seed=args.seed, workers=args.workers,
    )
    rows = fig2_sweep(range(args.min_steps, args.max_steps + 1), params, kind,
                      search_horizon=args.horizon)
    csv = sweep_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv)
    result = {"csv": None if args.out else csv, "out": args.out,
              "rows": [{"steps": r.steps, "weight": r.weight, "method": r.method}
                       for r in rows]}
    human = "\n".join(f"{r.steps}: {r.weight} ({r.method})" for r in rows)
    return result, human, 0


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="linsha",
        description="Linearised SHA-256 analysis workbench",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--seed", default="0",
                       help="integer seed, or 'random' (default 0)")
        return p

    add("vectors", cmd_vectors, help="reference digests for all presets")

    p = add("variant-run", cmd_variant_run, help="compress a message under a variant")
    p.add_argument("--variant", default="standard", choices=PRESETS)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--message", default="abc")

    p = add("solve-disturbance", cmd_solve_disturbance,
            help="kernel of the expansion-consistency conditions")
    p.add_argument("--strict", action="store_true",
                   help="use the backward-zero form of the second condition")

    p = add("collide", cmd_collide, help="verified collisions for the ADD-linear variant")
    p.add_argument("--multiple", type=int, default=1, help="kernel multiple 1..15")
    p.add_argument("--count", type=int, default=1, help="random messages to try")
    p.add_argument("--strict", action="store_true", default=True)
    p.add_argument("--relaxed", dest="strict", action="store_false",
                   help="use the relaxed order-16 kernel instead (no collisions)")

    add("table1", cmd_table1, help="register coefficients after one disturbance")
    add("table2", cmd_table2, help="differential probabilities of maj/ch")

    p = add("table3", cmd_table3, help="per-step activity and cost accounting")
    p.add_argument("--out", default=None, help="write CSV here")

    p = add("local-collision-mc", cmd_local_collision_mc,
            help="Monte Carlo estimate of one local collision")
    p.add_argument("--start-step", type=int, default=20)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--iterations", type=int, default=None, help="alias for --trials")
    p.add_argument("--workers", type=int, default=1)

    p = add("census", cmd_census, help="single-bit expansion weight census")
    p.add_argument("--kind", default="sha256-xor")
    p.add_argument("--steps", type=int, default=40)

    p = add("search", cmd_search, help="low-weight codeword search")
    p.add_argument("--kind", default="sha256-xor")
    p.add_argument("--steps", type=int, default=40)
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--algorithm", default="canteaut-chabaud",
                   choices=("canteaut-chabaud", "stern", "leon"))
    p.add_argument("--bootstrap", default="",
                   help="comma-separated shorter lengths to search first")
    p.add_argument("--out", default=None, help="write the word here")

    p = add("verify-word", cmd_verify_word, help="authenticate a codeword file")
    p.add_argument("--file", required=True)
    p.add_argument("--kind", default="sha256-xor")
    p.add_argument("--steps", type=int, default=None)

    p = add("extend-word", cmd_extend_word, help="extend a word to more steps")
    p.add_argument("--file", required=True)
    p.add_argument("--kind", default="sha256-xor")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", default=None)

    p = add("fig2", cmd_fig2, help="weight-vs-steps sweep")
    p.add_argument("--kind", default="sha256-xor")
    p.add_argument("--min-steps", type=int, default=16)
    p.add_argument("--max-steps", type=int, default=64)
    p.add_argument("--horizon", type=int, default=42,
                   help="largest step count searched directly")
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--budget-secs", type=float, default=60.0,
                   help="per-step-count budget (default 60)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--algorithm", default="canteaut-chabaud",
                   choices=("canteaut-chabaud", "stern", "leon"))
    p.add_argument("--out", default=None, help="write CSV here")

    return top


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    args.seed = _resolve_seed(args.seed)
    t0 = time.monotonic()
    try:
        result, human, code = args.handler(args)
    except FirstStepsError as exc:
        result, human, code = (
            {"error": "first-steps-correction", "step": exc.step_index,
             "function": exc.func, "condition": exc.condition},
            str(exc), 1)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.monotonic() - t0
    params = {k: v for k, v in vars(args).items()
              if k not in ("handler", "command", "seed") and not k.startswith("_")}
    report = RunReport(args.command, params, args.seed, round(elapsed, 3), result)
    print(report.dump())
    print(human, file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
