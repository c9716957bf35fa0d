"""Unified command-line entry point.

Verb-noun subcommands, one per workbench area. Every command writes a single
deterministic report (JSON by default, CSV on request) to stdout or to
--output; errors are structured JSON on stderr with exit status 1, usage
problems exit with status 2. Identical invocations with identical seeds
produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import aqc, limits, pairing, tae, turing, zeno
from .errors import HyperlabError
from .reporting import emit_report
from .zeno import UNBOUNDED


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperlab",
        description="Desk-scale workbench for classical and hypercomputational machine models.",
    )
    parser.add_argument("--seed", type=int, default=0, help="global RNG seed (default 0)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--output", default="-", help="report destination file, - for stdout")
    groups = parser.add_subparsers(dest="group", required=True)

    tm = groups.add_parser("tm", help="Turing machine engine").add_subparsers(
        dest="command", required=True)
    tm_run = tm.add_parser("run", help="run a machine on an input string")
    tm_run.add_argument("machine", help="machine document (JSON)")
    tm_run.add_argument("--input", default="", help="initial tape content")
    tm_run.add_argument("--fuel", type=int, default=turing.DEFAULT_FUEL)
    tm_run.add_argument("--trace", action="store_true", help="include a bounded trace")

    tae_g = groups.add_parser("tae", help="trial-and-error procedures").add_subparsers(
        dest="command", required=True)
    gold = tae_g.add_parser("goldbach", help="prime-pair answer stream over even numbers")
    gold.add_argument("--horizon", type=int, required=True)
    ashby = tae_g.add_parser("ashby", help="wheel-compounding strategies")
    ashby.add_argument("--wheels", type=int, required=True)
    ashby.add_argument("--p", type=float, required=True)
    ashby.add_argument("--strategy", type=int, choices=(1, 2, 3), required=True)
    ashby.add_argument("--simulate", action="store_true")
    ashby.add_argument("--trials", type=int, default=10**5)
    ashby.add_argument("--seed", type=int, default=None, dest="seed_local")
    bogo = tae_g.add_parser("bogosort", help="shuffle a random sequence until sorted")
    bogo.add_argument("--len", type=int, required=True, dest="length")
    bogo.add_argument("--memo", action="store_true")
    bogo.add_argument("--max-tries", type=int, default=10**6)
    bogo.add_argument("--seed", type=int, default=None, dest="seed_local")

    zeno_g = groups.add_parser("zeno", help="accelerated-machine time accounting").add_subparsers(
        dest="command", required=True)
    ztime = zeno_g.add_parser("time", help="elapsed time through step index n")
    ztime.add_argument("--n", type=int, required=True)
    zbudget = zeno_g.add_parser("budget", help="steps that fit a time budget")
    zbudget.add_argument("--seconds", type=_fraction_arg, required=True)
    zlamp = zeno_g.add_parser("lamp", help="toggling-lamp state at a time")
    zlamp.add_argument("--t", type=_fraction_arg, required=True)
    zhalt = zeno_g.add_parser("halting", help="halting flag of a fuel-bounded run")
    zhalt.add_argument("machine", help="machine document (JSON)")
    zhalt.add_argument("--input", default="")
    zhalt.add_argument("--fuel", type=int, default=10**6)

    lim = groups.add_parser("limits", help="physical bounds on mechanical computation")
    lim.add_argument("--symbols", type=int, required=True)
    lim.add_argument("--power", type=float, default=None)
    lim.add_argument("--dt", type=float, default=None)

    enum_g = groups.add_parser("enum", help="finite-precision real enumeration").add_subparsers(
        dest="command", required=True)
    edec = enum_g.add_parser("decode", help="pair at a diagonal index")
    edec.add_argument("--index", type=int, required=True)
    eenc = enum_g.add_parser("encode", help="diagonal index of a pair")
    eenc.add_argument("--a", type=int, required=True)
    eenc.add_argument("--b", type=int, required=True)
    elist = enum_g.add_parser("list", help="first n enumerated values")
    elist.add_argument("--count", type=int, required=True)

    aqc_g = groups.add_parser("aqc", help="adiabatic ground-state decision").add_subparsers(
        dest="command", required=True)
    solve = aqc_g.add_parser("solve", help="decide solvability up to a cutoff")
    solve.add_argument("polynomial", help="polynomial document (JSON)")
    solve.add_argument("--cutoff", type=int, required=True)
    solve.add_argument("--time", type=float, default=50.0)
    solve.add_argument("--dt", type=float, default=0.01)
    solve.add_argument("--shots", type=int, default=1000)
    solve.add_argument("--seed", type=int, default=None, dest="seed_local")
    solve.add_argument("--oracle-only", action="store_true",
                       help="skip the evolution; report the exact scan only")

    return parser


# -- command handlers -----------------------------------------------------------


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_tm_run(args) -> dict:
    machine = turing.load_machine(_load_json(args.machine))
    outcome = turing.run(machine, args.input, fuel=args.fuel, trace=args.trace)
    report = {
        "command": "tm run",
        "outcome": outcome.kind.value,
        "steps": outcome.config.steps,
        "final_state": outcome.config.state,
        "tape": outcome.config.tape_text(machine),
        "head": outcome.config.heads[0],
        "oracle_consultations": outcome.oracle_consultations,
    }
    if outcome.trace is not None:
        report["trace"] = [
            {"state": c.state, "head": c.heads[0], "steps": c.steps,
             "tape": c.tape_text(machine)}
            for c in outcome.trace
        ]
    return report


def _cmd_goldbach(args) -> dict:
    stream = tae.goldbach_stream(args.horizon)
    return {
        "command": "tae goldbach",
        "horizon": args.horizon,
        "final_verdict": stream.final_verdict,
        "mind_changes": stream.mind_changes,
        "answers": len(stream.answers),
        "last_examined": stream.answers[-1][0],
    }


def _cmd_ashby(args, seed: int) -> dict:
    strategy = tae.WheelStrategy(args.strategy)
    exp = tae.WheelExperiment(args.wheels, args.p, strategy, seed=seed)
    log2_expected = tae.ashby_expected_log2(exp)
    expected = tae.ashby_expected(exp) if log2_expected < 1020 else None
    report = {
        "command": "tae ashby",
        "wheels": args.wheels,
        "p": args.p,
        "strategy": int(strategy),
        "expected_seconds": expected,
        "expected_log2": log2_expected,
        "formula": {
            1: "p**-N rounds",
            2: "N/p single spins",
            3: "mean of max of N geometric(p) draws",
        }[int(strategy)],
        "quoted_reference": {
            "case1_log2_seconds": tae.QUOTED_CASE1_LOG2_SECONDS,
            "case2_seconds": tae.QUOTED_CASE2_SECONDS,
            "case3": tae.QUOTED_CASE3_NOTE,
            "asserted": False,
        },
    }
    if args.simulate:
        mean, stderr = tae.ashby_simulate(exp, args.trials)
        report["simulated_mean_seconds"] = mean
        report["simulated_standard_error"] = stderr
        report["trials"] = args.trials
        report["seed"] = seed
    return report


def _cmd_bogosort(args, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    sequence = [int(x) for x in rng.permutation(args.length)]
    result = tae.bogosort(sequence, memoized=args.memo, seed=seed,
                          max_tries=args.max_tries)
    return {
        "command": "tae bogosort",
        "length": args.length,
        "memoized": args.memo,
        "seed": seed,
        "input": sequence,
        "sorted": list(result.sequence),
        "tries": result.tries,
        "gave_up": result.gave_up,
    }


def _cmd_zeno_time(args) -> dict:
    seconds = zeno.zeno_time(args.n)
    limit = zeno.DEFAULT_SCHEDULE.total_time
    return {
        "command": "zeno time",
        "n": args.n,
        "seconds": float(seconds),
        "seconds_exact": seconds,
        "limit_seconds": float(limit),
        "formula": "sum_{i=0..n} base * ratio**i",
    }


def _cmd_zeno_budget(args) -> dict:
    got = zeno.steps_within_budget(args.seconds)
    if got is UNBOUNDED:
        steps = "unbounded"
    elif got is None:
        steps = None
    else:
        steps = got
    decelerated = (zeno.decelerated_steps_within_budget(args.seconds)
                   if args.seconds >= 1 else None)
    return {
        "command": "zeno budget",
        "budget_seconds": float(args.seconds),
        "largest_step_index": steps,
        "decelerated_step_index": decelerated,
        "note": (
            "decelerated_step_index counts the mirrored cascade whose step n "
            "ends at base * 2**n; budget ratios map to step gains as log2"),
    }


def _cmd_zeno_lamp(args) -> dict:
    state = zeno.thomson_lamp(args.t)
    report = {
        "command": "zeno lamp",
        "t": float(args.t),
        "state": state.value,
    }
    if state is not zeno.LampState.UNDEFINED:
        report["toggles"] = zeno.lamp_toggle_count(args.t)
    return report


def _cmd_zeno_halting(args) -> dict:
    machine = turing.load_machine(_load_json(args.machine))
    result = zeno.atm_halting_flag(machine, args.input, fuel=args.fuel)
    return {
        "command": "zeno halting",
        "flag": result.flag,
        "steps": result.steps,
        "elapsed_seconds": float(result.elapsed),
        "elapsed_exact": result.elapsed,
        "outcome": result.outcome.kind.value,
        "fuel_bounded": result.fuel_bounded,
    }


def _cmd_limits(args) -> dict:
    report = {"command": "limits"}
    report.update(limits.limits_report(args.symbols, power=args.power, dt=args.dt))
    report["formulas"] = {
        "max_frequency_from_power": "sqrt(2*pi*W/h)",
        "min_step_energy": "h/(2*pi*dt)",
        "min_symbol_volume": "(4/3)*pi*a**3*z",
        "min_symbol_distance": "2*a*z**(1/3)",
        "max_frequency_from_alphabet": "c/(2*a*z**(1/3))",
    }
    return report


def _enum_entry(entry: dict) -> dict:
    return {
        "index": entry["index"],
        "a": entry["a"],
        "b": entry["b"],
        "value": float(entry["value"]),
        "value_exact": entry["value"],
        "canonical": entry["canonical"],
    }


def _cmd_enum_decode(args) -> dict:
    a, b = pairing.pair_decode(args.index)
    return {"command": "enum decode"} | _enum_entry({
        "index": args.index, "a": a, "b": b,
        "value": pairing.real_value(a, b),
        "canonical": pairing.is_canonical_pair(a, b),
    })


def _cmd_enum_encode(args) -> dict:
    return {
        "command": "enum encode",
        "a": args.a,
        "b": args.b,
        "index": pairing.pair_index(args.a, args.b),
    }


def _cmd_enum_list(args) -> list:
    return [_enum_entry(e) for e in pairing.enumerate_reals(args.count)]


def _cmd_aqc_solve(args, seed: int) -> dict:
    poly = aqc.parse_polynomial(_load_json(args.polynomial))
    if args.oracle_only:
        energy, winners = aqc.exact_ground_oracle(poly, args.cutoff)
        return {
            "command": "aqc solve --oracle-only",
            "cutoff": args.cutoff,
            "ground_energy": energy,
            "minimizers": [list(w) for w in winners],
            "solvable_up_to_cutoff": energy == 0,
        }
    report = aqc.decide(poly, args.cutoff, args.time, args.dt, args.shots, seed)
    return {"command": "aqc solve"} | report.to_json_dict()


# -- dispatch ---------------------------------------------------------------------


def dispatch(args: argparse.Namespace):
    seed = getattr(args, "seed_local", None)
    if seed is None:
        seed = args.seed
    group, command = args.group, getattr(args, "command", None)
    if group == "tm":
        return _cmd_tm_run(args)
    if group == "tae":
        if command == "goldbach":
            return _cmd_goldbach(args)
        if command == "ashby":
            return _cmd_ashby(args, seed)
        return _cmd_bogosort(args, seed)
    if group == "zeno":
        return {
            "time": _cmd_zeno_time,
            "budget": _cmd_zeno_budget,
            "lamp": _cmd_zeno_lamp,
            "halting": _cmd_zeno_halting,
        }[command](args)
    if group == "limits":
        return _cmd_limits(args)
    if group == "enum":
        return {
            "decode": _cmd_enum_decode,
            "encode": _cmd_enum_encode,
            "list": _cmd_enum_list,
        }[command](args)
    return _cmd_aqc_solve(args, seed)


def main(argv: list[str] | None = None) -> int:
    workers = os.environ.get("HYPERLAB_THREADS")
    if workers is not None:
        try:
            if int(workers) < 1:
                raise ValueError
        except ValueError:
            print(json.dumps({"error": "configuration-error",
                              "message": "HYPERLAB_THREADS must be a positive integer"}),
                  file=sys.stderr)
            return 1

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = dispatch(args)
    except HyperlabError as exc:
        print(json.dumps({"error": exc.kind, "message": str(exc)}), file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(json.dumps({"error": "io-error", "message": str(exc)}), file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(json.dumps({"error": "parse-error", "message": str(exc)}), file=sys.stderr)
        return 1

    if args.output == "-":
        emit_report(result, args.format, sys.stdout)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            emit_report(result, args.format, fh)
    return 0


if __name__ == "__main__":
    sys.exit(main())
