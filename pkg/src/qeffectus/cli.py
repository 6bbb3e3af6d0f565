"""Command-line interface.

Exit codes: 0 when the requested check passes (or the computation
succeeds), 1 when a verification fails (a witness is printed) or the law
suite reports failures, 2 on input errors.  All reports are
deterministic: the same inputs and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .fileio import (
    InputError,
    canonical_dumps,
    family_to_kleisli,
    family_to_predicate,
    family_to_qhom,
    family_to_state,
    kleisli_to_doc,
    load_json,
    parse_classical_map,
    parse_family,
    parse_question_dist,
    parse_strategy,
    parse_structure,
    value_to_json,
)
from .games import (
    evaluate_game,
    verify_perfect_strategy,
    verify_quantum_homomorphism,
)
from .kleisli import graded_compose
from .laws import LawSuiteConfig, run_law_suite
from .linalg import DEFAULT_TOL, CheckResult
from .logic import condition, validity
from .rstruct import is_homomorphism
from .semiring import ProjectionSemiring, semiring_by_name

__all__ = ["main"]


def _load_structure(path: str):
    return parse_structure(load_json(path), path)


def _print_json(doc: dict) -> None:
    sys.stdout.write(canonical_dumps(doc))


def _check_report(command: str, res: CheckResult, as_json: bool) -> int:
    if as_json:
        doc = {
            "command": command,
            "ok": bool(res),
            "condition": res.condition,
            "witness": res.witness,
            "residual": None if res.residual is None else float(res.residual),
        }
        _print_json(doc)
    elif res:
        print(f"PASS {command}")
    else:
        print(f"FAIL {command}")
        print(f"condition: {res.condition}")
        if res.witness is not None:
            print(f"witness: {res.witness!r}")
        if res.residual is not None:
            print(f"residual: {res.residual:.6e}")
    return 0 if res else 1


def _cmd_verify_hom(args) -> int:
    src = _load_structure(args.source)
    dst = _load_structure(args.target)
    f = parse_classical_map(load_json(args.map), src, dst, args.map)
    try:
        res = is_homomorphism(f)
    except ValueError as e:
        raise InputError(str(e)) from e
    return _check_report("verify-hom", res, args.json)


def _cmd_verify_qhom(args) -> int:
    src = _load_structure(args.source)
    dst = _load_structure(args.target)
    sem, entries = parse_family(
        load_json(args.family),
        lambda g: ProjectionSemiring(g, args.tol),
        args.family,
    )
    q = family_to_qhom(src, dst, sem.dim, entries, args.tol, args.family)
    res = verify_quantum_homomorphism(q, args.tol)
    return _check_report("verify-qhom", res, args.json)


def _cmd_verify_strategy(args) -> int:
    src = _load_structure(args.source)
    dst = _load_structure(args.target)
    strat = parse_strategy(load_json(args.strategy), src, dst, args.tol, args.strategy)
    res = verify_perfect_strategy(strat, args.tol)
    return _check_report("verify-strategy", res, args.json)


def _cmd_game(args) -> int:
    src = _load_structure(args.source)
    dst = _load_structure(args.target)
    strat = parse_strategy(load_json(args.strategy), src, dst, args.tol, args.strategy)
    qd = None
    if args.question_dist != "uniform":
        qd = parse_question_dist(load_json(args.question_dist), src, args.question_dist)
        total = sum(qd.values())
        if any(w < -args.tol for w in qd.values()) or abs(total - 1.0) > args.tol:
            raise InputError(
                f"{args.question_dist}: weights must be nonnegative and sum to 1"
            )
    try:
        ev = evaluate_game(strat, qd, args.tol)
    except ValueError as e:
        if args.json:
            _print_json({"command": "game", "ok": False, "error": str(e)})
        else:
            print("FAIL game")
            print(f"error: {e}")
        return 1
    if args.json:
        doc = {
            "command": "game",
            "ok": True,
            "win_probability": float(ev.win_probability),
            "questions": {
                f"{v1}|{v2}": w for (v1, v2), w in ev.question_weights.items()
            },
            "correlations": {
                f"{v1}|{v2}": {f"{w1}|{w2}": p for (w1, w2), p in row.items()}
                for (v1, v2), row in ev.table.items()
            },
        }
        _print_json(doc)
    else:
        print(f"win_probability: {ev.win_probability}")
    return 0


def _family_args(args, path: str):
    sem_of_grade = lambda g: semiring_by_name(args.instance, g, args.tol)  # noqa: E731
    return parse_family(load_json(path), sem_of_grade, path)


def _cmd_validity(args) -> int:
    s = _load_structure(args.structure)
    state_sem, state_entries = _family_args(args, args.state)
    pred_sem, pred_entries = _family_args(args, args.predicate)
    p = family_to_state(s, state_sem, state_entries, args.state)
    q = family_to_predicate(s, pred_sem, pred_entries, args.tol, args.predicate)
    try:
        v = validity(p, q)
    except ValueError as e:
        raise InputError(str(e)) from e
    payload = value_to_json(v.semiring, v.value)
    if args.json:
        _print_json(
            {
                "command": "validity",
                "grade": v.semiring.grade,
                "value": payload,
                "is_true": v.is_true(),
                "is_false": v.is_false(),
            }
        )
    else:
        print(f"validity: {json.dumps(payload)}")
        print(f"is_true: {str(v.is_true()).lower()}")
        print(f"is_false: {str(v.is_false()).lower()}")
    return 0


def _cmd_condition(args) -> int:
    s = _load_structure(args.structure)
    state_sem, state_entries = _family_args(args, args.state)
    pred_sem, pred_entries = _family_args(args, args.predicate)
    p = family_to_state(s, state_sem, state_entries, args.state)
    q = family_to_predicate(s, pred_sem, pred_entries, args.tol, args.predicate)
    try:
        c = condition(p, q, args.tol)
    except ValueError as e:
        if args.json:
            _print_json({"command": "condition", "ok": False, "error": str(e)})
        else:
            print("FAIL condition")
            print(f"error: {e}")
        return 1
    sem = c.semiring
    is_proj = isinstance(sem, ProjectionSemiring)
    terms_doc = {str(x): value_to_json(sem, t) for x, t in c.terms.items()}
    state_doc = None
    if not is_proj:
        state_doc = {
            str(x): value_to_json(sem, w) for x, w in c.state.dist.support.items()
        }
    if args.json:
        _print_json(
            {
                "command": "condition",
                "ok": True,
                "grade": sem.grade,
                "support": value_to_json(sem, c.support),
                "terms": terms_doc,
                "state": state_doc,
            }
        )
    else:
        print(f"grade: {sem.grade}")
        print(f"support: {json.dumps(value_to_json(sem, c.support))}")
        for x in c.structure.universe:
            if x in c.terms:
                print(f"term {x}: {json.dumps(value_to_json(sem, c.terms[x]))}")
        if state_doc is not None:
            for x in c.structure.universe:
                if str(x) in state_doc:
                    print(f"state {x}: {json.dumps(state_doc[str(x)])}")
    return 0


def _cmd_compose(args) -> int:
    src = _load_structure(args.source)
    mid = _load_structure(args.middle)
    dst = _load_structure(args.target)
    sem1, entries1 = _family_args(args, args.first)
    sem2, entries2 = _family_args(args, args.second)
    c1 = family_to_kleisli(src, mid, sem1, entries1, args.first)
    c2 = family_to_kleisli(mid, dst, sem2, entries2, args.second)
    try:
        composed = graded_compose(c1, c2)
    except ValueError as e:
        raise InputError(str(e)) from e
    doc = kleisli_to_doc(composed)
    if args.json:
        _print_json({"command": "compose", "ok": True, "composite": doc})
    else:
        sys.stdout.write(canonical_dumps(doc))
    return 0


def _cmd_laws(args) -> int:
    instances = (
        ("bool", "prob", "proj") if args.instance == "all" else (args.instance,)
    )
    config = LawSuiteConfig(
        instances=instances,
        trials=args.trials,
        max_size=args.max_size,
        grade=args.grade,
        seed=args.seed,
        tol=args.tol,
        exhaustive_size=args.exhaustive_size,
    )
    report = run_law_suite(config)
    if args.json:
        _print_json(report.to_dict())
    else:
        print(report.to_text())
    return 0 if report.total_failures == 0 else 1


def _add_common(p: argparse.ArgumentParser, instance: bool = False) -> None:
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numeric tolerance")
    p.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    if instance:
        p.add_argument(
            "--instance",
            choices=["bool", "prob", "proj"],
            default="proj",
            help="weight instance for family files",
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qeffectus",
        description="verify homomorphisms, strategies, and weight-instance laws",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-hom", help="check a classical map between structures")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("map")
    _add_common(p)
    p.set_defaults(func=_cmd_verify_hom)

    p = sub.add_parser("verify-qhom", help="check a projective homomorphism family")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("family")
    _add_common(p)
    p.set_defaults(func=_cmd_verify_qhom)

    p = sub.add_parser("verify-strategy", help="check a two-player strategy")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("strategy")
    _add_common(p)
    p.set_defaults(func=_cmd_verify_strategy)

    p = sub.add_parser("game", help="evaluate a strategy's winning probability")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("strategy")
    p.add_argument(
        "--question-dist",
        default="uniform",
        help="path to a question distribution, or 'uniform'",
    )
    _add_common(p)
    p.set_defaults(func=_cmd_game)

    p = sub.add_parser("validity", help="validity of a predicate in a state")
    p.add_argument("structure")
    p.add_argument("state")
    p.add_argument("predicate")
    _add_common(p, instance=True)
    p.set_defaults(func=_cmd_validity)

    p = sub.add_parser("condition", help="condition a state on a predicate")
    p.add_argument("structure")
    p.add_argument("state")
    p.add_argument("predicate")
    _add_common(p, instance=True)
    p.set_defaults(func=_cmd_condition)

    p = sub.add_parser("compose", help="compose two weighted maps")
    p.add_argument("source")
    p.add_argument("middle")
    p.add_argument("target")
    p.add_argument("first")
    p.add_argument("second")
    _add_common(p, instance=True)
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("laws", help="run the seeded law suite")
    p.add_argument(
        "--instance",
        choices=["bool", "prob", "proj", "all"],
        default="all",
    )
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grade", type=int, default=2)
    p.add_argument("--max-size", type=int, default=3, dest="max_size")
    p.add_argument("--exhaustive-size", type=int, default=2, dest="exhaustive_size")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_laws)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
