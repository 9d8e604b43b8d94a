"""Command-line front end.

Exit status: 0 on success (a NONBOUNDING verdict is a success), 1 when the
data is invalid or a needed Chern number is not a polynomial, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path

from . import cobordism, localization
from .errors import EqchernError, InvalidDataset, NonRealizableData
from .fixedpoint import Dataset, SchemaError, load_dataset, validate_dataset
from .search import SearchConfig, hunt_nonbounding_minimal, verify_lemmas_randomized

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2


class ValidationError(InvalidDataset):
    def __init__(self, point_index, reason, path=None):
        self.point_index = point_index
        self.reason = reason
        where = "dataset" if point_index is None else f"point {point_index}"
        super().__init__(f"{path}: {where}: {reason}" if path else f"{where}: {reason}")


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("eqchern") / "fixtures" / name))


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    bundled = fixture_path(p.name)
    if bundled.exists():
        return bundled
    return p


def parse_dataset(path) -> Dataset:
    """Load, decode and validate a dataset file.

    Raises OSError, SchemaError or ValidationError naming the offending point.
    """
    path = _resolve(str(path))
    d = load_dataset(path)
    rep = validate_dataset(d)
    if not rep.valid:
        idx, reason = rep.first_error()
        if reason.startswith("non-unimodular"):
            reason = "non-unimodular"
        raise ValidationError(idx, reason, path)
    return d


def _omega_arg(text: str):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"omega must be comma-separated integers, got {text!r}")


def _emit(args, text_lines, payload):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_chern(args) -> int:
    d = parse_dataset(args.dataset)
    if args.omega is not None:
        omega = args.omega
    elif args.c1 is not None or args.c2 is not None:
        i, j = args.c1 or 0, args.c2 or 0
        omega = (i,) if d.rank == 1 and not j else (i, j) + (0,) * (d.rank - 2)
    else:
        raise _Usage("give --omega or --c1/--c2")
    if len(omega) != d.rank:
        raise _Usage(f"omega needs {d.rank} entries, got {len(omega)}")
    if any(i < 0 for i in omega):
        raise _Usage("omega entries must be non-negative")
    res = localization.chern_number_rational(d, omega)
    _emit(args, [str(res)], {"omega": list(omega), "value": str(res), "polynomial": res.is_polynomial,
                             **({"detail": res.detail} if res.detail else {})})
    if not res.is_polynomial:
        print(f"error: {res.detail}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def cmd_decide(args) -> int:
    d = parse_dataset(args.dataset)
    verdict = cobordism.decide(d, args.route)
    _emit(args, [str(verdict)], verdict.to_json())
    return EXIT_OK


def cmd_consistency(args) -> int:
    d = parse_dataset(args.dataset)
    cap = 2 * d.rank if args.cap is None else args.cap
    if cap < d.rank:
        raise _Usage(f"--cap must be at least the rank {d.rank}")
    rep = localization.consistency_suite(d, cap)
    _emit(args, rep.lines() + [f"consistent={'yes' if rep.ok else 'no'}"], rep.to_json())
    return EXIT_OK


def cmd_search(args) -> int:
    cfg = SearchConfig(
        rank=args.rank,
        point_count=args.points if args.points is not None else cobordism.min_fixed_points(args.rank),
        weight_bound=args.weight_bound,
        structural_filter=args.structural_filter,
        seed=args.seed,
        mode=args.mode,
        samples=args.samples,
        workers=args.workers,
        hits_path=args.hits,
        progress_path=args.progress,
        resume=args.resume,
    )
    cfg.validate()
    out = hunt_nonbounding_minimal(cfg)
    lines = [f"{k}={v}" for k, v in out.counters().items()]
    for h in out.nonbounding_hits:
        pts = "; ".join(f"{list(map(list, p.weights))} {'+' if p.sign > 0 else '-'}" for p in h.dataset.points)
        lines.append(f"hit #{h.index}: [{pts}] {h.verdict}")
    _emit(args, lines, out.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = verify_lemmas_randomized(args.n, args.trials, args.seed)
    _emit(args, rep.lines(), rep.to_json())
    return EXIT_OK


def cmd_bound(args) -> int:
    b = cobordism.min_fixed_points(args.n)
    _emit(args, [str(b)], {"n": args.n, "min_fixed_points": b})
    return EXIT_OK


class _Usage(Exception):
    pass


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--workers", type=_positive, default=1, help="worker pool size cap")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="eqchern", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chern", parents=[common], help="equivariant Chern number c_omega")
    p.add_argument("dataset")
    p.add_argument("--omega", type=_omega_arg)
    p.add_argument("--c1", type=int, help="power of c_1 (omega = (c1, c2, 0, ...))")
    p.add_argument("--c2", type=int, help="power of c_2")
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("decide", parents=[common], help="does the data bound equivariantly?")
    p.add_argument("dataset")
    p.add_argument("--route", default="multiplicity",
                   choices=["multiplicity", "c1c2", "c1c2_vandermonde", "exhaustive"])
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("consistency", parents=[common], help="necessary realizability checks")
    p.add_argument("dataset")
    p.add_argument("--cap", type=int, help="degree cap (default 2n)")
    p.set_defaults(func=cmd_consistency)

    p = sub.add_parser("search", parents=[common], help="hunt for small non-bounding datasets")
    p.add_argument("--rank", type=_positive, required=True)
    p.add_argument("--points", type=_positive, help="fixed-point count (default ceil(n/2)+1)")
    p.add_argument("--weight-bound", type=_positive, default=1)
    p.add_argument("--structural-filter", action="store_true")
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--samples", type=_positive, default=10_000, help="draws in random mode")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hits", help="append hits to this JSON-lines file")
    p.add_argument("--progress", help="checkpoint file")
    p.add_argument("--resume", action="store_true", help="continue from --progress")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="randomized lemma verification")
    p.add_argument("--n", "--rank", dest="n", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", parents=[common], help="minimal fixed-point count ceil(n/2)+1")
    p.add_argument("--n", "--rank", dest="n", type=_positive, required=True)
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except (SchemaError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NonRealizableData as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except EqchernError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
