"""Command-line interface.

Exit codes: 0 success, 1 verification failure or an UNKNOWN verdict,
2 input error, 3 precondition error.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import groups, invariants
from .core import (HomotopyData, NanophraseError, ParseError, PreconditionError,
                   parse_dotted, parse_homotopy_data, parse_nanophrase, preset)
from .formal import (FormalSum, angle_bracket, as_sum, finite_type_defect, gamma, is_zero,
                     iter_dotted, memoized)
from .moves import bounded_equiv
from .sampling import random_move_pair, random_phrase

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3

INVARIANT_NAMES = ("linking", "t", "u", "l", "lp", "lpp", "v4")


class ValueBundle:
    """Tuple of invariant values added componentwise."""

    __slots__ = ("items",)

    def __init__(self, items):
        self.items = tuple(items)

    def __add__(self, other):
        return ValueBundle(x + y for x, y in zip(self.items, other.items))

    def __rmul__(self, k):
        return ValueBundle(k * x for x in self.items)

    def is_zero(self):
        return all(is_zero(x) for x in self.items)

    def __eq__(self, other):
        return isinstance(other, ValueBundle) and self.items == other.items


def load_data(args) -> HomotopyData:
    if args.data:
        try:
            with open(args.data, encoding="utf-8") as fh:
                return parse_homotopy_data(fh.read())
        except OSError as exc:
            raise ParseError(f"cannot read {args.data}: {exc}") from None
    return preset(args.preset)


def _index_choices(args, r: int, data: HomotopyData, name: str):
    """(label, i, j, a, b) tuples for the l-family and u, honouring filters."""
    syms = [args.a] if args.a else list(data.orientation)
    if name == "lp":
        syms = [a for a in syms if not data.is_fixed(a)]
    elif name == "lpp":
        syms = [a for a in syms if data.is_fixed(a)]
    pairs = [(i, j) for i in range(1, r + 1) for j in range(1, r + 1)]
    if name != "u":
        pairs = [(i, j) for i, j in pairs if i < j]
    if args.i:
        pairs = [(i, j) for i, j in pairs if i == args.i]
    if args.j:
        pairs = [(i, j) for i, j in pairs if j == args.j]
    out = []
    for i, j in pairs:
        for a in syms:
            if name != "u":
                out.append((f"{name}_{{{i},{j},{a}}}", i, j, a, None))
                continue
            for b in ([args.b] if args.b else data.orientation):
                if i == j and a == b:
                    continue
                out.append((f"u_{{{i},{j},{a},{b}}}", i, j, a, b))
    return out


def invariant_function(name: str, data: HomotopyData, r: int, args=None):
    """A callable ``phrase -> value`` plus the labels of its parts."""
    if name == "linking":
        return (lambda p: invariants.linking_matrix(p, data)), None
    if name == "t":
        if not data.s_is_diagonal:
            raise PreconditionError("T is only an invariant when S is diagonal")
        return (lambda p: invariants.t_invariant(p, data)), None
    if name == "v4":
        return (lambda p: invariants.v4(p, data)), None
    if name == "u" and not data.s_is_diagonal:
        raise PreconditionError("u is only an invariant when S is diagonal")
    fn = {"l": invariants.l_ija, "lp": invariants.l_prime_ija,
          "lpp": invariants.l_doubleprime_ija}.get(name)
    choices = _index_choices(args or _NO_FILTER, r, data, name)
    if not choices:
        raise PreconditionError(f"no valid index choices for {name}")
    labels = [c[0] for c in choices]
    if name == "u":
        return (lambda p: ValueBundle(invariants.u_invariant(i, j, a, b, p, data)
                                      for _, i, j, a, b in choices)), labels
    return (lambda p: ValueBundle(fn(i, j, a, p, data) for _, i, j, a, _ in choices)), labels


_NO_FILTER = argparse.Namespace(i=None, j=None, a=None, b=None)


def _report(name: str, value, labels) -> list[str]:
    if isinstance(value, ValueBundle):
        return [f"{lab} = {v}" for lab, v in zip(labels, value.items)]
    if name == "linking":
        return value.lines()
    if name == "t":
        return value.lines()
    return [f"{name} = {value}"]


# ---------------------------------------------------------------------------
# Subcommands


def cmd_invariant(args, data) -> int:
    p = parse_nanophrase(args.phrase, data)
    fn, labels = invariant_function(args.name, data, p.n_components, args)
    for line in _report(args.name, fn(p), labels):
        print(line)
    return EXIT_OK


def cmd_group(args, data) -> int:
    pres = groups.generate_relations(data, args.r, args.n, args.closed, args.jobs)
    st = groups.structure_of(pres)
    print(st)
    if args.nontrivial:
        print(f"H = {groups.structure_of(pres, drop_trivial=True)}")
    if args.dump_presentation:
        for line in pres.tsv_lines():
            print(line)
    return EXIT_OK


def cmd_equiv(args, data) -> int:
    p, q = parse_nanophrase(args.p, data), parse_nanophrase(args.q, data)
    max_rank = args.max_rank if args.max_rank is not None else max(p.rank, q.rank) + 2
    res = bounded_equiv(p, q, data, max_rank, args.max_states, args.closed)
    print(res)
    return EXIT_OK if res.equivalent else EXIT_FAIL


def _sum(text: str, data) -> FormalSum:
    """A phrase, possibly with semi-letters, as a formal sum."""
    return as_sum(parse_dotted(text, data))


def cmd_bracket(args, data) -> int:
    print(angle_bracket(_sum(args.u, data), _sum(args.p, data)))
    return EXIT_OK


def cmd_gamma(args, data) -> int:
    g = gamma(args.n, _sum(args.p, data))
    if args.format == "tsv":
        for f, c in g:
            print(f"{c}\t{f.text}")
    else:
        print(g)
    return EXIT_OK


def cmd_verify(args, data) -> int:
    """Check that ``name`` vanishes on every phrase with ``degree + 1``
    semi-letters up to ``max_rank``."""
    fn, _ = invariant_function(args.name, data, args.r, args)
    fn = memoized(fn)
    forms = [f for f in groups.enumerate_phrases(data, args.r, args.max_rank)
             if f.rank > args.degree]
    checked = 0
    for d in iter_dotted(forms, args.degree + 1):
        checked += 1
        if not is_zero(finite_type_defect(fn, d)):
            print(f"FAIL {d.to_text()}")
            return EXIT_FAIL
    print(f"PASS ({checked} phrases with {args.degree + 1} semi-letters)")
    return EXIT_OK


def cmd_invariance(args, data) -> int:
    """Random single moves must not change the invariant."""
    rng = random.Random(args.seed)
    fn, _ = invariant_function(args.name, data, args.r, args)
    closed = args.closed
    if args.name == "v4" and closed:
        raise PreconditionError("v4 is not a closed homotopy invariant")
    counts: dict[str, int] = {}
    for _ in range(args.trials):
        kind, p, q = random_move_pair(rng, data, args.r, rng.randint(0, args.max_rank),
                                      closed=closed)
        counts[kind] = counts.get(kind, 0) + 1
        if fn(p) != fn(q):
            print(f"VIOLATION {kind}: {p.to_text()} -> {q.to_text()}")
            return EXIT_FAIL
    summary = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    print(f"PASS ({args.trials} moves: {summary})")
    return EXIT_OK


def cmd_random(args, data) -> int:
    rng = random.Random(args.seed)
    for _ in range(args.count):
        print(random_phrase(rng, data, args.r, rng.randint(0, args.max_rank)).to_text())
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="built-in homotopy data: gauss or vknot")
    src.add_argument("--data", help="homotopy data file (alpha/tau/S/nu lines)")
    common.add_argument("--format", choices=("text", "tsv"), default="text")

    parser = argparse.ArgumentParser(prog="nanophrase",
                                     description="Homotopy invariants of nanophrases.")
    sub = parser.add_subparsers(dest="command", required=True)

    def indices(p):
        p.add_argument("-i", type=int, help="first component (1-based)")
        p.add_argument("-j", type=int, help="second component (1-based)")
        p.add_argument("-a", help="first orientation symbol")
        p.add_argument("-b", help="second orientation symbol")

    p = sub.add_parser("invariant", parents=[common], help="evaluate an invariant")
    p.add_argument("--name", choices=INVARIANT_NAMES, required=True)
    indices(p)
    p.add_argument("phrase")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("group", parents=[common], help="structure of G_n")
    p.add_argument("-r", type=int, default=1, help="number of components")
    p.add_argument("-n", type=int, required=True, help="degree")
    p.add_argument("--closed", action="store_true", help="add shift relations")
    p.add_argument("--nontrivial", action="store_true", help="also print H_n")
    p.add_argument("--dump-presentation", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("equiv", parents=[common], help="bounded search for a move sequence")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--max-rank", type=int)
    p.add_argument("--max-states", type=int, default=100_000)
    p.add_argument("--closed", action="store_true")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("bracket", parents=[common], help="angle bracket <u, p>")
    p.add_argument("u")
    p.add_argument("p")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("gamma", parents=[common], help="rank-truncated subphrase sum")
    p.add_argument("n", type=int)
    p.add_argument("p")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("verify", parents=[common], help="exhaustive finite-type check")
    p.add_argument("--name", choices=INVARIANT_NAMES, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--max-rank", type=int, required=True)
    p.add_argument("-r", type=int, default=1)
    indices(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariance", parents=[common], help="random move invariance check")
    p.add_argument("--name", choices=INVARIANT_NAMES, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("-r", type=int, default=1)
    p.add_argument("--closed", action="store_true")
    indices(p)
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("random", parents=[common], help="print random phrases")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("-r", type=int, default=1)
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        data = load_data(args)
        return args.func(args, data)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NanophraseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
