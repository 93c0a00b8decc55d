"""
permcover command line.

    python cli.py gamma 6 --mode inversion
    python cli.py count 5 --what pstar
    python cli.py generate 8 --mode pair --seed 7 > p8.txt
    python cli.py verify p8.txt --minimal
    python cli.py oracle 4 --mode pair
    python cli.py graph p8.txt --strategy lex_min --format dot
    python cli.py phi p8.txt
    python cli.py phi-inverse --x 1,3 --q q5.txt

Results go to stdout and are byte-identical for identical arguments; status
lines go to stderr. Exit codes: 0 success, 1 failed check or precondition,
2 malformed input or usage.
"""
import argparse
import json
import sys
from typing import FrozenSet, List, Optional

import construction
import counting
import documents
import graph_export
import oracle
from completeness import (Mode, SelectionStrategy, build_selection_graph,
                          is_minimal_complete, redundant_members, uncovered)
from console import status
from documents import PermSetDocument
from errors import DocumentError, PermCoverError, PreconditionError
from perm_core import Permutation


class _State:
    quiet = False


def _status(kind: str, message: str) -> None:
    if not _State.quiet:
        status(kind, message)


def _write(text: str) -> None:
    sys.stdout.write(text)


def _emit(doc: PermSetDocument, fmt: str) -> None:
    _write(documents.dump(doc, fmt))


def _subset(text: str) -> FrozenSet[int]:
    try:
        values = [int(t) for t in text.split(',') if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")
    if len(set(values)) != len(values):
        raise argparse.ArgumentTypeError(f"repeated value in {text!r}")
    return frozenset(values)


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {value}")
    return value


def _format_subset(x) -> str:
    return ','.join(str(v) for v in sorted(x))


def _format_image(p: Permutation) -> str:
    return ','.join(str(v) for v in p.image)


# =============================================================================
# SUBCOMMANDS
# =============================================================================

def cmd_gamma(args) -> int:
    bound = counting.gamma_I(args.n) if Mode(args.mode) is Mode.INVERSION else counting.gamma_P(args.n)
    _write(f"{bound}\n")
    return 0


def cmd_count(args) -> int:
    if args.what == 'table':
        for row in counting.count_table(args.n):
            _write(' '.join(str(v) for v in row) + '\n')
        return 0
    if args.what in ('family', 'transversals') and args.c is None:
        raise PreconditionError(f"--what {args.what} needs --c", 'c_given')
    if args.what == 'qstar':
        value = counting.count_Q_star(args.n)
    elif args.what == 'pstar':
        value = counting.count_P_star(args.n)
    elif args.what == 'family':
        value = counting.family_size(args.n, args.c)
    else:
        value = counting.transversal_count(args.n, args.c)
    _write(f"{value}\n")
    return 0


def cmd_generate(args) -> int:
    mode = Mode(args.mode)
    n = args.n
    variant = args.orbit or args.relabel is not None or args.x is not None
    if variant and mode is not Mode.PAIR:
        raise PreconditionError("--orbit, --relabel and --x need --mode pair", 'mode_is_pair')

    metadata = {'seed': args.seed}
    if args.orbit:
        rng = construction.make_rng(args.seed)
        p = Permutation(tuple(int(v) + 1 for v in rng.permutation(n)))
        s = construction.orbit(p)
        metadata['generator'] = 'orbit'
    elif args.relabel is not None:
        if n < 4:
            raise PreconditionError(f"relabeled maximum sets need n >= 4, got n = {n}", 'n_at_least_4')
        tau = Permutation.parse(args.relabel)
        q = construction.sample_Q_star(n, args.seed)
        s = construction.relabel_set(tau, q).with_mode(Mode.PAIR)
        metadata['generator'] = 'relabel'
        metadata['tau'] = _format_image(tau)
    elif args.x is not None:
        q = construction.sample_Q_star(n, args.seed)
        s = construction.phi_inverse(args.x, q)
        metadata['generator'] = 'phi_inverse'
        metadata['x'] = _format_subset(args.x)
    elif mode is Mode.INVERSION:
        s = construction.sample_Q_star(n, args.seed)
        metadata['generator'] = 'sample_Q_star'
        c = construction.transversal_family(s, construction.balanced_cs(n)) if n >= 4 else None
        if c is not None:
            metadata['c'] = c
    else:
        s = construction.sample_P_star(n, args.seed)
        metadata['generator'] = 'sample_P_star'

    _status('ok', f"generated a set of {len(s)} permutations of [{n}] ({metadata['generator']})")
    _emit(PermSetDocument.from_permset(s, **metadata), args.format)
    return 0


def cmd_enumerate(args) -> int:
    mode = Mode(args.mode)
    if mode is Mode.INVERSION:
        stream, generator = construction.enumerate_Q_star(args.n, args.limit), 'enumerate_Q_star'
    else:
        stream, generator = construction.enumerate_P_star(args.n, args.limit), 'enumerate_P_star'
    emitted = 0
    for index, s in enumerate(stream):
        doc = PermSetDocument.from_permset(s, generator=generator, index=index)
        if args.format == 'json':
            _write(documents.dump_json(doc) + '\n')
        else:
            if index:
                _write('\n')
            _write(documents.dump_text(doc))
        emitted += 1
    _status('ok', f"{emitted} sets written")
    return 0


def cmd_verify(args) -> int:
    doc = documents.load(args.file)
    s = doc.to_permset()
    missing = uncovered(s)
    if missing:
        _write(f"not {s.mode}-complete: {len(missing)} uncovered\n")
        for pair in missing:
            _write(f"uncovered {pair}\n")
        _status('error', "failed predicate: is_complete")
        return 1
    if args.minimal:
        redundant = redundant_members(s)
        if redundant or not is_minimal_complete(s):
            _write(f"not minimally {s.mode}-complete: {len(redundant)} redundant\n")
            for member in redundant:
                _write(f"redundant {member}\n")
            _status('error', "failed predicate: is_minimal_complete")
            return 1
        _write(f"minimally {s.mode}-complete: {len(s)} permutations\n")
        return 0
    _write(f"{s.mode}-complete: {len(s)} permutations\n")
    return 0


def cmd_oracle(args) -> int:
    report = oracle.oracle_enumerate(args.n, args.mode, restricted=args.restricted,
                                     samples=args.samples, seed=args.seed, workers=args.workers,
                                     verbose=not _State.quiet)
    _write(json.dumps(report.to_dict(include_timing=args.timing), indent=2) + '\n')
    return 0


def cmd_graph(args) -> int:
    s = documents.load(args.file).to_permset()
    graphs = build_selection_graph(s, args.strategy)
    if not isinstance(graphs, list):
        graphs = [graphs]
    _status('ok', f"{len(graphs)} selection graph(s)")
    _write(graph_export.to_dot(graphs))
    return 0


def cmd_phi(args) -> int:
    s = documents.load(args.file).to_permset()
    x, q = construction.phi(s)
    _emit(PermSetDocument.from_permset(q, x=_format_subset(x)), args.format)
    return 0


def cmd_phi_inverse(args) -> int:
    q = documents.load(args.q).to_permset()
    p = construction.phi_inverse(args.x, q)
    _emit(PermSetDocument.from_permset(p, x=_format_subset(args.x)), args.format)
    return 0


# =============================================================================
# PARSER
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--quiet', '-q', action='store_true', help='suppress status lines on stderr')

    parser = argparse.ArgumentParser(prog='permcover',
                                     description='Minimal inversion- and pair-complete permutation sets')
    sub = parser.add_subparsers(dest='command', required=True)
    modes = [m.value for m in Mode]

    p = sub.add_parser('gamma', parents=[common], help='maximum size of a minimal complete set')
    p.add_argument('n', type=int)
    p.add_argument('--mode', choices=modes, default='inversion')
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser('count', parents=[common], help='exact counts')
    p.add_argument('n', type=int)
    p.add_argument('--what', choices=['qstar', 'pstar', 'family', 'transversals', 'table'],
                   default='qstar')
    p.add_argument('--c', type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser('generate', parents=[common], help='one maximum set, seeded')
    p.add_argument('n', type=int)
    p.add_argument('--mode', choices=modes, default='inversion')
    p.add_argument('--seed', type=_seed, required=True)
    variant = p.add_mutually_exclusive_group()
    variant.add_argument('--orbit', action='store_true', help='circular-shift orbit of a random permutation')
    variant.add_argument('--relabel', metavar='TAU', help='TAU composed with a random maximum inversion set')
    variant.add_argument('--x', type=_subset, help='phi_inverse of X and a random maximum inversion set')
    p.add_argument('--format', choices=['text', 'json'], default='text')
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser('enumerate', parents=[common], help='stream every maximum set')
    p.add_argument('n', type=int)
    p.add_argument('--mode', choices=modes, default='inversion')
    p.add_argument('--limit', type=int)
    p.add_argument('--format', choices=['text', 'json'], default='text')
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser('verify', parents=[common], help='check completeness of a document')
    p.add_argument('file')
    p.add_argument('--minimal', action='store_true')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('oracle', parents=[common], help='brute-force report as JSON')
    p.add_argument('n', type=int)
    p.add_argument('--mode', choices=modes, default='inversion')
    p.add_argument('--restricted', action='store_true')
    p.add_argument('--samples', type=int)
    p.add_argument('--seed', type=_seed)
    p.add_argument('--workers', type=int)
    p.add_argument('--timing', action='store_true')
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser('graph', parents=[common], help='critical selection graph(s) as DOT')
    p.add_argument('file')
    p.add_argument('--strategy', choices=[s.value for s in SelectionStrategy], default='lex_min')
    p.add_argument('--format', choices=['dot'], default='dot')
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser('phi', parents=[common], help='maximum pair set to (X, Q)')
    p.add_argument('file')
    p.add_argument('--format', choices=['text', 'json'], default='text')
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser('phi-inverse', parents=[common], help='(X, Q) to maximum pair set')
    p.add_argument('--x', type=_subset, required=True)
    p.add_argument('--q', required=True)
    p.add_argument('--format', choices=['text', 'json'], default='text')
    p.set_defaults(func=cmd_phi_inverse)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    _State.quiet = args.quiet

    try:
        return args.func(args)
    except DocumentError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except PermCoverError as e:
        print(f"error [{e.predicate}]: {e}", file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
