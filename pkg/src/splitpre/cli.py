"""Command-line front end and the split-preorder text format.

File format: a header line `split <m> <n>`, then one line per pair with two
node tokens like `s0 t3` (source/target tag plus zone index).  The loader
takes the reflexive-transitive closure of the listed pairs, so files may
list generators only; the emitter always writes the full strict part, pairs
sorted with source tags before target tags.

Exit codes: 0 success, 1 parse error or failed law check, 2 size or
endpoint mismatch, 3 cap or enumeration bound exceeded.  `proofeq` uses 0
for equivalent, 1 for distinct, 2 for any error.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys

from .arrows import (
    SplitPreorder,
    TaggedNode,
    compose,
    enumerate_split_preorders,
    from_relation,
    identity,
    random_split_preorder,
)
from .cones import (
    Chain,
    monotone_set,
    recovery_criterion,
    reflexivity_criterion,
    transitivity_criterion,
)
from .errors import (
    BoundExceededError,
    EndpointMismatchError,
    ParseError,
    SizeMismatchError,
    SplitPreError,
)
from .logic import Fragment, diagram_of, parse_derivation, proof_equiv
from .relations import (
    FiniteRelation,
    RelArrow,
    compose_plain,
    is_preorder,
    is_reflexive,
    is_transitive,
)
from .representation import repr_arrow, verify_faithfulness, verify_functoriality

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_MISMATCH = 2
EXIT_BOUND = 3


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def emit_split(r: SplitPreorder) -> str:
    """Canonical text: header plus the full strict part, sorted."""
    lines = [f"split {r.src} {r.tgt}"]
    for u, v in sorted(r.strict_pairs):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_split(text: str, source_name: str = "<input>") -> SplitPreorder:
    """Load a split preorder, closing the listed pairs reflexively-transitively."""
    lines = text.splitlines()
    header_at = None
    for lineno, raw in enumerate(lines, start=1):
        if raw.strip():
            header_at = lineno
            break
    if header_at is None:
        raise ParseError("empty input, expected a 'split <m> <n>' header",
                         line=1, source=source_name)
    header = lines[header_at - 1].split()
    if len(header) != 3 or header[0] != "split":
        raise ParseError("expected header 'split <m> <n>'",
                         line=header_at, source=source_name)
    try:
        src, tgt = int(header[1]), int(header[2])
    except ValueError:
        raise ParseError("header sizes must be integers",
                         line=header_at, source=source_name) from None
    if src < 0 or tgt < 0:
        raise ParseError("header sizes must be nonnegative",
                         line=header_at, source=source_name)
    pairs = []
    for lineno in range(header_at + 1, len(lines) + 1):
        raw = lines[lineno - 1]
        if not raw.strip():
            continue
        tokens = raw.split()
        if len(tokens) != 2:
            raise ParseError(f"expected two node tokens, got {raw.strip()!r}",
                             line=lineno, source=source_name)
        try:
            u, v = TaggedNode.parse(tokens[0]), TaggedNode.parse(tokens[1])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno, source=source_name) from None
        for node in (u, v):
            bound = src if node.tag == 0 else tgt
            if node.index >= bound:
                raise ParseError(f"node {node} out of range for arrow {src} -> {tgt}",
                                 line=lineno, source=source_name)
        pairs.append((u, v))
    return SplitPreorder.close(src, tgt, pairs)


def load_split(path: str) -> SplitPreorder:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", source=path) from None
    return parse_split(text, source_name=path)


def to_dot(r: SplitPreorder) -> str:
    """DOT digraph: sources ranked top, targets bottom, one edge per strict pair."""
    lines = ["digraph {"]
    if r.src + r.tgt:
        lines.append("    rankdir=TB;")
    if r.src:
        names = " ".join(f"s{i};" for i in range(r.src))
        lines.append(f"    {{ rank=min; {names} }}")
    if r.tgt:
        names = " ".join(f"t{j};" for j in range(r.tgt))
        lines.append(f"    {{ rank=max; {names} }}")
    for u, v in sorted(r.strict_pairs):
        lines.append(f"    {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Law sweeps for `check`
# ---------------------------------------------------------------------------

def _hom_lists(max_size: int) -> dict[tuple[int, int], list[SplitPreorder]]:
    sizes = range(max_size + 1)
    return {(m, n): list(enumerate_split_preorders(m, n))
            for m in sizes for n in sizes}


def check_identity(max_size: int, out) -> bool:
    checked = 0
    for (m, n), arrows in _hom_lists(max_size).items():
        for r in arrows:
            checked += 1
            if compose(identity(n), r) != r or compose(r, identity(m)) != r:
                out.write("identity: FAIL at arrow\n")
                out.write(emit_split(r))
                return False
    out.write(f"identity: pass ({checked} arrows checked)\n")
    return True


def check_assoc(max_size: int, seed: int, out, random_triples: int = 1000) -> bool:
    checked = 0
    homs = _hom_lists(1)
    for m, n in itertools.product(range(2), repeat=2):
        for r in homs[(m, n)]:
            for k in range(2):
                for p in homs[(n, k)]:
                    for l in range(2):
                        for t in homs[(k, l)]:
                            checked += 1
                            if compose(t, compose(p, r)) != compose(compose(t, p), r):
                                out.write("assoc: FAIL at triple\n")
                                for arrow in (r, p, t):
                                    out.write(emit_split(arrow))
                                return False
    rng = random.Random(seed)
    for _ in range(random_triples):
        m, n, k, l = (rng.randint(0, max_size) for _ in range(4))
        r = random_split_preorder(m, n, rng)
        p = random_split_preorder(n, k, rng)
        t = random_split_preorder(k, l, rng)
        checked += 1
        if compose(t, compose(p, r)) != compose(compose(t, p), r):
            out.write(f"assoc: FAIL at random triple (seed {seed})\n")
            for arrow in (r, p, t):
                out.write(emit_split(arrow))
            return False
    out.write(f"assoc: pass ({checked} triples checked)\n")
    return True


def check_functor(max_size: int, p_size: int, out) -> bool:
    chain = Chain(p_size)
    homs = _hom_lists(max_size)
    checked = 0
    for m, n, k in itertools.product(range(max_size + 1), repeat=3):
        for r in homs[(m, n)]:
            for p in homs[(n, k)]:
                checked += 1
                report = verify_functoriality(chain, p, r)
                if not report:
                    out.write(f"functor: FAIL ({report.counterexample})\n")
                    out.write(emit_split(r))
                    out.write(emit_split(p))
                    return False
    out.write(f"functor: pass ({checked} composable pairs checked)\n")
    return True


def check_faithful(m: int, n: int, p_size: int, out) -> bool:
    report = verify_faithfulness(m, n, Chain(p_size))
    if not report:
        out.write(f"faithful: FAIL ({report.counterexample})\n")
        return False
    out.write(f"faithful: pass ({report.checked} distinct images at ({m}, {n}))\n")
    return True


def check_props(max_size: int, p_size: int, out) -> bool:
    chain = Chain(p_size)
    checked = 0
    for size in range(min(max_size, 3) + 1):
        preorders = []
        for mask in range(1 << (size * size)):
            pairs = [(i, j) for i in range(size) for j in range(size)
                     if (mask >> (i * size + j)) & 1]
            rel = FiniteRelation(size, pairs)
            checked += 1
            if reflexivity_criterion(rel, chain) != is_reflexive(rel):
                out.write(f"props: FAIL reflexivity criterion on {rel!r}\n")
                return False
            if transitivity_criterion(rel, chain) != is_transitive(rel):
                out.write(f"props: FAIL transitivity criterion on {rel!r}\n")
                return False
            if recovery_criterion(rel, chain) != is_preorder(rel):
                out.write(f"props: FAIL recovery criterion on {rel!r}\n")
                return False
            if is_preorder(rel):
                preorders.append(rel)
        sets = [monotone_set(r, chain) for r in preorders]
        for i, r in enumerate(preorders):
            for j, q in enumerate(preorders):
                if (r == q) != (sets[i] == sets[j]):
                    out.write(f"props: FAIL monotone-set separation on {r!r}, {q!r}\n")
                    return False
    out.write(f"props: pass ({checked} relations checked)\n")
    return True


def check_embedding(max_size: int, out) -> bool:
    checked = 0
    for n in range(max_size + 1):
        if from_relation(RelArrow.identity(n)) != identity(n):
            out.write(f"embedding: FAIL identity at size {n}\n")
            return False
    sizes = range(max_size + 1)
    for m, n, k in itertools.product(sizes, repeat=3):
        for mask1 in range(1 << (m * n)):
            r1 = RelArrow(m, n, [(i, j) for i in range(m) for j in range(n)
                                 if (mask1 >> (i * n + j)) & 1])
            lifted1 = from_relation(r1)
            for mask2 in range(1 << (n * k)):
                r2 = RelArrow(n, k, [(i, j) for i in range(n) for j in range(k)
                                     if (mask2 >> (i * k + j)) & 1])
                checked += 1
                left = compose(from_relation(r2), lifted1)
                if left != from_relation(compose_plain(r1, r2)):
                    out.write("embedding: FAIL at pair\n")
                    out.write(emit_split(lifted1))
                    out.write(emit_split(from_relation(r2)))
                    return False
    out.write(f"embedding: pass ({checked} composable pairs checked)\n")
    return True


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_compose(args) -> int:
    try:
        p = load_split(args.file_p)
        r = load_split(args.file_r)
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return EXIT_PARSE
    try:
        result = compose(p, r)
    except SizeMismatchError as exc:
        print(f"{args.file_p}, {args.file_r}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    sys.stdout.write(emit_split(result))
    return EXIT_OK


def cmd_repr(args) -> int:
    try:
        r = load_split(args.file_r)
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return EXIT_PARSE
    try:
        image = repr_arrow(Chain(args.p), r)
    except BoundExceededError as exc:
        print(exc, file=sys.stderr)
        return EXIT_BOUND
    sys.stdout.write(f"rel {image.dom} {image.cod}\n")
    for c1, c2 in image.sorted_pairs():
        sys.stdout.write(f"{c1} {c2}\n")
    return EXIT_OK


_LAWS = ("identity", "assoc", "functor", "faithful", "props", "embedding")


def cmd_check(args) -> int:
    laws = list(dict.fromkeys(args.laws))
    if "all" in laws:
        laws = list(_LAWS)
    out = sys.stdout
    try:
        ok = True
        for law in laws:
            if law == "identity":
                ok &= check_identity(args.max, out)
            elif law == "assoc":
                ok &= check_assoc(args.max, args.seed, out)
            elif law == "functor":
                ok &= check_functor(args.max, args.p, out)
            elif law == "faithful":
                ok &= check_faithful(args.m, args.n, args.p, out)
            elif law == "props":
                ok &= check_props(args.max, args.p, out)
            elif law == "embedding":
                ok &= check_embedding(args.max, out)
    except BoundExceededError as exc:
        print(exc, file=sys.stderr)
        return EXIT_BOUND
    return EXIT_OK if ok else EXIT_PARSE


def cmd_proofeq(args) -> int:
    try:
        fragment = Fragment(args.fragment)
        first = parse_derivation(args.term1, fragment)
        second = parse_derivation(args.term2, fragment)
        verdict = proof_equiv(first, second)
    except (SplitPreError, ValueError, TypeError) as exc:
        print(exc, file=sys.stderr)
        return 2
    print("equivalent" if verdict else "distinct")
    sys.stdout.write("left:\n")
    sys.stdout.write(emit_split(diagram_of(first)))
    sys.stdout.write("right:\n")
    sys.stdout.write(emit_split(diagram_of(second)))
    return 0 if verdict else 1


def cmd_dot(args) -> int:
    try:
        if args.term is not None:
            fragment = Fragment(args.fragment)
            arrow = diagram_of(parse_derivation(args.term, fragment))
        else:
            arrow = load_split(args.file)
    except (SplitPreError, ValueError, TypeError) as exc:
        print(exc, file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(to_dot(arrow))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitpre",
        description="Split preorders: compose arrows, represent them as relations "
                    "between function-space codes, verify the category laws, and "
                    "decide proof equivalence for conjunctive/disjunctive logic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compose = sub.add_parser("compose", help="compose two split-preorder files (first after second)")
    p_compose.add_argument("file_p", help="outer arrow n -> k")
    p_compose.add_argument("file_r", help="inner arrow m -> n")
    p_compose.set_defaults(func=cmd_compose)

    p_repr = sub.add_parser("repr", help="print the code relation of an arrow over a chain")
    p_repr.add_argument("--p", type=int, default=2, help="chain size (default 2)")
    p_repr.add_argument("file_r")
    p_repr.set_defaults(func=cmd_repr)

    p_check = sub.add_parser("check", help="run law sweeps")
    p_check.add_argument("--laws", nargs="+", choices=_LAWS + ("all",), required=True)
    p_check.add_argument("--max", type=int, default=2, help="size bound for sweeps")
    p_check.add_argument("--p", type=int, default=2, help="chain size")
    p_check.add_argument("--m", type=int, default=2, help="source ordinal for faithfulness")
    p_check.add_argument("--n", type=int, default=2, help="target ordinal for faithfulness")
    p_check.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    p_check.set_defaults(func=cmd_check)

    p_proofeq = sub.add_parser("proofeq", help="decide equivalence of two derivation terms")
    p_proofeq.add_argument("--fragment", default=Fragment.CONJ_DISJ_UNITS.value,
                           choices=[f.value for f in Fragment])
    p_proofeq.add_argument("term1")
    p_proofeq.add_argument("term2")
    p_proofeq.set_defaults(func=cmd_proofeq)

    p_dot = sub.add_parser("dot", help="emit a DOT digraph for a file or a derivation term")
    p_dot.add_argument("file", nargs="?", help="split-preorder file")
    p_dot.add_argument("--term", help="derivation term instead of a file")
    p_dot.add_argument("--fragment", default=Fragment.CONJ_DISJ_UNITS.value,
                       choices=[f.value for f in Fragment])
    p_dot.set_defaults(func=cmd_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "dot" and (args.file is None) == (args.term is None):
        parser.error("dot needs exactly one of a file argument or --term")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
