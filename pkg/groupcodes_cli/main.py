"""
Command-line front end.

Decision subcommands print `yes` or `no` (plus witness lines) and exit 0 for
yes, 1 for no. Exit 2 marks usage and parse errors, exit 3 a closure that hit
the element limit, exit 4 an internal failure to produce a radical witness.
"""
import argparse
import logging
import os
import sys
from contextlib import contextmanager, redirect_stderr, redirect_stdout
from pathlib import Path
from typing import Callable, List, Optional, Sequence

# Add the parent directory to sys.path to allow importing sibling packages
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import group_settings
from console import print_error
from automaton.fileformat import format_automaton, load_automaton, load_inverse_automaton
from automaton.graph import fold, to_dot
from automaton.product import intersect_empty
from automaton.subgroup import rank, stallings, subgroup_member
from decision.radical import WitnessNotFoundError, is_radical_closed, radical_member
from encoding.codes import (
    TARGET,
    decode_word,
    encode_automaton,
    encode_word,
    is_group_code,
    make_aperiodic_encoding,
    parse_encoding_file,
)
from freegroup.words import Alphabet, Word, reduce
from monoid.fileformat import format_injections, parse_injections
from monoid.kozen import kozen_reduce
from monoid.transition import MonoidLimitExceeded, find_periodic_element, inverse_monoid_witness

logger = logging.getLogger(__name__)

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3
EXIT_INTERNAL = 4

IDENTITY_TEXT = "1"


def show(w: Word) -> str:
    return str(w) or IDENTITY_TEXT


def parse_inline(text: str, alphabet: Alphabet) -> Word:
    if text.strip() == IDENTITY_TEXT and IDENTITY_TEXT not in alphabet.letters:
        return Word.empty(alphabet)
    return Word.parse(text, alphabet)


def inline_alphabet(args, texts: Sequence[str]) -> Alphabet:
    if args.alphabet:
        return Alphabet(tuple(args.alphabet.split()))
    named = [t for t in texts if t.strip() != IDENTITY_TEXT]
    if not any(t.split() for t in named):
        return TARGET
    inferred = Alphabet.from_words(named)
    # words over a and b keep the canonical target order
    if set(inferred.letters) <= set(TARGET.letters):
        return TARGET
    return inferred


def word_inputs(args, stdin) -> List[str]:
    if args.stdin:
        return [line.strip() for line in stdin if line.strip()]
    if args.word is None:
        raise ValueError("a word argument is required (or use --stdin)")
    return [args.word]


def yes_no(answer: bool, extra: Sequence[str] = ()) -> dict:
    return {"status": "success", "answer": answer, "lines": ["yes" if answer else "no", *extra]}


def emit_automaton(args, m) -> dict:
    text = to_dot(m) if args.dot else format_automaton(m)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        return {"status": "success", "answer": None, "lines": []}
    return {"status": "success", "answer": None, "lines": text.splitlines()}


def encoding_from(args):
    if args.encode_file:
        path = Path(args.encode_file)
        return parse_encoding_file(path.read_text(encoding="utf-8"), origin=str(path))
    return make_aperiodic_encoding(args.encode)


def batch(results: Sequence[dict]) -> dict:
    answers = [r["answer"] for r in results if r["answer"] is not None]
    return {
        "status": "success",
        "answer": all(answers) if answers else None,
        "lines": [line for r in results for line in r["lines"]],
    }


# --- subcommand handlers -------------------------------------------------

def cmd_reduce(args, stdin) -> dict:
    texts = word_inputs(args, stdin)
    alphabet = inline_alphabet(args, texts)
    return {"status": "success", "answer": None,
            "lines": [show(reduce(parse_inline(t, alphabet))) for t in texts]}


def cmd_stallings(args, stdin) -> dict:
    alphabet = inline_alphabet(args, args.words)
    return emit_automaton(args, stallings([parse_inline(t, alphabet) for t in args.words], alphabet))


def cmd_fold(args, stdin) -> dict:
    folded, trace = fold(load_automaton(args.file))
    logger.info("fold performed %d merges", len(trace.merges))
    return emit_automaton(args, folded)


def cmd_member(args, stdin) -> dict:
    m = load_inverse_automaton(args.file)
    return batch([yes_no(subgroup_member(m, parse_inline(t, m.alphabet)))
                  for t in word_inputs(args, stdin)])


def cmd_rank(args, stdin) -> dict:
    return {"status": "success", "answer": None,
            "lines": [str(rank(load_inverse_automaton(args.file)))]}


def cmd_aperiodic(args, stdin) -> dict:
    periodic = find_periodic_element(load_inverse_automaton(args.file), args.limit)
    if periodic is None:
        return yes_no(True)
    return yes_no(False, [f"witness: {show(periodic.word)}"])


def cmd_radical_closed(args, stdin) -> dict:
    alphabet = inline_alphabet(args, args.words)
    verdict = is_radical_closed([parse_inline(t, alphabet) for t in args.words], alphabet,
                                args.witness_length, args.limit)
    if verdict.closed:
        return yes_no(True)
    return yes_no(False, [f"witness: {verdict.witness}"])


def cmd_radical_member(args, stdin) -> dict:
    m = load_inverse_automaton(args.file)
    return batch([yes_no(radical_member(m, parse_inline(t, m.alphabet)))
                  for t in word_inputs(args, stdin)])


def cmd_encode(args, stdin) -> dict:
    e = encoding_from(args)
    return {"status": "success", "answer": None,
            "lines": [show(encode_word(e, parse_inline(t, e.source))) for t in word_inputs(args, stdin)]}


def cmd_decode(args, stdin) -> dict:
    e = encoding_from(args)
    results = []
    for text in word_inputs(args, stdin):
        decoded = decode_word(e, parse_inline(text, TARGET))
        if decoded is None:
            results.append(yes_no(False))
        else:
            results.append({"status": "success", "answer": True, "lines": [show(decoded)]})
    return batch(results)


def cmd_encode_automaton(args, stdin) -> dict:
    e = encoding_from(args)
    return emit_automaton(args, encode_automaton(e, load_inverse_automaton(args.file)))


def cmd_intersect(args, stdin) -> dict:
    result = intersect_empty([load_inverse_automaton(path) for path in args.files])
    if result.empty:
        return yes_no(True)
    return yes_no(False, [f"witness: {show(result.witness)}"])


def cmd_monoid_member(args, stdin) -> dict:
    path = Path(args.file)
    _, maps = parse_injections(path.read_text(encoding="utf-8"), origin=str(path))
    if not maps:
        raise ValueError(f"{path}: no maps")
    names = [name for name, _ in maps]
    target_index = names.index("f_0") if "f_0" in names else 0
    target = maps[target_index][1]
    generators = [item for i, item in enumerate(maps) if i != target_index]
    expression = inverse_monoid_witness(target, [f for _, f in generators],
                                        [name for name, _ in generators], args.limit)
    if expression is None:
        return yes_no(False)
    return yes_no(True, [f"witness: {' '.join(expression) or IDENTITY_TEXT}"])


def cmd_kozen(args, stdin) -> dict:
    instance = kozen_reduce([load_inverse_automaton(path) for path in args.files])
    text = format_injections(instance.size, instance.named_maps())
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        return {"status": "success", "answer": None, "lines": []}
    return {"status": "success", "answer": None, "lines": text.splitlines()}


def cmd_is_code(args, stdin) -> dict:
    alphabet = inline_alphabet(args, args.words)
    return yes_no(is_group_code([parse_inline(t, alphabet) for t in args.words]))


# --- argument parsing ----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupcodes",
        description="Free-group words, Stallings automata, group codes and inverse monoids",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    parser.add_argument("--limit", type=int, default=None,
                        help=f"monoid closure limit (default ${group_settings.MONOID_LIMIT_VAR} "
                             f"or {group_settings.DEFAULT_MONOID_LIMIT})")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def command(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    def word_options(p, stdin=False, alphabet=True):
        if alphabet:
            p.add_argument("--alphabet", help='explicit alphabet, e.g. "a b"')
        if stdin:
            p.add_argument("word", nargs="?", help='word such as "a b^-1"')
            p.add_argument("--stdin", action="store_true", help="read one word per line")

    def automaton_output(p):
        p.add_argument("-o", "--output", help="write the automaton to a file")
        p.add_argument("--dot", action="store_true", help="emit a Graphviz description")

    def encoding_options(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--encode", type=int, metavar="N", help="use x_i -> a^(i-1) b a^-(i-1)")
        group.add_argument("--encode-file", metavar="PATH", help="file of 'image x_i <word>' lines")

    word_options(command("reduce", cmd_reduce, "freely reduce a word"), stdin=True)

    p = command("stallings", cmd_stallings, "subgroup automaton of the given generators")
    p.add_argument("words", nargs="*")
    word_options(p)
    automaton_output(p)

    p = command("fold", cmd_fold, "fold an automaton file")
    p.add_argument("file")
    automaton_output(p)

    p = command("member", cmd_member, "subgroup membership of a word")
    p.add_argument("file")
    word_options(p, stdin=True, alphabet=False)

    command("rank", cmd_rank, "rank of a core subgroup automaton").add_argument("file")
    command("aperiodic", cmd_aperiodic, "aperiodicity of an inverse automaton").add_argument("file")

    p = command("radical-closed", cmd_radical_closed, "radical closure of <words>")
    p.add_argument("words", nargs="*")
    p.add_argument("--witness-length", type=int, default=None,
                   help=f"witness search bound (default ${group_settings.WITNESS_LENGTH_VAR} "
                        f"or {group_settings.DEFAULT_WITNESS_LENGTH})")
    word_options(p)

    p = command("radical-member", cmd_radical_member, "membership in the radical of H")
    p.add_argument("file")
    word_options(p, stdin=True, alphabet=False)

    for name, handler, help_text in (("encode", cmd_encode, "encode a source word"),
                                     ("decode", cmd_decode, "decode a word over {a, b}")):
        p = command(name, handler, help_text)
        encoding_options(p)
        word_options(p, stdin=True, alphabet=False)

    p = command("encode-automaton", cmd_encode_automaton, "encode an inverse automaton")
    encoding_options(p)
    p.add_argument("file")
    automaton_output(p)

    command("intersect", cmd_intersect, "is the intersection of the languages empty?") \
        .add_argument("files", nargs="+")
    command("monoid-member", cmd_monoid_member, "membership of f_0 in an inverse monoid") \
        .add_argument("file")

    p = command("kozen", cmd_kozen, "inverse-monoid instance from two-letter automata")
    p.add_argument("files", nargs="+")
    p.add_argument("-o", "--output", help="write the maps to a file")

    p = command("is-code", cmd_is_code, "do <words> form a group code?")
    p.add_argument("words", nargs="*")
    word_options(p)
    return parser


@contextmanager
def call_logging(verbose: bool, stream):
    """Routes log records to `stream` for one invocation, then detaches."""
    level = logging.DEBUG if verbose else group_settings.log_level()
    root = logging.getLogger()
    handler = logging.StreamHandler(stream)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    previous = root.level
    root.addHandler(handler)
    root.setLevel(level)
    try:
        yield
    finally:
        root.removeHandler(handler)
        root.setLevel(previous)


def dispatch(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    """
    Runs one CLI invocation.

    Returns:
        int: the exit code (0 yes/success, 1 no, 2 usage, parse or settings
        error, 3 resource limit, 4 internal error)
    """
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        # argparse prints usage and --help to the process streams
        with redirect_stdout(stdout), redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_YES if e.code in (0, None) else EXIT_USAGE

    try:
        with call_logging(args.verbose, stderr):
            logger.debug("dispatching %s", args.command)
            result = args.handler(args, stdin)
    except MonoidLimitExceeded as e:
        result = {"status": "error", "error_message": str(e), "exit_code": EXIT_LIMIT}
    except WitnessNotFoundError as e:
        result = {"status": "error", "error_message": f"internal error: {e}", "exit_code": EXIT_INTERNAL}
    except (ValueError, OSError) as e:
        result = {"status": "error", "error_message": str(e), "exit_code": EXIT_USAGE}

    if result["status"] == "error":
        print_error(result["error_message"], stream=stderr)
        return result["exit_code"]
    for line in result["lines"]:
        print(line, file=stdout)
    return EXIT_NO if result["answer"] is False else EXIT_YES


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
