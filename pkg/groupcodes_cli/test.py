import io
import os
import shlex
import sys
import tempfile
from pathlib import Path

import pytest

# Add the parent directory to sys.path to allow importing from the parent directory
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import group_settings
from console import run_checks
from automaton.fileformat import load_automaton, load_inverse_automaton
from automaton.graph import isomorphic
from automaton.subgroup import stallings
from freegroup.words import Alphabet, Word
from groupcodes_cli.main import EXIT_NO, EXIT_USAGE, EXIT_YES, dispatch
from monoid.fileformat import parse_injections
from monoid.transition import inverse_monoid_member

GOLDEN = Path(__file__).resolve().parent / "golden"


def run(argv, stdin_text=""):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = dispatch(argv, io.StringIO(stdin_text), stdout, stderr)
    return code, stdout.getvalue(), stderr.getvalue()


def read_transcript(path):
    """Yields (argv, expected stdout, expected exit code) blocks."""
    argv, expected = None, []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        if line.startswith("$ "):
            argv, expected = shlex.split(line[2:])[1:], []
        elif line.startswith("[exit ") and line.endswith("]"):
            yield argv, "".join(out + "\n" for out in expected), int(line[6:-1])
            argv = None
        else:
            expected.append(line)


def test_golden_transcripts():
    transcripts = sorted(GOLDEN.glob("*.txt"))
    assert transcripts
    cwd = os.getcwd()
    os.chdir(GOLDEN)
    try:
        for path in transcripts:
            for argv, expected, exit_code in read_transcript(path):
                code, out, err = run(argv)
                assert (out, code) == (expected, exit_code), f"{path.name}: {shlex.join(argv)}\n{err}"
    finally:
        os.chdir(cwd)


def test_output_is_deterministic():
    argv = ["stallings", "a b a^-1 b", "b a b^-1", "a a a"]
    assert run(argv) == run(argv)


def test_errors_go_to_stderr_only():
    code, out, err = run(["member", str(GOLDEN / "missing.aut"), "a"])
    assert code == EXIT_USAGE
    assert out == ""
    assert "missing.aut" in err


def test_written_automata_reparse_isomorphic():
    alphabet = Alphabet.of("a", "b")
    with tempfile.TemporaryDirectory() as tmp:
        target = Path(tmp) / "h.aut"
        code, out, _ = run(["stallings", "--alphabet", "a b", "a b a^-1 b", "b b", "a^-1 b a", "-o", str(target)])
        assert (code, out) == (EXIT_YES, "")
        expected = stallings([Word.parse(t, alphabet) for t in ("a b a^-1 b", "b b", "a^-1 b a")])
        assert isomorphic(load_inverse_automaton(target), expected)

        folded = Path(tmp) / "petals.aut"
        run(["fold", str(GOLDEN / "petals.aut"), "-o", str(folded)])
        assert load_automaton(folded).is_deterministic()
        petals = stallings([Word.parse(t, alphabet) for t in ("a b a^-1", "a a b a^-1 a^-1")])
        assert isomorphic(load_inverse_automaton(folded), petals)

        maps = Path(tmp) / "k.maps"
        run(["kozen", str(GOLDEN / "patha.aut"), str(GOLDEN / "patha.aut"), "-o", str(maps)])
        size, named = parse_injections(maps.read_text(encoding="utf-8"))
        assert size == 6
        assert [name for name, _ in named] == ["f_init", "f_alpha", "f_beta", "f_0"]
        assert inverse_monoid_member(named[3][1], [f for _, f in named[:3]])


def test_stdin_batch():
    code, out, _ = run(["reduce", "--stdin"], "a a^-1 b\n\nb b^-1\n")
    assert (code, out) == (EXIT_YES, "b\n1\n")
    code, out, _ = run(["member", str(GOLDEN / "cn3.aut"), "--stdin"], "b\na b a^-1\n")
    assert (code, out) == (EXIT_YES, "yes\nyes\n")
    code, out, _ = run(["member", str(GOLDEN / "cn3.aut"), "--stdin"], "b\na\n")
    assert (code, out) == (EXIT_NO, "yes\nno\n")


def test_dot_output():
    code, out, _ = run(["stallings", "a a", "--dot"])
    assert code == EXIT_YES
    assert out.startswith("digraph automaton {")
    assert '0 -> 1 [label="a"];' in out
    assert '1 -> 0 [label="a"];' in out


def test_usage_errors():
    assert run([])[0] == EXIT_USAGE
    assert run(["frobnicate"])[0] == EXIT_USAGE
    assert run(["member", str(GOLDEN / "cn3.aut")])[0] == EXIT_USAGE
    assert run(["encode", "x_1"])[0] == EXIT_USAGE
    assert run(["monoid-member", str(GOLDEN / "cn3.aut")])[0] == EXIT_USAGE


def run_with_env(name, value, argv):
    saved = os.environ.get(name)
    os.environ[name] = value
    try:
        return run(argv)
    finally:
        if saved is None:
            del os.environ[name]
        else:
            os.environ[name] = saved


def test_bad_settings_are_usage_errors():
    for name, value, argv in (
            ("GROUPCODES_LOG_LEVEL", "LOUD", ["reduce", "a"]),
            ("GROUPCODES_MONOID_LIMIT", "lots", ["aperiodic", str(GOLDEN / "cn3.aut")]),
            ("GROUPCODES_MONOID_LIMIT", "0", ["aperiodic", str(GOLDEN / "cn3.aut")]),
            ("GROUPCODES_WITNESS_LENGTH", "-1", ["radical-closed", "a a"])):
        code, out, err = run_with_env(name, value, argv)
        assert (code, out) == (EXIT_USAGE, "")
        assert name in err
    # an explicit --limit does not consult the environment
    code, out, _ = run_with_env("GROUPCODES_MONOID_LIMIT", "lots", ["--limit", "100", "aperiodic",
                                                                      str(GOLDEN / "cn3.aut")])
    assert (code, out) == (EXIT_YES, "yes\n")
    saved = os.environ.get("GROUPCODES_WITNESS_LENGTH")
    os.environ["GROUPCODES_WITNESS_LENGTH"] = "six"
    try:
        with pytest.raises(group_settings.SettingsError):
            group_settings.witness_length()
    finally:
        if saved is None:
            del os.environ["GROUPCODES_WITNESS_LENGTH"]
        else:
            os.environ["GROUPCODES_WITNESS_LENGTH"] = saved


def test_verbose_logging_follows_each_call():
    run(["reduce", "a"])
    for _ in range(2):
        code, _, err = run(["-v", "reduce", "a"])
        assert code == EXIT_YES
        assert "DEBUG" in err
    assert "DEBUG" not in run(["reduce", "a"])[2]


def test_usage_text_goes_to_given_streams():
    code, out, err = run(["frobnicate"])
    assert (code, out) == (EXIT_USAGE, "")
    assert "invalid choice" in err
    code, out, err = run(["--help"])
    assert code == EXIT_YES
    assert out.startswith("usage: groupcodes")
    assert err == ""


def test_inline_words_over_a_and_b_use_target_order():
    with tempfile.TemporaryDirectory() as tmp:
        target = Path(tmp) / "c3.aut"
        run(["stallings", "b", "a b a^-1", "a a b a^-1 a^-1", "-o", str(target)])
        assert load_automaton(target).alphabet == Alphabet.of("a", "b")
        code, out, _ = run(["intersect", str(target), str(GOLDEN / "cn3.aut")])
        assert (code, out) == (EXIT_NO, "no\nwitness: 1\n")
    code, out, _ = run(["stallings", "y x"])
    assert out.startswith("alphabet y x\n")


if __name__ == "__main__":
    sys.exit(run_checks("Command-line golden transcripts", dict(globals())))
