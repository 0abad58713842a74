"""
Terminal helpers shared by the CLI (stderr messages) and the test runners.
Colours are only emitted when the stream is a terminal and NO_COLOR is unset.
"""
import os
import sys
import traceback


# ANSI color codes for terminal output
class Colors:
    HEADER = '\033[95m'
    BLUE = '\033[94m'
    CYAN = '\033[96m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    RED = '\033[91m'
    BOLD = '\033[1m'
    END = '\033[0m'


def _paint(stream, *codes):
    if os.environ.get("NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return "", ""
    return "".join(codes), Colors.END


def print_header(message, stream=sys.stdout):
    on, off = _paint(stream, Colors.HEADER, Colors.BOLD)
    print(f"\n{on}{'=' * 80}{off}", file=stream)
    print(f"{on}{message.center(80)}{off}", file=stream)
    print(f"{on}{'=' * 80}{off}\n", file=stream)


def print_section(message, stream=sys.stdout):
    on, off = _paint(stream, Colors.BLUE, Colors.BOLD)
    print(f"\n{on}{message}{off}", file=stream)
    print(f"{on}{'-' * 40}{off}", file=stream)


def print_success(message, stream=sys.stdout):
    on, off = _paint(stream, Colors.GREEN)
    print(f"{on}ok   {message}{off}", file=stream)


def print_info(message, stream=sys.stdout):
    on, off = _paint(stream, Colors.CYAN)
    print(f"{on}{message}{off}", file=stream)


def print_warning(message, stream=sys.stderr):
    on, off = _paint(stream, Colors.YELLOW)
    print(f"{on}warning: {message}{off}", file=stream)


def print_error(message, stream=sys.stderr):
    on, off = _paint(stream, Colors.RED)
    print(f"{on}error: {message}{off}", file=stream)


def run_checks(title, namespace):
    """
    Runs every `test_*` function of a test module in definition order.

    This is how the component `test.py` files behave when executed directly
    instead of through pytest.

    Returns:
        int: 0 when every check passed, 1 otherwise
    """
    print_header(title)
    checks = [(name, fn) for name, fn in namespace.items()
              if name.startswith("test_") and callable(fn)]
    failures = 0
    for name, fn in checks:
        try:
            fn()
        except Exception as e:
            failures += 1
            print_error(f"{name}: {e!r}", stream=sys.stdout)
            traceback.print_exc()
        else:
            print_success(name)

    print_section("Test Results")
    if failures:
        print_error(f"{failures} of {len(checks)} checks failed", stream=sys.stdout)
        return 1
    print_success(f"all {len(checks)} checks passed")
    return 0
