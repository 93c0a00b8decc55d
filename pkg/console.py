"""
Console status lines.
Short marked messages on stderr; stdout is reserved for command output.
"""
import sys

import config

MARKERS = {
    'ok': '✓',
    'warn': '⚠️ ',
    'error': '❌',
    'search': '🔎',
}

PLAIN_MARKERS = {
    'ok': 'ok',
    'warn': 'warning:',
    'error': 'error:',
    'search': '..',
}


def check_mark(condition: bool) -> str:
    """Return checkmark or X based on condition."""
    if config.NO_COLOR:
        return 'ok' if condition else 'FAIL'
    return "✅" if condition else "❌"


def status(kind: str, message: str) -> None:
    markers = PLAIN_MARKERS if config.NO_COLOR else MARKERS
    print(f"{markers.get(kind, '')} {message}", file=sys.stderr)
