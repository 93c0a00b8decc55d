"""
Permutation-set documents.

Two serializations of the same content:

Text::

    n=4 mode=inversion generator=enumerate_Q_star
    # comments and blank lines are ignored
    1 3 2 4
    1 4 2 3

JSON::

    {"n": 4, "mode": "inversion", "perms": [[1, 3, 2, 4], ...], "metadata": {...}}

Metadata on the text header is a run of ``key=value`` tokens. Integers are
written bare; strings must match ``[A-Za-z0-9_.,:-]+`` and must not look like
an integer, so both formats carry the same information.
"""
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from completeness import Mode, PermSet
from errors import DocumentError, InvalidSizeError, PreconditionError
from perm_core import Permutation

MetadataValue = Union[int, str]

KEY_PATTERN = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')
STRING_PATTERN = re.compile(r'[A-Za-z0-9_.,:-]+')
INTEGER_PATTERN = re.compile(r'-?\d+')
RESERVED_KEYS = ('n', 'mode')


@dataclass
class PermSetDocument:
    n: int
    mode: Mode
    perms: List[Permutation]
    metadata: Dict[str, MetadataValue] = field(default_factory=dict)

    def to_permset(self) -> PermSet:
        return PermSet(self.n, self.mode, tuple(self.perms))

    @classmethod
    def from_permset(cls, s: PermSet, **metadata: MetadataValue) -> 'PermSetDocument':
        return cls(s.n, s.mode, list(s.members), dict(metadata))


def _check_metadata(metadata: Dict[str, MetadataValue]) -> None:
    for key, value in metadata.items():
        if not KEY_PATTERN.fullmatch(key) or key in RESERVED_KEYS:
            raise PreconditionError(f"metadata key {key!r} cannot be written", 'metadata_key')
        if isinstance(value, bool) or not isinstance(value, (int, str)):
            raise PreconditionError(f"metadata {key} must be an int or a string", 'metadata_value')
        if isinstance(value, str) and (not STRING_PATTERN.fullmatch(value)
                                       or INTEGER_PATTERN.fullmatch(value)):
            raise PreconditionError(f"metadata {key}={value!r} cannot be written", 'metadata_value')


# =============================================================================
# TEXT FORMAT
# =============================================================================

def dump_text(doc: PermSetDocument) -> str:
    _check_metadata(doc.metadata)
    header = [f"n={doc.n}", f"mode={doc.mode}"]
    header.extend(f"{key}={value}" for key, value in doc.metadata.items())
    lines = [' '.join(header)]
    lines.extend(' '.join(str(v) for v in p.image) for p in doc.perms)
    return '\n'.join(lines) + '\n'


def _parse_header(text: str, line_no: int, source: str
                  ) -> Tuple[int, Mode, Dict[str, MetadataValue]]:
    fields: Dict[str, MetadataValue] = {}
    for match in re.finditer(r'\S+', text):
        token = match.group()
        column = match.start() + 1
        key, sep, value = token.partition('=')
        if not sep or not KEY_PATTERN.fullmatch(key) or not value:
            raise DocumentError(f"expected key=value, got {token!r}", line_no, column, source)
        if key in fields:
            raise DocumentError(f"duplicate header field {key!r}", line_no, column, source)
        fields[key] = int(value) if INTEGER_PATTERN.fullmatch(value) else value

    for required in RESERVED_KEYS:
        if required not in fields:
            raise DocumentError(f"header is missing {required}=", line_no, 1, source)
    n = fields.pop('n')
    if not isinstance(n, int):
        raise DocumentError(f"n must be an integer, got {n!r}", line_no, 1, source)
    mode_name = fields.pop('mode')
    try:
        mode = Mode(mode_name)
    except ValueError:
        raise DocumentError(f"mode must be inversion or pair, got {mode_name!r}",
                            line_no, 1, source) from None
    return n, mode, fields


def parse_text(text: str, source: str = '<input>') -> PermSetDocument:
    header = None
    perms: List[Permutation] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        indent = len(raw) - len(raw.lstrip())
        if header is None:
            header = _parse_header(raw, line_no, source)
            continue
        if '=' in line:
            raise DocumentError("a document has a single header line", line_no, indent + 1, source)
        try:
            p = Permutation.parse(line)
        except DocumentError as e:
            raise DocumentError(e.args[0], line_no, indent + e.column, source) from None
        except InvalidSizeError as e:
            raise DocumentError(str(e), line_no, indent + 1, source) from None
        if p.n != header[0]:
            raise DocumentError(f"permutation of size {p.n} in a document with n={header[0]}",
                                line_no, indent + 1, source)
        perms.append(p)

    if header is None:
        raise DocumentError("missing header line 'n=<n> mode=<mode>'", 1, 1, source)
    n, mode, metadata = header
    return _build(n, mode, perms, metadata, source)


def _build(n: int, mode: Mode, perms: List[Permutation],
           metadata: Dict[str, MetadataValue], source: str) -> PermSetDocument:
    if n < 2:
        raise DocumentError(f"n must be at least 2, got {n}", 1, 1, source)
    return PermSetDocument(n, mode, perms, metadata)


# =============================================================================
# JSON FORMAT
# =============================================================================

def dump_json(doc: PermSetDocument, indent: Optional[int] = None) -> str:
    _check_metadata(doc.metadata)
    data = {
        'n': doc.n,
        'mode': str(doc.mode),
        'perms': [list(p.image) for p in doc.perms],
    }
    if doc.metadata:
        data['metadata'] = dict(doc.metadata)
    return json.dumps(data, indent=indent, ensure_ascii=False)


def parse_json(text: str, source: str = '<input>') -> PermSetDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, e.lineno, e.colno, source) from None

    if not isinstance(data, dict):
        raise DocumentError("top-level JSON value must be an object", 1, 1, source)
    for key in ('n', 'mode', 'perms'):
        if key not in data:
            raise DocumentError(f"missing field {key!r}", 1, 1, source)
    n = data['n']
    if not isinstance(n, int) or isinstance(n, bool):
        raise DocumentError(f"n must be an integer, got {n!r}", 1, 1, source)
    try:
        mode = Mode(data['mode'])
    except ValueError:
        raise DocumentError(f"mode must be inversion or pair, got {data['mode']!r}",
                            1, 1, source) from None
    metadata = data.get('metadata', {})
    if not isinstance(metadata, dict):
        raise DocumentError("metadata must be an object", 1, 1, source)
    try:
        _check_metadata(metadata)
    except PreconditionError as e:
        raise DocumentError(str(e), 1, 1, source) from None
    if not isinstance(data['perms'], list):
        raise DocumentError("perms must be an array", 1, 1, source)

    perms = []
    for index, entry in enumerate(data['perms']):
        if not isinstance(entry, list) or not all(isinstance(v, int) and not isinstance(v, bool)
                                                  for v in entry):
            raise DocumentError(f"perms[{index}] must be an array of integers", 1, 1, source)
        try:
            p = Permutation(tuple(entry))
        except InvalidSizeError as e:
            raise DocumentError(f"perms[{index}]: {e}", 1, 1, source) from None
        if p.n != n:
            raise DocumentError(f"perms[{index}] has size {p.n}, document has n={n}", 1, 1, source)
        perms.append(p)
    return _build(n, mode, perms, metadata, source)


# =============================================================================
# LOADING
# =============================================================================

def parse(text: str, source: str = '<input>') -> PermSetDocument:
    """Parse either format; JSON is recognised by a leading '{'."""
    if text.lstrip().startswith('{'):
        return parse_json(text, source)
    return parse_text(text, source)


def load(path: Union[str, Path]) -> PermSetDocument:
    """Read a document from a file, or from stdin when path is '-'."""
    if str(path) == '-':
        return parse(sys.stdin.read(), '<stdin>')
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise DocumentError(f"cannot read file: {e.strerror}", 1, 1, str(path)) from None
    return parse(text, str(path))


def dump(doc: PermSetDocument, fmt: str = 'text') -> str:
    if fmt == 'json':
        return dump_json(doc) + '\n'
    return dump_text(doc)
