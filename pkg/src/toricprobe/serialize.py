"""
Reading arrangement files and writing command results.

An arrangement file is JSON:

    {"name": "three lines", "ambient_rank": 2,
     "atoms": [{"characters": [[1, 0]], "constants": ["0"]}, ...]}

Constants are strings "p/q" (reduced, 0 <= p < q) or "0"; they may be left out for an atom whose constants are all
trivial.  Results are plain dictionaries, written as indented JSON or as aligned tables.
"""
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Tuple, Union

from toricprobe.arrangement import AtomSpec, UnityRoot, validate_atom
from toricprobe.exceptions import ParseError, ToricProbeError


@dataclass(frozen=True)
class ArrangementFile:
    ambient_rank: int
    atoms: Tuple[AtomSpec, ...]
    name: Optional[str] = None

    def to_dict(self) -> dict:
        out = {'ambient_rank': self.ambient_rank,
               'atoms': [{'characters': [list(c) for c in a.characters], 'constants': [str(k) for k in a.constants]}
                         for a in self.atoms]}
        if self.name is not None:
            out['name'] = self.name
        return out

    def dumps(self) -> str:
        return render_json(self.to_dict())


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _expect(condition: bool, path: str, message: str):
    if not condition:
        raise ParseError(f"{path}: {message}", params={'field': path})


def _parse_atom(ambient_rank: int, raw: Any, index: int) -> AtomSpec:
    path = f'atoms[{index}]'
    _expect(isinstance(raw, dict), path, "must be an object")
    characters = raw.get('characters')
    _expect(isinstance(characters, list), f'{path}.characters', "must be a list of integer vectors")
    for k, c in enumerate(characters):
        _expect(isinstance(c, list) and all(_is_int(x) for x in c), f'{path}.characters[{k}]',
                "must be a list of integers")
    constants = raw.get('constants')
    if constants is None:
        roots = ['0'] * len(characters)
    else:
        _expect(isinstance(constants, list), f'{path}.constants', "must be a list of strings")
        roots = constants
    parsed = []
    for k, text in enumerate(roots):
        try:
            parsed.append(UnityRoot.parse(text))
        except ParseError as ex:
            raise ParseError(f"{path}.constants[{k}]: {ex}", params={'field': f'{path}.constants[{k}]'}) from ex
    atom = AtomSpec(tuple(tuple(c) for c in characters), tuple(parsed))
    validate_atom(ambient_rank, atom, index)
    return atom


def parse_document(document: Any) -> ArrangementFile:
    """
    :raises ParseError: With the path of the offending field.
    :raises ToricProbeError: The atom errors, with the atom index.
    """
    _expect(isinstance(document, dict), '$', "the document must be an object")
    rank = document.get('ambient_rank')
    _expect(_is_int(rank) and rank >= 0, 'ambient_rank', f"must be a non negative integer, got {rank!r}")
    atoms = document.get('atoms', [])
    _expect(isinstance(atoms, list), 'atoms', "must be a list")
    name = document.get('name')
    _expect(name is None or isinstance(name, str), 'name', "must be a string")
    return ArrangementFile(rank, tuple(_parse_atom(rank, a, i) for i, a in enumerate(atoms)), name)


def parse_input(source: Union[str, Path]) -> ArrangementFile:
    """
    :param source: A path, or the JSON text itself when it starts with '{'.
    """
    if isinstance(source, str) and source.lstrip().startswith('{'):
        text = source
    else:
        path = Path(source)
        if not path.exists():
            raise ParseError(f"Could not find arrangement file {path}", params={'path': str(path)})
        text = path.read_text(encoding='utf-8')
    try:
        document = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ParseError(f"line {ex.lineno} column {ex.colno}: {ex.msg}",
                         params={'line': ex.lineno, 'column': ex.colno}) from ex
    return parse_document(document)


def render_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + '\n'


def _cell(value: Any) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, separators=(',', ':'))
    if value is None:
        return '-'
    return str(value)


def _table(rows: List[dict]) -> List[str]:
    headers: List[str] = []
    for row in rows:
        for key in row:
            if key not in headers:
                headers.append(key)
    cells = [[_cell(row.get(h)) for h in headers] for row in rows]
    widths = [max([len(h)] + [len(c[i]) for c in cells]) for i, h in enumerate(headers)]
    lines = ['  '.join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append('  '.join('-' * w for w in widths))
    lines.extend('  '.join(c.ljust(w) for c, w in zip(cell_row, widths)).rstrip() for cell_row in cells)
    return lines


def render_table(data: dict) -> str:
    """
    Scalars as 'key: value' lines, then one aligned table per list of objects.
    """
    lines = []
    tables = []
    for key, value in data.items():
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            tables.append((key, value))
        elif isinstance(value, dict):
            lines.append(f'{key}:')
            lines.extend(f'  {k}: {_cell(v)}' for k, v in value.items())
        else:
            lines.append(f'{key}: {_cell(value)}')
    for key, rows in tables:
        lines.append('')
        lines.append(f'{key}:')
        lines.extend(_table(rows))
    return '\n'.join(lines) + '\n'


def render(data: dict, output_format: str) -> str:
    return render_table(data) if output_format == 'table' else render_json(data)


def error_document(ex: ToricProbeError) -> dict:
    return {'error': ex.kind, 'message': str(ex), 'atom_index': ex.atom_index}
