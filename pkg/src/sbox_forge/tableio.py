"""Table serialization: hex grid, raw binary, JSON."""

import json
import os

from .errors import InvalidTableError
from .tables import SIZE, RawTable

FORMATS = ("hex", "bin", "json")


def format_from_path(path: str, default: str = "hex") -> str:
    ext = os.path.splitext(path)[1].lower().lstrip(".")
    return ext if ext in FORMATS else default


def dumps_hex(table) -> str:
    """16 lines of 16 upper-case two-digit hex values, single-space separated."""
    vals = list(table)
    lines = (" ".join(f"{v:02X}" for v in vals[r * 16:(r + 1) * 16]) for r in range(16))
    return "\n".join(lines) + "\n"


def loads_hex(text: str) -> RawTable:
    tokens = text.split()
    if len(tokens) != SIZE:
        raise InvalidTableError(f"hex table must hold {SIZE} values, found {len(tokens)}")
    try:
        vals = [int(tok, 16) for tok in tokens]
    except ValueError as exc:
        raise InvalidTableError(f"bad hex token: {exc}") from None
    return RawTable(vals)


def dumps_bin(table) -> bytes:
    return bytes(list(table))


def loads_bin(data: bytes) -> RawTable:
    if len(data) != SIZE:
        raise InvalidTableError(f"binary table must be exactly {SIZE} bytes, got {len(data)}")
    return RawTable(list(data))


def dumps_json(table) -> str:
    return json.dumps({"sbox": list(table)}) + "\n"


def loads_json(text: str) -> RawTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidTableError(f"invalid JSON: {exc}") from None
    vals = doc.get("sbox") if isinstance(doc, dict) else doc
    if not isinstance(vals, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in vals):
        raise InvalidTableError('JSON table must be a list of integers or {"sbox": [...]}')
    return RawTable(vals)


def dumps(table, fmt: str):
    if fmt == "hex":
        return dumps_hex(table)
    if fmt == "bin":
        return dumps_bin(table)
    if fmt == "json":
        return dumps_json(table)
    raise ValueError(f"unknown table format {fmt!r}")


def loads(data, fmt: str) -> RawTable:
    if fmt == "bin":
        return loads_bin(data if isinstance(data, bytes) else data.encode())
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError:
            raise InvalidTableError(f"{fmt} table is not valid UTF-8") from None
    if fmt == "hex":
        return loads_hex(data)
    if fmt == "json":
        return loads_json(data)
    raise ValueError(f"unknown table format {fmt!r}")


def read_table(path: str, fmt: str = None) -> RawTable:
    fmt = fmt or format_from_path(path)
    with open(path, "rb") as fh:
        return loads(fh.read(), fmt)


def write_table(table, path: str, fmt: str = None) -> None:
    fmt = fmt or format_from_path(path)
    payload = dumps(table, fmt)
    mode = "wb" if isinstance(payload, bytes) else "w"
    kwargs = {} if mode == "wb" else {"encoding": "utf-8", "newline": "\n"}
    with open(path, mode, **kwargs) as fh:
        fh.write(payload)
