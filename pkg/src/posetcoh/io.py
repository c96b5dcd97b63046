"""Reading and writing the JSON formats for posets, functors, orderings,
arrangements and Mackey functors.

Scalars are written as strings such as ``"3"`` or ``"-1/2"``; plain JSON
numbers are accepted on input.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .errors import FormatError, UnknownFixture
from .functor import Functor
from .linalg import QQ, Field, Matrix, field_from_tag
from .poset import Poset, parse_chain
from .shelling import OrderingFamily


def load_json(source: str | Path) -> Any:
    try:
        with open(source, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise FormatError(f"cannot read {source}: {exc.strerror}") from exc


def dump_json(data: Any, indent: int = 0) -> str:
    """Indented JSON that keeps lists of scalars (matrix rows, tables) on one line."""
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(data, dict) and data:
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {dump_json(v, indent + 2)}"
                 for k, v in data.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(data, (list, tuple)) and data and any(isinstance(x, (dict, list, tuple)) for x in data):
        if all(isinstance(x, (list, tuple)) and not any(isinstance(y, (dict, list)) for y in x)
               for x in data):
            items = [inner + json.dumps(list(x), ensure_ascii=False) for x in data]
        else:
            items = [inner + dump_json(x, indent + 2) for x in data]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(data, ensure_ascii=False)


def _require(data: Mapping, key: str, what: str):
    if not isinstance(data, Mapping) or key not in data:
        raise FormatError(f"{what} needs a {key!r} entry")
    return data[key]


def poset_from_json(data: Any) -> Poset:
    """A poset from ``{"elements": [...], "covers": [[q, p], ...]}`` or a fixture name."""
    if isinstance(data, str):
        from .fixtures import get_fixture

        return get_fixture(data).poset
    if isinstance(data, Mapping) and "fixture" in data:
        from .fixtures import get_fixture

        return get_fixture(data["fixture"]).poset
    elements = _require(data, "elements", "a poset")
    covers = _require(data, "covers", "a poset")
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise FormatError("poset elements must be a list of strings")
    for e in elements:
        if "<" in e:
            raise FormatError(f"element id {e!r} may not contain '<'")
    pairs = []
    for c in covers:
        if not isinstance(c, (list, tuple)) or len(c) != 2:
            raise FormatError(f"cover {c!r} must be a pair [q, p]")
        pairs.append((str(c[0]), str(c[1])))
    return Poset(elements, pairs, data.get("bottom"), data.get("top"))


def matrix_from_json(field: Field, rows: Any, shape: tuple[int, int]) -> Matrix:
    r, c = shape
    if not isinstance(rows, list):
        raise FormatError("a matrix must be a list of rows")
    if r == 0 or c == 0:
        if any(len(row) for row in rows) or len(rows) not in (0, r):
            raise FormatError(f"expected an empty {r}x{c} matrix")
        return Matrix.zeros(field, r, c)
    if len(rows) != r or any(not isinstance(row, list) or len(row) != c for row in rows):
        raise FormatError(f"expected a {r}x{c} matrix")
    try:
        return Matrix(field, r, c, [[field(_scalar(x)) for x in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad matrix entry: {exc}") from exc


def _scalar(x):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        if isinstance(x, float) and x.is_integer():
            return int(x)
        raise FormatError(f"scalar {x!r} must be a string or an integer")
    return x


def _split_pair(key: str) -> tuple[str, str]:
    parts = key.split("<")
    if len(parts) != 2:
        raise FormatError(f"map key {key!r} must look like 'q<p'")
    return parts[0].strip(), parts[1].strip()


def functor_from_json(data: Any, field: Field | None = None, validate: bool = True) -> Functor:
    poset = poset_from_json(_require(data, "poset", "a functor"))
    variance = data.get("variance", "contra")
    if field is None:
        field = field_from_tag(data.get("field", "Q"))
    dims_raw = data.get("dims", {})
    dims = {}
    for e, k in dims_raw.items():
        if e not in poset:
            raise FormatError(f"dims refer to unknown element {e!r}")
        if not isinstance(k, int) or k < 0:
            raise FormatError(f"dimension at {e!r} must be a non-negative integer")
        dims[e] = k
    maps = {}
    for key, rows in data.get("maps", {}).items():
        q, p = _split_pair(key)
        for x in (q, p):
            if x not in poset:
                raise FormatError(f"map {key!r} refers to unknown element {x!r}")
        dq, dp = dims.get(q, 0), dims.get(p, 0)
        shape = (dq, dp) if variance == "contra" else (dp, dq)
        maps[(q, p)] = matrix_from_json(field, rows, shape)
    return Functor(poset, variance, field, dims, maps, validate=validate)


def ordering_from_json(poset: Poset, data: Any) -> OrderingFamily:
    if not isinstance(data, Mapping) or not ({"global", "chains"} & set(data)):
        raise FormatError("an ordering needs a 'global' list or a 'chains' map")
    chains = {}
    for key, order in data.get("chains", {}).items():
        chains[parse_chain(key)] = list(order)
    return OrderingFamily(poset, chains, data.get("global"))


def arrangement_from_json(data: Any, field: Field = QQ):
    from .arrangements import Arrangement

    n = _require(data, "ambient_dim", "an arrangement")
    rows = _require(data, "hyperplanes", "an arrangement")
    if not isinstance(n, int) or n < 1:
        raise FormatError("ambient_dim must be a positive integer")
    try:
        normals = [[field(_scalar(x)) for x in row] for row in rows]
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad hyperplane entry: {exc}") from exc
    return Arrangement(n, normals, field)


def mackey_from_json(data: Any, field: Field | None = None):
    from .stability import MackeyFunctor

    g = functor_from_json(data, field)
    transfers = {}
    for key, rows in data.get("transfers", {}).items():
        j, i = _split_pair(key)
        for x in (j, i):
            if x not in g.poset:
                raise FormatError(f"transfer {key!r} refers to unknown element {x!r}")
        transfers[(j, i)] = matrix_from_json(g.field, rows, (g.dim(i), g.dim(j)))
    return MackeyFunctor(g, transfers)


def resolve_input(arg: str) -> Any:
    """A JSON document from a path, or a fixture name standing for its poset."""
    path = Path(arg)
    if path.exists():
        return load_json(path)
    from .fixtures import get_fixture

    try:
        get_fixture(arg)
    except UnknownFixture:
        raise FormatError(f"{arg!r} is neither a file nor a fixture name") from None
    return arg
