"""JSON exchange formats.

Rationals travel as strings matching -?\\d+(/\\d+)? so exactness survives
serialization; indices in files are 0-based. Bracket-like tables may supply
only one representative per sign-rule orbit (i < j when delta = +1, i <= j
when delta = -1); the loader completes the partner entries and rejects any
inconsistent pair.
"""

import json
import re

from .algebra import HJLAlgebra
from .errors import InputError
from .linalg import Matrix, Tensor3, qstr
from .quadratic import BilinearForm, DualCochain2
from .representations import Cochain2, Representation, trivial_representation

_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?$")


def parse_rational(s, where=""):
    if isinstance(s, int):
        from fractions import Fraction
        return Fraction(s)
    if not isinstance(s, str) or not _RATIONAL_RE.match(s):
        raise InputError(f"bad rational {s!r}{' in ' + where if where else ''}")
    from fractions import Fraction
    return Fraction(s)


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}, "
                         f"column {e.colno}") from e


def _parse_matrix(data, where, rows=None, cols=None):
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError(f"{where}: expected a list of rows")
    if rows is not None and len(data) != rows:
        raise InputError(f"{where}: expected {rows} rows, got {len(data)}")
    out = []
    for ri, row in enumerate(data):
        if cols is not None and len(row) != cols:
            raise InputError(f"{where}: row {ri} has {len(row)} entries, "
                             f"expected {cols}")
        out.append([parse_rational(x, f"{where}[{ri}]") for x in row])
    if out and any(len(r) != len(out[0]) for r in out):
        raise InputError(f"{where}: ragged rows")
    return Matrix(out)


def _complete_sign_rule(raw_entries, delta, dim, what):
    """Fill sign-rule partners; reject duplicates and inconsistencies."""
    seen = {}
    for ent in raw_entries:
        key, value = ent
        i, j = key[0], key[1]
        if not all(isinstance(t, int) and 0 <= t < dim for t in key):
            raise InputError(f"{what}: index {key} out of range (dim {dim})")
        if key in seen:
            raise InputError(f"{what}: duplicate entry for {key}")
        seen[key] = value
    complete = dict(seen)
    for key, value in seen.items():
        partner = (key[1], key[0]) + key[2:]
        want = -delta * value
        if partner in seen:
            if seen[partner] != want:
                raise InputError(
                    f"{what}: entries at {key} and {partner} violate the "
                    f"sign rule (got {qstr(seen[partner])}, expected "
                    f"{qstr(want)})")
        else:
            complete[partner] = want
    return complete


def parse_algebra(data, name_hint=None):
    """AlgebraFile -> validated HJLAlgebra (sign-rule completion applied)."""
    if isinstance(data, str):
        data = load_json(data)
    if not isinstance(data, dict):
        raise InputError("algebra file must be a JSON object")
    for fieldname in ("dim", "delta", "bracket", "alpha"):
        if fieldname not in data:
            raise InputError(f"algebra file missing field {fieldname!r}")
    n = data["dim"]
    if not isinstance(n, int) or n <= 0:
        raise InputError(f"bad dim {n!r}")
    delta = data["delta"]
    if delta not in (1, -1):
        raise InputError(f"delta must be 1 or -1, got {delta!r}")
    raw = []
    for ent in data["bracket"]:
        if not isinstance(ent, list) or len(ent) != 4:
            raise InputError(f"bracket entry {ent!r} is not [i, j, k, value]")
        i, j, k, v = ent
        raw.append(((i, j, k), parse_rational(v, f"bracket[{i},{j},{k}]")))
    entries = _complete_sign_rule(raw, delta, n, "bracket")
    alpha = _parse_matrix(data["alpha"], "alpha", rows=n, cols=n)
    name = data.get("name", name_hint)
    try:
        return HJLAlgebra(n, delta, Tensor3((n, n, n), entries), alpha,
                          name=name)
    except InputError:
        raise
    except ValueError as e:
        raise InputError(str(e)) from e


def emit_algebra(L):
    """Canonical AlgebraFile dict: representative entries only, sorted."""
    bracket = []
    for (i, j, k), v in L.bracket.items():
        if i < j or (i == j and L.delta == -1):
            bracket.append([i, j, k, qstr(v)])
    return {
        "name": L.name or f"algebra_dim{L.n}",
        "dim": L.n,
        "delta": L.delta,
        "bracket": bracket,
        "alpha": [[qstr(L.alpha[i, j]) for j in range(L.n)]
                  for i in range(L.n)],
    }


def _expect_kind(data, kind):
    if not isinstance(data, dict) or data.get("kind") != kind:
        raise InputError(f"expected a file of kind {kind!r}, got "
                         f"{data.get('kind') if isinstance(data, dict) else data!r}")


def parse_map(data, rows=None, cols=None):
    """MapFile -> Matrix. Also used for subspace bases (one row per vector)."""
    if isinstance(data, str):
        data = load_json(data)
    _expect_kind(data, "map")
    if "matrix" not in data:
        raise InputError("map file missing field 'matrix'")
    return _parse_matrix(data["matrix"], "matrix", rows=rows, cols=cols)


def emit_map(M):
    return {"kind": "map",
            "matrix": [[qstr(M[i, j]) for j in range(M.cols)]
                       for i in range(M.rows)]}


def parse_form(data, L):
    if isinstance(data, str):
        data = load_json(data)
    _expect_kind(data, "form")
    if "matrix" not in data:
        raise InputError("form file missing field 'matrix'")
    return BilinearForm(_parse_matrix(data["matrix"], "matrix",
                                      rows=L.n, cols=L.n))


def emit_form(f):
    return {"kind": "form",
            "matrix": [[qstr(f.B[i, j]) for j in range(f.n)]
                       for i in range(f.n)]}


def parse_cochain2(data, L):
    """Scalar-valued 2-cochain over the trivial representation."""
    if isinstance(data, str):
        data = load_json(data)
    _expect_kind(data, "cochain2")
    raw = []
    for ent in data.get("entries", []):
        if not isinstance(ent, list) or len(ent) != 3:
            raise InputError(f"cochain2 entry {ent!r} is not [i, j, value]")
        i, j, v = ent
        raw.append(((i, j), parse_rational(v, f"cochain2[{i},{j}]")))
    complete = _complete_sign_rule(raw, L.delta, L.n, "cochain2")
    entries = {(i, j, 0): v for (i, j), v in complete.items()}
    rep = trivial_representation(L)
    return Cochain2(rep, Tensor3((L.n, L.n, 1), entries))


def emit_cochain2(c):
    entries = []
    delta = c.rep.algebra.delta
    for (i, j, a), v in c.w.items():
        if i < j or (i == j and delta == -1):
            entries.append([i, j, qstr(v)])
    return {"kind": "cochain2", "entries": entries}


def parse_dual_cochain2(data, L):
    if isinstance(data, str):
        data = load_json(data)
    _expect_kind(data, "dual-cochain2")
    raw = []
    for ent in data.get("entries", []):
        if not isinstance(ent, list) or len(ent) != 4:
            raise InputError(f"dual-cochain2 entry {ent!r} is not "
                             f"[i, j, k, value]")
        i, j, k, v = ent
        raw.append(((i, j, k), parse_rational(v, f"dual-cochain2[{i},{j},{k}]")))
    entries = _complete_sign_rule(raw, L.delta, L.n, "dual-cochain2")
    return DualCochain2(L, Tensor3((L.n,) * 3, entries))


def emit_dual_cochain2(c):
    entries = []
    delta = c.algebra.delta
    for (i, j, k), v in c.w.items():
        if i < j or (i == j and delta == -1):
            entries.append([i, j, k, qstr(v)])
    return {"kind": "dual-cochain2", "entries": entries}


def parse_representation(data, L):
    if isinstance(data, str):
        data = load_json(data)
    _expect_kind(data, "representation")
    m = data.get("module_dim")
    if not isinstance(m, int) or m <= 0:
        raise InputError(f"bad module_dim {m!r}")
    A = _parse_matrix(data.get("A"), "A", rows=m, cols=m)
    rho_data = data.get("rho")
    if not isinstance(rho_data, list) or len(rho_data) != L.n:
        raise InputError(f"rho must list {L.n} action matrices")
    rho = [_parse_matrix(r, f"rho[{i}]", rows=m, cols=m)
           for i, r in enumerate(rho_data)]
    # identity failures surface as CheckError from the constructor, which
    # the CLI maps to the mathematical exit code rather than the parse one
    return Representation(L, A, rho)


def emit_representation(r):
    return {
        "kind": "representation",
        "module_dim": r.m,
        "A": [[qstr(r.A[i, j]) for j in range(r.m)] for i in range(r.m)],
        "rho": [[[qstr(mat[i, j]) for j in range(r.m)] for i in range(r.m)]
                for mat in r.rho],
    }


def dump_json(obj):
    """Stable byte stream: fixed separators, preserved key order, newline end."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
