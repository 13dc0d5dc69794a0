# Copyright 2026 The dimcert developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import csv
import io
import json
import sys

import numpy as np

from dimcert.correlations.model import validate_pm, validate_bell
from dimcert.defaults import PROBABILITY_TOL
from dimcert.exceptions import ParseError
from dimcert.serialization import dumps, format_float


def read_source(source):
    """source is a path, '-' for stdin, or an object with a read() method."""
    if hasattr(source, "read"):
        return source.read()
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, "r") as f:
            return f.read()
    except (IOError, OSError) as e:
        raise ParseError("cannot read %s: %s" % (source, e))


def write_target(text, target):
    if hasattr(target, "write"):
        target.write(text)
    elif target == "-":
        sys.stdout.write(text)
    else:
        with open(target, "w") as f:
            f.write(text)


def _guess_format(source, fmt):
    if fmt is not None:
        return fmt
    if isinstance(source, str) and source.lower().endswith(".csv"):
        return "csv"
    return "json"


def parse_json(text):
    try:
        return json.loads(text)
    except ValueError as e:
        raise ParseError("invalid JSON: %s" % getattr(e, "msg", str(e)), line=getattr(e, "lineno", None))


def _int_field(doc, name):
    if name not in doc:
        raise ParseError("missing field", field=name)
    value = doc[name]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError("expected an integer, got %r" % (value,), field=name)
    return value


def _tensor_field(doc, name):
    if name not in doc:
        raise ParseError("missing field", field=name)
    try:
        return np.array(doc[name], dtype=float)
    except (TypeError, ValueError):
        # ragged nesting is a shape problem, non-numeric leaves are a parse problem
        if _all_numeric(doc[name]):
            return doc[name]
        raise ParseError("tensor contains non-numeric values", field=name)


def _all_numeric(obj):
    if isinstance(obj, list):
        return all(_all_numeric(o) for o in obj)
    return isinstance(obj, (int, float)) and not isinstance(obj, bool)


def pm_from_dict(doc, tol=PROBABILITY_TOL):
    if not isinstance(doc, dict):
        raise ParseError("top level JSON value must be an object")
    if doc.get("type", "pm") != "pm":
        raise ParseError("expected type 'pm', got %r" % (doc.get("type"),), field="type")
    dims = (_int_field(doc, "N"), _int_field(doc, "M"), _int_field(doc, "K"))
    return validate_pm(_tensor_field(doc, "p"), dims=dims, labels=doc.get("labels"), tol=tol)


def pm_to_dict(p):
    ret = {"type": "pm", "N": p.n_preparations, "M": p.n_measurements, "K": p.n_outcomes, "p": p.probs}
    if p.labels:
        ret["labels"] = p.labels
    return ret


def bell_from_dict(doc, tol=PROBABILITY_TOL):
    if not isinstance(doc, dict):
        raise ParseError("top level JSON value must be an object")
    if doc.get("type", "bell") != "bell":
        raise ParseError("expected type 'bell', got %r" % (doc.get("type"),), field="type")
    dims = (_int_field(doc, "XA"), _int_field(doc, "YB"), _int_field(doc, "A"), _int_field(doc, "B"))
    return validate_bell(_tensor_field(doc, "r"), dims=dims, tol=tol)


def bell_to_dict(r):
    return {"type": "bell", "XA": r.n_settings_a, "YB": r.n_settings_b, "A": r.n_outcomes_a,
            "B": r.n_outcomes_b, "r": r.probs}


def _parse_pm_csv(text, dims, tol):
    reader = csv.reader(io.StringIO(text))
    rows = [(i + 1, row) for i, row in enumerate(reader) if row and any(c.strip() for c in row)]
    if not rows:
        raise ParseError("empty CSV", line=1)
    header_line, header = rows[0]
    if [c.strip() for c in header] != ["x", "y", "b", "p"]:
        raise ParseError("CSV header must be x,y,b,p", line=header_line)

    entries = {}
    for line, row in rows[1:]:
        if len(row) != 4:
            raise ParseError("expected 4 columns, got %d" % len(row), line=line)
        idx = []
        for name, cell in zip("xyb", row[:3]):
            try:
                value = int(cell.strip())
            except ValueError:
                raise ParseError("index is not an integer: %r" % cell, line=line, field=name)
            if value < 0:
                raise ParseError("negative index %d" % value, line=line, field=name)
            idx.append(value)
        try:
            prob = float(row[3].strip())
        except ValueError:
            raise ParseError("probability is not a number: %r" % row[3], line=line, field="p")
        if tuple(idx) in entries:
            raise ParseError("duplicate entry for (x, y, b) = %s" % (tuple(idx),), line=line)
        entries[tuple(idx)] = (prob, line)

    if not entries:
        raise ParseError("CSV has a header but no entries", line=header_line + 1)
    if dims is None:
        dims = tuple(max(k[i] for k in entries) + 1 for i in range(3))
    n, m, k = dims
    probs = np.zeros((n, m, k))
    for (x, y, b), (prob, line) in entries.items():
        if x >= n or y >= m or b >= k:
            raise ParseError("entry (%d, %d, %d) outside of (N, M, K) = %s" % (x, y, b, tuple(dims)), line=line)
        probs[x, y, b] = prob

    covered = set((x, y) for (x, y, _) in entries)
    if len(covered) != n * m:
        missing = sorted(set((x, y) for x in range(n) for y in range(m)) - covered)
        raise ParseError("CSV covers %d (x, y) slices, expected N*M = %d; first missing %s" %
                         (len(covered), n * m, missing[0]), line=rows[-1][0])
    return validate_pm(probs, dims=dims, tol=tol)


def load_pm(source, fmt=None, dims=None, tol=PROBABILITY_TOL):
    """Reads a PM correlation from JSON (canonical) or long-format CSV.

    Args:
        source: a path, '-' for stdin, or a readable stream
        fmt: 'json' or 'csv'. Guessed from the file extension if None
        dims: (N, M, K) for CSV input. Inferred from the largest indices if None
        tol: validation tolerance
    """
    fmt = _guess_format(source, fmt)
    text = read_source(source)
    if fmt == "csv":
        return _parse_pm_csv(text, dims, tol)
    if fmt != "json":
        raise ValueError("unknown format %r" % fmt)
    return pm_from_dict(parse_json(text), tol=tol)


def save_pm(p, target, fmt=None):
    fmt = _guess_format(target, fmt)
    if fmt == "csv":
        out = io.StringIO()
        out.write("x,y,b,p\n")
        n, m, k = p.shape
        for x in range(n):
            for y in range(m):
                for b in range(k):
                    out.write("%d,%d,%d,%s\n" % (x, y, b, format_float(p.probs[x, y, b])))
        write_target(out.getvalue(), target)
    else:
        write_target(dumps(pm_to_dict(p)) + "\n", target)


def load_bell(source, tol=PROBABILITY_TOL):
    return bell_from_dict(parse_json(read_source(source)), tol=tol)


def save_bell(r, target):
    write_target(dumps(bell_to_dict(r)) + "\n", target)


def load_correlation(source, tol=PROBABILITY_TOL):
    """Loads either kind of JSON document, dispatching on its 'type' field."""
    doc = parse_json(read_source(source))
    if isinstance(doc, dict) and doc.get("type") == "bell":
        return bell_from_dict(doc, tol=tol)
    return pm_from_dict(doc, tol=tol)
