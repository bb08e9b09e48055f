"""Read and write models in CPLEX-style LP text.

The writer is byte-deterministic (ASCII, LF). Two comment lines carry what the
LP dialect itself cannot: the formulation metadata and the declaration order
of the variables. Files without them still parse; variables are then ordered
by first appearance.
"""
from __future__ import annotations

import re

from ..errors import ParseError
from .model import Constraint, IlpModel, Variable

_SECTIONS = {
    "minimize": "obj", "minimise": "obj", "min": "obj",
    "subject to": "st", "such that": "st", "st": "st", "s.t.": "st",
    "bounds": "bounds", "bound": "bounds",
    "generals": "int", "general": "int", "integers": "int", "gen": "int",
    "binaries": "bin", "binary": "bin", "bin": "bin",
    "end": "end",
}
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\[\]]*$")
_WRAP = 8


def format_expr(terms, names):
    out = []
    for v, c in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = names[v] if mag == 1 else f"{mag} {names[v]}"
        if not out:
            out.append(body if sign == "+" else f"- {body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out) if out else "0"


def dumps(model):
    names = [v.name for v in model.variables]
    meta = model.meta
    dims = meta.get("dims")
    lines = [
        "\\ wdimk formulation={} dims={} k={}".format(
            meta.get("formulation") or "none",
            ",".join(str(d) for d in dims) if dims else "none",
            meta.get("k") if meta.get("k") is not None else "none",
        ),
        "\\ variables: " + " ".join(names),
        "Minimize",
        " obj: " + format_expr(model.objective, names),
        "Subject To",
    ]
    for c in model.constraints:
        lines.append(f" {c.name}: {format_expr(c.terms, names)} {c.sense} {c.rhs}")
    ints = [v for v in model.variables if v.kind == "integer"]
    bins = [v.name for v in model.variables if v.kind == "binary"]
    bounded = [v for v in ints if v.upper is not None]
    if bounded:
        lines.append("Bounds")
        lines += [f" 0 <= {v.name} <= {v.upper}" for v in bounded]
    for title, group in (("Generals", [v.name for v in ints]), ("Binaries", bins)):
        if group:
            lines.append(title)
            lines += [" " + " ".join(group[i:i + _WRAP]) for i in range(0, len(group), _WRAP)]
    lines.append("End")
    return "\n".join(lines) + "\n"


def export_lp(model, path):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dumps(model))


def _parse_terms(text, lineno, order):
    tokens = text.replace("+", " + ").replace("-", " - ").split()
    terms = {}
    seq = []
    sign, coef = 1, None
    for tok in tokens:
        if tok in "+-":
            sign = -1 if tok == "-" else 1
            continue
        if re.fullmatch(r"\d+", tok):
            coef = int(tok)
            continue
        if not _NAME.match(tok):
            raise ParseError(f"unexpected token {tok!r}", lineno)
        c = sign * (1 if coef is None else coef)
        if tok not in order:
            order[tok] = len(order)
        if tok in terms:
            terms[tok] += c
        else:
            terms[tok] = c
            seq.append(tok)
        sign, coef = 1, None
    if coef is not None:
        raise ParseError("dangling coefficient", lineno)
    return [(name, terms[name]) for name in seq if terms[name] != 0]


def _statements(lines):
    """Join continuation lines: a new statement starts with 'name:' or a section keyword."""
    current = None
    for lineno, text in lines:
        if re.match(r"^\s*[A-Za-z_][\w.]*\s*:", text) or current is None:
            if current is not None:
                yield current
            current = [lineno, text]
        else:
            current[1] += " " + text
    if current is not None:
        yield current


def loads(text):
    meta = {"formulation": None, "dims": None, "k": None}
    declared = None
    section = None
    body = {"obj": [], "st": [], "bounds": [], "int": [], "bin": []}
    ended = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if stripped.startswith("\\"):
            m = re.match(r"\\\s*wdimk\s+formulation=(\S+)\s+dims=(\S+)\s+k=(\S+)", stripped)
            if m:
                f, d, k = m.groups()
                meta["formulation"] = None if f == "none" else f
                meta["dims"] = None if d == "none" else tuple(int(x) for x in d.split(","))
                meta["k"] = None if k == "none" else int(k)
            elif stripped.startswith("\\ variables:"):
                declared = stripped.split(":", 1)[1].split()
            continue
        if not stripped:
            continue
        key = stripped.lower()
        if key in _SECTIONS:
            section = _SECTIONS[key]
            if section == "end":
                ended = True
                break
            continue
        if section is None:
            raise ParseError(f"content before any section: {stripped!r}", lineno)
        body[section].append((lineno, stripped))
    if not ended:
        raise ParseError("missing End", len(text.splitlines()))

    order = {name: i for i, name in enumerate(declared)} if declared else {}
    objective = []
    for lineno, stmt in _statements(body["obj"]):
        expr = stmt.split(":", 1)[1] if re.match(r"^\s*[A-Za-z_][\w.]*\s*:", stmt) else stmt
        objective += _parse_terms(expr, lineno, order)

    constraints = []
    for lineno, stmt in _statements(body["st"]):
        m = re.match(r"^\s*([A-Za-z_][\w.]*)\s*:(.*)$", stmt)
        if m:
            name, rest = m.groups()
        else:
            name, rest = f"c{len(constraints) + 1}", stmt
        m = re.match(r"^(.*?)(>=|=>|<=|=<|=)\s*(-?\d+)\s*$", rest)
        if not m:
            raise ParseError(f"cannot read constraint {stmt!r}", lineno)
        expr, sense, rhs = m.groups()
        if sense in ("<=", "=<"):
            raise ParseError("only >= and = constraints are supported", lineno)
        sense = ">=" if sense == "=>" else sense
        constraints.append((name, _parse_terms(expr, lineno, order), sense, int(rhs), lineno))

    uppers = {}
    for lineno, stmt in body["bounds"]:
        m = re.match(r"^(?:0\s*<=\s*)?([A-Za-z_][\w.]*)\s*<=\s*(\d+)$", stmt)
        if m:
            uppers[m.group(1)] = int(m.group(2))
            order.setdefault(m.group(1), len(order))
            continue
        m = re.match(r"^([A-Za-z_][\w.]*)\s*>=\s*0$", stmt)
        if m:
            order.setdefault(m.group(1), len(order))
            continue
        raise ParseError(f"unsupported bound {stmt!r}", lineno)

    kinds = {}
    for sec, kind in (("int", "integer"), ("bin", "binary")):
        for lineno, stmt in body[sec]:
            for name in stmt.split():
                if not _NAME.match(name):
                    raise ParseError(f"bad variable name {name!r}", lineno)
                kinds[name] = kind
                order.setdefault(name, len(order))

    names = sorted(order, key=order.get)
    index = {name: i for i, name in enumerate(names)}
    for name in names:
        if name not in kinds:
            # LP defaults to continuous; this toolkit has no continuous variables
            raise ParseError(f"variable {name} is declared in neither Generals nor Binaries")
    variables = tuple(
        Variable(nm, kinds[nm], uppers.get(nm) if kinds[nm] == "integer" else None) for nm in names
    )
    cons = tuple(
        Constraint(name, tuple((index[v], c) for v, c in terms), sense, rhs)
        for name, terms, sense, rhs, _ in constraints
    )
    obj = tuple((index[v], c) for v, c in objective)
    return IlpModel(variables, obj, cons, meta)


def parse_lp(path):
    try:
        with open(path, encoding="ascii") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        raise ParseError(f"file is not ASCII: {exc}") from None
    return loads(text)
