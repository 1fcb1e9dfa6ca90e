"""The textual problem format read by the command line tool.

A problem file is a sequence of ``key = value`` lines grouped in sections::

    truncation = 12

    [algebra]
    type = A            # sl_(rank+1); GL gives gl_rank; or: roots = [[2], [-2]]
    rank = 1

    [theta]
    r = 2
    theta = [1/2]

    [element]           # series in z (logahoric) or t (equivariant)
    h[1] : 1/2
    x[2] : 3*z^2 + O(z^6)     # root by 1-based index, or by vector: x[(-2)]

    [parabolic]
    r = 2
    p = [1, 0]

    [matrix]
    omega[1][2] = 5 + 7*t^2

    [bundle]
    rank = 2
    degree = -1
    genus = 1
    lines = [0, -1]     # optional: the bundle is this sum of line bundles

    [point x]
    weights = [1/2, 1/2]

    [decomposition d1]
    blocks = [[1], [2]]
    degrees = [0, -1]
    characters = [[1, 0], [1, -1]]   # optional; default: each block determinant

``#`` starts a comment.  Element and matrix entries accept ``:`` or ``=``.
Series without an ``O(...)`` term get the file's (or the command line's)
truncation; unknown sections and keys are errors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .degree import LeviDecomposition, ParabolicBundleGlobal
from .errors import LogahoricError, ParseError
from .parabolic import ParabolicLocalDatum, permute_matrix
from .rootsys import Coweight, LieAlgebraElement, RootSystem
from .series import LaurentMatrix, LaurentSeries, Variable, format_series, parse_series

DEFAULT_TRUNCATION = 12

SECTION_KEYS = {
    "": {"truncation"},
    "algebra": {"type", "rank", "roots"},
    "theta": {"r", "theta"},
    "element": None,
    "element2": None,
    "parabolic": {"r", "p"},
    "matrix": None,
    "bundle": {"rank", "degree", "genus", "lines"},
    "point": {"weights"},
    "decomposition": {"blocks", "degrees", "characters"},
}
LABELLED = {"point", "decomposition"}


@dataclass
class ProblemFile:
    truncation: int | None = None
    root_system: RootSystem | None = None
    theta: Coweight | None = None
    element: LieAlgebraElement | None = None
    element2: LieAlgebraElement | None = None
    datum: ParabolicLocalDatum | None = None
    matrix: LaurentMatrix | None = None  # in the datum's sorted frame
    bundle: ParabolicBundleGlobal | None = None
    decompositions: list = field(default_factory=list)  # [(LeviDecomposition, characters or None)]

    def require(self, *names):
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ParseError(f"problem file is missing: {', '.join(missing)}")


# values


_VALUE_TOKEN = re.compile(r'\s*(\[|\]|,|"[^"]*"|[+-]?\d+(?:/\d+)?|[A-Za-z_]+)')


def parse_value(text: str, line: int | None = None):
    """Ints, rationals (optionally quoted), bare words and nested lists."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _VALUE_TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"cannot read value {text!r}", line, pos + 1)
        tokens.append((m.group(1), m.start(1) + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("missing value", line)

    def atom(tok, col):
        if tok.startswith('"'):
            tok = tok[1:-1].strip()
        if re.fullmatch(r"[+-]?\d+", tok):
            return int(tok)
        if re.fullmatch(r"[+-]?\d+/\d+", tok):
            if int(tok.split("/")[1]) == 0:
                raise ParseError("zero denominator", line, col)
            return Fraction(tok)
        if re.fullmatch(r"[A-Za-z_]+", tok):
            return tok
        raise ParseError(f"bad atom {tok!r}", line, col)

    def parse(i):
        tok, col = tokens[i]
        if tok == "[":
            out = []
            i += 1
            if tokens[i][0] == "]":
                return out, i + 1
            while True:
                v, i = parse(i)
                out.append(v)
                if i >= len(tokens):
                    raise ParseError("unterminated list", line)
                if tokens[i][0] == "]":
                    return out, i + 1
                if tokens[i][0] != ",":
                    raise ParseError("expected ',' in list", line, tokens[i][1])
                i += 1
        if tok in ("]", ","):
            raise ParseError(f"unexpected {tok!r}", line, col)
        return atom(tok, col), i + 1

    try:
        value, i = parse(0)
    except IndexError:
        raise ParseError("unterminated list", line) from None
    if i != len(tokens):
        raise ParseError("trailing text after value", line, tokens[i][1])
    return value


def _fmt(v) -> str:
    if isinstance(v, list) or isinstance(v, tuple):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


# parsing


_SECTION = re.compile(r"^\[\s*([A-Za-z0-9_]+)(?:\s+([A-Za-z0-9_.\-]+))?\s*\]$")
_ELEMENT_KEY = re.compile(r"^(h|x)\[\s*(\(\s*[-+0-9,\s]*\)|[-+]?\d+)\s*\]$")
_MATRIX_KEY = re.compile(r"^omega\[\s*(\d+)\s*\]\[\s*(\d+)\s*\]$")


def _split_entry(line: str, lineno: int, allow_colon: bool):
    m = re.match(r"^([^=:]+?)\s*([=:])\s*(.*)$", line) if allow_colon else re.match(r"^([^=]+?)\s*=\s*(.*)$", line)
    if not m:
        raise ParseError("expected 'key = value'", lineno, 1)
    if allow_colon:
        return m.group(1).strip(), m.group(3)
    return m.group(1).strip(), m.group(2)


def parse_problem(text: str, truncation: int | None = None) -> ProblemFile:
    """Parse a problem file; ``truncation`` overrides the file's default order."""
    sections: list = []  # (name, label, lineno, {key: (value, lineno)})
    current = ("", None, 0, {})
    sections.append(current)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            m = _SECTION.match(line)
            if not m:
                raise ParseError(f"bad section header {line!r}", lineno, 1)
            name, label = m.group(1), m.group(2)
            if name not in SECTION_KEYS:
                raise ParseError(f"unknown section [{name}]", lineno, 1)
            if (label is not None) != (name in LABELLED):
                raise ParseError(
                    f"section [{name}] {'needs' if name in LABELLED else 'takes no'} label", lineno, 1
                )
            if name not in LABELLED and any(s[0] == name for s in sections):
                raise ParseError(f"duplicate section [{name}]", lineno, 1)
            if name in LABELLED and any(s[0] == name and s[1] == label for s in sections):
                raise ParseError(f"duplicate section [{name} {label}]", lineno, 1)
            current = (name, label, lineno, {})
            sections.append(current)
            continue
        name = current[0]
        free = SECTION_KEYS[name] is None
        key, value = _split_entry(line, lineno, allow_colon=free)
        if not free and key not in SECTION_KEYS[name]:
            where = f"[{name}]" if name else "the top level"
            raise ParseError(f"unknown key {key!r} in {where}", lineno, 1)
        if key in current[3]:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        current[3][key] = (value, lineno)

    return _build(sections, truncation)


def _get(entries, key, required=True):
    if key not in entries:
        if required:
            raise ParseError(f"missing key {key!r}")
        return None, None
    value, lineno = entries[key]
    return parse_value(value, lineno), lineno


def _int(v, lineno, what):
    if not isinstance(v, int):
        raise ParseError(f"{what} must be an integer", lineno)
    return v


def _int_list(v, lineno, what):
    if not isinstance(v, list) or any(not isinstance(x, int) for x in v):
        raise ParseError(f"{what} must be a list of integers", lineno)
    return v


def _build(sections, truncation_override) -> ProblemFile:
    by_name: dict = {}
    for name, label, lineno, entries in sections:
        by_name.setdefault(name, []).append((label, lineno, entries))
    prob = ProblemFile()
    top = by_name[""][0][2]
    if "truncation" in top:
        v, ln = _get(top, "truncation")
        prob.truncation = _int(v, ln, "truncation")
    trunc = truncation_override if truncation_override is not None else prob.truncation
    if trunc is None:
        trunc = DEFAULT_TRUNCATION

    try:
        if "algebra" in by_name:
            _, ln, e = by_name["algebra"][0]
            prob.root_system = _build_algebra(e, ln)
        if "theta" in by_name:
            _, ln, e = by_name["theta"][0]
            if prob.root_system is None:
                raise ParseError("[theta] needs an [algebra] section", ln)
            r, rl = _get(e, "r")
            th, tl = _get(e, "theta")
            if not isinstance(th, list):
                raise ParseError("theta must be a list", tl)
            if len(th) != prob.root_system.rank:
                raise ParseError(f"theta needs {prob.root_system.rank} components, got {len(th)}", tl)
            try:
                prob.theta = Coweight(prob.root_system, _int(r, rl, "r"), tuple(Fraction(c) for c in th))
            except ValueError as exc:
                raise ParseError(f"{exc} (denominator vs r mismatch)", tl) from None
        if "parabolic" in by_name:
            _, ln, e = by_name["parabolic"][0]
            r, rl = _get(e, "r")
            p, pl = _get(e, "p")
            p = _int_list(p, pl, "p")
            if any(a < b for a, b in zip(p, p[1:])):
                raise ParseError(f"p = {p} is not weakly decreasing (p_1 >= ... >= p_n)", pl)
            try:
                prob.datum = ParabolicLocalDatum(_int(r, rl, "r"), tuple(p))
            except LogahoricError as exc:
                raise ParseError(str(exc), pl) from None
        r_ctx = prob.theta.r if prob.theta else (prob.datum.r if prob.datum else 1)
        for name in ("element", "element2"):
            if name in by_name:
                _, ln, e = by_name[name][0]
                if prob.root_system is None:
                    raise ParseError(f"[{name}] needs an [algebra] section", ln)
                setattr(prob, name, _build_element(prob.root_system, e, r_ctx, trunc, ln))
        if "matrix" in by_name:
            _, ln, e = by_name["matrix"][0]
            if prob.datum is None:
                raise ParseError("[matrix] needs a [parabolic] section", ln)
            prob.matrix = _build_matrix(prob.datum, e, trunc, ln)
        if "bundle" in by_name:
            prob.bundle = _build_bundle(by_name)
        elif "point" in by_name:
            raise ParseError("[point] sections need a [bundle] section", by_name["point"][0][1])
        for label, ln, e in by_name.get("decomposition", []):
            if prob.bundle is None:
                raise ParseError("[decomposition] needs a [bundle] section", ln)
            prob.decompositions.append(_build_decomposition(prob.bundle, label, e, ln))
    except LogahoricError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None
    return prob


def _build_algebra(e, ln) -> RootSystem:
    if "roots" in e:
        if "type" in e or "rank" in e:
            raise ParseError("give either type/rank or roots, not both", ln)
        roots, rl = _get(e, "roots")
        if not isinstance(roots, list) or not roots or any(not isinstance(a, list) for a in roots):
            raise ParseError("roots must be a list of integer vectors", rl)
        try:
            return RootSystem.from_roots([_int_list(a, rl, "root") for a in roots])
        except ValueError as exc:
            raise ParseError(str(exc), rl) from None
    kind, kl = _get(e, "type")
    rank, rl = _get(e, "rank")
    rank = _int(rank, rl, "rank")
    if rank < 1:
        raise ParseError("rank must be positive", rl)
    if str(kind).upper() == "A":
        return RootSystem.type_A(rank)
    if str(kind).upper() == "GL":
        return RootSystem.gl(rank)
    raise ParseError(f"unsupported algebra type {kind!r} (use A, GL or an explicit roots list)", kl)


def _parse_series_at(text, r, trunc, lineno, default_tag=None):
    try:
        return parse_series(text, r=r, truncation=trunc, default_tag=default_tag)
    except ParseError as exc:
        raise ParseError(str(exc), lineno, exc.column) from None


def _literal_tag(values):
    tags = set()
    for v in values:
        tags |= set(re.findall(r"[tz]", v))
    if len(tags) > 1:
        raise ParseError("entries mix series in t and z")
    return tags.pop() if tags else "z"


def _build_element(rs: RootSystem, e, r, trunc, ln) -> LieAlgebraElement:
    tag = _literal_tag(v for v, _ in e.values())
    var = Variable(tag, r)
    terms = {}
    for key, (value, lineno) in e.items():
        m = _ELEMENT_KEY.match(key.replace(" ", ""))
        if not m:
            raise ParseError(f"bad element key {key!r} (use h[i] or x[i] / x[(vector)])", lineno, 1)
        kind, ref = m.groups()
        if kind == "h":
            i = int(ref) - 1
            if not 0 <= i < rs.rank:
                raise ParseError(f"h index {i + 1} out of range 1..{rs.rank}", lineno, 1)
        elif ref.startswith("("):
            vec = tuple(int(c) for c in ref.strip("()").split(",") if c.strip())
            try:
                i = rs.root_index(vec)
            except LogahoricError as exc:
                raise ParseError(str(exc), lineno, 1) from None
        else:
            i = int(ref) - 1
            if not 0 <= i < len(rs.roots):
                raise ParseError(f"root index {i + 1} out of range 1..{len(rs.roots)}", lineno, 1)
        if (kind, i) in terms:
            raise ParseError(f"duplicate entry for {key}", lineno, 1)
        terms[(kind, i)] = _parse_series_at(value, r, trunc, lineno, tag)
    return LieAlgebraElement.build(rs, var, trunc if not terms else min(s.truncation for s in terms.values()), terms)


def _build_matrix(datum: ParabolicLocalDatum, e, trunc, ln) -> LaurentMatrix:
    n = datum.n
    tag = _literal_tag(v for v, _ in e.values())
    var = Variable(tag, datum.r)
    cells = {}
    for key, (value, lineno) in e.items():
        m = _MATRIX_KEY.match(key.replace(" ", ""))
        if not m:
            raise ParseError(f"bad matrix key {key!r} (use omega[i][j])", lineno, 1)
        i, j = int(m.group(1)) - 1, int(m.group(2)) - 1
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"matrix index out of range 1..{n}", lineno, 1)
        if (i, j) in cells:
            raise ParseError(f"duplicate entry omega[{i + 1}][{j + 1}]", lineno, 1)
        cells[i, j] = _parse_series_at(value, datum.r, trunc, lineno, tag)
    n_trunc = min([s.truncation for s in cells.values()], default=trunc)
    zero = LaurentSeries.zero(var, n_trunc)
    m = LaurentMatrix.build([[cells.get((i, j), zero) for j in range(n)] for i in range(n)])
    return permute_matrix(m, datum.permutation)


def _build_bundle(by_name) -> ParabolicBundleGlobal:
    _, ln, e = by_name["bundle"][0]
    rank, rl = _get(e, "rank")
    deg, dl = _get(e, "degree")
    genus, gl = _get(e, "genus", required=False)
    lines, ll = _get(e, "lines", required=False)
    rank = _int(rank, rl, "rank")
    weights = {}
    for label, pl, pe in by_name.get("point", []):
        w, wl = _get(pe, "weights")
        if not isinstance(w, list) or any(isinstance(x, (list, str)) for x in w):
            raise ParseError("weights must be a list of rationals", wl)
        if len(w) != rank:
            raise ParseError(f"point {label}: {len(w)} weights for rank {rank}", wl)
        weights[label] = w
    try:
        return ParabolicBundleGlobal.from_weights(
            rank,
            _int(deg, dl, "degree"),
            weights,
            line_degrees=None if lines is None else tuple(_int_list(lines, ll, "lines")),
            genus=None if genus is None else _int(genus, gl, "genus"),
        )
    except LogahoricError as exc:
        raise ParseError(str(exc), ln) from None


def _build_decomposition(bundle, label, e, ln):
    blocks, bl = _get(e, "blocks")
    degs, dl = _get(e, "degrees")
    chis, cl = _get(e, "characters", required=False)
    if not isinstance(blocks, list):
        raise ParseError("blocks must be a list of index lists", bl)
    blocks = [tuple(i - 1 for i in _int_list(b, bl, "block")) for b in blocks]
    d = LeviDecomposition(tuple(blocks), tuple(_int_list(degs, dl, "degrees")), label)
    try:
        d.validate(bundle)
    except LogahoricError as exc:
        raise ParseError(str(exc), ln) from None
    if chis is not None:
        if not isinstance(chis, list):
            raise ParseError("characters must be a list of integer lists", cl)
        chis = [tuple(_int_list(c, cl, "character")) for c in chis]
        if any(len(c) != len(blocks) for c in chis):
            raise ParseError("each character needs one exponent per block", cl)
    return d, chis


# emitting


def emit_problem(prob: ProblemFile) -> str:
    """Text that parses back to an equal problem."""
    out = []
    if prob.truncation is not None:
        out.append(f"truncation = {prob.truncation}")
    rs = prob.root_system
    if rs is not None:
        out.append("")
        out.append("[algebra]")
        if rs.kind == "A":
            out += ["type = A", f"rank = {rs.rank}"]
        elif rs.kind == "GL":
            out += ["type = GL", f"rank = {rs.rank}"]
        else:
            out.append(f"roots = {_fmt([list(a) for a in rs.roots])}")
    if prob.theta is not None:
        out += ["", "[theta]", f"r = {prob.theta.r}", f"theta = {_fmt(prob.theta.components)}"]
    if prob.datum is not None:
        out += ["", "[parabolic]", f"r = {prob.datum.r}", f"p = {_fmt(prob.datum.original_weights)}"]
    for name in ("element", "element2"):
        x = getattr(prob, name)
        if x is not None:
            out += ["", f"[{name}]"]
            # a zero element still needs one entry to carry its variable and order
            items = [(label, s) for label, s in x.items() if not s.is_zero()] or [next(iter(x.items()))]
            out += [f"{kind}[{i + 1}] : {format_series(s)}" for (kind, i), s in items]
    if prob.matrix is not None:
        out += ["", "[matrix]"]
        perm, m = prob.datum.permutation, prob.matrix
        cells = sorted(((perm[a], perm[b]), m[a, b]) for a in range(m.n) for b in range(m.n))
        items = [(ij, s) for ij, s in cells if not s.is_zero()] or cells[:1]
        out += [f"omega[{i + 1}][{j + 1}] = {format_series(s)}" for (i, j), s in items]
    b = prob.bundle
    if b is not None:
        out += ["", "[bundle]", f"rank = {b.rank}", f"degree = {b.degree}"]
        if b.genus is not None:
            out.append(f"genus = {b.genus}")
        if b.line_degrees is not None:
            out.append(f"lines = {_fmt(b.line_degrees)}")
        for label, _ in b.points:
            out += ["", f"[point {label}]", f"weights = {_fmt(b.local_weights(label))}"]
    for d, chis in prob.decompositions:
        out += ["", f"[decomposition {d.name}]", f"blocks = {_fmt([[i + 1 for i in blk] for blk in d.blocks])}"]
        out.append(f"degrees = {_fmt(d.degrees)}")
        if chis is not None:
            out.append(f"characters = {_fmt([list(c) for c in chis])}")
    return "\n".join(out).lstrip("\n") + "\n"
