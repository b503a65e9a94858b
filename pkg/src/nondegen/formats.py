"""Plain-text file formats shared by every sub-command.

All formats accept ``#`` comment lines.  Leading comment lines are kept by the
``loads_*`` functions (as ``.comments``) so a file can be written back byte for
byte.  Rationals are written ``p/q`` or ``p``; decimal points are rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence

from .errors import FormatError
from .geometry import Hyperplane, RationalPoint, Sphere

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL.match(text):
        raise FormatError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {text!r}") from None


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def header_comments(text: str) -> List[str]:
    out = []
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        out.append(line)
    return out


def _body(text: str, keep_blank=False):
    """Non-comment lines after the header, with 1-based line numbers."""
    for no, line in enumerate(text.splitlines(), 1):
        if line.lstrip().startswith("#"):
            continue
        if not line.strip() and not keep_blank:
            continue
        yield no, line


def _head(comments: Sequence[str]) -> str:
    return "".join(c.rstrip("\n") + "\n" for c in comments)


def _dim_line(lines, what):
    try:
        no, line = next(lines)
    except StopIteration:
        raise FormatError(f"empty {what} file") from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != "dim" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise FormatError(f"line {no}: expected 'dim d', got {line!r}")
    return int(parts[1])


def _coords(no, fields, d):
    if len(fields) != d:
        raise FormatError(f"line {no}: expected {d} coordinates, got {len(fields)}")
    try:
        return tuple(parse_rational(f) for f in fields)
    except FormatError as e:
        raise FormatError(f"line {no}: {e}") from None


@dataclass
class PointFile:
    dim: int
    points: List[RationalPoint]
    comments: List[str] = field(default_factory=list)


@dataclass
class SphereFile:
    dim: int
    spheres: List[Sphere]
    comments: List[str] = field(default_factory=list)


@dataclass
class PlaneFile:
    dim: int
    planes: List[Hyperplane]
    comments: List[str] = field(default_factory=list)


def dumps_points(points: Sequence[RationalPoint], dim: int = None, comments=()) -> str:
    if dim is None:
        if not points:
            raise FormatError("dimension of an empty point list must be given")
        dim = len(points[0])
    rows = [" ".join(format_rational(c) for c in p) for p in points]
    return _head(comments) + f"dim {dim}\n" + "".join(r + "\n" for r in rows)


def loads_points(text: str) -> PointFile:
    lines = _body(text)
    d = _dim_line(lines, "point")
    pts = [_coords(no, line.split(), d) for no, line in lines]
    return PointFile(d, pts, header_comments(text))


def _split_semicolon(no, line, what):
    if line.count(";") != 1:
        raise FormatError(f"line {no}: expected one ';' in {what} line")
    return line.split(";")


def dumps_spheres(spheres: Sequence[Sphere], dim: int = None, comments=()) -> str:
    if dim is None:
        if not spheres:
            raise FormatError("dimension of an empty sphere list must be given")
        dim = spheres[0].dim
    rows = [
        " ".join(format_rational(c) for c in s.center) + " ; " + format_rational(s.sq_radius)
        for s in spheres
    ]
    return _head(comments) + f"dim {dim}\n" + "".join(r + "\n" for r in rows)


def loads_spheres(text: str) -> SphereFile:
    lines = _body(text)
    d = _dim_line(lines, "sphere")
    out = []
    for no, line in lines:
        left, right = _split_semicolon(no, line, "sphere")
        center = _coords(no, left.split(), d)
        r2 = _coords(no, right.split(), 1)[0]
        try:
            out.append(Sphere(center, r2))
        except ValueError as e:
            raise FormatError(f"line {no}: {e}") from None
    return SphereFile(d, out, header_comments(text))


def dumps_planes(planes: Sequence[Hyperplane], dim: int = None, comments=()) -> str:
    if dim is None:
        if not planes:
            raise FormatError("dimension of an empty plane list must be given")
        dim = planes[0].dim
    rows = [
        " ".join(format_rational(c) for c in h.normal) + " ; " + format_rational(h.offset)
        for h in planes
    ]
    return _head(comments) + f"dim {dim}\n" + "".join(r + "\n" for r in rows)


def loads_planes(text: str) -> PlaneFile:
    lines = _body(text)
    d = _dim_line(lines, "plane")
    out = []
    for no, line in lines:
        left, right = _split_semicolon(no, line, "plane")
        normal = _coords(no, left.split(), d)
        offset = _coords(no, right.split(), 1)[0]
        try:
            out.append(Hyperplane(normal, offset))
        except ValueError as e:
            raise FormatError(f"line {no}: {e}") from None
    return PlaneFile(d, out, header_comments(text))


# -- graphs ----------------------------------------------------------------


def dumps_graph(graph, comments=()) -> str:
    edges = sorted((i, j) for j, nb in enumerate(graph.neighbors) for i in nb)
    return _head(comments) + f"{graph.m} {graph.n}\n" + "".join(f"{i} {j}\n" for i, j in edges)


def _ints(no, line, k):
    parts = line.split()
    if len(parts) != k or not all(re.fullmatch(r"\d+", p) for p in parts):
        raise FormatError(f"line {no}: expected {k} nonnegative integers, got {line!r}")
    return [int(p) for p in parts]


def loads_graph(text: str):
    from .incidence import BipartiteIncidenceGraph

    lines = _body(text)
    try:
        no, line = next(lines)
    except StopIteration:
        raise FormatError("empty graph file") from None
    m, n = _ints(no, line, 2)
    nbrs = [set() for _ in range(n)]
    prev = None
    for no, line in lines:
        i, j = _ints(no, line, 2)
        if i >= m or j >= n:
            raise FormatError(f"line {no}: edge ({i}, {j}) out of range for {m} x {n}")
        if prev is not None and (i, j) <= prev:
            raise FormatError(f"line {no}: edges must be sorted and distinct")
        prev = (i, j)
        nbrs[j].add(i)
    g = BipartiteIncidenceGraph(m, [sorted(s) for s in nbrs])
    g.comments = header_comments(text)
    return g


# -- set systems -----------------------------------------------------------


def dumps_setsystem(system, comments=()) -> str:
    rows = [" ".join(str(e) for e in sorted(s)) for s in system.sets]
    return _head(comments) + f"ground {system.ground_size}\n" + "".join(r + "\n" for r in rows)


def loads_setsystem(text: str):
    from .setsystem import SetSystem

    lines = _body(text, keep_blank=True)
    try:
        no, line = next(lines)
    except StopIteration:
        raise FormatError("empty set-system file") from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != "ground" or not parts[1].isdigit():
        raise FormatError(f"line {no}: expected 'ground g', got {line!r}")
    g = int(parts[1])
    sets = []
    for no, line in lines:
        fields = line.split()
        if not all(f.isdigit() for f in fields):
            raise FormatError(f"line {no}: set elements must be nonnegative integers")
        elems = [int(f) for f in fields]
        if elems != sorted(set(elems)):
            raise FormatError(f"line {no}: set elements must be sorted and distinct")
        sets.append(frozenset(elems))
    try:
        system = SetSystem(g, sets)
    except ValueError as e:
        raise FormatError(str(e)) from None
    system.comments = header_comments(text)
    return system


# -- reports ---------------------------------------------------------------


def dumps_report(report) -> str:
    out = [f"verdict {'true' if report.verdict else 'false'}"]
    for w in report.witnesses:
        row = f"{w.q} {w.other} {w.intersection} {w.degree}"
        out.append(row if not report.dual else f"{w.side} {row}")
    return "".join(line + "\n" for line in out)


def dumps_certificate(cert) -> str:
    out = [
        f"{s.q1} {s.q2} {s.setminus_size} {s.charge.numerator}/{s.charge.denominator}"
        for s in cert.steps
    ]
    out.append(f"final_degree {cert.final_degree}")
    b = cert.certified_bound
    out.append(f"bound {b.numerator}/{b.denominator}")
    return "".join(line + "\n" for line in out)
