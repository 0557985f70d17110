"""
Line-oriented text formats for algebras and modules.

Algebra files::

    rank 2
    scalar-group 1
    q 2 1 = 1
    embedding primes 2

Module files name an algebra file or repeat its lines, then list relations::

    algebra plane.alg
    relation 1 + u1 + u2
    weights 0

Blank lines and lines starting with # are ignored. Indices are 1-based.

"""

import os
from dataclasses import dataclass

from .elements import QuantumTorus
from .exceptions import ParseError, QTorusError
from .fields import ScalarEmbedding, to_rational
from .modules import CyclicModulePresentation
from .pairing import QTorusPresentation, ScalarGroup

__all__ = [
    "ModuleFile",
    "dump_algebra",
    "dump_module",
    "load_algebra",
    "load_module",
    "parse_algebra",
    "parse_module",
    "parse_vector",
    "parse_vectors",
]

_ALGEBRA_KEYWORDS = {"rank", "scalar-group", "q", "embedding"}


def _lines(text):
    for number, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield number, line


def _int(token, number):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", number)


def parse_vector(text, number=None):
    """
    Parse "a1,...,an" (parentheses optional) as a tuple of integers.

    """
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if not text.strip():
        return ()
    return tuple(_int(token.strip(), number) for token in text.split(","))


def parse_vectors(text, number=None):
    """
    Parse vectors separated by semicolons.

    """
    return [parse_vector(part, number) for part in text.split(";") if part.strip()]


def parse_algebra(text):
    """
    Parse an algebra file and return the QuantumTorus it describes.

    """
    rank = group = embedding = None
    entries = {}
    for number, line in _lines(text):
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "rank":
            rank = _int(rest, number)
            if rank < 0:
                raise ParseError("rank must be nonnegative", number)
        elif keyword == "scalar-group":
            tokens = rest.split()
            if not 1 <= len(tokens) <= 2:
                raise ParseError("expected 'scalar-group D [M]'", number)
            try:
                group = ScalarGroup(*(_int(t, number) for t in tokens))
            except QTorusError as exc:
                raise ParseError(str(exc), number)
        elif keyword == "q":
            if rank is None or group is None:
                raise ParseError(
                    "'q' lines must follow 'rank' and 'scalar-group'", number
                )
            indices, equals, value = rest.partition("=")
            indices = indices.split()
            if not equals or len(indices) != 2:
                raise ParseError("expected 'q I J = a1,...,aD [; t]'", number)
            i, j = (_int(index, number) - 1 for index in indices)
            if not (0 <= i < rank and 0 <= j < rank) or i == j:
                raise ParseError(f"bad pairing index ({i + 1},{j + 1})", number)
            free, _, torsion = value.partition(";")
            try:
                t = _int(torsion.strip(), number) if torsion else 0
                value = group.value(parse_vector(free, number), t)
            except QTorusError as exc:
                raise ParseError(str(exc), number)
            if (j, i) in entries and entries[(j, i)] != -value:
                raise ParseError(
                    f"pairing is not alternating at ({i + 1},{j + 1})", number
                )
            entries[(i, j)] = value
        elif keyword == "embedding":
            if group is None:
                raise ParseError("'embedding' must follow 'scalar-group'", number)
            kind, _, images = rest.partition(" ")
            try:
                if kind == "primes":
                    embedding = ScalarEmbedding.primes(
                        group, [_int(p, number) for p in images.split()]
                    )
                elif kind == "symbols":
                    embedding = ScalarEmbedding.symbolic(group)
                else:
                    raise ParseError(f"unknown embedding {kind!r}", number)
            except ParseError:
                raise
            except QTorusError as exc:
                raise ParseError(str(exc), number)
        else:
            raise ParseError(f"unknown keyword {keyword!r}", number)
    if rank is None:
        raise ParseError("missing 'rank' line")
    group = group or ScalarGroup(1, 0)
    presentation = QTorusPresentation.from_entries(rank, group, entries)
    return QuantumTorus(presentation, embedding or ScalarEmbedding.symbolic(group))


@dataclass(frozen=True)
class ModuleFile:
    module: CyclicModulePresentation
    weights: tuple = ()


def parse_module(text, base_dir=".", algebra=None):
    """
    Parse a module file; "algebra PATH" is read relative to base_dir.

    A file listing only relations is read over the given algebra. When both
    are present they must agree.

    """
    given = algebra
    algebra_lines = []
    algebra = None
    relations = []
    weights = ()
    for number, line in _lines(text):
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword in _ALGEBRA_KEYWORDS:
            algebra_lines.append((number, line))
        elif keyword == "algebra":
            path = os.path.join(base_dir, rest)
            algebra = _agree(load_algebra(path), given, number)
        elif keyword in ("relation", "weights"):
            if algebra is None:
                if algebra_lines:
                    algebra = _agree(_inline_algebra(algebra_lines), given, number)
                elif given is not None:
                    algebra = given
                else:
                    raise ParseError(f"'{keyword}' before the algebra", number)
            if keyword == "relation":
                try:
                    relation = algebra.parse(rest)
                except ParseError as exc:
                    raise ParseError(str(exc), number)
                if relation.is_zero():
                    raise ParseError("relations must be nonzero", number)
                relations.append(relation)
            else:
                try:
                    weights = tuple(to_rational(w) for w in rest.split())
                except QTorusError as exc:
                    raise ParseError(str(exc), number)
        else:
            raise ParseError(f"unknown keyword {keyword!r}", number)
    if algebra is None:
        if algebra_lines:
            algebra = _agree(_inline_algebra(algebra_lines), given)
        elif given is not None:
            algebra = given
        else:
            raise ParseError("the module file names no algebra")
    if weights and len(weights) != 1:
        raise ParseError("a cyclic module takes a single weight")
    return ModuleFile(CyclicModulePresentation(algebra, relations), weights)


def _agree(algebra, given, number=None):
    if given is not None and algebra != given:
        raise ParseError("the module file describes another algebra", number)
    return algebra


def _inline_algebra(lines):
    # Blank lines keep the original line numbers in errors.
    width = max(number for number, _ in lines)
    text = [""] * width
    for number, line in lines:
        text[number - 1] = line
    return parse_algebra("\n".join(text))


def load_algebra(path):
    with open(path, encoding="utf-8") as handle:
        return parse_algebra(handle.read())


def load_module(path, algebra=None):
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    return parse_module(text, os.path.dirname(path) or ".", algebra)


def dump_algebra(algebra):
    P = algebra.presentation
    group = P.group
    lines = [f"rank {P.rank}"]
    if group.torsion_modulus:
        lines.append(f"scalar-group {group.free_rank} {group.torsion_modulus}")
    else:
        lines.append(f"scalar-group {group.free_rank}")
    for i in range(P.rank):
        for j in range(i):
            value = P.pairing[i][j]
            if value:
                lines.append(f"q {i + 1} {j + 1} = {value}")
    embedding = algebra.embedding
    if embedding.kind == "primes":
        images = " ".join(algebra.field.format(image) for image in embedding.images)
        lines.append(f"embedding primes {images}".rstrip())
    else:
        lines.append("embedding symbols")
    return "\n".join(lines) + "\n"


def dump_module(M, algebra_path=None, weights=()):
    """
    Return the text of a module file, with the algebra inline unless a
    path is given.

    """
    if algebra_path is None:
        text = dump_algebra(M.algebra)
    else:
        text = f"algebra {algebra_path}\n"
    for relation in M.relations:
        text += f"relation {relation}\n"
    if weights:
        text += "weights " + " ".join(str(w) for w in weights) + "\n"
    return text
