"""Group descriptions, the permutation catalog format and ``--group`` strings."""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

from .core import FiniteGroup
from .families import (
    CyclicGroup,
    DihedralGroup,
    HeisenbergGroup,
    PermutationGroup,
    ProductGroup,
    SL2Group,
    SymmetricGroup,
)

KINDS = ("cyclic", "dihedral", "symmetric", "sl2", "heisenberg", "product", "permutation")


class CatalogError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class GroupSpec:
    """Description of a group; ``realize`` turns it into a FiniteGroup.

    ``param`` is n, q or p for the single-parameter families; products carry
    their factors in ``parts``; permutation groups carry ``degree`` and
    ``generators`` (0-based image tuples).
    """

    kind: str
    param: int = 0
    parts: tuple[GroupSpec, ...] = ()
    degree: int = 0
    generators: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == "product" and not self.parts:
            raise ValueError("product needs at least one factor")
        if self.kind == "permutation":
            if not self.generators:
                raise ValueError("empty generator set")
            for g in self.generators:
                if len(g) != self.degree or sorted(g) != list(range(self.degree)):
                    raise ValueError(f"not a permutation of 0..{self.degree - 1}: {list(g)}")

    @classmethod
    def cyclic(cls, n):
        return cls("cyclic", n)

    @classmethod
    def dihedral(cls, n):
        return cls("dihedral", n)

    @classmethod
    def symmetric(cls, n):
        return cls("symmetric", n)

    @classmethod
    def sl2(cls, q):
        return cls("sl2", q)

    @classmethod
    def heisenberg(cls, p):
        return cls("heisenberg", p)

    @classmethod
    def product(cls, *parts: GroupSpec):
        return cls("product", parts=tuple(parts))

    @classmethod
    def permutation(cls, degree: int, generators: Iterable[Iterable[int]]):
        return cls(
            "permutation",
            degree=degree,
            generators=tuple(tuple(int(v) for v in g) for g in generators),
        )

    def __str__(self) -> str:
        if self.kind == "product":
            return "product:" + "+".join(str(p) for p in self.parts)
        if self.kind == "permutation":
            return f"permutation:{self.degree}/{len(self.generators)}"
        return f"{self.kind}:{self.param}"


def realize(spec: GroupSpec, name: str | None = None) -> FiniteGroup:
    kind = spec.kind
    if kind == "cyclic":
        G = CyclicGroup(spec.param)
    elif kind == "dihedral":
        G = DihedralGroup(spec.param)
    elif kind == "symmetric":
        G = SymmetricGroup(spec.param)
    elif kind == "sl2":
        G = SL2Group(spec.param)
    elif kind == "heisenberg":
        G = HeisenbergGroup(spec.param)
    elif kind == "product":
        G = ProductGroup([realize(p) for p in spec.parts])
    else:
        G = PermutationGroup(spec.degree, spec.generators)
    if name:
        G.name = name
    return G


def load_catalog(source: IO[bytes] | IO[str] | bytes | str) -> list[tuple[str, GroupSpec]]:
    """Parse the line-oriented permutation catalog.

    Each record is ``name degree k img_1 ... img_k`` with each image a
    comma-separated list of ``degree`` 0-based points. Blank lines and lines
    starting with ``#`` are skipped.
    """
    if isinstance(source, (bytes, str)):
        data = source
    else:
        data = source.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise CatalogError(data[: exc.start].count(b"\n") + 1, "non-ASCII byte") from None

    out: list[tuple[str, GroupSpec]] = []
    seen: set[str] = set()
    for lineno, line in enumerate(io.StringIO(data), start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split(" ")
        if len(fields) < 3:
            raise CatalogError(lineno, "expected 'name degree k img_1 ... img_k'")
        name = fields[0]
        try:
            degree, k = int(fields[1]), int(fields[2])
        except ValueError:
            raise CatalogError(lineno, "degree and generator count must be integers") from None
        if degree < 1:
            raise CatalogError(lineno, f"degree must be positive, got {degree}")
        if k < 1:
            raise CatalogError(lineno, "empty generator set")
        if len(fields) != 3 + k:
            raise CatalogError(lineno, f"expected {k} generators, found {len(fields) - 3}")
        gens = []
        for img in fields[3:]:
            try:
                g = tuple(int(v) for v in img.split(","))
            except ValueError:
                raise CatalogError(lineno, f"malformed image list {img!r}") from None
            if len(g) != degree:
                raise CatalogError(lineno, f"image list has {len(g)} entries, expected {degree}")
            if sorted(g) != list(range(degree)):
                raise CatalogError(lineno, f"not a permutation: {img}")
            gens.append(g)
        if name in seen:
            raise CatalogError(lineno, f"duplicate name {name!r}")
        seen.add(name)
        out.append((name, GroupSpec.permutation(degree, gens)))
    return out


def dump_catalog(entries: Iterable[tuple[str, GroupSpec]]) -> str:
    lines = []
    for name, spec in entries:
        imgs = " ".join(",".join(str(v) for v in g) for g in spec.generators)
        lines.append(f"{name} {spec.degree} {len(spec.generators)} {imgs}")
    return "".join(line + "\n" for line in lines)


def parse_descriptor(text: str) -> tuple[str, GroupSpec]:
    """Parse a ``--group`` descriptor into ``(display name, spec)``.

    Grammar: ``cyclic:N``, ``dihedral:N``, ``symmetric:N``, ``sl2:Q``,
    ``heisenberg:P``, ``product:SPEC+SPEC[+...]``, ``catalog:FILE#NAME``.
    """
    kind, sep, rest = text.partition(":")
    if not sep or not rest:
        raise ValueError(f"bad group descriptor {text!r}")
    if kind == "product":
        parts = [parse_descriptor(p)[1] for p in rest.split("+")]
        return text, GroupSpec.product(*parts)
    if kind == "catalog":
        path, hash_, name = rest.rpartition("#")
        if not hash_ or not path or not name:
            raise ValueError(f"catalog descriptor needs FILE#NAME, got {text!r}")
        with open(Path(path), "rb") as fh:
            entries = dict(load_catalog(fh))
        if name not in entries:
            raise ValueError(f"no group named {name!r} in {path}")
        return name, entries[name]
    if kind not in ("cyclic", "dihedral", "symmetric", "sl2", "heisenberg"):
        raise ValueError(f"unknown group family {kind!r}")
    try:
        value = int(rest)
    except ValueError:
        raise ValueError(f"bad parameter in {text!r}") from None
    if value < 1:
        raise ValueError(f"parameter must be positive in {text!r}")
    return text, GroupSpec(kind, value)
