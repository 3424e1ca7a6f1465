"""Requirement table: named builtin constructors gated by groups.

A requirements file assigns each named requirement slot a constructor of
some kind and an id.  An article's ``requirements`` directive enables
groups; a constructor is *present* only when it is assigned in the file
and its group is enabled.  Absence is a distinct state (``None``), never
an index value, and every lookup site has to deal with it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RequirementFileError
from .logic import Attr, TypeExpr

GROUPS: dict[str, tuple[str, ...]] = {
    "HIDDEN": ("Object", "Set", "Equality", "Membership"),
    "BOOLE": ("Empty", "EmptySet", "Union", "Intersection", "Difference", "SymDiff", "Meets"),
    "SUBSET": ("Element", "PowerSet", "Subset", "SubsetMode"),
    "NUMERALS": ("Succ", "Natural", "NatSet", "Zero", "ZeroAttr"),
    "REAL": ("LessOrEqual", "Positive", "Negative"),
    "ARITHM": ("Add", "Mul", "Neg", "Inv", "Sub", "Div", "ImaginaryUnit", "Complex"),
}

# enabling key requires all values enabled too
GROUP_DEPS: dict[str, tuple[str, ...]] = {
    "ARITHM": ("NUMERALS", "REAL"),
}

KINDS = ("mode", "func", "pred", "attr")

_GROUP_OF = {name: group for group, names in GROUPS.items() for name in names}


@dataclass(frozen=True)
class Constructor:
    kind: str
    cid: int


@dataclass
class RequirementFile:
    """Parsed requirement file: name -> constructor, plus group listing."""

    assignments: dict[str, Constructor]
    groups: set[str]


def load_requirements(path: str) -> RequirementFile:
    assignments: dict[str, Constructor] = {}
    groups: set[str] = set()
    current_group: str | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("GROUP"):
                name = line[len("GROUP") :].strip()
                if name not in GROUPS:
                    raise RequirementFileError(f"line {lineno}: unknown group {name!r}")
                current_group = name
                groups.add(name)
                continue
            if "=" not in line:
                raise RequirementFileError(f"line {lineno}: expected NAME = kind:id")
            name, rhs = (part.strip() for part in line.split("=", 1))
            if name not in _GROUP_OF:
                raise RequirementFileError(f"line {lineno}: unknown requirement {name!r}")
            if current_group is None or _GROUP_OF[name] != current_group:
                raise RequirementFileError(f"line {lineno}: {name} listed outside its group")
            if name in assignments:
                raise RequirementFileError(f"line {lineno}: duplicate assignment for {name}")
            if ":" not in rhs:
                raise RequirementFileError(f"line {lineno}: expected kind:id after =")
            kind, _, num = rhs.partition(":")
            kind = kind.strip()
            if kind not in KINDS:
                raise RequirementFileError(f"line {lineno}: unknown kind {kind!r}")
            try:
                cid = int(num.strip())
            except ValueError:
                raise RequirementFileError(f"line {lineno}: bad id {num.strip()!r}") from None
            assignments[name] = Constructor(kind, cid)
    for group in groups:
        missing = [n for n in GROUPS[group] if n not in assignments]
        if missing:
            raise RequirementFileError(f"group {group} incomplete: missing {', '.join(missing)}")
    return RequirementFile(assignments, groups)


class RequirementTable:
    """Per-article view: file assignments filtered by enabled groups."""

    def __init__(self, file: RequirementFile, enabled: set[str]):
        self._file = file
        self.enabled = enabled

    def present(self, name: str) -> bool:
        if name not in self._file.assignments:
            return False
        return _GROUP_OF[name] in self.enabled

    def constructor(self, name: str) -> Constructor | None:
        if not self.present(name):
            return None
        return self._file.assignments[name]

    def cid(self, name: str) -> int | None:
        c = self.constructor(name)
        return None if c is None else c.cid

    def require(self, name: str) -> int:
        c = self.constructor(name)
        if c is None:
            raise KeyError(f"requirement {name} not present")
        return c.cid

    def flex_enabled(self) -> bool:
        # flexary conjunctions lean on both the natural numbers and the order
        return self.present("NatSet") and self.present("LessOrEqual")

    def max_id(self, kind: str) -> int:
        ids = [c.cid for c in self._file.assignments.values() if c.kind == kind]
        return max(ids, default=-1)

    # -- types supplied by the builtin constructors -------------------------

    def object_type(self) -> TypeExpr:
        return TypeExpr(frozenset(), frozenset(), self.require("Object"))

    def set_type(self) -> TypeExpr:
        mode = self.cid("Set")
        if mode is None:
            return self.object_type()
        return TypeExpr(frozenset(), frozenset(), mode)

    def attr_type(self, attr_names: list[str], extra: tuple[Attr, ...] = ()) -> TypeExpr:
        base = self.set_type()
        attrs = frozenset(Attr(True, self.require(n)) for n in attr_names) | frozenset(extra)
        return TypeExpr(attrs, attrs, base.mode, base.args)

    def nat_type(self) -> TypeExpr:
        return self.attr_type(["Natural"])

    def numeral_type(self) -> TypeExpr:
        if self.present("Natural"):
            return self.nat_type()
        return self.set_type()

    def functor_result_type(self, cid: int) -> TypeExpr | None:
        """Result type of a builtin functor, None for user functors."""
        for name in ("Union", "Intersection", "Difference", "SymDiff", "PowerSet", "NatSet"):
            if self.cid(name) == cid:
                return self.set_type()
        if self.cid("EmptySet") == cid:
            return self.attr_type(["Empty"])
        if self.cid("Succ") == cid:
            return self.nat_type()
        if self.cid("Zero") == cid:
            return self.attr_type(["ZeroAttr", "Natural"])
        for name in ("Add", "Mul", "Neg", "Inv", "Sub", "Div", "ImaginaryUnit"):
            if self.cid(name) == cid:
                return self.attr_type(["Complex"])
        return None

    def functor_arity(self, cid: int) -> int | None:
        unary = ("PowerSet", "Succ", "Neg", "Inv")
        nullary = ("EmptySet", "NatSet", "Zero", "ImaginaryUnit")
        binary = ("Union", "Intersection", "Difference", "SymDiff", "Add", "Mul", "Sub", "Div")
        for name in nullary:
            if self.cid(name) == cid:
                return 0
        for name in unary:
            if self.cid(name) == cid:
                return 1
        for name in binary:
            if self.cid(name) == cid:
                return 2
        return None

    def builtin_conditional_clusters(self) -> list[tuple[frozenset[Attr], frozenset[Attr]]]:
        """Attribute implications the order requirement brings along.

        positive -> non negative, non zero; negative -> non positive,
        non zero; zero -> non positive, non negative.
        """
        out: list[tuple[frozenset[Attr], frozenset[Attr]]] = []
        if not (self.present("Positive") and self.present("Negative")):
            return out
        pos = self.require("Positive")
        neg = self.require("Negative")
        zero = self.cid("ZeroAttr")
        pairs = [(pos, [neg]), (neg, [pos])]
        if zero is not None:
            pairs = [(pos, [neg, zero]), (neg, [pos, zero]), (zero, [pos, neg])]
        for guard, targets in pairs:
            out.append(
                (
                    frozenset({Attr(True, guard)}),
                    frozenset(Attr(False, t) for t in targets),
                )
            )
        return out


def enable_groups(file: RequirementFile, names: list[str]) -> tuple[RequirementTable, str | None]:
    """Build the per-article table. Returns (table, error note or None).

    HIDDEN is always on.  A group must be listed in the file and its
    dependencies must be enabled alongside it.
    """
    enabled = {"HIDDEN"} if "HIDDEN" in file.groups else set()
    wanted = set(names) | enabled
    for name in names:
        if name not in GROUPS:
            return RequirementTable(file, enabled), f"unknown requirement group {name}"
        if name not in file.groups:
            return RequirementTable(file, enabled), f"group {name} not in the requirement file"
    for name in wanted:
        for dep in GROUP_DEPS.get(name, ()):
            if dep not in wanted:
                return (
                    RequirementTable(file, enabled),
                    f"group {name} requires {dep}",
                )
    return RequirementTable(file, wanted), None
