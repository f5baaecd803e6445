"""Role hierarchies: single-root DAGs with ancestor-set queries.

A role may have several parents (distinct branches can merge), so the
structure is a rooted DAG rather than a tree.  The ancestor set of a
role contains every role on any path from the root down to it, the role
itself included.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

from .errors import CycleDetected, MultipleRoots, UnknownRole, UnreachableRole


@dataclass(frozen=True, order=True)
class RoleId:
    org: str
    name: str

    def __str__(self) -> str:
        return f"{self.org}/{self.name}"


class RoleHierarchy:
    """Validated single-root role DAG for one organization."""

    def __init__(self, org: str, root: RoleId, edges: Iterable[Tuple[RoleId, RoleId]]):
        edges = list(edges)
        for parent, child in edges:
            if parent.org != org or child.org != org:
                raise UnknownRole(f"edge {parent}->{child} crosses out of org {org}")
        if root.org != org:
            raise UnknownRole(f"root {root} not in org {org}")
        self.org = org
        self.root = root
        self.parents: Dict[RoleId, Set[RoleId]] = {root: set()}
        self.children: Dict[RoleId, Set[RoleId]] = {root: set()}
        for parent, child in edges:
            for r in (parent, child):
                self.parents.setdefault(r, set())
                self.children.setdefault(r, set())
            self.parents[child].add(parent)
            self.children[parent].add(child)
        self._validate()
        self._ancestors: Dict[RoleId, FrozenSet[RoleId]] = {}

    def _validate(self) -> None:
        for role, ps in self.parents.items():
            if role != self.root and not ps:
                raise MultipleRoots(f"{role} has no parent; only {self.root} may be a root")
        if self.parents[self.root]:
            raise CycleDetected(f"root {self.root} has parents")
        # Kahn's algorithm: leftovers indicate a cycle
        indeg = {r: len(ps) for r, ps in self.parents.items()}
        queue = [self.root]
        seen = 0
        while queue:
            r = queue.pop()
            seen += 1
            for c in self.children[r]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    queue.append(c)
        if seen != len(self.parents):
            leftover = sorted(r for r, d in indeg.items() if d > 0)
            raise CycleDetected(f"cycle through {leftover}")
        reachable = {self.root}
        stack = [self.root]
        while stack:
            for c in self.children[stack.pop()]:
                if c not in reachable:
                    reachable.add(c)
                    stack.append(c)
        missing = set(self.parents) - reachable
        if missing:
            raise UnreachableRole(f"not reachable from root: {sorted(missing)}")

    @property
    def roles(self) -> FrozenSet[RoleId]:
        return frozenset(self.parents)

    def __contains__(self, role: RoleId) -> bool:
        return role in self.parents

    def ancestor_set(self, role: RoleId) -> FrozenSet[RoleId]:
        """All roles on any root-to-role path, including the role itself."""
        if role not in self.parents:
            raise UnknownRole(str(role))
        cached = self._ancestors.get(role)
        if cached is not None:
            return cached
        members = {role}
        stack = [role]
        while stack:
            for parent in self.parents[stack.pop()]:
                if parent not in members:
                    members.add(parent)
                    stack.append(parent)
        result = frozenset(members)
        self._ancestors[role] = result
        return result

    def is_qualified(self, held: RoleId, target: RoleId) -> bool:
        """True iff holding `held` grants access to `target`'s ciphertexts."""
        if held not in self.parents:
            raise UnknownRole(str(held))
        return held in self.ancestor_set(target)


def build_hierarchy(
    org: str, root: RoleId, edges: Iterable[Tuple[RoleId, RoleId]]
) -> RoleHierarchy:
    return RoleHierarchy(org, root, edges)


def parse_hierarchy(org: str, text: str) -> RoleHierarchy:
    """Parse the line-oriented description: a `root:` header then `parent -> child` lines."""
    root = None
    edges: List[Tuple[RoleId, RoleId]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("root:"):
            if root is not None:
                raise MultipleRoots(f"line {lineno}: second root header")
            root = RoleId(org, line[len("root:") :].strip())
        elif "->" in line:
            parent, _, child = line.partition("->")
            edges.append((RoleId(org, parent.strip()), RoleId(org, child.strip())))
        else:
            raise UnknownRole(f"line {lineno}: cannot parse {line!r}")
    if root is None:
        raise MultipleRoots("missing root: header")
    return build_hierarchy(org, root, edges)


def format_hierarchy(h: RoleHierarchy) -> str:
    lines = [f"root: {h.root.name}"]
    for parent in sorted(h.children):
        for child in sorted(h.children[parent]):
            lines.append(f"{parent.name} -> {child.name}")
    return "\n".join(lines) + "\n"
