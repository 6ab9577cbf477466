"""Located access to a restricted YAML subset.

Documents are composed (not constructed) so every node keeps its source
mark and scalars keep their exact text; ``1.10`` stays ``"1.10"``.
Anchors, aliases, explicit tags and multi-document streams are rejected.
"""

from __future__ import annotations

import yaml
from yaml.nodes import MappingNode, Node, ScalarNode, SequenceNode

from ..errors import ParseError, SourceLocation

NULL_TAG = "tag:yaml.org,2002:null"
Loader = getattr(yaml, "CSafeLoader", yaml.SafeLoader)


class Reader:
    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source

    def loc(self, node_or_mark) -> SourceLocation:
        mark = getattr(node_or_mark, "start_mark", node_or_mark)
        if mark is None:
            return SourceLocation(self.source, 1, 1)
        return SourceLocation(self.source, mark.line + 1, mark.column + 1)

    def fail(self, node_or_mark, message: str, cls=ParseError):
        raise cls(message, self.loc(node_or_mark))

    def compose(self) -> Node | None:
        try:
            for event in yaml.parse(self.text, Loader=Loader):
                if isinstance(event, yaml.AliasEvent):
                    self.fail(event, "aliases are not supported")
                if getattr(event, "anchor", None) is not None:
                    self.fail(event, "anchors are not supported")
                tag = getattr(event, "tag", None)
                if tag is not None and tag != "!":
                    self.fail(event, f"explicit tags are not supported ({tag})")
            documents = list(yaml.compose_all(self.text, Loader=Loader))
        except yaml.MarkedYAMLError as exc:
            mark = exc.problem_mark or exc.context_mark
            problem = exc.problem or exc.context or "invalid YAML"
            raise ParseError(f"invalid YAML: {problem}", self.loc(mark)) from None
        except yaml.YAMLError as exc:
            raise ParseError(f"invalid YAML: {exc}", SourceLocation(self.source, 1, 1)) from None
        if len(documents) > 1:
            self.fail(documents[1], "expected a single YAML document")
        return documents[0] if documents else None

    # --- shape helpers -------------------------------------------------

    def mapping(self, node: Node, what: str, allowed: set[str], required: set[str] = frozenset()
                ) -> dict[str, tuple[ScalarNode, Node]]:
        if not isinstance(node, MappingNode):
            self.fail(node, f"{what} must be a mapping")
        out: dict[str, tuple[ScalarNode, Node]] = {}
        for key_node, value_node in node.value:
            if not isinstance(key_node, ScalarNode):
                self.fail(key_node, f"{what}: keys must be plain strings")
            key = key_node.value
            if key in out:
                self.fail(key_node, f"{what}: duplicate key {key!r}")
            if key not in allowed:
                self.fail(key_node, f"{what}: unknown key {key!r}")
            out[key] = (key_node, value_node)
        for key in sorted(required):
            if key not in out:
                self.fail(node, f"{what}: missing required key {key!r}")
        return out

    def sequence(self, node: Node, what: str) -> list[Node]:
        if isinstance(node, ScalarNode) and node.tag == NULL_TAG:
            return []
        if not isinstance(node, SequenceNode):
            self.fail(node, f"{what} must be a list")
        return list(node.value)

    def string(self, node: Node, what: str, allow_empty: bool = False) -> str:
        if not isinstance(node, ScalarNode):
            self.fail(node, f"{what} must be a scalar")
        if node.tag == NULL_TAG and node.style is None:
            self.fail(node, f"{what} is missing a value")
        if not allow_empty and not node.value:
            self.fail(node, f"{what} must not be empty")
        return node.value

    def optional_string(self, node: Node, what: str) -> str | None:
        if isinstance(node, ScalarNode) and node.tag == NULL_TAG and node.style is None:
            return None
        return self.string(node, what)
