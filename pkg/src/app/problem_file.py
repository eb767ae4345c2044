"""Line-oriented problem files: parsing and rendering.

Format (UTF-8, ``#`` starts a comment, whitespace-separated tokens)::

    alphabet <tok> <tok> ...
    relation <tok> <tok> ...          (repeatable)
    word <tok> <tok> ...
    ground <n>
    rel <i> <i> ...                   (repeatable)
    tree
    node <id> arity <k> parent <id|root>
    treerel <id> <id> ...             (repeatable)
    option <key> <value>              (repeatable)

A file holds exactly one problem kind: ``word`` (alphabet and word),
``algebra`` (alphabet, no word), ``system`` (ground and rels) or ``tree``.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from types import MappingProxyType

from homology.errors import HomologyError, ProblemFileError
from homology.grassmann import RootedTree, SetSystem, TreeNode, tree_to_system, word_to_system
from homology.monomial import Alphabet, RelationSet, Word

_KEYWORDS = frozenset({
    "alphabet", "relation", "word", "ground", "rel", "tree", "node", "treerel", "option",
})


class ProblemKind(str, Enum):
    WORD = "word"
    ALGEBRA = "algebra"
    SYSTEM = "system"
    TREE = "tree"


@dataclass(frozen=True)
class ProblemFile:
    """Parsed problem; only the fields of its ``kind`` are populated."""

    kind: ProblemKind
    alphabet: Alphabet | None = None
    relations: RelationSet = field(default_factory=RelationSet)
    word: Word | None = None
    system: SetSystem | None = None
    tree: RootedTree | None = None
    tree_relations: tuple[tuple[str, ...], ...] = ()
    options: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "options", MappingProxyType(dict(self.options)))

    def option(self, key: str, default: str | None = None) -> str | None:
        return self.options.get(key, default)

    def as_system(self) -> SetSystem:
        """Set system of a system, tree or word problem.

        :raises ProblemFileError: For an algebra problem.
        """
        if self.kind is ProblemKind.SYSTEM:
            assert self.system is not None
            return self.system
        if self.kind is ProblemKind.TREE:
            assert self.tree is not None
            return tree_to_system(self.tree, self.tree_relations)
        if self.kind is ProblemKind.WORD:
            assert self.word is not None
            return word_to_system(self.word, self.relations)
        raise ProblemFileError("an algebra problem has no set system")

    def require(self, *kinds: ProblemKind) -> None:
        if self.kind not in kinds:
            expected = " or ".join(k.value for k in kinds)
            raise ProblemFileError(f"expected a {expected} problem, got {self.kind.value}")


# ── Parsing ───────────────────────────────────────────────────────────────────

def _int_token(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ProblemFileError(f"{what} must be an integer, got {token!r}", line) from None


def parse_problem(text: str) -> ProblemFile:
    """Parse problem-file *text*.

    :raises ProblemFileError: On unknown keywords, malformed lines, tokens
        outside the declared alphabet or ground set, or mixed problem kinds.
    """
    alphabet_line: tuple[int, list[str]] | None = None
    relation_lines: list[tuple[int, list[str]]] = []
    word_line: tuple[int, list[str]] | None = None
    ground: int | None = None
    rel_lines: list[tuple[int, list[int]]] = []
    tree_marker = False
    nodes: list[TreeNode] = []
    tree_rels: list[tuple[str, ...]] = []
    options: dict[str, str] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]
        if keyword not in _KEYWORDS:
            raise ProblemFileError(f"unknown keyword {keyword!r}", number)

        if keyword == "alphabet":
            if alphabet_line is not None:
                raise ProblemFileError("alphabet declared twice", number)
            if not args:
                raise ProblemFileError("alphabet needs at least one token", number)
            alphabet_line = (number, args)
        elif keyword == "relation":
            relation_lines.append((number, args))
        elif keyword == "word":
            if word_line is not None:
                raise ProblemFileError("word declared twice", number)
            if not args:
                raise ProblemFileError("word needs at least one token", number)
            word_line = (number, args)
        elif keyword == "ground":
            if ground is not None:
                raise ProblemFileError("ground declared twice", number)
            if len(args) != 1:
                raise ProblemFileError("ground takes exactly one value", number)
            ground = _int_token(args[0], number, "ground size")
            if ground < 0:
                raise ProblemFileError(f"negative ground size {ground}", number)
        elif keyword == "rel":
            if not args:
                raise ProblemFileError("rel needs at least one point", number)
            rel_lines.append((number, [_int_token(a, number, "point") for a in args]))
        elif keyword == "tree":
            if args:
                raise ProblemFileError("tree takes no arguments", number)
            tree_marker = True
        elif keyword == "node":
            nodes.append(_parse_node(args, number))
        elif keyword == "treerel":
            if len(args) < 2:
                raise ProblemFileError("treerel needs at least two node ids", number)
            tree_rels.append(tuple(args))
        else:
            if len(args) != 2:
                raise ProblemFileError("option takes a key and a value", number)
            options[args[0]] = args[1]

    has_tree = tree_marker or bool(nodes) or bool(tree_rels)
    has_system = ground is not None or bool(rel_lines)
    has_letters = alphabet_line is not None or bool(relation_lines) or word_line is not None
    if has_tree + has_system + has_letters > 1:
        raise ProblemFileError("a problem file must hold exactly one problem kind")

    try:
        if has_tree:
            return ProblemFile(
                ProblemKind.TREE,
                tree=RootedTree(tuple(nodes)),
                tree_relations=tuple(tree_rels),
                options=options,
            )
        if has_system:
            if ground is None:
                raise ProblemFileError("rel lines need a ground declaration")
            for number, points in rel_lines:
                bad = [p for p in points if not 1 <= p <= ground]
                if bad:
                    raise ProblemFileError(f"points {bad} outside ground set 1..{ground}", number)
            return ProblemFile(
                ProblemKind.SYSTEM,
                system=SetSystem.create(ground, [points for _, points in rel_lines]),
                options=options,
            )
        if alphabet_line is None:
            if options:
                return ProblemFile(ProblemKind.ALGEBRA, options=options)
            raise ProblemFileError("empty problem file")
        alphabet = Alphabet(tuple(alphabet_line[1]))
        relations = RelationSet(tuple(
            _parse_word(alphabet, tokens, number) for number, tokens in relation_lines
        ))
        if word_line is None:
            return ProblemFile(
                ProblemKind.ALGEBRA, alphabet=alphabet, relations=relations, options=options,
            )
        return ProblemFile(
            ProblemKind.WORD,
            alphabet=alphabet,
            relations=relations,
            word=_parse_word(alphabet, word_line[1], word_line[0]),
            options=options,
        )
    except ProblemFileError:
        raise
    except HomologyError as exc:
        raise ProblemFileError(str(exc)) from exc


def _parse_word(alphabet: Alphabet, tokens: list[str], line: int) -> Word:
    try:
        return alphabet.parse(tokens)
    except HomologyError as exc:
        raise ProblemFileError(str(exc), line) from exc


def _parse_node(args: list[str], line: int) -> TreeNode:
    if len(args) != 5 or args[1] != "arity" or args[3] != "parent":
        raise ProblemFileError("expected: node <id> arity <k> parent <id|root>", line)
    arity = _int_token(args[2], line, "arity")
    parent = None if args[4] == "root" else args[4]
    return TreeNode(args[0], arity, parent)


def load_problem(path: Path) -> ProblemFile:
    """Read and parse the problem file at *path*.

    :raises ProblemFileError: If the file is missing, not UTF-8, or malformed.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise ProblemFileError(f"{path} is not valid UTF-8 (byte {exc.start})") from exc
    return parse_problem(text)


# ── Rendering ─────────────────────────────────────────────────────────────────

def render_word_problem(
    alphabet: Alphabet,
    relations: RelationSet,
    word: Word | None = None,
    options: Mapping[str, str] | None = None,
) -> str:
    lines = ["alphabet " + " ".join(alphabet.letters)]
    lines += ["relation " + " ".join(alphabet.letters[i] for i in rel) for rel in relations.relations]
    if word is not None:
        lines.append("word " + " ".join(alphabet.letters[i] for i in word))
    return _finish(lines, options)


def render_system_problem(s: SetSystem, options: Mapping[str, str] | None = None) -> str:
    lines = [f"ground {s.n}"]
    lines += ["rel " + " ".join(str(p) for p in sorted(rel)) for rel in s.relations]
    return _finish(lines, options)


def render_tree_problem(
    tree: RootedTree,
    relations: tuple[tuple[str, ...], ...],
    options: Mapping[str, str] | None = None,
) -> str:
    lines = ["tree"]
    lines += [
        f"node {n.id} arity {n.arity} parent {n.parent if n.parent is not None else 'root'}"
        for n in tree.nodes
    ]
    lines += ["treerel " + " ".join(rel) for rel in relations]
    return _finish(lines, options)


def render_problem(problem: ProblemFile) -> str:
    """Render *problem* back to file text (options sorted by key)."""
    if problem.kind is ProblemKind.TREE:
        assert problem.tree is not None
        return render_tree_problem(problem.tree, problem.tree_relations, problem.options)
    if problem.kind is ProblemKind.SYSTEM:
        assert problem.system is not None
        return render_system_problem(problem.system, problem.options)
    if problem.alphabet is None:
        return _finish([], problem.options)
    return render_word_problem(problem.alphabet, problem.relations, problem.word, problem.options)


def _finish(lines: list[str], options: Mapping[str, str] | None) -> str:
    if options:
        lines = lines + [f"option {k} {v}" for k, v in sorted(options.items())]
    return "\n".join(lines) + "\n"
