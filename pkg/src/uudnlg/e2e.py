"""E2E-style dataset handling: meaning representations, delexicalization,
and assembly of training pairs for the planner and realizer stages."""

import csv
import io
import logging
import re
from dataclasses import dataclass

from .corpus import tokenize

log = logging.getLogger(__name__)

CANONICAL_SLOT_ORDER = (
    "name", "eatType", "food", "priceRange", "customer rating", "area",
    "familyFriendly", "near")

PLACEHOLDERS = {"name": "xname", "near": "xnear"}
PLACEHOLDER_TOKENS = frozenset(PLACEHOLDERS.values())

SENTENCE_SEPARATOR = "<sent>"


class E2EDataError(ValueError):
    pass


@dataclass(frozen=True)
class MeaningRepresentation:
    slots: tuple  # ordered (name, value) pairs

    def __post_init__(self):
        seen = set()
        for name, value in self.slots:
            if not name:
                raise E2EDataError("empty slot name")
            if not value:
                raise E2EDataError("empty value for slot %r" % name)
            if name in seen:
                raise E2EDataError("duplicate slot %r" % name)
            seen.add(name)

    def get(self, name):
        for slot, value in self.slots:
            if slot == name:
                return value
        return None


@dataclass(frozen=True)
class DelexMap:
    pairs: tuple  # (placeholder, surface)

    def __post_init__(self):
        placeholders = [p for p, _ in self.pairs]
        if len(placeholders) != len(set(placeholders)):
            raise E2EDataError("duplicate placeholders in delex map")

    def get(self, placeholder):
        for p, surface in self.pairs:
            if p == placeholder:
                return surface
        return None


@dataclass(frozen=True)
class TrainingPair:
    source: tuple
    target: tuple
    kind: str  # "planner" | "realizer"

    def __post_init__(self):
        if not self.source or not self.target:
            raise E2EDataError("training pair with an empty side")


_SLOT_RE = re.compile(r"^\s*(?P<name>[^\[\]]+?)\s*\[(?P<value>[^\[\]]*)\]\s*$")


def parse_mr(text):
    """Parse a comma-separated ``slot[value]`` meaning representation."""
    slots = []
    for group in _split_slot_groups(text):
        match = _SLOT_RE.match(group)
        if not match:
            raise E2EDataError("malformed slot group %r (expected slot[value])" % group.strip())
        name = match.group("name")
        value = match.group("value").strip()
        if not value:
            raise E2EDataError("empty value for slot %r" % name)
        slots.append((name, value))
    return MeaningRepresentation(slots=tuple(slots))


def _split_slot_groups(text):
    groups = []
    depth = 0
    current = []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            groups.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current:
        groups.append("".join(current))
    return [g for g in groups if g.strip()]


def render_mr(mr):
    return ", ".join("%s[%s]" % (name, value) for name, value in mr.slots)


def _boundary_pattern(value):
    return re.compile(r"(?<!\w)" + re.escape(value) + r"(?!\w)", re.IGNORECASE)


def delexicalize(utterance, mr):
    """Replace name/near slot values with xname/xnear placeholder tokens.

    Longer values are replaced first so overlapping values stay maximal.
    The DelexMap records the surface strings even when they do not occur
    in the utterance, so generated text can still be relexicalized.
    """
    replacements = []
    for slot, placeholder in PLACEHOLDERS.items():
        value = mr.get(slot)
        if value is not None:
            replacements.append((placeholder, value))
    text = utterance
    for placeholder, value in sorted(replacements, key=lambda r: -len(r[1])):
        text = _boundary_pattern(value).sub(placeholder, text)
    return text, DelexMap(pairs=tuple(replacements))


def relexicalize(text, delex_map):
    """Replace placeholder tokens with their recorded surface strings.

    Placeholders missing from the map are left verbatim and logged.
    """
    known = dict(delex_map.pairs)
    out = []
    for token in text.split(" "):
        if token in PLACEHOLDER_TOKENS and token not in known:
            log.warning("unknown placeholder %r left verbatim", token)
            out.append(token)
        else:
            out.append(known.get(token, token))
    return " ".join(out)


def read_dataset(path):
    """Read an ``mr,ref`` comma-separated dataset file."""
    with open(path, encoding="utf-8", newline="") as f:
        return read_dataset_text(f.read())


def read_dataset_text(text):
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise E2EDataError("missing header line 'mr,ref'") from None
    if [h.strip() for h in header] != ["mr", "ref"]:
        raise E2EDataError("expected header 'mr,ref', got %r" % ",".join(header))
    pairs = []
    for rownum, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise E2EDataError("row %d has %d fields, expected 2" % (rownum, len(row)))
        pairs.append((parse_mr(row[0]), row[1]))
    return pairs


def mr_source_tokens(mr):
    """Planner source encoding: canonical slot order, slot-name tokens then
    delexicalized, lowercased value tokens."""
    tokens = []
    for slot in CANONICAL_SLOT_ORDER:
        value = mr.get(slot)
        if value is None:
            continue
        tokens.extend(slot.lower().split())
        if slot in PLACEHOLDERS:
            tokens.append(PLACEHOLDERS[slot])
        else:
            tokens.extend(tokenize(value.lower()))
    return tokens


def build_planner_pair(mr, sentence_irs):
    if not sentence_irs:
        raise E2EDataError("planner pair needs at least one IR")
    target = []
    for i, ir in enumerate(sentence_irs):
        if i:
            target.append(SENTENCE_SEPARATOR)
        target.extend(ir.tokens)
    return TrainingPair(source=tuple(mr_source_tokens(mr)), target=tuple(target),
                        kind="planner")


def build_realizer_pair(ir, sentence_tokens):
    if not sentence_tokens:
        raise E2EDataError("realizer pair needs a non-empty sentence")
    return TrainingPair(source=tuple(ir.tokens), target=tuple(sentence_tokens),
                        kind="realizer")
