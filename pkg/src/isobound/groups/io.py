"""Text formats for groups.

Generator file::

    universe perm            # or: universe mat2 <modulus>, universe sd
    2 3 1                    # permutation images, 1-based
    2 1 3

Matrices are four integers (row-major); semidirect pairs are eight 0/1
integers, A then B. Multiplication-table file::

    order 3
    0 1 2
    1 2 0
    2 0 1

A dataset concatenates labelled groups, each introduced by ``group <order> <id>``
and followed by one of the two bodies above.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Union

import numpy as np

from .algorithms import PROBLEMATIC_LABELS, is_problematic
from .core import FiniteGroup, close_group
from .elements import Mat2, Perm, SDPair


class GroupFormatError(ValueError):
    pass


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


def _ints(no: int, fields: list[str]) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise GroupFormatError(f"line {no}: expected integers, got {' '.join(fields)!r}") from None


def _parse_body(lines: list[tuple[int, list[str]]], name: str = "") -> FiniteGroup:
    if not lines:
        raise GroupFormatError("empty group description")
    no, head = lines[0]
    if head[0] == "order":
        if len(head) != 2:
            raise GroupFormatError(f"line {no}: expected 'order N'")
        n = int(head[1])
        rows = [_ints(k, f) for k, f in lines[1:]]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise GroupFormatError(f"table must have {n} rows of {n} entries")
        return FiniteGroup.from_table(np.array(rows), name=name)
    if head[0] != "universe":
        raise GroupFormatError(f"line {no}: expected 'universe' or 'order', got {head[0]!r}")
    kind = head[1] if len(head) > 1 else ""
    gens = []
    for k, fields in lines[1:]:
        vals = _ints(k, fields)
        if kind == "perm":
            gens.append(Perm.from_one_based(vals))
        elif kind == "mat2":
            if len(head) != 3:
                raise GroupFormatError(f"line {no}: 'universe mat2' needs a modulus")
            if len(vals) != 4:
                raise GroupFormatError(f"line {k}: a matrix needs 4 entries")
            gens.append(Mat2.of(vals, int(head[2])))
        elif kind == "sd":
            if len(vals) != 8:
                raise GroupFormatError(f"line {k}: a semidirect pair needs 8 entries")
            gens.append(SDPair(tuple(vals[:4]), tuple(vals[4:])))
        else:
            raise GroupFormatError(f"line {no}: unknown universe {kind!r}")
    return close_group(gens, name=name)


def parse_group(text: str, name: str = "") -> FiniteGroup:
    return _parse_body(_lines(text), name)


def read_group(path: Union[str, Path]) -> FiniteGroup:
    path = Path(path)
    return parse_group(path.read_text(), name=path.stem)


def format_table(G: FiniteGroup) -> str:
    rows = [f"order {G.order}"] + [" ".join(map(str, r)) for r in G.table.tolist()]
    return "\n".join(rows) + "\n"


def format_generators(G: FiniteGroup) -> str:
    els = [G.elements[g] for g in G.generators]
    if not els:
        return format_table(G)
    first = els[0]
    if isinstance(first, Perm):
        head = "universe perm"
        body = [" ".join(map(str, e.one_based())) for e in els]
    elif isinstance(first, Mat2):
        head = f"universe mat2 {first.modulus}"
        body = [" ".join(map(str, e.entries)) for e in els]
    elif isinstance(first, SDPair):
        head = "universe sd"
        body = [" ".join(map(str, e.A + e.B)) for e in els]
    else:
        return format_table(G)
    return "\n".join([head] + body) + "\n"


@dataclass(frozen=True)
class LabelledGroup:
    order: int
    ident: int
    group: FiniteGroup

    @property
    def label(self) -> str:
        return f"{self.order}#{self.ident}"


def iter_dataset(text: str) -> Iterator[LabelledGroup]:
    block: list[tuple[int, list[str]]] = []
    key = None

    def flush():
        G = _parse_body(block, name=f"{key[0]}#{key[1]}")
        if G.order != key[0]:
            raise GroupFormatError(f"group {key[0]}#{key[1]} has order {G.order}")
        return LabelledGroup(key[0], key[1], G)

    for no, fields in _lines(text):
        if fields[0] == "group":
            if key is not None:
                yield flush()
            if len(fields) != 3:
                raise GroupFormatError(f"line {no}: expected 'group <order> <id>'")
            key = (int(fields[1]), int(fields[2]))
            block = []
        elif key is None:
            raise GroupFormatError(f"line {no}: data before the first 'group' line")
        else:
            block.append((no, fields))
    if key is not None:
        yield flush()


@dataclass(frozen=True)
class AuditResult:
    checked: dict[str, bool]  # label -> recomputed problematic flag
    missing_orders: tuple[int, ...]  # orders with no group in the dataset
    unexpected: tuple[str, ...]  # problematic here but not in the reference list
    absent: tuple[str, ...]  # in the reference list but not problematic here

    @property
    def agrees(self) -> bool:
        return not self.unexpected and not self.absent


def audit(groups, reference: dict[int, tuple[int, ...]] = PROBLEMATIC_LABELS) -> AuditResult:
    """Recompute the problematic flag for labelled groups and diff against ``reference``.

    Only orders present in ``reference`` are examined. A reference label whose
    group is missing from the dataset is not counted as a disagreement.
    """
    checked: dict[str, bool] = {}
    seen_orders: set[int] = set()
    seen_labels: set[tuple[int, int]] = set()
    unexpected = []
    for item in groups:
        if item.order not in reference:
            continue
        seen_orders.add(item.order)
        seen_labels.add((item.order, item.ident))
        flag = is_problematic(item.group)
        checked[item.label] = flag
        if flag and item.ident not in reference[item.order]:
            unexpected.append(item.label)
    absent = [
        f"{o}#{i}"
        for o, ids in reference.items()
        for i in ids
        if (o, i) in seen_labels and not checked[f"{o}#{i}"]
    ]
    missing = tuple(sorted(o for o in reference if o not in seen_orders))
    return AuditResult(checked, missing, tuple(unexpected), tuple(absent))
