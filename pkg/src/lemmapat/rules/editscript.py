"""Edit operations and minimal edit scripts."""

from __future__ import annotations

from dataclasses import dataclass

from .. import _kernels

COPY_MARK = "→"
DELETE_MARK = "-"
INSERT_MARK = "+"


@dataclass(frozen=True, slots=True)
class EditOp:
    kind: str  # "copy", "delete" or "insert"
    char: str = ""

    def __post_init__(self):
        if self.kind == "insert":
            if len(self.char) != 1:
                raise ValueError(f"insert carries exactly one character, got {self.char!r}")
        elif self.kind in ("copy", "delete"):
            if self.char:
                raise ValueError(f"{self.kind} carries no character")
        else:
            raise ValueError(f"unknown edit operation {self.kind!r}")

    @property
    def consumes(self) -> bool:
        return self.kind != "insert"

    def __str__(self):
        if self.kind == "copy":
            return COPY_MARK
        if self.kind == "delete":
            return DELETE_MARK
        return INSERT_MARK + self.char


COPY = EditOp("copy")
DELETE = EditOp("delete")


def insert(c: str) -> EditOp:
    return EditOp("insert", c)


@dataclass(frozen=True, slots=True)
class EditScript:
    ops: tuple[EditOp, ...] = ()

    def __str__(self):
        return "".join(map(str, self.ops))

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    @property
    def consumed(self) -> int:
        """Number of source characters the script reads."""
        return sum(op.consumes for op in self.ops)

    @classmethod
    def from_string(cls, text: str) -> EditScript:
        ops = []
        i = 0
        while i < len(text):
            c = text[i]
            if c == COPY_MARK:
                ops.append(COPY)
            elif c == DELETE_MARK:
                ops.append(DELETE)
            elif c == INSERT_MARK:
                if i + 1 >= len(text):
                    raise ValueError(f"dangling {INSERT_MARK!r} at index {i}")
                i += 1
                ops.append(insert(text[i]))
            else:
                raise ValueError(f"unexpected character {c!r} at index {i}")
            i += 1
        return cls(tuple(ops))

    def apply(self, source: str) -> str:
        """Run the script over the whole of *source*."""
        if self.consumed != len(source):
            raise ValueError(
                f"script consumes {self.consumed} characters, source has {len(source)}"
            )
        out = []
        pos = 0
        for op in self.ops:
            if op.kind == "copy":
                out.append(source[pos])
                pos += 1
            elif op.kind == "delete":
                pos += 1
            else:
                out.append(op.char)
        return "".join(out)


def min_edit_script(source: str, target: str, allow_copy: bool) -> EditScript:
    """Shortest script turning *source* into *target*.

    Every operation costs one. Without copies the answer is always to
    delete everything and insert the target; with copies the cost is
    ``len(source) + len(target) - LCS``. Ties are broken left to right,
    preferring copy, then delete, then insert, which makes the result
    unique.

    >>> str(min_edit_script("vad", "ma", allow_copy=True))
    '-+m→-'
    """
    return EditScript.from_string(_kernels.edit_script(source, target, allow_copy))
