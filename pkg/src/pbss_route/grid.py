"""Grid world of a puzzle-based storage system.

A state is an immutable snapshot of a ``width x height`` board where every
cell holds a target item, another item or an escort (an empty slot).  Items
travel by swapping with an adjacent escort; a target item that lands on an IO
cell is retrieved and its cell becomes an escort.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence


class Position(NamedTuple):
    x: int
    y: int

    def neighbors(self) -> Iterator["Position"]:
        """4-neighbours in the fixed order Up, Down, Left, Right."""
        x, y = self
        yield Position(x, y - 1)
        yield Position(x, y + 1)
        yield Position(x - 1, y)
        yield Position(x + 1, y)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


class CellKind(str, enum.Enum):
    TARGET = "T"
    OTHER = "#"
    ESCORT = "."


TARGET = CellKind.TARGET.value
OTHER = CellKind.OTHER.value
ESCORT = CellKind.ESCORT.value
_GLYPHS = frozenset((TARGET, OTHER, ESCORT))


class IllegalActionError(ValueError):
    """Raised when a move is applied to a state where it is not legal."""


class MapParseError(ValueError):
    def __init__(self, line: int, column: int, cause: str):
        super().__init__(f"line {line}, column {column}: {cause}")
        self.line = line
        self.column = column
        self.cause = cause


def manhattan(a: Position, b: Position) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


@dataclass(frozen=True)
class MoveAction:
    """Swap the escort at ``escort_from`` with the item at ``escort_to``."""

    escort_from: Position
    escort_to: Position

    def reversed(self) -> "MoveAction":
        return MoveAction(self.escort_to, self.escort_from)

    def __str__(self) -> str:
        return f"{self.escort_from}->{self.escort_to}"


@dataclass(frozen=True)
class GridState:
    """Board snapshot.

    ``cells`` is the row-major string of glyphs (``T``, ``#``, ``.``), which
    doubles as the canonical encoding used for hashing and duplicate
    detection.  ``retrieved`` counts target items already delivered.
    """

    width: int
    height: int
    cells: str
    io_positions: tuple[Position, ...]
    retrieved: int = 0
    _targets: tuple[Position, ...] = field(init=False, repr=False, compare=False)
    _escorts: tuple[Position, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("grid dimensions must be positive")
        if len(self.cells) != self.width * self.height:
            raise ValueError("cell string does not match grid dimensions")
        ios = tuple(Position(*p) for p in self.io_positions)
        object.__setattr__(self, "io_positions", ios)
        if len(set(ios)) != len(ios):
            raise ValueError("duplicate IO position")
        for p in ios:
            if not self.in_bounds(p):
                raise ValueError(f"IO {p} out of bounds")
        w = self.width
        targets, escorts = [], []
        for i, c in enumerate(self.cells):
            if c == TARGET:
                targets.append(Position(i % w, i // w))
            elif c == ESCORT:
                escorts.append(Position(i % w, i // w))
            elif c != OTHER:
                raise ValueError(f"bad glyph {c!r}")
        object.__setattr__(self, "_targets", tuple(targets))
        object.__setattr__(self, "_escorts", tuple(escorts))

    @classmethod
    def from_rows(cls, rows: Sequence[str], io_positions: Iterable[Sequence[int]],
                  retrieved: int = 0) -> "GridState":
        height = len(rows)
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        ios = tuple(Position(*p) for p in io_positions)
        state = cls(width, height, "".join(rows), ios, retrieved)
        return state.swept()

    @classmethod
    def build(cls, width: int, height: int, io_positions: Iterable[Sequence[int]],
              targets: Iterable[Sequence[int]] = (), escorts: Iterable[Sequence[int]] = ()) -> "GridState":
        """Board filled with other items except the listed targets/escorts."""
        cells = [OTHER] * (width * height)
        for x, y in targets:
            cells[y * width + x] = TARGET
        for x, y in escorts:
            cells[y * width + x] = ESCORT
        return cls.from_rows(
            ["".join(cells[r * width:(r + 1) * width]) for r in range(height)],
            io_positions)

    def in_bounds(self, p: Position) -> bool:
        return 0 <= p[0] < self.width and 0 <= p[1] < self.height

    def __getitem__(self, p: Position) -> CellKind:
        return CellKind(self.cells[p[1] * self.width + p[0]])

    def glyph(self, p: Position) -> str:
        return self.cells[p[1] * self.width + p[0]]

    @property
    def targets(self) -> tuple[Position, ...]:
        """Live target items in row-major order."""
        return self._targets

    @property
    def escorts(self) -> tuple[Position, ...]:
        return self._escorts

    @property
    def n_other(self) -> int:
        return self.cells.count(OTHER)

    @property
    def solved(self) -> bool:
        return not self._targets

    def rows(self) -> list[str]:
        w = self.width
        return [self.cells[r * w:(r + 1) * w] for r in range(self.height)]

    def swept(self) -> "GridState":
        """Retrieve every target item standing on an IO cell."""
        hits = [p for p in self.io_positions if self.glyph(p) == TARGET]
        if not hits:
            return self
        cells = list(self.cells)
        for x, y in hits:
            cells[y * self.width + x] = ESCORT
        return GridState(self.width, self.height, "".join(cells),
                         self.io_positions, self.retrieved + len(hits))

    def swapped(self, a: Position, b: Position) -> "GridState":
        """Contents of ``a`` and ``b`` exchanged, without the retrieval sweep."""
        cells = list(self.cells)
        i, j = a[1] * self.width + a[0], b[1] * self.width + b[0]
        cells[i], cells[j] = cells[j], cells[i]
        return GridState(self.width, self.height, "".join(cells),
                         self.io_positions, self.retrieved)

    def with_cell(self, p: Position, kind: CellKind | str) -> "GridState":
        i = p[1] * self.width + p[0]
        cells = self.cells[:i] + CellKind(kind).value + self.cells[i + 1:]
        return GridState(self.width, self.height, cells, self.io_positions, self.retrieved)

    def __str__(self) -> str:
        return render_map(self)


def legal_actions(state: GridState) -> list[MoveAction]:
    """Every escort-item swap, row-major by escort then Up, Down, Left, Right."""
    w, h, cells = state.width, state.height, state.cells
    out = []
    for e in state.escorts:
        for n in e.neighbors():
            x, y = n
            if 0 <= x < w and 0 <= y < h and cells[y * w + x] != ESCORT:
                out.append(MoveAction(e, n))
    return out


def is_legal(state: GridState, action: MoveAction) -> bool:
    a, b = action.escort_from, action.escort_to
    return (state.in_bounds(a) and state.in_bounds(b) and manhattan(a, b) == 1
            and state.glyph(a) == ESCORT and state.glyph(b) != ESCORT)


def apply_action(state: GridState, action: MoveAction) -> GridState:
    if not is_legal(state, action):
        raise IllegalActionError(f"illegal move {action} in state\n{render_map(state)}")
    return state.swapped(action.escort_from, action.escort_to).swept()


def replay(initial: GridState, actions: Iterable[MoveAction]) -> GridState:
    state = initial
    for a in actions:
        state = apply_action(state, a)
    return state


# -- text map format ---------------------------------------------------------

def render_map(state: GridState) -> str:
    ios = " ".join(f"{p.x},{p.y}" for p in state.io_positions)
    lines = [f"{state.width} {state.height}", f"IO {ios}".rstrip()]
    lines.extend(state.rows())
    if state.retrieved:
        lines.append(f"retrieved {state.retrieved}")
    return "\n".join(lines) + "\n"


def parse_map(text: str) -> GridState:
    """Parse the text map format.

    ``W H`` on line 1, ``IO x,y x,y ...`` on line 2, then ``H`` rows of ``W``
    glyphs.  An optional trailing ``retrieved N`` line restores the tally.
    Target items drawn on an IO cell are retrieved on load.
    """
    lines = [ln.rstrip("\r") for ln in text.split("\n")]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MapParseError(1, 1, "empty map")
    header = lines[0].split()
    if len(header) != 2 or not all(t.isdigit() for t in header):
        raise MapParseError(1, 1, "expected 'W H'")
    width, height = int(header[0]), int(header[1])
    if width < 1 or height < 1:
        raise MapParseError(1, 1, "grid dimensions must be positive")
    if len(lines) < 2 or not lines[1].startswith("IO"):
        raise MapParseError(2, 1, "expected 'IO x,y ...' line")
    ios: list[Position] = []
    col = 3
    for tok in lines[1][2:].split():
        col = lines[1].index(tok, col - 1) + 1
        try:
            x, y = (int(v) for v in tok.split(","))
        except ValueError:
            raise MapParseError(2, col, f"bad IO coordinate {tok!r}") from None
        p = Position(x, y)
        if not (0 <= x < width and 0 <= y < height):
            raise MapParseError(2, col, f"IO {p} out of bounds")
        if p in ios:
            raise MapParseError(2, col, f"duplicate IO {p}")
        ios.append(p)
        col += len(tok)
    rows = lines[2:2 + height]
    if len(rows) < height:
        raise MapParseError(len(lines) + 1, 1, f"expected {height} rows, got {len(rows)}")
    for r, row in enumerate(rows):
        if len(row) != width:
            raise MapParseError(r + 3, min(len(row), width) + 1,
                                f"ragged row: expected {width} glyphs, got {len(row)}")
        for c, g in enumerate(row):
            if g not in _GLYPHS:
                raise MapParseError(r + 3, c + 1, f"bad glyph {g!r}")
    retrieved = 0
    for k, extra in enumerate(lines[2 + height:], start=3 + height):
        parts = extra.split()
        if not parts:
            continue
        if len(parts) == 2 and parts[0] == "retrieved" and parts[1].isdigit():
            retrieved = int(parts[1])
        else:
            raise MapParseError(k, 1, "unexpected trailing content")
    return GridState(width, height, "".join(rows), tuple(ios), retrieved).swept()
