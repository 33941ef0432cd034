"""Dense matrix and vector arithmetic for the forward and backward passes.

Shapes in this package never exceed a handful of units on a side, so plain
Python lists in row-major order are fast enough and keep every result
bit-for-bit reproducible across platforms. Operations return new objects;
nothing here mutates its operands.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeError


@dataclass
class Vector:
    """A one-dimensional array of 64-bit floats."""

    data: list[float]

    def __post_init__(self) -> None:
        if not self.data:
            raise ShapeError("vector must have at least one element")

    def __len__(self) -> int:
        return len(self.data)

    def __getitem__(self, i: int) -> float:
        return self.data[i]

    def __iter__(self):
        return iter(self.data)

    @classmethod
    def zeros(cls, n: int) -> "Vector":
        if n < 1:
            raise ShapeError(f"vector length must be positive, got {n}")
        return cls([0.0] * n)

    def copy(self) -> "Vector":
        return Vector(list(self.data))


@dataclass
class Matrix:
    """A two-dimensional array of 64-bit floats in row-major layout."""

    rows: int
    cols: int
    data: list[float]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ShapeError(
                f"matrix dimensions must be positive, got {self.rows}x{self.cols}"
            )
        if len(self.data) != self.rows * self.cols:
            raise ShapeError(
                f"data length {len(self.data)} does not match shape "
                f"{self.rows}x{self.cols}"
            )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        if rows < 1 or cols < 1:
            raise ShapeError(f"matrix dimensions must be positive, got {rows}x{cols}")
        return cls(rows, cols, [0.0] * (rows * cols))

    @classmethod
    def from_rows(cls, rows_data: list[list[float]]) -> "Matrix":
        if not rows_data or not rows_data[0]:
            raise ShapeError("matrix needs at least one row and one column")
        cols = len(rows_data[0])
        flat: list[float] = []
        for i, row in enumerate(rows_data):
            if len(row) != cols:
                raise ShapeError(
                    f"row {i} has {len(row)} entries, expected {cols}"
                )
            flat.extend(float(v) for v in row)
        return cls(len(rows_data), cols, flat)

    def at(self, i: int, j: int) -> float:
        return self.data[i * self.cols + j]

    def row(self, i: int) -> list[float]:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[float]]:
        return [self.row(i) for i in range(self.rows)]

    def copy(self) -> "Matrix":
        return Matrix(self.rows, self.cols, list(self.data))


def matvec(m: Matrix, v: Vector) -> Vector:
    """Matrix-vector product m @ v."""
    if m.cols != len(v):
        raise ShapeError(
            f"matvec: matrix is {m.rows}x{m.cols}, vector has length {len(v)}"
        )
    data = m.data
    vd = v.data
    cols = m.cols
    out = [0.0] * m.rows
    for i in range(m.rows):
        base = i * cols
        acc = 0.0
        for j in range(cols):
            acc += data[base + j] * vd[j]
        out[i] = acc
    return Vector(out)


def matvec_t(m: Matrix, v: Vector) -> Vector:
    """Transposed product m.T @ v, used to push deltas back a layer."""
    if m.rows != len(v):
        raise ShapeError(
            f"matvec_t: matrix is {m.rows}x{m.cols}, vector has length {len(v)}"
        )
    data = m.data
    vd = v.data
    cols = m.cols
    out = [0.0] * cols
    for i in range(m.rows):
        base = i * cols
        vi = vd[i]
        for j in range(cols):
            out[j] += data[base + j] * vi
    return Vector(out)


def outer(u: Vector, v: Vector) -> Matrix:
    """Outer product u v.T with shape (len(u), len(v))."""
    out: list[float] = []
    for ui in u.data:
        for vj in v.data:
            out.append(ui * vj)
    return Matrix(len(u), len(v), out)


def axpy(alpha: float, x: Matrix | Vector, y: Matrix | Vector) -> Matrix | Vector:
    """Return y + alpha * x for two vectors or two matrices of equal shape."""
    if isinstance(x, Vector) and isinstance(y, Vector):
        if len(x) != len(y):
            raise ShapeError(f"axpy: vector lengths differ, {len(x)} vs {len(y)}")
        return Vector([yi + alpha * xi for xi, yi in zip(x.data, y.data)])
    if isinstance(x, Matrix) and isinstance(y, Matrix):
        if (x.rows, x.cols) != (y.rows, y.cols):
            raise ShapeError(
                f"axpy: matrix shapes differ, {x.rows}x{x.cols} vs {y.rows}x{y.cols}"
            )
        return Matrix(
            y.rows, y.cols, [yi + alpha * xi for xi, yi in zip(x.data, y.data)]
        )
    raise ShapeError(
        f"axpy: mixed operand kinds {type(x).__name__} and {type(y).__name__}"
    )
