"""Exact rational linear algebra on sympy matrices.

Every helper handles matrices with a zero dimension itself before delegating
to sympy.
"""

from typing import List, Sequence, Tuple

from sympy import Matrix, Rational, eye, zeros


def zero_matrix(rows: int, cols: int) -> Matrix:
    """Zero matrix of the given shape, zero dimensions allowed."""
    return zeros(rows, cols)


def identity_matrix(size: int) -> Matrix:
    """Identity matrix, including the 0x0 case."""
    if size == 0:
        return zeros(0, 0)
    return eye(size)


def is_zero(matrix: Matrix) -> bool:
    """True when every entry vanishes."""
    if matrix.rows == 0 or matrix.cols == 0:
        return True
    return all(entry == 0 for entry in matrix)


def rank(matrix: Matrix) -> int:
    """Exact rank over the rationals."""
    if matrix.rows == 0 or matrix.cols == 0 or is_zero(matrix):
        return 0
    return matrix.rank()


def matmul(left: Matrix, right: Matrix) -> Matrix:
    """Matrix product with shape checking."""
    if left.cols != right.rows:
        raise ValueError(f"Cannot multiply {left.shape} by {right.shape}")
    if left.rows == 0 or right.cols == 0 or left.cols == 0:
        return zeros(left.rows, right.cols)
    return left * right


def columns(matrix: Matrix, indices: Sequence[int]) -> Matrix:
    """Submatrix of the given columns."""
    if not indices:
        return zeros(matrix.rows, 0)
    if matrix.rows == 0:
        return zeros(0, len(indices))
    return matrix.extract(list(range(matrix.rows)), list(indices))


def rows(matrix: Matrix, indices: Sequence[int]) -> Matrix:
    """Submatrix of the given rows."""
    if not indices:
        return zeros(0, matrix.cols)
    if matrix.cols == 0:
        return zeros(len(indices), 0)
    return matrix.extract(list(indices), list(range(matrix.cols)))


def hstack(blocks: Sequence[Matrix], height: int) -> Matrix:
    """Join blocks side by side; ``height`` fixes the shape when all blocks are empty."""
    result = zeros(height, 0)
    for block in blocks:
        if block.rows != height:
            raise ValueError(f"Block height {block.rows} does not match {height}")
        if block.cols == 0:
            continue
        result = block if result.cols == 0 else result.row_join(block)
    return result


def nullspace(matrix: Matrix) -> Tuple[Matrix, List[int]]:
    """
    Kernel basis of a matrix.

    Args:
        matrix: An m x n rational matrix

    Returns:
        An n x r matrix whose columns span the kernel, and the free column
        indices; a kernel vector has coordinates equal to its entries at the
        free indices.
    """
    size = matrix.cols
    if size == 0:
        return zeros(0, 0), []
    if matrix.rows == 0 or is_zero(matrix):
        return eye(size), list(range(size))
    reduced, pivots = matrix.rref()
    free = [j for j in range(size) if j not in pivots]
    basis = zeros(size, len(free))
    for col, free_index in enumerate(free):
        basis[free_index, col] = 1
        for row, pivot in enumerate(pivots):
            basis[pivot, col] = -reduced[row, free_index]
    return basis, free


def cokernel(relations: Matrix, size: int) -> Tuple[List[int], Matrix]:
    """
    Cokernel of the span of the relation columns inside Q^size.

    The complement is spanned by standard basis vectors, so quotient basis
    elements are represented by labels of the ambient space.

    Args:
        relations: size x r matrix of relation vectors
        size: ambient dimension

    Returns:
        Indices of the kept standard basis vectors, and the projection matrix
        (len(kept) x size) onto them along the relation span.
    """
    if size == 0:
        return [], zeros(0, 0)
    if relations.cols == 0 or is_zero(relations):
        return list(range(size)), eye(size)
    count = relations.cols
    _, pivots = relations.row_join(eye(size)).rref()
    relation_pivots = [p for p in pivots if p < count]
    kept = [p - count for p in pivots if p >= count]
    if not kept:
        return [], zeros(0, size)
    change = columns(relations, relation_pivots).row_join(columns(eye(size), kept))
    inverse = change.inv()
    return kept, rows(inverse, list(range(len(relation_pivots), size)))


def right_inverse(matrix: Matrix) -> Matrix:
    """
    Right inverse of a full-row-rank matrix.

    Raises:
        ValueError: If the matrix is not surjective
    """
    if matrix.rows == 0:
        return zeros(matrix.cols, 0)
    if rank(matrix) != matrix.rows:
        raise ValueError("Matrix is not surjective")
    _, pivots = matrix.rref()
    square = columns(matrix, list(pivots))
    inverse = square.inv()
    result = zeros(matrix.cols, matrix.rows)
    for row, pivot in enumerate(pivots):
        for col in range(matrix.rows):
            result[pivot, col] = inverse[row, col]
    return result


def is_invertible(matrix: Matrix) -> bool:
    """Square and of full rank."""
    return matrix.rows == matrix.cols and rank(matrix) == matrix.rows


def trace(matrix: Matrix) -> Rational:
    """Trace, zero for the empty matrix."""
    if matrix.rows == 0:
        return Rational(0)
    return Rational(matrix.trace())


def parse_rational(text: str) -> Rational:
    """Parse a rational written as ``p`` or ``p/q``."""
    numerator, _, denominator = text.strip().partition("/")
    if denominator:
        return Rational(int(numerator), int(denominator))
    return Rational(int(numerator))


def format_rational(value) -> str:
    """Canonical ``p/q`` text for a rational."""
    value = Rational(value)
    if value.q == 1:
        return str(value.p)
    return f"{value.p}/{value.q}"
