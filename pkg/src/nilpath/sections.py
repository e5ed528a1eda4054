"""Local kernel sections and the conjugation cross-section.

Around a reference operator u with a marked kernel vector x0, a pair of
adapted bases puts u into the block form [[I, 0], [0, 0]].  For any nearby
operator v whose leading block stays invertible, eliminating that block
produces a vector f(v) depending continuously (rationally) on v with
``v @ f(v) = 0`` whenever v has the same rank as u, and ``f(u) = x0``.

Specializing to the operator ``M -> B@M - M@A0`` on matrix space with
anchor x0 = vec(I) turns this into a local cross-section of conjugation:
g(B) with ``B @ g(B) = g(B) @ A0`` and ``g(A0) = I``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInKernelError, OutsideNeighborhoodError, SingularMatrixError
from .matrix import (
    Matrix,
    SpanTracker,
    det,
    inverse,
    kernel_basis,
    matrix_mul,
    rank,
    solve,
    unvec,
    vec,
)
from .scalar import ONE, ZERO


@dataclass(frozen=True)
class SectionData:
    """Adapted-basis data for kernel-section evaluation near one operator."""

    operator: Matrix  # reference operator u
    anchor: Matrix  # kernel vector x0, a column
    rank: int
    basis_domain: Matrix  # columns: adapted domain basis, x0 last
    codomain_inv_top: Matrix  # first `rank` rows of the codomain basis inverse

    @property
    def dimension(self) -> int:
        return self.operator.rows


def _extend_with_standard(tracker: SpanTracker, columns: list[Matrix], n: int, want: int):
    """Grow `columns` to `want` vectors using standard basis vectors in order."""
    i = 0
    while len(columns) < want:
        if i >= n:
            raise AssertionError("standard vectors failed to complete the basis")
        e = Matrix.zeros(n, 1)
        e.data[i][0] = ONE
        if tracker.add(e):
            columns.append(e)
        i += 1


def section_setup(u: Matrix, x0: Matrix) -> SectionData:
    """Build the adapted bases around u with anchor x0 in its kernel.

    Domain basis: complement vectors first, then the rest of the kernel,
    then x0 last.  Codomain basis: images of the complement vectors,
    completed by standard vectors.  The reference operator's leading block
    is the identity by construction (asserted).
    """
    if not u.is_square():
        raise ValueError("section operator must be square")
    n = u.rows
    if x0.rows != n or x0.cols != 1:
        raise ValueError("anchor must be an n-by-1 column")
    if x0.is_zero():
        raise NotInKernelError("anchor vector is zero")
    if not matrix_mul(u, x0).is_zero():
        raise NotInKernelError("anchor vector is not in the kernel")

    kernel = kernel_basis(u)
    rho = n - len(kernel)

    tracker = SpanTracker()
    tracker.add(x0)
    kernel_rest: list[Matrix] = []
    for v in kernel:
        if tracker.add(v):
            kernel_rest.append(v)
    front: list[Matrix] = []
    _extend_with_standard(tracker, front, n, len(front) + rho)

    domain_cols = front + kernel_rest + [x0]
    basis_domain = Matrix(n, n, [list(r) for r in zip(*(c.column_entries() for c in domain_cols))])

    image_cols = [matrix_mul(u, c) for c in front]
    im_tracker = SpanTracker()
    for c in image_cols:
        if not im_tracker.add(c):
            raise AssertionError("images of complement vectors must be independent")
    _extend_with_standard(im_tracker, image_cols, n, n)
    codomain = Matrix(n, n, [list(r) for r in zip(*(c.column_entries() for c in image_cols))])
    codomain_inv = inverse(codomain)
    top = Matrix(rho, n, [list(codomain_inv.data[i]) for i in range(rho)])

    data = SectionData(u, x0, rho, basis_domain, top)
    head = matrix_mul(top, matrix_mul(u, basis_domain))
    for i in range(rho):
        for j in range(n):
            expected = ONE if i == j else ZERO
            if head.data[i][j] != expected:
                raise AssertionError("reference block is not the identity")
    return data


def section_eval(s: SectionData, v: Matrix) -> Matrix:
    """Kernel-section vector f(v) for an operator v near the reference.

    Only the leading block and the last column of v's adapted matrix are
    needed: with A the leading block and c the top of the last column, the
    section is x0's basis slot minus the correction ``front @ (A^-1 c)``.
    Raises OutsideNeighborhood when the leading block is singular; the
    identity ``v @ f(v) = 0`` then holds whenever rank(v) = rank(u).
    """
    n = s.dimension
    if v.rows != n or v.cols != n:
        raise ValueError("operator dimension mismatch")
    rho = s.rank
    if rho == 0:
        return Matrix(s.basis_domain.rows, 1, [[row[n - 1]] for row in s.basis_domain.data])
    top = matrix_mul(matrix_mul(s.codomain_inv_top, v), s.basis_domain)
    a_block = Matrix(rho, rho, [row[:rho] for row in top.data])
    c_last = Matrix(rho, 1, [[row[n - 1]] for row in top.data])
    try:
        correction = solve(a_block, c_last)
    except SingularMatrixError:
        raise OutsideNeighborhoodError("leading block singular at this operator") from None
    coords = [-correction.data[i][0] for i in range(rho)] + [ZERO] * (n - rho - 1) + [ONE]
    out = [ZERO] * n
    for j, coeff in enumerate(coords):
        if coeff.is_zero():
            continue
        for i in range(n):
            b = s.basis_domain.data[i][j]
            if not b.is_zero():
                out[i] = out[i] + coeff * b
    return Matrix.column(out)


def ad_operator(b: Matrix, a0: Matrix) -> Matrix:
    """Matrix of ``M -> B@M - M@A0`` on column-stacked n*n matrix space."""
    if not b.is_square() or not a0.is_square() or b.rows != a0.rows:
        raise ValueError("ad operator needs square matrices of equal size")
    n = b.rows
    big = n * n
    out = Matrix.zeros(big, big)
    for c1 in range(n):
        for r1 in range(n):
            row = c1 * n + r1
            row_data = out.data[row]
            for r2 in range(n):
                e = b.data[r1][r2]
                if not e.is_zero():
                    row_data[c1 * n + r2] = row_data[c1 * n + r2] + e
            for c2 in range(n):
                e = a0.data[c2][c1]
                if not e.is_zero():
                    row_data[c2 * n + r1] = row_data[c2 * n + r1] - e
    return out


@dataclass(frozen=True)
class ConjugationSection:
    """Exact local cross-section of B -> conjugators onto a base point."""

    base: Matrix  # A0
    section: SectionData

    @property
    def rank(self) -> int:
        return self.section.rank

    def conjugator_at(self, b: Matrix) -> Matrix:
        """g(B), invertible with ``B @ g(B) = g(B) @ A0``, and g(A0) = I.

        Validity is checked exactly: rank of the displacement operator must
        match the base point's, the section's leading block must be
        invertible, and g(B) itself must be invertible; otherwise
        OutsideNeighborhood is raised.
        """
        n = self.base.rows
        if b.rows != n or b.cols != n:
            raise ValueError("dimension mismatch")
        op = ad_operator(b, self.base)
        if rank(op) != self.section.rank:
            raise OutsideNeighborhoodError("displacement rank differs from base point")
        g = unvec(section_eval(self.section, op), n)
        if det(g).is_zero():
            raise OutsideNeighborhoodError("section conjugator is singular")
        if matrix_mul(b, g) != matrix_mul(g, self.base):
            raise AssertionError("section identity failed despite rank match")
        return g


def conjugation_section(a0: Matrix) -> ConjugationSection:
    """Cross-section of the conjugation action around the matrix a0."""
    if not a0.is_square():
        raise ValueError("base point must be square")
    op = ad_operator(a0, a0)
    anchor = vec(Matrix.identity(a0.rows))
    return ConjugationSection(a0, section_setup(op, anchor))
