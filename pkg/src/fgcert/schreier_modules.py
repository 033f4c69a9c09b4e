"""Abelianized Schreier subgroups as integer modules.

The abelianization of a finite-index subgroup of a free group is a free
Z-module on its Schreier generators.  Conjugation by a normalizing
element, and any automorphism preserving the subgroup, act on it by
integer matrices; eigenlattices of those matrices are computed exactly
and saturated, never through floating point.
"""

from __future__ import annotations

from .homs import VerifiedAut
from .intlinalg import IntMatrix, Lattice, kernel_basis
from .quotients import SchreierSystem, SchreierError
from .words import Word


def abelianized_image(s: SchreierSystem, w: Word) -> tuple[int, ...]:
    """Exponent vector of a subgroup element over the Schreier generators."""
    return s.rewrite(w).exponent_sums()


def conjugation_matrix(s: SchreierSystem, g: Word) -> IntMatrix:
    """Matrix of v -> class of g^-1 (lift of v) g on the abelianized
    Schreier generators; column j is the exponent vector of
    rewrite(g^-1 e_j g)."""
    if not _normalizes(s, g):
        raise SchreierError(f"{g} does not normalize the subgroup")
    cols = [abelianized_image(s, e.conjugated_by(g)) for e in s.generators]
    n = len(cols)
    return IntMatrix(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))


def _normalizes(s: SchreierSystem, g: Word) -> bool:
    ginv = g.inverse()
    return all(
        s.contains(e.conjugated_by(g)) and s.contains(e.conjugated_by(ginv))
        for e in s.generators
    )


def action_matrix(s: SchreierSystem, aut: VerifiedAut) -> IntMatrix:
    """Matrix of the abelianized action of an automorphism preserving
    the subgroup; column j = exponent vector of rewrite(aut(e_j))."""
    if not preserves_subgroup(s, aut):
        raise SchreierError("automorphism does not preserve the subgroup")
    cols = [abelianized_image(s, aut(e)) for e in s.generators]
    n = len(cols)
    return IntMatrix(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))


def preserves_subgroup(s: SchreierSystem, aut: VerifiedAut) -> bool:
    return all(
        s.contains(aut.forward(e)) and s.contains(aut.backward(e))
        for e in s.generators
    )


def eigen_lattice(m: IntMatrix, eigenvalue: int) -> Lattice:
    """Saturated integer kernel of (m - eigenvalue*I), basis in Hermite
    normal form.  May be the zero lattice."""
    if m.nrows != m.ncols:
        raise ValueError("matrix must be square")
    n = m.nrows
    shifted = m - IntMatrix.identity(n).scaled(eigenvalue)
    return Lattice.from_rows(n, kernel_basis(shifted))


def induced_action(s: SchreierSystem, aut: VerifiedAut,
                   invariant: Lattice) -> IntMatrix:
    """Matrix of the abelianized action restricted to an invariant
    lattice, in the lattice's basis (column j = image of basis vector j).

    Raises if the automorphism does not preserve the subgroup or the
    lattice is not invariant under the abelianized action.
    """
    m = action_matrix(s, aut)
    if invariant.ambient_dim != m.nrows:
        raise ValueError("lattice has wrong ambient dimension")
    cols = []
    for basis_vec in invariant.basis:
        image = m.apply(basis_vec)
        coords = invariant.solve(image)
        if coords is None:
            raise SchreierError("lattice is not invariant under the action")
        cols.append(coords)
    k = invariant.rank
    return IntMatrix(tuple(tuple(cols[j][i] for j in range(k)) for i in range(k)))
