"""Group rings, Fox coordinates and the Magnus embedding.

The coordinates of a word w are the unique group-ring elements w_i with

    w - 1 = sum_i (x_i - 1) * w_i

in the integral group ring of the free group.  Pushing the group down
to (Z/m)^n and the coefficients to Z/m yields the finite version, whose
image group consists of 2x2 block matrices (g 0; t 1); an element is
determined by its bottom row.

Matrix multiplication over these rings is done entrywise with the ring
operators, so the same helpers serve Z[F_n] and Z_m[(Z/m)^n].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .homs import FreeHom, VerifiedAut, abelianization_matrix, compose
from .words import Alphabet, Word, WordError


class RingError(ValueError):
    """Raised on mismatched ring parameters."""


@dataclass(frozen=True)
class FreeGroupRingElement:
    """Sparse element of the integral group ring of a free group."""

    alphabet: Alphabet
    terms: tuple[tuple[Word, int], ...]  # sorted, no zero coefficients

    @staticmethod
    def from_dict(alpha: Alphabet, d: dict[Word, int]) -> "FreeGroupRingElement":
        items = tuple(sorted(
            ((w, c) for w, c in d.items() if c != 0),
            key=lambda wc: (wc[0].length(), wc[0].syllables)))
        return FreeGroupRingElement(alpha, items)

    @staticmethod
    def zero(alpha: Alphabet) -> "FreeGroupRingElement":
        return FreeGroupRingElement(alpha, ())

    @staticmethod
    def monomial(w: Word, c: int = 1) -> "FreeGroupRingElement":
        return FreeGroupRingElement.from_dict(w.alphabet, {w: c})

    @staticmethod
    def one(alpha: Alphabet) -> "FreeGroupRingElement":
        return FreeGroupRingElement.monomial(alpha.identity())

    def _check(self, other: "FreeGroupRingElement") -> None:
        if self.alphabet != other.alphabet:
            raise RingError("alphabet mismatch")

    def __add__(self, other: "FreeGroupRingElement") -> "FreeGroupRingElement":
        self._check(other)
        d = dict(self.terms)
        for w, c in other.terms:
            d[w] = d.get(w, 0) + c
        return FreeGroupRingElement.from_dict(self.alphabet, d)

    def __neg__(self) -> "FreeGroupRingElement":
        return FreeGroupRingElement(self.alphabet, tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other: "FreeGroupRingElement") -> "FreeGroupRingElement":
        return self + (-other)

    def __mul__(self, other: "FreeGroupRingElement") -> "FreeGroupRingElement":
        self._check(other)
        d: dict[Word, int] = {}
        for w1, c1 in self.terms:
            for w2, c2 in other.terms:
                w = w1 * w2
                d[w] = d.get(w, 0) + c1 * c2
        return FreeGroupRingElement.from_dict(self.alphabet, d)

    def times_word(self, w: Word) -> "FreeGroupRingElement":
        return FreeGroupRingElement.from_dict(
            self.alphabet, {t * w: c for t, c in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*({w})" for w, c in self.terms)


def fox_coordinates(w: Word) -> tuple[FreeGroupRingElement, ...]:
    """The unique coordinates with w - 1 = sum (x_i - 1) * w_i.

    Length recursion: extending u by x_i multiplies every coordinate by
    x_i on the right and adds 1 (resp. -x_i^-1 for the inverse letter)
    at position i.
    """
    alpha = w.alphabet
    coords = [FreeGroupRingElement.zero(alpha) for _ in range(alpha.rank)]
    for gen, sign in w.letters():
        letter = alpha.generator(gen, sign)
        coords = [c.times_word(letter) for c in coords]
        if sign > 0:
            delta = FreeGroupRingElement.one(alpha)
        else:
            delta = FreeGroupRingElement.monomial(letter, -1)
        coords[gen] = coords[gen] + delta
    return tuple(coords)


def fox_identity_holds(w: Word) -> bool:
    """Re-substitution oracle: check w - 1 = sum (x_i - 1) w_i exactly."""
    alpha = w.alphabet
    total = FreeGroupRingElement.zero(alpha)
    for i, c in enumerate(fox_coordinates(w)):
        xi = FreeGroupRingElement.monomial(alpha.generator(i))
        total = total + (xi - FreeGroupRingElement.one(alpha)) * c
    expected = FreeGroupRingElement.monomial(w) - FreeGroupRingElement.one(alpha)
    return total == expected


@dataclass(frozen=True)
class FiniteGroupRingElement:
    """Sparse element of Z_m[(Z/m)^n]: exponent vectors mod m mapped to
    nonzero coefficients mod m."""

    modulus: int
    rank: int
    terms: tuple[tuple[tuple[int, ...], int], ...]

    @staticmethod
    def from_dict(m: int, n: int, d: dict) -> "FiniteGroupRingElement":
        if m < 2:
            raise RingError("modulus must be >= 2")
        clean: dict[tuple[int, ...], int] = {}
        for vec, c in d.items():
            vec = tuple(v % m for v in vec)
            c = c % m
            if c:
                clean[vec] = (clean.get(vec, 0) + c) % m
        items = tuple(sorted((v, c) for v, c in clean.items() if c))
        return FiniteGroupRingElement(m, n, items)

    @staticmethod
    def zero(m: int, n: int) -> "FiniteGroupRingElement":
        return FiniteGroupRingElement.from_dict(m, n, {})

    @staticmethod
    def one(m: int, n: int) -> "FiniteGroupRingElement":
        return FiniteGroupRingElement.from_dict(m, n, {(0,) * n: 1})

    @staticmethod
    def monomial(m: int, n: int, vec: Sequence[int], c: int = 1) -> "FiniteGroupRingElement":
        return FiniteGroupRingElement.from_dict(m, n, {tuple(vec): c})

    def _check(self, other: "FiniteGroupRingElement") -> None:
        if (self.modulus, self.rank) != (other.modulus, other.rank):
            raise RingError("ring parameter mismatch")

    def __add__(self, other: "FiniteGroupRingElement") -> "FiniteGroupRingElement":
        self._check(other)
        d = dict(self.terms)
        for v, c in other.terms:
            d[v] = d.get(v, 0) + c
        return FiniteGroupRingElement.from_dict(self.modulus, self.rank, d)

    def __neg__(self) -> "FiniteGroupRingElement":
        return FiniteGroupRingElement.from_dict(
            self.modulus, self.rank, {v: -c for v, c in self.terms})

    def __sub__(self, other: "FiniteGroupRingElement") -> "FiniteGroupRingElement":
        return self + (-other)

    def __mul__(self, other: "FiniteGroupRingElement") -> "FiniteGroupRingElement":
        self._check(other)
        d: dict[tuple[int, ...], int] = {}
        for v1, c1 in self.terms:
            for v2, c2 in other.terms:
                v = tuple(a + b for a, b in zip(v1, v2))
                v = tuple(x % self.modulus for x in v)
                d[v] = d.get(v, 0) + c1 * c2
        return FiniteGroupRingElement.from_dict(self.modulus, self.rank, d)

    def translated(self, vec: Sequence[int]) -> "FiniteGroupRingElement":
        """Multiply by the group element with the given exponent vector."""
        return FiniteGroupRingElement.from_dict(
            self.modulus, self.rank,
            {tuple(a + b for a, b in zip(v, vec)): c for v, c in self.terms})

    def substituted(self, matrix_cols: Sequence[Sequence[int]]) -> "FiniteGroupRingElement":
        """Apply the monoid endomorphism of (Z/m)^n sending generator j
        to the vector matrix_cols[j] (used for twisting by an
        automorphism acting through the abelianization)."""
        n, m = self.rank, self.modulus
        d: dict[tuple[int, ...], int] = {}
        for v, c in self.terms:
            out = [0] * n
            for j, e in enumerate(v):
                for i in range(n):
                    out[i] += matrix_cols[j][i] * e
            key = tuple(x % m for x in out)
            d[key] = d.get(key, 0) + c
        return FiniteGroupRingElement.from_dict(m, n, d)

    def is_zero(self) -> bool:
        return not self.terms


def push_to_finite(e: FreeGroupRingElement, m: int) -> FiniteGroupRingElement:
    """Push Z[F_n] -> Z_m[(Z/m)^n]: words to exponent vectors mod m."""
    n = e.alphabet.rank
    d: dict[tuple[int, ...], int] = {}
    for w, c in e.terms:
        v = tuple(s % m for s in w.exponent_sums())
        d[v] = d.get(v, 0) + c
    return FiniteGroupRingElement.from_dict(m, n, d)


@dataclass(frozen=True)
class PhiElement:
    """An element of the finite Magnus image: group part in (Z/m)^n plus
    the n bottom-row coordinates in Z_m[(Z/m)^n].

    The constructor enforces the coordinate identity
    sum_i (x_i - 1) * bottom_i = top - 1, so only genuine image elements
    can ever be built.
    """

    modulus: int
    rank: int
    top: tuple[int, ...]
    bottom: tuple[FiniteGroupRingElement, ...]

    def __post_init__(self):
        m, n = self.modulus, self.rank
        if len(self.top) != n or len(self.bottom) != n:
            raise RingError("wrong number of coordinates")
        for b in self.bottom:
            if (b.modulus, b.rank) != (m, n):
                raise RingError("bottom row in wrong ring")
        total = FiniteGroupRingElement.zero(m, n)
        for i, b in enumerate(self.bottom):
            unit = [0] * n
            unit[i] = 1
            xi = FiniteGroupRingElement.monomial(m, n, unit)
            total = total + (xi - FiniteGroupRingElement.one(m, n)) * b
        expected = (FiniteGroupRingElement.monomial(m, n, self.top)
                    - FiniteGroupRingElement.one(m, n))
        if total != expected:
            raise RingError("bottom row inconsistent with group part")

    @staticmethod
    def identity(m: int, n: int) -> "PhiElement":
        return PhiElement(m, n, (0,) * n,
                          tuple(FiniteGroupRingElement.zero(m, n) for _ in range(n)))

    def _check(self, other: "PhiElement") -> None:
        if (self.modulus, self.rank) != (other.modulus, other.rank):
            raise RingError("parameter mismatch")

    def __mul__(self, other: "PhiElement") -> "PhiElement":
        """(g1, t1) * (g2, t2) = (g1 g2, t1 . g2 + t2)."""
        self._check(other)
        m = self.modulus
        top = tuple((a + b) % m for a, b in zip(self.top, other.top))
        bottom = tuple(
            b1.translated(other.top) + b2 for b1, b2 in zip(self.bottom, other.bottom))
        return PhiElement(m, self.rank, top, bottom)

    def inverse(self) -> "PhiElement":
        m = self.modulus
        top_inv = tuple((-a) % m for a in self.top)
        bottom = tuple(-(b.translated(top_inv)) for b in self.bottom)
        return PhiElement(m, self.rank, top_inv, bottom)


def magnus_image(w: Word, m: int) -> PhiElement:
    """The image of a word in the finite Magnus group."""
    n = w.alphabet.rank
    top = tuple(s % m for s in w.exponent_sums())
    bottom = tuple(push_to_finite(c, m) for c in fox_coordinates(w))
    return PhiElement(m, n, top, bottom)


# ---------------------------------------------------------------------------
# J matrices
# ---------------------------------------------------------------------------


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    """Matrix product over any ring with + and * operators."""
    n, k, p = len(a), len(b), len(b[0])
    return [[_dot(a[i], [b[t][j] for t in range(k)]) for j in range(p)] for i in range(n)]


def _dot(row, col):
    total = row[0] * col[0]
    for a, b in zip(row[1:], col[1:]):
        total = total + a * b
    return total


def j_of_endo(h: FreeHom, m: int | None = None) -> list[list]:
    """The n x n matrix with entry (i, j) = i-th Fox coordinate of the
    image of generator j, over Z[F_n] (m=None) or pushed to Z_m[(Z/m)^n]."""
    if not h.is_endo():
        raise WordError("J matrix needs an endomorphism")
    n = h.domain.rank
    cols = [fox_coordinates(img) for img in h.images]
    if m is None:
        return [[cols[j][i] for j in range(n)] for i in range(n)]
    return [[push_to_finite(cols[j][i], m) for j in range(n)] for i in range(n)]


def j_identity(alpha: Alphabet, m: int | None = None) -> list[list]:
    n = alpha.rank
    if m is None:
        one = FreeGroupRingElement.one(alpha)
        zero = FreeGroupRingElement.zero(alpha)
    else:
        one = FiniteGroupRingElement.one(m, n)
        zero = FiniteGroupRingElement.zero(m, n)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def endo_on_ring(h: FreeHom, e: FreeGroupRingElement) -> FreeGroupRingElement:
    """Apply an endomorphism to every group element of a ring element."""
    d: dict[Word, int] = {}
    for w, c in e.terms:
        img = h(w)
        d[img] = d.get(img, 0) + c
    return FreeGroupRingElement.from_dict(e.alphabet, d)


def twist_matrix(h: FreeHom, mat: Sequence[Sequence], m: int | None = None) -> list[list]:
    """Apply h entrywise: directly on Z[F_n] entries, or through the
    abelianization mod m on finite-ring entries."""
    if m is None:
        return [[endo_on_ring(h, e) for e in row] for row in mat]
    cols = [tuple(img.exponent_sums()) for img in h.images]
    return [[e.substituted(cols) for e in row] for row in mat]


def j_composition_identity(f: FreeHom, g: FreeHom, m: int | None = None) -> bool:
    """Check J(f o g) = J(f) . f(J(g)) as an exact matrix identity."""
    lhs = j_of_endo(compose(f, g), m)
    rhs = mat_mul(j_of_endo(f, m), twist_matrix(f, j_of_endo(g, m), m))
    return lhs == rhs


# ---------------------------------------------------------------------------
# KA homomorphism check
# ---------------------------------------------------------------------------


def acts_trivially_mod(h: FreeHom, m: int) -> bool:
    """Abelianization matrix congruent to the identity mod m."""
    mat = abelianization_matrix(h)
    n = mat.nrows
    return all((mat[i, j] - (1 if i == j else 0)) % m == 0
               for i in range(n) for j in range(n))


def ka_check(auts: Sequence[VerifiedAut], m: int, pairs: int = 50,
             rng=None) -> dict:
    """Verify, on automorphisms acting trivially mod the m-th congruence
    layer, that the finite J map is multiplicative and lands in
    invertible matrices (inverse exhibited as J of the inverse).
    """
    import random

    rng = rng or random.Random(0)
    failures: list[str] = []
    for idx, aut in enumerate(auts):
        if not acts_trivially_mod(aut.forward, m):
            failures.append(f"aut {idx}: abelianization not trivial mod {m}")
    if failures:
        return {"passed": False, "failures": failures, "pairs_checked": 0}

    ident = j_identity(auts[0].alphabet, m)
    for idx, aut in enumerate(auts):
        prod = mat_mul(j_of_endo(aut.forward, m), j_of_endo(aut.backward, m))
        if prod != ident:
            failures.append(f"aut {idx}: J(aut) * J(aut^-1) != I")
    checked = 0
    for _ in range(pairs):
        f = rng.choice(auts)
        g = rng.choice(auts)
        lhs = j_of_endo(compose(f.forward, g.forward), m)
        rhs = mat_mul(j_of_endo(f.forward, m), j_of_endo(g.forward, m))
        if lhs != rhs:
            failures.append("homomorphism law failed on a sampled pair")
            break
        checked += 1
    return {"passed": not failures, "failures": failures, "pairs_checked": checked}


# ---------------------------------------------------------------------------
# Local-ring commutator check
# ---------------------------------------------------------------------------


def _mod_mat_mul(a, b, mod):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) % mod for j in range(n)]
            for i in range(n)]


def _mod_mat_inv3(a, mod):
    """Inverse of a 3x3 matrix over Z/mod via the adjugate; the
    determinant must be a unit."""
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = a
    det = (a11 * (a22 * a33 - a23 * a32)
           - a12 * (a21 * a33 - a23 * a31)
           + a13 * (a21 * a32 - a22 * a31)) % mod
    try:
        det_inv = pow(det, -1, mod)
    except ValueError:
        return None
    cof = [
        [a22 * a33 - a23 * a32, a13 * a32 - a12 * a33, a12 * a23 - a13 * a22],
        [a23 * a31 - a21 * a33, a11 * a33 - a13 * a31, a13 * a21 - a11 * a23],
        [a21 * a32 - a22 * a31, a12 * a31 - a11 * a32, a11 * a22 - a12 * a21],
    ]
    return [[(det_inv * v) % mod for v in row] for row in cof]


def local_commutator_check(p: int, k: int, s_power: int, t_power: int,
                           samples: int = 200, rng=None) -> dict:
    """In R = Z/p^k with ideals S = (p^s_power), T = (p^t_power): sample
    invertible I+A (A over S) and I+B (B over T) and verify the
    commutator is the identity mod S*T = (p^(s_power+t_power)).
    """
    import random

    rng = rng or random.Random(0)
    mod = p ** k
    st = p ** min(s_power + t_power, k)
    ident = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    failures = 0
    tested = 0
    while tested < samples:
        a = [[(p ** s_power) * rng.randrange(p ** (k - s_power)) % mod
              for _ in range(3)] for _ in range(3)]
        b = [[(p ** t_power) * rng.randrange(p ** (k - t_power)) % mod
              for _ in range(3)] for _ in range(3)]
        ia = [[(ident[i][j] + a[i][j]) % mod for j in range(3)] for i in range(3)]
        ib = [[(ident[i][j] + b[i][j]) % mod for j in range(3)] for i in range(3)]
        ia_inv = _mod_mat_inv3(ia, mod)
        ib_inv = _mod_mat_inv3(ib, mod)
        if ia_inv is None or ib_inv is None:
            continue
        comm = _mod_mat_mul(_mod_mat_mul(ia, ib, mod), _mod_mat_mul(ia_inv, ib_inv, mod), mod)
        tested += 1
        ok = all((comm[i][j] - ident[i][j]) % st == 0 for i in range(3) for j in range(3))
        if not ok:
            failures += 1
    return {"passed": failures == 0, "samples": tested, "failures": failures,
            "modulus": mod, "ideal_product": st}
