"""Endomorphisms and verified automorphisms of free groups.

An automorphism is always supplied together with an explicit inverse
(:class:`VerifiedAut`); the constructor checks both round trips on every
generator.  Finding inverses (Whitehead's algorithm) is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlinalg import IntMatrix
from .words import Alphabet, Word, WordError, alphabet, parse_word


@dataclass(frozen=True)
class FreeHom:
    """A homomorphism between free groups, given by generator images."""

    domain: Alphabet
    codomain: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.domain.rank:
            raise WordError("one image per domain generator required")
        for img in self.images:
            if img.alphabet != self.codomain:
                raise WordError("image over wrong alphabet")

    def __call__(self, w: Word) -> Word:
        if w.alphabet != self.domain:
            raise WordError("word not over the domain alphabet")
        result = self.codomain.identity()
        for gen, exp in w.syllables:
            result = result * self.images[gen] ** exp
        return result

    def is_endo(self) -> bool:
        return self.domain == self.codomain

    def __str__(self) -> str:
        return "\n".join(
            f"{name} -> {img}" for name, img in zip(self.domain.names, self.images)
        )


def identity_hom(alpha: Alphabet) -> FreeHom:
    return FreeHom(alpha, alpha, tuple(alpha.generators()))


def hom(alpha: Alphabet, *image_texts: str, codomain: Alphabet | None = None) -> FreeHom:
    """Build a hom from image strings, one per generator."""
    codomain = codomain or alpha
    return FreeHom(alpha, codomain, tuple(parse_word(t, codomain) for t in image_texts))


def parse_hom(text: str, alpha: Alphabet, codomain: Alphabet | None = None) -> FreeHom:
    """Parse the ``name -> word`` line format (one line per generator)."""
    codomain = codomain or alpha
    images: dict[str, Word] = {}
    for line in text.strip().splitlines():
        lhs, _, rhs = line.partition("->")
        name = lhs.strip()
        if name in images:
            raise WordError(f"duplicate image for {name!r}")
        images[name] = parse_word(rhs.strip(), codomain)
    if set(images) != set(alpha.names):
        raise WordError("images must cover exactly the domain generators")
    return FreeHom(alpha, codomain, tuple(images[n] for n in alpha.names))


def compose(f: FreeHom, g: FreeHom) -> FreeHom:
    """(f o g)(x) = f(g(x)); g's codomain must be f's domain."""
    if g.codomain != f.domain:
        raise WordError("codomain of g must equal domain of f")
    return FreeHom(g.domain, f.codomain, tuple(f(img) for img in g.images))


@dataclass(frozen=True)
class VerifiedAut:
    """An automorphism packaged with an explicit inverse.

    Construction fails unless forward o backward and backward o forward
    both fix every generator.
    """

    forward: FreeHom
    backward: FreeHom

    def __post_init__(self):
        if not (self.forward.is_endo() and self.backward.is_endo()):
            raise WordError("automorphisms must be endomorphisms")
        if self.forward.domain != self.backward.domain:
            raise WordError("alphabet mismatch between forward and backward")
        gens = self.forward.domain.generators()
        for g in gens:
            if self.forward(self.backward(g)) != g or self.backward(self.forward(g)) != g:
                raise WordError("inverse check failed: not a verified automorphism")

    @property
    def alphabet(self) -> Alphabet:
        return self.forward.domain

    def __call__(self, w: Word) -> Word:
        return self.forward(w)

    def inverse(self) -> "VerifiedAut":
        return VerifiedAut(self.backward, self.forward)


def compose_auts(f: VerifiedAut, g: VerifiedAut) -> VerifiedAut:
    """(f o g) as a verified automorphism."""
    return VerifiedAut(compose(f.forward, g.forward), compose(g.backward, f.backward))


def inner_aut(g: Word) -> VerifiedAut:
    """The inner automorphism w -> g^-1 w g.

    With this convention inner_aut(g1) o inner_aut(g2) = inner_aut(g2 g1).
    """
    alpha = g.alphabet
    ginv = g.inverse()
    fwd = FreeHom(alpha, alpha, tuple(x.conjugated_by(g) for x in alpha.generators()))
    bwd = FreeHom(alpha, alpha, tuple(x.conjugated_by(ginv) for x in alpha.generators()))
    return VerifiedAut(fwd, bwd)


def abelianization_matrix(h: FreeHom) -> IntMatrix:
    """Column i = exponent-sum vector of the image of generator i, so
    composition maps to matrix product."""
    if not h.is_endo():
        raise WordError("abelianization matrix needs an endomorphism")
    cols = [img.exponent_sums() for img in h.images]
    return IntMatrix(tuple(tuple(col[i] for col in cols) for i in range(h.domain.rank)))


def fixes_word(h: FreeHom, w: Word) -> bool:
    return h(w) == w


# ---------------------------------------------------------------------------
# Named automorphisms and Nielsen generators
# ---------------------------------------------------------------------------

XY = alphabet("x", "y")
XYZ = alphabet("x", "y", "z")


def transvection_alpha() -> VerifiedAut:
    """Rank 2: x -> x, y -> y x^2 (abelianizes to [[1,2],[0,1]])."""
    return VerifiedAut(hom(XY, "x", "y x^2"), hom(XY, "x", "y x^-2"))


def transvection_beta() -> VerifiedAut:
    """Rank 2: x -> x y^2, y -> y (abelianizes to [[1,0],[2,1]])."""
    return VerifiedAut(hom(XY, "x y^2", "y"), hom(XY, "x y^-2", "y"))


def shear_alpha3() -> VerifiedAut:
    """Rank 3: x -> x, y -> y, z -> z y."""
    return VerifiedAut(hom(XYZ, "x", "y", "z y"), hom(XYZ, "x", "y", "z y^-1"))


def shear_beta3() -> VerifiedAut:
    """Rank 3: x -> x, y -> y z, z -> z."""
    return VerifiedAut(hom(XYZ, "x", "y z", "z"), hom(XYZ, "x", "y z^-1", "z"))


def nielsen_transvection(alpha: Alphabet, i: int, j: int, exponent: int = 1,
                         side: str = "right") -> VerifiedAut:
    """x_i -> x_i * x_j^exponent (or x_j^exponent * x_i for side="left")."""
    if i == j:
        raise WordError("transvection needs distinct generators")
    gens = alpha.generators()

    def images(e: int) -> tuple[Word, ...]:
        out = list(gens)
        if side == "right":
            out[i] = gens[i] * gens[j] ** e
        else:
            out[i] = gens[j] ** e * gens[i]
        return tuple(out)

    return VerifiedAut(FreeHom(alpha, alpha, images(exponent)),
                       FreeHom(alpha, alpha, images(-exponent)))


def nielsen_inversion(alpha: Alphabet, i: int) -> VerifiedAut:
    """x_i -> x_i^-1."""
    gens = alpha.generators()
    out = list(gens)
    out[i] = gens[i].inverse()
    h = FreeHom(alpha, alpha, tuple(out))
    return VerifiedAut(h, h)


def nielsen_permutation(alpha: Alphabet, perm: tuple[int, ...]) -> VerifiedAut:
    """x_i -> x_perm[i]."""
    gens = alpha.generators()
    fwd = FreeHom(alpha, alpha, tuple(gens[perm[i]] for i in range(alpha.rank)))
    inv = [0] * alpha.rank
    for i, p in enumerate(perm):
        inv[p] = i
    bwd = FreeHom(alpha, alpha, tuple(gens[inv[i]] for i in range(alpha.rank)))
    return VerifiedAut(fwd, bwd)
