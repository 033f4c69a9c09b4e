"""Finite quotients, coset tables, Schreier transversals and rewriting.

Subgroups are always presented through an action on a finite coset
space: a :class:`FiniteQuotient` gives the regular (or any permutation)
action of a free group; :class:`InducedAction` and :class:`ProductAction`
build coset actions for preimages and intersections without coset
enumeration from presentations.

The coset table is built by breadth-first search from the base point,
trying generators in index order, positive letter before negative; this
fixes the transversal {1, x, y, xy} for the rank-2 mod-2 kernel and
makes every golden value deterministic.  Schreier generators are
enumerated in (transversal position, generator) lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Protocol, Sequence

from .words import Alphabet, Word, WordError, alphabet


class SchreierError(ValueError):
    """Raised for invalid coset data or out-of-subgroup rewriting."""


class CosetAction(Protocol):
    """A right action of a free group on a pointed set."""

    def base(self) -> Hashable: ...

    def step(self, state: Hashable, gen: int, sign: int) -> Hashable: ...


@dataclass(frozen=True)
class FiniteQuotient:
    """Permutation images of the generators acting on {0..size-1}.

    ``perms[i][p]`` is the image of point p under generator i.  The
    coset space of the base-point stabilizer is the orbit of
    ``base_point`` (the action need not be transitive on all points).
    """

    alphabet: Alphabet
    size: int
    perms: tuple[tuple[int, ...], ...]
    base_point: int = 0

    def __post_init__(self):
        if len(self.perms) != self.alphabet.rank:
            raise SchreierError("one permutation per generator required")
        for p in self.perms:
            if sorted(p) != list(range(self.size)):
                raise SchreierError(f"not a permutation of 0..{self.size - 1}: {p}")
        if not 0 <= self.base_point < self.size:
            raise SchreierError("base point out of range")
        object.__setattr__(
            self, "_inverse_perms",
            tuple(tuple(_invert_perm(p)) for p in self.perms))

    def base(self):
        return self.base_point

    def step(self, state: int, gen: int, sign: int) -> int:
        if sign > 0:
            return self.perms[gen][state]
        return self._inverse_perms[gen][state]

    def act_word(self, state: int, w: Word) -> int:
        if w.alphabet != self.alphabet:
            raise WordError("alphabet mismatch")
        for gen, sign in w.letters():
            state = self.step(state, gen, sign)
        return state

    def fixes_base(self, w: Word) -> bool:
        return self.act_word(self.base_point, w) == self.base_point

    @staticmethod
    def from_json(data: dict) -> "FiniteQuotient":
        return FiniteQuotient(
            alphabet=Alphabet(tuple(data["alphabet"])),
            size=int(data["targetSize"]),
            perms=tuple(tuple(int(v) for v in p) for p in data["permutations"]),
            base_point=int(data.get("basePoint", 0)),
        )

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet.names),
            "targetSize": self.size,
            "permutations": [list(p) for p in self.perms],
            "basePoint": self.base_point,
        }


def _invert_perm(p: Sequence[int]) -> list[int]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return inv


def trivial_quotient(alpha: Alphabet) -> FiniteQuotient:
    return FiniteQuotient(alpha, 1, tuple((0,) for _ in range(alpha.rank)))


def abelian_quotient(alpha: Alphabet, moduli: Sequence[int]) -> FiniteQuotient:
    """Regular action of the product of cyclic groups Z/m_i, generator i
    adding 1 to coordinate i."""
    if len(moduli) != alpha.rank:
        raise SchreierError("one modulus per generator required")
    sizes = [int(m) for m in moduli]
    total = 1
    for m in sizes:
        total *= m

    def encode(coords):
        v = 0
        for c, m in zip(coords, sizes):
            v = v * m + c
        return v

    def decode(v):
        coords = []
        for m in reversed(sizes):
            coords.append(v % m)
            v //= m
        return list(reversed(coords))

    perms = []
    for i in range(alpha.rank):
        p = []
        for v in range(total):
            coords = decode(v)
            coords[i] = (coords[i] + 1) % sizes[i]
            p.append(encode(coords))
        perms.append(tuple(p))
    return FiniteQuotient(alpha, total, tuple(perms))


@dataclass(frozen=True)
class SchreierSystem:
    """Coset table, prefix-closed transversal, Schreier generators and
    the Reidemeister rewriting map of a finite-index subgroup."""

    alphabet: Alphabet
    index: int
    transversal: tuple[Word, ...]
    table: dict  # (coset, gen, sign) -> coset
    generators: tuple[Word, ...]
    sub_alphabet: Alphabet
    # (coset, gen) -> index into generators, or None for identity entries
    scan: dict = field(repr=False, default_factory=dict)

    def schreier_generator_count(self) -> int:
        return len(self.generators)

    def coset_of(self, w: Word) -> int:
        if w.alphabet != self.alphabet:
            raise WordError("alphabet mismatch")
        c = 0
        for gen, sign in w.letters():
            c = self.table[(c, gen, sign)]
        return c

    def contains(self, w: Word) -> bool:
        return self.coset_of(w) == 0

    def _scan_letter(self, coset: int, gen: int, sign: int):
        """Next coset plus the Schreier letter consumed, as
        (coset', generator index or None, +-1)."""
        if sign > 0:
            nxt = self.table[(coset, gen, 1)]
            return nxt, self.scan[(coset, gen)], 1
        nxt = self.table[(coset, gen, -1)]
        return nxt, self.scan[(nxt, gen)], -1

    def rewrite(self, w: Word) -> Word:
        """Reidemeister rewriting of a subgroup element into a word over
        the Schreier-generator alphabet."""
        if w.alphabet != self.alphabet:
            raise WordError("alphabet mismatch")
        coset = 0
        letters: list[tuple[int, int]] = []
        for gen, sign in w.letters():
            coset, idx, s = self._scan_letter(coset, gen, sign)
            if idx is not None:
                letters.append((idx, s))
        if coset != 0:
            raise SchreierError(f"word not in the subgroup: {w}")
        return Word.from_syllables(self.sub_alphabet, letters)

    def expand(self, sub_word: Word) -> Word:
        """Substitute each Schreier generator by its word and reduce."""
        if sub_word.alphabet != self.sub_alphabet:
            raise WordError("alphabet mismatch")
        result = self.alphabet.identity()
        for gen, exp in sub_word.syllables:
            result = result * self.generators[gen] ** exp
        return result

    def reordered(self, perm: Sequence[int], names: Sequence[str] | None = None) -> "SchreierSystem":
        """Same subgroup with Schreier generators listed in a new order:
        new generator i is old generator perm[i]."""
        if sorted(perm) != list(range(len(self.generators))):
            raise SchreierError("perm must be a permutation of the generators")
        old_to_new = {old: new for new, old in enumerate(perm)}
        names = tuple(names) if names else tuple(f"e{i + 1}" for i in range(len(perm)))
        return SchreierSystem(
            alphabet=self.alphabet,
            index=self.index,
            transversal=self.transversal,
            table=self.table,
            generators=tuple(self.generators[p] for p in perm),
            sub_alphabet=Alphabet(names),
            scan={k: (None if v is None else old_to_new[v]) for k, v in self.scan.items()},
        )


def schreier_rank(index: int, rank: int) -> int:
    """Rank of a finite-index subgroup of a free group: index*(rank-1)+1."""
    if index < 1 or rank < 1:
        raise ValueError("index and rank must be positive")
    return index * (rank - 1) + 1


def build_schreier_system(action: CosetAction, alpha: Alphabet, *,
                          gen_names: Sequence[str] | None = None,
                          max_cosets: int = 100_000) -> SchreierSystem:
    """Build the Schreier system of the base-point stabilizer.

    BFS order: cosets in discovery order, edges tried generator index
    ascending with the positive letter before the negative one.
    """
    base = action.base()
    state_index = {base: 0}
    transversal: list[Word] = [alpha.identity()]
    table: dict = {}
    queue = [base]
    qpos = 0
    while qpos < len(queue):
        state = queue[qpos]
        c = state_index[state]
        qpos += 1
        for gen in range(alpha.rank):
            for sign in (1, -1):
                nxt = action.step(state, gen, sign)
                if nxt not in state_index:
                    if len(state_index) >= max_cosets:
                        raise SchreierError(
                            f"coset limit exceeded ({max_cosets}); input too large")
                    state_index[nxt] = len(transversal)
                    transversal.append(transversal[c] * alpha.generator(gen, sign))
                    queue.append(nxt)
                table[(c, gen, sign)] = state_index[nxt]
    index = len(transversal)

    generators: list[Word] = []
    scan: dict = {}
    for c in range(index):
        for gen in range(alpha.rank):
            c2 = table[(c, gen, 1)]
            w = transversal[c] * alpha.generator(gen) * transversal[c2].inverse()
            if w.is_identity():
                scan[(c, gen)] = None
            else:
                scan[(c, gen)] = len(generators)
                generators.append(w)

    if gen_names is None:
        gen_names = tuple(f"e{i + 1}" for i in range(len(generators)))
    sub_alphabet = Alphabet(tuple(gen_names))
    return SchreierSystem(
        alphabet=alpha,
        index=index,
        transversal=tuple(transversal),
        table=table,
        generators=tuple(generators),
        sub_alphabet=sub_alphabet,
        scan=scan,
    )


def kernel_subgroup(q: FiniteQuotient, **kwargs) -> SchreierSystem:
    """Schreier system of the stabilizer of the base point (for a
    regular action, the kernel of the quotient map)."""
    return build_schreier_system(q, q.alphabet, **kwargs)


@dataclass(frozen=True)
class SubgroupHom:
    """A homomorphism from a Schreier subgroup, given by one image word
    (over a target alphabet) per Schreier generator.

    Evaluation is rewrite-then-substitute.  When the target is a free
    group, kernel membership is free-word triviality; composing with a
    finite quotient of the target decides membership in preimages of
    finite-index subgroups.
    """

    system: SchreierSystem
    target: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != len(self.system.generators):
            raise SchreierError("one image per Schreier generator required")
        for img in self.images:
            if img.alphabet != self.target:
                raise WordError("image over wrong alphabet")

    def evaluate_sub(self, sub_word: Word) -> Word:
        if sub_word.alphabet != self.system.sub_alphabet:
            raise WordError("alphabet mismatch")
        result = self.target.identity()
        for gen, exp in sub_word.syllables:
            result = result * self.images[gen] ** exp
        return result

    def __call__(self, w: Word) -> Word:
        return self.evaluate_sub(self.system.rewrite(w))

    def in_kernel(self, w: Word) -> bool:
        return self(w).is_identity()


# ---------------------------------------------------------------------------
# Derived coset actions
# ---------------------------------------------------------------------------


class InducedAction:
    """Action of the ambient free group on cosets of the preimage, under
    a subgroup hom, of a finite-index subgroup of the target.

    States are (target point, coset of the Schreier subgroup); a letter
    moves the coset through the coset table and pushes the Schreier
    letter it sweeps out through ``hom`` into the target quotient.  The
    stabilizer of ``base()`` is hom^-1(stabilizer of the target base).
    """

    def __init__(self, sub_hom: SubgroupHom, target_quotient: FiniteQuotient,
                 base_shift: Word | None = None):
        if target_quotient.alphabet != sub_hom.target:
            raise SchreierError("target quotient over wrong alphabet")
        self.sub_hom = sub_hom
        self.system = sub_hom.system
        self.quotient = target_quotient
        self._base = (target_quotient.base_point, 0)
        if base_shift is not None:
            self._base = self._act_word(self._base, base_shift)

    def base(self):
        return self._base

    def step(self, state, gen: int, sign: int):
        pt, coset = state
        coset2, idx, s = self.system._scan_letter(coset, gen, sign)
        if idx is not None:
            img = self.sub_hom.images[idx]
            pt = self.quotient.act_word(pt, img if s > 0 else img.inverse())
        return (pt, coset2)

    def _act_word(self, state, w: Word):
        for gen, sign in w.letters():
            state = self.step(state, gen, sign)
        return state


class ProductAction:
    """Componentwise product of coset actions over the same alphabet;
    the base-point stabilizer is the intersection of the components'."""

    def __init__(self, actions: Sequence[CosetAction]):
        self.actions = list(actions)

    def base(self):
        return tuple(a.base() for a in self.actions)

    def step(self, state, gen: int, sign: int):
        return tuple(a.step(s, gen, sign) for a, s in zip(self.actions, state))


# ---------------------------------------------------------------------------
# Named constructions
# ---------------------------------------------------------------------------

ALPHA_BETA = alphabet("a", "b")


def rank2_mod2_kernel() -> SchreierSystem:
    """The index-4 kernel of F(x,y) -> (Z/2)^2, with transversal
    {1, x, y, xy} and Schreier generators e1..e5 = x^2, yxy^-1x^-1,
    y^2, xyxy^-1, xy^2x^-1."""
    q = abelian_quotient(alphabet("x", "y"), (2, 2))
    return kernel_subgroup(q)


def rank2_outer_hom(system: SchreierSystem | None = None) -> SubgroupHom:
    """The map from the mod-2 kernel onto the free group on a, b:
    e1 -> a, e2 -> 1, e3 -> b, e4 -> a^-1, e5 -> b^-1."""
    system = system or rank2_mod2_kernel()
    sub = system.sub_alphabet
    if sub.rank != 5:
        raise SchreierError("expected a rank-5 subgroup")
    a = ALPHA_BETA.generator(0)
    b = ALPHA_BETA.generator(1)
    images = (a, ALPHA_BETA.identity(), b, a.inverse(), b.inverse())
    return SubgroupHom(system, ALPHA_BETA, images)


def rank3_c2_kernel() -> SchreierSystem:
    """The index-2 kernel of F(x,y,z) -> C2 (x -> the involution,
    y, z -> 1), with generators ordered x^2, y, xyx^-1, z, xzx^-1."""
    alpha = alphabet("x", "y", "z")
    q = FiniteQuotient(alpha, 2, ((1, 0), (0, 1), (0, 1)))
    system = kernel_subgroup(q)
    # BFS scan order lists [y, z, x^2, xyx^-1, xzx^-1]; reorder to put
    # the x-conjugate right after each plain generator.
    texts = ["x^2", "y", "x y x^-1", "z", "x z x^-1"]
    want = [str(_parse(alpha, t)) for t in texts]
    have = [str(g) for g in system.generators]
    perm = [have.index(w) for w in want]
    return system.reordered(perm)


def _parse(alpha: Alphabet, text: str) -> Word:
    from .words import parse_word

    return parse_word(text, alpha)
