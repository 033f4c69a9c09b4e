"""The explicit congruence-subgroup construction for the rank-2 case.

Given a finite-index subgroup K of the outer free group on a, b
(encoded as the base-point stabilizer of a finite quotient) and an odd
prime p coprime to 6n, this builds membership oracles for

    N = F'F^6  intersect  t_i^-1 pi^-1(K) t_i   (i = 1..4)
    M = F'F^4  intersect  N' N^p

together with an exactly computed order certificate for F/M against the
divisibility bound 144 n^4 p^(36 n^4 + 1).  The order of F/M is never
obtained by coset enumeration: it factors as

    [F : N' N^p] * |image of N' N^p in F/F'F^4|

with [F : N' N^p] = [F : N] * p^rank(N) by the Schreier formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quotients import (
    ALPHA_BETA,
    FiniteQuotient,
    InducedAction,
    ProductAction,
    abelian_quotient,
    build_schreier_system,
    rank2_mod2_kernel,
    rank2_outer_hom,
    schreier_rank,
)
from .words import Word, WordError, alphabet

F2 = alphabet("x", "y")


class CongruenceError(ValueError):
    """Raised for invalid congruence inputs or resource-cap overruns."""


@dataclass(frozen=True)
class CongruenceInput:
    """A finite quotient of the outer group defining K, plus an odd
    prime p with p coprime to 6n (n = index of K)."""

    k_quotient: FiniteQuotient
    p: int

    def __post_init__(self):
        if self.k_quotient.alphabet != ALPHA_BETA:
            raise CongruenceError("K quotient must be over the alphabet (a, b)")
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1)):
            raise CongruenceError(f"p = {self.p} is not prime")
        n = self.k_index
        if (6 * n) % self.p == 0:
            raise CongruenceError(f"p = {self.p} divides 6n = {6 * n}")

    @property
    def k_index(self) -> int:
        """Orbit size of the base point = index of K."""
        seen = {self.k_quotient.base_point}
        stack = [self.k_quotient.base_point]
        while stack:
            pt = stack.pop()
            for gen in range(self.k_quotient.alphabet.rank):
                for sign in (1, -1):
                    nxt = self.k_quotient.step(pt, gen, sign)
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
        return len(seen)


class NOracle:
    """Membership oracle and Schreier system for N."""

    def __init__(self, input: CongruenceInput, max_cosets: int = 100_000):
        self.input = input
        self.delta = rank2_mod2_kernel()
        self.pi = rank2_outer_hom(self.delta)
        self.transversal = self.delta.transversal  # (1, x, y, xy)

        mod6 = abelian_quotient(F2, (6, 6))
        conjugated = [
            InducedAction(self.pi, input.k_quotient, base_shift=t)
            for t in self.transversal
        ]
        product = ProductAction([mod6] + conjugated)
        self.schreier = build_schreier_system(product, F2, max_cosets=max_cosets)
        self.index = self.schreier.index
        self.rank = schreier_rank(self.index, 2)
        n = input.k_index
        if (36 * n ** 4) % self.index != 0:
            raise CongruenceError(
                f"index {self.index} of N does not divide 36 n^4 = {36 * n ** 4}")

    def contains(self, w: Word) -> bool:
        """Direct membership: exponent sums divisible by 6 and every
        conjugate t_i w t_i^-1 mapping into K under the outer hom."""
        if w.alphabet != F2:
            raise WordError("word must be over (x, y)")
        if any(s % 6 for s in w.exponent_sums()):
            return False
        for t in self.transversal:
            conj = t * w * t.inverse()
            if not self.input.k_quotient.fixes_base(self.pi(conj)):
                return False
        return True


class MOracle:
    """Membership oracle for M = F'F^4 intersect N' N^p."""

    def __init__(self, n_oracle: NOracle):
        self.n_oracle = n_oracle
        self.p = n_oracle.input.p

    def contains(self, w: Word) -> bool:
        if any(s % 4 for s in w.exponent_sums()):
            return False
        if not self.n_oracle.schreier.contains(w):
            return False
        vec = self.n_oracle.schreier.rewrite(w).exponent_sums()
        return all(v % self.p == 0 for v in vec)


def build_n(input: CongruenceInput, max_cosets: int = 100_000) -> NOracle:
    return NOracle(input, max_cosets=max_cosets)


def build_m(input: CongruenceInput, max_cosets: int = 100_000) -> MOracle:
    return MOracle(build_n(input, max_cosets=max_cosets))


@dataclass(frozen=True)
class Certificate:
    """Exact order data for F/M and the divisibility verdict."""

    n: int
    p: int
    index_of_n: int
    rank_of_n: int
    order_mod_npn: int      # [F : N' N^p]
    image_order_in_4torus: int
    order_mod_m: int        # [F : M]
    bound: int
    divides: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "indexOfN": self.index_of_n,
            "rankOfN": self.rank_of_n,
            "orderOfF2ModNpN": str(self.order_mod_npn),
            "imageOrderIn4Torus": self.image_order_in_4torus,
            "orderOfF2ModM": str(self.order_mod_m),
            "bound": str(self.bound),
            "divides": self.divides,
        }


def _subgroup_order_mod4(vectors) -> int:
    """Order of the subgroup of (Z/4)^2 generated by the given vectors."""
    elements = {(0, 0)}
    frontier = [(0, 0)]
    gens = [tuple(v % 4 for v in vec) for vec in vectors]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = ((cur[0] + g[0]) % 4, (cur[1] + g[1]) % 4)
            if nxt not in elements:
                elements.add(nxt)
                frontier.append(nxt)
    return len(elements)


def certify(input: CongruenceInput, max_cosets: int = 100_000,
            n_oracle: NOracle | None = None) -> Certificate:
    oracle = n_oracle or build_n(input, max_cosets=max_cosets)
    n = input.k_index
    p = input.p
    order_mod_npn = oracle.index * p ** oracle.rank
    image_vectors = [
        tuple(p * s for s in g.exponent_sums()) for g in oracle.schreier.generators
    ]
    image_order = _subgroup_order_mod4(image_vectors)
    order_mod_m = order_mod_npn * image_order
    bound = 144 * n ** 4 * p ** (36 * n ** 4 + 1)
    return Certificate(
        n=n,
        p=p,
        index_of_n=oracle.index,
        rank_of_n=oracle.rank,
        order_mod_npn=order_mod_npn,
        image_order_in_4torus=image_order,
        order_mod_m=order_mod_m,
        bound=bound,
        divides=bound % order_mod_m == 0,
    )
