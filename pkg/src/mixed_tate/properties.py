"""Seeded random bar words and the Hopf-axiom property suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import ONE, CdgaElement, rho, unit
from .bar import (
    BarElement,
    bar_d,
    coproduct,
    coproduct_slot,
    counit_slot,
    d_external,
    d_internal,
    shuffle,
    tensor_d,
    tensor_product,
)


# a small pool of generators in three field symbols, enough to make every
# product, differential and sign rule non-trivial
def generator_pool() -> list[CdgaElement]:
    return [unit("a"), unit("b"), unit("c"), rho(2, "a"), rho(3, "a"), rho(2, "b"), rho(4, "b")]


def random_letter(rng: random.Random, pool: list[CdgaElement]) -> CdgaElement:
    z = ONE
    for _ in range(rng.choice([1, 1, 1, 2])):
        z = z * rng.choice(pool)
    if not z:
        z = rng.choice(pool)
    return z * rng.choice([1, -1, 2])


def random_word(rng: random.Random, max_len: int = 4, pool: list[CdgaElement] | None = None) -> BarElement:
    pool = pool or generator_pool()
    return BarElement.word(*[random_letter(rng, pool) for _ in range(rng.randint(0, max_len))])


def homogeneous_parts(x: BarElement) -> list[BarElement]:
    return [BarElement({k: c}, x.module) for k, c in x.items()]


CHECKS = (
    "d_squared",
    "d_internal_external_anticommute",
    "coassociativity",
    "counitarity",
    "shuffle_leibniz",
    "shuffle_associativity",
    "shuffle_graded_commutativity",
    "coproduct_algebra_map",
    "coproduct_chain_map",
)


@dataclass
class SuiteResult:
    samples: int
    failures: dict[str, int] = field(default_factory=dict)
    first_failure: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def record(self, name: str, passed: bool, context: str) -> None:
        self.failures.setdefault(name, 0)
        if not passed:
            self.failures[name] += 1
            self.first_failure.setdefault(name, context)


def hopf_suite(samples: int = 200, seed: int = 0, max_len: int = 4) -> SuiteResult:
    """Check the dga and Hopf identities of B(N) on seeded random words."""
    rng = random.Random(seed)
    res = SuiteResult(samples)
    for _ in range(samples):
        x, y, z = (random_word(rng, max_len) for _ in range(3))
        ctx = f"x = {x}"
        res.record("d_squared", not bar_d(bar_d(x)), ctx)
        res.record("d_internal_external_anticommute",
                   not (d_internal(d_external(x)) + d_external(d_internal(x))), ctx)
        dx = coproduct(x)
        res.record("coassociativity", coproduct_slot(dx, 0) == coproduct_slot(dx, 1), ctx)
        res.record("counitarity", counit_slot(dx, 0) == x and counit_slot(dx, 1) == x, ctx)
        xs, ys = homogeneous_parts(x), homogeneous_parts(y)
        leib = comm = True
        for xi in xs:
            p = xi.degrees().pop()
            if bar_d(shuffle(xi, y)) != shuffle(bar_d(xi), y) + shuffle(xi, bar_d(y)) * (-1) ** p:
                leib = False
            for yi in ys:
                q = yi.degrees().pop()
                if shuffle(xi, yi) != shuffle(yi, xi) * (-1) ** (p * q):
                    comm = False
        res.record("shuffle_leibniz", leib, ctx + f", y = {y}")
        res.record("shuffle_graded_commutativity", comm, ctx + f", y = {y}")
        res.record("shuffle_associativity", shuffle(shuffle(x, y), z) == shuffle(x, shuffle(y, z)),
                   ctx + f", y = {y}, z = {z}")
        res.record("coproduct_algebra_map", coproduct(shuffle(x, y)) == tensor_product(dx, coproduct(y)),
                   ctx + f", y = {y}")
        res.record("coproduct_chain_map", tensor_d(dx) == coproduct(bar_d(x)), ctx)
    return res
