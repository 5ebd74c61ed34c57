from __future__ import annotations

from dataclasses import dataclass
import functools
import logging

from symdef.algebra.ideals import (
    MonomialIdeal,
    add,
    contains,
    intersect,
    intersect_all,
    minimize,
    pure_power_exponents,
    support,
)


LOGGER = logging.getLogger("symdef.decomposition")
DECOMPOSITION_CACHE_SIZE = 512

Support = frozenset[int]


class DegenerateIdealError(ValueError):
    pass


class NotMaximalSupportError(ValueError):
    pass


@dataclass(frozen=True)
class IrreducibleComponent:
    arity: int
    pure_powers: tuple[tuple[int, int], ...]

    @property
    def support(self) -> Support:
        return frozenset(index for index, _ in self.pure_powers)

    def exponents(self) -> dict[int, int]:
        return dict(self.pure_powers)

    def ideal(self) -> MonomialIdeal:
        gens = []
        for index, exponent in self.pure_powers:
            gen = [0] * self.arity
            gen[index] = exponent
            gens.append(gen)
        return minimize(gens, self.arity)

    def contains_component(self, other: "IrreducibleComponent") -> bool:
        """True when `other` ⊆ self."""
        mine = self.exponents()
        return all(index in mine and mine[index] <= exponent for index, exponent in other.pure_powers)


@dataclass(frozen=True)
class PrimaryComponent:
    support: Support
    ideal: MonomialIdeal


@dataclass(frozen=True)
class PrimaryDecomposition:
    arity: int
    components: tuple[PrimaryComponent, ...]
    max_supports: tuple[Support, ...]

    def supports(self) -> set[Support]:
        return {component.support for component in self.components}


def irreducible_decomposition(ideal: MonomialIdeal) -> frozenset[IrreducibleComponent]:
    _require_proper(ideal)
    return _irreducible_cached(ideal)


def associated_primes(ideal: MonomialIdeal) -> set[Support]:
    return {component.support for component in irreducible_decomposition(ideal)}


def minimal_primes(ideal: MonomialIdeal) -> set[Support]:
    primes = associated_primes(ideal)
    return {p for p in primes if not any(q < p for q in primes)}


def has_embedded_primes(ideal: MonomialIdeal) -> bool:
    primes = associated_primes(ideal)
    return any(q < p for p in primes for q in primes)


def is_maximal_associated(ideal: MonomialIdeal) -> bool:
    return frozenset(range(ideal.arity)) in associated_primes(ideal)


def primary_decomposition(ideal: MonomialIdeal) -> PrimaryDecomposition:
    _require_proper(ideal)
    return _primary_cached(ideal)


def q_subset_p(decomposition: PrimaryDecomposition, prime: Support) -> MonomialIdeal:
    prime = frozenset(prime)
    if prime not in decomposition.max_supports:
        raise NotMaximalSupportError(f"Support {sorted(prime)} is not a maximal associated prime.")
    return intersect_all(
        (component.ideal for component in decomposition.components if component.support <= prime),
        decomposition.arity,
    )


@functools.lru_cache(maxsize=DECOMPOSITION_CACHE_SIZE)
def _irreducible_cached(ideal: MonomialIdeal) -> frozenset[IrreducibleComponent]:
    found = _split(ideal)
    pruned = [
        component
        for component in found
        if not any(other != component and component.contains_component(other) for other in found)
    ]
    pruned.sort(key=lambda component: component.pure_powers)
    kept = list(pruned)
    for component in pruned:
        rest = [other.ideal() for other in kept if other != component]
        if rest and intersect_all(rest, ideal.arity) == ideal:
            kept.remove(component)
    LOGGER.debug("irreducible decomposition: %d split leaves, %d kept", len(found), len(kept))
    return frozenset(kept)


@functools.lru_cache(maxsize=DECOMPOSITION_CACHE_SIZE)
def _primary_cached(ideal: MonomialIdeal) -> PrimaryDecomposition:
    groups: dict[Support, MonomialIdeal] = {}
    for component in sorted(_irreducible_cached(ideal), key=lambda c: c.pure_powers):
        key = component.support
        groups[key] = intersect(groups[key], component.ideal()) if key in groups else component.ideal()
    ordered = sorted(groups.items(), key=lambda item: (len(item[0]), sorted(item[0])))
    components = [PrimaryComponent(support=key, ideal=value) for key, value in ordered]
    for component in list(components):
        rest = [other.ideal for other in components if other is not component]
        if rest and contains(component.ideal, intersect_all(rest, ideal.arity)):
            components.remove(component)
    supports = [component.support for component in components]
    max_supports = tuple(p for p in supports if not any(p < q for q in supports))
    return PrimaryDecomposition(arity=ideal.arity, components=tuple(components), max_supports=max_supports)


def _split(ideal: MonomialIdeal) -> set[IrreducibleComponent]:
    found: set[IrreducibleComponent] = set()
    seen: set[MonomialIdeal] = set()
    stack = [ideal]
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        mixed = next((gen for gen in current.generators if len(support(gen)) >= 2), None)
        if mixed is None:
            exponents = pure_power_exponents(current) or {}
            found.add(IrreducibleComponent(arity=ideal.arity, pure_powers=tuple(sorted(exponents.items()))))
            continue
        index = min(support(mixed))
        head = [0] * ideal.arity
        head[index] = mixed[index]
        tail = list(mixed)
        tail[index] = 0
        stack.append(add(current, minimize([head], ideal.arity)))
        stack.append(add(current, minimize([tail], ideal.arity)))
    return found


def _require_proper(ideal: MonomialIdeal) -> None:
    if ideal.is_zero:
        raise DegenerateIdealError("The zero ideal has no monomial primary decomposition.")
    if ideal.is_unit:
        raise DegenerateIdealError("The unit ideal has no associated primes.")
