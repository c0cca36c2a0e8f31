"""Cocyclic subgroups (kernels of characters), the lattice they generate
inside the scalar homogeneous-function group, and the quotient invariants.

For a finite abelian G, the degree-1 scalar homogeneous functions form
``+ C^`` over the cyclic subgroups C (one character of C per summand,
identified with Z/|C| through the canonical generator). Extending a
character of a cocyclic subgroup K by zero off K gives a homogeneous
function; the subgroup those generate, and the quotient by it, are computed
here. For odd |G| the quotient is the SK1 invariant of the integral group
ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import prod

from .bracket import Target, graded_presentation, hom_invariants
from .groups import (
    Group,
    GroupElement,
    cyclic_subgroups,
    element_order,
    invariant_factors_from_orders,
    sylow_decompose,
)
from .snf import IntMatrix, cokernel_invariants, subgroup_basis, subgroup_invariants


@dataclass(frozen=True)
class CocyclicSubgroup:
    """A subgroup with cyclic quotient: sorted member element indices, an
    independent generator basis with its ascending order chain, and the
    (cyclic) quotient order."""

    members: tuple[int, ...]
    generator_basis: tuple[GroupElement, ...]
    basis_orders: tuple[int, ...]
    quotient_order: int

    @property
    def size(self) -> int:
        return len(self.members)


@lru_cache(maxsize=None)
def cocyclic_subgroups(group: Group) -> tuple[CocyclicSubgroup, ...]:
    """All subgroups K with G/K cyclic, smallest first.

    Every such K is the kernel of a character (G/K cyclic embeds into the
    scalar group), so scanning the |G| characters and deduplicating kernels
    is complete — no general subgroup lattice needed.
    """
    e = group.exponent
    weights = [e // n for n in group.factor_orders]
    elements = list(group.elements())
    kernels: set[tuple[int, ...]] = set()
    for chi in elements:
        members = tuple(
            idx
            for idx, g in enumerate(elements)
            if sum(c * x * w for c, x, w in zip(chi, g, weights)) % e == 0
        )
        kernels.add(members)

    out = []
    for members in sorted(kernels, key=lambda m: (len(m), m)):
        rows = [list(elements[i]) for i in members]
        basis = subgroup_basis(rows, list(group.factor_orders))
        orders = tuple(order for _, order in basis)
        assert prod(orders) == len(members), "basis does not span the kernel"
        out.append(
            CocyclicSubgroup(
                members=members,
                generator_basis=tuple(vec for vec, _ in basis),
                basis_orders=orders,
                quotient_order=group.order // len(members),
            )
        )
    return tuple(out)


def _basis_coordinates(group: Group, k: CocyclicSubgroup) -> dict[int, tuple[int, ...]]:
    """Element index -> coordinates over k's generator basis."""
    coords = {}
    for combo in itertools.product(*(range(m) for m in k.basis_orders)):
        g = group.zero
        for c, vec in zip(combo, k.generator_basis):
            g = group.add(g, group.scale(c, vec))
        coords[group.element_index(g)] = combo
    assert len(coords) == k.size, "generator basis is not independent"
    return coords


def cocyclic_vector(
    group: Group, k: CocyclicSubgroup, phi: tuple[int, ...]
) -> tuple[int, ...]:
    """Coordinates over ``+ Z/|C|`` of the extension-by-zero of the
    character ``phi`` of K (given in K's basis coordinates).

    At a cyclic subgroup C contained in K the coordinate is
    ``phi(x_C) * |C|``; at any other C the canonical generator lies
    outside K and the function vanishes, so the coordinate is 0.
    """
    if len(phi) != len(k.basis_orders):
        raise ValueError(
            f"expected {len(k.basis_orders)} character coordinates, got {len(phi)}"
        )
    for p, m in zip(phi, k.basis_orders):
        if not 0 <= p < m:
            raise ValueError(f"character coordinate {p} out of range for order {m}")
    coords = _basis_coordinates(group, k)
    member_set = frozenset(k.members)
    out = []
    for rec in cyclic_subgroups(group):
        if member_set.issuperset(rec.members):
            cvec = coords[group.element_index(rec.canonical_generator)]
            c = rec.subgroup_order
            val = sum(
                p * (cj * c // mj) for p, cj, mj in zip(phi, cvec, k.basis_orders)
            )
            out.append(val % c)
        else:
            out.append(0)
    return tuple(out)


def _chosen_generator(group: Group, rec, generator_choice) -> GroupElement:
    if generator_choice is None:
        return rec.canonical_generator
    x = generator_choice(rec)
    if (
        group.element_index(x) not in rec.members
        or element_order(group, x) != rec.subgroup_order
    ):
        raise ValueError(
            f"{x} does not generate the subgroup of {rec.canonical_generator}"
        )
    return x


def _kernel_betas(group: Group, k: CocyclicSubgroup, generator_choice):
    """Per cyclic-subgroup column: None when the column's subgroup is not
    inside K, else ``(|C|, [beta_j])`` where the extension by zero of the
    j-th basis character takes value beta_j/|C| at the column's generator."""
    coords = _basis_coordinates(group, k)
    member_set = frozenset(k.members)
    betas = []
    for rec in cyclic_subgroups(group):
        if not member_set.issuperset(rec.members):
            betas.append(None)
            continue
        x = _chosen_generator(group, rec, generator_choice)
        cvec = coords[group.element_index(x)]
        c = rec.subgroup_order
        betas.append((c, [cj * c // mj for cj, mj in zip(cvec, k.basis_orders)]))
    return betas


def coc_generator_matrix(group: Group, generator_choice=None) -> IntMatrix:
    """One row per (cocyclic subgroup, character of it), in deterministic
    order; columns follow the cyclic-subgroup order. The row set generates
    the cocyclic lattice because extension-by-zero is additive in the
    character.

    ``generator_choice`` (a map from cyclic-subgroup record to a generator
    of it) re-bases the column identifications; invariants downstream must
    not depend on it.
    """
    rows: IntMatrix = []
    for k in cocyclic_subgroups(group):
        betas = _kernel_betas(group, k, generator_choice)
        for phi in itertools.product(*(range(m) for m in k.basis_orders)):
            row = []
            for beta in betas:
                if beta is None:
                    row.append(0)
                else:
                    c, bs = beta
                    row.append(sum(p * b for p, b in zip(phi, bs)) % c)
            rows.append(row)
    return rows


def _coc_basis_rows(group: Group, generator_choice=None) -> IntMatrix:
    """Rows for a basis of each kernel's character group only. The full
    matrix is additive in the character, so these generate the same
    lattice in a fraction of the rows."""
    rows: IntMatrix = []
    for k in cocyclic_subgroups(group):
        betas = _kernel_betas(group, k, generator_choice)
        for j in range(len(k.basis_orders)):
            rows.append(
                [0 if beta is None else beta[1][j] % beta[0] for beta in betas]
            )
    return rows


@dataclass(frozen=True)
class SK1Report:
    """Invariant factors of the scalar homogeneous functions, the cocyclic
    lattice inside them, and the quotient; the quotient is the SK1 of the
    integral group ring exactly when the order is odd."""

    group: Group
    hmg_invariants: tuple[int, ...]
    coc_invariants: tuple[int, ...]
    quotient_invariants: tuple[int, ...]
    theorem_applies: bool

    @property
    def q_counts(self) -> dict[int, int]:
        return {
            part.prime: part.q_complement for part in sylow_decompose(self.group)
        }

    def to_json_dict(self) -> dict:
        return {
            "group": self.group.canonical_spec,
            "hmg": list(self.hmg_invariants),
            "coc": list(self.coc_invariants),
            "sk1": list(self.quotient_invariants),
            "theorem_4_1_applies": self.theorem_applies,
            "q_counts": {str(p): q for p, q in sorted(self.q_counts.items())},
        }


def sk1_invariants(group: Group, generator_choice=None) -> SK1Report:
    """The quotient of scalar homogeneous functions by the cocyclic lattice.

    Computed as the cokernel of the generator matrix in the ambient
    ``+ Z/|C|``. Even orders are computed too but flagged: the group-ring
    identification is only available for odd groups.
    """
    if generator_choice is None:
        return _sk1_invariants_default(group)
    return _sk1_compute(group, generator_choice)


@lru_cache(maxsize=None)
def _sk1_invariants_default(group: Group) -> SK1Report:
    return _sk1_compute(group, None)


def _sk1_compute(group: Group, generator_choice) -> SK1Report:
    moduli = [rec.subgroup_order for rec in cyclic_subgroups(group)]
    hmg = hom_invariants(graded_presentation(group, 1), Target.QZ)
    rows = _coc_basis_rows(group, generator_choice)
    quotient = cokernel_invariants(rows, moduli)
    coc = subgroup_invariants(rows, moduli)
    assert prod(hmg) == prod(coc) * prod(quotient), "order bookkeeping broke"
    return SK1Report(
        group=group,
        hmg_invariants=hmg,
        coc_invariants=coc,
        quotient_invariants=quotient,
        theorem_applies=group.order % 2 == 1,
    )


@dataclass(frozen=True)
class SylowComparison:
    """Direct quotient invariants vs the primary-decomposition assembly
    (one copy of each p-part's quotient per cyclic subgroup of the
    complement)."""

    group: Group
    direct: tuple[int, ...]
    assembled: tuple[int, ...]
    equal: bool
    per_prime: tuple[tuple[int, tuple[int, ...], int], ...]


def sk1_sylow_check(group: Group) -> SylowComparison:
    direct = sk1_invariants(group).quotient_invariants
    collected: list[int] = []
    per_prime = []
    for part in sylow_decompose(group):
        part_quotient = sk1_invariants(part.p_part).quotient_invariants
        per_prime.append((part.prime, part_quotient, part.q_complement))
        collected.extend(list(part_quotient) * part.q_complement)
    assembled = invariant_factors_from_orders(collected)
    return SylowComparison(
        group=group,
        direct=direct,
        assembled=assembled,
        equal=direct == assembled,
        per_prime=tuple(per_prime),
    )
