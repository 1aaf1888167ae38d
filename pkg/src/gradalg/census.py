"""Deterministic enumeration of groups, gradings of the division part and multiplicities."""

from __future__ import annotations

import itertools
from functools import lru_cache
from fractions import Fraction

from .field import RootField
from .groups import (FinAbGroup, Subgroup, all_subgroups, alternating_bicharacters,
                     coset_table, make_group)

__all__ = [
    "groups_up_to",
    "division_data",
    "kappa_vectors",
    "elementary_2_subgroups",
    "type2_parameters",
]


def _invariant_factor_lists(order: int):
    """All divisibility chains ``m_1 | m_2 | ...`` with product ``order``, each ``m_i >= 2``."""
    def chains(rest, smallest):
        if rest == 1:
            yield []
            return
        for m in range(smallest, rest + 1):
            if rest % m == 0:
                for tail in chains(rest // m, m):
                    if not tail or tail[0] % m == 0:
                        yield [m] + tail
    return list(chains(order, 2))


def groups_up_to(max_order: int) -> list:
    """One group per isomorphism class with ``|G| <= max_order``, by order."""
    out = []
    for order in range(1, max_order + 1):
        for factors in _invariant_factor_lists(order):
            out.append(make_group(factors))
    return out


@lru_cache(maxsize=None)
def division_data(G: FinAbGroup, elementary_2_only: bool = False) -> tuple:
    """All pairs ``(T, beta)`` with ``|T|`` a square and ``beta`` nondegenerate alternating."""
    out = []
    for T in all_subgroups(G):
        if T.sqrt_order is None:
            continue
        if elementary_2_only and not T.is_elementary_2:
            continue
        for beta in alternating_bicharacters(T):
            out.append((T, beta))
    return tuple(out)


def elementary_2_subgroups(G: FinAbGroup) -> list:
    return [S for S in all_subgroups(G) if S.is_elementary_2]


def kappa_vectors(parts: int, max_total: int, min_total: int = 1):
    """Tuples of ``parts`` nonnegative integers with sum in ``[min_total, max_total]``.

    Ordered by total and then lexicographically in reverse (stars and bars).
    """
    for s in range(min_total, max_total + 1):
        for bars in itertools.combinations(range(s + parts - 1), parts - 1):
            prev = -1
            vals = []
            for b in bars:
                vals.append(b - prev - 1)
                prev = b
            vals.append(s + parts - 2 - prev)
            yield tuple(vals)


def type2_parameters(G: FinAbGroup, F: RootField, max_n: int, min_n: int = 2, chi=None):
    """All ``(H, h, beta, kappa, mu0, g0_bar)`` passing the Type II preconditions.

    ``kappa`` runs over the cosets of ``H/<h>`` in ``G/<h>`` and ``mu0`` over
    both square roots of ``chi^-2(g0_bar)``.  Parameters that fail the form
    or compatibility checks are still produced; the builder rejects them.
    With ``chi`` given, only the ``h`` with ``chi(h) = -1`` are used.
    """
    from .lie import type2_context

    for H in elementary_2_subgroups(G):
        for h in H.elements:
            if h == G.identity:
                continue
            if chi is not None and chi(h) != Fraction(1, 2):
                # an explicit chi only serves the h it sends to -1
                continue
            ctx = type2_context(G, H, h, chi)
            Tbar = ctx.Tbar
            if Tbar.sqrt_order is None:
                continue
            ell = Tbar.sqrt_order
            parts = ctx.Gbar.order // Tbar.order
            lo = -(-min_n // ell)
            for beta in alternating_bicharacters(Tbar):
                for g0 in ctx.Gbar.elements:
                    s = F.root(-ctx.chi(ctx.proj.lift(g0)))
                    roots = sorted({s, (-s) % F.p})
                    for kappa in kappa_vectors(parts, max_n // ell, lo):
                        for mu0 in roots:
                            yield H, h, beta, kappa, mu0, g0
