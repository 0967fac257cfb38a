"""Buchberger's algorithm and ideal arithmetic over Q.

All computations are exact.  Monomial orders are weighted graded reverse
lexicographic (the default everywhere) and a two-block elimination order used
by eliminate/intersection.  Every reduction ticks a step budget so runaway
computations surface as BudgetExceededError instead of hanging.
"""

from __future__ import annotations

import heapq
import itertools
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .poly import (
    Exponents,
    Polynomial,
    RingSignature,
    grevlex_key,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEFAULT_MAX_STEPS = 1_000_000


class BudgetExceededError(RuntimeError):
    """The step budget ran out before the computation finished."""


class StepBudget:
    """Counts reduction steps; tick() raises once the limit is exhausted."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int = DEFAULT_MAX_STEPS):
        if limit < 1:
            raise ValueError("step budget must be positive")
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceededError(
                f"step budget of {self.limit} exceeded; raise --max-steps to continue")


_budget_var: ContextVar[StepBudget | None] = ContextVar("difftrace_budget", default=None)


@contextmanager
def step_budget(limit: int):
    """Run the enclosed computations under one shared step budget."""
    token = _budget_var.set(StepBudget(limit))
    try:
        yield _budget_var.get()
    finally:
        _budget_var.reset(token)


def current_budget() -> StepBudget:
    """The ambient budget, or a fresh default-sized one per top-level call."""
    budget = _budget_var.get()
    return budget if budget is not None else StepBudget()


# -- monomial orders ----------------------------------------------------------

@dataclass(frozen=True)
class WeightedGrevlex:
    """Graded reverse lexicographic order refined by weighted total degree."""

    weights: tuple[int, ...]

    def key(self, exps: Exponents):
        return grevlex_key(exps, self.weights)


@dataclass(frozen=True)
class BlockOrder:
    """Eliminates the first `cut` variables: block-wise grevlex comparison."""

    weights: tuple[int, ...]
    cut: int

    def key(self, exps: Exponents):
        c = self.cut
        return (grevlex_key(exps[:c], self.weights[:c]),
                grevlex_key(exps[c:], self.weights[c:]))


Order = WeightedGrevlex | BlockOrder


def default_order(sig: RingSignature) -> WeightedGrevlex:
    return WeightedGrevlex(sig.weights)


def leading_monomial(p: Polynomial, order: Order) -> Exponents:
    cached = p._lead_cache.get(order)
    if cached is None:
        if p.is_zero:
            raise ValueError("the zero polynomial has no leading monomial")
        cached = max(p.terms, key=order.key)
        p._lead_cache[order] = cached
    return cached


def leading_coefficient(p: Polynomial, order: Order) -> Fraction:
    return p.terms[leading_monomial(p, order)]


def monic(p: Polynomial, order: Order) -> Polynomial:
    lc = leading_coefficient(p, order)
    return p if lc == 1 else p.scale(1 / lc)


# -- division and Buchberger --------------------------------------------------

def normal_form_raw(p: Polynomial, basis: Sequence[Polynomial], order: Order,
                    budget: StepBudget | None = None) -> Polynomial:
    """Full remainder of p under multivariate division by basis.

    No term of the result is divisible by any basis leading monomial.
    """
    if budget is None:
        budget = current_budget()
    divisors = [(leading_monomial(g, order), g) for g in basis if not g.is_zero]
    work = p
    remainder: dict[Exponents, Fraction] = {}
    while not work.is_zero:
        lead = leading_monomial(work, order)
        coef = work.terms[lead]
        for lm, g in divisors:
            if mono_divides(lm, lead):
                budget.tick()
                shift = mono_div(lead, lm)
                factor = coef / g.terms[lm]
                work = work - g.mul_monomial(shift, factor)
                break
        else:
            remainder[lead] = coef
            stripped = dict(work.terms)
            del stripped[lead]
            work = Polynomial(p.sig, stripped)
    return Polynomial(p.sig, remainder)


def s_polynomial(f: Polynomial, g: Polynomial, order: Order) -> Polynomial:
    lf, lg = leading_monomial(f, order), leading_monomial(g, order)
    lcm = mono_lcm(lf, lg)
    left = f.mul_monomial(mono_div(lcm, lf), 1 / f.terms[lf])
    right = g.mul_monomial(mono_div(lcm, lg), 1 / g.terms[lg])
    return left - right


def buchberger(gens: Iterable[Polynomial], order: Order,
               budget: StepBudget | None = None) -> tuple[Polynomial, ...]:
    """The unique reduced Groebner basis of the ideal generated by gens.

    Pairs are processed in ascending lcm order; the coprime-lead and chain
    criteria prune useless pairs before any reduction work happens.
    """
    if budget is None:
        budget = current_budget()
    basis = [monic(g, order) for g in gens if not g.is_zero]
    if not basis:
        return ()

    lms = [leading_monomial(g, order) for g in basis]
    pending: set[tuple[int, int]] = set()
    heap: list = []
    counter = itertools.count()

    def push_pair(i: int, j: int):
        lcm = mono_lcm(lms[i], lms[j])
        heapq.heappush(heap, (order.key(lcm), next(counter), i, j, lcm))
        pending.add((i, j))

    for i, j in itertools.combinations(range(len(basis)), 2):
        push_pair(i, j)

    while heap:
        _, _, i, j, lcm = heapq.heappop(heap)
        pending.discard((i, j))
        budget.tick()
        # coprime leading monomials: the S-polynomial reduces to zero
        if lcm == mono_mul(lms[i], lms[j]):
            continue
        # chain criterion: some g_k divides the lcm and both companion pairs
        # are no longer pending
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(lms[k], lcm):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik not in pending and pjk not in pending:
                skip = True
                break
        if skip:
            continue
        remainder = normal_form_raw(s_polynomial(basis[i], basis[j], order),
                                    basis, order, budget)
        if remainder.is_zero:
            continue
        remainder = monic(remainder, order)
        basis.append(remainder)
        lms.append(leading_monomial(remainder, order))
        new = len(basis) - 1
        for t in range(new):
            push_pair(t, new)

    return _reduce_basis(basis, order, budget)


def _reduce_basis(basis: list[Polynomial], order: Order,
                  budget: StepBudget) -> tuple[Polynomial, ...]:
    """Minimalize leading monomials, then tail-reduce to the reduced basis."""
    lms = [leading_monomial(g, order) for g in basis]
    keep: list[int] = []
    for i, lm in enumerate(lms):
        dominated = False
        for j, other in enumerate(lms):
            if j == i:
                continue
            if mono_divides(other, lm) and (other != lm or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    minimal = [basis[i] for i in keep]
    reduced = []
    for i, g in enumerate(minimal):
        rest = minimal[:i] + minimal[i + 1:]
        r = normal_form_raw(g, rest, order, budget)
        if not r.is_zero:
            reduced.append(monic(r, order))
    reduced.sort(key=lambda g: order.key(leading_monomial(g, order)))
    return tuple(reduced)


# -- ideal handles and operations ---------------------------------------------

class IdealHandle:
    """An ideal of a polynomial ring: generators plus a cached reduced basis."""

    __slots__ = ("sig", "gens", "order", "__dict__")

    def __init__(self, sig: RingSignature, gens: Iterable[Polynomial],
                 order: Order | None = None):
        self.sig = sig
        self.order = order if order is not None else default_order(sig)
        gen_list = []
        for g in gens:
            if g.sig != sig:
                raise ValueError("generator signature does not match the handle")
            if not g.is_zero:
                gen_list.append(g)
        self.gens = tuple(gen_list)

    @cached_property
    def groebner_basis(self) -> tuple[Polynomial, ...]:
        return buchberger(self.gens, self.order)

    @property
    def is_trivial(self) -> bool:
        gb = self.groebner_basis
        return len(gb) == 1 and gb[0].is_constant()

    @property
    def is_zero(self) -> bool:
        return not self.groebner_basis

    def __repr__(self) -> str:
        inside = ", ".join(str(g) for g in self.gens) or "0"
        return f"Ideal({inside})"


def _check_same_ambient(I: IdealHandle, J: IdealHandle):
    if I.sig != J.sig:
        raise ValueError("ideal operands live over different signatures")


def normal_form(p: Polynomial, I: IdealHandle) -> Polynomial:
    if p.sig != I.sig:
        raise ValueError("polynomial signature does not match the ideal")
    return normal_form_raw(p, I.groebner_basis, I.order)


def ideal_membership(p: Polynomial, I: IdealHandle) -> bool:
    return normal_form(p, I).is_zero


def ideal_equals(I: IdealHandle, J: IdealHandle) -> bool:
    """Literal equality of ideals via their unique reduced bases."""
    _check_same_ambient(I, J)
    if I.order != J.order:
        return buchberger(I.gens, J.order) == J.groebner_basis
    return I.groebner_basis == J.groebner_basis


def ideal_contains(I: IdealHandle, J: IdealHandle) -> bool:
    """Whether every generator of J lies in I."""
    _check_same_ambient(I, J)
    return all(ideal_membership(g, I) for g in J.gens)


def ideal_sum(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    _check_same_ambient(I, J)
    seen = list(I.gens)
    for g in J.gens:
        if g not in seen:
            seen.append(g)
    return IdealHandle(I.sig, seen, I.order)


def ideal_product(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    _check_same_ambient(I, J)
    products = []
    for f in I.gens:
        for g in J.gens:
            fg = f * g
            if fg not in products:
                products.append(fg)
    return IdealHandle(I.sig, products, I.order)


def _fresh_name(sig: RingSignature, stem: str = "t") -> str:
    if stem not in sig.names:
        return stem
    for k in itertools.count():
        candidate = f"{stem}{k}"
        if candidate not in sig.names:
            return candidate


def _lift(p: Polynomial, target: RingSignature, positions: Sequence[int]) -> Polynomial:
    """Reinterpret p in target, sending variable i to positions[i]."""
    terms = {}
    for exps, coef in p.terms.items():
        out = [0] * target.nvars
        for i, e in enumerate(exps):
            out[positions[i]] = e
        terms[tuple(out)] = coef
    return Polynomial(target, terms)


def _drop_front(p: Polynomial, k: int, target: RingSignature) -> Polynomial:
    return Polynomial(target, {exps[k:]: c for exps, c in p.terms.items()})


def eliminate(I: IdealHandle, k: int) -> IdealHandle:
    """Generators of the contraction of I to the last n-k variables.

    Recomputes a basis under the two-block order that puts the k eliminated
    variables first, then keeps the elements free of them.
    """
    n = I.sig.nvars
    if not 0 < k < n:
        raise ValueError("must eliminate at least one and not every variable")
    block = BlockOrder(I.sig.weights, k)
    gb = buchberger(I.gens, block)
    rest = RingSignature(I.sig.names[k:], I.sig.weights[k:])
    kept = [
        _drop_front(g, k, rest)
        for g in gb
        if all(all(e == 0 for e in exps[:k]) for exps in g.terms)
    ]
    return IdealHandle(rest, kept)


def ideal_intersection(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    """I intersect J, by eliminating t from t*I + (1-t)*J."""
    _check_same_ambient(I, J)
    sig = I.sig
    tname = _fresh_name(sig)
    ext = RingSignature((tname,) + sig.names, (1,) + sig.weights)
    positions = list(range(1, ext.nvars))
    t = Polynomial.variable(ext, 0)
    one = Polynomial.one(ext)
    gens = [t * _lift(f, ext, positions) for f in I.gens]
    gens += [(one - t) * _lift(g, ext, positions) for g in J.gens]
    inner = IdealHandle(ext, gens)
    eliminated = eliminate(inner, 1)
    if eliminated.sig != sig:
        eliminated = IdealHandle(sig, [_lift(g, sig, list(range(sig.nvars)))
                                       for g in eliminated.gens], I.order)
    else:
        eliminated = IdealHandle(sig, eliminated.gens, I.order)
    return eliminated


def radical_membership(p: Polynomial, I: IdealHandle) -> bool:
    """Whether some power of p lies in I, by the Rabinowitsch trick."""
    if p.sig != I.sig:
        raise ValueError("polynomial signature does not match the ideal")
    if p.is_zero:
        return True
    sig = I.sig
    tname = _fresh_name(sig)
    ext = RingSignature(sig.names + (tname,), sig.weights + (1,))
    positions = list(range(sig.nvars))
    t = Polynomial.variable(ext, ext.nvars - 1)
    gens = [_lift(g, ext, positions) for g in I.gens]
    gens.append(Polynomial.one(ext) - t * _lift(p, ext, positions))
    gb = buchberger(gens, default_order(ext))
    return len(gb) == 1 and gb[0].is_constant()


def krull_dimension(I: IdealHandle) -> int:
    """Dimension of the quotient by I, read off the initial ideal.

    Equals the largest number of variables no basis leading monomial is
    supported on; the unit ideal has an empty spectrum and is rejected.
    """
    gb = I.groebner_basis
    supports = [frozenset(i for i, e in enumerate(leading_monomial(g, I.order)) if e)
                for g in gb]
    if frozenset() in supports:
        raise ValueError("empty spectrum: the ideal is the unit ideal")
    n = I.sig.nvars
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            chosen = set(subset)
            if all(not s <= chosen for s in supports):
                return size
    raise AssertionError("unreachable: the empty set is always independent")


def minimalize_homogeneous(gens: Sequence[Polynomial], sig: RingSignature,
                           modulo: Sequence[Polynomial] = ()) -> tuple[Polynomial, ...]:
    """Greedy minimal generating subset of a homogeneous generator list.

    Scans by ascending weighted degree (ties keep input order) and keeps an
    element only if it is not in the ideal spanned by the kept ones together
    with `modulo`.
    """
    order = default_order(sig)
    nonzero = [g for g in gens if not g.is_zero]
    for g in nonzero:
        if not g.is_homogeneous():
            raise ValueError(f"minimalize_homogeneous needs homogeneous input, got {g}")
    ranked = sorted(nonzero, key=lambda g: g.homogeneous_degree())
    kept: list[Polynomial] = []
    basis = buchberger(list(modulo), order)
    for g in ranked:
        if normal_form_raw(g, basis, order).is_zero:
            continue
        kept.append(g)
        basis = buchberger(list(modulo) + kept, order)
    return tuple(kept)
