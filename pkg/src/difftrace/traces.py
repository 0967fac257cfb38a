"""Trace ideals of exterior powers of the module of differentials.

The module of differentials of a graded quotient S = Q[x_1..x_n]/I is
presented by the transposed Jacobian of the defining generators.  Trace
ideals of its exterior powers decide, for suitable S, polynomial rank,
regularity, nearly-regularity, and the singular locus:

- the top trace is the whole ring exactly when S is a polynomial ring over a
  graded subring in one variable more than expected (unit propagation);
- for reduced S over Q the top trace cuts out the singular locus when S is
  equidimensional, and detects regularity in general;
- nearly-regularity asks that every trace down the tower contain the
  irrelevant maximal ideal, which the descending chain reduces to a single
  membership test at the top.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import IdealHandle, normal_form, radical_membership
from .modsyz import (
    Column,
    ModulePresentation,
    exterior_power_presentation,
    fitting_ideal,
    kernel_columns,
    trace_ideal,
)
from .poly import Polynomial
from .rings import GradedAlgebra


def jacobian_matrix(S: GradedAlgebra) -> list[list[Polynomial]]:
    """Rows indexed by variables, columns by defining generators."""
    gens = S.defining.gens
    return [[g.partial_derivative(i) for g in gens] for i in range(S.nvars)]


def kaehler_presentation(S: GradedAlgebra) -> ModulePresentation:
    """The differentials presented on dx_1..dx_n with one relation per generator."""
    if S._kaehler_cache is None:
        jac = jacobian_matrix(S)
        columns = tuple(
            tuple(jac[i][j] for i in range(S.nvars))
            for j in range(len(S.defining.gens))
        )
        S._kaehler_cache = ModulePresentation(S, S.nvars, columns)
    return S._kaehler_cache


def diff_trace(S: GradedAlgebra, power: int) -> IdealHandle:
    """Trace ideal of the power-th exterior power of the differentials.

    Power zero gives the unit ideal; powers beyond the embedding dimension
    give the lift of the zero ideal.  Results are cached on the algebra.
    """
    if power < 0:
        raise ValueError("exterior power degree cannot be negative")
    cached = S._trace_cache.get(power)
    if cached is None:
        if power == 0:
            cached = S.unit_ideal()
        else:
            omega = kaehler_presentation(S)
            cached = trace_ideal(exterior_power_presentation(omega, power))
        S._trace_cache[power] = cached
    return cached


def polynomial_rank(S: GradedAlgebra) -> int:
    """Largest r such that S splits off a polynomial ring in r variables.

    Reads off the largest power whose trace is the whole ring, scanning
    downward from the dimension.
    """
    for power in range(S.dimension, 0, -1):
        if diff_trace(S, power).is_trivial:
            return power
    return 0


def is_nearly_regular(S: GradedAlgebra) -> bool:
    """Whether every trace up to the dimension contains the maximal ideal.

    The traces descend as the power grows, so the top trace decides.
    """
    return S.contains_maximal_ideal(diff_trace(S, S.dimension))


def is_regular_via_trace(S: GradedAlgebra) -> bool:
    """Whether the top trace is the whole ring; needs the reduced flag."""
    S.require_reduced("is_regular_via_trace")
    return diff_trace(S, S.dimension).is_trivial


def singular_locus_trace(S: GradedAlgebra) -> IdealHandle:
    """The top trace, read as cutting out the singular locus.

    The reading needs S reduced and equidimensional; both flags are required.
    """
    S.require_reduced("singular_locus_trace")
    S.require_equidimensional("singular_locus_trace")
    return diff_trace(S, S.dimension)


def singular_locus_jacobian(S: GradedAlgebra) -> IdealHandle:
    """Classical Jacobian ideal: defining ideal plus codimension-size minors."""
    codim = S.nvars - S.dimension
    minors = fitting_ideal(jacobian_matrix(S), codim, S.sig)
    return S.s_ideal(minors.gens)


def radical_equal(I: IdealHandle, J: IdealHandle) -> bool:
    """Whether two ideals have the same radical (mutual radical membership)."""
    if I.sig != J.sig:
        raise ValueError("radical comparison needs one ambient signature")
    return (all(radical_membership(g, J) for g in I.gens)
            and all(radical_membership(g, I) for g in J.gens))


def is_isolated_singularity(S: GradedAlgebra) -> bool:
    """Whether the top trace has radical containing the maximal ideal.

    Flags as for the singular-locus reading; a regular ring counts as having
    an isolated singularity at the irrelevant maximal ideal.
    """
    top = singular_locus_trace(S)
    return all(radical_membership(x, top) for x in S.variables())


@dataclass
class SliceWitness:
    """A derivation D and slice t with D(t) = 1, certifying a free summand."""

    images: Column
    variable_index: int
    slice: Polynomial


def derivation_slice_witness(S: GradedAlgebra) -> SliceWitness | None:
    """A derivation/slice pair witnessing trace(Omega^1) = S, if one exists.

    Kernel columns of the transposed Jacobian are derivations of S; a column
    with a unit entry at position i gives D with D(x_i) a unit, and the
    normalized slice t = x_i / D(x_i) satisfies D(t) = 1 modulo the defining
    ideal.  Returns None when the first trace is proper.
    """
    if not diff_trace(S, 1).is_trivial:
        return None
    omega = kaehler_presentation(S)
    for column in kernel_columns(omega):
        reduced = tuple(S.reduce(entry) for entry in column)
        for i, entry in enumerate(reduced):
            value = entry.constant_value()
            if entry.is_constant() and value != 0:
                slice_poly = Polynomial.variable(S.sig, i).scale(1 / value)
                _verify_slice(S, reduced, slice_poly)
                return SliceWitness(reduced, i, slice_poly)
    raise RuntimeError("trace(Omega^1) is trivial but no unit entry was found")


def _verify_slice(S: GradedAlgebra, images: Column, slice_poly: Polynomial):
    applied = Polynomial.zero(S.sig)
    for i, image in enumerate(images):
        applied = applied + image * slice_poly.partial_derivative(i)
    if not normal_form(applied - S.one(), S.defining).is_zero:
        raise RuntimeError("slice verification failed: D(t) is not 1 modulo I")


def euler_derivation_column(S: GradedAlgebra) -> Column:
    """The weighted Euler derivation (w_1 x_1, ..., w_n x_n).

    Always a kernel column of the transposed Jacobian for homogeneous ideals,
    which is why every variable lies in the first trace.
    """
    return tuple(Polynomial.variable(S.sig, i).scale(S.sig.weights[i])
                 for i in range(S.nvars))

