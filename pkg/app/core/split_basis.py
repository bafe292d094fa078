from dataclasses import dataclass
from fractions import Fraction

from app.core.exact_scalar import ExactScalar
from app.core.utils.matrices import Vector


@dataclass(frozen=True, slots=True)
class FiberBlock:
    """A block of fiber covectors modelled on the unit sphere in so(N)/so(N-1)."""

    size: int
    ambient: int
    # ratio of the so(ambient) and ambient-algebra Killing normalisations
    scale: Fraction


@dataclass(frozen=True)
class SplitBasisData:
    """Base/fiber rewriting of the top form of a family.

    The distinguished covector and the `plus` covectors span the base directions,
    the `minus` covectors the fiber directions. Each top-monomial pair x ∧ y
    (u-covector, v-covector) is rewritten through P = x + y and M = y - x.
    """

    distinguished: Vector
    plus: tuple[Vector, ...]
    minus: tuple[Vector, ...]
    # Hermitian generators of the base directions, dual to (distinguished, *plus)
    base_generators: tuple[Vector, ...] = ()
    # Killing normalisation κ in |X|² = κ·tr(X ᵗX) for matrix models
    metric_scale: Fraction | None = None
    # norms of the base generators when there is no matrix model
    stored_base_norms: tuple[ExactScalar, ...] = ()
    fiber_norm: ExactScalar | None = None
    fiber_blocks: tuple[FiberBlock, ...] = ()
    # weights of ᵗz^∨ ∧ z^∨ in the reference 2-form; None means the plain monomial
    reference_weights: tuple[Fraction, ...] | None = None

    @property
    def q(self) -> int:
        return len(self.plus)
