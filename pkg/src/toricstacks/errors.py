"""Exception hierarchy shared by all modules."""


class ToricStackError(Exception):
    """Base class for all errors raised by this package."""


class NotFiniteIndex(ToricStackError):
    """The row lattice does not have finite index in the ambient lattice."""


class NotSublattice(ToricStackError):
    """Lattice data contains non-integer entries."""


class RankDeficient(ToricStackError):
    """A matrix required to have full row rank does not."""


class DimensionMismatch(ToricStackError):
    """Shapes of the supplied lattice data are inconsistent."""


class EmptyInterior(ToricStackError):
    """The moment polytope has no interior point to sample from."""


class InfiniteStabilizer(ToricStackError):
    """A stratum carries a positive-dimensional stabilizer (irregular level)."""


class IrregularLevel(ToricStackError):
    """An operation requiring a regular moment level was run on an irregular one."""


class NestingViolated(ToricStackError):
    """The inner subgroup is not contained in the outer one."""


class IllConditioned(ToricStackError):
    """A numerical rank decision sits too close to the threshold to trust."""
