"""Group-theoretic input data: finite extensions of tori and closed subgroups.

The extension 1 -> Gamma -> T^N_hat -> T^N -> 1 is presented by a
finite-index sublattice of Z^N; a closed subgroup A < T^N is presented in
kernel form A = ker(B : T^N -> T^n) by an integer matrix B of full row rank.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotFiniteIndex, RankDeficient
from .lattice import (
    FiniteAbelianGroup,
    cokernel_structure,
    det,
    hermite_normal_form,
    imat,
    integer_kernel_basis,
)
from .rational import qmat, rank

__all__ = [
    "TorusExtension",
    "ClosedSubgroup",
    "SubgroupHat",
    "ResidualTorus",
    "make_extension",
    "subgroup_from_kernel",
    "preimage_in_extension",
    "residual_torus",
]


@dataclass(frozen=True)
class TorusExtension:
    """T^N_hat = R^N / lattice_hat, an extension of T^N by Gamma = Z^N / lattice_hat."""

    N: int
    lattice_hat: np.ndarray
    gamma: FiniteAbelianGroup


@dataclass(frozen=True)
class ClosedSubgroup:
    """A = ker(B : T^N -> T^n) together with its Lie algebra and annihilator."""

    B: np.ndarray
    lie_algebra_basis: np.ndarray  # rows span ker_R(B), saturated and in HNF
    annihilator_basis: np.ndarray  # rows span rowspace(B)
    component_group: FiniteAbelianGroup

    @property
    def n(self) -> int:
        return self.B.shape[0]

    @property
    def N(self) -> int:
        return self.B.shape[1]

    @property
    def dim(self) -> int:
        return self.N - self.n


@dataclass(frozen=True)
class SubgroupHat:
    """The preimage A_hat of A in T^N_hat, cut out by the congruences B t in Z^n."""

    parent: TorusExtension
    base: ClosedSubgroup

    def component_group(self) -> FiniteAbelianGroup:
        """pi_0(A_hat) = Z^n / B(lattice_hat), via SNF of the image lattice."""
        image = imat(self.parent.lattice_hat @ self.base.B.T,
                     cols=self.base.n)
        return cokernel_structure(image)


@dataclass(frozen=True)
class ResidualTorus:
    """G = T^N_hat / A_hat = T^N / A, identified with T^n through B."""

    n: int
    identification: np.ndarray


def make_extension(N: int, lattice_hat) -> TorusExtension:
    """Validate a finite-index sublattice of Z^N and compute Gamma."""
    L = imat(lattice_hat, cols=N)
    if L.shape != (N, N):
        raise DimensionMismatch(f"lattice_hat must be {N}x{N}, got {L.shape}")
    if det(L) == 0:
        raise NotFiniteIndex("lattice_hat not finite index")
    return TorusExtension(N=N, lattice_hat=L, gamma=cokernel_structure(L))


def subgroup_from_kernel(B, N: int | None = None) -> ClosedSubgroup:
    """Closed subgroup A = ker(B) from an integer matrix of full row rank."""
    M = imat(B, cols=N)
    n, width = M.shape
    if n and rank(qmat(M)) < n:
        raise RankDeficient(f"B has rank < {n}; G would not be a torus T^{n}")
    kernel = integer_kernel_basis(M)
    annihilator = hermite_normal_form(M) if n else np.empty((0, width), dtype=object)
    pi0 = cokernel_structure(imat(M.T, cols=n))
    return ClosedSubgroup(
        B=M,
        lie_algebra_basis=kernel,
        annihilator_basis=annihilator,
        component_group=pi0,
    )


def preimage_in_extension(ext: TorusExtension, A: ClosedSubgroup) -> SubgroupHat:
    if A.N != ext.N:
        raise DimensionMismatch(
            f"subgroup lives in T^{A.N} but the extension covers T^{ext.N}"
        )
    # B is integral, so every coset of lattice_hat inside Z^N satisfies the
    # congruences: Gamma <= A_hat holds by construction.
    return SubgroupHat(parent=ext, base=A)


def residual_torus(A: ClosedSubgroup) -> ResidualTorus:
    return ResidualTorus(n=A.n, identification=A.B)
