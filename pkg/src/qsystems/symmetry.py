"""Permutation action on equal-factor tensor spaces.

Unitary factor-permutation operators, symmetrizer/antisymmetrizer projector
pairs, sector classification of states, exchange invariance of expectation
values, and the exclusion property of the antisymmetric sector.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .hilbert import Operator, SpaceSpec, StateVector

__all__ = [
    "Permutation",
    "permutation_operator",
    "ProjectorPair",
    "build_projectors",
    "SymmetrySector",
    "classify_state",
    "ExchangeCheck",
    "exchange_expectation_check",
    "ExclusionCheck",
    "pauli_exclusion_check",
    "physical_projector",
    "count_symmetric_basis",
    "count_antisymmetric_basis",
    "projector_rank",
]

CLASSIFY_ATOL = 1e-9
PROJECTOR_ATOL = 1e-12
EXCHANGE_ATOL = 1e-10


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..n-1}; ``image[i]`` is where slot ``i`` is sent."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if sorted(self.image) != list(range(n)):
            raise ValueError(f"{self.image} is not a permutation of 0..{n - 1}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        image = list(range(n))
        image[i], image[j] = image[j], image[i]
        return cls(tuple(image))

    @property
    def size(self) -> int:
        return len(self.image)

    @property
    def parity(self) -> int:
        """+1 for even, -1 for odd, via cycle decomposition."""
        seen = [False] * self.size
        sign = 1
        for start in range(self.size):
            if seen[start]:
                continue
            length = 0
            node = start
            while not seen[node]:
                seen[node] = True
                node = self.image[node]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self . other)(i) = self(other(i))."""
        if self.size != other.size:
            raise ValueError("permutation sizes differ")
        return Permutation(tuple(self.image[other.image[i]] for i in range(self.size)))

    def inverse(self) -> "Permutation":
        image = [0] * self.size
        for i, target in enumerate(self.image):
            image[target] = i
        return Permutation(tuple(image))


def permutation_operator(perm: Permutation, space: SpaceSpec) -> Operator:
    """Unitary that relocates the vector in factor ``i`` to factor ``perm(i)``.

    The map is a homomorphism: composing operators matches composing
    permutations.  Factor dimensions must be compatible with the relocation
    (equal factors in the identical-components use; mixed dimensions are
    accepted when the permutation maps like onto like).
    """
    dims = space.factor_dims
    if perm.size != len(dims):
        raise ValueError(f"permutation of size {perm.size} on {len(dims)} factors")
    for i, target in enumerate(perm.image):
        if dims[i] != dims[target]:
            raise ValueError(
                f"factor {i} (dim {dims[i]}) cannot move to slot {target} (dim {dims[target]})"
            )
    d = space.total_dim
    # Row multi-index s satisfies s[perm(t)] = col multi-index[t].
    tensor = np.eye(d, dtype=np.complex128).reshape(dims + (d,))
    moved = np.moveaxis(tensor, list(range(perm.size)), list(perm.image))
    return Operator(space, moved.reshape(d, d))


@dataclass(frozen=True, eq=False)
class ProjectorPair:
    """Symmetrizer and antisymmetrizer on n equal factors of dimension d."""

    space: SpaceSpec
    symmetrizer: Operator
    antisymmetrizer: Operator


def build_projectors(n: int, d: int) -> ProjectorPair:
    """Group-average projectors S = mean(U_P) and A = mean(sgn(P) U_P)."""
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 factors of dimension d >= 1")
    space = SpaceSpec((d,) * n)
    dim = space.total_dim
    sym = np.zeros((dim, dim), dtype=np.complex128)
    asym = np.zeros((dim, dim), dtype=np.complex128)
    for image in itertools.permutations(range(n)):
        perm = Permutation(image)
        u = permutation_operator(perm, space).entries
        sym += u
        asym += perm.parity * u
    norm = math.factorial(n)
    return ProjectorPair(
        space=space,
        symmetrizer=Operator(space, sym / norm),
        antisymmetrizer=Operator(space, asym / norm),
    )


class SymmetrySector(enum.Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"
    MIXED = "mixed"

    @property
    def transposition_eigenvalue(self):
        """The scalar a transposition applies in a pure sector, else None."""
        if self is SymmetrySector.SYMMETRIC:
            return 1
        if self is SymmetrySector.ANTISYMMETRIC:
            return -1
        return None


def classify_state(psi: StateVector, atol: float = CLASSIFY_ATOL) -> SymmetrySector:
    """Which permutation sector a normalized equal-factor state lives in."""
    dims = psi.space.factor_dims
    if len(set(dims)) != 1:
        raise ValueError("classification needs equal factor dimensions")
    pair = build_projectors(len(dims), dims[0])
    amps = psi.normalized().amplitudes
    if np.linalg.norm(pair.symmetrizer.entries @ amps - amps) <= atol:
        return SymmetrySector.SYMMETRIC
    if np.linalg.norm(pair.antisymmetrizer.entries @ amps - amps) <= atol:
        return SymmetrySector.ANTISYMMETRIC
    return SymmetrySector.MIXED


@dataclass(frozen=True)
class ExchangeCheck:
    expectation_original: float
    expectation_permuted: float
    difference: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.difference <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "expectation_original": self.expectation_original,
            "expectation_permuted": self.expectation_permuted,
            "difference": self.difference,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def exchange_expectation_check(
    obs: Operator, psi: StateVector, perm: Permutation, tolerance: float = EXCHANGE_ATOL
) -> ExchangeCheck:
    """Compare <psi|A|psi> with the expectation in the permuted state.

    Equality is the indistinguishability law for permutation-invariant
    observables; an observable that singles out a factor will fail it, which
    is the intended negative control.
    """
    amps = psi.normalized().amplitudes
    permuted = permutation_operator(perm, psi.space).entries @ amps
    before = float(np.real(np.vdot(amps, obs.entries @ amps)))
    after = float(np.real(np.vdot(permuted, obs.entries @ permuted)))
    return ExchangeCheck(
        expectation_original=before,
        expectation_permuted=after,
        difference=abs(before - after),
        tolerance=tolerance,
    )


@dataclass(frozen=True)
class ExclusionCheck:
    antisymmetrized_norm: float
    has_duplicate_ray: bool
    tolerance: float

    @property
    def passed(self) -> bool:
        """Exclusion holds: duplicate inputs force a vanishing antisymmetric part."""
        return (not self.has_duplicate_ray) or self.antisymmetrized_norm <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "antisymmetrized_norm": self.antisymmetrized_norm,
            "has_duplicate_ray": self.has_duplicate_ray,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def pauli_exclusion_check(
    single_states: list[StateVector], tolerance: float = PROJECTOR_ATOL
) -> ExclusionCheck:
    """Antisymmetrize a product of one-component states and measure what's left."""
    if len(single_states) < 2:
        raise ValueError("need at least two single-component states")
    d = single_states[0].space.total_dim
    if any(s.space.total_dim != d for s in single_states):
        raise ValueError("single-component states must share one dimension")
    n = len(single_states)
    product = np.ones(1, dtype=np.complex128)
    for state in single_states:
        product = np.kron(product, state.normalized().amplitudes)
    pair = build_projectors(n, d)
    projected = pair.antisymmetrizer.entries @ product
    duplicate = False
    for a, b in itertools.combinations(single_states, 2):
        if a.ray_equals(b):
            duplicate = True
            break
    return ExclusionCheck(
        antisymmetrized_norm=float(np.linalg.norm(projected)),
        has_duplicate_ray=duplicate,
        tolerance=tolerance,
    )


def physical_projector(n: int, d: int) -> Operator:
    """Projector onto the accessible sector: symmetric plus antisymmetric."""
    pair = build_projectors(n, d)
    return Operator(pair.space, pair.symmetrizer.entries + pair.antisymmetrizer.entries)


def count_symmetric_basis(n: int, d: int) -> int:
    """Brute-force enumeration: orbits of index tuples under sorting."""
    return sum(1 for _ in itertools.combinations_with_replacement(range(d), n))


def count_antisymmetric_basis(n: int, d: int) -> int:
    """Brute-force enumeration: strictly increasing index tuples."""
    return sum(1 for _ in itertools.combinations(range(d), n))


def projector_rank(op: Operator, threshold: float = 0.5) -> int:
    """Rank of an (approximate) orthogonal projector by eigenvalue count."""
    eigs = np.linalg.eigvalsh(op.entries)
    return int(np.sum(eigs > threshold))
