"""The centrally extended Galilei Lie algebra: exact structure constants and
concrete operator representations.

Two layers live here.  The exact layer works with formal linear combinations
of the eleven generators H, P1..P3, K1..K3, J1..J3, M over rational
coefficients times powers of (i*hbar); antisymmetry and the Jacobi identity
are checked with no floating point at all.  The numeric layer builds dense
matrix representations (spin, periodic grid, additive composites) and
measures how well each one reproduces the bracket table, restricted to the
subspace on which the representation makes its claims.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import grids
from .grids import GridSpec
from .hilbert import SpaceSpec

__all__ = [
    "LABELS",
    "PhysicalConstants",
    "generator",
    "abstract_bracket",
    "combo_add",
    "combo_scale",
    "combo_is_zero",
    "combo_str",
    "jacobi_residual",
    "verify_structure",
    "StructureReport",
    "DomainMask",
    "AlgebraRep",
    "build_spin_rep",
    "build_grid_rep",
    "build_additive_rep",
    "casimir_squared",
    "verify_rep",
    "RepVerification",
    "PairCheck",
    "position_momentum_residuals",
    "verify_additive_grid_pair",
]

LABELS = ("H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3", "M")

# Coefficients are polynomials in (i*hbar): {power: Fraction}.  A formal
# combination maps generator label -> coefficient.
Coeff = dict
Combo = dict

_LEVI_CIVITA = {
    (1, 2, 3): 1,
    (2, 3, 1): 1,
    (3, 1, 2): 1,
    (1, 3, 2): -1,
    (3, 2, 1): -1,
    (2, 1, 3): -1,
}


def _build_table() -> dict[tuple[str, str], dict[str, Fraction]]:
    table: dict[tuple[str, str], dict[str, Fraction]] = {}

    def put(a: str, b: str, combo: Mapping[str, int]) -> None:
        table[(a, b)] = {lab: Fraction(c) for lab, c in combo.items() if c}
        table[(b, a)] = {lab: -Fraction(c) for lab, c in combo.items() if c}

    for (i, j, k), sign in _LEVI_CIVITA.items():
        if i < j:
            put(f"J{i}", f"J{j}", {f"J{k}": sign})
        put(f"J{i}", f"K{j}", {f"K{k}": sign})
        put(f"J{i}", f"P{j}", {f"P{k}": sign})
    for i in (1, 2, 3):
        put(f"K{i}", "H", {f"P{i}": 1})
        put(f"K{i}", f"P{i}", {"M": 1})
    return table


_TABLE = _build_table()


def generator(label: str) -> Combo:
    """The formal combination consisting of a single generator."""
    if label not in LABELS:
        raise ValueError(f"unknown generator {label!r}")
    return {label: {0: Fraction(1)}}


def _coeff_add(a: Coeff, b: Coeff) -> Coeff:
    out = dict(a)
    for power, frac in b.items():
        total = out.get(power, Fraction(0)) + frac
        if total:
            out[power] = total
        else:
            out.pop(power, None)
    return out


def _coeff_mul(a: Coeff, b: Coeff) -> Coeff:
    out: Coeff = {}
    for pa, fa in a.items():
        for pb, fb in b.items():
            power = pa + pb
            total = out.get(power, Fraction(0)) + fa * fb
            if total:
                out[power] = total
            else:
                out.pop(power, None)
    return out


def combo_add(x: Combo, y: Combo) -> Combo:
    out = {label: dict(coeff) for label, coeff in x.items()}
    for label, coeff in y.items():
        merged = _coeff_add(out.get(label, {}), coeff)
        if merged:
            out[label] = merged
        else:
            out.pop(label, None)
    return out


def combo_scale(x: Combo, rational, ih_power: int = 0) -> Combo:
    factor = {ih_power: Fraction(rational)}
    out: Combo = {}
    for label, coeff in x.items():
        scaled = _coeff_mul(coeff, factor)
        if scaled:
            out[label] = scaled
    return out


def combo_is_zero(x: Combo) -> bool:
    return all(not coeff for coeff in x.values())


def combo_str(x: Combo) -> str:
    if combo_is_zero(x):
        return "0"
    terms = []
    for label in LABELS:
        coeff = x.get(label)
        if not coeff:
            continue
        for power in sorted(coeff):
            frac = coeff[power]
            unit = {0: "", 1: "ihbar*", 2: "(ihbar)^2*"}.get(power, f"(ihbar)^{power}*")
            prefix = "" if frac == 1 else ("-" if frac == -1 else f"({frac})*")
            terms.append(f"{prefix}{unit}{label}")
    return " + ".join(terms)


def abstract_bracket(x: Combo, y: Combo) -> Combo:
    """Bilinear extension of the bracket table; exact arithmetic throughout.

    Every elementary bracket contributes one factor of (i*hbar), so nesting
    raises the power.
    """
    out: Combo = {}
    for la, ca in x.items():
        for lb, cb in y.items():
            entry = _TABLE.get((la, lb))
            if not entry:
                continue
            weight = _coeff_mul(ca, cb)
            for lc, frac in entry.items():
                term = _coeff_mul(weight, {1: frac})
                merged = _coeff_add(out.get(lc, {}), term)
                if merged:
                    out[lc] = merged
                else:
                    out.pop(lc, None)
    return out


def jacobi_residual(a: str, b: str, c: str) -> Combo:
    """[a,[b,c]] + [b,[c,a]] + [c,[a,b]], exactly."""
    ga, gb, gc = generator(a), generator(b), generator(c)
    total = abstract_bracket(ga, abstract_bracket(gb, gc))
    total = combo_add(total, abstract_bracket(gb, abstract_bracket(gc, ga)))
    total = combo_add(total, abstract_bracket(gc, abstract_bracket(ga, gb)))
    return total


@dataclass(frozen=True)
class StructureReport:
    pairs_checked: int
    triples_checked: int
    antisymmetry_failures: tuple[tuple[str, str], ...]
    jacobi_failures: tuple[tuple[str, str, str], ...]

    @property
    def passed(self) -> bool:
        return not self.antisymmetry_failures and not self.jacobi_failures

    def to_dict(self) -> dict:
        return {
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "antisymmetry_failures": [list(p) for p in self.antisymmetry_failures],
            "jacobi_failures": [list(t) for t in self.jacobi_failures],
            "pass": self.passed,
        }


def verify_structure() -> StructureReport:
    """Antisymmetry over all generator pairs, Jacobi over all triples, exact."""
    anti_fail = []
    for a, b in itertools.combinations(LABELS, 2):
        s = combo_add(abstract_bracket(generator(a), generator(b)),
                      abstract_bracket(generator(b), generator(a)))
        if not combo_is_zero(s):
            anti_fail.append((a, b))
    jacobi_fail = []
    for a, b, c in itertools.combinations(LABELS, 3):
        if not combo_is_zero(jacobi_residual(a, b, c)):
            jacobi_fail.append((a, b, c))
    return StructureReport(
        pairs_checked=55,
        triples_checked=165,
        antisymmetry_failures=tuple(anti_fail),
        jacobi_failures=tuple(jacobi_fail),
    )


# --------------------------------------------------------------------------
# Numeric representations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PhysicalConstants:
    """The quantum of action; positive, with dimension length*mass/time."""

    hbar: float = 1.0
    dimension: str = "L M T^-1"

    def __post_init__(self):
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")


@dataclass(frozen=True, eq=False)
class DomainMask:
    """Orthonormal basis of the subspace on which bracket relations hold."""

    basis: np.ndarray  # (dim, m) columns
    description: str

    def __post_init__(self):
        b = np.array(self.basis, dtype=np.complex128)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def subspace_dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def random_states(self, n_states: int, rng: np.random.Generator) -> np.ndarray:
        """Unit-norm columns drawn uniformly from the masked subspace."""
        m = self.subspace_dim
        coeffs = rng.standard_normal((m, n_states)) + 1j * rng.standard_normal((m, n_states))
        states = self.basis @ coeffs
        return states / np.linalg.norm(states, axis=0, keepdims=True)


@dataclass(eq=False)
class AlgebraRep:
    """Dense operator images of the generators on one space.

    ``sector`` lists the labels whose mutual bracket relations the
    representation asserts; images outside the sector exist (as zero
    matrices, typically) but carry no claim.  ``mask`` restricts assertions
    to a subspace when exact relations are unattainable (periodic grids).
    """

    space: SpaceSpec
    images: dict[str, np.ndarray]
    hbar: float
    mass: float
    sector: tuple[str, ...]
    mask: DomainMask | None = None
    name: str = "rep"

    def __post_init__(self):
        missing = [lab for lab in LABELS if lab not in self.images]
        if missing:
            raise ValueError(f"representation lacks images for {missing}")
        frozen = {}
        d = self.space.total_dim
        for lab, mat in self.images.items():
            arr = np.array(mat, dtype=np.complex128)
            if arr.shape != (d, d):
                raise ValueError(f"image of {lab} has shape {arr.shape}, expected ({d},{d})")
            arr.setflags(write=False)
            frozen[lab] = arr
        self.images = frozen

    def image(self, label: str) -> np.ndarray:
        return self.images[label]

    def validate(self, atol: float = 1e-10) -> None:
        for lab, mat in self.images.items():
            if np.max(np.abs(mat - mat.conj().T)) > atol:
                raise ValueError(f"image of {lab} is not hermitian")
        m_eigs = np.linalg.eigvalsh(self.images["M"])
        if m_eigs.min() < -atol:
            raise ValueError("mass image has a negative eigenvalue")

    def with_image(self, label: str, matrix: np.ndarray) -> "AlgebraRep":
        new_images = dict(self.images)
        new_images[label] = matrix
        return replace(self, images=new_images)


def _zeros(d: int) -> np.ndarray:
    return np.zeros((d, d), dtype=np.complex128)


def build_spin_rep(j, hbar: float = 1.0, mass: float = 1.0) -> AlgebraRep:
    """Rotation-sector representation of dimension 2j+1.

    Parameters
    ----------
    j : half-integer spin (1/2, 1, 3/2, ...).
    hbar, mass : scale of the angular momenta and the central mass value.

    The boosts, momenta, and energy are mapped to zero; only the rotation
    subalgebra together with the central mass is asserted.
    """
    two_j = round(2 * float(j))
    if abs(2 * float(j) - two_j) > 1e-9 or two_j < 1:
        raise ValueError(f"j must be a positive half-integer, got {j}")
    if mass <= 0:
        raise ValueError("mass must be positive")
    jv = two_j / 2.0
    dim = two_j + 1
    m_values = jv - np.arange(dim)
    jz = hbar * np.diag(m_values).astype(np.complex128)
    jplus = _zeros(dim)
    for i in range(1, dim):
        m = m_values[i]
        jplus[i - 1, i] = hbar * np.sqrt(jv * (jv + 1) - m * (m + 1))
    jminus = jplus.conj().T
    jx = 0.5 * (jplus + jminus)
    jy = -0.5j * (jplus - jminus)
    images = {lab: _zeros(dim) for lab in LABELS}
    images.update({"J1": jx, "J2": jy, "J3": jz, "M": mass * np.eye(dim, dtype=np.complex128)})
    return AlgebraRep(
        space=SpaceSpec.single(dim),
        images=images,
        hbar=hbar,
        mass=mass,
        sector=("J1", "J2", "J3", "M"),
        mask=None,
        name=f"spin(j={jv:g})",
    )


def casimir_squared(rep: AlgebraRep) -> np.ndarray:
    """J1^2 + J2^2 + J3^2 for the representation."""
    total = _zeros(rep.space.total_dim)
    for lab in ("J1", "J2", "J3"):
        mat = rep.image(lab)
        total = total + mat @ mat
    return total


def _band_limited_mask(
    grid: GridSpec, band_fraction: float, envelope_frac: float, svd_cut: float = 1e-4
) -> DomainMask:
    n = grid.n_sites
    max_mode = int(np.floor(n * band_fraction / 2))
    x = grids.position_values(grid)
    sigma = grid.length * envelope_frac
    envelope = np.exp(-(x ** 2) / (2.0 * sigma ** 2))
    columns = []
    for mode in range(-max_mode, max_mode + 1):
        k = 2.0 * np.pi * mode / grid.length
        columns.append(envelope * np.exp(1j * k * x))
    raw = np.column_stack(columns)
    # Neighboring columns overlap strongly; keep only the well-conditioned
    # part of the span, or the orthonormalization amplifies roundoff into
    # spurious high-frequency content.
    u, s, _ = np.linalg.svd(raw, full_matrices=False)
    basis = u[:, s >= svd_cut * s[0]]
    description = (
        f"well-conditioned span (cutoff {svd_cut:g}) of gaussian envelope "
        f"sigma={sigma:g} at box center times plane waves with |mode| <= {max_mode} "
        f"of {n} (lowest {band_fraction:.0%} of momentum modes); dim {basis.shape[1]}"
    )
    return DomainMask(basis=basis, description=description)


def build_grid_rep(
    n_sites: int,
    length: float,
    mass: float,
    hbar: float = 1.0,
    band_fraction: float = 1.0 / 3.0,
    envelope_frac: float = 1.0 / 16.0,
) -> AlgebraRep:
    """One-dimensional periodic-grid representation of the free subalgebra.

    Position is diagonal, momentum is the spectral derivative, boosts are
    mass times position, the energy is kinetic.  The canonical pair cannot
    satisfy its bracket exactly in finite dimensions (the trace of a
    commutator vanishes, the trace of i*hbar*M does not), so the bracket
    claims are restricted to the returned band-limited interior mask.

    The single spatial axis realizes H, P1, K1, M; the remaining generators
    are represented by zero and are outside the asserted sector.
    """
    if mass <= 0:
        raise ValueError("mass must be positive")
    grid = GridSpec(n_sites=n_sites, length=float(length))
    x = grids.position_values(grid)
    pos = np.diag(x).astype(np.complex128)
    mom = grids.momentum_operator(grid, hbar)
    images = {lab: _zeros(n_sites) for lab in LABELS}
    images.update(
        {
            "P1": mom,
            "K1": mass * pos,
            "H": grids.kinetic_operator(grid, mass, hbar),
            "M": mass * np.eye(n_sites, dtype=np.complex128),
        }
    )
    return AlgebraRep(
        space=SpaceSpec.single(n_sites),
        images=images,
        hbar=hbar,
        mass=mass,
        sector=("H", "P1", "K1", "M"),
        mask=_band_limited_mask(grid, band_fraction, envelope_frac),
        name=f"grid(n={n_sites}, L={length:g}, m={mass:g})",
    )


def build_additive_rep(parts: Sequence[AlgebraRep], max_dense_dim: int = 4096) -> AlgebraRep:
    """Composite representation: tensor-product space, summed lifted generators.

    Every generator image is the sum over parts of that part's image lifted
    by identities on the other factors; in particular the total mass image is
    the sum of the part masses.  Dense construction only; beyond
    ``max_dense_dim`` use :func:`verify_additive_grid_pair`, which applies the
    lifted operators matrix-free.
    """
    if not parts:
        raise ValueError("need at least one part")
    hbar = parts[0].hbar
    if any(p.hbar != hbar for p in parts):
        raise ValueError("parts disagree on hbar")
    dims = [p.space.total_dim for p in parts]
    total_dim = int(np.prod(dims))
    if total_dim > max_dense_dim:
        raise ValueError(
            f"dense additive rep of dim {total_dim} exceeds bound {max_dense_dim}"
        )
    factor_dims = tuple(itertools.chain.from_iterable(p.space.factor_dims for p in parts))
    space = SpaceSpec(factor_dims)

    def lift_part(mat: np.ndarray, index: int) -> np.ndarray:
        out = np.eye(1, dtype=np.complex128)
        for r, d in enumerate(dims):
            out = np.kron(out, mat if r == index else np.eye(d, dtype=np.complex128))
        return out

    images = {}
    for lab in LABELS:
        total = _zeros(total_dim)
        for r, part in enumerate(parts):
            total = total + lift_part(part.image(lab), r)
        images[lab] = total
    sector = tuple(lab for lab in LABELS if all(lab in p.sector for p in parts))
    mask = None
    if all(p.mask is not None for p in parts):
        basis = parts[0].mask.basis
        for p in parts[1:]:
            basis = np.kron(basis, p.mask.basis)
        mask = DomainMask(
            basis=basis,
            description=" (x) ".join(p.mask.description for p in parts),
        )
    return AlgebraRep(
        space=space,
        images=images,
        hbar=hbar,
        mass=float(sum(p.mass for p in parts)),
        sector=sector,
        mask=mask,
        name="additive(" + ", ".join(p.name for p in parts) + ")",
    )


@dataclass(frozen=True)
class PairCheck:
    law: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class RepVerification:
    name: str
    checks: tuple[PairCheck, ...]
    mask_description: str

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "representation": self.name,
            "domain_mask": self.mask_description,
            "checks": [c.to_dict() for c in self.checks],
            "max_residual": self.max_residual,
            "pass": self.passed,
        }


def _expected_image(rep: AlgebraRep, a: str, b: str) -> np.ndarray:
    """Image of [a, b] according to the exact table: (i*hbar) * sum c * image."""
    combo = _TABLE.get((a, b), {})
    total = _zeros(rep.space.total_dim)
    for label, frac in combo.items():
        total = total + (1j * rep.hbar * float(frac)) * rep.image(label)
    return total


def _law_string(a: str, b: str) -> str:
    combo = _TABLE.get((a, b), {})
    if not combo:
        return f"[{a},{b}] = 0"
    terms = []
    for label, frac in sorted(combo.items()):
        prefix = "" if frac == 1 else ("-" if frac == -1 else f"({frac})*")
        terms.append(f"{prefix}ihbar*{label}")
    return f"[{a},{b}] = " + " + ".join(terms)


def _relative_residual(delta: np.ndarray, *references: np.ndarray) -> float:
    num = float(np.linalg.norm(delta))
    den = max((float(np.linalg.norm(r)) for r in references), default=0.0)
    if den == 0.0:
        return 0.0 if num == 0.0 else float("inf")
    return num / den


def verify_rep(rep: AlgebraRep, tolerance: float) -> RepVerification:
    """Bracket residuals over every asserted generator pair.

    For each pair (x, y) in the sector the commutator of the images is
    compared against the image of the exact bracket, applied to the mask
    basis (the full space when no mask is present).  Residuals are relative
    to the larger of the expected image's action and the products' actions.
    """
    basis = rep.mask.basis if rep.mask is not None else np.eye(rep.space.total_dim)
    checks = []
    for a, b in itertools.combinations(rep.sector, 2):
        ma, mb = rep.image(a), rep.image(b)
        ab = ma @ (mb @ basis)
        ba = mb @ (ma @ basis)
        expected = _expected_image(rep, a, b) @ basis
        residual = _relative_residual(ab - ba - expected, expected, ab, ba)
        checks.append(PairCheck(law=_law_string(a, b), residual=residual, tolerance=tolerance))
    return RepVerification(
        name=rep.name,
        checks=tuple(checks),
        mask_description=rep.mask.description if rep.mask else "full space",
    )


def position_momentum_residuals(
    rep: AlgebraRep, n_states: int = 20, seed: int = 0
) -> np.ndarray:
    """Relative error of ([X, P] - i*hbar) applied to masked test states.

    X is the boost image divided by the mass.  Requires a masked (grid)
    representation.
    """
    if rep.mask is None:
        raise ValueError("representation has no domain mask")
    rng = np.random.default_rng(seed)
    states = rep.mask.random_states(n_states, rng)
    x = rep.image("K1") / rep.mass
    p = rep.image("P1")
    delta = x @ (p @ states) - p @ (x @ states) - 1j * rep.hbar * states
    return np.linalg.norm(delta, axis=0) / rep.hbar


def _apply_factor(mat: np.ndarray, which: int, psi: np.ndarray) -> np.ndarray:
    """Apply a one-particle operator to one leg of a two-particle state."""
    if which == 0:
        return mat @ psi
    return psi @ mat.T


def verify_additive_grid_pair(
    part_a: AlgebraRep,
    part_b: AlgebraRep,
    tolerance: float,
    n_states: int = 20,
    seed: int = 0,
) -> RepVerification:
    """Additivity relations for two grid parts, applied matrix-free.

    The two-particle operators are never materialized: lifted one-particle
    matrices act on (n, n) state arrays leg by leg, so grids far beyond the
    dense-composite bound stay cheap.  Test states are products of masked
    one-particle states.  Checked, per test state and with relative
    residuals: the bracket relations among the total H, P, K, M; the mixed
    relations of each total generator with every per-part position and
    momentum; exact additivity of the mass; and commutation of generators
    lifted from different parts.
    """
    for part in (part_a, part_b):
        if part.mask is None:
            raise ValueError(f"{part.name} has no domain mask")
    if part_a.hbar != part_b.hbar:
        raise ValueError("parts disagree on hbar")
    hbar = part_a.hbar
    rng = np.random.default_rng(seed)
    states_a = part_a.mask.random_states(n_states, rng)
    states_b = part_b.mask.random_states(n_states, rng)

    ops = {}
    for tag, part in (("a", part_a), ("b", part_b)):
        ops[tag] = {
            "P": part.image("P1"),
            "K": part.image("K1"),
            "H": part.image("H"),
            "M": part.image("M"),
            "X": part.image("K1") / part.mass,
        }
    m_a, m_b = part_a.mass, part_b.mass

    def total(label: str, psi: np.ndarray) -> np.ndarray:
        return _apply_factor(ops["a"][label], 0, psi) + _apply_factor(ops["b"][label], 1, psi)

    def part_op(tag: str, label: str, psi: np.ndarray) -> np.ndarray:
        return _apply_factor(ops[tag][label], 0 if tag == "a" else 1, psi)

    def comm(f, g, psi):
        return f(g(psi)) - g(f(psi))

    records: dict[str, float] = {}

    def record(law: str, value: float) -> None:
        records[law] = max(records.get(law, 0.0), value)

    for col in range(n_states):
        psi = np.outer(states_a[:, col], states_b[:, col])

        tot_p = lambda s: total("P", s)
        tot_k = lambda s: total("K", s)
        tot_h = lambda s: total("H", s)

        expected = 1j * hbar * (m_a + m_b) * psi
        record(
            "[K,P] = ihbar*M (totals)",
            _relative_residual(comm(tot_k, tot_p, psi) - expected, expected),
        )
        expected = 1j * hbar * tot_p(psi)
        record(
            "[K,H] = ihbar*P (totals)",
            _relative_residual(comm(tot_k, tot_h, psi) - expected, expected),
        )
        record(
            "[P,H] = 0 (totals)",
            _relative_residual(comm(tot_p, tot_h, psi), tot_p(tot_h(psi))),
        )
        for tag, m_r in (("a", m_a), ("b", m_b)):
            x_r = lambda s, t=tag: part_op(t, "X", s)
            p_r = lambda s, t=tag: part_op(t, "P", s)
            expected = -1j * hbar * psi
            record(
                "[P_total, X_part] = -ihbar",
                _relative_residual(comm(tot_p, x_r, psi) - expected, expected),
            )
            record(
                "[P_total, P_part] = 0",
                _relative_residual(comm(tot_p, p_r, psi), tot_p(p_r(psi))),
            )
            record(
                "[K_total, X_part] = 0",
                _relative_residual(comm(tot_k, x_r, psi), tot_k(x_r(psi))),
            )
            expected = 1j * hbar * m_r * psi
            record(
                "[K_total, P_part] = ihbar*m_part",
                _relative_residual(comm(tot_k, p_r, psi) - expected, expected),
            )
        expected = (m_a + m_b) * psi
        record(
            "M_total = (m_a + m_b)*identity",
            _relative_residual(total("M", psi) - expected, expected),
        )
        cross = _apply_factor(ops["a"]["K"], 0, _apply_factor(ops["b"]["P"], 1, psi)) - \
            _apply_factor(ops["b"]["P"], 1, _apply_factor(ops["a"]["K"], 0, psi))
        record(
            "cross-part generators commute",
            _relative_residual(
                cross, _apply_factor(ops["a"]["K"], 0, _apply_factor(ops["b"]["P"], 1, psi))
            ),
        )

    checks = tuple(
        PairCheck(law=law, residual=value, tolerance=tolerance)
        for law, value in records.items()
    )
    return RepVerification(
        name=f"additive-pair({part_a.name}, {part_b.name})",
        checks=checks,
        mask_description=f"products of masked states: {part_a.mask.description}",
    )
