"""Verification suites behind the command-line subcommands.

Every suite builds its fixtures from an explicit seed, measures each law at a
pinned tolerance (scalable through ``tolerance_scale`` for exploratory runs),
and returns a :class:`~qsystems.report.SuiteReport`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import replace

import numpy as np

from . import __version__, charge, dynamics, epr_bell, galilei, mereology, symmetry
from .grids import GridSpec, wrap_displacement
from .hilbert import Operator, SpaceSpec, StateVector, basis_state, lift, pauli_matrices
from .report import CheckRecord, SuiteReport

__all__ = ["SUITE_RUNNERS", "run_suite", "run_all", "default_config"]


def _merge(defaults: dict, override: dict | None) -> dict:
    out = dict(defaults)
    if override:
        out.update(override)
    return out


def _residual_record(check_id, law, value, tolerance, detail=None) -> CheckRecord:
    value = float(value)
    return CheckRecord(
        check_id=check_id,
        law=law,
        value=value,
        tolerance=float(tolerance),
        passed=value <= tolerance,
        detail=detail,
    )


def _bool_record(check_id, law, passed, detail=None) -> CheckRecord:
    return CheckRecord(
        check_id=check_id,
        law=law,
        value=bool(passed),
        tolerance=None,
        passed=bool(passed),
        detail=detail,
    )


# --------------------------------------------------------------------------
# axioms
# --------------------------------------------------------------------------

_AXIOMS_DEFAULTS = {
    "mereology_instances": 10_000,
    "atom_pool": ["a", "b", "c", "d", "e", "f", "g", "h"],
    "spin_values": [0.5, 1.0, 1.5],
    "spin_tolerance": 1e-12,
    "grid_sites": 128,
    "grid_length": 16.0,
    "grid_masses": [1.0, 1.5],
    "grid_tolerance": 1e-6,
    "n_test_states": 20,
    "hbar": 1.0,
}


def _random_individual(rng: np.random.Generator, pool: list[str]) -> mereology.Individual:
    size = int(rng.integers(0, len(pool) + 1))
    atoms = rng.choice(pool, size=size, replace=False) if size else []
    return mereology.Individual(frozenset(str(a) for a in atoms))


def _mereology_law_failures(rng: np.random.Generator, pool: list[str], instances: int) -> int:
    failures = 0
    assoc = mereology.associate
    part = mereology.is_part_of
    for _ in range(instances):
        x = _random_individual(rng, pool)
        y = _random_individual(rng, pool)
        z = _random_individual(rng, pool)
        ok = (
            assoc(assoc(x, y), z) == assoc(x, assoc(y, z))
            and assoc(x, y) == assoc(y, x)
            and assoc(x, x) == x
            and assoc(x, mereology.NULL) == x
            and part(x, x)
            and part(x, assoc(x, y))
            and part(x, assoc(assoc(x, y), z))
        )
        # Antisymmetry, exercised on a guaranteed two-way pair half the time.
        if part(x, y) and part(y, x) and x != y:
            ok = False
        w = assoc(x, y) if rng.integers(2) else x
        if part(x, w) and part(w, x) and w != x:
            ok = False
        if not ok:
            failures += 1
    return failures


def run_axioms(config: dict | None = None, seed: int = 0, tolerance_scale: float = 1.0) -> SuiteReport:
    cfg = _merge(_AXIOMS_DEFAULTS, config)
    hbar = float(cfg["hbar"])
    report = SuiteReport("axioms", seed=seed, config=cfg, tool_version=__version__)
    rng = np.random.default_rng(seed)

    failures = _mereology_law_failures(rng, list(cfg["atom_pool"]), int(cfg["mereology_instances"]))
    report.add(
        CheckRecord(
            check_id="mereology-monoid-parthood",
            law="association is a commutative idempotent monoid with neutral null; "
            "parthood is a partial order",
            value=failures,
            tolerance=None,
            passed=failures == 0,
            detail={"instances": int(cfg["mereology_instances"])},
        )
    )

    structure = galilei.verify_structure()
    report.add(
        CheckRecord(
            check_id="algebra-antisymmetry",
            law="[x,y] = -[y,x] over all 55 generator pairs (exact rational arithmetic)",
            value=len(structure.antisymmetry_failures),
            tolerance=None,
            passed=not structure.antisymmetry_failures,
        )
    )
    report.add(
        CheckRecord(
            check_id="algebra-jacobi",
            law="[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0 over all 165 triples (exact)",
            value=len(structure.jacobi_failures),
            tolerance=None,
            passed=not structure.jacobi_failures,
        )
    )

    spin_tol = float(cfg["spin_tolerance"]) * tolerance_scale
    for j in cfg["spin_values"]:
        rep = galilei.build_spin_rep(j, hbar=hbar)
        rep.validate()
        verification = galilei.verify_rep(rep, spin_tol)
        report.add(
            _residual_record(
                f"spin-brackets-j{j:g}",
                "rotation brackets [J_i,J_j] = ihbar*eps_ijk*J_k and centrality of M",
                verification.max_residual,
                spin_tol,
                detail=verification.to_dict(),
            )
        )
        jv = float(j)
        expected = hbar * hbar * jv * (jv + 1.0)
        casimir = galilei.casimir_squared(rep)
        deviation = np.max(np.abs(casimir - expected * np.eye(rep.space.total_dim)))
        report.add(
            _residual_record(
                f"spin-casimir-j{j:g}",
                "J^2 = hbar^2 j(j+1) * identity",
                deviation,
                spin_tol,
            )
        )

    grid_tol = float(cfg["grid_tolerance"]) * tolerance_scale
    n_states = int(cfg["n_test_states"])
    rep_a = galilei.build_grid_rep(
        int(cfg["grid_sites"]), float(cfg["grid_length"]), float(cfg["grid_masses"][0]), hbar
    )
    rep_a.validate()
    xp_residuals = galilei.position_momentum_residuals(rep_a, n_states=n_states, seed=seed)
    report.add(
        _residual_record(
            "grid-position-momentum",
            "([X,P] - ihbar) applied to band-limited interior states",
            float(np.max(xp_residuals)),
            grid_tol,
            detail={"n_states": n_states, "residuals": [float(r) for r in xp_residuals]},
        )
    )
    grid_verification = galilei.verify_rep(rep_a, grid_tol)
    report.add(
        _residual_record(
            "grid-brackets",
            "free-subalgebra brackets on the masked subspace",
            grid_verification.max_residual,
            grid_tol,
            detail=grid_verification.to_dict(),
        )
    )

    rep_b = galilei.build_grid_rep(
        int(cfg["grid_sites"]), float(cfg["grid_length"]), float(cfg["grid_masses"][1]), hbar
    )
    pair = galilei.verify_additive_grid_pair(
        rep_a, rep_b, tolerance=grid_tol, n_states=n_states, seed=seed
    )
    report.add(
        _residual_record(
            "additive-pair-relations",
            "two-particle additivity: total P, K, H, M relations and mixed "
            "total-vs-part brackets on masked product states",
            pair.max_residual,
            grid_tol,
            detail=pair.to_dict(),
        )
    )

    spin_tol_add = float(cfg["spin_tolerance"]) * tolerance_scale
    total = galilei.build_additive_rep(
        [galilei.build_spin_rep(0.5, hbar=hbar, mass=1.0), galilei.build_spin_rep(0.5, hbar=hbar, mass=1.5)]
    )
    mass_dev = np.max(np.abs(total.image("M") - 2.5 * np.eye(4)))
    report.add(
        _residual_record(
            "additive-spin-mass",
            "total mass image is the sum of part masses",
            mass_dev,
            spin_tol_add,
        )
    )
    j3_eigs = np.sort(np.linalg.eigvalsh(total.image("J3")))
    expected_j3 = hbar * np.array([-1.0, 0.0, 0.0, 1.0])
    report.add(
        _residual_record(
            "additive-spin-j3-spectrum",
            "two spin-1/2 parts: total J3 spectrum {-hbar, 0, 0, +hbar}",
            float(np.max(np.abs(j3_eigs - expected_j3))),
            spin_tol_add,
        )
    )
    return report


# --------------------------------------------------------------------------
# symmetry
# --------------------------------------------------------------------------

_SYMMETRY_DEFAULTS = {
    "cases": [[2, 2], [2, 3], [3, 2], [3, 3], [4, 2]],
    "projector_tolerance": 1e-12,
    "exclusion_tolerance": 1e-12,
    "homomorphism_tolerance": 1e-12,
    "exchange_tolerance": 1e-10,
    "n_random": 8,
}


def run_symmetry(config: dict | None = None, seed: int = 0, tolerance_scale: float = 1.0) -> SuiteReport:
    cfg = _merge(_SYMMETRY_DEFAULTS, config)
    report = SuiteReport("symmetry", seed=seed, config=cfg, tool_version=__version__)
    rng = np.random.default_rng(seed)
    proj_tol = float(cfg["projector_tolerance"]) * tolerance_scale
    cases = [tuple(c) for c in cfg["cases"]]

    idem_worst = 0.0
    overlap_worst = 0.0
    rank_sum_ok = True
    rank_details = {}
    for n, d in cases:
        pair = symmetry.build_projectors(n, d)
        s, a = pair.symmetrizer.entries, pair.antisymmetrizer.entries
        rank_s = symmetry.projector_rank(pair.symmetrizer)
        rank_a = symmetry.projector_rank(pair.antisymmetrizer)
        oracle_s = symmetry.count_symmetric_basis(n, d)
        oracle_a = symmetry.count_antisymmetric_basis(n, d)
        rank_details[f"n{n}d{d}"] = {
            "rank_symmetric": rank_s,
            "rank_antisymmetric": rank_a,
            "enumerated_symmetric": oracle_s,
            "enumerated_antisymmetric": oracle_a,
        }
        report.add(
            _bool_record(
                f"projector-ranks-n{n}-d{d}",
                "projector ranks equal brute-force basis enumeration counts",
                rank_s == oracle_s and rank_a == oracle_a,
                detail=rank_details[f"n{n}d{d}"],
            )
        )
        idem_worst = max(
            idem_worst,
            float(np.max(np.abs(s @ s - s))),
            float(np.max(np.abs(a @ a - a))),
            float(np.max(np.abs(s @ a))),
            float(np.max(np.abs(a @ s))),
        )
        if n == 2:
            idem_worst = max(idem_worst, float(np.max(np.abs(s + a - np.eye(s.shape[0])))))
        total = rank_s + rank_a
        bound = d ** n
        if total > bound or (n == 2) != (total == bound):
            rank_sum_ok = False
        if rank_a >= 1 and rank_s >= 1:
            for _ in range(int(cfg["n_random"])):
                dim = s.shape[0]
                r1 = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
                r2 = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
                psi_s = s @ r1
                psi_a = a @ r2
                if np.linalg.norm(psi_s) > 1e-9 and np.linalg.norm(psi_a) > 1e-9:
                    psi_s /= np.linalg.norm(psi_s)
                    psi_a /= np.linalg.norm(psi_a)
                    overlap_worst = max(overlap_worst, float(abs(np.vdot(psi_s, psi_a))))

    report.add(
        _residual_record(
            "projector-idempotency-orthogonality",
            "S and A are idempotent, mutually orthogonal, and complete for n=2",
            idem_worst,
            proj_tol,
        )
    )
    report.add(
        _residual_record(
            "sector-orthogonality",
            "random symmetric and antisymmetric states are orthogonal",
            overlap_worst,
            proj_tol,
        )
    )
    report.add(
        _bool_record(
            "sector-sum-dimension",
            "rank(S) + rank(A) <= d^n with equality exactly when n = 2",
            rank_sum_ok,
            detail=rank_details,
        )
    )

    hom_tol = float(cfg["homomorphism_tolerance"]) * tolerance_scale
    hom_worst = 0.0
    for n, d in ((3, 2), (4, 2)):
        space = SpaceSpec((d,) * n)
        for _ in range(int(cfg["n_random"])):
            p = symmetry.Permutation(tuple(rng.permutation(n).tolist()))
            q = symmetry.Permutation(tuple(rng.permutation(n).tolist()))
            u_pq = symmetry.permutation_operator(p.compose(q), space).entries
            u_p = symmetry.permutation_operator(p, space).entries
            u_q = symmetry.permutation_operator(q, space).entries
            hom_worst = max(hom_worst, float(np.max(np.abs(u_pq - u_p @ u_q))))
    report.add(
        _residual_record(
            "permutation-homomorphism",
            "U(p.q) = U(p) U(q) over random permutation pairs",
            hom_worst,
            hom_tol,
        )
    )

    excl_tol = float(cfg["exclusion_tolerance"]) * tolerance_scale
    qubit = SpaceSpec.single(2)
    phi_raw = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    chi_raw = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    phi = StateVector(qubit, phi_raw).normalized()
    chi = StateVector(qubit, chi_raw).normalized()
    dup2 = symmetry.pauli_exclusion_check([phi, phi], tolerance=excl_tol)
    dup3 = symmetry.pauli_exclusion_check([phi, phi, chi], tolerance=excl_tol)
    report.add(
        _residual_record(
            "pauli-exclusion-duplicates",
            "antisymmetrized products with a repeated single-component state vanish",
            max(dup2.antisymmetrized_norm, dup3.antisymmetrized_norm),
            excl_tol,
            detail={"pair_norm": dup2.antisymmetrized_norm, "triple_norm": dup3.antisymmetrized_norm},
        )
    )
    slater = symmetry.pauli_exclusion_check([basis_state(qubit, 0), basis_state(qubit, 1)])
    report.add(
        _residual_record(
            "slater-survival",
            "antisymmetrized product of orthogonal states has norm 1/sqrt(2)",
            abs(slater.antisymmetrized_norm - 1.0 / math.sqrt(2.0)),
            excl_tol,
        )
    )

    exch_tol = float(cfg["exchange_tolerance"]) * tolerance_scale
    two_spins = galilei.build_additive_rep(
        [galilei.build_spin_rep(0.5), galilei.build_spin_rep(0.5)]
    )
    j_square = Operator(SpaceSpec((2, 2)), galilei.casimir_squared(two_spins))
    swap = symmetry.Permutation((1, 0))
    exch_worst = 0.0
    for _ in range(int(cfg["n_random"])):
        raw = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi = StateVector(SpaceSpec((2, 2)), raw).normalized()
        exch_worst = max(
            exch_worst,
            symmetry.exchange_expectation_check(j_square, psi, swap).difference,
        )
    report.add(
        _residual_record(
            "exchange-invariant-total-observable",
            "expectation of the total J^2 is unchanged under component exchange",
            exch_worst,
            exch_tol,
        )
    )
    sym_state = StateVector(SpaceSpec((2, 2)), np.array([0, 1, 1, 0]) / math.sqrt(2.0))
    _, _, sz = pauli_matrices()
    one_sided = lift(Operator(qubit, sz), 0, SpaceSpec((2, 2)))
    check = symmetry.exchange_expectation_check(one_sided, sym_state, swap)
    report.add(
        _residual_record(
            "exchange-invariance-symmetric-state",
            "one-sided observable still balances on an exchange-symmetric state",
            check.difference,
            exch_tol,
        )
    )
    return report


# --------------------------------------------------------------------------
# dynamics
# --------------------------------------------------------------------------

_DYNAMICS_DEFAULTS = {
    "hbar": 1.0,
    "relative": {
        "n_sites": 64,
        "length": 16.0,
        "masses": [1.0, 1.0],
        "well_depth": 2.0,
        "well_width": 1.5,
        "v2_scale": 0.8,
        "v3_scale": 0.5,
    },
    "evolution": {"t_final": 2.0, "n_steps": 100},
    "weak_coupling": {"n_sites": 16, "masses": [1.0, 1.3], "lambdas": [0.125, 0.25, 0.5, 1.0]},
    "momentum": {"n_sites": 64, "masses": [1.0, 1.5]},
    "hermiticity_tolerance": 1e-12,
    "spin_spectrum_tolerance": 1e-12,
    "norm_drift_tolerance": 1e-10,
    "energy_drift_tolerance": 1e-9,
    "linearity_tolerance": 1e-6,
    "exchange_tolerance": 1e-10,
    "momentum_tolerance": 1e-6,
}


def _gaussian_well_tables(length: float, depth: float, width: float, v2: float, v3: float):
    r = np.linspace(0.0, length / 2.0, 257)
    shape = np.exp(-(r ** 2) / (2.0 * width ** 2))
    return dynamics.PotentialSpec(
        v=dynamics.RadialTable(r, -depth * shape),
        v1=None,
        v2=dynamics.RadialTable(r, v2 * shape),
        v3=dynamics.RadialTable(r, v3 * shape),
    )


def run_dynamics(config: dict | None = None, seed: int = 0, tolerance_scale: float = 1.0) -> SuiteReport:
    cfg = _merge(_DYNAMICS_DEFAULTS, config)
    hbar = float(cfg["hbar"])
    report = SuiteReport("dynamics", seed=seed, config=cfg, tool_version=__version__)
    rng = np.random.default_rng(seed)

    rel = cfg["relative"]
    grid = GridSpec(int(rel["n_sites"]), float(rel["length"]))
    if rel.get("potential"):
        pot = dynamics.PotentialSpec.from_config(
            rel["potential"], r_max=float(rel["length"]) / 2.0
        )
    else:
        pot = _gaussian_well_tables(
            float(rel["length"]),
            float(rel["well_depth"]),
            float(rel["well_width"]),
            float(rel["v2_scale"]),
            float(rel["v3_scale"]),
        )
    body = dynamics.BodyConfig(
        n_bodies=2, masses=tuple(float(m) for m in rel["masses"]), spin_half=True, grid=grid
    )
    h = dynamics.build_hamiltonian(body, pot, hbar)
    herm_tol = float(cfg["hermiticity_tolerance"]) * tolerance_scale
    report.add(
        _residual_record(
            "hamiltonian-hermiticity",
            "kinetic + central + spin-spin Hamiltonian is hermitian",
            float(np.max(np.abs(h.entries - h.entries.conj().T))),
            herm_tol,
        )
    )

    spin_tol = float(cfg["spin_spectrum_tolerance"]) * tolerance_scale
    spin_only = dynamics.BodyConfig(n_bodies=2, masses=(1.0, 1.0), spin_half=True, grid=None)
    dot_h = dynamics.build_hamiltonian(
        spin_only, dynamics.PotentialSpec.from_constants(v2=1.0), hbar
    )
    eigs = np.sort(np.linalg.eigvalsh(dot_h.entries))
    expected = (hbar ** 2) * np.array([-0.75, 0.25, 0.25, 0.25])
    report.add(
        _residual_record(
            "singlet-triplet-split",
            "s1.s2 spectrum: -3 hbar^2/4 once, +hbar^2/4 threefold",
            float(np.max(np.abs(eigs - expected))),
            spin_tol,
        )
    )
    tensor_h = dynamics.build_hamiltonian(
        spin_only, dynamics.PotentialSpec.from_constants(v3=1.0), hbar
    )
    sx, sy, sz = (0.5 * hbar * m for m in pauli_matrices())
    dot = np.kron(sx, sx) + np.kron(sy, sy) + np.kron(sz, sz)
    oracle = np.sort(np.linalg.eigvalsh(3.0 * np.kron(sz, sz) - dot))
    report.add(
        _residual_record(
            "tensor-term-spectrum",
            "3(s1.n)(s2.n) - s1.s2 spectrum matches the explicit 4x4 oracle",
            float(np.max(np.abs(np.sort(np.linalg.eigvalsh(tensor_h.entries)) - oracle))),
            spin_tol,
        )
    )

    evo = cfg["evolution"]
    dim = h.space.total_dim
    raw = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    psi0 = StateVector(h.space, raw).normalized()
    result = dynamics.evolve(psi0, h, float(evo["t_final"]), int(evo["n_steps"]), hbar)
    evo_detail = {
        "times": result.times.tolist(),
        "norms": result.norms.tolist(),
        "energies": result.energies.tolist(),
    }
    report.add(
        _residual_record(
            "evolution-norm-drift",
            "spectral propagation keeps the norm constant",
            result.norm_drift,
            float(cfg["norm_drift_tolerance"]) * tolerance_scale,
            detail=evo_detail,
        )
    )
    report.add(
        _residual_record(
            "evolution-energy-drift",
            "spectral propagation keeps the energy constant",
            result.energy_drift,
            float(cfg["energy_drift_tolerance"]) * tolerance_scale,
        )
    )

    weak = cfg["weak_coupling"]
    weak_grid = GridSpec(int(weak["n_sites"]), float(rel["length"]))
    weak_body = dynamics.BodyConfig(
        n_bodies=2, masses=tuple(float(m) for m in weak["masses"]), spin_half=True, grid=weak_grid
    )
    weak_check = dynamics.weak_coupling_check(
        weak_body,
        pot,
        [float(v) for v in weak["lambdas"]],
        hbar,
        tolerance=float(cfg["linearity_tolerance"]) * tolerance_scale,
    )
    report.add(
        _residual_record(
            "weak-coupling-zero",
            "zero coupling reproduces the sum of lifted free Hamiltonians exactly",
            weak_check.zero_coupling_residual,
            0.0,
            detail=weak_check.to_dict(),
        )
    )
    report.add(
        _residual_record(
            "weak-coupling-linearity",
            "deviation norm divided by the coupling is a single constant",
            weak_check.linearity_spread,
            float(cfg["linearity_tolerance"]) * tolerance_scale,
        )
    )

    exch_body = dynamics.BodyConfig(
        n_bodies=2, masses=(1.0, 1.0), spin_half=True, grid=weak_grid
    )
    report.add(
        _residual_record(
            "exchange-symmetry",
            "[H, U_swap] vanishes for identical bodies",
            dynamics.exchange_symmetry_residual(exch_body, pot, hbar),
            float(cfg["exchange_tolerance"]) * tolerance_scale,
        )
    )

    mom = cfg["momentum"]
    mom_body = dynamics.BodyConfig(
        n_bodies=2,
        masses=tuple(float(m) for m in mom["masses"]),
        spin_half=False,
        grid=GridSpec(int(mom["n_sites"]), float(rel["length"])),
    )
    central_only = dynamics.PotentialSpec(v=pot.v)
    report.add(
        _residual_record(
            "momentum-conservation",
            "[H, P_total] vanishes on masked states for separation-only potentials",
            dynamics.momentum_conservation_residual(mom_body, central_only, hbar, seed=seed),
            float(cfg["momentum_tolerance"]) * tolerance_scale,
        )
    )
    return report


# --------------------------------------------------------------------------
# charge
# --------------------------------------------------------------------------

_CHARGE_DEFAULTS = {
    "charges": [-1, 0, 1, 1, 2, 2],
    "n_observables": 3,
    "n_phases": 16,
    "central_tolerance": 1e-10,
    "projector_tolerance": 1e-12,
    "offdiagonal_tolerance": 1e-12,
    "phase_tolerance": 1e-10,
}


def _build_charge_model(charges: list[int], n_observables: int, rng: np.random.Generator) -> charge.ChargeModel:
    dim = len(charges)
    space = SpaceSpec.single(dim)
    q = Operator(space, np.diag(np.asarray(charges, dtype=np.complex128)))
    charges_arr = np.asarray(charges)
    observables = []
    for _ in range(n_observables):
        mat = np.zeros((dim, dim), dtype=np.complex128)
        for value in sorted(set(charges)):
            idx = np.flatnonzero(charges_arr == value)
            block = rng.standard_normal((idx.size, idx.size)) + 1j * rng.standard_normal(
                (idx.size, idx.size)
            )
            block = 0.5 * (block + block.conj().T)
            mat[np.ix_(idx, idx)] = block
        observables.append(Operator(space, mat))
    observables.append(Operator(space, np.eye(dim, dtype=np.complex128)))
    vacuum_index = int(np.flatnonzero(charges_arr == 0)[0])
    return charge.ChargeModel(
        space=space,
        q_operator=q,
        observables=tuple(observables),
        symmetry_unitaries=(),
        vacuum_index=vacuum_index,
    )


def run_charge(config: dict | None = None, seed: int = 0, tolerance_scale: float = 1.0) -> SuiteReport:
    cfg = _merge(_CHARGE_DEFAULTS, config)
    report = SuiteReport("charge", seed=seed, config=cfg, tool_version=__version__)
    rng = np.random.default_rng(seed)
    charges = [int(c) for c in cfg["charges"]]
    model = _build_charge_model(charges, int(cfg["n_observables"]), rng)
    dim = model.space.total_dim

    central_tol = float(cfg["central_tolerance"]) * tolerance_scale
    central = charge.verify_central(model, tolerance=central_tol)
    report.add(
        _residual_record(
            "central-commutators",
            "the charge commutes with every registered observable",
            central.max_residual,
            central_tol,
            detail=central.to_dict(),
        )
    )

    period = charge.gauge_transform(model, 2.0 * math.pi)
    report.add(
        _residual_record(
            "gauge-period",
            "integer spectrum makes exp(2*pi*i*Q) the identity",
            float(np.max(np.abs(period.entries - np.eye(dim)))),
            central_tol,
        )
    )

    worst = 0.0
    for theta in np.linspace(0.0, 2.0 * math.pi, 8, endpoint=False):
        u = charge.gauge_transform(model, float(theta))
        for obs in model.observables:
            conj = u.entries.conj().T @ obs.entries @ u.entries
            worst = max(worst, float(np.max(np.abs(conj - obs.entries))))
    report.add(
        _residual_record(
            "gauge-invariance",
            "first-kind gauge conjugation fixes every registered observable",
            worst,
            central_tol,
        )
    )

    proj_tol = float(cfg["projector_tolerance"]) * tolerance_scale
    decomp = charge.sector_decomposition(model)
    resolution = sum(s.projector for s in decomp.sectors) - np.eye(dim)
    ortho = 0.0
    for sa, sb in itertools.combinations(decomp.sectors, 2):
        ortho = max(ortho, float(np.max(np.abs(sa.projector @ sb.projector))))
    report.add(
        _residual_record(
            "sector-resolution",
            "charge sector projectors resolve the identity and are orthogonal",
            max(float(np.max(np.abs(resolution))), ortho),
            proj_tol,
        )
    )
    report.add(
        _bool_record(
            "neutral-sector-unique",
            "the charge-zero sector is one-dimensional",
            decomp.neutral_unique,
            detail=decomp.to_dict(),
        )
    )
    report.add(
        _residual_record(
            "superselection-offdiagonal",
            "registered observables have no matrix elements between sectors",
            decomp.offdiagonal_residual,
            float(cfg["offdiagonal_tolerance"]) * tolerance_scale,
        )
    )
    report.add(
        _bool_record(
            "vacuum-invariance",
            "the designated neutral vector is fixed by the gauge family",
            bool(decomp.vacuum_invariant),
        )
    )

    phase_tol = float(cfg["phase_tolerance"]) * tolerance_scale
    charges_arr = np.asarray(charges)
    idx_a = int(np.flatnonzero(charges_arr == 1)[0])
    idx_b = int(np.flatnonzero(charges_arr == 2)[0])
    spread = charge.relative_phase_spread(
        model,
        basis_state(model.space, idx_a),
        basis_state(model.space, idx_b),
        n_phases=int(cfg["n_phases"]),
    )
    report.add(
        _residual_record(
            "relative-phase-invisibility",
            "expectations are independent of the phase between charge sectors",
            spread,
            phase_tol,
        )
    )
    return report


# --------------------------------------------------------------------------
# epr
# --------------------------------------------------------------------------

_EPR_DEFAULTS = {
    "n_sites": 256,
    "length": 16.0,
    "separation": 1.0,
    "momentum_mode": 3,
    "width": 0.25,
    "wide_width": 0.5,
    "n_inference": 10,
    "hbar": 1.0,
    "norm_tolerance": 1e-10,
    "mean_tolerance": 1e-6,
    "commutator_tolerance": 1e-10,
    "width_rtol": 0.2,
    "variance_rtol": 0.05,
}


def run_epr(config: dict | None = None, seed: int = 0, tolerance_scale: float = 1.0) -> SuiteReport:
    cfg = _merge(_EPR_DEFAULTS, config)
    hbar = float(cfg["hbar"])
    report = SuiteReport("epr", seed=seed, config=cfg, tool_version=__version__)
    rng = np.random.default_rng(seed)
    length = float(cfg["length"])
    momentum = float(cfg["momentum_mode"]) * 4.0 * math.pi * hbar / length
    pair_cfg = epr_bell.EPRConfig(
        n_sites=int(cfg["n_sites"]),
        length=length,
        separation=float(cfg["separation"]),
        total_momentum=momentum,
        width=float(cfg["width"]),
    )
    psi = epr_bell.build_epr_state(pair_cfg, hbar)
    report.add(
        _residual_record(
            "state-normalized",
            "the regularized pair state is a unit vector",
            abs(psi.norm() - 1.0),
            float(cfg["norm_tolerance"]) * tolerance_scale,
        )
    )

    sharp = epr_bell.commuting_pair_check(pair_cfg, hbar)
    mean_tol = float(cfg["mean_tolerance"]) * tolerance_scale
    report.add(
        _residual_record(
            "mean-separation",
            "the relative position averages to the configured separation",
            abs(sharp.mean_relative_position - pair_cfg.separation),
            mean_tol,
            detail=sharp.to_dict(),
        )
    )
    report.add(
        _residual_record(
            "mean-total-momentum",
            "the total momentum averages to the configured (snapped) value",
            abs(sharp.mean_total_momentum - pair_cfg.snapped_momentum(hbar)),
            mean_tol,
        )
    )
    comm_tol = float(cfg["commutator_tolerance"]) * tolerance_scale
    report.add(
        _residual_record(
            "commuting-pair",
            "relative position and total momentum commute on the pair state",
            sharp.commutator_state_residual,
            comm_tol,
        )
    )
    report.add(
        _residual_record(
            "shift-commutator",
            "relative position commutes exactly with simultaneous translation",
            sharp.shift_commutator_residual,
            1e-14 * tolerance_scale,
        )
    )
    report.add(
        _residual_record(
            "variance-relative-position",
            "relative-position variance equals the regularization width squared",
            abs(sharp.var_relative_position - pair_cfg.width ** 2) / pair_cfg.width ** 2,
            float(cfg["variance_rtol"]) * tolerance_scale,
        )
    )
    report.add(
        _residual_record(
            "total-momentum-sharp",
            "the pair state is an exact eigenvector of the total momentum "
            "(variance at roundoff level)",
            sharp.var_total_momentum,
            1e-20 * tolerance_scale,
        )
    )
    wide_cfg = replace(pair_cfg, width=float(cfg["wide_width"]))
    wide = epr_bell.commuting_pair_check(wide_cfg, hbar)
    report.add(
        _bool_record(
            "momentum-narrowing",
            "a wider separation envelope narrows the conjugate relative-momentum "
            "spread (order hbar^2 / 4 w^2)",
            wide.var_relative_momentum < sharp.var_relative_momentum,
            detail={
                "var_relative_momentum_narrow_envelope": sharp.var_relative_momentum,
                "var_relative_momentum_wide_envelope": wide.var_relative_momentum,
                "reciprocal_prediction_narrow": hbar ** 2 / (4.0 * pair_cfg.width ** 2),
                "reciprocal_prediction_wide": hbar ** 2 / (4.0 * wide_cfg.width ** 2),
            },
        )
    )

    spacing = pair_cfg.grid.spacing
    worst_mode = 0.0
    worst_width = 0.0
    for _ in range(int(cfg["n_inference"])):
        a = float(rng.uniform(-length / 4.0, length / 4.0))
        x1 = float(rng.uniform(-length / 8.0, length / 8.0))
        case = replace(pair_cfg, separation=a)
        conditional = epr_bell.conditional_inference(case, x1, hbar)
        target = float(wrap_displacement(np.array([x1 - a]), length)[0])
        mode_err = abs(float(wrap_displacement(np.array([conditional.mode - target]), length)[0]))
        worst_mode = max(worst_mode, mode_err)
        worst_width = max(worst_width, abs(conditional.width - case.width) / case.width)
    report.add(
        _residual_record(
            "conditional-inference-mode",
            "reading one position pins the partner at the measured value minus "
            "the separation, within one grid spacing",
            worst_mode,
            spacing + 1e-9,
            detail={"n_cases": int(cfg["n_inference"]), "grid_spacing": spacing},
        )
    )
    report.add(
        _residual_record(
            "conditional-inference-width",
            "the conditional distribution's width matches the regularization width",
            worst_width,
            float(cfg["width_rtol"]) * tolerance_scale,
        )
    )
    return report


# --------------------------------------------------------------------------
# bell
# --------------------------------------------------------------------------

_BELL_DEFAULTS = {
    "angles": [0.0, math.pi / 2.0, math.pi / 4.0, 3.0 * math.pi / 4.0],
    "n_samples": 100_000,
    "models": ["sign-cosine", "narrow-window", "double-frequency"],
    "n_random_settings": 5,
    "mc_sigmas": 5.0,
    "quantum_tolerance": 1e-10,
    "lhv_tolerance": 1e-6,
}


def run_bell(config: dict | None = None, seed: int = 0, tolerance_scale: float = 1.0) -> SuiteReport:
    cfg = _merge(_BELL_DEFAULTS, config)
    report = SuiteReport("bell", seed=seed, config=cfg, tool_version=__version__)
    rng = np.random.default_rng(seed)
    settings = epr_bell.CHSHSettings(*[float(a) for a in cfg["angles"]])
    q_tol = float(cfg["quantum_tolerance"]) * tolerance_scale

    optimal = epr_bell.CHSHSettings()
    report.add(
        _residual_record(
            "chsh-quantum-optimal",
            "|S| at the canonical settings equals 2*sqrt(2)",
            abs(abs(epr_bell.chsh_quantum(optimal)) - epr_bell.QUANTUM_BOUND),
            q_tol,
        )
    )
    s_quantum = epr_bell.chsh_quantum(settings)
    report.add(
        _residual_record(
            "chsh-quantum-tsirelson",
            "|S| at the configured settings stays within 2*sqrt(2)",
            max(0.0, abs(s_quantum) - epr_bell.QUANTUM_BOUND),
            q_tol,
            detail={"S_quantum": s_quantum},
        )
    )

    grid = np.linspace(0.0, 2.0 * math.pi, 13)
    cosine_worst = max(
        abs(epr_bell.correlation_quantum(a, b) + math.cos(a - b))
        for a in grid
        for b in grid
    )
    report.add(
        _residual_record(
            "correlation-cosine-law",
            "singlet correlation E(a,b) equals -cos(a-b)",
            cosine_worst,
            q_tol,
        )
    )

    rotation_worst = max(
        abs(
            epr_bell.chsh_quantum(
                epr_bell.CHSHSettings(*(angle + delta for angle in settings.as_tuple()))
            )
            - s_quantum
        )
        for delta in np.linspace(0.0, 2.0 * math.pi, 7)
    )
    report.add(
        _residual_record(
            "chsh-rotation-invariance",
            "a common analyzer offset leaves S unchanged",
            rotation_worst,
            q_tol,
        )
    )

    lhv_tol = float(cfg["lhv_tolerance"]) * tolerance_scale
    trial_settings = [settings, optimal]
    for _ in range(int(cfg["n_random_settings"])):
        trial_settings.append(
            epr_bell.CHSHSettings(*rng.uniform(0.0, 2.0 * math.pi, size=4).tolist())
        )
    for name in cfg["models"]:
        model = epr_bell.SHIPPED_LHV_MODELS[name]()
        exact_worst = max(
            abs(epr_bell.chsh_lhv_exact(model, s)) for s in trial_settings
        )
        report.add(
            _residual_record(
                f"lhv-classical-bound-{name}",
                "exact hidden-variable CHSH magnitude stays within the classical bound 2",
                max(0.0, exact_worst - epr_bell.CLASSICAL_BOUND),
                lhv_tol,
                detail={"worst_magnitude": exact_worst},
            )
        )
        estimate = epr_bell.chsh_lhv(model, settings, int(cfg["n_samples"]), seed)
        exact_here = epr_bell.chsh_lhv_exact(model, settings)
        margin = float(cfg["mc_sigmas"]) * estimate.stderr
        report.add(
            CheckRecord(
                check_id=f"lhv-sampling-consistency-{name}",
                law="the seeded Monte-Carlo CHSH estimate agrees with exact arc "
                "integration within the sampling error",
                value=abs(estimate.s_value - exact_here),
                tolerance=margin,
                passed=abs(estimate.s_value - exact_here) <= margin,
                detail={
                    "S_sampled": estimate.s_value,
                    "S_exact": exact_here,
                    "stderr": estimate.stderr,
                    "n_samples": estimate.n_samples,
                },
            )
        )

    saturation = abs(
        abs(epr_bell.chsh_lhv_exact(epr_bell.sign_cosine_model(), optimal)) - 2.0
    )
    report.add(
        _residual_record(
            "lhv-sign-cosine-saturation",
            "the hemisphere model saturates (does not exceed) the classical bound "
            "at the canonical settings",
            saturation,
            1e-9 * tolerance_scale,
        )
    )

    doc = epr_bell.bell_report(
        settings, epr_bell.SHIPPED_LHV_MODELS[str(cfg["models"][0])](), int(cfg["n_samples"]), seed
    )
    required = {
        "S_quantum",
        "S_lhv",
        "stderr_lhv",
        "bound_classical",
        "bound_quantum",
        "verdict",
    }
    report.add(
        _bool_record(
            "bell-report-schema",
            "the side-by-side record carries every documented field",
            required <= set(doc),
            detail=doc,
        )
    )
    return report


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------

SUITE_RUNNERS = {
    "axioms": run_axioms,
    "symmetry": run_symmetry,
    "dynamics": run_dynamics,
    "charge": run_charge,
    "epr": run_epr,
    "bell": run_bell,
}

_SUITE_DEFAULTS = {
    "axioms": _AXIOMS_DEFAULTS,
    "symmetry": _SYMMETRY_DEFAULTS,
    "dynamics": _DYNAMICS_DEFAULTS,
    "charge": _CHARGE_DEFAULTS,
    "epr": _EPR_DEFAULTS,
    "bell": _BELL_DEFAULTS,
}


def default_config(suite: str) -> dict:
    return dict(_SUITE_DEFAULTS[suite])


def run_suite(name: str, config: dict | None = None, seed: int = 0, tolerance_scale: float = 1.0) -> SuiteReport:
    runner = SUITE_RUNNERS.get(name)
    if runner is None:
        raise ValueError(f"unknown suite {name!r}")
    return runner(config, seed=seed, tolerance_scale=tolerance_scale)


def run_all(config: dict | None = None, seed: int = 0, tolerance_scale: float = 1.0) -> list[SuiteReport]:
    config = config or {}
    return [
        SUITE_RUNNERS[name](config.get(name), seed=seed, tolerance_scale=tolerance_scale)
        for name in ("axioms", "symmetry", "dynamics", "charge", "epr", "bell")
    ]
