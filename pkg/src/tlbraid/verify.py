"""Randomized sweep over gate configurations checking every algebraic identity.

Each trial draws its own generator from ``SeedSequence(seed).spawn(trials)``,
so a report depends only on ``(D, n, trials, seed)``.
"""

from __future__ import annotations

import math

import numpy as np

from .gates import (
    GateParams,
    Involution,
    local_identity_residuals,
    make_braid_gate,
    make_local_ops,
    make_tl_generators,
    sigma_pair,
)
from .linalg import check_dense_limit, check_property, matrix_residual
from .reference import hadamard
from .tla import TlaPair, check_braid, check_tla, jones_inverses

_PAULI = {
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def random_hermitian_involution(D: int, rng: np.random.Generator) -> np.ndarray:
    """``U diag(±1) U^dag`` for a random unitary U."""
    z = rng.normal(size=(D, D)) + 1j * rng.normal(size=(D, D))
    u, r = np.linalg.qr(z)
    u = u * (np.diag(r) / np.abs(np.diag(r)))
    signs = rng.choice([-1.0, 1.0], size=D)
    m = (u * signs) @ u.conj().T
    return 0.5 * (m + m.conj().T)


def random_involution(D: int, rng: np.random.Generator) -> Involution:
    kind = rng.integers(3)
    if kind == 0:
        return Involution.identity()
    if kind == 1:
        s, t = rng.choice(D, size=2, replace=False)
        return Involution.transposition(int(s), int(t))
    if D == 2:
        choices = [hadamard(), *_PAULI.values()]
        return Involution.custom(choices[rng.integers(len(choices))])
    return Involution.custom(random_hermitian_involution(D, rng))


def random_config(D: int, n: int, rng: np.random.Generator) -> tuple[GateParams, list[Involution]]:
    q, l = (int(x) for x in rng.choice(D, size=2, replace=False))
    params = GateParams.from_a2(
        D, n, int(rng.integers(1, n + 1)), q, l,
        float(rng.uniform(0.25, 1.0)), int(rng.choice([-1, 1])), float(rng.uniform(0, 2 * math.pi)),
    )
    return params, [random_involution(D, rng) for _ in range(n - 1)]


def trial_residuals(params: GateParams, lambdas, rng: np.random.Generator, limit: int | None = None) -> dict[str, float]:
    """All relation residuals for one configuration (dense path)."""
    e1, e2, e3 = make_local_ops(params.D, params.q, params.l, params.a, params.b_sign, params.phi)
    res = dict(local_identity_residuals(e1, e2, e3, params.a2))

    E1, E2 = make_tl_generators(params, lambdas)
    E1d, E2d = E1.dense(limit), E2.dense(limit)
    for name, E in (("E1", E1d), ("E2", E2d)):
        res[f"{name} projector"] = check_property(E, "projector").residual
        res[f"{name} hermitian"] = check_property(E, "hermitian").residual
    res["E1E2E1=a2*E1"] = matrix_residual(E1d @ E2d @ E1d, params.a2 * E1d)
    res["E2E1E2=a2*E2"] = matrix_residual(E2d @ E1d @ E2d, params.a2 * E2d)

    d, A = params.d, params.A
    pair = TlaPair(d * E1d, d * E2d, d)
    res.update(check_tla(pair).residuals)
    res["loop -A^2-A^-2=d"] = params.scalars.loop_residual()

    s1, s2 = sigma_pair(params, lambdas, limit)
    res.update(check_braid(s1, s2).residuals)
    res["sigma1 unitary"] = check_property(s1, "unitary").residual
    res["sigma2 unitary"] = check_property(s2, "unitary").residual
    i1, i2 = jones_inverses(pair, A)
    eye = np.eye(s1.shape[0])
    res["sigma inverse"] = max(matrix_residual(s1 @ i1, eye), matrix_residual(s2 @ i2, eye))

    gate = make_braid_gate(params, lambdas)
    B = gate.dense(limit)
    res["closed form = sigma1 sigma2"] = matrix_residual(B, s1 @ s2)
    res["gate unitary"] = check_property(B, "unitary").residual
    v = rng.normal(size=B.shape[0]) + 1j * rng.normal(size=B.shape[0])
    v /= np.linalg.norm(v)
    w = gate.operator.apply(v)
    res["structured = dense apply"] = matrix_residual(w, B @ v)
    res["norm preserved"] = abs(float(np.linalg.norm(w)) - 1.0)
    return res


def verification_sweep(D: int, n: int, trials: int = 50, seed: int = 0, tol: float = 1e-9,
                       limit: int | None = None) -> dict:
    check_dense_limit(D**n, limit)
    worst: dict[str, float] = {}
    worst_trial: dict[str, int] = {}
    for t, child in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        rng = np.random.default_rng(child)
        params, lambdas = random_config(D, n, rng)
        for name, r in trial_residuals(params, lambdas, rng, limit).items():
            if r > worst.get(name, -1.0):
                worst[name], worst_trial[name] = r, t
    failed = sorted(k for k, r in worst.items() if r > tol)
    return {
        "D": D,
        "n": n,
        "trials": trials,
        "seed": seed,
        "tol": tol,
        "max_residuals": dict(sorted(worst.items())),
        "worst_trial": dict(sorted(worst_trial.items())),
        "failed": failed,
        "passed": not failed,
    }
