"""Conjugation families as truncated antilinear operators.

Every family acts as ``x -> A @ conj(x)`` for a unitary matrix ``A``:

* ``GeneralPermutation(p, sigma)`` conjugates coefficients and permutes the
  residues of each length-``p`` block by an involution ``sigma``.
* ``Transposition(p, i, j)`` is the special case swapping residues ``i`` and
  ``j``; ``Reversal(n)`` reverses each length-``n`` block.
* ``MuLambda(mu, lam)`` sends ``f(z) -> mu * conj(f(lam * conj(z)))``, a
  diagonal twist ``diag(mu * conj(lam)**k)``.
* ``BlockHadamard`` / ``BlockMixed`` act on pairs of coefficient vectors
  through 2x2 arrays of the scalar operators, scaled by ``1/sqrt(2)``.

Truncation to ``span{z^0 .. z^(size-1)}`` is exact whenever the family's block
period divides ``size``; the constructors enforce that divisibility so every
downstream identity check is free of boundary effects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

INV_SQRT2 = 1.0 / math.sqrt(2.0)
UNIT_MODULUS_TOL = 1e-12
AXIOM_TOL = 1e-13


@dataclass(frozen=True)
class GeneralPermutation:
    """Involution ``sigma`` on residues 0..p-1, repeated on every block."""

    p: int
    sigma: tuple[int, ...]

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")
        sigma = tuple(int(v) for v in self.sigma)
        object.__setattr__(self, "sigma", sigma)
        if sorted(sigma) != list(range(self.p)):
            raise ValueError("sigma must be a permutation of 0..p-1")
        if any(sigma[sigma[m]] != m for m in range(self.p)):
            raise ValueError("sigma must be an involution")


@dataclass(frozen=True)
class Transposition:
    """Swap residues ``i`` and ``j`` modulo ``p``, fix the rest."""

    p: int
    i: int
    j: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if not 0 <= self.i < self.j < self.p:
            raise ValueError("need 0 <= i < j < p")

    def to_general(self) -> GeneralPermutation:
        sigma = list(range(self.p))
        sigma[self.i], sigma[self.j] = self.j, self.i
        return GeneralPermutation(self.p, tuple(sigma))


@dataclass(frozen=True)
class Reversal:
    """Reverse every block of ``n`` consecutive coefficients."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")

    def to_general(self) -> GeneralPermutation:
        return GeneralPermutation(self.n, tuple(self.n - 1 - m for m in range(self.n)))


@dataclass(frozen=True)
class MuLambda:
    """Diagonal twist ``f(z) -> mu * conj(f(lam * conj(z)))`` with unimodular
    ``mu`` and ``lam``; values within 1e-12 of the circle are normalized onto
    it, anything further off is rejected."""

    mu: complex = 1.0 + 0j
    lam: complex = 1.0 + 0j

    def __post_init__(self):
        for name in ("mu", "lam"):
            value = complex(getattr(self, name))
            r = abs(value)
            if abs(r - 1.0) > UNIT_MODULUS_TOL:
                raise ValueError(f"{name} must have unit modulus, got |{name}| = {r}")
            object.__setattr__(self, name, value / r)


@dataclass(frozen=True)
class BlockHadamard:
    """2x2 block operator ``(1/sqrt 2) [[C2, C2], [C2, -C2]]`` built from the
    block-of-two reversal ``C2``."""


@dataclass(frozen=True)
class BlockMixed:
    """2x2 block operator ``(1/sqrt 2) [[C2, C1], [C1, -C2]]`` mixing the
    block-of-two reversal with plain coefficient conjugation ``C1``."""


ConjugationSpec = Union[GeneralPermutation, Transposition, Reversal,
                        MuLambda, BlockHadamard, BlockMixed]

_PERMUTATION_FAMILIES = (GeneralPermutation, Transposition, Reversal)
_BLOCK_FAMILIES = (BlockHadamard, BlockMixed)


def is_block(spec: ConjugationSpec) -> bool:
    return isinstance(spec, _BLOCK_FAMILIES)


def period(spec: ConjugationSpec) -> int:
    """Block period whose divisibility makes truncation exact."""
    if isinstance(spec, (GeneralPermutation, Transposition)):
        return spec.p
    if isinstance(spec, Reversal):
        return spec.n
    if isinstance(spec, MuLambda):
        return 1
    if isinstance(spec, _BLOCK_FAMILIES):
        return 2
    raise TypeError(f"not a conjugation spec: {spec!r}")


def residue_permutation(spec: ConjugationSpec) -> tuple[int, ...]:
    if isinstance(spec, GeneralPermutation):
        return spec.sigma
    if isinstance(spec, (Transposition, Reversal)):
        return spec.to_general().sigma
    raise TypeError(f"{spec!r} is not a permutation-type conjugation")


def covered_transposition_case(p: int, i: int, j: int) -> bool:
    """Whether the residue-swap family (p, i, j) has a proven full
    coefficient characterization: either p even with the swap spanning half a
    block (j - i = p/2), or p = m*q + 1 for some m >= 2 with i = q - 1 and
    j = p - 1."""
    if not 0 <= i < j < p:
        raise ValueError("need 0 <= i < j < p")
    if p % 2 == 0 and j - i == p // 2:
        return True
    q = i + 1
    return j == p - 1 and (p - 1) % q == 0 and (p - 1) // q >= 2


@dataclass(frozen=True, eq=False)
class AntilinearOperator:
    """Unitary matrix ``A`` realizing the antilinear action ``x -> A conj(x)``."""

    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.dim,):
            raise ValueError(f"vector length {x.shape} does not match operator dim {self.dim}")
        return self.matrix @ np.conj(x)


def _pair_reversal_matrix(size: int) -> np.ndarray:
    mat = np.zeros((size, size))
    for m in range(0, size, 2):
        mat[m, m + 1] = 1.0
        mat[m + 1, m] = 1.0
    return mat


def truncated_matrix(spec: ConjugationSpec, size: int) -> AntilinearOperator:
    """Exact truncation of the conjugation to the first ``size`` coefficients
    (``2 * size`` for block families, ordered first component then second).

    Raises ``ValueError`` when the family's period does not divide ``size``.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    if isinstance(spec, _PERMUTATION_FAMILIES):
        p = period(spec)
        if size % p != 0:
            raise ValueError(f"size {size} is not a multiple of the block period {p}")
        sigma = residue_permutation(spec)
        mat = np.zeros((size, size), dtype=complex)
        for m in range(size):
            mat[m, sigma[m % p] + p * (m // p)] = 1.0
        return AntilinearOperator(mat)
    if isinstance(spec, MuLambda):
        weights = spec.mu * np.conj(spec.lam) ** np.arange(size)
        # repeated powers drift off the circle by ~k*eps; renormalizing keeps
        # the involution defect at one rounding per entry regardless of size
        weights /= np.abs(weights)
        return AntilinearOperator(np.diag(weights).astype(complex))
    if isinstance(spec, _BLOCK_FAMILIES):
        if size % 2 != 0:
            raise ValueError(f"size {size} is not a multiple of the block period 2")
        s = _pair_reversal_matrix(size)
        if isinstance(spec, BlockHadamard):
            mat = np.block([[s, s], [s, -s]]) * INV_SQRT2
        else:
            eye = np.eye(size)
            mat = np.block([[s, eye], [eye, -s]]) * INV_SQRT2
        return AntilinearOperator(mat.astype(complex))
    raise TypeError(f"not a conjugation spec: {spec!r}")


@dataclass(frozen=True)
class AxiomCheck:
    ok: bool
    involution_deviation: float
    isometry_deviation: float
    size: int
    probes: int


def verify_axioms(spec: ConjugationSpec, size: int, probes: int = 50,
                  seed: int = 0, tol: float = AXIOM_TOL) -> AxiomCheck:
    """Check the two conjugation axioms on the truncation: ``A conj(A) = I``
    entrywise and norm preservation on random unit probes."""
    op = truncated_matrix(spec, size)
    a = op.matrix
    involution = float(np.max(np.abs(a @ np.conj(a) - np.eye(op.dim))))
    rng = np.random.default_rng(seed)
    isometry = 0.0
    for _ in range(probes):
        v = rng.standard_normal(op.dim) + 1j * rng.standard_normal(op.dim)
        v /= np.linalg.norm(v)
        isometry = max(isometry, abs(np.linalg.norm(op.apply(v)) - 1.0))
    isometry = float(isometry)
    ok = bool(involution <= tol and isometry <= tol)
    return AxiomCheck(ok, involution, isometry, size, probes)


# --- JSON wire format ---------------------------------------------------------


def _complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def spec_to_json(spec: ConjugationSpec) -> dict:
    if isinstance(spec, GeneralPermutation):
        return {"family": "general", "p": spec.p, "sigma": list(spec.sigma)}
    if isinstance(spec, Transposition):
        return {"family": "transposition", "p": spec.p, "i": spec.i, "j": spec.j}
    if isinstance(spec, Reversal):
        return {"family": "reversal", "n": spec.n}
    if isinstance(spec, MuLambda):
        return {"family": "mulambda", "mu": _complex_pair(spec.mu),
                "lambda": _complex_pair(spec.lam)}
    if isinstance(spec, BlockHadamard):
        return {"family": "block_c"}
    if isinstance(spec, BlockMixed):
        return {"family": "block_ctilde"}
    raise TypeError(f"not a conjugation spec: {spec!r}")


def spec_from_json(obj: dict) -> ConjugationSpec:
    try:
        family = obj["family"]
    except (TypeError, KeyError) as exc:
        raise ValueError("conjugation spec JSON must carry a 'family' key") from exc
    try:
        if family == "general":
            return GeneralPermutation(int(obj["p"]), tuple(int(v) for v in obj["sigma"]))
        if family == "transposition":
            return Transposition(int(obj["p"]), int(obj["i"]), int(obj["j"]))
        if family == "reversal":
            return Reversal(int(obj["n"]))
        if family == "mulambda":
            mu = complex(*obj["mu"])
            lam = complex(*obj["lambda"])
            return MuLambda(mu, lam)
        if family == "block_c":
            return BlockHadamard()
        if family == "block_ctilde":
            return BlockMixed()
    except KeyError as exc:
        raise ValueError(f"spec JSON for {family!r} is missing field {exc.args[0]!r}") from exc
    raise ValueError(f"unknown conjugation family {family!r}")
