"""Exact-rational LLL and the ciphertext lattice attack.

The attack embeds C = X*e1 - Y*e2 in the rows

    (1, 0,  w*e1)
    (0, 1, -w*e2)
    (0, 0, -w*C)

so that (X, Y, 1) maps to (X, Y, 0).  With w large, every short reduced
vector has last coordinate 0 and lies in the 2-dimensional solution lattice,
whose determinant is about C.  The planted (X, Y) is found only when it is
shorter than sqrt(C); with 3n-bit unknowns against a 5n-bit C it is not.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .attacks import AttackReport, WorkCounter
from .numtheory import RandomSource
from .scheme import (
    Ciphertext,
    Plaintext,
    PublicKey,
    encrypt,
    encrypt_with_nonce,
    generate_keys,
    in_window,
    plaintext_window,
)

Vector = list[int]


class DependentRows(ValueError):
    pass


@dataclass(frozen=True)
class ReductionParams:
    delta: Fraction = Fraction(3, 4)

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        if not Fraction(1, 4) < self.delta <= 1:
            raise ValueError("delta must lie in (1/4, 1]")


@dataclass
class LatticeBasis:
    rows: list[Vector]

    def __post_init__(self):
        self.rows = [[int(v) for v in row] for row in self.rows]
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("rows must share one dimension")
        if len(self.rows) > self.dim:
            raise DependentRows("more rows than the ambient dimension")

    @property
    def dim(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __len__(self):
        return len(self.rows)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def gram_schmidt(rows: list[Vector]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Squared norms of the Gram-Schmidt vectors and the mu coefficients."""
    k = len(rows)
    star: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * k for _ in range(k)]
    for i, b in enumerate(rows):
        v = [Fraction(x) for x in b]
        for j in range(i):
            if norms[j] == 0:
                continue
            mu[i][j] = dot(b, star[j]) / norms[j]
            v = [a - mu[i][j] * s for a, s in zip(v, star[j])]
        star.append(v)
        norms.append(dot(v, v))
    return norms, mu


def is_lll_reduced(rows: list[Vector], delta: Fraction = Fraction(3, 4)) -> bool:
    norms, mu = gram_schmidt(rows)
    for i in range(len(rows)):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    return all((delta - mu[k][k - 1] ** 2) * norms[k - 1] <= norms[k] for k in range(1, len(rows)))


def lll_reduce_with_transform(
    basis: LatticeBasis, params: ReductionParams = ReductionParams(), counter: WorkCounter | None = None
) -> tuple[LatticeBasis, list[Vector]]:
    """LLL with incremental exact Gram-Schmidt updates.

    Returns the reduced basis and the integer matrix U with U * input = output.
    """
    b = [list(r) for r in basis.rows]
    m = len(b)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    if m == 0:
        return LatticeBasis([]), U
    Bn, mu = gram_schmidt(b)
    if any(x == 0 for x in Bn):
        raise DependentRows("input rows are linearly dependent")
    delta = params.delta
    half = Fraction(1, 2)

    k = 1
    while k < m:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > half:
                q = math.floor(mu[k][j] + half)
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                U[k] = [x - q * y for x, y in zip(U[k], U[j])]
                for i in range(j):
                    mu[k][i] -= q * mu[j][i]
                mu[k][j] -= q
                if counter:
                    counter.charge()
        if Bn[k] >= (delta - mu[k][k - 1] ** 2) * Bn[k - 1]:
            k += 1
            continue
        # Swap rows k-1, k and update the Gram-Schmidt data in place.
        b[k - 1], b[k] = b[k], b[k - 1]
        U[k - 1], U[k] = U[k], U[k - 1]
        for j in range(k - 1):
            mu[k - 1][j], mu[k][j] = mu[k][j], mu[k - 1][j]
        mu_kk = mu[k][k - 1]
        B = Bn[k] + mu_kk**2 * Bn[k - 1]
        mu[k][k - 1] = mu_kk * Bn[k - 1] / B
        Bn[k] = Bn[k - 1] * Bn[k] / B
        Bn[k - 1] = B
        for i in range(k + 1, m):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - mu_kk * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
        if counter:
            counter.charge()
        k = max(k - 1, 1)
    return LatticeBasis(b), U


def lll_reduce(basis: LatticeBasis, params: ReductionParams = ReductionParams()) -> LatticeBasis:
    return lll_reduce_with_transform(basis, params)[0]


def default_weight(n: int) -> int:
    return 1 << (4 * n + 4)


def build_ciphertext_lattice(pk: PublicKey, ct: Ciphertext, weight: int | None = None) -> LatticeBasis:
    w = default_weight(pk.n) if weight is None else weight
    if w < 1 << (4 * pk.n):
        raise ValueError("weight must be at least 2^(4n)")
    return LatticeBasis([[1, 0, w * pk.e1], [0, 1, -w * pk.e2], [0, 0, -w * ct.C]])


def lattice_attack(
    pk: PublicKey,
    ct: Ciphertext,
    params: ReductionParams = ReductionParams(),
    x_bits: int | None = None,
    coeff_range: int = 4,
) -> AttackReport:
    """Look for (x, y, 0) in the reduced ciphertext lattice solving the equation.

    A hit needs x*e1 - y*e2 == C, x of ``x_bits`` bits (3n unless told
    otherwise) and x - y inside the plaintext window.
    """
    x_bits = 3 * pk.n if x_bits is None else x_bits
    counter = WorkCounter()
    try:
        reduced, _ = lll_reduce_with_transform(build_ciphertext_lattice(pk, ct), params, counter)
    except DependentRows:
        return AttackReport("lattice", False, {}, counter.ops, "degenerate lattice")
    norms = [dot(r, r) for r in reduced.rows]

    rng = range(-coeff_range, coeff_range + 1)
    for coeffs in itertools.product(rng, repeat=len(reduced)):
        counter.charge()
        v = [sum(c * r[i] for c, r in zip(coeffs, reduced.rows)) for i in range(reduced.dim)]
        if v[2] != 0:
            continue
        x, y = v[0], v[1]
        if x * pk.e1 - y * pk.e2 != ct.C or x.bit_length() != x_bits or x <= 0:
            continue
        if in_window(x - y, pk.n):
            return AttackReport(
                "lattice",
                True,
                {"X": x, "Y": y, "M": x - y},
                counter.ops,
                "reduced norms^2: " + ",".join(str(s) for s in norms),
            )
    return AttackReport("lattice", False, {}, counter.ops, "reduced norms^2: " + ",".join(str(s) for s in norms))


REGIMES = ("correct", "weakened")


def plant_instance(n: int, regime: str, rng: RandomSource):
    """Key pair plus a ciphertext with known nonce.

    "correct" uses the scheme's own 3n-bit X; "weakened" draws X at only n bits
    (same width as the primes, a quarter of the 4n-bit public key pair).
    Returns (pk, ct, nonce, M, x_bits).
    """
    pk, _, _ = generate_keys(n, rng)
    lo, hi = plaintext_window(n)
    pt = Plaintext(rng.randint(lo + 1, hi - 1), n)
    if regime == "correct":
        ct, nonce = encrypt(pk, pt, rng)
        return pk, ct, nonce, pt.M, 3 * n
    if regime == "weakened":
        X = rng.randint(max(pt.M + 1, 1 << (n - 1)), (1 << n) - 1)
        ct, nonce = encrypt_with_nonce(pk, pt, X)
        return pk, ct, nonce, pt.M, n
    raise ValueError(f"unknown regime {regime!r}")


def run_experiment(ns, regimes=REGIMES, trials: int = 50, seed: int = 0, params: ReductionParams = ReductionParams()):
    """One row per trial: n, regime, trial, success, reduced_norms, work_ops."""
    rows = []
    for n in ns:
        for regime in regimes:
            rng = RandomSource(seed + 1000 * n + REGIMES.index(regime))
            for trial in range(trials):
                pk, ct, nonce, M, x_bits = plant_instance(n, regime, rng)
                rep = lattice_attack(pk, ct, params, x_bits=x_bits)
                ok = rep.success and rep.recovered["M"] == M
                rows.append(
                    {
                        "n": n,
                        "regime": regime,
                        "trial": trial,
                        "success": int(ok),
                        "reduced_norms": rep.notes.removeprefix("reduced norms^2: ").replace(",", ";"),
                        "work_ops": rep.work,
                    }
                )
    return rows
