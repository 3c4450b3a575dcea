"""Linear Diophantine toolkit for C = A*x + B*y with gcd(A, B) = 1.

Every solution is x = x0 + B*t, y = y0 - A*t.  Whether the *preferred*
solution (the one whose coordinates have the declared bit lengths) can be
found depends on how many t land x in its bit window: about one when x is as
wide as B, about 2^n when x is n bits wider.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .numtheory import ceil_div, ext_gcd
from .scheme import Ciphertext, PublicKey


class NoSolution(ValueError):
    pass


@dataclass(frozen=True)
class DiophantineInstance:
    """A*x + B*y = C with unknowns of declared bit lengths.

    When ``negate_y`` is set the real unknown is Y = -y, which is how the
    ciphertext equation C = X*e1 - Y*e2 is stored while keeping B positive.
    """

    A: int
    B: int
    C: int
    x_bits: int
    y_bits: int
    negate_y: bool = False

    def __post_init__(self):
        if self.A <= 0 or self.B <= 0:
            raise ValueError("A and B must be positive")


@dataclass(frozen=True)
class GeneralSolution:
    x0: int
    y0: int
    A: int
    B: int

    def at(self, t: int) -> tuple[int, int]:
        return self.x0 + self.B * t, self.y0 - self.A * t


def general_solution(inst: DiophantineInstance) -> GeneralSolution:
    """Particular solution normalised to 0 <= x0 < B."""
    g, s, _ = ext_gcd(inst.A, inst.B)
    if g != 1:
        raise NoSolution(f"gcd(A, B) = {g}, instance is not primitive")
    x0 = s * inst.C % inst.B
    y0, rem = divmod(inst.C - inst.A * x0, inst.B)
    assert rem == 0
    return GeneralSolution(x0, y0, inst.A, inst.B)


def t_window(inst: DiophantineInstance, sol: GeneralSolution | None = None) -> tuple[int, int]:
    """Inclusive range of t putting x0 + B*t in [2^(x_bits-1), 2^x_bits - 1]."""
    sol = sol or general_solution(inst)
    lo = ceil_div((1 << (inst.x_bits - 1)) - sol.x0, inst.B)
    hi = ((1 << inst.x_bits) - 1 - sol.x0) // inst.B
    return lo, hi


def infeasibility_width(inst: DiophantineInstance) -> int:
    """Exact number of t values with x in its declared bit window."""
    lo, hi = t_window(inst)
    return max(hi - lo + 1, 0)


def _unknown_y(inst: DiophantineInstance, y: int) -> int:
    return -y if inst.negate_y else y


def window_candidates(inst: DiophantineInstance, cap: int | None = None) -> Iterator[tuple[int, int]]:
    """Yield (x, Y) for each t in the x window, at most ``cap`` of them.

    Y is the unknown in the instance's own sign convention.
    """
    sol = general_solution(inst)
    lo, hi = t_window(inst, sol)
    if cap is not None:
        hi = min(hi, lo + cap - 1)
    for t in range(lo, hi + 1):
        x, y = sol.at(t)
        yield x, _unknown_y(inst, y)


def solve_case1(inst: DiophantineInstance) -> list[tuple[int, int]]:
    """All solutions whose coordinates both have their declared bit lengths.

    Runs in time proportional to the t window, which is one or two values
    when the unknowns are no wider than the coefficients.
    """
    return [
        (x, y)
        for x, y in window_candidates(inst)
        if x.bit_length() == inst.x_bits and y > 0 and y.bit_length() == inst.y_bits
    ]


def ciphertext_instance(pk: PublicKey, ct: Ciphertext) -> DiophantineInstance:
    """C = X*e1 - Y*e2 as e1*x + e2*y = C with y = -Y and 3n-bit unknowns."""
    return DiophantineInstance(A=pk.e1, B=pk.e2, C=ct.C, x_bits=3 * pk.n, y_bits=3 * pk.n, negate_y=True)
