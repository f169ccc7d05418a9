"""The continued fraction map T, digit expansions, and convergents.

T(z) = 1/z - [1/z] on U \\ {0}, T(0) = 0, with digits [1/z] in the module
J = eta*Z[zeta].  The two hexagon vertices -zeta and conj(zeta) that belong
to U are fixed points of T whose raw digit sequence (sqrt(-3) forever) does
not converge; they carry hand-defined period-4 expansions instead, which
``expand`` splices in whenever an orbit reaches them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exact import (
    ETA,
    ETA_BAR,
    E_ONE,
    EisensteinInt,
    F_ZERO,
    FieldElement,
    MINUS_ZETA,
    SQRT_M3,
    ZETA_BAR,
    embed,
    in_J,
)
from .hexdomain import floor_J, in_U


class DomainError(ValueError):
    """Argument outside the fundamental domain U."""


class OrbitSignal(Exception):
    pass


class ZeroOrbit(OrbitSignal):
    """The orbit reached 0; the expansion terminates."""


class SpecialPoint(OrbitSignal):
    """The orbit reached -zeta or conj(zeta)."""

    def __init__(self, point: FieldElement):
        super().__init__(f"special point {point}")
        self.point = point


class Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"


INF = Infinity()

# Period-4 digit cycles of the two special vertices.  The cycle for -zeta is
# (sqrt(-3), sqrt(-3), -conj(eta), eta); the one for conj(zeta) is its image
# under z -> -conj(z) and is the unique candidate whose convergents actually
# reach conj(zeta) (pinned by an oracle test against the sign-flipped
# alternative (sqrt(-3), sqrt(-3), -eta, conj(eta)), which converges
# elsewhere).
SPECIAL_PERIOD: dict[FieldElement, tuple[EisensteinInt, ...]] = {
    MINUS_ZETA: (SQRT_M3, SQRT_M3, -ETA_BAR, ETA),
    ZETA_BAR: (SQRT_M3, SQRT_M3, ETA, -ETA_BAR),
}

REJECTED_ZETA_BAR_PERIOD: tuple[EisensteinInt, ...] = (SQRT_M3, SQRT_M3, -ETA, ETA_BAR)


def special_digits(point: FieldElement, count: int) -> list[EisensteinInt]:
    if point not in SPECIAL_PERIOD:
        raise ValueError(f"{point} is not a special point")
    period = SPECIAL_PERIOD[point]
    return [period[i % 4] for i in range(count)]


# The special orbits are 4-cycles: for -zeta the points run
# (-zeta, -zeta, -zeta, 1) and for conj(zeta) they run
# (cz, cz, cz, -1) with cz = conj(zeta).
_SPECIAL_CYCLE: dict[FieldElement, tuple[FieldElement, ...]] = {
    MINUS_ZETA: (MINUS_ZETA, MINUS_ZETA, MINUS_ZETA, FieldElement(1, 0)),
    ZETA_BAR: (ZETA_BAR, ZETA_BAR, ZETA_BAR, FieldElement(-1, 0)),
}


def special_orbit_point(point: FieldElement, i: int) -> FieldElement:
    return _SPECIAL_CYCLE[point][i % 4]


def step_T(z: FieldElement) -> tuple[EisensteinInt, FieldElement]:
    """One step of the map: digit [1/z] and the image 1/z - [1/z]."""
    if z.is_zero():
        raise ZeroOrbit()
    if z == MINUS_ZETA or z == ZETA_BAR:
        raise SpecialPoint(z)
    if not in_U(z):
        raise DomainError(f"{z} is not in U")
    w = z.inv()
    digit = floor_J(w)
    if digit.is_zero() or not in_J(digit):
        raise AssertionError(f"invalid digit {digit} for {z}")
    z_next = w - embed(digit)
    return digit, z_next


@dataclass(frozen=True)
class TerminatedAtZero:
    step: int


@dataclass(frozen=True)
class Truncated:
    pass


@dataclass(frozen=True)
class SpecialPeriodic:
    point: FieldElement
    entry_index: int


Terminal = Union[TerminatedAtZero, Truncated, SpecialPeriodic]


@dataclass(frozen=True)
class Expansion:
    digits: tuple[EisensteinInt, ...]
    terminal: Terminal
    exact: bool
    points: tuple[FieldElement, ...]  # z_0 .. z_n along the expansion

    def __len__(self) -> int:
        return len(self.digits)


def expand(z: FieldElement, max_digits: int = 256) -> Expansion:
    """Digit expansion of z in U, splicing special expansions when needed.

    Exact-value growth is roughly geometric in the digit count, which is why
    the depth is capped.
    """
    if not in_U(z):
        raise DomainError(f"{z} is not in U")
    digits: list[EisensteinInt] = []
    points: list[FieldElement] = [z]
    cur = z
    while len(digits) < max_digits:
        try:
            d, cur = step_T(cur)
        except ZeroOrbit:
            return Expansion(tuple(digits), TerminatedAtZero(len(digits)), True, tuple(points))
        except SpecialPoint as sp:
            entry = len(digits)
            tail = special_digits(sp.point, max_digits - entry)
            digits.extend(tail)
            points.extend(
                special_orbit_point(sp.point, i + 1) for i in range(len(tail))
            )
            return Expansion(tuple(digits), SpecialPeriodic(sp.point, entry), True, tuple(points))
        digits.append(d)
        points.append(cur)
    return Expansion(tuple(digits), Truncated(), True, tuple(points))


@dataclass(frozen=True)
class ConvergentPair:
    """Matrix state ((p_{n-1}, p_n), (q_{n-1}, q_n)) after n digits."""

    p_prev: EisensteinInt
    p: EisensteinInt
    q_prev: EisensteinInt
    q: EisensteinInt
    n: int

    def det(self) -> EisensteinInt:
        return self.p_prev * self.q - self.p * self.q_prev

    def push(self, digit: EisensteinInt) -> ConvergentPair:
        return ConvergentPair(
            self.p, digit * self.p + self.p_prev,
            self.q, digit * self.q + self.q_prev,
            self.n + 1,
        )

    def ratio(self) -> FieldElement:
        if self.q.is_zero():
            raise ZeroDivisionError("q_n = 0")
        return embed(self.p) / embed(self.q)


INITIAL_CONVERGENT = ConvergentPair(E_ONE, EisensteinInt(0, 0), EisensteinInt(0, 0), E_ONE, 0)


def convergents(digits: Sequence[EisensteinInt]) -> list[ConvergentPair]:
    """Convergent states after 0, 1, ..., len(digits) digits."""
    out = [INITIAL_CONVERGENT]
    for d in digits:
        out.append(out[-1].push(d))
    return out


def eval_cf(
    digits: Sequence[EisensteinInt], tail: FieldElement | Infinity = F_ZERO
) -> FieldElement | Infinity:
    """Value of 1/(b_1 + 1/(b_2 + ... + 1/(b_n + tail))), exactly.

    The evaluation is projective, so intermediate infinities (vanishing
    partial denominators) are harmless; INF is returned only when the full
    value is the point at infinity.  Conventions: 1/INF = 0.
    """
    if isinstance(tail, Infinity):
        num, den = FieldElement(1, 0), F_ZERO
    else:
        num, den = tail, FieldElement(1, 0)
    for b in reversed(list(digits)):
        num, den = den, embed(b) * den + num
    if den.is_zero():
        return INF
    return num / den


def orbit_with_convergents(
    z: FieldElement, depth: int
) -> tuple[list[FieldElement], list[ConvergentPair]]:
    """Orbit points z_0..z_n and convergents to depth n = depth.

    Stops early (without raising) if the orbit terminates at zero or reaches
    a special point exactly at depth; raises SpecialPoint only when a special
    point appears before the requested depth is reachable.
    """
    points = [z]
    convs = [INITIAL_CONVERGENT]
    cur = z
    for _ in range(depth):
        d, cur = step_T(cur)
        convs.append(convs[-1].push(d))
        points.append(cur)
        if cur.is_zero():
            break
        if cur == MINUS_ZETA or cur == ZETA_BAR:
            break
    return points, convs


def error_product_check(z: FieldElement, n: int) -> tuple[Fraction, Fraction]:
    """Both sides of |z - p_n/q_n|^2 = |1/q_n|^2 * |z_0 z_1 ... z_n|^2, exact."""
    points, convs = orbit_with_convergents(z, n)
    if len(points) < n + 1:
        raise ValueError(f"orbit of {z} ends before depth {n}")
    conv = convs[n]
    q_norm = Fraction(conv.q.norm())
    if conv.q.is_zero():
        raise ZeroDivisionError("q_n = 0")
    lhs = (z - conv.ratio()).abs_sq()
    prod = Fraction(1)
    for zk in points[: n + 1]:
        prod *= zk.abs_sq()
    rhs = prod / q_norm
    return lhs, rhs


def jump_map(
    z: FieldElement, max_steps: int = 64
) -> tuple[int | None, FieldElement]:
    """First index N with digit norm >= 9, and the point after N+1 steps.

    Returns (None, z) unchanged when no such index shows up within
    max_steps.  |b| >= 3 is tested as norm(b) >= 9, never in floats.
    """
    if not in_U(z):
        raise DomainError(f"{z} is not in U")
    cur = z
    for n in range(1, max_steps + 1):
        d, cur = step_T(cur)
        if d.norm() >= 9:
            _, out = step_T(cur)
            return n, out
    return None, z


def inverse_branch_derivative(c: ConvergentPair, z_n: FieldElement) -> FieldElement:
    """Derivative 1/(q_n + q_{n-1} z_n)^2 of the local inverse branch."""
    den = embed(c.q) + embed(c.q_prev) * z_n
    if den.is_zero():
        raise ZeroDivisionError("vanishing branch denominator")
    return (den * den).inv()
