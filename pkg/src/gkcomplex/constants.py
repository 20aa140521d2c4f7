"""Exact constants for framing corrections of the degree-2 class.

Bernoulli numbers use the positive convention ``B_1 = 1/6, B_2 = 1/30,
B_3 = 1/42, ...`` (``B_n`` here is ``|B_2n|`` in the modern indexing).  With
that convention the top coefficient of ``L_{k-1}`` is
``2^(2k-2) (2^(2k-3) - 1) B_{k-1} / (2k-2)!``; reading ``B_k`` instead would
not reproduce ``L_2 = (7 p_2 - p_1^2) / 45``.

Fiber dimension ``2k - 1``.  In fiber dimension 5 (``k = 3``) the change of
the relative Pontrjagin number per unit framing degree is 48 (a factor 8
from SO(5) -> SU(5) times 6 from SU(5) -> SU(8)/SU(3)); for ``k >= 4`` it is
``a_{k-1} (2k-3)!``.  The general formula gives 6 at ``k = 3``, which is not
the dimension-5 value; both are reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, lcm

from .diagram import automorphisms, theta
from .linalg import fstr

MAX_L_DEGREE = 10


@lru_cache(maxsize=None)
def _bernoulli_modern(m: int) -> Fraction:
    """B_m with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    if m == 0:
        return Fraction(1)
    return -sum((comb(m + 1, j) * _bernoulli_modern(j) for j in range(m)), Fraction(0)) / (m + 1)


def bernoulli(n: int) -> Fraction:
    """Positive-convention Bernoulli number: bernoulli(1) == 1/6."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return abs(_bernoulli_modern(2 * n))


# ---------------------------------------------------------------------------
# L-polynomials

Monomial = tuple[int, ...]  # exponents of p_1, ..., p_k


def _weight(mono: Monomial) -> int:
    return sum((i + 1) * e for i, e in enumerate(mono))


def _mul(a: dict, b: dict, max_weight: int) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        wa = _weight(ma)
        for mb, cb in b.items():
            if wa + _weight(mb) > max_weight:
                continue
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _axpy(acc: dict, k, b: dict) -> None:
    for m, c in b.items():
        v = acc.get(m, 0) + k * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


@dataclass(frozen=True)
class LPolynomial:
    """Weight-``k`` polynomial in Pontrjagin symbols ``p_1 .. p_k``."""

    k: int
    coefficients: tuple[tuple[Monomial, Fraction], ...]

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self.coefficients)

    def coefficient(self, *exponents: int) -> Fraction:
        mono = tuple(exponents) + (0,) * (self.k - len(exponents))
        return self.terms.get(mono, Fraction(0))

    def top_coefficient(self) -> Fraction:
        """Coefficient of the linear monomial ``p_k``."""
        return self.coefficient(*((0,) * (self.k - 1) + (1,)))

    def __call__(self, *ps) -> Fraction:
        total = Fraction(0)
        for mono, c in self.coefficients:
            term = c
            for p, e in zip(ps, mono):
                term *= Fraction(p) ** e
            total += term
        return total

    def common_denominator(self) -> tuple[int, dict[Monomial, int]]:
        den = lcm(*(c.denominator for _, c in self.coefficients)) if self.coefficients else 1
        return den, {m: int(c * den) for m, c in self.coefficients}

    def __str__(self) -> str:
        den, ints = self.common_denominator()
        parts = []
        for mono, c in sorted(ints.items(), key=lambda mc: tuple(-e for e in reversed(mc[0]))):
            factors = [f"p{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e]
            body = "*".join(factors)
            mag = abs(c)
            chunk = body if mag == 1 else f"{mag}*{body}"
            if not parts:
                parts.append(chunk if c > 0 else f"-{chunk}")
            else:
                parts.append(("+ " if c > 0 else "- ") + chunk)
        inner = " ".join(parts) or "0"
        return inner if den == 1 else f"({inner})/{den}"


def characteristic_series(k: int) -> list[Fraction]:
    """Coefficients of sqrt(t)/tanh(sqrt(t)) up to t^k."""
    return [Fraction(1)] + [
        (-1) ** (j + 1) * Fraction(2 ** (2 * j)) * bernoulli(j) / factorial(2 * j) for j in range(1, k + 1)
    ]


def _series_log(q: list[Fraction]) -> list[Fraction]:
    c = [Fraction(0)] * len(q)
    for j in range(1, len(q)):
        c[j] = q[j] - sum((i * c[i] * q[j - i] for i in range(1, j)), Fraction(0)) / j
    return c


@lru_cache(maxsize=None)
def l_polynomial(k: int) -> LPolynomial:
    """Hirzebruch's L_k through Newton's identities.

    With ``log Q(t) = sum c_j t^j`` the total class is
    ``exp(sum c_j s_j)``, where the power sums ``s_j`` of the formal roots
    are rewritten in the elementary symmetric ``p_i``.
    """
    if not 1 <= k <= MAX_L_DEGREE:
        raise ValueError(f"k must lie in 1..{MAX_L_DEGREE}")
    c = _series_log(characteristic_series(k))

    def p(i):
        return {tuple(1 if t == i - 1 else 0 for t in range(k)): Fraction(1)}

    one = {(0,) * k: Fraction(1)}
    s: list[dict] = [{}]
    for j in range(1, k + 1):
        sj: dict = {}
        _axpy(sj, (-1) ** (j - 1) * j, p(j))
        for i in range(1, j):
            _axpy(sj, (-1) ** (i - 1), _mul(p(i), s[j - i], k))
        s.append(sj)
    f = [{}] + [{m: c[j] * v for m, v in s[j].items()} for j in range(1, k + 1)]
    e = [one]
    for m in range(1, k + 1):
        em: dict = {}
        for i in range(1, m + 1):
            _axpy(em, Fraction(i, m), _mul(f[i], e[m - i], k))
        e.append(em)
    coeffs = tuple(sorted((mono, v) for mono, v in e[k].items() if v))
    return LPolynomial(k, coeffs)


# ---------------------------------------------------------------------------
# framing constants (fiber dimension 2k - 1)


def l_top_coefficient(k: int) -> Fraction:
    """Coefficient of p_{k-1} in L_{k-1}, from the closed form."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return Fraction(2 ** (2 * k - 2) * (2 ** (2 * k - 3) - 1)) * bernoulli(k - 1) / factorial(2 * k - 2)


def a_parity(n: int) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    return 1 if n % 2 == 0 else 2


def general_p_framing_dependence(k: int) -> int:
    """``a_{k-1} (2k-3)!``; the k >= 4 rule, also evaluated at k = 3 for comparison."""
    if k < 3:
        raise ValueError("k must be at least 3")
    return a_parity(k - 1) * factorial(2 * k - 3)


def p_framing_dependence(k: int) -> int:
    """Change of the relative Pontrjagin number p_{k-1} per unit framing degree."""
    if k < 3:
        raise ValueError("k must be at least 3")
    if k == 3:
        return 8 * 6
    return general_p_framing_dependence(k)


def zeta2_framing_dependence(k: int) -> Fraction:
    """Change of the degree-2 class per unit framing degree, in units of [Theta]."""
    if k < 3:
        raise ValueError("k must be at least 3")
    if k == 3:
        return Fraction(delta2_theta())
    return Fraction(general_p_framing_dependence(k), 48)


def framing_correction(k: int) -> Fraction:
    """Multiple of the signature defect subtracted to remove framing dependence.

    For k = 3 this is assembled as zeta_dep / (l_top * p_dep); for k >= 4 it is
    ``(2k-2)! / (3 * 2^(2k+2) * (2^(2k-3) - 1) * B_{k-1})``.
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    if k == 3:
        return zeta2_framing_dependence(3) / (l_top_coefficient(3) * p_framing_dependence(3))
    return Fraction(factorial(2 * k - 2)) / (
        3 * 2 ** (2 * k + 2) * (2 ** (2 * k - 3) - 1) * bernoulli(k - 1)
    )


def delta2_theta(aut_order: int | None = None) -> Fraction:
    """Coefficient of [Theta] in the degree-2 value on the SO(5) clutching bundle.

    ``(1/|Aut Theta|) * (2/2^3) * 48``: the Euler-class cube pushes forward to
    twice p_2 while the Euler class restricts to twice the generator.
    """
    if aut_order is None:
        aut_order = automorphisms(theta()).aut_order
    return Fraction(1, aut_order) * Fraction(2, 2**3) * p_framing_dependence(3)


@dataclass(frozen=True)
class ConstantsReport:
    k: int
    bernoulli: Fraction
    l_top: Fraction
    a_parity: int
    p_dep: int
    p_dep_general: int
    zeta_dep: Fraction
    correction: Fraction

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "fiber_dimension": 2 * self.k - 1,
            "bernoulli": fstr(self.bernoulli),
            "l_top": fstr(self.l_top),
            "a_parity": self.a_parity,
            "p_dep": fstr(self.p_dep),
            "p_dep_general": fstr(self.p_dep_general),
            "zeta_dep": fstr(self.zeta_dep),
            "correction": fstr(self.correction),
        }


def constants_report(k: int) -> ConstantsReport:
    if k < 3:
        raise ValueError("k must be at least 3")
    report = ConstantsReport(
        k=k,
        bernoulli=bernoulli(k - 1),
        l_top=l_top_coefficient(k),
        a_parity=a_parity(k - 1),
        p_dep=p_framing_dependence(k),
        p_dep_general=general_p_framing_dependence(k),
        zeta_dep=zeta2_framing_dependence(k),
        correction=framing_correction(k),
    )
    if report.correction * report.l_top * report.p_dep != report.zeta_dep:
        raise ArithmeticError(f"framing identity fails at k={k}")
    return report
