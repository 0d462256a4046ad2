"""Exact both-sides evaluation of the q-series identities behind the spectrum.

Each ``check_*`` function evaluates the two sides of one identity literally,
term by term, sharing no intermediate values between sides, and returns an
IdentityReport carrying both exact rationals.  A report is never "close":
``equal`` is exact Fraction equality.

Parameter tuples that violate an identity's validity range (a vanishing
denominator binomial, a non-terminating series) raise PreconditionError;
the grid sweep records those as skips, not failures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .exactq import (
    choose2,
    gauss_binom,
    q_int,
    q_pochhammer,
    q_pow,
    q_valuation,
)


class PreconditionError(ValueError):
    """A parameter tuple outside an identity's validity range."""


class NonTerminatingSeries(PreconditionError):
    pass


class VanishingDenominator(PreconditionError):
    pass


@dataclass(frozen=True)
class IdentityReport:
    identity_name: str
    parameters: dict[str, int | str]
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class SkipRecord:
    identity_name: str
    parameters: dict[str, int | str]
    reason: str


def _report(name: str, params: Mapping[str, int | str], lhs: Fraction,
            rhs: Fraction) -> IdentityReport:
    return IdentityReport(name, dict(params), Fraction(lhs), Fraction(rhs))


def _qbin_den(n: int, k: int, q: int) -> Fraction:
    """Gaussian binomial destined for a denominator; raises if it vanishes."""
    v = gauss_binom(n, k, q)
    if v == 0:
        raise VanishingDenominator(f"[{n} {k}]_{q} = 0 in a denominator")
    return v


# ---------------------------------------------------------------------------
# terminating 3phi2 series and its transformation
# ---------------------------------------------------------------------------

def eval_3phi2(upper: tuple[int, int, int], lower: tuple[int, int], z: int,
               q: int) -> Fraction:
    """Terminating basic hypergeometric series 3phi2.

    Parameters are exponents: ``upper=(a1,a2,a3)`` stands for the numerator
    parameters q^a1, q^a2, q^a3, ``lower`` for the two denominator
    parameters, and ``z`` for the argument q^z.  At least one upper exponent
    must be <= 0 so the series terminates; a lower parameter whose Pochhammer
    vanishes inside the truncation range is rejected.
    """
    nonpos = [-e for e in upper if e <= 0]
    if not nonpos:
        raise NonTerminatingSeries(f"no nonpositive upper exponent in {upper}")
    m = min(nonpos)
    for e in lower:
        if e <= 0 and -e < m:
            raise VanishingDenominator(
                f"lower parameter q^{e} vanishes before term {m}"
            )
    total = Fraction(0)
    term = Fraction(1)
    for ell in range(m + 1):
        total += term
        if ell == m:
            break
        ratio = q_pow(z, q)
        for e in upper:
            ratio *= 1 - q_pow(e + ell, q)
        for e in lower:
            ratio /= 1 - q_pow(e + ell, q)
        ratio /= 1 - q_pow(ell + 1, q)
        term *= ratio
    return total


def check_3phi2_transformation(n: int, a: int, b: int, c: int, d: int,
                               q: int) -> IdentityReport:
    """Three-term transformation of a 3phi2 terminating in q^-n with z = q."""
    if n < 0:
        raise PreconditionError("truncation order must be nonnegative")
    params = {"n": n, "a": a, "b": b, "c": c, "d": d, "q": q}
    lhs = eval_3phi2((-n, a, b), (c, d), 1, q)
    den = q_pochhammer(d, n, q)
    if den == 0:
        raise VanishingDenominator(f"(q^{d};q)_{n} = 0 in the prefactor")
    prefactor = q_pochhammer(c + d - a - b, n, q) / den * q_pow(n * (a + b - c), q)
    rhs = prefactor * eval_3phi2((-n, c - a, c - b), (c, c + d - a - b), 1, q)
    return _report("transformation_3phi2", params, lhs, rhs)


# ---------------------------------------------------------------------------
# Pochhammer / Gaussian binomial conversion suite
# ---------------------------------------------------------------------------

def _upper_negation_report(n: int, k: int, q: int) -> IdentityReport:
    lhs = gauss_binom(n, k, q)
    rhs = (-1) ** k * q_pow(k * n - choose2(k), q) * gauss_binom(k - n - 1, k, q)
    return _report("upper_negation", {"n": n, "k": k, "q": q}, lhs, rhs)


def check_pochhammer_suite(n: int, k: int, q: int) -> list[IdentityReport]:
    """The binomial/Pochhammer conversion identities at one (n, k).

    Emits one report per identity whose stated validity covers (n, k);
    requires n, k >= 0, with the 0 <= k <= n cases adding the two identities
    that need it.  Upper negation for negative n has its own entry in the
    sweep since it is the only member that is total in n.
    """
    if n < 0 or k < 0:
        raise PreconditionError("suite needs n, k >= 0")
    params = {"n": n, "k": k, "q": q}
    reports = []
    if k <= n:
        reports.append(
            _report(
                "binom_from_pochhammer",
                params,
                gauss_binom(n, k, q),
                q_pochhammer(1, n, q)
                / (q_pochhammer(1, k, q) * q_pochhammer(1, n - k, q)),
            )
        )
    reports.append(
        _report(
            "binom_shifted_pochhammer",
            params,
            gauss_binom(n + k, n, q),
            q_pochhammer(k + 1, n, q) / q_pochhammer(1, n, q),
        )
    )
    reports.append(
        _report(
            "binom_inverse_base_pochhammer",
            params,
            gauss_binom(n, k, q),
            q_pochhammer(-n, k, q)
            / q_pochhammer(1, k, q)
            * (-1) ** k
            * q_pow(k * n - choose2(k), q),
        )
    )
    if k <= n:
        den = q_pochhammer(-n, k, q)
        if den == 0:
            raise VanishingDenominator(f"(q^-{n};q)_{k} = 0")
        reports.append(
            _report(
                "pochhammer_difference",
                params,
                q_pochhammer(1, n - k, q),
                q_pochhammer(1, n, q) / den * (-1) ** k * q_pow(choose2(k) - n * k, q),
            )
        )
    reports.append(
        _report(
            "pochhammer_concatenation",
            params,
            q_pochhammer(1, n + k, q),
            q_pochhammer(1, n, q) * q_pochhammer(n + 1, k, q),
        )
    )
    reports.append(_upper_negation_report(n, k, q))
    return reports


def check_upper_negation(n: int, k: int, q: int) -> IdentityReport:
    """Upper negation on its own; valid for every integer n and k >= 0."""
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    return _upper_negation_report(n, k, q)


def check_q_binomial_theorem(n: int, x: Fraction, y: Fraction,
                             q: int) -> IdentityReport:
    """sum_k [n k] q^C(k,2) x^k y^(n-k) against prod_i (x q^i + y)."""
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    x = Fraction(x)
    y = Fraction(y)
    lhs = Fraction(0)
    for k in range(n + 1):
        lhs += gauss_binom(n, k, q) * q ** choose2(k) * x**k * y ** (n - k)
    rhs = Fraction(1)
    for i in range(n):
        rhs *= x * q**i + y
    params = {
        "n": n,
        "x": f"{x.numerator}/{x.denominator}",
        "y": f"{y.numerator}/{y.denominator}",
        "q": q,
    }
    return _report("q_binomial_theorem", params, lhs, rhs)


# ---------------------------------------------------------------------------
# binomial-product expansions
# ---------------------------------------------------------------------------

def check_product_expansion(x: int, y: int, h: int, p: int,
                            q: int) -> list[IdentityReport]:
    """[x h][y-x p-h] as two alternating sums over [v h][y-v p-v][x v].

    The two displayed forms differ only in how the q-exponent is written;
    both are checked against the same product.
    """
    if not 0 <= h <= p:
        raise PreconditionError("need 0 <= h <= p")
    params = {"x": x, "y": y, "h": h, "p": p, "q": q}
    lhs = gauss_binom(x, h, q) * gauss_binom(y - x, p - h, q)
    rhs1 = Fraction(0)
    rhs2 = Fraction(0)
    for v in range(h, p + 1):
        core = (
            (-1) ** (v - h)
            * gauss_binom(v, h, q)
            * gauss_binom(y - v, p - v, q)
            * gauss_binom(x, v, q)
        )
        rhs1 += core * q_pow(-(p - h) * (x - h) + choose2(v - h), q)
        rhs2 += core * q_pow((v - h) * (y - x - p + h) + choose2(v - h + 1), q)
    return [
        _report("product_expansion_descending", params, lhs, rhs1),
        _report("product_expansion_ascending", params, lhs, rhs2),
    ]


def check_alternating_column_sum(x: int, a: int, q: int) -> IdentityReport:
    """sum_v (-1)^v [x v] q^C(v,2) for v <= a against q^(xa) [a-x a]."""
    if a < 0:
        raise PreconditionError("a must be nonnegative")
    lhs = Fraction(0)
    for v in range(a + 1):
        lhs += (-1) ** v * gauss_binom(x, v, q) * q ** choose2(v)
    rhs = q_pow(x * a, q) * gauss_binom(a - x, a, q)
    return _report("alternating_column_sum", {"x": x, "a": a, "q": q}, lhs, rhs)


# ---------------------------------------------------------------------------
# the sum transformations feeding the Gram spectrum derivation
# ---------------------------------------------------------------------------

def check_shifted_sum_transform(n: int, r: int, k: int, u: int, i: int,
                                q: int) -> IdentityReport:
    """Equality of two alternating single sums with shifted top arguments."""
    if r > n + 1:
        raise PreconditionError("need r <= n + 1")
    if u < 0:
        raise PreconditionError("u must be nonnegative")
    params = {"n": n, "r": r, "k": k, "u": u, "i": i, "q": q}
    lhs = Fraction(0)
    for s in range(u + 1):
        lhs += (
            (-1) ** s
            * q ** choose2(u - s)
            * gauss_binom(n - r + 1, u - s, q)
            * gauss_binom(k - i + s, s, q) ** 2
            / _qbin_den(r - i + s, s, q)
        )
    rhs = Fraction(0)
    for s in range(u + 1):
        rhs += (
            (-1) ** s
            * q_pow(choose2(u - s) + s * (2 * r - 2 * k + s - 1), q)
            * gauss_binom(n - 2 * k + i, u - s, q)
            * gauss_binom(k - r, s, q) ** 2
            / _qbin_den(r - i + s, s, q)
        )
    rhs *= q_pow(u * (2 * k - i - r + 1), q)
    return _report("shifted_sum_transform", params, lhs, rhs)


def check_shifted_sum_transform_diagonal(n: int, r: int, k: int, i: int,
                                         q: int) -> IdentityReport:
    """The diagonal (u = i) variant with the denominators rewritten."""
    if r > n + 1:
        raise PreconditionError("need r <= n + 1")
    if i < 0:
        raise PreconditionError("i must be nonnegative")
    params = {"n": n, "r": r, "k": k, "i": i, "q": q}
    lhs = Fraction(0)
    for s in range(i + 1):
        lhs += (
            (-1) ** s
            * q ** choose2(i - s)
            * gauss_binom(r, i - s, q)
            * gauss_binom(k - i + s, s, q) ** 2
            / _qbin_den(n - r - i + s + 1, s, q)
        )
    lhs *= gauss_binom(n - r + 1, i, q)
    rhs = Fraction(0)
    for s in range(i + 1):
        rhs += (
            (-1) ** s
            * q_pow(choose2(i - s) + s * (2 * r - 2 * k + s - 1), q)
            * gauss_binom(r, i - s, q)
            * gauss_binom(k - r, s, q) ** 2
            / _qbin_den(n - 2 * k + s, s, q)
        )
    rhs *= q_pow(i * (2 * k - r - i + 1), q) * gauss_binom(n - 2 * k + i, i, q)
    return _report("shifted_sum_transform_diagonal", params, lhs, rhs)


def check_double_sum_reduction(n: int, r: int, k: int, t: int,
                               q: int) -> IdentityReport:
    """Collapse of the double alternating sum to [r t][n-r+1 t]/[k t]."""
    if t < 0:
        raise PreconditionError("t must be nonnegative")
    if r > n + 1:
        raise PreconditionError("need r <= n + 1")
    params = {"n": n, "r": r, "k": k, "t": t, "q": q}
    lhs = Fraction(0)
    for i in range(t + 1):
        den_i = _qbin_den(k, i, q)
        for s in range(i + 1):
            lhs += (
                (-1) ** s
                * q_pow(
                    i * (2 * k - t - r + 1)
                    + choose2(s)
                    + s * (2 * r - 2 * k + s - i),
                    q,
                )
                * gauss_binom(n - 2 * k + i, i, q)
                * gauss_binom(k - i, t - i, q)
                * gauss_binom(r, i - s, q)
                * gauss_binom(k - r, s, q) ** 2
                / (den_i * _qbin_den(n - 2 * k + s, s, q))
            )
    rhs = gauss_binom(r, t, q) * gauss_binom(n - r + 1, t, q) / _qbin_den(k, t, q)
    return _report("double_sum_reduction", params, lhs, rhs)


def _triple_summand(n: int, k: int, r: int, t: int, i: int, j: int, s: int,
                    q: int, with_ratio: bool) -> Fraction:
    """One term of the triple alternating sum; with_ratio adds the
    [n-i-j t-i-j]/[k-i-j t-i-j] factor."""
    val = (
        (-1) ** (i + j + s)
        * q_pow(
            -((k - i) ** 2)
            + choose2(j)
            + choose2(s + r - i)
            + (k - s - r) * (k - s),
            q,
        )
        * gauss_binom(n - 2 * k + i, i, q)
        * gauss_binom(k - i, j, q)
        * gauss_binom(r, i - s, q)
        * gauss_binom(k - r, s, q) ** 2
        / (_qbin_den(k, i, q) * _qbin_den(n - 2 * k + s, s, q))
    )
    if with_ratio:
        val *= gauss_binom(n - i - j, t - i - j, q) / _qbin_den(k - i - j, t - i - j, q)
    return val


def check_triple_sum_closed_form(n: int, k: int, r: int, t: int,
                                 q: int) -> IdentityReport:
    """Triple alternating sum against its closed form in [r-1 t][n-r t]/[k t]."""
    if t < 0:
        raise PreconditionError("t must be nonnegative")
    if r > n + 1:
        raise PreconditionError("need r <= n + 1")
    params = {"n": n, "k": k, "r": r, "t": t, "q": q}
    lhs = Fraction(0)
    for i in range(t + 1):
        for j in range(t - i + 1):
            for s in range(i + 1):
                lhs += _triple_summand(n, k, r, t, i, j, s, q, with_ratio=True)
    rhs = (
        (-1) ** t
        * q_pow(choose2(r) - k * r + choose2(t + 1), q)
        * gauss_binom(r - 1, t, q)
        * gauss_binom(n - r, t, q)
        / _qbin_den(k, t, q)
    )
    return _report("triple_sum_closed_form", params, lhs, rhs)


def check_triple_sum_weighted_form(n: int, k: int, r: int, t: int,
                                   q: int) -> IdentityReport:
    """Weighted single sum with coefficients c_a against the bare triple sum."""
    if t < 0:
        raise PreconditionError("t must be nonnegative")
    if r > n + 1:
        raise PreconditionError("need r <= n + 1")
    params = {"n": n, "k": k, "r": r, "t": t, "q": q}
    lhs = Fraction(0)
    for a in range(t + 1):
        if a == t:
            c_a = q_pow(choose2(t + 1), q)
        else:
            den = q_int(k - a, q)
            if den == 0:
                raise VanishingDenominator(f"[{k - a}]_{q} = 0 in c_{a}")
            c_a = q_pow(choose2(a + 1) + n - a, q) * q_int(k - n, q) / den
        lhs += (
            (-1) ** a
            * c_a
            * gauss_binom(r - 1, a, q)
            * gauss_binom(n - r, a, q)
            / _qbin_den(k, a, q)
        )
    rhs = Fraction(0)
    for i in range(t + 1):
        for j in range(t - i + 1):
            for s in range(i + 1):
                rhs += _triple_summand(n, k, r, t, i, j, s, q, with_ratio=False)
    rhs *= q_pow(-choose2(r) + k * r, q)
    return _report("triple_sum_weighted_form", params, lhs, rhs)


def kernel_sum(n: int, k: int, t: int, r: int, q: int) -> Fraction:
    """The alternating sum whose vanishing kills the small Gram eigenvalues."""
    total = Fraction(0)
    for i in range(t):
        total += (
            (-1) ** i
            * q ** choose2(i)
            * gauss_binom(k - i - 1, r - i - 1, q)
            * gauss_binom(n - r, i, q)
        )
    return total


def check_eigenvalue_kernel_sum(n: int, k: int, t: int, r: int,
                                q: int) -> IdentityReport:
    """kernel_sum against (-1)^(r-1) q^(kr-k-C(r,2)) [n-k-1 r-1].

    Equality is expected exactly for 1 <= r <= t; the report carries both
    values outside that window too, where they genuinely differ.
    """
    if r < 1:
        raise PreconditionError("r must be at least 1")
    params = {"n": n, "k": k, "t": t, "r": r, "q": q}
    lhs = kernel_sum(n, k, t, r, q)
    rhs = (
        (-1) ** (r - 1)
        * q_pow(k * r - k - choose2(r), q)
        * gauss_binom(n - k - 1, r - 1, q)
    )
    return _report("eigenvalue_kernel_sum", params, lhs, rhs)


# ---------------------------------------------------------------------------
# grid sweep
# ---------------------------------------------------------------------------

DEFAULT_SWEEP_QS = (2, 3, 4, 5, 7, 8, 9)

_THEOREM_XY = (
    (Fraction(1), Fraction(1)),
    (Fraction(2), Fraction(1)),
    (Fraction(1), Fraction(3)),
    (Fraction(-1), Fraction(1)),
    (Fraction(1, 2), Fraction(3)),
)


@dataclass
class SweepSummary:
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list[IdentityReport] = field(default_factory=list)
    skip_counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def run_identity_sweep(
    qs: Iterable[int] = DEFAULT_SWEEP_QS,
    max_n: int = 10,
    on_report: Callable[[IdentityReport], None] | None = None,
    on_skip: Callable[[SkipRecord], None] | None = None,
) -> SweepSummary:
    """Evaluate every identity over the verification grid.

    All emitted reports are expected equal; the kernel-sum identity is only
    swept over its validity window 1 <= r <= t.  Precondition violations are
    recorded as skips.  Deterministic iteration order throughout.
    max_n = 0 requests an empty sweep.
    """
    summary = SweepSummary()
    if max_n < 1:
        return summary

    def emit(reports: IdentityReport | list[IdentityReport]) -> None:
        if isinstance(reports, IdentityReport):
            reports = [reports]
        for rep in reports:
            summary.checked += 1
            if not rep.equal:
                summary.failed += 1
                summary.failures.append(rep)
            if on_report is not None:
                on_report(rep)

    def attempt(name: str, params: dict[str, int], thunk) -> None:
        try:
            emit(thunk())
        except PreconditionError as exc:
            summary.skipped += 1
            summary.skip_counts[name] = summary.skip_counts.get(name, 0) + 1
            if on_skip is not None:
                on_skip(SkipRecord(name, dict(params), str(exc)))

    small = min(4, max_n)
    for q in qs:
        for n in range(max_n + 1):
            for k in range(n + 1):
                attempt(
                    "pochhammer_suite",
                    {"n": n, "k": k, "q": q},
                    lambda n=n, k=k, q=q: check_pochhammer_suite(n, k, q),
                )
        for n in range(-4, 0):
            for k in range(5):
                attempt(
                    "upper_negation",
                    {"n": n, "k": k, "q": q},
                    lambda n=n, k=k, q=q: check_upper_negation(n, k, q),
                )
        for n in range(max_n + 1):
            for x, y in _THEOREM_XY:
                attempt(
                    "q_binomial_theorem",
                    {"n": n, "q": q},
                    lambda n=n, x=x, y=y, q=q: check_q_binomial_theorem(n, x, y, q),
                )
        for n in range(small + 1):
            for a in range(1, 5):
                for b in range(1, 5):
                    for c in range(1, 5):
                        for d in range(1, 5):
                            attempt(
                                "transformation_3phi2",
                                {"n": n, "a": a, "b": b, "c": c, "d": d, "q": q},
                                lambda n=n, a=a, b=b, c=c, d=d, q=q:
                                    check_3phi2_transformation(n, a, b, c, d, q),
                            )
        for x in range(-2, max_n + 1):
            for y in range(-2, max_n + 1):
                for p in range(4):
                    for h in range(p + 1):
                        attempt(
                            "product_expansion",
                            {"x": x, "y": y, "h": h, "p": p, "q": q},
                            lambda x=x, y=y, h=h, p=p, q=q:
                                check_product_expansion(x, y, h, p, q),
                        )
        for x in range(-3, max_n + 1):
            for a in range(5):
                attempt(
                    "alternating_column_sum",
                    {"x": x, "a": a, "q": q},
                    lambda x=x, a=a, q=q: check_alternating_column_sum(x, a, q),
                )
        for n in range(max_n + 1):
            for k in range(n + 1):
                for r in range(n + 2):
                    for u in range(5):
                        for i in range(5):
                            attempt(
                                "shifted_sum_transform",
                                {"n": n, "r": r, "k": k, "u": u, "i": i, "q": q},
                                lambda n=n, r=r, k=k, u=u, i=i, q=q:
                                    check_shifted_sum_transform(n, r, k, u, i, q),
                            )
                    for i in range(5):
                        attempt(
                            "shifted_sum_transform_diagonal",
                            {"n": n, "r": r, "k": k, "i": i, "q": q},
                            lambda n=n, r=r, k=k, i=i, q=q:
                                check_shifted_sum_transform_diagonal(n, r, k, i, q),
                        )
                    for t in range(5):
                        attempt(
                            "double_sum_reduction",
                            {"n": n, "r": r, "k": k, "t": t, "q": q},
                            lambda n=n, r=r, k=k, t=t, q=q:
                                check_double_sum_reduction(n, r, k, t, q),
                        )
                        attempt(
                            "triple_sum_closed_form",
                            {"n": n, "k": k, "r": r, "t": t, "q": q},
                            lambda n=n, k=k, r=r, t=t, q=q:
                                check_triple_sum_closed_form(n, k, r, t, q),
                        )
                        attempt(
                            "triple_sum_weighted_form",
                            {"n": n, "k": k, "r": r, "t": t, "q": q},
                            lambda n=n, k=k, r=r, t=t, q=q:
                                check_triple_sum_weighted_form(n, k, r, t, q),
                        )
        for n in range(max_n + 1):
            for k in range(1, n // 2 + 1):
                for t in range(1, k):
                    for r in range(1, t + 1):
                        attempt(
                            "eigenvalue_kernel_sum",
                            {"n": n, "k": k, "t": t, "r": r, "q": q},
                            lambda n=n, k=k, t=t, r=r, q=q:
                                check_eigenvalue_kernel_sum(n, k, t, r, q),
                        )
    return summary


def kernel_sum_valuation(n: int, k: int, t: int, r: int, q: int) -> int | float:
    """q-adic valuation of the kernel sum (used for the nonvanishing window)."""
    val = kernel_sum(n, k, t, r, q)
    if val.denominator != 1:
        raise ValueError("kernel sum is not integral here")
    return q_valuation(val.numerator, q)
