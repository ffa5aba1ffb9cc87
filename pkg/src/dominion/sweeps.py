"""Seeded property sweeps over the random generators.

A sweep draws deterministic instances from a seed stream, skips the ones
whose statement premise fails (the statements are conditional, so such
instances carry no information), and checks the conclusion exactly on the
rest. Failures keep the offending inputs so the caller can dump them for
replay.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .core import MatrixOperator, MeasureSpace
from .gallery import (
    random_commuting_family,
    random_dominated_pair,
    random_positive_contraction,
    random_rational,
)
from .theorems import (
    DominatedPair,
    Verdict,
    check_family_grid,
    check_meet_bound,
    check_pair_product,
)

__all__ = [
    "SweepFailure",
    "SweepResult",
    "sweep_dominated_powers",
    "sweep_pair_product",
    "sweep_family_grid",
    "sweep_meet_bound",
    "meet_bound_instance",
]

SWEEP_KINDS = ("dominated-powers", "pair-product", "meet-bound")


@dataclass(frozen=True)
class SweepFailure:
    seed: int
    description: str
    payload: object


@dataclass(frozen=True)
class SweepResult:
    kind: str
    requested: int
    checked: int
    passed: int
    skipped: int  # premise-failing instances, drawn but not counted
    seeds_consumed: int
    failures: tuple[SweepFailure, ...]

    @property
    def ok(self) -> bool:
        return self.checked == self.requested and not self.failures


def _seed_stream(seed0: int, requested: int):
    # Skipping premise-failing draws must terminate even for bad parameters.
    guard = max(20 * requested, requested + 50)
    for offset in range(guard):
        yield seed0 + offset
    raise RuntimeError(
        f"could not collect {requested} premise-satisfying instances "
        f"within {guard} seeds"
    )


def sweep_dominated_powers(
    count: int,
    n: int = 4,
    n_max: int = 50,
    seed0: int = 0,
    density: float = 1.0,
    denom_cap: int | None = None,
) -> SweepResult:
    """Random dominated pairs with gap norm strictly below one must keep
    |S^j - T^j| strictly below one for every j up to n_max, exactly."""
    if count < 1:
        raise ValueError("count must be >= 1")
    checked = passed = skipped = consumed = 0
    failures: list[SweepFailure] = []
    for seed in _seed_stream(seed0, count):
        consumed += 1
        pair = random_dominated_pair(seed, n, density=density, denom_cap=denom_cap)
        if pair.gap_norm() >= 1:
            skipped += 1
            continue
        checked += 1
        failure = _first_power_gap_failure(pair, n_max)
        if failure is None:
            passed += 1
        else:
            j, gap = failure
            failures.append(SweepFailure(
                seed=seed,
                description=f"gap norm {gap} at power {j}",
                payload=pair,
            ))
        if checked == count:
            break
    return SweepResult(
        kind="dominated-powers",
        requested=count,
        checked=checked,
        passed=passed,
        skipped=skipped,
        seeds_consumed=consumed,
        failures=tuple(failures),
    )


def _first_power_gap_failure(
    pair: DominatedPair,
    n_max: int,
) -> tuple[int, Fraction] | None:
    s_pow = pair.s
    t_pow = pair.t
    for j in range(1, n_max + 1):
        if j > 1:
            s_pow = s_pow @ pair.s
            t_pow = t_pow @ pair.t
        gap = (s_pow - t_pow).norm()
        if gap >= 1:
            return j, gap
    return None


def sweep_pair_product(
    count: int,
    n: int = 3,
    n_max: int = 30,
    degree: int = 2,
    seed0: int = 0,
    denom_cap: int | None = None,
) -> SweepResult:
    """Random commuting quadruples (two dominated pairs, shared polynomial
    base) with the base gap norm below one must verify the product law."""
    if count < 1:
        raise ValueError("count must be >= 1")
    checked = passed = skipped = consumed = 0
    failures: list[SweepFailure] = []
    for seed in _seed_stream(seed0, count):
        consumed += 1
        family = random_commuting_family(seed, 2, n, degree=degree, denom_cap=denom_cap)
        (p1, p2) = family.pairs
        report = check_pair_product(p1.t, p2.t, p1.s, p2.s, 1, n_max)
        if report.verdict is Verdict.HYPOTHESIS_UNMET:
            skipped += 1
            continue
        checked += 1
        if report.verdict is Verdict.VERIFIED:
            passed += 1
        else:
            failures.append(SweepFailure(
                seed=seed,
                description=(
                    f"gap norm {report.failure_norm} at n = {report.failure_point}"
                ),
                payload=family,
            ))
        if checked == count:
            break
    return SweepResult(
        kind="pair-product",
        requested=count,
        checked=checked,
        passed=passed,
        skipped=skipped,
        seeds_consumed=consumed,
        failures=tuple(failures),
    )


def sweep_family_grid(
    count: int,
    n_pairs: int = 3,
    n: int = 3,
    m_max: tuple[int, ...] = (30, 5, 5),
    degree: int = 2,
    seed0: int = 0,
    denom_cap: int | None = None,
) -> SweepResult:
    """Random commuting families must verify the grid form of the product
    law over the full exponent grid up to m_max."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if len(m_max) != n_pairs:
        raise ValueError("m_max needs one bound per pair")
    checked = passed = skipped = consumed = 0
    failures: list[SweepFailure] = []
    for seed in _seed_stream(seed0, count):
        consumed += 1
        family = random_commuting_family(seed, n_pairs, n, degree=degree, denom_cap=denom_cap)
        report = check_family_grid(family, m_max)
        if report.verdict is Verdict.HYPOTHESIS_UNMET:
            skipped += 1
            continue
        checked += 1
        if report.verdict is Verdict.VERIFIED:
            passed += 1
        else:
            failures.append(SweepFailure(
                seed=seed,
                description=(
                    f"gap norm {report.failure_norm} at grid point {report.failure_point}"
                ),
                payload=family,
            ))
        if checked == count:
            break
    return SweepResult(
        kind="family-grid",
        requested=count,
        checked=checked,
        passed=passed,
        skipped=skipped,
        seeds_consumed=consumed,
        failures=tuple(failures),
    )


def meet_bound_instance(
    seed: int,
    n: int = 3,
    denom_cap: int | None = None,
) -> tuple[MatrixOperator, MatrixOperator, int, int]:
    """Deterministic (Z, T, m, k) with Z a sup-preserving contraction that
    commutes with T by construction.

    Three shapes rotate by seed: a scalar multiple of the identity against
    a general positive contraction, a pair of diagonal contractions, and a
    permutation against the average of a contraction's conjugates under
    that permutation (taken on a uniform space, where permutations have
    norm one).
    """
    rng = Random(seed)
    shape = seed % 3
    m = rng.randint(0, 2)
    k = rng.randint(1, 3)
    if shape == 0:
        t = random_positive_contraction(rng.randrange(2**30), n, denom_cap=denom_cap)
        z = MatrixOperator.identity(t.space) * random_rational(rng, 8)
        return z, t, m, k
    if shape == 1:
        space = MeasureSpace((1,) * n)
        cap = denom_cap or 16
        t = MatrixOperator.diagonal(space, tuple(random_rational(rng, cap) for _ in range(n)))
        z = MatrixOperator.diagonal(space, tuple(random_rational(rng, cap) for _ in range(n)))
        return z, t, m, k
    space = MeasureSpace((1,) * n)
    perm = list(range(n))
    rng.shuffle(perm)
    z = MatrixOperator.permutation(space, tuple(perm))
    raw = random_positive_contraction(rng.randrange(2**30), n, denom_cap=denom_cap, space=space)
    order = _permutation_order(tuple(perm))
    conjugate = raw
    total = raw
    inverse = z.adjoint()  # permutation inverse equals its transpose on uniform weights
    for _ in range(order - 1):
        conjugate = z @ conjugate @ inverse
        total = total + conjugate
    t = total / order
    return z, t, m, k


def _permutation_order(perm: tuple[int, ...]) -> int:
    order = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        order = _lcm(order, length)
    return order


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def sweep_meet_bound(
    count: int,
    n: int = 3,
    seed0: int = 0,
    denom_cap: int | None = None,
) -> SweepResult:
    """The halving step must hold on every premise-satisfying instance."""
    if count < 1:
        raise ValueError("count must be >= 1")
    checked = passed = skipped = consumed = 0
    failures: list[SweepFailure] = []
    for seed in _seed_stream(seed0, count):
        consumed += 1
        z, t, m, k = meet_bound_instance(seed, n, denom_cap=denom_cap)
        report = check_meet_bound(z, t, m, k)
        if report.verdict is Verdict.HYPOTHESIS_UNMET:
            skipped += 1
            continue
        checked += 1
        if report.verdict is Verdict.VERIFIED:
            passed += 1
        else:
            failures.append(SweepFailure(
                seed=seed,
                description=f"conclusion norm {report.failure_norm} (m={m}, k={k})",
                payload=(z, t, m, k),
            ))
        if checked == count:
            break
    return SweepResult(
        kind="meet-bound",
        requested=count,
        checked=checked,
        passed=passed,
        skipped=skipped,
        seeds_consumed=consumed,
        failures=tuple(failures),
    )
