from __future__ import annotations

import logging
import random
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from verdex.core.config import settings
from verdex.core.constants import EXIT_IDENTITY_FAILURE, EXIT_INCONCLUSIVE, EXIT_OK
from verdex.core.errors import OutsideReachableSpan, VerdexError
from verdex.models.algebra import IdentityReport, Quantity, VertexAlgebra, Verdict
from verdex.models.field import ModeField
from verdex.models.series import Window
from verdex.models.state import SpaceTag, State
from verdex.schemas.config import RunConfig
from verdex.schemas.report import CaseOut, NumberOut, ReportOut, SummaryOut
from verdex.services.conformal_service import check_conformal_axioms, radius_report
from verdex.services.identity_service import (
    check_borcherds,
    check_commutator,
    check_dong,
    check_locality,
    check_skew,
    t_derivation_check,
)
from verdex.services.vertex_service import admissibility_probe, closure_generate, state_field, state_parity


logger = logging.getLogger(__name__)

Thunk = Callable[[], Sequence[IdentityReport]]

NON_ADMISSIBLE = frozenset({SpaceTag.BOSON_T, SpaceTag.DIAGONAL})
FORMAL_BRACKETS = "non-admissible: brackets computed formally"


@dataclass(frozen=True)
class Case:
    suite: str
    run: Thunk


@dataclass(frozen=True)
class CaseResult:
    index: int
    suite: str
    report: IdentityReport


class SuiteContext:
    """Probe states, random source and limits shared by the case generators of one run."""

    def __init__(self, V: VertexAlgebra, config: RunConfig) -> None:
        self.V = V
        self.config = config
        self.modes = config.probes.modes
        self.count = config.probes.count
        self.depth = config.budgets.depth or settings.depth_budget
        self.nmax = config.budgets.nmax or settings.nmax
        self.margin = config.windows.margin or settings.window_margin
        self.probes = V.probes(config.probes.grade_cap)
        self.states = [v for v in self.probes if self._reachable(v)]
        skipped = len(self.probes) - len(self.states)
        if skipped:
            logger.info("%d of %d probe states of %s are outside the reachable span", skipped, len(self.probes), V.name)

    def _reachable(self, v: State) -> bool:
        try:
            state_field(self.V, v)
        except OutsideReachableSpan:
            return False
        return True

    def rng(self, suite: str) -> random.Random:
        return random.Random(f"{self.config.probes.seed}:{suite}")

    def state(self, rng: random.Random) -> State:
        first = rng.choice(self.states)
        if rng.random() < 0.5:
            return first
        parity = state_parity(first)
        partners = [v for v in self.states if state_parity(v) is parity]
        second = rng.choice(partners)
        return first * rng.choice((1, 2, -1)) + second * rng.choice((1, -1, 3))

    def mode(self, rng: random.Random) -> int:
        return rng.randint(-self.modes, self.modes)


def _guarded(suite: str, V: VertexAlgebra, run: Thunk) -> Thunk:
    def wrapped() -> Sequence[IdentityReport]:
        try:
            return run()
        except VerdexError as exc:
            logger.warning("%s case on %s could not be evaluated: %s", suite, V.name, exc)
            return [IdentityReport(suite, V.name, {}, Fraction(0), Verdict.INCONCLUSIVE, str(exc))]

    return wrapped


def _random_cases(ctx: SuiteContext, suite: str, build: Callable[[random.Random], Thunk]) -> list[Case]:
    if not ctx.states:
        logger.warning("no reachable probe states for suite %s", suite)
        return []
    rng = ctx.rng(suite)
    return [Case(suite, _guarded(suite, ctx.V, build(rng))) for _ in range(ctx.count)]


def borcherds_cases(ctx: SuiteContext) -> list[Case]:
    def build(rng: random.Random) -> Thunk:
        a, b, c = ctx.state(rng), ctx.state(rng), ctx.state(rng)
        m, n, k = ctx.mode(rng), ctx.mode(rng), ctx.mode(rng)
        return lambda: [check_borcherds(ctx.V, a, b, c, m, n, k, ctx.depth)]

    return _random_cases(ctx, "borcherds", build)


def skew_cases(ctx: SuiteContext) -> list[Case]:
    window = Window(-ctx.modes - 1, ctx.modes + 1)

    def build(rng: random.Random) -> Thunk:
        a, b = ctx.state(rng), ctx.state(rng)
        return lambda: [check_skew(ctx.V, a, b, window)]

    return _random_cases(ctx, "skew", build)


def commutator_cases(ctx: SuiteContext) -> list[Case]:
    def build(rng: random.Random) -> Thunk:
        a, b, c = ctx.state(rng), ctx.state(rng), ctx.state(rng)
        m, n = ctx.mode(rng), ctx.mode(rng)
        return lambda: [check_commutator(ctx.V, a, b, c, m, n)]

    return _random_cases(ctx, "commutator", build)


def tderivation_cases(ctx: SuiteContext) -> list[Case]:
    def build(rng: random.Random) -> Thunk:
        a, b, n = ctx.state(rng), ctx.state(rng), ctx.mode(rng)
        return lambda: [t_derivation_check(ctx.V, a, b, n)]

    return _random_cases(ctx, "tderivation", build)


def _flag_admissibility(V: VertexAlgebra, report: IdentityReport) -> IdentityReport:
    if V.space.tag not in NON_ADMISSIBLE:
        return report
    detail = FORMAL_BRACKETS if report.detail is None else f"{report.detail}; {FORMAL_BRACKETS}"
    return replace(report, detail=detail)


def conformal_cases(ctx: SuiteContext) -> list[Case]:
    def build(rng: random.Random) -> Thunk:
        a, b, c = ctx.state(rng), ctx.state(rng), ctx.state(rng)
        return lambda: [_flag_admissibility(ctx.V, report) for report in check_conformal_axioms(ctx.V, a, b, c)]

    return _random_cases(ctx, "conformal", build)


def _closure_fields(ctx: SuiteContext) -> list[ModeField]:
    windows = ctx.config.windows
    table = ctx.V.closure or closure_generate(
        ctx.V, windows.closure_depth, (windows.n_min, windows.n_max), check=False, probes=ctx.probes
    )
    return [entry.field for entry in table.entries.values()]


def dong_cases(ctx: SuiteContext) -> list[Case]:
    generators = [ctx.V.identity, *ctx.V.generators.values()]
    probes = ctx.V.probes(min(ctx.config.probes.grade_cap, 2))
    modes = range(-ctx.modes, ctx.modes + 1)
    windows = ctx.config.windows

    def build(rng: random.Random) -> Thunk:
        a, b, c = rng.choice(generators), rng.choice(generators), rng.choice(generators)
        n = rng.randint(windows.n_min, windows.n_max)
        return lambda: [check_dong(ctx.V, a, b, c, n, probes, modes, ctx.nmax)]

    rng = ctx.rng("dong")
    return [Case("dong", _guarded("dong", ctx.V, build(rng))) for _ in range(ctx.count)]


def locality_cases(ctx: SuiteContext) -> list[Case]:
    fields = _closure_fields(ctx)
    cases = []
    for i, a in enumerate(fields):
        for b in fields[i:]:
            run = lambda a=a, b=b: [check_locality(ctx.V, a, b, ctx.probes, ctx.nmax, ctx.margin)]
            cases.append(Case("locality", _guarded("locality", ctx.V, run)))
    return cases


def admissibility_cases(ctx: SuiteContext) -> list[Case]:
    def run() -> list[IdentityReport]:
        reports = []
        for row in admissibility_probe(ctx.V, ctx.config.probes.grade_cap):
            values = {
                "field_norm": Quantity.exact(row.field_norm),
                "fs_norm": Quantity.exact(row.fs_norm),
                "ratio": Quantity.exact(row.ratio),
            }
            detail = "windowed operator norm over the probes; a lower bound for the field norm"
            reports.append(
                IdentityReport("admissibility", ctx.V.name, {"field": row.field}, Fraction(0), Verdict.PROBE, detail, values)
            )
        return reports

    return [Case("admissibility", _guarded("admissibility", ctx.V, run))]


def radius_cases(ctx: SuiteContext) -> list[Case]:
    if not ctx.V.ctx.is_padic:
        logger.warning("radius suite skipped: %s carries the trivial norm", ctx.V.name)
        return []

    def build(rng: random.Random) -> Thunk:
        a, b = ctx.state(rng), ctx.state(rng)
        return lambda: [radius_report(ctx.V, a, b)]

    return _random_cases(ctx, "radius", build)


SUITE_BUILDERS: dict[str, Callable[[SuiteContext], list[Case]]] = {
    "borcherds": borcherds_cases,
    "skew": skew_cases,
    "commutator": commutator_cases,
    "tderivation": tderivation_cases,
    "dong": dong_cases,
    "locality": locality_cases,
    "conformal": conformal_cases,
    "admissibility": admissibility_cases,
    "radius": radius_cases,
}


def run_suites(V: VertexAlgebra, config: RunConfig, workers: int | None = None) -> list[CaseResult]:
    """Every case of every requested suite, in generation order regardless of completion order."""

    if not config.suites:
        return []
    ctx = SuiteContext(V, config)
    cases: list[Case] = []
    for suite in config.suites:
        generated = SUITE_BUILDERS[suite](ctx)
        logger.info("suite %s: %d cases on %s", suite, len(generated), V.name)
        cases.extend(generated)

    workers = workers or settings.workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda case: case.run(), cases))
    else:
        outcomes = [case.run() for case in cases]

    results: list[CaseResult] = []
    for case, reports in zip(cases, outcomes):
        for report in reports:
            results.append(CaseResult(len(results), case.suite, report))
    return results


def exit_code(results: Sequence[CaseResult]) -> int:
    verdicts = {result.report.verdict for result in results}
    if Verdict.NONZERO in verdicts:
        return EXIT_IDENTITY_FAILURE
    if Verdict.INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _case_out(result: CaseResult) -> CaseOut:
    report = result.report
    return CaseOut(
        index=result.index,
        suite=result.suite,
        identity=report.identity,
        algebra=report.algebra,
        params={key: value if isinstance(value, int) else str(value) for key, value in report.params.items()},
        defect=NumberOut.exact(report.defect),
        verdict=report.verdict.value,
        detail=report.detail,
        values={key: NumberOut.from_quantity(value) for key, value in report.values.items()},
    )


def build_report(V: VertexAlgebra, config: RunConfig, results: Sequence[CaseResult]) -> ReportOut:
    summary = SummaryOut(total=len(results))
    for result in results:
        field = result.report.verdict.value.replace("-", "_")
        setattr(summary, field, getattr(summary, field) + 1)
    return ReportOut(
        algebra=V.name,
        ring=V.ring.label,
        norm=V.ctx.label,
        seed=config.probes.seed,
        suites=list(config.suites),
        cases=[_case_out(result) for result in results],
        summary=summary,
        inconclusive_cases=[r.index for r in results if r.report.verdict is Verdict.INCONCLUSIVE],
        exit_code=exit_code(results),
    )
