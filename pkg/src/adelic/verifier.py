"""Uniform engine for adelic product identities.

A registered family supplies the local factor, the finite set of places that
can differ from the identity, and argument plumbing for parsing and seeded
sampling.  Exact families combine factors in the three-part exact algebra and
can only pass literally; numeric families report a residual.  Every exact
verification also spot-checks one place outside the declared set, so an
unsound place set surfaces as a failure instead of a silent wrong answer.
"""

from __future__ import annotations

import json
import random
import re
import zlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import gauss, special
from .local import Place, additive_character, local_abs, places_for
from .rational import DomainError, parse_rational
from .symbols import ExactFactor, hilbert_symbol, weil_index

EXACT_PASS = "ExactPass"
NUMERIC_PASS = "NumericPass"
FAIL = "Fail"

_SPOT_CHECK_PRIMES = (
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
    127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
)

_COMPLEX_RE = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:\.\d+)?)(?:(?P<im>[+-]\d+(?:\.\d+)?)i)?\s*$"
)


def parse_complex(token: str) -> complex:
    """Parse 're' or 're+imi' (e.g. '2', '3+0.5i', '-1.5-2i')."""
    m = _COMPLEX_RE.match(token)
    if not m:
        raise DomainError(f"{token!r} is not a complex number (use re or re+imi)")
    re_part = float(m.group("re"))
    im_part = float(m.group("im")) if m.group("im") else 0.0
    return complex(re_part, im_part)


def _format_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


@dataclass(frozen=True)
class NumericEvaluation:
    factors: tuple[tuple[str, str], ...]
    residual: float


@dataclass(frozen=True)
class ProductFamily:
    """One identity family: local factors, relevant places, argument plumbing."""

    name: str
    usage: str
    exact: bool
    parse: Callable[[list[str]], tuple]
    render: Callable[[tuple], tuple[str, ...]]
    sample: Callable[[random.Random, int], tuple]
    factor: Callable[[Place, tuple], ExactFactor] | None = None
    relevant_places: Callable[[tuple], tuple[Place, ...]] | None = None
    evaluate: Callable[[tuple], NumericEvaluation] | None = None


@dataclass(frozen=True)
class VerificationReport:
    family: str
    args: tuple[str, ...]
    factors: tuple[tuple[str, str], ...]
    verdict: str
    residual: float | None = None
    diagnostic: str | None = None

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "args": list(self.args),
            "factors": [{"place": p, "value": v} for p, v in self.factors],
            "verdict": self.verdict,
            "residual": self.residual,
            "diagnostic": self.diagnostic,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            family=data["family"],
            args=tuple(data["args"]),
            factors=tuple((f["place"], f["value"]) for f in data["factors"]),
            verdict=data["verdict"],
            residual=data.get("residual"),
            diagnostic=data.get("diagnostic"),
        )

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SuiteReport:
    family: str
    trials: int
    height_bound: int
    seed: int
    verdicts: tuple[tuple[str, int], ...]
    failures: tuple[dict, ...]

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "trials": self.trials,
            "height_bound": self.height_bound,
            "seed": self.seed,
            "verdicts": {k: v for k, v in self.verdicts},
            "failures": list(self.failures),
            "all_passed": self.all_passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class Registry:
    """Holds product families; names are unique handles."""

    def __init__(self) -> None:
        self._families: dict[str, ProductFamily] = {}

    def register(self, family: ProductFamily) -> str:
        if family.name in self._families:
            raise DomainError(f"family {family.name!r} already registered")
        if family.exact and not (family.factor and family.relevant_places):
            raise DomainError("exact family needs factor and relevant_places")
        if not family.exact and not family.evaluate:
            raise DomainError("numeric family needs an evaluator")
        self._families[family.name] = family
        return family.name

    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self._families))

    def family(self, name: str) -> ProductFamily:
        try:
            return self._families[name]
        except KeyError:
            raise DomainError(f"unknown family {name!r}") from None

    def verify(
        self,
        name: str,
        args: tuple,
        tol: float = 1e-8,
        rng: random.Random | None = None,
    ) -> VerificationReport:
        fam = self.family(name)
        rendered = fam.render(args)
        if fam.exact:
            return self._verify_exact(fam, args, rendered, rng)
        evaluation = fam.evaluate(args)
        verdict = NUMERIC_PASS if evaluation.residual <= tol else FAIL
        return VerificationReport(
            family=fam.name,
            args=rendered,
            factors=evaluation.factors,
            verdict=verdict,
            residual=evaluation.residual,
        )

    def _verify_exact(
        self,
        fam: ProductFamily,
        args: tuple,
        rendered: tuple[str, ...],
        rng: random.Random | None,
    ) -> VerificationReport:
        places = fam.relevant_places(args)
        combined = ExactFactor.identity()
        table = []
        for place in places:
            f = fam.factor(place, args)
            combined = combined * f
            table.append((str(place), str(f)))
        diagnostic = None
        verdict = EXACT_PASS if combined.is_identity else FAIL
        if verdict == FAIL:
            diagnostic = (
                f"combined factor {combined} (root {combined.root.k}/8, "
                f"mag2 {combined.mag2}, phase {combined.phase.phase})"
            )
        off_place = self._spot_check_place(places, rendered, rng)
        if off_place is not None:
            off = fam.factor(off_place, args)
            if not off.is_identity:
                verdict = FAIL
                diagnostic = f"unsound place set: factor {off} at excluded place {off_place}"
        residual = None
        if verdict == FAIL:
            residual = abs(combined.to_complex() - 1)
        return VerificationReport(
            family=fam.name,
            args=rendered,
            factors=tuple(table),
            verdict=verdict,
            residual=residual,
            diagnostic=diagnostic,
        )

    @staticmethod
    def _spot_check_place(
        places: tuple[Place, ...],
        rendered: tuple[str, ...],
        rng: random.Random | None,
    ) -> Place | None:
        used = {v.prime for v in places if not v.is_infinite}
        pool = [p for p in _SPOT_CHECK_PRIMES if p not in used]
        if not pool:
            return None
        if rng is None:
            # deterministic independent of interpreter hash randomization
            index = zlib.crc32("|".join(rendered).encode()) % len(pool)
        else:
            index = rng.randrange(len(pool))
        return Place.finite(pool[index])

    def random_suite(
        self, name: str, trials: int, height_bound: int, seed: int, tol: float = 1e-8
    ) -> SuiteReport:
        fam = self.family(name)
        rng = random.Random(seed)
        counts: dict[str, int] = {}
        failures: list[dict] = []
        for index in range(trials):
            args = fam.sample(rng, height_bound)
            report = self.verify(name, args, tol=tol, rng=rng)
            counts[report.verdict] = counts.get(report.verdict, 0) + 1
            if report.verdict == FAIL:
                failures.append(
                    {
                        "index": index,
                        "seed": seed,
                        "args": list(report.args),
                        "residual": report.residual,
                        "diagnostic": report.diagnostic,
                    }
                )
        return SuiteReport(
            family=name,
            trials=trials,
            height_bound=height_bound,
            seed=seed,
            verdicts=tuple(sorted(counts.items())),
            failures=tuple(failures),
        )


def _random_rational(rng: random.Random, height: int, nonzero: bool = False) -> Fraction:
    num = rng.randint(-height, height)
    while nonzero and num == 0:
        num = rng.randint(-height, height)
    return Fraction(num, rng.randint(1, height))


def _parse_n(tokens: list[str], n: int, usage: str) -> list[str]:
    if len(tokens) != n:
        raise DomainError(f"expected {n} argument(s): {usage}")
    return tokens


def _nonzero(x: Fraction, what: str) -> Fraction:
    if x == 0:
        raise DomainError(f"{what} must be a nonzero rational")
    return x


def _sample_complex_off_poles(rng: random.Random, height: int) -> complex:
    del height  # complex parameters are not height-bounded
    while True:
        z = complex(rng.uniform(-4.0, 4.0), rng.uniform(-3.0, 3.0))
        if abs(z) > 5.0:
            continue
        near_real_int = abs(z.imag) < 0.15 and abs(z.real - round(z.real)) < 0.15
        if near_real_int and (round(z.real) <= 0 or round(z.real) in (1, 3, 5)):
            continue
        if abs(z) < 0.15 or abs(z - 1) < 0.15:
            continue
        return z


def default_registry() -> Registry:
    """Registry with every built-in identity family."""
    reg = Registry()

    reg.register(
        ProductFamily(
            name="norm-product",
            usage="norm-product x   (x a nonzero rational)",
            exact=True,
            parse=lambda t: (_nonzero(parse_rational(_parse_n(t, 1, "x")[0]), "x"),),
            render=lambda a: (str(a[0]),),
            sample=lambda rng, h: (_random_rational(rng, h, nonzero=True),),
            factor=lambda v, a: ExactFactor.from_magnitude(local_abs(a[0], v)),
            relevant_places=lambda a: places_for(a[0]),
        )
    )

    reg.register(
        ProductFamily(
            name="character-product",
            usage="character-product x   (x rational)",
            exact=True,
            parse=lambda t: (parse_rational(_parse_n(t, 1, "x")[0]),),
            render=lambda a: (str(a[0]),),
            sample=lambda rng, h: (_random_rational(rng, h),),
            factor=lambda v, a: ExactFactor.from_phase(additive_character(a[0], v)),
            relevant_places=lambda a: places_for(a[0]),
        )
    )

    reg.register(
        ProductFamily(
            name="lambda-product",
            usage="lambda-product x   (x a nonzero rational)",
            exact=True,
            parse=lambda t: (_nonzero(parse_rational(_parse_n(t, 1, "x")[0]), "x"),),
            render=lambda a: (str(a[0]),),
            sample=lambda rng, h: (_random_rational(rng, h, nonzero=True),),
            factor=lambda v, a: ExactFactor.from_root(weil_index(a[0], v)),
            relevant_places=lambda a: places_for(a[0], always=(2,)),
        )
    )

    reg.register(
        ProductFamily(
            name="hilbert-product",
            usage="hilbert-product x y   (nonzero rationals)",
            exact=True,
            parse=lambda t: tuple(
                _nonzero(parse_rational(tok), name)
                for tok, name in zip(_parse_n(t, 2, "x y"), ("x", "y"))
            ),
            render=lambda a: (str(a[0]), str(a[1])),
            sample=lambda rng, h: (
                _random_rational(rng, h, nonzero=True),
                _random_rational(rng, h, nonzero=True),
            ),
            factor=lambda v, a: ExactFactor.from_sign(hilbert_symbol(a[0], a[1], v)),
            relevant_places=lambda a: places_for(a[0], a[1], always=(2,)),
        )
    )

    reg.register(
        ProductFamily(
            name="gauss-product",
            usage="gauss-product a b   (a nonzero rational, b rational)",
            exact=True,
            parse=lambda t: (
                _nonzero(parse_rational(_parse_n(t, 2, "a b")[0]), "a"),
                parse_rational(t[1]),
            ),
            render=lambda a: (str(a[0]), str(a[1])),
            sample=lambda rng, h: (
                _random_rational(rng, h, nonzero=True),
                _random_rational(rng, h),
            ),
            factor=lambda v, a: gauss.gauss_factor(a[0], a[1], v).exact(),
            relevant_places=lambda a: places_for(a[0], a[1], always=(2,)),
        )
    )

    reg.register(
        ProductFamily(
            name="kernel-product",
            usage="kernel-product x2 x1 accel T   (rationals, T nonzero)",
            exact=True,
            parse=lambda t: (
                parse_rational(_parse_n(t, 4, "x2 x1 accel T")[0]),
                parse_rational(t[1]),
                parse_rational(t[2]),
                _nonzero(parse_rational(t[3]), "T"),
            ),
            render=lambda a: tuple(str(x) for x in a),
            sample=lambda rng, h: (
                _random_rational(rng, h),
                _random_rational(rng, h),
                _random_rational(rng, h),
                _random_rational(rng, h, nonzero=True),
            ),
            factor=lambda v, a: gauss.kernel(a[0], a[1], a[2], a[3], v).exact(),
            relevant_places=lambda a: gauss.kernel_places(*a),
        )
    )

    def _gamma_eval(args: tuple) -> NumericEvaluation:
        report = special.verify_gamma_product(args[0])
        factors = (
            ("inf", _format_complex(report.gamma_infinity)),
            ("regularized p-product", "cancelled" if report.cancelled else _format_complex(report.regularized_product)),
        )
        return NumericEvaluation(factors, report.residual)

    reg.register(
        ProductFamily(
            name="gamma-product",
            usage="gamma-product u   (complex, u not 0 or 1)",
            exact=False,
            parse=lambda t: (parse_complex(_parse_n(t, 1, "u")[0]),),
            render=lambda a: (_format_complex(a[0]),),
            sample=_sample_complex_off_poles_tuple,
            evaluate=_gamma_eval,
        )
    )

    def _beta_eval(args: tuple) -> NumericEvaluation:
        report = special.verify_beta_product(args[0], args[1])
        factors = tuple(
            (f"u={_format_complex(r.u)}", "cancelled" if r.cancelled else f"residual {r.residual:.3e}")
            for r in report.per_argument
        )
        return NumericEvaluation(factors, report.residual)

    reg.register(
        ProductFamily(
            name="beta-product",
            usage="beta-product a b   (complex; a, b, 1-a-b off the pole set)",
            exact=False,
            parse=lambda t: tuple(parse_complex(tok) for tok in _parse_n(t, 2, "a b")),
            render=lambda a: (_format_complex(a[0]), _format_complex(a[1])),
            sample=_sample_beta_args,
            evaluate=_beta_eval,
        )
    )

    def _functional_eval(args: tuple) -> NumericEvaluation:
        a = args[0]
        lhs = special.zeta_adelic(a)
        rhs = special.zeta_adelic(1 - a)
        residual = abs(lhs - rhs) / max(1.0, abs(lhs))
        factors = (
            (f"a={_format_complex(a)}", _format_complex(lhs)),
            (f"1-a={_format_complex(1 - a)}", _format_complex(rhs)),
        )
        return NumericEvaluation(factors, residual)

    reg.register(
        ProductFamily(
            name="functional-equation",
            usage="functional-equation a   (complex, off the pole set)",
            exact=False,
            parse=lambda t: (parse_complex(_parse_n(t, 1, "a")[0]),),
            render=lambda a: (_format_complex(a[0]),),
            sample=_sample_complex_off_poles_tuple,
            evaluate=_functional_eval,
        )
    )

    return reg


def _sample_complex_off_poles_tuple(rng: random.Random, height: int) -> tuple:
    return (_sample_complex_off_poles(rng, height),)


def _sample_beta_args(rng: random.Random, height: int) -> tuple:
    while True:
        a = _sample_complex_off_poles(rng, height)
        b = _sample_complex_off_poles(rng, height)
        c = 1 - a - b
        near_real_int = abs(c.imag) < 0.15 and abs(c.real - round(c.real)) < 0.15
        if near_real_int and (round(c.real) <= 0 or round(c.real) in (1, 3, 5)):
            continue
        return (a, b)
