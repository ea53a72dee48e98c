"""Command-line front end.

Every subcommand reads its inputs (JSON files) into a :class:`Workspace`
before doing any arithmetic, then prints deterministic text.  Exit codes:
0 success, 1 domain error, 2 refusal (unbounded or not contractive, or a
demo whose contradiction is not reached), 3 parse error.
"""
from __future__ import annotations

import argparse
import itertools
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import brute
from .category import classify, coequalizer, coproduct, equalizer, product
from .counterexamples import (
    Witness,
    witness_banalg_bounded,
    witness_csetinf_incompleteness,
    witness_hilbert,
    witness_set_reflection,
)
from .errors import DomainError, ParseError, RefusalError
from .free_algebra import (
    DEFAULT_DEGREE_CAP,
    alg_mul,
    extend_to_algebra,
    monomial,
    one_generator_convolution_check,
)
from .free_space import FreeSpace, FreeVector, ScalarField, extend, hom_roundtrip_check
from .normed_sets import NormedMap, NormedSet, compose
from .scalars import DEFAULT_PRECISION, UNBOUNDED, Scalar, bound_text, format_rational
from . import textio

EXIT_OK, EXIT_DOMAIN, EXIT_REFUSAL, EXIT_PARSE = 0, 1, 2, 3
COMPOSITION_PAIR_LIMIT = 50_000


@dataclass
class Workspace:
    """Parsed inputs plus the global settings every command sees."""

    mode: str = "real"
    degree_cap: int = DEFAULT_DEGREE_CAP
    universe_size: int = 2
    precision: Fraction = DEFAULT_PRECISION
    sets: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)
    elements: dict = field(default_factory=dict)
    specs: dict = field(default_factory=dict)

    def num(self, value) -> str:
        return bound_text(value, self.precision)

    def load_set(self, path):
        if path not in self.sets:
            self.sets[path] = textio.normed_set_from_json(textio.load_file(path))
        return self.sets[path]

    def load_map(self, path):
        if path not in self.maps:
            self.maps[path] = textio.normed_map_from_json(textio.load_file(path))
        return self.maps[path]

    def load_vector(self, path):
        if path not in self.vectors:
            self.vectors[path] = textio.vector_from_json(textio.load_file(path), self.mode)
        return self.vectors[path]

    def load_element(self, path):
        if path not in self.elements:
            x = textio.tensor_from_json(textio.load_file(path), self.mode)
            if x.degree > self.degree_cap:
                raise DomainError(f"{path}: degree {x.degree} exceeds --degree-cap {self.degree_cap}")
            self.elements[path] = x
        return self.elements[path]

    def load_spec(self, path):
        """An extension spec: base, target, generator images, optional inputs to apply."""
        if path not in self.specs:
            raw = textio.load_file(path)
            if not isinstance(raw, dict):
                raise ParseError(f"{path}: an extension spec is a JSON object")
            base = textio.normed_set_from_json(textio._expect(raw, "base"))
            target = textio.target_from_json(raw.get("target", {"kind": "scalar"}))
            images = {}
            for entry in textio._expect(raw, "images", list):
                if not isinstance(entry, list) or len(entry) != 2:
                    raise ParseError(f"{path}: images are [label, element] pairs")
                images[textio.parse_label(entry[0])] = textio.element_from_json(target, entry[1], self.mode)
            contractive = raw.get("contractive", False)
            if not isinstance(contractive, bool):
                raise ParseError(f"{path}: 'contractive' must be true or false")
            self.specs[path] = {
                "base": base,
                "target": target,
                "images": images,
                "contractive": contractive,
                "apply": raw.get("apply", []),
            }
        return self.specs[path]


def _parse_fraction_arg(text: str) -> Fraction:
    try:
        return textio.parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _emit_json(obj) -> None:
    _out(textio.dumps(obj))


# -- category commands ---------------------------------------------------------


def cmd_crh(ws: Workspace, args) -> int:
    phi = ws.load_map(args.map)
    _out(f"crh: {ws.num(phi.crh)}")
    _out(f"contractive: {str(phi.is_contractive).lower()}")
    return EXIT_OK


def cmd_compose(ws: Workspace, args) -> int:
    first, second = ws.load_map(args.first), ws.load_map(args.second)
    composite = compose(second, first)
    _emit_json(
        {
            "map": textio.normed_map_to_json(composite),
            "crh": ws.num(composite.crh),
            "crh_first": ws.num(first.crh),
            "crh_second": ws.num(second.crh),
        }
    )
    return EXIT_OK


def cmd_classify(ws: Workspace, args) -> int:
    _emit_json(textio.report_to_json(classify(ws.load_map(args.map)), ws.precision))
    return EXIT_OK


def cmd_product(ws: Workspace, args) -> int:
    objs = [ws.load_set(p) for p in args.set or []]
    _emit_json(textio.construction_to_json(product(objs)))
    return EXIT_OK


def cmd_coproduct(ws: Workspace, args) -> int:
    objs = [ws.load_set(p) for p in args.set or []]
    _emit_json(textio.construction_to_json(coproduct(objs)))
    return EXIT_OK


def cmd_equalizer(ws: Workspace, args) -> int:
    phi, psi = ws.load_map(args.first), ws.load_map(args.second)
    _emit_json(textio.construction_to_json(equalizer(phi, psi)))
    return EXIT_OK


def cmd_coequalizer(ws: Workspace, args) -> int:
    phi, psi = ws.load_map(args.first), ws.load_map(args.second)
    _emit_json(textio.construction_to_json(coequalizer(phi, psi)))
    return EXIT_OK


# -- free space ----------------------------------------------------------------------


def cmd_fs_norm(ws: Workspace, args) -> int:
    v = ws.load_vector(args.vector)
    _out(f"norm: {ws.num(v.norm())}")
    return EXIT_OK


def _apply_inputs(ws: Workspace, spec, build: Callable[[Any], Any]) -> list:
    inputs = spec["apply"]
    if not isinstance(inputs, list):
        raise ParseError("'apply' must be a list")
    return [build(item) for item in inputs]


def cmd_fs_extend(ws: Workspace, args) -> int:
    spec = ws.load_spec(args.spec)
    base, target = spec["base"], spec["target"]
    vectors = _apply_inputs(ws, spec, lambda item: FreeVector(base, textio._coeff_entries(item, ws.mode)))
    L = extend(spec["images"], base, target, contractive=spec["contractive"])
    _emit_json(
        {
            "operator_norm": ws.num(L.operator_norm),
            "images": [[textio.label_to_json(s), textio.element_to_json(target, v)] for s, v in L.on_generators().items()],
            "applied": [
                {"value": textio.element_to_json(target, L(v)), "norm": ws.num(target.norm(L(v)))} for v in vectors
            ],
        }
    )
    return EXIT_OK


def _sample_images(base: NormedSet, target, rng: random.Random, mode: str) -> dict:
    def scalar():
        re = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        im = Fraction(rng.randint(-4, 4), rng.randint(1, 3)) if mode == "complex" else Fraction(0)
        return Scalar(re, im)

    images = {}
    for s in base:
        if base.norm(s) == 0:
            images[s] = target.zero()
        elif isinstance(target, ScalarField):
            images[s] = scalar()
        else:
            images[s] = FreeVector(target.base, {t: scalar() for t in target.base if rng.random() < 0.6})
    return images


def cmd_fs_check(ws: Workspace, args) -> int:
    base = ws.load_set(args.base)
    rng = random.Random(args.seed)
    failures = 0
    for name, target in (("scalar", ScalarField()), ("free", FreeSpace(base))):
        maps = [_sample_images(base, target, rng, ws.mode) for _ in range(args.samples)]
        report = hom_roundtrip_check(base, target, maps)
        norm_failures = 0
        for phi in maps:
            L = extend(phi, base, target)
            generator_crh = brute.extreme_point_norm(L, base)
            if L.operator_norm != generator_crh:
                norm_failures += 1
        failures += len(report.failures) + norm_failures
        _out(f"{name}: round trips {report.checked} checked, {len(report.failures)} failures")
        _out(f"{name}: operator norm = crh on {len(maps)} maps, {norm_failures} failures")
    return EXIT_OK if failures == 0 else EXIT_DOMAIN


# -- free algebra ----------------------------------------------------------------------


def cmd_fa_mul(ws: Workspace, args) -> int:
    x, y = ws.load_element(args.left), ws.load_element(args.right)
    if x.degree + y.degree > ws.degree_cap:
        raise DomainError(f"product degree {x.degree + y.degree} exceeds --degree-cap {ws.degree_cap}")
    xy = alg_mul(x, y)
    _emit_json(
        {
            "product": textio.tensor_to_json(xy),
            "norm": ws.num(xy.norm()),
            "norm_left": ws.num(x.norm()),
            "norm_right": ws.num(y.norm()),
        }
    )
    return EXIT_OK


def cmd_fa_norm(ws: Workspace, args) -> int:
    x = ws.load_element(args.element)
    _out(f"norm: {ws.num(x.norm())}")
    _out(f"degree: {x.degree}")
    return EXIT_OK


def cmd_fa_extend(ws: Workspace, args) -> int:
    spec = ws.load_spec(args.spec)
    base, target = spec["base"], spec["target"]
    if not hasattr(target, "multiply"):
        raise DomainError("the algebra extension needs a target with a product (scalar, algebra, matrix)")
    inputs = _apply_inputs(
        ws, spec, lambda item: textio.TensorElement(base, textio._terms_from_json(item, ws.mode))
    )
    for x in inputs:
        if x.degree > ws.degree_cap:
            raise DomainError(f"input degree {x.degree} exceeds --degree-cap {ws.degree_cap}")
    H = extend_to_algebra(spec["images"], base, target)
    _emit_json(
        {
            "contractive": True,
            "images": [[textio.label_to_json(s), textio.element_to_json(target, v)] for s, v in H.on_generators().items()],
            "applied": [
                {"value": textio.element_to_json(target, H(x)), "norm": ws.num(target.norm(H(x)))} for x in inputs
            ],
        }
    )
    return EXIT_OK


def cmd_fa_conv(ws: Workspace, args) -> int:
    degree = ws.degree_cap if args.degree is None else args.degree
    if degree > ws.degree_cap:
        raise DomainError(f"degree {degree} exceeds --degree-cap {ws.degree_cap}")
    report = one_generator_convolution_check(args.weight, degree, samples=args.samples, seed=args.seed)
    _out(f"weight: {format_rational(report.weight)}")
    _out(f"degree: {report.degree}")
    _out(f"pairs checked: {report.pairs_checked}")
    _out(f"failures: {len(report.failures)}")
    return EXIT_OK if report.ok else EXIT_DOMAIN


# -- checks ------------------------------------------------------------------------


def _algebra_checks(base: NormedSet, rng: random.Random, samples: int, degree: int) -> tuple[int, int]:
    """Multiplicativity, contractivity and degree-1 agreement for random scalar images."""
    F = ScalarField()
    checked = failures = 0
    words = [w for n in range(1, degree + 1) for w in _words(base.support, n)]
    for _ in range(samples):
        images = {}
        for s in base:
            f = base.norm(s)
            images[s] = Scalar(f * Fraction(rng.randint(-3, 3), 3)) if f else Scalar(0)
        H = extend_to_algebra(images, base, F)
        L = extend(images, base, F, contractive=True)
        for s in base.support:
            checked += 1
            if H(monomial(base, (s,))) != L(FreeVector(base, {s: 1})):
                failures += 1
        for u in words:
            for v in words:
                if len(u) + len(v) > degree:
                    continue
                x, y = monomial(base, u), monomial(base, v)
                checked += 1
                if H(alg_mul(x, y)) != H(x) * H(y) or F.norm(H(x)) > x.norm():
                    failures += 1
    return checked, failures


def _words(letters, n: int):
    return itertools.product(letters, repeat=n)


def cmd_check_adjunction(ws: Workspace, args) -> int:
    base = ws.load_set(args.base)
    if len(base) > 4:
        raise DomainError("adjunction check is limited to bases with at most 4 elements")
    rng = random.Random(args.seed)
    failures = 0
    for name, target in (("scalar", ScalarField()), ("free", FreeSpace(base))):
        maps = [_sample_images(base, target, rng, ws.mode) for _ in range(args.samples)]
        report = hom_roundtrip_check(base, target, maps)
        failures += len(report.failures)
        _out(f"free space, {name} target: {report.checked} round trips, {len(report.failures)} failures")
    checked, alg_failures = _algebra_checks(base, rng, args.samples, min(4, ws.degree_cap))
    failures += alg_failures
    _out(f"free algebra: {checked} homomorphism checks, {alg_failures} failures")
    return EXIT_OK if failures == 0 else EXIT_DOMAIN


def cmd_check_laws(ws: Workspace, args) -> int:
    palette = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))
    universe = brute.normed_sets(palette, ws.universe_size)
    all_maps = [phi for S in universe for T in universe for phi in _all_maps(S, T)]
    failures = 0

    crh_bad = sum(1 for phi in all_maps if phi.crh != brute.brute_crh(phi))
    failures += crh_bad
    _out(f"crh vs ratio enumeration: {len(all_maps)} maps, {crh_bad} failures")

    by_domain: dict = {}
    for phi in all_maps:
        by_domain.setdefault(phi.domain, []).append(phi)
    total = sum(len(by_domain.get(phi.codomain, ())) for phi in all_maps)
    if total <= COMPOSITION_PAIR_LIMIT:
        composable = ((phi, psi) for phi in all_maps for psi in by_domain.get(phi.codomain, ()))
    else:
        rng = random.Random(0)
        composable = []
        while len(composable) < COMPOSITION_PAIR_LIMIT:
            phi = rng.choice(all_maps)
            composable.append((phi, rng.choice(by_domain[phi.codomain])))
    pairs = comp_bad = 0
    for phi, psi in composable:
        pairs += 1
        if compose(psi, phi).crh > _times(psi.crh, phi.crh):
            comp_bad += 1
    failures += comp_bad
    _out(f"composition law: {pairs} of {total} pairs, {comp_bad} failures")

    # separating mono/epi by brute force needs a test object with two points
    test_objects = universe if ws.universe_size >= 2 else brute.normed_sets(palette, 2)
    cls_bad = 0
    for phi in all_maps:
        report = classify(phi)
        expected = brute.brute_classify(phi, test_objects)
        if any(report.flags(c) != expected[c] for c in ("cset1", "csetinf")):
            cls_bad += 1
    failures += cls_bad
    _out(f"classification vs brute force: {len(all_maps)} maps, {cls_bad} failures")

    small = [S for S in universe if len(S) <= 1]
    up_checked = up_bad = 0
    for A in small:
        for B in small:
            for build in (product, coproduct):
                r = brute.verify_universal_property(build([A, B]), [A, B], universe)
                up_checked += r.cones_checked
                up_bad += len(r.failures)
    failures += up_bad
    _out(f"universal properties: {up_checked} cones, {up_bad} failures")
    return EXIT_OK if failures == 0 else EXIT_DOMAIN


def _all_maps(S: NormedSet, T: NormedSet):
    for image in itertools.product(T.labels, repeat=len(S)):
        yield NormedMap(S, T, dict(zip(S.labels, image)))


def _times(a, b):
    if a == UNBOUNDED or b == UNBOUNDED:
        return UNBOUNDED
    return a * b


# -- demos -------------------------------------------------------------------------


def _print_witness(ws: Workspace, w: Witness, extra: dict | None = None) -> int:
    _out(f"scenario: {w.scenario}")
    for step in w.narrative:
        _out(f"  {step}")
    for key, value in (extra or {}).items():
        _out(f"{key}: {value}")
    _out(f"violated bound: {ws.num(w.violated_bound)}")
    _out(f"required bound: {ws.num(w.required_bound)}")
    _out(f"established: {str(w.established).lower()}")
    return EXIT_OK if w.established else EXIT_REFUSAL


def cmd_demo_set_reflection(ws: Workspace, args) -> int:
    return _print_witness(ws, witness_set_reflection(args.candidate_norm, args.demand))


def cmd_demo_banalg(ws: Workspace, args) -> int:
    w = witness_banalg_bounded(args.f_s, args.n, degree_cap=ws.degree_cap)
    return _print_witness(ws, w, {"ratio": ws.num(w.required_bound)})


def cmd_demo_hilbert(ws: Workspace, args) -> int:
    w = witness_hilbert(args.f_s, args.f_t, field=ws.mode)
    return _print_witness(ws, w, {"gap": format_rational(w.gap)})


def cmd_demo_no_product(ws: Workspace, args) -> int:
    return _print_witness(ws, witness_csetinf_incompleteness("product", args.stage, leg_bound=args.leg_bound))


def cmd_demo_no_coproduct(ws: Workspace, args) -> int:
    return _print_witness(ws, witness_csetinf_incompleteness("coproduct", args.stage, leg_bound=args.leg_bound))


# -- argument parsing ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    frac = _parse_fraction_arg
    # global flags are accepted before or after the subcommand
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--mode", choices=("real", "complex"))
    common.add_argument("--degree-cap", type=int)
    common.add_argument("--universe-size", type=int)
    common.add_argument("--precision", type=frac)
    parser = _Parser(prog="scaledfree", description="Exact computations with normed sets and their free objects.")
    parser.add_argument("--mode", choices=("real", "complex"), default="real")
    parser.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    parser.add_argument("--universe-size", type=int, default=2)
    parser.add_argument("--precision", type=frac, default=DEFAULT_PRECISION)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("crh", parents=[common], help="bound constant of a map")
    p.add_argument("--map", required=True)
    p.set_defaults(run=cmd_crh)

    p = sub.add_parser("compose", parents=[common], help="second o first")
    p.add_argument("--first", required=True)
    p.add_argument("--second", required=True)
    p.set_defaults(run=cmd_compose)

    p = sub.add_parser("classify", parents=[common], help="mono/epi/section/retraction/iso flags")
    p.add_argument("--map", required=True)
    p.set_defaults(run=cmd_classify)

    for name, run in (("product", cmd_product), ("coproduct", cmd_coproduct)):
        p = sub.add_parser(name, parents=[common], help=f"finite {name} of normed sets")
        p.add_argument("--set", action="append", help="normed set file (repeatable)")
        p.set_defaults(run=run)
    for name, run in (("equalizer", cmd_equalizer), ("coequalizer", cmd_coequalizer)):
        p = sub.add_parser(name, parents=[common], help=f"{name} of a parallel pair")
        p.add_argument("--first", required=True)
        p.add_argument("--second", required=True)
        p.set_defaults(run=run)

    fs = sub.add_parser("free-space", parents=[common], help="weighted l1 spaces").add_subparsers(
        dest="action", required=True, parser_class=_Parser
    )
    p = fs.add_parser("norm", parents=[common])
    p.add_argument("--vector", required=True)
    p.set_defaults(run=cmd_fs_norm)
    p = fs.add_parser("extend", parents=[common])
    p.add_argument("--spec", required=True)
    p.set_defaults(run=cmd_fs_extend)
    p = fs.add_parser("check", parents=[common])
    p.add_argument("--base", required=True)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_fs_check)

    fa = sub.add_parser("free-algebra", parents=[common], help="weighted tensor algebras").add_subparsers(
        dest="action", required=True, parser_class=_Parser
    )
    p = fa.add_parser("mul", parents=[common])
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(run=cmd_fa_mul)
    p = fa.add_parser("norm", parents=[common])
    p.add_argument("--element", required=True)
    p.set_defaults(run=cmd_fa_norm)
    p = fa.add_parser("extend", parents=[common])
    p.add_argument("--spec", required=True)
    p.set_defaults(run=cmd_fa_extend)
    p = fa.add_parser("conv-check", parents=[common])
    p.add_argument("--weight", type=frac, default=Fraction(1))
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_fa_conv)

    ck = sub.add_parser("check", parents=[common], help="exhaustive and randomized law checks").add_subparsers(
        dest="action", required=True, parser_class=_Parser
    )
    p = ck.add_parser("adjunction", parents=[common])
    p.add_argument("--base", required=True)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_check_adjunction)
    p = ck.add_parser("laws", parents=[common])
    p.set_defaults(run=cmd_check_laws)

    demo = sub.add_parser("demo", parents=[common], help="counterexample traces").add_subparsers(
        dest="action", required=True, parser_class=_Parser
    )
    p = demo.add_parser("set-reflection", parents=[common])
    p.add_argument("--candidate-norm", type=frac, default=Fraction(1))
    p.add_argument("--demand", type=frac, default=Fraction(2))
    p.set_defaults(run=cmd_demo_set_reflection)
    p = demo.add_parser("banalg", parents=[common])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--f-s", type=frac, default=Fraction(1))
    p.set_defaults(run=cmd_demo_banalg)
    p = demo.add_parser("hilbert", parents=[common])
    p.add_argument("--f-s", type=frac, default=Fraction(1))
    p.add_argument("--f-t", type=frac, default=Fraction(1))
    p.set_defaults(run=cmd_demo_hilbert)
    for name, run in (("no-product", cmd_demo_no_product), ("no-coproduct", cmd_demo_no_coproduct)):
        p = demo.add_parser(name, parents=[common])
        p.add_argument("--stage", type=int, default=3)
        p.add_argument("--leg-bound", type=frac, default=Fraction(1))
        p.set_defaults(run=run)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.precision <= 0:
            raise ParseError("--precision must be positive")
        if args.degree_cap < 1 or args.universe_size < 0:
            raise ParseError("--degree-cap must be >= 1 and --universe-size >= 0")
        ws = Workspace(args.mode, args.degree_cap, args.universe_size, args.precision)
        return args.run(ws, args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except RefusalError as exc:
        sys.stderr.write(f"refused: {exc}\n")
        return EXIT_REFUSAL
    except (DomainError, ValueError) as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
