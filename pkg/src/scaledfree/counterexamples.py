"""Finite-stage witnesses for the non-existence results.

Each witness replays an inequality chain on concrete data and reports two
exact numbers: the bound some putative universal map would have to respect
(``violated_bound``) and the bound the data forces on it
(``required_bound``).  A stage establishes a contradiction when the second
strictly exceeds the first.  Where the argument is "the demand grows without
bound", the violated bound at stage ``k`` is the demand certified at stage
``k - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .category import coproduct, mediate_coproduct, mediate_product, product
from .errors import ZeroNormError
from .free_algebra import DEFAULT_DEGREE_CAP, TensorAlgebra, alg_norm, evaluate_word_map, kappa
from .free_space import ScalarField, extend, zeta
from .normed_sets import NormedMap, NormedSet, bound_constant
from .scalars import I, NormValue, Scalar, as_fraction

SCENARIOS = ("set-reflection", "banalg-bounded", "hilbert", "csetinf-product", "csetinf-coproduct")


@dataclass(frozen=True)
class Witness:
    scenario: str
    parameters: dict
    violated_bound: NormValue
    required_bound: NormValue
    narrative: tuple[str, ...]

    @property
    def established(self) -> bool:
        return self.required_bound > self.violated_bound

    @property
    def gap(self) -> Fraction:
        if self.required_bound.is_exact and self.violated_bound.is_exact:
            return self.required_bound.exact - self.violated_bound.exact
        raise ValueError("gap is only reported for rational bounds")


def witness_set_reflection(candidate_norm, demand) -> Witness:
    """A one-generator candidate ``(V, eta)`` with ``||eta(s)|| = candidate_norm``.

    The set map ``s -> demand`` into the scalars factors through the unique
    linear map sending ``eta(s)`` to ``demand``, whose norm is
    ``|demand| / candidate_norm``; contractive factorizations need norm <= 1.
    """
    c = as_fraction(candidate_norm)
    k = as_fraction(demand)
    if c <= 0:
        raise ZeroNormError("the candidate generator must have positive norm")
    base = NormedSet({"s": c})
    ext = extend({"s": Scalar(k)}, base, ScalarField())
    required = ext.operator_norm
    steps = (
        f"candidate reflection: one generator eta(s) with ||eta(s)|| = {c}",
        f"set map phi(s) = {k} into the scalars",
        f"any linear phi_hat with phi_hat(eta(s)) = {k} has ||phi_hat|| >= |{k}| / {c} = {required}",
        "the category only admits contractions: ||phi_hat|| <= 1",
        (
            f"{required} > 1: no contractive factorization exists"
            if required > 1
            else f"{required} <= 1: no contradiction at this demand (raise the demand)"
        ),
    )
    return Witness(
        "set-reflection",
        {"candidate_norm": c, "demand": k},
        NormValue(1),
        required,
        steps,
    )


def witness_banalg_bounded(f_s, n: int, *, degree_cap: int = DEFAULT_DEGREE_CAP) -> Witness:
    """Bounded homomorphisms cannot be universal for bounded generator maps.

    On ``({s: f_s})`` with ``eta = kappa`` the generator map
    ``psi(s) = 2 crh(eta) f(s)`` is bounded, yet a multiplicative extension
    must send ``r_s^n`` to ``psi(s)^n`` while ``||r_s^n|| = f_s^n``.  The ratio
    ``2^n`` is the norm demanded of the extension at stage ``n``.
    """
    f_s = as_fraction(f_s)
    if f_s <= 0:
        raise ZeroNormError("the generator must have positive norm")
    if not 1 <= n <= degree_cap:
        raise ValueError(f"stage n must lie in 1..{degree_cap}")
    base = NormedSet({"s": f_s})
    algebra = TensorAlgebra(base)
    r = kappa(base, "s")
    crh_eta = bound_constant((base.norm(s), algebra.norm(kappa(base, s))) for s in base).exact
    psi = Scalar(2 * crh_eta * f_s)
    crh_psi = bound_constant([(f_s, psi.modulus())]).exact
    r_n = r**n
    value = evaluate_word_map({"s": psi}, r_n, ScalarField())
    size = alg_norm(r_n)
    required = value.modulus() / size.exact
    violated = NormValue(Fraction(2) ** (n - 1))
    steps = (
        f"eta = kappa on ({{s: {f_s}}}), crh(eta) = {crh_eta}",
        f"psi(s) = 2 * crh(eta) * f(s) = {psi}, crh(psi) = {crh_psi} (bounded, not contractive)",
        f"multiplicativity: psi_hat(r_s^{n}) = psi(s)^{n} = {value}",
        f"||r_s^{n}|| = f(s)^{n} = {size}",
        f"||psi_hat|| >= {value} / {size} = {required}",
        f"stage {n - 1} certified only {violated}; the demand 2^n is unbounded in n",
    )
    return Witness(
        "banalg-bounded",
        {"f_s": f_s, "n": n, "crh_eta": crh_eta},
        violated,
        required,
        steps,
    )


def witness_hilbert(f_s, f_t, *, field: str = "complex") -> Witness:
    """Two generators of nonzero norm cannot have a Hilbert-space reflection.

    Universality forces ``||v_s + u v_t|| = f_s + f_t`` for every unit ``u`` of
    the field used by polarization, hence ``<v_s, v_t> = 0``; Parseval then
    gives ``||v_s + v_t||^2 = f_s^2 + f_t^2`` while the first step forced
    ``(f_s + f_t)^2``.  The gap is ``2 f_s f_t``.
    """
    f_s, f_t = as_fraction(f_s), as_fraction(f_t)
    if f_s <= 0 or f_t <= 0:
        raise ZeroNormError(
            "both generators need nonzero norm; with at most one nonzero-norm element a reflection exists"
        )
    if field == "complex":
        units = [I**n for n in range(4)]
    elif field == "real":
        units = [Scalar(1), Scalar(-1)]
    else:
        raise ValueError("field must be 'complex' or 'real'")
    base = NormedSet({"s": f_s, "t": f_t})
    F = ScalarField()
    steps = []

    norm_functional = extend({"s": Scalar(f_s), "t": Scalar(f_t)}, base, F)
    steps.append(
        f"psi = f has crh {norm_functional.operator_norm}; contractivity forces ||v_s|| = {f_s}, ||v_t|| = {f_t}"
    )

    forced = {}
    for u in units:
        phi = extend({"s": Scalar(f_s), "t": Scalar(f_t) / u}, base, F)
        probe = zeta(base, "s") + u * zeta(base, "t")
        lower = F.norm(phi(probe))
        upper = NormValue(f_s) + NormValue(f_t)
        if phi.operator_norm != 1 or lower != upper:
            raise AssertionError("polarization step failed")  # unreachable for positive norms
        forced[u] = lower.exact
        steps.append(
            f"u = {u}: phi(t) = {Scalar(f_t) / u} gives crh 1 and |phi_hat(v_s + u v_t)| = {lower} = f_s + f_t"
        )

    if field == "complex":
        inner = sum((u * forced[u] ** 2 for u in units), Scalar(0)) / 4
    else:
        inner = Scalar((forced[Scalar(1)] ** 2 - forced[Scalar(-1)] ** 2) / 4)
    steps.append(f"polarization: <v_s, v_t> = {inner}")

    parseval = f_s**2 + f_t**2 + 2 * inner.re
    forced_square = forced[Scalar(1)] ** 2
    steps.append(f"Parseval: ||v_s + v_t||^2 = f_s^2 + f_t^2 = {parseval}")
    steps.append(f"but ||v_s + v_t|| = f_s + f_t forces ||v_s + v_t||^2 = {forced_square}")
    steps.append(f"gap {forced_square - parseval} = 2 f_s f_t > 0: contradiction")
    return Witness(
        "hilbert",
        {"f_s": f_s, "f_t": f_t, "field": field, "inner_product": inner},
        NormValue(parseval),
        NormValue(forced_square),
        tuple(steps),
    )


def witness_csetinf_incompleteness(kind: str, stage: int, *, leg_bound=1) -> Witness:
    """Stage ``k`` of the missing countable (co)product in the bounded category.

    ``product``: the family ``([0, oo), id)`` restricted to the points the cone
    ``lambda -> n * lambda`` reaches from the test point ``lambda = 1``.
    ``coproduct``: copies of the norm-1 singleton with the cocone sending copy
    ``n`` to a point of norm ``n``.  With (co)projections of bound constant at
    most ``leg_bound``, the mediating map needs bound constant at least
    ``k / leg_bound``; the finite (co)product built here attains it.
    """
    k = int(stage)
    if k < 1:
        raise ValueError("stage must be a positive integer")
    C = as_fraction(leg_bound)
    if C <= 0:
        raise ValueError("leg bound must be positive")

    if kind == "product":
        # only the test point 1 and its images n matter, so each factor is the point {n}
        family = [NormedSet({n: n}) for n in range(1, k + 1)]
        apex = NormedSet({1: 1})
        cone = [NormedMap(apex, S_n, {1: n}) for n, S_n in enumerate(family, start=1)]
        result = product(family)
        u = mediate_product(result, cone)
        steps = [
            f"factors S_n = [0, oo) with f_n(x) = x for n = 1..{k}, restricted to the point n",
            "cone from ([0, oo), id) at the test point 1: c_n(1) = n with crh(c_n) = n",
            f"finite product: projections of crh {max(leg.crh for leg in result.legs)}",
            f"mediator u(1) = {u(1)} has norm {result.obj.norm(u(1))}",
            f"n = f_n(c_n(1)) <= crh(pi_n) crh(u) * 1 forces crh(u) >= {k}/{C}",
        ]
    elif kind == "coproduct":
        family = [NormedSet({0: 1}) for _ in range(k)]
        apex = NormedSet({n: n for n in range(1, k + 1)})
        cocone = [NormedMap(S_n, apex, {0: n}) for n, S_n in enumerate(family, start=1)]
        result = coproduct(family)
        u = mediate_coproduct(result, cocone)
        steps = [
            f"{k} copies of the singleton {{0}} with norm 1",
            f"cocone into ({{1..{k}}}, h(n) = n): d_n(0) = n with crh(d_n) = n",
            f"finite coproduct: injections of crh {max(leg.crh for leg in result.legs)}",
            f"mediator u sends copy {k} to {k}",
            f"n = h(d_n(0)) <= crh(u) crh(iota_n) * 1 forces crh(u) >= {k}/{C}",
        ]
    else:
        raise ValueError("kind must be 'product' or 'coproduct'")

    if any(leg.crh > C for leg in result.legs):
        raise AssertionError("constructed legs exceed the leg bound")
    required = NormValue(Fraction(k) / C)
    if u.crh != Fraction(k):
        raise AssertionError("mediator does not attain the stage bound")
    violated = NormValue(Fraction(k - 1) / C)
    steps.append(f"stage {k - 1} demanded {violated}; stage {k} demands {required}: unbounded in k")
    return Witness(
        f"csetinf-{kind}",
        {"kind": kind, "stage": k, "leg_bound": C},
        violated,
        required,
        tuple(steps),
    )


__all__ = [
    "SCENARIOS",
    "Witness",
    "witness_banalg_bounded",
    "witness_csetinf_incompleteness",
    "witness_hilbert",
    "witness_set_reflection",
]
