"""
The named verification suites.

Each suite builds its instance from an ``InstanceSpec`` and returns a
``CheckReport``. With ``mutate`` it runs its corrupted instance instead, which
must fail with a witness:

* compose-oracle: the oracle is computed for ``X o (Y + I)``
* compose-assoc: the right bracketing is computed for ``X o (Y o Z + I)``
* lq_n-pushout: the top cell ``P_n o O`` is dropped (library operads)
* compute1: the map ``L -> U`` is constant (com on ``{pt, x}``)
* compute2: the cobase change runs along ``T -> U + U`` (com on ``{pt, x}``)
* filtration-oracle: stage ``n`` is compared with the oracle of ``P_{<=n-1}``
* envelope-universal: the module is corrupted in arities two and up
* kernel-counit: the counit forgets the kernel summand
* cofiber-stable: the suspended map adds a non-acyclic summand
* sigma-infty: the first square of the prespectrum is corrupted
"""

import logging
from typing import Callable, Dict, List, Tuple

from operadkit.algmod import (
    OAlgebra,
    algebra_maps,
    algebra_under,
    algebras_agree,
    augmentation_failure,
    check_algebra,
    check_module,
    compare_with_oracle,
    compute1_check,
    compute2_check,
    corrupted_module,
    cyclic_monoid,
    enumerate_algebras,
    envelope_algebra,
    enveloping_operad,
    free_algebra_filtration,
    functor_to_module,
    initial_algebra,
    lq_n_pushout_check,
    module_from_algebra,
    module_to_functor,
    modules_agree,
    pointed_oalgebra,
    tautological_algebra,
)
from operadkit.basecat import (
    BaseMorphism,
    compose as compose_maps,
    coproduct,
    finset,
    from_images,
    homology_table,
    identity,
    is_isomorphism,
    is_quasi_iso,
    morphisms_equal,
    quasi_iso_failure,
)
from operadkit.compose import (
    Associator,
    associator,
    compose,
    compose_morphisms,
    compose_oracle,
    left_unit_map,
    oracle_comparison,
    oracle_composite,
    right_unit_map,
)
from operadkit.config.constants import SuiteName, Variant
from operadkit.errors import NonFinitary
from operadkit.operads import COM_LABEL, CheckReport, Operad, ass, check_operad, com, linearize_operad, mcom
from operadkit.stabletangent import (
    corrupt_square,
    counit_map,
    include_coprod,
    kernel_functor,
    levelwise_cofiber,
    levelwise_pushout_product,
    omega_spectrum_check,
    sigma_infty_plus,
    sigma_infty_plus_check,
    spectrify,
    stable_equiv_check,
    suspension_map,
    unit_map,
)
from operadkit.symseq import (
    OrbitSignature,
    SymmetricSequence,
    coproduct_sequences,
    sequences_isomorphic,
    skeleton,
    unit_seq,
)
from operadkit.verify.instances import (
    InstanceSpec,
    generate,
    random_acyclic,
    random_complex,
    random_injection,
    random_operad,
    random_over_under,
    random_sequence,
)

logger = logging.getLogger(__name__)

SuiteFn = Callable[[InstanceSpec, bool, int], CheckReport]

SUITES: Dict[SuiteName, SuiteFn] = {}

FILTRATION_SIZES = (1, 2, 3, 4)
ATTACHING_ARITIES = (2, 3)


def suite(name: SuiteName) -> Callable[[SuiteFn], SuiteFn]:
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        return fn

    return register


def _attaching_arities(p: Operad) -> List[int]:
    return [n for n in ATTACHING_ARITIES if n <= p.declared_bound]


def _pointed_library(spec: InstanceSpec, build=com) -> Tuple[Operad, OAlgebra]:
    """A library operad on ``{pt, x}``, linearized over VectQ."""
    p = build(max(spec.arity_bound, 2))
    if spec.variant == Variant.VECTQ:
        p = linearize_operad(p)
    return p, pointed_oalgebra(p, {p.colors.labels[0]: ("x",)}, name="{pt,x}")


# Composition product


@suite(SuiteName.COMPOSE_ORACLE)
def compose_oracle_suite(spec: InstanceSpec, mutate: bool, window: int) -> CheckReport:
    rng = spec.rng()
    x = random_sequence(spec, rng, tag="x")
    y = random_sequence(spec, rng, tag="y")
    bound = spec.arity_bound
    report = CheckReport("compose-oracle", bound)
    witness = compose(x, y, bound)
    report.tick("oracle")
    if mutate:
        padded = coproduct_sequences(y, unit_seq(x.colors, x.variant))
        found = sequences_isomorphic(witness.result, compose_oracle(x, padded, bound), bound)
        if found is not None:
            report.fail("oracle", f"orbit {found[0]}: closed form {found[1]} vs oracle {found[2]}")
        return report
    failure = oracle_comparison(witness, oracle_composite(x, y, bound))
    if failure is not None:
        report.fail("oracle", failure)
    return report


def _check_associator(report: CheckReport, alpha: Associator, bound: int) -> Dict[OrbitSignature, BaseMorphism]:
    """Every component is an equivariant isomorphism."""
    components = {}
    for key in alpha.keys():
        if key.arity > bound:
            continue
        report.tick("associator")
        component = components[key] = alpha.component(key)
        if not is_isomorphism(component):
            sizes = f"{component.source.size} -> {component.target.size}"
            report.fail("associator", f"orbit {key}: (XY)Z -> X(YZ) of sizes {sizes} is not invertible")
            continue
        for g in key.aut_generators:
            found = morphisms_equal(
                compose_maps(component, alpha.left.result.entry(key)(g)),
                compose_maps(alpha.right.result.entry(key)(g), component),
            )
            if found is not None:
                report.fail("associator", f"orbit {key}: not equivariant for {g} at {found[0]!r}")
    return components


def _check_triangle(report: CheckReport, x: SymmetricSequence, y: SymmetricSequence, bound: int) -> None:
    """``(X o I) o Y -> X o (I o Y)`` takes ``rho o Y`` to ``X o lambda``."""
    unit = unit_seq(x.colors, x.variant)
    xy, xi, iy = compose(x, y, bound), compose(x, unit, bound), compose(unit, y, bound)
    alpha = Associator(xi, compose(xi.result, y, bound), iy, compose(x, iy.result, bound))
    rho = {key: right_unit_map(xi, key) for key in x.orbits() if key.arity <= bound}
    lam = {key: left_unit_map(iy, key) for key in y.orbits() if key.arity <= bound}
    for key in xy.entries:
        report.tick("triangle")
        via_left = compose_maps(alpha.component(key), compose_morphisms(xy, alpha.left, key, left=rho))
        found = morphisms_equal(via_left, compose_morphisms(xy, alpha.right, key, right=lam))
        if found is not None:
            report.fail("triangle", f"orbit {key}: the two unit paths differ at {found[0]!r}")


def _check_pentagon(report: CheckReport, w, x, y, z, bound: int) -> None:
    """The two ways from ``((WX)Y)Z`` to ``W(X(YZ))`` agree."""
    wx, xy, yz = compose(w, x, bound), compose(x, y, bound), compose(y, z, bound)
    wx_y, w_xy, xy_z, x_yz = (
        compose(wx.result, y, bound),
        compose(w, xy.result, bound),
        compose(xy.result, z, bound),
        compose(x, yz.result, bound),
    )
    start, wx_yz = compose(wx_y.result, z, bound), compose(wx.result, yz.result, bound)
    middle, end = compose(w_xy.result, z, bound), compose(w, x_yz.result, bound)
    near = compose(w, xy_z.result, bound)
    first, second = Associator(wx_y, start, yz, wx_yz), Associator(wx, wx_yz, x_yz, end)
    third, fourth = Associator(wx, wx_y, xy, w_xy), Associator(w_xy, middle, xy_z, near)
    fifth = Associator(xy, xy_z, yz, x_yz)
    third_maps = {key: third.component(key) for key in third.keys() if key.arity <= bound}
    fifth_maps = {key: fifth.component(key) for key in fifth.keys() if key.arity <= bound}
    for key in start.entries:
        report.tick("pentagon")
        direct = compose_maps(second.component(key), first.component(key))
        around = compose_maps(
            compose_morphisms(near, end, key, right=fifth_maps),
            compose_maps(fourth.component(key), compose_morphisms(start, middle, key, left=third_maps)),
        )
        found = morphisms_equal(direct, around)
        if found is not None:
            report.fail("pentagon", f"orbit {key}: the two bracketing paths differ at {found[0]!r}")


@suite(SuiteName.COMPOSE_ASSOC)
def compose_assoc_suite(spec: InstanceSpec, mutate: bool, window: int) -> CheckReport:
    rng = spec.rng()
    x = random_sequence(spec, rng, density=0.25, tag="x")
    y = random_sequence(spec, rng, density=0.25, tag="y")
    z = random_sequence(spec, rng, min_arity=1, density=0.25, tag="z")
    bound = spec.arity_bound
    unit = unit_seq(x.colors, x.variant)
    report = CheckReport("compose-assoc", bound)
    left_witness, right_witness = compose(unit, y, bound), compose(x, unit, bound)
    sides = ((y, left_witness, left_unit_map, "left"), (x, right_witness, right_unit_map, "right"))
    for seq, witness, unit_map_of, side in sides:
        keys = set(seq.orbits()) | set(witness.result.orbits())
        for key in sorted(keys, key=lambda k: k.sort_key(x.colors)):
            if key.arity > bound:
                continue
            report.tick(f"{side} unit")
            if not is_isomorphism(unit_map_of(witness, key)):
                report.fail(f"{side} unit", f"orbit {key}: {seq.object(key).size} -> {witness.result.object(key).size}")
    alpha = associator(x, y, z, bound)
    _check_associator(report, alpha, bound)
    inner = alpha.yz.result
    if mutate:
        inner = coproduct_sequences(inner, unit)
    report.tick("associativity")
    found = sequences_isomorphic(alpha.left.result, compose(x, inner, bound).result, bound)
    if found is not None:
        report.fail("associativity", f"orbit {found[0]}: (XY)Z {found[1]} vs X(YZ) {found[2]}")
    _check_triangle(report, x, z, bound)
    _check_pentagon(report, x, y, z, z, min(bound, 2))
    return report


# Attaching squares


@suite(SuiteName.LQN_PUSHOUT)
def lq_n_pushout_suite(spec: InstanceSpec, mutate: bool, window: int) -> CheckReport:
    rng = spec.rng()
    bound = max(spec.arity_bound, 2)
    choices = ["com", "ass", "mcom"] if mutate else ["com", "ass", "mcom", "random"]
    choice = rng.choice(choices)
    if choice == "random":
        p = random_operad(spec.model_copy(update={"colors": 2}), rng)
    else:
        p = {"com": com, "ass": ass, "mcom": mcom}[choice](bound)
        if spec.variant == Variant.VECTQ:
            p = linearize_operad(p)
    logger.debug(f"lq_n-pushout instance: {p.name} with arity bound {p.declared_bound}")
    report = CheckReport(f"lq_n-pushout on {p.name}", bound)
    for n in _attaching_arities(p):
        report.merge(lq_n_pushout_check(p, n, drop_top_cell=mutate))
    return report


@suite(SuiteName.COMPUTE1)
def compute1_suite(spec: InstanceSpec, mutate: bool, window: int) -> CheckReport:
    if mutate:
        p, x = _pointed_library(spec)
    else:
        instance = generate(spec)
        p, x = instance.operad, instance.oalgebra
    report = CheckReport(f"compute1 on {p.name}", p.declared_bound)
    for n in _attaching_arities(p):
        for color in p.colors:
            report.merge(compute1_check(p, x, n, color, corrupt_q_map=mutate))
    return report


@suite(SuiteName.COMPUTE2)
def compute2_suite(spec: InstanceSpec, mutate: bool, window: int) -> CheckReport:
    if mutate:
        p, x = _pointed_library(spec)
    else:
        instance = generate(spec)
        p, x = instance.operad, instance.oalgebra
    report = CheckReport(f"compute2 on {p.name}", p.declared_bound)
    for n in _attaching_arities(p):
        for color in p.colors:
            report.merge(compute2_check(p, x, n, color, corrupt_cobase=mutate))
    return report


@suite(SuiteName.FILTRATION_ORACLE)
def filtration_oracle_suite(spec: InstanceSpec, mutate: bool, window: int) -> CheckReport:
    if mutate:
        p, x = _pointed_library(spec)
    else:
        instance = generate(spec)
        p, x = instance.operad, instance.oalgebra
    top = min(3, p.declared_bound)
    report = CheckReport(f"filtration on {p.name}", top)
    stages = free_algebra_filtration(p, x, top)
    compared = stages[-1:] if mutate else stages[1:]
    for stage in compared:
        report.tick("oracle")
        comparison = compare_with_oracle(stage, oracle_arity=stage.n - 1 if mutate else None)
        for failure in comparison.failures:
            report.fail("oracle", f"stage {stage.n}: {failure}")
    if mutate:
        return report
    for stage in stages:
        report.merge(check_algebra(stage.as_algebra(), 1))
        if stage.augmentation is not None:
            report.tick("augmentation")
            failure = augmentation_failure(stage)
            if failure is not None:
                report.fail("augmentation", f"stage {stage.n}: {failure}")
    for build in (com, ass):
        q, pointed = _pointed_library(spec.model_copy(update={"arity_bound": 3}), build)
        color = q.colors.labels[0]
        sizes = tuple(stage.object(color).size for stage in free_algebra_filtration(q, pointed, 3))
        report.expect("stage sizes", sizes, FILTRATION_SIZES, f"{q.name} on {pointed.name}")
    return report


# Enveloping operads


def _library_operads(bound: int) -> List[Operad]:
    return [com(bound), ass(bound), com(bound, unital=False), ass(bound, unital=False), mcom(bound)]


def _envelope_of_initial(report: CheckReport, p: Operad, bound: int) -> None:
    """``P^{P_0}`` is ``P``, with the unit map an isomorphism."""
    envelope = enveloping_operad(p, initial_algebra(p), bound)
    report.tick("initial envelope")
    found = sequences_isomorphic(envelope.result.sequence, skeleton(p.sequence, bound), bound)
    if found is not None:
        report.fail("initial envelope", f"{p.name}: orbit {found[0]} differs")
    for key, component in envelope.unit_map().components.items():
        report.tick("initial envelope")
        if not is_isomorphism(component):
            report.fail("initial envelope", f"{p.name}: unit map at {key} is not invertible")


def _algebras_under_bijection(report: CheckReport, p: Operad, bound: int) -> None:
    """Exhaustive ``P^A``-algebras against ``P``-algebras under ``A = P_0`` on 1 and 2 elements."""
    alg = initial_algebra(p)
    envelope = enveloping_operad(p, alg)
    color = p.colors.labels[0]
    for size in (1, 2):
        carriers = {color: finset(range(size))}
        under = enumerate_algebras(envelope.result, carriers, bound)
        pairs = sum(len(algebra_maps(alg, b, bound)) for b in enumerate_algebras(p, carriers, bound))
        report.expect("bijection", len(under), pairs, f"{p.name} on {size} elements")
        for c in under:
            restricted, f = algebra_under(envelope, c)
            report.tick("round trip")
            difference = algebras_agree(envelope_algebra(envelope, restricted, f), c, bound)
            if difference is not None:
                report.fail("round trip", f"{c.name}: {difference}")


def _commutative(p: Operad) -> bool:
    return all(label == COM_LABEL for key in p.orbits() if key.arity > 1 for label in p.labels(key))


def _colored_envelope(spec: InstanceSpec) -> CheckReport:
    """
    Envelope of the random algebra over a random multicolored operad, or of
    the initial algebra when a composite has no representative within the cut.
    """
    instance = generate(spec.model_copy(update={"arity_bound": 3}))
    p = instance.operad
    # ass words past arity 1 run into the cut of the truncated base
    bound = 2 if _commutative(p) else 1
    try:
        return _envelope_laws(p, instance.algebra, bound)
    except NonFinitary as e:
        logger.info(f"Envelope of {instance.algebra.name} over {p.name} leaves the cut: {e}")
    return _envelope_laws(p, initial_algebra(p), bound)


def _envelope_laws(p: Operad, alg: OAlgebra, bound: int) -> CheckReport:
    report = CheckReport(f"envelope of {alg.name} over {p.name}", bound)
    envelope = enveloping_operad(p, alg)
    report.merge(check_operad(envelope.result, bound))
    tautological = tautological_algebra(envelope)
    report.merge(check_algebra(tautological, bound))
    restricted, f = algebra_under(envelope, tautological)
    report.tick("tautological")
    difference = algebras_agree(restricted, alg, bound)
    if difference is not None:
        report.fail("tautological", difference)
    for color, component in f.components.items():
        if morphisms_equal(component, identity(alg.carrier(color))) is not None:
            report.fail("tautological", f"A -> A is not the identity at {color}")
    return report


@suite(SuiteName.ENVELOPE_UNIVERSAL)
def envelope_universal_suite(spec: InstanceSpec, mutate: bool, window: int) -> CheckReport:
    if spec.colors > 1 and not mutate:
        return _colored_envelope(spec)
    library = _library_operads(3)
    p = library[spec.seed % len(library)]
    report = CheckReport(f"envelope of {p.name}", 3)
    logger.debug(f"Envelope suite on {p.name}, seed {spec.seed}")
    _envelope_of_initial(report, p, 3)
    commutative = spec.seed % 2 == 0
    monoidal = com(3) if commutative else ass(3)
    alg = cyclic_monoid(monoidal, 1 + spec.seed % 3)
    envelope = enveloping_operad(monoidal, alg)
    tautological = tautological_algebra(envelope)
    # a x b y c at arity 2 needs three extra inputs, past the cut of ass(3)
    report.merge(check_algebra(tautological, 2 if commutative else 1))
    restricted, f = algebra_under(envelope, tautological)
    report.tick("tautological")
    difference = algebras_agree(restricted, alg)
    if difference is not None:
        report.fail("tautological", difference)
    for color, component in f.components.items():
        if morphisms_equal(component, identity(alg.carrier(color))) is not None:
            report.fail("tautological", f"A -> A is not the identity at {color}")
    _algebras_under_bijection(report, monoidal, 2)
    category_envelope = enveloping_operad(monoidal, alg, bound=1)
    module = module_from_algebra(alg)
    report.merge(check_module(module))
    if mutate:
        module = corrupted_module(module)
    functor = module_to_functor(category_envelope, module)
    if not mutate:
        report.merge(check_algebra(functor))
    report.tick("module round trip")
    difference = modules_agree(functor_to_module(category_envelope, functor), module)
    if difference is not None:
        report.fail("module round trip", difference)
    return report


# Stable tangent


def _complex_size(spec: InstanceSpec, cap: int) -> int:
    return min(spec.entry_bound, cap)


@suite(SuiteName.KERNEL_COUNIT)
def kernel_counit_suite(spec: InstanceSpec, mutate: bool, window: int) -> CheckReport:
    rng = spec.rng()
    x = random_over_under(rng, _complex_size(spec, 3))
    b = random_complex(rng, _complex_size(spec, 3), tag="b")
    report = CheckReport(f"kernel and counit of {x.name}", 0)
    report.tick("unit")
    eta = unit_map(x.base, b)
    if not is_isomorphism(eta):
        report.fail("unit", f"B -> ker(B + A -> A) has sizes {b.size} -> {eta.target.size}")
    kernel = kernel_functor(include_coprod(x.base, b))
    report.expect("unit", homology_table(kernel), homology_table(b), "homology of the kernel")
    epsilon = counit_map(x)
    if mutate:
        epsilon = from_images(
            epsilon.source, epsilon.target, lambda label: {} if label[0] == 0 else x.section.image_vector(label[1])
        )
    report.tick("counit")
    if not is_quasi_iso(epsilon):
        report.fail("counit", f"ker(p) + A -> C is not a quasi-isomorphism in degree {quasi_iso_failure(epsilon)}")
    return report


@suite(SuiteName.COFIBER_STABLE)
def cofiber_stable_suite(spec: InstanceSpec, mutate: bool, window: int) -> CheckReport:
    rng = spec.rng()
    size = _complex_size(spec, 2)
    base = random_complex(rng, 1, degrees=(0, 1), tag="a")
    k = random_complex(rng, size, degrees=(0, 2), tag="k")
    extra = random_complex(rng, size, degrees=(0, 2), tag="l") if mutate else random_acyclic(rng, 1)
    h = coproduct([k, extra]).injections[0]
    g = random_injection(rng, size)
    f = suspension_map(h, base, spec.truncation)
    product = levelwise_pushout_product(f, g)
    stable = spectrify(levelwise_cofiber(product), window)
    report = CheckReport("cofiber of a levelwise pushout-product", spec.truncation)
    for q, value in sorted(stable.values.items()):
        report.tick("stably trivial")
        if value.determined and value.value:
            report.fail("stably trivial", f"degree {q}: stable homology of the cofiber has dimension {value.value}")
    report.tick("cofiber criterion")
    equivalence = stable_equiv_check(product, window)
    if equivalence != stable.is_trivial:
        report.fail("cofiber criterion", f"stable equivalence {equivalence} but trivial cofiber {stable.is_trivial}")
    return report


@suite(SuiteName.SIGMA_INFTY)
def sigma_infty_suite(spec: InstanceSpec, mutate: bool, window: int) -> CheckReport:
    rng = spec.rng()
    a = random_complex(rng, _complex_size(spec, 3), tag="a")
    if mutate:
        return omega_spectrum_check(corrupt_square(sigma_infty_plus(a, spec.truncation), 0))
    report, _ = sigma_infty_plus_check(a, spec.truncation, window)
    return report
