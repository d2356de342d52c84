"""
The skeletal filtration of the free algebra ``P o_O X``.

Stage ``n`` is obtained from stage ``n - 1`` by one pushout per color along
``R-_n -> R+_n``, where for the arity-``n`` orbits ``w`` with output ``c``

    T = sum_w P(w) (x)_Aut P_0^w
    L = sum_w P(w) (x)_Aut Q(X, w)
    U = sum_w P(w) (x)_Aut X^w

    R-_n = P_0(c) +_T L        R+_n = R-_n +_L U

Stage 0 is ``P_0`` and stage 1 is the relative composite of ``P_{<=1}``.
The relative composite of ``P_{<=n}`` is kept as an independent oracle.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from operadkit.basecat import (
    BaseMorphism,
    BaseObject,
    Coproduct,
    Label,
    Pushout,
    Quotient,
    Vector,
    action_from_function,
    add_into,
    compose,
    coproduct,
    from_images,
    groupoid_colimit,
    identity,
    is_isomorphism,
    morphisms_equal,
    pushout,
    tensor_many,
    tensor_morphisms,
)
from operadkit.basecat.perms import Perm, act_on_tuple
from operadkit.compose import RelativeComposite, remove_slots
from operadkit.errors import NonFinitary, StructureMismatch
from operadkit.operads import Operad, one_skeleton
from operadkit.symseq import Color, OrbitSignature
from operadkit.algmod.algebra import Algebra
from operadkit.algmod.oalgebra import OAlgebra, free_algebra_stage_oracle
from operadkit.algmod.qobject import QObject, q_object

logger = logging.getLogger(__name__)

Generator = Callable[[OrbitSignature, Label, Tuple[Label, ...]], Vector]


# Coinvariant sums


@dataclass(frozen=True)
class CoinvariantSum:
    """``sum_w (P(w) (x) F(w))_Aut(w)`` over orbits sharing an output color."""

    keys: Tuple[OrbitSignature, ...]
    quotients: Tuple[Quotient, ...]
    total: Coproduct

    @property
    def object(self) -> BaseObject:
        return self.total.object

    def class_of(self, key: OrbitSignature, vector: Vector) -> Vector:
        """Class of a vector of ``(p, f)`` labels from the summand ``key``."""
        if key not in self.keys:
            return {}
        index = self.keys.index(key)
        projected = self.quotients[index].project(vector)
        return {(index, label): c for label, c in projected.items()}

    def descend(self, target: BaseObject, fn: Callable[[OrbitSignature, Label, Label], Vector]) -> BaseMorphism:
        """
        Map out of the sum given on representatives ``(p, f)``.

        Raises:
            StructureMismatch: If ``fn`` is not invariant
        """
        maps = []
        for key, quotient in zip(self.keys, self.quotients):
            on_cover = from_images(quotient.cover, target, lambda label, k=key: fn(k, label[0], label[1]))
            maps.append(quotient.descend(on_cover, check=True))
        return self.total.copair_into(target, maps)


def _power(objects: Sequence[BaseObject], variant) -> Tuple[BaseObject, Callable[[Perm], BaseMorphism]]:
    power = tensor_many(objects, variant)
    return power, lambda sigma: from_images(power, power, lambda t: {act_on_tuple(sigma, t): 1})


def coinvariant_sum(
    p: Operad,
    keys: Sequence[OrbitSignature],
    fiber: Callable[[OrbitSignature], Tuple[BaseObject, Callable[[Perm], BaseMorphism]]],
) -> CoinvariantSum:
    """
    Coinvariants of the diagonal actions on ``P(w) (x) F(w)``; ``fiber``
    returns ``F(w)`` with its ``Aut(w)``-action.
    """
    quotients = []
    for key in keys:
        fiber_object, fiber_action = fiber(key)
        obj = tensor_many([p.object(key), fiber_object], p.variant)
        action = action_from_function(
            obj,
            key.aut,
            lambda sigma, k=key, act=fiber_action: tensor_morphisms([p.entry(k)(sigma), act(sigma)], p.variant),
            key.aut_generators,
        )
        quotients.append(groupoid_colimit(action, validate=False))
    total = coproduct([q.object for q in quotients], p.variant)
    return CoinvariantSum(tuple(keys), tuple(quotients), total)


# Attaching data


def _nullary_inner(key: OrbitSignature, vectors: Sequence[Vector]) -> List[Tuple[OrbitSignature, Vector]]:
    return [(OrbitSignature(c, ()), v) for c, v in zip(key.inputs, vectors)]


def plug_nullaries(p: Operad, key: OrbitSignature, label: Label, vectors: Sequence[Vector]) -> Vector:
    """``gamma(p; a_1, ..., a_n)`` for nullary vectors ``a_i``."""
    return p.gamma_vector(key, {label: 1}, _nullary_inner(key, vectors))


@dataclass(frozen=True)
class AttachingSquare:
    """The objects and maps attaching stage ``n`` at one color."""

    color: Color
    n: int
    t: CoinvariantSum
    l: CoinvariantSum
    u: CoinvariantSum
    q_objects: Dict[OrbitSignature, QObject]
    t_to_nullary: BaseMorphism
    t_to_l: BaseMorphism
    l_to_u: BaseMorphism
    r_minus: Pushout
    r_plus: Pushout
    r_minus_to_previous: BaseMorphism
    stage: Pushout

    @property
    def r_map(self) -> BaseMorphism:
        """``R-_n -> R+_n``."""
        return self.r_plus.leg_b


def arity_keys(p: Operad, color: Color, n: int) -> List[OrbitSignature]:
    return [key for key in p.orbits() if key.out_color == color and key.arity == n]


def _power_fiber(objects_of: Callable[[Color], BaseObject], variant):
    return lambda key: _power([objects_of(c) for c in key.inputs], variant)


def attaching_objects(p: Operad, x: OAlgebra, color: Color, n: int):
    """``T``, ``L``, ``U`` and the ``Q`` objects at one color and arity."""
    keys = arity_keys(p, color, n)
    q_objects = {key: q_object(x.basepoints, key) for key in keys}
    t = coinvariant_sum(p, keys, _power_fiber(p.nullary, p.variant))
    l = coinvariant_sum(p, keys, lambda key: (q_objects[key].object, q_objects[key].action))
    u = coinvariant_sum(p, keys, _power_fiber(x.carrier, p.variant))
    return t, l, u, q_objects


def attaching_maps(p: Operad, x: OAlgebra, t: CoinvariantSum, l: CoinvariantSum, u: CoinvariantSum, q_objects, color):
    """``T -> P_0``, ``T -> L`` and ``L -> U``."""
    t_to_nullary = t.descend(
        p.nullary(color), lambda key, label, a: plug_nullaries(p, key, label, [{v: 1} for v in a])
    )

    def empty_subset_class(key, label, a):
        q_class = q_objects[key].class_of((), a)
        return l.class_of(key, {(label, q): c for q, c in q_class.items()})

    def corner(key, label, q):
        image = q_objects[key].map.image_vector(q)
        return u.class_of(key, {(label, xs): c for xs, c in image.items()})

    t_to_l = t.descend(l.object, empty_subset_class)
    l_to_u = l.descend(u.object, corner)
    return t_to_nullary, t_to_l, l_to_u


# Stages


@dataclass(frozen=True, eq=False)
class FiltrationStage:
    """
    Stage ``n`` of the filtration: one object per color and the images
    ``iota(w, r, xs)`` of generators ``r (x) xs`` with ``r in P(w)``,
    ``arity(w) <= n``.
    """

    operad: Operad
    x: OAlgebra
    n: int
    objects: Dict[Color, BaseObject]
    iota: Generator
    previous: Optional["FiltrationStage"] = None
    inclusions: Dict[Color, BaseMorphism] = field(default_factory=dict)
    squares: Dict[Color, AttachingSquare] = field(default_factory=dict)
    augmentation: Optional[Dict[Color, BaseMorphism]] = None
    presentation: Optional[RelativeComposite] = None
    _actions: Dict[tuple, BaseMorphism] = field(default_factory=dict, repr=False)

    def object(self, color: Color) -> BaseObject:
        return self.objects[color]

    def sizes(self) -> Dict[Color, int]:
        return {color: obj.size for color, obj in self.objects.items()}

    def generator_map(self, color: Color, cover: Coproduct, keys: Sequence[OrbitSignature]) -> BaseMorphism:
        """Map out of a coproduct of ``R(w) (x) X^w`` summands given by ``iota``."""
        return from_images(
            cover.object, self.object(color), lambda label: self.iota(keys[label[0]], label[1][0], label[1][1:])
        )

    def unary_action(self, key: OrbitSignature, label: Label) -> BaseMorphism:
        """``r (x) - : stage(c') -> stage(c)`` for ``r in P(c; c')``, out of the presentation of the stage."""
        cache_key = (key, label)
        if cache_key not in self._actions:
            self._actions[cache_key] = self._unary_action(key, label)
        return self._actions[cache_key]

    def _composed(self, key: OrbitSignature, label: Label, inner_key: OrbitSignature, r: Label, xs) -> Vector:
        """``iota`` of ``gamma(label; r) (x) xs``."""
        out_key = OrbitSignature(key.out_color, inner_key.inputs)
        result: Vector = {}
        for composite, coeff in self.operad.gamma(key, label, [(inner_key, r)]).items():
            add_into(result, self.iota(out_key, composite, tuple(xs)), coeff)
        return result

    def _unary_action(self, key: OrbitSignature, label: Label) -> BaseMorphism:
        inner_color, color = key.inputs[0], key.out_color
        source, target = self.object(inner_color), self.object(color)
        if self.n == 0:
            nullary = OrbitSignature(inner_color, ())
            return from_images(source, target, lambda a: self.operad.gamma(key, label, [(nullary, a)]))
        if self.presentation is not None:
            keys = self.presentation.orbits[inner_color]
            on_cover = from_images(
                self.presentation.covers[inner_color].object,
                target,
                lambda z: self._composed(key, label, keys[z[0]], z[1][0], z[1][1:]),
            )
            return self.presentation.quotients[inner_color].descend(on_cover, check=True)
        square = self.squares[inner_color]
        from_previous = compose(self.inclusions[color], self.previous.unary_action(key, label))
        from_top = square.u.descend(target, lambda u_key, r, xs: self._composed(key, label, u_key, r, xs))
        from_r_plus = square.r_plus.induced(compose(from_previous, square.r_minus_to_previous), from_top, check=True)
        return square.stage.induced(from_previous, from_r_plus, check=True)

    def as_algebra(self) -> Algebra:
        """The stage as a ``P_{<=1}``-algebra."""
        skeleton_operad = one_skeleton(self.operad)

        def action_fn(key: OrbitSignature, label: Label, xs: Tuple[Label, ...]) -> Vector:
            if key.arity == 0:
                return self.iota(key, label, ())
            return self.unary_action(key, label).image_vector(xs[0])

        return Algebra(skeleton_operad, dict(self.objects), action_fn, name=f"{self.x.name}[{self.n}]")


def _stage_zero(p: Operad, x: OAlgebra) -> FiltrationStage:
    objects = {color: p.nullary(color) for color in p.colors}

    def iota(key, r, xs):
        if key.arity:
            raise StructureMismatch(f"Stage 0 has no generators of arity {key.arity}")
        return {r: 1}

    augmentation = {color: identity(obj) for color, obj in objects.items()} if x.augmented else None
    return FiltrationStage(p, x, 0, objects, iota, augmentation=augmentation)


def _stage_one(p: Operad, x: OAlgebra, previous: FiltrationStage) -> FiltrationStage:
    composite = free_algebra_stage_oracle(p, x, 1)
    objects = {color: composite.object(color) for color in p.colors}

    def iota(key, r, xs):
        return composite.class_of(key, {(r,) + tuple(xs): 1})

    inclusions = {
        color: from_images(p.nullary(color), objects[color], lambda a, c=color: iota(OrbitSignature(c, ()), a, ()))
        for color in p.colors
    }
    augmentation = None
    if x.augmented:
        augmentation = {}
        for color in p.colors:
            keys = composite.orbits[color]
            on_cover = from_images(
                composite.covers[color].object,
                p.nullary(color),
                lambda label, ks=keys: plug_nullaries(
                    p,
                    ks[label[0]],
                    label[1][0],
                    [x.augmentation[c].image_vector(v) for c, v in zip(ks[label[0]].inputs, label[1][1:])],
                ),
            )
            augmentation[color] = composite.quotients[color].descend(on_cover, check=True)
    return FiltrationStage(
        p, x, 1, objects, iota, previous, inclusions, augmentation=augmentation, presentation=composite
    )


def _square(p: Operad, x: OAlgebra, previous: FiltrationStage, color: Color, n: int) -> AttachingSquare:
    t, l, u, q_objects = attaching_objects(p, x, color, n)
    t_to_nullary, t_to_l, l_to_u = attaching_maps(p, x, t, l, u, q_objects, color)
    r_minus = pushout(t_to_nullary, t_to_l)
    r_plus = pushout(r_minus.leg_c, l_to_u)
    nullary_to_previous = from_images(
        p.nullary(color), previous.object(color), lambda a: previous.iota(OrbitSignature(color, ()), a, ())
    )

    def l_to_previous(key, label, q):
        subset = q_objects[key].subset_of(q)
        t_values = q[1]
        inner = []
        for j, c in enumerate(key.inputs):
            if j in subset:
                inner.append((p.unit_key(c), p.units[c]))
            else:
                inner.append((OrbitSignature(c, ()), {t_values[j]: 1}))
        composite = p.gamma_vector(key, {label: 1}, inner)
        reduced = remove_slots(key, [j for j in range(key.arity) if j not in subset])
        remaining = tuple(t_values[j] for j in subset)
        result: Vector = {}
        for r, coeff in composite.items():
            add_into(result, previous.iota(reduced, r, remaining), coeff)
        return result

    l_map = l.descend(previous.object(color), l_to_previous)
    r_minus_to_previous = r_minus.induced(nullary_to_previous, l_map, check=True)
    stage = pushout(r_minus_to_previous, r_plus.leg_b)
    return AttachingSquare(
        color, n, t, l, u, q_objects, t_to_nullary, t_to_l, l_to_u, r_minus, r_plus, r_minus_to_previous, stage
    )


def _square_augmentation(p: Operad, x: OAlgebra, square: AttachingSquare, previous: BaseMorphism) -> BaseMorphism:
    color = square.color
    eps = x.augmentation

    def from_l(key, label, q):
        subset, t_values = square.q_objects[key].subset_of(q), q[1]
        vectors = [
            eps[c].image_vector(v) if j in subset else {v: 1} for j, (c, v) in enumerate(zip(key.inputs, t_values))
        ]
        return plug_nullaries(p, key, label, vectors)

    def from_u(key, label, xs):
        return plug_nullaries(p, key, label, [eps[c].image_vector(v) for c, v in zip(key.inputs, xs)])

    nullary = p.nullary(color)
    r_minus_aug = square.r_minus.induced(identity(nullary), square.l.descend(nullary, from_l), check=True)
    r_plus_aug = square.r_plus.induced(r_minus_aug, square.u.descend(nullary, from_u), check=True)
    return square.stage.induced(previous, r_plus_aug, check=True)


def _stage_n(p: Operad, x: OAlgebra, previous: FiltrationStage, n: int) -> FiltrationStage:
    squares = {color: _square(p, x, previous, color, n) for color in p.colors}
    objects = {color: sq.stage.object for color, sq in squares.items()}

    def iota(key, r, xs):
        square = squares[key.out_color]
        if key.arity == n:
            top = square.u.class_of(key, {(r, tuple(xs)): 1})
            return square.stage.leg_c.apply(square.r_plus.leg_c.apply(top))
        return square.stage.leg_b.apply(previous.iota(key, r, xs))

    inclusions = {color: sq.stage.leg_b for color, sq in squares.items()}
    augmentation = None
    if x.augmented:
        augmentation = {
            color: _square_augmentation(p, x, sq, previous.augmentation[color]) for color, sq in squares.items()
        }
    logger.info(f"Stage {n} of {p.name} on {x.name}: {({c: o.size for c, o in objects.items()})}")
    return FiltrationStage(p, x, n, objects, iota, previous, inclusions, squares, augmentation)


def free_algebra_filtration(p: Operad, x: OAlgebra, n: int) -> List[FiltrationStage]:
    """
    Stages ``0 ... n`` of the filtration.

    Raises:
        NonFinitary: If ``P`` is unknown in some arity up to ``n``
        StructureMismatch: If ``x`` is not an algebra under ``P_0``
    """
    if x.operad is not p:
        raise StructureMismatch(f"{x.name} is not an algebra under the nullary operations of {p.name}")
    if p.truncated and n > p.declared_bound:
        raise NonFinitary(f"Stage {n} needs {p.name} above its known bound {p.declared_bound}")
    stages = [_stage_zero(p, x)]
    if n >= 1:
        stages.append(_stage_one(p, x, stages[0]))
    for k in range(2, n + 1):
        stages.append(_stage_n(p, x, stages[-1], k))
    return stages


def free_algebra_stage(p: Operad, x: OAlgebra, n: int) -> FiltrationStage:
    """Stage ``n`` built by pushouts from the lower stages."""
    return free_algebra_filtration(p, x, n)[-1]


def augmentation_failure(stage: FiltrationStage) -> Optional[str]:
    """
    None when the augmentation of ``stage`` extends the one of the previous
    stage, sends each generator ``r`` of arity 0 to ``r`` and commutes with
    the unary operations.

    Raises:
        StructureMismatch: If ``stage`` carries no augmentation
    """
    if stage.augmentation is None:
        raise StructureMismatch(f"Stage {stage.n} of {stage.x.name} is not augmented")
    root = stage
    while root.previous is not None:
        root = root.previous
    p, eps = stage.operad, stage.augmentation
    for color in p.colors:
        if stage.previous is not None:
            found = morphisms_equal(compose(eps[color], stage.inclusions[color]), stage.previous.augmentation[color])
            if found is not None:
                return f"{color}: does not extend stage {stage.n - 1} at {found[0]!r}"
        nullary = OrbitSignature(color, ())
        for r in p.labels(nullary):
            image = eps[color].apply(stage.iota(nullary, r, ()))
            if image != {r: 1}:
                return f"{color}: sends {r!r} to {image}"
    for key in p.orbits():
        if key.arity != 1:
            continue
        for label in p.labels(key):
            left = compose(eps[key.out_color], stage.unary_action(key, label))
            right = compose(root.unary_action(key, label), eps[key.inputs[0]])
            found = morphisms_equal(left, right)
            if found is not None:
                return f"{label!r} at {key}: {found[1]} and {found[2]} at {found[0]!r}"
    return None


# Oracle comparison


@dataclass(frozen=True)
class OracleComparison:
    oracle: RelativeComposite
    maps: Dict[Color, BaseMorphism]
    failures: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def compare_with_oracle(stage: FiltrationStage, oracle_arity: Optional[int] = None) -> OracleComparison:
    """
    Descend the generator map from the relative composite of ``P_{<=n}`` to
    the stage and test that it is an isomorphism, per color.

    ``oracle_arity`` replaces ``n`` on the oracle side.
    """
    arity = stage.n if oracle_arity is None else oracle_arity
    oracle = free_algebra_stage_oracle(stage.operad, stage.x, arity)
    maps, failures = {}, []
    for color in stage.operad.colors:
        on_cover = stage.generator_map(color, oracle.covers[color], oracle.orbits[color])
        try:
            comparison = oracle.quotients[color].descend(on_cover, check=True)
        except StructureMismatch as e:
            failures.append(f"{color}: generator map is not well defined ({e})")
            continue
        maps[color] = comparison
        if not is_isomorphism(comparison):
            failures.append(
                f"{color}: stage {stage.n} has size {stage.object(color).size}, oracle {oracle.object(color).size}"
            )
    return OracleComparison(oracle, maps, tuple(failures))
