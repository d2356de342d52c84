"""Unit tests for enveloping operads."""

import pytest

from operadkit.algmod import (
    algebra_under,
    algebras_agree,
    check_algebra,
    cyclic_monoid,
    enveloping_category,
    enveloping_operad,
    functor_to_module,
    initial_algebra,
    module_from_algebra,
    module_to_functor,
    modules_agree,
    tautological_algebra,
)
from operadkit.basecat import is_isomorphism
from operadkit.errors import NonFinitary, StructureMismatch
from operadkit.operads import ass, check_operad, com, mcom
from operadkit.symseq import OrbitSignature, sequences_isomorphic, skeleton


class TestEnvelope:
    """``P^A`` for library operads and algebras."""

    @pytest.mark.parametrize("factory", [lambda: com(3), lambda: ass(3), lambda: mcom(2)])
    def test_envelope_of_initial_algebra(self, factory):
        p = factory()
        bound = min(3, p.declared_bound)
        envelope = enveloping_operad(p, initial_algebra(p), bound)
        assert sequences_isomorphic(envelope.result.sequence, skeleton(p.sequence, bound), bound) is None
        assert all(is_isomorphism(m) for m in envelope.unit_map().components.values())

    def test_commutative_envelope_is_the_monoid(self):
        p = com(3)
        assert enveloping_category(p, cyclic_monoid(p, 2)).hom_sizes() == {"c->c": 2}

    def test_associative_envelope_has_both_sides(self):
        p = ass(3)
        assert enveloping_category(p, cyclic_monoid(p, 2)).hom_sizes() == {"c->c": 4}

    def test_envelope_is_an_operad(self):
        p = com(3)
        envelope = enveloping_operad(p, cyclic_monoid(p, 2), 2)
        assert envelope.bound == 2
        assert check_operad(envelope.result).passed

    def test_tautological_algebra_restricts_to_a(self):
        p = com(3)
        alg = cyclic_monoid(p, 2)
        envelope = enveloping_operad(p, alg)
        tautological = tautological_algebra(envelope)
        assert check_algebra(tautological, 2).passed
        restricted, _ = algebra_under(envelope, tautological)
        assert algebras_agree(restricted, alg) is None

    def test_modules_are_functors(self):
        p = com(3)
        alg = cyclic_monoid(p, 2)
        envelope = enveloping_operad(p, alg, bound=1)
        module = module_from_algebra(alg)
        functor = module_to_functor(envelope, module)
        assert check_algebra(functor).passed
        assert modules_agree(functor_to_module(envelope, functor), module) is None

    def test_algebra_over_another_operad_rejected(self):
        alg = cyclic_monoid(com(3), 2)
        with pytest.raises(StructureMismatch):
            enveloping_operad(com(3), alg)

    def test_bound_must_reach_arity_one(self):
        p = com(3)
        with pytest.raises(StructureMismatch):
            enveloping_operad(p, cyclic_monoid(p, 2), bound=0)


class TestEnvelopeComposites:
    """Composites whose extra inputs run past the arity bound of ``P``."""

    @pytest.mark.parametrize("order", [2, 3])
    def test_commutative_envelope_is_an_operad(self, order):
        p = com(3)
        envelope = enveloping_operad(p, cyclic_monoid(p, order), 2)
        assert check_operad(envelope.result).passed

    @pytest.mark.parametrize("order", [2, 3])
    def test_associative_category_is_an_operad(self, order):
        p = ass(3)
        envelope = enveloping_operad(p, cyclic_monoid(p, order), 1)
        assert check_operad(envelope.result).passed

    @pytest.mark.parametrize("factory,order,bound", [(com, 2, 2), (com, 3, 2), (ass, 2, 1), (ass, 3, 1)])
    def test_tautological_algebra(self, factory, order, bound):
        p = factory(3)
        alg = cyclic_monoid(p, order)
        envelope = enveloping_operad(p, alg)
        tautological = tautological_algebra(envelope)
        assert check_algebra(tautological, bound).passed
        restricted, _ = algebra_under(envelope, tautological)
        assert algebras_agree(restricted, alg) is None

    def test_extra_inputs_are_absorbed(self):
        p = com(3)
        envelope = enveloping_operad(p, cyclic_monoid(p, 2), 1)
        key = OrbitSignature("c", ("c",))
        # * (x) (1, 1, 1) at arity 1 reduces to * (x) 1
        assert envelope.class_of(key, ("c", "c", "c"), {"*": 1}, (1, 1, 1)) == envelope.class_of(
            key, ("c",), {"*": 1}, (1,)
        )
        # a trailing 0 is the unit acting
        assert envelope.class_of(key, ("c", "c", "c"), {"*": 1}, (1, 1, 0)) == envelope.class_of(
            key, (), {"*": 1}, ()
        )

    def test_widened_operad_keeps_labels(self):
        p = ass(3)
        wide = p.widened(5)
        assert wide.declared_bound == 5
        assert p.widened(5) is wide
        assert p.widened(2) is p
        key = OrbitSignature("c", ("c", "c"))
        assert wide.labels(key) == p.labels(key)

    def test_unreachable_class_is_reported(self):
        p = ass(3)
        envelope = enveloping_operad(p, cyclic_monoid(p, 2), 2)
        one = OrbitSignature("c", ("c",))
        two = OrbitSignature("c", ("c", "c"))
        # the word a x b with a = b = 1
        (sandwich,) = envelope.class_of(one, ("c", "c"), {(1, 0, 2): 1}, (1, 1))
        (binary,) = envelope.class_of(two, (), {(0, 1): 1}, ())
        with pytest.raises(NonFinitary):
            envelope.result.gamma(two, binary, [(one, sandwich), (one, sandwich)])
