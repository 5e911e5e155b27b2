import random

import pytest

from nilaut.automorphisms import (
    Endomorphism,
    abelianization_matrix,
    apply,
    canonical_symmetry,
    compose,
    endomorphism_from_json,
    endomorphism_to_json,
    identity_endomorphism,
    in_K,
    inner,
    invert_automorphism,
    is_automorphism,
    k_depth,
    lift_matrix,
    reduce_class,
    symmetry_from_automorphism,
)
from nilaut.errors import DomainError, InputError
from nilaut.glz import IntMatrix, random_unimodular
from nilaut.nilgroup import (
    GroupContext,
    from_exponents,
    generator,
    generator_word,
    identity,
    invert,
    multiply,
    parse_element,
    weight,
)
from nilaut.sampling import (
    random_automorphism,
    random_element,
    random_element_of_weight,
    random_ia,
    random_k_member,
    symmetry_sample,
)

CTX22 = GroupContext.get(2, 2)
CTX23 = GroupContext.get(2, 3)
CTX33 = GroupContext.get(3, 3)


def gamma_example(ctx):
    # x1 -> x1 [x2,x1], x2 -> x2 (and fixed remaining generators)
    images = [parse_element(ctx, "x1 [x2,x1]")]
    for j in range(2, ctx.rank + 1):
        images.append(generator(ctx, j))
    return Endomorphism(ctx, images)


def test_apply_examples():
    theta = canonical_symmetry(CTX22)
    assert apply(theta, from_exponents(CTX22, (1, 1, 0))).exponents == (-1, -1, 0)
    g = random_element(CTX22, random.Random(1))
    assert apply(identity_endomorphism(CTX22), g) == g
    central = from_exponents(CTX22, (0, 0, 5))
    assert apply(theta, central) == central
    with pytest.raises(InputError):
        apply(theta, identity(CTX23))


def test_apply_agrees_with_word_substitution():
    rng = random.Random(2)
    for ctx in (CTX22, CTX33):
        for _ in range(10):
            f = random_automorphism(ctx, rng)
            g = random_element(ctx, rng, bound=2)
            sub = identity(ctx)
            for i, s in generator_word(g).letters:
                img = f.images[i - 1]
                sub = multiply(sub, img if s == 1 else invert(img))
            assert sub == apply(f, g)


def test_compose_examples():
    theta = canonical_symmetry(CTX22)
    assert compose(theta, theta) == identity_endomorphism(CTX22)
    f = random_automorphism(CTX22, random.Random(3))
    assert compose(f, identity_endomorphism(CTX22)) == f
    x1 = generator(CTX22, 1)
    x2 = generator(CTX22, 2)
    assert compose(inner(x1), inner(x2)) == inner(multiply(x1, x2))


def test_compose_abelianization_is_product():
    rng = random.Random(4)
    for _ in range(20):
        f = random_automorphism(CTX33, rng)
        g = random_automorphism(CTX33, rng)
        assert abelianization_matrix(compose(f, g)) == abelianization_matrix(
            f
        ) @ abelianization_matrix(g)


def test_abelianization_examples():
    assert abelianization_matrix(canonical_symmetry(CTX22)) == -IntMatrix.identity(2)
    assert abelianization_matrix(inner(generator(CTX22, 1))).is_identity()
    assert abelianization_matrix(gamma_example(CTX22)).is_identity()


def test_is_automorphism():
    doubling = Endomorphism(
        CTX22, (from_exponents(CTX22, (2, 0, 0)), generator(CTX22, 2))
    )
    ok, cert = is_automorphism(doubling)
    assert not ok and cert is None
    ok, cert = is_automorphism(canonical_symmetry(CTX22))
    assert ok and cert.det == 1 and cert.abelianized == -IntMatrix.identity(2)
    ok, cert = is_automorphism(gamma_example(CTX22))
    assert ok and cert.det == 1


def test_invert_automorphism():
    theta = canonical_symmetry(CTX23)
    assert invert_automorphism(theta) == theta
    x1 = generator(CTX23, 1)
    assert invert_automorphism(inner(x1)) == inner(invert(x1))
    gamma = gamma_example(CTX22)
    ginv = invert_automorphism(gamma)
    assert ginv.images[0] == parse_element(CTX22, "x1 [x2,x1]^-1")
    ident = identity_endomorphism(CTX22)
    assert compose(gamma, ginv) == ident and compose(ginv, gamma) == ident
    rng = random.Random(5)
    for ctx in (CTX22, CTX33):
        for _ in range(10):
            f = random_automorphism(ctx, rng)
            finv = invert_automorphism(f)
            one = identity_endomorphism(ctx)
            assert compose(f, finv) == one and compose(finv, f) == one
    with pytest.raises(DomainError):
        invert_automorphism(
            Endomorphism(CTX22, (from_exponents(CTX22, (2, 0, 0)), generator(CTX22, 2)))
        )


def test_in_K_examples():
    assert in_K(inner(generator(CTX22, 1)), 1)
    gamma = gamma_example(CTX22)
    assert not in_K(gamma, 2)
    assert in_K(identity_endomorphism(CTX22), 1)
    assert in_K(identity_endomorphism(CTX22), 2)
    with pytest.raises(InputError):
        in_K(gamma, 3)
    with pytest.raises(InputError):
        in_K(gamma, 0)


def test_k_depth_and_filtration_closure():
    rng = random.Random(6)
    ctx = CTX33
    s = ctx.nilpotency_class
    assert k_depth(identity_endomorphism(ctx)) == s + 1
    for m in (1, 2):
        for _ in range(15):
            f = random_k_member(ctx, rng, m, nontrivial=True)
            g = random_k_member(ctx, rng, m, nontrivial=True)
            assert in_K(f, m) and in_K(g, m)
            assert in_K(compose(f, g), m)
            assert in_K(invert_automorphism(f), m)
            if in_K(f, m) and m > 1:
                assert in_K(f, m - 1)
    f2 = random_k_member(ctx, rng, 2, nontrivial=True)
    assert k_depth(f2) == 2


def test_inner_examples():
    x1 = generator(CTX22, 1)
    assert inner(x1).images[1].exponents == (0, 1, -1)
    assert inner(identity(CTX22)) == identity_endomorphism(CTX22)
    assert inner(from_exponents(CTX22, (0, 0, 1))) == identity_endomorphism(CTX22)
    rng = random.Random(7)
    for ctx in (CTX22, CTX33):
        for _ in range(10):
            g, h = random_element(ctx, rng), random_element(ctx, rng)
            assert compose(inner(g), inner(h)) == inner(multiply(g, h))
            assert (inner(g) == identity_endomorphism(ctx)) == (
                weight(g) >= ctx.nilpotency_class
            )


def test_symmetry_examples():
    theta = canonical_symmetry(CTX22)
    assert compose(theta, theta) == identity_endomorphism(CTX22)
    b = Endomorphism(CTX22, (generator(CTX22, 1), parse_element(CTX22, "x2 x1")))
    sym = symmetry_from_automorphism(b)
    basis2 = parse_element(CTX22, "x2 x1")
    assert apply(sym, basis2) == invert(basis2)
    assert apply(sym, b.images[0]) == invert(b.images[0])
    assert abelianization_matrix(sym) == -IntMatrix.identity(2)
    assert compose(sym, sym) == identity_endomorphism(CTX22)
    rng = random.Random(8)
    for label, t in symmetry_sample(CTX33, rng, conjugates=3, perturbed=2):
        assert abelianization_matrix(t) == -IntMatrix.identity(3)
    with pytest.raises(DomainError):
        symmetry_from_automorphism(
            Endomorphism(CTX22, (from_exponents(CTX22, (2, 0, 0)), generator(CTX22, 2)))
        )


def test_lift_matrix_examples():
    assert lift_matrix(CTX22, IntMatrix.identity(2)) == identity_endomorphism(CTX22)
    d = lift_matrix(CTX22, IntMatrix([[1, 0], [0, -1]]))
    assert d.images[0] == generator(CTX22, 1)
    assert d.images[1] == invert(generator(CTX22, 2))
    assert compose(d, d) == identity_endomorphism(CTX22)
    u = lift_matrix(CTX22, IntMatrix([[1, 1], [0, 1]]))
    assert u.images[0] == generator(CTX22, 1)
    assert u.images[1] == parse_element(CTX22, "x1 x2")
    with pytest.raises(DomainError):
        lift_matrix(CTX22, IntMatrix([[2, 0], [0, 1]]))
    rng = random.Random(9)
    for ctx in (CTX22, CTX33):
        for _ in range(50):
            mat = random_unimodular(rng, ctx.rank)
            assert abelianization_matrix(lift_matrix(ctx, mat)) == mat


def test_reduce_class():
    rng = random.Random(10)
    ctx = CTX23
    tgt = GroupContext.get(2, 2)
    assert reduce_class(canonical_symmetry(ctx)) == canonical_symmetry(tgt)
    assert reduce_class(identity_endomorphism(ctx)) == identity_endomorphism(tgt)
    for _ in range(10):
        f = random_k_member(ctx, rng, ctx.nilpotency_class - 1, nontrivial=True)
        assert reduce_class(f) == identity_endomorphism(tgt)
    for _ in range(10):
        f = random_automorphism(ctx, rng)
        g = random_automorphism(ctx, rng)
        assert reduce_class(compose(f, g)) == compose(reduce_class(f), reduce_class(g))
    # surjectivity witness: reduced lifts recover any reduced automorphism
    for _ in range(10):
        h = random_automorphism(tgt, rng)
        lifted = compose(
            lift_matrix(ctx, abelianization_matrix(h)),
            _lift_ia_from_reduced(ctx, h),
        )
        assert reduce_class(lifted) == h
    with pytest.raises(DomainError):
        reduce_class(canonical_symmetry(GroupContext.get(2, 1)))


def _lift_ia_from_reduced(ctx, h):
    # h composed with the inverse of its abelianized lift is IA in the
    # reduced context; re-read its image exponents inside ctx
    tgt = h.context
    base = lift_matrix(tgt, abelianization_matrix(h))
    resid = compose(invert_automorphism(base), h)
    images = []
    for j in range(ctx.rank):
        exps = [0] * ctx.dim
        exps[: tgt.dim] = resid.images[j].exponents
        images.append(from_exponents(ctx, exps))
    return Endomorphism(ctx, images)


def test_lemma_parity_on_filtration_layers():
    # a symmetry fixes weight-m layers modulo N_{m+1} for even m and inverts
    # them for odd m
    rng = random.Random(11)
    for n, s in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        ctx = GroupContext.get(n, s)
        sample = symmetry_sample(ctx, rng, conjugates=4, perturbed=0)
        for m in range(1, s + 1):
            for _ in range(20):
                _, theta = sample[rng.randrange(len(sample))]
                c = random_element_of_weight(ctx, rng, m)
                sign = -1 if m % 2 == 0 else 1
                residue = multiply(apply(theta, c), power_of(c, sign))
                assert weight(residue) >= m + 1


def power_of(g, k):
    from nilaut.nilgroup import power

    return power(g, k)


def test_lemma_parity_on_kernel_layers():
    rng = random.Random(12)
    for n, s in [(2, 2), (2, 3), (3, 3)]:
        ctx = GroupContext.get(n, s)
        sample = symmetry_sample(ctx, rng, conjugates=4, perturbed=0)
        ident = identity_endomorphism(ctx)
        for m in range(1, s + 1):
            for _ in range(10):
                _, theta = sample[rng.randrange(len(sample))]
                gamma = random_k_member(ctx, rng, m)
                conj = compose(compose(theta, gamma), invert_automorphism(theta))
                tail = gamma if m % 2 == 1 else invert_automorphism(gamma)
                resid = compose(conj, tail)
                if m + 1 <= s:
                    assert in_K(resid, m + 1)
                else:
                    assert resid == ident


def test_ia_commutes_with_kernel_layers_modulo_next():
    rng = random.Random(13)
    ctx = CTX33
    for m in (1, 2):
        for _ in range(20):
            gamma = random_ia(ctx, rng)
            delta = random_k_member(ctx, rng, m)
            comm = compose(
                compose(invert_automorphism(gamma), invert_automorphism(delta)),
                compose(gamma, delta),
            )
            if m + 1 <= ctx.nilpotency_class:
                assert in_K(comm, m + 1)
            else:
                assert comm == identity_endomorphism(ctx)


def test_serialization_roundtrip():
    gamma = gamma_example(CTX22)
    data = endomorphism_to_json(gamma)
    assert data == {"x1": "x1 [x2,x1]", "x2": "x2"}
    assert endomorphism_from_json(CTX22, data) == gamma
    with pytest.raises(InputError):
        endomorphism_from_json(CTX22, {"x1": "x1"})
