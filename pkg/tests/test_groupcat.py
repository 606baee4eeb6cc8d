import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eulerstack.errors import (
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotASubgroup,
    NotAssociative,
    NotClosed,
    UndefinedWeight,
    UnsupportedGroup,
)
from eulerstack.groupcat import (
    GL,
    INFINITY,
    TRIVIAL,
    GroupHom,
    Product,
    Torus,
    Unipotent,
    UserTable,
    Weight,
    all_homs,
    conjugacy_classes,
    cyclic,
    dihedral,
    direct_product,
    double_cosets,
    euler_char_group,
    finite,
    finite_group_from_table,
    finite_view,
    finite_weight,
    gl,
    hom_kernel_quotient,
    normalize,
    orbifold_weight,
    perm_group,
    product,
    quaternion,
    symmetric,
    torus,
    trivial_group,
    unipotent,
    weight_value,
)
from strategies import gens, small_groups, tiny_groups


# -- independent oracles ---------------------------------------------------


def brute_assoc_failure(table):
    n = len(table)
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            return (a, b, c)
    return None


def brute_conjugation_orbits(g):
    """Union-find over x ~ h x h^-1, computed from the raw table."""
    t = g.table
    n = g.order
    inv = [next(b for b in range(n) if t[a][b] == g.identity) for a in range(n)]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for h in range(n):
        for x in range(n):
            y = t[t[h][x]][inv[h]]
            parent[find(x)] = find(y)
    classes = {}
    for x in range(n):
        classes.setdefault(find(x), set()).add(x)
    return sorted(len(c) for c in classes.values())


def point_count_at_one(coeffs):
    """Evaluate a polynomial in q (coefficient list, constant first) at q = 1."""
    return sum(coeffs)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def gl_point_count(n):
    """|GL_n(F_q)| = prod_{i<n} (q^n - q^i) as a polynomial in q."""
    poly = [1]
    for i in range(n):
        factor = [0] * (n + 1)
        factor[n] += 1
        factor[i] -= 1
        poly = poly_mul(poly, factor)
    return poly


def brute_homs(src, tgt):
    out = []
    for images in itertools.product(range(tgt.order), repeat=src.order):
        if all(images[src.table[x][y]] == tgt.table[images[x]][images[y]] for x in range(src.order) for y in range(src.order)):
            out.append(images)
    return sorted(out)


# -- finite_group_from_table ---------------------------------------------------


def test_trivial_table():
    g = finite_group_from_table(["e"], [[0]])
    assert g.order == 1 and g.identity == 0


def test_z2_table():
    g = finite_group_from_table(["e", "a"], [[0, 1], [1, 0]])
    assert g.order == 2
    assert g.inv(1) == 1


NON_ASSOC = [[0, 1, 2], [1, 0, 0], [2, 0, 0]]


def test_non_associative_table_is_rejected():
    assert brute_assoc_failure(NON_ASSOC) is not None
    with pytest.raises(NotAssociative):
        finite_group_from_table(["e", "a", "b"], NON_ASSOC)


def test_not_closed():
    with pytest.raises(NotClosed):
        finite_group_from_table(["e", "a"], [[0, 1], [1, 2]])
    with pytest.raises(NotClosed):
        finite_group_from_table(["e", "a"], [[0, 1]])


def test_no_identity():
    # constant table: associative, but nothing acts as an identity
    with pytest.raises(NoIdentity):
        finite_group_from_table(["x", "y"], [[0, 0], [0, 0]])


def test_no_inverse():
    # the monoid {1, 0} under multiplication
    with pytest.raises(NoInverse):
        finite_group_from_table(["1", "0"], [[0, 1], [1, 1]])


def test_duplicate_labels():
    with pytest.raises(ValueError):
        finite_group_from_table(["e", "e"], [[0, 1], [1, 0]])


@given(small_groups)
def test_named_groups_pass_full_validation(g):
    h = finite_group_from_table(g.labels, g.table)
    assert h == g


def test_named_group_orders():
    assert [cyclic(n).order for n in range(1, 7)] == [1, 2, 3, 4, 5, 6]
    assert dihedral(4).order == 8 and not dihedral(4).is_abelian
    assert symmetric(4).order == 24
    assert quaternion().order == 8
    assert sorted(quaternion().element_orders) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert perm_group([(1, 0, 2), (1, 2, 0)]).order == 6


# -- conjugacy classes -------------------------------------------------------


def test_classes_trivial():
    assert conjugacy_classes(trivial_group()) == [frozenset({0})]


def test_classes_z4():
    assert sorted(map(len, conjugacy_classes(cyclic(4)))) == [1, 1, 1, 1]


def test_classes_s3():
    s3 = symmetric(3)
    assert sorted(map(len, conjugacy_classes(s3))) == [1, 2, 3]
    assert brute_conjugation_orbits(s3) == [1, 2, 3]


@given(small_groups)
def test_classes_partition_and_match_oracle(g):
    cls = conjugacy_classes(g)
    assert sorted(x for c in cls for x in c) == list(range(g.order))
    assert sorted(map(len, cls)) == brute_conjugation_orbits(g)


# -- e and o ------------------------------------------------------------------


def test_e_examples():
    assert euler_char_group(finite(cyclic(2))) == 2
    assert euler_char_group(Torus(1)) == 0
    assert euler_char_group(TRIVIAL) == 1


def test_e_unipotent_matches_point_count():
    # as a variety a unipotent group of dim d is affine d-space: q^d points
    for d in range(0, 6):
        assert euler_char_group(unipotent(d)) == point_count_at_one([0] * d + [1])


def test_e_gl_matches_point_count():
    for n in range(0, 5):
        assert euler_char_group(gl(n)) == point_count_at_one(gl_point_count(n))
    assert point_count_at_one(gl_point_count(2)) == 0


def test_o_examples():
    assert orbifold_weight(TRIVIAL) == 1
    assert orbifold_weight(finite(symmetric(3))) == 3
    assert orbifold_weight(Torus(1)) == 0
    assert orbifold_weight(GL(0)) == 1
    with pytest.raises(UnsupportedGroup):
        orbifold_weight(GL(2))
    with pytest.raises(UnsupportedGroup):
        orbifold_weight(product(finite(cyclic(2)), gl(1)))


@given(small_groups)
def test_o_counts_conjugation_orbits(g):
    assert orbifold_weight(finite(g)) == len(brute_conjugation_orbits(g))
    if g.is_abelian:
        assert orbifold_weight(finite(g)) == g.order


@given(gens)
def test_e_o_multiplicative(gen):
    a, b = gen.symbolic_group(), gen.symbolic_group()
    assert euler_char_group(product(a, b)) == euler_char_group(a) * euler_char_group(b)
    try:
        oa, ob = orbifold_weight(a), orbifold_weight(b)
    except UnsupportedGroup:
        return
    assert orbifold_weight(product(a, b)) == oa * ob


@given(small_groups, small_groups)
def test_multiplicative_against_tabulated_product(a, b):
    ab = direct_product(a, b)
    assert euler_char_group(finite(ab)) == euler_char_group(product(finite(a), finite(b)))
    if a.order * b.order <= 96:
        assert len(brute_conjugation_orbits(ab)) == orbifold_weight(product(finite(a), finite(b)))


def test_normalization():
    assert torus(0) == TRIVIAL and unipotent(0) == TRIVIAL and gl(0) == TRIVIAL
    assert finite(trivial_group()) == TRIVIAL
    # factors are rewritten in place, the product structure is kept
    assert normalize(Product((Torus(0), Unipotent(0)))) == Product((TRIVIAL, TRIVIAL))
    assert normalize(Product((Torus(0), GL(2)))) == Product((TRIVIAL, GL(2)))
    assert product(Torus(2)) == Torus(2)
    with pytest.raises(ValueError):
        Product(())
    with pytest.raises(ValueError):
        Torus(-1)


def test_finite_view():
    assert finite_view(Torus(1)) is None
    assert finite_view(TRIVIAL).order == 1
    assert finite_view(product(finite(cyclic(2)), unipotent(0), finite(cyclic(3)))).order == 6
    assert finite_view(product(finite(cyclic(2)), unipotent(1))) is None


# -- weights ---------------------------------------------------------------


def test_weight_values():
    z2 = finite(cyclic(2))
    assert weight_value(Weight.INV_E, z2) == Fraction(1, 2)
    assert weight_value(Weight.INV_E, Torus(1)) is INFINITY
    assert weight_value(Weight.NAIVE, GL(3)) == 1
    assert weight_value(Weight.E, z2) == 2
    assert weight_value(Weight.O, finite(symmetric(3))) == 3
    with pytest.raises(UndefinedWeight):
        finite_weight(Weight.INV_E, Torus(1))
    with pytest.raises(UnsupportedGroup):
        weight_value(Weight.O, GL(1))


def test_weight_parse():
    assert Weight.parse("inv-e") is Weight.INV_E
    assert Weight.parse("INV_E") is Weight.INV_E
    with pytest.raises(ValueError):
        Weight.parse("nope")


def test_user_table():
    w = UserTable({TRIVIAL: 1, Torus(1): INFINITY})
    assert weight_value(w, TRIVIAL) == 1
    assert weight_value(w, Torus(1)) is INFINITY
    with pytest.raises(UnsupportedGroup):
        weight_value(w, GL(1))


# -- homomorphisms ------------------------------------------------------------


def test_hom_counts_examples():
    z2, one = cyclic(2), trivial_group()
    assert hom_kernel_quotient(GroupHom.identity(z2)) == (1, 2, 1)
    assert hom_kernel_quotient(GroupHom.trivial(z2, one)) == (2, 1, 1)
    assert hom_kernel_quotient(GroupHom(one, z2, (0,))) == (1, 1, 2)


def test_bad_hom():
    with pytest.raises(NotAHomomorphism):
        GroupHom(cyclic(2), cyclic(3), (0, 1))
    with pytest.raises(NotAHomomorphism):
        GroupHom(cyclic(2), cyclic(2), (1, 0))


@given(tiny_groups, tiny_groups)
def test_all_homs_matches_brute_force(a, b):
    assert sorted(h.images for h in all_homs(a, b)) == brute_homs(a, b)


@given(gens)
def test_hom_count_identities(gen):
    a, b = gen.group(), gen.group()
    h = gen.rng.choice(all_homs(a, b))
    k, i, q = hom_kernel_quotient(h)
    assert k * i == a.order
    assert i * q == b.order


def test_hom_composition():
    s3, z2 = symmetric(3), cyclic(2)
    sign = next(h for h in all_homs(s3, z2) if len(h.image) == 2)
    assert hom_kernel_quotient(sign) == (3, 2, 1)
    assert sign.then(GroupHom.identity(z2)) == sign
    with pytest.raises(NotAHomomorphism):
        sign.then(sign)


# -- double cosets -------------------------------------------------------------


def test_double_coset_examples():
    s3 = symmetric(3)
    one = {s3.identity}
    assert [d.size for d in double_cosets(s3, one, one)] == [1] * 6
    assert [d.size for d in double_cosets(s3, range(6), one)] == [6]
    t = next(x for x in range(6) if s3.element_order(x) == 2)
    sub = {s3.identity, t}
    assert sorted(d.size for d in double_cosets(s3, sub, sub)) == [2, 4]


def test_double_cosets_need_subgroups():
    s3 = symmetric(3)
    with pytest.raises(NotASubgroup):
        double_cosets(s3, {1}, {0})


@given(gens, st.data())
def test_double_coset_sizes(gen, data):
    g = gen.group(16)
    a = g.generated(data.draw(st.lists(st.integers(0, g.order - 1), max_size=2)))
    b = g.generated(data.draw(st.lists(st.integers(0, g.order - 1), max_size=2)))
    dcs = double_cosets(g, a, b)
    assert sum(d.size for d in dcs) == g.order
    for beta, size in dcs:
        conj = {g.mul(g.mul(beta, y), g.inv(beta)) for y in b}
        assert size == len(a) * len(b) // len(a & conj)
