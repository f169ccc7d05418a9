import random


from eisencf.exact import (
    EisensteinInt,
    F_ZERO,
    FieldElement,
    MINUS_ZETA,
    ZETA_BAR,
    embed,
    j_element,
)
from eisencf.hexdomain import (
    Membership,
    floor_J,
    floor_J_candidates,
    floor_J_float,
    from_lattice,
    in_U,
    in_U_float,
    lattice_coords,
)


def rand_field(rng, bound=1000):
    return FieldElement(rng.randint(-bound, bound), rng.randint(-bound, bound),
                        rng.randint(1, bound))


class TestBoundaryConvention:
    def test_kept_vertices(self):
        assert in_U(ZETA_BAR)
        assert in_U(MINUS_ZETA)

    def test_excluded_vertices(self):
        for z in (FieldElement(1, 0), FieldElement(-1, 0),
                  FieldElement(1, 1, 2), FieldElement(-1, 1, 2)):
            assert not in_U(z)

    def test_interior(self):
        assert in_U(F_ZERO)
        assert in_U(FieldElement(1, 1, 4))

    def test_top_edge_open_ends(self):
        assert in_U(FieldElement(0, 1, 2))          # midpoint of the top edge
        assert in_U(FieldElement(9, 10, 20))
        assert not in_U(FieldElement(-1, 1, 2))     # left end excluded
        # bottom edge is not part of U away from the kept vertices
        assert not in_U(FieldElement(0, -1, 2))

    def test_kept_slanted_edges(self):
        # x - y = 1 with -1/2 <= y < 0
        assert in_U(FieldElement(3, -1, 4))         # 3/4 - 1/4 r
        assert not in_U(FieldElement(1, 0))          # endpoint y = 0 excluded
        # x + y = -1 with -1/2 <= y < 0
        assert in_U(FieldElement(-3, -1, 4))
        # the opposite slanted edges are excluded
        assert not in_U(FieldElement(-3, 1, 4))
        assert not in_U(FieldElement(3, 1, 4))

    def test_abs_bound_on_u(self):
        rng = random.Random(11)
        seen_eq = 0
        for _ in range(4000):
            z = rand_field(rng)
            if not in_U(z):
                continue
            s = z.abs_sq()
            assert s <= 1
            if s == 1:
                seen_eq += 1
                assert z in (MINUS_ZETA, ZETA_BAR)
        assert in_U(MINUS_ZETA) and MINUS_ZETA.abs_sq() == 1


class TestFloorExamples:
    def test_zero(self):
        assert floor_J(F_ZERO) == EisensteinInt(0, 0)

    def test_two(self):
        # 2 - eta = conj(zeta) is in U while 2 - 3 = -1 and 2 - conj(eta)
        # = zeta are not
        assert floor_J(FieldElement(2, 0)) == EisensteinInt(1, 1)

    def test_five_halves(self):
        assert floor_J(FieldElement(5, 0, 2)) == EisensteinInt(3, 0)

    def test_lattice_points_fix_themselves(self):
        rng = random.Random(12)
        for _ in range(100):
            alpha = j_element(rng.randint(-20, 20), rng.randint(-20, 20))
            assert floor_J(embed(alpha)) == alpha


class TestTiling:
    def test_unique_representative(self):
        rng = random.Random(13)
        for _ in range(20000):
            z = rand_field(rng)
            cands = floor_J_candidates(z)
            assert len(cands) == 1, str(z)
            assert in_U(z - embed(cands[0]))

    def test_equivariance(self):
        rng = random.Random(14)
        for _ in range(500):
            z = rand_field(rng)
            alpha = j_element(rng.randint(-5, 5), rng.randint(-5, 5))
            assert floor_J(z + embed(alpha)) == floor_J(z) + alpha

    def test_voronoi_minimality_in_interior(self):
        # points of the open hexagon round to 0 and are norm-minimal among
        # the 9 candidates
        rng = random.Random(15)
        checked = 0
        while checked < 300:
            z = rand_field(rng, 500)
            if not (abs(2 * z.b) < z.c and abs(z.a + z.b) < z.c
                    and abs(z.a - z.b) < z.c):
                continue
            checked += 1
            assert floor_J(z) == EisensteinInt(0, 0)
            base = z.abs_sq()
            for dm in (-1, 0, 1):
                for dn in (-1, 0, 1):
                    if dm == dn == 0:
                        continue
                    other = (z - embed(j_element(dm, dn))).abs_sq()
                    assert base <= other


class TestLatticeCoords:
    def test_roundtrip(self):
        rng = random.Random(16)
        for _ in range(300):
            z = rand_field(rng)
            m, n = lattice_coords(z)
            assert from_lattice(m, n) == z

    def test_basis(self):
        assert from_lattice(1, 0) == embed(EisensteinInt(1, 1))
        assert from_lattice(0, 1) == embed(EisensteinInt(-1, 2))


class TestFloatPath:
    def test_membership_bands(self):
        assert in_U_float(complex(0, 0)) is Membership.INSIDE
        assert in_U_float(complex(2, 0)) is Membership.OUTSIDE
        assert in_U_float(complex(0.25, 0.8660254037844386)) is Membership.BOUNDARY
        # far outside but near a constraint-line extension is still outside
        assert in_U_float(complex(5.0, 0.8660254)) is Membership.OUTSIDE

    def test_floor_float_matches_exact(self):
        rng = random.Random(17)
        for _ in range(2000):
            z = rand_field(rng, 400)
            fl = floor_J_float(z.approx())
            if fl is None:
                continue
            assert fl == floor_J(z)

    def test_floor_float_band(self):
        assert floor_J_float(complex(1.0, 0.0)) is None
