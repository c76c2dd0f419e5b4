from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gkz_mgm import NotSublattice, RankMismatch
from gkz_mgm.lattice import (
    Lattice,
    coset_representatives,
    determinant,
    hnf_rows,
    integer_kernel,
    lattice_index,
    matmul,
    rank,
    shifted_lattice_meet_subspace,
    smith_normal_form,
    solve_integer,
)
from gkz_mgm import lp
from oracles import adjugate_inverse

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


class TestSmithNormalForm:
    def test_diag_2_3(self):
        D, U, V = smith_normal_form([[2, 0], [0, 3]])
        assert D == ((1, 0), (0, 6))

    def test_identity(self):
        D, _, _ = smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert D == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_one_by_one(self):
        assert smith_normal_form([[2]])[0] == ((2,),)

    @settings(max_examples=150, deadline=None)
    @given(matrices())
    def test_transforms_reconstruct(self, M):
        D, U, V = smith_normal_form(M)
        assert [list(r) for r in matmul(matmul(U, M), V)] == [list(r) for r in D]
        assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
        # U^-1 D V^-1 = M with exact adjugate inverses
        Ui, Vi = adjugate_inverse(U), adjugate_inverse(V)
        back = matmul(matmul(Ui, D), Vi)
        assert [[Fraction(x) for x in r] for r in back] == [[Fraction(x) for x in r] for r in M]
        diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
        assert all(x >= 0 for x in diag)
        for i in range(len(D)):
            for j in range(len(D[0])):
                if i != j:
                    assert D[i][j] == 0
        nz = [x for x in diag if x]
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))

    @settings(max_examples=60, deadline=None)
    @given(matrices(3, 3))
    def test_invariant_factors_match_sympy(self, M):
        from sympy.matrices.normalforms import smith_normal_form as sympy_snf

        D, _, _ = smith_normal_form(M)
        S = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
        ours = sorted(abs(D[i][i]) for i in range(min(len(D), len(D[0]))))
        theirs = sorted(abs(int(S[i, i])) for i in range(min(S.shape)))
        assert ours == theirs


class TestDeterminantAndRank:
    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_determinant_matches_sympy(self, M):
        assert determinant(M) == sympy.Matrix(M).det()

    @settings(max_examples=80, deadline=None)
    @given(matrices())
    def test_rank_matches_sympy(self, M):
        assert rank(M) == sympy.Matrix(M).rank()


class TestHermite:
    def test_canonical(self):
        a = Lattice.from_generators([(2, 0), (0, 2)], 2)
        b = Lattice.from_generators([(2, 2), (0, 2), (4, 6)], 2)
        assert a == b

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=5), st.randoms())
    def test_invariant_under_unimodular_changes(self, gens, rnd):
        L = Lattice.from_generators(gens, 3)
        mixed = [list(g) for g in gens]
        for _ in range(6):
            i, j = rnd.randrange(len(mixed)), rnd.randrange(len(mixed))
            if i != j:
                c = rnd.randint(-3, 3)
                mixed[i] = [x + c * y for x, y in zip(mixed[i], mixed[j])]
        rnd.shuffle(mixed)
        assert Lattice.from_generators(mixed, 3) == L
        assert all(L.contains(g) for g in gens)

    def test_echelon_shape(self):
        H = hnf_rows([(3, 1), (1, 2)])
        assert H == [(1, 2), (0, 5)]


class TestKernelAndSolve:
    @settings(max_examples=100, deadline=None)
    @given(matrices(3, 5))
    def test_kernel(self, M):
        ker = integer_kernel(M)
        n = len(M[0])
        assert len(ker) == n - rank(M)
        for v in ker:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)

    @settings(max_examples=100, deadline=None)
    @given(matrices(3, 4), st.lists(small_ints, min_size=4, max_size=4))
    def test_solve_integer_finds_image_points(self, M, x):
        n = len(M[0])
        x = x[:n]
        b = [sum(a * y for a, y in zip(row, x)) for row in M]
        z = solve_integer(M, b)
        assert z is not None
        assert [sum(a * y for a, y in zip(row, z)) for row in M] == b

    def test_solve_integer_detects_no_solution(self):
        assert solve_integer([[2, 4]], [3]) is None


class TestIndexAndCosets:
    def test_index_examples(self):
        Z2 = Lattice.standard(2)
        assert lattice_index(Lattice.from_generators([(0, 2)], 2), Lattice.from_generators([(0, 1)], 2)) == 2
        assert lattice_index(Z2, Z2) == 1
        assert lattice_index(Lattice.from_generators([(3, -2), (1, 2)], 2), Z2) == 8

    def test_coset_examples(self):
        Z2 = Lattice.standard(2)
        assert coset_representatives(Lattice.from_generators([(0, 2)], 2), Lattice.from_generators([(0, 1)], 2)) == [
            (0, 0),
            (0, 1),
        ]
        assert coset_representatives(Z2, Z2) == [(0, 0)]
        assert coset_representatives(Lattice.from_generators([(2, 0), (0, 2)], 2), Z2) == [
            (0, 0),
            (0, 1),
            (1, 0),
            (1, 1),
        ]

    def test_errors(self):
        with pytest.raises(NotSublattice):
            lattice_index(Lattice.standard(2), Lattice.from_generators([(2, 0), (0, 2)], 2))
        with pytest.raises(RankMismatch):
            lattice_index(Lattice.from_generators([(1, 0)], 2), Lattice.standard(2))

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.lists(small_ints, min_size=2, max_size=2), min_size=2, max_size=4))
    def test_reps_are_distinct_and_complete(self, gens):
        if rank(gens) < 2:
            return
        sub = Lattice.from_generators(gens, 2)
        sup = Lattice.standard(2)
        reps = coset_representatives(sub, sup)
        assert reps == sorted(reps)
        assert len(reps) == lattice_index(sub, sup) == abs(determinant(list(sub.basis)))
        for a, b in product(reps, reps):
            if a != b:
                assert not sub.contains(tuple(x - y for x, y in zip(a, b)))


class TestShiftedMeet:
    def test_examples(self):
        lam, L = shifted_lattice_meet_subspace((-1, Fraction(-1, 2)), [(2, 3)])
        assert lam == (Fraction(1), Fraction(3, 2))
        assert L == Lattice.from_generators([(2, 3)], 2)
        lam, _ = shifted_lattice_meet_subspace((3, -4), [(2, 3)])
        assert lam == (0, 0)
        assert shifted_lattice_meet_subspace((-1, Fraction(-1, 2)), []) is None

    def test_small_box_oracle(self):
        rng = random.Random(7)
        for _ in range(150):
            d = rng.randint(1, 3)
            k = rng.randint(0, d)
            B = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(k)]
            beta = tuple(Fraction(rng.randint(-4, 4), rng.choice([1, 2, 3])) for _ in range(d))
            got = shifted_lattice_meet_subspace(beta, B)
            N = 4
            found = None
            for z in product(range(-N, N + 1), repeat=d):
                p = tuple(b + zi for b, zi in zip(beta, z))
                if rank(B + [list(p)] if B else [list(p)]) == (rank(B) if B else 0):
                    found = p
                    break
            if found is not None:
                assert got is not None
                lam, L = got
                assert all((a - b).denominator == 1 for a, b in zip(lam, beta))
                # λ0 lies in the span and differs from the scanned point by an element of L
                assert L.contains(tuple(a - b for a, b in zip(found, lam)))
            elif got is not None:
                lam, _ = got
                # a solution exists but outside the scanned window
                assert max(abs(a - b) for a, b in zip(lam, beta)) > N


class TestLP:
    def test_simple_max(self):
        r = lp.maximize([1, 1], [[1, 2]], [4])
        assert r.status == lp.OPTIMAL and r.value == 4

    def test_infeasible(self):
        assert lp.solve(1, eq=[((1,), -1)]).status == lp.INFEASIBLE

    def test_unbounded(self):
        assert lp.solve(2, objective=[1, 0], le=[((1, -1), 1)]).status == lp.UNBOUNDED

    def test_free_variables(self):
        x = lp.feasible_point(2, ge=[((1, 0), 1), ((1, 1), 1), ((1, 2), 1)], free=[0, 1])
        assert x is not None and x[0] >= 1 and x[0] + x[1] >= 1 and x[0] + 2 * x[1] >= 1

    def test_redundant_rows(self):
        r = lp.maximize([1, 0], [[1, 1], [2, 2]], [3, 6])
        assert r.status == lp.OPTIMAL and r.value == 3

    def test_random_against_vertex_enumeration(self):
        rng = random.Random(3)
        for _ in range(100):
            A = [[rng.randint(-2, 3) for _ in range(3)] for _ in range(2)]
            b = [rng.randint(0, 6) for _ in range(2)]
            c = [rng.randint(-2, 2) for _ in range(3)]
            # maximise c.x over {Ax <= b, 0 <= x <= 5} by brute force over basic solutions
            res = lp.solve(3, objective=c, le=[(row, bi) for row, bi in zip(A, b)] + [((1, 0, 0), 5), ((0, 1, 0), 5), ((0, 0, 1), 5)])
            assert res.status == lp.OPTIMAL
            x = res.x
            assert all(v >= 0 for v in x) and all(sum(a * v for a, v in zip(row, x)) <= bi for row, bi in zip(A, b))
            best = None
            rows = [(list(r), Fraction(bi)) for r, bi in zip(A, b)] + [
                ([int(i == j) for j in range(3)], Fraction(5)) for i in range(3)
            ] + [([-int(i == j) for j in range(3)], Fraction(0)) for i in range(3)]
            from itertools import combinations

            for trio in combinations(rows, 3):
                M = sympy.Matrix([t[0] for t in trio])
                if M.det() == 0:
                    continue
                sol = M.solve(sympy.Matrix([t[1] for t in trio]))
                p = [Fraction(int(s.p), int(s.q)) for s in sol]
                if all(sum(a * v for a, v in zip(r, p)) <= bb for r, bb in rows):
                    val = sum(ci * pi for ci, pi in zip(c, p))
                    best = val if best is None else max(best, val)
            assert best == res.value
