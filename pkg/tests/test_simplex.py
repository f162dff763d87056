from fractions import Fraction

from agents.deciders.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, RationalSimplex, maximize


class TestRationalSimplex:
    def test_simple_optimum(self):
        # max x + y  s.t.  x + 2y + s1 = 4,  3x + y + s2 = 6
        result = maximize([[1, 2, 1, 0], [3, 1, 0, 1]], [4, 6], [1, 1, 0, 0])
        assert result.status == OPTIMAL
        assert result.value == Fraction(14, 5)
        assert result.x[:2] == [Fraction(8, 5), Fraction(6, 5)]

    def test_infeasible(self):
        # x + y = 1 and x + y = 2
        result = maximize([[1, 1], [1, 1]], [1, 2], [0, 0])
        assert result.status == INFEASIBLE
        assert not result.optimal

    def test_unbounded(self):
        # x - y = 0, maximize x
        result = maximize([[1, -1]], [0], [1, 0])
        assert result.status == UNBOUNDED

    def test_redundant_rows_are_dropped(self):
        result = maximize([[1, 1], [2, 2], [1, 1]], [1, 2, 1], [1, 0])
        assert result.status == OPTIMAL
        assert result.value == 1
        assert result.x == [Fraction(1), Fraction(0)]

    def test_negative_right_hand_side(self):
        # -x - y = -3, maximize -x
        result = maximize([[-1, -1]], [-3], [-1, 0])
        assert result.value == 0
        assert result.x == [0, 3]

    def test_degenerate_problem_terminates(self):
        A = [
            [Fraction(1, 4), -8, -1, 9, 1, 0, 0],
            [Fraction(1, 2), -12, Fraction(-1, 2), 3, 0, 1, 0],
            [0, 0, 1, 0, 0, 0, 1],
        ]
        solver = RationalSimplex(A, [0, 0, 1], [Fraction(3, 4), -20, Fraction(1, 2), -6, 0, 0, 0])
        result = solver.solve()
        assert result.status == OPTIMAL
        assert result.value == Fraction(5, 4)
