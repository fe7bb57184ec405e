# -*- coding: utf-8 -*-

from fractions import Fraction


class DoubleDescription():
    """
    H <-> V conversions through cddlib in exact rational arithmetic

    Inequality rows are handed to cdd as [b, -a] (meaning b - a.x >= 0) and generator rows as
    [1, v] for points and [0, d] for rays; rows in the linearity set are equalities or lines.
    """
    def __init__(self):
        try:
            import cdd
        except Exception:
            print("Please install `pycddlib` with this command before using `setconj`:\n")
            print("pip install 'pycddlib>=2.1.7'")
            raise
        self.cdd = cdd
        try:
            import cdd.gmp as gmp
            self.gmp = gmp
        except ImportError:
            self.gmp = None

    def _polyhedron(self, rows, linear_rows, rep_type):
        """
        Build a cdd polyhedron from plain rows plus linearity rows

        :param rows: list of lists of Fractions
        :param linear_rows: rows that belong to the linearity set
        :param rep_type: cdd.RepType.INEQUALITY or cdd.RepType.GENERATOR
        :return: the cdd polyhedron
        """
        everything = [list(r) for r in rows] + [list(r) for r in linear_rows]
        linear = set(range(len(rows), len(everything)))
        if self.gmp is not None:
            mat = self.gmp.matrix_from_array(everything, lin_set=linear, rep_type=rep_type)
            return self.gmp.polyhedron_from_matrix(mat)
        mat = self.cdd.Matrix([list(r) for r in rows], number_type='fraction')
        if linear_rows:
            mat.extend([list(r) for r in linear_rows], linear=True)
        mat.rep_type = rep_type
        return self.cdd.Polyhedron(mat)

    def _rows(self, mat):
        """
        :return: (list of rows as Fraction tuples, linearity index set)
        """
        if self.gmp is not None:
            return [tuple(Fraction(v) for v in row) for row in mat.array], set(mat.lin_set)
        return [tuple(Fraction(v) for v in mat[i]) for i in range(mat.row_size)], set(mat.lin_set)

    def generators(self, dim, inequalities, equalities=()):
        """
        V-representation of {x : a.x <= b for (a, b) in inequalities, a.x == b for (a, b) in equalities}

        :param dim: ambient dimension (at least 1)
        :param inequalities: (normal, bound) pairs
        :param equalities: (normal, bound) pairs
        :return: (points, rays, lines) as lists of Fraction tuples; no points means empty
        """
        tautology = [Fraction(1)] + [Fraction(0)] * dim
        rows = [tautology] + [[b] + [-a for a in normal] for normal, b in inequalities]
        linear_rows = [[b] + [-a for a in normal] for normal, b in equalities]
        poly = self._polyhedron(rows, linear_rows, self.cdd.RepType.INEQUALITY)
        if self.gmp is not None:
            out, linear = self._rows(self.gmp.copy_generators(poly))
        else:
            out, linear = self._rows(poly.get_generators())
        points, rays, lines = [], [], []
        for index, row in enumerate(out):
            t, v = row[0], row[1:]
            if index in linear:
                lines.append(v)
            elif t == 0:
                rays.append(v)
            else:
                points.append(tuple(a / t for a in v))
        return points, rays, lines

    def inequalities(self, dim, points, rays=(), lines=()):
        """
        H-representation of conv(points) + cone(rays) + span(lines)

        :param dim: ambient dimension (at least 1)
        :param points: nonempty list of points
        :return: (inequalities, equalities) as (normal, bound) pairs
        """
        rows = [[Fraction(1)] + list(p) for p in points] + [[Fraction(0)] + list(r) for r in rays]
        linear_rows = [[Fraction(0)] + list(l) for l in lines]
        poly = self._polyhedron(rows, linear_rows, self.cdd.RepType.GENERATOR)
        if self.gmp is not None:
            out, linear = self._rows(self.gmp.copy_inequalities(poly))
        else:
            out, linear = self._rows(poly.get_inequalities())
        inequalities, equalities = [], []
        for index, row in enumerate(out):
            b, normal = row[0], tuple(-a for a in row[1:])
            if all(a == 0 for a in normal):
                continue
            if index in linear:
                equalities.append((normal, b))
            else:
                inequalities.append((normal, b))
        return inequalities, equalities
