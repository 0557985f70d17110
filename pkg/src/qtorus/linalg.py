"""
Sparse row reduction over exact fields.

Rows are dicts mapping column indices to field elements, which keeps the
large, sparse systems of the bounded ideal searches cheap to build.

"""

from sympy.polys.matrices import DomainMatrix


def row_reduce(rows, ncols, domain):
    """
    Return (reduced rows, pivot columns) of the reduced row echelon form.

    Only the nonzero rows are returned; each has a 1 in its pivot column.

    """
    dod = {}
    for i, row in enumerate(rows):
        entries = {j: domain.convert(v) for j, v in row.items()}
        entries = {j: v for j, v in entries.items() if v}
        if entries:
            dod[i] = entries
    if not dod:
        return [], ()
    matrix = DomainMatrix.from_dod(dod, (len(rows), ncols), domain)
    reduced, pivots = matrix.rref()
    reduced = reduced.to_dod()
    return [reduced.get(i, {}) for i in range(len(pivots))], tuple(pivots)


def reduce_vector(reduced, pivots, vector, domain):
    """
    Return the remainder of vector against a reduced row echelon basis.

    """
    remainder = {j: domain.convert(v) for j, v in vector.items()}
    remainder = {j: v for j, v in remainder.items() if v}
    for row, pivot in zip(reduced, pivots):
        factor = remainder.get(pivot)
        if not factor:
            continue
        for j, v in row.items():
            value = remainder.get(j, domain.zero) - factor * v
            if value:
                remainder[j] = value
            else:
                remainder.pop(j, None)
    return remainder


def rank(rows, ncols, domain):
    reduced, _ = row_reduce(rows, ncols, domain)
    return len(reduced)


def in_span(rows, vector, ncols, domain):
    reduced, pivots = row_reduce(rows, ncols, domain)
    return not reduce_vector(reduced, pivots, vector, domain)


def nullspace(rows, ncols, domain):
    """
    Return a basis of {x : row . x = 0 for every row} as dense lists.

    """
    reduced, pivots = row_reduce(rows, ncols, domain)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vector = [domain.zero] * ncols
        vector[f] = domain.one
        for row, pivot in zip(reduced, pivots):
            vector[pivot] = -row.get(f, domain.zero)
        basis.append(vector)
    return basis
