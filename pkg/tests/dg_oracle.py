"""Naive loop-based dg axiom checker, used as an independent oracle."""

from fractions import Fraction


def naive_violations(A):
    n = A.dim
    deg = A.degrees
    M = [[[Fraction(A.mult[i, j, k]) for k in range(n)] for j in range(n)] for i in range(n)]
    D = [[Fraction(A.diff[i, j]) for j in range(n)] for i in range(n)]
    U = [Fraction(x) for x in A.unit]

    def mul(x, y):
        out = [Fraction(0)] * n
        for i in range(n):
            if x[i]:
                for j in range(n):
                    if y[j]:
                        c = x[i] * y[j]
                        row = M[i][j]
                        for k in range(n):
                            if row[k]:
                                out[k] += c * row[k]
        return out

    def d(x):
        return [sum((D[i][j] * x[j] for j in range(n) if x[j]), Fraction(0)) for i in range(n)]

    def e(i):
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        return v

    out = set()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if M[i][j][k] and deg[k] != deg[i] + deg[j]:
                    out.add(("grading", (i, j, k)))
            if D[i][j] and deg[i] != deg[j] + 1:
                out.add(("grading", (i, j)))
        if U[i] and deg[i] != 0:
            out.add(("unit", (i,)))
    if A.objects is not None:
        ob = A.objects
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    composable = ob[j][1] == ob[i][0] and ob[k] == (ob[j][0], ob[i][1])
                    if M[i][j][k] and not composable:
                        out.add(("composition", (i, j, k)))
    for j in range(n):
        if any(d(d(e(j)))):
            out.add(("d2", (j,)))
    for i in range(n):
        for j in range(n):
            lhs = d(mul(e(i), e(j)))
            s = -1 if deg[i] % 2 else 1
            r1, r2 = mul(d(e(i)), e(j)), mul(e(i), d(e(j)))
            if any(lhs[k] - r1[k] - s * r2[k] for k in range(n)):
                out.add(("leibniz", (i, j)))
    for i in range(n):
        for j in range(n):
            ij = mul(e(i), e(j))
            for k in range(n):
                if mul(ij, e(k)) != mul(e(i), mul(e(j), e(k))):
                    out.add(("associativity", (i, j, k)))
    for i in range(n):
        if mul(U, e(i)) != e(i) or mul(e(i), U) != e(i):
            out.add(("unit", (i,)))
    return out


def mutations(A):
    """Every algebra obtained by adding 1 to one multiplication or differential entry."""
    from dercat.dg import DGAlgebra

    n = A.dim
    for idx in [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]:
        m = A.mult.copy()
        m[idx] += 1
        yield ("mult", idx), DGAlgebra(A.degrees, m, A.diff, A.unit, A.labels, A.objects)
    for idx in [(i, j) for i in range(n) for j in range(n)]:
        d = A.diff.copy()
        d[idx] += 1
        yield ("diff", idx), DGAlgebra(A.degrees, A.mult, d, A.unit, A.labels, A.objects)
