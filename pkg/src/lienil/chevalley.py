"""Integer structure constants for the nilradical of a Borel subalgebra.

The nilradical has one basis vector x_alpha per positive root, with
[x_alpha, x_beta] = N(alpha, beta) x_{alpha+beta} when alpha + beta is
a root and 0 otherwise.  The signs N are fixed the standard way: for
each non-simple gamma the pair (alpha1, beta1) summing to gamma with
alpha1 minimal in the root order gets N = +(p+1), where p is the
number of steps the alpha1-string extends below beta1; every other
constant follows from the Jacobi identity applied to the full algebra,
using the relation N(u, v)/(w, w) = N(v, w)/(u, u) for u + v + w = 0 to
reduce mixed-sign constants back to positive ones of lower degree.
All resulting constants are integers with |N| = p + 1 in {1, 2, 3}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .nilalg import NilpotentAlgebra
from .rootsys import RootSystem, string_down_length


def nilradical(rs: RootSystem) -> NilpotentAlgebra:
    pos = rs.positive_roots
    index = rs.index_of
    nconst: dict[tuple[int, int], int] = {}  # i < j, both positive, sum positive

    def npos(i: int, j: int) -> int:
        if i == j:
            return 0
        if i < j:
            return nconst.get((i, j), 0)
        return -nconst.get((j, i), 0)

    def n_mixed(xi: int, zi: int) -> Fraction:
        """N(x, -z) for distinct positive roots x, z."""
        s = pos[xi] - pos[zi]
        if rs.is_positive_root(s):
            ratio = rs.inner(s, s) / rs.inner(pos[xi], pos[xi])
            return -ratio * npos(zi, index[s])
        t = -s
        if rs.is_positive_root(t):
            ratio = rs.inner(t, t) / rs.inner(pos[zi], pos[zi])
            return ratio * npos(index[t], xi)
        return Fraction(0)

    for gi, gamma in enumerate(pos):
        if gamma.degree == 1:
            continue
        pairs = []
        for ai, alpha in enumerate(pos):
            if alpha.degree >= gamma.degree:
                break
            beta = gamma - alpha
            bi = index.get(beta)
            if bi is not None and bi > ai:
                pairs.append((ai, bi))

        a1, b1 = pairs[0]
        p = string_down_length(rs.is_root, pos[b1], pos[a1])
        nconst[(a1, b1)] = p + 1

        if len(pairs) == 1:
            continue
        # [x_gamma, x_{-alpha1}] lands on x_{beta1} with a known factor.
        n_gamma_down = -(rs.inner(pos[b1], pos[b1]) / rs.inner(gamma, gamma)) * (p + 1)
        for ai, bi in pairs[1:]:
            # Jacobi for (x_{-alpha1}, x_alpha, x_beta); no Cartan part
            # appears because no two of the three roots sum to zero.
            t1 = Fraction(0)
            x = -n_mixed(ai, a1)  # N(-alpha1, alpha)
            if x:
                eta = pos[ai] - pos[a1]
                if rs.is_positive_root(eta):
                    y = Fraction(npos(index[eta], bi))
                else:
                    y = -n_mixed(bi, index[-eta])  # N(-t, beta) = -N(beta, -t)
                t1 = x * y
            t3 = Fraction(0)
            x = n_mixed(bi, a1)  # N(beta, -alpha1)
            if x:
                delta = pos[bi] - pos[a1]
                if rs.is_positive_root(delta):
                    y = Fraction(npos(index[delta], ai))
                else:
                    y = -n_mixed(ai, index[-delta])
                t3 = x * y
            val = -(t1 + t3) / n_gamma_down
            if val.denominator != 1 or val == 0:
                raise AssertionError(f"constant for pair {ai},{bi} is {val}")
            nconst[(ai, bi)] = int(val)

    constants = {
        (i, j): ((index[pos[i] + pos[j]], Fraction(v)),)
        for (i, j), v in nconst.items()
    }
    return NilpotentAlgebra(len(pos), constants)


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    violations: tuple[tuple[int, int, int], ...]
    triples_checked: int


def verify_jacobi(a: NilpotentAlgebra) -> JacobiReport:
    """Check [[x,y],z] + [[y,z],x] + [[z,x],y] = 0 on all basis triples.

    Only triples touching at least one nonzero bracket can fail, so the
    scan is driven by the constant table rather than all of n^3.
    """
    n = a.dim
    nbr: dict[int, dict[int, tuple[tuple[int, Fraction], ...]]] = {}
    for (i, j), terms in a.constants.items():
        nbr.setdefault(i, {})[j] = terms
        nbr.setdefault(j, {})[i] = tuple((k, -v) for k, v in terms)

    candidates = set()
    for (i, j) in a.constants:
        for k in range(n):
            if k != i and k != j:
                x, y, z = sorted((i, j, k))
                candidates.add((x, y, z))

    def add_term(out, first, second, third):
        for m, c in nbr.get(first, {}).get(second, ()):
            for r, c2 in nbr.get(m, {}).get(third, ()):
                out[r] = out.get(r, Fraction(0)) + c * c2

    violations = []
    for i, j, k in sorted(candidates):
        out: dict[int, Fraction] = {}
        add_term(out, i, j, k)
        add_term(out, j, k, i)
        add_term(out, k, i, j)
        if any(out.values()):
            violations.append((i, j, k))
    return JacobiReport(not violations, tuple(violations), len(candidates))
