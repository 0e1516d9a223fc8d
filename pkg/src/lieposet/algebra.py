"""Bases and matrix realizations of Lie poset algebras.

Each poset determines a subalgebra between the diagonal and the
upper-triangular matrices of its classical family.  Basis elements carry
symbolic kinds:

    H(i)    E(-i,-i) - E(i,i)                    families B, C, D
    X(i,j)  E(-i,-j) - E(j,i)      with j < i    families B, C, D
    Y(i,j)  E(-i,j) + E(-j,i)      with i < j    family C
    Y(i,j)  E(-i,j) - E(-j,i)      with j < i    families B, D
    Z(i)    E(-i,i)                              family C
    U(j)    E(-j,0) - E(0,j)                     family B
    DA(i)   E(i,i) - E(i+1,i+1)                  family A
    EA(i,j) E(i,j)                 with i < j    family A

Brackets are computed on the sparse realizations and decomposed back into
the basis by reading coefficients off block positions; basis elements have
disjoint leading supports, so the decomposition is exact and any nonzero
residual signals an invalid poset/basis pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NoSignRescaling, NotInSpan, UnsupportedPoset
from .posets import SignedPoset, induced_subposet, validate

_KIND_ORDER = {"H": 0, "X": 1, "Y": 2, "Z": 3, "U": 4, "DA": 0, "EA": 1}


@dataclass(frozen=True)
class BasisElement:
    family: str
    kind: str
    i: int
    j: int = 0

    def sort_key(self):
        if self.kind == "Y":
            pair = (min(self.i, self.j), max(self.i, self.j))
        else:
            pair = (self.i, self.j)
        return (_KIND_ORDER[self.kind], pair)

    def index_key(self):
        """Kind plus indices, with Y keyed by its unordered pair."""
        if self.kind == "Y":
            return ("Y", min(self.i, self.j), max(self.i, self.j))
        return (self.kind, self.i, self.j)

    def __repr__(self):
        if self.kind in ("X", "Y", "EA"):
            return f"{self.kind}({self.i},{self.j})"
        return f"{self.kind}({self.i})"


class SparseMatrixQ:
    """Sparse exact matrix keyed by signed row/column labels."""

    __slots__ = ("entries",)

    def __init__(self, entries=()):
        data = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for key, value in items:
            value = Fraction(value)
            if value:
                data[key] = value
        self.entries = data

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        return isinstance(other, SparseMatrixQ) and self.entries == other.entries

    def __repr__(self):
        body = ", ".join(
            f"({r},{c}):{v}" for (r, c), v in sorted(self.entries.items())
        )
        return f"SparseMatrixQ({{{body}}})"

    def get(self, r, c):
        return self.entries.get((r, c), Fraction(0))

    def scaled(self, factor):
        factor = Fraction(factor)
        return SparseMatrixQ({k: v * factor for k, v in self.entries.items()})

    def add_scaled(self, other, factor=1):
        out = dict(self.entries)
        factor = Fraction(factor)
        for k, v in other.entries.items():
            out[k] = out.get(k, Fraction(0)) + v * factor
        return SparseMatrixQ(out)

    def __sub__(self, other):
        return self.add_scaled(other, -1)

    def matmul(self, other):
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, c), v in self.entries.items():
            for c2, w in by_row.get(c, ()):
                key = (r, c2)
                out[key] = out.get(key, Fraction(0)) + v * w
        return SparseMatrixQ(out)

    def commutator(self, other):
        return self.matmul(other) - other.matmul(self)


def build_basis(P):
    """The canonical ordered basis of the Lie poset algebra of P."""
    out = []
    if P.family == "A":
        for i in range(1, P.n):
            out.append(BasisElement("A", "DA", i))
        for x, y in P.strict_relations:
            out.append(BasisElement("A", "EA", x, y))
    else:
        fam = P.family
        for i in range(1, P.n + 1):
            out.append(BasisElement(fam, "H", i))
        for x, y in P.relations:
            if x < 0 and y < 0 and x != y:
                out.append(BasisElement(fam, "X", -x, -y))
        seen_pairs = set()
        for x, y in P.relations:
            if x < 0 < y and -x != y:
                pair = (min(-x, y), max(-x, y))
                if pair in seen_pairs:
                    continue
                seen_pairs.add(pair)
                if fam == "C":
                    out.append(BasisElement(fam, "Y", pair[0], pair[1]))
                else:
                    out.append(BasisElement(fam, "Y", pair[1], pair[0]))
        if fam == "C":
            for i in range(1, P.n + 1):
                if (-i, i) in P.relations:
                    out.append(BasisElement(fam, "Z", i))
        if fam == "B":
            for j in range(1, P.n + 1):
                if (-j, 0) in P.relations:
                    out.append(BasisElement(fam, "U", j))
    out.sort(key=BasisElement.sort_key)
    return tuple(out)


def realize(b):
    """Sparse matrix realization of a basis element."""
    kind, i, j = b.kind, b.i, b.j
    if kind == "H":
        return SparseMatrixQ({(-i, -i): 1, (i, i): -1})
    if kind == "X":
        return SparseMatrixQ({(-i, -j): 1, (j, i): -1})
    if kind == "Y":
        if b.family == "C":
            return SparseMatrixQ({(-i, j): 1, (-j, i): 1})
        return SparseMatrixQ({(-i, j): 1, (-j, i): -1})
    if kind == "Z":
        return SparseMatrixQ({(-i, i): 1})
    if kind == "U":
        return SparseMatrixQ({(-i, 0): 1, (0, i): -1})
    if kind == "DA":
        return SparseMatrixQ({(i, i): 1, (i + 1, i + 1): -1})
    if kind == "EA":
        return SparseMatrixQ({(i, j): 1})
    raise ValueError(f"unknown kind {kind!r}")


def realize_combination(terms):
    """Realize a {BasisElement: coefficient} combination as one sparse matrix."""
    out = SparseMatrixQ()
    for b, c in terms.items():
        out = out.add_scaled(realize(b), c)
    return out


def decompose(mat, P):
    """Write a sparse matrix as a combination of the basis of P.

    Coefficients are read off the leading block positions; the claimed
    combination is then re-realized and compared entry by entry, so a
    nonzero residual (or a position with no basis element) raises
    NotInSpan rather than returning a wrong answer.
    """
    members = set(build_basis(P))
    fam = P.family
    combo = {}
    if fam == "A":
        diag = {e: Fraction(0) for e in P.elements}
        for (r, c), v in mat.entries.items():
            if r == c:
                diag[r] = v
            else:
                key = BasisElement("A", "EA", r, c)
                if key not in members:
                    raise NotInSpan(f"position ({r},{c}) is outside the matrix form")
                combo[key] = v
        if any(diag.values()):
            if sum(diag.values()) != 0:
                raise NotInSpan("diagonal part has nonzero trace")
            prefix = Fraction(0)
            for i in range(1, P.n):
                prefix += diag[i]
                if prefix:
                    combo[BasisElement("A", "DA", i)] = prefix
    else:
        for (r, c), v in sorted(mat.entries.items()):
            if r >= 0:
                continue  # mirror halves are implied by the leading block
            i = -r
            if c < 0:
                j = -c
                key = (
                    BasisElement(fam, "H", i)
                    if i == j
                    else BasisElement(fam, "X", i, j)
                )
            elif c == 0:
                key = BasisElement(fam, "U", i)
            elif c == i:
                key = BasisElement(fam, "Z", i)
            elif fam == "C":
                if i > c:
                    continue  # coefficient is read at (-min, max)
                key = BasisElement(fam, "Y", i, c)
            else:
                if i < c:
                    continue  # coefficient is read at (-max, min)
                key = BasisElement(fam, "Y", i, c)
            if key not in members:
                raise NotInSpan(f"position ({r},{c}) matches no basis element")
            combo[key] = v
    residual = mat - realize_combination(combo)
    if residual:
        raise NotInSpan(f"nonzero residual {residual!r}")
    return combo


def bracket(a, b, P):
    """Commutator [a, b] decomposed in the basis of P."""
    return decompose(realize(a).commutator(realize(b)), P)


@lru_cache(maxsize=None)
def structure_constants(P):
    """Canonical basis and the table of brackets between its elements.

    Returns (basis, table) where table maps (i, j) with i < j to a sorted
    tuple of (k, coefficient) pairs; absent keys mean a zero bracket and
    the skew entries follow by antisymmetry.
    """
    basis = build_basis(P)
    position = {b: k for k, b in enumerate(basis)}
    mats = [realize(b) for b in basis]
    table = {}
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            com = mats[i].commutator(mats[j])
            if not com:
                continue
            combo = decompose(com, P)
            table[(i, j)] = tuple(
                sorted((position[b], c) for b, c in combo.items())
            )
    return basis, table


def bracket_positions(P, i, j):
    """Bracket of the i-th and j-th basis elements as {position: coefficient}."""
    _, table = structure_constants(P)
    if i == j:
        return {}
    if i < j:
        return dict(table.get((i, j), ()))
    return {k: -c for k, c in table.get((j, i), ())}


def combo_bracket(P, u, v):
    """Bilinear extension of the bracket to {position: coefficient} maps."""
    out = {}
    for i, a in u.items():
        if not a:
            continue
        for j, b in v.items():
            if not b:
                continue
            for k, c in bracket_positions(P, i, j).items():
                out[k] = out.get(k, Fraction(0)) + a * b * c
    return {k: c for k, c in out.items() if c}


def matrix_form(P):
    """Positions of the matrix that the algebra of P may fill.

    A position (x, y) is permitted exactly when x <= y in the poset,
    except that families B and D ignore relations of the form -i <= i.
    """
    if P.family in ("B", "D"):
        return frozenset(
            (x, y) for (x, y) in P.relations if not (x < 0 and y == -x)
        )
    return frozenset(P.relations)


def _solve_gf2(equations):
    """Solve xor constraints given as (bitmask, parity); None if inconsistent."""
    pivots = {}
    max_bit = 0
    for mask, rhs in equations:
        max_bit = max(max_bit, mask.bit_length())
        while mask:
            low = mask & -mask
            if low in pivots:
                pmask, prhs = pivots[low]
                mask ^= pmask
                rhs ^= prhs
            else:
                pivots[low] = (mask, rhs)
                break
        else:
            if rhs:
                return None
    solution = [0] * max_bit
    for low in sorted(pivots, reverse=True):
        mask, rhs = pivots[low]
        value = rhs
        rest = mask ^ low
        while rest:
            bit = rest & -rest
            value ^= solution[bit.bit_length() - 1]
            rest ^= bit
        solution[low.bit_length() - 1] = value
    return solution


def verify_CD_isomorphism(P):
    """Find a diagonal +/-1 rescaling matching the D and C structure constants.

    P must be a type-D poset with no relation -i <= i, so the same
    relation set is also a valid type-C poset.  The bases correspond
    position by position (H to H, X to X, Y to Y on the same vertex
    pair); the sign vector eps is found by solving the parity constraints
    eps_i * eps_j * eps_k = sign ratio over GF(2) and then re-verified
    exactly against both tables.  Raises NoSignRescaling when the tables
    differ in magnitude or the parity system is inconsistent.
    """
    if P.family != "D":
        raise UnsupportedPoset("expected a type-D poset")
    if any(x < 0 and y == -x for (x, y) in P.relations):
        raise UnsupportedPoset("poset relates -i to i; not valid as type C")
    PC = SignedPoset("C", P.n, P.relations)
    validate(PC)
    basis_d, table_d = structure_constants(P)
    basis_c, table_c = structure_constants(PC)
    if [b.index_key() for b in basis_d] != [b.index_key() for b in basis_c]:
        raise NoSignRescaling("bases do not correspond")
    equations = []
    for key in sorted(set(table_d) | set(table_c)):
        i, j = key
        td = dict(table_d.get(key, ()))
        tc = dict(table_c.get(key, ()))
        for k in sorted(set(td) | set(tc)):
            cd = td.get(k, Fraction(0))
            cc = tc.get(k, Fraction(0))
            if cd == 0 or cc == 0 or abs(cd) != abs(cc):
                raise NoSignRescaling(
                    f"constants differ in magnitude at [{basis_d[i]!r},{basis_d[j]!r}]"
                )
            mask = (1 << i) ^ (1 << j) ^ (1 << k)
            equations.append((mask, 0 if cd == cc else 1))
    solution = _solve_gf2(equations)
    if solution is None:
        raise NoSignRescaling("parity constraints are inconsistent")
    solution += [0] * (len(basis_d) - len(solution))
    eps = tuple(1 if v == 0 else -1 for v in solution)
    for key in set(table_d) | set(table_c):
        i, j = key
        td = dict(table_d.get(key, ()))
        tc = dict(table_c.get(key, ()))
        for k in set(td) | set(tc):
            if eps[i] * eps[j] * eps[k] * td.get(k, 0) != tc.get(k, 0):
                raise NoSignRescaling("rescaled tables still differ")
    return eps


def verify_B_reduction(P):
    """Compare the structure constants of a type-B algebra with 0 removed.

    P must be a type-B poset whose 0 is unrelated to everything else.
    Returns True when the table equals that of the type-D algebra on the
    induced poset without 0 under the index-matching correspondence.
    """
    if P.family != "B":
        raise UnsupportedPoset("expected a type-B poset")
    if any((x == 0) != (y == 0) for (x, y) in P.relations):
        raise UnsupportedPoset("0 is related to another element")
    P0 = induced_subposet(P, [e for e in P.elements if e != 0])
    basis_b, table_b = structure_constants(P)
    basis_d, table_d = structure_constants(P0)
    if [b.index_key() for b in basis_b] != [b.index_key() for b in basis_d]:
        return False
    return table_b == table_d
