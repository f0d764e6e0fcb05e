"""Cartan matrices, root sequences, and reduced-word enumeration.

Conventions, fixed once for the whole package:

* ``a[i][j] = <alpha_j, alpha_i^vee>``, so a simple reflection acts by
  ``s_i(alpha_j) = alpha_j - a[i][j] alpha_i``.
* Symmetrizers ``d_i`` are the minimal positive integers with
  ``d_i a[i][j] = d_j a[j][i]``; short roots get ``d = 1``.
* Words are 1-based letter tuples; positions in a word are 1-based too.

Roots live in the simple-root basis as integer tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

RootVector = tuple[int, ...]
Word = tuple[int, ...]

FAMILIES = "ABCDEFG"


class NotReduced(ValueError):
    """Raised when a word is not reduced; ``position`` is 1-based."""

    def __init__(self, position: int):
        super().__init__(f"word is not reduced at position {position}")
        self.position = position


class CapExceeded(RuntimeError):
    """Raised when an enumeration would exceed its result cap."""


@dataclass(frozen=True)
class CartanMatrix:
    """A finite-type Cartan matrix with its symmetrizers."""

    entries: tuple[tuple[int, ...], ...]
    sym: tuple[int, ...]
    label: str = ""

    @property
    def rank(self) -> int:
        return len(self.entries)

    def a(self, i: int, j: int) -> int:
        """Entry ``<alpha_j, alpha_i^vee>``, 1-based."""
        return self.entries[i - 1][j - 1]

    def reflect(self, i: int, v: RootVector) -> RootVector:
        """Apply the simple reflection s_i to a root-lattice vector."""
        coeff = sum(self.entries[i - 1][j] * v[j] for j in range(self.rank))
        return tuple(v[j] - coeff * (1 if j == i - 1 else 0) for j in range(self.rank))


def _symmetrizers(entries) -> tuple[int, ...]:
    n = len(entries)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if i == j or entries[i][j] == 0:
                    continue
                required = d[i] * entries[i][j] / entries[j][i]
                if d[j] is None:
                    d[j] = required
                    queue.append(j)
                elif d[j] != required:
                    raise ValueError("matrix is not symmetrizable")
    denom_lcm = lcm(*(f.denominator for f in d))
    ints = [int(f * denom_lcm) for f in d]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def _is_positive_definite(entries, sym) -> bool:
    n = len(entries)
    b = [[Fraction(sym[i] * entries[i][j]) for j in range(n)] for i in range(n)]
    # Leading principal minors via fraction-free elimination.
    for k in range(n):
        minor = [row[: k + 1] for row in b[: k + 1]]
        det = _det(minor)
        if det <= 0:
            return False
    return True


def _det(mat) -> Fraction:
    mat = [list(row) for row in mat]
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if mat[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            det = -det
        det *= mat[c][c]
        inv = mat[c][c]
        for r in range(c + 1, n):
            f = mat[r][c] / inv
            mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
    return det


def cartan_from_entries(entries, label: str = "") -> CartanMatrix:
    """Validate an integer matrix as finite-type Cartan data."""
    rows = tuple(tuple(int(x) for x in row) for row in entries)
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")
    for i in range(n):
        if rows[i][i] != 2:
            raise ValueError("diagonal entries must equal 2")
        for j in range(n):
            if i != j:
                if rows[i][j] > 0:
                    raise ValueError("off-diagonal entries must be <= 0")
                if (rows[i][j] == 0) != (rows[j][i] == 0):
                    raise ValueError("zero pattern must be symmetric")
    sym = _symmetrizers(rows)
    if not _is_positive_definite(rows, sym):
        raise ValueError("matrix is not of finite type")
    return CartanMatrix(rows, sym, label)


def _chain(n: int) -> list[list[int]]:
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = m[i + 1][i] = -1
    return m


@lru_cache(maxsize=None)
def cartan_matrix(family: str, rank: int) -> CartanMatrix:
    """Standard Cartan matrix for a family letter A-G at the given rank.

    Rank-2 members of B, C, G are pinned:

    >>> cartan_matrix("B", 2).entries
    ((2, -2), (-1, 2))
    >>> cartan_matrix("G", 2).entries
    ((2, -1), (-3, 2))
    """
    family = family.upper()
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    n = rank
    if family == "A":
        if n < 1:
            raise ValueError("A requires rank >= 1")
        m = _chain(n)
    elif family == "B":
        if n < 2:
            raise ValueError("B requires rank >= 2")
        m = _chain(n)
        m[n - 2][n - 1] = -2
    elif family == "C":
        if n < 2:
            raise ValueError("C requires rank >= 2")
        m = _chain(n)
        m[n - 1][n - 2] = -2
    elif family == "D":
        if n < 3:
            raise ValueError("D requires rank >= 3")
        m = _chain(n - 1)
        for row in m:
            row.append(0)
        m.append([0] * n)
        m[n - 1][n - 1] = 2
        m[n - 3][n - 1] = m[n - 1][n - 3] = -1
    elif family == "E":
        if n not in (6, 7, 8):
            raise ValueError("E requires rank 6, 7, or 8")
        # Vertex 2 hangs off vertex 4 of the chain 1-3-4-5-...-n.
        chain = [1, 3] + list(range(4, n + 1))
        m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)] + [(2, 4)]
        for u, v in edges:
            m[u - 1][v - 1] = m[v - 1][u - 1] = -1
    elif family == "F":
        if n != 4:
            raise ValueError("F requires rank 4")
        m = _chain(4)
        m[2][1] = -2
    else:  # G
        if n != 2:
            raise ValueError("G requires rank 2")
        m = [[2, -1], [-3, 2]]
    return cartan_from_entries(m, f"{family}{n}")


def parse_type(text: str) -> CartanMatrix:
    """Parse a type string such as ``"A3"`` or ``"G2"``."""
    text = text.strip()
    if len(text) < 2 or text[0].upper() not in FAMILIES or not text[1:].isdigit():
        raise ValueError(f"cannot parse type {text!r}")
    return cartan_matrix(text[0].upper(), int(text[1:]))


def langlands_dual(c: CartanMatrix) -> CartanMatrix:
    """Transpose of the Cartan matrix, with symmetrizers recomputed.

    >>> langlands_dual(cartan_matrix("B", 2)).label
    'C2'
    """
    entries = tuple(tuple(c.entries[j][i] for j in range(c.rank)) for i in range(c.rank))
    label = c.label
    if label.startswith("B"):
        label = "C" + label[1:]
    elif label.startswith("C"):
        label = "B" + label[1:]
    return cartan_from_entries(entries, label)


def sym_pairing(c: CartanMatrix, x: RootVector, y: RootVector) -> int:
    """The W-invariant symmetric form, ``(alpha_i, alpha_i) = 2 d_i``.

    >>> g2 = cartan_matrix("G", 2)
    >>> sym_pairing(g2, (1, 0), (1, 0))
    6
    """
    n = c.rank
    if len(x) != n or len(y) != n:
        raise ValueError("vector length does not match the rank")
    return sum(c.sym[i] * c.entries[i][j] * x[i] * y[j] for i in range(n) for j in range(n))


def _simple_root(n: int, i: int) -> RootVector:
    return tuple(1 if j == i - 1 else 0 for j in range(n))


def _is_positive(v: RootVector) -> bool:
    return any(x > 0 for x in v) and all(x >= 0 for x in v)


def beta_sequence(c: CartanMatrix, word: Word) -> tuple[RootVector, ...]:
    """Roots ``beta_t = s_{i_1} ... s_{i_{t-1}}(alpha_{i_t})`` of a reduced word.

    Raises NotReduced at the first position whose root fails to be positive.

    >>> a2 = cartan_matrix("A", 2)
    >>> beta_sequence(a2, (1, 2, 1))
    ((1, 0), (1, 1), (0, 1))
    """
    n = c.rank
    for t, letter in enumerate(word, start=1):
        if not 1 <= letter <= n:
            raise ValueError(f"letter {letter} out of range at position {t}")
    betas: list[RootVector] = []
    # m holds the matrix of s_{i_1}...s_{i_{t-1}} acting on coordinate columns.
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for t, letter in enumerate(word, start=1):
        beta = tuple(m[r][letter - 1] for r in range(n))
        if not _is_positive(beta):
            raise NotReduced(t)
        betas.append(beta)
        arow = c.entries[letter - 1]
        for r in range(n):
            pivot = m[r][letter - 1]
            if pivot:
                m[r] = [m[r][j] - pivot * arow[j] for j in range(n)]
    return tuple(betas)


def k_shift(word: Word, k: int, s: int = 1) -> int | None:
    """Position of the s-th later occurrence of letter ``word[k-1]``, or None.

    >>> k_shift((1, 2, 1, 2), 1, 1)
    3
    >>> k_shift((1, 2, 1, 2), 3, 1) is None
    True
    """
    if not 1 <= k <= len(word):
        raise ValueError(f"position {k} out of range")
    if s < 1:
        raise ValueError("shift must be >= 1")
    letter = word[k - 1]
    seen = 0
    for t in range(k + 1, len(word) + 1):
        if word[t - 1] == letter:
            seen += 1
            if seen == s:
                return t
    return None


@lru_cache(maxsize=None)
def positive_roots(c: CartanMatrix) -> tuple[RootVector, ...]:
    """All positive roots, sorted by (height, coordinates)."""
    n = c.rank
    roots = {_simple_root(n, i) for i in range(1, n + 1)}
    frontier = set(roots)
    while frontier:
        new = set()
        for v in frontier:
            for i in range(1, n + 1):
                w = c.reflect(i, v)
                if _is_positive(w) and w not in roots:
                    new.add(w)
        roots |= new
        frontier = new
    return tuple(sorted(roots, key=lambda v: (sum(v), v)))


def num_positive_roots(c: CartanMatrix) -> int:
    return len(positive_roots(c))


def highest_root(c: CartanMatrix) -> RootVector:
    return positive_roots(c)[-1]


def enumerate_reduced_words(c: CartanMatrix, cap: int = 100_000) -> list[Word]:
    """All reduced words of the longest element, in lexicographic order.

    Raises CapExceeded as soon as the result would outgrow ``cap``.
    """
    n = c.rank
    total = num_positive_roots(c)
    results: list[Word] = []
    identity = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

    def extend(m, prefix):
        if len(prefix) == total:
            if len(results) >= cap:
                raise CapExceeded(f"more than {cap} reduced words")
            results.append(tuple(prefix))
            return
        for letter in range(1, n + 1):
            beta = tuple(m[r][letter - 1] for r in range(n))
            if not _is_positive(beta):
                continue
            arow = c.entries[letter - 1]
            m2 = tuple(
                tuple(m[r][j] - m[r][letter - 1] * arow[j] for j in range(n))
                if m[r][letter - 1]
                else m[r]
                for r in range(n)
            )
            prefix.append(letter)
            extend(m2, prefix)
            prefix.pop()

    extend(identity, [])
    return results


def staircase_word(n: int) -> Word:
    """The reduced word (n, n-1, n, n-2, n-1, n, ...) of type A_n.

    Compatible with the linearly ordered quiver 1 -> 2 -> ... -> n.

    >>> staircase_word(3)
    (3, 2, 3, 1, 2, 3)
    """
    if n < 1:
        raise ValueError("rank must be >= 1")
    out: list[int] = []
    for start in range(n, 0, -1):
        out.extend(range(start, n + 1))
    return tuple(out)
