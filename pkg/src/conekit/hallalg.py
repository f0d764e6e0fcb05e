"""Finite-field Hall algebra oracle for equioriented type A quivers.

Structure constants are obtained the slow honest way: submodules are counted
over several prime fields by explicit subspace enumeration, the counts are
interpolated to a polynomial, and one held-out prime re-checks the result.
Modules are multisets of interval supports [a,b]; arrow maps are the obvious
shift blocks, so isomorphism classes can be read off rank invariants.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .rootsys import k_shift

Interval = tuple[int, int]
Module = tuple[Interval, ...]  # sorted multiset of intervals

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)

MAX_VERTICES = 4
MAX_TOTAL_DIM = 6


class ScaleExceeded(ValueError):
    pass


class InterpolationInconsistent(RuntimeError):
    pass


class SplitTermSurvived(RuntimeError):
    pass


class LaurentPoly:
    """Integer Laurent polynomial in one variable q."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {e: v for e, v in dict(coeffs or {}).items() if v}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def integer(cls, v: int) -> "LaurentPoly":
        return cls({0: v})

    @classmethod
    def q_power(cls, e: int) -> "LaurentPoly":
        return cls({e: 1})

    def is_zero(self) -> bool:
        return not self.c

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.c)
        for e, v in other.c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.c)
        for e, v in other.c.items():
            out[e] = out.get(e, 0) - v
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -v for e, v in self.c.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def subst_square(self) -> "LaurentPoly":
        """q -> q^2."""
        return LaurentPoly({2 * e: v for e, v in self.c.items()})

    def evaluate(self, x) -> Fraction:
        return sum((Fraction(v) * Fraction(x) ** e for e, v in self.c.items()),
                   Fraction(0))

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in Z[q, q^-1]; raises ValueError on any remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        rem = {e: Fraction(v) for e, v in self.c.items()}
        div = sorted(other.c.items())
        lead_e, lead_c = div[-1]
        # an exact quotient cannot reach below this exponent
        floor = min(self.c) - div[0][0]
        out: dict[int, Fraction] = {}
        while rem:
            top = max(rem)
            shift = top - lead_e
            if shift < floor:
                raise ValueError("division leaves a remainder")
            factor = rem[top] / lead_c
            out[shift] = factor
            for e, v in div:
                rem[e + shift] = rem.get(e + shift, 0) - factor * v
                if rem[e + shift] == 0:
                    del rem[e + shift]
        result = {}
        for e, v in out.items():
            if v.denominator != 1:
                raise ValueError("quotient is not integral")
            if v:
                result[e] = int(v)
        return LaurentPoly(result)

    def to_dict(self) -> dict:
        return {str(e): v for e, v in sorted(self.c.items())}

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        bits = []
        for e, v in sorted(self.c.items(), reverse=True):
            mono = "1" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if e != 0 and abs(v) == 1:
                bits.append(("-" if v < 0 else "") + mono)
            elif e == 0:
                bits.append(str(v))
            else:
                bits.append(f"{v}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")


def q_integer(m: int) -> LaurentPoly:
    """Balanced quantum integer q^{m-1} + q^{m-3} + ... + q^{1-m}."""
    return LaurentPoly({e: 1 for e in range(m - 1, -m, -2)})


def q_factorial(m: int) -> LaurentPoly:
    out = LaurentPoly.one()
    for i in range(2, m + 1):
        out = out * q_integer(i)
    return out


# -- modules as interval multisets ------------------------------------------


def normalize_module(intervals) -> Module:
    out = []
    for a, b in intervals:
        a, b = int(a), int(b)
        if a > b or a < 1:
            raise ValueError(f"bad interval [{a},{b}]")
        out.append((a, b))
    return tuple(sorted(out))


def parse_module(text: str) -> Module:
    """Grammar: comma list of 'a-b' or 'a-b^mult', e.g. '2-3,3-3' or '1-1^2'."""
    intervals = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        body, _, mult = piece.partition("^")
        a, sep, b = body.partition("-")
        if not sep:
            raise ValueError(f"interval {piece!r} is not of the form a-b")
        intervals.extend([(int(a), int(b))] * (int(mult) if mult else 1))
    return normalize_module(intervals)


def format_module(m: Module) -> str:
    return ",".join(f"{a}-{b}" for a, b in m)


def dim_vector(n: int, m: Module) -> tuple[int, ...]:
    out = [0] * n
    for a, b in m:
        if b > n:
            raise ValueError(f"interval [{a},{b}] exceeds vertex count {n}")
        for v in range(a, b + 1):
            out[v - 1] += 1
    return tuple(out)


def total_dim(m: Module) -> int:
    return sum(b - a + 1 for a, b in m)


def hom_intervals(m: Interval, n: Interval) -> int:
    """dim Hom(M[a,b], M[c,d]) for the arrows a -> a+1 orientation."""
    (a, b), (c, d) = m, n
    return 1 if c <= a <= d <= b else 0


def hom_dim(m: Module, n: Module) -> int:
    return sum(hom_intervals(i, j) for i in m for j in n)


def euler_form(n: int, d, e) -> int:
    return sum(d[i] * e[i] for i in range(n)) - sum(
        d[i] * e[i + 1] for i in range(n - 1)
    )


def ext_dim(n: int, m: Module, w: Module) -> int:
    return hom_dim(m, w) - euler_form(n, dim_vector(n, m), dim_vector(n, w))


def _check_scale(n: int, m: Module):
    if n > MAX_VERTICES:
        raise ScaleExceeded(f"{n} vertices exceeds the supported {MAX_VERTICES}")
    if total_dim(m) > MAX_TOTAL_DIM:
        raise ScaleExceeded(
            f"total dimension {total_dim(m)} exceeds the supported {MAX_TOTAL_DIM}"
        )


# -- linear algebra over a prime field ---------------------------------------


def _rank_mod(rows, p: int) -> int:
    mat = [list(r) for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    row = 0
    for col in range(cols):
        piv = next((r for r in range(row, len(mat)) if mat[r][col] % p), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = pow(mat[row][col], -1, p)
        mat[row] = [x * inv % p for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] % p:
                f = mat[r][col]
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], mat[row])]
        row += 1
        rank += 1
        if row == len(mat):
            break
    return rank


def _mat_mul(a, b, p: int, bcols: int):
    """a . b with b of explicit column count (b may have zero rows)."""
    if not a:
        return ()
    if not b or bcols == 0:
        return tuple((0,) * bcols for _ in a)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in zip(*b))
        for row in a
    )


def _subspaces(d: int, e: int, p: int):
    """All e-dimensional subspaces of F_p^d as RREF row matrices."""
    if e == 0:
        yield ()
        return
    for pivots in combinations(range(d), e):
        free = [
            (r, c)
            for r in range(e)
            for c in range(pivots[r] + 1, d)
            if c not in pivots
        ]
        for values in product(range(p), repeat=len(free)):
            rows = [[0] * d for _ in range(e)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows)


# -- representations and counting --------------------------------------------


def _arrow_matrices(n: int, x: Module, p: int):
    """Row-vector convention: the map at vertex v is r -> r . A_v."""
    dims = dim_vector(n, x)
    index = [[] for _ in range(n + 1)]  # 1-based vertex -> basis slots
    for idx, (a, b) in enumerate(x):
        for v in range(a, b + 1):
            index[v].append(idx)
    mats = []
    for v in range(1, n):
        mat = [[0] * dims[v] for _ in range(dims[v - 1])]
        for row, idx in enumerate(index[v]):
            if idx in index[v + 1]:
                mat[row][index[v + 1].index(idx)] = 1 % p
        mats.append(tuple(tuple(r) for r in mat))
    return dims, mats


def _composites(n: int, dims, mats, p: int):
    comp = {}
    for i in range(1, n + 1):
        comp[i, i] = tuple(
            tuple(1 if a == b else 0 for b in range(dims[i - 1]))
            for a in range(dims[i - 1])
        )
        for j in range(i + 1, n + 1):
            comp[i, j] = _mat_mul(comp[i, j - 1], mats[j - 2], p, dims[j - 1])
    return comp


def _multiplicities_from_ranks(n: int, r) -> dict[Interval, int]:
    def get(i, j):
        if i < 1 or j > n or i > j:
            return 0
        return r[i, j]

    out = {}
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            m = get(a, b) - get(a, b + 1) - get(a - 1, b) + get(a - 1, b + 1)
            if m:
                out[a, b] = m
    return out


def module_multiplicities(m: Module) -> dict[Interval, int]:
    out: dict[Interval, int] = {}
    for iv in m:
        out[iv] = out.get(iv, 0) + 1
    return out


@lru_cache(maxsize=None)
def count_submodules(n: int, x: Module, w: Module, v: Module, p: int) -> int:
    """Submodules of X isomorphic to W with quotient isomorphic to V, over F_p."""
    dims = dim_vector(n, x)
    e = dim_vector(n, w)
    if any(ei > di for ei, di in zip(e, dims)):
        return 0
    _, mats = _arrow_matrices(n, x, p)
    comp = _composites(n, dims, mats, p)
    want_w = module_multiplicities(w)
    want_v = module_multiplicities(v)
    choices = [list(_subspaces(dims[vx], e[vx], p)) for vx in range(n)]
    count = 0

    def classify(pick) -> bool:
        r_sub = {}
        r_quot = {}
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                if e[i - 1] == 0:
                    r_sub[i, j] = 0
                else:
                    r_sub[i, j] = _rank_mod(
                        _mat_mul(pick[i - 1], comp[i, j], p, dims[j - 1]), p
                    )
                stacked = comp[i, j] + tuple(pick[j - 1])
                r_quot[i, j] = _rank_mod(stacked, p) - e[j - 1] if stacked else 0
        return (
            _multiplicities_from_ranks(n, r_sub) == want_w
            and _multiplicities_from_ranks(n, r_quot) == want_v
        )

    # Depth-first over vertices so instability prunes whole subtrees.
    def walk(vx: int, pick: tuple):
        nonlocal count
        if vx == n:
            if classify(pick):
                count += 1
            return
        for sub in choices[vx]:
            if vx > 0 and e[vx - 1] > 0:
                image = _mat_mul(pick[vx - 1], mats[vx - 1], p, dims[vx])
                if _rank_mod(tuple(sub) + image, p) != e[vx]:
                    continue
            walk(vx + 1, pick + (sub,))

    walk(0, ())
    return count


@lru_cache(maxsize=None)
def hall_polynomial(n: int, v: Module, w: Module, x: Module) -> LaurentPoly:
    """The counting polynomial H^X_{V,W}: submodules W with quotient V.

    Counts at interpolation-many primes, fits the polynomial, and re-checks
    at a held-out prime; any mismatch means the degree bound argument failed
    and is raised, never papered over.
    """
    _check_scale(n, x)
    dx = dim_vector(n, x)
    if tuple(a + b for a, b in zip(dim_vector(n, v), dim_vector(n, w))) != dx:
        return LaurentPoly.zero()
    e = dim_vector(n, w)
    degree_bound = sum(ei * (di - ei) for ei, di in zip(e, dx)) + 1
    needed = degree_bound + 2
    if needed > len(PRIMES):
        raise ScaleExceeded("degree bound outruns the prime table")
    primes = PRIMES[:needed]
    counts = [count_submodules(n, x, w, v, p) for p in primes]
    poly = _lagrange(primes[:-1], counts[:-1])
    held_out = primes[-1]
    if poly.evaluate(held_out) != counts[-1]:
        raise InterpolationInconsistent(
            f"H^{format_module(x)}_{{{format_module(v)},{format_module(w)}}}: "
            f"fit predicts {poly.evaluate(held_out)} at p={held_out}, count is {counts[-1]}"
        )
    return poly


def _lagrange(xs, ys) -> LaurentPoly:
    # Denominators must clear exactly: the counts come from a polynomial.
    coeffs: dict[int, Fraction] = {}
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = {0: Fraction(1)}
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            new: dict[int, Fraction] = {}
            for e, c in basis.items():
                new[e + 1] = new.get(e + 1, 0) + c
                new[e] = new.get(e, 0) - c * xj
            basis = new
            denom *= xi - xj
        for e, c in basis.items():
            coeffs[e] = coeffs.get(e, Fraction(0)) + Fraction(yi) * c / denom
    out = {}
    for e, c in coeffs.items():
        if c:
            if c.denominator != 1:
                raise InterpolationInconsistent("non-integer interpolated coefficient")
            out[e] = int(c)
    return LaurentPoly(out)


# -- the twisted product and commutators -------------------------------------


class HallElement:
    """Finite Z[q,q^-1]-combination of module classes."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms: dict[Module, LaurentPoly] = {}
        for mod, poly in (terms or {}).items():
            if not poly.is_zero():
                self.terms[mod] = poly

    @classmethod
    def basis(cls, n: int, m: Module) -> "HallElement":
        return cls(n, {m: LaurentPoly.one()})

    def __add__(self, other: "HallElement") -> "HallElement":
        out = dict(self.terms)
        for mod, poly in other.terms.items():
            out[mod] = out.get(mod, LaurentPoly.zero()) + poly
        return HallElement(self.n, out)

    def __sub__(self, other: "HallElement") -> "HallElement":
        out = dict(self.terms)
        for mod, poly in other.terms.items():
            out[mod] = out.get(mod, LaurentPoly.zero()) - poly
        return HallElement(self.n, out)

    def scaled(self, poly: LaurentPoly) -> "HallElement":
        return HallElement(self.n, {m: p * poly for m, p in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HallElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def support(self) -> list[Module]:
        return sorted(self.terms)

    def to_dict(self) -> dict:
        return {
            format_module(m): poly.to_dict()
            for m, poly in sorted(self.terms.items())
        }

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({poly})*F[{format_module(m)}]"
            for m, poly in sorted(self.terms.items())
        )


def _all_modules_with_dims(n: int, target) -> list[Module]:
    intervals = [
        (a, b) for a in range(1, n + 1) for b in range(a, n + 1)
        if all(target[v - 1] > 0 for v in range(a, b + 1))
    ]
    out: list[Module] = []

    def walk(idx: int, remaining, chosen: list[Interval]):
        if all(x == 0 for x in remaining):
            out.append(tuple(sorted(chosen)))
            return
        if idx == len(intervals):
            return
        a, b = intervals[idx]
        cap = min(remaining[v - 1] for v in range(a, b + 1))
        for m in range(cap, -1, -1):
            walk(idx + 1, tuple(
                r - m if a <= v + 1 <= b else r for v, r in enumerate(remaining)
            ), chosen + [(a, b)] * m)

    walk(0, tuple(target), [])
    return sorted(set(out))


def hall_product(n: int, m1: Module, m2: Module) -> HallElement:
    """F_{M1} . F_{M2} in the twisted Hall algebra."""
    return _hall_product_cached(n, normalize_module(m1), normalize_module(m2))


@lru_cache(maxsize=None)
def _hall_product_cached(n: int, m1: Module, m2: Module) -> HallElement:
    target = tuple(
        a + b for a, b in zip(dim_vector(n, m1), dim_vector(n, m2))
    )
    _check_scale(n, m1 + m2)
    base_exp = hom_dim(m1, m1) + hom_dim(m2, m2) + euler_form(
        n, dim_vector(n, m1), dim_vector(n, m2)
    )
    terms: dict[Module, LaurentPoly] = {}
    for x in _all_modules_with_dims(n, target):
        h = hall_polynomial(n, m1, m2, x)
        if h.is_zero():
            continue
        coeff = LaurentPoly.q_power(base_exp - hom_dim(x, x)) * h.subst_square()
        terms[x] = coeff
    return HallElement(n, terms)


def q_commutator(n: int, v: Interval, u: Interval) -> HallElement:
    """[F_V, F_U]_q = F_V F_U - q^{[U,V]-[V,U]^1} F_U F_V for directed U, V.

    The split class U+V must cancel exactly; if it survives, the exponent
    convention has been violated and the computation aborts.
    """
    vm: Module = (tuple(v),)
    um: Module = (tuple(u),)
    if hom_dim(vm, um) != 0 and v != u:
        raise ValueError(
            f"Hom({format_module(vm)},{format_module(um)}) != 0: wrong order"
        )
    exponent = hom_dim(um, vm) - ext_dim(n, vm, um)
    left = hall_product(n, vm, um)
    right = hall_product(n, um, vm).scaled(LaurentPoly.q_power(exponent))
    result = left - right
    split = normalize_module((tuple(v), tuple(u)))
    if split in result.terms:
        raise SplitTermSurvived(
            f"split class {format_module(split)} survives with {result.terms[split]}"
        )
    return result


def pbw_monomial(n: int, factors) -> HallElement:
    """Product of divided powers F_{U}^{(m)} in the given order."""
    out: HallElement | None = None
    for interval, mult in factors:
        single: Module = (tuple(interval),)
        power: HallElement | None = None
        for _ in range(mult):
            power = (
                HallElement.basis(n, single)
                if power is None
                else _element_times_basis(power, single)
            )
        if power is None:
            continue
        divided = HallElement(
            n,
            {m: p.divide_exact(q_factorial(mult)) for m, p in power.terms.items()},
        )
        out = divided if out is None else _element_product(out, divided)
    return out if out is not None else HallElement(n, {(): LaurentPoly.one()})


def _element_times_basis(elem: HallElement, m2: Module) -> HallElement:
    out = HallElement(elem.n, {})
    for m1, poly in elem.terms.items():
        out = out + hall_product(elem.n, m1, m2).scaled(poly)
    return out


def _element_product(a: HallElement, b: HallElement) -> HallElement:
    out = HallElement(a.n, {})
    for m2, poly in b.terms.items():
        out = out + _element_times_basis(a, m2).scaled(poly)
    return out


# -- bridge to word contexts -------------------------------------------------


def interval_of_root(beta) -> Interval:
    """The support [a,b] of an interval root; rejects non-contiguous vectors."""
    ones = [i + 1 for i, x in enumerate(beta) if x == 1]
    if not ones or any(x not in (0, 1) for x in beta):
        raise ValueError(f"{beta} is not an interval root")
    a, b = ones[0], ones[-1]
    if ones != list(range(a, b + 1)):
        raise ValueError(f"{beta} is not an interval root")
    return a, b


def module_from_positions(ctx, mult) -> Module:
    """Interval multiset of a position-multiplicity vector of a RepContext."""
    intervals = []
    for pos, m in enumerate(mult, start=1):
        if m:
            intervals.extend([interval_of_root(ctx.betas[pos - 1])] * m)
    return normalize_module(intervals)


def _require_equioriented(quiver):
    expected = tuple((i, i + 1) for i in range(1, quiver.n))
    if tuple(sorted(quiver.arrows)) != expected:
        raise ScaleExceeded(
            "the finite-field oracle only supports the equioriented A quiver"
        )


def verify_term_theorem(quiver, word, k: int) -> dict:
    """Check the predicted inner-window monomial appears in the commutator.

    For l = k[1], the commutator [F_{U_l}, F_{U_k}]_q must contain the class
    of the module with multiplicity c_s = -a(i_s, i_k) on each inner position
    s; returns the commutator support and the verdict.
    """
    from .quiverrep import RepContext

    _require_equioriented(quiver)
    ctx = RepContext(quiver, word)
    l = k_shift(ctx.word, k)
    if l is None:
        raise ValueError(f"position {k} has no later occurrence of its letter")
    n = quiver.n
    cartan = quiver.cartan
    predicted = []
    for s in range(k + 1, l):
        c_s = -cartan.a(ctx.word[s - 1], ctx.word[k - 1])
        predicted.extend([interval_of_root(ctx.betas[s - 1])] * c_s)
    predicted_module = normalize_module(predicted)
    comm = q_commutator(
        n, interval_of_root(ctx.betas[l - 1]), interval_of_root(ctx.betas[k - 1])
    )
    present = predicted_module in comm.terms
    return {
        "pair": [k, l],
        "predicted": format_module(predicted_module),
        "coefficient": comm.terms.get(predicted_module, LaurentPoly.zero()).to_dict(),
        "support": [format_module(m) for m in comm.support()],
        "verified": present,
    }
