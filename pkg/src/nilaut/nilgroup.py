"""Exact arithmetic in finitely generated free nilpotent groups.

A free nilpotent group of rank n and class s is coordinatized by the Hall
basis of basic commutators of weight at most s.  Every element has a unique
collected normal form b_1^{e_1} ... b_K^{e_K} with the b_i in basis order,
and is stored as the exponent vector (e_1, ..., e_K) of arbitrary-precision
integers.

Conventions, fixed once and used by every module in this package:

  * commutator: [g, h] = g^-1 h^-1 g h; left-normed [a, b, c] = [[a, b], c]
  * Hall basis order: weight ascending, then lexicographically on shape
  * the weight filtration N = N_1 >= N_2 >= ... >= N_s: an element lies in
    N_m exactly when its exponents vanish on all basis elements of weight
    less than m; the identity gets the sentinel weight s + 1

Multiplication, inversion and powers are computed through an exact
truncated-series embedding (generators map to 1 + X_i in the free
associative ring over the X_i, truncated above degree s), which is faithful
and keeps all arithmetic in integers.  Word collection (`collect`) runs the
staged collect-from-the-left rewriting over basis letters; its pairwise
correction table is produced by the same exact bracket arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError

__all__ = [
    "HallBasisElement",
    "GroupContext",
    "GroupElement",
    "FreeWord",
    "identity",
    "generator",
    "basis_element",
    "from_exponents",
    "multiply",
    "invert",
    "power",
    "commutator",
    "weight",
    "project_to_class",
    "collect",
    "parse_element",
    "format_element",
    "element_to_json",
    "element_from_json",
    "generator_word",
]


@dataclass(frozen=True)
class HallBasisElement:
    """One basic commutator: a generator or a bracket of earlier entries."""

    index: int
    weight: int
    shape: object  # generator position, or a pair (left, right) of indices
    name: str


def _build_basis(rank: int, cls: int):
    elems = []  # (weight, shape)
    for j in range(rank):
        elems.append((1, j))
    for w in range(2, cls + 1):
        cands = []
        for li in range(len(elems)):
            wl = elems[li][0]
            wr = w - wl
            if wr < 1:
                continue
            for ri in range(len(elems)):
                if elems[ri][0] != wr or li <= ri:
                    continue
                shl = elems[li][1]
                if isinstance(shl, tuple) and shl[1] > ri:
                    continue
                cands.append((li, ri))
        cands.sort()
        for pair in cands:
            elems.append((w, pair))
    out = []
    for idx, (w, shape) in enumerate(elems):
        if isinstance(shape, tuple):
            name = "[%s,%s]" % (out[shape[0]].name, out[shape[1]].name)
        else:
            name = "x%d" % (shape + 1)
        out.append(HallBasisElement(idx, w, shape, name))
    return out


def _binom(e: int, k: int) -> int:
    num = 1
    for j in range(k):
        num *= e - j
    return num // math.factorial(k)


class GroupContext:
    """Rank, class, Hall basis and the precomputed collection machinery."""

    _cache: dict = {}

    def __init__(self, rank: int, nilpotency_class: int):
        if rank < 2:
            raise InputError("rank must be at least 2, got %r" % (rank,))
        if nilpotency_class < 1:
            raise InputError(
                "nilpotency class must be at least 1, got %r" % (nilpotency_class,)
            )
        self.rank = rank
        self.nilpotency_class = nilpotency_class
        self.basis = tuple(_build_basis(rank, nilpotency_class))
        self.dim = len(self.basis)
        self._shape_index = {b.shape: b.index for b in self.basis}
        starts = {}
        for b in self.basis:
            starts.setdefault(b.weight, b.index)
        self._weight_ranges = {}
        for w in range(1, nilpotency_class + 1):
            lo = starts[w]
            hi = starts.get(w + 1, self.dim)
            self._weight_ranges[w] = (lo, hi)
        s = nilpotency_class
        self._deg_sizes = [rank**d for d in range(s + 1)]
        self._basis_series = []
        for b in self.basis:
            self._basis_series.append(self._series_of_basis(b))
        self._bpowers = []
        for ser in self._basis_series:
            u = [list(blk) for blk in ser]
            u[0][0] -= 1
            powers = []
            cur = u
            while any(any(blk) for blk in cur):
                powers.append(cur)
                cur = _series_mul(self, cur, u)
            self._bpowers.append(powers)
        self._solvers = {}
        for w in range(2, s + 1):
            lo, hi = self._weight_ranges[w]
            cols = [self._lie_poly(i) for i in range(lo, hi)]
            self._solvers[w] = _left_inverse(cols, self._deg_sizes[w])
        self._commtab = {}
        self._gen_letter_words = [None] * self.dim
        self._light_start = self.dim
        for b in self.basis:
            if 2 * b.weight > s:
                self._light_start = b.index
                break

    @classmethod
    def get(cls, rank: int, nilpotency_class: int) -> "GroupContext":
        key = (rank, nilpotency_class)
        ctx = cls._cache.get(key)
        if ctx is None:
            ctx = cls(rank, nilpotency_class)
            cls._cache[key] = ctx
        return ctx

    def weight_range(self, w: int):
        return self._weight_ranges[w]

    def basis_names(self):
        return [b.name for b in self.basis]

    def _series_of_basis(self, b: HallBasisElement):
        if not isinstance(b.shape, tuple):
            ser = _unit_series(self)
            ser[1][b.shape] = 1
            return ser
        left = self._basis_series[b.shape[0]]
        right = self._basis_series[b.shape[1]]
        return _series_comm(self, left, right)

    def _lie_poly(self, index: int):
        # homogeneous bracketing polynomial of the basis element, as a dense
        # coefficient vector over the degree-w monomials
        b = self.basis[index]
        if not isinstance(b.shape, tuple):
            vec = [0] * self.rank
            vec[b.shape] = 1
            return vec
        li, ri = b.shape
        pl = self._lie_poly(li)
        pr = self._lie_poly(ri)
        wl = self.basis[li].weight
        wr = self.basis[ri].weight
        out = [0] * self._deg_sizes[wl + wr]
        width_r = self._deg_sizes[wr]
        width_l = self._deg_sizes[wl]
        for i, a in enumerate(pl):
            if a:
                base = i * width_r
                for j, c in enumerate(pr):
                    if c:
                        out[base + j] += a * c
        for i, a in enumerate(pr):
            if a:
                base = i * width_l
                for j, c in enumerate(pl):
                    if c:
                        out[base + j] -= a * c
        return out

    def __eq__(self, other):
        return (
            isinstance(other, GroupContext)
            and self.rank == other.rank
            and self.nilpotency_class == other.nilpotency_class
        )

    def __hash__(self):
        return hash((self.rank, self.nilpotency_class))

    def __repr__(self):
        return "GroupContext(rank=%d, class=%d)" % (self.rank, self.nilpotency_class)


def _left_inverse(columns, nrows):
    """Integer matrix N and denominator d with (N/d) . S = identity.

    S is the matrix whose columns are the given vectors; they are linearly
    independent, so a rational left inverse exists.  The result is applied
    as exact integer arithmetic followed by a checked division.
    """
    ncols = len(columns)
    rows = []
    for r in range(nrows):
        row = [Fraction(columns[k][r]) for k in range(ncols)]
        row.extend(Fraction(1 if j == r else 0) for j in range(nrows))
        rows.append(row)
    piv = 0
    for col in range(ncols):
        sel = None
        for r in range(piv, nrows):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            raise AssertionError("bracket polynomials are not independent")
        rows[piv], rows[sel] = rows[sel], rows[piv]
        pv = rows[piv][col]
        if pv != 1:
            rows[piv] = [x / pv for x in rows[piv]]
        for r in range(nrows):
            if r != piv and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[piv])]
        piv += 1
    tmat = [row[ncols:] for row in rows[:ncols]]
    den = 1
    for row in tmat:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    nmat = [[int(x * den) for x in row] for row in tmat]
    return nmat, den


# ---------------------------------------------------------------------------
# truncated-series arithmetic (internal)
# ---------------------------------------------------------------------------


def _zero_series(ctx):
    return [[0] * size for size in ctx._deg_sizes]


def _unit_series(ctx):
    ser = _zero_series(ctx)
    ser[0][0] = 1
    return ser


def _series_mul(ctx, a, b):
    s = ctx.nilpotency_class
    sizes = ctx._deg_sizes
    out = [[0] * size for size in sizes]
    for d1 in range(s + 1):
        ad = a[d1]
        if not any(ad):
            continue
        for d2 in range(s + 1 - d1):
            bd = b[d2]
            if not any(bd):
                continue
            od = out[d1 + d2]
            if d1 == 0:
                c = ad[0]
                for j, y in enumerate(bd):
                    if y:
                        od[j] += c * y
            elif d2 == 0:
                c = bd[0]
                for i, x in enumerate(ad):
                    if x:
                        od[i] += x * c
            else:
                width = sizes[d2]
                for i, x in enumerate(ad):
                    if x:
                        base = i * width
                        for j, y in enumerate(bd):
                            if y:
                                od[base + j] += x * y
    return out


def _series_iadd_scaled(acc, ser, c):
    for blk_a, blk_s in zip(acc, ser):
        for i, v in enumerate(blk_s):
            if v:
                blk_a[i] += c * v


def _series_unit_inv(ctx, a):
    if a[0][0] != 1:
        raise AssertionError("series is not a group image")
    nu = [[-v for v in blk] for blk in a]
    nu[0][0] = 0
    out = _unit_series(ctx)
    term = _unit_series(ctx)
    for _ in range(ctx.nilpotency_class):
        term = _series_mul(ctx, term, nu)
        if not any(any(blk) for blk in term):
            break
        _series_iadd_scaled(out, term, 1)
    return out


def _series_comm(ctx, a, b):
    ab = _series_mul(ctx, a, b)
    ba = _series_mul(ctx, b, a)
    return _series_mul(ctx, _series_unit_inv(ctx, ba), ab)


def _series_unit_power(ctx, a, e):
    """(unit series)^e for any integer e, by the binomial expansion."""
    if a[0][0] != 1:
        raise AssertionError("series is not a group image")
    u = [list(blk) for blk in a]
    u[0][0] = 0
    out = _unit_series(ctx)
    term = _unit_series(ctx)
    for k in range(1, ctx.nilpotency_class + 1):
        term = _series_mul(ctx, term, u)
        if not any(any(blk) for blk in term):
            break
        c = _binom(e, k)
        if c:
            _series_iadd_scaled(out, term, c)
    return out


def _coord_factor(ctx, i, e):
    """The series of b_i^e, from the precomputed powers of b_i - 1."""
    out = _unit_series(ctx)
    for k, bp in enumerate(ctx._bpowers[i], start=1):
        c = _binom(e, k)
        if c:
            _series_iadd_scaled(out, bp, c)
    return out


def _series_of_coords(ctx, exps):
    # basis factors with 2 * weight > s have no surviving squares or cross
    # terms, so their ordered product collapses to 1 + sum of c * B exactly;
    # only the low-weight prefix needs genuine series multiplications
    cut = ctx._light_start
    out = None
    for i in range(cut):
        e = exps[i]
        if e:
            f = _coord_factor(ctx, i, e)
            out = f if out is None else _series_mul(ctx, out, f)
    tail = None
    for i in range(cut, ctx.dim):
        e = exps[i]
        if e:
            if tail is None:
                tail = _unit_series(ctx)
            _series_iadd_scaled(tail, ctx._bpowers[i][0], e)
    if tail is not None:
        out = tail if out is None else _series_mul(ctx, out, tail)
    return out if out is not None else _unit_series(ctx)


def _series_to_coords(ctx, ser):
    """Collected exponent vector of a series that represents a group element."""
    if ser[0][0] != 1:
        raise AssertionError("series is not a group image")
    s = ctx.nilpotency_class
    exps = [0] * ctx.dim
    r = ser
    for w in range(1, s + 1):
        lo, hi = ctx._weight_ranges[w]
        block = r[w]
        if w == 1:
            coords = list(block)
        else:
            nmat, den = ctx._solvers[w]
            coords = []
            for row in nmat:
                acc = 0
                for coeff, x in zip(row, block):
                    if coeff and x:
                        acc += coeff * x
                q, rem = divmod(acc, den)
                if rem:
                    raise AssertionError("non-integral collected coordinate")
                coords.append(q)
        for k, c in enumerate(coords):
            exps[lo + k] = c
        if any(coords) and w < s:
            # left-divide by the weight-w prefix: its inverse is the ordered
            # product of the negated-exponent factors, which collapses to
            # 1 - sum of c * B once squares and cross terms truncate
            if 2 * w > s:
                inv_prefix = _unit_series(ctx)
                for k, c in enumerate(coords):
                    if c:
                        _series_iadd_scaled(inv_prefix, ctx._bpowers[lo + k][0], -c)
            else:
                inv_prefix = None
                for k in range(len(coords) - 1, -1, -1):
                    c = coords[k]
                    if c:
                        f = _coord_factor(ctx, lo + k, -c)
                        inv_prefix = (
                            f if inv_prefix is None else _series_mul(ctx, inv_prefix, f)
                        )
            r = _series_mul(ctx, inv_prefix, r)
    return tuple(exps)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class GroupElement:
    """A group element in collected normal form over the Hall basis."""

    __slots__ = ("context", "exponents", "_series")

    def __init__(self, context: GroupContext, exponents):
        self.context = context
        self.exponents = tuple(exponents)
        self._series = None

    def _magnus(self):
        if self._series is None:
            self._series = _series_of_coords(self.context, self.exponents)
        return self._series

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.context == other.context
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.context.rank, self.context.nilpotency_class, self.exponents))

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, k):
        return power(self, k)

    def __repr__(self):
        return "<%s>" % format_element(self)


def identity(ctx: GroupContext) -> GroupElement:
    return GroupElement(ctx, (0,) * ctx.dim)


def generator(ctx: GroupContext, i: int) -> GroupElement:
    """The i-th free generator, 1-based as in the text grammar."""
    if not 1 <= i <= ctx.rank:
        raise InputError("generator index %r out of range 1..%d" % (i, ctx.rank))
    exps = [0] * ctx.dim
    exps[i - 1] = 1
    return GroupElement(ctx, exps)


def basis_element(ctx: GroupContext, index: int) -> GroupElement:
    if not 0 <= index < ctx.dim:
        raise InputError("basis index %r out of range" % (index,))
    exps = [0] * ctx.dim
    exps[index] = 1
    return GroupElement(ctx, exps)


def from_exponents(ctx: GroupContext, exps) -> GroupElement:
    exps = tuple(int(e) for e in exps)
    if len(exps) != ctx.dim:
        raise InputError(
            "expected %d exponents for %r, got %d" % (ctx.dim, ctx, len(exps))
        )
    return GroupElement(ctx, exps)


def _same_context(g: GroupElement, h: GroupElement) -> GroupContext:
    if g.context != h.context:
        raise InputError("context mismatch: %r vs %r" % (g.context, h.context))
    return g.context


def _multiply_class2(g: GroupElement, h: GroupElement) -> GroupElement:
    # closed form at class 2: weight-1 exponents add, and moving the second
    # factor's generators left past the first factor's contributes a_k * b_j
    # on the basis bracket [x_k, x_j]
    ctx = g.context
    a = g.exponents
    b = h.exponents
    out = [x + y for x, y in zip(a, b)]
    for idx in range(ctx.rank, ctx.dim):
        k, j = ctx.basis[idx].shape
        out[idx] += a[k] * b[j]
    return GroupElement(ctx, out)


def _multiply_series(g: GroupElement, h: GroupElement) -> GroupElement:
    ctx = g.context
    ser = _series_mul(ctx, g._magnus(), h._magnus())
    return GroupElement(ctx, _series_to_coords(ctx, ser))


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    """Collected product g * h."""
    ctx = _same_context(g, h)
    if ctx.nilpotency_class == 2:
        return _multiply_class2(g, h)
    return _multiply_series(g, h)


def invert(g: GroupElement) -> GroupElement:
    ctx = g.context
    ser = _series_unit_inv(ctx, g._magnus())
    return GroupElement(ctx, _series_to_coords(ctx, ser))


def power(g: GroupElement, k: int) -> GroupElement:
    """k-th power for any integer k, exact and independent of |k|."""
    ctx = g.context
    ser = _series_unit_power(ctx, g._magnus(), int(k))
    return GroupElement(ctx, _series_to_coords(ctx, ser))


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    """[g, h] = g^-1 h^-1 g h."""
    ctx = _same_context(g, h)
    ser = _series_comm(ctx, g._magnus(), h._magnus())
    return GroupElement(ctx, _series_to_coords(ctx, ser))


def weight(g: GroupElement) -> int:
    """Largest m with g in N_m; the identity returns the sentinel s + 1."""
    ctx = g.context
    for w in range(1, ctx.nilpotency_class + 1):
        lo, hi = ctx._weight_ranges[w]
        if any(g.exponents[lo:hi]):
            return w
    return ctx.nilpotency_class + 1


def project_to_class(g: GroupElement, m: int) -> GroupElement:
    """Image of g in the class-m quotient context (a group homomorphism)."""
    ctx = g.context
    if not 1 <= m <= ctx.nilpotency_class:
        raise InputError("class %r out of range 1..%d" % (m, ctx.nilpotency_class))
    if m == ctx.nilpotency_class:
        return g
    tgt = GroupContext.get(ctx.rank, m)
    return GroupElement(tgt, g.exponents[: tgt.dim])


# ---------------------------------------------------------------------------
# words and collection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeWord:
    """A word in the free generators: a sequence of (index, sign) letters.

    Indices are 1-based; signs are +1 or -1.
    """

    letters: tuple

    @classmethod
    def from_pairs(cls, pairs) -> "FreeWord":
        return cls(tuple((int(i), int(s)) for i, s in pairs))

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((i, -s) for i, s in reversed(self.letters)))

    def __add__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)


def _comm_runs(ctx, u, ue, v, ve):
    """Correction word for swapping b_u^ue leftwards past b_v^ve.

    Returns the collected runs of [b_u^ue, b_v^ve]; every run has weight at
    least weight(u) + weight(v), so staged collection only ever pushes
    corrections into later stages.
    """
    key = (u, ue, v, ve)
    hit = ctx._commtab.get(key)
    if hit is None:
        a = _coord_factor(ctx, u, ue)
        b = _coord_factor(ctx, v, ve)
        ser = _series_comm(ctx, a, b)
        exps = _series_to_coords(ctx, ser)
        hit = tuple((i, e) for i, e in enumerate(exps) if e)
        ctx._commtab[key] = hit
    return hit


def _collect_letters(ctx, letters):
    """Staged collect-from-the-left over 0-based basis letter runs.

    Stage i moves every run of basis letter i to the front, one adjacent
    swap at a time; each swap u^a . i^e -> i^e . u^a . [u^a, i^e]
    re-expresses the correction in basic commutators of strictly larger
    weight, and weight > s corrections vanish, so the process terminates.
    """
    work = []
    for idx, e in letters:
        if not e:
            continue
        if work and work[-1][0] == idx:
            merged = work[-1][1] + e
            if merged:
                work[-1] = (idx, merged)
            else:
                work.pop()
        else:
            work.append((idx, e))
    exps = [0] * ctx.dim
    s = ctx.nilpotency_class
    weights = [b.weight for b in ctx.basis]
    for stage in range(ctx.dim):
        if not work:
            break
        w_stage = weights[stage]
        total = 0
        prefix = []

        def push(idx, e):
            if not e:
                return
            if prefix and prefix[-1][0] == idx:
                merged = prefix[-1][1] + e
                if merged:
                    prefix[-1] = (idx, merged)
                else:
                    prefix.pop()
            else:
                prefix.append((idx, e))

        for u, e in work:
            if u != stage:
                push(u, e)
                continue
            total += e
            # the run moves left past every prefix run; corrections of
            # weight above s vanish, which the weight test short-circuits
            if prefix:
                old = prefix
                prefix = []
                for pu, pe in old:
                    push(pu, pe)
                    if weights[pu] + w_stage <= s:
                        for ci, ce in _comm_runs(ctx, pu, pe, stage, e):
                            push(ci, ce)
        exps[stage] = total
        work = prefix
    if work:
        raise AssertionError("collection left uncollected letters")
    return tuple(exps)


def collect(ctx: GroupContext, word) -> GroupElement:
    """Collected normal form of a word in the free generators.

    Accepts a FreeWord or any iterable of (generator index, sign) pairs with
    1-based indices and signs in {+1, -1}.  Concatenation of words maps to
    multiplication of the collected elements.
    """
    if isinstance(word, FreeWord):
        pairs = word.letters
    else:
        pairs = tuple(word)
    letters = []
    for i, s in pairs:
        if not 1 <= i <= ctx.rank:
            raise InputError("generator index %r out of range 1..%d" % (i, ctx.rank))
        if s not in (1, -1):
            raise InputError("letter sign must be +1 or -1, got %r" % (s,))
        letters.append((i - 1, s))
    return GroupElement(ctx, _collect_letters(ctx, letters))


def _basis_letter_word(ctx, index):
    # defining word of a basis element over 1-based generator letters
    cached = ctx._gen_letter_words[index]
    if cached is None:
        b = ctx.basis[index]
        if not isinstance(b.shape, tuple):
            cached = ((b.shape + 1, 1),)
        else:
            wl = _basis_letter_word(ctx, b.shape[0])
            wr = _basis_letter_word(ctx, b.shape[1])
            inv_l = tuple((i, -s) for i, s in reversed(wl))
            inv_r = tuple((i, -s) for i, s in reversed(wr))
            cached = inv_l + inv_r + wl + wr
        ctx._gen_letter_words[index] = cached
    return cached


def generator_word(g: GroupElement) -> FreeWord:
    """A word in the free generators whose collected form is g."""
    ctx = g.context
    letters = []
    for i, e in enumerate(g.exponents):
        if e:
            base = _basis_letter_word(ctx, i)
            if e < 0:
                base = tuple((j, -s) for j, s in reversed(base))
            letters.extend(base * abs(e))
    return FreeWord(tuple(letters))


# ---------------------------------------------------------------------------
# text grammar and serialization
# ---------------------------------------------------------------------------

_GEN_RE = re.compile(r"x(\d+)")
_INT_RE = re.compile(r"[+-]?\d+")


def _parse_atom(ctx, text, pos):
    if text[pos] == "x":
        m = _GEN_RE.match(text, pos)
        if not m:
            raise InputError("malformed generator at position %d in %r" % (pos, text))
        j = int(m.group(1))
        if not 1 <= j <= ctx.rank:
            raise InputError("generator x%d out of range for rank %d" % (j, ctx.rank))
        return j - 1, m.end()
    if text[pos] == "[":
        left, pos = _parse_atom(ctx, text, pos + 1)
        if pos >= len(text) or text[pos] != ",":
            raise InputError("expected ',' in bracket of %r" % (text,))
        right, pos = _parse_atom(ctx, text, pos + 1)
        if pos >= len(text) or text[pos] != "]":
            raise InputError("expected ']' in bracket of %r" % (text,))
        idx = ctx._shape_index.get((left, right))
        if idx is None:
            raise InputError(
                "bracket [%s,%s] is not a basic commutator of this context"
                % (ctx.basis[left].name, ctx.basis[right].name)
            )
        return idx, pos + 1
    raise InputError("unexpected character %r at position %d" % (text[pos], pos))


def parse_element(ctx: GroupContext, text: str) -> GroupElement:
    """Parse the element grammar: products of x<i>^<k> and bracket factors."""
    s = text.strip()
    if s == "1":
        return identity(ctx)
    if not s:
        raise InputError("empty element text")
    pos = 0
    result = identity(ctx)
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        idx, pos = _parse_atom(ctx, s, pos)
        exp = 1
        if pos < len(s) and s[pos] == "^":
            m = _INT_RE.match(s, pos + 1)
            if not m:
                raise InputError("malformed exponent in %r" % (text,))
            exp = int(m.group(0))
            pos = m.end()
        result = multiply(result, power(basis_element(ctx, idx), exp))
    return result


def format_element(g: GroupElement) -> str:
    """Canonical text: factors in basis order, zero exponents omitted."""
    parts = []
    for b, e in zip(g.context.basis, g.exponents):
        if e == 1:
            parts.append(b.name)
        elif e:
            parts.append("%s^%d" % (b.name, e))
    return " ".join(parts) if parts else "1"


def element_to_json(g: GroupElement) -> list:
    return list(g.exponents)


def element_from_json(ctx: GroupContext, data) -> GroupElement:
    return from_exponents(ctx, data)
