"""Weighted automata over exact rationals.

A machine of dimension d has an input weight vector s0, one d x d
transition matrix per symbol (column = source state, row = target), and
an output weight vector f. The value of a word w is f^T M(w) s0 where
M(eps) is the identity and M(wa) = M(a) M(w).

Everything here is exact: weights are `fractions.Fraction`, rank
computations use Gaussian elimination with exact pivots, and equivalence
is decided by saturating the reachable subspace of a difference machine.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .words import EPSILON, Alphabet, Suite, Verdict, Word, concat_suites, words_upto
from .fsm import EquivResult

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)


def _vec(entries: Iterable) -> Vec:
    return tuple(Fraction(x) for x in entries)


def _mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(_vec(r) for r in rows)


def _mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(sum((row[j] * v[j] for j in range(len(v))), ZERO) for row in m)


def _row_mat(r: Vec, m: Mat) -> Vec:
    n = len(r)
    return tuple(sum((r[i] * m[i][j] for i in range(n)), ZERO) for j in range(n))


def _dot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


class _Echelon:
    """Incremental exact row echelon form for rank tracking."""

    def __init__(self):
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def _reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                c = v[p] / row[p]
                for j in range(len(v)):
                    v[j] -= c * row[j]
        return v

    def add(self, v: Sequence[Fraction]) -> bool:
        """Insert v; True iff it was independent of the rows so far."""
        r = self._reduce(v)
        for p, x in enumerate(r):
            if x != 0:
                self.rows.append(r)
                self.pivots.append(p)
                return True
        return False

    def contains(self, v: Sequence[Fraction]) -> bool:
        return all(x == 0 for x in self._reduce(v))

    @property
    def rank(self) -> int:
        return len(self.rows)


def _coords(basis: Sequence[Vec], v: Vec) -> Vec:
    """Coordinates of v in a linearly independent basis (must lie in its span)."""
    if not basis:
        if any(x != 0 for x in v):
            raise ValueError("vector outside the span of an empty basis")
        return ()
    n = len(v)
    k = len(basis)
    # augmented system: columns are basis vectors
    aug = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(n)]
    piv_rows = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if pr is None:
            raise ValueError("basis vectors are not independent")
        aug[r], aug[pr] = aug[pr], aug[r]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c] / aug[r][c]
                for j in range(c, k + 1):
                    aug[i][j] -= f * aug[r][j]
        piv_rows.append(r)
        r += 1
    for i in range(r, n):
        if aug[i][k] != 0:
            raise ValueError("vector outside the span of the basis")
    return tuple(aug[piv_rows[c]][k] / aug[piv_rows[c]][c] for c in range(k))


@dataclass(frozen=True)
class Wa:
    """A weighted automaton over the rationals."""

    alphabet: Alphabet
    dim: int
    s0: Vec
    mats: tuple[Mat, ...]
    f: Vec

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        object.__setattr__(self, "s0", _vec(self.s0))
        object.__setattr__(self, "f", _vec(self.f))
        object.__setattr__(self, "mats", tuple(_mat(m) for m in self.mats))
        if len(self.s0) != self.dim or len(self.f) != self.dim:
            raise ValueError("weight vectors must have length dim")
        if len(self.mats) != len(self.alphabet):
            raise ValueError("one transition matrix per alphabet symbol required")
        for m in self.mats:
            if len(m) != self.dim or any(len(row) != self.dim for row in m):
                raise ValueError("transition matrices must be dim x dim")


@dataclass(frozen=True)
class VecSpaceBasis:
    """Independent vectors with the words that produced them."""

    vectors: tuple[Vec, ...]
    witnesses: tuple[Word, ...]

    def __post_init__(self):
        if len(self.vectors) != len(self.witnesses):
            raise ValueError("vectors and witnesses must be parallel")

    @property
    def rank(self) -> int:
        return len(self.vectors)


def wa_lang(a: Wa, w: Word) -> Fraction:
    """f^T M(w) s0, computed exactly."""
    for s in w.syms:
        if not 0 <= s < len(a.alphabet):
            raise ValueError(f"symbol index {s} outside the alphabet")
    v = a.s0
    for s in w.syms:
        v = _mat_vec(a.mats[s], v)
    return _dot(a.f, v)


def forward_basis(a: Wa) -> VecSpaceBasis:
    """Basis of span{M(w) s0} with length-lex minimal, prefix-closed witnesses."""
    ech = _Echelon()
    vecs: list[Vec] = []
    wits: list[Word] = []
    queue: deque[tuple[Word, Vec]] = deque()
    if ech.add(a.s0):
        vecs.append(a.s0)
        wits.append(EPSILON)
        queue.append((EPSILON, a.s0))
    while queue:
        w, v = queue.popleft()
        for s in range(len(a.alphabet)):
            nv = _mat_vec(a.mats[s], v)
            if ech.add(nv):
                nw = w + Word((s,))
                vecs.append(nv)
                wits.append(nw)
                queue.append((nw, nv))
    return VecSpaceBasis(tuple(vecs), tuple(wits))


def backward_basis(a: Wa) -> VecSpaceBasis:
    """Basis of the observation row space span{f^T M(w)}.

    Witnesses are length-lex minimal; note that extending a witness w to
    bw corresponds to multiplying its row by M(b) on the right, so the
    witness set is closed under removing the first letter.
    """
    ech = _Echelon()
    vecs: list[Vec] = []
    wits: list[Word] = []
    layer: list[tuple[Word, Vec]] = []
    if ech.add(a.f):
        vecs.append(a.f)
        wits.append(EPSILON)
        layer.append((EPSILON, a.f))
    while layer:
        nxt: list[tuple[Word, Vec]] = []
        for s in range(len(a.alphabet)):
            for w, r in layer:
                nr = _row_mat(r, a.mats[s])
                if ech.add(nr):
                    nw = Word((s,)) + w
                    vecs.append(nr)
                    wits.append(nw)
                    nxt.append((nw, nr))
        layer = nxt
    order = sorted(range(len(wits)), key=lambda i: (len(wits[i].syms), wits[i].syms))
    return VecSpaceBasis(tuple(vecs[i] for i in order), tuple(wits[i] for i in order))


def _obs_row(a: Wa, w: Word) -> Vec:
    r = a.f
    for s in reversed(w.syms):
        r = _row_mat(r, a.mats[s])
    return r


def is_state_cover_wa(a: Wa, p: Suite) -> bool:
    """Does {M(w) s0 | w in p} span the whole state space (and eps in p)?"""
    if not p.contains_epsilon():
        return False
    ech = _Echelon()
    for w in p:
        v = a.s0
        for s in w.syms:
            v = _mat_vec(a.mats[s], v)
        ech.add(v)
    return ech.rank == a.dim


def is_char_set_wa(a: Wa, w: Suite) -> bool:
    """Do the observation rows of w span the full observation row space?"""
    if not w.contains_epsilon():
        return False
    ech = _Echelon()
    for v in w:
        ech.add(_obs_row(a, v))
    return ech.rank == backward_basis(a).rank


def is_minimal_wa(a: Wa) -> bool:
    """Is s -> f^T M(.) s injective, i.e. the observation space full?"""
    return backward_basis(a).rank == a.dim


def minimize_wa(a: Wa) -> Wa:
    """Conjugate reduction: restrict to the reachable subspace, then
    quotient by the observation kernel. The result has the dimension of
    the Hankel factorization and recognizes the same series."""
    fb = forward_basis(a)
    if fb.rank == 0:
        return Wa(a.alphabet, 0, (), tuple(() for _ in a.alphabet), ())
    basis = list(fb.vectors)
    k = len(basis)
    red_mats = []
    for m in a.mats:
        cols = [_coords(basis, _mat_vec(m, b)) for b in basis]
        red_mats.append(tuple(tuple(cols[j][i] for j in range(k)) for i in range(k)))
    red = Wa(
        a.alphabet,
        k,
        _coords(basis, a.s0),
        tuple(red_mats),
        tuple(_dot(a.f, b) for b in basis),
    )
    bb = backward_basis(red)
    if bb.rank == 0:
        return Wa(a.alphabet, 0, (), tuple(() for _ in a.alphabet), ())
    rows = list(bb.vectors)
    t = len(rows)
    quo_mats = []
    for m in red.mats:
        # solve R M = M' R row by row
        coeffs = [_coords(rows, _row_mat(r, m)) for r in rows]
        quo_mats.append(tuple(tuple(coeffs[i][j] for j in range(t)) for i in range(t)))
    s0 = tuple(_dot(r, red.s0) for r in rows)
    f = _coords(rows, red.f)
    return Wa(a.alphabet, t, s0, tuple(quo_mats), f)


def _difference(a: Wa, b: Wa) -> Wa:
    d = a.dim + b.dim
    mats = []
    for ma, mb in zip(a.mats, b.mats):
        rows = [tuple(ma[i]) + (ZERO,) * b.dim for i in range(a.dim)]
        rows += [(ZERO,) * a.dim + tuple(mb[i]) for i in range(b.dim)]
        mats.append(tuple(rows))
    return Wa(a.alphabet, d, a.s0 + b.s0, tuple(mats), a.f + tuple(-x for x in b.f))


def equiv_wa(a: Wa, b: Wa) -> EquivResult:
    """Exact series equality; counterexample is the length-lex least word
    on which the values differ (length < dim(a) + dim(b))."""
    if a.alphabet != b.alphabet:
        raise ValueError("machine alphabets differ")
    d = _difference(a, b)
    if _dot(d.f, d.s0) != 0:
        return EquivResult(False, EPSILON)
    ech = _Echelon()
    queue: deque[tuple[Word, Vec]] = deque()
    if ech.add(d.s0):
        queue.append((EPSILON, d.s0))
    while queue:
        w, v = queue.popleft()
        for s in range(len(d.alphabet)):
            nv = _mat_vec(d.mats[s], v)
            nw = w + Word((s,))
            if _dot(d.f, nv) != 0:
                return EquivResult(False, nw)
            if ech.add(nv):
                queue.append((nw, nv))
    return EquivResult(True, None)


def agree_on_wa(spec: Wa, impl: Wa, t: Suite) -> list[Verdict]:
    """One exact-value verdict per suite word."""
    if spec.alphabet != impl.alphabet:
        raise ValueError("machine alphabets differ")
    out = []
    for w in t:
        s, i = wa_lang(spec, w), wa_lang(impl, w)
        out.append(Verdict(w, s, i, s == i))
    return out


def in_fault_domain_wa(impl: Wa, p: Suite, k: int) -> bool:
    """Membership in the spanning fault domain: P . Sigma^{<=k} is a state
    cover for the implementation."""
    return is_state_cover_wa(impl, concat_suites(p, words_upto(p.alphabet, k)))


def brute_force_equiv_wa(a: Wa, b: Wa, max_len: int) -> EquivResult:
    """Compare values on every word of length <= max_len."""
    if a.alphabet != b.alphabet:
        raise ValueError("machine alphabets differ")
    for w in words_upto(a.alphabet, max_len):
        if wa_lang(a, w) != wa_lang(b, w):
            return EquivResult(False, w)
    return EquivResult(True, None)
