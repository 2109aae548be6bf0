"""Local duality and reciprocity pairings, with finite-window Gram matrices.

dual_pair(f, eta) = Res_K(f eta) for f in K/A(n), eta in Omega^2_{A|n+1};
rec_pair(a, s) = Res_K(a dlog s) for a character a of W_1(K) and a symbol s.
"""

from __future__ import annotations

from dataclasses import dataclass

from .asw import CharacterRep, conductor
from .errors import LengthMismatch, TwistViolation
from .forms import LOG, Form2, in_twist
from .linalg import independent_subset, rank_mod_p
from .milnor import MilnorSym, sym_dlog
from .residue import Res_K
from .series import LaurentElt
from .witt import WittVec


@dataclass(frozen=True)
class WindowSpec:
    """Monomial window: t-exponents in [t_lo, t_hi), pole orders j in [j_lo, j_hi)."""

    t_range: tuple
    pi_range: tuple
    n: int = 0

    def t_exps(self):
        return range(*self.t_range)

    def poles(self):
        return range(*self.pi_range)

    @property
    def empty(self) -> bool:
        return not (len(self.t_exps()) and len(self.poles()))

    @classmethod
    def matched(cls, n: int, t_width: int, pi_width: int, t_lo=None) -> "WindowSpec":
        lo = -(t_width // 2) if t_lo is None else t_lo
        return cls((lo, lo + t_width), (n + 1, n + 1 + pi_width), n)


def _rep(a) -> LaurentElt:
    if isinstance(a, CharacterRep):
        a = a.rep
    if isinstance(a, WittVec):
        if a.m != 1:
            raise LengthMismatch("the reciprocity pairing is implemented for m = 1")
        a = a.comps[0]
    return a


def pair_form(f: LaurentElt, eta: Form2) -> int:
    """Res_K(f * eta)."""
    return Res_K(Form2(eta.log_coeff() * f, LOG))


def dual_pair(fbar: LaurentElt, eta: Form2, n: int) -> int:
    if not in_twist(eta, n + 1):
        raise TwistViolation(f"form is not certified in the twist {n + 1}")
    # only the class mod A(n) matters
    f = fbar.restrict(lambda j: j < -n)
    return pair_form(f, eta)


def rec_pair(a, s: MilnorSym) -> int:
    a = _rep(a)
    if not s.terms:
        return 0
    return pair_form(a, sym_dlog(s))


# -- window bases --------------------------------------------------------

def _order(items):
    """Sort (pi_exp, t_exp, k, ...) tuples ascending."""
    return sorted(items)


def dual_rows(ctx, spec: WindowSpec):
    """Classes g^k t^i pi^-j of K/A(n), ordered by (pi-exponent, t-exponent, k)."""
    basis = ctx.F.basis()
    keys = _order((-j, i, k) for j in spec.poles() for i in spec.t_exps() for k in range(len(basis)))
    return [ctx.mono(basis[k], i, pe) for pe, i, k in keys]


def dual_cols(ctx, spec: WindowSpec):
    """Mirrored forms g^k t^-i pi^j omega' in Omega^2_{A|n+1}."""
    basis = ctx.F.basis()
    keys = _order((-j, i, k) for j in spec.poles() for i in spec.t_exps() for k in range(len(basis)))
    return [Form2(ctx.mono(basis[k], -i, -pe), LOG) for pe, i, k in keys]


def char_rows(ctx, spec: WindowSpec):
    """Characters g^k t^i pi^-j as W_1 vectors."""
    return [WittVec(ctx.K, [x]) for x in dual_rows(ctx, spec)]


def symbol_cols(ctx, spec: WindowSpec):
    """Symbols {1 + pi^r c t^i, b}, r in the pole range, b in {t, pi}, c in F_q^x."""
    K = ctx.K
    bs = [K(ctx.t()), K.gen()]
    out = []
    for r in spec.poles():
        for i in spec.t_exps():
            for c in ctx.F.nonzero_elements():
                for b in bs:
                    out.append(MilnorSym.sym(K.one() + ctx.mono(c, i, r), b))
    return out


def gram_matrix(ctx, rows, cols, which: str = "dual"):
    """Matrix of pairing values and its rank over F_p."""
    if which not in ("dual", "rec"):
        raise ValueError(f"unknown pairing {which!r}")
    n = 0
    if isinstance(rows, WindowSpec):
        n = rows.n
        rows = dual_rows(ctx, rows) if which == "dual" else char_rows(ctx, rows)
    if isinstance(cols, WindowSpec):
        n = cols.n if not rows else n
        cols = dual_cols(ctx, cols) if which == "dual" else symbol_cols(ctx, cols)
    if which == "rec":
        forms = [sym_dlog(s, ctx.K) for s in cols]
        mat = [[pair_form(_rep(a), eta) for eta in forms] for a in rows]
    else:
        mat = [[dual_pair(f, eta, n) for eta in cols] for f in rows]
    return mat, rank_mod_p(mat, ctx.p) if cols else 0


# -- coefficient vectors of 2-forms ------------------------------------------

def form_vector(ctx, eta: Form2, pi_exps, t_exps):
    """F_p-coordinates of the omega' coefficient on a monomial box."""
    c = eta.log_coeff()
    out = []
    e = ctx.F.e
    for j in pi_exps:
        fj = c.coefficient(j)
        for i in t_exps:
            if isinstance(fj, LaurentElt):
                v = fj.coefficient(i)
            else:
                v = fj
            out.extend(v.rep if hasattr(v, "rep") else [0] * e)
    return out


def varpi_window_rank(ctx, n: int, spec) -> int:
    """dim over F_p of the window span of dlog fil_1 modulo that of dlog fil_n.

    Coordinates are the omega' coefficients at pi^0 .. pi^(n-1) and the
    window's t-exponents; dlog of fil_n symbols vanishes there.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(spec, int):
        spec = WindowSpec((0, spec), (1, 2), n)
    t_exps = list(spec.t_exps())
    if not t_exps:
        return 0
    pis = range(0, n)
    low = WindowSpec(spec.t_range, (1, max(n, 2)), n)
    high = WindowSpec(spec.t_range, (n, n + 1), n)
    v1 = [form_vector(ctx, sym_dlog(s), pis, t_exps) for s in symbol_cols(ctx, low)]
    vn = [form_vector(ctx, sym_dlog(s), pis, t_exps) for s in symbol_cols(ctx, high)]
    return rank_mod_p(v1 + vn, ctx.p) - rank_mod_p(vn, ctx.p)


def kappa_window_basis(ctx, n: int, spec: WindowSpec):
    """An F_p-independent family of fil_{n+1} symbols on the window, with the
    monomial support of their dlog forms on pi^(n+1) .. pi^(n+w)."""
    gens = symbol_cols(ctx, WindowSpec(spec.t_range, (n + 1, n + 1 + len(spec.poles())), n))
    forms = [sym_dlog(s) for s in gens]
    pis = range(n + 1, n + 1 + len(spec.poles()))
    support = set()
    for eta in forms:
        c = eta.log_coeff()
        for j in pis:
            for i, v in c.coefficient(j).terms():
                support.add((i, j))
    t_exps = sorted({i for i, _ in support})
    vecs = [form_vector(ctx, eta, pis, t_exps) for eta in forms]
    keep = independent_subset(vecs, ctx.p)
    return [gens[k] for k in keep], sorted(support)


def separation_gram(ctx, n: int, spec: WindowSpec):
    """Rec Gram matrix of conductor > n characters against a basis of the
    kappa(A|n+1) window span. Returns (matrix, rank, ncols)."""
    cols, support = kappa_window_basis(ctx, n, spec)
    basis = ctx.F.basis()
    rows = []
    for i, j in support:
        for c in basis:
            a = WittVec(ctx.K, [ctx.mono(c, -i, -j)])
            if conductor(a) > n:
                rows.append(a)
    mat, rank = gram_matrix(ctx, rows, cols, "rec")
    return mat, rank, len(cols)
