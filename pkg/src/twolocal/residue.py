"""The residue tower Omega^2_K / Omega^2_A -> Omega^1_f -> F_q -> Z/p."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PrecisionLoss
from .forms import OMEGA, Form1f, Form2
from .series import LaurentElt

OMEGA2_A = "omega2_A"


@dataclass(frozen=True, eq=False)
class ResidueClass2:
    """A 2-form modulo Omega^2_A (``modulo=None``) or modulo Omega^2_{A|n}, n >= 1.

    The representative is kept in the omega basis with its integral part
    (relative to the chosen submodule) dropped.
    """

    rep: Form2
    modulo: object = OMEGA2_A

    def __post_init__(self):
        cut = self.cutoff
        a = self.rep.omega_coeff()
        if not a.zero_below:
            raise PrecisionLoss("polar part of the representative is not certified")
        object.__setattr__(self, "rep", Form2(a.restrict(lambda j: j < cut).truncate(cut), OMEGA))

    @property
    def cutoff(self) -> int:
        """omega-coefficient exponents >= cutoff belong to the submodule."""
        if self.modulo == OMEGA2_A:
            return 0
        n = int(self.modulo)
        if n < 1:
            raise ValueError("residues need a twist n >= 1")
        return n - 1

    def __add__(self, other):
        return ResidueClass2(self.rep + other.rep, self.modulo)

    def __sub__(self, other):
        return ResidueClass2(self.rep - other.rep, self.modulo)

    def __eq__(self, other):
        if not isinstance(other, ResidueClass2):
            return NotImplemented
        return self.modulo == other.modulo and self.rep == other.rep

    __hash__ = None


def _omega_coeff(x) -> LaurentElt:
    if isinstance(x, ResidueClass2):
        x = x.rep
    return x.to_basis(OMEGA).c


def res_K(x) -> Form1f:
    """a omega -> res_pi(a) dt."""
    a = _omega_coeff(x)
    return Form1f(a.coefficient(-1))


def res_prime_K(a: LaurentElt) -> LaurentElt:
    """Poincare residue of a dpi: the pi^-1 coefficient of a."""
    return a.coefficient(-1)


def res_f(alpha) -> object:
    """b dt -> the t^-1 coefficient of b."""
    b = alpha.b if isinstance(alpha, Form1f) else alpha
    return b.coefficient(-1)


def Res_K(x) -> int:
    return res_f(res_K(x)).trace()


def chi_f(b: LaurentElt) -> int:
    return res_f(Form1f(b)).trace()
