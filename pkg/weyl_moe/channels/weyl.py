from functools import lru_cache
from typing import List, Tuple

import numpy as np

from weyl_moe.bases import fourier_basis
from weyl_moe.channels.channel import Channel
from weyl_moe.channels.channeltypes import ChannelType
from weyl_moe.errors import DimensionMismatch, InvalidParameter

COEFFICIENT_SUM_TOLERANCE = 1e-12


@lru_cache(maxsize=32)
def _weyl_operators(d: int) -> Tuple[Tuple[np.ndarray, ...], ...]:
    ops = []
    for m in range(d):
        row = []
        for n in range(d):
            w = np.zeros((d, d), dtype=complex)
            for k in range(d):
                w[(k + m) % d, k] = np.exp(2j * np.pi * ((k * n) % d) / d)
            w.flags.writeable = False
            row.append(w)
        ops.append(tuple(row))
    return tuple(ops)


def weyl_operator(d: int, m: int, n: int) -> np.ndarray:
    """
    W_{m,n} = Σ_k exp(2πi kn/d) |k+m mod d><k|
    """
    if d < 1:
        raise InvalidParameter(f"Dimension must be >= 1, received {d}", parameter="d")
    if not (0 <= m < d):
        raise InvalidParameter(f"m must be in [0, {d - 1}], received {m}", parameter="m")
    if not (0 <= n < d):
        raise InvalidParameter(f"n must be in [0, {d - 1}], received {n}", parameter="n")
    return _weyl_operators(d)[m][n].copy()


class WeylMixSpec(Channel):
    """
    Random-unitary channel Φ(x) = Σ_{m,n} c[m][n] W_{m,n} x W_{m,n}†.

    The coefficient table must be a probability distribution over the d² Weyl
    conjugations. unchecked=True skips that validation so tables outside the
    valid region (eg: a negative identity weight) can still be studied through
    their superoperator and Choi matrix.
    """

    def __init__(self, d: int, coeffs, unchecked=False):
        super().__init__(d, d, ChannelType.weyl)
        self.d = d
        self.coeffs = np.array(coeffs, dtype=float)
        self.coeffs.flags.writeable = False
        self.unchecked = unchecked

        if self.coeffs.shape != (d, d):
            raise DimensionMismatch(
                f"Expected a {d}x{d} coefficient table, received {self.coeffs.shape}",
                parameter="coeffs",
            )
        if not unchecked:
            self.validate()

    def validate(self):
        if np.any(self.coeffs < 0):
            m, n = np.argwhere(self.coeffs < 0)[0]
            raise InvalidParameter(
                f"Weyl coefficient c[{m}][{n}] = {self.coeffs[m, n]:.6g} is negative, "
                f"the parameters are outside the valid region",
                parameter="coeffs",
            )
        total = float(np.sum(self.coeffs))
        if abs(total - 1) > COEFFICIENT_SUM_TOLERANCE:
            raise InvalidParameter(
                f"Weyl coefficients sum to {total:.15g}, expected 1", parameter="coeffs"
            )

    def terms(self) -> List[Tuple[float, np.ndarray]]:
        ops = _weyl_operators(self.d)
        return [
            (self.coeffs[m, n], ops[m][n])
            for m in range(self.d)
            for n in range(self.d)
            if self.coeffs[m, n] != 0
        ]

    def apply_matrix(self, x):
        x = self.check_input(x)
        out = np.zeros_like(x)
        for c, w in self.terms():
            out += c * (w @ x @ w.conj().T)
        return out

    def apply_adjoint(self, y):
        y = self.check_input(y, name="y")
        out = np.zeros_like(y)
        for c, w in self.terms():
            out += c * (w.conj().T @ y @ w)
        return out

    def kraus_operators(self):
        if np.any(self.coeffs < 0):
            raise InvalidParameter(
                "A Weyl table with negative weights has no Kraus representation",
                parameter="coeffs",
            )
        return [np.sqrt(c) * w for c, w in self.terms()]

    def superop_matrix(self):
        s = np.zeros((self.d ** 2, self.d ** 2), dtype=complex)
        for c, w in self.terms():
            s += c * np.kron(w, w.conj())
        return s

    def compose(self, inner: "WeylMixSpec") -> "WeylMixSpec":
        """
        self ∘ inner. W_a W_b is W_{a+b} up to a phase that cancels under
        conjugation, so the tables convolve over Z_d x Z_d.
        """
        if inner.d != self.d:
            raise DimensionMismatch(
                f"Cannot compose Weyl channels of dimension {self.d} and {inner.d}"
            )
        out = np.zeros((self.d, self.d))
        for m in range(self.d):
            for n in range(self.d):
                if self.coeffs[m, n] == 0:
                    continue
                out += self.coeffs[m, n] * np.roll(inner.coeffs, (m, n), axis=(0, 1))
        return WeylMixSpec(self.d, out, unchecked=self.unchecked or inner.unchecked)

    def __repr__(self):
        return f"WeylMixSpec(d={self.d}, c00={self.coeffs[0, 0]:.6g})"


def shift_defect(d: int) -> float:
    """
    Largest Frobenius violation of W_{0,n}|e_j><e_j|W_{0,n}† = |e_{j+n}><e_{j+n}|
    over all j, n.
    """
    e = fourier_basis(d)
    worst = 0.0
    for n in range(d):
        w = _weyl_operators(d)[0][n]
        for j in range(d):
            lhs = w @ e.projector(j) @ w.conj().T
            worst = max(worst, float(np.linalg.norm(lhs - e.projector((j + n) % d))))
    return worst
