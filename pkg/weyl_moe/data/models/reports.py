from typing import List, Optional

from weyl_moe.data.enums import Variant


class TheoremReport:
    """
    One evaluation of the tensor-product entropy bound, margin = lhs - rhs.
    per_basis_terms[s][j] holds S(Ψ(x_j^s)).
    """

    def __init__(
        self,
        d: int,
        r: float,
        p: float,
        lam: float,
        lhs: float,
        rhs: float,
        per_basis_terms: List[List[float]],
        variant: Variant = Variant.literal,
        chi_term: float = None,
        normalized_rhs: Optional[float] = None,
        seed=None,
        psi_spec: Optional[dict] = None,
        exploratory: bool = False,
        threshold: float = -1e-8,
    ):
        self.d = d
        self.r = r
        self.p = p
        self.lam = lam
        self.lhs = lhs
        self.rhs = rhs
        self.margin = lhs - rhs
        self.per_basis_terms = per_basis_terms
        self.variant = variant
        self.chi_term = chi_term
        self.normalized_rhs = normalized_rhs
        self.seed = seed
        self.psi_spec = psi_spec
        self.exploratory = exploratory
        self.threshold = threshold

    @property
    def normalized_margin(self) -> Optional[float]:
        if self.normalized_rhs is None:
            return None
        return self.lhs - self.normalized_rhs

    @property
    def passed(self) -> bool:
        return self.margin >= self.threshold

    def to_dict(self):
        return {
            "d": self.d,
            "r": self.r,
            "p": self.p,
            "lambda": self.lam,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "variant": str(self.variant),
            "seed": self.seed,
            "psi_spec": self.psi_spec,
            "chi_term": self.chi_term,
            "normalized_rhs": self.normalized_rhs,
            "normalized_margin": self.normalized_margin,
            "exploratory": self.exploratory,
            "passed": self.passed,
        }


class DecompositionReport:
    def __init__(
        self,
        d: int,
        r: float,
        p: float,
        lam: float,
        mix_residual: float,
        compose_residual: float,
        tolerance: float = 1e-10,
    ):
        self.d = d
        self.r = r
        self.p = p
        self.lam = lam
        self.mix_residual = mix_residual
        self.compose_residual = compose_residual
        self.tolerance = tolerance

    @property
    def passed(self) -> bool:
        return (
            self.mix_residual <= self.tolerance
            and self.compose_residual <= self.tolerance
        )

    def to_dict(self):
        return {
            "d": self.d,
            "r": self.r,
            "p": self.p,
            "lambda": self.lam,
            "mix_residual": self.mix_residual,
            "compose_residual": self.compose_residual,
            "passed": self.passed,
        }


class AdditivityReport:
    def __init__(
        self,
        d: int,
        r: float,
        p: float,
        lam: Optional[float],
        chi_phi: float,
        chi_psi: float,
        chi_tensor: float,
        seed=None,
        psi_spec: Optional[dict] = None,
        tolerance: float = 1e-5,
    ):
        self.d = d
        self.r = r
        self.p = p
        self.lam = lam
        self.chi_phi = chi_phi
        self.chi_psi = chi_psi
        self.chi_tensor = chi_tensor
        self.gap = chi_tensor - chi_phi - chi_psi
        self.seed = seed
        self.psi_spec = psi_spec
        self.tolerance = tolerance

    @property
    def passed(self) -> bool:
        return abs(self.gap) <= self.tolerance

    def to_dict(self):
        return {
            "d": self.d,
            "r": self.r,
            "p": self.p,
            "lambda": self.lam,
            "chi_phi": self.chi_phi,
            "chi_psi": self.chi_psi,
            "chi_tensor": self.chi_tensor,
            "gap": self.gap,
            "seed": self.seed,
            "psi_spec": self.psi_spec,
            "passed": self.passed,
        }


class ChiReport:
    """
    Optimizer estimate of χ for one channel, optionally cross-checked against a
    closed form and the sampling oracle.
    """

    def __init__(
        self,
        channel_spec: dict,
        estimate,
        closed_form: Optional[float] = None,
        oracle: Optional[float] = None,
        seed=None,
        tolerance: float = 1e-6,
    ):
        self.channel_spec = channel_spec
        self.estimate = estimate
        self.closed_form = closed_form
        self.oracle = oracle
        self.seed = seed
        self.tolerance = tolerance

    @property
    def chi(self) -> float:
        return self.estimate.value

    @property
    def passed(self) -> bool:
        if self.closed_form is not None:
            if abs(self.chi - self.closed_form) > self.tolerance:
                return False
        # the oracle only ever produces upper bounds
        if self.oracle is not None and self.oracle < self.chi - self.tolerance:
            return False
        return True

    def to_dict(self):
        return {
            "channel": self.channel_spec,
            "chi": self.chi,
            "closed_form": self.closed_form,
            "oracle": self.oracle,
            "seed": self.seed,
            "optimizer": self.estimate.to_dict(),
            "passed": self.passed,
        }
