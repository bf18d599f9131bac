"""Lindbladian superoperator for the dissipative SYK model.

With jump operators L_i = sqrt(mu) psi_i the dissipator is diagonal on
Majorana strings, scaling a size-s string by i*mu*s.  That closed form is
the fast path; the literal jump-operator sum is retained as a slow oracle
whose sign branch depends on the parity of the operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IncompatibleOperatorsError, ParityError, ValidationError
from .majorana import OperatorVector, SykHamiltonian, liouvillian_apply, string_multiply


@dataclass(frozen=True, eq=False)
class DissipativeModel:
    hamiltonian: SykHamiltonian
    mu: float

    def __post_init__(self):
        if self.mu < 0:
            raise ValidationError(f"dissipation strength mu={self.mu} must be >= 0")

    @property
    def n(self):
        return self.hamiltonian.n

    @property
    def q(self):
        return self.hamiltonian.q

    @property
    def mu_tilde(self) -> float:
        return self.mu * self.hamiltonian.q


def dissipator_apply(model: DissipativeModel, o: OperatorVector) -> OperatorVector:
    """Diagonal dissipator: each size-s string is scaled by i*mu*s."""
    if model.n != o.n:
        raise IncompatibleOperatorsError(
            f"model N={model.n} incompatible with operator N={o.n}")
    scale = 1j * model.mu * o.sizes()
    return OperatorVector(o.n, o._masks, o._vals * scale, o.prune)


def dissipator_oracle(model: DissipativeModel, o: OperatorVector) -> OperatorVector:
    """Literal jump-operator dissipator, parity branch chosen explicitly.

    L_D O = -i sum_k [ -+ L_k^dag O L_k - (1/2){L_k^dag L_k, O} ] with the
    minus branch when O is fermionic (odd strings).  L_k = sqrt(mu/2) gamma_k,
    so L_k^dag O L_k = (mu/2) gamma_k O gamma_k and the anticommutator part
    contributes mu*N/2 per term.
    """
    if model.n != o.n:
        raise IncompatibleOperatorsError(
            f"model N={model.n} incompatible with operator N={o.n}")
    sizes = o.sizes()
    if sizes.size == 0:
        return OperatorVector.zero(o.n, o.prune)
    parities = set(int(s) & 1 for s in sizes)
    if len(parities) > 1:
        raise ParityError("dissipator sign rule needs a parity-homogeneous operator; "
                          "split even/odd parts first")
    fermionic = parities.pop() == 1
    branch = -1.0 if fermionic else 1.0
    n = o.n
    mu = model.mu
    acc = {}
    for mask, val in zip(o._masks, o._vals):
        mask = int(mask)
        for k in range(n):
            gk = 1 << k
            p1, m1 = string_multiply(gk, mask)
            p2, m2 = string_multiply(m1, gk)
            amp = -1j * branch * (mu / 2.0) * p1 * p2 * val
            acc[m2] = acc.get(m2, 0.0) + amp
        acc[mask] = acc.get(mask, 0.0) + 1j * (mu * n / 2.0) * val
    return OperatorVector.from_terms(o.n, acc, o.prune)


def lindbladian_apply(model: DissipativeModel, o: OperatorVector) -> OperatorVector:
    """L O = [H, O] + L_D O."""
    return liouvillian_apply(model.hamiltonian, o) + dissipator_apply(model, o)
