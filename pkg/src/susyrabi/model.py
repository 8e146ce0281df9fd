"""Hamiltonians, supercharges, field operators and derived scalars.

The family H(omega_a, omega_b, g, c) is the quantum Rabi model plus the
quadratic (A^2-type) boson self-interaction c*g^2*(a+a_dag)^2.  The
r-parameterized path interpolates from the free N=2 SUSY oscillator at
r=0 to the spontaneously broken, frequency-renormalized oscillator at
r=1.  hbar = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ValidationError
from .fock import FockParams, I2, make_operators, embed_boson, embed_qubit, kron


@dataclass(frozen=True)
class ModelParams:
    """The tuple (omega_a, omega_b, g, c) selecting one Hamiltonian."""

    omega_a: float
    omega_b: float
    g: float = 0.0
    c: float = 0.0

    def __post_init__(self):
        if self.omega_b <= 0:
            raise ValidationError(f"omega_b must be > 0, got {self.omega_b}")
        if self.omega_a < 0 or self.g < 0 or self.c < 0:
            raise ValidationError("omega_a, g and c must be non-negative")


def renormalized_frequency(omega: float, c: float, g: float) -> tuple[float, float]:
    """(omega_g, g_tilde): the A^2-renormalized frequency and coupling.

    omega_g = sqrt(omega^2 + 4*c*omega*g^2), g_tilde = g*sqrt(omega/omega_g).
    """
    if omega <= 0:
        raise ValidationError(f"omega must be > 0, got {omega}")
    if c < 0 or g < 0:
        raise ValidationError("c and g must be non-negative")
    omega_g = math.sqrt(omega**2 + 4.0 * c * omega * g**2)
    return omega_g, g * math.sqrt(omega / omega_g)


def mass_increment(omega: float, c: float, g: float) -> float:
    """Mass increment 2*sqrt(c*omega)*g; satisfies omega_g^2 = omega^2 + dm^2."""
    if omega <= 0:
        raise ValidationError(f"omega must be > 0, got {omega}")
    if c < 0 or g < 0:
        raise ValidationError("c and g must be non-negative")
    return 2.0 * math.sqrt(c * omega) * g


# Named schedules for the interpolation path.  Each maps (endpoint, r) to
# the value at r; omega_a schedules run endpoint -> 0, g schedules 0 -> endpoint.
OMEGA_A_SCHEDULES: dict[str, Callable[[float, float], float]] = {
    "linear": lambda omega, r: (1.0 - r) * omega,
    "cosine": lambda omega, r: omega * math.cos(math.pi * r / 2.0) ** 2,
}
G_SCHEDULES: dict[str, Callable[[float, float], float]] = {
    "linear": lambda g_max, r: r * g_max,
    "sine": lambda g_max, r: g_max * math.sin(math.pi * r / 2.0) ** 2,
}


@dataclass(frozen=True)
class Schedule:
    """The r-parameterized path (omega_a(r), g(r)) with fixed omega and c.

    Defaults are the straight-line schedules used for the figure
    reproductions: omega_a(r) = (1-r)*omega and g(r) = r*g_max.
    """

    omega: float
    g_max: float
    c: float = 0.0
    omega_a_form: str = "linear"
    g_form: str = "linear"

    def __post_init__(self):
        if self.omega <= 0:
            raise ValidationError(f"omega must be > 0, got {self.omega}")
        if self.g_max < 0 or self.c < 0:
            raise ValidationError("g_max and c must be non-negative")
        if self.omega_a_form not in OMEGA_A_SCHEDULES:
            raise ValidationError(
                f"unknown omega_a schedule {self.omega_a_form!r}; "
                f"known: {sorted(OMEGA_A_SCHEDULES)}"
            )
        if self.g_form not in G_SCHEDULES:
            raise ValidationError(
                f"unknown g schedule {self.g_form!r}; known: {sorted(G_SCHEDULES)}"
            )

    def omega_a(self, r: float) -> float:
        _check_r(r)
        return OMEGA_A_SCHEDULES[self.omega_a_form](self.omega, r)

    def g(self, r: float) -> float:
        _check_r(r)
        return G_SCHEDULES[self.g_form](self.g_max, r)

    def omega_g(self, r: float) -> float:
        return renormalized_frequency(self.omega, self.c, self.g(r))[0]

    def g_tilde(self, r: float) -> float:
        return renormalized_frequency(self.omega, self.c, self.g(r))[1]

    def self_energy(self, r: float) -> float:
        """The scalar shift g(r)^2 / (4*c*g(r)^2 + omega) = g_tilde^2/omega_g."""
        g = self.g(r)
        return g**2 / (4.0 * self.c * g**2 + self.omega)


def _check_r(r: float) -> None:
    if not 0.0 <= r <= 1.0:
        raise ValidationError(f"r must lie in [0, 1], got {r}")


def hamiltonian(p: ModelParams, fp: FockParams) -> np.ndarray:
    """H = (omega_a/2) sz + omega_b (n+1/2) + g sx (a+a_dag) + c g^2 (a+a_dag)^2."""
    ops = make_operators(fp)
    x2 = ops.a + ops.a_dag
    h = p.omega_a / 2.0 * embed_qubit(ops.sz, fp)
    h = h + p.omega_b * embed_boson(ops.n_op + 0.5 * np.eye(fp.n_fock), fp)
    if p.g != 0.0:
        h = h + p.g * kron(ops.sx, x2)
    if p.c != 0.0 and p.g != 0.0:
        h = h + p.c * p.g**2 * embed_boson(x2 @ x2, fp)
    return h


def h_susy_ss(omega: float, fp: FockParams) -> np.ndarray:
    """The free SUSY oscillator omega*(n+1/2) + (omega/2)*sz.

    This is the superpotential-W(x)=omega*x Hamiltonian written in
    number-operator form.  The literal half(p^2+W^2) matrix product differs
    from it only at the truncation corner, so the normal-ordered form is
    used to keep the algebraic identity with hamiltonian(omega,omega,0,0)
    exact entrywise.
    """
    if omega <= 0:
        raise ValidationError(f"omega must be > 0, got {omega}")
    ops = make_operators(fp)
    return omega * embed_boson(ops.n_op + 0.5 * np.eye(fp.n_fock), fp) + (
        omega / 2.0
    ) * embed_qubit(ops.sz, fp)


def h_interaction(s: Schedule, r: float, fp: FockParams) -> np.ndarray:
    """The switch-on interaction built from the superpotential W = omega*x.

    H_int(r) = g(r) sqrt(2/omega) sx W + (2c/omega) g(r)^2 W^2
               + g(r)^2/(4 c g(r)^2 + omega) + (1/2) sz (omega_a(r) - omega).
    """
    _check_r(r)
    ops = make_operators(fp)
    g = s.g(r)
    # W = omega * x with x = (a + a_dag) / sqrt(2*omega)
    w = math.sqrt(s.omega / 2.0) * (ops.a + ops.a_dag)
    dim = fp.total_dim
    h = np.zeros((dim, dim), dtype=complex)
    if g != 0.0:
        h = h + g * math.sqrt(2.0 / s.omega) * kron(ops.sx, w)
        h = h + (2.0 * s.c / s.omega) * g**2 * embed_boson(w @ w, fp)
        h = h + s.self_energy(r) * np.eye(dim)
    h = h + (s.omega_a(r) - s.omega) / 2.0 * embed_qubit(ops.sz, fp)
    return h


def h_total_r(s: Schedule, r: float, fp: FockParams) -> np.ndarray:
    """H(r) = H_Rabi(r) + c g(r)^2 (a+a_dag)^2 + g(r)^2/(4 c g(r)^2 + omega).

    Identical to h_susy_ss + h_interaction entrywise.
    """
    _check_r(r)
    p = ModelParams(omega_a=s.omega_a(r), omega_b=s.omega, g=s.g(r), c=s.c)
    h = hamiltonian(p, fp)
    shift = s.self_energy(r)
    if shift != 0.0:
        h = h + shift * np.eye(fp.total_dim)
    return h


def heavy_hamiltonian(s: Schedule, fp: FockParams) -> np.ndarray:
    """The r=1 limit: omega_g*(n+1/2) on the boson factor, qubit identity.

    Spectrum omega_g*(n+1/2), each level doubly degenerate.
    """
    ops = make_operators(fp)
    return s.omega_g(1.0) * embed_boson(ops.n_op + 0.5 * np.eye(fp.n_fock), fp)


@dataclass(frozen=True)
class SuperchargeSet:
    """Real charges q1, q2, complex charges q+/-, and the grading -sz."""

    q1: np.ndarray
    q2: np.ndarray
    q_plus: np.ndarray
    q_minus: np.ndarray
    grading: np.ndarray
    variant: str  # "free" | "broken"


def free_supercharges(omega: float, fp: FockParams) -> SuperchargeSet:
    """Charges of the unbroken N=2 SUSY of H(omega, omega, 0, 0).

    q1 = sqrt(omega/2)(s+ a + s- a_dag), q2 = i sqrt(omega/2)(s- a_dag - s+ a);
    q+ = sqrt(omega) s+ a, q- = sqrt(omega) s- a_dag.
    """
    if omega <= 0:
        raise ValidationError(f"omega must be > 0, got {omega}")
    ops = make_operators(fp)
    up = kron(ops.s_plus, ops.a)
    down = kron(ops.s_minus, ops.a_dag)
    root = math.sqrt(omega / 2.0)
    q1 = root * (up + down)
    q2 = 1j * root * (down - up)
    return SuperchargeSet(
        q1=q1,
        q2=q2,
        q_plus=(q1 + 1j * q2) / math.sqrt(2.0),
        q_minus=(q1 - 1j * q2) / math.sqrt(2.0),
        grading=embed_qubit(-ops.sz, fp),
        variant="free",
    )


def broken_supercharges(omega: float, fp: FockParams) -> SuperchargeSet:
    """Charges of the spontaneously broken SUSY of H(0, omega, 0, 0).

    Q1 = sqrt(omega/2) sx sqrt(n+1/2), Q2 with sy;
    Q+/- = s+/- sqrt(omega (n+1/2)).  The operator square root is taken
    entrywise on the diagonal of n+1/2 (exact in the Fock basis).
    """
    if omega <= 0:
        raise ValidationError(f"omega must be > 0, got {omega}")
    ops = make_operators(fp)
    root_n = np.diag(np.sqrt(np.diagonal(ops.n_op).real + 0.5)).astype(complex)
    pref = math.sqrt(omega / 2.0)
    q1 = pref * kron(ops.sx, root_n)
    q2 = pref * kron(ops.sy, root_n)
    return SuperchargeSet(
        q1=q1,
        q2=q2,
        q_plus=(q1 + 1j * q2) / math.sqrt(2.0),
        q_minus=(q1 - 1j * q2) / math.sqrt(2.0),
        grading=embed_qubit(-ops.sz, fp),
        variant="broken",
    )


@dataclass(frozen=True)
class FieldSet:
    """Heavy-boson fields Phi_r, Pi_r; light fields phi, pi; B_r and D+/-."""

    phi_r: np.ndarray
    pi_r: np.ndarray
    phi: np.ndarray
    pi: np.ndarray
    b_r: np.ndarray
    d_plus: np.ndarray
    d_minus: np.ndarray


def fields(s: Schedule, r: float, fp: FockParams) -> FieldSet:
    """Field operators at interpolation point r.

    B_r = (c1+c2) b + (c1-c2) b_dag + (g_tilde/omega_g) sx with
    c1 = sqrt(omega_g/omega)/2, c2 = sqrt(omega/omega_g)/2.
    [sx, B_r] = 0 exactly (spin-chiral symmetry).
    """
    _check_r(r)
    ops = make_operators(fp)
    og = s.omega_g(r)
    gt = s.g_tilde(r)
    c1 = 0.5 * math.sqrt(og / s.omega)
    c2 = 0.5 * math.sqrt(s.omega / og)
    b = embed_boson(ops.a, fp)
    b_dag = embed_boson(ops.a_dag, fp)
    b_r = (c1 + c2) * b + (c1 - c2) * b_dag + (gt / og) * embed_qubit(ops.sx, fp)
    b_r_dag = b_r.conj().T
    phi_r = math.sqrt(1.0 / (2.0 * og)) * (b_r + b_r_dag)
    pi_r = -1j * math.sqrt(og / 2.0) * (b_r - b_r_dag)
    phi = math.sqrt(1.0 / (2.0 * s.omega)) * (b + b_dag)
    pi = -1j * math.sqrt(s.omega / 2.0) * (b - b_dag)
    d_plus = embed_qubit(-(ops.sz - 1j * ops.sy) / 2.0, fp)
    d_minus = embed_qubit(-(ops.sz + 1j * ops.sy) / 2.0, fp)
    return FieldSet(
        phi_r=phi_r,
        pi_r=pi_r,
        phi=phi,
        pi=pi,
        b_r=b_r,
        d_plus=d_plus,
        d_minus=d_minus,
    )
