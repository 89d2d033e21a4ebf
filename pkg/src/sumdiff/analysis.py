"""Sub-channels of the two-qubit damping family and entanglement diagnostics.

The closed-form Choi matrix splits naturally into a measurement-dominated
part (its diagonal, a channel in its own right) and a phase-damping part
(the coherence pairs plus enough of the diagonal to preserve trace).  This
module builds both as operator sets and provides the tools used to study
them: positivity of the partial transpose, a quantum-classical form test,
Wootters concurrence, a measure-and-prepare (Holevo) form, and the
entanglement decay trace of the phase-damping part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import (
    Ad2Coefficients,
    Ad2Params,
    SignedKrausSet,
    ad2_apply,
    ad2_coefficients,
    apply_signed_kraus,
)
from .choi import (
    AD2_DIAG_EXPORT_ORDER,
    AD2_DIAG_LABELS,
    AD2_PAIR_LABELS,
    choi_2ad,
    extract_signed_kraus,
    partition_diag_pairs,
    trace_preservation_residual,
)
from .linalg import dagger, eig_hermitian, fold, is_hermitian, kron, max_abs, partial_transpose

__all__ = [
    "ChannelReport",
    "HolevoForm",
    "concurrence",
    "eb_report",
    "holevo_apply",
    "holevo_kraus",
    "holevo_point_form",
    "is_ppt",
    "mdc_choi",
    "mdc_kraus",
    "pdc_apply",
    "pdc_choi",
    "pdc_effective_state",
    "pdc_entanglement_trace",
    "pdc_kraus",
    "qc_form_test",
]


# ---------------------------------------------------------------------------
# measurement-dominated sub-channel (diagonal of the Choi matrix)


def mdc_choi(co: Ad2Coefficients) -> np.ndarray:
    """Choi matrix of the measurement-dominated sub-channel: the diagonal alone."""
    return np.diag(np.diagonal(choi_2ad(co))).astype(complex)


def mdc_kraus(co: Ad2Coefficients) -> SignedKrausSet:
    """Nine rank-1 operators of the measurement-dominated sub-channel.

    Ordered by coefficient label (H, G, F, E, D, C, A, 1, B); all positive,
    so this is an ordinary Kraus set, and it preserves trace on its own.
    """
    diag = np.diagonal(choi_2ad(co))
    ops, labels = [], []
    for idx in AD2_DIAG_EXPORT_ORDER:
        val = diag[idx].real
        vec = np.zeros(16, dtype=complex)
        vec[idx] = 1.0
        ops.append(fold(np.sqrt(max(val, 0.0)) * vec))
        labels.append(AD2_DIAG_LABELS[idx])
    return SignedKrausSet(tuple(ops), positive_labels=tuple(labels))


# ---------------------------------------------------------------------------
# phase-damping sub-channel (coherence pairs plus a trace-carrying diagonal)


def pdc_choi(co: Ad2Coefficients) -> np.ndarray:
    """Choi matrix of the phase-damping sub-channel.

    The coherence pairs of the full Choi matrix sit on top of an
    identity-channel diagonal, so the sub-channel leaves every diagonal
    entry of a state untouched while coherences evolve exactly as under the
    full channel.
    """
    b = choi_2ad(co)
    np.fill_diagonal(b, 0.0)
    for i in (0, 5, 10, 15):
        b[i, i] = 1.0
    return b


def pdc_kraus(co: Ad2Coefficients, cutoff: float = 1e-12) -> SignedKrausSet:
    """Signed operators of the phase-damping sub-channel.

    Extraction of its Choi matrix yields the four basis projectors (from the
    diagonal) plus a +/- pair per coherence position.
    """
    part = partition_diag_pairs(pdc_choi(co), labels=AD2_PAIR_LABELS)
    return extract_signed_kraus(part, cutoff=cutoff)


def pdc_apply(rho, co: Ad2Coefficients) -> np.ndarray:
    """Apply the phase-damping sub-channel to a 4 x 4 state.

    Closed form: the diagonal is copied through untouched and the
    off-diagonal part evolves exactly as under the full channel (the
    population map never feeds coherences, so splitting the input is safe).
    """
    rho = np.asarray(rho, dtype=complex)
    diag = np.diag(np.diag(rho))
    return diag + ad2_apply(rho - diag, co)


# ---------------------------------------------------------------------------
# positivity diagnostics


def is_ppt(m, dim_a: int, dim_b: int, tol: float = 1e-10) -> bool:
    """True if the partial transpose has no eigenvalue below -tol."""
    pt = partial_transpose(m, dim_a, dim_b)
    smallest = eig_hermitian(pt, tol=1e-12).values[-1]
    return bool(smallest >= -tol)


@dataclass(frozen=True)
class ChannelReport:
    """Diagnostics of a channel given by its Choi matrix."""

    is_cp: bool
    min_choi_eigenvalue: float
    is_trace_preserving: bool
    completeness_residual: float
    ppt_of_choi: bool
    point_channel: np.ndarray | None


def _point_output(b: np.ndarray, d: int, tol: float) -> np.ndarray | None:
    """Common output state if the channel sends everything to one state."""
    blocks = b.reshape(d, d, d, d)
    sigma = np.zeros((d, d), dtype=complex)
    for j in range(d):
        sigma += blocks[j, :, j, :]
    sigma /= d
    for j in range(d):
        for k in range(d):
            target = sigma if j == k else 0.0
            if max_abs(blocks[j, :, k, :] - target) > tol:
                return None
    return sigma


def eb_report(b, tol: float = 1e-10, point_tol: float = 1e-8) -> ChannelReport:
    """Bundle positivity, trace preservation, partial-transpose positivity,
    and point-channel detection for a Choi matrix.

    A positive partial transpose of the (state-normalized) Choi matrix is the
    entanglement-breaking signature this report is named for; the point
    channel (constant output) is its extreme case and is returned as that
    output state when detected within ``point_tol``.
    """
    b = np.asarray(b, dtype=complex)
    d = int(round(b.shape[0] ** 0.5))
    if b.shape != (d * d, d * d):
        raise ValueError("expected a d^2 x d^2 Choi matrix")
    smallest = float(eig_hermitian(b, tol=1e-12).values[-1])
    completeness = trace_preservation_residual(b)
    return ChannelReport(
        is_cp=bool(smallest >= -tol),
        min_choi_eigenvalue=smallest,
        is_trace_preserving=bool(completeness <= tol),
        completeness_residual=float(completeness),
        ppt_of_choi=is_ppt(b, d, d, tol=tol),
        point_channel=_point_output(b, d, point_tol),
    )


def qc_form_test(b, d: int, tol: float = 1e-10):
    """Test whether a Choi matrix has quantum-classical block structure.

    Writing composite indices as (j, m), the blocks G_{m m'}[j, k] =
    B[(j, m), (k, m')] must vanish for m != m' and be positive semidefinite
    for m = m'; then B = sum_m G_m (x) |m><m| up to factor ordering, i.e. the
    second factor is classical.  Returns (flag, diagonal blocks).
    """
    b = np.asarray(b, dtype=complex)
    if b.shape != (d * d, d * d):
        raise ValueError("expected a d^2 x d^2 matrix")
    blocks = b.reshape(d, d, d, d)  # [j, m, k, mp]
    ok = True
    for m in range(d):
        for mp in range(d):
            if m != mp and max_abs(blocks[:, m, :, mp]) > tol:
                ok = False
    diag_blocks = []
    for m in range(d):
        g = blocks[:, m, :, m]
        diag_blocks.append(g)
        if ok:
            smallest = eig_hermitian((g + dagger(g)) / 2.0, tol=1e-12).values[-1]
            if smallest < -tol:
                ok = False
    return bool(ok), diag_blocks


# ---------------------------------------------------------------------------
# measure-and-prepare (Holevo) form


@dataclass(frozen=True)
class HolevoForm:
    """Measure-and-prepare channel: rho -> sum_i outputs[i] Tr(effects[i] rho).

    Effects must form a POVM (positive, summing to identity); outputs must be
    states.  Checked at construction within 1e-10.
    """

    outputs: tuple
    effects: tuple

    def __post_init__(self):
        outs = tuple(np.asarray(o, dtype=complex) for o in self.outputs)
        effs = tuple(np.asarray(f, dtype=complex) for f in self.effects)
        if len(outs) != len(effs) or not outs:
            raise ValueError("need matching nonempty outputs and effects")
        d = effs[0].shape[0]
        for o in outs:
            if not is_hermitian(o, 1e-10) or abs(o.trace() - 1.0) > 1e-10:
                raise ValueError("outputs must be unit-trace Hermitian")
        acc = np.zeros((d, d), dtype=complex)
        for f in effs:
            if not is_hermitian(f, 1e-10):
                raise ValueError("effects must be Hermitian")
            if eig_hermitian(f, tol=1e-12).values[-1] < -1e-10:
                raise ValueError("effects must be positive semidefinite")
            acc += f
        if max_abs(acc - np.eye(d)) > 1e-10:
            raise ValueError("effects must sum to the identity")
        object.__setattr__(self, "outputs", outs)
        object.__setattr__(self, "effects", effs)


def holevo_apply(form: HolevoForm, rho) -> np.ndarray:
    """Evaluate the measure-and-prepare action."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros_like(form.outputs[0])
    for sigma, f in zip(form.outputs, form.effects):
        out = out + sigma * np.trace(f @ rho)
    return out


def holevo_point_form(dim: int = 4, target: int = 3) -> HolevoForm:
    """Constant-output channel in measure-and-prepare form.

    Measures in the computational basis and prepares the target basis state
    regardless of outcome.
    """
    sink = np.zeros((dim, dim), dtype=complex)
    sink[target, target] = 1.0
    effects = []
    for i in range(dim):
        proj = np.zeros((dim, dim), dtype=complex)
        proj[i, i] = 1.0
        effects.append(proj)
    return HolevoForm((sink,) * dim, tuple(effects))


def holevo_kraus(form: HolevoForm, cutoff: float = 1e-12) -> SignedKrausSet:
    """Kraus operators induced by a measure-and-prepare form.

    Eigendecomposing outputs (weights q_a, vectors r_a) and effects
    (weights f_b, vectors phi_b) gives operators sqrt(q_a f_b) |r_a><phi_b|;
    their completeness follows from the POVM property.  All positive.
    """
    ops, labels = [], []
    for i, (sigma, f) in enumerate(zip(form.outputs, form.effects)):
        out_sys = eig_hermitian(sigma, tol=1e-12)
        eff_sys = eig_hermitian(f, tol=1e-12)
        for a, q in enumerate(out_sys.values):
            if q <= cutoff:
                continue
            for bb, w in enumerate(eff_sys.values):
                if w <= cutoff:
                    continue
                op = np.sqrt(q * w) * np.outer(out_sys.vectors[:, a], eff_sys.vectors[:, bb].conj())
                ops.append(op)
                labels.append(f"{i}:{a}:{bb}")
    return SignedKrausSet(tuple(ops), positive_labels=tuple(labels))


# ---------------------------------------------------------------------------
# entanglement measures


_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = kron(_SIGMA_Y, _SIGMA_Y)


def _spin_flip(rho: np.ndarray) -> np.ndarray:
    return _YY @ rho.conj() @ _YY


def _clip_spectrum(values: np.ndarray, floor: float) -> np.ndarray:
    """Zero out nonnegative-spectrum dust below the floor.

    The floor is taken relative to the larger of the top eigenvalue and 1,
    the natural scale of trace-one states and their products; a matrix made
    entirely of rounding dust then clips to zero instead of passing its dust
    through the square root.
    """
    out = np.clip(values, 0.0, None)
    out[out < floor * max(float(out[0]), 1.0)] = 0.0
    return out


def concurrence(rho, floor: float = 1e-13) -> float:
    """Wootters concurrence of a two-qubit state.

    Uses the Hermitian form sqrt(rho) rho~ sqrt(rho): its eigenvalue square
    roots, descending, give C = max(0, l1 - l2 - l3 - l4).  Eigenvalue dust
    below ``floor`` (relative) is zeroed before each square root; the root
    would otherwise amplify O(1e-16) dust of rank-deficient states to O(1e-8)
    in the result.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("concurrence is defined here for two-qubit states")
    if not is_hermitian(rho, 1e-10):
        raise ValueError("state must be Hermitian")
    sys = eig_hermitian(rho, tol=1e-13)
    root = (sys.vectors * np.sqrt(_clip_spectrum(sys.values, floor))) @ dagger(sys.vectors)
    middle = root @ _spin_flip(rho) @ root
    vals = eig_hermitian((middle + dagger(middle)) / 2.0, tol=1e-13).values
    lam = np.sqrt(_clip_spectrum(vals, floor))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def pdc_effective_state(co: Ad2Coefficients) -> np.ndarray:
    """Two-qubit state left after the phase-damping sub-channel acts on half
    of a maximally correlated pair.

    The input is the even superposition of the doubly excited and ground
    states on system + copy; only the system side passes through the
    sub-channel, applied operator by operator as K (x) 1.  The output keeps
    its support on that correlated two-dimensional subspace, so reading it as
    a two-qubit state (excited -> 0, ground -> 1 on each side) is exact.
    """
    psi = np.zeros(16, dtype=complex)
    psi[0 * 4 + 0] = 1.0 / np.sqrt(2.0)  # |e> |e'>
    psi[3 * 4 + 3] = 1.0 / np.sqrt(2.0)  # |g> |g'>
    rho_in = np.outer(psi, psi.conj())
    eye4 = np.eye(4, dtype=complex)
    ks = pdc_kraus(co)
    out = np.zeros((16, 16), dtype=complex)
    for k in ks.positive:
        big = kron(k, eye4)
        out += big @ rho_in @ dagger(big)
    for k in ks.negative:
        big = kron(k, eye4)
        out -= big @ rho_in @ dagger(big)
    sub = np.ix_((0, 3, 12, 15), (0, 3, 12, 15))  # {|e>,|g>} (x) {|e'>,|g'>}
    return out[sub]


def pdc_entanglement_trace(params: Ad2Params, t_max: float, steps: int = 50) -> np.ndarray:
    """Concurrence decay of the effective pair state under the phase-damping
    sub-channel, sampled at ``steps`` times from 0 to ``t_max`` inclusive.

    Returns an array of (t, concurrence) rows.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    rows = []
    for t in np.linspace(0.0, float(t_max), int(steps)):
        co = ad2_coefficients(params.at(float(t)))
        rows.append((t, concurrence(pdc_effective_state(co))))
    return np.array(rows)
