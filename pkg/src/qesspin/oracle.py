"""Independent route to the spectra: dense spin matrices plus a hand-rolled
Hermitian eigensolver.

Nothing here touches the differential-operator machinery.  Hamiltonians are
assembled directly from powers of the sl(2) matrices and diagonalized with
a cyclic Jacobi iteration, so agreement with the polynomial-sector route is
a genuine cross-check rather than the same code run twice.
"""

from dataclasses import dataclass

import numpy as np

from .algebra import build_sl2, extend_to_plsl2
from .errors import ConvergenceError, MixedParity, NonHermitianInput


@dataclass
class SpectrumResult:
    """Ascending eigenvalues, eigenvector columns, and per-state sector tags
    (tag = ladder residue p, or None before parity_split)."""

    energies: np.ndarray
    states: np.ndarray
    parity_tags: list = None


def hamiltonian_matrix(params, label):
    """Dense Hermitian matrix of a model (or generic spec) on the spin basis.

    Model instances are assembled straight from the angular momentum
    matrices in their textbook form (Jx/Jy/Jz for the rotor, the symmetric
    two-axis product for the countertwister), deliberately bypassing the
    c+/c-/c_s algebraization so spectra comparisons exercise that mapping.
    A HamiltonianSpec falls back to the generic powers form, using that
    k P0 = J0.
    """
    from .models import LmgModel, RotorModel, TwoAxisModel
    rep = build_sl2(label)
    jp, jm, j0 = rep.j_plus, rep.j_minus, rep.j_zero
    if isinstance(params, LmgModel):
        return params.delta * j0 + params.g * (jp @ jp + jm @ jm)
    if isinstance(params, RotorModel):
        jx = 0.5 * (jp + jm)
        jy = -0.5j * (jp - jm)
        return (params.a * jx @ jx + params.b * jy @ jy
                + params.c * j0 @ j0)
    if isinstance(params, TwoAxisModel):
        jx = 0.5 * (jp + jm)
        jy = -0.5j * (jp - jm)
        return params.chi * (jx @ jy + jy @ jx)
    spec = params
    ext = extend_to_plsl2(rep, spec.k)
    n = label.twice_j + 1
    h = np.zeros((n, n), dtype=complex)
    h += spec.c_plus * ext.p_plus
    h += spec.c_minus * ext.p_minus
    if spec.c_s:
        pw = np.eye(n, dtype=complex)
        for cs in spec.c_s:
            pw = pw @ j0
            h += cs * pw
    h += spec.c_star * np.eye(n, dtype=complex)
    return h


def _rotate(h, v, p, q):
    """One Jacobi rotation annihilating h[p, q]; updates h and v in place."""
    beta = h[p, q]
    b = abs(beta)
    if b == 0.0:
        return
    alpha = h[p, p].real
    gamma = h[q, q].real
    tau = (gamma - alpha) / (2.0 * b)
    if tau >= 0:
        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    phase = beta / b
    u = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]],
                 dtype=complex)
    idx = [p, q]
    h[:, idx] = h[:, idx] @ u
    h[idx, :] = u.conj().T @ h[idx, :]
    h[p, q] = 0.0
    h[q, p] = 0.0
    h[p, p] = h[p, p].real
    h[q, q] = h[q, q].real
    v[:, idx] = v[:, idx] @ u


def eigensolve(h, max_sweeps=60):
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Raises NonHermitianInput when the input fails the Hermiticity check at
    1e-8 relative to its largest entry, and ConvergenceError if the
    off-diagonal mass has not collapsed after max_sweeps sweeps.
    """
    h = np.array(h, dtype=complex)
    n = h.shape[0]
    scale = max(1.0, float(np.max(np.abs(h))) if h.size else 1.0)
    herm_defect = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if herm_defect > 1e-8 * scale:
        raise NonHermitianInput("Hermiticity defect %g exceeds 1e-8 * %g"
                                % (herm_defect, scale))
    h = 0.5 * (h + h.conj().T)
    v = np.eye(n, dtype=complex)
    if n > 1:
        fro = np.linalg.norm(h)
        for sweep in range(max_sweeps):
            off = np.linalg.norm(h - np.diag(np.diag(h)))
            if off <= 1e-13 * max(fro, 1.0):
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    _rotate(h, v, p, q)
        else:
            raise ConvergenceError("Jacobi sweeps exhausted (off=%g)" % off)
    evals = np.real(np.diag(h))
    order = np.argsort(evals, kind="stable")
    evals = evals[order]
    vecs = v[:, order]
    for i in range(n):
        col = vecs[:, i]
        piv = int(np.argmax(np.abs(col)))
        ph = col[piv]
        if ph != 0:
            vecs[:, i] = col * (abs(ph) / ph)
    return SpectrumResult(energies=evals, states=vecs, parity_tags=None)


def _ladder_weights(states, k):
    """Probability carried by each m-mod-k ladder, per eigenvector column."""
    n = states.shape[0]
    res = np.arange(n) % k
    w = np.zeros((k, states.shape[1]))
    for p in range(k):
        w[p] = np.sum(np.abs(states[res == p, :]) ** 2, axis=0)
    return w


def tag_ladders(result, k, mix_tol=1e-8, deg_tol=1e-8):
    """Tag each eigenstate with its ladder residue p in [0, k).

    States that straddle ladders are only tolerated inside a degenerate
    cluster, where the eigenbasis is arbitrary: there the cluster is
    re-expanded into its ladder projections, re-orthonormalized, and
    tagged.  An isolated mixed state raises MixedParity, since for a
    ladder-preserving Hamiltonian it signals a broken input.
    """
    energies = result.energies
    states = result.states.copy()
    n = energies.size
    scale = max(1.0, float(np.max(np.abs(energies))) if n else 1.0)
    tags = [None] * n
    i = 0
    while i < n:
        jx = i + 1
        while jx < n and abs(energies[jx] - energies[jx - 1]) <= deg_tol * scale:
            jx += 1
        block = states[:, i:jx]
        w = _ladder_weights(block, k)
        mixed = np.max(w, axis=0) < 1.0 - mix_tol
        if not np.any(mixed):
            for t in range(i, jx):
                tags[t] = int(np.argmax(w[:, t - i]))
        elif jx - i > 1:
            cols = []
            res = np.arange(states.shape[0]) % k
            for p in range(k):
                proj = block.copy()
                proj[res != p, :] = 0.0
                for col in proj.T:
                    nrm = np.linalg.norm(col)
                    if nrm > 1e-10:
                        cols.append((p, col / nrm))
            kept = []
            kept_tags = []
            for p, col in cols:
                for _, kcol in kept:
                    col = col - kcol * np.vdot(kcol, col)
                nrm = np.linalg.norm(col)
                if nrm > 1e-8:
                    kept.append((p, col / nrm))
                    kept_tags.append(p)
            if len(kept) != jx - i:
                raise MixedParity(
                    "cluster at E=%g spans ladders but yields %d independent "
                    "projections for %d states" % (energies[i], len(kept), jx - i))
            for off, (p, col) in enumerate(kept):
                piv = int(np.argmax(np.abs(col)))
                ph = col[piv]
                states[:, i + off] = col * (abs(ph) / ph)
                tags[i + off] = p
        else:
            raise MixedParity("isolated state at E=%g mixes ladders (max "
                              "weight %g)" % (energies[i], float(np.max(w))))
        i = jx
    return SpectrumResult(energies=energies, states=states, parity_tags=tags)


def parity_split(result, label):
    """Even/odd (m mod 2) energy blocks of a diagonalized spectrum.

    Returns the two ascending energy arrays.  Tagging runs through
    tag_ladders, including its degenerate-cluster repair, so MixedParity
    only escapes for genuinely ladder-mixing eigenvectors.
    """
    tagged = tag_ladders(result, 2)
    even = np.array([e for e, t in zip(tagged.energies, tagged.parity_tags)
                     if t == 0])
    odd = np.array([e for e, t in zip(tagged.energies, tagged.parity_tags)
                    if t == 1])
    return even, odd


def block_spectra(params, label):
    """Spectrum via per-ladder blocks; the fast path for parameter scans.

    The full matrix is restricted to each residue ladder m = p mod k and
    the blocks are diagonalized separately, so parity tags are exact by
    construction.  Raises NonHermitianInput like eigensolve.
    """
    h = hamiltonian_matrix(params, label)
    n = h.shape[0]
    k = getattr(params, "k", 2)
    res = np.arange(n) % k
    energies = []
    tags = []
    cols = []
    for p in range(min(k, n)):
        idx = np.where(res == p)[0]
        if idx.size == 0:
            continue
        sub = h[np.ix_(idx, idx)]
        leak = np.abs(h[np.ix_(np.where(res != p)[0], idx)])
        if leak.size and float(np.max(leak)) > 1e-10 * max(1.0, float(np.max(np.abs(h)))):
            raise MixedParity("Hamiltonian couples ladder %d to others" % p)
        out = eigensolve(sub)
        for t in range(idx.size):
            full = np.zeros(n, dtype=complex)
            full[idx] = out.states[:, t]
            cols.append(full)
            energies.append(out.energies[t])
            tags.append(p)
    energies = np.array(energies)
    order = np.argsort(energies, kind="stable")
    states = np.column_stack([cols[i] for i in order]) if cols else np.zeros((n, 0))
    return SpectrumResult(energies=energies[order], states=states,
                          parity_tags=[tags[i] for i in order])
