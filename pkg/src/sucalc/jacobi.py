"""Cyclic Jacobi eigensolver for complex Hermitian matrices."""

import numpy as np

__all__ = ["JacobiConvergenceError", "jacobi_eigh"]


class JacobiConvergenceError(RuntimeError):
    def __init__(self, sweeps, off_norm):
        super().__init__(f"Jacobi did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")
        self.sweeps = sweeps
        self.off_norm = off_norm


def _off_norm(a):
    off = a - np.diag(np.diag(a))
    return np.linalg.norm(off)


def jacobi_eigh(a, tol=1e-13, max_sweeps=100):
    """Eigen-decomposition ``a = V diag(w) V^*`` by cyclic complex Jacobi sweeps.

    Each rotation first removes the phase of ``a[p, q]`` and then applies the
    real symmetric 2x2 Schur rotation.  Iteration stops once the Frobenius
    norm of the off-diagonal part is at most ``tol * ||a||_F``.

    Returns ``(w, V)`` with eigenvalues in ascending order.
    """
    a = np.array(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    d = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(d, dtype=complex)
    scale = np.linalg.norm(a)
    threshold = tol * scale
    if d < 2 or scale == 0.0:
        w = np.real(np.diag(a)).copy()
        order = np.argsort(w, kind="stable")
        return w[order], v[:, order]

    for sweep in range(max_sweeps):
        if _off_norm(a) <= threshold:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300 or mag <= 1e-18 * threshold:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    else:
        off = _off_norm(a)
        if off > threshold:
            raise JacobiConvergenceError(max_sweeps, off)

    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
