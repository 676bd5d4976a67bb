"""Verified linear algebra: inverse enclosures, simple eigenpairs, log norms.

Floating-point decompositions from numpy are used only as preconditioners;
every returned enclosure is certified by interval arithmetic (Neumann series
residual bounds, adjugate formulas, Krawczyk contraction on bordered
eigensystems, Gershgorin disks after approximate orthogonal diagonalization).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrixError, VerificationError
from .intervals import Interval, IMatrix, IVector, from_float_matrix


def _adjugate_inverse(A: IMatrix) -> IMatrix | None:
    """Exact cofactor inverse for n <= 3; None if det may vanish."""
    n = A.shape[0]
    r = A.rows
    if n == 1:
        d = r[0][0]
        if d.contains(0.0):
            return None
        return IMatrix([[Interval(1.0) / d]])
    if n == 2:
        d = r[0][0] * r[1][1] - r[0][1] * r[1][0]
        if d.contains(0.0):
            return None
        return IMatrix(
            [
                [r[1][1] / d, -r[0][1] / d],
                [-r[1][0] / d, r[0][0] / d],
            ]
        )
    if n == 3:
        def minor(i, j):
            ri = [k for k in range(3) if k != i]
            rj = [k for k in range(3) if k != j]
            return (
                r[ri[0]][rj[0]] * r[ri[1]][rj[1]]
                - r[ri[0]][rj[1]] * r[ri[1]][rj[0]]
            )

        d = (
            r[0][0] * minor(0, 0)
            - r[0][1] * minor(0, 1)
            + r[0][2] * minor(0, 2)
        )
        if d.contains(0.0):
            return None
        sign = [[1, -1, 1], [-1, 1, -1], [1, -1, 1]]
        # adjugate is the transposed cofactor matrix
        return IMatrix(
            [
                [minor(j, i) * sign[j][i] / d for j in range(3)]
                for i in range(3)
            ]
        )
    return None


def enclose_inverse(A: IMatrix) -> IMatrix:
    """Enclosure of the inverse of every member matrix of ``A``.

    Primary route: floating preconditioner R with verified residual
    contraction ||I - R A||_inf < 1, giving the Neumann series bound
    |A^-1 - R| <= ||R||_inf e/(1-e) entrywise.  For n <= 3 the result is
    intersected with the adjugate/determinant enclosure.  Raises
    SingularMatrixError when no route verifies; never returns a false
    enclosure.
    """
    n, m = A.shape
    if n != m:
        raise ValueError(f"inverse of non-square matrix {A.shape}")
    mid = np.array(A.midpoint(), dtype=float)
    neumann = None
    try:
        R = np.linalg.inv(mid)
    except np.linalg.LinAlgError:
        R = None
    if R is not None and np.all(np.isfinite(R)):
        Ri = from_float_matrix(R.tolist())
        E = IMatrix.identity(n) - Ri.matmul(A)
        e = E.norm_sup_upper()
        if e < 1.0:
            rad = (Interval(e) * Ri.norm_sup_upper()) / (Interval(1.0) - e)
            rho = rad.hi
            neumann = IMatrix(
                [
                    [
                        Ri.rows[i][j] + Interval(-rho, rho)
                        for j in range(n)
                    ]
                    for i in range(n)
                ]
            )
    adj = _adjugate_inverse(A) if n <= 3 else None
    if neumann is None and adj is None:
        raise SingularMatrixError(
            "possibly singular: residual contraction unverifiable"
        )
    if neumann is None:
        return adj
    if adj is None:
        return neumann
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = neumann.rows[i][j].intersection(adj.rows[i][j])
            if x.is_empty:
                raise SingularMatrixError(
                    "inconsistent inverse enclosures (numerical failure)"
                )
            row.append(x)
        out.append(row)
    return IMatrix(out)


@dataclass(frozen=True)
class EigenpairEnclosure:
    """Certified enclosure of one simple eigenpair of an interval matrix.

    The enclosure contains exactly one eigenvalue of every member matrix
    (Krawczyk contraction on the bordered system gives local uniqueness).
    Real pairs have ``value_im`` equal to the zero interval and an empty
    imaginary vector part.
    """

    value_re: Interval
    value_im: Interval
    vector_re: IVector
    vector_im: IVector | None
    simple: bool
    norm_defect: float  # eps with ||v|| in [1-eps, 1+eps]

    @property
    def is_real(self) -> bool:
        return self.value_im == Interval(0.0)

    @property
    def value(self) -> Interval:
        if not self.is_real:
            raise ValueError("complex pair: use value_re/value_im")
        return self.value_re


def _krawczyk_once(F0: IVector, DF: IMatrix, R: np.ndarray, box: IVector,
                   u0: np.ndarray) -> IVector | None:
    """One Krawczyk evaluation K = u0 - R F(u0) + (I - R DF)(box - u0)."""
    n = len(box)
    Ri = from_float_matrix(R.tolist())
    lhs = IVector(list(u0)) - Ri.matvec(F0)
    G = IMatrix.identity(n) - Ri.matmul(DF)
    shifted = IVector([box[i] - float(u0[i]) for i in range(n)])
    K = lhs + G.matvec(shifted)
    return K


def enclose_simple_eigenpair(
    A: IMatrix,
    approx_value: complex | float | None = None,
    approx_vector: np.ndarray | None = None,
    max_inflations: int = 24,
) -> EigenpairEnclosure:
    """Certified simple eigenpair enclosure via Krawczyk on a bordered system.

    The bordered system fixes the scaling with a normalization row
    c.v = 1 (c = approximate eigenvector).  Complex-conjugate pairs are
    verified as a real system in (Re v, Im v, alpha, beta) with beta != 0
    certified.  Raises VerificationError when the operator does not
    contract ("unverified pair"); callers may inflate and retry.
    """
    n, m = A.shape
    if n != m:
        raise ValueError("eigenpair of non-square matrix")
    mid = np.array(A.midpoint(), dtype=float)
    if approx_value is None or approx_vector is None:
        w, V = np.linalg.eig(mid)
        if approx_value is None:
            k = int(np.argmax(w.real))
        else:
            k = int(np.argmin(np.abs(w - approx_value)))
        approx_value = complex(w[k])
        approx_vector = V[:, k]
    v0 = np.asarray(approx_vector, dtype=complex)
    lam0 = complex(approx_value)
    is_real = abs(lam0.imag) < 1e-9 and np.max(np.abs(v0.imag)) < 1e-9

    if is_real:
        v0r = v0.real
        c = v0r / float(v0r @ v0r)  # normalization row: c.v0 = 1
        u0 = np.concatenate([v0r, [lam0.real]])

        def F_of(u_box: IVector) -> tuple[IVector, IMatrix]:
            v = IVector(u_box.entries[:n])
            lam = u_box.entries[n]
            Av = A.matvec(v)
            F = list((Av[i] - lam * v[i]) for i in range(n))
            F.append(IVector([Interval(x) for x in c]).dot(v) - 1.0)
            rows = []
            for i in range(n):
                row = [
                    A.rows[i][j] - (lam if i == j else Interval(0.0))
                    for j in range(n)
                ]
                row.append(-v[i])
                rows.append(row)
            rows.append([Interval(x) for x in c] + [Interval(0.0)])
            return IVector(F), IMatrix(rows)

        dim = n + 1
    else:
        vr0, vi0 = v0.real, v0.imag
        nrm = float(vr0 @ vr0 + vi0 @ vi0)
        c = vr0 / nrm
        ci = vi0 / nrm
        # rotate the pair so that c.vr=~1, c.vi=~0 is consistent
        u0 = np.concatenate([vr0, vi0, [lam0.real, lam0.imag]])

        def F_of(u_box: IVector) -> tuple[IVector, IMatrix]:
            vr = IVector(u_box.entries[:n])
            vi = IVector(u_box.entries[n:2 * n])
            al = u_box.entries[2 * n]
            be = u_box.entries[2 * n + 1]
            Avr = A.matvec(vr)
            Avi = A.matvec(vi)
            F = [(Avr[i] - al * vr[i] + be * vi[i]) for i in range(n)]
            F += [(Avi[i] - al * vi[i] - be * vr[i]) for i in range(n)]
            crow = IVector([Interval(x) for x in c])
            cirow = IVector([Interval(x) for x in ci])
            F.append(crow.dot(vr) + cirow.dot(vi) - 1.0)
            F.append(crow.dot(vi) - cirow.dot(vr))
            rows = []
            for i in range(n):
                row = [A.rows[i][j] - (al if i == j else Interval(0.0)) for j in range(n)]
                row += [(be if i == j else Interval(0.0)) for j in range(n)]
                row += [-vr[i], vi[i]]
                rows.append(row)
            for i in range(n):
                row = [(-be if i == j else Interval(0.0)) for j in range(n)]
                row += [A.rows[i][j] - (al if i == j else Interval(0.0)) for j in range(n)]
                row += [-vi[i], -vr[i]]
                rows.append(row)
            rows.append([Interval(x) for x in c] + [Interval(x) for x in ci] + [Interval(0.0)] * 2)
            rows.append([Interval(-x) for x in ci] + [Interval(x) for x in c] + [Interval(0.0)] * 2)
            return IVector(F), IMatrix(rows)

        dim = 2 * n + 2

    # residual-scaled epsilon inflation
    u0_iv = IVector([Interval(float(x)) for x in u0])
    F0, DF0 = F_of(u0_iv)
    res = max(e.mag() for e in F0.entries)
    rho = max(res * 8.0, 1e-15 * max(1.0, float(np.max(np.abs(u0)))))
    R = None
    for _ in range(max_inflations):
        box = IVector([Interval(float(x) - rho, float(x) + rho) for x in u0])
        _, DFb = F_of(box)
        if R is None:
            try:
                R = np.linalg.inv(np.array(DF0.midpoint(), dtype=float))
            except np.linalg.LinAlgError:
                raise VerificationError("unverified pair: singular bordered Jacobian")
        K = _krawczyk_once(F0, DFb, R, box, u0)
        if box.interior_contains(K):
            # tighten by iterating the Krawczyk map a few times
            cur = K
            for _ in range(3):
                _, DFk = F_of(cur)
                K2 = _krawczyk_once(F0, DFk, R, cur, u0)
                nxt = IVector(
                    [K2[i].intersection(cur[i]) for i in range(dim)]
                )
                if any(e.is_empty for e in nxt.entries):
                    break
                cur = nxt
            return _package_eigenpair(A, cur, n, is_real)
        rho *= 8.0
    raise VerificationError("unverified pair: Krawczyk operator did not contract")


def _package_eigenpair(A, u: IVector, n: int, is_real: bool) -> EigenpairEnclosure:
    if is_real:
        v = IVector(u.entries[:n])
        lam = u.entries[n]
        nrm = v.norm2_enclosure()
        vn = IVector([e / nrm for e in v.entries])
        defect = max(abs(1.0 - vn.norm2_enclosure().lo), abs(vn.norm2_enclosure().hi - 1.0))
        return EigenpairEnclosure(
            value_re=lam,
            value_im=Interval(0.0),
            vector_re=vn,
            vector_im=None,
            simple=True,
            norm_defect=defect,
        )
    vr = IVector(u.entries[:n])
    vi = IVector(u.entries[n:2 * n])
    al = u.entries[2 * n]
    be = u.entries[2 * n + 1]
    if be.contains(0.0):
        raise VerificationError("unverified pair: cannot certify nonzero imaginary part")
    acc = Interval(0.0)
    for e in list(vr.entries) + list(vi.entries):
        acc = acc + e.sqr()
    nrm = acc.sqrt()
    vrn = IVector([e / nrm for e in vr.entries])
    vin = IVector([e / nrm for e in vi.entries])
    return EigenpairEnclosure(
        value_re=al,
        value_im=be,
        vector_re=vrn,
        vector_im=vin,
        simple=True,
        norm_defect=nrm.width(),
    )


@dataclass(frozen=True)
class LogNormBounds:
    """One-sided bounds for the Euclidean logarithmic norm l(A), the
    logarithmic minimum m_l(A), and the operator norm m(A).

    ``l_upper.hi`` bounds sup over member matrices of l(A);
    ``ml_lower.lo`` bounds inf of m_l(A); ``m_upper.hi`` bounds sup of the
    operator 2-norm.  m_l(A)|x|^2 <= x^T A x <= l(A)|x|^2 holds for unit x.
    """

    l_upper: Interval
    ml_lower: Interval
    m_upper: Interval


def _gershgorin_range(B: IMatrix) -> tuple[float, float]:
    """(lower, upper) real-eigenvalue range from interval Gershgorin rows."""
    n = B.shape[0]
    lo, hi = np.inf, -np.inf
    for i in range(n):
        rad = Interval(0.0)
        for j in range(n):
            if j != i:
                rad = rad + B.rows[i][j].mag()
        lo = min(lo, (B.rows[i][i] - rad).lo)
        hi = max(hi, (B.rows[i][i] + rad).hi)
    return lo, hi


def log_norm_bounds(A: IMatrix) -> LogNormBounds:
    """Euclidean log-norm bounds via symmetrization then Gershgorin disks
    after an approximate orthogonal diagonalization; falls back to raw
    Gershgorin when the preconditioner fails.  Bounds may be loose, never
    invalid.
    """
    n, m = A.shape
    if n != m:
        raise ValueError("log norm of non-square matrix")
    S = (A + A.transpose()).scale(0.5)
    lo_raw, hi_raw = _gershgorin_range(S)
    lo, hi = lo_raw, hi_raw
    try:
        w, Q = np.linalg.eigh(np.array(S.midpoint(), dtype=float))
        Qi = from_float_matrix(Q.tolist())
        Qinv = enclose_inverse(Qi)
        B = Qinv.matmul(S).matmul(Qi)
        lo_pre, hi_pre = _gershgorin_range(B)
        lo = max(lo, lo_pre)
        hi = min(hi, hi_pre)
    except (SingularMatrixError, np.linalg.LinAlgError):
        pass
    return LogNormBounds(
        l_upper=Interval(hi),
        ml_lower=Interval(lo),
        m_upper=Interval(A.norm2_upper()),
    )
