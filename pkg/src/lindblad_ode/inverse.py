"""Inverse map from the coherence-vector ODE pair (G, c) back to master
equation data (H, a), the six-space bijection between the equivalent
representations of a trace-annihilating Hermiticity-preserving generator,
the G = Q + R decomposition, and image/kernel diagnostics.

Space identifiers used by `phi`:
  1: (H, a)                       MasterEqParams
  2: rank-4 tensor x              Tensor4, flavor "x"
  3: rank-4 tensor x-tilde        Tensor4, flavor "x_tilde"
  4: superoperator on all of M_d  SuperopTensor
  5: superoperator on Hermitians  SuperopTensor (same data, restricted action)
  6: (G, c)                       OdePair
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import NiceBasis, structure_constants
from .forward import MasterEqParams, OdePair, apply_liouvillian
from .superop import SuperopTensor, tensor_from_map

_INV_TOL = 1e-10


@dataclass(frozen=True)
class Tensor4:
    """Rank-4 tensor x or x-tilde encoding a generator.

    flavor "x":       x_ijkl = conj(x_lkji) and sum_k (x_ijkk + x_kkij) = 0.
    flavor "x_tilde": x_ijkl = conj(x_lkji) and sum_i x_ijki = 0.
    """

    entries: np.ndarray
    flavor: str

    def __post_init__(self):
        t = np.asarray(self.entries, dtype=complex)
        if t.ndim != 4 or len(set(t.shape)) != 1:
            raise ValueError(f"tensor must have shape (d,d,d,d), got {t.shape}")
        if self.flavor not in ("x", "x_tilde"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        object.__setattr__(self, "entries", t)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def _tensor4_violation(t: Tensor4) -> float:
    x = t.entries
    v = float(np.max(np.abs(x - x.conj().transpose(3, 2, 1, 0)), initial=0.0))
    if t.flavor == "x":
        v = max(v, float(np.max(np.abs(np.einsum("ijkk->ij", x) + np.einsum("kkij->ij", x)))))
    else:
        v = max(v, float(np.max(np.abs(np.einsum("ijki->jk", x)))))
    return v


def validate_tensor4(t: Tensor4, tol: float = _INV_TOL) -> None:
    scale = max(1.0, float(np.max(np.abs(t.entries), initial=0.0)))
    v = _tensor4_violation(t)
    if v > tol * scale:
        raise ValueError(f"tensor violates flavor-{t.flavor} invariants by {v:.3e}")


def _validate_superop(t: SuperopTensor, tol: float = _INV_TOL) -> None:
    x = t.entries
    scale = max(1.0, float(np.max(np.abs(x), initial=0.0)))
    herm = float(np.max(np.abs(x - x.conj().transpose(3, 2, 1, 0))))
    trace = float(np.max(np.abs(np.einsum("klmk->lm", x))))
    if max(herm, trace) > tol * scale:
        raise ValueError(
            "superoperator is not a Hermiticity-preserving trace-annihilating "
            f"generator (violation {max(herm, trace):.3e})"
        )


def h_from_g(g: np.ndarray, basis: NiceBasis) -> np.ndarray:
    """Traceless Hermitian H = (1/2id) sum_nm G_nm [F_m, F_n]."""
    g = np.asarray(g, dtype=float)
    j = basis.J
    if g.shape != (j, j):
        raise ValueError(f"G must be {j}x{j}, got {g.shape}")
    ft = basis.traceless
    prod = np.einsum("nm,mab,nbc->ac", g, ft, ft, optimize=True)
    prod_rev = np.einsum("nm,nab,mbc->ac", g, ft, ft, optimize=True)
    return (prod - prod_rev) / (2j * basis.dim)


def h_from_g_structure(g: np.ndarray, basis: NiceBasis) -> np.ndarray:
    """Equivalent route via coordinates h_m = -(1/2d) f_jkm G_jk."""
    f = structure_constants(basis).f
    hm = -np.einsum("jkm,jk->m", f, np.asarray(g, dtype=float)) / (2 * basis.dim)
    return np.einsum("m,mab->ab", hm, basis.traceless)


def _g_tilde(g: np.ndarray, c: np.ndarray, basis: NiceBasis) -> np.ndarray:
    """Stack of operators G~_n = sum_m G_nm F_m + c_n I."""
    eye = np.eye(basis.dim)
    return np.einsum("nm,mab->nab", g, basis.traceless) + c[:, None, None] * eye


def a_from_gc(g: np.ndarray, c: np.ndarray, basis: NiceBasis) -> np.ndarray:
    """Hermitian a with a_mn = sum_i Tr[G~_i F_m F_i F_n]."""
    g = np.asarray(g, dtype=float)
    c = np.asarray(c, dtype=float)
    j = basis.J
    if g.shape != (j, j) or c.shape != (j,):
        raise ValueError("G/c shapes inconsistent with basis")
    ft = basis.traceless
    gt = _g_tilde(g, c, basis)
    return np.einsum("iab,mbc,icd,nda->mn", gt, ft, ft, ft, optimize=True)


def inverse_map(pair: OdePair, basis: NiceBasis) -> MasterEqParams:
    """Unique (traceless H, a) whose coherence-vector ODE is v' = Gv + c."""
    return MasterEqParams(
        hamiltonian=h_from_g(pair.G, basis),
        rates=a_from_gc(pair.G, pair.c, basis),
    )


# --- six-space maps -------------------------------------------------------


def _meq_to_x(p: MasterEqParams, basis: NiceBasis) -> Tensor4:
    h = p.hamiltonian
    ft = basis.traceless
    d = basis.dim
    delta = np.eye(d)
    x = (
        -1j * np.einsum("ij,kl->ijkl", h, delta)
        + 1j * np.einsum("ij,kl->ijkl", delta, h)
        + np.einsum("mn,mij,nkl->ijkl", p.rates, ft, ft, optimize=True)
    )
    return Tensor4(entries=x, flavor="x")


def _x_to_meq(t: Tensor4, basis: NiceBasis) -> MasterEqParams:
    x = t.entries
    d = basis.dim
    h = (np.einsum("kkij->ij", x) - np.einsum("ijkk->ij", x)) / (2j * d)
    ft = basis.traceless
    a = np.einsum("mji,ijkl,nlk->mn", ft, x, ft, optimize=True)
    return MasterEqParams(hamiltonian=h, rates=a)


def _x_to_superop(t: Tensor4, basis: NiceBasis) -> SuperopTensor:
    x = t.entries
    d = basis.dim
    delta = np.eye(d)
    s1 = np.einsum("jkij->ki", x)
    s2 = np.einsum("kljk->lj", x)
    out = (
        x
        - 0.5 * np.einsum("ji,kl->ijkl", s1, delta)
        - 0.5 * np.einsum("ij,lk->ijkl", delta, s2)
    )
    return SuperopTensor(entries=out)


def _superop_to_xt(t: SuperopTensor, basis: NiceBasis) -> Tensor4:
    # identical layout: xt_ijkl = [L(|j><k|)]_il = T[i,j,k,l]
    return Tensor4(entries=t.entries.copy(), flavor="x_tilde")


def _b_from_xt(xt: np.ndarray, d: int) -> np.ndarray:
    tr_full = np.einsum("llkk->", xt)
    b = np.einsum("ijkk->ij", xt) + np.einsum("kkij->ij", xt) - (tr_full / d) * np.eye(d)
    return b / (2 * d)


def _xt_to_x(t: Tensor4, basis: NiceBasis) -> Tensor4:
    xt = t.entries
    d = basis.dim
    b = _b_from_xt(xt, d)
    delta = np.eye(d)
    x = xt - np.einsum("ij,kl->ijkl", b, delta) - np.einsum("ij,kl->ijkl", delta, b)
    return Tensor4(entries=x, flavor="x")


def _xt_to_meq(t: Tensor4, basis: NiceBasis) -> MasterEqParams:
    return _x_to_meq(Tensor4(entries=t.entries, flavor="x"), basis)


def _meq_to_superop(p: MasterEqParams, basis: NiceBasis) -> SuperopTensor:
    return tensor_from_map(lambda x: apply_liouvillian(p, x, basis), basis.dim)


def _superop_to_gc(t: SuperopTensor, basis: NiceBasis) -> OdePair:
    ft = basis.traceless
    d = basis.dim
    lf = np.einsum("klmn,qlm->qkn", t.entries, ft, optimize=True)
    g = np.einsum("nab,qba->nq", ft, lf, optimize=True)
    li = np.einsum("klln->kn", t.entries)
    c = np.einsum("nab,ba->n", ft, li) / d
    if max(np.max(np.abs(g.imag), initial=0.0), np.max(np.abs(c.imag), initial=0.0)) > 1e-9:
        raise ValueError("superoperator does not yield a real (G, c)")
    return OdePair(G=g.real, c=c.real)


def _gc_to_superop(pair: OdePair, basis: NiceBasis) -> SuperopTensor:
    ft = basis.traceless
    d = basis.dim
    gt = _g_tilde(pair.G, pair.c, basis)
    t = np.einsum("qml,qkn->klmn", gt, ft, optimize=True)
    return SuperopTensor(entries=t)


def _gc_to_xt(pair: OdePair, basis: NiceBasis) -> Tensor4:
    gt = _g_tilde(pair.G, pair.c, basis)
    xt = np.einsum("nkj,nil->ijkl", gt, basis.traceless, optimize=True)
    return Tensor4(entries=xt, flavor="x_tilde")


def _gc_to_x(pair: OdePair, basis: NiceBasis) -> Tensor4:
    ft = basis.traceless
    d = basis.dim
    eye = np.eye(d)
    anti = np.einsum("nm,mab,nbc->ac", pair.G, ft, ft, optimize=True)
    anti = anti + np.einsum("nm,nab,mbc->ac", pair.G, ft, ft, optimize=True)
    b = (anti - np.trace(pair.G) * eye / d) / (2 * d)
    b = b + np.einsum("n,nab->ab", pair.c, ft) / d
    xt = _gc_to_xt(pair, basis).entries
    x = xt - np.einsum("ij,kl->ijkl", b, eye) - np.einsum("ij,kl->ijkl", eye, b)
    return Tensor4(entries=x, flavor="x")


def _gc_to_meq(pair: OdePair, basis: NiceBasis) -> MasterEqParams:
    return inverse_map(pair, basis)


_EDGES = {
    (1, 2): _meq_to_x,
    (1, 4): _meq_to_superop,
    (2, 1): _x_to_meq,
    (2, 4): _x_to_superop,
    (3, 1): _xt_to_meq,
    (3, 2): _xt_to_x,
    (3, 4): lambda t, b: _x_to_superop(t, b),
    (4, 3): _superop_to_xt,
    (4, 5): lambda t, b: t,
    (5, 4): lambda t, b: t,
    (5, 6): _superop_to_gc,
    (6, 1): _gc_to_meq,
    (6, 2): _gc_to_x,
    (6, 3): _gc_to_xt,
    (6, 4): _gc_to_superop,
    (6, 5): _gc_to_superop,
}

_VALIDATORS = {
    2: lambda v: validate_tensor4(v) if v.flavor == "x" else _bad_flavor(v, "x"),
    3: lambda v: validate_tensor4(v) if v.flavor == "x_tilde" else _bad_flavor(v, "x_tilde"),
    4: _validate_superop,
    5: _validate_superop,
}


def _bad_flavor(v, want):
    raise ValueError(f"expected flavor {want!r}, got {v.flavor!r}")


def _route(src: int, dst: int) -> list[int]:
    """Deterministic shortest path in the map graph (BFS, ascending neighbors)."""
    if src == dst:
        return [src]
    adjacency = {}
    for a, b in sorted(_EDGES):
        adjacency.setdefault(a, []).append(b)
    prev = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for node in frontier:
            for nb in adjacency.get(node, []):
                if nb not in prev:
                    prev[nb] = node
                    nxt.append(nb)
        if dst in prev:
            break
        frontier = nxt
    if dst not in prev:
        raise ValueError(f"no route from space {src} to space {dst}")
    path = [dst]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


def phi(src: int, dst: int, value, basis: NiceBasis):
    """Apply the bijection between generator representations.

    src and dst are space identifiers 1..6 (see module docstring). Requests
    without a direct formula are composed along a fixed shortest route.
    """
    for s in (src, dst):
        if s not in range(1, 7):
            raise ValueError(f"space identifier must be 1..6, got {s}")
    check = _VALIDATORS.get(src)
    if check is not None:
        check(value)
    elif src == 1 and not isinstance(value, MasterEqParams):
        raise ValueError("space 1 values must be MasterEqParams")
    elif src == 6 and not isinstance(value, OdePair):
        raise ValueError("space 6 values must be OdePair")
    path = _route(src, dst)
    for a, b in zip(path, path[1:]):
        value = _EDGES[(a, b)](value, basis)
    return value


# --- decomposition and image diagnostics ----------------------------------


def decompose_g(g: np.ndarray, basis: NiceBasis) -> tuple[np.ndarray, np.ndarray]:
    """Split G into the Hamiltonian part Q and dissipative part R = G - Q.

    Q_ij = (1/2d) sum_{nmk} G_nm f_knm f_kij; for d >= 3 this generally
    differs from the antisymmetric part of G.
    """
    g = np.asarray(g, dtype=float)
    f = structure_constants(basis).f
    q = np.einsum("nm,knm,kij->ij", g, f, f, optimize=True) / (2 * basis.dim)
    return q, g - q


def r_image_check(r: np.ndarray, basis: NiceBasis, tol: float = 1e-9) -> bool:
    """True iff sum_mn R_mn [F_n, F_m] = 0, i.e. R lies in the image of a -> R."""
    r = np.asarray(r, dtype=float)
    ft = basis.traceless
    s = np.einsum("mn,nab,mbc->ac", r, ft, ft, optimize=True)
    s = s - np.einsum("mn,mab,nbc->ac", r, ft, ft, optimize=True)
    return float(np.max(np.abs(s), initial=0.0)) <= tol * max(1.0, float(np.max(np.abs(r), initial=0.0)))


def _hermitian_basis(j: int) -> list[np.ndarray]:
    out = []
    for m in range(j):
        e = np.zeros((j, j), dtype=complex)
        e[m, m] = 1.0
        out.append(e)
    for m in range(j):
        for n in range(m + 1, j):
            e = np.zeros((j, j), dtype=complex)
            e[m, n] = e[n, m] = 1.0
            out.append(e)
            e = np.zeros((j, j), dtype=complex)
            e[m, n] = -1j
            e[n, m] = 1j
            out.append(e)
    return out


def image_dimensions(basis: NiceBasis) -> tuple[int, int, int]:
    """Ranks of the linearized map a -> (R, c) over Hermitian a.

    Returns (dimension of the image of a -> R, dimension of its intersection
    with the antisymmetric matrices, kernel dimension of a -> (R, c)).
    """
    from .forward import c_from_a, r_from_a

    j = basis.J
    if j == 0:
        return 0, 0, 0
    cols_r, cols_rc = [], []
    for e in _hermitian_basis(j):
        r = r_from_a(e, basis)
        c = c_from_a(e, basis)
        cols_r.append(r.ravel())
        cols_rc.append(np.concatenate([r.ravel(), c]))
    mr = np.array(cols_r).T
    mrc = np.array(cols_rc).T

    def _rank(m):
        if m.size == 0:
            return 0
        sv = np.linalg.svd(m, compute_uv=False)
        return int(np.sum(sv > 1e-8 * sv[0]))

    dim_image = _rank(mr)
    # intersection with antisymmetric matrices: dim(U) + dim(W) - dim(U + W)
    anti = []
    for m in range(j):
        for n in range(m + 1, j):
            e = np.zeros((j, j))
            e[m, n] = 1.0
            e[n, m] = -1.0
            anti.append(e.ravel())
    w = np.array(anti).T if anti else np.zeros((j * j, 0))
    dim_w = _rank(w)
    dim_union = _rank(np.hstack([mr, w]))
    dim_intersection = dim_image + dim_w - dim_union
    kernel_dim = mrc.shape[1] - _rank(mrc)
    return dim_image, dim_intersection, kernel_dim
