"""Crossed products of matrix algebras by finite-group and integer actions.

Setup: a base algebra of d x d matrices acting on l^p({1..d}), a group G
(finite, or Z carried on a window), and an action alpha implemented by
conjugation with phased permutation matrices U_s (exactly one unimodular
entry per row and column), so that alpha_s(a) = U_s a U_s^{-1} is
p-isometric on every l^p simultaneously and the implementers satisfy
U_e = I and U_s U_t = U_{st} on the nose.

A finitely supported function f: G -> M_d is a :class:`CcElement`.  Its
product is the twisted convolution

    (f * g)(t) = sum_s f(s) alpha_s(g(s^{-1} t)),

and its concrete realization is the integrated form of the regular
covariant pair on l^p(G) (x) C^d:

    pi(a)   = block diagonal with blocks alpha_{t^{-1}}(a) over positions t,
    v(s)    = (left translation by s) (x) identity,
    f  |->  sum_t pi(f(t)) v(t).

Blocks follow the Kronecker convention of :mod:`lpalg.opspace`: position t
indexes the outer factor, so block (t, t') of the integrated form is
alpha_{t^{-1}}(f(t t'^{-1})).  For G = Z the representation is truncated to
the window {-W..W}; translation then loses mass at the boundary, so window
norms are certified lower bounds of the full translation-invariant norms
and every window is recorded alongside the numbers computed on it.

The conditional expectation onto the base algebra reads off the coefficient
at the identity, and is realized spatially by compression with the
coordinate projection at the identity position:

    (P_e (x) I) (integrated f) (P_e (x) I) = P_e (x) f(e).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, ZWindow, cyclic_group
from .lpnorm import PNormEstimate, as_exponent, pnorm_estimate, validate_matrix
from .opspace import CbEstimate, LinearMap, cb_norm_lower

__all__ = [
    "CcElement",
    "ConcreteAlgebra",
    "CovariantRep",
    "IsometricAction",
    "build_regular_rep",
    "compress_identity_check",
    "conditional_expectation",
    "cyclic_coordinate_rotation",
    "expectation_cb_certificate",
    "integrated_form",
    "is_phased_permutation",
    "random_cc_element",
    "reduced_norm",
    "trivial_action",
    "twisted_convolve",
    "z_action_from_generator",
]

_PRUNE_TOL = 1e-14
_ACTION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ConcreteAlgebra:
    """The algebra of base_dim x base_dim matrices on l^p, with optional
    distinguished generators kept purely for documentation and demos."""

    base_dim: int
    generators: tuple = ()

    def __post_init__(self):
        if self.base_dim < 1:
            raise ValueError("base_dim must be a positive integer")


def is_phased_permutation(u, tol: float = _ACTION_TOL) -> bool:
    """True when u has exactly one entry of modulus 1 per row and per column
    and every other entry is below tol."""
    arr = np.asarray(u, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        return False
    mags = np.abs(arr)
    big = mags > tol
    if not (big.sum(axis=0) == 1).all() or not (big.sum(axis=1) == 1).all():
        return False
    return bool(np.abs(mags[big] - 1.0).max() <= tol)


class IsometricAction:
    """An action of a group carrier on M_d by phased permutation conjugation.

    For a finite carrier all implementers are given up front and the exact
    relations U_e = I and U_s U_t = U_{st} are verified.  For Z a single
    generator U is given and U_s = U^s (inverses via the conjugate
    transpose, which is the exact inverse of a phased permutation).
    """

    def __init__(self, carrier, *, unitaries=None, generator=None, name: str = ""):
        self.carrier = carrier
        self.name = name
        self._cache: dict[int, np.ndarray] = {}
        if isinstance(carrier, FiniteGroup):
            if unitaries is None:
                raise ValueError("a finite-group action needs one implementer per element")
            mats = [validate_matrix(u) for u in unitaries]
            if len(mats) != carrier.order:
                raise ValueError(f"expected {carrier.order} implementers, got {len(mats)}")
            d = mats[0].shape[0]
            for u in mats:
                if u.shape != (d, d) or not is_phased_permutation(u):
                    raise ValueError("every implementer must be a square phased permutation")
            e = carrier.identity
            if np.abs(mats[e] - np.eye(d)).max() > _ACTION_TOL:
                raise ValueError("the implementer at the identity must be the identity matrix")
            for s in carrier.elements():
                for t in carrier.elements():
                    st = carrier.op(s, t)
                    if np.abs(mats[s] @ mats[t] - mats[st]).max() > _ACTION_TOL:
                        raise ValueError(
                            f"implementers are not multiplicative at ({s}, {t}); "
                            "projective phases are not allowed"
                        )
            self.base_dim = d
            self._cache = {s: mats[s] for s in carrier.elements()}
        elif isinstance(carrier, ZWindow):
            if generator is None:
                raise ValueError("a Z action needs a generator matrix")
            u = validate_matrix(generator)
            if not is_phased_permutation(u):
                raise ValueError("the generator must be a phased permutation")
            self.base_dim = u.shape[0]
            self._generator = u
            self._cache = {0: np.eye(self.base_dim, dtype=complex), 1: u.copy()}
        else:
            raise TypeError(f"not a group carrier: {carrier!r}")

    def unitary(self, s: int) -> np.ndarray:
        """The implementer U_s."""
        s = int(s)
        if s in self._cache:
            return self._cache[s]
        if isinstance(self.carrier, FiniteGroup):
            raise KeyError(f"element {s} outside the finite carrier")
        base = self._generator if s > 0 else self._generator.conj().T
        self._cache[s] = np.linalg.matrix_power(base, abs(s))
        return self._cache[s]

    def apply(self, s: int, a) -> np.ndarray:
        """alpha_s(a) = U_s a U_s^{-1}."""
        u = self.unitary(s)
        return u @ np.asarray(a, dtype=complex) @ u.conj().T

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"IsometricAction(dim={self.base_dim} on {self.carrier!r}{tag})"


def trivial_action(carrier, dim: int) -> IsometricAction:
    """Every group element acts as the identity on M_dim."""
    eye = np.eye(dim, dtype=complex)
    if isinstance(carrier, FiniteGroup):
        return IsometricAction(carrier, unitaries=[eye] * carrier.order, name="trivial")
    return IsometricAction(carrier, generator=eye, name="trivial")


def cyclic_coordinate_rotation(n: int, k: int) -> IsometricAction:
    """Z/n acting on M_n by rotating coordinates k steps per generator.

    On diagonal matrices this is alpha_1(diag d)_j = d_{j+k mod n}, i.e. the
    pullback of the grid rotation j |-> j - k.
    """
    group = cyclic_group(n)
    shift = np.zeros((n, n), dtype=complex)
    shift[(np.arange(n) - k) % n, np.arange(n)] = 1.0
    mats = [np.linalg.matrix_power(shift, s) for s in range(n)]
    return IsometricAction(group, unitaries=mats, name=f"rotate{k}")


def z_action_from_generator(window: ZWindow, generator) -> IsometricAction:
    return IsometricAction(window, generator=generator)


class CcElement:
    """A finitely supported function from a group carrier into M_d.

    Coefficients with max modulus below 1e-14 are pruned on construction, so
    supports stay honest after convolutions.
    """

    def __init__(self, carrier, coeffs: dict, base_dim: int | None = None):
        self.carrier = carrier
        kept: dict[int, np.ndarray] = {}
        dim = base_dim
        for s, mat in coeffs.items():
            arr = np.asarray(mat, dtype=complex)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise ValueError(f"coefficient at {s} must be square, got {arr.shape}")
            if dim is None:
                dim = arr.shape[0]
            if arr.shape != (dim, dim):
                raise ValueError("all coefficients must share one base dimension")
            key = int(s)
            if isinstance(carrier, FiniteGroup) and not (0 <= key < carrier.order):
                raise ValueError(f"element {key} outside the finite carrier")
            if np.abs(arr).max(initial=0.0) > _PRUNE_TOL:
                kept[key] = arr.copy()
        if dim is None:
            raise ValueError("cannot infer base dimension from an empty element; pass base_dim")
        self.base_dim = dim
        self._coeffs = kept

    @property
    def support(self) -> tuple:
        return tuple(sorted(self._coeffs))

    def coeff(self, s: int) -> np.ndarray:
        return self._coeffs.get(int(s), np.zeros((self.base_dim, self.base_dim), dtype=complex))

    def items(self):
        return ((s, self._coeffs[s]) for s in self.support)

    @staticmethod
    def delta(carrier, s: int, mat=None, base_dim: int | None = None) -> "CcElement":
        """The single-term element (mat) delta_s; identity coefficient if mat is None."""
        if mat is None:
            if base_dim is None:
                raise ValueError("delta needs a matrix or a base_dim")
            mat = np.eye(base_dim, dtype=complex)
        return CcElement(carrier, {int(s): mat}, base_dim=base_dim)

    def __add__(self, other: "CcElement") -> "CcElement":
        if not (other.carrier is self.carrier or other.carrier == self.carrier):
            raise ValueError("cannot add elements over different carriers")
        merged = {s: self.coeff(s) + other.coeff(s) for s in set(self.support) | set(other.support)}
        return CcElement(self.carrier, merged, base_dim=self.base_dim)

    def __sub__(self, other: "CcElement") -> "CcElement":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "CcElement":
        return CcElement(
            self.carrier,
            {s: scalar * m for s, m in self.items()},
            base_dim=self.base_dim,
        )

    def __repr__(self) -> str:
        return f"CcElement(dim={self.base_dim}, support={self.support})"


def random_cc_element(
    rng: np.random.Generator,
    carrier,
    base_dim: int,
    n_terms: int = 2,
    max_shift: int = 2,
) -> CcElement:
    """A random finitely supported element, for tests and certificates."""
    if isinstance(carrier, FiniteGroup):
        pool = np.arange(carrier.order)
    else:
        pool = np.arange(-max_shift, max_shift + 1)
    chosen = rng.choice(pool, size=min(n_terms, pool.size), replace=False)
    coeffs = {
        int(s): rng.standard_normal((base_dim, base_dim)) + 1j * rng.standard_normal((base_dim, base_dim))
        for s in chosen
    }
    return CcElement(carrier, coeffs, base_dim=base_dim)


def twisted_convolve(f: CcElement, g: CcElement, action: IsometricAction) -> CcElement:
    """(f * g)(t) = sum_s f(s) alpha_s(g(s^{-1} t))."""
    if f.base_dim != g.base_dim or f.base_dim != action.base_dim:
        raise ValueError("element and action dimensions must agree")
    carrier = action.carrier
    out: dict[int, np.ndarray] = {}
    for s, fs in f.items():
        for u, gu in g.items():
            t = carrier.op(s, u)
            term = fs @ action.apply(s, gu)
            if t in out:
                out[t] = out[t] + term
            else:
                out[t] = term
    return CcElement(carrier, out, base_dim=f.base_dim)


class CovariantRep:
    """The regular covariant pair (pi, v) on l^p(positions) (x) C^d.

    For a finite carrier the positions are all group elements; for Z they
    are the window {-W..W} and translation is truncated at the edges.
    """

    def __init__(self, algebra: ConcreteAlgebra, action: IsometricAction, p, window_radius: int | None = None):
        if algebra.base_dim != action.base_dim:
            raise ValueError("algebra and action dimensions must agree")
        self.algebra = algebra
        self.action = action
        self.p = as_exponent(p)
        carrier = action.carrier
        if isinstance(carrier, FiniteGroup):
            self.positions = list(carrier.elements())
            self.identity_position = carrier.identity
        else:
            radius = carrier.radius if window_radius is None else int(window_radius)
            if radius < 1:
                raise ValueError("a Z representation needs a positive window radius")
            self.window_radius = radius
            self.positions = list(range(-radius, radius + 1))
            self.identity_position = 0
        self._pos_index = {t: i for i, t in enumerate(self.positions)}

    @property
    def carrier(self):
        return self.action.carrier

    @property
    def base_dim(self) -> int:
        return self.algebra.base_dim

    @property
    def dimension(self) -> int:
        return len(self.positions) * self.base_dim

    def position_index(self, t: int) -> int:
        return self._pos_index[t]

    def _block(self, i: int, j: int) -> tuple[slice, slice]:
        d = self.base_dim
        return slice(i * d, (i + 1) * d), slice(j * d, (j + 1) * d)

    def pi(self, a) -> np.ndarray:
        """Block-diagonal matrix with blocks alpha_{t^{-1}}(a)."""
        a = validate_matrix(a)
        out = np.zeros((self.dimension, self.dimension), dtype=complex)
        inv = self.carrier.inv
        for i, t in enumerate(self.positions):
            rows, cols = self._block(i, i)
            out[rows, cols] = self.action.apply(inv(t), a)
        return out

    def translation(self, s: int) -> np.ndarray:
        """Translation by s on the position space alone (0/1 matrix)."""
        nt = len(self.positions)
        out = np.zeros((nt, nt), dtype=complex)
        for j, t in enumerate(self.positions):
            target = self.carrier.op(s, t)
            i = self._pos_index.get(target)
            if i is not None:
                out[i, j] = 1.0
        return out

    def v(self, s: int) -> np.ndarray:
        """v(s) = translation(s) (x) identity on the fiber."""
        return np.kron(self.translation(s), np.eye(self.base_dim, dtype=complex))

    def integrated(self, f: CcElement) -> np.ndarray:
        """sum_t pi(f(t)) v(t), assembled block by block.

        Block (t, t') equals alpha_{t^{-1}}(f(t t'^{-1})); each pair of
        positions receives exactly one coefficient.
        """
        if f.base_dim != self.base_dim:
            raise ValueError("element dimension does not match the representation")
        out = np.zeros((self.dimension, self.dimension), dtype=complex)
        inv = self.carrier.inv
        op = self.carrier.op
        for s, mat in f.items():
            for j, tp in enumerate(self.positions):
                t = op(s, tp)
                i = self._pos_index.get(t)
                if i is None:
                    continue
                rows, cols = self._block(i, j)
                out[rows, cols] = self.action.apply(inv(t), mat)
        return out

    def identity_projection(self) -> np.ndarray:
        """P_e (x) I: the coordinate projection onto the identity position."""
        nt = len(self.positions)
        pe = np.zeros((nt, nt), dtype=complex)
        pe[self._pos_index[self.identity_position], self._pos_index[self.identity_position]] = 1.0
        return np.kron(pe, np.eye(self.base_dim, dtype=complex))

    def __repr__(self) -> str:
        return (
            f"CovariantRep(p={self.p.p}, positions={len(self.positions)}, "
            f"fiber={self.base_dim}, dim={self.dimension})"
        )


def build_regular_rep(algebra: ConcreteAlgebra, carrier, action: IsometricAction, p, window_radius=None) -> CovariantRep:
    """Factory for :class:`CovariantRep`, checking the carrier is consistent."""
    if action.carrier is not carrier and type(action.carrier) is not type(carrier):
        raise ValueError("action carrier does not match the requested group")
    return CovariantRep(algebra, action, p, window_radius=window_radius)


def integrated_form(rep: CovariantRep, f: CcElement) -> np.ndarray:
    return rep.integrated(f)


def reduced_norm(f: CcElement, rep: CovariantRep, **estimate_opts) -> PNormEstimate:
    """Norm of the integrated form of f on the representation space.

    Returns the full :class:`PNormEstimate`, so callers see the convergence
    flag and witness alongside the value.  On Z windows this is a certified
    lower bound for the untruncated norm.
    """
    return pnorm_estimate(rep.integrated(f), rep.p, **estimate_opts)


def conditional_expectation(f: CcElement) -> np.ndarray:
    """The coefficient of f at the group identity."""
    return f.coeff(f.carrier.identity)


def compress_identity_check(rep: CovariantRep, f: CcElement) -> dict:
    """Compare (P_e (x) I) (integrated f) (P_e (x) I) with P_e (x) f(e).

    Returns the two matrices and their max entrywise deviation; the
    conditional expectation is exactly this compression, so the deviation
    is pure floating-point noise.
    """
    proj = rep.identity_projection()
    lhs = proj @ rep.integrated(f) @ proj
    e_idx = rep.position_index(rep.identity_position)
    nt = len(rep.positions)
    pe = np.zeros((nt, nt), dtype=complex)
    pe[e_idx, e_idx] = 1.0
    rhs = np.kron(pe, conditional_expectation(f))
    return {"lhs": lhs, "rhs": rhs, "max_abs_diff": float(np.abs(lhs - rhs).max())}


def _crossed_sampler(rep: CovariantRep, max_shift: int):
    """Level sampler drawing amplified crossed-product elements."""

    def draw(rng: np.random.Generator, n: int) -> np.ndarray:
        dim = rep.dimension
        out = np.zeros((n * dim, n * dim), dtype=complex)
        for i in range(n):
            for j in range(n):
                f = random_cc_element(rng, rep.carrier, rep.base_dim, n_terms=2, max_shift=max_shift)
                out[i * dim : (i + 1) * dim, j * dim : (j + 1) * dim] = rep.integrated(f)
        return out

    return draw


def expectation_cb_certificate(
    rep: CovariantRep,
    n_max: int = 3,
    trials: int = 8,
    *,
    rng=None,
    **engine_opts,
) -> CbEstimate:
    """Certify that the spatial conditional expectation is p-completely
    contractive on sampled crossed-product elements.

    The map is X |-> (P_e (x) I) X (P_e (x) I); inputs are amplified
    integrated forms of random finitely supported elements.
    """
    proj = rep.identity_projection()
    phi = LinearMap(rep.dimension, rep.dimension, apply_fn=lambda x: proj @ x @ proj, name="E_e")
    max_shift = 2 if not isinstance(rep.carrier, FiniteGroup) else 0
    sampler = _crossed_sampler(rep, max_shift)
    return cb_norm_lower(phi, rep.p, n_max=n_max, trials=trials, rng=rng, sampler=sampler, **engine_opts)
