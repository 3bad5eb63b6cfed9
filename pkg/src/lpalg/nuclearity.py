"""Finite-matrix approximation factorizations and nuclearity witnesses.

Everything here factors an algebra approximately through a matrix algebra
by a pair of completely contractive maps and keeps the books on how much is
lost.  The central pair compresses a crossed-product operator to the block
square over an approximately invariant set F and averages it back:

    phi(T)   = (P_F (x) I) T (P_F (x) I),  a block matrix over F,
    psi(M)   = (1/|F|) sum_{s,t in F} pi(alpha_s(M_{s,t})) v(s t^{-1}).

For an integrated crossed-product element the composition scales each group
coefficient by |F (cap) sF| / |F|, so the round-trip defect per single term
is exactly |1 - |F (cap) sF|/|F|| times that term's norm, and shrinking the
translate ratios of F shrinks the defect.  The remaining operations supply
the bookkeeping lemmas: an exact identity factorization for matrix
algebras, amplification and corner stability, window truncation, and the
triangle-inequality composition of two approximations.  ``crossed_nuclearity_witness``
chains them end to end and emits a machine-checkable report.

Averaging arithmetic: when all contributions to one group coefficient are
bitwise identical (which is exactly what happens for integrated crossed
elements under permutation actions), their average is taken as
value * (count / |F|) instead of a floating accumulation, so whole-group
round trips reproduce coefficients bit for bit and single-term defects
carry the intersection ratio exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .crossed import (
    CcElement,
    ConcreteAlgebra,
    CovariantRep,
    cyclic_coordinate_rotation,
    reduced_norm,
)
from .errors import CertificateError
from .groups import (
    FiniteGroup,
    FolnerSet,
    ZWindow,
    cyclic_group,
    folner_intersection,
    folner_ratio,
    folner_search,
    group_to_descriptor,
)
from .lpnorm import as_exponent, pnorm_estimate
from .opspace import CbEstimate, LinearMap, amplify, block_matrix, cb_norm_lower, split_blocks
from .partition import (
    circle_function,
    circle_partition,
    cx_partition_psi,
    cx_phi_cb_certificate,
    cx_point_eval_phi,
    cx_psi_cb_certificate,
    partition_roundtrip,
)

__all__ = [
    "Factorization",
    "compose_factorizations",
    "corner_embed",
    "corner_project",
    "corner_restrict",
    "crossed_nuclearity_witness",
    "cx_partition_psi",
    "cx_point_eval_phi",
    "folner_phi",
    "folner_phi_cb_certificate",
    "folner_phi_map",
    "folner_psi",
    "folner_psi_map",
    "folner_roundtrip",
    "identity_factorization",
    "lift_factorization",
    "measure_roundtrip",
    "psi_contractivity_certificate",
    "rotation_demo",
    "truncate_cb_certificate",
    "truncate_map",
    "truncate_stable",
]

_CB_TOL = 1e-6
_COMPRESS_TOL = 1e-12

_LIGHT_CERT = {"n_max": 2, "trials": 4, "ascent_steps": 2, "restarts": 6, "max_iters": 60}


def _check_contractive(cb: CbEstimate, name: str):
    for n, v in cb.levels:
        if v > 1.0 + _CB_TOL:
            raise CertificateError(
                f"{name} contractivity certificate fails at level {n}: bound {v:.9f}"
            )


@dataclass
class Factorization:
    """A pair of maps through a matrix algebra with its quality records.

    ``roundtrip_errors`` maps a test-element id to the measured operator
    norm of psi(phi(x)) - x.  Both cb estimates are sampled lower bounds
    and must sit at or below 1 (up to tolerance) for the pair to count as
    an approximation by contractions; violating certificates are rejected
    at construction.
    """

    phi: LinearMap
    psi: LinearMap
    target_dim: int
    phi_cb: CbEstimate
    psi_cb: CbEstimate
    roundtrip_errors: dict = field(default_factory=dict)
    p: float = 2.0

    def __post_init__(self):
        _check_contractive(self.phi_cb, "phi")
        _check_contractive(self.psi_cb, "psi")
        for key, err in self.roundtrip_errors.items():
            if not err >= 0.0:
                raise ValueError(f"negative round-trip error recorded for {key!r}")

    @property
    def worst_error(self) -> float:
        return max(self.roundtrip_errors.values(), default=0.0)


def measure_roundtrip(phi: LinearMap, psi: LinearMap, elements: dict, p, **est_opts) -> dict:
    """Measured ||psi(phi(x)) - x||_{p->p} per test element."""
    pe = as_exponent(p)
    out = {}
    for key, x in elements.items():
        x = np.asarray(x, dtype=complex)
        out[key] = pnorm_estimate(psi.apply(phi.apply(x)) - x, pe, **est_opts).value
    return out


def identity_factorization(dim: int, p, *, rng=None, n_max: int = 1, trials: int = 2) -> Factorization:
    """The exact factorization of a matrix algebra through itself."""
    ident = LinearMap.identity(dim)
    pe = as_exponent(p)
    cb = cb_norm_lower(ident, pe, n_max=n_max, trials=trials, ascent_steps=0, rng=rng)
    return Factorization(
        phi=ident,
        psi=ident,
        target_dim=dim,
        phi_cb=cb,
        psi_cb=cb,
        roundtrip_errors={},
        p=pe.p,
    )


# ---------------------------------------------------------------------------
# The Folner compression / averaging pair
# ---------------------------------------------------------------------------


def _folner_selector(folner: FolnerSet, rep: CovariantRep) -> np.ndarray:
    """Row/column indices of the F-block square inside the representation."""
    d = rep.base_dim
    try:
        starts = [rep.position_index(t) * d for t in folner.members]
    except KeyError as exc:
        raise ValueError(f"Folner member {exc} lies outside the representation window") from exc
    return np.concatenate([np.arange(s, s + d) for s in starts])


def folner_phi(f: CcElement, folner: FolnerSet, rep: CovariantRep) -> np.ndarray:
    """Compress the integrated form of f to the block square over F.

    Assembled directly: the (r, s^{-1}r) block is alpha_{r^{-1}}(f(s)) for
    each r in F (cap) sF, which is then checked entrywise against the
    literal compression of the integrated form — the two are the same sum
    read in different orders, so any deviation beyond 1e-12 is a bug.
    """
    d = rep.base_dim
    members = folner.members
    idx = {t: i for i, t in enumerate(members)}
    op, inv = rep.carrier.op, rep.carrier.inv
    out = np.zeros((folner.size * d, folner.size * d), dtype=complex)
    for s, a in f.items():
        s_inv = inv(s)
        for r in members:
            j = idx.get(op(s_inv, r))
            if j is None:
                continue
            i = idx[r]
            out[i * d : (i + 1) * d, j * d : (j + 1) * d] = rep.action.apply(inv(r), a)
    sel = _folner_selector(folner, rep)
    compressed = rep.integrated(f)[np.ix_(sel, sel)]
    dev = float(np.abs(out - compressed).max(initial=0.0))
    if dev > _COMPRESS_TOL:
        raise AssertionError(
            f"block formula deviates from the literal compression by {dev:.3e}"
        )
    return out


def folner_phi_map(folner: FolnerSet, rep: CovariantRep) -> LinearMap:
    """The compression T -> (P_F (x) I) T (P_F (x) I) as a map on matrices."""
    sel = _folner_selector(folner, rep)
    grid = np.ix_(sel, sel)
    return LinearMap(
        rep.dimension,
        folner.size * rep.base_dim,
        apply_fn=lambda t: np.asarray(t, dtype=complex)[grid],
        name="folner_phi",
    )


def _combine_terms(terms: list, size: int) -> np.ndarray:
    """Average a list of matrices, collapsing bitwise-identical summands.

    Identical contributions are averaged as value * (count/size), an exact
    operation whenever count == size; heterogeneous lists fall back to a
    plain accumulation.
    """
    first = terms[0]
    if all(x is first or np.array_equal(x, first) for x in terms[1:]):
        return first * (len(terms) / size)
    total = first.copy()
    for x in terms[1:]:
        total += x
    return total / size


def folner_psi(m, folner: FolnerSet, rep: CovariantRep) -> np.ndarray:
    """Average a block matrix over F back into the representation.

    Reads m as blocks (M_{s,t})_{s,t in F} and returns
    (1/|F|) sum_{s,t} pi(alpha_s(M_{s,t})) v(s t^{-1}), assembled by first
    collecting the coefficient of every group element u = s t^{-1} and then
    integrating the resulting finitely supported function.
    """
    d = rep.base_dim
    k = folner.size
    m = np.asarray(m, dtype=complex)
    if m.shape != (k * d, k * d):
        raise ValueError(f"expected a {k * d}x{k * d} block matrix over F, got {m.shape}")
    blocks = split_blocks(m, k, d)
    op, inv = rep.carrier.op, rep.carrier.inv
    terms: dict[int, list] = {}
    for i, s in enumerate(folner.members):
        for j, t in enumerate(folner.members):
            if not blocks[i, j].any():
                continue
            u = op(s, inv(t))
            terms.setdefault(u, []).append(rep.action.apply(s, blocks[i, j]))
    coeffs = {u: _combine_terms(lst, k) for u, lst in terms.items()}
    return rep.integrated(CcElement(rep.carrier, coeffs, base_dim=d))


def folner_psi_map(folner: FolnerSet, rep: CovariantRep) -> LinearMap:
    return LinearMap(
        folner.size * rep.base_dim,
        rep.dimension,
        apply_fn=lambda m: folner_psi(m, folner, rep),
        name="folner_psi",
    )


def folner_phi_cb_certificate(
    folner: FolnerSet, rep: CovariantRep, n_max: int = 2, trials: int = 6, *, rng=None, **opts
) -> CbEstimate:
    """Sampled contractivity certificate for the F-compression.

    A coordinate compression is completely contractive for every p; the
    identity input realizes ratio 1 exactly, so the levels should pin 1.
    """
    return cb_norm_lower(folner_phi_map(folner, rep), rep.p, n_max=n_max, trials=trials, rng=rng, **opts)


def psi_contractivity_certificate(
    folner: FolnerSet, rep: CovariantRep, k_max: int = 2, trials: int = 6, *, rng=None, **opts
) -> CbEstimate:
    """Sampled contractivity certificate for the averaging map.

    On the full group this is the duality bound for the averaged
    translations; on a truncated window the map is the compression of the
    full-line contraction (the coordinate projection commutes with the
    diagonal part), so its levels must also stay at or below 1.
    """
    k_max = int(opts.pop("n_max", k_max))
    return cb_norm_lower(folner_psi_map(folner, rep), rep.p, n_max=k_max, trials=trials, rng=rng, **opts)


def _roundtrip_bound(f: CcElement, folner: FolnerSet, rep: CovariantRep, **est_opts) -> float:
    """Per-term defect budget: sum_s |1 - |F cap sF|/|F|| ||pi(a_s) v(s)||."""
    total = 0.0
    for s, a in f.items():
        ratio = folner_intersection(folner, s) / folner.size
        term = rep.pi(a) @ rep.v(s)
        total += abs(1.0 - ratio) * pnorm_estimate(term, rep.p, **est_opts).value
    return total


def folner_roundtrip(f: CcElement, folner: FolnerSet, rep: CovariantRep, **est_opts) -> dict:
    """Measure ||psi(phi(f)) - f|| against its intersection-ratio budget.

    For a single-term f = a delta_s the defect operator is exactly
    (|F cap sF|/|F| - 1) pi(a) v(s), so the measured error equals the
    budget to floating precision; multi-term budgets add per-term and are
    conservative.
    """
    big = rep.integrated(f)
    approx = folner_psi(folner_phi(f, folner, rep), folner, rep)
    error = pnorm_estimate(approx - big, rep.p, **est_opts).value
    return {"error": float(error), "bound": float(_roundtrip_bound(f, folner, rep, **est_opts))}


# ---------------------------------------------------------------------------
# Matrix and stable bookkeeping
# ---------------------------------------------------------------------------


def lift_factorization(fact: Factorization, n: int, entries: dict | None = None, *, rng=None) -> Factorization:
    """Amplify a factorization to n x n block matrices over its algebra.

    The maps become id_{M_n} (x) phi and id_{M_n} (x) psi; amplification
    does not change a cb norm, so the parent's sampled lower bounds remain
    valid and are carried over.  Round-trip errors are measured on block
    matrices assembled from ``entries`` (id -> (n, n, d, d) array of
    blocks); the per-entry errors of the parent control them up to a factor
    n^2.
    """
    if n < 1:
        raise ValueError("amplification level must be a positive integer")
    d = fact.phi.domain_dim
    if entries is None:
        gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
        entries = {}
        for t in range(2):
            grid = gen.standard_normal((n, n, d, d)) + 1j * gen.standard_normal((n, n, d, d))
            entries[f"x{t}"] = grid / max(1.0, float(np.abs(grid).max()))
    tests = {}
    for key, grid in entries.items():
        grid = np.asarray(grid, dtype=complex)
        if grid.shape != (n, n, d, d):
            raise ValueError(f"entry grid {key!r} must have shape {(n, n, d, d)}")
        tests[key] = block_matrix(grid)
    phi_n = amplify(fact.phi, n)
    psi_n = amplify(fact.psi, n)
    return Factorization(
        phi=phi_n,
        psi=psi_n,
        target_dim=n * fact.target_dim,
        phi_cb=fact.phi_cb,
        psi_cb=fact.psi_cb,
        roundtrip_errors=measure_roundtrip(phi_n, psi_n, tests, fact.p),
        p=fact.p,
    )


def corner_embed(outer: int, dim: int) -> LinearMap:
    """a -> e_{1,1} (x) a, the completely isometric corner embedding."""

    def embed(a):
        a = np.asarray(a, dtype=complex)
        out = np.zeros((outer * dim, outer * dim), dtype=complex)
        out[:dim, :dim] = a
        return out

    return LinearMap(dim, outer * dim, apply_fn=embed, name="corner_iota")


def corner_project(outer: int, dim: int) -> LinearMap:
    """X -> (1,1) block, the completely contractive corner projection."""
    return LinearMap(
        outer * dim,
        dim,
        apply_fn=lambda x: np.asarray(x, dtype=complex)[:dim, :dim].copy(),
        name="corner_rho",
    )


def corner_restrict(
    fact: Factorization,
    outer: int,
    *,
    test_elements: dict | None = None,
    rng=None,
    cert_opts: dict | None = None,
) -> Factorization:
    """Restrict a factorization of M_outer (x) A to one of A via the corner.

    Returns (phi o iota, rho o psi).  rho(iota(a)) = a exactly, so the
    restricted round trip agrees with the parent's on embedded elements up
    to the contraction rho, and the measured error can only shrink.
    """
    big = fact.phi.domain_dim
    if big % outer != 0:
        raise ValueError("outer block count must divide the factorization's domain dimension")
    dim = big // outer
    iota = corner_embed(outer, dim)
    rho = corner_project(outer, dim)
    phi2 = fact.phi.compose(iota)
    psi2 = rho.compose(fact.psi)
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    if test_elements is None:
        test_elements = {
            f"a{t}": gen.standard_normal((dim, dim)) + 1j * gen.standard_normal((dim, dim))
            for t in range(2)
        }
    copts = dict(_LIGHT_CERT)
    copts.update(cert_opts or {})
    return Factorization(
        phi=phi2,
        psi=psi2,
        target_dim=fact.target_dim,
        phi_cb=cb_norm_lower(phi2, fact.p, rng=gen, **copts),
        psi_cb=cb_norm_lower(psi2, fact.p, rng=gen, **copts),
        roundtrip_errors=measure_roundtrip(phi2, psi2, test_elements, fact.p),
        p=fact.p,
    )


def truncate_stable(t, n_keep: int, block_dim: int = 1) -> np.ndarray:
    """Compress to the first n_keep positions of a window: (P_N (x) I) T (P_N (x) I)."""
    t = np.asarray(t, dtype=complex)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError("expected a square matrix over the window")
    if t.shape[0] % block_dim != 0:
        raise ValueError("fiber dimension must divide the matrix size")
    window = t.shape[0] // block_dim
    if not 1 <= n_keep <= window:
        raise ValueError(f"can keep between 1 and {window} positions, asked for {n_keep}")
    keep = n_keep * block_dim
    out = np.zeros_like(t)
    out[:keep, :keep] = t[:keep, :keep]
    return out


def truncate_map(window: int, n_keep: int, block_dim: int = 1) -> LinearMap:
    dim = window * block_dim
    return LinearMap(
        dim, dim, apply_fn=lambda t: truncate_stable(t, n_keep, block_dim), name=f"truncate_{n_keep}"
    )


def truncate_cb_certificate(
    window: int, n_keep: int, block_dim: int, p, n_max: int = 2, trials: int = 6, *, rng=None, **opts
) -> CbEstimate:
    """Sampled contractivity certificate for the window truncation."""
    return cb_norm_lower(truncate_map(window, n_keep, block_dim), p, n_max=n_max, trials=trials, rng=rng, **opts)


# ---------------------------------------------------------------------------
# Composition and end-to-end witnesses
# ---------------------------------------------------------------------------


def compose_factorizations(
    bridge_phi: LinearMap,
    bridge_psi: LinearMap,
    fact_b: Factorization,
    test_set: dict,
    eps_split: tuple,
    *,
    p,
    bridge_phi_cb: CbEstimate | None = None,
    bridge_psi_cb: CbEstimate | None = None,
    rng=None,
    cert_opts: dict | None = None,
) -> Factorization:
    """Chain an approximation of A through B with a factorization of B.

    eps_split = (eps1, eps2) is the claimed budget: the bridge round trip
    loses at most eps1 on the test set and fact_b loses at most eps2 on the
    bridged test set.  The triangle inequality then caps the total at
    eps1 + eps2 (the bridge's return leg is contractive); both the bridge
    certificates and the measured totals are enforced, and a violation is a
    refusal, not a warning.
    """
    eps1, eps2 = float(eps_split[0]), float(eps_split[1])
    pe = as_exponent(p)
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    copts = dict(_LIGHT_CERT)
    copts.update(cert_opts or {})
    if bridge_phi_cb is None:
        bridge_phi_cb = cb_norm_lower(bridge_phi, pe, rng=gen, **copts)
    if bridge_psi_cb is None:
        bridge_psi_cb = cb_norm_lower(bridge_psi, pe, rng=gen, **copts)
    _check_contractive(bridge_phi_cb, "bridge phi")
    _check_contractive(bridge_psi_cb, "bridge psi")

    bridged = {key: bridge_phi.apply(x) for key, x in test_set.items()}
    for key, err in measure_roundtrip(fact_b.phi, fact_b.psi, bridged, pe).items():
        if err > eps2 + 1e-9:
            raise CertificateError(
                f"inner factorization loses {err:.3e} on bridged element {key!r}, over its {eps2:.3e} budget"
            )

    phi_total = fact_b.phi.compose(bridge_phi)
    psi_total = bridge_psi.compose(fact_b.psi)
    errors = measure_roundtrip(phi_total, psi_total, test_set, pe)
    budget = eps1 + eps2 + 1e-9
    for key, err in errors.items():
        if err > budget:
            raise CertificateError(
                f"composed round trip loses {err:.3e} on {key!r}, over the {budget:.3e} budget"
            )
    return Factorization(
        phi=phi_total,
        psi=psi_total,
        target_dim=fact_b.target_dim,
        phi_cb=cb_norm_lower(phi_total, pe, rng=gen, **copts),
        psi_cb=cb_norm_lower(psi_total, pe, rng=gen, **copts),
        roundtrip_errors=errors,
        p=pe.p,
    )


def _levels_list(cb: CbEstimate) -> list:
    return [[int(n), float(v)] for n, v in cb.levels]


def crossed_nuclearity_witness(
    fs: list,
    eps: float,
    algebra: ConcreteAlgebra,
    carrier,
    action,
    p,
    *,
    rng=None,
    cert_opts: dict | None = None,
    est_opts: dict | None = None,
) -> tuple:
    """Build and check a full approximation witness for crossed elements.

    Pipeline: bound the elements' reduced norms by M, pick F with translate
    ratios below eps/(3M) for every support shift, compress/average through
    the exact factorization of the F-block matrix algebra, and record per
    element the measured round-trip error (must stay below eps), its
    intersection-ratio budget, all contractivity certificates, and the
    chosen window.  Returns (Factorization, report).
    """
    if not fs:
        raise ValueError("need at least one finitely supported element to witness")
    if eps <= 0.0:
        raise ValueError("epsilon must be positive")
    pe = as_exponent(p)
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    eopts = est_opts or {}
    supports = sorted({s for f in fs for s in f.support})

    if isinstance(carrier, FiniteGroup):
        rep = CovariantRep(algebra, action, pe)
    else:
        support_radius = max((abs(s) for s in supports), default=0)
        rep = CovariantRep(algebra, action, pe, window_radius=max(support_radius, 1) + 4)

    norms = [reduced_norm(f, rep, **eopts).value for f in fs]
    m_bound = max(max(norms, default=0.0), 1e-9)
    delta = eps / (3.0 * m_bound)
    folner = folner_search(carrier, supports, delta)

    if isinstance(carrier, ZWindow):
        support_radius = max((abs(s) for s in supports), default=0)
        rep = CovariantRep(algebra, action, pe, window_radius=support_radius + folner.size)
        norms = [reduced_norm(f, rep, **eopts).value for f in fs]

    copts = dict(_LIGHT_CERT)
    copts.update(cert_opts or {})
    phi_cb = folner_phi_cb_certificate(folner, rep, rng=gen, **copts)
    psi_cb = psi_contractivity_certificate(folner, rep, rng=gen, **copts)

    fact_b = identity_factorization(folner.size * algebra.base_dim, pe, rng=gen)
    test_set = {f"f{i}": rep.integrated(f) for i, f in enumerate(fs)}
    composed = compose_factorizations(
        folner_phi_map(folner, rep),
        folner_psi_map(folner, rep),
        fact_b,
        test_set,
        (eps, 0.0),
        p=pe,
        bridge_phi_cb=phi_cb,
        bridge_psi_cb=psi_cb,
        rng=gen,
        cert_opts=copts,
    )

    elements = []
    for i, f in enumerate(fs):
        fid = f"f{i}"
        elements.append(
            {
                "id": fid,
                "reduced_norm": float(norms[i]),
                "roundtrip_error": float(composed.roundtrip_errors[fid]),
                "bound": float(_roundtrip_bound(f, folner, rep, **eopts)),
            }
        )
    certificates = [
        {"map": "folner_phi", "levels": _levels_list(phi_cb)},
        {"map": "folner_psi", "levels": _levels_list(psi_cb)},
        {"map": "composed_phi", "levels": _levels_list(composed.phi_cb)},
        {"map": "composed_psi", "levels": _levels_list(composed.psi_cb)},
    ]
    certs_ok = all(v <= 1.0 + _CB_TOL for c in certificates for _, v in c["levels"])
    passed = certs_ok and all(e["roundtrip_error"] < eps for e in elements)
    report = {
        "group": group_to_descriptor(carrier),
        "p": float(pe.p),
        "folner": {
            "members": [int(t) for t in folner.members],
            "ratios": {str(s): float(folner_ratio(folner, s)) for s in supports},
        },
        "elements": elements,
        "certificates": certificates,
        "epsilon": float(eps),
        "passed": bool(passed),
    }
    if isinstance(carrier, ZWindow):
        report["window_radius"] = int(rep.window_radius)
    return composed, report


def rotation_demo(n: int, k: int, p, eps: float, *, rng=None, cert_opts: dict | None = None) -> dict:
    """Finite model of the rotation algebra at angle k/n.

    The base algebra is the diagonal functions on an n-point circle, the
    group Z/n rotates coordinates by k steps per generator, and the two
    canonical crossed elements are u = I delta_1 and z = diag(n-th roots of
    unity) delta_0.  The report checks the commutation phase
    u z = e^{2 pi i k/n} z u on the integrated forms, runs the full
    nuclearity witness on {u, z}, and runs the circle partition
    factorization of the base algebra alongside.
    """
    if n < 2:
        raise ValueError("need a grid of at least two points")
    if gcd(k % n, n) != 1:
        raise ValueError(f"rotation step {k} must be coprime to the grid size {n}")
    pe = as_exponent(p)
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    group = cyclic_group(n)
    action = cyclic_coordinate_rotation(n, k)
    algebra = ConcreteAlgebra(n)
    rep = CovariantRep(algebra, action, pe)

    u = CcElement.delta(group, 1, base_dim=n)
    z = CcElement.delta(group, 0, np.diag(np.exp(2j * np.pi * np.arange(n) / n)))
    u_mat = rep.integrated(u)
    z_mat = rep.integrated(z)
    phase = np.exp(2j * np.pi * k / n)
    commutation_dev = float(np.abs(u_mat @ z_mat - phase * (z_mat @ u_mat)).max())

    _, witness_report = crossed_nuclearity_witness(
        [u, z], eps, algebra, group, action, pe, rng=gen, cert_opts=cert_opts
    )

    n_arcs = n // 2 if (n % 2 == 0 and n >= 6) else n
    part = circle_partition(n, n_arcs)
    rt = partition_roundtrip(part, circle_function("z", n))
    part_phi = cx_phi_cb_certificate(part, pe, n_max=2, trials=4, rng=gen)
    part_psi = cx_psi_cb_certificate(part, pe, n_max=2, trials=4, rng=gen)
    partition_ok = (
        rt["error"] <= rt["bound"] + 1e-12
        and part_phi.best <= 1.0 + _CB_TOL
        and all(1.0 - _CB_TOL <= v <= 1.0 + _CB_TOL for _, v in part_psi.levels)
    )

    passed = bool(witness_report["passed"] and commutation_dev <= 1e-12 and partition_ok)
    return {
        "model": {"n": int(n), "k": int(k), "theta_model": float(k % n) / float(n)},
        "p": float(pe.p),
        "commutation_dev": commutation_dev,
        "witness": witness_report,
        "partition": {
            "n_points": int(n),
            "n_arcs": int(n_arcs),
            "roundtrip_error": float(rt["error"]),
            "oscillation_bound": float(rt["bound"]),
            "point_eval_levels": _levels_list(part_phi),
            "blend_levels": _levels_list(part_psi),
        },
        "passed": passed,
    }
