"""Projectivity and injectivity of diagrams, with witnesses.

The pseudo-conditions quantify over families of fixed-degree arrows:
pseudo-projective at (i0, d) means every relation among degree-d
arrows into i0 already lives in the image subgroups; dually for
pseudo-injective.  Projectivity is equivalent to free cokernels plus
pseudo-projectivity, and that equivalence is also checkable directly
through a lifting solver that walks objects in degree order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import intlinalg as la
from .abgroup import (
    AbHom,
    Subgroup,
    classify_group,
    compose,
    direct_sum,
    hom_is_epi,
    identity_hom,
    trivial_group,
    zero_hom,
)
from .derived import AcyclicityResult, is_acyclic
from .diagram import (
    Diagram,
    NatTransformation,
    constant_diagram,
    coker_at,
    diagrams_equal,
    direct_sum_diagrams,
    im_at,
    ker_at,
    representable_diagram,
)
from .errors import OracleViolation


@dataclass(frozen=True)
class PseudoWitness:
    """A failing family element: ambient components labelled by object.

    For the projective side, outside lists the summands whose component
    escapes its image subgroup; the injective side reports the whole
    tuple as unliftable and leaves outside empty.
    """
    i0: str
    d: int
    components: tuple
    outside: tuple = ()


@dataclass(frozen=True)
class PseudoVerdict:
    ok: bool
    witness: PseudoWitness = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class ConditionVerdict:
    ok: bool
    reason: str = None

    def __bool__(self):
        return self.ok


def _degree_d_sources(P, i0, d):
    return sorted(i for i in P.strictly_below[i0]
                  if P.degree[i0] - P.degree[i] == d)


def _degree_d_targets(P, i0, d):
    return sorted(i for i in P.strictly_above[i0]
                  if P.degree[i] - P.degree[i0] == d)


def _split_by_offsets(vec, parts, offsets):
    out = []
    for (ident, rank), off in zip(parts, offsets):
        out.append((ident, tuple(int(v) for v in vec[off:off + rank])))
    return tuple(out)


def is_pseudo_projective_at(F: Diagram, i0: str, d: int):
    """PseudoVerdict for the full family of degree-d arrows into i0.

    The verdict for the full family implies it for every sub-family:
    a sub-family relation extends by zero components and zero lies in
    every image subgroup.
    """
    if d < 1:
        raise ValueError("d-pseudo conditions start at d = 1")
    F.poset._check_id(i0)
    sources = _degree_d_sources(F.poset, i0, d)
    if not sources:
        return PseudoVerdict(True)
    ds = direct_sum([F.groups[i] for i in sources])
    phi = la.hstack([F.hom(i, i0).matrix for i in sources])
    K = la.preimage_lattice(phi, F.groups[i0].relations)
    im_subs = {i: im_at(F, i) for i in sources}
    blocks = []
    for k, i in enumerate(sources):
        g = im_subs[i].generators
        block = la.zeros(ds.group.ambient_rank, g.shape[1])
        block[ds.offsets[k]:ds.offsets[k] + g.shape[0], :] = g
        blocks.append(block)
    target = Subgroup(ds.group, la.hstack(blocks))
    ok, bad = target.contains_subgroup(Subgroup(ds.group, K))
    if ok:
        return PseudoVerdict(True)
    parts = [(i, F.groups[i].ambient_rank) for i in sources]
    comps = _split_by_offsets(bad, parts, ds.offsets)
    outside = tuple(i for (i, comp) in comps
                    if not im_subs[i].contains_element(comp))
    return PseudoVerdict(False, PseudoWitness(i0, d, comps, outside))


def is_pseudo_projective(F: Diagram) -> PseudoVerdict:
    """Conjunction over every object and every 1 <= d <= dimension;
    d = 0 always holds (the identity is a monomorphism)."""
    for d in range(1, F.poset.dimension + 1):
        for i0 in F.poset.ids:
            v = is_pseudo_projective_at(F, i0, d)
            if not v:
                return v
    return PseudoVerdict(True)


def is_pseudo_injective_at(F: Diagram, i0: str, d: int):
    """PseudoVerdict for the full family of degree-d arrows out of i0:
    every tuple of joint-kernel elements must lift through F(i0)."""
    if d < 1:
        raise ValueError("d-pseudo conditions start at d = 1")
    F.poset._check_id(i0)
    targets = _degree_d_targets(F.poset, i0, d)
    if not targets:
        return PseudoVerdict(True)
    sums = direct_sum([F.groups[t] for t in targets])
    rank0 = F.groups[i0].ambient_rank
    psi = la.zeros(sums.group.ambient_rank, rank0)
    for k, t in enumerate(targets):
        m = F.hom(i0, t).matrix
        psi[sums.offsets[k]:sums.offsets[k] + m.shape[0], :] = m
    ker_subs = {t: ker_at(F, t) for t in targets}
    blocks = []
    for k, t in enumerate(targets):
        g = ker_subs[t].generators
        block = la.zeros(sums.group.ambient_rank, g.shape[1])
        block[sums.offsets[k]:sums.offsets[k] + g.shape[0], :] = g
        blocks.append(block)
    image = Subgroup(sums.group, psi)
    ok, bad = image.contains_subgroup(Subgroup(sums.group, la.hstack(blocks)))
    if ok:
        return PseudoVerdict(True)
    parts = [(t, F.groups[t].ambient_rank) for t in targets]
    comps = _split_by_offsets(bad, parts, sums.offsets)
    return PseudoVerdict(False, PseudoWitness(i0, d, comps))


def is_pseudo_injective(F: Diagram) -> PseudoVerdict:
    for d in range(1, F.poset.dimension + 1):
        for i0 in F.poset.ids:
            v = is_pseudo_injective_at(F, i0, d)
            if not v:
                return v
    return PseudoVerdict(True)


def is_projective(F: Diagram) -> ConditionVerdict:
    """Free cokernels at every object plus pseudo-projectivity."""
    for i0 in F.poset.ids:
        Q, _ = coker_at(F, i0)
        if not Q.is_free:
            return ConditionVerdict(
                False, f"cokernel at {i0!r} is {Q.describe()}, not free")
    v = is_pseudo_projective(F)
    if not v:
        w = v.witness
        return ConditionVerdict(
            False, f"not pseudo-projective at ({w.i0!r}, d={w.d})")
    return ConditionVerdict(True)


def is_injective(F: Diagram) -> ConditionVerdict:
    """Joint kernels injective as groups (trivial, for finitely
    generated coefficients) plus pseudo-injectivity."""
    for i0 in F.poset.ids:
        grp, _ = ker_at(F, i0).as_group
        if not classify_group(grp).is_injective_in_ab:
            return ConditionVerdict(
                False,
                f"kernel at {i0!r} is {grp.describe()}, not injective as a group")
    v = is_pseudo_injective(F)
    if not v:
        w = v.witness
        return ConditionVerdict(
            False, f"not pseudo-injective at ({w.i0!r}, d={w.d})")
    return ConditionVerdict(True)


@dataclass(frozen=True)
class TheoremOracleVerdict:
    pseudo_projective: bool
    colim_acyclic: bool
    pseudo_injective: bool
    lim_acyclic: bool
    consistent: bool = True


def oracle_theorem_b(F: Diagram) -> TheoremOracleVerdict:
    """Assert the two guaranteed implications: pseudo-projective forces
    colim-acyclic and pseudo-injective forces lim-acyclic.  A violation
    is an implementation bug, never a property of the input."""
    pp = bool(is_pseudo_projective(F))
    ca = is_acyclic(F, "colim")
    pi = bool(is_pseudo_injective(F))
    lim_a = is_acyclic(F, "lim")
    if pp and not ca:
        raise OracleViolation(
            f"pseudo-projective but colim_{ca.degree} = {ca.group.describe()}")
    if pi and not lim_a:
        raise OracleViolation(
            f"pseudo-injective but lim^{lim_a.degree} = {lim_a.group.describe()}")
    return TheoremOracleVerdict(pp, bool(ca), pi, bool(lim_a))


@dataclass
class ClassificationReport:
    cokernels: dict
    kernels: dict
    pseudo_projective_at: dict
    pseudo_injective_at: dict
    pseudo_projective: PseudoVerdict
    pseudo_injective: PseudoVerdict
    projective: ConditionVerdict
    injective: ConditionVerdict
    colim_acyclic: AcyclicityResult
    lim_acyclic: AcyclicityResult
    consistency: dict = field(default_factory=dict)


def classify_diagram(F: Diagram) -> ClassificationReport:
    """Everything at once: per-object structure, per-(object, d)
    verdicts, the four global verdicts, acyclicity, and the theorem
    implications as consistency flags."""
    cokernels = {}
    kernels = {}
    for i in F.poset.ids:
        Q, _ = coker_at(F, i)
        cokernels[i] = classify_group(Q)
        grp, _ = ker_at(F, i).as_group
        kernels[i] = classify_group(grp)
    pp_at = {}
    pi_at = {}
    for d in range(1, F.poset.dimension + 1):
        for i0 in F.poset.ids:
            pp_at[(i0, d)] = is_pseudo_projective_at(F, i0, d)
            pi_at[(i0, d)] = is_pseudo_injective_at(F, i0, d)
    pp_fail = next((v for v in pp_at.values() if not v), None)
    pi_fail = next((v for v in pi_at.values() if not v), None)
    pp = pp_fail if pp_fail is not None else PseudoVerdict(True)
    pi = pi_fail if pi_fail is not None else PseudoVerdict(True)
    proj = is_projective(F)
    inj = is_injective(F)
    ca = is_acyclic(F, "colim")
    lim_a = is_acyclic(F, "lim")
    consistency = {
        "projective_implies_free_cokernels_and_pseudo_projective": (
            not proj.ok or (pp.ok and all(g.is_free for g in cokernels.values()))),
        "pseudo_projective_implies_colim_acyclic": (not pp.ok) or bool(ca),
        "pseudo_injective_implies_lim_acyclic": (not pi.ok) or bool(lim_a),
    }
    for name, holds in consistency.items():
        if not holds:
            raise OracleViolation(f"consistency check failed: {name}")
    return ClassificationReport(
        cokernels, kernels, pp_at, pi_at, pp, pi, proj, inj, ca, lim_a,
        consistency)


def free_cover(F: Diagram):
    """(A, counit): A sums one representable per ambient generator of
    each value, and the counit evaluates that generator.  The counit is
    epi at every object because the identity summands hit the whole
    ambient basis."""
    P = F.poset
    summands = []
    labels = []
    for i in P.ids:
        for t in range(F.groups[i].ambient_rank):
            summands.append(representable_diagram(P, i))
            labels.append((i, t))
    if not summands:
        A = constant_diagram(P, trivial_group())
        counit = NatTransformation(
            A, F, {j: zero_hom(A.groups[j], F.groups[j]) for j in P.ids})
        return A, counit
    A, _, _ = direct_sum_diagrams(summands)
    comps = {}
    for j in P.ids:
        # summand (i, t) occupies one column at j exactly when i <= j,
        # in list order, matching the offsets the sum construction used
        widths = [1 if P.leq(i, j) else 0 for (i, t) in labels]
        E = la.zeros(F.groups[j].ambient_rank, sum(widths))
        at = 0
        for (i, t), w in zip(labels, widths):
            if w:
                E[:, at] = F.hom(i, j).matrix[:, t]
                at += 1
        comps[j] = AbHom(A.groups[j], F.groups[j], E, check=False)
    counit = NatTransformation(A, F, comps)
    return A, counit


def solve_lifting(pi: NatTransformation, sigma: NatTransformation):
    """A lift rho of sigma through the epi pi, or None.

    Objects are solved in increasing degree order; at each one the
    unknown matrix must commute with the already-fixed components over
    incoming covers, descend along the source relations, and project to
    sigma.  Any solution extends whenever the source satisfies the
    free-cokernel and pseudo-projectivity conditions, so a None from a
    diagram passing those checks signals a bug.
    """
    A = pi.source
    B = pi.target
    F = sigma.source
    if sigma.target is not B and not diagrams_equal(sigma.target, B):
        raise ValueError("the two transformations must share their target")
    P = F.poset
    for i in P.ids:
        if not hom_is_epi(pi.component(i)):
            raise ValueError(f"pi is not an epimorphism at {i!r}")
    order = sorted(P.ids, key=lambda i: (P.degree[i], i))
    rho = {}
    for i0 in order:
        R = _solve_component(A, F, pi, sigma, rho, i0)
        if R is None:
            return None
        rho[i0] = AbHom(F.groups[i0], A.groups[i0], R)
    out = NatTransformation(F, A, rho)
    for i in P.ids:
        if not compose(pi.component(i), out.component(i)).equal(sigma.component(i)):
            raise OracleViolation("solved lift does not project to sigma")
    return out


def _solve_component(A, F, pi, sigma, rho, i0):
    """One affine system: unknowns are the entries of R (column per
    ambient generator of F(i0)) plus relation coefficients that absorb
    the mod-relations slack of each constraint."""
    P = F.poset
    a = A.groups[i0].ambient_rank
    f = F.groups[i0].ambient_rank
    rel_a = A.groups[i0].relations
    rel_b = pi.target.groups[i0].relations
    b = pi.target.groups[i0].ambient_rank

    # constraint columns of the form R @ v = w (mod rel_a)
    pairs = []
    for p in P.covers_into[i0]:
        v_block = F.cover_maps[(p, i0)].matrix
        w_block = A.cover_maps[(p, i0)].matrix @ rho[p].matrix
        for j in range(v_block.shape[1]):
            pairs.append((v_block[:, j], w_block[:, j]))
    rels_f = F.groups[i0].relations
    for j in range(rels_f.shape[1]):
        pairs.append((rels_f[:, j], [0] * a))

    n_pairs = len(pairs)
    ra = rel_a.shape[1]
    rb = rel_b.shape[1]
    cols = a * f + ra * n_pairs + rb * f
    rows = a * n_pairs + b * f
    M = la.zeros(rows, cols)
    rhs = la.zeros(rows, 1)
    for c, (v, w) in enumerate(pairs):
        r0 = c * a
        for s in range(f):
            if v[s] == 0:
                continue
            for i in range(a):
                M[r0 + i, s * a + i] = int(v[s])
        slack = a * f + c * ra
        for i in range(a):
            for j in range(ra):
                M[r0 + i, slack + j] = -rel_a[i, j]
        for i in range(a):
            rhs[r0 + i, 0] = int(w[i])
    proj = pi.component(i0).matrix
    sig = sigma.component(i0).matrix
    base = a * n_pairs
    for s in range(f):
        r0 = base + s * b
        for i in range(b):
            for j in range(a):
                M[r0 + i, s * a + j] = proj[i, j]
        slack = a * f + ra * n_pairs + s * rb
        for i in range(b):
            for j in range(rb):
                M[r0 + i, slack + j] = -rel_b[i, j]
        for i in range(b):
            rhs[r0 + i, 0] = sig[i, s]
    z = la.solve(M, rhs)
    if z is None:
        return None
    R = la.zeros(a, f)
    for s in range(f):
        for i in range(a):
            R[i, s] = z[s * a + i, 0]
    return R


def identity_transformation(F: Diagram) -> NatTransformation:
    return NatTransformation(
        F, F, {i: identity_hom(F.groups[i]) for i in F.poset.ids})


def projective_by_lifting(F: Diagram) -> bool:
    """Independent route to projectivity: a retraction of the free
    cover exists exactly for projective diagrams."""
    A, counit = free_cover(F)
    return solve_lifting(counit, identity_transformation(F)) is not None
