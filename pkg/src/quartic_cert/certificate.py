"""Per-parameter certificates for the non-rationality of X_t.

A certificate is an ordered list of named checks.  Each check either
passes with a witness (the exact numbers that were computed), fails, or is
skipped because something it depends on failed.  Theorems that are cited
rather than machine-checked are listed explicitly in every certificate.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from math import factorial

from . import linalg
from .exactfield import Rat, rat, render, render_rat
from .groebner import quotient_graded_dim, s_pairs_reduce_to_zero
from .pencil import (
    EXCLUDED_T,
    SPECIAL_SEEDS,
    STABLE_FROM,
    STABLE_SPAN,
    cubic_difference_values,
    cubic_space,
    decompose_C,
    defect_direct,
    defect_jacobian,
    evaluation_matrix,
    fermat_jacobian_basis,
    jacobian_basis,
    node_orbit,
    odp_hessian_determinant,
    pencil_member,
    seed_parameter,
    singular_scheme_degree,
    space_character,
    special_orbits,
    verify_node_singular,
)
from .symmetric import (
    GROUP_ORDER,
    NODE_SEED,
    all_perms,
    char_inner_product,
    char_inner_product_brute,
    class_function,
    faithfulness_check,
    no_transitive_action_on,
    normal_subgroups,
    orbit,
    standard_character,
    transitive_action_possible,
)

log = logging.getLogger(__name__)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
NOT_RATIONAL = "NOT RATIONAL (certified)"
OUTSIDE = "OUTSIDE HYPOTHESES"
FAILED = "FAILED"

CORE_CHECKS = (
    "hypothesis_gate",
    "node_orbit",
    "nodes_are_odp",
    "exactly_30_nodes",
    "cubic_space_dim",
    "defect",
    "decomposition",
    "irreducible_faithful",
    "hurwitz_exclusion",
    "product_exclusion",
)

ASSUMED = [
    "Clemens-Griffiths criterion: a smooth projective threefold whose intermediate Jacobian "
    "is not a product of Jacobians of curves is not rational",
    "Torelli theorem: Aut(JC, theta) is Aut(C) or Aut(C) x Z/2",
    "Hurwitz bound: #Aut(C) <= 84(g-1) for a curve of genus g >= 2",
    "uniqueness of the decomposition of a principally polarized abelian variety into "
    "irreducible factors",
    "Dimca-Saito formula: defect = dim R_7 - dim R^sm_7 for nodal quartic threefolds",
    "cohomological identification of the cubics through the nodes with V + H^2(X, Omega^1_X)",
]

TEN_SEVENTHS_NOTE = (
    "excluded value is 10/7, not 10/17: X_t contains (-5,1,1,1,1,1) iff "
    "t*630 = 30^2, i.e. t = 900/630 = 10/7"
)


class DependencyError(RuntimeError):
    """A check was requested before the checks it relies on had passed."""


@dataclass
class Check:
    id: str
    statement: str
    paper_ref: str
    status: str
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == PASS and not self.witness:
            raise ValueError(f"check {self.id} passed without a witness")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "statement": self.statement,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "witness": self.witness,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Check":
        return cls(d["id"], d["statement"], d["paper_ref"], d["status"], d["witness"])


@dataclass
class Certificate:
    t: Rat
    checks: list
    verdict: str
    assumed: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __post_init__(self):
        ids = [c.id for c in self.checks]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate check ids")

    def check(self, cid: str) -> Check:
        return next(c for c in self.checks if c.id == cid)

    def to_dict(self) -> dict:
        return {
            "t": render_rat(self.t),
            "verdict": self.verdict,
            "checks": [c.to_dict() for c in self.checks],
            "assumed": list(self.assumed),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(
            rat(d["t"]),
            [Check.from_dict(c) for c in d["checks"]],
            d["verdict"],
            list(d.get("assumed", [])),
            list(d.get("notes", [])),
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))

    def render_text(self, full: bool = True) -> str:
        lines = [f"t = {render_rat(self.t)}", f"verdict: {self.verdict}"]
        for c in self.checks:
            lines.append(f"[{c.status}] {c.id}: {c.statement}")
            if full:
                for k, v in c.witness.items():
                    lines.append(f"    {k}: {json.dumps(v)}")
        if full:
            if self.assumed:
                lines.append("assumed (cited, not machine-checked):")
                lines.extend(f"  - {a}" for a in self.assumed)
            if self.notes:
                lines.append("notes:")
                lines.extend(f"  - {n}" for n in self.notes)
        return "\n".join(lines)


def expected_verdict(t) -> str:
    return OUTSIDE if rat(t) in EXCLUDED_T else NOT_RATIONAL


def assemble_verdict(t, checks) -> str:
    """Verdict from check statuses.  Any failure wins; then the hypothesis gate."""
    if any(c.status == FAIL for c in checks):
        return FAILED
    if rat(t) in EXCLUDED_T:
        return OUTSIDE
    passed = {c.id for c in checks if c.status == PASS}
    if all(cid in passed for cid in CORE_CHECKS):
        return NOT_RATIONAL
    return FAILED


# --- exclusion arithmetic ---------------------------------------------------


def hurwitz_exclusion(genus: int, group_order: int, torelli_factor: int) -> Check:
    """group_order / torelli_factor automorphisms against the Hurwitz bound."""
    if genus < 2:
        raise ValueError("the Hurwitz bound needs genus >= 2")
    lower = Rat(group_order) / torelli_factor
    bound = 84 * (genus - 1)
    ok = lower > bound
    return Check(
        "hurwitz_exclusion",
        f"a genus-{genus} curve would need at least {render_rat(lower)} automorphisms, "
        f"more than the Hurwitz bound {bound}",
        "Hurwitz bound against the Torelli embedding of S6",
        PASS if ok else FAIL,
        {
            "genus": genus,
            "group_order": group_order,
            "torelli_factor": torelli_factor,
            "aut_lower_bound": render_rat(lower),
            "hurwitz_bound": bound,
            "exceeds": ok,
        },
    )


def product_exclusion(dim_jx: int, irreducible: bool = True) -> Check:
    """Refute JX = J_1 x ... x J_p for every 2 <= p <= dim_jx.

    S6 permutes the factors transitively (a non-transitive action would
    split the irreducible tangent representation), so the factors share one
    dimension d with p*d = dim_jx, and S6 needs a transitive action on p
    points.
    """
    if not irreducible:
        raise DependencyError("product exclusion needs the tangent representation to be irreducible")
    subgroups = normal_subgroups()
    orders = [ns.order for ns in subgroups]
    if orders[0] != 1 or orders[-1] != GROUP_ORDER:
        raise DependencyError(f"normal subgroup enumeration is inconsistent: {orders}")
    per_p = []
    surviving = []
    for p in range(2, dim_jx + 1):
        if dim_jx % p:
            per_p.append({"p": p, "refuted": True, "reason": f"no positive d with {p}*d = {dim_jx}"})
            continue
        d = dim_jx // p
        if 3 <= p <= 5:
            refuted, trace = no_transitive_action_on(p)
        else:
            possible, trace = transitive_action_possible(p)
            refuted = not possible
        entry = {
            "p": p,
            "refuted": refuted,
            "reason": (
                f"d = {d}; no transitive S6-action on {p} points"
                if refuted
                else f"d = {d}; a transitive S6-action on {p} points is not excluded"
            ),
            "trace": trace,
        }
        per_p.append(entry)
        if not refuted:
            surviving.append(p)
    ok = not surviving
    return Check(
        "product_exclusion",
        f"JX of dimension {dim_jx} is not a product of p >= 2 Jacobians",
        "S6 permutes the factors of a product decomposition transitively",
        PASS if ok else FAIL,
        {
            "dim_JX": dim_jx,
            "normal_subgroup_orders": orders,
            "per_p": per_p,
            "surviving_p": surviving,
        },
    )


# --- orchestration ----------------------------------------------------------


class _Runner:
    """Runs checks in order, turning exceptions into failed checks."""

    def __init__(self):
        self.checks: list[Check] = []
        self.results: dict[str, dict] = {}

    def run(self, cid, statement, paper_ref, fn, needs=()):
        missing = [n for n in needs if n not in self.results]
        if missing:
            self.checks.append(
                Check(cid, statement, paper_ref, SKIPPED, {"missing_dependencies": missing})
            )
            return
        log.debug("running check %s", cid)
        try:
            ok, witness = fn()
        except Exception as exc:  # captured as a failed check by design
            log.debug("check %s raised %r", cid, exc)
            ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
        self.checks.append(Check(cid, statement, paper_ref, PASS if ok else FAIL, witness))
        if ok:
            self.results[cid] = witness

    def add(self, check: Check, witness_key: str | None = None):
        self.checks.append(check)
        if check.status == PASS:
            self.results[witness_key or check.id] = check.witness


def _gate(t: Rat):
    excluded = t in EXCLUDED_T
    if t == 0:
        reason = "t = 0: X_0 is a double quadric"
    elif t == 4:
        reason = "t = 4: Igusa quartic, known to be rational"
    elif t == 2:
        reason = "t = 2: Burkhardt quartic, extra singular orbit, known to be rational"
    elif excluded:
        reason = f"t = {render_rat(t)}: extra singular orbit"
    else:
        reason = "generic member of the pencil"
    return True, {
        "t": render_rat(t),
        "excluded_set": [render_rat(x) for x in EXCLUDED_T],
        "inside_hypotheses": not excluded,
        "classification": reason,
    }


def _node_orbit_check():
    nodes = node_orbit()
    raw = orbit(NODE_SEED, projective=False)
    node_set = set(nodes)
    stable = all(p.act(g) in node_set for p in nodes for g in all_perms())
    on_hyperplane = all(p.coordinate_sum() == 0 for p in nodes)
    ok = len(nodes) == 30 and len(raw) == 90 and stable and on_hyperplane and GROUP_ORDER % len(nodes) == 0
    return ok, {
        "seed": "(1, 1, w, w, -1 - w, -1 - w)",
        "projective_orbit_size": len(nodes),
        "raw_orbit_size": len(raw),
        "orbit_size_divides_720": GROUP_ORDER % len(nodes) == 0,
        "s6_stable": stable,
        "on_hyperplane": on_hyperplane,
    }


def _nodes_odp_check(member):
    nodes = node_orbit()
    singular = [verify_node_singular(member, p) for p in nodes]
    dets = [odp_hessian_determinant(member, p) for p in nodes] if all(singular) else []
    ok = all(singular) and len(dets) == 30 and all(d != 0 for d in dets)
    return ok, {
        "nodes_checked": len(nodes),
        "singular": sum(singular),
        "hessian_determinants": sorted({render(d) for d in dets}),
        "all_nondegenerate": ok,
    }


def _exactly_30_check(member, odp_witness):
    degree = singular_scheme_degree(member)
    gb = jacobian_basis(member.t)
    values = [quotient_graded_dim(gb, d) for d in range(STABLE_FROM, STABLE_FROM + STABLE_SPAN + 1)]
    ok = degree == 30 and odp_witness["all_nondegenerate"]
    return ok, {
        "window": [STABLE_FROM, STABLE_FROM + STABLE_SPAN],
        "hilbert_values": values,
        "singular_scheme_degree": degree,
        "known_odps": odp_witness["nodes_checked"],
        "groebner_basis_size": len(gb),
        "s_pairs_reduce_to_zero": s_pairs_reduce_to_zero(gb),
    }


def _cubic_space_check():
    nodes = node_orbit()
    m = evaluation_matrix(nodes)
    r = linalg.rank(m)
    space = cubic_space(nodes)
    ok = space.dim == 10 and r + space.dim == 35
    return ok, {"evaluation_matrix": [len(m), len(m[0])], "rank": r, "dim_C": space.dim}


def _defect_check(member):
    nodes = node_orbit()
    r7 = quotient_graded_dim(jacobian_basis(member.t), 7)
    r7_alt = quotient_graded_dim(jacobian_basis(member.t, 0), 7)
    rsm7 = quotient_graded_dim(fermat_jacobian_basis(), 7)
    rsm3 = quotient_graded_dim(fermat_jacobian_basis(), 3)
    d_jac = defect_jacobian(member)
    d_dir = defect_direct(member, nodes)
    ok = r7 == 35 and r7_alt == r7 and rsm7 == 30 and d_jac == d_dir == 5
    return ok, {
        "dim_R7": r7,
        "dim_R7_chart_x0": r7_alt,
        "dim_Rsm7": rsm7,
        "dim_Rsm3": rsm3,
        "defect_jacobian": d_jac,
        "defect_direct": d_dir,
    }


def _decomposition_check():
    dec = decompose_C(cubic_space(node_orbit()))
    dim_h2 = dec.dim_sum - 5
    ok = dec.mult_V == 2 and dec.mult_self == 4 and dec.mult_trivial == 0 and dim_h2 == 5
    return ok, {
        "dim_a": dec.dim_a,
        "dim_b": dec.dim_b,
        "dim_sum": dec.dim_sum,
        "a_in_C": dec.a_in_C,
        "b_in_C": dec.b_in_C,
        "chi_C": dec.character,
        "mult_V_in_C": render_rat(dec.mult_V),
        "norm_chi_C": render_rat(dec.mult_self),
        "mult_trivial_in_C": render_rat(dec.mult_trivial),
        "C_is": "V + V",
        "H2_is": "V",
        "dim_H2": dim_h2,
    }


def _irreducible_check():
    chi_v = class_function(standard_character)
    norm = char_inner_product(chi_v, chi_v)
    brute = char_inner_product_brute(standard_character, standard_character)
    faithful = faithfulness_check(chi_v)
    ok = norm == 1 and brute == 1 and faithful
    return ok, {
        "chi_V": chi_v,
        "norm_chi_V": render_rat(norm),
        "norm_chi_V_bruteforce": render_rat(brute),
        "faithful": faithful,
    }


def _generic_certificate(t: Rat, runner: _Runner) -> None:
    member = pencil_member(t)
    runner.run(
        "node_orbit",
        "the S6-orbit of (1,1,w,w,w^2,w^2) has 30 projective points",
        "node set of X_t",
        _node_orbit_check,
    )
    runner.run(
        "nodes_are_odp",
        "every node is a singular point of X_t with nondegenerate Hessian",
        "node set of X_t",
        lambda: _nodes_odp_check(member),
        needs=("node_orbit",),
    )
    runner.run(
        "exactly_30_nodes",
        "the Jacobian scheme has degree 30, so the 30 nodes are the whole singular locus",
        "X_t has exactly 30 nodes",
        lambda: _exactly_30_check(member, runner.results["nodes_are_odp"]),
        needs=("nodes_are_odp",),
    )
    runner.run(
        "cubic_space_dim",
        "cubic forms on P(V) vanishing at the nodes form a space C of dimension 10",
        "dimension of the space of cubics through the nodes",
        _cubic_space_check,
        needs=("node_orbit",),
    )
    runner.run(
        "defect",
        "defect 5 by both routes: dim R_7 - dim R^sm_7 = 35 - 30 and dim C - (35 - 30)",
        "defect of X_t via the Dimca-Saito formula",
        lambda: _defect_check(member),
        needs=("cubic_space_dim",),
    )
    runner.run(
        "decomposition",
        "C = a(V) + b(V) with a(e_i) = x_i^3, b(e_i) = x_i*sum x_j^2; C is V + V, so H^2 is V",
        "H^2(X, Omega^1_X) is isomorphic to V",
        _decomposition_check,
        needs=("cubic_space_dim",),
    )
    runner.run(
        "irreducible_faithful",
        "V is an irreducible, faithful S6-module",
        "S6 embeds in the automorphisms of JX",
        _irreducible_check,
    )
    dec = runner.results.get("decomposition")
    irr = runner.results.get("irreducible_faithful")
    if dec is None or irr is None:
        for cid in ("hurwitz_exclusion", "product_exclusion"):
            runner.add(Check(cid, "exclusion skipped", "", SKIPPED, {"missing_dependencies": ["decomposition", "irreducible_faithful"]}))
        return
    dim_jx = dec["dim_H2"]
    runner.add(hurwitz_exclusion(dim_jx, factorial(6), 2))
    try:
        runner.add(product_exclusion(dim_jx, irreducible=irr["norm_chi_V"] == "1"))
    except DependencyError as exc:
        runner.add(Check("product_exclusion", "product exclusion", "", FAIL, {"error": str(exc)}))


def _special_certificate(t: Rat, runner: _Runner) -> list[str]:
    member = pencil_member(t)
    seed = SPECIAL_SEEDS[t]
    runner.run(
        "node_orbit",
        "the S6-orbit of (1,1,w,w,w^2,w^2) has 30 projective points",
        "node set of X_t",
        _node_orbit_check,
    )

    def extra_orbit():
        s2 = sum(x * x for x in seed)
        s4 = sum(x**4 for x in seed)
        pts = special_orbits(t)
        sing = all(verify_node_singular(member, p) for p in pts)
        dets = sorted({render(odp_hessian_determinant(member, p)) for p in pts})
        ok = seed_parameter(seed) == t and sing
        return ok, {
            "seed": list(seed),
            "sum_x2": s2,
            "sum_x4": s4,
            "parameter_from_seed": render_rat(seed_parameter(seed)),
            "orbit_size": len(pts),
            "all_singular": sing,
            "hessian_determinants": dets,
        }

    runner.run(
        "extra_orbit",
        f"the S6-orbit of {seed} consists of singular points of X_t",
        "extra singular orbit at special parameters",
        extra_orbit,
    )

    def scheme_degree():
        degree = singular_scheme_degree(member)
        n_extra = runner.results["extra_orbit"]["orbit_size"]
        return degree == 30 + n_extra, {
            "singular_scheme_degree": degree,
            "nodes_plus_extra": 30 + n_extra,
            "exactly_30_certified": False,
        }

    runner.run(
        "singular_degree",
        "the singular scheme is larger than the 30 nodes",
        "singular locus is the union of both orbits",
        scheme_degree,
        needs=("extra_orbit",),
    )

    def nonvanishing():
        pts = special_orbits(t)
        vals = cubic_difference_values(pts)
        hits = [p for p, v in zip(pts, vals) if v != 0]
        return bool(hits), {
            "points_where_nonzero": len(hits),
            "orbit_size": len(pts),
            "example_point": hits[0].to_str() if hits else None,
            "value": render(vals[list(pts).index(hits[0])]) if hits else None,
        }

    runner.run(
        "cubic_nonvanishing",
        "x1^3 - x0^3 (an element of a(V)) does not vanish on the extra orbit",
        "cubics through both orbits form a proper subspace of C",
        nonvanishing,
        needs=("extra_orbit",),
    )

    def remark_space():
        space = cubic_space(list(node_orbit()) + list(special_orbits(t)))
        chi = space_character(space)
        chi_v = class_function(standard_character)
        mult = char_inner_product(chi, chi_v)
        norm = char_inner_product(chi, chi)
        ok = space.dim == 5 and mult == 1 and norm == 1
        return ok, {
            "dim": space.dim,
            "chi": chi,
            "mult_V": render_rat(mult),
            "norm_chi": render_rat(norm),
            "H2_is": "0",
        }

    runner.run(
        "cubics_through_both_orbits",
        "cubics through both orbits form a copy of V, so H^2(X, Omega^1_X) = 0 and JX = 0",
        "cubics through both orbits are isomorphic to V",
        remark_space,
        needs=("node_orbit", "extra_orbit"),
    )
    if t == 2:
        return ["JX = 0, method inconclusive; rationality known classically (Burkhardt quartic)"]
    return ["JX = 0, method inconclusive; rationality of this member is not decided here"]


def run_certificate(t) -> Certificate:
    """Run every check for one parameter value and assemble the verdict."""
    t = rat(t)
    runner = _Runner()
    runner.run(
        "hypothesis_gate",
        "classify t against the excluded set {0, 2, 4, 6, 10/7}",
        "theorem hypotheses",
        lambda: _gate(t),
    )
    notes = [TEN_SEVENTHS_NOTE]
    if t in SPECIAL_SEEDS:
        notes += _special_certificate(t, runner)
    elif t in EXCLUDED_T:
        notes.append("outside the theorem hypotheses; no further checks run")
    else:
        _generic_certificate(t, runner)
    return Certificate(t, runner.checks, assemble_verdict(t, runner.checks), list(ASSUMED), notes)
