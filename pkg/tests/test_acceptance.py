"""Acceptance criteria 1-12, one test each.

Every test records a single verdict line; the lines are printed in the
terminal summary (see conftest.py) and by ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import sys
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hopflab.brace import (  # noqa: E402
    check_braid_relation,
    check_skew_brace,
    linearize_skew_brace,
    linearize_solution,
    opposite_brace,
    qybe_solution_from_skew_brace,
)
from hopflab.cli import main  # noqa: E402
from hopflab.fixtures import (  # noqa: E402
    BROKEN,
    broken_antipode,
    broken_rrb,
    broken_skew_brace,
    broken_triv_module,
    goncharov,
    kG,
    lambda_projection,
    opp_brace_projection,
    product_projection,
    sign_projection,
    triv_brace,
    trivial_self_projection,
    unit_projection,
)
from hopflab.groups import BUILTIN_GROUPS, builtin  # noqa: E402
from hopflab.hopf import check_hopf  # noqa: E402
from hopflab.linalg import QQ, FieldSpec, identity, rref  # noqa: E402
from hopflab.modules import (  # noqa: E402
    check_hbr_module,
    check_rrb_module,
    check_rrb_module_morphism,
    functor_U,
    functor_V,
    functor_W,
    lambda_backward,
    lambda_forward,
    modiso_equivalence_check,
    module_symmetry,
    reg_module,
    regular_hbr_module,
    tensor_rrb_modules,
    triv_module,
    trivial_hbr_module,
)
from hopflab.projections import (  # noqa: E402
    HbrProjectionMorphism,
    check_coinvariants,
    check_commuting_squares,
    check_hbr_projection_morphism,
    check_induced_rrb,
    check_rrb_projection_morphism,
    check_strong_projection,
    check_yd_module,
    coinvariant_package,
    induced_module_from_strong,
    induced_rrb_on_coinvariants,
    proj_functor_Q,
    proj_functor_R,
    same_hbr_projection,
    sigma_backward,
    sigma_forward,
)
from hopflab.rrb import check_rrb, functor_F, functor_G  # noqa: E402

from oracles import mu_bar_goncharov, sign_projection_coinvariants, strong_verdict  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).parent / "golden"
GF5, GF7 = FieldSpec.prime(5), FieldSpec.prime(7)
FIELDS = (QQ, GF5, GF7)

RESULTS: dict[int, str] = {}

TITLES = {
    1: "Hopf suite on every group algebra fixture",
    2: "operator suite on F(trivial brace) and the antipode operators",
    3: "G after F returns the brace",
    4: "second product of G(antipode operator on S3) is opposite",
    5: "braid relation for the opposite brace on S3, set and GF(7)",
    6: "module suite and the W, U, V functors",
    7: "monoidal unit and symmetry on modules",
    8: "coinvariants of the sign projection",
    9: "induced operator on coinvariants",
    10: "functor coherence and commuting squares",
    11: "strong projections",
    12: "negative controls",
}


def record(n: int, ok: bool, detail: str = "") -> None:
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {TITLES[n]}"
    RESULTS[n] = line + (f" ({detail})" if detail else "")
    print(RESULTS[n])
    assert ok, RESULTS[n]


# ------------------------------------------------------------------ criteria


def test_criterion_01_hopf_suite():
    bad = []
    for name, field in product(BUILTIN_GROUPS, FIELDS):
        rep = check_hopf(kG(name, field))
        consequences = all(rep.check(c).passed for c in ("a-antip1", "a-antip2", "u-antip1", "u-antip2"))
        if not (rep.passed and consequences):
            bad.append(f"{name}/{field}")
    record(1, not bad, f"{len(BUILTIN_GROUPS) * len(FIELDS)} fixtures" + (f", failing {bad}" if bad else ""))


def test_criterion_02_operator_suite():
    bad = []
    for name, field in product(BUILTIN_GROUPS, FIELDS):
        for label, r in (("F", functor_F(triv_brace(name, field))), ("gon", goncharov(name, field))):
            rep = check_rrb(r)
            if not (rep.passed and rep.check("etaT").passed):
                bad.append(f"{label}:{name}/{field}")
    record(2, not bad, f"{2 * len(BUILTIN_GROUPS) * len(FIELDS)} operators" + (f", failing {bad}" if bad else ""))


def test_criterion_03_round_trip():
    ok = True
    for field in (QQ, GF7):
        for hb in (triv_brace("S3", field), linearize_skew_brace(opposite_brace(builtin("S3")), field)):
            ok = ok and functor_G(functor_F(hb)).same_structure(hb)
    record(3, ok)


def test_criterion_04_opposite_product():
    hb = functor_G(goncharov("S3"))
    ok = all([hb.mu2.mat.entry(k, a * 6 + b) for k in range(6)]
             == [1 if k == mu_bar_goncharov(a, b) else 0 for k in range(6)]
             for a, b in product(range(6), repeat=2))
    record(4, ok, "36 basis pairs against the permutation oracle")


def test_criterion_05_qybe():
    g = builtin("S3")
    sol = qybe_solution_from_skew_brace(opposite_brace(g))
    a, b = sol(g.index("(12)"), g.index("(13)"))
    value = (g.names[a], g.names[b]) == ("(23)", "(12)")
    set_ok = check_braid_relation(sol).passed
    lin_ok = check_braid_relation(linearize_solution(sol, GF7)).passed
    record(5, value and set_ok and lin_ok, f"value={value}, set={set_ok}, linear={lin_ok}")


def test_criterion_06_modules():
    r = goncharov("S3", GF7)
    hb = functor_G(r)
    reg, triv = reg_module(r), triv_module(r)
    parts = {
        "reg": check_rrb_module(reg, r).passed,
        "triv": check_rrb_module(triv, r).passed,
        "W": all(check_rrb_module(functor_W(m, hb), functor_F(hb)).passed
                 for m in (regular_hbr_module(hb), trivial_hbr_module(hb))),
        "U": all(check_hbr_module(functor_U(m, r), hb).passed for m in (reg, triv)),
        "V": all(check_rrb_module(functor_V(m, r), r).passed
                 for m in (regular_hbr_module(hb), trivial_hbr_module(hb))),
        "UV": all(functor_U(functor_V(m, r), r).same_structure(m)
                  for m in (regular_hbr_module(hb), trivial_hbr_module(hb))),
        "iso": modiso_equivalence_check(reg, r).passed,
    }
    n = functor_U(reg, r)
    f = identity(n.M, GF7)
    parts["Lambda"] = lambda_backward(lambda_forward(f, n, reg, r), n, reg, r).mat == f.mat
    record(6, all(parts.values()), ", ".join(k for k, v in parts.items() if not v) or "all parts")


def test_criterion_07_monoidal():
    r = goncharov("S3", GF7)
    reg, triv = reg_module(r), triv_module(r)
    unit = tensor_rrb_modules(reg, triv, r).same_structure(reg)
    sq = tensor_rrb_modules(reg, reg, r)
    s = module_symmetry(reg, reg, GF7)
    sym = check_rrb_module_morphism(s, sq, sq, r).passed
    invol = (s.r.mat @ s.r.mat == identity(sq.M, GF7).mat) and (s.s.mat @ s.s.mat == identity(sq.N, GF7).mat)
    record(7, unit and sym and invol, f"unit={unit}, symmetry={sym}, involutive={invol}")


def test_criterion_08_coinvariants():
    gold = json.loads((GOLDEN / "signproj_mu_I.json").read_text())
    pkg = coinvariant_package(sign_projection(QQ))
    rep = check_coinvariants(pkg)
    pivots, oracle_mu = sign_projection_coinvariants()
    parts = {
        "rank": pkg.rank == 3,
        "golden": pkg.mu.mat.literal() == gold["mu_I"] == oracle_mu,
        "pivots": rref(pkg.q.mat)[1] == gold["pivots"] == pivots,
        "checks": all(rep.check(c).passed for c in ("id1-left", "id1-right", "iz-coal", "lxy",
                                                     "yd-compat", "pz-al-dichotomy")),
        "suite": rep.passed,
        "yd": check_yd_module(pkg.yd_module(), pkg.projection.X).passed,
    }
    record(8, all(parts.values()), ", ".join(k for k, v in parts.items() if not v) or "rank 3")


def test_criterion_09_induced_operator():
    pr = lambda_projection(GF7)
    rep = check_induced_rrb(pr)
    out = induced_rrb_on_coinvariants(pr)
    lam_i = coinvariant_package(pr.hopf_A(), "IA").lam
    same = out.T.mat == lam_i.mat
    inc = rep.check("(i_A, i_D) into the outer operator/cond1morrRB").passed
    record(9, rep.passed and same and inc, f"L0 = antipode of I: {same}")


def test_criterion_10_coherence():
    hp = opp_brace_projection(GF7)
    rq = same_hbr_projection(proj_functor_R(proj_functor_Q(hp)), hp)
    pr = lambda_projection(GF7)
    rhp = proj_functor_R(pr)
    ident = HbrProjectionMorphism(identity(rhp.inner.carrier, GF7), identity(rhp.outer.carrier, GF7))
    back = sigma_backward(ident, rhp, pr)
    fwd = sigma_forward(back, rhp, pr)
    sigma = (check_hbr_projection_morphism(ident, rhp, rhp).passed
             and check_rrb_projection_morphism(back, proj_functor_Q(rhp), pr).passed
             and fwd.z.mat == ident.z.mat and fwd.t.mat == ident.t.mat
             and sigma_backward(fwd, rhp, pr).z.mat == back.z.mat)
    squares = check_commuting_squares(pr).passed
    record(10, rq and sigma and squares, f"RQ={rq}, Sigma={sigma}, squares={squares}")


def test_criterion_11_strong():
    r = goncharov("S3", GF7)
    self_pr = trivial_self_projection(r)
    self_ok = check_strong_projection(self_pr).passed
    induces_triv = self_ok and induced_module_from_strong(self_pr).same_structure(triv_module(r))
    modules_ok = True
    for pr in (self_pr, unit_projection(r), product_projection(GF7), lambda_projection(GF7)):
        if check_strong_projection(pr).passed:
            modules_ok = modules_ok and check_rrb_module(induced_module_from_strong(pr), pr.inner).passed
    rep = check_strong_projection(lambda_projection(GF7))
    verdict = {"condstrongmod": rep.check("condstrongmod").passed,
               "strongPrRB": rep.check("strongPrRB").passed, "strong": rep.passed}
    gold = json.loads((GOLDEN / "lambda_projection_strong.json").read_text())
    matches = verdict == gold == strong_verdict()
    record(11, self_ok and induces_triv and modules_ok and matches,
           f"lambda projection strong={verdict['strong']}, matches golden={matches}")


def test_criterion_12_negative_controls(capsys):
    witnesses = {
        "antipode": check_hopf(broken_antipode(kG("C3"))).check("antipode-left").witness,
        "rrb": check_rrb(broken_rrb()).check("rRBcond").witness,
        "skewbrace": check_skew_brace(broken_skew_brace()).check("shared-identity").witness,
        "module": check_rrb_module(*broken_triv_module()).check("compatmodT").witness,
    }
    codes = {}
    for path in sorted((ROOT / "instances").glob("broken_*.json")):
        codes[path.stem] = main(["verify", str(path)])
    capsys.readouterr()
    ok = (set(witnesses) == set(BROKEN) and all(w is not None for w in witnesses.values())
          and len(codes) == len(BROKEN) and all(c == 1 for c in codes.values()))
    record(12, ok, f"{len(codes)} broken instances exit {sorted(set(codes.values()))}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
