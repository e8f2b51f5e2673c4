use super::*;
use crate::kernel::{parse_proof, Verdict};
use crate::syntax::{parse_sequent_file, parse_term, Context};
use crate::theory::{build_hol, build_holpm};

fn budget() -> ReachabilityBudget {
    ReachabilityBudget::default()
}

fn goal(rs: &RewriteSystem, text: &str) -> (Sequent, Context) {
    parse_sequent_file(text, &rs.sig).unwrap()
}

fn proof(rs: &RewriteSystem, ctx: &Context, text: &str) -> ProofTree {
    parse_proof(text, &rs.sig, ctx).unwrap()
}

fn assert_valid(p: &ProofTree, g: &Sequent, rs: &RewriteSystem) {
    let r = check(p, g, rs, budget());
    assert!(r.ok(), "{}", r.failure.unwrap());
}

fn translate_ok(goal_text: &str, proof_text: &str) -> (ProofTree, TranslationTrace) {
    let hol = build_hol();
    let pm = build_holpm();
    let (g, ctx) = goal(&hol, goal_text);
    let p = proof(&hol, &ctx, proof_text);
    assert_valid(&p, &g, &hol);
    let (out, trace) = hol_to_holpm(&p, &g, &hol, &pm, budget()).unwrap();
    assert_valid(&out, &g, &pm);
    assert!(out.is_cut_free());
    (out, trace)
}

#[test]
fn negated_null_succ_is_direct() {
    let (_, trace) = translate_ok(
        "(seq () ((eps (dnot (null (succ zero))))))",
        "(neg-right (R 0) (reducts (eps (null (succ zero)))) (bot-left (L 0)))",
    );
    assert!(trace.cases.iter().all(|c| *c == CASE_DIRECT));
    assert_eq!(trace.output_size, trace.input_size);
}

#[test]
fn excluded_middle_uses_or_gadget() {
    let (_, trace) = translate_ok(
        "(vars (t o)) (seq () ((eps (dor t (dnot t)))))",
        "(or-right (R 0) (reducts (eps t) (eps (dnot t)))
           (neg-right (R 1) (reducts (eps t)) (axiom)))",
    );
    assert_eq!(trace.counts()[CASE_OR_GADGET], 1);
    assert_eq!(trace.output_size, trace.input_size + 4);
}

#[test]
fn universal_uses_witness_gadget() {
    let (out, trace) = translate_ok(
        "(seq () ((eps (dall o (kc o o (dnot (null (succ zero))))))))",
        "(all-right (R 0) (var y o) (reducts (eps (dnot (null (succ zero)))))
           (neg-right (R 0) (reducts (eps (null (succ zero)))) (bot-left (L 0))))",
    );
    assert_eq!(trace.counts()[CASE_ALL_GADGET], 1);
    assert!(out.mentions_symbol(WITNESS_SYMBOL));
}

#[test]
fn null_zero_uses_top_gadget() {
    let (_, trace) = translate_ok("(seq () ((eps (null zero))))", "(top-right (R 0))");
    assert_eq!(trace.cases, vec![CASE_TOP_GADGET]);
    assert_eq!(trace.output_size, 2);
}

#[test]
fn witness_in_goal_rejected() {
    let pm = build_holpm();
    let hol = build_hol();
    let (g, _) = goal(&pm, include_str!("../../golden/cutgoal.sexp"));
    let r = hol_to_holpm(&ProofTree::axiom(), &g, &hol, &pm, budget());
    assert_eq!(r.unwrap_err(), TranslateError::WitnessInGoal);
}

#[test]
fn pullback_identity() {
    let hol = build_hol();
    let (g, ctx) = goal(&hol, "(vars (t o)) (seq ((eps t)) ((eps t)))");
    let p = proof(&hol, &ctx, "(axiom)");
    assert_eq!(pullback(&p, &g, &g, &hol, budget()).unwrap(), p);
}

#[test]
fn pullback_through_disjunction_rule() {
    let hol = build_hol();
    let text = "(vars (t o) (u o)) (seq ((eps t)) ((or (eps t) (eps u))))";
    let (to, ctx) = goal(&hol, text);
    let (from, _) = goal(&hol, "(vars (t o) (u o)) (seq ((eps t)) ((eps (dor t u))))");
    let p = proof(&hol, &ctx, "(or-right (R 0) (weak-right (R 1) (axiom)))");
    assert_valid(&p, &to, &hol);
    let q = pullback(&p, &from, &to, &hol, budget()).unwrap();
    assert_valid(&q, &from, &hol);
    assert_eq!(q.size(), p.size());
}

#[test]
fn pullback_equation_step() {
    let hol = build_hol();
    let (to, ctx) = goal(&hol, "(vars (t o) (u i)) (seq ((eps t)) ((eps t)))");
    let (from, _) = goal(&hol, "(vars (t o) (u i)) (seq ((eps (kc t u))) ((eps t)))");
    let p = proof(&hol, &ctx, "(axiom)");
    let q = pullback(&p, &from, &to, &hol, budget()).unwrap();
    assert_valid(&q, &from, &hol);
}

#[test]
fn pullback_renames_clashing_eigenvariable() {
    let hol = build_hol();
    let vars = "(vars (f (i -> o)) (y i))";
    let (to, ctx) = goal(&hol, &format!("{vars} (seq ((eps (dall i f))) ((all z i (eps (f z)))))"));
    let (from, _) = goal(&hol, &format!("{vars} (seq ((eps (kc o i (dall i f) y))) ((all z i (eps (f z)))))"));
    let p = proof(
        &hol,
        &ctx,
        "(all-right (R 0) (var y i) (all-left (L 0) (var z i) (term y) (reducts (eps (f z))) (axiom)))",
    );
    assert_valid(&p, &to, &hol);
    assert_eq!(check(&p, &from, &hol, budget()).verdict, Verdict::Invalid);
    let q = pullback(&p, &from, &to, &hol, budget()).unwrap();
    assert_valid(&q, &from, &hol);
    assert_eq!(q.size(), p.size());
    assert_ne!(q.var.as_ref().unwrap().name, "y");
}

#[test]
fn pullback_rejects_non_reduct() {
    let hol = build_hol();
    let (to, ctx) = goal(&hol, "(vars (t o) (u o)) (seq ((eps t)) ((eps t)))");
    let (from, _) = goal(&hol, "(vars (t o) (u o)) (seq ((eps u)) ((eps t)))");
    let p = proof(&hol, &ctx, "(axiom)");
    assert!(matches!(
        pullback(&p, &from, &to, &hol, budget()),
        Err(TranslateError::NotReachable { .. })
    ));
}

#[test]
fn substitution_identity_and_capture() {
    let hol = build_hol();
    let vars = "(vars (f (i -> i -> o)) (x i))";
    let (g, ctx) = goal(&hol, &format!("{vars} (seq ((all y i (eps (f x y)))) ((all y i (eps (f x y)))))"));
    let p = proof(
        &hol,
        &ctx,
        "(all-right (R 0) (var y i) (all-left (L 0) (var y i) (term y) (axiom)))",
    );
    assert_valid(&p, &g, &hol);
    let x = Var::new("x", Sort::iota());
    let same = substitute_in_proof(&p, &g, &x, &Term::Var(x.clone()), &hol).unwrap();
    assert_valid(&same, &g, &hol);
    // substituting a term mentioning the eigenvariable forces a rename
    let t = parse_term("(pred y)", &hol.sig, &Context::from([("y".into(), Sort::iota())])).unwrap();
    let q = substitute_in_proof(&p, &g, &x, &t, &hol).unwrap();
    let g2 = substitute_sequent(&g, &x, &t);
    assert_valid(&q, &g2, &hol);
    assert_eq!(q.size(), p.size());
}

#[test]
fn reindex_moves_formulas() {
    let hol = build_hol();
    let (g, ctx) = goal(&hol, "(vars (t o) (u o)) (seq ((eps t)) ((eps u) (eps t)))");
    let p = proof(&hol, &ctx, "(weak-right (R 0) (axiom))");
    assert_valid(&p, &g, &hol);
    let swapped = Sequent::new(g.left.clone(), vec![g.right[1].clone(), g.right[0].clone()]);
    let q = reindex(&p, &g, &swapped, &hol).unwrap();
    assert_eq!(q.principal, Some((Side::Right, 1)));
    assert_valid(&q, &swapped, &hol);
}
