use super::*;
use crate::syntax::{parse_sequent_file, Context, Sort};
use crate::theory::{build_hol, build_holpm};

const CUT_GOAL: &str = include_str!("../../golden/cutgoal.sexp");
const CUT_PROOF: &str = include_str!("../../golden/cutproof.sexp");

fn seq(rs: &RewriteSystem, text: &str) -> Sequent {
    parse_sequent_file(text, &rs.sig).unwrap().0
}

fn budget() -> ReachabilityBudget {
    ReachabilityBudget::default()
}

#[test]
fn reflexive_axiom() {
    let rs = build_hol();
    let g = seq(&rs, "(vars (t o)) (seq ((eps t)) ((eps t)))");
    let r = check(&ProofTree::axiom(), &g, &rs, budget());
    assert!(r.ok(), "{:?}", r.failure);
    assert_eq!(r.size, 1);
}

#[test]
fn axiom_modulo_equations() {
    let rs = build_hol();
    let g = seq(&rs, "(vars (t o) (u i)) (seq ((eps (kc t u))) ((eps t)))");
    assert!(check(&ProofTree::axiom(), &g, &rs, budget()).ok());
    let g = seq(&rs, "(vars (t o) (u o)) (seq ((eps u)) ((eps t)))");
    let r = check(&ProofTree::axiom(), &g, &rs, budget());
    assert_eq!(r.verdict, Verdict::Invalid);
}

#[test]
fn golden_cut_proof() {
    let rs = build_holpm();
    let g = seq(&rs, CUT_GOAL);
    let p = parse_proof_file(CUT_PROOF, &rs.sig).unwrap();
    let r = check(&p, &g, &rs, budget());
    assert!(r.ok(), "{}", r.failure.unwrap());
    assert_eq!(r.size, 9);
    assert!(!p.is_cut_free());
}

#[test]
fn cut_proof_fails_in_hol() {
    // HOL has no H-symbol, and its positive all-rule gives no double negation
    let pm = build_holpm();
    let p = parse_proof_file(CUT_PROOF, &pm.sig).unwrap();
    let g = seq(&pm, CUT_GOAL);
    let mut hol_rules = build_hol();
    hol_rules.sig = pm.sig.clone();
    let r = check(&p, &g, &hol_rules, budget());
    assert_eq!(r.verdict, Verdict::Invalid);
    assert_eq!(r.failure.unwrap().path, vec![1]);
}

#[test]
fn or_right_without_positive_disjunction() {
    let pm = build_holpm();
    let g = seq(&pm, "(vars (t o) (u o)) (seq () ((eps (dor t u))))");
    let c = Context::from([("t".to_string(), Sort::prop()), ("u".to_string(), Sort::prop())]);
    let b = crate::syntax::parse_prop("(eps t)", &pm.sig, &c).unwrap();
    let cc = crate::syntax::parse_prop("(eps u)", &pm.sig, &c).unwrap();
    let p = ProofTree::at(Rule::OrRight, Side::Right, 0, vec![ProofTree::axiom()]).with_reducts(vec![b, cc]);
    let r = check(&p, &g, &pm, budget());
    assert_eq!(r.verdict, Verdict::Invalid);
    assert!(r.failure.unwrap().reason.contains("does not reach"));
}

#[test]
fn arity_and_range_errors() {
    let rs = build_hol();
    let g = seq(&rs, "(vars (t o)) (seq ((eps t)) ((eps t)))");
    let bad = ProofTree::at(Rule::WeakLeft, Side::Left, 3, vec![ProofTree::axiom()]);
    assert!(check(&bad, &g, &rs, budget()).failure.unwrap().reason.contains("out of range"));
    let bad = ProofTree::at(Rule::WeakLeft, Side::Left, 0, vec![]);
    assert!(check(&bad, &g, &rs, budget()).failure.unwrap().reason.contains("premise"));
    let bad = ProofTree::at(Rule::WeakLeft, Side::Right, 0, vec![ProofTree::axiom()]);
    assert_eq!(check(&bad, &g, &rs, budget()).verdict, Verdict::Invalid);
}

#[test]
fn eigenvariable_condition() {
    let rs = build_hol();
    let text = "(vars (f (i -> o)) (y i)) (seq ((eps (f y))) ((all y i (eps (f y)))))";
    let g = seq(&rs, text);
    let p = ProofTree::at(Rule::AllRight, Side::Right, 0, vec![ProofTree::axiom()]);
    let r = check(&p, &g, &rs, budget());
    assert!(r.failure.unwrap().reason.contains("eigenvariable"));
}

#[test]
fn weakening_adds_one() {
    let rs = build_hol();
    let g = seq(&rs, "(vars (t o) (u o)) (seq ((eps t) (eps u)) ((eps t)))");
    let p = ProofTree::at(Rule::WeakLeft, Side::Left, 1, vec![ProofTree::axiom()]);
    let r = check(&p, &g, &rs, budget());
    assert!(r.ok());
    assert_eq!(r.size, 2);
}

#[test]
fn permuted_goal_rejected() {
    let rs = build_hol();
    let g = seq(&rs, "(vars (t o) (u o)) (seq ((eps t) (eps u)) ((eps t)))");
    let p = ProofTree::at(Rule::WeakLeft, Side::Left, 1, vec![ProofTree::axiom()]);
    let permuted = Sequent::new(vec![g.left[1].clone(), g.left[0].clone()], g.right.clone());
    assert!(!check(&p, &permuted, &rs, budget()).ok());
}

#[test]
fn undecided_on_tiny_budget() {
    let rs = build_hol();
    let g = seq(&rs, "(vars (t o)) (seq () ((eps (dnot (dnot (dnot t))))))");
    let c = Context::from([("t".to_string(), Sort::prop())]);
    let b = crate::syntax::parse_prop("(not (not (eps t)))", &rs.sig, &c).unwrap();
    let p = ProofTree::at(Rule::NegRight, Side::Right, 0, vec![ProofTree::axiom()]).with_reducts(vec![b]);
    let r = check(&p, &g, &rs, ReachabilityBudget::new(1));
    assert_eq!(r.verdict, Verdict::Undecided);
}

#[test]
fn print_parse_round_trip() {
    let rs = build_holpm();
    let p = parse_proof_file(CUT_PROOF, &rs.sig).unwrap();
    let text = print_proof(&p);
    let back = parse_proof_file(&text, &rs.sig).unwrap();
    assert_eq!(back, p);
}

#[test]
fn layout_positions() {
    let l = ["g0", "a", "g2"];
    let r = ["d0", "d1"];
    let prem = layout(Rule::ImpLeft, 1, &l, &r, &["B", "C"]);
    assert_eq!(prem[0], (vec!["g0", "g2"], vec!["B", "d0", "d1"]));
    assert_eq!(prem[1], (vec!["g0", "C", "g2"], vec!["d0", "d1"]));
    let prem = layout(Rule::ContrRight, 0, &l, &r, &["B", "C"]);
    assert_eq!(prem[0], (l.to_vec(), vec!["B", "C", "d1"]));
    let prem = layout(Rule::Cut, 0, &l, &r, &["B", "C"]);
    assert_eq!(prem[0].0, vec!["g0", "a", "g2", "B"]);
    assert_eq!(prem[1].1, vec!["C", "d0", "d1"]);
}
