use super::*;
use crate::kernel::is_cut_free;
use crate::syntax::{parse_prop, parse_sequent_file, Context};
use crate::theory::{build_hol, build_holpm};

const CUT_GOAL: &str = include_str!("../../golden/cutgoal.sexp");

fn goal(rs: &RewriteSystem, text: &str) -> Sequent {
    parse_sequent_file(text, &rs.sig).unwrap().0
}

fn run(rs: &RewriteSystem, text: &str, depth: usize) -> SearchResult {
    let r = prove_cutfree(&goal(rs, text), rs, depth, ReachabilityBudget::default());
    assert_eq!(r.rejected, None);
    r
}

#[test]
fn axiom_at_depth_one() {
    let pm = build_holpm();
    let r = run(&pm, "(vars (t o)) (seq ((eps t)) ((eps t)))", 1);
    assert_eq!(r.outcome, SearchOutcome::Proved(Box::new(ProofTree::axiom())));
}

#[test]
fn counterexample_has_no_cut_free_proof() {
    let pm = build_holpm();
    let r = run(&pm, CUT_GOAL, 8);
    assert_eq!(r.outcome, SearchOutcome::Exhausted);
    assert_eq!(r.max_depth, 8);
}

#[test]
fn counterexample_with_cut() {
    let pm = build_holpm();
    let g = goal(&pm, CUT_GOAL);
    let budget = ReachabilityBudget::default();
    let cands = cut_candidates(&g, &pm, budget);
    let ctx = Context::from([("x".to_string(), Sort::arrow(Sort::iota(), Sort::prop()))]);
    let dall = parse_prop("(eps (dall i x))", &pm.sig, &ctx).unwrap();
    assert!(cands.contains(&dall), "{cands:?}");
    let cfg = SearchConfig {
        cut_candidates: cands,
        ..Default::default()
    };
    let r = prove(&g, &pm, &cfg);
    let p = r.outcome.proof().expect("proved with cut");
    assert!(!is_cut_free(p));
}

#[test]
fn excluded_middle_in_both() {
    let text = "(vars (t o)) (seq () ((eps (dor t (dnot t)))))";
    for rs in [build_hol(), build_holpm()] {
        let r = run(&rs, text, 8);
        let p = r.outcome.proof().unwrap_or_else(|| panic!("{}: {:?}", rs.name, r.outcome));
        assert!(is_cut_free(p));
    }
}

#[test]
fn distinct_atoms_exhausted() {
    let hol = build_hol();
    let r = run(&hol, "(vars (t o) (u o)) (seq ((eps t)) ((eps u)))", 8);
    assert_eq!(r.outcome, SearchOutcome::Exhausted);
}

#[test]
fn universal_goal_in_both() {
    let text = "(seq () ((eps (dall o (kc o o (dnot (null (succ zero))))))))";
    for rs in [build_hol(), build_holpm()] {
        assert!(matches!(run(&rs, text, 8).outcome, SearchOutcome::Proved(_)), "{}", rs.name);
    }
}

#[test]
fn depth_monotone() {
    let hol = build_hol();
    let text = "(vars (f (i -> o))) (seq ((eps (dall i f))) ((eps (f zero))))";
    let first = (1..=8).find(|d| matches!(run(&hol, text, *d).outcome, SearchOutcome::Proved(_))).unwrap();
    for d in first..=8 {
        assert!(matches!(run(&hol, text, d).outcome, SearchOutcome::Proved(_)));
    }
}
