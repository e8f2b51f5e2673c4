use super::*;
use crate::syntax::{parse_prop, parse_sequent_file, Context};
use crate::theory::{build_hol, build_holpm};

fn prop(rs: &RewriteSystem, text: &str) -> Prop {
    parse_prop(text, &rs.sig, &Context::new()).unwrap()
}

fn or_universe(rs: &RewriteSystem) -> BTreeSet<Sort> {
    let (g, _) = parse_sequent_file("(vars (x o) (y o)) (seq () ((eps (dor x y))))", &rs.sig).unwrap();
    default_universe(&g)
}

fn same_set(got: Vec<&Prop>, want: Vec<Prop>) -> bool {
    got.len() == want.len() && want.iter().all(|w| got.iter().any(|g| g.alpha_eq(w)))
}

fn positive_or_axioms(ax: &AxiomSet) -> Vec<&Prop> {
    ax.tagged(AxiomTag::PosRule)
        .map(|a| &a.prop)
        .filter(|p| p.mentions_symbol("dor"))
        .collect()
}

#[test]
fn minimal_or_universe() {
    let pm = build_holpm();
    let u = or_universe(&pm);
    let o = Sort::prop();
    let want: BTreeSet<Sort> = [o.clone(), Sort::arrow(o.clone(), o.clone()), Sort::arrows([o.clone(), o.clone()], o)].into();
    assert_eq!(u, want);
}

#[test]
fn holpm_disjunction_axioms() {
    let pm = build_holpm();
    let ax = compile_axioms(&pm, &or_universe(&pm)).unwrap();
    let want = vec![
        prop(&pm, "(all x o (all y o (imp (not (not (eps x))) (eps (dor x y)))))"),
        prop(&pm, "(all x o (all y o (imp (not (not (eps y))) (eps (dor x y)))))"),
    ];
    assert!(same_set(positive_or_axioms(&ax), want));
}

#[test]
fn hol_disjunction_axiom() {
    let hol = build_hol();
    let ax = compile_axioms(&hol, &or_universe(&hol)).unwrap();
    let want = vec![prop(&hol, "(all x o (all y o (imp (or (eps x) (eps y)) (eps (dor x y)))))")];
    assert!(same_set(positive_or_axioms(&ax), want));
}

#[test]
fn tag_counts_by_hand() {
    // over {o, o -> o, o -> o -> o}: only the disjunction, negation and K
    // schemas fit, and H fits at T = o
    let pm = build_holpm();
    let ax = compile_axioms(&pm, &or_universe(&pm)).unwrap();
    assert_eq!(ax.count(AxiomTag::NegRule), 2);
    assert_eq!(ax.count(AxiomTag::PosRule), 3);
    assert_eq!(ax.count(AxiomTag::Equation), 1);
    assert_eq!(ax.count(AxiomTag::EqualityTheory), 10);
}

#[test]
fn orientation_follows_polarity() {
    let hol = build_hol();
    let (g, _) = parse_sequent_file(
        "(vars (f (i -> o)) (x o)) (seq ((eps (dall i f))) ((eps (dnot (null zero)))))",
        &hol.sig,
    )
    .unwrap();
    let ax = compile_axioms(&hol, &default_universe(&g)).unwrap();
    let body = |p: &Prop| {
        let mut p = p.clone();
        while let Prop::Forall(_, b) = p {
            p = *b;
        }
        p
    };
    for a in ax.tagged(AxiomTag::NegRule) {
        let Prop::Implies(l, _) = body(&a.prop) else { panic!("{}", a.name()) };
        assert!(l.is_atomic(), "{}", a.name());
    }
    for a in ax.tagged(AxiomTag::PosRule) {
        let Prop::Implies(_, r) = body(&a.prop) else { panic!("{}", a.name()) };
        assert!(r.is_atomic(), "{}", a.name());
    }
    assert!(ax.axioms.iter().all(|a| a.prop.is_closed()));
    // not-neg, all-neg[i], nullzero-neg; succ : i -> i is outside the universe
    assert_eq!(ax.count(AxiomTag::NegRule), 3);
}

#[test]
fn empty_system_gives_only_equality() {
    let rs = RewriteSystem::empty(Signature::new(&["i"]));
    let ax = compile_axioms(&rs, &[Sort::iota()].into()).unwrap();
    let names: Vec<String> = ax.axioms.iter().map(Axiom::name).collect();
    assert_eq!(names, ["cong-eq[i]", "refl[i]"]);
}

#[test]
fn unclosed_universe_rejected() {
    let hol = build_hol();
    let u: BTreeSet<Sort> = [Sort::arrow(Sort::iota(), Sort::prop())].into();
    assert!(matches!(compile_axioms(&hol, &u), Err(CompileError::NotClosed { .. })));
}

#[test]
fn tff_round_trip() {
    let pm = build_holpm();
    let (g, _) = parse_sequent_file(
        "(vars (f (i -> o)) (y i)) (seq ((eps (f (H i f)))) ((all y i (eps (f y))) (eps (dnot (null (succ y))))))",
        &pm.sig,
    )
    .unwrap();
    let ax = compile_axioms(&pm, &default_universe(&g)).unwrap();
    let text = export_tff(&ax, Some(&g), TffOptions { explicit_equality: true }).unwrap();
    assert!(text.contains("'H_i'"));
    let back = parse_tff(&text, &pm.sig).unwrap();
    let axioms: Vec<&TffFormula> = back.with_role("axiom").collect();
    assert_eq!(axioms.len(), ax.axioms.len());
    for (a, b) in ax.axioms.iter().zip(axioms) {
        assert!(a.prop.alpha_eq(&b.prop), "{} vs {}", a.prop, b.prop);
    }
    let goal: Vec<&TffFormula> = back.with_role("conjecture").collect();
    assert!(goal[0].prop.alpha_eq(&sequent_formula(&g)));
    assert_eq!(export_tff(&ax, Some(&g), TffOptions { explicit_equality: true }).unwrap(), text);
}

#[test]
fn native_equality_by_default() {
    let pm = build_holpm();
    let ax = compile_axioms(&pm, &or_universe(&pm)).unwrap();
    let text = export_tff(&ax, None, TffOptions::default()).unwrap();
    let back = parse_tff(&text, &pm.sig).unwrap();
    assert_eq!(back.formulas.len(), ax.axioms.len() - ax.count(AxiomTag::EqualityTheory));
    assert!(text.contains("kc_o_o"));
    assert!(back.types.contains(&"fun_o_fun_o_o".to_string()));
}
