//! Every compiled axiom is provable modulo the theory it came from. Rule
//! axioms are proved outright; equation axioms from reflexivity at the
//! equation's sort, since modulo E both sides are the same term.

mod common;

use std::collections::BTreeSet;

use common::budget;
use polmod::compile::{close_universe, compile_axioms, AxiomTag};
use polmod::kernel::check;
use polmod::search::prove_cutfree;
use polmod::syntax::{Prop, Sequent, Sort, EQUALITY};
use polmod::theory::{build_hol, build_holpm, RewriteSystem};

fn universe() -> BTreeSet<Sort> {
    let (i, o) = (Sort::iota(), Sort::prop());
    let seeds = [
        Sort::arrows([o.clone(), o.clone()], o.clone()),
        Sort::arrow(Sort::arrow(i.clone(), o.clone()), o.clone()),
        Sort::arrow(Sort::arrow(o.clone(), o.clone()), o.clone()),
        Sort::arrow(i.clone(), i.clone()),
    ];
    close_universe(&seeds.into_iter().collect())
}

/// Sort of the two sides of a closed equation `∀x̄. l = r`.
fn equation_sort(p: &Prop) -> Sort {
    match p {
        Prop::Forall(_, body) => equation_sort(body),
        Prop::Atom(pred, args) if pred == EQUALITY => args[0].sort(),
        other => panic!("not an equation: {other}"),
    }
}

fn probe(rs: &RewriteSystem) -> usize {
    let ax = compile_axioms(rs, &universe()).unwrap();
    let refl = |s: &Sort| {
        ax.tagged(AxiomTag::EqualityTheory)
            .find(|a| a.schema == "refl" && a.inst == [s.clone()])
            .map(|a| a.prop.clone())
            .unwrap()
    };
    let mut proved = 0;
    for a in ax.axioms.iter().filter(|a| a.tag != AxiomTag::EqualityTheory) {
        let left = match a.tag {
            AxiomTag::Equation => vec![refl(&equation_sort(&a.prop))],
            _ => vec![],
        };
        let goal = Sequent::new(left, vec![a.prop.clone()]);
        let r = prove_cutfree(&goal, rs, 8, budget());
        let p = r.outcome.proof().unwrap_or_else(|| panic!("{} {}: {}", rs.name, a.name(), r.outcome.name()));
        assert!(check(p, &goal, rs, budget()).ok());
        proved += 1;
    }
    proved
}

#[test]
fn hol_axioms_are_theorems() {
    let rs = build_hol();
    assert!(probe(&rs) >= rs.neg_rules.len() + rs.pos_rules.len());
}

#[test]
fn holpm_axioms_are_theorems() {
    let rs = build_holpm();
    assert!(probe(&rs) >= rs.neg_rules.len() + rs.pos_rules.len());
}
