//! Compilation of a rewrite system into first-order axioms: equality
//! theory, one closed equation per equation instance, `P ⇒ A` per negative
//! rule and `A ⇒ P` per positive rule.
//!
//! The schemas range over all sorts, so compilation is relative to a finite
//! sort universe closed under components.

mod tff;

pub use tff::{export_tff, parse_tff, sequent_formula, TffError, TffFormula, TffOptions, TffProblem};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::syntax::{Prop, Sequent, Signature, Sort, Term, Var, EQUALITY};
use crate::theory::RewriteSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomTag {
    EqualityTheory,
    Equation,
    NegRule,
    PosRule,
}

impl AxiomTag {
    pub fn name(self) -> &'static str {
        match self {
            AxiomTag::EqualityTheory => "equality",
            AxiomTag::Equation => "equation",
            AxiomTag::NegRule => "neg-rule",
            AxiomTag::PosRule => "pos-rule",
        }
    }
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub schema: String,
    /// Sorts chosen for the schema's sort parameters, sorted by parameter name.
    pub inst: Vec<Sort>,
    pub tag: AxiomTag,
    pub prop: Prop,
}

impl Axiom {
    /// Schema name with its sort instance, e.g. `all-neg[o]`.
    pub fn name(&self) -> String {
        if self.inst.is_empty() {
            self.schema.clone()
        } else {
            let sorts: Vec<String> = self.inst.iter().map(Sort::to_string).collect();
            format!("{}[{}]", self.schema, sorts.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSet {
    pub sig: Signature,
    pub universe: BTreeSet<Sort>,
    /// Ordered by tag, then by name.
    pub axioms: Vec<Axiom>,
}

impl AxiomSet {
    pub fn tagged(&self, tag: AxiomTag) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter().filter(move |a| a.tag == tag)
    }

    pub fn count(&self, tag: AxiomTag) -> usize {
        self.tagged(tag).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompileError {
    #[error("sort universe is not closed: {sort} needs {missing}")]
    NotClosed { sort: Sort, missing: Sort },
    #[error("sort universe contains the non-ground sort {0}")]
    NotGround(Sort),
    #[error("axiom {0} is not closed")]
    OpenAxiom(String),
}

/// Sorts of the sequent closed under components: the smallest universe
/// that can speak about the goal.
pub fn default_universe(goal: &Sequent) -> BTreeSet<Sort> {
    let mut sorts = BTreeSet::new();
    for p in goal.formulas() {
        p.sorts_into(&mut sorts);
    }
    close_universe(&sorts)
}

pub fn close_universe(sorts: &BTreeSet<Sort>) -> BTreeSet<Sort> {
    let mut out = BTreeSet::new();
    for s in sorts {
        s.components(&mut out);
    }
    out
}

fn check_universe(universe: &BTreeSet<Sort>) -> Result<(), CompileError> {
    for s in universe {
        if !s.is_ground() {
            return Err(CompileError::NotGround(s.clone()));
        }
        let mut parts = BTreeSet::new();
        s.components(&mut parts);
        if let Some(missing) = parts.into_iter().find(|p| !universe.contains(p)) {
            return Err(CompileError::NotClosed { sort: s.clone(), missing });
        }
    }
    Ok(())
}

/// Every assignment of universe sorts to `metas`, in lexicographic order.
fn instances(metas: &[String], universe: &BTreeSet<Sort>) -> Vec<Vec<(String, Sort)>> {
    let mut out = vec![Vec::new()];
    for m in metas {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                universe.iter().map(move |s| {
                    let mut next = prefix.clone();
                    next.push((m.clone(), s.clone()));
                    next
                })
            })
            .collect();
    }
    out
}

fn inst_sorts(inst: &[(String, Sort)]) -> Vec<Sort> {
    inst.iter().map(|(_, s)| s.clone()).collect()
}

fn admissible(p: &Prop, universe: &BTreeSet<Sort>) -> bool {
    let mut sorts = BTreeSet::new();
    p.sorts_into(&mut sorts);
    sorts.iter().all(|s| universe.contains(s))
}

fn eq(t: Term, u: Term) -> Prop {
    Prop::atom(EQUALITY, vec![t, u])
}

fn conj(mut ps: Vec<Prop>) -> Option<Prop> {
    let last = ps.pop()?;
    Some(ps.into_iter().rev().fold(last, |acc, p| Prop::and(p, acc)))
}

/// `∀x̄ ∀ȳ. x̄ = ȳ ∧ extra ⇒ concl(x̄, ȳ)`.
fn congruence(sorts: &[Sort], extra: impl Fn(&[Term]) -> Option<Prop>, concl: impl Fn(&[Term], &[Term]) -> Prop) -> Prop {
    let xs: Vec<Var> = sorts.iter().enumerate().map(|(i, s)| Var::new(&format!("x{i}"), s.clone())).collect();
    let ys: Vec<Var> = sorts.iter().enumerate().map(|(i, s)| Var::new(&format!("y{i}"), s.clone())).collect();
    let xt: Vec<Term> = xs.iter().cloned().map(Term::Var).collect();
    let yt: Vec<Term> = ys.iter().cloned().map(Term::Var).collect();
    let mut prem: Vec<Prop> = xt.iter().zip(&yt).map(|(x, y)| eq(x.clone(), y.clone())).collect();
    prem.extend(extra(&xt));
    let body = match conj(prem) {
        Some(h) => Prop::implies(h, concl(&xt, &yt)),
        None => concl(&xt, &yt),
    };
    Prop::forall_all(xs.into_iter().chain(ys), body)
}

fn equality_axioms(sig: &Signature, universe: &BTreeSet<Sort>) -> Vec<Axiom> {
    let mut out = Vec::new();
    let mut push = |schema: &str, inst: Vec<Sort>, prop: Prop| {
        out.push(Axiom {
            schema: schema.to_string(),
            inst,
            tag: AxiomTag::EqualityTheory,
            prop,
        })
    };
    for s in universe {
        let x = Var::new("x", s.clone());
        push("refl", vec![s.clone()], Prop::forall(x.clone(), eq(Term::Var(x.clone()), Term::Var(x))));
        // congruence of equality itself gives symmetry and transitivity
        push(
            "cong-eq",
            vec![s.clone()],
            congruence(&[s.clone(), s.clone()], |x| Some(eq(x[0].clone(), x[1].clone())), |_, y| {
                eq(y[0].clone(), y[1].clone())
            }),
        );
        if let Some((d, c)) = s.split_arrow() {
            push(
                "cong-app",
                vec![d.clone(), c.clone()],
                congruence(&[s.clone(), d.clone()], |_| None, |x, y| {
                    eq(
                        Term::app_unchecked(x[0].clone(), x[1].clone()),
                        Term::app_unchecked(y[0].clone(), y[1].clone()),
                    )
                }),
            );
        }
    }
    for (name, f) in &sig.funs {
        for inst in instances(&f.params, universe) {
            let sorts: Vec<Sort> = inst.iter().map(|(_, s)| s.clone()).collect();
            let Some((args, result)) = sig.fun_rank(name, &sorts) else { continue };
            if args.is_empty() || !args.iter().chain([&result]).all(|s| universe.contains(s)) {
                continue;
            }
            let mk = |xs: &[Term]| Term::Sym {
                name: name.clone(),
                inst: sorts.clone(),
                args: xs.to_vec(),
                sort: result.clone(),
            };
            push(
                &format!("cong-{name}"),
                sorts.clone(),
                congruence(&args, |_| None, |x, y| eq(mk(x), mk(y))),
            );
        }
    }
    for (name, args) in &sig.preds {
        if args.is_empty() || !args.iter().all(|s| universe.contains(s)) {
            continue;
        }
        push(
            &format!("cong-{name}"),
            vec![],
            congruence(args, |x| Some(Prop::atom(name, x.to_vec())), |_, y| Prop::atom(name, y.to_vec())),
        );
    }
    out
}

fn sort_subst(inst: &[(String, Sort)]) -> HashMap<String, Sort> {
    inst.iter().cloned().collect()
}

pub fn compile_axioms(rs: &RewriteSystem, universe: &BTreeSet<Sort>) -> Result<AxiomSet, CompileError> {
    check_universe(universe)?;
    let mut axioms = equality_axioms(&rs.sig, universe);
    axioms.sort_by(|a, b| (&a.schema, &a.inst).cmp(&(&b.schema, &b.inst)));

    let mut eqs = Vec::new();
    for e in &rs.equations {
        for inst in instances(&Vec::from_iter(e.metavars()), universe) {
            let s = sort_subst(&inst);
            let vars = e.vars.iter().map(|v| Var::new(&v.name, v.sort.subst(&s)));
            let body = eq(e.lhs.subst_sorts(&s), e.rhs.subst_sorts(&s));
            let prop = Prop::forall_all(vars, body);
            if admissible(&prop, universe) {
                eqs.push(Axiom {
                    schema: e.name.clone(),
                    inst: inst_sorts(&inst),
                    tag: AxiomTag::Equation,
                    prop,
                });
            }
        }
    }
    eqs.sort_by(|a, b| (&a.schema, &a.inst).cmp(&(&b.schema, &b.inst)));
    axioms.extend(eqs);

    for (tag, rules) in [(AxiomTag::NegRule, &rs.neg_rules), (AxiomTag::PosRule, &rs.pos_rules)] {
        let mut group = Vec::new();
        for r in rules {
            for inst in instances(&Vec::from_iter(r.metavars()), universe) {
                let s = sort_subst(&inst);
                let (lhs, rhs) = (r.lhs.subst_sorts(&s), r.rhs.subst_sorts(&s));
                let body = match tag {
                    AxiomTag::NegRule => Prop::implies(lhs, rhs),
                    _ => Prop::implies(rhs, lhs),
                };
                let vars = r.vars.iter().map(|v| Var::new(&v.name, v.sort.subst(&s)));
                let prop = Prop::forall_all(vars, body);
                if admissible(&prop, universe) {
                    group.push(Axiom {
                        schema: r.name.clone(),
                        inst: inst_sorts(&inst),
                        tag,
                        prop,
                    });
                }
            }
        }
        group.sort_by(|a, b| (&a.schema, &a.inst).cmp(&(&b.schema, &b.inst)));
        axioms.extend(group);
    }

    if let Some(a) = axioms.iter().find(|a| !a.prop.is_closed()) {
        return Err(CompileError::OpenAxiom(a.name()));
    }
    Ok(AxiomSet {
        sig: rs.sig.clone(),
        universe: universe.clone(),
        axioms,
    })
}

#[cfg(test)]
mod tests;
