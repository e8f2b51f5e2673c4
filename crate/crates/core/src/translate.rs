//! Proof transformations: pullback along sequent rewriting, substitution of
//! a term for a free variable in a proof, reindexing of side formulas, and
//! the translation of cut-free `HOL` proofs into cut-free `HOLpm` proofs.

use std::collections::{BTreeMap, BTreeSet};

use crate::kernel::{check, layout, resolve, NodeError, ProofTree, Rule};
use crate::rewrite::{head_reducts, reaches, Reach, ReachabilityBudget};
use crate::syntax::{fresh_name, Prop, Sequent, Side, Sort, Term, Var};
use crate::theory::{RewriteSystem, WITNESS_SYMBOL};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("ill-formed proof node: {0}")]
    Node(String),
    #[error("sequents have different shapes")]
    Shape,
    #[error("{side} {index}: {from} does not rewrite to {to}")]
    NotReachable {
        side: Side,
        index: usize,
        from: Box<Prop>,
        to: Box<Prop>,
    },
    #[error("goal mentions the witness symbol {WITNESS_SYMBOL}")]
    WitnessInGoal,
    #[error("input proof uses cut")]
    CutInInput,
    #[error("input proof is not valid: {0}")]
    InvalidInput(String),
    #[error("sort mismatch: {0}")]
    Sort(String),
    #[error("no translation case for {rule} on {prop}")]
    Unsupported { rule: Rule, prop: Box<Prop> },
    #[error("translated proof rejected: {0}")]
    Rejected(String),
}

impl From<NodeError> for TranslateError {
    fn from(e: NodeError) -> Self {
        TranslateError::Node(e.reason)
    }
}

/// Copy of `proof` in which every node carries its resolved annotations,
/// so that later transformations never depend on defaults computed from a
/// conclusion they have changed.
pub fn make_explicit(proof: &ProofTree, goal: &Sequent, rs: &RewriteSystem) -> Result<ProofTree, TranslateError> {
    let step = resolve(proof, goal, rs)?;
    let mut out = proof.clone();
    out.reducts = step.reducts.clone();
    if proof.rule.is_quantifier() {
        out.var = step.var.clone();
    }
    out.children = proof
        .children
        .iter()
        .zip(&step.premises)
        .map(|(c, p)| make_explicit(c, p, rs))
        .collect::<Result<_, _>>()?;
    Ok(out)
}

/// Every variable name occurring anywhere in the annotations of `proof`.
pub fn proof_names(proof: &ProofTree, out: &mut BTreeSet<String>) {
    for p in proof.reducts.iter().chain(proof.cut.iter()) {
        p.all_names(out);
    }
    if let Some(t) = &proof.term {
        out.extend(t.free_vars().into_iter().map(|v| v.name));
    }
    if let Some(v) = &proof.var {
        out.insert(v.name.clone());
    }
    for c in &proof.children {
        proof_names(c, out);
    }
}

fn sequent_names(s: &Sequent, out: &mut BTreeSet<String>) {
    for p in s.formulas() {
        p.all_names(out);
    }
}

fn subst_prop(p: &Prop, x: &Var, t: &Term) -> Prop {
    p.substitute(x, t).expect("substitution sorts checked by caller")
}

fn subst_term(u: &Term, x: &Var, t: &Term) -> Term {
    u.subst(&std::collections::HashMap::from([(x.clone(), t.clone())]))
}

/// Renames the bound variable of an explicit quantifier node to a name
/// outside `avoid`, updating its body and, for eigenvariable rules, the
/// subproof.
fn rename_bound(node: &ProofTree, avoid: &BTreeSet<String>) -> ProofTree {
    let v = node.var.clone().expect("explicit quantifier node");
    let mut names = avoid.clone();
    proof_names(node, &mut names);
    let fresh = Var::new(&fresh_name(&v.name, &names), v.sort.clone());
    let to = Term::Var(fresh.clone());
    let mut out = node.clone();
    out.var = Some(fresh);
    out.reducts[0] = subst_prop(&node.reducts[0], &v, &to);
    if matches!(node.rule, Rule::AllRight | Rule::ExLeft) {
        out.children = node.children.iter().map(|c| subst_explicit(c, &v, &to)).collect();
    }
    out
}

/// `(t/x)` applied to an explicit proof.
fn subst_explicit(node: &ProofTree, x: &Var, t: &Term) -> ProofTree {
    let t_names: BTreeSet<String> = t.free_vars().into_iter().map(|v| v.name).collect();
    let mut node = node.clone();
    if let Some(v) = node.var.clone() {
        let eigen = matches!(node.rule, Rule::AllRight | Rule::ExLeft);
        if eigen && v == *x {
            // x is the eigenvariable here, so it is not free in this
            // node's conclusion apart from the principal formula, which
            // the caller substitutes
            return node;
        }
        if (v.name == x.name && v != *x) || t_names.contains(&v.name) {
            let mut avoid = t_names.clone();
            avoid.insert(x.name.clone());
            node = rename_bound(&node, &avoid);
        }
    }
    let v = node.var.clone();
    let mut out = node.clone();
    out.reducts = node
        .reducts
        .iter()
        .enumerate()
        .map(|(k, p)| {
            // the body of a quantifier annotation has its own variable
            if k == 0 && v.as_ref() == Some(x) {
                p.clone()
            } else {
                subst_prop(p, x, t)
            }
        })
        .collect();
    out.cut = node.cut.as_ref().map(|p| subst_prop(p, x, t));
    out.term = node.term.as_ref().map(|u| subst_term(u, x, t));
    out.children = node.children.iter().map(|c| subst_explicit(c, x, t)).collect();
    out
}

/// Proof of `goal[t/x]` from a proof of `goal`. Eigenvariables that would
/// capture variables of `t` are renamed.
pub fn substitute_in_proof(
    proof: &ProofTree,
    goal: &Sequent,
    x: &Var,
    t: &Term,
    rs: &RewriteSystem,
) -> Result<ProofTree, TranslateError> {
    if t.sort() != x.sort {
        return Err(TranslateError::Sort(format!("{} has sort {}, {t} has sort {}", x.name, x.sort, t.sort())));
    }
    let explicit = make_explicit(proof, goal, rs)?;
    Ok(subst_explicit(&explicit, x, t))
}

pub fn substitute_sequent(s: &Sequent, x: &Var, t: &Term) -> Sequent {
    Sequent::new(
        s.left.iter().map(|p| subst_prop(p, x, t)).collect(),
        s.right.iter().map(|p| subst_prop(p, x, t)).collect(),
    )
}

fn pull(node: &ProofTree, from: &Sequent, to: &Sequent, rs: &RewriteSystem) -> Result<ProofTree, TranslateError> {
    let mut step = resolve(node, to, rs)?;
    let mut out = node.clone();
    out.reducts = step.reducts.clone();
    let mut children = node.children.clone();
    let index = node.principal.map_or(0, |(_, i)| i);
    if matches!(node.rule, Rule::AllRight | Rule::ExLeft) {
        let x = step.var.clone().expect("quantifier step");
        out.var = Some(x.clone());
        let (side, i) = node.principal.expect("principal");
        let clash = from.free_vars_except((side, i)).iter().any(|v| v.name == x.name);
        if clash {
            let mut avoid = BTreeSet::new();
            sequent_names(from, &mut avoid);
            sequent_names(to, &mut avoid);
            out = rename_bound(&out, &avoid);
            children = out.children.clone();
            step.new = out.reducts.clone();
            step.premises = layout(node.rule, i, &to.left, &to.right, &step.new)
                .into_iter()
                .map(|(l, r)| Sequent::new(l, r))
                .collect();
        }
    }
    let from_premises = layout(node.rule, index, &from.left, &from.right, &step.new);
    out.children = children
        .iter()
        .zip(from_premises)
        .zip(&step.premises)
        .map(|((c, (l, r)), to_p)| pull(c, &Sequent::new(l, r), to_p, rs))
        .collect::<Result<_, _>>()?;
    Ok(out)
}

/// Checks that `from` rewrites to `to` position by position.
pub fn check_rewrites_to(
    from: &Sequent,
    to: &Sequent,
    rs: &RewriteSystem,
    budget: ReachabilityBudget,
) -> Result<(), TranslateError> {
    if from.left.len() != to.left.len() || from.right.len() != to.right.len() {
        return Err(TranslateError::Shape);
    }
    for side in [Side::Left, Side::Right] {
        for (index, (a, b)) in from.side(side).iter().zip(to.side(side)).enumerate() {
            let pol = crate::kernel::polarity_of(side);
            if reaches(rs, a, b, pol, budget) != Reach::Reachable {
                return Err(TranslateError::NotReachable {
                    side,
                    index,
                    from: Box::new(a.clone()),
                    to: Box::new(b.clone()),
                });
            }
        }
    }
    Ok(())
}

/// Given a proof of `to` and `from →* to`, a proof of `from` with the same
/// number of nodes: every annotation is kept and only the principal
/// formulas change, each now reaching its reducts through `to`.
pub fn pullback(
    proof: &ProofTree,
    from: &Sequent,
    to: &Sequent,
    rs: &RewriteSystem,
    budget: ReachabilityBudget,
) -> Result<ProofTree, TranslateError> {
    check_rewrites_to(from, to, rs, budget)?;
    let explicit = make_explicit(proof, to, rs)?;
    pull(&explicit, from, to, rs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tag {
    Old(Side, usize),
    New(usize),
}

fn positions_of(target: &[Prop], source: &[Prop]) -> Option<Vec<usize>> {
    let mut used = vec![false; source.len()];
    let mut out = Vec::with_capacity(target.len());
    for p in target {
        let k = (0..source.len()).find(|&k| !used[k] && &source[k] == p)?;
        used[k] = true;
        out.push(k);
    }
    (target.len() == source.len()).then_some(out)
}

fn reindex_node(
    node: &ProofTree,
    old: &Sequent,
    lp: &[usize],
    rp: &[usize],
    rs: &RewriteSystem,
) -> Result<ProofTree, TranslateError> {
    let step = resolve(node, old, rs)?;
    let old_l: Vec<Tag> = (0..old.left.len()).map(|k| Tag::Old(Side::Left, k)).collect();
    let old_r: Vec<Tag> = (0..old.right.len()).map(|k| Tag::Old(Side::Right, k)).collect();
    let new_l: Vec<Tag> = lp.iter().map(|&k| Tag::Old(Side::Left, k)).collect();
    let new_r: Vec<Tag> = rp.iter().map(|&k| Tag::Old(Side::Right, k)).collect();
    let fresh: Vec<Tag> = (0..step.new.len()).map(Tag::New).collect();
    let mut out = node.clone();
    let (old_index, new_index) = match node.principal {
        Some((side, i)) => {
            let tags = if side == Side::Left { &new_l } else { &new_r };
            let j = tags.iter().position(|t| *t == Tag::Old(side, i)).expect("permutation");
            out.principal = Some((side, j));
            (i, j)
        }
        None => (0, 0),
    };
    let old_prem = layout(node.rule, old_index, &old_l, &old_r, &fresh);
    let new_prem = layout(node.rule, new_index, &new_l, &new_r, &fresh);
    let perm = |new: &[Tag], old: &[Tag]| -> Vec<usize> {
        new.iter().map(|t| old.iter().position(|o| o == t).expect("same tags")).collect()
    };
    out.children = node
        .children
        .iter()
        .zip(step.premises.iter())
        .zip(old_prem.iter().zip(&new_prem))
        .map(|((c, p), ((ol, or), (nl, nr)))| reindex_node(c, p, &perm(nl, ol), &perm(nr, or), rs))
        .collect::<Result<_, _>>()?;
    Ok(out)
}

/// Proof of `new`, a per-side permutation of `old`, from a proof of `old`.
pub fn reindex(proof: &ProofTree, old: &Sequent, new: &Sequent, rs: &RewriteSystem) -> Result<ProofTree, TranslateError> {
    let lp = positions_of(&new.left, &old.left).ok_or(TranslateError::Shape)?;
    let rp = positions_of(&new.right, &old.right).ok_or(TranslateError::Shape)?;
    reindex_node(proof, old, &lp, &rp, rs)
}

pub const CASE_DIRECT: &str = "direct";
pub const CASE_PULLBACK: &str = "pullback";
pub const CASE_OR_GADGET: &str = "or-right-gadget";
pub const CASE_ALL_GADGET: &str = "all-right-gadget";
pub const CASE_TOP_GADGET: &str = "top-right-gadget";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TranslationTrace {
    pub input_size: usize,
    pub output_size: usize,
    pub cases: Vec<&'static str>,
}

impl TranslationTrace {
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut m = BTreeMap::new();
        for c in &self.cases {
            *m.entry(*c).or_default() += 1;
        }
        m
    }
}

struct Translator<'a> {
    hol: &'a RewriteSystem,
    holpm: &'a RewriteSystem,
    budget: ReachabilityBudget,
    trace: TranslationTrace,
}

fn replace_right(s: &Sequent, i: usize, with: Vec<Prop>) -> Sequent {
    let mut right = s.right[..i].to_vec();
    right.extend(with);
    right.extend_from_slice(&s.right[i + 1..]);
    Sequent::new(s.left.clone(), right)
}

/// Same sequent with the formulas at `i..i+n` on the right moved to the
/// front.
fn to_front(s: &Sequent, i: usize, n: usize) -> Sequent {
    let mut right = s.right[i..i + n].to_vec();
    right.extend_from_slice(&s.right[..i]);
    right.extend_from_slice(&s.right[i + n..]);
    Sequent::new(s.left.clone(), right)
}

impl Translator<'_> {
    fn pull_child(&mut self, child: &ProofTree, from: &Sequent, to: &Sequent) -> Result<ProofTree, TranslateError> {
        if from == to {
            return Ok(child.clone());
        }
        self.trace.cases.push(CASE_PULLBACK);
        pull(child, from, to, self.hol)
    }

    /// Shape the principal formula must reach for this node.
    fn target_shape(node: &ProofTree, reducts: &[Prop], var: Option<&Var>) -> Option<Prop> {
        Some(match node.rule {
            Rule::NegLeft | Rule::NegRight => Prop::not(reducts[0].clone()),
            Rule::AndLeft | Rule::AndRight => Prop::and(reducts[0].clone(), reducts[1].clone()),
            Rule::OrLeft | Rule::OrRight => Prop::or(reducts[0].clone(), reducts[1].clone()),
            Rule::ImpLeft | Rule::ImpRight => Prop::implies(reducts[0].clone(), reducts[1].clone()),
            Rule::AllLeft | Rule::AllRight => Prop::forall(var?.clone(), reducts[0].clone()),
            Rule::ExLeft | Rule::ExRight => Prop::exists(var?.clone(), reducts[0].clone()),
            Rule::TopRight => Prop::Top,
            Rule::BotLeft => Prop::Bottom,
            _ => return None,
        })
    }

    /// Rule of `HOL` exposing the head of the atom `a` on the way to `shape`.
    fn head_rule(&self, a: &Prop, shape: &Prop, pol: crate::rewrite::Polarity) -> Option<(String, Prop)> {
        let reducts = head_reducts(self.hol, a, pol, self.budget.fuel).ok()?;
        reducts
            .into_iter()
            .find(|(_, rhs)| reaches(self.hol, rhs, shape, pol, self.budget) == Reach::Reachable)
    }

    fn tr(&mut self, node: &ProofTree, seq: &Sequent) -> Result<ProofTree, TranslateError> {
        let step = resolve(node, seq, self.hol)?;
        let rule = node.rule;
        match rule {
            Rule::Cut => return Err(TranslateError::CutInInput),
            Rule::Axiom => {
                self.trace.cases.push(CASE_DIRECT);
                return Ok(node.clone());
            }
            Rule::WeakLeft | Rule::WeakRight => {
                self.trace.cases.push(CASE_DIRECT);
                let mut out = node.clone();
                out.children = vec![self.tr(&node.children[0], &step.premises[0])?];
                return Ok(out);
            }
            Rule::ContrLeft | Rule::ContrRight => {
                self.trace.cases.push(CASE_DIRECT);
                let a = step.principal.clone().expect("principal");
                let (_, i) = node.principal.expect("principal");
                let (l, r) = layout(rule, i, &seq.left, &seq.right, &[a.clone(), a.clone()]).remove(0);
                let doubled = Sequent::new(l, r);
                let child = self.pull_child(&node.children[0], &doubled, &step.premises[0])?;
                let mut out = node.clone();
                out.reducts = vec![a.clone(), a];
                out.children = vec![self.tr(&child, &doubled)?];
                return Ok(out);
            }
            _ => {}
        }

        let (side, i) = node.principal.expect("principal");
        let pol = crate::kernel::polarity_of(side);
        let a = step.principal.clone().expect("principal");
        let shape = Self::target_shape(node, &step.reducts, step.var.as_ref()).expect("connective rule");
        let unsupported = || TranslateError::Unsupported {
            rule,
            prop: Box::new(a.clone()),
        };

        if matches!(rule, Rule::TopRight | Rule::BotLeft) {
            if reaches(self.holpm, &a, &shape, pol, self.budget) == Reach::Reachable {
                self.trace.cases.push(CASE_DIRECT);
                return Ok(node.clone());
            }
            let neg_bot = Prop::not(Prop::Bottom);
            if rule == Rule::TopRight && reaches(self.holpm, &a, &neg_bot, pol, self.budget) == Reach::Reachable {
                self.trace.cases.push(CASE_TOP_GADGET);
                let n = seq.left.len();
                let bot = ProofTree::at(Rule::BotLeft, Side::Left, n, vec![]);
                return Ok(ProofTree::at(Rule::NegRight, Side::Right, i, vec![bot]).with_reducts(vec![Prop::Bottom]));
            }
            return Err(unsupported());
        }

        let exposed = if a.is_atomic() {
            let (name, rhs) = self.head_rule(&a, &shape, pol).ok_or_else(unsupported)?;
            match (rule, name.as_str()) {
                (Rule::OrRight, "or-pos") => return self.or_gadget(node, seq, &step, i, rhs),
                (Rule::AllRight, "all-pos") => return self.all_gadget(node, seq, &step, i, rhs),
                _ => rhs,
            }
        } else {
            a.clone()
        };
        self.trace.cases.push(CASE_DIRECT);

        // decompose the exposed formula with reflexive annotations
        let mut out = node.clone();
        let new: Vec<Prop> = match (rule, &exposed) {
            (Rule::NegLeft | Rule::NegRight, Prop::Not(b)) => vec![(**b).clone()],
            (Rule::AndLeft | Rule::AndRight, Prop::And(b, c))
            | (Rule::OrLeft | Rule::OrRight, Prop::Or(b, c))
            | (Rule::ImpLeft | Rule::ImpRight, Prop::Implies(b, c)) => vec![(**b).clone(), (**c).clone()],
            (Rule::AllLeft | Rule::AllRight, Prop::Forall(y, b)) | (Rule::ExLeft | Rule::ExRight, Prop::Exists(y, b)) => {
                let x = step.var.clone().expect("quantifier step");
                let body = if *y == x {
                    (**b).clone()
                } else if b.free_vars().contains(&x) || y.sort != x.sort {
                    return Err(unsupported());
                } else {
                    subst_prop(b, y, &Term::Var(x.clone()))
                };
                out.var = Some(x.clone());
                if matches!(rule, Rule::AllLeft | Rule::ExRight) {
                    let t = node.term.clone().expect("witness");
                    let c = subst_prop(&body, &x, &t);
                    out.reducts = vec![body, c.clone()];
                    vec![c]
                } else {
                    out.reducts = vec![body.clone()];
                    vec![body]
                }
            }
            _ => return Err(unsupported()),
        };
        if !rule.is_quantifier() {
            out.reducts = new.clone();
        }
        let from = layout(rule, i, &seq.left, &seq.right, &new);
        let mut children = Vec::new();
        for ((child, (l, r)), to) in node.children.iter().zip(from).zip(&step.premises) {
            let from = Sequent::new(l, r);
            let pulled = self.pull_child(child, &from, to)?;
            children.push(self.tr(&pulled, &from)?);
        }
        out.children = children;
        Ok(out)
    }

    /// `A` atomic with `A →+ ε(t) ∨ ε(u)` in `HOL`: contract `A` into
    /// `¬¬ε(t)` and `¬¬ε(u)` and strip both double negations.
    fn or_gadget(
        &mut self,
        node: &ProofTree,
        seq: &Sequent,
        step: &crate::kernel::Step,
        i: usize,
        rhs: Prop,
    ) -> Result<ProofTree, TranslateError> {
        self.trace.cases.push(CASE_OR_GADGET);
        let Prop::Or(et, eu) = rhs else {
            return Err(TranslateError::Unsupported {
                rule: node.rule,
                prop: Box::new(rhs),
            });
        };
        let (et, eu) = (*et, *eu);
        let mid = replace_right(seq, i, vec![et.clone(), eu.clone()]);
        let pulled = self.pull_child(&node.children[0], &mid, &step.premises[0])?;
        let inner = self.tr(&pulled, &mid)?;
        let front = to_front(&mid, i, 2);
        let inner = reindex(&inner, &mid, &front, self.holpm)?;
        let n = seq.left.len();
        let nt = Prop::not(et.clone());
        let nu = Prop::not(eu.clone());
        let proof = ProofTree::at(Rule::NegLeft, Side::Left, n, vec![inner]).with_reducts(vec![et]);
        let proof = ProofTree::at(Rule::NegLeft, Side::Left, n + 1, vec![proof]).with_reducts(vec![eu]);
        let proof = ProofTree::at(Rule::NegRight, Side::Right, i, vec![proof]).with_reducts(vec![nu.clone()]);
        let proof = ProofTree::at(Rule::NegRight, Side::Right, i, vec![proof]).with_reducts(vec![nt.clone()]);
        Ok(ProofTree::at(Rule::ContrRight, Side::Right, i, vec![proof])
            .with_reducts(vec![Prop::not(nt), Prop::not(nu)]))
    }

    /// `A` atomic with `A →+ ∀y ε(t y)` in `HOL`: prove `ε(t x)`,
    /// substitute `H(t)` for the eigenvariable `x`, and use
    /// `A →+ ¬¬ε(t H(t))`.
    fn all_gadget(
        &mut self,
        node: &ProofTree,
        seq: &Sequent,
        step: &crate::kernel::Step,
        i: usize,
        rhs: Prop,
    ) -> Result<ProofTree, TranslateError> {
        self.trace.cases.push(CASE_ALL_GADGET);
        let unsupported = |p: &Prop| TranslateError::Unsupported {
            rule: node.rule,
            prop: Box::new(p.clone()),
        };
        let Prop::Forall(y, body) = &rhs else {
            return Err(unsupported(&rhs));
        };
        let x = step.var.clone().expect("quantifier step");
        let body = if *y == x { (**body).clone() } else { subst_prop(body, y, &Term::Var(x.clone())) };
        let t = match &body {
            Prop::Atom(_, args) if args.len() == 1 => match &args[0] {
                Term::App(f, _) => (**f).clone(),
                _ => return Err(unsupported(&body)),
            },
            _ => return Err(unsupported(&body)),
        };
        let dom = match t.sort() {
            Sort::Arrow(d, _) => *d,
            _ => return Err(unsupported(&body)),
        };
        let witness = Term::Sym {
            name: WITNESS_SYMBOL.to_string(),
            inst: vec![dom.clone()],
            args: vec![t],
            sort: dom,
        };
        let mid = replace_right(seq, i, vec![body.clone()]);
        let pulled = self.pull_child(&node.children[0], &mid, &step.premises[0])?;
        let inner = self.tr(&pulled, &mid)?;
        let inner = subst_explicit(&make_explicit(&inner, &mid, self.holpm)?, &x, &witness);
        let mid_h = substitute_sequent(&mid, &x, &witness);
        let front = to_front(&mid_h, i, 1);
        let inner = reindex(&inner, &mid_h, &front, self.holpm)?;
        let instance = subst_prop(&body, &x, &witness);
        let n = seq.left.len();
        let proof = ProofTree::at(Rule::NegLeft, Side::Left, n, vec![inner]).with_reducts(vec![instance.clone()]);
        Ok(ProofTree::at(Rule::NegRight, Side::Right, i, vec![proof]).with_reducts(vec![Prop::not(instance)]))
    }
}

/// Translates a cut-free `HOL` proof of a goal without the witness symbol
/// into a cut-free `HOLpm` proof of the same goal. The result is re-checked
/// by the kernel before it is returned.
pub fn hol_to_holpm(
    proof: &ProofTree,
    goal: &Sequent,
    hol: &RewriteSystem,
    holpm: &RewriteSystem,
    budget: ReachabilityBudget,
) -> Result<(ProofTree, TranslationTrace), TranslateError> {
    if goal.mentions_symbol(WITNESS_SYMBOL) {
        return Err(TranslateError::WitnessInGoal);
    }
    if !proof.is_cut_free() {
        return Err(TranslateError::CutInInput);
    }
    let report = check(proof, goal, hol, budget);
    if !report.ok() {
        let why = report.failure.map(|f| f.to_string()).unwrap_or_default();
        return Err(TranslateError::InvalidInput(why));
    }
    let explicit = make_explicit(proof, goal, hol)?;
    let mut t = Translator {
        hol,
        holpm,
        budget,
        trace: TranslationTrace {
            input_size: proof.size(),
            ..Default::default()
        },
    };
    let out = t.tr(&explicit, goal)?;
    let report = check(&out, goal, holpm, budget);
    if !report.ok() {
        let why = report.failure.map(|f| f.to_string()).unwrap_or_default();
        return Err(TranslateError::Rejected(why));
    }
    t.trace.output_size = out.size();
    Ok((out, t.trace))
}

#[cfg(test)]
mod tests;
