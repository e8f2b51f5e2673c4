//! Checker for annotated derivations of the polarized sequent calculus
//! modulo a rewrite system.
//!
//! Each node names its rule, the position of its principal formula `A` and
//! the reducts of `A` it relies on. The kernel rebuilds the premises from
//! these annotations and discharges every side condition with
//! [`crate::rewrite::reaches`] at the polarity of `A`'s side.

mod format;

use std::collections::BTreeSet;
use std::fmt;

pub use format::{parse_proof, parse_proof_file, print_proof, ProofParseError};

use crate::rewrite::{atomic_reach, reaches, Polarity, Reach, ReachabilityBudget};
use crate::syntax::{check_prop, sort_of, Prop, Sequent, Side, Term, Var};
use crate::theory::RewriteSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Axiom,
    Cut,
    ContrLeft,
    ContrRight,
    WeakLeft,
    WeakRight,
    TopRight,
    BotLeft,
    NegLeft,
    NegRight,
    AndLeft,
    AndRight,
    OrLeft,
    OrRight,
    ImpLeft,
    ImpRight,
    AllLeft,
    AllRight,
    ExLeft,
    ExRight,
}

pub const ALL_RULES: [Rule; 20] = [
    Rule::Axiom,
    Rule::Cut,
    Rule::ContrLeft,
    Rule::ContrRight,
    Rule::WeakLeft,
    Rule::WeakRight,
    Rule::TopRight,
    Rule::BotLeft,
    Rule::NegLeft,
    Rule::NegRight,
    Rule::AndLeft,
    Rule::AndRight,
    Rule::OrLeft,
    Rule::OrRight,
    Rule::ImpLeft,
    Rule::ImpRight,
    Rule::AllLeft,
    Rule::AllRight,
    Rule::ExLeft,
    Rule::ExRight,
];

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Axiom => "axiom",
            Rule::Cut => "cut",
            Rule::ContrLeft => "contr-left",
            Rule::ContrRight => "contr-right",
            Rule::WeakLeft => "weak-left",
            Rule::WeakRight => "weak-right",
            Rule::TopRight => "top-right",
            Rule::BotLeft => "bot-left",
            Rule::NegLeft => "neg-left",
            Rule::NegRight => "neg-right",
            Rule::AndLeft => "and-left",
            Rule::AndRight => "and-right",
            Rule::OrLeft => "or-left",
            Rule::OrRight => "or-right",
            Rule::ImpLeft => "imp-left",
            Rule::ImpRight => "imp-right",
            Rule::AllLeft => "all-left",
            Rule::AllRight => "all-right",
            Rule::ExLeft => "ex-left",
            Rule::ExRight => "ex-right",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        ALL_RULES.iter().copied().find(|r| r.name() == name)
    }

    /// Number of premises.
    pub fn arity(self) -> usize {
        match self {
            Rule::Axiom | Rule::TopRight | Rule::BotLeft => 0,
            Rule::Cut | Rule::AndRight | Rule::OrLeft | Rule::ImpLeft => 2,
            _ => 1,
        }
    }

    /// Side of the principal formula; `None` for axiom and cut.
    pub fn side(self) -> Option<Side> {
        match self {
            Rule::Axiom | Rule::Cut => None,
            Rule::ContrLeft
            | Rule::WeakLeft
            | Rule::BotLeft
            | Rule::NegLeft
            | Rule::AndLeft
            | Rule::OrLeft
            | Rule::ImpLeft
            | Rule::AllLeft
            | Rule::ExLeft => Some(Side::Left),
            _ => Some(Side::Right),
        }
    }

    /// Rules whose annotation includes a bound variable.
    pub fn is_quantifier(self) -> bool {
        matches!(self, Rule::AllLeft | Rule::AllRight | Rule::ExLeft | Rule::ExRight)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn polarity_of(side: Side) -> Polarity {
    match side {
        Side::Left => Polarity::Negative,
        Side::Right => Polarity::Positive,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub rule: Rule,
    pub principal: Option<(Side, usize)>,
    /// Reducts of the principal formula; rule-specific meaning, see
    /// [`resolve`]. Empty means the reflexive default.
    pub reducts: Vec<Prop>,
    /// Cut formula.
    pub cut: Option<Prop>,
    /// Bound variable of a quantifier rule.
    pub var: Option<Var>,
    /// Witness of all-left / ex-right.
    pub term: Option<Term>,
    pub children: Vec<ProofTree>,
}

impl ProofTree {
    pub fn new(rule: Rule, principal: Option<(Side, usize)>, children: Vec<ProofTree>) -> Self {
        ProofTree {
            rule,
            principal,
            reducts: Vec::new(),
            cut: None,
            var: None,
            term: None,
            children,
        }
    }

    pub fn leaf(rule: Rule, principal: Option<(Side, usize)>) -> Self {
        ProofTree::new(rule, principal, Vec::new())
    }

    pub fn axiom() -> Self {
        ProofTree::leaf(Rule::Axiom, None)
    }

    pub fn at(rule: Rule, side: Side, index: usize, children: Vec<ProofTree>) -> Self {
        ProofTree::new(rule, Some((side, index)), children)
    }

    pub fn with_reducts(mut self, reducts: Vec<Prop>) -> Self {
        self.reducts = reducts;
        self
    }

    pub fn with_var(mut self, v: Var) -> Self {
        self.var = Some(v);
        self
    }

    pub fn with_term(mut self, t: Term) -> Self {
        self.term = Some(t);
        self
    }

    pub fn with_cut(mut self, p: Prop) -> Self {
        self.cut = Some(p);
        self
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn is_cut_free(&self) -> bool {
        self.rule != Rule::Cut && self.children.iter().all(ProofTree::is_cut_free)
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    pub fn mentions_symbol(&self, sym: &str) -> bool {
        self.reducts.iter().any(|p| p.mentions_symbol(sym))
            || self.cut.as_ref().is_some_and(|p| p.mentions_symbol(sym))
            || self.term.as_ref().is_some_and(|t| t.mentions_symbol(sym))
            || self.children.iter().any(|c| c.mentions_symbol(sym))
    }

    /// Counts nodes per rule name.
    pub fn rule_counts(&self, out: &mut std::collections::BTreeMap<&'static str, usize>) {
        *out.entry(self.rule.name()).or_default() += 1;
        for c in &self.children {
            c.rule_counts(out);
        }
    }
}

pub fn proof_size(p: &ProofTree) -> usize {
    p.size()
}

pub fn is_cut_free(p: &ProofTree) -> bool {
    p.is_cut_free()
}

fn replace_at<T: Clone>(xs: &[T], i: usize, with: &[T]) -> Vec<T> {
    let mut out = xs[..i].to_vec();
    out.extend_from_slice(with);
    out.extend_from_slice(&xs[i + 1..]);
    out
}

fn push_back<T: Clone>(xs: &[T], x: &T) -> Vec<T> {
    let mut out = xs.to_vec();
    out.push(x.clone());
    out
}

fn push_front<T: Clone>(x: &T, xs: &[T]) -> Vec<T> {
    let mut out = vec![x.clone()];
    out.extend_from_slice(xs);
    out
}

/// Premise sides of `rule` applied at `index` of the conclusion
/// `(left, right)`, where `new` are the formulas the rule introduces in its
/// premises, in rule order (`B`, `C` as in the rule table; for all-left and
/// ex-right the single instance `C`). Generic so that callers can track
/// where each conclusion position ends up.
pub fn layout<T: Clone>(rule: Rule, index: usize, left: &[T], right: &[T], new: &[T]) -> Vec<(Vec<T>, Vec<T>)> {
    let i = index;
    match rule {
        Rule::Axiom | Rule::TopRight | Rule::BotLeft => vec![],
        Rule::Cut => vec![
            (push_back(left, &new[0]), right.to_vec()),
            (left.to_vec(), push_front(&new[1], right)),
        ],
        Rule::ContrLeft | Rule::AndLeft => vec![(replace_at(left, i, &new[..2]), right.to_vec())],
        Rule::ContrRight | Rule::OrRight => vec![(left.to_vec(), replace_at(right, i, &new[..2]))],
        Rule::WeakLeft => vec![(replace_at(left, i, &[]), right.to_vec())],
        Rule::WeakRight => vec![(left.to_vec(), replace_at(right, i, &[]))],
        Rule::NegLeft => vec![(replace_at(left, i, &[]), push_front(&new[0], right))],
        Rule::NegRight => vec![(push_back(left, &new[0]), replace_at(right, i, &[]))],
        Rule::AndRight => vec![
            (left.to_vec(), replace_at(right, i, &new[..1])),
            (left.to_vec(), replace_at(right, i, &new[1..2])),
        ],
        Rule::OrLeft => vec![
            (replace_at(left, i, &new[..1]), right.to_vec()),
            (replace_at(left, i, &new[1..2]), right.to_vec()),
        ],
        Rule::ImpLeft => vec![
            (replace_at(left, i, &[]), push_front(&new[0], right)),
            (replace_at(left, i, &new[1..2]), right.to_vec()),
        ],
        Rule::ImpRight => vec![(push_back(left, &new[0]), replace_at(right, i, &new[1..2]))],
        Rule::AllLeft | Rule::ExLeft => vec![(replace_at(left, i, &new[..1]), right.to_vec())],
        Rule::AllRight | Rule::ExRight => vec![(left.to_vec(), replace_at(right, i, &new[..1]))],
    }
}

/// A reachability side condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obligation {
    Reaches { from: Prop, to: Prop, pol: Polarity },
    /// `left →−* P` and `right →+* P` for some atomic `P` (given or not).
    Atomic { left: Prop, right: Prop, via: Option<Prop> },
}

/// A node with every default made explicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub principal: Option<Prop>,
    /// Formulas introduced in the premises, in [`layout`] order.
    pub new: Vec<Prop>,
    /// Explicit reducts as they would be annotated.
    pub reducts: Vec<Prop>,
    pub var: Option<Var>,
    pub obligations: Vec<Obligation>,
    pub premises: Vec<Sequent>,
}

/// Structural failure of a node before any reachability question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeError {
    pub reason: String,
    pub props: Vec<Prop>,
}

fn node_err<T>(reason: impl Into<String>, props: Vec<Prop>) -> Result<T, NodeError> {
    Err(NodeError {
        reason: reason.into(),
        props,
    })
}

/// `A`'s quantifier variable and body, renamed to `x` when one is given.
fn quantifier_parts(a: &Prop, want_forall: bool, x: Option<&Var>) -> Option<(Var, Prop)> {
    let (v, body) = match (a, want_forall) {
        (Prop::Forall(v, b), true) | (Prop::Exists(v, b), false) => (v, b),
        _ => return None,
    };
    match x {
        None => Some((v.clone(), (**body).clone())),
        Some(x) if x == v => Some((v.clone(), (**body).clone())),
        Some(x) if x.sort == v.sort && !body.free_vars().contains(x) => {
            let b = body.substitute(v, &Term::Var(x.clone())).ok()?;
            Some((x.clone(), b))
        }
        Some(_) => None,
    }
}

/// Makes every default explicit and computes premises and side conditions.
pub fn resolve(node: &ProofTree, seq: &Sequent, rs: &RewriteSystem) -> Result<Step, NodeError> {
    let rule = node.rule;
    if node.children.len() != rule.arity() {
        return node_err(
            format!("{rule} needs {} premise(s), found {}", rule.arity(), node.children.len()),
            vec![],
        );
    }
    for p in node.reducts.iter().chain(node.cut.iter()) {
        if let Err(e) = check_prop(p, &rs.sig) {
            return node_err(format!("ill-sorted annotation: {e}"), vec![p.clone()]);
        }
    }
    let mut step = Step {
        principal: None,
        new: Vec::new(),
        reducts: Vec::new(),
        var: None,
        obligations: Vec::new(),
        premises: Vec::new(),
    };

    match rule {
        Rule::Axiom => {
            if seq.left.len() != 1 || seq.right.len() != 1 {
                return node_err("axiom needs exactly one formula on each side", vec![]);
            }
            let via = match node.reducts.as_slice() {
                [] => None,
                [p] if p.is_atomic() => Some(p.clone()),
                [p] => return node_err("axiom meeting point is not atomic", vec![p.clone()]),
                _ => return node_err("axiom takes at most one reduct", node.reducts.clone()),
            };
            step.reducts = via.iter().cloned().collect();
            step.obligations.push(Obligation::Atomic {
                left: seq.left[0].clone(),
                right: seq.right[0].clone(),
                via,
            });
            return Ok(step);
        }
        Rule::Cut => {
            let Some(a) = node.cut.clone() else {
                return node_err("cut needs a cut formula", vec![]);
            };
            let (b, c) = match node.reducts.as_slice() {
                [] => (a.clone(), a.clone()),
                [b, c] => (b.clone(), c.clone()),
                _ => return node_err("cut takes zero or two reducts", node.reducts.clone()),
            };
            step.obligations.push(Obligation::Reaches {
                from: a.clone(),
                to: b.clone(),
                pol: Polarity::Negative,
            });
            step.obligations.push(Obligation::Reaches {
                from: a.clone(),
                to: c.clone(),
                pol: Polarity::Positive,
            });
            step.principal = Some(a);
            step.reducts = vec![b.clone(), c.clone()];
            step.new = vec![b, c];
            step.premises = premises_of(rule, 0, seq, &step.new);
            return Ok(step);
        }
        _ => {}
    }

    let side = rule.side().unwrap();
    let Some((pside, index)) = node.principal else {
        return node_err(format!("{rule} needs a principal position"), vec![]);
    };
    if pside != side {
        return node_err(format!("{rule} acts on side {side}, annotation says {pside}"), vec![]);
    }
    let Some(a) = seq.get(side, index).cloned() else {
        return node_err(format!("position {side} {index} out of range"), vec![]);
    };
    let pol = polarity_of(side);
    let reach = |to: Prop| Obligation::Reaches {
        from: a.clone(),
        to,
        pol,
    };
    let two = |shape: fn(&Prop) -> Option<(Prop, Prop)>| -> Result<(Prop, Prop), NodeError> {
        match node.reducts.as_slice() {
            [b, c] => Ok((b.clone(), c.clone())),
            [] => shape(&a).map_or_else(
                || node_err(format!("{rule} on a formula of the wrong shape needs explicit reducts"), vec![a.clone()]),
                Ok,
            ),
            _ => node_err(format!("{rule} takes zero or two reducts"), node.reducts.clone()),
        }
    };

    match rule {
        Rule::ContrLeft | Rule::ContrRight => {
            let (b, c) = two(|a| Some((a.clone(), a.clone())))?;
            step.obligations.push(reach(b.clone()));
            step.obligations.push(reach(c.clone()));
            step.new = vec![b, c];
            step.reducts = step.new.clone();
        }
        Rule::WeakLeft | Rule::WeakRight => {
            if !node.reducts.is_empty() {
                return node_err("weakening takes no reducts", node.reducts.clone());
            }
        }
        Rule::TopRight | Rule::BotLeft => {
            if !node.reducts.is_empty() {
                return node_err(format!("{rule} takes no reducts"), node.reducts.clone());
            }
            step.obligations
                .push(reach(if rule == Rule::TopRight { Prop::Top } else { Prop::Bottom }));
        }
        Rule::NegLeft | Rule::NegRight => {
            let b = match (node.reducts.as_slice(), &a) {
                ([b], _) => b.clone(),
                ([], Prop::Not(b)) => (**b).clone(),
                ([], _) => return node_err(format!("{rule} on a non-negation needs a reduct"), vec![a.clone()]),
                _ => return node_err(format!("{rule} takes at most one reduct"), node.reducts.clone()),
            };
            step.obligations.push(reach(Prop::not(b.clone())));
            step.new = vec![b];
            step.reducts = step.new.clone();
        }
        Rule::AndLeft | Rule::AndRight | Rule::OrLeft | Rule::OrRight | Rule::ImpLeft | Rule::ImpRight => {
            let (b, c, whole): (Prop, Prop, fn(Prop, Prop) -> Prop) = match rule {
                Rule::AndLeft | Rule::AndRight => {
                    let (b, c) = two(|a| match a {
                        Prop::And(b, c) => Some(((**b).clone(), (**c).clone())),
                        _ => None,
                    })?;
                    (b, c, Prop::and)
                }
                Rule::OrLeft | Rule::OrRight => {
                    let (b, c) = two(|a| match a {
                        Prop::Or(b, c) => Some(((**b).clone(), (**c).clone())),
                        _ => None,
                    })?;
                    (b, c, Prop::or)
                }
                _ => {
                    let (b, c) = two(|a| match a {
                        Prop::Implies(b, c) => Some(((**b).clone(), (**c).clone())),
                        _ => None,
                    })?;
                    (b, c, Prop::implies)
                }
            };
            step.obligations.push(reach(whole(b.clone(), c.clone())));
            step.new = vec![b, c];
            step.reducts = step.new.clone();
        }
        Rule::AllLeft | Rule::ExRight | Rule::AllRight | Rule::ExLeft => {
            let forall = matches!(rule, Rule::AllLeft | Rule::AllRight);
            let (x, b) = match node.reducts.first() {
                Some(b) => {
                    let Some(x) = node.var.clone() else {
                        return node_err(format!("{rule} with an explicit body needs its variable"), vec![b.clone()]);
                    };
                    (x, b.clone())
                }
                None => match quantifier_parts(&a, forall, node.var.as_ref()) {
                    Some(p) => p,
                    None => {
                        return node_err(format!("{rule} on a formula of the wrong shape needs explicit reducts"), vec![a.clone()])
                    }
                },
            };
            let quantified = if forall { Prop::forall(x.clone(), b.clone()) } else { Prop::exists(x.clone(), b.clone()) };
            step.obligations.push(reach(quantified));
            let instance_rule = matches!(rule, Rule::AllLeft | Rule::ExRight);
            if instance_rule {
                let Some(t) = node.term.clone() else {
                    return node_err(format!("{rule} needs a witness term"), vec![]);
                };
                match sort_of(&t, &rs.sig) {
                    Ok(s) if s == x.sort => {}
                    Ok(s) => {
                        return node_err(format!("witness {t} has sort {s}, variable {} has sort {}", x.name, x.sort), vec![])
                    }
                    Err(e) => return node_err(format!("ill-sorted witness: {e}"), vec![]),
                }
                let inst = b.substitute(&x, &t).expect("sorts checked");
                let c = match node.reducts.as_slice() {
                    [] | [_] => inst.clone(),
                    [_, c] => c.clone(),
                    _ => return node_err(format!("{rule} takes at most two reducts"), node.reducts.clone()),
                };
                if c != inst {
                    step.obligations.push(Obligation::Reaches {
                        from: inst,
                        to: c.clone(),
                        pol,
                    });
                }
                step.reducts = vec![b, c.clone()];
                step.new = vec![c];
            } else {
                if node.reducts.len() > 1 {
                    return node_err(format!("{rule} takes at most one reduct"), node.reducts.clone());
                }
                let others = seq.free_vars_except((side, index));
                if others.iter().any(|v| v.name == x.name) {
                    return node_err(format!("eigenvariable {} occurs free in the conclusion", x.name), vec![]);
                }
                step.reducts = vec![b.clone()];
                step.new = vec![b];
            }
            step.var = Some(x);
        }
        Rule::Axiom | Rule::Cut => unreachable!(),
    }
    step.principal = Some(a);
    step.premises = premises_of(rule, index, seq, &step.new);
    Ok(step)
}

fn premises_of(rule: Rule, index: usize, seq: &Sequent, new: &[Prop]) -> Vec<Sequent> {
    layout(rule, index, &seq.left, &seq.right, new)
        .into_iter()
        .map(|(l, r)| Sequent::new(l, r))
        .collect()
}

/// Discharges one obligation.
pub fn discharge(ob: &Obligation, rs: &RewriteSystem, budget: ReachabilityBudget) -> Reach {
    match ob {
        Obligation::Reaches { from, to, pol } => reaches(rs, from, to, *pol, budget),
        Obligation::Atomic { left, right, via: None } => atomic_reach(rs, left, right, budget),
        Obligation::Atomic {
            left,
            right,
            via: Some(p),
        } => match reaches(rs, left, p, Polarity::Negative, budget) {
            Reach::Reachable => reaches(rs, right, p, Polarity::Positive, budget),
            other => other,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// Child indices from the root to the failing node.
    pub path: Vec<usize>,
    pub rule: Rule,
    pub reason: String,
    pub props: Vec<Prop>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(usize::to_string).collect();
        write!(f, "at [{}] {}: {}", path.join("."), self.rule, self.reason)?;
        for p in &self.props {
            write!(f, "; {p}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub size: usize,
    pub failure: Option<Failure>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.verdict == Verdict::Valid
    }
}

fn check_node(
    node: &ProofTree,
    seq: &Sequent,
    rs: &RewriteSystem,
    budget: ReachabilityBudget,
    path: &mut Vec<usize>,
) -> Result<(), (Verdict, Failure)> {
    let fail = |verdict, reason: String, props: Vec<Prop>, path: &[usize]| {
        (
            verdict,
            Failure {
                path: path.to_vec(),
                rule: node.rule,
                reason,
                props,
            },
        )
    };
    let step = resolve(node, seq, rs).map_err(|e| fail(Verdict::Invalid, e.reason, e.props, path))?;
    for ob in &step.obligations {
        let r = discharge(ob, rs, budget);
        if r != Reach::Reachable {
            let (what, props) = match ob {
                Obligation::Reaches { from, to, pol } => {
                    (format!("{from} does not reach {to} at {pol} polarity"), vec![from.clone(), to.clone()])
                }
                Obligation::Atomic { left, right, .. } => {
                    (format!("no common atomic reduct of {left} and {right}"), vec![left.clone(), right.clone()])
                }
            };
            let (verdict, reason) = if r == Reach::Undecided {
                (Verdict::Undecided, format!("budget exhausted deciding whether {what}"))
            } else {
                (Verdict::Invalid, what)
            };
            return Err(fail(verdict, reason, props, path));
        }
    }
    for (k, (child, prem)) in node.children.iter().zip(&step.premises).enumerate() {
        path.push(k);
        check_node(child, prem, rs, budget, path)?;
        path.pop();
    }
    Ok(())
}

/// Checks that `proof` derives `goal` modulo `rs`.
pub fn check(proof: &ProofTree, goal: &Sequent, rs: &RewriteSystem, budget: ReachabilityBudget) -> CheckReport {
    let size = proof.size();
    match check_node(proof, goal, rs, budget, &mut Vec::new()) {
        Ok(()) => CheckReport {
            verdict: Verdict::Valid,
            size,
            failure: None,
        },
        Err((verdict, failure)) => CheckReport {
            verdict,
            size,
            failure: Some(failure),
        },
    }
}

/// Free variables of every annotation in the tree that are not bound by an
/// enclosing quantifier node.
pub fn annotation_vars(proof: &ProofTree, out: &mut BTreeSet<Var>) {
    for p in proof.reducts.iter().chain(proof.cut.iter()) {
        out.extend(p.free_vars());
    }
    if let Some(t) = &proof.term {
        out.extend(t.free_vars());
    }
    if let Some(v) = &proof.var {
        out.insert(v.clone());
    }
    for c in &proof.children {
        annotation_vars(c, out);
    }
}

#[cfg(test)]
mod tests;
