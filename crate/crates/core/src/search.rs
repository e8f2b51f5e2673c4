//! Depth-bounded cut-free proof search modulo a rewrite system.
//!
//! The search works bottom-up with iterative deepening. Depth counts logical
//! steps on a branch plus the closing leaf; the weakenings that trim a leaf
//! down to an axiom and the contraction in front of a non-invertible step are
//! not counted. Atoms are decomposed by head exposure: the non-atomic
//! propositions reachable by rewriting the atom at its head, at the polarity
//! of its side. Witnesses for all-left and ex-right come from the current
//! sequent's E-normal subterms, plus one layer of `H` applications when the
//! signature has the witness symbol.
//!
//! A step is applied without backtracking when it is invertible: compound
//! connectives, eigenvariable rules, and atoms whose exposure is the same
//! single proposition at both polarities. Everything else keeps its
//! principal formula by contraction and is tried in turn.
//!
//! Every proof found is re-checked by the kernel before it is returned.

use std::collections::{BTreeSet, HashMap};

use crate::kernel::{check, polarity_of, resolve, ProofTree, Rule, Verdict, ALL_RULES};
use crate::rewrite::{atomic_reach, canonical, e_normalize, head_reducts, match_term, Reach, ReachabilityBudget};
use crate::syntax::sort::{match_sort, SortSubst};
use crate::syntax::{fresh_name, Prop, Sequent, Side, Sort, Term, Var};
use crate::theory::{Polarity, RewriteSystem, WITNESS_SYMBOL};

pub const DEFAULT_DEPTH: usize = 8;
pub const DEFAULT_MAX_NODES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Proved(Box<ProofTree>),
    Exhausted,
    FuelOut,
}

impl SearchOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            SearchOutcome::Proved(_) => "proved",
            SearchOutcome::Exhausted => "exhausted",
            SearchOutcome::FuelOut => "fuel-out",
        }
    }

    pub fn proof(&self) -> Option<&ProofTree> {
        match self {
            SearchOutcome::Proved(p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Search nodes visited over all deepening rounds.
    pub nodes: usize,
    /// Deepest bound tried.
    pub max_depth: usize,
    /// Set when the kernel refused a proof the search built; the outcome is
    /// then `FuelOut`.
    pub rejected: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub max_depth: usize,
    pub budget: ReachabilityBudget,
    pub max_nodes: usize,
    /// Cut formulas the search may use; empty means cut-free.
    pub cut_candidates: Vec<Prop>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_depth: DEFAULT_DEPTH,
            budget: ReachabilityBudget::default(),
            max_nodes: DEFAULT_MAX_NODES,
            cut_candidates: Vec::new(),
        }
    }
}

pub fn prove_cutfree(goal: &Sequent, rs: &RewriteSystem, max_depth: usize, budget: ReachabilityBudget) -> SearchResult {
    prove(
        goal,
        rs,
        &SearchConfig {
            max_depth,
            budget,
            ..Default::default()
        },
    )
}

pub fn prove(goal: &Sequent, rs: &RewriteSystem, cfg: &SearchConfig) -> SearchResult {
    let mut s = Searcher {
        rs,
        cfg,
        nodes: 0,
        out_of_nodes: false,
        undecided: false,
        canon: HashMap::new(),
        exposures: HashMap::new(),
        has_witness: rs.sig.funs.contains_key(WITNESS_SYMBOL),
    };
    let mut max_depth = 0;
    for depth in 1..=cfg.max_depth.max(1) {
        max_depth = depth;
        let mut ancestors = Vec::new();
        if let Some(p) = s.search(goal, depth, &mut ancestors) {
            let report = check(&p, goal, rs, cfg.budget);
            let (outcome, rejected) = match report.verdict {
                Verdict::Valid => (SearchOutcome::Proved(Box::new(p)), None),
                _ => (SearchOutcome::FuelOut, report.failure.map(|f| f.to_string())),
            };
            return SearchResult {
                outcome,
                nodes: s.nodes,
                max_depth,
                rejected,
            };
        }
        if s.out_of_nodes {
            break;
        }
    }
    SearchResult {
        outcome: if s.out_of_nodes || s.undecided {
            SearchOutcome::FuelOut
        } else {
            SearchOutcome::Exhausted
        },
        nodes: s.nodes,
        max_depth,
        rejected: None,
    }
}

/// A candidate step: `node` with placeholder children, applied after a
/// contraction of its principal when `contract` is set. Invertible steps
/// are committed to without backtracking.
struct Move {
    node: ProofTree,
    contract: bool,
    invertible: bool,
}

type Key = (BTreeSet<Prop>, BTreeSet<Prop>);

struct Searcher<'a> {
    rs: &'a RewriteSystem,
    cfg: &'a SearchConfig,
    nodes: usize,
    out_of_nodes: bool,
    undecided: bool,
    canon: HashMap<Prop, Prop>,
    exposures: HashMap<(Prop, Polarity), Vec<Prop>>,
    has_witness: bool,
}

/// Bound on the atoms visited while exposing one atom.
const EXPOSURE_LIMIT: usize = 256;

fn placeholder(rule: Rule) -> Vec<ProofTree> {
    vec![ProofTree::axiom(); rule.arity()]
}

fn rule_rank(rule: Rule) -> usize {
    ALL_RULES.iter().position(|r| *r == rule).unwrap_or(usize::MAX)
}

/// Weakens `seq` down to `Γ[i] ⊢ Δ[j]` and closes it with an axiom.
fn weakened_axiom(seq: &Sequent, i: usize, j: usize) -> ProofTree {
    let mut steps = Vec::new();
    for k in (0..seq.left.len()).rev().filter(|k| *k != i) {
        steps.push((Rule::WeakLeft, Side::Left, k));
    }
    for k in (0..seq.right.len()).rev().filter(|k| *k != j) {
        steps.push((Rule::WeakRight, Side::Right, k));
    }
    steps
        .into_iter()
        .rev()
        .fold(ProofTree::axiom(), |p, (rule, side, k)| ProofTree::at(rule, side, k, vec![p]))
}

/// Subterms of `p` that mention no variable bound inside `p`.
fn collect_terms(p: &Prop, bound: &mut Vec<Var>, out: &mut BTreeSet<Term>) {
    match p {
        Prop::Atom(_, args) => {
            for a in args {
                let mut subs = Vec::new();
                a.subterms(&mut subs);
                for t in subs {
                    if t.free_vars().iter().all(|v| !bound.contains(v)) {
                        out.insert(t.clone());
                    }
                }
            }
        }
        Prop::Top | Prop::Bottom => {}
        Prop::Not(a) => collect_terms(a, bound, out),
        Prop::And(a, b) | Prop::Or(a, b) | Prop::Implies(a, b) => {
            collect_terms(a, bound, out);
            collect_terms(b, bound, out);
        }
        Prop::Forall(v, a) | Prop::Exists(v, a) => {
            bound.push(v.clone());
            collect_terms(a, bound, out);
            bound.pop();
        }
    }
}

fn free_names(seq: &Sequent) -> BTreeSet<String> {
    seq.free_vars().into_iter().map(|v| v.name).collect()
}

impl Searcher<'_> {
    fn canonical(&mut self, p: &Prop) -> Prop {
        if let Some(c) = self.canon.get(p) {
            return c.clone();
        }
        let c = canonical(self.rs, p, self.cfg.budget.fuel).unwrap_or_else(|_| {
            self.undecided = true;
            p.alpha_canonical()
        });
        self.canon.insert(p.clone(), c.clone());
        c
    }

    fn key(&mut self, seq: &Sequent) -> Key {
        let left = seq.left.iter().map(|p| self.canonical(p)).collect();
        let right = seq.right.iter().map(|p| self.canonical(p)).collect();
        (left, right)
    }

    /// Non-atomic propositions reachable from `atom` by head rewriting at
    /// `pol`, in discovery order.
    fn exposures(&mut self, atom: &Prop, pol: Polarity) -> Vec<Prop> {
        let key = (self.canonical(atom), pol);
        if let Some(e) = self.exposures.get(&key) {
            return e.clone();
        }
        let mut out = Vec::new();
        let mut seen = BTreeSet::from([key.0.clone()]);
        let mut queue = vec![atom.clone()];
        let mut next = 0;
        while next < queue.len() {
            if next >= EXPOSURE_LIMIT {
                self.undecided = true;
                break;
            }
            let a = queue[next].clone();
            next += 1;
            let Ok(reducts) = head_reducts(self.rs, &a, pol, self.cfg.budget.fuel) else {
                self.undecided = true;
                continue;
            };
            for (_, r) in reducts {
                if !seen.insert(self.canonical(&r)) {
                    continue;
                }
                if r.is_atomic() {
                    queue.push(r);
                } else {
                    out.push(r);
                }
            }
        }
        self.exposures.insert(key, out.clone());
        out
    }

    /// Candidate witnesses of `sort`, smallest first.
    fn witnesses(&mut self, seq: &Sequent, sort: &Sort) -> Vec<Term> {
        let mut terms = BTreeSet::new();
        for p in seq.formulas() {
            collect_terms(p, &mut Vec::new(), &mut terms);
        }
        let normal: BTreeSet<Term> = terms
            .iter()
            .filter_map(|t| e_normalize(self.rs, t, self.cfg.budget.fuel).ok())
            .collect();
        let mut out: Vec<Term> = normal.iter().filter(|t| t.sort() == *sort).cloned().collect();
        if self.has_witness {
            if let Some((args, result)) = self.rs.sig.fun_rank(WITNESS_SYMBOL, std::slice::from_ref(sort)) {
                for f in normal.iter().filter(|f| args == [f.sort()] && result == *sort) {
                    out.push(Term::Sym {
                        name: WITNESS_SYMBOL.to_string(),
                        inst: vec![sort.clone()],
                        args: vec![f.clone()],
                        sort: result.clone(),
                    });
                }
            }
        }
        out.sort_by_cached_key(|t| (t.size(), t.to_string()));
        out.dedup();
        if out.is_empty() {
            out.push(Term::var(&fresh_name("w", &free_names(seq)), sort.clone()));
        }
        out
    }

    fn close(&mut self, seq: &Sequent) -> Option<ProofTree> {
        for (i, a) in seq.left.iter().enumerate().filter(|(_, a)| a.is_atomic()) {
            for (j, b) in seq.right.iter().enumerate().filter(|(_, b)| b.is_atomic()) {
                match atomic_reach(self.rs, a, b, self.cfg.budget) {
                    Reach::Reachable => return Some(weakened_axiom(seq, i, j)),
                    Reach::Undecided => self.undecided = true,
                    Reach::Unreachable => {}
                }
            }
        }
        for (j, b) in seq.right.iter().enumerate() {
            if *b == Prop::Top || (b.is_atomic() && self.exposures(b, Polarity::Positive).contains(&Prop::Top)) {
                return Some(ProofTree::leaf(Rule::TopRight, Some((Side::Right, j))));
            }
        }
        for (i, a) in seq.left.iter().enumerate() {
            if *a == Prop::Bottom || (a.is_atomic() && self.exposures(a, Polarity::Negative).contains(&Prop::Bottom)) {
                return Some(ProofTree::leaf(Rule::BotLeft, Some((Side::Left, i))));
            }
        }
        None
    }

    /// Steps decomposing `shape`, which is the formula at `(side, i)` itself
    /// or, when `explicit`, one of its exposures.
    fn shape_moves(&mut self, seq: &Sequent, side: Side, i: usize, shape: &Prop, explicit: bool, keep: bool) -> Vec<Move> {
        let at = |rule: Rule| ProofTree::new(rule, Some((side, i)), placeholder(rule));
        let with = |node: ProofTree, reducts: Vec<Prop>| if explicit { node.with_reducts(reducts) } else { node };
        let one = |node: ProofTree| {
            vec![Move {
                node,
                contract: keep,
                invertible: !keep,
            }]
        };
        let pair = |b: &Prop, c: &Prop| vec![b.clone(), c.clone()];
        match (side, shape) {
            (Side::Left, Prop::Not(b)) => one(with(at(Rule::NegLeft), vec![(**b).clone()])),
            (Side::Right, Prop::Not(b)) => one(with(at(Rule::NegRight), vec![(**b).clone()])),
            (Side::Left, Prop::And(b, c)) => one(with(at(Rule::AndLeft), pair(b, c))),
            (Side::Right, Prop::And(b, c)) => one(with(at(Rule::AndRight), pair(b, c))),
            (Side::Left, Prop::Or(b, c)) => one(with(at(Rule::OrLeft), pair(b, c))),
            (Side::Right, Prop::Or(b, c)) => one(with(at(Rule::OrRight), pair(b, c))),
            (Side::Left, Prop::Implies(b, c)) => one(with(at(Rule::ImpLeft), pair(b, c))),
            (Side::Right, Prop::Implies(b, c)) => one(with(at(Rule::ImpRight), pair(b, c))),
            (Side::Right, Prop::Forall(y, b)) | (Side::Left, Prop::Exists(y, b)) => {
                let rule = if side == Side::Right { Rule::AllRight } else { Rule::ExLeft };
                let names = free_names(seq);
                let z = if names.contains(&y.name) {
                    Var::new(&fresh_name(&y.name, &names), y.sort.clone())
                } else {
                    y.clone()
                };
                let Ok(body) = b.substitute(y, &Term::Var(z.clone())) else { return vec![] };
                one(with(at(rule).with_var(z), vec![body]))
            }
            (Side::Left, Prop::Forall(y, b)) | (Side::Right, Prop::Exists(y, b)) => {
                let rule = if side == Side::Left { Rule::AllLeft } else { Rule::ExRight };
                self.witnesses(seq, &y.sort)
                    .into_iter()
                    .map(|t| Move {
                        node: with(at(rule).with_var(y.clone()).with_term(t), vec![(**b).clone()]),
                        contract: true,
                        invertible: false,
                    })
                    .collect()
            }
            _ => vec![],
        }
    }

    fn moves_at(&mut self, seq: &Sequent, side: Side, i: usize) -> Vec<Move> {
        let a = seq.side(side)[i].clone();
        if !a.is_atomic() {
            return self.shape_moves(seq, side, i, &a, false, false);
        }
        let pol = polarity_of(side);
        let exps = self.exposures(&a, pol);
        // an atom with one exposure shared by both polarities is equivalent
        // to it, so decomposing it loses nothing
        let symmetric = exps.len() == 1 && {
            let other = self.exposures(&a, pol.flip());
            other.len() == 1 && self.canonical(&other[0]) == self.canonical(&exps[0])
        };
        let mut out = Vec::new();
        for e in &exps {
            out.extend(self.shape_moves(seq, side, i, e, true, !symmetric));
        }
        out
    }

    fn moves(&mut self, seq: &Sequent) -> Vec<Move> {
        let mut out = Vec::new();
        for side in [Side::Left, Side::Right] {
            for i in 0..seq.side(side).len() {
                out.extend(self.moves_at(seq, side, i));
            }
        }
        out.sort_by_key(|m| rule_rank(m.node.rule));
        for c in &self.cfg.cut_candidates {
            out.push(Move {
                node: ProofTree::new(Rule::Cut, None, placeholder(Rule::Cut)).with_cut(c.clone()),
                contract: false,
                invertible: false,
            });
        }
        out
    }

    fn apply(&mut self, seq: &Sequent, m: &Move, depth: usize, ancestors: &mut Vec<Key>) -> Option<ProofTree> {
        let (start, contraction) = if m.contract {
            let (side, i) = m.node.principal?;
            let rule = if side == Side::Left { Rule::ContrLeft } else { Rule::ContrRight };
            let c = ProofTree::at(rule, side, i, placeholder(rule));
            let step = resolve(&c, seq, self.rs).ok()?;
            (step.premises.into_iter().next()?, Some(c))
        } else {
            (seq.clone(), None)
        };
        let step = resolve(&m.node, &start, self.rs).ok()?;
        let mut children = Vec::with_capacity(step.premises.len());
        for prem in &step.premises {
            children.push(self.search(prem, depth - 1, ancestors)?);
        }
        let mut node = m.node.clone();
        node.children = children;
        Some(match contraction {
            Some(mut c) => {
                c.children = vec![node];
                c
            }
            None => node,
        })
    }

    fn search(&mut self, seq: &Sequent, depth: usize, ancestors: &mut Vec<Key>) -> Option<ProofTree> {
        self.nodes += 1;
        if self.nodes > self.cfg.max_nodes {
            self.out_of_nodes = true;
            return None;
        }
        if depth == 0 {
            return None;
        }
        if let Some(p) = self.close(seq) {
            return Some(p);
        }
        if depth == 1 {
            return None;
        }
        let key = self.key(seq);
        if ancestors.contains(&key) {
            return None;
        }
        ancestors.push(key);
        let moves = self.moves(seq);
        let result = match moves.iter().find(|m| m.invertible) {
            Some(m) => self.apply(seq, m, depth, ancestors),
            None => moves.iter().find_map(|m| {
                if self.out_of_nodes {
                    return None;
                }
                self.apply(seq, m, depth, ancestors)
            }),
        };
        ancestors.pop();
        result
    }
}

fn binary(p: &Prop) -> Option<(u8, &Prop, &Prop)> {
    match p {
        Prop::And(a, b) => Some((0, a, b)),
        Prop::Or(a, b) => Some((1, a, b)),
        Prop::Implies(a, b) => Some((2, a, b)),
        _ => None,
    }
}

/// Matches a schema side against `target`. Binders are matched by opening
/// both bodies with a shared fresh variable `#mN`.
fn match_prop(pat: &Prop, target: &Prop, vsub: &mut HashMap<Var, Term>, ssub: &mut SortSubst, fresh: &mut usize) -> bool {
    match (pat, target) {
        (Prop::Atom(p, xs), Prop::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, vsub, ssub))
        }
        (Prop::Top, Prop::Top) | (Prop::Bottom, Prop::Bottom) => true,
        (Prop::Not(a), Prop::Not(b)) => match_prop(a, b, vsub, ssub, fresh),
        (Prop::Forall(v, a), Prop::Forall(w, b)) | (Prop::Exists(v, a), Prop::Exists(w, b)) => {
            if std::mem::discriminant(pat) != std::mem::discriminant(target) || !match_sort(&v.sort, &w.sort, ssub) {
                return false;
            }
            *fresh += 1;
            let z = Var::new(&format!("#m{fresh}"), w.sort.clone());
            let zp = Var::new(&z.name, v.sort.clone());
            let (Ok(a), Ok(b)) = (a.substitute(v, &Term::Var(zp.clone())), b.substitute(w, &Term::Var(z.clone()))) else {
                return false;
            };
            vsub.insert(zp, Term::Var(z));
            match_prop(&a, &b, vsub, ssub, fresh)
        }
        _ => match (binary(pat), binary(target)) {
            (Some((k, a, b)), Some((l, c, d))) => {
                k == l && match_prop(a, c, vsub, ssub, fresh) && match_prop(b, d, vsub, ssub, fresh)
            }
            _ => false,
        },
    }
}

/// Atoms `P` with a rule `P → target`, at either polarity.
fn expansions(rs: &RewriteSystem, target: &Prop) -> Vec<Prop> {
    let mut out = Vec::new();
    for rule in rs.all_rules() {
        let (mut vsub, mut ssub, mut fresh) = (HashMap::new(), SortSubst::new(), 0);
        if !match_prop(&rule.rhs, target, &mut vsub, &mut ssub, &mut fresh) {
            continue;
        }
        let opened = |t: &Term| t.free_vars().iter().any(|v| v.name.starts_with('#'));
        let mut s = HashMap::new();
        for (v, t) in vsub {
            if v.name.starts_with('#') {
                continue;
            }
            if opened(&t) {
                s.clear();
                break;
            }
            s.insert(Var::new(&v.name, v.sort.resolve(&ssub)), t);
        }
        let lhs = rule.lhs.subst_sorts(&ssub);
        if lhs.free_vars().iter().all(|v| s.contains_key(v)) {
            out.push(lhs.subst(&s));
        }
    }
    out
}

fn subformulas(p: &Prop, bound: &mut Vec<Var>, out: &mut Vec<Prop>) {
    if p.free_vars().iter().all(|v| !bound.contains(v)) {
        out.push(p.clone());
    }
    match p {
        Prop::Atom(..) | Prop::Top | Prop::Bottom => {}
        Prop::Not(a) => subformulas(a, bound, out),
        Prop::And(a, b) | Prop::Or(a, b) | Prop::Implies(a, b) => {
            subformulas(a, bound, out);
            subformulas(b, bound, out);
        }
        Prop::Forall(v, a) | Prop::Exists(v, a) => {
            bound.push(v.clone());
            subformulas(a, bound, out);
            bound.pop();
        }
    }
}

/// Default cut formulas: the goal's atoms, their one-step head reducts, and
/// the atoms rewriting in one step to a subformula of the goal.
pub fn cut_candidates(goal: &Sequent, rs: &RewriteSystem, budget: ReachabilityBudget) -> Vec<Prop> {
    let mut subs = Vec::new();
    for p in goal.formulas() {
        subformulas(p, &mut Vec::new(), &mut subs);
    }
    let mut out = Vec::new();
    for f in &subs {
        if f.is_atomic() {
            out.push(f.clone());
            for pol in [Polarity::Negative, Polarity::Positive] {
                if let Ok(rs) = head_reducts(rs, f, pol, budget.fuel) {
                    out.extend(rs.into_iter().map(|(_, p)| p));
                }
            }
        }
        out.extend(expansions(rs, f));
    }
    let mut seen = BTreeSet::new();
    out.retain(|p| seen.insert(canonical(rs, p, budget.fuel).unwrap_or_else(|_| p.alpha_canonical())));
    out.sort_by_cached_key(|p| (p.size(), p.to_string()));
    out
}

#[cfg(test)]
mod tests;
