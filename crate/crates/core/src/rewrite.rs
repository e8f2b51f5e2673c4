//! `=_E` by oriented innermost normalization, polarized one-step rewriting,
//! and the reachability relations `→−*` / `→+*`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::syntax::sort::{match_sort, SortSubst};
use crate::syntax::{Prop, Term, Var};
use crate::theory::{PropRuleSchema, RewriteSystem};

pub use crate::theory::Polarity;

type AtomSteps<'a> = dyn FnMut(&Prop, Polarity) -> Result<Vec<(String, Prop)>, RewriteError> + 'a;

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReachabilityBudget {
    pub fuel: usize,
}

impl Default for ReachabilityBudget {
    fn default() -> Self {
        ReachabilityBudget { fuel: DEFAULT_FUEL }
    }
}

impl ReachabilityBudget {
    pub fn new(fuel: usize) -> Self {
        ReachabilityBudget { fuel }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("fuel exhausted after {steps} rewrite steps; partial reduct {partial}")]
    FuelExhausted { steps: usize, partial: Term },
}

/// Outcome of a bounded reachability query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reach {
    Reachable,
    Unreachable,
    /// The budget ran out before the question was settled.
    Undecided,
}

impl Reach {
    pub fn holds(self) -> bool {
        self == Reach::Reachable
    }
}

/// First-order matching of `pattern` against `target`. Every variable of the
/// pattern is schematic; sort metavariables of the pattern bind in `ssub`.
pub fn match_term(pattern: &Term, target: &Term, vsub: &mut HashMap<Var, Term>, ssub: &mut SortSubst) -> bool {
    match (pattern, target) {
        (Term::Var(v), _) => {
            if !match_sort(&v.sort, &target.sort(), ssub) {
                return false;
            }
            match vsub.get(v) {
                Some(bound) => bound == target,
                None => {
                    vsub.insert(v.clone(), target.clone());
                    true
                }
            }
        }
        (
            Term::Sym { name, inst, args, sort },
            Term::Sym {
                name: n2,
                inst: i2,
                args: a2,
                sort: s2,
            },
        ) => {
            name == n2
                && inst.len() == i2.len()
                && args.len() == a2.len()
                && inst.iter().zip(i2).all(|(p, t)| match_sort(p, t, ssub))
                && match_sort(sort, s2, ssub)
                && args.iter().zip(a2).all(|(p, t)| match_term(p, t, vsub, ssub))
        }
        (Term::App(f, a), Term::App(g, b)) => match_term(f, g, vsub, ssub) && match_term(a, b, vsub, ssub),
        _ => false,
    }
}

/// Applies a match to a schema side: sorts first, then variables.
fn instantiate_term(t: &Term, vsub: &HashMap<Var, Term>, ssub: &SortSubst) -> Term {
    let vs = resort_keys(vsub, ssub);
    t.subst_sorts(ssub).subst(&vs)
}

fn resort_keys(vsub: &HashMap<Var, Term>, ssub: &SortSubst) -> HashMap<Var, Term> {
    vsub.iter()
        .map(|(v, t)| (Var::new(&v.name, v.sort.subst(ssub)), t.clone()))
        .collect()
}

struct Normalizer<'a> {
    rs: &'a RewriteSystem,
    steps: usize,
    fuel: usize,
}

impl Normalizer<'_> {
    fn root_step(&self, t: &Term) -> Option<Term> {
        for eq in &self.rs.equations {
            let mut vsub = HashMap::new();
            let mut ssub = SortSubst::new();
            if match_term(&eq.lhs, t, &mut vsub, &mut ssub) {
                return Some(instantiate_term(&eq.rhs, &vsub, &ssub));
            }
        }
        None
    }

    fn norm(&mut self, t: &Term) -> Result<Term, Term> {
        let inner = match t {
            Term::Var(_) => t.clone(),
            Term::Sym { name, inst, args, sort } => {
                let mut out = Vec::with_capacity(args.len());
                for (k, a) in args.iter().enumerate() {
                    match self.norm(a) {
                        Ok(n) => out.push(n),
                        Err(partial) => {
                            out.push(partial);
                            out.extend(args[k + 1..].iter().cloned());
                            return Err(Term::Sym {
                                name: name.clone(),
                                inst: inst.clone(),
                                args: out,
                                sort: sort.clone(),
                            });
                        }
                    }
                }
                Term::Sym {
                    name: name.clone(),
                    inst: inst.clone(),
                    args: out,
                    sort: sort.clone(),
                }
            }
            Term::App(f, a) => {
                let f2 = self.norm(f).map_err(|p| Term::app_unchecked(p, (**a).clone()))?;
                let a2 = self.norm(a).map_err(|p| Term::app_unchecked(f2.clone(), p))?;
                Term::app_unchecked(f2, a2)
            }
        };
        match self.root_step(&inner) {
            None => Ok(inner),
            Some(next) => {
                if self.steps >= self.fuel {
                    return Err(inner);
                }
                self.steps += 1;
                self.norm(&next)
            }
        }
    }
}

/// Innermost normal form of `t` under the equations oriented left to right.
pub fn e_normalize(rs: &RewriteSystem, t: &Term, fuel: usize) -> Result<Term, RewriteError> {
    let mut n = Normalizer { rs, steps: 0, fuel };
    n.norm(t).map_err(|partial| RewriteError::FuelExhausted {
        steps: n.steps,
        partial,
    })
}

pub fn e_equal(rs: &RewriteSystem, t: &Term, u: &Term, fuel: usize) -> Result<bool, RewriteError> {
    Ok(e_normalize(rs, t, fuel)? == e_normalize(rs, u, fuel)?)
}

/// Normalizes every atom argument of `p`.
pub fn e_normalize_prop(rs: &RewriteSystem, p: &Prop, fuel: usize) -> Result<Prop, RewriteError> {
    Ok(match p {
        Prop::Atom(name, args) => Prop::Atom(
            name.clone(),
            args.iter().map(|a| e_normalize(rs, a, fuel)).collect::<Result<_, _>>()?,
        ),
        Prop::Top | Prop::Bottom => p.clone(),
        Prop::Not(q) => Prop::not(e_normalize_prop(rs, q, fuel)?),
        Prop::And(a, b) => Prop::and(e_normalize_prop(rs, a, fuel)?, e_normalize_prop(rs, b, fuel)?),
        Prop::Or(a, b) => Prop::or(e_normalize_prop(rs, a, fuel)?, e_normalize_prop(rs, b, fuel)?),
        Prop::Implies(a, b) => Prop::implies(e_normalize_prop(rs, a, fuel)?, e_normalize_prop(rs, b, fuel)?),
        Prop::Forall(v, q) => Prop::forall(v.clone(), e_normalize_prop(rs, q, fuel)?),
        Prop::Exists(v, q) => Prop::exists(v.clone(), e_normalize_prop(rs, q, fuel)?),
    })
}

/// Representative of the E-and-alpha class of `p`.
pub fn canonical(rs: &RewriteSystem, p: &Prop, fuel: usize) -> Result<Prop, RewriteError> {
    Ok(e_normalize_prop(rs, p, fuel)?.alpha_canonical())
}

/// Propositions congruent to `p` modulo E and alpha.
pub fn prop_equiv(rs: &RewriteSystem, p: &Prop, q: &Prop, fuel: usize) -> Result<bool, RewriteError> {
    Ok(canonical(rs, p, fuel)? == canonical(rs, q, fuel)?)
}

/// Instances of `rule` applying to the atom `atom`, whose arguments are
/// expected to be E-normal.
pub fn rule_instance(rule: &PropRuleSchema, atom: &Prop) -> Option<Prop> {
    let (Prop::Atom(p, pargs), Prop::Atom(q, qargs)) = (&rule.lhs, atom) else {
        return None;
    };
    if p != q || pargs.len() != qargs.len() {
        return None;
    }
    let mut vsub = HashMap::new();
    let mut ssub = SortSubst::new();
    for (pa, qa) in pargs.iter().zip(qargs) {
        if !match_term(pa, qa, &mut vsub, &mut ssub) {
            return None;
        }
    }
    let vs = resort_keys(&vsub, &ssub);
    Some(rule.rhs.subst_sorts(&ssub).subst(&vs))
}

/// Rule reducts of an atom at the given polarity, labelled by rule name.
pub fn head_reducts(rs: &RewriteSystem, atom: &Prop, pol: Polarity, fuel: usize) -> Result<Vec<(String, Prop)>, RewriteError> {
    let normal = e_normalize_prop(rs, atom, fuel)?;
    Ok(rs
        .rules(pol)
        .iter()
        .filter_map(|r| rule_instance(r, &normal).map(|p| (r.name.clone(), p)))
        .collect())
}

/// Every way of rewriting one atom occurrence of `p`, where `at_atom`
/// supplies the replacements of an atom at its polarity.
fn rewrite_one_position(p: &Prop, pol: Polarity, at_atom: &mut AtomSteps) -> Result<Vec<(String, Prop)>, RewriteError> {
    let mut out = Vec::new();
    match p {
        Prop::Atom(..) => out = at_atom(p, pol)?,
        Prop::Top | Prop::Bottom => {}
        Prop::Not(q) => {
            for (l, r) in rewrite_one_position(q, pol.flip(), at_atom)? {
                out.push((l, Prop::not(r)));
            }
        }
        Prop::And(a, b) | Prop::Or(a, b) | Prop::Implies(a, b) => {
            let left_pol = if matches!(p, Prop::Implies(..)) { pol.flip() } else { pol };
            let rebuild = |x: Prop, y: Prop| match p {
                Prop::And(..) => Prop::and(x, y),
                Prop::Or(..) => Prop::or(x, y),
                _ => Prop::implies(x, y),
            };
            for (l, r) in rewrite_one_position(a, left_pol, at_atom)? {
                out.push((l, rebuild(r, (**b).clone())));
            }
            for (l, r) in rewrite_one_position(b, pol, at_atom)? {
                out.push((l, rebuild((**a).clone(), r)));
            }
        }
        Prop::Forall(v, q) => {
            for (l, r) in rewrite_one_position(q, pol, at_atom)? {
                out.push((l, Prop::forall(v.clone(), r)));
            }
        }
        Prop::Exists(v, q) => {
            for (l, r) in rewrite_one_position(q, pol, at_atom)? {
                out.push((l, Prop::exists(v.clone(), r)));
            }
        }
    }
    Ok(out)
}

/// Label used for the E-canonicalization reduct of an atom.
pub const E_STEP: &str = "E";

/// One-step reducts of `p` at polarity `pol`, each labelled with the rule
/// that produced it ([`E_STEP`] for E-canonicalization of an atom).
pub fn one_step_labeled(rs: &RewriteSystem, p: &Prop, pol: Polarity, fuel: usize) -> Result<Vec<(String, Prop)>, RewriteError> {
    let mut at_atom = |atom: &Prop, pol: Polarity| -> Result<Vec<(String, Prop)>, RewriteError> {
        let normal = e_normalize_prop(rs, atom, fuel)?;
        let mut out = Vec::new();
        if &normal != atom {
            out.push((E_STEP.to_string(), normal.clone()));
        }
        for r in rs.rules(pol) {
            if let Some(q) = rule_instance(r, &normal) {
                out.push((r.name.clone(), q));
            }
        }
        Ok(out)
    };
    let mut out = rewrite_one_position(p, pol, &mut at_atom)?;
    let mut seen = HashSet::new();
    out.retain(|(_, q)| seen.insert(q.clone()));
    Ok(out)
}

pub fn one_step(rs: &RewriteSystem, p: &Prop, pol: Polarity, fuel: usize) -> Result<Vec<Prop>, RewriteError> {
    Ok(one_step_labeled(rs, p, pol, fuel)?.into_iter().map(|(_, q)| q).collect())
}

/// Rule-only successors of a canonical proposition, canonicalized.
fn canonical_successors(rs: &RewriteSystem, p: &Prop, pol: Polarity, fuel: usize) -> Result<Vec<Prop>, RewriteError> {
    let mut at_atom = |atom: &Prop, pol: Polarity| -> Result<Vec<(String, Prop)>, RewriteError> {
        Ok(rs
            .rules(pol)
            .iter()
            .filter_map(|r| rule_instance(r, atom).map(|q| (String::new(), q)))
            .collect())
    };
    rewrite_one_position(p, pol, &mut at_atom)?
        .into_iter()
        .map(|(_, q)| canonical(rs, &q, fuel))
        .collect()
}

/// Breadth-first exploration of the canonical reducts of `start`, visiting
/// at most `budget.fuel` nodes. `stop` ends the search early with success.
fn explore(
    rs: &RewriteSystem,
    start: &Prop,
    pol: Polarity,
    budget: ReachabilityBudget,
    keep: &dyn Fn(&Prop) -> bool,
    stop: &mut dyn FnMut(&Prop) -> bool,
) -> Reach {
    let Ok(start) = canonical(rs, start, budget.fuel) else {
        return Reach::Undecided;
    };
    if !keep(&start) {
        return Reach::Unreachable;
    }
    if stop(&start) {
        return Reach::Reachable;
    }
    let mut seen: HashSet<Prop> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut explored = 0usize;
    while let Some(p) = queue.pop_front() {
        if explored >= budget.fuel {
            return Reach::Undecided;
        }
        explored += 1;
        let Ok(next) = canonical_successors(rs, &p, pol, budget.fuel) else {
            return Reach::Undecided;
        };
        for q in next {
            if !keep(&q) || !seen.insert(q.clone()) {
                continue;
            }
            if stop(&q) {
                return Reach::Reachable;
            }
            queue.push_back(q);
        }
    }
    Reach::Unreachable
}

/// Whether `a →*_pol b` modulo E and alpha, within the budget.
pub fn reaches(rs: &RewriteSystem, a: &Prop, b: &Prop, pol: Polarity, budget: ReachabilityBudget) -> Reach {
    let Ok(target) = canonical(rs, b, budget.fuel) else {
        return Reach::Undecided;
    };
    explore(rs, a, pol, budget, &|_| true, &mut |p| p == &target)
}

/// The full canonical closure of `a` at `pol`, or `None` when the budget
/// runs out first.
pub fn closure(rs: &RewriteSystem, a: &Prop, pol: Polarity, budget: ReachabilityBudget) -> Option<BTreeSet<Prop>> {
    let mut all = BTreeSet::new();
    let r = explore(rs, a, pol, budget, &|_| true, &mut |p| {
        all.insert(p.clone());
        false
    });
    (r == Reach::Unreachable).then_some(all)
}

/// Side condition of the axiom rule: some atomic `P` with `a →−* P` and
/// `b →+* P`.
///
/// When no rule of `rs` rewrites an atom to an atom, compound propositions
/// never become atomic again, so this reduces to comparing two atoms modulo
/// E. Otherwise the atom-to-atom closures of both sides are intersected.
pub fn atomic_reach(rs: &RewriteSystem, a: &Prop, b: &Prop, budget: ReachabilityBudget) -> Reach {
    if !a.is_atomic() || !b.is_atomic() {
        return Reach::Unreachable;
    }
    let (Ok(ca), Ok(cb)) = (canonical(rs, a, budget.fuel), canonical(rs, b, budget.fuel)) else {
        return Reach::Undecided;
    };
    if ca == cb {
        return Reach::Reachable;
    }
    if !rs.has_atomic_rhs() {
        return Reach::Unreachable;
    }
    let mut from_a = BTreeSet::new();
    let ra = explore(rs, a, Polarity::Negative, budget, &Prop::is_atomic, &mut |p| {
        from_a.insert(p.clone());
        false
    });
    if ra == Reach::Undecided {
        return Reach::Undecided;
    }
    explore(rs, b, Polarity::Positive, budget, &Prop::is_atomic, &mut |p| from_a.contains(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_prop, parse_term, Context, Sort};
    use crate::theory::{build_hol, build_holpm};

    fn ctx() -> Context {
        let mut c = Context::new();
        c.insert("t".into(), Sort::prop());
        c.insert("u".into(), Sort::prop());
        c.insert("a".into(), Sort::iota());
        c.insert("f".into(), Sort::arrow(Sort::iota(), Sort::prop()));
        c
    }

    fn term(rs: &RewriteSystem, s: &str) -> Term {
        parse_term(s, &rs.sig, &ctx()).unwrap()
    }

    fn prop(rs: &RewriteSystem, s: &str) -> Prop {
        parse_prop(s, &rs.sig, &ctx()).unwrap()
    }

    #[test]
    fn k_and_pred_equations() {
        let rs = build_hol();
        let n = |s: &str| e_normalize(&rs, &term(&rs, s), DEFAULT_FUEL).unwrap();
        assert_eq!(n("(kc zero t)"), term(&rs, "zero"));
        assert_eq!(n("(pred (succ zero))"), term(&rs, "zero"));
        assert_eq!(n("(sc kc kc a)"), term(&rs, "a"));
    }

    #[test]
    fn e_equal_examples() {
        let rs = build_hol();
        let x = term(&rs, "a");
        assert!(e_equal(&rs, &term(&rs, "(kc a t)"), &x, 100).unwrap());
        assert!(e_equal(&rs, &x, &x, 100).unwrap());
        assert!(!e_equal(&rs, &term(&rs, "zero"), &term(&rs, "(succ zero)"), 100).unwrap());
    }

    #[test]
    fn fuel_exhaustion_reports_partial() {
        let rs = build_hol();
        // the K-equation fires once, which fuel 0 forbids
        let err = e_normalize(&rs, &term(&rs, "(kc a t)"), 0).unwrap_err();
        let RewriteError::FuelExhausted { steps, partial } = err;
        assert_eq!(steps, 0);
        assert_eq!(partial, term(&rs, "(kc a t)"));
    }

    #[test]
    fn one_step_or_rules() {
        let pm = build_holpm();
        let p = prop(&pm, "(eps (dor t u))");
        let neg = one_step(&pm, &p, Polarity::Negative, 100).unwrap();
        assert_eq!(neg, vec![prop(&pm, "(or (eps t) (eps u))")]);
        let pos = one_step(&pm, &p, Polarity::Positive, 100).unwrap();
        assert!(pos.contains(&prop(&pm, "(not (not (eps t)))")));
        assert!(pos.contains(&prop(&pm, "(not (not (eps u)))")));
        let np = prop(&pm, "(not (eps (dor t u)))");
        let under = one_step(&pm, &np, Polarity::Negative, 100).unwrap();
        assert!(under.contains(&prop(&pm, "(not (not (not (eps t))))")));
        assert!(under.contains(&prop(&pm, "(not (not (not (eps u))))")));
    }

    #[test]
    fn reaches_examples() {
        let hol = build_hol();
        let pm = build_holpm();
        let b = ReachabilityBudget::default();
        let a = prop(&hol, "(eps (dall f))");
        let target = prop(&hol, "(all y i (eps (f y)))");
        assert_eq!(reaches(&hol, &a, &target, Polarity::Negative, b), Reach::Reachable);
        assert_eq!(reaches(&hol, &a, &a, Polarity::Positive, b), Reach::Reachable);
        let a = prop(&pm, "(eps (dor t u))");
        let target = prop(&pm, "(or (eps t) (eps u))");
        assert_eq!(reaches(&pm, &a, &target, Polarity::Positive, b), Reach::Unreachable);
        assert_eq!(reaches(&pm, &a, &target, Polarity::Negative, b), Reach::Reachable);
    }

    #[test]
    fn reaches_is_modulo_alpha_and_e() {
        let hol = build_hol();
        let b = ReachabilityBudget::default();
        let a = prop(&hol, "(eps (kc (dall f) a))");
        let target = prop(&hol, "(all z i (eps (f z)))");
        assert_eq!(reaches(&hol, &a, &target, Polarity::Negative, b), Reach::Reachable);
    }

    #[test]
    fn atomic_reach_examples() {
        let hol = build_hol();
        let b = ReachabilityBudget::default();
        let t = prop(&hol, "(eps t)");
        assert_eq!(atomic_reach(&hol, &t, &t, b), Reach::Reachable);
        let kt = prop(&hol, "(eps (kc t u))");
        assert_eq!(atomic_reach(&hol, &kt, &t, b), Reach::Reachable);
        let d = prop(&hol, "(or (eps t) (eps u))");
        assert_eq!(atomic_reach(&hol, &d, &d, b), Reach::Unreachable);
    }

    #[test]
    fn budget_bounds_reaches() {
        let hol = build_hol();
        let a = prop(&hol, "(eps (dnot (dnot (dnot t))))");
        let target = prop(&hol, "(not (not (not (eps t))))");
        let r = reaches(&hol, &a, &target, Polarity::Negative, ReachabilityBudget::new(1));
        assert_eq!(r, Reach::Undecided);
        let r = reaches(&hol, &a, &target, Polarity::Negative, ReachabilityBudget::default());
        assert_eq!(r, Reach::Reachable);
    }
}
