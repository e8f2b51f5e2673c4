use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::sort::{Sort, SortSubst};
use super::term::{Term, TermError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prop {
    Atom(String, Vec<Term>),
    Top,
    Bottom,
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Implies(Box<Prop>, Box<Prop>),
    Forall(Var, Box<Prop>),
    Exists(Var, Box<Prop>),
}

/// Picks `base`, or `base1`, `base2`, ... (after stripping trailing digits),
/// whichever is first absent from `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !avoid.contains(n))
        .unwrap()
}

impl Prop {
    pub fn atom(pred: &str, args: Vec<Term>) -> Prop {
        Prop::Atom(pred.to_string(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Prop) -> Prop {
        Prop::Not(Box::new(p))
    }

    pub fn and(p: Prop, q: Prop) -> Prop {
        Prop::And(Box::new(p), Box::new(q))
    }

    pub fn or(p: Prop, q: Prop) -> Prop {
        Prop::Or(Box::new(p), Box::new(q))
    }

    pub fn implies(p: Prop, q: Prop) -> Prop {
        Prop::Implies(Box::new(p), Box::new(q))
    }

    pub fn forall(v: Var, p: Prop) -> Prop {
        Prop::Forall(v, Box::new(p))
    }

    pub fn exists(v: Var, p: Prop) -> Prop {
        Prop::Exists(v, Box::new(p))
    }

    /// Universal closure over `vars`, first variable outermost.
    pub fn forall_all(vars: impl IntoIterator<Item = Var>, body: Prop) -> Prop {
        let vars: Vec<Var> = vars.into_iter().collect();
        vars.into_iter().rev().fold(body, |acc, v| Prop::forall(v, acc))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Prop::Atom(..))
    }

    pub fn free_vars_into(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Prop::Atom(_, args) => {
                for a in args {
                    let mut fv = BTreeSet::new();
                    a.free_vars_into(&mut fv);
                    out.extend(fv.into_iter().filter(|v| !bound.contains(v)));
                }
            }
            Prop::Top | Prop::Bottom => {}
            Prop::Not(p) => p.free_vars_into(bound, out),
            Prop::And(p, q) | Prop::Or(p, q) | Prop::Implies(p, q) => {
                p.free_vars_into(bound, out);
                q.free_vars_into(bound, out);
            }
            Prop::Forall(v, p) | Prop::Exists(v, p) => {
                bound.push(v.clone());
                p.free_vars_into(bound, out);
                bound.pop();
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    /// Free variables in order of first occurrence (left to right).
    pub fn free_vars_ordered(&self) -> Vec<Var> {
        fn go(p: &Prop, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
            match p {
                Prop::Atom(_, args) => {
                    for a in args {
                        let mut subs = Vec::new();
                        a.subterms(&mut subs);
                        for t in subs {
                            if let Term::Var(v) = t {
                                if !bound.contains(v) && !out.contains(v) {
                                    out.push(v.clone());
                                }
                            }
                        }
                    }
                }
                Prop::Top | Prop::Bottom => {}
                Prop::Not(p) => go(p, bound, out),
                Prop::And(p, q) | Prop::Or(p, q) | Prop::Implies(p, q) => {
                    go(p, bound, out);
                    go(q, bound, out);
                }
                Prop::Forall(v, p) | Prop::Exists(v, p) => {
                    bound.push(v.clone());
                    go(p, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every variable name occurring anywhere, free or bound.
    pub fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Prop::Atom(_, args) => {
                for a in args {
                    out.extend(a.free_vars().into_iter().map(|v| v.name));
                }
            }
            Prop::Top | Prop::Bottom => {}
            Prop::Not(p) => p.all_names(out),
            Prop::And(p, q) | Prop::Or(p, q) | Prop::Implies(p, q) => {
                p.all_names(out);
                q.all_names(out);
            }
            Prop::Forall(v, p) | Prop::Exists(v, p) => {
                out.insert(v.name.clone());
                p.all_names(out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Simultaneous capture-avoiding substitution. Bound variables that would
    /// capture a free variable of the substituted terms are renamed with
    /// [`fresh_name`].
    pub fn subst(&self, s: &HashMap<Var, Term>) -> Prop {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Prop::Atom(p, args) => Prop::Atom(p.clone(), args.iter().map(|a| a.subst(s)).collect()),
            Prop::Top | Prop::Bottom => self.clone(),
            Prop::Not(p) => Prop::not(p.subst(s)),
            Prop::And(p, q) => Prop::and(p.subst(s), q.subst(s)),
            Prop::Or(p, q) => Prop::or(p.subst(s), q.subst(s)),
            Prop::Implies(p, q) => Prop::implies(p.subst(s), q.subst(s)),
            Prop::Forall(v, p) | Prop::Exists(v, p) => {
                let is_all = matches!(self, Prop::Forall(..));
                let mut inner: HashMap<Var, Term> = s.clone();
                inner.remove(v);
                let body_fv = p.free_vars();
                inner.retain(|k, _| body_fv.contains(k));
                let captures = inner.values().any(|t| t.has_var(v));
                let (v2, body) = if captures {
                    let mut avoid = BTreeSet::new();
                    for t in inner.values() {
                        avoid.extend(t.free_vars().into_iter().map(|w| w.name));
                    }
                    p.all_names(&mut avoid);
                    avoid.extend(inner.keys().map(|k| k.name.clone()));
                    let fresh = Var::new(&fresh_name(&v.name, &avoid), v.sort.clone());
                    inner.insert(v.clone(), Term::Var(fresh.clone()));
                    (fresh, p.subst(&inner))
                } else {
                    (v.clone(), p.subst(&inner))
                };
                if is_all {
                    Prop::forall(v2, body)
                } else {
                    Prop::exists(v2, body)
                }
            }
        }
    }

    /// `(t/x)p` with a sort check.
    pub fn substitute(&self, x: &Var, t: &Term) -> Result<Prop, TermError> {
        if t.sort() != x.sort {
            return Err(TermError::SortMismatch {
                var: x.name.clone(),
                term: t.to_string(),
                expected: x.sort.clone(),
                found: t.sort(),
            });
        }
        let mut s = HashMap::new();
        s.insert(x.clone(), t.clone());
        Ok(self.subst(&s))
    }

    pub fn subst_sorts(&self, s: &SortSubst) -> Prop {
        self.map_terms_and_vars(&|t| t.subst_sorts(s), &|v| Var::new(&v.name, v.sort.subst(s)))
    }

    fn map_terms_and_vars(&self, ft: &dyn Fn(&Term) -> Term, fv: &dyn Fn(&Var) -> Var) -> Prop {
        match self {
            Prop::Atom(p, args) => Prop::Atom(p.clone(), args.iter().map(ft).collect()),
            Prop::Top | Prop::Bottom => self.clone(),
            Prop::Not(p) => Prop::not(p.map_terms_and_vars(ft, fv)),
            Prop::And(p, q) => Prop::and(p.map_terms_and_vars(ft, fv), q.map_terms_and_vars(ft, fv)),
            Prop::Or(p, q) => Prop::or(p.map_terms_and_vars(ft, fv), q.map_terms_and_vars(ft, fv)),
            Prop::Implies(p, q) => {
                Prop::implies(p.map_terms_and_vars(ft, fv), q.map_terms_and_vars(ft, fv))
            }
            Prop::Forall(v, p) => Prop::forall(fv(v), p.map_terms_and_vars(ft, fv)),
            Prop::Exists(v, p) => Prop::exists(fv(v), p.map_terms_and_vars(ft, fv)),
        }
    }

    /// Applies `f` to every atom argument, outside binders' reach (the
    /// function must not change free variables).
    pub fn map_atom_args(&self, f: &dyn Fn(&Term) -> Term) -> Prop {
        self.map_terms_and_vars(f, &|v| v.clone())
    }

    /// Canonical representative of the alpha-class: bound variables are named
    /// `#0`, `#1`, ... by binder depth. `#` never occurs in parsed names.
    pub fn alpha_canonical(&self) -> Prop {
        fn go(p: &Prop, depth: usize) -> Prop {
            match p {
                Prop::Atom(..) | Prop::Top | Prop::Bottom => p.clone(),
                Prop::Not(a) => Prop::not(go(a, depth)),
                Prop::And(a, b) => Prop::and(go(a, depth), go(b, depth)),
                Prop::Or(a, b) => Prop::or(go(a, depth), go(b, depth)),
                Prop::Implies(a, b) => Prop::implies(go(a, depth), go(b, depth)),
                Prop::Forall(v, a) | Prop::Exists(v, a) => {
                    let nv = Var::new(&format!("#{depth}"), v.sort.clone());
                    let mut s = HashMap::new();
                    s.insert(v.clone(), Term::Var(nv.clone()));
                    // the new name cannot be captured: deeper binders get larger indices
                    let body = go(&a.subst(&s), depth + 1);
                    if matches!(p, Prop::Forall(..)) {
                        Prop::forall(nv, body)
                    } else {
                        Prop::exists(nv, body)
                    }
                }
            }
        }
        go(self, 0)
    }

    pub fn alpha_eq(&self, other: &Prop) -> bool {
        self == other || self.alpha_canonical() == other.alpha_canonical()
    }

    /// Every term argument of every atom.
    pub fn atom_args<'a>(&'a self, out: &mut Vec<&'a Term>) {
        match self {
            Prop::Atom(_, args) => out.extend(args.iter()),
            Prop::Top | Prop::Bottom => {}
            Prop::Not(p) => p.atom_args(out),
            Prop::And(p, q) | Prop::Or(p, q) | Prop::Implies(p, q) => {
                p.atom_args(out);
                q.atom_args(out);
            }
            Prop::Forall(_, p) | Prop::Exists(_, p) => p.atom_args(out),
        }
    }

    pub fn mentions_symbol(&self, sym: &str) -> bool {
        let mut args = Vec::new();
        self.atom_args(&mut args);
        args.iter().any(|t| t.mentions_symbol(sym))
    }

    /// Sorts of every subterm and bound variable.
    pub fn sorts_into(&self, out: &mut BTreeSet<Sort>) {
        match self {
            Prop::Atom(_, args) => args.iter().for_each(|a| a.sorts_into(out)),
            Prop::Top | Prop::Bottom => {}
            Prop::Not(p) => p.sorts_into(out),
            Prop::And(p, q) | Prop::Or(p, q) | Prop::Implies(p, q) => {
                p.sorts_into(out);
                q.sorts_into(out);
            }
            Prop::Forall(v, p) | Prop::Exists(v, p) => {
                out.insert(v.sort.clone());
                p.sorts_into(out);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Prop::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Prop::Top | Prop::Bottom => 1,
            Prop::Not(p) => 1 + p.size(),
            Prop::And(p, q) | Prop::Or(p, q) | Prop::Implies(p, q) => 1 + p.size() + q.size(),
            Prop::Forall(_, p) | Prop::Exists(_, p) => 1 + p.size(),
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prop::Atom(p, args) => {
                write!(f, "({p}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
            Prop::Top => f.write_str("true"),
            Prop::Bottom => f.write_str("false"),
            Prop::Not(p) => write!(f, "(not {p})"),
            Prop::And(p, q) => write!(f, "(and {p} {q})"),
            Prop::Or(p, q) => write!(f, "(or {p} {q})"),
            Prop::Implies(p, q) => write!(f, "(imp {p} {q})"),
            Prop::Forall(v, p) => write!(f, "(all {} {} {p})", v.name, v.sort),
            Prop::Exists(v, p) => write!(f, "(ex {} {} {p})", v.name, v.sort),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o() -> Sort {
        Sort::prop()
    }

    fn eps(t: Term) -> Prop {
        Prop::atom("eps", vec![t])
    }

    fn f_o() -> Sort {
        Sort::arrow(o(), o())
    }

    #[test]
    fn free_vars_examples() {
        let x = Var::new("x", o());
        let y = Var::new("y", o());
        let f = Var::new("f", f_o());
        let xy = Term::app(Term::Var(f.clone()), Term::Var(y.clone())).unwrap();
        assert!(Prop::forall(x.clone(), eps(Term::Var(x.clone()))).free_vars().is_empty());
        let p = eps(xy.clone());
        assert_eq!(p.free_vars(), [f.clone(), y.clone()].into_iter().collect());
        let q = Prop::forall(f.clone(), eps(xy));
        assert_eq!(q.free_vars(), [y].into_iter().collect());
    }

    #[test]
    fn substitution_shadowing_and_capture() {
        let x = Var::new("x", o());
        let y = Var::new("y", o());
        let t = Term::constant("c", vec![], o());
        let shadow = Prop::forall(x.clone(), eps(Term::Var(x.clone())));
        assert_eq!(shadow.substitute(&x, &t).unwrap(), shadow);

        // (all y (eps (f x y))) with x := y must rename the binder
        let f = Term::var("f", Sort::arrows([o(), o()], o()));
        let body = eps(Term::apps(f.clone(), [Term::Var(x.clone()), Term::Var(y.clone())]).unwrap());
        let p = Prop::forall(y.clone(), body);
        let r = p.substitute(&x, &Term::Var(y.clone())).unwrap();
        match &r {
            Prop::Forall(b, _) => assert_ne!(b.name, "y"),
            _ => panic!(),
        }
        assert!(r.free_vars().contains(&y));

        let bad = eps(Term::Var(x.clone())).substitute(&x, &Term::var("z", Sort::iota()));
        assert!(bad.is_err());
    }

    #[test]
    fn alpha_equivalence() {
        let x = Var::new("x", o());
        let y = Var::new("y", o());
        let a = Prop::forall(x.clone(), eps(Term::Var(x.clone())));
        let b = Prop::forall(y.clone(), eps(Term::Var(y.clone())));
        assert!(a.alpha_eq(&b));
        let c = Prop::forall(y.clone(), eps(Term::Var(x.clone())));
        assert!(!a.alpha_eq(&c));
    }

    #[test]
    fn fresh_names_are_deterministic() {
        let avoid: BTreeSet<String> = ["y", "y1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(fresh_name("y", &avoid), "y2");
        assert_eq!(fresh_name("z", &avoid), "z");
    }
}
