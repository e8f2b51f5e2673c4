use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// A simple type. `Var` is a sort metavariable: rigid when it names a schema
/// parameter (`T`), flexible when produced during inference (`?3`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Base(String),
    Arrow(Box<Sort>, Box<Sort>),
    Var(String),
}

pub type SortSubst = HashMap<String, Sort>;

impl Sort {
    pub fn base(name: &str) -> Sort {
        Sort::Base(name.to_string())
    }

    pub fn iota() -> Sort {
        Sort::base("i")
    }

    pub fn prop() -> Sort {
        Sort::base("o")
    }

    pub fn var(name: &str) -> Sort {
        Sort::Var(name.to_string())
    }

    pub fn arrow(dom: Sort, cod: Sort) -> Sort {
        Sort::Arrow(Box::new(dom), Box::new(cod))
    }

    /// `T1 -> ... -> Tn -> U`, right-associated.
    pub fn arrows(doms: impl IntoIterator<Item = Sort>, cod: Sort) -> Sort {
        let doms: Vec<Sort> = doms.into_iter().collect();
        doms.into_iter().rev().fold(cod, |acc, d| Sort::arrow(d, acc))
    }

    pub fn split_arrow(&self) -> Option<(&Sort, &Sort)> {
        match self {
            Sort::Arrow(d, c) => Some((d, c)),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Sort::Base(_) => true,
            Sort::Var(_) => false,
            Sort::Arrow(d, c) => d.is_ground() && c.is_ground(),
        }
    }

    pub fn metavars(&self, out: &mut BTreeSet<String>) {
        match self {
            Sort::Base(_) => {}
            Sort::Var(v) => {
                out.insert(v.clone());
            }
            Sort::Arrow(d, c) => {
                d.metavars(out);
                c.metavars(out);
            }
        }
    }

    /// Simultaneous substitution: bound sorts are not substituted again.
    pub fn subst(&self, s: &SortSubst) -> Sort {
        match self {
            Sort::Base(_) => self.clone(),
            Sort::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Sort::Arrow(d, c) => Sort::arrow(d.subst(s), c.subst(s)),
        }
    }

    /// Applies a triangular substitution produced by [`unify`], following
    /// bindings until none applies.
    pub fn resolve(&self, s: &SortSubst) -> Sort {
        match self {
            Sort::Base(_) => self.clone(),
            Sort::Var(v) => match s.get(v) {
                Some(t) => t.resolve(s),
                None => self.clone(),
            },
            Sort::Arrow(d, c) => Sort::arrow(d.resolve(s), c.resolve(s)),
        }
    }

    fn occurs(&self, v: &str) -> bool {
        match self {
            Sort::Base(_) => false,
            Sort::Var(w) => w == v,
            Sort::Arrow(d, c) => d.occurs(v) || c.occurs(v),
        }
    }

    /// Every sort occurring inside `self`, including itself.
    pub fn components(&self, out: &mut BTreeSet<Sort>) {
        out.insert(self.clone());
        if let Sort::Arrow(d, c) = self {
            d.components(out);
            c.components(out);
        }
    }

    /// Injective identifier-safe spelling: `i`, `fun_i_o`, `fun_fun_i_o_o`.
    pub fn mangle(&self) -> String {
        match self {
            Sort::Base(b) => b.clone(),
            Sort::Var(v) => format!("var_{v}"),
            Sort::Arrow(d, c) => format!("fun_{}_{}", d.mangle(), c.mangle()),
        }
    }

    /// Inverse of [`Sort::mangle`] over `_`-separated tokens; returns the sort
    /// and how many tokens were consumed.
    pub fn demangle_prefix(tokens: &[&str], bases: &BTreeSet<String>) -> Option<(Sort, usize)> {
        match tokens.first()? {
            &"fun" => {
                let (d, n1) = Sort::demangle_prefix(&tokens[1..], bases)?;
                let (c, n2) = Sort::demangle_prefix(&tokens[1 + n1..], bases)?;
                Some((Sort::arrow(d, c), 1 + n1 + n2))
            }
            b if bases.contains(*b) => Some((Sort::base(b), 1)),
            _ => None,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Base(b) => f.write_str(b),
            Sort::Var(v) => f.write_str(v),
            Sort::Arrow(d, c) => write!(f, "({d} -> {c})"),
        }
    }
}

/// Flexible metavariables start with `?`; only they may be bound by
/// [`unify`].
pub fn is_flexible(v: &str) -> bool {
    v.starts_with('?')
}

/// Unifies `a` and `b`, extending `s`. Rigid metavariables behave like
/// constants.
pub fn unify(a: &Sort, b: &Sort, s: &mut SortSubst) -> bool {
    let a = a.resolve(s);
    let b = b.resolve(s);
    match (&a, &b) {
        (Sort::Var(x), Sort::Var(y)) if x == y => true,
        (Sort::Var(x), other) | (other, Sort::Var(x)) if is_flexible(x) => {
            if other.occurs(x) {
                return false;
            }
            s.insert(x.clone(), other.clone());
            true
        }
        (Sort::Base(x), Sort::Base(y)) => x == y,
        (Sort::Arrow(d1, c1), Sort::Arrow(d2, c2)) => unify(d1, d2, s) && unify(c1, c2, s),
        _ => false,
    }
}

/// One-way matching: binds metavariables of `pattern` (rigid or not) so that
/// it equals `target`.
pub fn match_sort(pattern: &Sort, target: &Sort, s: &mut SortSubst) -> bool {
    match (pattern, target) {
        (Sort::Var(v), t) => match s.get(v) {
            Some(bound) => bound == t,
            None => {
                s.insert(v.clone(), t.clone());
                true
            }
        },
        (Sort::Base(x), Sort::Base(y)) => x == y,
        (Sort::Arrow(d1, c1), Sort::Arrow(d2, c2)) => {
            match_sort(d1, d2, s) && match_sort(c1, c2, s)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_nests_right() {
        let s = Sort::arrows([Sort::iota(), Sort::prop()], Sort::iota());
        assert_eq!(s.to_string(), "(i -> (o -> i))");
    }

    #[test]
    fn unify_binds_flexible_only() {
        let mut s = SortSubst::new();
        assert!(unify(&Sort::var("?a"), &Sort::iota(), &mut s));
        assert_eq!(Sort::var("?a").resolve(&s), Sort::iota());
        let mut s = SortSubst::new();
        assert!(!unify(&Sort::var("T"), &Sort::iota(), &mut s));
        assert!(unify(&Sort::var("T"), &Sort::var("?b"), &mut s));
        let mut s = SortSubst::new();
        let looped = Sort::arrow(Sort::var("?a"), Sort::iota());
        assert!(!unify(&Sort::var("?a"), &looped, &mut s));
    }

    #[test]
    fn mangle_is_prefix_decodable() {
        let bases: BTreeSet<String> = ["i", "o"].iter().map(|s| s.to_string()).collect();
        let s = Sort::arrow(Sort::arrow(Sort::iota(), Sort::prop()), Sort::prop());
        let m = s.mangle();
        assert_eq!(m, "fun_fun_i_o_o");
        let toks: Vec<&str> = m.split('_').collect();
        assert_eq!(Sort::demangle_prefix(&toks, &bases), Some((s, 5)));
    }
}
