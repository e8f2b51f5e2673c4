use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::sort::{Sort, SortSubst};

/// A sorted variable. Two variables are the same only if both name and sort
/// agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: String,
    pub sort: Sort,
}

impl Var {
    pub fn new(name: &str, sort: Sort) -> Self {
        Var {
            name: name.to_string(),
            sort,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    /// Constant (no `args`) or function symbol application, with its sort
    /// instantiation and cached result sort.
    Sym {
        name: String,
        inst: Vec<Sort>,
        args: Vec<Term>,
        sort: Sort,
    },
    /// The application symbol `α_{T,U}`, written `(t u)`.
    App(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("application of {fun} : {fun_sort} to an argument of sort {arg_sort}")]
    BadApplication {
        fun: String,
        fun_sort: Sort,
        arg_sort: Sort,
    },
    #[error("cannot substitute {term} of sort {found} for {var} of sort {expected}")]
    SortMismatch {
        var: String,
        term: String,
        expected: Sort,
        found: Sort,
    },
}

impl Term {
    pub fn var(name: &str, sort: Sort) -> Term {
        Term::Var(Var::new(name, sort))
    }

    pub fn constant(name: &str, inst: Vec<Sort>, sort: Sort) -> Term {
        Term::Sym {
            name: name.to_string(),
            inst,
            args: Vec::new(),
            sort,
        }
    }

    /// Well-sorted application; fails if `f` is not of arrow sort matching `a`.
    pub fn app(f: Term, a: Term) -> Result<Term, TermError> {
        let fs = f.sort();
        match fs.split_arrow() {
            Some((dom, _)) if *dom == a.sort() => Ok(Term::App(Box::new(f), Box::new(a))),
            _ => Err(TermError::BadApplication {
                fun: f.to_string(),
                fun_sort: fs.clone(),
                arg_sort: a.sort(),
            }),
        }
    }

    /// Application without sort checking; callers guarantee well-sortedness.
    pub fn app_unchecked(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Result<Term, TermError> {
        args.into_iter().try_fold(f, Term::app)
    }

    pub fn sort(&self) -> Sort {
        match self {
            Term::Var(v) => v.sort.clone(),
            Term::Sym { sort, .. } => sort.clone(),
            Term::App(f, _) => match f.sort() {
                Sort::Arrow(_, c) => *c,
                // unreachable for well-sorted terms
                other => other,
            },
        }
    }

    /// Head and spine of a curried application `(h a1 ... an)`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Sym { args, .. } => args.iter().for_each(|a| a.free_vars_into(out)),
            Term::App(f, a) => {
                f.free_vars_into(out);
                a.free_vars_into(out);
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    pub fn has_var(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::Sym { args, .. } => args.iter().any(|a| a.has_var(v)),
            Term::App(f, a) => f.has_var(v) || a.has_var(v),
        }
    }

    /// Simultaneous substitution. Terms have no binders, so nothing is captured.
    pub fn subst(&self, s: &HashMap<Var, Term>) -> Term {
        match self {
            Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Sym {
                name,
                inst,
                args,
                sort,
            } => Term::Sym {
                name: name.clone(),
                inst: inst.clone(),
                args: args.iter().map(|a| a.subst(s)).collect(),
                sort: sort.clone(),
            },
            Term::App(f, a) => Term::App(Box::new(f.subst(s)), Box::new(a.subst(s))),
        }
    }

    pub fn subst_sorts(&self, s: &SortSubst) -> Term {
        match self {
            Term::Var(v) => Term::var(&v.name, v.sort.subst(s)),
            Term::Sym {
                name,
                inst,
                args,
                sort,
            } => Term::Sym {
                name: name.clone(),
                inst: inst.iter().map(|t| t.subst(s)).collect(),
                args: args.iter().map(|a| a.subst_sorts(s)).collect(),
                sort: sort.subst(s),
            },
            Term::App(f, a) => Term::App(Box::new(f.subst_sorts(s)), Box::new(a.subst_sorts(s))),
        }
    }

    /// Renames free variable names (not sorts) according to `s`.
    pub fn rename(&self, from: &Var, to: &str) -> Term {
        let mut s = HashMap::new();
        s.insert(from.clone(), Term::var(to, from.sort.clone()));
        self.subst(&s)
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Sym { args, .. } => 1 + args.iter().map(Term::size).sum::<usize>(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    /// All subterms, outermost first.
    pub fn subterms<'a>(&'a self, out: &mut Vec<&'a Term>) {
        out.push(self);
        match self {
            Term::Var(_) => {}
            Term::Sym { args, .. } => args.iter().for_each(|a| a.subterms(out)),
            Term::App(f, a) => {
                f.subterms(out);
                a.subterms(out);
            }
        }
    }

    /// Every sort of every subterm.
    pub fn sorts_into(&self, out: &mut BTreeSet<Sort>) {
        out.insert(self.sort());
        match self {
            Term::Var(_) => {}
            Term::Sym { args, .. } => args.iter().for_each(|a| a.sorts_into(out)),
            Term::App(f, a) => {
                f.sorts_into(out);
                a.sorts_into(out);
            }
        }
    }

    pub fn mentions_symbol(&self, sym: &str) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Sym { name, args, .. } => name == sym || args.iter().any(|a| a.mentions_symbol(sym)),
            Term::App(f, a) => f.mentions_symbol(sym) || a.mentions_symbol(sym),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(&v.name),
            Term::Sym { name, inst, args, .. } => {
                if inst.is_empty() && args.is_empty() {
                    return f.write_str(name);
                }
                write!(f, "({name}")?;
                for s in inst {
                    write!(f, " {s}")?;
                }
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
            Term::App(..) => {
                let (head, args) = self.spine();
                // fold a symbol head into the same list: (dall i f), not ((dall i) f)
                match head {
                    Term::Sym { name, inst, args: own, .. } => {
                        write!(f, "({name}")?;
                        for s in inst {
                            write!(f, " {s}")?;
                        }
                        for a in own {
                            write!(f, " {a}")?;
                        }
                    }
                    _ => write!(f, "({head}")?,
                }
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}
