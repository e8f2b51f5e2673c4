//! Sorted terms, propositions and sequents over a simple-type signature.

pub mod parse;
pub mod prop;
pub mod sequent;
pub mod sexp;
pub mod signature;
pub mod sort;
pub mod term;

use std::collections::BTreeSet;

pub use parse::{parse_prop, parse_sequent, parse_sequent_file, parse_sort, parse_term, parse_term_at, Context, ParseError};
pub use prop::{fresh_name, Prop};
pub use sequent::{Sequent, Side};
pub use signature::{Signature, SymbolKind, EQUALITY};
pub use sort::Sort;
pub use term::{Term, TermError, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SortError {
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("{symbol}: expected {expected}, found {found}")]
    Mismatch {
        symbol: String,
        expected: Sort,
        found: Sort,
    },
    #[error("{0} applied to the wrong number of arguments")]
    Arity(String),
}

/// Recomputes the sort of `t` against `sig`, checking every subterm.
pub fn sort_of(t: &Term, sig: &Signature) -> Result<Sort, SortError> {
    match t {
        Term::Var(v) => Ok(v.sort.clone()),
        Term::Sym { name, inst, args, sort } => {
            let expected = match sig.kind(name) {
                Some(SymbolKind::Const) => {
                    if !args.is_empty() {
                        return Err(SortError::Arity(name.clone()));
                    }
                    sig.const_sort(name, inst).unwrap()
                }
                Some(SymbolKind::Fun) => {
                    let (arg_sorts, result) = sig.fun_rank(name, inst).unwrap();
                    if arg_sorts.len() != args.len() {
                        return Err(SortError::Arity(name.clone()));
                    }
                    for (a, s) in args.iter().zip(&arg_sorts) {
                        let found = sort_of(a, sig)?;
                        if &found != s {
                            return Err(SortError::Mismatch {
                                symbol: name.clone(),
                                expected: s.clone(),
                                found,
                            });
                        }
                    }
                    result
                }
                _ => return Err(SortError::UnknownSymbol(name.clone())),
            };
            if &expected != sort {
                return Err(SortError::Mismatch {
                    symbol: name.clone(),
                    expected,
                    found: sort.clone(),
                });
            }
            Ok(expected)
        }
        Term::App(f, a) => {
            let fs = sort_of(f, sig)?;
            let a_s = sort_of(a, sig)?;
            match fs {
                Sort::Arrow(d, c) if *d == a_s => Ok(*c),
                other => Err(SortError::Mismatch {
                    symbol: f.to_string(),
                    expected: Sort::arrow(a_s, Sort::var("_")),
                    found: other,
                }),
            }
        }
    }
}

pub fn check_prop(p: &Prop, sig: &Signature) -> Result<(), SortError> {
    match p {
        Prop::Atom(name, args) => {
            if name == EQUALITY {
                if args.len() != 2 {
                    return Err(SortError::Arity(name.clone()));
                }
                let a = sort_of(&args[0], sig)?;
                let b = sort_of(&args[1], sig)?;
                if a != b {
                    return Err(SortError::Mismatch {
                        symbol: name.clone(),
                        expected: a,
                        found: b,
                    });
                }
                return Ok(());
            }
            let rank = sig.preds.get(name).ok_or_else(|| SortError::UnknownSymbol(name.clone()))?;
            if rank.len() != args.len() {
                return Err(SortError::Arity(name.clone()));
            }
            for (a, s) in args.iter().zip(rank) {
                let found = sort_of(a, sig)?;
                if &found != s {
                    return Err(SortError::Mismatch {
                        symbol: name.clone(),
                        expected: s.clone(),
                        found,
                    });
                }
            }
            Ok(())
        }
        Prop::Top | Prop::Bottom => Ok(()),
        Prop::Not(q) => check_prop(q, sig),
        Prop::And(a, b) | Prop::Or(a, b) | Prop::Implies(a, b) => {
            check_prop(a, sig)?;
            check_prop(b, sig)
        }
        Prop::Forall(_, q) | Prop::Exists(_, q) => check_prop(q, sig),
    }
}

/// Free variables of `p` (exact, bound occurrences excluded).
pub fn free_vars(p: &Prop) -> BTreeSet<Var> {
    p.free_vars()
}

/// Capture-avoiding `(t/x)p`.
pub fn substitute(p: &Prop, x: &Var, t: &Term) -> Result<Prop, TermError> {
    p.substitute(x, t)
}
