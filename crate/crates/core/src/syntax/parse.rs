//! Text front end: s-expressions elaborated into well-sorted terms and
//! propositions. Schematic constants may carry an explicit instantiation,
//! `(kc i o)`, or leave it to sort inference, `(kc x y)`; sort
//! metavariables that inference leaves open default to the signature's first
//! base sort.

use std::collections::{BTreeMap, BTreeSet};

use super::prop::Prop;
use super::sequent::Sequent;
use super::sexp::{read_all, read_one, Pos, ReadError, Sexp};
use super::signature::{Signature, SymbolKind, EQUALITY};
use super::sort::{is_flexible, unify, Sort, SortSubst};
use super::term::{Term, Var};

/// Variable name → sort.
pub type Context = BTreeMap<String, Sort>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{0}")]
    Read(#[from] ReadError),
    #[error("{pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: unknown symbol {name}")]
    UnknownSymbol { pos: Pos, name: String },
    #[error("{pos}: sort mismatch in {what}: expected {expected}, found {found}")]
    SortMismatch {
        pos: Pos,
        what: String,
        expected: Sort,
        found: Sort,
    },
}

pub(crate) fn syntax<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax { pos, msg: msg.into() })
}

const KEYWORDS: &[&str] = &["true", "false", "not", "and", "or", "imp", "all", "ex", "seq", "vars", "->"];

/// Parses a sort. Atoms in `metas` (or, when `any_meta` is set, any atom
/// starting with an uppercase letter that is not a base sort) denote rigid
/// sort metavariables.
pub fn parse_sort_sexp(
    s: &Sexp,
    sig: &Signature,
    metas: &BTreeSet<String>,
    any_meta: bool,
) -> Result<Sort, ParseError> {
    match s {
        Sexp::Atom(a, pos) => {
            if sig.is_base(a) {
                Ok(Sort::base(a))
            } else if metas.contains(a)
                || (any_meta && a.chars().next().is_some_and(|c| c.is_ascii_uppercase()))
            {
                Ok(Sort::var(a))
            } else {
                syntax(*pos, format!("unknown sort {a}"))
            }
        }
        Sexp::List(items, pos) => {
            // (s1 -> s2 -> ... -> sn), right-associated
            if items.len() < 3 || items.len() % 2 == 0 {
                return syntax(*pos, "malformed arrow sort");
            }
            let mut parts = Vec::new();
            for (k, it) in items.iter().enumerate() {
                if k % 2 == 1 {
                    if it.as_atom() != Some("->") {
                        return syntax(it.pos(), "expected '->'");
                    }
                } else {
                    parts.push(parse_sort_sexp(it, sig, metas, any_meta)?);
                }
            }
            let cod = parts.pop().unwrap();
            Ok(Sort::arrows(parts, cod))
        }
    }
}

pub fn parse_sort(text: &str, sig: &Signature) -> Result<Sort, ParseError> {
    parse_sort_sexp(&read_one(text)?, sig, &BTreeSet::new(), false)
}

/// Sort elaboration state shared by every subterm of one top-level item.
pub struct Elaborator<'a> {
    pub sig: &'a Signature,
    scopes: Vec<(String, Sort)>,
    base_ctx: &'a Context,
    subst: SortSubst,
    counter: usize,
    /// Rigid metavariables usable in binder sorts and explicit instantiations.
    pub metas: BTreeSet<String>,
}

impl<'a> Elaborator<'a> {
    pub fn new(sig: &'a Signature, ctx: &'a Context) -> Self {
        let mut metas = BTreeSet::new();
        for s in ctx.values() {
            s.metavars(&mut metas);
        }
        Elaborator {
            sig,
            scopes: Vec::new(),
            base_ctx: ctx,
            subst: SortSubst::new(),
            counter: 0,
            metas,
        }
    }

    fn fresh(&mut self) -> Sort {
        self.counter += 1;
        Sort::Var(format!("?{}", self.counter))
    }

    fn lookup_var(&self, name: &str) -> Option<Sort> {
        self.scopes
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s.clone())
            .or_else(|| self.base_ctx.get(name).cloned())
    }

    fn unify_at(&mut self, pos: Pos, what: &str, expected: &Sort, found: &Sort) -> Result<(), ParseError> {
        if unify(expected, found, &mut self.subst) {
            Ok(())
        } else {
            Err(ParseError::SortMismatch {
                pos,
                what: what.to_string(),
                expected: expected.resolve(&self.subst),
                found: found.resolve(&self.subst),
            })
        }
    }

    fn try_sort(&self, s: &Sexp) -> Option<Sort> {
        // an atom bound as a variable is never read as a sort
        if let Some(a) = s.as_atom() {
            if self.lookup_var(a).is_some() && !self.sig.is_base(a) {
                return None;
            }
        }
        parse_sort_sexp(s, self.sig, &self.metas, false).ok()
    }

    /// Elaborates a term, returning it with its (possibly open) sort.
    pub fn term(&mut self, s: &Sexp, expected: Option<&Sort>) -> Result<(Term, Sort), ParseError> {
        let (t, sort) = self.term_inner(s)?;
        if let Some(e) = expected {
            self.unify_at(s.pos(), &s.to_string(), e, &sort)?;
        }
        Ok((t, sort))
    }

    fn symbol_head(&mut self, name: &str, pos: Pos, rest: &[Sexp]) -> Result<(Term, Sort, usize), ParseError> {
        let n = self.sig.params(name);
        let mut used = 0;
        let inst: Vec<Sort> = if n > 0 && rest.len() >= n {
            let explicit: Option<Vec<Sort>> = rest[..n].iter().map(|r| self.try_sort(r)).collect();
            match explicit {
                Some(v) => {
                    used = n;
                    v
                }
                None => (0..n).map(|_| self.fresh()).collect(),
            }
        } else {
            (0..n).map(|_| self.fresh()).collect()
        };
        match self.sig.kind(name) {
            Some(SymbolKind::Const) => {
                let sort = self.sig.const_sort(name, &inst).unwrap();
                Ok((Term::constant(name, inst, sort.clone()), sort, used))
            }
            Some(SymbolKind::Fun) => {
                let (args_s, result) = self.sig.fun_rank(name, &inst).unwrap();
                if rest.len() < used + args_s.len() {
                    return syntax(pos, format!("{name} expects {} argument(s)", args_s.len()));
                }
                let mut args = Vec::new();
                for (k, a_sort) in args_s.iter().enumerate() {
                    let (a, _) = self.term(&rest[used + k], Some(a_sort))?;
                    args.push(a);
                }
                used += args_s.len();
                Ok((
                    Term::Sym {
                        name: name.to_string(),
                        inst,
                        args,
                        sort: result.clone(),
                    },
                    result,
                    used,
                ))
            }
            _ => Err(ParseError::UnknownSymbol {
                pos,
                name: name.to_string(),
            }),
        }
    }

    fn term_inner(&mut self, s: &Sexp) -> Result<(Term, Sort), ParseError> {
        match s {
            Sexp::Atom(a, pos) => {
                if let Some(sort) = self.lookup_var(a) {
                    return Ok((Term::var(a, sort.clone()), sort));
                }
                match self.sig.kind(a) {
                    Some(SymbolKind::Const) => {
                        let (t, sort, _) = self.symbol_head(a, *pos, &[])?;
                        Ok((t, sort))
                    }
                    Some(SymbolKind::Fun) => syntax(*pos, format!("function symbol {a} needs arguments")),
                    _ => Err(ParseError::UnknownSymbol {
                        pos: *pos,
                        name: a.clone(),
                    }),
                }
            }
            Sexp::List(items, pos) => {
                let Some(head) = items.first() else {
                    return syntax(*pos, "empty term");
                };
                let rest = &items[1..];
                let (mut t, mut sort, used) = match head {
                    Sexp::Atom(a, hpos) if self.lookup_var(a).is_none() && self.sig.kind(a).is_some() => {
                        self.symbol_head(a, *hpos, rest)?
                    }
                    _ => {
                        let (t, s) = self.term_inner(head)?;
                        (t, s, 0)
                    }
                };
                for arg in &rest[used..] {
                    let (a, a_sort) = self.term_inner(arg)?;
                    let cod = self.fresh();
                    let want = Sort::arrow(a_sort, cod.clone());
                    self.unify_at(arg.pos(), &format!("application to {arg}"), &want, &sort)?;
                    t = Term::app_unchecked(t, a);
                    sort = cod;
                }
                Ok((t, sort))
            }
        }
    }

    pub fn prop(&mut self, s: &Sexp) -> Result<Prop, ParseError> {
        match s {
            Sexp::Atom(a, pos) => match a.as_str() {
                "true" => Ok(Prop::Top),
                "false" => Ok(Prop::Bottom),
                _ => syntax(*pos, format!("expected a proposition, found {a}")),
            },
            Sexp::List(items, pos) => {
                let Some(Sexp::Atom(head, hpos)) = items.first() else {
                    return syntax(*pos, "expected a connective or predicate");
                };
                let args = &items[1..];
                let arity = |n: usize| -> Result<(), ParseError> {
                    if args.len() == n {
                        Ok(())
                    } else {
                        syntax(*pos, format!("{head} expects {n} argument(s)"))
                    }
                };
                match head.as_str() {
                    "not" => {
                        arity(1)?;
                        Ok(Prop::not(self.prop(&args[0])?))
                    }
                    "and" | "or" | "imp" => {
                        arity(2)?;
                        let p = self.prop(&args[0])?;
                        let q = self.prop(&args[1])?;
                        Ok(match head.as_str() {
                            "and" => Prop::and(p, q),
                            "or" => Prop::or(p, q),
                            _ => Prop::implies(p, q),
                        })
                    }
                    "all" | "ex" => {
                        arity(3)?;
                        let Some(x) = args[0].as_atom() else {
                            return syntax(args[0].pos(), "expected a variable name");
                        };
                        check_ident(x, args[0].pos())?;
                        let sort = parse_sort_sexp(&args[1], self.sig, &self.metas, false)?;
                        self.scopes.push((x.to_string(), sort.clone()));
                        let body = self.prop(&args[2]);
                        self.scopes.pop();
                        let v = Var::new(x, sort);
                        Ok(if head == "all" {
                            Prop::forall(v, body?)
                        } else {
                            Prop::exists(v, body?)
                        })
                    }
                    p if p == EQUALITY => {
                        arity(2)?;
                        let (t, ts) = self.term(&args[0], None)?;
                        let (u, _) = self.term(&args[1], Some(&ts))?;
                        Ok(Prop::atom(EQUALITY, vec![t, u]))
                    }
                    p => {
                        let Some(rank) = self.sig.preds.get(p).cloned() else {
                            return Err(ParseError::UnknownSymbol {
                                pos: *hpos,
                                name: p.to_string(),
                            });
                        };
                        arity(rank.len())?;
                        let mut ts = Vec::new();
                        for (a, r) in args.iter().zip(&rank) {
                            ts.push(self.term(a, Some(r))?.0);
                        }
                        Ok(Prop::atom(p, ts))
                    }
                }
            }
        }
    }

    /// Resolves every sort, defaulting open flexible metavariables.
    pub fn finish_subst(&mut self) -> SortSubst {
        let mut open = BTreeSet::new();
        for k in 1..=self.counter {
            let v = format!("?{k}");
            Sort::Var(v.clone()).resolve(&self.subst).metavars(&mut open);
        }
        let default = self.sig.default_sort();
        for v in open.into_iter().filter(|v| is_flexible(v)) {
            self.subst.insert(v, default.clone());
        }
        self.subst
            .keys()
            .map(|k| (k.clone(), Sort::Var(k.clone()).resolve(&self.subst)))
            .collect()
    }

    pub fn finish_term(&mut self, t: &Term) -> Term {
        let s = self.finish_subst();
        t.subst_sorts(&s)
    }

    pub fn finish_prop(&mut self, p: &Prop) -> Prop {
        let s = self.finish_subst();
        p.subst_sorts(&s)
    }
}

pub(crate) fn check_ident(x: &str, pos: Pos) -> Result<(), ParseError> {
    let ok = x.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && x.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        && !KEYWORDS.contains(&x);
    if ok {
        Ok(())
    } else {
        syntax(pos, format!("invalid identifier {x}"))
    }
}

pub fn elaborate_term(s: &Sexp, sig: &Signature, ctx: &Context, expected: Option<&Sort>) -> Result<Term, ParseError> {
    let mut el = Elaborator::new(sig, ctx);
    let (t, _) = el.term(s, expected)?;
    Ok(el.finish_term(&t))
}

pub fn elaborate_prop(s: &Sexp, sig: &Signature, ctx: &Context) -> Result<Prop, ParseError> {
    let mut el = Elaborator::new(sig, ctx);
    let p = el.prop(s)?;
    Ok(el.finish_prop(&p))
}

pub fn parse_term(text: &str, sig: &Signature, ctx: &Context) -> Result<Term, ParseError> {
    elaborate_term(&read_one(text)?, sig, ctx, None)
}

/// Like [`parse_term`] with the expected sort of the whole term known.
pub fn parse_term_at(text: &str, sig: &Signature, ctx: &Context, sort: &Sort) -> Result<Term, ParseError> {
    elaborate_term(&read_one(text)?, sig, ctx, Some(sort))
}

pub fn parse_prop(text: &str, sig: &Signature, ctx: &Context) -> Result<Prop, ParseError> {
    elaborate_prop(&read_one(text)?, sig, ctx)
}

/// Reads `(vars (x sort) ...)` into `ctx`.
pub fn read_vars(form: &Sexp, sig: &Signature, ctx: &mut Context) -> Result<(), ParseError> {
    let items = form.as_list().unwrap_or(&[]);
    for decl in &items[1..] {
        match decl.as_list() {
            Some([Sexp::Atom(x, p), s]) => {
                check_ident(x, *p)?;
                let sort = parse_sort_sexp(s, sig, &BTreeSet::new(), true)?;
                ctx.insert(x.clone(), sort);
            }
            _ => return syntax(decl.pos(), "expected (name sort)"),
        }
    }
    Ok(())
}

pub fn elaborate_sequent(s: &Sexp, sig: &Signature, ctx: &Context) -> Result<Sequent, ParseError> {
    match s.as_list() {
        Some([Sexp::Atom(h, _), l, r]) if h == "seq" => {
            let side = |x: &Sexp| -> Result<Vec<Prop>, ParseError> {
                let Some(items) = x.as_list() else {
                    return syntax(x.pos(), "expected a list of propositions");
                };
                items.iter().map(|p| elaborate_prop(p, sig, ctx)).collect()
            };
            Ok(Sequent::new(side(l)?, side(r)?))
        }
        _ => syntax(s.pos(), "expected (seq (props...) (props...))"),
    }
}

/// Parses a sequent file: optional `(vars ...)` forms then one `(seq ...)`.
/// Returns the sequent with the variable context it declared.
pub fn parse_sequent_file(text: &str, sig: &Signature) -> Result<(Sequent, Context), ParseError> {
    let forms = read_all(text)?;
    let mut ctx = Context::new();
    let mut seq = None;
    for f in &forms {
        if f.is_form("vars") {
            read_vars(f, sig, &mut ctx)?;
        } else if f.is_form("seq") {
            if seq.is_some() {
                return syntax(f.pos(), "more than one sequent");
            }
            seq = Some(elaborate_sequent(f, sig, &ctx)?);
        } else {
            return syntax(f.pos(), "expected (vars ...) or (seq ...)");
        }
    }
    match seq {
        Some(s) => Ok((s, ctx)),
        None => syntax(Pos { line: 1, col: 1 }, "no (seq ...) form"),
    }
}

pub fn parse_sequent(text: &str, sig: &Signature, ctx: &Context) -> Result<Sequent, ParseError> {
    elaborate_sequent(&read_one(text)?, sig, ctx)
}
