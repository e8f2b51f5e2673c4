//! Typed first-order (TFF) export and a reader for the same dialect.
//!
//! Every simple sort becomes an uninterpreted type (`fun_i_o` for `i -> o`),
//! application at `T -> U` becomes `app_T_U`, and schematic symbols carry
//! their instance in the name (`kc_i_o`). Variables are renamed `X0, X1, ...`
//! by binder depth, so export is deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Axiom, AxiomSet, AxiomTag};
use crate::syntax::{Prop, Sequent, Signature, Sort, Term, Var, EQUALITY};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TffOptions {
    /// Emit the generated equality axioms instead of relying on native `=`.
    pub explicit_equality: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TffError {
    #[error("axiom {0} is not closed")]
    OpenAxiom(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("unknown type {0}")]
    UnknownType(String),
    #[error("ill-sorted {0}")]
    IllSorted(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TffFormula {
    pub name: String,
    pub role: String,
    pub prop: Prop,
}

/// The non-declaration content of a TFF file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TffProblem {
    pub types: Vec<String>,
    pub formulas: Vec<TffFormula>,
}

impl TffProblem {
    pub fn with_role<'a>(&'a self, role: &'a str) -> impl Iterator<Item = &'a TffFormula> {
        self.formulas.iter().filter(move |f| f.role == role)
    }
}

fn is_lower_word(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Quotes names that are not TPTP lower words (`H_i` becomes `'H_i'`).
fn atom_name(s: &str) -> String {
    if is_lower_word(s) {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\\', "\\\\").replace('\'', "\\'"))
    }
}

fn symbol_name(name: &str, inst: &[Sort]) -> String {
    let mut out = name.to_string();
    for s in inst {
        out.push('_');
        out.push_str(&s.mangle());
    }
    out
}

fn app_name(fun_sort: &Sort) -> String {
    let (d, c) = fun_sort.split_arrow().expect("application at an arrow sort");
    format!("app_{}_{}", d.mangle(), c.mangle())
}

fn formula_name(a: &Axiom) -> String {
    let tag = match a.tag {
        AxiomTag::EqualityTheory => "eqth",
        AxiomTag::Equation => "eq",
        AxiomTag::NegRule => "neg",
        AxiomTag::PosRule => "pos",
    };
    let base: String = a.schema.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    atom_name(&format!("{tag}_{}", symbol_name(&base, &a.inst)))
}

/// `∀x̄. ∧Γ ⇒ ∨Δ` over the free variables of the sequent.
pub fn sequent_formula(goal: &Sequent) -> Prop {
    let join = |ps: &[Prop], f: fn(Prop, Prop) -> Prop| {
        let mut it = ps.iter().rev().cloned();
        let last = it.next()?;
        Some(it.fold(last, |acc, p| f(p, acc)))
    };
    let right = join(&goal.right, Prop::or).unwrap_or(Prop::Bottom);
    let body = match join(&goal.left, Prop::and) {
        Some(l) => Prop::implies(l, right),
        None => right,
    };
    let mut vars: Vec<Var> = Vec::new();
    for p in goal.formulas() {
        for v in p.free_vars_ordered() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    Prop::forall_all(vars, body)
}

/// Symbols and types a set of formulas needs declared.
#[derive(Default)]
struct Decls {
    types: BTreeSet<Sort>,
    /// mangled name -> TFF type text
    symbols: BTreeMap<String, String>,
    preds: BTreeMap<String, String>,
}

impl Decls {
    fn sort(&mut self, s: &Sort) {
        s.components(&mut self.types);
        if s.split_arrow().is_some() {
            let (d, c) = s.split_arrow().unwrap();
            self.symbols
                .insert(app_name(s), format!("({} * {}) > {}", s.mangle(), d.mangle(), c.mangle()));
        }
    }

    fn term(&mut self, t: &Term) {
        self.sort(&t.sort());
        match t {
            Term::Var(_) => {}
            Term::Sym { name, inst, args, sort } => {
                let ty = if args.is_empty() {
                    sort.mangle()
                } else {
                    let args: Vec<String> = args.iter().map(|a| a.sort().mangle()).collect();
                    let dom = if args.len() == 1 { args[0].clone() } else { format!("({})", args.join(" * ")) };
                    format!("{dom} > {}", sort.mangle())
                };
                self.symbols.insert(symbol_name(name, inst), ty);
                args.iter().for_each(|a| self.term(a));
            }
            Term::App(f, a) => {
                self.term(f);
                self.term(a);
            }
        }
    }

    fn prop(&mut self, p: &Prop) {
        match p {
            Prop::Atom(name, args) => {
                args.iter().for_each(|a| self.term(a));
                if name != EQUALITY {
                    let ty = match args.len() {
                        0 => "$o".to_string(),
                        1 => format!("{} > $o", args[0].sort().mangle()),
                        _ => {
                            let a: Vec<String> = args.iter().map(|a| a.sort().mangle()).collect();
                            format!("({}) > $o", a.join(" * "))
                        }
                    };
                    self.preds.insert(name.clone(), ty);
                }
            }
            Prop::Top | Prop::Bottom => {}
            Prop::Not(a) => self.prop(a),
            Prop::And(a, b) | Prop::Or(a, b) | Prop::Implies(a, b) => {
                self.prop(a);
                self.prop(b);
            }
            Prop::Forall(v, a) | Prop::Exists(v, a) => {
                self.sort(&v.sort);
                self.prop(a);
            }
        }
    }
}

fn write_term(t: &Term, names: &HashMap<Var, String>, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(names.get(v).map(String::as_str).unwrap_or(&v.name)),
        Term::Sym { name, inst, args, .. } => {
            out.push_str(&atom_name(&symbol_name(name, inst)));
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(a, names, out);
                }
                out.push(')');
            }
        }
        Term::App(f, a) => {
            out.push_str(&app_name(&f.sort()));
            out.push('(');
            write_term(f, names, out);
            out.push_str(", ");
            write_term(a, names, out);
            out.push(')');
        }
    }
}

fn write_prop(p: &Prop, names: &mut HashMap<Var, String>, depth: usize, out: &mut String) {
    match p {
        Prop::Atom(name, args) if name == EQUALITY && args.len() == 2 => {
            out.push('(');
            write_term(&args[0], names, out);
            out.push_str(" = ");
            write_term(&args[1], names, out);
            out.push(')');
        }
        Prop::Atom(name, args) => {
            out.push_str(&atom_name(name));
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(a, names, out);
                }
                out.push(')');
            }
        }
        Prop::Top => out.push_str("$true"),
        Prop::Bottom => out.push_str("$false"),
        Prop::Not(a) => {
            out.push_str("~ ");
            write_prop(a, names, depth, out);
        }
        Prop::And(a, b) | Prop::Or(a, b) | Prop::Implies(a, b) => {
            let op = match p {
                Prop::And(..) => "&",
                Prop::Or(..) => "|",
                _ => "=>",
            };
            out.push('(');
            write_prop(a, names, depth, out);
            out.push_str(&format!(" {op} "));
            write_prop(b, names, depth, out);
            out.push(')');
        }
        Prop::Forall(v, a) | Prop::Exists(v, a) => {
            let q = if matches!(p, Prop::Forall(..)) { '!' } else { '?' };
            let name = format!("X{depth}");
            let shadowed = names.insert(v.clone(), name.clone());
            out.push_str(&format!("({q} [{name}: {}] : ", v.sort.mangle()));
            write_prop(a, names, depth + 1, out);
            out.push(')');
            match shadowed {
                Some(old) => names.insert(v.clone(), old),
                None => names.remove(v),
            };
        }
    }
}

fn formula_text(p: &Prop) -> String {
    let mut out = String::new();
    write_prop(p, &mut HashMap::new(), 0, &mut out);
    out
}

/// Renders an axiom set, and optionally a conjecture, as TFF.
pub fn export_tff(ax: &AxiomSet, conjecture: Option<&Sequent>, opts: TffOptions) -> Result<String, TffError> {
    let axioms: Vec<&Axiom> = ax
        .axioms
        .iter()
        .filter(|a| opts.explicit_equality || a.tag != AxiomTag::EqualityTheory)
        .collect();
    if let Some(a) = axioms.iter().find(|a| !a.prop.is_closed()) {
        return Err(TffError::OpenAxiom(a.name()));
    }
    let goal = conjecture.map(sequent_formula);

    let mut decls = Decls::default();
    for s in &ax.universe {
        decls.sort(s);
    }
    for (name, c) in &ax.sig.consts {
        let metas = c.params.clone();
        for inst in super::instances(&metas, &ax.universe) {
            let inst = super::inst_sorts(&inst);
            if let Some(sort) = ax.sig.const_sort(name, &inst) {
                if ax.universe.contains(&sort) {
                    decls.term(&Term::constant(name, inst, sort));
                }
            }
        }
    }
    for p in axioms.iter().map(|a| &a.prop).chain(goal.as_ref()) {
        decls.prop(p);
    }

    let mut out = String::new();
    for s in &decls.types {
        let m = s.mangle();
        out.push_str(&format!("tff(type_{m}, type, {m}: $tType).\n"));
    }
    for (name, ty) in decls.symbols.iter().chain(&decls.preds) {
        let q = atom_name(name);
        let label = atom_name(&format!("decl_{name}"));
        out.push_str(&format!("tff({label}, type, {q}: {ty}).\n"));
    }
    for a in &axioms {
        out.push_str(&format!("tff({}, axiom, {}).\n", formula_name(a), formula_text(&a.prop)));
    }
    if let Some(g) = goal {
        out.push_str(&format!("tff(goal, conjecture, {}).\n", formula_text(&g)));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Punct(&'static str),
    Lower(String),
    Upper(String),
    Dollar(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, TffError> {
    const PUNCT: [&str; 14] = ["=>", "(", ")", "[", "]", ",", ".", ":", ">", "*", "!", "?", "~", "="];
    let mut out = Vec::new();
    let mut line = 1;
    let mut rest = text;
    while let Some(c) = rest.chars().next() {
        if c == '\n' {
            line += 1;
        }
        if c.is_whitespace() {
            rest = &rest[c.len_utf8()..];
            continue;
        }
        if c == '%' {
            rest = rest.find('\n').map_or("", |i| &rest[i..]);
            continue;
        }
        if c == '&' || c == '|' {
            out.push((Tok::Punct(if c == '&' { "&" } else { "|" }), line));
            rest = &rest[1..];
            continue;
        }
        if let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) {
            out.push((Tok::Punct(p), line));
            rest = &rest[p.len()..];
            continue;
        }
        if c == '\'' {
            let mut name = String::new();
            let mut chars = rest[1..].char_indices();
            let end = loop {
                match chars.next() {
                    Some((i, '\'')) => break i + 2,
                    Some((_, '\\')) => match chars.next() {
                        Some((_, e)) => name.push(e),
                        None => break 0,
                    },
                    Some((_, ch)) => name.push(ch),
                    None => break 0,
                }
            };
            if end == 0 {
                return Err(TffError::Syntax { line, msg: "unterminated quoted name".into() });
            }
            out.push((Tok::Lower(name), line));
            rest = &rest[end..];
            continue;
        }
        let word_len = rest
            .char_indices()
            .skip(1)
            .find(|(_, ch)| !(ch.is_ascii_alphanumeric() || *ch == '_'))
            .map_or(rest.len(), |(i, _)| i);
        let word = &rest[..word_len];
        let tok = match c {
            '$' => Tok::Dollar(word[1..].to_string()),
            c if c.is_ascii_uppercase() => Tok::Upper(word.to_string()),
            c if c.is_ascii_alphanumeric() => Tok::Lower(word.to_string()),
            _ => return Err(TffError::Syntax { line, msg: format!("unexpected character {c:?}") }),
        };
        out.push((tok, line));
        rest = &rest[word_len..];
    }
    Ok(out)
}

enum FTerm {
    Var(String),
    Fun(String, Vec<FTerm>),
}

struct Reader<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'a Signature,
    bases: BTreeSet<String>,
    env: Vec<(String, Var)>,
}

impl Reader<'_> {
    fn line(&self) -> usize {
        self.toks.get(self.pos).or(self.toks.last()).map_or(1, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, TffError> {
        Err(TffError::Syntax { line: self.line(), msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, p: &'static str) -> bool {
        if self.peek() == Some(&Tok::Punct(p)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &'static str) -> Result<(), TffError> {
        if self.eat(p) {
            Ok(())
        } else {
            self.err(format!("expected {p}"))
        }
    }

    fn lower(&mut self) -> Result<String, TffError> {
        match self.peek() {
            Some(Tok::Lower(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn sort(&self, name: &str) -> Result<Sort, TffError> {
        let toks: Vec<&str> = name.split('_').collect();
        match Sort::demangle_prefix(&toks, &self.bases) {
            Some((s, n)) if n == toks.len() => Ok(s),
            _ => Err(TffError::UnknownType(name.to_string())),
        }
    }

    /// Splits a mangled symbol into the signature name and its instance.
    fn symbol(&self, name: &str) -> Option<(String, Vec<Sort>)> {
        let candidates = self
            .sig
            .consts
            .iter()
            .map(|(n, c)| (n, c.params.len()))
            .chain(self.sig.funs.iter().map(|(n, f)| (n, f.params.len())));
        for (n, k) in candidates {
            if k == 0 {
                if n == name {
                    return Some((n.clone(), vec![]));
                }
                continue;
            }
            let Some(rest) = name.strip_prefix(n.as_str()).and_then(|r| r.strip_prefix('_')) else {
                continue;
            };
            let toks: Vec<&str> = rest.split('_').collect();
            let mut used = 0;
            let mut inst = Vec::new();
            while inst.len() < k {
                let Some((s, m)) = Sort::demangle_prefix(&toks[used..], &self.bases) else { break };
                inst.push(s);
                used += m;
            }
            if inst.len() == k && used == toks.len() {
                return Some((n.clone(), inst));
            }
        }
        None
    }

    fn fterm(&mut self) -> Result<FTerm, TffError> {
        match self.peek().cloned() {
            Some(Tok::Upper(v)) => {
                self.pos += 1;
                Ok(FTerm::Var(v))
            }
            Some(Tok::Lower(f)) => {
                self.pos += 1;
                let mut args = Vec::new();
                if self.eat("(") {
                    loop {
                        args.push(self.fterm()?);
                        if !self.eat(",") {
                            break;
                        }
                    }
                    self.expect(")")?;
                }
                Ok(FTerm::Fun(f, args))
            }
            _ => self.err("expected a term"),
        }
    }

    fn term(&self, t: FTerm) -> Result<Term, TffError> {
        match t {
            FTerm::Var(v) => match self.env.iter().rev().find(|(n, _)| *n == v) {
                Some((_, var)) => Ok(Term::Var(var.clone())),
                None => Err(TffError::UnknownSymbol(v)),
            },
            FTerm::Fun(f, args) => {
                let args = args.into_iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                if let Some(rest) = f.strip_prefix("app_") {
                    let [g, a] = <[Term; 2]>::try_from(args).map_err(|_| TffError::IllSorted(f.clone()))?;
                    let expected = self.sort(&format!("fun_{rest}"))?;
                    if g.sort() != expected {
                        return Err(TffError::IllSorted(f));
                    }
                    return Term::app(g, a).map_err(|e| TffError::IllSorted(e.to_string()));
                }
                let (name, inst) = self.symbol(&f).ok_or_else(|| TffError::UnknownSymbol(f.clone()))?;
                if let Some(sort) = self.sig.const_sort(&name, &inst) {
                    if !args.is_empty() {
                        return Err(TffError::IllSorted(f));
                    }
                    return Ok(Term::constant(&name, inst, sort));
                }
                let (doms, result) = self.sig.fun_rank(&name, &inst).ok_or(TffError::UnknownSymbol(f.clone()))?;
                if doms.len() != args.len() || doms.iter().zip(&args).any(|(d, a)| *d != a.sort()) {
                    return Err(TffError::IllSorted(f));
                }
                Ok(Term::Sym { name, inst, args, sort: result })
            }
        }
    }

    fn formula(&mut self) -> Result<Prop, TffError> {
        let lhs = self.disjunction()?;
        if self.eat("=>") {
            Ok(Prop::implies(lhs, self.formula()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Prop, TffError> {
        let mut p = self.conjunction()?;
        while self.eat("|") {
            p = Prop::or(p, self.conjunction()?);
        }
        Ok(p)
    }

    fn conjunction(&mut self) -> Result<Prop, TffError> {
        let mut p = self.unitary()?;
        while self.eat("&") {
            p = Prop::and(p, self.unitary()?);
        }
        Ok(p)
    }

    fn unitary(&mut self) -> Result<Prop, TffError> {
        if self.eat("(") {
            let p = self.formula()?;
            self.expect(")")?;
            return Ok(p);
        }
        if self.eat("~") {
            return Ok(Prop::not(self.unitary()?));
        }
        let universal = self.eat("!");
        if universal || self.eat("?") {
            self.expect("[")?;
            let mut vars = Vec::new();
            loop {
                let Some(Tok::Upper(v)) = self.peek().cloned() else {
                    return self.err("expected a variable");
                };
                self.pos += 1;
                self.expect(":")?;
                let ty = self.lower()?;
                let sort = self.sort(&ty)?;
                vars.push(Var::new(&v, sort));
                if !self.eat(",") {
                    break;
                }
            }
            self.expect("]")?;
            self.expect(":")?;
            let depth = self.env.len();
            self.env.extend(vars.iter().map(|v| (v.name.clone(), v.clone())));
            let body = self.unitary();
            self.env.truncate(depth);
            let body = body?;
            return Ok(vars.into_iter().rev().fold(body, |acc, v| {
                if universal {
                    Prop::forall(v, acc)
                } else {
                    Prop::exists(v, acc)
                }
            }));
        }
        if let Some(Tok::Dollar(d)) = self.peek().cloned() {
            self.pos += 1;
            return match d.as_str() {
                "true" => Ok(Prop::Top),
                "false" => Ok(Prop::Bottom),
                _ => self.err(format!("unexpected ${d}")),
            };
        }
        let t = self.fterm()?;
        if self.eat("=") {
            let u = self.fterm()?;
            let (t, u) = (self.term(t)?, self.term(u)?);
            if t.sort() != u.sort() {
                return Err(TffError::IllSorted(format!("{t} = {u}")));
            }
            return Ok(Prop::atom(EQUALITY, vec![t, u]));
        }
        match t {
            FTerm::Fun(p, args) if self.sig.preds.contains_key(&p) => {
                let args = args.into_iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                let expected = &self.sig.preds[&p];
                if expected.len() != args.len() || expected.iter().zip(&args).any(|(s, a)| *s != a.sort()) {
                    return Err(TffError::IllSorted(p));
                }
                Ok(Prop::atom(&p, args))
            }
            FTerm::Fun(p, _) => Err(TffError::UnknownSymbol(p)),
            FTerm::Var(v) => self.err(format!("variable {v} used as a formula")),
        }
    }

    /// Skips a type declaration body, returning the declared name if it
    /// declares a type.
    fn declaration(&mut self) -> Result<Option<String>, TffError> {
        let name = self.lower()?;
        self.expect(":")?;
        let mut depth = 0usize;
        let mut is_type = false;
        loop {
            match self.peek() {
                None => return self.err("unterminated declaration"),
                Some(Tok::Punct(")")) if depth == 0 => break,
                Some(Tok::Punct("(")) => depth += 1,
                Some(Tok::Punct(")")) => depth -= 1,
                Some(Tok::Dollar(d)) if d == "tType" => is_type = true,
                _ => {}
            }
            self.pos += 1;
        }
        Ok(is_type.then_some(name))
    }
}

/// Reads the TFF dialect written by [`export_tff`] back into propositions
/// over `sig`.
pub fn parse_tff(text: &str, sig: &Signature) -> Result<TffProblem, TffError> {
    let mut r = Reader {
        toks: lex(text)?,
        pos: 0,
        sig,
        bases: sig.base_set(),
        env: Vec::new(),
    };
    let mut problem = TffProblem::default();
    while r.peek().is_some() {
        if r.lower()? != "tff" {
            return r.err("expected tff(...)");
        }
        r.expect("(")?;
        let name = r.lower()?;
        r.expect(",")?;
        let role = r.lower()?;
        r.expect(",")?;
        if role == "type" {
            if let Some(t) = r.declaration()? {
                problem.types.push(t);
            }
        } else {
            let prop = r.formula()?;
            problem.formulas.push(TffFormula { name, role, prop });
        }
        r.expect(")")?;
        r.expect(".")?;
    }
    Ok(problem)
}
