//! Proof files: one s-expression per node,
//! `(rule-name (L 0) (reducts p ...) (var x sort) (term t) (cut p) child ...)`,
//! optionally preceded by `(vars (x sort) ...)` declaring free variables.

use std::collections::BTreeMap;

use super::{annotation_vars, ProofTree, Rule};
use crate::syntax::parse::{elaborate_prop, elaborate_term, parse_sort_sexp, read_vars};
use crate::syntax::sexp::{read_all, Sexp};
use crate::syntax::{Context, ParseError, Side, Signature, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofParseError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{pos}: {msg}")]
    Malformed { pos: crate::syntax::sexp::Pos, msg: String },
}

fn malformed<T>(s: &Sexp, msg: impl Into<String>) -> Result<T, ProofParseError> {
    Err(ProofParseError::Malformed {
        pos: s.pos(),
        msg: msg.into(),
    })
}

fn node(s: &Sexp, sig: &Signature, ctx: &Context) -> Result<ProofTree, ProofParseError> {
    let Some(items) = s.as_list() else {
        return malformed(s, "expected a proof node");
    };
    let Some(head) = items.first().and_then(Sexp::as_atom) else {
        return malformed(s, "expected a rule name");
    };
    let Some(rule) = Rule::from_name(head) else {
        return malformed(s, format!("unknown rule {head}"));
    };
    let mut tree = ProofTree::leaf(rule, None);
    let mut ctx = ctx.clone();
    // the bound variable scopes over the whole node, so read it first
    for it in &items[1..] {
        if it.is_form("var") {
            let Some([_, Sexp::Atom(x, _), sort]) = it.as_list() else {
                return malformed(it, "expected (var name sort)");
            };
            let sort = parse_sort_sexp(sort, sig, &Default::default(), true)?;
            ctx.insert(x.clone(), sort.clone());
            tree.var = Some(Var::new(x, sort));
        }
    }
    for it in &items[1..] {
        let parts = it.as_list().unwrap_or(&[]);
        match parts.first().and_then(Sexp::as_atom) {
            Some(side @ ("L" | "R")) => {
                let Some([_, Sexp::Atom(n, _)]) = it.as_list() else {
                    return malformed(it, "expected (L index) or (R index)");
                };
                let Ok(index) = n.parse::<usize>() else {
                    return malformed(it, "index is not a number");
                };
                let side = if side == "L" { Side::Left } else { Side::Right };
                tree.principal = Some((side, index));
            }
            Some("reducts") => {
                for p in &parts[1..] {
                    tree.reducts.push(elaborate_prop(p, sig, &ctx)?);
                }
            }
            Some("var") => {}
            Some("term") => {
                let [_, t] = parts else {
                    return malformed(it, "expected (term t)");
                };
                let expected = tree.var.as_ref().map(|v| v.sort.clone());
                tree.term = Some(elaborate_term(t, sig, &ctx, expected.as_ref())?);
            }
            // `(cut p)` annotates; a longer `(cut ...)` is a cut child node
            Some("cut") if parts.len() == 2 => {
                tree.cut = Some(elaborate_prop(&parts[1], sig, &ctx)?);
            }
            _ => tree.children.push(node(it, sig, &ctx)?),
        }
    }
    Ok(tree)
}

pub fn parse_proof(text: &str, sig: &Signature, ctx: &Context) -> Result<ProofTree, ProofParseError> {
    let forms = read_all(text).map_err(ParseError::from)?;
    let mut ctx = ctx.clone();
    let mut root = None;
    for f in &forms {
        if f.is_form("vars") {
            read_vars(f, sig, &mut ctx)?;
        } else if root.is_none() {
            root = Some(node(f, sig, &ctx)?);
        } else {
            return malformed(f, "more than one proof");
        }
    }
    match root {
        Some(r) => Ok(r),
        None => Err(ProofParseError::Malformed {
            pos: crate::syntax::sexp::Pos { line: 1, col: 1 },
            msg: "no proof".into(),
        }),
    }
}

/// Parses a proof file with its own `(vars ...)` header only.
pub fn parse_proof_file(text: &str, sig: &Signature) -> Result<ProofTree, ProofParseError> {
    parse_proof(text, sig, &Context::new())
}

fn print_node(t: &ProofTree, indent: usize, out: &mut String) {
    out.push_str(&" ".repeat(indent));
    out.push('(');
    out.push_str(t.rule.name());
    if let Some((side, i)) = t.principal {
        out.push_str(&format!(" ({side} {i})"));
    }
    if let Some(v) = &t.var {
        out.push_str(&format!(" (var {} {})", v.name, v.sort));
    }
    if let Some(term) = &t.term {
        out.push_str(&format!(" (term {term})"));
    }
    if let Some(c) = &t.cut {
        out.push_str(&format!(" (cut {c})"));
    }
    if !t.reducts.is_empty() {
        out.push_str(" (reducts");
        for p in &t.reducts {
            out.push(' ');
            out.push_str(&p.to_string());
        }
        out.push(')');
    }
    for c in &t.children {
        out.push('\n');
        print_node(c, indent + 2, out);
    }
    out.push(')');
}

/// Prints a proof with a `(vars ...)` header covering the free variables of
/// its annotations, in a form [`parse_proof`] reads back.
pub fn print_proof(t: &ProofTree) -> String {
    let mut vars = Default::default();
    annotation_vars(t, &mut vars);
    let mut by_name = BTreeMap::new();
    for v in vars {
        by_name.entry(v.name.clone()).or_insert(v.sort);
    }
    let mut out = String::new();
    if !by_name.is_empty() {
        out.push_str("(vars");
        for (n, s) in &by_name {
            out.push_str(&format!(" ({n} {s})"));
        }
        out.push_str(")\n");
    }
    print_node(t, 0, &mut out);
    out.push('\n');
    out
}
