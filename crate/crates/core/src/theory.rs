//! Polarized rewrite systems `⟨E, R−, R+⟩`, the clausality analysis, and the
//! two built-in presentations of simple type theory.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::syntax::parse::{check_ident, parse_sort_sexp, read_vars, Elaborator};
use crate::syntax::sexp::Pos;
use crate::syntax::sexp::{read_all, Sexp};
use crate::syntax::signature::SignatureError;
use crate::syntax::{check_prop, sort_of, Context, ParseError, Prop, Signature, Sort, Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Negative,
    Positive,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Negative => Polarity::Positive,
            Polarity::Positive => Polarity::Negative,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Negative => "negative",
            Polarity::Positive => "positive",
        })
    }
}

/// `lhs =_E rhs`, used left to right. Sort metavariables and the variables
/// in `vars` are schematic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSchema {
    pub name: String,
    pub vars: Vec<Var>,
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropRuleSchema {
    pub name: String,
    pub polarity: Polarity,
    pub vars: Vec<Var>,
    pub lhs: Prop,
    pub rhs: Prop,
}

impl PropRuleSchema {
    pub fn metavars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for v in &self.vars {
            v.sort.metavars(&mut out);
        }
        let mut sorts = BTreeSet::new();
        self.lhs.sorts_into(&mut sorts);
        self.rhs.sorts_into(&mut sorts);
        for s in sorts {
            s.metavars(&mut out);
        }
        out
    }
}

impl EquationSchema {
    pub fn metavars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut sorts = BTreeSet::new();
        self.lhs.sorts_into(&mut sorts);
        self.rhs.sorts_into(&mut sorts);
        for s in sorts {
            s.metavars(&mut out);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    pub name: String,
    pub sig: Signature,
    pub equations: Vec<EquationSchema>,
    pub neg_rules: Vec<PropRuleSchema>,
    pub pos_rules: Vec<PropRuleSchema>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoryError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("schema {name}: {msg}")]
    BadSchema { name: String, msg: String },
}

impl RewriteSystem {
    pub fn empty(sig: Signature) -> Self {
        RewriteSystem {
            name: "empty".into(),
            sig,
            equations: Vec::new(),
            neg_rules: Vec::new(),
            pos_rules: Vec::new(),
        }
    }

    pub fn rules(&self, pol: Polarity) -> &[PropRuleSchema] {
        match pol {
            Polarity::Negative => &self.neg_rules,
            Polarity::Positive => &self.pos_rules,
        }
    }

    pub fn all_rules(&self) -> impl Iterator<Item = &PropRuleSchema> {
        self.neg_rules.iter().chain(self.pos_rules.iter())
    }

    pub fn rule(&self, name: &str) -> Option<&PropRuleSchema> {
        self.all_rules().find(|r| r.name == name)
    }

    /// True if some rule rewrites an atom to an atom.
    pub fn has_atomic_rhs(&self) -> bool {
        self.all_rules().any(|r| r.rhs.is_atomic())
    }

    /// Checks the schema invariants: well-sorted sides, atomic rule left-hand
    /// sides, and no free variable on the right that is not on the left.
    pub fn validate(&self) -> Result<(), TheoryError> {
        let bad = |name: &str, msg: String| TheoryError::BadSchema {
            name: name.to_string(),
            msg,
        };
        for e in &self.equations {
            let l = sort_of(&e.lhs, &self.sig).map_err(|err| bad(&e.name, err.to_string()))?;
            let r = sort_of(&e.rhs, &self.sig).map_err(|err| bad(&e.name, err.to_string()))?;
            if l != r {
                return Err(bad(&e.name, format!("sides have sorts {l} and {r}")));
            }
            if !e.rhs.free_vars().is_subset(&e.lhs.free_vars()) {
                return Err(bad(&e.name, "right-hand side has extra variables".into()));
            }
        }
        for r in self.all_rules() {
            if !r.lhs.is_atomic() {
                return Err(bad(&r.name, "left-hand side is not atomic".into()));
            }
            check_prop(&r.lhs, &self.sig).map_err(|err| bad(&r.name, err.to_string()))?;
            check_prop(&r.rhs, &self.sig).map_err(|err| bad(&r.name, err.to_string()))?;
            if !r.rhs.free_vars().is_subset(&r.lhs.free_vars()) {
                return Err(bad(&r.name, "right-hand side has extra free variables".into()));
            }
        }
        Ok(())
    }
}

pub fn is_literal(p: &Prop) -> bool {
    match p {
        Prop::Atom(..) => true,
        Prop::Not(q) => q.is_atomic(),
        _ => false,
    }
}

/// `⊥`, or `∀x1…∀xp (L1 ∨ … ∨ Ln)` with `n ≥ 1` literals in any
/// bracketing of the disjunction.
pub fn is_clausal(p: &Prop) -> bool {
    fn disjunction_of_literals(p: &Prop) -> bool {
        match p {
            Prop::Or(a, b) => disjunction_of_literals(a) && disjunction_of_literals(b),
            other => is_literal(other),
        }
    }
    if *p == Prop::Bottom {
        return true;
    }
    let mut cur = p;
    while let Prop::Forall(_, body) = cur {
        cur = body;
    }
    disjunction_of_literals(cur)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Offender {
    pub polarity: Polarity,
    pub rule: String,
    pub rhs: Prop,
    pub reason: &'static str,
}

impl fmt::Display for Offender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rule {}: {} ({})", self.polarity, self.rule, self.rhs, self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClausalReport {
    pub clausal: bool,
    pub offenders: Vec<Offender>,
}

pub fn is_clausal_system(rs: &RewriteSystem) -> ClausalReport {
    let mut offenders = Vec::new();
    for r in &rs.neg_rules {
        if !is_clausal(&r.rhs) {
            offenders.push(Offender {
                polarity: Polarity::Negative,
                rule: r.name.clone(),
                rhs: r.rhs.clone(),
                reason: "not a clausal proposition",
            });
        }
    }
    for r in &rs.pos_rules {
        let reason = match &r.rhs {
            Prop::Not(q) if is_clausal(q) => None,
            Prop::Not(_) => Some("negation of a non-clausal proposition"),
            _ => Some("not the negation of a clausal proposition"),
        };
        if let Some(reason) = reason {
            offenders.push(Offender {
                polarity: Polarity::Positive,
                rule: r.name.clone(),
                rhs: r.rhs.clone(),
                reason,
            });
        }
    }
    ClausalReport {
        clausal: offenders.is_empty(),
        offenders,
    }
}

fn parse_signature_section(form: &Sexp, sig: &mut Signature) -> Result<(), TheoryError> {
    let items = form.as_list().unwrap();
    let head = items[0].as_atom().unwrap();
    let no_metas = BTreeSet::new();
    for decl in &items[1..] {
        match head {
            "sorts" => {
                let Some(name) = decl.as_atom() else {
                    return Err(bad_syntax(decl.pos(), "expected a sort name"));
                };
                sig.base_sorts.push(name.to_string());
            }
            "consts" => {
                let parts = decl.as_list().unwrap_or(&[]);
                let (name, params, sort) = match parts {
                    [Sexp::Atom(n, _), s] => (n, Vec::new(), s),
                    [Sexp::Atom(n, _), ps, s] => (n, param_list(ps)?, s),
                    _ => return Err(bad_syntax(decl.pos(), "expected (name [params] sort)")),
                };
                check_ident(name, decl.pos())?;
                let metas: BTreeSet<String> = params.iter().cloned().collect();
                let sort = parse_sort_sexp(sort, sig, &metas, false)?;
                let refs: Vec<&str> = params.iter().map(String::as_str).collect();
                sig.add_const(name, &refs, sort)?;
            }
            "funs" => {
                let parts = decl.as_list().unwrap_or(&[]);
                let [Sexp::Atom(name, _), ps, args, res] = parts else {
                    return Err(bad_syntax(decl.pos(), "expected (name (params) (arg sorts) result)"));
                };
                check_ident(name, decl.pos())?;
                let params = param_list(ps)?;
                let metas: BTreeSet<String> = params.iter().cloned().collect();
                let Some(args) = args.as_list() else {
                    return Err(bad_syntax(decl.pos(), "expected argument sort list"));
                };
                let args = args
                    .iter()
                    .map(|a| parse_sort_sexp(a, sig, &metas, false))
                    .collect::<Result<Vec<_>, _>>()?;
                let res = parse_sort_sexp(res, sig, &metas, false)?;
                let refs: Vec<&str> = params.iter().map(String::as_str).collect();
                sig.add_fun(name, &refs, args, res)?;
            }
            "preds" => {
                let parts = decl.as_list().unwrap_or(&[]);
                let Some(Sexp::Atom(name, _)) = parts.first() else {
                    return Err(bad_syntax(decl.pos(), "expected (name sorts...)"));
                };
                check_ident(name, decl.pos())?;
                let args = parts[1..]
                    .iter()
                    .map(|a| parse_sort_sexp(a, sig, &no_metas, false))
                    .collect::<Result<Vec<_>, _>>()?;
                sig.add_pred(name, args)?;
            }
            _ => unreachable!(),
        }
    }
    Ok(())
}

fn bad_syntax(pos: Pos, msg: impl Into<String>) -> TheoryError {
    TheoryError::Parse(ParseError::Syntax { pos, msg: msg.into() })
}

fn param_list(s: &Sexp) -> Result<Vec<String>, TheoryError> {
    let Some(items) = s.as_list() else {
        return Err(bad_syntax(s.pos(), "expected a parameter list"));
    };
    items
        .iter()
        .map(|p| {
            p.as_atom()
                .map(str::to_string)
                .ok_or_else(|| bad_syntax(p.pos(), "expected a parameter name"))
        })
        .collect()
}

/// Splits a schema entry into name, variable context and the two sides.
fn schema_parts<'s>(
    entry: &'s Sexp,
    sig: &Signature,
    default_name: String,
    needs_name: bool,
) -> Result<(String, Context, &'s Sexp, &'s Sexp), TheoryError> {
    let Some(items) = entry.as_list() else {
        return Err(bad_syntax(entry.pos(), "expected a schema entry"));
    };
    let mut rest: &[Sexp] = items;
    let mut name = default_name;
    if rest.len() >= 3 || needs_name {
        match rest.first() {
            Some(Sexp::Atom(n, _)) => {
                name = n.clone();
                rest = &rest[1..];
            }
            _ => return Err(bad_syntax(entry.pos(), "expected a rule name")),
        }
    }
    let mut ctx = Context::new();
    if let Some(first) = rest.first() {
        if first.is_form("vars") {
            read_vars(first, sig, &mut ctx)?;
            rest = &rest[1..];
        }
    }
    match rest {
        [l, r] => Ok((name, ctx, l, r)),
        _ => Err(bad_syntax(entry.pos(), "expected left- and right-hand sides")),
    }
}

fn ctx_vars(ctx: &Context) -> Vec<Var> {
    ctx.iter().map(|(n, s)| Var::new(n, s.clone())).collect()
}

/// Parses a theory file. Sections: `(name N)`, `(sorts ...)`, `(consts ...)`,
/// `(funs ...)`, `(preds ...)`, `(eqs ...)`, `(neg ...)`, `(pos ...)`.
pub fn parse_theory(text: &str) -> Result<RewriteSystem, TheoryError> {
    let forms = read_all(text).map_err(ParseError::from)?;
    let mut sig = Signature::default();
    let mut name = "theory".to_string();
    for f in &forms {
        if f.is_form("sorts") || f.is_form("consts") || f.is_form("funs") || f.is_form("preds") {
            parse_signature_section(f, &mut sig)?;
        } else if f.is_form("name") {
            if let Some([_, Sexp::Atom(n, _)]) = f.as_list() {
                name = n.clone();
            }
        }
    }
    let mut rs = RewriteSystem {
        name,
        sig,
        equations: Vec::new(),
        neg_rules: Vec::new(),
        pos_rules: Vec::new(),
    };
    for f in &forms {
        let Some(items) = f.as_list() else {
            return Err(bad_syntax(f.pos(), "expected a section"));
        };
        let head = items.first().and_then(Sexp::as_atom).unwrap_or("");
        match head {
            "sorts" | "consts" | "funs" | "preds" | "name" => {}
            "eqs" => {
                for (k, entry) in items[1..].iter().enumerate() {
                    let (n, ctx, l, r) = schema_parts(entry, &rs.sig, format!("eq{}", k + 1), false)?;
                    let mut el = Elaborator::new(&rs.sig, &ctx);
                    let (lhs, ls) = el.term(l, None)?;
                    let (rhs, _) = el.term(r, Some(&ls))?;
                    let lhs = el.finish_term(&lhs);
                    let rhs = el.finish_term(&rhs);
                    rs.equations.push(EquationSchema {
                        name: n,
                        vars: ctx_vars(&ctx),
                        lhs,
                        rhs,
                    });
                }
            }
            "neg" | "pos" => {
                let polarity = if head == "neg" { Polarity::Negative } else { Polarity::Positive };
                for entry in &items[1..] {
                    let (n, ctx, l, r) = schema_parts(entry, &rs.sig, String::new(), true)?;
                    let mut el = Elaborator::new(&rs.sig, &ctx);
                    let lhs = el.prop(l)?;
                    let rhs = el.prop(r)?;
                    let rule = PropRuleSchema {
                        name: n,
                        polarity,
                        vars: ctx_vars(&ctx),
                        lhs: el.finish_prop(&lhs),
                        rhs: el.finish_prop(&rhs),
                    };
                    if polarity == Polarity::Negative {
                        rs.neg_rules.push(rule);
                    } else {
                        rs.pos_rules.push(rule);
                    }
                }
            }
            other => return Err(bad_syntax(f.pos(), format!("unknown section {other}"))),
        }
    }
    rs.validate()?;
    Ok(rs)
}

const HOL_SIGNATURE: &str = r#"
(sorts i o)
(consts
  (kc (T U) (T -> U -> T))
  (sc (T U V) ((T -> U -> V) -> (T -> U) -> T -> V))
  (dor (o -> o -> o))
  (dnot (o -> o))
  (dall (T) ((T -> o) -> o))
  (zero i)
  (succ (i -> i))
  (pred (i -> i))
  (null (i -> o)))
(preds (eps o))
(eqs
  (k (vars (x T) (y U)) (kc x y) x)
  (s (vars (x (T -> U -> V)) (y (T -> U)) (z T)) (sc x y z) (x z (y z)))
  (pred-succ (vars (x i)) (pred (succ x)) x))
"#;

/// Simple type theory with every rule duplicated at both polarities.
pub const HOL_THEORY: &str = r#"
(neg
  (or-neg (vars (x o) (y o)) (eps (dor x y)) (or (eps x) (eps y)))
  (not-neg (vars (x o)) (eps (dnot x)) (not (eps x)))
  (all-neg (vars (x (T -> o))) (eps (dall x)) (all y T (eps (x y))))
  (nullsucc-neg (vars (x i)) (eps (null (succ x))) false)
  (nullzero-neg (eps (null zero)) true))
(pos
  (or-pos (vars (x o) (y o)) (eps (dor x y)) (or (eps x) (eps y)))
  (not-pos (vars (x o)) (eps (dnot x)) (not (eps x)))
  (all-pos (vars (x (T -> o))) (eps (dall x)) (all y T (eps (x y))))
  (nullsucc-pos (vars (x i)) (eps (null (succ x))) false)
  (nullzero-pos (eps (null zero)) true))
"#;

/// The clausal variant: positive rules produce negated clauses and the
/// universal quantifier is witnessed by `H`.
pub const HOLPM_THEORY: &str = r#"
(funs (H (T) ((T -> o)) T))
(neg
  (or-neg (vars (x o) (y o)) (eps (dor x y)) (or (eps x) (eps y)))
  (not-neg (vars (x o)) (eps (dnot x)) (not (eps x)))
  (all-neg (vars (x (T -> o))) (eps (dall x)) (all y T (eps (x y))))
  (nullsucc-neg (vars (x i)) (eps (null (succ x))) false))
(pos
  (or-pos-left (vars (x o) (y o)) (eps (dor x y)) (not (not (eps x))))
  (or-pos-right (vars (x o) (y o)) (eps (dor x y)) (not (not (eps y))))
  (not-pos (vars (x o)) (eps (dnot x)) (not (eps x)))
  (all-pos (vars (x (T -> o))) (eps (dall x)) (not (not (eps (x (H T x))))))
  (nullzero-pos (eps (null zero)) (not false)))
"#;

/// Name of the Skolem-style witness symbol of `HOLpm`.
pub const WITNESS_SYMBOL: &str = "H";

pub fn build_hol() -> RewriteSystem {
    let mut rs = parse_theory(&format!("(name HOL){HOL_SIGNATURE}{HOL_THEORY}")).expect("built-in HOL");
    rs.name = "HOL".into();
    rs
}

pub fn build_holpm() -> RewriteSystem {
    let mut rs = parse_theory(&format!("(name HOLpm){HOL_SIGNATURE}{HOLPM_THEORY}")).expect("built-in HOLpm");
    rs.name = "HOLpm".into();
    rs
}

/// Resolves `HOL`, `HOLpm` (also `HOL±`), or reads a theory file.
pub fn load_theory(name: &str) -> Result<RewriteSystem, String> {
    match name {
        "HOL" => Ok(build_hol()),
        "HOLpm" | "HOL±" | "HOLPM" => Ok(build_holpm()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            parse_theory(&text).map_err(|e| format!("{path}: {e}"))
        }
    }
}

/// Summary counts keyed by section, for reports.
pub fn rule_counts(rs: &RewriteSystem) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::new();
    m.insert("equations", rs.equations.len());
    m.insert("negative", rs.neg_rules.len());
    m.insert("positive", rs.pos_rules.len());
    m
}

/// The ι sort and the `o` sort used throughout the built-ins.
pub fn hol_sorts() -> (Sort, Sort) {
    (Sort::iota(), Sort::prop())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_prop;

    fn ctx(vars: &[(&str, Sort)]) -> Context {
        vars.iter().map(|(n, s)| (n.to_string(), s.clone())).collect()
    }

    #[test]
    fn literal_examples() {
        let rs = build_hol();
        let c = ctx(&[("x", Sort::prop())]);
        let p = |t: &str| parse_prop(t, &rs.sig, &c).unwrap();
        assert!(is_literal(&p("(eps x)")));
        assert!(is_literal(&p("(not (eps x))")));
        assert!(!is_literal(&p("(not (not (eps x)))")));
    }

    #[test]
    fn clausal_examples() {
        let rs = build_hol();
        let c = ctx(&[("x", Sort::arrow(Sort::prop(), Sort::prop()))]);
        let p = |t: &str| parse_prop(t, &rs.sig, &c).unwrap();
        assert!(is_clausal(&Prop::Bottom));
        assert!(is_clausal(&p("(all y o (eps (x y)))")));
        assert!(!is_clausal(&Prop::Top));
        assert!(is_clausal(&p("(all y o (or (eps (x y)) (or (not (eps y)) (eps y))))")));
        assert!(!is_clausal(&p("(all y o (and (eps (x y)) (eps y)))")));
    }

    #[test]
    fn builtin_counts() {
        let hol = build_hol();
        let pm = build_holpm();
        assert_eq!(hol.equations.len(), 3);
        assert_eq!(hol.neg_rules.len(), 5);
        assert_eq!(hol.pos_rules.len(), 5);
        assert_eq!(pm.equations.len(), 3);
        assert_eq!(pm.neg_rules.len(), 4);
        assert_eq!(pm.pos_rules.len(), 5);
        assert!(pm.sig.funs.contains_key(WITNESS_SYMBOL));
        assert!(!hol.sig.funs.contains_key(WITNESS_SYMBOL));
    }

    #[test]
    fn every_lhs_is_an_eps_atom() {
        for rs in [build_hol(), build_holpm()] {
            for r in rs.all_rules() {
                assert!(matches!(&r.lhs, Prop::Atom(p, a) if p == "eps" && a.len() == 1), "{}", r.name);
            }
        }
    }

    #[test]
    fn clausality_verdicts() {
        let pm = is_clausal_system(&build_holpm());
        assert!(pm.clausal, "{:?}", pm.offenders);
        let hol = is_clausal_system(&build_hol());
        assert!(!hol.clausal);
        let names: Vec<&str> = hol.offenders.iter().map(|o| o.rule.as_str()).collect();
        assert!(names.contains(&"or-pos"));
        assert!(names.contains(&"nullzero-neg"));
        let empty = RewriteSystem::empty(Signature::new(&["i"]));
        assert!(is_clausal_system(&empty).clausal);
    }

    #[test]
    fn all_pos_rule_shape() {
        let pm = build_holpm();
        let r = pm.rule("all-pos").unwrap();
        assert_eq!(r.rhs.to_string(), "(not (not (eps (x (H T x)))))");
        let hol = build_hol();
        let r = hol.rule("all-neg").unwrap();
        assert_eq!(r.rhs.to_string(), "(all y T (eps (x y)))");
        assert_eq!(r.vars[0].sort, Sort::arrow(Sort::var("T"), Sort::prop()));
    }

    #[test]
    fn bad_schema_rejected() {
        let text = "(sorts i) (preds (p i) (q i)) (neg (r (vars (x i)) (and (p x) (p x)) (q x)))";
        assert!(matches!(parse_theory(text), Err(TheoryError::BadSchema { .. })));
        let text = "(sorts i) (preds (p i) (q i)) (neg (r (vars (x i) (y i)) (p x) (q y)))";
        assert!(matches!(parse_theory(text), Err(TheoryError::BadSchema { .. })));
    }
}
