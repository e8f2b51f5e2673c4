use std::collections::{BTreeMap, BTreeSet};

use super::sort::{Sort, SortSubst};

/// Reserved predicate name for the per-sort equality added by axiom
/// compilation. It is polymorphic and never declared.
pub const EQUALITY: &str = "=";

/// A constant, possibly schematic over `params` (e.g. `kc` over `T U`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstDecl {
    pub params: Vec<String>,
    pub sort: Sort,
}

/// A first-order function symbol of fixed rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunDecl {
    pub params: Vec<String>,
    pub args: Vec<Sort>,
    pub result: Sort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Const,
    Fun,
    Pred,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    /// Declaration order matters: the first base sort is the default for
    /// sort metavariables left undetermined by inference.
    pub base_sorts: Vec<String>,
    pub consts: BTreeMap<String, ConstDecl>,
    pub funs: BTreeMap<String, FunDecl>,
    pub preds: BTreeMap<String, Vec<Sort>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("symbol {0} declared twice")]
    Duplicate(String),
    #[error("sort {sort} of {symbol} uses undeclared base sort or parameter")]
    BadSort { symbol: String, sort: Sort },
}

impl Signature {
    pub fn new(base_sorts: &[&str]) -> Self {
        Signature {
            base_sorts: base_sorts.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn base_set(&self) -> BTreeSet<String> {
        self.base_sorts.iter().cloned().collect()
    }

    pub fn default_sort(&self) -> Sort {
        Sort::Base(self.base_sorts.first().cloned().unwrap_or_else(|| "i".into()))
    }

    pub fn is_base(&self, name: &str) -> bool {
        self.base_sorts.iter().any(|b| b == name)
    }

    pub fn kind(&self, name: &str) -> Option<SymbolKind> {
        if self.consts.contains_key(name) {
            Some(SymbolKind::Const)
        } else if self.funs.contains_key(name) {
            Some(SymbolKind::Fun)
        } else if self.preds.contains_key(name) || name == EQUALITY {
            Some(SymbolKind::Pred)
        } else {
            None
        }
    }

    /// Number of sort parameters of a constant or function symbol.
    pub fn params(&self, name: &str) -> usize {
        if let Some(c) = self.consts.get(name) {
            c.params.len()
        } else if let Some(f) = self.funs.get(name) {
            f.params.len()
        } else {
            0
        }
    }

    fn check_sort(&self, symbol: &str, sort: &Sort, params: &[String]) -> Result<(), SignatureError> {
        let ok = match sort {
            Sort::Base(b) => self.is_base(b),
            Sort::Var(v) => params.contains(v),
            Sort::Arrow(d, c) => {
                return self
                    .check_sort(symbol, d, params)
                    .and_then(|_| self.check_sort(symbol, c, params))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(SignatureError::BadSort {
                symbol: symbol.to_string(),
                sort: sort.clone(),
            })
        }
    }

    fn fresh_name(&self, name: &str) -> Result<(), SignatureError> {
        if self.kind(name).is_some() {
            Err(SignatureError::Duplicate(name.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn add_const(&mut self, name: &str, params: &[&str], sort: Sort) -> Result<(), SignatureError> {
        self.fresh_name(name)?;
        let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        self.check_sort(name, &sort, &params)?;
        self.consts.insert(name.to_string(), ConstDecl { params, sort });
        Ok(())
    }

    pub fn add_fun(
        &mut self,
        name: &str,
        params: &[&str],
        args: Vec<Sort>,
        result: Sort,
    ) -> Result<(), SignatureError> {
        self.fresh_name(name)?;
        let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        for a in &args {
            self.check_sort(name, a, &params)?;
        }
        self.check_sort(name, &result, &params)?;
        self.funs.insert(name.to_string(), FunDecl { params, args, result });
        Ok(())
    }

    pub fn add_pred(&mut self, name: &str, args: Vec<Sort>) -> Result<(), SignatureError> {
        self.fresh_name(name)?;
        for a in &args {
            self.check_sort(name, a, &[])?;
        }
        self.preds.insert(name.to_string(), args);
        Ok(())
    }

    /// Sort of a constant instance.
    pub fn const_sort(&self, name: &str, inst: &[Sort]) -> Option<Sort> {
        let c = self.consts.get(name)?;
        Some(c.sort.subst(&param_subst(&c.params, inst)))
    }

    /// Argument sorts and result sort of a function symbol instance.
    pub fn fun_rank(&self, name: &str, inst: &[Sort]) -> Option<(Vec<Sort>, Sort)> {
        let f = self.funs.get(name)?;
        let s = param_subst(&f.params, inst);
        Some((f.args.iter().map(|a| a.subst(&s)).collect(), f.result.subst(&s)))
    }
}

pub fn param_subst(params: &[String], inst: &[Sort]) -> SortSubst {
    params.iter().cloned().zip(inst.iter().cloned()).collect()
}
