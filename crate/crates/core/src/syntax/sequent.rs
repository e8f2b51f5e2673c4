use std::collections::BTreeSet;
use std::fmt;

use super::prop::Prop;
use super::term::Var;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "L",
            Side::Right => "R",
        })
    }
}

/// Two-sided sequent. Formula positions are significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequent {
    pub left: Vec<Prop>,
    pub right: Vec<Prop>,
}

impl Sequent {
    pub fn new(left: Vec<Prop>, right: Vec<Prop>) -> Self {
        Sequent { left, right }
    }

    pub fn side(&self, side: Side) -> &[Prop] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn get(&self, side: Side, index: usize) -> Option<&Prop> {
        self.side(side).get(index)
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.left
            .iter()
            .chain(self.right.iter())
            .flat_map(|p| p.free_vars())
            .collect()
    }

    /// Free variables of every formula except the one at `skip`.
    pub fn free_vars_except(&self, skip: (Side, usize)) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for (i, p) in self.left.iter().enumerate() {
            if (Side::Left, i) != skip {
                out.extend(p.free_vars());
            }
        }
        for (i, p) in self.right.iter().enumerate() {
            if (Side::Right, i) != skip {
                out.extend(p.free_vars());
            }
        }
        out
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Prop> {
        self.left.iter().chain(self.right.iter())
    }

    pub fn mentions_symbol(&self, sym: &str) -> bool {
        self.formulas().any(|p| p.mentions_symbol(sym))
    }

    pub fn alpha_eq(&self, other: &Sequent) -> bool {
        self.left.len() == other.left.len()
            && self.right.len() == other.right.len()
            && self.left.iter().zip(&other.left).all(|(a, b)| a.alpha_eq(b))
            && self.right.iter().zip(&other.right).all(|(a, b)| a.alpha_eq(b))
    }

    /// `(vars ...)` header for the free variables followed by the sequent,
    /// suitable for [`super::parse::parse_sequent_file`].
    pub fn to_file_string(&self) -> String {
        let fv = self.free_vars();
        let mut out = String::new();
        if !fv.is_empty() {
            out.push_str("(vars");
            for v in &fv {
                out.push_str(&format!(" ({} {})", v.name, v.sort));
            }
            out.push_str(")\n");
        }
        out.push_str(&self.to_string());
        out.push('\n');
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(seq (")?;
        for (i, p) in self.left.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(") (")?;
        for (i, p) in self.right.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("))")
    }
}
