//! Helpers shared by the integration tests: the golden corpus and a random
//! proposition generator over the HOL signature (with `H`).

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use polmod::kernel::{parse_proof_file, ProofTree};
use polmod::rewrite::ReachabilityBudget;
use polmod::syntax::{parse_prop, parse_sequent_file, Context, Prop, Sequent, Signature, Sort};
use rand::rngs::StdRng;
use rand::Rng;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

pub fn budget() -> ReachabilityBudget {
    ReachabilityBudget::default()
}

pub struct Case {
    pub name: String,
    pub goal: Sequent,
    pub ctx: Context,
    pub proof: Option<ProofTree>,
}

fn read_dir_goals(dir: &Path, sig: &Signature) -> Vec<Case> {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter_map(|n| n.strip_suffix(".goal.sexp").map(str::to_string))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let text = std::fs::read_to_string(dir.join(format!("{name}.goal.sexp"))).unwrap();
            let (goal, ctx) = parse_sequent_file(&text, sig).unwrap_or_else(|e| panic!("{name}: {e}"));
            let proof_path = dir.join(format!("{name}.proof.sexp"));
            let proof = proof_path.exists().then(|| {
                let text = std::fs::read_to_string(&proof_path).unwrap();
                parse_proof_file(&text, sig).unwrap_or_else(|e| panic!("{name}: {e}"))
            });
            Case { name, goal, ctx, proof }
        })
        .collect()
}

/// Cut-free HOL proofs with their goals.
pub fn corpus(sig: &Signature) -> Vec<Case> {
    read_dir_goals(&golden_dir(), sig)
}

/// Goals with no cut-free proof in either theory.
pub fn unprovable(sig: &Signature) -> Vec<Case> {
    read_dir_goals(&golden_dir().join("unprovable"), sig)
}

pub fn golden_text(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).unwrap()
}

/// Variables available to generated propositions.
pub const GEN_VARS: &str = "(vars (x o) (y o) (g (i -> o)) (n i))";

pub fn gen_context(sig: &Signature) -> Context {
    parse_sequent_file(&format!("{GEN_VARS} (seq () ())"), sig).unwrap().1
}

/// Random term of sort `o`, at most `depth` applications deep.
pub fn gen_o(rng: &mut StdRng, depth: usize) -> String {
    if depth == 0 {
        return ["x", "y"][rng.gen_range(0..2)].to_string();
    }
    if rng.gen_ratio(1, 4) {
        return ["x", "y", "(null zero)", "(g n)"][rng.gen_range(0..4)].to_string();
    }
    let d = depth - 1;
    match rng.gen_range(0..7) {
        0 => format!("(dor {} {})", gen_o(rng, d), gen_o(rng, d)),
        1 => format!("(dnot {})", gen_o(rng, d)),
        2 => format!("(dall i {})", gen_i_o(rng, d)),
        3 => format!("(null {})", gen_i(rng, d)),
        4 => format!("(kc o i {} {})", gen_o(rng, d), gen_i(rng, d)),
        5 => format!("(g {})", gen_i(rng, d)),
        _ if d > 0 => format!("(dall o (kc o o {}))", gen_o(rng, d - 1)),
        _ => format!("(dnot {})", gen_o(rng, d)),
    }
}

pub fn gen_i(rng: &mut StdRng, depth: usize) -> String {
    if depth == 0 || rng.gen_ratio(1, 3) {
        return ["n", "zero"][rng.gen_range(0..2)].to_string();
    }
    let d = depth - 1;
    match rng.gen_range(0..3) {
        0 => format!("(succ {})", gen_i(rng, d)),
        1 => format!("(pred {})", gen_i(rng, d)),
        _ => format!("(H i {})", gen_i_o(rng, d)),
    }
}

pub fn gen_i_o(rng: &mut StdRng, depth: usize) -> String {
    if depth == 0 || rng.gen_ratio(1, 3) {
        return ["g", "null"][rng.gen_range(0..2)].to_string();
    }
    format!("(kc o i {})", gen_o(rng, depth - 1))
}

/// Random proposition: connectives over `eps` atoms whose terms are at most
/// `term_depth` deep.
pub fn gen_prop_text(rng: &mut StdRng, prop_depth: usize, term_depth: usize) -> String {
    if prop_depth == 0 || rng.gen_ratio(1, 2) {
        return format!("(eps {})", gen_o(rng, term_depth));
    }
    let d = prop_depth - 1;
    match rng.gen_range(0..5) {
        0 => format!("(not {})", gen_prop_text(rng, d, term_depth)),
        1 => format!("(and {} {})", gen_prop_text(rng, d, term_depth), gen_prop_text(rng, d, term_depth)),
        2 => format!("(or {} {})", gen_prop_text(rng, d, term_depth), gen_prop_text(rng, d, term_depth)),
        3 => format!("(imp {} {})", gen_prop_text(rng, d, term_depth), gen_prop_text(rng, d, term_depth)),
        _ => "(all z i (eps (g z)))".to_string(),
    }
}

pub fn gen_prop(rng: &mut StdRng, sig: &Signature, ctx: &Context, prop_depth: usize, term_depth: usize) -> Prop {
    let text = gen_prop_text(rng, prop_depth, term_depth);
    parse_prop(&text, sig, ctx).unwrap_or_else(|e| panic!("generated {text}: {e}"))
}

/// Nesting depth of a proposition's terms, reading `(h a1 ... an)` as one
/// node whose children are the arguments.
pub fn term_depth(p: &Prop) -> usize {
    fn depth(t: &polmod::syntax::Term) -> usize {
        use polmod::syntax::Term;
        let (head, spine) = t.spine();
        let own = match head {
            Term::Sym { args, .. } => args.as_slice(),
            _ => &[],
        };
        own.iter().chain(spine).map(|a| 1 + depth(a)).max().unwrap_or(0)
    }
    let mut args = Vec::new();
    p.atom_args(&mut args);
    args.into_iter().map(depth).max().unwrap_or(0)
}

pub fn iota() -> Sort {
    Sort::iota()
}
