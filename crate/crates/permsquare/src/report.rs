//! Command outputs. Each report has a JSON form (its serde representation)
//! and a plain-text form; counting reports also render as CSV.

use std::fmt::Write as _;

use permsquare_core::{Arc, Letter};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::format::{render_arcs, render_letters};

pub trait Report: Serialize + DeserializeOwned {
    fn text(&self) -> String;

    fn csv(&self) -> Option<String> {
        None
    }
}

fn verdict(yes: bool, affirmative: &str, negative: &str) -> String {
    format!("{}\n", if yes { affirmative } else { negative })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleTerm {
    pub perm: Vec<Letter>,
    pub coefficient: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleReport {
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
    pub terms: Vec<ShuffleTerm>,
    pub total: u64,
}

impl Report for ShuffleReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            let _ = writeln!(out, "{}\t{}", t.coefficient, render_letters(&t.perm));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
    pub coefficient: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoproductReport {
    pub perm: Vec<Letter>,
    pub terms: Vec<TensorTerm>,
    pub total: u64,
}

impl Report for CoproductReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            let _ = writeln!(out, "{}\t{} | {}", t.coefficient, render_letters(&t.left), render_letters(&t.right));
        }
        out
    }
}

/// A directed matching as its host and `[source, sink]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingJson {
    pub host: Vec<Letter>,
    pub arcs: Vec<[usize; 2]>,
}

impl MatchingJson {
    pub fn new(host: &[Letter], arcs: &[Arc]) -> Self {
        MatchingJson { host: host.to_vec(), arcs: arcs.iter().map(|a| [a.source, a.sink]).collect() }
    }

    pub fn arcs(&self) -> Vec<Arc> {
        self.arcs.iter().map(|&[s, t]| Arc::new(s, t)).collect()
    }

    fn text(&self) -> String {
        format!("host: {}\narcs: {}\n", render_letters(&self.host), render_arcs(&self.arcs()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareReport {
    pub perm: Vec<Letter>,
    pub method: String,
    pub square: bool,
    pub root: Option<Vec<Letter>>,
    pub witness: Option<MatchingJson>,
}

impl Report for SquareReport {
    fn text(&self) -> String {
        let mut out = verdict(self.square, "square", "not square");
        if let Some(root) = &self.root {
            let _ = writeln!(out, "root: {}", render_letters(root));
        }
        if let Some(w) = &self.witness {
            out.push_str(&w.text());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsReport {
    pub perm: Vec<Letter>,
    pub roots: Vec<Vec<Letter>>,
}

impl Report for RootsReport {
    fn text(&self) -> String {
        self.roots.iter().map(|r| render_letters(r) + "\n").collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCount {
    pub size: usize,
    pub count: u64,
}

fn counts_text(counts: &[SizeCount]) -> String {
    counts.iter().map(|c| format!("{}\t{}\n", c.size, c.count)).collect()
}

fn counts_csv(counts: &[SizeCount]) -> String {
    let mut out = String::from("size,count\n");
    for c in counts {
        let _ = writeln!(out, "{},{}", c.size, c.count);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSquaresReport {
    pub max_size: usize,
    pub avoid: Vec<Vec<Letter>>,
    pub classes: bool,
    pub jobs: usize,
    pub counts: Vec<SizeCount>,
    pub elapsed_ms: u64,
}

impl Report for CountSquaresReport {
    fn text(&self) -> String {
        counts_text(&self.counts)
    }

    fn csv(&self) -> Option<String> {
        Some(counts_csv(&self.counts))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountWordsReport {
    pub max_length: usize,
    pub counts: Vec<SizeCount>,
}

impl Report for CountWordsReport {
    fn text(&self) -> String {
        counts_text(&self.counts)
    }

    fn csv(&self) -> Option<String> {
        Some(counts_csv(&self.counts))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bin2PermReport {
    pub word: String,
    pub perm: Vec<Letter>,
}

impl Report for Bin2PermReport {
    fn text(&self) -> String {
        render_letters(&self.perm) + "\n"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perm2BinReport {
    pub perm: Vec<Letter>,
    pub word: String,
}

impl Report for Perm2BinReport {
    fn text(&self) -> String {
        format!("{}\n", self.word)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSquareReport {
    pub word: String,
    pub square: bool,
    pub root: Option<String>,
}

impl Report for WordSquareReport {
    fn text(&self) -> String {
        let mut out = verdict(self.square, "square", "not square");
        if let Some(root) = &self.root {
            let _ = writeln!(out, "root: {root}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleMemberReport {
    pub word: String,
    pub left: String,
    pub right: String,
    pub member: bool,
}

impl Report for ShuffleMemberReport {
    fn text(&self) -> String {
        verdict(self.member, "member", "not a member")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsJson {
    #[serde(rename = "N1")]
    pub n1: usize,
    #[serde(rename = "N2")]
    pub n2: usize,
    #[serde(rename = "N3")]
    pub n3: usize,
    #[serde(rename = "N4")]
    pub n4: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetJson {
    pub name: String,
    pub start: usize,
    pub end: usize,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub arcs: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub pattern: Vec<Letter>,
    pub text: Vec<Letter>,
    pub occurrence: Option<Vec<usize>>,
    pub mu: Vec<Letter>,
    pub constants: ConstantsJson,
    pub layout: Vec<GadgetJson>,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessJson>,
}

impl Report for ReduceReport {
    fn text(&self) -> String {
        let c = &self.constants;
        let mut out = String::new();
        let _ = writeln!(out, "|mu| = {}", self.mu.len());
        let _ = writeln!(out, "N1 = {}, N2 = {}, N3 = {}, N4 = {}", c.n1, c.n2, c.n3, c.n4);
        for g in &self.layout {
            let _ = writeln!(out, "{:<8} {}..{} +{}", g.name, g.start, g.end, g.offset);
        }
        match &self.occurrence {
            Some(occ) => {
                let occ: Vec<String> = occ.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "occurrence: {}", occ.join(","));
            }
            None => out.push_str("occurrence: none\n"),
        }
        if self.violations.is_empty() {
            out.push_str("violations: none\n");
        }
        for v in &self.violations {
            let _ = writeln!(out, "violation: {v}");
        }
        let _ = writeln!(out, "mu: {}", render_letters(&self.mu));
        if let Some(w) = &self.witness {
            let arcs: Vec<Arc> = w.arcs.iter().map(|&[s, t]| Arc::new(s, t)).collect();
            let _ = writeln!(out, "witness: {}", render_arcs(&arcs));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyMatchingReport {
    pub host: Vec<Letter>,
    pub arcs: Vec<[usize; 2]>,
    pub p1: bool,
    pub p2: bool,
    pub root: Option<Vec<Letter>>,
}

impl Report for VerifyMatchingReport {
    fn text(&self) -> String {
        let mut out = format!("P1: {}\nP2: {}\n", self.p1, self.p2);
        if let Some(root) = &self.root {
            let _ = writeln!(out, "root: {}", render_letters(root));
        }
        out
    }
}
