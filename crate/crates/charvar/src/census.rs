//! Census of short monodromy words: enumeration of words in `A, B` or
//! `A, B⁻¹`, conjugacy deduplication by cyclic rotation and one summary row
//! per word.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal_engine::{decompose_bounded, ComponentDecomposition, DEFAULT_MAX_STEPS};
use crate::monodromy::{invariants, Twist, TwistWord};
use crate::newton_genus::GenusStatus;
use crate::trace_poly::{fixed_ideal, SignClass};

/// Version tag of the serialized census.
pub const CENSUS_SCHEMA: &str = "charvar-census/1";

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Alphabet {
    /// Words `A^{a₁}B^{b₁}⋯`.
    Positive,
    /// Words `A^{a₁}B^{−b₁}⋯`.
    Negative,
}

impl std::str::FromStr for Alphabet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "AB" | "ab" | "positive" => Ok(Alphabet::Positive),
            "AB-" | "ABinv" | "ab-" | "negative" => Ok(Alphabet::Negative),
            _ => Err(Error::OutOfRange(format!("unknown alphabet '{s}' (expected AB or ABinv)"))),
        }
    }
}

fn compositions(total: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if parts == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for first in 1..=total.saturating_sub(parts as u64 - 1) {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Lexicographically least rotation of the exponent sequence by whole
/// `(a_i, b_i)` pairs.
pub fn canonical_rotation(exps: &[u64]) -> Vec<u64> {
    let pairs = exps.len() / 2;
    (0..pairs.max(1))
        .map(|r| {
            let mut v = exps[2 * r..].to_vec();
            v.extend_from_slice(&exps[..2 * r]);
            v
        })
        .min()
        .unwrap_or_default()
}

fn word_from_exponents(exps: &[u64], alphabet: Alphabet) -> TwistWord {
    let sign = match alphabet {
        Alphabet::Positive => 1,
        Alphabet::Negative => -1,
    };
    let letters = exps
        .chunks(2)
        .flat_map(|p| [(Twist::A, p[0] as i64), (Twist::B, sign * p[1] as i64)])
        .collect();
    TwistWord::new(false, letters)
}

/// Hyperbolic words of length at most `max_length` in the alphabet, ordered
/// by length, then number of syllable pairs, then exponent sequence. With
/// `dedup`, only the least rotation of each cyclic word is kept.
pub fn census_words(max_length: u64, alphabet: Alphabet, dedup: bool) -> Vec<TwistWord> {
    let mut out = Vec::new();
    for len in 2..=max_length {
        for pairs in 1..=(len / 2) as usize {
            let mut seqs = Vec::new();
            compositions(len, 2 * pairs, &mut Vec::new(), &mut seqs);
            for s in seqs {
                if dedup && canonical_rotation(&s) != s {
                    continue;
                }
                let w = word_from_exponents(&s, alphabet);
                if invariants(&w).hyperbolic {
                    out.push(w);
                }
            }
        }
    }
    out
}

/// Genus entry of a census row: a certified value or an interval.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum GenusEntry {
    Certified(u64),
    Bounds { lower: u64, upper: u64 },
}

impl std::fmt::Display for GenusEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenusEntry::Certified(g) => write!(f, "{g}"),
            GenusEntry::Bounds { lower, upper } => write!(f, "[{lower},{upper}]"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Certified,
    Undecided,
    BudgetExceeded,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CensusRow {
    pub word: String,
    pub trace: i64,
    /// Order of the monodromy modulo 2.
    pub o_phi2: u8,
    pub b1: u8,
    pub components: usize,
    pub genera: Vec<GenusEntry>,
    pub binary_dihedral_count: Option<u64>,
    pub undecided: usize,
    pub status: RowStatus,
}

impl CensusRow {
    pub fn genera_string(&self) -> String {
        self.genera.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn genus_entries(d: &ComponentDecomposition) -> Vec<GenusEntry> {
    let mut out = Vec::new();
    for comp in d.components.iter().filter(|c| c.is_curve()) {
        let entry = match &comp.genus {
            Some(r) if r.status == GenusStatus::Certified && r.genus.is_some() => GenusEntry::Certified(r.genus.unwrap()),
            Some(r) => GenusEntry::Bounds { lower: 0, upper: r.baker_bound },
            None => GenusEntry::Bounds { lower: 0, upper: u64::MAX },
        };
        out.extend(std::iter::repeat_n(entry, comp.geometric_count));
    }
    let key = |g: &GenusEntry| match g {
        GenusEntry::Certified(v) => (*v, *v),
        GenusEntry::Bounds { lower, upper } => (*upper, *lower),
    };
    out.sort_by_key(|g| std::cmp::Reverse(key(g)));
    out
}

/// Summary row for one word; a budget overrun yields an undecided row.
pub fn census_row(w: &TwistWord, max_steps: u64) -> Result<CensusRow> {
    let inv = invariants(w);
    let ci = fixed_ideal(w, SignClass::Id)?;
    let base = CensusRow {
        word: w.to_string(),
        trace: inv.trace,
        o_phi2: inv.mod2_order,
        b1: inv.b1,
        components: 0,
        genera: Vec::new(),
        binary_dihedral_count: inv.binary_dihedral_count,
        undecided: 0,
        status: RowStatus::BudgetExceeded,
    };
    match decompose_bounded(&ci, w, max_steps) {
        Ok(d) => {
            let undecided = d.undecided_count();
            Ok(CensusRow {
                components: d.curve_count() + undecided,
                genera: genus_entries(&d),
                undecided,
                status: if undecided == 0 && d.genera().iter().all(|g| g.is_some()) {
                    RowStatus::Certified
                } else {
                    RowStatus::Undecided
                },
                ..base
            })
        }
        Err(Error::Budget(_)) => Ok(base),
        Err(e) => Err(e),
    }
}

pub fn census_rows(words: &[TwistWord]) -> Result<Vec<CensusRow>> {
    words.iter().map(|w| census_row(w, DEFAULT_MAX_STEPS)).collect()
}
