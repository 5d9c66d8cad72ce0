use num_integer::Roots;
use serde::{Deserialize, Serialize};

use super::corpus::{shipped_corpus, Corpus};
use crate::classify::prime_power;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateStatus {
    ConfirmedCurve,
    DiscardedByBound,
    Unknown,
}

impl CandidateStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CandidateStatus::ConfirmedCurve => "confirmed-curve",
            CandidateStatus::DiscardedByBound => "discarded-by-bound",
            CandidateStatus::Unknown => "unknown",
        }
    }
}

/// A couple (g, q) whose Ihara bound N* = q + 1 + (sqrt(D) - g)/2 is an
/// integer, with D = (8q+1) g^2 + 4qg(q-1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IharaCandidate {
    pub g: i64,
    pub q: i64,
    #[serde(rename = "D")]
    pub d: i128,
    #[serde(rename = "sqrtD")]
    pub sqrt_d: i128,
    #[serde(rename = "N_star")]
    pub n_star: i128,
    /// g >= (q - sqrt q)/2
    pub in_range: bool,
    pub status: CandidateStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Prime powers 2 <= q <= q_max.
pub fn prime_powers_up_to(q_max: i64) -> Vec<i64> {
    (2..=q_max).filter(|&q| prime_power(q).is_some()).collect()
}

/// (q - sqrt q)/2 <= g, i.e. q - 2g <= sqrt q.
fn in_range(g: i128, q: i128) -> bool {
    let lhs = q - 2 * g;
    lhs <= 0 || lhs * lhs <= q
}

/// The scan annotated against the shipped corpus.
pub fn ihara_candidate_scan(g_max: i64, q_list: &[i64]) -> Vec<IharaCandidate> {
    ihara_candidate_scan_with(g_max, q_list, shipped_corpus())
}

/// All in-range couples with D a square and N* integral, ordered by (g, q).
pub fn ihara_candidate_scan_with(g_max: i64, q_list: &[i64], corpus: &Corpus) -> Vec<IharaCandidate> {
    let mut qs = q_list.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let mut out = Vec::new();
    for g in 1..=g_max {
        for &q in &qs {
            let (gi, qi) = (g as i128, q as i128);
            if !in_range(gi, qi) {
                continue;
            }
            let d = (8 * qi + 1) * gi * gi + 4 * qi * gi * (qi - 1);
            let s = d.sqrt();
            if s * s != d || (s - gi) % 2 != 0 {
                continue;
            }
            let n_star = qi + 1 + (s - gi) / 2;
            let (status, note) = corpus.couple_status(g, q, n_star);
            out.push(IharaCandidate {
                g,
                q,
                d,
                sqrt_d: s,
                n_star,
                in_range: true,
                status,
                note,
            });
        }
    }
    out
}

/// `g,q,D,sqrtD,N_star,status` with a header line.
pub fn scan_csv(rows: &[IharaCandidate]) -> String {
    let mut s = String::from("g,q,D,sqrtD,N_star,status\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.g,
            r.q,
            r.d,
            r.sqrt_d,
            r.n_star,
            r.status.as_str()
        ));
    }
    s
}
