use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::scan::CandidateStatus;
use crate::bounds::{dm_defect, dm_lower_n2};
use crate::classify::{classify_counts, ClassificationVerdict};
use crate::curves::{
    count_points_with, validate_model_with, CountOptions, Curve, CurveModel, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::ff::{FieldDesc, FieldSpec};
use crate::intpoly::{lpoly_to_profile, IntPoly};
use crate::json;
use crate::zeta::lpoly_from_counts;

const SHIPPED: &str = include_str!("../../data/corpus.json");

/// Flags an entry is expected to have; absent fields are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedFlags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dm: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ihara_max: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weil_max: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weil_min: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<i64>,
    /// N_2 equals the lower bound of the DM-inequality for its genus parity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2_lower_attained: Option<bool>,
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    field: FieldSpec,
    #[serde(default)]
    model: Option<Value>,
    declared_genus: u32,
    #[serde(default)]
    declared_counts: BTreeMap<String, i64>,
    #[serde(default)]
    declared_lpoly: Option<IntPoly>,
    #[serde(default)]
    infinity: Option<Value>,
    #[serde(default)]
    expect: ExpectedFlags,
    #[serde(default)]
    notes: Option<String>,
}

/// One curve of a corpus or a single-curve file.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub field: FieldDesc,
    pub genus: u32,
    /// `None` for curves recorded by their data only.
    pub curve: Option<Curve>,
    pub declared_counts: BTreeMap<u32, i64>,
    pub declared_lpoly: Option<IntPoly>,
    pub expect: ExpectedFlags,
    pub notes: Option<String>,
}

impl CorpusEntry {
    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: RawEntry =
            serde_json::from_value(v.clone()).map_err(|e| Error::Corpus(e.to_string()))?;
        let field = FieldDesc::try_from(raw.field)?;
        let curve = match raw.model.filter(|m| !m.is_null()) {
            Some(m) => Some(Curve {
                model: CurveModel::from_json(&m, &field, raw.infinity.as_ref())?,
                field: field.clone(),
                genus: raw.declared_genus,
            }),
            None => None,
        };
        let declared_counts = raw
            .declared_counts
            .into_iter()
            .map(|(k, n)| {
                k.parse::<u32>()
                    .ok()
                    .filter(|&k| k >= 1)
                    .map(|k| (k, n))
                    .ok_or_else(|| Error::Corpus(format!("bad extension key {k:?} in {}", raw.name)))
            })
            .collect::<Result<_>>()?;
        Ok(CorpusEntry {
            name: raw.name,
            field,
            genus: raw.declared_genus,
            curve,
            declared_counts,
            declared_lpoly: raw.declared_lpoly,
            expect: raw.expect,
            notes: raw.notes,
        })
    }

    pub fn q(&self) -> Result<i64> {
        i64::try_from(self.field.try_q()?).map_err(|_| Error::FieldTooLarge(self.field.to_string()))
    }
}

/// A couple (g, q) excluded because its Ihara bound exceeds a known upper
/// bound on the number of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscardedCouple {
    pub g: i64,
    pub q: i64,
    pub ihara_bound: i64,
    pub upper_bound: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// Entries that failed to parse: (name or index, message).
    pub invalid: Vec<(String, String)>,
    pub discarded: Vec<DiscardedCouple>,
}

impl Corpus {
    /// Accepts `{"entries": [..], "discarded_couples": [..]}` or a bare array
    /// of entries.
    pub fn from_json(v: &Value) -> Result<Self> {
        let (entries, discarded) = match v {
            Value::Array(a) => (a.as_slice(), None),
            Value::Object(o) => (
                o.get("entries")
                    .and_then(Value::as_array)
                    .map(Vec::as_slice)
                    .ok_or_else(|| Error::Corpus("missing \"entries\" array".into()))?,
                o.get("discarded_couples"),
            ),
            _ => return Err(Error::Corpus("corpus must be an object or array".into())),
        };
        let mut corpus = Corpus::default();
        for (i, e) in entries.iter().enumerate() {
            match CorpusEntry::from_json(e) {
                Ok(entry) => corpus.entries.push(entry),
                Err(err) => {
                    let name = e
                        .get("name")
                        .and_then(Value::as_str)
                        .map_or_else(|| format!("#{i}"), str::to_owned);
                    corpus.invalid.push((name, err.to_string()));
                }
            }
        }
        if let Some(d) = discarded {
            corpus.discarded =
                serde_json::from_value(d.clone()).map_err(|e| Error::Corpus(e.to_string()))?;
        }
        Ok(corpus)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Corpus(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn entry(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub(crate) fn couple_status(&self, g: i64, q: i64, n_star: i128) -> (CandidateStatus, Option<String>) {
        let confirmed = self.entries.iter().any(|e| {
            let (n1, n2) = (e.declared_counts.get(&1), e.declared_counts.get(&2));
            e.genus as i64 == g
                && e.q().ok() == Some(q)
                && n1.is_some()
                && n1 == n2
                && n1.map(|&n| n as i128) == Some(n_star)
        });
        if confirmed {
            return (CandidateStatus::ConfirmedCurve, None);
        }
        let rows: Vec<&DiscardedCouple> =
            self.discarded.iter().filter(|d| d.g == g && d.q == q).collect();
        if rows.is_empty() {
            return (CandidateStatus::Unknown, None);
        }
        let mut notes: Vec<String> = rows.iter().filter_map(|d| d.note.clone()).collect();
        notes.dedup();
        let note = (!notes.is_empty()).then(|| notes.join("; "));
        (CandidateStatus::DiscardedByBound, note)
    }
}

/// The corpus bundled with the crate.
pub fn shipped_corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| Corpus::parse(SHIPPED).expect("bundled corpus parses"))
}

pub fn shipped_corpus_json() -> &'static str {
    SHIPPED
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub budget: u64,
    /// Plane models are checked for singular points up to this extension.
    pub smoothness_depth: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            smoothness_depth: 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub name: String,
    pub status: EntryStatus,
    /// Recomputed N_k.
    pub counts: BTreeMap<u32, i64>,
    #[serde(
        default,
        serialize_with = "json::ser_opt_int",
        deserialize_with = "json::de_opt_int"
    )]
    pub delta: Option<BigInt>,
    pub verdict: Option<ClassificationVerdict>,
    pub lpoly: Option<IntPoly>,
    pub diffs: Vec<String>,
    /// Checks not performed, e.g. `"lpoly: budget"`.
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub entries: Vec<EntryReport>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub fn corpus_verify(corpus: &Corpus) -> CorpusReport {
    corpus_verify_with(corpus, &VerifyOptions::default())
}

/// Recompute every entry's declared data. Errors are recorded per entry.
pub fn corpus_verify_with(corpus: &Corpus, opts: &VerifyOptions) -> CorpusReport {
    let mut entries: Vec<EntryReport> = corpus.entries.iter().map(|e| verify_entry(e, opts)).collect();
    for (name, msg) in &corpus.invalid {
        entries.push(EntryReport {
            name: name.clone(),
            status: EntryStatus::Fail,
            counts: BTreeMap::new(),
            delta: None,
            verdict: None,
            lpoly: None,
            diffs: vec![format!("parse error: {msg}")],
            skipped: Vec::new(),
        });
    }
    let tally = |s| entries.iter().filter(|e| e.status == s).count();
    CorpusReport {
        passed: tally(EntryStatus::Pass),
        failed: tally(EntryStatus::Fail),
        skipped: tally(EntryStatus::Skipped),
        entries,
    }
}

pub fn verify_entry(entry: &CorpusEntry, opts: &VerifyOptions) -> EntryReport {
    let mut rep = EntryReport {
        name: entry.name.clone(),
        status: EntryStatus::Pass,
        counts: BTreeMap::new(),
        delta: None,
        verdict: None,
        lpoly: None,
        diffs: Vec::new(),
        skipped: Vec::new(),
    };
    if let Err(e) = verify_into(entry, opts, &mut rep) {
        rep.diffs.push(format!("error: {e}"));
    }
    rep.status = if !rep.diffs.is_empty() {
        EntryStatus::Fail
    } else if entry.curve.is_none() {
        EntryStatus::Skipped
    } else {
        EntryStatus::Pass
    };
    rep
}

fn verify_into(entry: &CorpusEntry, opts: &VerifyOptions, rep: &mut EntryReport) -> Result<()> {
    let q = entry.q()?;
    let g = entry.genus;
    let count_opts = CountOptions { budget: opts.budget };
    let mut known: BTreeMap<u32, i64> = entry.declared_counts.clone();

    match &entry.curve {
        None => rep.skipped.push("counts: no model".into()),
        Some(curve) => {
            validate_model_with(curve, opts.smoothness_depth, opts.budget)?;
            let mut wanted: Vec<u32> = entry.declared_counts.keys().copied().collect();
            wanted.extend([1, 2]);
            let full_l = BigInt::from(q).pow(g) <= BigInt::from(opts.budget);
            if full_l {
                wanted.extend(1..=g);
            }
            wanted.sort_unstable();
            wanted.dedup();
            for k in wanted {
                match count_points_with(curve, k, &count_opts) {
                    Ok(n) => {
                        rep.counts.insert(k, n);
                        if let Some(&d) = entry.declared_counts.get(&k) {
                            if d != n {
                                rep.diffs.push(format!("N_{k}: declared {d}, computed {n}"));
                            }
                        }
                        known.insert(k, n);
                    }
                    Err(Error::BudgetExceeded { .. }) => rep.skipped.push(format!("N_{k}: budget")),
                    Err(e) => return Err(e),
                }
            }
        }
    }

    // L-polynomial: from counts when N_1..N_g are known, else from declarations
    let prefix: Vec<i64> = (1..=g).map_while(|k| known.get(&k).copied()).collect();
    let counted = entry.curve.is_some() && (1..=g).all(|k| rep.counts.contains_key(&k));
    if counted {
        let l = lpoly_from_counts(q, g, &prefix)?;
        if let Some(d) = &entry.declared_lpoly {
            if *d != l.poly {
                rep.diffs.push(format!("lpoly: declared {d}, computed {}", l.poly));
            }
        }
        rep.lpoly = Some(l.poly);
    } else if entry.curve.is_some() {
        rep.skipped.push("lpoly: budget".into());
    }
    if let Some(d) = &entry.declared_lpoly {
        // declared L must reproduce every known count
        let top = known.keys().max().copied().unwrap_or(0) as usize;
        let from_l = lpoly_to_profile(d, q, top)?;
        for (&k, &n) in &known {
            if from_l[k as usize - 1] != BigInt::from(n) {
                rep.diffs.push(format!("N_{k} = {n} disagrees with declared lpoly ({})", from_l[k as usize - 1]));
            }
        }
    }

    let (Some(&n1), Some(&n2)) = (known.get(&1), known.get(&2)) else {
        rep.skipped.push("classification: N_1, N_2 unknown".into());
        return Ok(());
    };
    let gi = g as i64;
    let delta = dm_defect(q, gi, n1, n2);
    let verdict = classify_counts(q, gi, n1, n2)?;
    if let (Some(dm_l), Some(d)) = (&verdict.dm_lpoly, &entry.declared_lpoly) {
        if dm_l != d {
            rep.diffs.push(format!("lpoly: declared {d}, DM shape gives {dm_l}"));
        }
    }
    let x = &entry.expect;
    let mut flag = |name: &str, want: Option<bool>, got: bool| {
        if let Some(w) = want {
            if w != got {
                rep.diffs.push(format!("{name}: expected {w}, got {got}"));
            }
        }
    };
    flag("ds", x.ds, verdict.ds);
    flag("dm", x.dm, verdict.dm);
    flag("ihara_max", x.ihara_max, verdict.ihara_max);
    flag("weil_max", x.weil_max, verdict.weil_max);
    flag("weil_min", x.weil_min, verdict.weil_min);
    flag(
        "n2_lower_attained",
        x.n2_lower_attained,
        dm_lower_n2(q, gi, n1).0 == BigInt::from(n2).into(),
    );
    if let Some(want) = x.delta {
        if BigInt::from(want) != delta {
            rep.diffs.push(format!("delta: expected {want}, got {delta}"));
        }
    }
    rep.delta = Some(delta);
    rep.verdict = Some(verdict);
    Ok(())
}
