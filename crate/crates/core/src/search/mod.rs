//! Enumeration harnesses: the Ihara-bound couple scan, the genus-2 DM
//! search, and regression over the curve corpus.

pub mod corpus;
mod genus2;
mod scan;

pub use corpus::{
    corpus_verify, corpus_verify_with, shipped_corpus, shipped_corpus_json, verify_entry, Corpus,
    CorpusEntry, CorpusReport, DiscardedCouple, EntryReport, EntryStatus, ExpectedFlags,
    VerifyOptions,
};
pub use genus2::{genus2_dm_search, genus2_dm_search_with, SearchHit, SearchOptions};
pub use scan::{
    ihara_candidate_scan, ihara_candidate_scan_with, prime_powers_up_to, scan_csv,
    CandidateStatus, IharaCandidate,
};
