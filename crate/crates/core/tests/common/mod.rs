//! Shared fixtures for the integration suites: worked-example ledgers, count
//! planting, and an instrumented backend.

#![allow(dead_code)]

use std::sync::atomic::{AtomicU64, Ordering};

use semorient::hits::{FixtureBackend, HitBackend, HitQuery, HitsError};

/// One ledger row: words, tags, and the orientation the fixture must yield.
pub struct LedgerRow {
    pub word1: &'static str,
    pub word2: &'static str,
    pub tag1: &'static str,
    pub tag2: &'static str,
    pub so: f64,
}

const fn row(
    word1: &'static str,
    word2: &'static str,
    tag1: &'static str,
    tag2: &'static str,
    so: f64,
) -> LedgerRow {
    LedgerRow {
        word1,
        word2,
        tag1,
        tag2,
        so,
    }
}

/// Phrase ledger of a recommended bank review; mean 0.322.
pub const RECOMMENDED_LEDGER: [LedgerRow; 11] = [
    row("online", "experience", "JJ", "NN", 2.253),
    row("low", "fees", "JJ", "NNS", 0.333),
    row("local", "branch", "JJ", "NN", 0.421),
    row("small", "part", "JJ", "NN", 0.053),
    row("online", "service", "JJ", "NN", 2.780),
    row("printable", "version", "JJ", "NN", -0.705),
    row("direct", "deposit", "JJ", "NN", 1.288),
    row("well", "other", "RB", "JJ", 0.237),
    row("inconveniently", "located", "RB", "VBN", -1.541),
    row("other", "bank", "JJ", "NN", -0.850),
    row("true", "service", "JJ", "NN", -0.732),
];

/// Phrase ledger of a not-recommended bank review; mean -1.218.
pub const NOT_RECOMMENDED_LEDGER: [LedgerRow; 17] = [
    row("little", "difference", "JJ", "NN", -1.615),
    row("clever", "tricks", "JJ", "NNS", -0.040),
    row("programs", "such", "NNS", "JJ", 0.117),
    row("possible", "moment", "JJ", "NN", -0.668),
    row("unethical", "practices", "JJ", "NNS", -8.484),
    row("low", "funds", "JJ", "NNS", -6.843),
    row("old", "man", "JJ", "NN", -2.566),
    row("other", "problems", "JJ", "NNS", -2.748),
    row("probably", "wondering", "RB", "VBG", -1.830),
    row("virtual", "monopoly", "JJ", "NN", -2.050),
    row("other", "bank", "JJ", "NN", -0.850),
    row("extra", "day", "JJ", "NN", -0.286),
    row("direct", "deposits", "JJ", "NNS", 5.771),
    row("online", "web", "JJ", "NN", 1.936),
    row("cool", "thing", "JJ", "NN", 0.395),
    row("very", "handy", "RB", "JJ", 1.349),
    row("lesser", "evil", "RBR", "JJ", -2.288),
];

/// Reference totals used by planted fixtures; equal on both sides, so they
/// cancel in the log-odds.
pub const FIXTURE_REF_TOTAL: u64 = 100_000_000;

/// NEAR counts that steer the default-config estimate to `target`. Both
/// sides stay at or above 1e6, so the landing error is below 1e-6, and well
/// above the skip threshold.
pub fn planted_counts(target: f64) -> (u64, u64) {
    let big = 1_000_000u64;
    if target >= 0.0 {
        (
            (target.exp() * (big as f64 + 0.01) - 0.01).round() as u64,
            big,
        )
    } else {
        (
            big,
            ((-target).exp() * (big as f64 + 0.01) - 0.01).round() as u64,
        )
    }
}

/// Fixture backend answering the standard four queries for every ledger row
/// (default references, window 10, no exclusions).
pub fn fixture_for(rows: &[LedgerRow]) -> FixtureBackend {
    let mut fx = FixtureBackend::new();
    for r in rows {
        let (near_pos, near_neg) = planted_counts(r.so);
        fx.insert(&HitQuery::near(r.word1, r.word2, "excellent", 10), near_pos);
        fx.insert(&HitQuery::near(r.word1, r.word2, "poor", 10), near_neg);
    }
    fx.insert(&HitQuery::term("excellent"), FIXTURE_REF_TOTAL);
    fx.insert(&HitQuery::term("poor"), FIXTURE_REF_TOTAL);
    fx
}

/// Renders a ledger as one pretagged document whose extraction yields
/// exactly the ledger's phrases in order: rows separated by "./OTHER".
pub fn pretagged_line(rows: &[LedgerRow]) -> String {
    rows.iter()
        .map(|r| format!("{}/{} {}/{}", r.word1, r.tag1, r.word2, r.tag2))
        .collect::<Vec<_>>()
        .join(" ./OTHER ")
}

/// Wrapper counting live calls into an inner backend.
pub struct CountingBackend<B> {
    inner: B,
    calls: AtomicU64,
}

impl<B> CountingBackend<B> {
    pub fn new(inner: B) -> CountingBackend<B> {
        CountingBackend {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::SeqCst)
    }
}

impl<B: HitBackend> HitBackend for CountingBackend<B> {
    fn hits(&self, query: &HitQuery) -> Result<u64, HitsError> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.inner.hits(query)
    }
}
