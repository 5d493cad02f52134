//! Ideals and filters on subsets of the positive integers, decided at a
//! finite horizon.
//!
//! Membership of an infinite set in the density ideal cannot be settled from
//! a prefix, so every answer is a three-valued [`Verdict`] that carries the
//! evidence it was based on. The built-in oracles share one rule before
//! anything kind-specific: a set whose members all sit in the first half of
//! the observation window is treated as finite, and finite sets belong to
//! every admissible ideal.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::axioms::{AxiomOutcome, AxiomReport};
use crate::error::{Error, Result};

/// Three-valued outcome. For oracle queries `Holds` means "is a member".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl Status {
    /// Holds iff every part holds, fails iff any part fails.
    pub fn combine(parts: impl IntoIterator<Item = Status>) -> Status {
        let mut all_hold = true;
        for s in parts {
            match s {
                Status::Fails => return Status::Fails,
                Status::Inconclusive => all_hold = false,
                Status::Holds => {}
            }
        }
        if all_hold {
            Status::Holds
        } else {
            Status::Inconclusive
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One checkpoint of a prefix-density trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityPoint {
    pub n: u64,
    pub count: u64,
    pub density: f64,
}

/// What a verdict was based on.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    /// Prefix densities at checkpoints plus densities of the windows between
    /// the later checkpoints.
    DensityTrace {
        checkpoints: Vec<DensityPoint>,
        tail_windows: Vec<DensityPoint>,
    },
    /// Largest member seen inside a window of length `window`.
    FiniteWitness { last_member: Option<u64>, window: u64 },
    /// Members found in the final half of the window.
    TailMembers { count: u64, window: u64 },
    /// Decided from the representation of the set itself.
    Declared { reason: String },
    /// Block indices that failed a threshold.
    OffendingBlocks { blocks: Vec<usize> },
    /// Free-form witness.
    Witness { description: String },
}

/// A finite-horizon answer with its evidence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub evidence: Vec<Evidence>,
    /// Largest index the answer looked at.
    pub horizon: u64,
}

impl Verdict {
    pub fn new(status: Status, evidence: Vec<Evidence>, horizon: u64) -> Self {
        debug_assert!(status == Status::Inconclusive || !evidence.is_empty());
        Self { status, evidence, horizon }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn with_evidence(mut self, e: Evidence) -> Self {
        self.evidence.push(e);
        self
    }

    pub fn density_trace(&self) -> Option<&[DensityPoint]> {
        self.evidence.iter().find_map(|e| match e {
            Evidence::DensityTrace { checkpoints, .. } => Some(checkpoints.as_slice()),
            _ => None,
        })
    }
}

/// A subset of `{1, 2, 3, ...}`.
#[derive(Clone)]
pub enum IndexSet {
    /// A set declared to be exactly this finite list.
    Finite(BTreeSet<u64>),
    /// Everything except this finite list.
    Cofinite(BTreeSet<u64>),
    /// `{k : pred(k)}`, possibly infinite, read up to an optional cap.
    Predicate {
        label: String,
        pred: Arc<dyn Fn(u64) -> bool + Send + Sync>,
        negated: bool,
        cap: Option<u64>,
    },
    /// A set known only on `[1, horizon]`, e.g. a block-index set computed
    /// from a finite number of blocks.
    Observed { members: Vec<u64>, horizon: u64 },
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(s) => write!(f, "Finite({s:?})"),
            Self::Cofinite(s) => write!(f, "Cofinite({s:?})"),
            Self::Predicate { label, negated, cap, .. } => {
                write!(f, "Predicate({}{label}, cap={cap:?})", if *negated { "not " } else { "" })
            }
            Self::Observed { members, horizon } => {
                write!(f, "Observed({} members up to {horizon})", members.len())
            }
        }
    }
}

impl IndexSet {
    pub fn empty() -> Self {
        Self::Finite(BTreeSet::new())
    }

    pub fn finite(items: impl IntoIterator<Item = u64>) -> Result<Self> {
        let set: BTreeSet<u64> = items.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::Domain("index sets live in {1, 2, ...}; got 0".into()));
        }
        Ok(Self::Finite(set))
    }

    pub fn singleton(k: u64) -> Result<Self> {
        Self::finite([k])
    }

    pub fn predicate(label: impl Into<String>, pred: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        Self::Predicate {
            label: label.into(),
            pred: Arc::new(pred),
            negated: false,
            cap: None,
        }
    }

    /// All of `ℕ`.
    pub fn naturals() -> Self {
        Self::predicate("naturals", |_| true)
    }

    pub fn squares() -> Self {
        Self::predicate("squares", crate::lacunary::is_square)
    }

    pub fn evens() -> Self {
        Self::predicate("evens", |k| k % 2 == 0)
    }

    /// A set observed on `[1, horizon]`. Members must lie in that range.
    pub fn observed(members: impl IntoIterator<Item = u64>, horizon: u64) -> Result<Self> {
        let set: BTreeSet<u64> = members.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&k| k == 0 || k > horizon) {
            return Err(Error::Domain(format!("member {bad} outside [1, {horizon}]")));
        }
        Ok(Self::Observed {
            members: set.into_iter().collect(),
            horizon,
        })
    }

    /// Block-index set from a list of 1-based block numbers and the number of
    /// blocks inspected.
    pub fn blocks(blocks: &[usize], horizon: usize) -> Self {
        Self::observed(blocks.iter().map(|&r| r as u64), horizon as u64)
            .expect("block indices lie within the horizon")
    }

    /// Limits a predicate set to `[1, cap]`.
    pub fn with_cap(self, cap: u64) -> Self {
        match self {
            Self::Predicate { label, pred, negated, .. } => Self::Predicate {
                label,
                pred,
                negated,
                cap: Some(cap),
            },
            other => other,
        }
    }

    /// Largest index at which membership is known, if bounded.
    pub fn horizon_cap(&self) -> Option<u64> {
        match self {
            Self::Observed { horizon, .. } => Some(*horizon),
            Self::Predicate { cap, .. } => *cap,
            _ => None,
        }
    }

    /// Membership of `k`; `None` when `k` lies beyond what is known.
    pub fn contains(&self, k: u64) -> Option<bool> {
        if k == 0 {
            return Some(false);
        }
        match self {
            Self::Finite(s) => Some(s.contains(&k)),
            Self::Cofinite(s) => Some(!s.contains(&k)),
            Self::Predicate { pred, negated, cap, .. } => {
                if cap.is_some_and(|c| k > c) {
                    None
                } else {
                    Some(pred(k) != *negated)
                }
            }
            Self::Observed { members, horizon } => {
                (k <= *horizon).then(|| members.binary_search(&k).is_ok())
            }
        }
    }

    /// Complement relative to `ℕ` (relative to `[1, horizon]` for observed sets).
    pub fn complement(&self) -> Self {
        match self {
            Self::Finite(s) => Self::Cofinite(s.clone()),
            Self::Cofinite(s) => Self::Finite(s.clone()),
            Self::Predicate { label, pred, negated, cap } => Self::Predicate {
                label: label.clone(),
                pred: Arc::clone(pred),
                negated: !negated,
                cap: *cap,
            },
            Self::Observed { members, horizon } => {
                let mut out = Vec::with_capacity(*horizon as usize - members.len());
                let mut it = members.iter().peekable();
                for k in 1..=*horizon {
                    if it.peek() == Some(&&k) {
                        it.next();
                    } else {
                        out.push(k);
                    }
                }
                Self::Observed { members: out, horizon: *horizon }
            }
        }
    }

    /// Members in `[1, n]`.
    pub fn members_upto(&self, n: u64) -> Result<Vec<u64>> {
        if let Some(h) = self.horizon_cap() {
            if n > h {
                return Err(Error::Horizon(format!("set is only known up to {h}, asked for {n}")));
            }
        }
        Ok(match self {
            Self::Finite(s) => s.range(..=n).copied().collect(),
            Self::Observed { members, .. } => {
                members[..members.partition_point(|&k| k <= n)].to_vec()
            }
            _ => (1..=n).filter(|&k| self.contains(k) == Some(true)).collect(),
        })
    }

    /// `|E ∩ [1, n]|`.
    pub fn count_upto(&self, n: u64) -> Result<u64> {
        if let Some(h) = self.horizon_cap() {
            if n > h {
                return Err(Error::Horizon(format!("set is only known up to {h}, asked for {n}")));
            }
        }
        Ok(match self {
            Self::Finite(s) => s.range(..=n).count() as u64,
            Self::Cofinite(s) => n - s.range(..=n).count() as u64,
            Self::Observed { members, .. } => members.partition_point(|&k| k <= n) as u64,
            Self::Predicate { .. } => (1..=n).filter(|&k| self.contains(k) == Some(true)).count() as u64,
        })
    }

    /// `E ∪ F`. Stays finite or observed when the inputs allow it.
    pub fn union(&self, other: &IndexSet) -> IndexSet {
        self.combine(other, |a, b| a || b, "or")
    }

    /// `E ∩ F`.
    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        self.combine(other, |a, b| a && b, "and")
    }

    fn combine(&self, other: &IndexSet, op: fn(bool, bool) -> bool, word: &str) -> IndexSet {
        use IndexSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => {
                let all: BTreeSet<u64> = a.union(b).copied().filter(|k| op(a.contains(k), b.contains(k))).collect();
                Finite(all)
            }
            (Cofinite(a), Cofinite(b)) => {
                let all: BTreeSet<u64> = a.union(b).copied().filter(|k| !op(!a.contains(k), !b.contains(k))).collect();
                Cofinite(all)
            }
            _ => {
                let caps = [self.horizon_cap(), other.horizon_cap()];
                let observed = matches!(self, Observed { .. }) || matches!(other, Observed { .. });
                let cap = caps.iter().flatten().copied().min();
                if let (true, Some(h)) = (observed, cap) {
                    let members = (1..=h).filter(|&k| {
                        op(self.contains(k) == Some(true), other.contains(k) == Some(true))
                    });
                    return IndexSet::observed(members, h).expect("members within horizon");
                }
                let (a, b) = (self.clone(), other.clone());
                let set = IndexSet::predicate(format!("({a:?} {word} {b:?})"), move |k| {
                    op(a.contains(k) == Some(true), b.contains(k) == Some(true))
                });
                match cap {
                    Some(c) => set.with_cap(c),
                    None => set,
                }
            }
        }
    }
}

/// `|E ∩ [1, n]| / n` as an exact fraction.
pub fn natural_density(set: &IndexSet, n: u64) -> Result<Ratio<u64>> {
    if n == 0 {
        return Err(Error::Domain("density needs n >= 1".into()));
    }
    Ok(Ratio::new(set.count_upto(n)?, n))
}

/// Anything that can answer "is `E` in the ideal?".
pub trait Ideal: Send + Sync {
    fn name(&self) -> String;

    fn ideal_contains(&self, set: &IndexSet) -> Verdict;

    /// `E ∈ F(I)` iff `ℕ \ E ∈ I`.
    fn filter_contains(&self, set: &IndexSet) -> Verdict {
        self.ideal_contains(&set.complement()).with_evidence(Evidence::Declared {
            reason: "decided on the complement".into(),
        })
    }
}

fn default_checkpoints() -> usize {
    3
}

/// Serialisable oracle parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum OracleDescriptor {
    Density {
        horizon: u64,
        tol: f64,
        #[serde(default = "default_checkpoints")]
        checkpoints: usize,
    },
    Finite { bound: u64 },
}

/// The built-in admissible, non-trivial ideals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum IdealOracle {
    /// The ideal of finite sets, looking at indices up to `bound`.
    Finite { bound: u64 },
    /// The ideal of natural-density-zero sets.
    ///
    /// Checkpoints are `⌊n / 10^j⌋` for `j = checkpoints-1, ..., 0` where `n`
    /// is the horizon clipped to the set's own horizon. Member needs every
    /// prefix density and every late window density at most `tol`;
    /// non-member needs the final prefix density and the last window density
    /// above `2 tol`. Anything in between is inconclusive.
    Density { horizon: u64, tol: f64, checkpoints: usize },
}

impl IdealOracle {
    pub const DEFAULT_HORIZON: u64 = 1_000_000;
    pub const DEFAULT_TOL: f64 = 0.01;

    /// Density ideal with horizon `10^6`, tolerance 0.01 and three checkpoints.
    pub fn density() -> Self {
        Self::Density {
            horizon: Self::DEFAULT_HORIZON,
            tol: Self::DEFAULT_TOL,
            checkpoints: 3,
        }
    }

    pub fn finite(bound: u64) -> Self {
        Self::Finite { bound }
    }

    pub fn from_descriptor(d: &OracleDescriptor) -> Result<Self> {
        match *d {
            OracleDescriptor::Density { horizon, tol, checkpoints } => {
                if horizon == 0 {
                    return Err(Error::Construction("horizon must be positive".into()));
                }
                if !(tol > 0.0 && tol < 0.5) {
                    return Err(Error::Construction(format!("tol must lie in (0, 0.5), got {tol}")));
                }
                if checkpoints < 2 {
                    return Err(Error::Construction("need at least 2 checkpoints".into()));
                }
                Ok(Self::Density { horizon, tol, checkpoints })
            }
            OracleDescriptor::Finite { bound } => {
                if bound == 0 {
                    return Err(Error::Construction("bound must be positive".into()));
                }
                Ok(Self::Finite { bound })
            }
        }
    }

    pub fn is_density(&self) -> bool {
        matches!(self, Self::Density { .. })
    }

    fn window_for(&self, set: &IndexSet) -> u64 {
        let own = match self {
            Self::Finite { bound } => *bound,
            Self::Density { horizon, .. } => *horizon,
        };
        set.horizon_cap().map_or(own, |h| h.min(own))
    }
}

/// Counts gathered in one pass over the window.
struct Scan {
    window: u64,
    last: Option<u64>,
    counts_at: Vec<(u64, u64)>,
    tail_count: u64,
}

fn scan(set: &IndexSet, window: u64, checkpoints: &[u64]) -> Scan {
    let half = window / 2;
    let mut counts_at = Vec::with_capacity(checkpoints.len());
    let (last, tail_count) = match set {
        IndexSet::Observed { members, .. } => {
            let inside = &members[..members.partition_point(|&k| k <= window)];
            for &c in checkpoints {
                counts_at.push((c, inside.partition_point(|&k| k <= c) as u64));
            }
            let tail = inside.len() - inside.partition_point(|&k| k <= half);
            (inside.last().copied(), tail as u64)
        }
        _ => {
            let mut count = 0u64;
            let mut last = None;
            let mut tail = 0u64;
            let mut next_cp = checkpoints.iter().peekable();
            for k in 1..=window {
                if set.contains(k) == Some(true) {
                    count += 1;
                    last = Some(k);
                    if k > half {
                        tail += 1;
                    }
                }
                while next_cp.peek() == Some(&&k) {
                    counts_at.push((k, count));
                    next_cp.next();
                }
            }
            (last, tail)
        }
    };
    Scan { window, last, counts_at, tail_count }
}

fn density_checkpoints(window: u64, count: usize) -> Vec<u64> {
    let mut cps: Vec<u64> = (0..count)
        .rev()
        .map(|j| window / 10u64.saturating_pow(j as u32))
        .filter(|&c| c >= 1)
        .collect();
    cps.dedup();
    cps
}

impl Ideal for IdealOracle {
    fn name(&self) -> String {
        match self {
            Self::Finite { bound } => format!("finite ideal (bound {bound})"),
            Self::Density { horizon, tol, .. } => format!("density ideal (n = {horizon}, tol = {tol})"),
        }
    }

    fn ideal_contains(&self, set: &IndexSet) -> Verdict {
        match set {
            IndexSet::Finite(s) => {
                return Verdict::new(
                    Status::Holds,
                    vec![Evidence::Declared {
                        reason: format!("explicitly finite set of {} elements", s.len()),
                    }],
                    s.last().copied().unwrap_or(0),
                )
            }
            IndexSet::Cofinite(_) => {
                return Verdict::new(
                    Status::Fails,
                    vec![Evidence::Declared {
                        reason: "cofinite sets are outside every non-trivial admissible ideal".into(),
                    }],
                    0,
                )
            }
            _ => {}
        }

        let window = self.window_for(set);
        if window == 0 {
            return Verdict::new(Status::Inconclusive, vec![], 0);
        }
        let cps = match self {
            Self::Density { checkpoints, .. } => density_checkpoints(window, *checkpoints),
            Self::Finite { .. } => vec![],
        };
        let s = scan(set, window, &cps);
        let finite_witness = Evidence::FiniteWitness {
            last_member: s.last,
            window: s.window,
        };
        if s.last.is_none_or(|l| 2 * l <= window) {
            return Verdict::new(Status::Holds, vec![finite_witness], window);
        }

        match self {
            Self::Finite { .. } => {
                let tail = Evidence::TailMembers {
                    count: s.tail_count,
                    window,
                };
                let late = s.last.is_some_and(|l| 4 * l > 3 * window);
                if late && s.tail_count >= 2 {
                    Verdict::new(Status::Fails, vec![finite_witness, tail], window)
                } else {
                    Verdict::new(Status::Inconclusive, vec![finite_witness, tail], window)
                }
            }
            Self::Density { tol, .. } => decide_density(&s, *tol),
        }
    }
}

fn decide_density(s: &Scan, tol: f64) -> Verdict {
    let trace: Vec<DensityPoint> = s
        .counts_at
        .iter()
        .map(|&(n, count)| DensityPoint {
            n,
            count,
            density: count as f64 / n as f64,
        })
        .collect();
    let m = trace.len();
    let tail_from = m.saturating_sub(m.div_ceil(2).max(2));
    let windows: Vec<DensityPoint> = trace[tail_from..]
        .windows(2)
        .map(|w| {
            let (n, count) = (w[1].n - w[0].n, w[1].count - w[0].count);
            DensityPoint {
                n,
                count,
                density: count as f64 / n as f64,
            }
        })
        .collect();
    let finite = Evidence::FiniteWitness {
        last_member: s.last,
        window: s.window,
    };
    let evidence = vec![
        Evidence::DensityTrace {
            checkpoints: trace.clone(),
            tail_windows: windows.clone(),
        },
        finite,
    ];
    if m < 2 {
        return Verdict::new(Status::Inconclusive, evidence, s.window);
    }
    let small = trace.iter().all(|p| p.density <= tol) && windows.iter().all(|p| p.density <= tol);
    if small {
        return Verdict::new(Status::Holds, evidence, s.window);
    }
    let final_density = trace[m - 1].density;
    let last_window = windows.last().map_or(0.0, |w| w.density);
    if final_density > 2.0 * tol && last_window > 2.0 * tol {
        return Verdict::new(Status::Fails, evidence, s.window);
    }
    Verdict::new(Status::Inconclusive, evidence, s.window)
}

/// A user-supplied ideal decided on subsets of a fixed finite universe.
pub struct UniverseIdeal {
    pub name: String,
    pub universe: BTreeSet<u64>,
    pub decide: Arc<dyn Fn(&BTreeSet<u64>) -> bool + Send + Sync>,
}

impl Ideal for UniverseIdeal {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn ideal_contains(&self, set: &IndexSet) -> Verdict {
        let restricted: BTreeSet<u64> = self
            .universe
            .iter()
            .copied()
            .filter(|&k| set.contains(k) == Some(true))
            .collect();
        let status = if (self.decide)(&restricted) {
            Status::Holds
        } else {
            Status::Fails
        };
        let horizon = self.universe.last().copied().unwrap_or(0);
        Verdict::new(
            status,
            vec![Evidence::Declared {
                reason: format!("custom rule on {restricted:?}"),
            }],
            horizon,
        )
    }
}

/// Samples the ideal axioms on subsets of a small universe: the empty set,
/// closure under unions and subsets, singletons (admissibility) and
/// exclusion of `ℕ` (non-triviality).
pub fn check_ideal_axioms(oracle: &dyn Ideal, universe: &[u64], samples: &[(Vec<u64>, Vec<u64>)]) -> Result<AxiomReport> {
    let uni: BTreeSet<u64> = universe.iter().copied().collect();
    if uni.is_empty() || uni.len() > 20 {
        return Err(Error::Domain(format!(
            "universe must have 1..=20 elements, got {}",
            uni.len()
        )));
    }
    if samples.is_empty() {
        return Err(Error::Domain("need at least one sample pair".into()));
    }
    let restrict = |v: &[u64]| -> BTreeSet<u64> { v.iter().copied().filter(|k| uni.contains(k)).collect() };
    let member = |s: &BTreeSet<u64>| -> Result<bool> {
        Ok(oracle.ideal_contains(&IndexSet::finite(s.iter().copied())?).holds())
    };

    let mut empty = AxiomOutcome::new("(i) empty set is a member");
    let ok = member(&BTreeSet::new())?;
    empty.record(if ok { 0.0 } else { 1.0 }, 0.0, || "{}".into());

    let mut union = AxiomOutcome::new("(ii) closed under unions");
    let mut subset = AxiomOutcome::new("(iii) closed under subsets");
    for (a, b) in samples {
        let (a, b) = (restrict(a), restrict(b));
        let (ma, mb) = (member(&a)?, member(&b)?);
        if ma && mb {
            let u: BTreeSet<u64> = a.union(&b).copied().collect();
            let ok = member(&u)?;
            union.record(if ok { 0.0 } else { 1.0 }, 0.0, || format!("{a:?} ∪ {b:?}"));
        }
        for (sup, in_sup) in [(&a, ma), (&b, mb)] {
            if !in_sup {
                continue;
            }
            let inter: BTreeSet<u64> = a.intersection(&b).copied().collect();
            let diff: BTreeSet<u64> = sup.iter().copied().filter(|k| !inter.contains(k)).collect();
            for sub in [inter, diff] {
                let ok = member(&sub)?;
                subset.record(if ok { 0.0 } else { 1.0 }, 0.0, || format!("{sub:?} ⊆ {sup:?}"));
            }
        }
    }

    let mut admissible = AxiomOutcome::new("admissible (singletons)");
    for &u in &uni {
        let ok = oracle.ideal_contains(&IndexSet::singleton(u)?).holds();
        admissible.record(if ok { 0.0 } else { 1.0 }, 0.0, || format!("{{{u}}}"));
    }
    let mut nontrivial = AxiomOutcome::new("non-trivial (N excluded)");
    let ok = !oracle.ideal_contains(&IndexSet::naturals()).holds();
    nontrivial.record(if ok { 0.0 } else { 1.0 }, 0.0, || "N".into());

    Ok(AxiomReport {
        outcomes: vec![empty, union, subset, admissible, nontrivial],
        exact: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn densities() {
        assert_eq!(natural_density(&IndexSet::squares(), 100).unwrap(), Ratio::new(1, 10));
        assert_eq!(natural_density(&IndexSet::naturals(), 37).unwrap(), Ratio::new(1, 1));
        assert_eq!(natural_density(&IndexSet::evens(), 1000).unwrap(), Ratio::new(1, 2));
        assert!(natural_density(&IndexSet::evens(), 0).is_err());
        let obs = IndexSet::observed([1, 2], 5).unwrap();
        assert!(matches!(natural_density(&obs, 6), Err(Error::Horizon(_))));
    }

    #[test]
    fn squares_are_density_null() {
        let v = IdealOracle::density().ideal_contains(&IndexSet::squares());
        assert_eq!(v.status, Status::Holds);
        let trace = v.density_trace().unwrap();
        let got: Vec<(u64, u64)> = trace.iter().map(|p| (p.n, p.count)).collect();
        assert_eq!(got, vec![(10_000, 100), (100_000, 316), (1_000_000, 1000)]);
    }

    #[test]
    fn evens_and_naturals_are_not() {
        let o = IdealOracle::density();
        assert_eq!(o.ideal_contains(&IndexSet::evens()).status, Status::Fails);
        assert_eq!(o.ideal_contains(&IndexSet::naturals()).status, Status::Fails);
        assert_eq!(IdealOracle::finite(1000).ideal_contains(&IndexSet::naturals()).status, Status::Fails);
    }

    #[test]
    fn singletons_are_members() {
        for o in [IdealOracle::density(), IdealOracle::finite(100)] {
            assert!(o.ideal_contains(&IndexSet::singleton(7).unwrap()).holds());
        }
    }

    #[test]
    fn filter_side() {
        let o = IdealOracle::density();
        assert!(o.filter_contains(&IndexSet::squares().complement()).holds());
        assert!(o.filter_contains(&IndexSet::naturals()).holds());
        assert!(o.filter_contains(&IndexSet::evens()).fails());
    }

    #[test]
    fn block_sets_at_short_horizon() {
        let o = IdealOracle::density();
        // Finite prefix of blocks: member via the finite witness.
        assert!(o.ideal_contains(&IndexSet::blocks(&[1, 2, 4], 20)).holds());
        // Every block: not a member.
        let all: Vec<usize> = (1..=20).collect();
        assert!(o.ideal_contains(&IndexSet::blocks(&all, 20)).fails());
        // Three blocks cannot certify a trend.
        assert_eq!(o.ideal_contains(&IndexSet::blocks(&[1, 2], 3)).status, Status::Inconclusive);
    }

    #[test]
    fn finite_oracle_on_predicates() {
        let o = IdealOracle::finite(100_000);
        let early = IndexSet::predicate("k <= 10", |k| k <= 10);
        assert!(o.ideal_contains(&early).holds());
        assert!(o.ideal_contains(&IndexSet::squares()).fails());
    }

    #[test]
    fn complement_is_an_involution() {
        let obs = IndexSet::observed([2, 3, 9], 10).unwrap();
        assert_eq!(obs.complement().complement().members_upto(10).unwrap(), vec![2, 3, 9]);
        let fin = IndexSet::finite([4, 5]).unwrap();
        assert!(matches!(fin.complement(), IndexSet::Cofinite(_)));
        assert!(matches!(fin.complement().complement(), IndexSet::Finite(_)));
        let sq = IndexSet::squares();
        assert_eq!(sq.complement().complement().contains(49), Some(true));
    }

    #[test]
    fn axioms_on_small_universe() {
        let uni: Vec<u64> = (1..=10).collect();
        let samples = vec![(vec![1, 2, 3], vec![3, 4]), (vec![], vec![10]), (vec![5, 6, 7, 8], vec![1, 9])];
        for o in [IdealOracle::finite(1000), IdealOracle::density()] {
            let rep = check_ideal_axioms(&o, &uni, &samples).unwrap();
            assert!(rep.all_passed(), "{}", rep);
        }
    }

    #[test]
    fn corrupted_oracle_fails_empty_set_axiom() {
        let bad = UniverseIdeal {
            name: "no empty set".into(),
            universe: (1..=10).collect(),
            decide: Arc::new(|s: &BTreeSet<u64>| !s.is_empty() && s.len() < 3),
        };
        let rep = check_ideal_axioms(&bad, &(1..=10).collect::<Vec<_>>(), &[(vec![1], vec![2])]).unwrap();
        let ax = rep.get("(i) empty set is a member").unwrap();
        assert!(!ax.passed);
        assert_eq!(ax.witness.as_deref(), Some("{}"));
    }

    #[test]
    fn universe_bound_enforced() {
        let uni: Vec<u64> = (1..=21).collect();
        assert!(check_ideal_axioms(&IdealOracle::density(), &uni, &[(vec![], vec![])]).is_err());
    }

    #[test]
    fn descriptor_json() {
        let d: OracleDescriptor = serde_json::from_str(r#"{"kind":"density","horizon":1000000,"tol":0.01}"#).unwrap();
        assert_eq!(IdealOracle::from_descriptor(&d).unwrap(), IdealOracle::density());
        let d: OracleDescriptor = serde_json::from_str(r#"{"kind":"finite","bound":100000}"#).unwrap();
        assert_eq!(IdealOracle::from_descriptor(&d).unwrap(), IdealOracle::finite(100_000));
        let d: OracleDescriptor = serde_json::from_str(r#"{"kind":"density","horizon":10,"tol":0.9}"#).unwrap();
        assert!(IdealOracle::from_descriptor(&d).is_err());
    }
}
