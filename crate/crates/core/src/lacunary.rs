//! Lacunary schemes, deterministic sequence sources and block averages.

use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pn_space::{Point, PnSpace};

/// Largest `k_r` accepted; keeps every index exactly representable as `f64`.
pub const MAX_INDEX: u64 = 1 << 52;

fn default_c() -> f64 {
    1.0
}

fn default_from() -> usize {
    1
}

/// How `k_r` is generated. `k_0 = 0` always.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SchemeDescriptor {
    /// `k_r = ⌈c·ρ^r⌉` for `r >= 1`.
    Geometric {
        rho: f64,
        #[serde(default = "default_c")]
        c: f64,
        /// Block index from which `h_r` must be non-decreasing.
        #[serde(default = "default_from")]
        monotone_from: usize,
    },
    /// `k_r = r^p`.
    Polynomial { p: u32 },
    /// An explicit finite prefix `k_0, k_1, ..., k_R`.
    Explicit { ks: Vec<u64> },
}

/// `θ = (k_r)` with blocks `J_r = (k_{r-1}, k_r]` and widths `h_r = k_r - k_{r-1}`.
///
/// Blocks are 1-based. Closed-form schemes extend on demand; explicit ones
/// answer only inside their list. Growth `h_r → ∞` is not decidable from a
/// prefix: closed forms are checked for non-decreasing widths and
/// `h_R > h_1` on each requested horizon, while explicit lists only need to
/// be strictly increasing and their asymptotics are taken on trust.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LacunaryScheme {
    descriptor: SchemeDescriptor,
}

impl LacunaryScheme {
    pub fn new(descriptor: SchemeDescriptor) -> Result<Self> {
        match &descriptor {
            SchemeDescriptor::Geometric { rho, c, .. } => {
                if !(*rho > 1.0) || !rho.is_finite() {
                    return Err(Error::Construction(format!("rho must be > 1, got {rho}")));
                }
                if !(*c > 0.0) || !c.is_finite() {
                    return Err(Error::Construction(format!("c must be > 0, got {c}")));
                }
            }
            SchemeDescriptor::Polynomial { p } => {
                if *p < 2 {
                    return Err(Error::Construction(format!(
                        "polynomial schemes need p >= 2 for growing blocks, got {p}"
                    )));
                }
            }
            SchemeDescriptor::Explicit { ks } => {
                if ks.len() < 2 {
                    return Err(Error::Construction("explicit scheme needs k_0 and k_1".into()));
                }
                if ks[0] != 0 {
                    return Err(Error::Construction(format!("k_0 must be 0, got {}", ks[0])));
                }
                if let Some(w) = ks.windows(2).find(|w| w[1] <= w[0]) {
                    return Err(Error::Construction(format!(
                        "k_r must be strictly increasing ({} then {})",
                        w[0], w[1]
                    )));
                }
            }
        }
        let scheme = Self { descriptor };
        if !scheme.is_explicit() {
            scheme.validate_horizon(4)?;
        }
        Ok(scheme)
    }

    pub fn geometric(rho: f64) -> Result<Self> {
        Self::new(SchemeDescriptor::Geometric {
            rho,
            c: 1.0,
            monotone_from: 1,
        })
    }

    pub fn explicit(ks: Vec<u64>) -> Result<Self> {
        Self::new(SchemeDescriptor::Explicit { ks })
    }

    pub fn descriptor(&self) -> &SchemeDescriptor {
        &self.descriptor
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.descriptor, SchemeDescriptor::Explicit { .. })
    }

    /// True when the growth of `h_r` rests on the user's word alone.
    pub fn asymptotics_asserted_by_user(&self) -> bool {
        self.is_explicit()
    }

    /// Number of blocks available, if bounded.
    pub fn max_blocks(&self) -> Option<usize> {
        match &self.descriptor {
            SchemeDescriptor::Explicit { ks } => Some(ks.len() - 1),
            _ => None,
        }
    }

    /// `k_r`.
    pub fn k(&self, r: usize) -> Result<u64> {
        if r == 0 {
            return Ok(0);
        }
        let k = match &self.descriptor {
            SchemeDescriptor::Geometric { rho, c, .. } => {
                let v = (c * rho.powi(r as i32)).ceil();
                if !(v < MAX_INDEX as f64) {
                    return Err(Error::Horizon(format!("k_{r} exceeds 2^52")));
                }
                v as u64
            }
            SchemeDescriptor::Polynomial { p } => (r as u64)
                .checked_pow(*p)
                .filter(|&v| v < MAX_INDEX)
                .ok_or_else(|| Error::Horizon(format!("k_{r} exceeds 2^52")))?,
            SchemeDescriptor::Explicit { ks } => *ks.get(r).ok_or_else(|| {
                Error::Horizon(format!(
                    "block {r} is beyond the explicit scheme ({} blocks)",
                    ks.len() - 1
                ))
            })?,
        };
        Ok(k)
    }

    /// `J_r` as `(lo, hi)`, meaning the indices `lo + 1 ..= hi`.
    pub fn block_range(&self, r: usize) -> Result<(u64, u64)> {
        if r == 0 {
            return Err(Error::Domain("blocks are numbered from 1".into()));
        }
        Ok((self.k(r - 1)?, self.k(r)?))
    }

    /// `h_r`.
    pub fn width(&self, r: usize) -> Result<u64> {
        let (lo, hi) = self.block_range(r)?;
        Ok(hi - lo)
    }

    /// Checks the finite-horizon growth conditions up to block `horizon`.
    pub fn validate_horizon(&self, horizon: usize) -> Result<()> {
        let ks = (0..=horizon).map(|r| self.k(r)).collect::<Result<Vec<_>>>()?;
        if let Some(i) = ks.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Construction(format!(
                "k_r is not strictly increasing at r = {}",
                i + 1
            )));
        }
        if self.is_explicit() || horizon < 2 {
            return Ok(());
        }
        let h: Vec<u64> = ks.windows(2).map(|w| w[1] - w[0]).collect();
        let from = match &self.descriptor {
            SchemeDescriptor::Geometric { monotone_from, .. } => (*monotone_from).max(1),
            _ => 1,
        };
        for r in from + 1..=horizon {
            if h[r - 1] < h[r - 2] {
                return Err(Error::Construction(format!(
                    "h_r decreases at r = {r} ({} -> {})",
                    h[r - 2],
                    h[r - 1]
                )));
            }
        }
        if horizon >= 4 && h[horizon - 1] <= h[0] {
            return Err(Error::Construction(format!(
                "h_{horizon} = {} does not exceed h_1 = {}",
                h[horizon - 1],
                h[0]
            )));
        }
        Ok(())
    }

    /// All blocks `J_1 ..= J_R`.
    pub fn blocks(&self, horizon: usize) -> Result<Vec<(u64, u64)>> {
        (1..=horizon).map(|r| self.block_range(r)).collect()
    }

    /// The block containing index `k`, if it lies within the horizon.
    pub fn block_of(&self, k: u64, horizon: usize) -> Result<Option<usize>> {
        if k == 0 {
            return Ok(None);
        }
        for r in 1..=horizon {
            if k <= self.k(r)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }
}

/// A pure, deterministic map `k ↦ x_k` for `k >= 1`, memoised on first use.
#[derive(Clone)]
pub struct SequenceSource {
    label: String,
    dim: usize,
    gen: Arc<dyn Fn(u64) -> Point + Send + Sync>,
    cache: Arc<RwLock<Arc<Vec<f64>>>>,
}

impl fmt::Debug for SequenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceSource")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .finish()
    }
}

impl SequenceSource {
    pub fn new(label: impl Into<String>, dim: usize, gen: impl Fn(u64) -> Point + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            dim,
            gen: Arc::new(gen),
            cache: Arc::new(RwLock::new(Arc::new(Vec::new()))),
        }
    }

    /// A one-dimensional sequence.
    pub fn scalar(label: impl Into<String>, f: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(label, 1, move |k| Point::scalar(f(k)))
    }

    pub fn constant(value: Point) -> Self {
        let dim = value.dim();
        Self::new(format!("constant {value}"), dim, move |_| value.clone())
    }

    /// `x_k = 1` when `k` is a perfect square, 0 otherwise.
    pub fn indicator_of_squares() -> Self {
        Self::scalar("indicator of squares", |k| if is_square(k) { 1.0 } else { 0.0 })
    }

    /// `x_k = (-1)^k`.
    pub fn alternating() -> Self {
        Self::scalar("alternating", |k| if k % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// `x_k = scale / k`.
    pub fn reciprocal(scale: f64) -> Self {
        Self::scalar(format!("{scale}/k"), move |k| scale / k as f64)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `x_k`, computed directly (not through the cache).
    pub fn at(&self, k: u64) -> Point {
        (self.gen)(k)
    }

    /// `x_1 ..= x_n`, served from the memo when possible.
    pub fn prefix(&self, n: u64) -> Result<Prefix> {
        let need = n as usize * self.dim;
        {
            let cached = self.cache.read().expect("sequence cache poisoned");
            if cached.len() >= need {
                return Ok(Prefix {
                    dim: self.dim,
                    len: n,
                    data: Arc::clone(&cached),
                });
            }
        }
        let mut data = Vec::with_capacity(need);
        for k in 1..=n {
            let p = (self.gen)(k);
            if p.dim() != self.dim {
                return Err(Error::Shape(format!(
                    "{}: x_{k} has dimension {} (expected {})",
                    self.label,
                    p.dim(),
                    self.dim
                )));
            }
            if let Some(c) = p.0.iter().find(|c| !c.is_finite()) {
                return Err(Error::Domain(format!("{}: x_{k} has coordinate {c}", self.label)));
            }
            data.extend_from_slice(&p.0);
        }
        let data = Arc::new(data);
        let mut slot = self.cache.write().expect("sequence cache poisoned");
        if slot.len() < data.len() {
            *slot = Arc::clone(&data);
        }
        Ok(Prefix { dim: self.dim, len: n, data })
    }
}

/// A materialised prefix `x_1 ..= x_n`.
#[derive(Debug, Clone)]
pub struct Prefix {
    dim: usize,
    len: u64,
    data: Arc<Vec<f64>>,
}

impl Prefix {
    /// Wraps row-major coordinates of `len` points of dimension `dim`.
    pub fn from_flat(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 || data.len() % dim != 0 {
            return Err(Error::Shape(format!("{} coordinates do not split into dimension {dim}", data.len())));
        }
        Ok(Self {
            dim,
            len: (data.len() / dim) as u64,
            data: Arc::new(data),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coordinates of `x_k`, `1 <= k <= len`.
    #[inline]
    pub fn get(&self, k: u64) -> &[f64] {
        assert!(k >= 1 && k <= self.len, "index {k} outside prefix 1..={}", self.len);
        let i = (k as usize - 1) * self.dim;
        &self.data[i..i + self.dim]
    }
}

pub fn is_square(k: u64) -> bool {
    let r = k.isqrt();
    r * r == k
}

/// Crisp distances `‖x_k - L‖` for `k = 1..=n`, the shared input of every
/// block-average computation toward `L`.
#[derive(Debug, Clone)]
pub struct DistanceProfile {
    dists: Vec<f64>,
}

impl DistanceProfile {
    pub fn toward(prefix: &Prefix, space: &PnSpace, target: &[f64]) -> Self {
        let norm = space.norm();
        let dists = (1..=prefix.len()).map(|k| norm.dist(prefix.get(k), target)).collect();
        Self { dists }
    }

    pub fn from_distances(dists: Vec<f64>) -> Self {
        Self { dists }
    }

    /// `‖x_k - L‖`, 1-based.
    #[inline]
    pub fn dist(&self, k: u64) -> f64 {
        self.dists[k as usize - 1]
    }

    pub fn len(&self) -> usize {
        self.dists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dists.is_empty()
    }

    /// `ν_{x_k - L}(eps)`.
    #[inline]
    pub fn nu(&self, space: &PnSpace, k: u64, eps: f64) -> f64 {
        space.nu_at_norm(self.dist(k), eps)
    }

    /// `(1/h_r) Σ_{k ∈ J_r} ν_{x_k - L}(eps)` for each block.
    pub fn block_averages(&self, space: &PnSpace, blocks: &[(u64, u64)], eps: f64) -> Vec<f64> {
        blocks
            .iter()
            .map(|&(lo, hi)| {
                let sum: f64 = (lo + 1..=hi).map(|k| self.nu(space, k, eps)).sum();
                sum / (hi - lo) as f64
            })
            .collect()
    }
}

/// `(1/h_r) Σ_{k ∈ J_r} ν_{x_k - L}(eps)`.
pub fn block_average(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    r: usize,
    limit: &Point,
    eps: f64,
) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    space.check_point(limit)?;
    if seq.dim() != space.dim() {
        return Err(Error::Shape("sequence and space dimensions differ".into()));
    }
    let (lo, hi) = theta.block_range(r)?;
    let prefix = seq.prefix(hi)?;
    let sum: f64 = (lo + 1..=hi)
        .map(|k| space.nu_diff(prefix.get(k), &limit.0, eps))
        .sum();
    Ok(sum / (hi - lo) as f64)
}
