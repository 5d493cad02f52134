use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::axioms::{AxiomOutcome, AxiomReport};
use crate::error::{Error, Result};

/// A triangular norm on `[0, 1]`.
#[derive(Clone)]
pub enum TNorm {
    /// `M(s, t) = min(s, t)`
    Min,
    /// `Π(s, t) = s·t`
    Product,
    /// A user operation. Nothing is assumed about it; audit with
    /// [`check_tnorm_axioms`].
    Custom {
        name: String,
        op: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl PartialEq for TNorm {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Self::Min, Self::Min) | (Self::Product, Self::Product) => true,
            (Self::Custom { op: a, .. }, Self::Custom { op: b, .. }) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {v} is outside [0,1]")))
    }
}

impl TNorm {
    pub fn custom(name: impl Into<String>, op: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Custom {
            name: name.into(),
            op: Arc::new(op),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Self::Min => "min",
            Self::Product => "product",
            Self::Custom { name, .. } => name,
        }
    }

    /// `T(s, t)` with range-checked arguments.
    pub fn eval(&self, s: f64, t: f64) -> Result<f64> {
        check_unit("s", s)?;
        check_unit("t", t)?;
        Ok(self.apply(s, t))
    }

    /// The dual conorm `T*(s, t) = 1 - T(1 - s, 1 - t)`.
    pub fn conorm(&self, s: f64, t: f64) -> Result<f64> {
        check_unit("s", s)?;
        check_unit("t", t)?;
        Ok(self.apply_conorm(s, t))
    }

    #[inline]
    pub(crate) fn apply(&self, s: f64, t: f64) -> f64 {
        match self {
            Self::Min => s.min(t),
            Self::Product => s * t,
            Self::Custom { op, .. } => op(s, t),
        }
    }

    #[inline]
    pub(crate) fn apply_conorm(&self, s: f64, t: f64) -> f64 {
        match self {
            Self::Min => s.max(t),
            Self::Product => s + t - s * t,
            Self::Custom { op, .. } => 1.0 - op(1.0 - s, 1.0 - t),
        }
    }

    /// Exact evaluation for the built-in norms; `None` for custom ones.
    pub fn eval_exact(&self, s: &BigRational, t: &BigRational) -> Option<BigRational> {
        match self {
            Self::Min => Some(if s <= t { s.clone() } else { t.clone() }),
            Self::Product => Some(s * t),
            Self::Custom { .. } => None,
        }
    }
}

/// Unit-interval triples `(i/n, j/n, l/n)` for `0 <= i, j, l <= n`.
pub fn unit_grid_triples(n: usize) -> Vec<(f64, f64, f64)> {
    let pts: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    let mut out = Vec::with_capacity(pts.len().pow(3));
    for &a in &pts {
        for &b in &pts {
            for &c in &pts {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Checks commutativity, associativity, monotonicity and the unit boundary
/// condition on `samples`.
///
/// Built-in norms are evaluated in exact rational arithmetic on the exact
/// values of the sample floats, so the report shows zero deviation. Floating
/// point multiplication is not associative, so the same samples evaluated in
/// `f64` would show one-ulp gaps; see [`check_tnorm_axioms_float`].
pub fn check_tnorm_axioms(norm: &TNorm, samples: &[(f64, f64, f64)]) -> AxiomReport {
    match norm {
        TNorm::Custom { .. } => check_tnorm_axioms_float(norm, samples),
        _ => check_exact(norm, samples),
    }
}

/// Same checks as [`check_tnorm_axioms`], always in `f64`.
pub fn check_tnorm_axioms_float(norm: &TNorm, samples: &[(f64, f64, f64)]) -> AxiomReport {
    let mut comm = AxiomOutcome::new("T1 commutativity");
    let mut assoc = AxiomOutcome::new("T2 associativity");
    let mut mono = AxiomOutcome::new("T3 monotonicity");
    let mut unit = AxiomOutcome::new("T4 boundary T(1,t)=t");
    let t = |a, b| norm.apply(a, b);
    for &(s, u, v) in samples {
        comm.record((t(s, u) - t(u, s)).abs(), 0.0, || format!("({s}, {u})"));
        assoc.record((t(t(s, u), v) - t(s, t(u, v))).abs(), 0.0, || {
            format!("({s}, {u}, {v})")
        });
        let (lo, hi) = if s <= v { (s, v) } else { (v, s) };
        mono.record(t(lo, u) - t(hi, u), 0.0, || {
            format!("T({lo}, {u}) > T({hi}, {u})")
        });
        for x in [s, u, v] {
            unit.record((t(1.0, x) - x).abs(), 0.0, || format!("(1, {x})"));
        }
    }
    AxiomReport {
        outcomes: vec![comm, assoc, mono, unit],
        exact: false,
    }
}

fn check_exact(norm: &TNorm, samples: &[(f64, f64, f64)]) -> AxiomReport {
    let mut comm = AxiomOutcome::new("T1 commutativity");
    let mut assoc = AxiomOutcome::new("T2 associativity");
    let mut mono = AxiomOutcome::new("T3 monotonicity");
    let mut unit = AxiomOutcome::new("T4 boundary T(1,t)=t");
    let one = BigRational::one();
    let t = |a: &BigRational, b: &BigRational| norm.eval_exact(a, b).expect("built-in norm");
    let dev = |a: BigRational, b: BigRational| -> f64 {
        let d = (a - b).abs();
        if d.is_zero() {
            0.0
        } else {
            d.to_f64().unwrap_or(f64::INFINITY).max(f64::MIN_POSITIVE)
        }
    };
    for &(s, u, v) in samples {
        let (Some(rs), Some(ru), Some(rv)) = (to_exact(s), to_exact(u), to_exact(v)) else {
            continue;
        };
        comm.record(dev(t(&rs, &ru), t(&ru, &rs)), 0.0, || format!("({s}, {u})"));
        assoc.record(dev(t(&t(&rs, &ru), &rv), t(&rs, &t(&ru, &rv))), 0.0, || {
            format!("({s}, {u}, {v})")
        });
        let (lo, hi) = if rs <= rv { (&rs, &rv) } else { (&rv, &rs) };
        let gap = t(lo, &ru) - t(hi, &ru);
        let gap = if gap > BigRational::zero() {
            gap.to_f64().unwrap_or(f64::INFINITY).max(f64::MIN_POSITIVE)
        } else {
            0.0
        };
        mono.record(gap, 0.0, || format!("({s}, {u}, {v})"));
        for (x, rx) in [(s, &rs), (u, &ru), (v, &rv)] {
            unit.record(dev(t(&one, rx), rx.clone()), 0.0, || format!("(1, {x})"));
        }
    }
    AxiomReport {
        outcomes: vec![comm, assoc, mono, unit],
        exact: true,
    }
}

fn to_exact(x: f64) -> Option<BigRational> {
    if x == 0.0 {
        return Some(BigRational::from_integer(BigInt::zero()));
    }
    BigRational::from_float(x)
}
