//! Seeded instances with a known limit, for property tests.
//!
//! `x_k = L ± c·u / k^p` off the perfect squares and `x_k = L + s_k` on them,
//! where `u` is a fixed unit vector and the spikes `s_k` have random direction
//! and norm in a fixed band. The squares have density zero and thin out
//! inside geometric blocks, so the instance converges to `L` in the ideal
//! lacunary sense without converging pointwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideals::IndexSet;
use crate::lacunary::{is_square, LacunaryScheme, SequenceSource};
use crate::pn_space::Point;

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedConfig {
    /// Fixed dimension, or `None` to draw from `{1, 2}`.
    pub dim: Option<usize>,
    /// Limit coordinates are drawn from `[-limit_box, limit_box]`.
    pub limit_box: f64,
    /// Range of the decay constant `c`.
    pub decay: (f64, f64),
    pub power: f64,
    /// Range of spike norms.
    pub spike_norm: (f64, f64),
}

impl Default for PlantedConfig {
    fn default() -> Self {
        Self {
            dim: None,
            limit_box: 5.0,
            decay: (0.1, 1.0),
            power: 2.0,
            spike_norm: (1.0, 5.0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub seed: u64,
    pub limit: Point,
    pub decay: f64,
    pub direction: Point,
    pub seq: SequenceSource,
    /// Indices carrying spikes.
    pub spikes: IndexSet,
}

fn unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Point {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-3 {
            return Point(v.into_iter().map(|c| c / n).collect());
        }
    }
}

impl PlantedInstance {
    /// Ideal lacunary convergence of planted instances is certified on
    /// geometric blocks with this ratio and horizon.
    pub const RHO: f64 = 2.0;
    pub const BLOCKS: usize = 16;

    pub fn scheme() -> LacunaryScheme {
        LacunaryScheme::geometric(Self::RHO).expect("valid ratio")
    }

    pub fn generate(seed: u64, cfg: &PlantedConfig) -> Result<Self> {
        let (d0, d1) = cfg.decay;
        let (s0, s1) = cfg.spike_norm;
        if !(0.0 < d0 && d0 <= d1 && 0.0 < s0 && s0 <= s1 && cfg.limit_box >= 0.0 && cfg.power > 0.0) {
            return Err(Error::Domain(format!("invalid planted configuration {cfg:?}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = match cfg.dim {
            Some(0) => return Err(Error::Domain("dimension must be positive".into())),
            Some(d) => d,
            None => rng.random_range(1..=2),
        };
        let limit = Point((0..dim).map(|_| rng.random_range(-cfg.limit_box..=cfg.limit_box)).collect());
        let decay = rng.random_range(d0..=d1);
        let direction = unit_vector(&mut rng, dim);

        let (l, u, p) = (limit.clone(), direction.clone(), cfg.power);
        let seq = SequenceSource::new(format!("planted #{seed}"), dim, move |k| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            r.set_stream(k);
            if is_square(k) {
                let s = unit_vector(&mut r, dim);
                let m = r.random_range(s0..=s1);
                Point(l.0.iter().zip(&s.0).map(|(a, b)| a + m * b).collect())
            } else {
                let sign = if r.random_bool(0.5) { 1.0 } else { -1.0 };
                let w = sign * decay / (k as f64).powf(p);
                Point(l.0.iter().zip(&u.0).map(|(a, b)| a + w * b).collect())
            }
        });
        Ok(Self {
            seed,
            limit,
            decay,
            direction,
            seq,
            spikes: IndexSet::squares(),
        })
    }

    pub fn dim(&self) -> usize {
        self.limit.dim()
    }

    /// `count` points at distance in `[min_dist, min_dist + 4]` from the limit.
    pub fn decoys(&self, count: usize, min_dist: f64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(u64::MAX);
        (0..count)
            .map(|_| {
                let u = unit_vector(&mut rng, self.dim());
                let d = rng.random_range(min_dist..=min_dist + 4.0);
                &self.limit + &u.scale(d)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_pure() {
        let a = PlantedInstance::generate(7, &PlantedConfig::default()).unwrap();
        let b = PlantedInstance::generate(7, &PlantedConfig::default()).unwrap();
        assert_eq!(a.limit, b.limit);
        for k in [1, 2, 3, 4, 99, 100, 65_536] {
            assert_eq!(a.seq.at(k), b.seq.at(k));
            assert_eq!(a.seq.at(k), a.seq.at(k));
        }
        let c = PlantedInstance::generate(8, &PlantedConfig::default()).unwrap();
        assert_ne!(a.seq.at(5), c.seq.at(5));
    }

    #[test]
    fn shape_of_the_instance() {
        let inst = PlantedInstance::generate(3, &PlantedConfig { dim: Some(2), ..Default::default() }).unwrap();
        assert_eq!(inst.dim(), 2);
        let off = |k: u64| {
            let d = &inst.seq.at(k) - &inst.limit;
            d.0.iter().map(|c| c * c).sum::<f64>().sqrt()
        };
        for k in [16, 25, 10_000] {
            assert!((1.0 - 1e-9..=5.0 + 1e-9).contains(&off(k)));
        }
        for k in [2u64, 3, 1000] {
            assert!((off(k) - inst.decay / (k * k) as f64).abs() < 1e-12);
        }
        for d in inst.decoys(5, 1.0) {
            let e = &d - &inst.limit;
            assert!(e.0.iter().map(|c| c * c).sum::<f64>().sqrt() >= 1.0 - 1e-12);
        }
    }
}
