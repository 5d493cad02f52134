use serde::Serialize;

use super::{GridDF, TNorm};
use crate::error::{Error, Result};

/// The three grid-computable triangle functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TriangleKind {
    /// `x ↦ sup { T(F(u), G(v)) : u + v = x }`
    TauT,
    /// `x ↦ inf { T*(F(u), G(v)) : u + v = x }`
    TauTStar,
    /// `x ↦ T(F(x), G(x))`
    PiT,
}

/// Result of a discrete triangle function together with the size of the
/// monotone repair that was applied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleOutput {
    pub df: GridDF,
    pub max_repair: f64,
}

/// Evaluates a triangle function on a shared grid.
///
/// The sup/inf over `u + v = x` runs over grid pairs `(t_j, x - t_j)`, with
/// `G` looked up at the largest grid point not above `x - t_j` (a snap
/// tolerance absorbs rounding on uniform grids, where the pairs align
/// exactly). The raw values are then passed through a running maximum.
pub fn triangle_eval(kind: TriangleKind, f: &GridDF, g: &GridDF, norm: &TNorm) -> Result<TriangleOutput> {
    if f.grid() != g.grid() {
        return Err(Error::Shape("triangle functions need a common support grid".into()));
    }
    let grid = f.grid();
    let (fv, gv) = (f.values(), g.values());
    let n = grid.len();
    let snap = 1e-9 * grid[n - 1].max(1.0);

    let mut raw = Vec::with_capacity(n);
    for i in 0..n {
        let x = grid[i];
        let v = match kind {
            TriangleKind::PiT => norm.apply(fv[i], gv[i]),
            TriangleKind::TauT | TriangleKind::TauTStar => {
                let mut acc = match kind {
                    TriangleKind::TauT => f64::NEG_INFINITY,
                    _ => f64::INFINITY,
                };
                for j in 0..=i {
                    let rest = x - grid[j] + snap;
                    let l = grid.partition_point(|&t| t <= rest) - 1;
                    if kind == TriangleKind::TauT {
                        acc = acc.max(norm.apply(fv[j], gv[l]));
                    } else {
                        acc = acc.min(norm.apply_conorm(fv[j], gv[l]));
                    }
                }
                acc
            }
        };
        raw.push(v);
    }

    let mut max_repair = 0.0f64;
    let mut running = f64::NEG_INFINITY;
    let repaired: Vec<f64> = raw
        .iter()
        .map(|&v| {
            running = running.max(v);
            max_repair = max_repair.max(running - v);
            running
        })
        .collect();
    let df = GridDF::new(f.grid_arc().clone(), repaired)?;
    Ok(TriangleOutput { df, max_repair })
}
