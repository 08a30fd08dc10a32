//! Sample grids that discretize "for all y ∈ Y" sweeps.

/// Sampling plan for a box domain.
///
/// A grid is `points_per_dim` uniform samples per coordinate, optionally
/// refined near a focal point `u` with extra samples at distances
/// `10^-1 … 10^-focal_depth` on both sides. The refinement matters because
/// several bounds are only attained in the limit y → u.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub points_per_dim: usize,
    pub focal: Option<Vec<f64>>,
    pub focal_depth: u32,
}

/// Bound used when a domain side is infinite: sampling clamps to ±CLAMP.
pub const CLAMP: f64 = 1e3;

impl GridSpec {
    pub fn uniform(points_per_dim: usize) -> Self {
        GridSpec {
            points_per_dim: points_per_dim.max(2),
            focal: None,
            focal_depth: 0,
        }
    }

    /// Default grid: 2001 uniform points plus focal refinement down to 1e-8.
    pub fn default_focal(u: &[f64]) -> Self {
        GridSpec {
            points_per_dim: 2001,
            focal: Some(u.to_vec()),
            focal_depth: 8,
        }
    }

    pub fn with_focal(mut self, u: &[f64], depth: u32) -> Self {
        self.focal = Some(u.to_vec());
        self.focal_depth = depth;
        self
    }

    /// Per-coordinate sample positions over `[lo, hi]`, sorted and deduplicated.
    /// `dim_index` selects the focal coordinate for refinement.
    pub fn axis_points(&self, lo: f64, hi: f64, dim_index: usize) -> Vec<f64> {
        let lo = if lo.is_finite() { lo } else { -CLAMP };
        let hi = if hi.is_finite() { hi } else { CLAMP };
        let n = self.points_per_dim.max(2);
        let mut pts = Vec::with_capacity(n + 2 * self.focal_depth as usize + 1);
        let step = (hi - lo) / (n - 1) as f64;
        for i in 0..n {
            pts.push(lo + step * i as f64);
        }
        // last point exactly at hi to avoid rounding drift
        pts[n - 1] = hi;
        if let Some(focal) = &self.focal {
            if let Some(&u) = focal.get(dim_index) {
                if u >= lo && u <= hi {
                    pts.push(u);
                    for k in 1..=self.focal_depth {
                        let d = 10f64.powi(-(k as i32));
                        for cand in [u - d, u + d] {
                            if cand >= lo && cand <= hi {
                                pts.push(cand);
                            }
                        }
                    }
                }
            }
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        pts
    }

    /// Full cartesian grid over a box given as (lo, hi) per dimension.
    pub fn points(&self, domain: &[(f64, f64)]) -> Vec<Vec<f64>> {
        let axes: Vec<Vec<f64>> = domain
            .iter()
            .enumerate()
            .map(|(i, &(lo, hi))| self.axis_points(lo, hi, i))
            .collect();
        let mut out = vec![Vec::new()];
        for axis in &axes {
            let mut next = Vec::with_capacity(out.len() * axis.len());
            for prefix in &out {
                for &v in axis {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::uniform(2001)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_axis() {
        let g = GridSpec::uniform(3);
        assert_eq!(g.axis_points(0.0, 1.0, 0), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn focal_refinement_adds_points_near_u() {
        let g = GridSpec::uniform(3).with_focal(&[0.0], 2);
        let pts = g.axis_points(-1.0, 1.0, 0);
        for expect in [-0.1, -0.01, 0.0, 0.01, 0.1] {
            assert!(pts.contains(&expect), "{expect} missing from {pts:?}");
        }
    }

    #[test]
    fn clamps_infinite_sides() {
        let g = GridSpec::uniform(2);
        assert_eq!(g.axis_points(f64::NEG_INFINITY, 1.0, 0), vec![-CLAMP, 1.0]);
    }

    #[test]
    fn cartesian_product() {
        let g = GridSpec::uniform(2);
        let pts = g.points(&[(0.0, 1.0), (2.0, 3.0)]);
        assert_eq!(
            pts,
            vec![
                vec![0.0, 2.0],
                vec![0.0, 3.0],
                vec![1.0, 2.0],
                vec![1.0, 3.0]
            ]
        );
    }
}
