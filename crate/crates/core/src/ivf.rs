//! Interval-valued functions `Φ(y) = [φ̲(y), φ̄(y)]` over piecewise box
//! domains, their file format, and basic calculus checks (concavity,
//! gH-continuity, directional and Fréchet derivative probes).

use crate::error::{Error, Result};
use crate::expr::{parse_expr_at, Expr};
use crate::grid::GridSpec;
use crate::interval::{Interval, IntervalVector};

/// Tolerance for piece/domain containment and boundary agreement.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Anything that evaluates points to intervals over a box domain.
///
/// `Ivf` implements this; derived functions (gH-differences, sums,
/// negations) implement it without materializing endpoint expressions.
pub trait IntervalFn {
    fn dim(&self) -> usize;
    /// Per-coordinate closed bounds; infinite endpoints mean half-lines.
    fn domain(&self) -> &[(f64, f64)];
    fn eval(&self, y: &[f64]) -> Result<Interval>;

    fn contains(&self, y: &[f64]) -> bool {
        y.len() == self.dim()
            && y.iter()
                .zip(self.domain())
                .all(|(v, &(lo, hi))| *v >= lo - BOUNDARY_TOL && *v <= hi + BOUNDARY_TOL)
    }
}

/// One piece: a box region with lower/upper endpoint expressions.
#[derive(Debug, Clone)]
pub struct Piece {
    pub region: Vec<(f64, f64)>,
    pub lower: Expr,
    pub upper: Expr,
}

impl Piece {
    fn contains(&self, y: &[f64]) -> bool {
        y.iter()
            .zip(&self.region)
            .all(|(v, &(lo, hi))| *v >= lo - BOUNDARY_TOL && *v <= hi + BOUNDARY_TOL)
    }

    fn raw_eval(&self, y: &[f64]) -> Result<Interval> {
        let lo = self.lower.eval(y);
        let hi = self.upper.eval(y);
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::NonFiniteValue { point: y.to_vec() });
        }
        if lo > hi + BOUNDARY_TOL {
            return Err(Error::EndpointOrderViolation {
                point: y.to_vec(),
                lower: lo,
                upper: hi,
            });
        }
        Interval::new(lo.min(hi), hi.max(lo))
    }
}

/// A piecewise interval-valued function over a box domain.
#[derive(Debug, Clone)]
pub struct Ivf {
    pub name: String,
    pub dim: usize,
    pub domain: Vec<(f64, f64)>,
    pub pieces: Vec<Piece>,
}

impl IntervalFn for Ivf {
    fn dim(&self) -> usize {
        self.dim
    }

    fn domain(&self) -> &[(f64, f64)] {
        &self.domain
    }

    /// First matching piece wins; load-time validation guarantees that
    /// pieces agree on shared boundaries.
    fn eval(&self, y: &[f64]) -> Result<Interval> {
        if !IntervalFn::contains(self, y) {
            return Err(Error::OutOfDomain(y.to_vec()));
        }
        for p in &self.pieces {
            if p.contains(y) {
                return p.raw_eval(y);
            }
        }
        Err(Error::CoverageGap(y.to_vec()))
    }
}

fn parse_bound(tok: &str, line: usize) -> Result<f64> {
    match tok {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => tok.parse().map_err(|_| Error::Parse {
            line,
            col: 1,
            msg: format!("invalid bound '{tok}'"),
        }),
    }
}

fn validation_axis(lo: f64, hi: f64) -> Vec<f64> {
    let lo = if lo.is_finite() { lo } else { -crate::grid::CLAMP };
    let hi = if hi.is_finite() { hi } else { crate::grid::CLAMP };
    let n = 101;
    let mut pts: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect();
    pts[n - 1] = hi;
    pts
}

fn cartesian(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for axis in axes {
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

impl Ivf {
    /// Validates invariants on a sample grid: endpoint order and
    /// finiteness on each piece, domain coverage, and agreement of
    /// overlapping pieces on shared points.
    fn validate(&self) -> Result<()> {
        if self.pieces.is_empty() {
            return Err(Error::Parse {
                line: 0,
                col: 1,
                msg: "at least one piece is required".into(),
            });
        }
        for p in &self.pieces {
            if p.region.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    actual: p.region.len(),
                });
            }
            let axes: Vec<Vec<f64>> = p
                .region
                .iter()
                .zip(&self.domain)
                .map(|(&(plo, phi), &(dlo, dhi))| validation_axis(plo.max(dlo), phi.min(dhi)))
                .collect();
            for y in cartesian(&axes) {
                p.raw_eval(&y)?;
            }
        }
        // coverage and cross-piece agreement over the domain, with every
        // piece corner added so shared boundaries are actually probed
        let mut axes: Vec<Vec<f64>> = self
            .domain
            .iter()
            .map(|&(lo, hi)| validation_axis(lo, hi))
            .collect();
        for p in &self.pieces {
            for (i, &(lo, hi)) in p.region.iter().enumerate() {
                for v in [lo, hi] {
                    if v.is_finite() && v >= self.domain[i].0 && v <= self.domain[i].1 {
                        axes[i].push(v);
                    }
                }
            }
        }
        for axis in &mut axes {
            axis.sort_by(|a, b| a.partial_cmp(b).unwrap());
            axis.dedup();
        }
        for y in cartesian(&axes) {
            let mut seen: Option<Interval> = None;
            for p in &self.pieces {
                if p.contains(&y) {
                    let v = p.raw_eval(&y)?;
                    if let Some(prev) = seen {
                        let d = prev.gh_sub(v).norm();
                        if d > BOUNDARY_TOL {
                            return Err(Error::PieceDisagreement {
                                point: y.clone(),
                                a: (prev.lo(), prev.hi()),
                                b: (v.lo(), v.hi()),
                            });
                        }
                    } else {
                        seen = Some(v);
                    }
                }
            }
            if seen.is_none() {
                return Err(Error::CoverageGap(y));
            }
        }
        Ok(())
    }
}

/// Parses the line-oriented IVF document format:
///
/// ```text
/// ivf <name> dim=<n>
/// domain <lo1> <hi1> [...]
/// piece <lo1> <hi1> [...] :: <lower-expr> :: <upper-expr>
/// ```
///
/// `inf`/`-inf` are allowed as bounds and `#` starts a comment. The
/// returned function is validated on a sample grid before it is handed
/// back.
pub fn parse_ivf(text: &str) -> Result<Ivf> {
    let mut name = None;
    let mut dim = 0usize;
    let mut domain: Option<Vec<(f64, f64)>> = None;
    let mut pieces = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            line: lineno,
            col: 1,
            msg,
        };
        let mut words = trimmed.split_whitespace();
        match words.next() {
            Some("ivf") => {
                let n = words
                    .next()
                    .ok_or_else(|| err("missing function name".into()))?;
                let d = words
                    .next()
                    .and_then(|t| t.strip_prefix("dim="))
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| err("expected dim=<n> with n >= 1".into()))?;
                name = Some(n.to_string());
                dim = d;
            }
            Some("domain") => {
                if name.is_none() {
                    return Err(err("'domain' before 'ivf' header".into()));
                }
                let toks: Vec<&str> = words.collect();
                if toks.len() != 2 * dim {
                    return Err(err(format!("expected {} domain bounds", 2 * dim)));
                }
                let mut d = Vec::with_capacity(dim);
                for pair in toks.chunks(2) {
                    let lo = parse_bound(pair[0], lineno)?;
                    let hi = parse_bound(pair[1], lineno)?;
                    if lo > hi {
                        return Err(Error::InvalidInterval { lo, hi });
                    }
                    d.push((lo, hi));
                }
                domain = Some(d);
            }
            Some("piece") => {
                if domain.is_none() {
                    return Err(err("'piece' before 'domain'".into()));
                }
                let parts: Vec<&str> = trimmed.splitn(3, "::").collect();
                if parts.len() != 3 {
                    return Err(err("expected 'piece <bounds> :: <lower> :: <upper>'".into()));
                }
                let bound_toks: Vec<&str> = parts[0].split_whitespace().skip(1).collect();
                if bound_toks.len() != 2 * dim {
                    return Err(err(format!("expected {} piece bounds", 2 * dim)));
                }
                let mut region = Vec::with_capacity(dim);
                for pair in bound_toks.chunks(2) {
                    let lo = parse_bound(pair[0], lineno)?;
                    let hi = parse_bound(pair[1], lineno)?;
                    if lo > hi {
                        return Err(Error::InvalidInterval { lo, hi });
                    }
                    region.push((lo, hi));
                }
                let lower_src = parts[1].trim();
                let upper_src = parts[2].trim();
                let lower_col = raw.find("::").map(|p| p + 3).unwrap_or(1);
                let upper_col = raw.rfind("::").map(|p| p + 3).unwrap_or(1);
                let lower = parse_expr_at(lower_src, dim, lineno, lower_col)?;
                let upper = parse_expr_at(upper_src, dim, lineno, upper_col)?;
                pieces.push(Piece {
                    region,
                    lower,
                    upper,
                });
            }
            Some(other) => return Err(err(format!("unknown directive '{other}'"))),
            None => unreachable!(),
        }
    }

    let name = name.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing 'ivf' header".into(),
    })?;
    let domain = domain.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing 'domain' line".into(),
    })?;
    let f = Ivf {
        name,
        dim,
        domain,
        pieces,
    };
    f.validate()?;
    Ok(f)
}

/// Unit directions used to probe spheres: the coordinate axes plus the
/// normalized sign diagonals. In 1D this is just ±1.
pub fn sphere_directions(dim: usize) -> Vec<Vec<f64>> {
    let mut dirs = Vec::new();
    for i in 0..dim {
        for s in [1.0, -1.0] {
            let mut d = vec![0.0; dim];
            d[i] = s;
            dirs.push(d);
        }
    }
    if dim > 1 {
        let inv = 1.0 / (dim as f64).sqrt();
        for mask in 0..(1u32 << dim) {
            let d: Vec<f64> = (0..dim)
                .map(|i| if mask >> i & 1 == 1 { -inv } else { inv })
                .collect();
            dirs.push(d);
        }
    }
    dirs
}

fn offset(u: &[f64], d: &[f64], scale: f64) -> Vec<f64> {
    u.iter().zip(d).map(|(a, b)| a + scale * b).collect()
}

/// Midpoint-concavity probe of both endpoint functions on grid pairs.
/// Returns the verdict plus a witness pair on failure.
pub fn concavity_check(
    f: &dyn IntervalFn,
    grid: &GridSpec,
    tol: f64,
) -> Result<(bool, Option<(Vec<f64>, Vec<f64>)>)> {
    let pts = grid.points(f.domain());
    // cap pair count: stride the grid down to at most ~250 points
    let stride = (pts.len() / 250).max(1);
    let pts: Vec<&Vec<f64>> = pts.iter().step_by(stride).collect();
    for (i, y) in pts.iter().enumerate() {
        for z in pts.iter().skip(i + 1) {
            let mid: Vec<f64> = y.iter().zip(z.iter()).map(|(a, b)| 0.5 * (a + b)).collect();
            let fy = f.eval(y)?;
            let fz = f.eval(z)?;
            let fm = f.eval(&mid)?;
            let avg_lo = 0.5 * (fy.lo() + fz.lo());
            let avg_hi = 0.5 * (fy.hi() + fz.hi());
            if fm.lo() < avg_lo - tol || fm.hi() < avg_hi - tol {
                return Ok((false, Some(((*y).clone(), (*z).clone()))));
            }
        }
    }
    Ok((true, None))
}

/// Checks `Φ(u+d) ⊖_gH Φ(u) → 0` by sampling spheres of shrinking radius.
/// True iff the max deviation at the two smallest radii is below `tol`.
pub fn gh_continuity_check(f: &dyn IntervalFn, u: &[f64], radii: &[f64], tol: f64) -> Result<bool> {
    if radii.len() < 2 {
        return Err(Error::Precondition("need at least two radii".into()));
    }
    let fu = f.eval(u)?;
    let dirs = sphere_directions(f.dim());
    let mut deviations = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut worst: f64 = 0.0;
        let mut any = false;
        for d in &dirs {
            let y = offset(u, d, r);
            if f.contains(&y) {
                worst = worst.max(f.eval(&y)?.gh_sub(fu).norm());
                any = true;
            }
        }
        if any {
            deviations.push(worst);
        }
    }
    let n = deviations.len();
    if n < 2 {
        return Err(Error::Precondition("no in-domain probe points".into()));
    }
    Ok(deviations[n - 1] <= tol && deviations[n - 2] <= tol)
}

/// Difference-quotient limit `(1/β) ⊙ (Φ(u+βh) ⊖_gH Φ(u))` along
/// decreasing `betas`. The flag is true iff the last two estimates agree
/// within `tol`.
pub fn directional_derivative_estimate(
    f: &dyn IntervalFn,
    u: &[f64],
    h: &[f64],
    betas: &[f64],
    tol: f64,
) -> Result<(Interval, bool)> {
    if h.iter().all(|&v| v == 0.0) {
        return Err(Error::Precondition("direction must be nonzero".into()));
    }
    if betas.len() < 2 {
        return Err(Error::Precondition("need at least two step sizes".into()));
    }
    let fu = f.eval(u)?;
    let mut estimates = Vec::with_capacity(betas.len());
    for &b in betas {
        let y = offset(u, h, b);
        let q = f.eval(&y)?.gh_sub(fu).scalar_mul(1.0 / b);
        estimates.push(q);
    }
    let n = estimates.len();
    let converged = estimates[n - 1].gh_sub(estimates[n - 2]).norm() <= tol;
    Ok((estimates[n - 1], converged))
}

/// Fréchet residuals: per radius, the worst normalized linearization
/// error `(1/‖h‖)·‖(Φ(u+h) ⊖_gH Φ(u)) ⊖_gH Gᵀ⊙h‖` over sphere samples.
pub fn frechet_residual(
    f: &dyn IntervalFn,
    u: &[f64],
    g: &IntervalVector,
    radii: &[f64],
) -> Result<Vec<f64>> {
    let fu = f.eval(u)?;
    let dirs = sphere_directions(f.dim());
    let mut out = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut worst: f64 = 0.0;
        for d in &dirs {
            let y = offset(u, d, r);
            if !f.contains(&y) {
                continue;
            }
            let h: Vec<f64> = y.iter().zip(u).map(|(a, b)| a - b).collect();
            let lin = g.inner_product(&h)?;
            let res = f.eval(&y)?.gh_sub(fu).gh_sub(lin).norm() / r;
            worst = worst.max(res);
        }
        out.push(worst);
    }
    Ok(out)
}
