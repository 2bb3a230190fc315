//! 2-D rate-region geometry: Pareto frontiers, upper concave hulls (time
//! sharing), and ε-containment audits between regions.
//!
//! A `Frontier` describes the Pareto boundary of a downward-closed rate
//! region: points sorted by increasing `r1` with strictly decreasing `r2`.
//! Convexified frontiers additionally have non-increasing segment slopes and
//! anchor the extreme achievable rates on each axis.

use crate::Error;

/// Coordinates that differ by at most this much are merged before hull
/// construction, for robustness of the slope comparisons.
const MERGE_EPS: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// A rate pair in bits/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub r1: f64,
    pub r2: f64,
}

impl RatePoint {
    /// Panics on non-finite or meaningfully negative rates. Tiny negative
    /// values from floating-point cancellation are clamped to zero.
    pub fn new(r1: f64, r2: f64) -> Self {
        assert!(r1.is_finite() && r2.is_finite(), "rates must be finite, got ({r1}, {r2})");
        assert!(r1 >= -1e-9 && r2 >= -1e-9, "rates must be non-negative, got ({r1}, {r2})");
        Self {
            r1: r1.max(0.0),
            r2: r2.max(0.0),
        }
    }
}

/// An ordered Pareto point set, optionally convexified by time sharing.
#[derive(Debug, Clone, PartialEq)]
pub struct Frontier {
    points: Vec<RatePoint>,
    convexified: bool,
}

impl Frontier {
    pub fn points(&self) -> &[RatePoint] {
        &self.points
    }

    pub fn is_convexified(&self) -> bool {
        self.convexified
    }

    /// Largest achievable `r1` on the frontier.
    pub fn max_r1(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.r1)
    }

    /// Largest achievable `r2` on the frontier.
    pub fn max_r2(&self) -> f64 {
        self.points.first().map_or(0.0, |p| p.r2)
    }

    /// Boundary height at `r1`, linearly interpolated between vertices.
    ///
    /// Left of the first vertex the boundary is flat (downward-closed
    /// region); right of the last vertex it is 0, matching time-sharing
    /// semantics exactly.
    pub fn value_at(&self, r1: f64) -> f64 {
        let pts = &self.points;
        if pts.is_empty() {
            return 0.0;
        }
        if r1 <= pts[0].r1 {
            return pts[0].r2;
        }
        if r1 > pts[pts.len() - 1].r1 {
            return 0.0;
        }
        let i = pts.partition_point(|p| p.r1 < r1);
        let (a, b) = (pts[i - 1], pts[i]);
        if b.r1 == a.r1 {
            return b.r2;
        }
        let t = (r1 - a.r1) / (b.r1 - a.r1);
        a.r2 + t * (b.r2 - a.r2)
    }
}

/// Outcome of a containment audit, with the worst offending point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContainmentReport {
    pub holds: bool,
    /// Maximum of `inner.r2 - outer_boundary(inner.r1)` over the inner
    /// points; non-positive when the inner frontier lies inside the outer.
    pub worst_violation: f64,
    pub offending: Option<RatePoint>,
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Remove every point dominated by another (`<=` in both coordinates, `<` in
/// one); collapses duplicates. Output is sorted by `r1` ascending.
pub fn pareto_filter(points: &[RatePoint]) -> Result<Frontier, Error> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut sorted: Vec<RatePoint> = points.to_vec();
    // r1 descending, r2 descending: a left-to-right sweep then keeps a point
    // iff its r2 strictly exceeds everything to its right.
    sorted.sort_by(|a, b| b.r1.total_cmp(&a.r1).then(b.r2.total_cmp(&a.r2)));
    let mut kept: Vec<RatePoint> = Vec::new();
    let mut best_r2 = f64::NEG_INFINITY;
    for p in sorted {
        if p.r2 > best_r2 {
            kept.push(p);
            best_r2 = p.r2;
        }
    }
    kept.reverse();
    Ok(Frontier {
        points: kept,
        convexified: false,
    })
}

/// Upper concave hull of a frontier plus its axis intercepts
/// `(max r1, 0)` and `(0, max r2)`: the time-sharing closure.
///
/// Collinear interior points are removed; intercepts that end up dominated
/// (a flat top or side) are pruned so the Pareto invariant holds.
pub fn upper_hull(f: &Frontier) -> Frontier {
    let mut pts: Vec<RatePoint> = f.points.to_vec();
    let max_r1 = pts.iter().map(|p| p.r1).fold(0.0, f64::max);
    let max_r2 = pts.iter().map(|p| p.r2).fold(0.0, f64::max);
    pts.push(RatePoint::new(max_r1, 0.0));
    pts.push(RatePoint::new(0.0, max_r2));
    pts.sort_by(|a, b| a.r1.total_cmp(&b.r1).then(b.r2.total_cmp(&a.r2)));

    // merge near-duplicates, keeping the highest r2 per r1 cluster
    let mut merged: Vec<RatePoint> = Vec::with_capacity(pts.len());
    for p in pts {
        match merged.last() {
            Some(q) if (p.r1 - q.r1).abs() <= MERGE_EPS => {
                // same abscissa: q.r2 >= p.r2 by the sort order
            }
            _ => merged.push(p),
        }
    }

    // Andrew monotone chain, upper boundary; cross >= 0 also drops collinear
    // middles.
    let mut hull: Vec<RatePoint> = Vec::with_capacity(merged.len());
    for p in merged {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.r1 - a.r1) * (p.r2 - a.r2) - (b.r2 - a.r2) * (p.r1 - a.r1);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }

    // prune flat segments so r2 is strictly decreasing (dominated intercepts)
    let mut out: Vec<RatePoint> = Vec::with_capacity(hull.len());
    for p in hull {
        while let Some(q) = out.last() {
            if p.r2 >= q.r2 - MERGE_EPS {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }

    Frontier {
        points: out,
        convexified: true,
    }
}

/// Convenience: Pareto-filter a raw point cloud and convexify it.
pub fn hull_of_points(points: &[RatePoint]) -> Result<Frontier, Error> {
    Ok(upper_hull(&pareto_filter(points)?))
}

/// ε-containment: does the outer hull dominate every inner point?
///
/// Each inner point `p` is checked against the outer boundary interpolated
/// at `p.r1`; the report carries the worst shortfall and where it occurred.
/// Both frontiers must be convexified.
pub fn contains(outer: &Frontier, inner: &Frontier, eps: f64) -> Result<ContainmentReport, Error> {
    if !outer.convexified || !inner.convexified {
        return Err(Error::NotConvexified);
    }
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::NonPositive { name: "eps", value: eps });
    }
    let mut worst = f64::NEG_INFINITY;
    let mut offending = None;
    for p in inner.points() {
        let v = p.r2 - outer.value_at(p.r1);
        if v > worst {
            worst = v;
            offending = Some(*p);
        }
    }
    if worst == f64::NEG_INFINITY {
        worst = 0.0;
        offending = None;
    }
    Ok(ContainmentReport {
        holds: worst <= eps,
        worst_violation: worst,
        offending,
    })
}

// ---------------------------------------------------------------------------
// CSV serialization
// ---------------------------------------------------------------------------

impl Frontier {
    /// CSV with header `R1,R2`, rows in ascending R1, 6 decimal places, a
    /// final newline, and `.` as the decimal separator regardless of locale.
    ///
    /// Vertices that collide at 6-decimal resolution are merged so the
    /// output always re-parses into a valid frontier.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<(f64, f64)> = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let r1 = format!("{:.6}", p.r1).parse::<f64>().unwrap();
            let r2 = format!("{:.6}", p.r2).parse::<f64>().unwrap();
            // keep the first (highest r2) among rows sharing a rounded r1
            if let Some(&(lr1, _)) = rows.last() {
                if r1 <= lr1 {
                    continue;
                }
            }
            // a later row with equal rounded r2 but larger r1 dominates
            while let Some(&(_, lr2)) = rows.last() {
                if r2 >= lr2 {
                    rows.pop();
                } else {
                    break;
                }
            }
            rows.push((r1, r2));
        }
        let mut out = String::from("R1,R2\n");
        for (r1, r2) in rows {
            out.push_str(&format!("{r1:.6},{r2:.6}\n"));
        }
        out
    }

    /// Parse a frontier back from [`Frontier::to_csv`] output.
    ///
    /// Validates the header, numeric fields, and the Pareto ordering; the
    /// convexified flag is recomputed from the segment slopes.
    pub fn from_csv(text: &str) -> Result<Self, Error> {
        let mut lines = text.lines();
        match lines.next() {
            Some("R1,R2") => {}
            other => {
                return Err(Error::Csv(format!(
                    "expected header 'R1,R2', got {:?}",
                    other.unwrap_or("")
                )))
            }
        }
        let mut points = Vec::new();
        for (idx, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let (a, b) = match (fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => return Err(Error::Csv(format!("row {}: expected two fields", idx + 2))),
            };
            let r1: f64 = a
                .parse()
                .map_err(|_| Error::Csv(format!("row {}: bad R1 value {a:?}", idx + 2)))?;
            let r2: f64 = b
                .parse()
                .map_err(|_| Error::Csv(format!("row {}: bad R2 value {b:?}", idx + 2)))?;
            if !(r1.is_finite() && r2.is_finite() && r1 >= 0.0 && r2 >= 0.0) {
                return Err(Error::Csv(format!("row {}: rates must be finite and >= 0", idx + 2)));
            }
            points.push(RatePoint::new(r1, r2));
        }
        if points.is_empty() {
            return Err(Error::Csv("no data rows".into()));
        }
        for w in points.windows(2) {
            if w[1].r1 <= w[0].r1 || w[1].r2 >= w[0].r2 {
                return Err(Error::Csv("rows are not Pareto-sorted".into()));
            }
        }
        let mut convex = true;
        for w in points.windows(3) {
            let s1 = (w[1].r2 - w[0].r2) / (w[1].r1 - w[0].r1);
            let s2 = (w[2].r2 - w[1].r2) / (w[2].r1 - w[1].r1);
            if s2 > s1 + 1e-9 {
                convex = false;
                break;
            }
        }
        Ok(Frontier {
            points,
            convexified: convex,
        })
    }
}
