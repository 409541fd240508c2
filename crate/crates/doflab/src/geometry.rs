//! Closed half-planes and exact vertex enumeration in two dimensions.
//!
//! Everything here runs on exact rationals: intersections, feasibility,
//! emptiness/unboundedness detection, and convex-hull ordering involve no
//! floating point and no tolerances.

use crate::rational::Rat;
use num::{Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

/// A point `(d1, d2)` in the DoF plane.
pub type Point = (Rat, Rat);

/// Errors from half-plane construction and vertex enumeration.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    /// Both coefficients of a half-plane were zero.
    #[error("degenerate half-plane: both coefficients are zero")]
    DegenerateHalfPlane,
    /// The half-planes have empty intersection.
    #[error("the half-planes have empty intersection")]
    EmptyRegion,
    /// The intersection is nonempty but unbounded.
    #[error("the half-plane intersection is unbounded")]
    UnboundedRegion,
}

/// The closed half-plane `a1*d1 + a2*d2 <= b`.
///
/// Stored in a normalized form — all three numbers divided by the absolute
/// value of the first nonzero coefficient — so equal half-planes compare
/// equal and orderings are deterministic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfPlane {
    a1: Rat,
    a2: Rat,
    b: Rat,
}

impl HalfPlane {
    /// Builds `a1*d1 + a2*d2 <= b`, normalizing so the first nonzero
    /// coefficient becomes `+1` or `-1`.
    pub fn new(a1: Rat, a2: Rat, b: Rat) -> Result<Self, GeometryError> {
        let scale = if !a1.is_zero() {
            a1.abs()
        } else if !a2.is_zero() {
            a2.abs()
        } else {
            return Err(GeometryError::DegenerateHalfPlane);
        };
        Ok(Self {
            a1: a1 / &scale,
            a2: a2 / &scale,
            b: b / &scale,
        })
    }

    /// Coefficient on `d1`.
    pub fn a1(&self) -> &Rat {
        &self.a1
    }

    /// Coefficient on `d2`.
    pub fn a2(&self) -> &Rat {
        &self.a2
    }

    /// Right-hand side.
    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// `a1*x + a2*y` at the point.
    pub fn eval(&self, p: &Point) -> Rat {
        &self.a1 * &p.0 + &self.a2 * &p.1
    }

    /// Whether the (closed) half-plane contains the point.
    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p) <= self.b
    }

    /// Whether the point lies exactly on the boundary line.
    pub fn is_tight(&self, p: &Point) -> bool {
        self.eval(p) == self.b
    }

    /// Whether this is one of the nonnegativity bounds `-d1 <= 0` / `-d2 <= 0`.
    pub fn is_axis_bound(&self) -> bool {
        let neg_one = -Rat::from_integer(1.into());
        self.b.is_zero()
            && ((self.a1 == neg_one && self.a2.is_zero())
                || (self.a1.is_zero() && self.a2 == neg_one))
    }

    /// The half-plane with the two coordinates exchanged (re-normalized).
    pub fn mirrored(&self) -> Self {
        Self::new(self.a2.clone(), self.a1.clone(), self.b.clone())
            .expect("mirroring preserves non-degeneracy")
    }

    /// Intersection point of the two boundary lines, if they are not parallel.
    pub fn line_intersection(&self, other: &Self) -> Option<Point> {
        let det = &self.a1 * &other.a2 - &self.a2 * &other.a1;
        if det.is_zero() {
            return None;
        }
        let x = (&self.b * &other.a2 - &other.b * &self.a2) / &det;
        let y = (&self.a1 * &other.b - &other.a1 * &self.b) / &det;
        Some((x, y))
    }

    /// The point of the boundary line closest to the origin.
    fn foot_point(&self) -> Point {
        let norm2 = &self.a1 * &self.a1 + &self.a2 * &self.a2;
        let x = &self.a1 * &self.b / &norm2;
        let y = &self.a2 * &self.b / &norm2;
        (x, y)
    }
}

/// The nonnegativity bounds `d1 >= 0` and `d2 >= 0` as half-planes.
pub fn axis_bounds() -> [HalfPlane; 2] {
    let zero = Rat::zero;
    let neg_one = || -Rat::from_integer(1.into());
    [
        HalfPlane::new(neg_one(), zero(), zero()).unwrap(),
        HalfPlane::new(zero(), neg_one(), zero()).unwrap(),
    ]
}

fn contained_in_all(hps: &[HalfPlane], p: &Point) -> bool {
    hps.iter().all(|h| h.contains(p))
}

/// 2D cross product `(a - o) x (b - o)`.
fn cross(o: &Point, a: &Point, b: &Point) -> Rat {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Orders a set of extreme points counter-clockwise starting from the
/// lexicographically smallest, dropping duplicates and collinear interior
/// points (Andrew's monotone chain).
fn convex_hull_ccw(points: BTreeSet<Point>) -> Vec<Point> {
    let pts: Vec<Point> = points.into_iter().collect();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Enumerates the vertices of the intersection of the given half-planes.
///
/// Returns the vertices in counter-clockwise order starting from the
/// lexicographically smallest. Emptiness is detected (and reported) before
/// unboundedness, so an infeasible system with an unbounded recession cone
/// still reports [`GeometryError::EmptyRegion`].
///
/// Works for any half-plane set; degenerate (point or segment) intersections
/// return the one or two extreme points.
pub fn enumerate_vertices(halfplanes: &[HalfPlane]) -> Result<Vec<Point>, GeometryError> {
    if halfplanes.is_empty() {
        return Err(GeometryError::UnboundedRegion);
    }
    let hps: Vec<HalfPlane> = halfplanes
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    // Feasibility first. For a nonempty intersection, at least one of these
    // candidates is feasible: any extreme point has two non-parallel tight
    // constraints (a pairwise intersection); intersections without extreme
    // points have all constraints parallel, and then the foot point of each
    // binding constraint realizes that bound exactly.
    let zero = Rat::zero();
    let mut candidates: Vec<Point> = vec![(zero.clone(), zero.clone())];
    for h in &hps {
        candidates.push(h.foot_point());
    }
    for (i, hi) in hps.iter().enumerate() {
        for hj in &hps[i + 1..] {
            if let Some(p) = hi.line_intersection(hj) {
                candidates.push(p);
            }
        }
    }
    if !candidates.iter().any(|p| contained_in_all(&hps, p)) {
        return Err(GeometryError::EmptyRegion);
    }

    // Unboundedness: the recession cone {d : a_i . d <= 0 for all i} is
    // nonzero iff one of its extreme rays is, and every extreme ray is a
    // rotation of some constraint normal by +-90 degrees.
    for h in &hps {
        let dirs = [
            (-h.a2().clone(), h.a1().clone()),
            (h.a2().clone(), -h.a1().clone()),
        ];
        for d in dirs {
            let recedes = hps
                .iter()
                .all(|g| (g.a1() * &d.0 + g.a2() * &d.1) <= Rat::zero());
            if recedes {
                return Err(GeometryError::UnboundedRegion);
            }
        }
    }

    // Every feasible intersection of two non-parallel boundary lines is a
    // vertex (both constraints support the region there), and conversely.
    let mut vertices: BTreeSet<Point> = BTreeSet::new();
    for (i, hi) in hps.iter().enumerate() {
        for hj in &hps[i + 1..] {
            if let Some(p) = hi.line_intersection(hj) {
                if contained_in_all(&hps, &p) {
                    vertices.insert(p);
                }
            }
        }
    }
    Ok(convex_hull_ccw(vertices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn hp(a1: (i64, i64), a2: (i64, i64), b: (i64, i64)) -> HalfPlane {
        HalfPlane::new(rat(a1.0, a1.1), rat(a2.0, a2.1), rat(b.0, b.1)).unwrap()
    }

    fn hpi(a1: i64, a2: i64, b: i64) -> HalfPlane {
        hp((a1, 1), (a2, 1), (b, 1))
    }

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point {
        (rat(x.0, x.1), rat(y.0, y.1))
    }

    #[test]
    fn normalization_fixes_first_nonzero_coefficient() {
        let h = hpi(2, 4, 12);
        assert_eq!(h.a1(), &rat_int(1));
        assert_eq!(h.a2(), &rat_int(2));
        assert_eq!(h.b(), &rat_int(6));

        let h = hpi(-2, 1, 0);
        assert_eq!(h.a1(), &rat_int(-1));
        assert_eq!(h.a2(), &rat(1, 2));

        let h = hp((0, 1), (-3, 1), (6, 1));
        assert_eq!(h.a2(), &rat_int(-1));
        assert_eq!(h.b(), &rat_int(2));

        assert_eq!(
            HalfPlane::new(rat_int(0), rat_int(0), rat_int(1)),
            Err(GeometryError::DegenerateHalfPlane)
        );
    }

    #[test]
    fn axis_bound_detection() {
        assert!(hpi(-1, 0, 0).is_axis_bound());
        assert!(hpi(0, -1, 0).is_axis_bound());
        assert!(hp((0, 1), (-2, 1), (0, 1)).is_axis_bound());
        assert!(!hpi(1, 0, 0).is_axis_bound());
        assert!(!hpi(-1, 0, 1).is_axis_bound());
        assert!(!hpi(-1, -1, 0).is_axis_bound());
    }

    #[test]
    fn unit_square_vertices_in_ccw_order() {
        let hps = [hpi(1, 0, 1), hpi(0, 1, 1), hpi(-1, 0, 0), hpi(0, -1, 0)];
        let v = enumerate_vertices(&hps).unwrap();
        assert_eq!(
            v,
            vec![
                pt((0, 1), (0, 1)),
                pt((1, 1), (0, 1)),
                pt((1, 1), (1, 1)),
                pt((0, 1), (1, 1)),
            ]
        );
    }

    #[test]
    fn redundant_and_duplicate_halfplanes_change_nothing() {
        let base = [hpi(1, 0, 1), hpi(0, 1, 1), hpi(-1, 0, 0), hpi(0, -1, 0)];
        let noisy = [
            hpi(1, 0, 1),
            hpi(2, 0, 2), // duplicate of the first after normalization
            hpi(0, 1, 1),
            hpi(-1, 0, 0),
            hpi(0, -1, 0),
            hpi(1, 1, 5), // redundant
        ];
        assert_eq!(
            enumerate_vertices(&base).unwrap(),
            enumerate_vertices(&noisy).unwrap()
        );
    }

    #[test]
    fn pentagon_with_fractional_vertices() {
        // d1 <= 4, d2 <= 2, d1 + d2 <= 4, d1 + (8/3) d2 <= 7, axes.
        let hps = [
            hpi(1, 0, 4),
            hpi(0, 1, 2),
            hpi(1, 1, 4),
            hp((1, 1), (8, 3), (7, 1)),
            hpi(-1, 0, 0),
            hpi(0, -1, 0),
        ];
        let v = enumerate_vertices(&hps).unwrap();
        assert_eq!(
            v,
            vec![
                pt((0, 1), (0, 1)),
                pt((4, 1), (0, 1)),
                pt((11, 5), (9, 5)),
                pt((5, 3), (2, 1)),
                pt((0, 1), (2, 1)),
            ]
        );
    }

    #[test]
    fn empty_intersection_detected_before_unboundedness() {
        // x >= 1 and x <= 0 is empty even though y is unconstrained.
        let hps = [hpi(-1, 0, -1), hpi(1, 0, 0)];
        assert_eq!(enumerate_vertices(&hps), Err(GeometryError::EmptyRegion));
    }

    #[test]
    fn unbounded_sets_are_reported() {
        assert_eq!(
            enumerate_vertices(&[hpi(1, 0, 1)]),
            Err(GeometryError::UnboundedRegion)
        );
        // First quadrant.
        assert_eq!(
            enumerate_vertices(&[hpi(-1, 0, 0), hpi(0, -1, 0)]),
            Err(GeometryError::UnboundedRegion)
        );
        // A slab.
        assert_eq!(
            enumerate_vertices(&[hpi(1, 1, 3), hpi(-1, -1, 0)]),
            Err(GeometryError::UnboundedRegion)
        );
        assert_eq!(enumerate_vertices(&[]), Err(GeometryError::UnboundedRegion));
    }

    #[test]
    fn degenerate_point_and_segment_intersections() {
        // The single point (2, 3).
        let point = [hpi(1, 0, 2), hpi(-1, 0, -2), hpi(0, 1, 3), hpi(0, -1, -3)];
        assert_eq!(
            enumerate_vertices(&point).unwrap(),
            vec![pt((2, 1), (3, 1))]
        );
        // The segment from (0,0) to (1,1).
        let seg = [hpi(1, -1, 0), hpi(-1, 1, 0), hpi(1, 1, 2), hpi(-1, -1, 0)];
        assert_eq!(
            enumerate_vertices(&seg).unwrap(),
            vec![pt((0, 1), (0, 1)), pt((1, 1), (1, 1))]
        );
    }

    #[test]
    fn feasible_pairwise_intersections_are_exactly_the_vertices() {
        // Brute-force check on a polygon with several redundant constraints.
        let hps = [
            hpi(1, 0, 6),
            hpi(0, 1, 4),
            hpi(1, 1, 8),
            hpi(1, 2, 11),
            hpi(3, 1, 19),
            hpi(-1, 0, 0),
            hpi(0, -1, 0),
        ];
        let v = enumerate_vertices(&hps).unwrap();
        for p in &v {
            let tight = hps.iter().filter(|h| h.is_tight(p)).count();
            assert!(tight >= 2, "vertex {p:?} is tight on {tight} constraints");
            assert!(contained_in_all(&hps, p));
        }
        // CCW orientation: every consecutive triple turns left.
        for i in 0..v.len() {
            let a = &v[i];
            let b = &v[(i + 1) % v.len()];
            let c = &v[(i + 2) % v.len()];
            assert!(cross(a, b, c).is_positive());
        }
    }

    #[test]
    fn mirrored_halfplane_swaps_coordinates() {
        let h = hp((1, 1), (8, 3), (7, 1));
        let m = h.mirrored();
        let p = pt((11, 5), (9, 5));
        let q = pt((9, 5), (11, 5));
        assert_eq!(h.is_tight(&p), m.is_tight(&q));
        assert!(m.contains(&q));
    }
}
