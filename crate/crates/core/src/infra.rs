//! The contract of a discrete cyclic infrastructure (X, d), a fully explicit
//! table-backed implementation, and an axiom validator.
//!
//! A discrete cyclic infrastructure is a finite set of points on a circle of
//! integer circumference R, with an injective integer distance map. Backends
//! expose exactly five operations: the identity point (distance 0), baby
//! step, inverse baby step, giant step, and an identity test. Absolute
//! distances are deliberately *not* part of the contract -- computing them is
//! the hard problem the rest of the toolkit attacks. What the operations do
//! reveal are relative distances: each step returns its exact integer delta.
//!
//! The table backend stores the full distance list and therefore serves as
//! the brute-force oracle against which every other backend is checked.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};

/// Default cap on the number of points an enumeration may visit.
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

/// A discrete cyclic infrastructure backend.
///
/// Implementations must satisfy the axioms checked by [`validate_axioms`]:
/// the baby step map is the unique bijective fixed-point-free map sending a
/// point to the next one along the circle, and the giant step sends (x, y)
/// to the first point at-or-after d(x) + d(y), with `delta` the (cyclic)
/// overshoot d(gs(x,y)) - d(x) - d(y) in [0, d_max).
pub trait Infrastructure {
    type Point: Clone + Eq + Hash + Debug;

    /// The unique point at distance 0.
    fn identity(&self) -> Self::Point;

    fn is_identity(&self, x: &Self::Point) -> bool;

    /// Next point along the circle; delta = d(bs(x)) - d(x) in (0, R).
    fn baby_step(&self, x: &Self::Point) -> Result<(Self::Point, u64)>;

    /// Previous point along the circle; delta = d(x) - d(bs_inv(x)) in (0, R).
    fn inverse_baby_step(&self, x: &Self::Point) -> Result<(Self::Point, u64)>;

    /// First point at-or-after d(x) + d(y); delta = overshoot in [0, d_max).
    fn giant_step(&self, x: &Self::Point, y: &Self::Point) -> Result<(Self::Point, u64)>;

    /// JSON form of a point, for reports and the CLI.
    fn point_to_json(&self, x: &Self::Point) -> serde_json::Value;

    /// Parses and validates a point produced by [`Infrastructure::point_to_json`].
    fn point_from_json(&self, v: &serde_json::Value) -> Result<Self::Point>;
}

static NEXT_BACKEND_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_backend_id() -> u64 {
    NEXT_BACKEND_ID.fetch_add(1, Ordering::Relaxed)
}

/// Serialized form of a table infrastructure: `{"R": 10, "distances": [0,2,3,7]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableSpec {
    #[serde(rename = "R")]
    pub r: u64,
    pub distances: Vec<u64>,
}

/// An explicit discrete cyclic infrastructure: circumference R and the full
/// sorted list of point distances. Distance 0 (the identity) must be present.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "TableSpec", into = "TableSpec")]
pub struct TableInfra {
    id: u64,
    r: u64,
    distances: Vec<u64>,
}

/// A point of a table backend: its index into the sorted distance list,
/// tagged with the owning backend so foreign points are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TablePoint {
    backend: u64,
    index: u32,
}

impl TablePoint {
    pub fn index(&self) -> usize {
        self.index as usize
    }
}

impl TableInfra {
    /// Builds a table infrastructure. The distance list must be strictly
    /// increasing, start at 0, stay below `r`, and hold at least two entries
    /// (a single point is a trivial infrastructure and excluded).
    pub fn new(r: u64, distances: Vec<u64>) -> Result<TableInfra> {
        if distances.len() < 2 {
            return Err(Error::InvalidInput(
                "a table infrastructure needs at least 2 points".to_string(),
            ));
        }
        if distances[0] != 0 {
            return Err(Error::InvalidInput(
                "the distance list must contain 0 (the identity)".to_string(),
            ));
        }
        for w in distances.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidInput(format!(
                    "distances must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if *distances.last().unwrap() >= r {
            return Err(Error::InvalidInput(format!(
                "distance {} is not below the circumference {r}",
                distances.last().unwrap()
            )));
        }
        Ok(TableInfra {
            id: fresh_backend_id(),
            r,
            distances,
        })
    }

    pub fn circumference(&self) -> u64 {
        self.r
    }

    pub fn distances(&self) -> &[u64] {
        &self.distances
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The point with the given table index.
    pub fn point(&self, index: usize) -> Result<TablePoint> {
        if index >= self.distances.len() {
            return Err(Error::InvalidInput(format!(
                "point index {index} out of range (table has {} points)",
                self.distances.len()
            )));
        }
        Ok(TablePoint {
            backend: self.id,
            index: index as u32,
        })
    }

    /// Ground-truth distance of a point. The table is the oracle; real
    /// backends have no such accessor.
    pub fn distance_of(&self, x: &TablePoint) -> Result<u64> {
        self.check(x)?;
        Ok(self.distances[x.index as usize])
    }

    fn check(&self, x: &TablePoint) -> Result<()> {
        if x.backend != self.id || (x.index as usize) >= self.distances.len() {
            return Err(Error::BackendMismatch(format!(
                "table point {:?} does not belong to table backend {}",
                x, self.id
            )));
        }
        Ok(())
    }
}

impl TryFrom<TableSpec> for TableInfra {
    type Error = Error;
    fn try_from(spec: TableSpec) -> Result<TableInfra> {
        TableInfra::new(spec.r, spec.distances)
    }
}

impl From<TableInfra> for TableSpec {
    fn from(t: TableInfra) -> TableSpec {
        TableSpec {
            r: t.r,
            distances: t.distances,
        }
    }
}

impl Infrastructure for TableInfra {
    type Point = TablePoint;

    fn identity(&self) -> TablePoint {
        TablePoint {
            backend: self.id,
            index: 0,
        }
    }

    fn is_identity(&self, x: &TablePoint) -> bool {
        x.backend == self.id && x.index == 0
    }

    fn baby_step(&self, x: &TablePoint) -> Result<(TablePoint, u64)> {
        self.check(x)?;
        let i = x.index as usize;
        let n = self.distances.len();
        let (j, delta) = if i + 1 == n {
            (0, self.r - self.distances[i])
        } else {
            (i + 1, self.distances[i + 1] - self.distances[i])
        };
        Ok((
            TablePoint {
                backend: self.id,
                index: j as u32,
            },
            delta,
        ))
    }

    fn inverse_baby_step(&self, x: &TablePoint) -> Result<(TablePoint, u64)> {
        self.check(x)?;
        let i = x.index as usize;
        let n = self.distances.len();
        let (j, delta) = if i == 0 {
            (n - 1, self.r - self.distances[n - 1])
        } else {
            (i - 1, self.distances[i] - self.distances[i - 1])
        };
        Ok((
            TablePoint {
                backend: self.id,
                index: j as u32,
            },
            delta,
        ))
    }

    fn giant_step(&self, x: &TablePoint, y: &TablePoint) -> Result<(TablePoint, u64)> {
        self.check(x)?;
        self.check(y)?;
        let sum = (self.distances[x.index as usize] + self.distances[y.index as usize]) % self.r;
        // First table entry at-or-after the distance sum, wrapping to the
        // identity when the sum lies beyond the last entry.
        let k = self.distances.partition_point(|&d| d < sum);
        let (j, delta) = if k == self.distances.len() {
            (0, self.r - sum)
        } else {
            (k, self.distances[k] - sum)
        };
        Ok((
            TablePoint {
                backend: self.id,
                index: j as u32,
            },
            delta,
        ))
    }

    fn point_to_json(&self, x: &TablePoint) -> serde_json::Value {
        serde_json::Value::from(x.index)
    }

    fn point_from_json(&self, v: &serde_json::Value) -> Result<TablePoint> {
        let idx = v
            .as_u64()
            .ok_or_else(|| Error::InvalidInput(format!("table point must be an index: {v}")))?;
        self.point(idx as usize)
    }
}

/// The result of walking a full cycle: ground-truth distances for every
/// point, in baby-step order starting from the identity.
#[derive(Debug, Clone)]
pub struct Enumeration<P> {
    pub r: u64,
    pub distances: Vec<u64>,
    pub points: Vec<P>,
}

impl<P: Clone + Eq + Hash> Enumeration<P> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Gap statistics: the minimal and maximal baby-step delta, wrap-around
    /// gap included.
    pub fn stats(&self) -> BackendStats {
        let mut d_min = u64::MAX;
        let mut d_max = 0u64;
        let n = self.distances.len();
        for i in 0..n {
            let gap = if i + 1 == n {
                self.r - self.distances[i]
            } else {
                self.distances[i + 1] - self.distances[i]
            };
            d_min = d_min.min(gap);
            d_max = d_max.max(gap);
        }
        BackendStats { d_min, d_max }
    }

    /// A table backend with the same circumference and distance list.
    pub fn to_table(&self) -> TableInfra {
        TableInfra::new(self.r, self.distances.clone()).expect("enumeration is a valid table")
    }

    /// Ground-truth distance lookup by point.
    pub fn distance_index(&self) -> HashMap<P, u64> {
        self.points
            .iter()
            .cloned()
            .zip(self.distances.iter().copied())
            .collect()
    }
}

/// Minimal and maximal baby-step gap of a backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackendStats {
    pub d_min: u64,
    pub d_max: u64,
}

/// Walks baby steps from the identity until it recurs, accumulating exact
/// deltas. The result is the ground-truth distance function of the backend
/// and the oracle for every other module.
pub fn enumerate_cycle<B: Infrastructure>(backend: &B, cap: u64) -> Result<Enumeration<B::Point>> {
    let identity = backend.identity();
    let mut points = vec![identity.clone()];
    let mut distances = vec![0u64];
    let mut seen: HashMap<B::Point, u64> = HashMap::new();
    seen.insert(identity.clone(), 0);
    let mut current = identity;
    let mut total = 0u64;
    loop {
        let (next, delta) = backend.baby_step(&current)?;
        if delta == 0 {
            return Err(Error::InvalidInput(
                "baby step returned delta 0 (fixed point)".to_string(),
            ));
        }
        total += delta;
        if backend.is_identity(&next) {
            return Ok(Enumeration {
                r: total,
                distances,
                points,
            });
        }
        if points.len() as u64 >= cap {
            return Err(Error::CycleTooLong { cap });
        }
        if let Some(&at) = seen.get(&next) {
            return Err(Error::InvalidInput(format!(
                "enumeration revisited the point at distance {at} before returning to the identity"
            )));
        }
        seen.insert(next.clone(), total);
        points.push(next.clone());
        distances.push(total);
        current = next;
    }
}

/// Outcome of [`validate_axioms`]. `pass` is false iff some axiom failed, in
/// which case `counterexample` describes the first failure found.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub points: u64,
    pub r: u64,
    pub stats: BackendStats,
    pub gs_pairs_checked: u64,
    pub gs_exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Pair budget above which the giant-step check switches from exhaustive to
/// random sampling.
pub const EXHAUSTIVE_PAIR_CAP: u64 = 1_000_000;
/// Number of random pairs checked in sampling mode.
pub const SAMPLED_PAIRS: u64 = 10_000;

/// Checks the infrastructure axioms of `backend` against its enumeration:
/// the distance map is injective, baby steps are fixed-point free with exact
/// successor deltas, inverse baby steps invert them, the identity test holds
/// exactly once, and the giant step lands on the first point at-or-after the
/// distance sum for every pair (exhaustive when |X|^2 <= 10^6, else 10^4
/// seeded random pairs).
pub fn validate_axioms<B: Infrastructure>(
    backend: &B,
    enumeration: &Enumeration<B::Point>,
    seed: u64,
) -> ValidationReport {
    let n = enumeration.points.len();
    let stats = enumeration.stats();
    let mut report = ValidationReport {
        pass: true,
        points: n as u64,
        r: enumeration.r,
        stats,
        gs_pairs_checked: 0,
        gs_exhaustive: true,
        counterexample: None,
    };
    let mut fail = |report: &mut ValidationReport, msg: String| {
        report.pass = false;
        if report.counterexample.is_none() {
            report.counterexample = Some(msg);
        }
    };

    // Injectivity of d: the enumeration must not contain duplicate points.
    let mut seen = HashMap::new();
    for (i, pt) in enumeration.points.iter().enumerate() {
        if let Some(j) = seen.insert(pt.clone(), i) {
            fail(
                &mut report,
                format!("points at cycle positions {j} and {i} coincide"),
            );
            return report;
        }
    }

    // Identity test: true exactly at the first enumerated point.
    if !backend.is_identity(&enumeration.points[0]) {
        fail(&mut report, "identity point fails is_identity".to_string());
        return report;
    }
    for (i, pt) in enumeration.points.iter().enumerate().skip(1) {
        if backend.is_identity(pt) {
            fail(
                &mut report,
                format!("non-identity point at distance {} passes is_identity", enumeration.distances[i]),
            );
            return report;
        }
    }

    // Baby steps: successor with the exact gap; fixed-point freeness is
    // implied by delta > 0 plus landing on a different point.
    for i in 0..n {
        let expect_j = (i + 1) % n;
        let expect_delta = if i + 1 == n {
            enumeration.r - enumeration.distances[i]
        } else {
            enumeration.distances[i + 1] - enumeration.distances[i]
        };
        match backend.baby_step(&enumeration.points[i]) {
            Ok((pt, delta)) => {
                if pt != enumeration.points[expect_j] || delta != expect_delta {
                    fail(
                        &mut report,
                        format!(
                            "bs at distance {} gave delta {delta}, expected the point at distance {} (delta {expect_delta})",
                            enumeration.distances[i],
                            enumeration.distances[expect_j]
                        ),
                    );
                    return report;
                }
                if pt == enumeration.points[i] {
                    fail(
                        &mut report,
                        format!("bs has a fixed point at distance {}", enumeration.distances[i]),
                    );
                    return report;
                }
            }
            Err(e) => {
                fail(&mut report, format!("bs failed: {e}"));
                return report;
            }
        }
    }

    // Inverse baby steps: predecessor with the matching gap.
    for i in 0..n {
        let expect_j = (i + n - 1) % n;
        let expect_delta = if i == 0 {
            enumeration.r - enumeration.distances[n - 1]
        } else {
            enumeration.distances[i] - enumeration.distances[i - 1]
        };
        match backend.inverse_baby_step(&enumeration.points[i]) {
            Ok((pt, delta)) => {
                if pt != enumeration.points[expect_j] || delta != expect_delta {
                    fail(
                        &mut report,
                        format!(
                            "bs_inv at distance {} gave delta {delta}, expected delta {expect_delta}",
                            enumeration.distances[i]
                        ),
                    );
                    return report;
                }
            }
            Err(e) => {
                fail(&mut report, format!("bs_inv failed: {e}"));
                return report;
            }
        }
    }

    // Giant steps: first point at-or-after the distance sum.
    let total_pairs = (n as u64) * (n as u64);
    let exhaustive = total_pairs <= EXHAUSTIVE_PAIR_CAP;
    report.gs_exhaustive = exhaustive;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pair_count = if exhaustive { total_pairs } else { SAMPLED_PAIRS };
    let mut checked = 0u64;
    for k in 0..pair_count {
        let (i, j) = if exhaustive {
            ((k / n as u64) as usize, (k % n as u64) as usize)
        } else {
            (rng.gen_range(0..n), rng.gen_range(0..n))
        };
        let sum = (enumeration.distances[i] + enumeration.distances[j]) % enumeration.r;
        let idx = enumeration.distances.partition_point(|&d| d < sum);
        let (expect_idx, expect_delta) = if idx == n {
            (0, enumeration.r - sum)
        } else {
            (idx, enumeration.distances[idx] - sum)
        };
        match backend.giant_step(&enumeration.points[i], &enumeration.points[j]) {
            Ok((pt, delta)) => {
                checked += 1;
                if pt != enumeration.points[expect_idx] || delta != expect_delta {
                    report.gs_pairs_checked = checked;
                    fail(
                        &mut report,
                        format!(
                            "gs at distances ({}, {}) gave delta {delta}, expected the point at distance {} (delta {expect_delta})",
                            enumeration.distances[i],
                            enumeration.distances[j],
                            enumeration.distances[expect_idx]
                        ),
                    );
                    return report;
                }
            }
            Err(e) => {
                report.gs_pairs_checked = checked;
                fail(&mut report, format!("gs failed: {e}"));
                return report;
            }
        }
    }
    report.gs_pairs_checked = checked;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The toy table T used throughout: R = 10, distances {0, 2, 3, 7}.
    pub(crate) fn toy_table() -> TableInfra {
        TableInfra::new(10, vec![0, 2, 3, 7]).unwrap()
    }

    #[test]
    fn baby_steps_follow_the_table() {
        let t = toy_table();
        let p0 = t.identity();
        let (p2, d) = t.baby_step(&p0).unwrap();
        assert_eq!((p2.index(), d), (1, 2));
        let p7 = t.point(3).unwrap();
        let (wrap, d) = t.baby_step(&p7).unwrap();
        assert!(t.is_identity(&wrap));
        assert_eq!(d, 3);
    }

    #[test]
    fn four_baby_steps_close_the_cycle() {
        let t = toy_table();
        let mut x = t.identity();
        let mut total = 0;
        for _ in 0..4 {
            let (next, d) = t.baby_step(&x).unwrap();
            total += d;
            x = next;
        }
        assert!(t.is_identity(&x));
        assert_eq!(total, 10);
    }

    #[test]
    fn inverse_baby_steps() {
        let t = toy_table();
        let p2 = t.point(1).unwrap();
        let (p0, d) = t.inverse_baby_step(&p2).unwrap();
        assert!(t.is_identity(&p0));
        assert_eq!(d, 2);
        let (p7, d) = t.inverse_baby_step(&t.identity()).unwrap();
        assert_eq!((p7.index(), d), (3, 3));
        // inverse pair: bs_inv(bs(x)) = x with the same delta
        for i in 0..4 {
            let x = t.point(i).unwrap();
            let (y, d1) = t.baby_step(&x).unwrap();
            let (back, d2) = t.inverse_baby_step(&y).unwrap();
            assert_eq!(back, x);
            assert_eq!(d1, d2);
        }
    }

    #[test]
    fn giant_step_lands_at_or_after_the_sum() {
        let t = toy_table();
        let p2 = t.point(1).unwrap();
        let p3 = t.point(2).unwrap();
        let p7 = t.point(3).unwrap();
        // sum 4, first entry >= 4 is 7
        assert_eq!(t.giant_step(&p2, &p2).unwrap(), (p7, 3));
        // sum 10 = 0, which is in d(X)
        assert_eq!(t.giant_step(&p3, &p7).unwrap(), (t.identity(), 0));
        // gs(identity, x) = (x, 0)
        for i in 0..4 {
            let x = t.point(i).unwrap();
            assert_eq!(t.giant_step(&t.identity(), &x).unwrap(), (x, 0));
        }
    }

    #[test]
    fn construction_rejects_bad_tables() {
        assert!(TableInfra::new(10, vec![0, 2, 2, 7]).is_err());
        assert!(TableInfra::new(10, vec![0, 7, 3]).is_err());
        assert!(TableInfra::new(10, vec![0, 11]).is_err());
        assert!(TableInfra::new(10, vec![1, 3]).is_err());
        assert!(TableInfra::new(10, vec![0]).is_err());
        assert!(TableInfra::new(2, vec![0, 1]).is_ok());
    }

    #[test]
    fn foreign_points_are_rejected() {
        let t1 = toy_table();
        let t2 = toy_table();
        let foreign = t2.point(1).unwrap();
        assert!(matches!(
            t1.baby_step(&foreign),
            Err(Error::BackendMismatch(_))
        ));
        assert!(matches!(
            t1.giant_step(&t1.identity(), &foreign),
            Err(Error::BackendMismatch(_))
        ));
        assert!(!t1.is_identity(&t2.identity()));
    }

    #[test]
    fn enumerate_round_trips() {
        let t = toy_table();
        let e = enumerate_cycle(&t, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(e.r, 10);
        assert_eq!(e.distances, vec![0, 2, 3, 7]);
        assert_eq!(e.stats(), BackendStats { d_min: 1, d_max: 4 });

        let two = TableInfra::new(2, vec![0, 1]).unwrap();
        let e = enumerate_cycle(&two, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(e.r, 2);
        assert_eq!(e.distances, vec![0, 1]);
    }

    #[test]
    fn enumeration_cap_triggers() {
        let t = TableInfra::new(100, (0..100).collect()).unwrap();
        assert_eq!(
            enumerate_cycle(&t, 10),
            Err(Error::CycleTooLong { cap: 10 })
        );
    }

    #[test]
    fn validation_passes_on_tables() {
        let t = toy_table();
        let e = enumerate_cycle(&t, DEFAULT_ENUM_CAP).unwrap();
        let report = validate_axioms(&t, &e, 0);
        assert!(report.pass, "{:?}", report.counterexample);
        assert!(report.gs_exhaustive);
        assert_eq!(report.gs_pairs_checked, 16);
    }

    #[test]
    fn full_cyclic_table_degenerates_to_the_group() {
        // distances {0..R-1}: bs is +1 and gs is addition
        let r = 12;
        let t = TableInfra::new(r, (0..r).collect()).unwrap();
        let e = enumerate_cycle(&t, DEFAULT_ENUM_CAP).unwrap();
        assert!(validate_axioms(&t, &e, 0).pass);
        for i in 0..r {
            let x = t.point(i as usize).unwrap();
            let (y, d) = t.baby_step(&x).unwrap();
            assert_eq!(d, 1);
            assert_eq!(y.index() as u64, (i + 1) % r);
            for j in 0..r {
                let z = t.point(j as usize).unwrap();
                let (w, d) = t.giant_step(&x, &z).unwrap();
                assert_eq!(d, 0);
                assert_eq!(w.index() as u64, (i + j) % r);
            }
        }
    }

    #[test]
    fn table_spec_json_round_trip() {
        let t = toy_table();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"R":10,"distances":[0,2,3,7]}"#);
        let back: TableInfra = serde_json::from_str(&json).unwrap();
        assert_eq!(back.circumference(), 10);
        assert_eq!(back.distances(), &[0, 2, 3, 7]);
        assert!(serde_json::from_str::<TableInfra>(r#"{"R":10,"distances":[0,2,2]}"#).is_err());
    }
}
