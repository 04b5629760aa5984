//! The dual Hesse arrangement: nine lines and twelve triple points in the
//! complex projective plane, with incidences (12_3, 9_4).
//!
//! The twelve points split into four triples P3(1), P3(tau), P3(tau^2),
//! P3(inf). The internal order of each triple is frozen so that positional
//! data derived elsewhere stays reproducible.

use std::fmt;

use serde_json::{json, Value};

use crate::qtau::QTau;

/// A point of P^2 with coordinates in Q(tau), normalized so the first
/// nonzero coordinate is 1. Equality is therefore plain comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [QTau; 3],
}

impl ProjPoint {
    /// Panics if all coordinates are zero.
    pub fn new(coords: [QTau; 3]) -> Self {
        Self { coords: normalize(coords) }
    }

    pub fn coords(&self) -> &[QTau; 3] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// A line of P^2, stored by its coefficient triple (of x, y, z), normalized
/// like [`ProjPoint`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    coeffs: [QTau; 3],
}

impl Line {
    /// Panics if all coefficients are zero.
    pub fn new(coeffs: [QTau; 3]) -> Self {
        Self { coeffs: normalize(coeffs) }
    }

    pub fn coeffs(&self) -> &[QTau; 3] {
        &self.coeffs
    }

    /// The line through two distinct points (cross product of coordinates).
    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Self {
        let a = p.coords();
        let b = q.coords();
        let cross = [
            &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
            &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
            &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
        ];
        Self::new(cross)
    }
}

fn normalize(mut v: [QTau; 3]) -> [QTau; 3] {
    let lead = v
        .iter()
        .find(|c| !c.is_zero())
        .expect("projective triple must be nonzero")
        .clone();
    for c in &mut v {
        *c = &*c * &lead.inv();
    }
    v
}

/// True iff the point lies on the line (exact dot product is zero).
pub fn lies_on(p: &ProjPoint, line: &Line) -> bool {
    let mut acc = QTau::zero();
    for (c, l) in p.coords().iter().zip(line.coeffs()) {
        acc = &acc + &(c * l);
    }
    acc.is_zero()
}

/// Labels of the four point-triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupLabel {
    One,
    Tau,
    Tau2,
    Inf,
}

impl GroupLabel {
    pub const ALL: [GroupLabel; 4] = [Self::One, Self::Tau, Self::Tau2, Self::Inf];

    /// The three finite labels, in tuple order.
    pub const FINITE: [GroupLabel; 3] = [Self::One, Self::Tau, Self::Tau2];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::One => "1",
            Self::Tau => "tau",
            Self::Tau2 => "tau2",
            Self::Inf => "inf",
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub const LINE_NAMES: [&str; 9] = ["l1", "l2", "l3", "m1", "m2", "m3", "n1", "n2", "n3"];

/// The nine lines and twelve points, in the frozen order.
#[derive(Debug, Clone)]
pub struct ArrangementData {
    lines: Vec<Line>,
    points: Vec<ProjPoint>,
}

/// The three points of one group, in the frozen order.
pub fn group_points(label: GroupLabel) -> [ProjPoint; 3] {
    let one = QTau::one;
    let tau = QTau::tau;
    let tau2 = QTau::tau_sq;
    let zero = QTau::zero;
    match label {
        GroupLabel::One => [
            ProjPoint::new([one(), one(), one()]),
            ProjPoint::new([one(), tau(), tau2()]),
            ProjPoint::new([one(), tau2(), tau()]),
        ],
        GroupLabel::Tau => [
            ProjPoint::new([one(), tau(), one()]),
            ProjPoint::new([one(), one(), tau()]),
            ProjPoint::new([tau(), one(), one()]),
        ],
        GroupLabel::Tau2 => [
            ProjPoint::new([one(), one(), tau2()]),
            ProjPoint::new([tau2(), one(), one()]),
            ProjPoint::new([one(), tau2(), one()]),
        ],
        GroupLabel::Inf => [
            ProjPoint::new([zero(), zero(), one()]),
            ProjPoint::new([zero(), one(), zero()]),
            ProjPoint::new([one(), zero(), zero()]),
        ],
    }
}

/// Construct the dual Hesse arrangement.
///
/// Lines: l1 = y-x, l2 = y-tau*x, l3 = y-tau^2*x, m_i likewise with z-x,
/// n_i with z-y. Points: the twelve triple intersections, grouped as
/// P3(1), P3(tau), P3(tau^2), P3(inf), three per group.
pub fn dual_hesse() -> ArrangementData {
    let one = QTau::one;
    let tau = QTau::tau;
    let tau2 = QTau::tau_sq;
    let zero = QTau::zero;

    let lines = vec![
        Line::new([-one(), one(), zero()]),   // l1: y - x
        Line::new([-tau(), one(), zero()]),   // l2: y - tau x
        Line::new([-tau2(), one(), zero()]),  // l3: y - tau^2 x
        Line::new([-one(), zero(), one()]),   // m1: z - x
        Line::new([-tau(), zero(), one()]),   // m2: z - tau x
        Line::new([-tau2(), zero(), one()]),  // m3: z - tau^2 x
        Line::new([zero(), -one(), one()]),   // n1: z - y
        Line::new([zero(), -tau(), one()]),   // n2: z - tau y
        Line::new([zero(), -tau2(), one()]),  // n3: z - tau^2 y
    ];

    let points = GroupLabel::ALL
        .iter()
        .flat_map(|&g| group_points(g))
        .collect();

    ArrangementData { lines, points }
}

impl ArrangementData {
    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn line_name(&self, idx: usize) -> &'static str {
        LINE_NAMES[idx]
    }

    /// Index of a line in the frozen order, by projective equality.
    pub fn line_index(&self, line: &Line) -> Option<usize> {
        self.lines.iter().position(|l| l == line)
    }

    /// The three points of a group, in the frozen (star) order.
    pub fn group(&self, label: GroupLabel) -> &[ProjPoint] {
        let base = match label {
            GroupLabel::One => 0,
            GroupLabel::Tau => 3,
            GroupLabel::Tau2 => 6,
            GroupLabel::Inf => 9,
        };
        &self.points[base..base + 3]
    }

    /// Group of the point at index `idx` of the frozen order.
    pub fn point_group(&self, idx: usize) -> GroupLabel {
        GroupLabel::ALL[idx / 3]
    }

    /// Group containing a given point, if it is one of the twelve.
    pub fn group_of(&self, p: &ProjPoint) -> Option<GroupLabel> {
        self.points.iter().position(|q| q == p).map(|i| self.point_group(i))
    }

    /// JSON export: lines and points as coefficient triples over (m, n)
    /// integer pairs, groups keyed "1", "tau", "tau2", "inf".
    pub fn to_json(&self) -> Value {
        let triple = |coords: &[QTau; 3]| -> Value {
            Value::Array(
                coords
                    .iter()
                    .map(|c| {
                        assert!(c.is_integral(), "arrangement coordinates are in Z[tau]");
                        json!({
                            "m": c.a().to_integer().to_string().parse::<i64>().unwrap(),
                            "n": c.b().to_integer().to_string().parse::<i64>().unwrap(),
                        })
                    })
                    .collect(),
            )
        };
        let lines: Vec<Value> = self
            .lines
            .iter()
            .enumerate()
            .map(|(k, l)| json!({ "name": LINE_NAMES[k], "coeffs": triple(l.coeffs()) }))
            .collect();
        let mut groups = serde_json::Map::new();
        for label in GroupLabel::ALL {
            let pts: Vec<Value> =
                self.group(label).iter().map(|p| triple(p.coords())).collect();
            groups.insert(label.as_str().to_owned(), Value::Array(pts));
        }
        json!({ "lines": lines, "groups": groups })
    }
}
