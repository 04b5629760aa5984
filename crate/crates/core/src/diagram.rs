//! The infinite bifurcation diagram: a line's orbit under alternating
//! applications of the three Cremona involutions.
//!
//! Odd rows branch through Qtau (left child) and Qtau2 (right child); even
//! rows map one-to-one to the next row through Q1. Entries reachable along
//! two paths are computed from both parents and compared field by field.
//! Closed formulas for the parameter, the quotient pair, and the degree are
//! provided alongside for cross-checking.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::cremona::{CoarseCurveData, CremonaTag, CurveDataError, FineCurveData};
use crate::eisenstein::{DivisionError, EisensteinInt};

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("entry ({i},{j}) is outside the diagram")]
    OutOfRange { i: u32, j: u32 },
    #[error("merge mismatch at ({i},{j}): field `{field}` differs between parent paths")]
    MergeMismatch { i: u32, j: u32, field: &'static str },
    #[error("inconsistent entry ({i},{j}): {what}")]
    Inconsistent { i: u32, j: u32, what: String },
    #[error("integer overflow at entry ({i},{j})")]
    Overflow { i: u32, j: u32 },
    #[error(transparent)]
    CurveData(#[from] CurveDataError),
    #[error(transparent)]
    Division(#[from] DivisionError),
}

/// An edge into an entry: parent position plus the map applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParentEdge {
    pub i: u32,
    pub j: u32,
    pub map: CremonaTag,
}

/// One diagram entry: pencil parameter, quotient pair, rational-curve
/// degree, elliptic (coarse) data and rational (fine) data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramEntry {
    pub i: u32,
    pub j: u32,
    pub t: EisensteinInt,
    pub c: i64,
    pub d: i64,
    pub degree: i64,
    pub coarse: CoarseCurveData,
    pub fine: FineCurveData,
    pub parents: Vec<ParentEdge>,
}

impl DiagramEntry {
    pub fn to_json(&self) -> Value {
        let (m, n) = self.t.to_i64_pair().expect("parameter components fit i64");
        let fine = json!([
            self.fine.d,
            self.fine.t1.to_vec(),
            self.fine.t_tau.to_vec(),
            self.fine.t_tau2.to_vec(),
        ]);
        let parents: Vec<Value> = self
            .parents
            .iter()
            .map(|p| json!({ "i": p.i, "j": p.j, "map": p.map.as_str() }))
            .collect();
        json!({
            "i": self.i,
            "j": self.j,
            "t": { "m": m, "n": n },
            "c": self.c,
            "d": self.d,
            "degree": self.degree,
            "coarse": self.coarse.as_array().to_vec(),
            "fine": fine,
            "parents": parents,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Diagram {
    rows: Vec<Vec<DiagramEntry>>,
}

impl Diagram {
    pub fn rows(&self) -> &[Vec<DiagramEntry>] {
        &self.rows
    }

    pub fn depth(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn entry(&self, i: u32, j: u32) -> Option<&DiagramEntry> {
        self.rows.get(i as usize - 1)?.get(j as usize - 1)
    }

    pub fn entries(&self) -> impl Iterator<Item = &DiagramEntry> {
        self.rows.iter().flatten()
    }
}

/// Number of entries in row `i` (1-based): 1, 2, 2, then i/2+1 for even i
/// and (i-1)/2+1 for odd i.
pub fn columns_in_row(i: u32) -> u32 {
    assert!(i >= 1, "rows are 1-based");
    match i {
        1 => 1,
        2 | 3 => 2,
        _ if i % 2 == 0 => i / 2 + 1,
        _ => (i - 1) / 2 + 1,
    }
}

fn check_range(i: u32, j: u32) -> Result<(), DiagramError> {
    if i >= 1 && j >= 1 && j <= columns_in_row(i) {
        Ok(())
    } else {
        Err(DiagramError::OutOfRange { i, j })
    }
}

/// Closed form for the pencil parameter t(i, j).
pub fn t_closed(i: u32, j: u32) -> Result<EisensteinInt, DiagramError> {
    check_range(i, j)?;
    if i == 1 {
        return Ok(EisensteinInt::new(-2, 0));
    }
    let j = i64::from(j);
    let one_minus_tau = EisensteinInt::new(1, -1);
    let one_plus_two_tau = EisensteinInt::new(1, 2);
    let scaled = |x: &EisensteinInt, k: i64| -> EisensteinInt {
        &EisensteinInt::new(k * x.a().clone(), k * x.b().clone()) + &EisensteinInt::zero()
    };
    if i % 2 == 0 {
        let half = i64::from(i / 2);
        let first = &EisensteinInt::new(2, -1) + &scaled(&one_minus_tau, half - 1);
        Ok(&first + &scaled(&one_plus_two_tau, j - 1))
    } else {
        let half = i64::from((i - 1) / 2);
        let first = &EisensteinInt::new(-3, 1) - &scaled(&one_minus_tau, half - 1);
        Ok(&first - &scaled(&one_plus_two_tau, j - 1))
    }
}

/// Closed form for the quotient pair (c, d) with (t-1)/(-2-tau) = c + d*tau.
pub fn cd_closed(i: u32, j: u32) -> Result<(i64, i64), DiagramError> {
    check_range(i, j)?;
    if i == 1 {
        return Ok((1, -1));
    }
    let half = i64::from(i / 2);
    let j = i64::from(j);
    if i % 2 == 0 {
        if j == 1 {
            Ok((0, half))
        } else {
            Ok((-(j - 1), half + 1 - j))
        }
    } else {
        let half = i64::from((i - 1) / 2);
        if j == 1 {
            Ok((1, -half - 1))
        } else {
            Ok((j, -half - 1 + (j - 1)))
        }
    }
}

/// Degree of the rational curve at (i, j): c^2 + d^2 - c + d - c*d.
pub fn degree_closed(i: u32, j: u32) -> Result<i64, DiagramError> {
    let (c, d) = cd_closed(i, j)?;
    degree_from_cd(c, d).ok_or(DiagramError::Overflow { i, j })
}

fn degree_from_cd(c: i64, d: i64) -> Option<i64> {
    let c2 = c.checked_mul(c)?;
    let d2 = d.checked_mul(d)?;
    let cd = c.checked_mul(d)?;
    c2.checked_add(d2)?
        .checked_sub(c)?
        .checked_add(d)?
        .checked_sub(cd)
}

/// Degree of the generic member of the elliptic pencil with quotient pair
/// (c, d): `3 * (1 + c^2 + d^2 - c + d - c*d)`.
pub fn pencil_generic_degree(c: i64, d: i64) -> i64 {
    3 * (1 + degree_from_cd(c, d).expect("pencil degree overflow"))
}

/// Edges into entry (i, j), leftmost parent first.
pub fn parent_edges(i: u32, j: u32) -> Result<Vec<ParentEdge>, DiagramError> {
    check_range(i, j)?;
    if i == 1 {
        return Ok(Vec::new());
    }
    if i % 2 == 1 {
        // odd rows come one-to-one from the even row above via Q1
        return Ok(vec![ParentEdge { i: i - 1, j, map: CremonaTag::Q1 }]);
    }
    let above = columns_in_row(i - 1);
    let mut edges = Vec::new();
    if j >= 2 && j - 1 <= above {
        edges.push(ParentEdge { i: i - 1, j: j - 1, map: CremonaTag::Qtau2 });
    }
    if j <= above {
        edges.push(ParentEdge { i: i - 1, j, map: CremonaTag::Qtau });
    }
    Ok(edges)
}

/// Map sequence along the leftmost parent path from the seed to (i, j),
/// in application order.
pub fn leftmost_path(i: u32, j: u32) -> Result<Vec<CremonaTag>, DiagramError> {
    check_range(i, j)?;
    let mut path = Vec::new();
    let (mut ci, mut cj) = (i, j);
    while ci > 1 {
        let edge = parent_edges(ci, cj)?[0];
        path.push(edge.map);
        ci = edge.i;
        cj = edge.j;
    }
    path.reverse();
    Ok(path)
}

fn seed_entry() -> Result<DiagramEntry, DiagramError> {
    let t = EisensteinInt::new(-2, 0);
    let coarse = CoarseCurveData::new(6, 3, 1, 1, 1)?;
    let fine = FineCurveData::new(1, [1, 1, 0], [0, 0, 0], [0, 0, 0])?;
    finish_entry(1, 1, t, coarse, fine, Vec::new())
}

fn finish_entry(
    i: u32,
    j: u32,
    t: EisensteinInt,
    coarse: CoarseCurveData,
    fine: FineCurveData,
    parents: Vec<ParentEdge>,
) -> Result<DiagramEntry, DiagramError> {
    let divisor = EisensteinInt::new(-2, -1);
    let q = (&t - &EisensteinInt::one()).exact_div(&divisor)?;
    let (c, d) = q.to_i64_pair().ok_or(DiagramError::Overflow { i, j })?;
    if coarse.d % 3 != 0 {
        return Err(DiagramError::Inconsistent {
            i,
            j,
            what: format!("pencil degree {} is not divisible by 3", coarse.d),
        });
    }
    let degree = coarse.d / 3 - 1;
    if degree != fine.d {
        return Err(DiagramError::Inconsistent {
            i,
            j,
            what: format!("rational degree {} != fine degree {}", degree, fine.d),
        });
    }
    if t.mod3_class() != 1 {
        return Err(DiagramError::Inconsistent {
            i,
            j,
            what: format!("parameter {t} fails the mod-3 congruence"),
        });
    }
    Ok(DiagramEntry { i, j, t, c, d, degree, coarse, fine, parents })
}

fn derive(parent: &DiagramEntry, tag: CremonaTag, i: u32, j: u32) -> Result<DiagramEntry, DiagramError> {
    let t = tag.transform_parameter(&parent.t);
    let coarse = parent.coarse.transform(tag)?;
    let fine = parent.fine.transform(tag)?;
    let edge = ParentEdge { i: parent.i, j: parent.j, map: tag };
    finish_entry(i, j, t, coarse, fine, vec![edge])
}

/// Build the diagram down to `depth` rows. Merged entries are derived from
/// both parents and must agree on every field.
pub fn build(depth: u32) -> Result<Diagram, DiagramError> {
    assert!(depth >= 1, "depth must be at least 1");
    let mut rows = vec![vec![seed_entry()?]];
    for r in 1..depth {
        let next_len = columns_in_row(r + 1);
        let prev = &rows[(r - 1) as usize];
        let mut next = Vec::with_capacity(next_len as usize);
        if r % 2 == 1 {
            for j in 1..=next_len {
                let left = if j >= 2 { prev.get(j as usize - 2) } else { None };
                let right = prev.get(j as usize - 1);
                let entry = match (left, right) {
                    (Some(lp), Some(rp)) => {
                        let mut from_left = derive(lp, CremonaTag::Qtau2, r + 1, j)?;
                        let from_right = derive(rp, CremonaTag::Qtau, r + 1, j)?;
                        merge(&mut from_left, from_right)?;
                        from_left
                    }
                    (Some(lp), None) => derive(lp, CremonaTag::Qtau2, r + 1, j)?,
                    (None, Some(rp)) => derive(rp, CremonaTag::Qtau, r + 1, j)?,
                    (None, None) => unreachable!("row shape guarantees a parent"),
                };
                next.push(entry);
            }
        } else {
            for (idx, parent) in prev.iter().enumerate() {
                next.push(derive(parent, CremonaTag::Q1, r + 1, idx as u32 + 1)?);
            }
        }
        rows.push(next);
    }
    Ok(Diagram { rows })
}

fn merge(left: &mut DiagramEntry, right: DiagramEntry) -> Result<(), DiagramError> {
    let (i, j) = (left.i, left.j);
    let differs: Option<&'static str> = if left.t != right.t {
        Some("t")
    } else if (left.c, left.d) != (right.c, right.d) {
        Some("cd")
    } else if left.degree != right.degree {
        Some("degree")
    } else if left.coarse != right.coarse {
        Some("coarse")
    } else if left.fine != right.fine {
        Some("fine")
    } else {
        None
    };
    if let Some(field) = differs {
        return Err(DiagramError::MergeMismatch { i, j, field });
    }
    left.parents.extend(right.parents);
    Ok(())
}

impl fmt::Display for DiagramEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a[{},{}]: t={} (c,d)=({},{}) deg={} coarse={} fine={}",
            self.i, self.j, self.t, self.c, self.d, self.degree, self.coarse, self.fine
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ei(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn row_shapes() {
        assert_eq!(columns_in_row(1), 1);
        assert_eq!(columns_in_row(2), 2);
        assert_eq!(columns_in_row(3), 2);
        assert_eq!(columns_in_row(6), 4);
        assert_eq!(columns_in_row(11), 6);
    }

    #[test]
    fn build_matches_printed_rows() {
        let d = build(7).unwrap();
        let degrees: Vec<i64> = d.rows()[3].iter().map(|e| e.degree).collect();
        assert_eq!(degrees, vec![6, 5, 6]);
        let fine_degrees: Vec<i64> = d.rows()[6].iter().map(|e| e.fine.d).collect();
        assert_eq!(fine_degrees, vec![16, 14, 14, 16]);
        assert_eq!(d.rows()[1][0].t, ei(2, -1));
    }

    #[test]
    fn closed_parameter_examples() {
        assert_eq!(t_closed(7, 2).unwrap(), ei(-6, 1));
        assert_eq!(t_closed(6, 4).unwrap(), ei(7, 3));
        assert_eq!(t_closed(1, 1).unwrap(), ei(-2, 0));
    }

    #[test]
    fn closed_quotient_examples() {
        assert_eq!(cd_closed(1, 1).unwrap(), (1, -1));
        // oracle: exact division of t-1 by -2-tau
        let q = (&t_closed(4, 2).unwrap() - &EisensteinInt::one())
            .exact_div(&ei(-2, -1))
            .unwrap();
        assert_eq!(q.to_i64_pair().unwrap(), (-1, 1));
        assert_eq!(cd_closed(4, 2).unwrap(), (-1, 1));
    }

    #[test]
    fn closed_quotient_agrees_with_division_oracle() {
        for i in 1..=50 {
            for j in 1..=columns_in_row(i) {
                let q = (&t_closed(i, j).unwrap() - &EisensteinInt::one())
                    .exact_div(&ei(-2, -1))
                    .unwrap();
                assert_eq!(Some(cd_closed(i, j).unwrap()), q.to_i64_pair(), "at ({i},{j})");
            }
        }
    }

    #[test]
    fn closed_degree_examples() {
        assert_eq!(degree_closed(9, 3).unwrap(), 21);
        let row11: Vec<i64> = (1..=6).map(|j| degree_closed(11, j).unwrap()).collect();
        assert_eq!(row11, vec![36, 32, 30, 30, 32, 36]);
        assert_eq!(degree_closed(1, 1).unwrap(), 1);
    }

    #[test]
    fn pencil_degree_examples() {
        assert_eq!(pencil_generic_degree(1, -1), 6);
        assert_eq!(pencil_generic_degree(0, 1), 9);
        for i in 1..=20 {
            for j in 1..=columns_in_row(i) {
                let (c, d) = cd_closed(i, j).unwrap();
                assert_eq!(pencil_generic_degree(c, d), 3 * degree_closed(i, j).unwrap() + 3);
            }
        }
    }

    #[test]
    fn recurrence_agrees_with_closed_forms() {
        let d = build(12).unwrap();
        for e in d.entries() {
            assert_eq!(e.t, t_closed(e.i, e.j).unwrap(), "t at ({},{})", e.i, e.j);
            assert_eq!((e.c, e.d), cd_closed(e.i, e.j).unwrap());
            assert_eq!(e.degree, degree_closed(e.i, e.j).unwrap());
        }
    }

    #[test]
    fn row_symmetry() {
        for i in 1..=30 {
            let n = columns_in_row(i);
            for j in 1..=n {
                assert_eq!(
                    degree_closed(i, j).unwrap(),
                    degree_closed(i, n + 1 - j).unwrap()
                );
            }
        }
    }

    #[test]
    fn genus_and_intersection_identities() {
        let d = build(12).unwrap();
        for e in d.entries() {
            assert_eq!(e.fine.genus_double(), 0, "genus 0 at ({},{})", e.i, e.j);
            assert_eq!(e.fine.self_intersection(), -1, "(-1)-curve at ({},{})", e.i, e.j);
            assert_eq!(e.coarse.genus_double(), 2, "genus 1 at ({},{})", e.i, e.j);
            assert_eq!(e.coarse.self_intersection(), 0, "fiber at ({},{})", e.i, e.j);
            assert_eq!(e.t.mod3_class(), 1);
        }
    }

    #[test]
    fn leftmost_paths() {
        assert_eq!(leftmost_path(1, 1).unwrap(), vec![]);
        assert_eq!(
            leftmost_path(6, 3).unwrap(),
            vec![
                CremonaTag::Qtau,
                CremonaTag::Q1,
                CremonaTag::Qtau2,
                CremonaTag::Q1,
                CremonaTag::Qtau2,
            ]
        );
        assert_eq!(
            leftmost_path(7, 2).unwrap(),
            vec![
                CremonaTag::Qtau,
                CremonaTag::Q1,
                CremonaTag::Qtau,
                CremonaTag::Q1,
                CremonaTag::Qtau2,
                CremonaTag::Q1,
            ]
        );
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(t_closed(4, 4), Err(DiagramError::OutOfRange { .. })));
        assert!(matches!(cd_closed(5, 0), Err(DiagramError::OutOfRange { .. })));
        assert!(matches!(degree_closed(2, 3), Err(DiagramError::OutOfRange { .. })));
    }

    #[test]
    fn named_entry_nine_three() {
        let d = build(9).unwrap();
        let e = d.entry(9, 3).unwrap();
        assert_eq!(e.degree, 21);
        assert_eq!(e.fine.multiplicity_multiset(), vec![9, 9, 8, 6, 6, 6, 6, 6, 6]);
    }

    #[test]
    fn merged_entry_keeps_both_parents() {
        let d = build(4).unwrap();
        let e = d.entry(4, 2).unwrap();
        assert_eq!(e.parents.len(), 2);
        assert_eq!(e.parents[0].map, CremonaTag::Qtau2);
        assert_eq!(e.parents[1].map, CremonaTag::Qtau);
    }

    #[test]
    fn json_schema() {
        let d = build(2).unwrap();
        let v = d.entry(2, 1).unwrap().to_json();
        assert_eq!(v["t"]["m"], 2);
        assert_eq!(v["t"]["n"], -1);
        assert_eq!(v["coarse"], serde_json::json!([9, 1, 4, 3, 1]));
        assert_eq!(v["parents"][0]["map"], "Qtau");
    }
}
