//! The three quadratic Cremona involutions preserving the dual Hesse
//! arrangement, and their actions on points, point-groups, curve data
//! (coarse and fine), and the pencil parameter.
//!
//! Each map has its three base points at one finite point-triple of the
//! arrangement: Q1 at P3(1), Qtau at P3(tau), Qtau2 at P3(tau^2).

use std::fmt;

use thiserror::Error;

use crate::arrangement::{GroupLabel, ProjPoint};
use crate::eisenstein::EisensteinInt;
use crate::polynomials::HomogPoly;
use crate::qtau::QTau;

/// The point is a base point of the map; the image is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("the map is indeterminate at a base point")]
pub struct IndeterminateError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CurveDataError {
    #[error("transform contracts the curve: resulting degree {0} is not positive")]
    Contracted(i64),
    #[error("produced multiplicity {0} is negative")]
    NegativeMultiplicity(i64),
    #[error("multiplicity {m} exceeds degree {d}")]
    MultiplicityExceedsDegree { m: i64, d: i64 },
    #[error("integer overflow in curve data arithmetic")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CremonaTag {
    Q1,
    Qtau,
    Qtau2,
}

impl CremonaTag {
    pub const ALL: [CremonaTag; 3] = [Self::Q1, Self::Qtau, Self::Qtau2];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Q1 => "Q1",
            Self::Qtau => "Qtau",
            Self::Qtau2 => "Qtau2",
        }
    }

    /// The finite group fixed by the map, which is also its base locus.
    pub fn base_group(self) -> GroupLabel {
        match self {
            Self::Q1 => GroupLabel::One,
            Self::Qtau => GroupLabel::Tau,
            Self::Qtau2 => GroupLabel::Tau2,
        }
    }

    /// Action on the four point-triples: the base group and P3(inf) are
    /// fixed, the other two finite groups are swapped.
    pub fn group_image(self, g: GroupLabel) -> GroupLabel {
        use GroupLabel::*;
        match (self, g) {
            (_, Inf) => Inf,
            (Self::Q1, One) => One,
            (Self::Q1, Tau) => Tau2,
            (Self::Q1, Tau2) => Tau,
            (Self::Qtau, Tau) => Tau,
            (Self::Qtau, One) => Tau2,
            (Self::Qtau, Tau2) => One,
            (Self::Qtau2, Tau2) => Tau2,
            (Self::Qtau2, One) => Tau,
            (Self::Qtau2, Tau) => One,
        }
    }

    /// Action on the pencil parameter: `t -> -t - w` where w is the map's
    /// label (1, tau, or tau^2 = -1 - tau).
    pub fn transform_parameter(self, t: &EisensteinInt) -> EisensteinInt {
        let w = match self {
            Self::Q1 => EisensteinInt::new(1, 0),
            Self::Qtau => EisensteinInt::new(0, 1),
            Self::Qtau2 => EisensteinInt::new(-1, -1),
        };
        &-t - &w
    }
}

impl fmt::Display for CremonaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A quadratic Cremona involution, carried with its three quadratic
/// components and its base points.
#[derive(Debug, Clone)]
pub struct CremonaMap {
    tag: CremonaTag,
    components: [HomogPoly; 3],
    base_points: [ProjPoint; 3],
}

impl CremonaMap {
    pub fn new(tag: CremonaTag) -> Self {
        // component scalars: Q1 uses 1, Qtau uses tau, Qtau2 uses tau^2,
        // and the xy-coefficient carries the inverse root.
        let (w, w_inv) = match tag {
            CremonaTag::Q1 => (QTau::one(), QTau::one()),
            CremonaTag::Qtau => (QTau::tau(), QTau::tau_sq()),
            CremonaTag::Qtau2 => (QTau::tau_sq(), QTau::tau()),
        };
        let components = [
            // w*y^2 - xz
            HomogPoly::from_terms([
                (0, 2, 0, w.clone()),
                (1, 0, 1, -&QTau::one()),
            ]),
            // w*x^2 - yz
            HomogPoly::from_terms([
                (2, 0, 0, w.clone()),
                (0, 1, 1, -&QTau::one()),
            ]),
            // z^2 - w^2*xy
            HomogPoly::from_terms([
                (0, 0, 2, QTau::one()),
                (1, 1, 0, -&w_inv),
            ]),
        ];
        let base_points = crate::arrangement::group_points(tag.base_group());
        Self { tag, components, base_points }
    }

    pub fn all() -> [CremonaMap; 3] {
        CremonaTag::ALL.map(CremonaMap::new)
    }

    pub fn tag(&self) -> CremonaTag {
        self.tag
    }

    pub fn components(&self) -> &[HomogPoly; 3] {
        &self.components
    }

    pub fn base_points(&self) -> &[ProjPoint; 3] {
        &self.base_points
    }

    /// Evaluate the map at a point. Errors at base points, where all three
    /// components vanish.
    pub fn apply_point(&self, p: &ProjPoint) -> Result<ProjPoint, IndeterminateError> {
        let imgs: Vec<QTau> = self.components.iter().map(|c| c.eval(p.coords())).collect();
        if imgs.iter().all(|v| v.is_zero()) {
            return Err(IndeterminateError);
        }
        Ok(ProjPoint::new([imgs[0].clone(), imgs[1].clone(), imgs[2].clone()]))
    }
}

/// `[d, m_1, m_tau, m_tau2, m_inf]`: degree plus one multiplicity shared by
/// the three points of each group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoarseCurveData {
    pub d: i64,
    pub m1: i64,
    pub m_tau: i64,
    pub m_tau2: i64,
    pub m_inf: i64,
}

impl CoarseCurveData {
    pub fn new(d: i64, m1: i64, m_tau: i64, m_tau2: i64, m_inf: i64) -> Result<Self, CurveDataError> {
        if d < 1 {
            return Err(CurveDataError::Contracted(d));
        }
        for m in [m1, m_tau, m_tau2, m_inf] {
            if m < 0 {
                return Err(CurveDataError::NegativeMultiplicity(m));
            }
            if m > d {
                return Err(CurveDataError::MultiplicityExceedsDegree { m, d });
            }
        }
        Ok(Self { d, m1, m_tau, m_tau2, m_inf })
    }

    pub fn as_array(&self) -> [i64; 5] {
        [self.d, self.m1, self.m_tau, self.m_tau2, self.m_inf]
    }

    /// Strict transform under the map: degree 2d - 3m at the base group,
    /// the base-group multiplicity becomes d - 2m, the other two finite
    /// groups swap, m_inf is untouched.
    pub fn transform(&self, tag: CremonaTag) -> Result<Self, CurveDataError> {
        let two_d = self.d.checked_mul(2).ok_or(CurveDataError::Overflow)?;
        let at = |m: i64| -> Result<(i64, i64), CurveDataError> {
            let d2 = two_d
                .checked_sub(m.checked_mul(3).ok_or(CurveDataError::Overflow)?)
                .ok_or(CurveDataError::Overflow)?;
            if d2 < 1 {
                return Err(CurveDataError::Contracted(d2));
            }
            Ok((d2, self.d - 2 * m))
        };
        let (d, m1, m_tau, m_tau2) = match tag {
            CremonaTag::Q1 => {
                let (d2, m) = at(self.m1)?;
                (d2, m, self.m_tau2, self.m_tau)
            }
            CremonaTag::Qtau => {
                let (d2, m) = at(self.m_tau)?;
                (d2, self.m_tau2, m, self.m1)
            }
            CremonaTag::Qtau2 => {
                let (d2, m) = at(self.m_tau2)?;
                (d2, self.m_tau, self.m1, m)
            }
        };
        for m in [m1, m_tau, m_tau2] {
            if m < 0 {
                return Err(CurveDataError::NegativeMultiplicity(m));
            }
        }
        Self::new(d, m1, m_tau, m_tau2, self.m_inf)
    }

    /// `(d-1)(d-2) - 3 * sum m(m-1)`; equals 2 for genus-one data.
    pub fn genus_double(&self) -> i64 {
        let d = self.d;
        let sum: i64 = [self.m1, self.m_tau, self.m_tau2, self.m_inf]
            .iter()
            .map(|m| m * (m - 1))
            .sum();
        (d - 1) * (d - 2) - 3 * sum
    }

    /// `d^2 - 3 * sum m^2`: self-intersection after the twelve blow-ups.
    pub fn self_intersection(&self) -> i64 {
        let sum: i64 = [self.m1, self.m_tau, self.m_tau2, self.m_inf]
            .iter()
            .map(|m| m * m)
            .sum();
        self.d * self.d - 3 * sum
    }
}

impl fmt::Display for CoarseCurveData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{},{},{},{}]",
            self.d, self.m1, self.m_tau, self.m_tau2, self.m_inf
        )
    }
}

/// `[d, [m at P3(1)], [m at P3(tau)], [m at P3(tau^2)]]` with per-point
/// multiplicities in the frozen group order. Diagram curves avoid P3(inf),
/// so those multiplicities are implicitly zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FineCurveData {
    pub d: i64,
    pub t1: [i64; 3],
    pub t_tau: [i64; 3],
    pub t_tau2: [i64; 3],
}

impl FineCurveData {
    pub fn new(d: i64, t1: [i64; 3], t_tau: [i64; 3], t_tau2: [i64; 3]) -> Result<Self, CurveDataError> {
        if d < 1 {
            return Err(CurveDataError::Contracted(d));
        }
        for m in t1.iter().chain(&t_tau).chain(&t_tau2) {
            if *m < 0 {
                return Err(CurveDataError::NegativeMultiplicity(*m));
            }
            if *m > d {
                return Err(CurveDataError::MultiplicityExceedsDegree { m: *m, d });
            }
        }
        Ok(Self { d, t1, t_tau, t_tau2 })
    }

    pub fn triple(&self, g: GroupLabel) -> [i64; 3] {
        match g {
            GroupLabel::One => self.t1,
            GroupLabel::Tau => self.t_tau,
            GroupLabel::Tau2 => self.t_tau2,
            GroupLabel::Inf => [0, 0, 0],
        }
    }

    /// Per-point strict transform: at the base group each multiplicity
    /// becomes d minus the other two, the remaining finite triples swap.
    pub fn transform(&self, tag: CremonaTag) -> Result<Self, CurveDataError> {
        let act = |t: [i64; 3]| -> Result<(i64, [i64; 3]), CurveDataError> {
            let sum = t[0] + t[1] + t[2];
            let d2 = self
                .d
                .checked_mul(2)
                .and_then(|v| v.checked_sub(sum))
                .ok_or(CurveDataError::Overflow)?;
            if d2 < 1 {
                return Err(CurveDataError::Contracted(d2));
            }
            let out = [
                self.d - t[1] - t[2],
                self.d - t[0] - t[2],
                self.d - t[0] - t[1],
            ];
            Ok((d2, out))
        };
        let (d, t1, t_tau, t_tau2) = match tag {
            CremonaTag::Q1 => {
                let (d2, t) = act(self.t1)?;
                (d2, t, self.t_tau2, self.t_tau)
            }
            CremonaTag::Qtau => {
                let (d2, t) = act(self.t_tau)?;
                (d2, self.t_tau2, t, self.t1)
            }
            CremonaTag::Qtau2 => {
                let (d2, t) = act(self.t_tau2)?;
                (d2, self.t_tau, self.t1, t)
            }
        };
        for m in t1.iter().chain(&t_tau).chain(&t_tau2) {
            if *m < 0 {
                return Err(CurveDataError::NegativeMultiplicity(*m));
            }
        }
        Self::new(d, t1, t_tau, t_tau2)
    }

    /// Collapse to coarse data when all triples are constant (m_inf = 0).
    pub fn collapse(&self) -> Option<CoarseCurveData> {
        let flat = |t: [i64; 3]| (t[0] == t[1] && t[1] == t[2]).then_some(t[0]);
        CoarseCurveData::new(self.d, flat(self.t1)?, flat(self.t_tau)?, flat(self.t_tau2)?, 0).ok()
    }

    /// The two triples agree up to reordering, groupwise.
    pub fn eq_as_multisets(&self, other: &Self) -> bool {
        let sorted = |mut t: [i64; 3]| {
            t.sort_unstable();
            t
        };
        self.d == other.d
            && sorted(self.t1) == sorted(other.t1)
            && sorted(self.t_tau) == sorted(other.t_tau)
            && sorted(self.t_tau2) == sorted(other.t_tau2)
    }

    /// All nine finite multiplicities, as one multiset.
    pub fn multiplicity_multiset(&self) -> Vec<i64> {
        let mut all: Vec<i64> = self
            .t1
            .iter()
            .chain(&self.t_tau)
            .chain(&self.t_tau2)
            .copied()
            .collect();
        all.sort_unstable_by(|a, b| b.cmp(a));
        all
    }

    /// `(d-1)(d-2) - sum m(m-1)`; zero exactly for rational curves with
    /// ordinary singularities.
    pub fn genus_double(&self) -> i64 {
        let sum: i64 = self
            .t1
            .iter()
            .chain(&self.t_tau)
            .chain(&self.t_tau2)
            .map(|m| m * (m - 1))
            .sum();
        (self.d - 1) * (self.d - 2) - sum
    }

    /// `d^2 - sum m^2`: self-intersection after the twelve blow-ups.
    pub fn self_intersection(&self) -> i64 {
        let sum: i64 = self
            .t1
            .iter()
            .chain(&self.t_tau)
            .chain(&self.t_tau2)
            .map(|m| m * m)
            .sum();
        self.d * self.d - sum
    }
}

impl fmt::Display for FineCurveData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |v: [i64; 3]| format!("[{},{},{}]", v[0], v[1], v[2]);
        write!(
            f,
            "[{},{},{},{}]",
            self.d,
            t(self.t1),
            t(self.t_tau),
            t(self.t_tau2)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{dual_hesse, GroupLabel};
    use crate::qtau::QTau;

    fn coarse(v: [i64; 5]) -> CoarseCurveData {
        CoarseCurveData::new(v[0], v[1], v[2], v[3], v[4]).unwrap()
    }

    fn fine(d: i64, a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> FineCurveData {
        FineCurveData::new(d, a, b, c).unwrap()
    }

    #[test]
    fn base_points_match_arrangement_groups() {
        let arr = dual_hesse();
        for map in CremonaMap::all() {
            assert_eq!(
                map.base_points().as_slice(),
                arr.group(map.tag().base_group())
            );
        }
    }

    #[test]
    fn apply_point_at_base_point_is_indeterminate() {
        let q1 = CremonaMap::new(CremonaTag::Q1);
        let unit = ProjPoint::new([QTau::one(), QTau::one(), QTau::one()]);
        assert_eq!(q1.apply_point(&unit), Err(IndeterminateError));
    }

    #[test]
    fn line_through_base_points_contracts_to_unit_point() {
        // generic points (1 : t : -1-t) of x+y+z = 0 all map to (1:1:1)
        let q1 = CremonaMap::new(CremonaTag::Q1);
        let unit = ProjPoint::new([QTau::one(), QTau::one(), QTau::one()]);
        for t in [2i64, 3, 5, -4] {
            let p = ProjPoint::new([
                QTau::one(),
                QTau::from_int(t),
                QTau::from_int(-1 - t),
            ]);
            assert_eq!(q1.apply_point(&p).unwrap(), unit);
        }
    }

    #[test]
    fn apply_point_is_involutive() {
        let p = ProjPoint::new([QTau::from_int(2), QTau::from_int(3), QTau::from_int(5)]);
        for map in CremonaMap::all() {
            let back = map.apply_point(&map.apply_point(&p).unwrap()).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn group_images() {
        assert_eq!(CremonaTag::Qtau.group_image(GroupLabel::One), GroupLabel::Tau2);
        assert_eq!(CremonaTag::Qtau2.group_image(GroupLabel::Inf), GroupLabel::Inf);
        for tag in CremonaTag::ALL {
            for g in GroupLabel::ALL {
                assert_eq!(tag.group_image(tag.group_image(g)), g);
            }
        }
    }

    #[test]
    fn group_image_matches_point_images() {
        let arr = dual_hesse();
        for map in CremonaMap::all() {
            for (idx, p) in arr.points().iter().enumerate() {
                let g = arr.point_group(idx);
                match map.apply_point(p) {
                    Err(IndeterminateError) => assert_eq!(g, map.tag().base_group()),
                    Ok(img) => {
                        assert_eq!(arr.group_of(&img), Some(map.tag().group_image(g)));
                    }
                }
            }
        }
    }

    #[test]
    fn coarse_transform_examples() {
        let seed = coarse([6, 3, 1, 1, 1]);
        let nonics = seed.transform(CremonaTag::Qtau).unwrap();
        assert_eq!(nonics.as_array(), [9, 1, 4, 3, 1]);
        let fifteen = nonics.transform(CremonaTag::Q1).unwrap();
        assert_eq!(fifteen.as_array(), [15, 7, 3, 4, 1]);
    }

    #[test]
    fn coarse_transform_is_involutive() {
        let samples = [
            coarse([6, 3, 1, 1, 1]),
            coarse([9, 1, 4, 3, 1]),
            coarse([33, 7, 13, 12, 1]),
        ];
        for c in samples {
            for tag in CremonaTag::ALL {
                if let Ok(once) = c.transform(tag) {
                    assert_eq!(once.transform(tag).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn fine_transform_examples() {
        let line = fine(1, [1, 1, 0], [0, 0, 0], [0, 0, 0]);
        let conic = line.transform(CremonaTag::Qtau).unwrap();
        assert_eq!(conic, fine(2, [0, 0, 0], [1, 1, 1], [1, 1, 0]));
        let quartic = conic.transform(CremonaTag::Q1).unwrap();
        assert_eq!(quartic, fine(4, [2, 2, 2], [1, 1, 0], [1, 1, 1]));
    }

    #[test]
    fn fine_default_path_reaches_row_six() {
        // composition Qtau; Q1; Qtau2; Q1; Qtau2 applied to the line
        let mut cur = fine(1, [1, 1, 0], [0, 0, 0], [0, 0, 0]);
        for tag in [
            CremonaTag::Qtau,
            CremonaTag::Q1,
            CremonaTag::Qtau2,
            CremonaTag::Q1,
            CremonaTag::Qtau2,
        ] {
            cur = cur.transform(tag).unwrap();
        }
        assert_eq!(cur, fine(10, [2, 2, 2], [4, 4, 3], [4, 4, 4]));
    }

    #[test]
    fn fine_transform_degree_law() {
        let f = fine(8, [4, 4, 3], [2, 2, 2], [2, 2, 2]);
        let g = f.transform(CremonaTag::Qtau2).unwrap();
        let removed: i64 = f.t_tau2.iter().sum();
        assert_eq!(g.d, 2 * f.d - removed);
    }

    #[test]
    fn contracting_the_line_errors() {
        let line = fine(1, [1, 1, 0], [0, 0, 0], [0, 0, 0]);
        assert!(matches!(
            line.transform(CremonaTag::Q1),
            Err(CurveDataError::Contracted(_))
        ));
    }

    #[test]
    fn negative_multiplicity_detected() {
        let c = coarse([5, 3, 0, 0, 0]);
        assert!(matches!(
            c.transform(CremonaTag::Q1),
            Err(CurveDataError::NegativeMultiplicity(_))
        ));
    }

    #[test]
    fn collapse_commutes_with_transform() {
        let f = fine(6, [1, 1, 1], [2, 2, 2], [2, 2, 2]);
        let c = f.collapse().unwrap();
        for tag in CremonaTag::ALL {
            let via_fine = f.transform(tag).unwrap().collapse().unwrap();
            let via_coarse = c.transform(tag).unwrap();
            assert_eq!(via_fine, via_coarse);
        }
    }

    #[test]
    fn parameter_transforms() {
        let minus_two = EisensteinInt::new(-2, 0);
        assert_eq!(
            CremonaTag::Qtau.transform_parameter(&minus_two),
            EisensteinInt::new(2, -1)
        );
        assert_eq!(
            CremonaTag::Q1.transform_parameter(&EisensteinInt::new(2, -1)),
            EisensteinInt::new(-3, 1)
        );
        for tag in CremonaTag::ALL {
            let t = EisensteinInt::new(7, -4);
            assert_eq!(tag.transform_parameter(&tag.transform_parameter(&t)), t);
        }
    }
}
