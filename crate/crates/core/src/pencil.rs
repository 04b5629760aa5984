//! Elliptic-pencil bookkeeping: the seed pencil of sextics, its images
//! under the Cremona maps, and the numeric fibration checks.
//!
//! A pencil is represented by its three special elements, each three
//! arrangement lines plus a triple rational component. The generic member
//! is tracked numerically through the coarse data; membership of the third
//! element is verified by exact linear dependence over Q(tau).

use serde_json::{json, Value};
use thiserror::Error;

use crate::arrangement::{lies_on, ArrangementData, Line};
use crate::cremona::{CoarseCurveData, CremonaMap, CremonaTag, CurveDataError};
use crate::diagram::{self, DiagramError};
use crate::eisenstein::EisensteinInt;
use crate::polynomials::{strict_transform, HomogPoly, PolyError};
use crate::qtau::QTau;

#[derive(Debug, Error)]
pub enum PencilError {
    #[error("special elements are not members of one pencil (no exact linear dependence)")]
    DependenceFailure,
    #[error("the nine element lines do not partition the arrangement: {0}")]
    LinePartition(String),
    #[error("degree bookkeeping broken: {0}")]
    DegreeBookkeeping(String),
    #[error("fibration check failed: {0}")]
    CheckFailure(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    CurveData(#[from] CurveDataError),
}

/// One special element: three arrangement lines and a rational component
/// carried with multiplicity three.
#[derive(Debug, Clone)]
pub struct PencilElement {
    pub lines: [Line; 3],
    pub component: HomogPoly,
    pub multiplicity: u32,
}

impl PencilElement {
    /// The full element polynomial: product of the lines times the cubed
    /// component.
    pub fn product(&self) -> HomogPoly {
        let mut acc = self.component.pow(self.multiplicity);
        for line in &self.lines {
            acc = acc.mul(&HomogPoly::from_line(line));
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct PencilDescriptor {
    pub t: EisensteinInt,
    pub coarse: CoarseCurveData,
    pub elements: [PencilElement; 3],
}

/// The seed pencil of elliptic sextics at t = -2: elements
/// l1*m1*n1*p^3, l2*m3*n2*q^3, l3*m2*n3*r^3 with p, q, r the three lines
/// through pairs of P3(1).
pub fn seed_pencil(arr: &ArrangementData) -> Result<PencilDescriptor, PencilError> {
    let qt = QTau::from_ints;
    let p = HomogPoly::linear(&[qt(1, 0), qt(1, 0), qt(1, 0)]);
    let q = HomogPoly::linear(&[qt(1, 0), qt(-1, -1), qt(0, 1)]); // x + tau^2 y + tau z
    let r = HomogPoly::linear(&[qt(1, 0), qt(0, 1), qt(-1, -1)]); // x + tau y + tau^2 z
    let by_name = |names: [&str; 3]| -> [Line; 3] {
        names.map(|n| {
            let idx = crate::arrangement::LINE_NAMES.iter().position(|&x| x == n).unwrap();
            arr.lines()[idx].clone()
        })
    };
    let desc = PencilDescriptor {
        t: EisensteinInt::new(-2, 0),
        coarse: CoarseCurveData::new(6, 3, 1, 1, 1)?,
        elements: [
            PencilElement { lines: by_name(["l1", "m1", "n1"]), component: p, multiplicity: 3 },
            PencilElement { lines: by_name(["l2", "m3", "n2"]), component: q, multiplicity: 3 },
            PencilElement { lines: by_name(["l3", "m2", "n3"]), component: r, multiplicity: 3 },
        ],
    };
    validate(&desc, arr)?;
    Ok(desc)
}

/// Push the whole descriptor through one Cremona map: parameter, coarse
/// data, lines, and components, then re-validate every invariant.
pub fn transform_pencil(
    tag: CremonaTag,
    desc: &PencilDescriptor,
    arr: &ArrangementData,
) -> Result<PencilDescriptor, PencilError> {
    let map = CremonaMap::new(tag);
    let mut elements = Vec::with_capacity(3);
    for e in &desc.elements {
        let mut lines = Vec::with_capacity(3);
        for line in &e.lines {
            let image = strict_transform(&map, &HomogPoly::from_line(line))?;
            let image = image.as_line().ok_or_else(|| {
                PencilError::DegreeBookkeeping(format!(
                    "arrangement line mapped to degree {} under {tag}",
                    image.degree()
                ))
            })?;
            lines.push(image);
        }
        let component = strict_transform(&map, &e.component)?;
        elements.push(PencilElement {
            lines: [lines[0].clone(), lines[1].clone(), lines[2].clone()],
            component,
            multiplicity: e.multiplicity,
        });
    }
    let out = PencilDescriptor {
        t: tag.transform_parameter(&desc.t),
        coarse: desc.coarse.transform(tag)?,
        elements: elements.try_into().map_err(|_| PencilError::DependenceFailure)?,
    };
    validate(&out, arr)?;
    Ok(out)
}

/// The pencil at diagram entry (i, j): the seed pushed along the entry's
/// leftmost parent path.
pub fn pencil_at(i: u32, j: u32, arr: &ArrangementData) -> Result<PencilDescriptor, PencilError> {
    let mut desc = seed_pencil(arr)?;
    for tag in diagram::leftmost_path(i, j)? {
        desc = transform_pencil(tag, &desc, arr)?;
    }
    Ok(desc)
}

fn validate(desc: &PencilDescriptor, arr: &ArrangementData) -> Result<(), PencilError> {
    // the nine lines are exactly the arrangement, each once
    let mut seen = [false; 9];
    for e in &desc.elements {
        for line in &e.lines {
            let idx = arr.line_index(line).ok_or_else(|| {
                PencilError::LinePartition(format!("line {:?} is not in the arrangement", line))
            })?;
            if seen[idx] {
                return Err(PencilError::LinePartition(format!(
                    "line {} appears twice",
                    arr.line_name(idx)
                )));
            }
            seen[idx] = true;
        }
    }
    // component degrees agree with the pencil degree
    if desc.coarse.d % 3 != 0 {
        return Err(PencilError::DegreeBookkeeping(format!(
            "pencil degree {} is not divisible by 3",
            desc.coarse.d
        )));
    }
    let expected = desc.coarse.d / 3 - 1;
    for e in &desc.elements {
        if i64::from(e.component.degree()) != expected {
            return Err(PencilError::DegreeBookkeeping(format!(
                "component degree {} != {}",
                e.component.degree(),
                expected
            )));
        }
        let total = 3 + 3 * i64::from(e.component.degree());
        if total != desc.coarse.d {
            return Err(PencilError::DegreeBookkeeping(format!(
                "element total degree {total} != pencil degree {}",
                desc.coarse.d
            )));
        }
    }
    // the three element products span a pencil: the third is an exact
    // Q(tau)-combination of the first two, with both coefficients nonzero
    let products: Vec<HomogPoly> = desc.elements.iter().map(PencilElement::product).collect();
    let (c1, c2) = dependence_coefficients(&products[0], &products[1], &products[2])
        .ok_or(PencilError::DependenceFailure)?;
    if c1.is_zero() || c2.is_zero() {
        return Err(PencilError::DependenceFailure);
    }
    Ok(())
}

/// Solve f3 = c1*f1 + c2*f2 exactly, if possible.
fn dependence_coefficients(f1: &HomogPoly, f2: &HomogPoly, f3: &HomogPoly) -> Option<(QTau, QTau)> {
    let monomials: Vec<_> = {
        let mut all: Vec<_> = f1.terms().keys().chain(f2.terms().keys()).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    };
    for (ai, ma) in monomials.iter().enumerate() {
        for mb in &monomials[ai + 1..] {
            let det = &(&f1.coefficient(ma) * &f2.coefficient(mb))
                - &(&f1.coefficient(mb) * &f2.coefficient(ma));
            if det.is_zero() {
                continue;
            }
            let c1 = &(&(&f3.coefficient(ma) * &f2.coefficient(mb))
                - &(&f3.coefficient(mb) * &f2.coefficient(ma)))
                / &det;
            let c2 = &(&(&f1.coefficient(ma) * &f3.coefficient(mb))
                - &(&f1.coefficient(mb) * &f3.coefficient(ma)))
                / &det;
            let combo = f1.scale(&c1).add(&f2.scale(&c2));
            if &combo == f3 {
                return Some((c1, c2));
            }
            return None;
        }
    }
    None
}

/// Numeric signature of one rational component after the twelve blow-ups.
#[derive(Debug, Clone)]
pub struct ComponentCheck {
    pub degree: i64,
    pub multiplicities: Vec<i64>,
    pub genus_double: i64,
    pub self_intersection: i64,
}

/// Numeric signature of one arrangement line after the twelve blow-ups.
#[derive(Debug, Clone)]
pub struct LineCheck {
    pub name: String,
    pub incident_points: i64,
    pub self_intersection: i64,
}

/// Everything [`fibration_checks`] verifies, with the computed numbers.
#[derive(Debug, Clone)]
pub struct FibrationReport {
    pub generic_degree: i64,
    pub generic_genus_double: i64,
    pub generic_self_intersection: i64,
    pub components: Vec<ComponentCheck>,
    pub lines: Vec<LineCheck>,
}

/// Verify the fibration signature: generic member of genus one and
/// self-intersection zero; each component a (-1)-curve of genus zero; each
/// line a (-3)-curve (one point of each group on it).
pub fn fibration_checks(
    desc: &PencilDescriptor,
    arr: &ArrangementData,
) -> Result<FibrationReport, PencilError> {
    let generic_genus_double = desc.coarse.genus_double();
    if generic_genus_double != 2 {
        return Err(PencilError::CheckFailure(format!(
            "generic member genus: (d-1)(d-2) - 3*sum m(m-1) = {generic_genus_double}, want 2"
        )));
    }
    let generic_self_intersection = desc.coarse.self_intersection();
    if generic_self_intersection != 0 {
        return Err(PencilError::CheckFailure(format!(
            "generic member self-intersection: d^2 - 3*sum m^2 = {generic_self_intersection}, want 0"
        )));
    }
    let mut components = Vec::new();
    for e in &desc.elements {
        let d = i64::from(e.component.degree());
        let mults: Vec<i64> = arr
            .points()
            .iter()
            .map(|p| i64::from(e.component.multiplicity_at(p)))
            .collect();
        let genus_double = (d - 1) * (d - 2) - mults.iter().map(|m| m * (m - 1)).sum::<i64>();
        let self_intersection = d * d - mults.iter().map(|m| m * m).sum::<i64>();
        if genus_double != 0 {
            return Err(PencilError::CheckFailure(format!(
                "component genus: (d-1)(d-2) - sum m(m-1) = {genus_double}, want 0"
            )));
        }
        if self_intersection != -1 {
            return Err(PencilError::CheckFailure(format!(
                "component self-intersection: d^2 - sum m^2 = {self_intersection}, want -1"
            )));
        }
        components.push(ComponentCheck {
            degree: d,
            multiplicities: mults,
            genus_double,
            self_intersection,
        });
    }
    let mut lines = Vec::new();
    for e in &desc.elements {
        for line in &e.lines {
            let idx = arr.line_index(line).expect("validated partition");
            let incident = arr.points().iter().filter(|p| lies_on(p, line)).count() as i64;
            let self_intersection = 1 - incident;
            if self_intersection != -3 {
                return Err(PencilError::CheckFailure(format!(
                    "line {}: 1 - {incident} = {self_intersection}, want -3",
                    arr.line_name(idx)
                )));
            }
            lines.push(LineCheck {
                name: arr.line_name(idx).to_owned(),
                incident_points: incident,
                self_intersection,
            });
        }
    }
    Ok(FibrationReport {
        generic_degree: desc.coarse.d,
        generic_genus_double,
        generic_self_intersection,
        components,
        lines,
    })
}

/// JSON report: parameter, coarse data, elements (lines by name, component
/// in text form), and the fibration check numbers.
pub fn pencil_to_json(
    desc: &PencilDescriptor,
    report: &FibrationReport,
    arr: &ArrangementData,
) -> Value {
    let (m, n) = desc.t.to_i64_pair().expect("parameter components fit i64");
    let elements: Vec<Value> = desc
        .elements
        .iter()
        .map(|e| {
            let names: Vec<&str> = e
                .lines
                .iter()
                .map(|l| arr.line_name(arr.line_index(l).expect("validated")))
                .collect();
            json!({
                "lines": names,
                "component": e.component.to_string(),
                "multiplicity": e.multiplicity,
            })
        })
        .collect();
    let checks = json!({
        "generic": {
            "degree": report.generic_degree,
            "genus_double": report.generic_genus_double,
            "self_intersection": report.generic_self_intersection,
        },
        "components": report.components.iter().map(|c| json!({
            "degree": c.degree,
            "multiplicities": c.multiplicities,
            "genus_double": c.genus_double,
            "self_intersection": c.self_intersection,
        })).collect::<Vec<_>>(),
        "lines": report.lines.iter().map(|l| json!({
            "name": l.name,
            "incident_points": l.incident_points,
            "self_intersection": l.self_intersection,
        })).collect::<Vec<_>>(),
    });
    json!({
        "t": { "m": m, "n": n },
        "coarse": desc.coarse.as_array().to_vec(),
        "elements": elements,
        "checks": checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::dual_hesse;
    use crate::polynomials::curve_equation;

    fn qt(a: i64, b: i64) -> QTau {
        QTau::from_ints(a, b)
    }

    #[test]
    fn seed_pencil_structure() {
        let arr = dual_hesse();
        let seed = seed_pencil(&arr).unwrap();
        assert_eq!(seed.t, EisensteinInt::new(-2, 0));
        assert_eq!(seed.coarse.as_array(), [6, 3, 1, 1, 1]);
        for e in &seed.elements {
            assert_eq!(e.component.degree(), 1);
            assert_eq!(e.multiplicity, 3);
        }
    }

    #[test]
    fn nonics_stage_components_are_the_printed_conics() {
        let arr = dual_hesse();
        let seed = seed_pencil(&arr).unwrap();
        let nonics = transform_pencil(CremonaTag::Qtau, &seed, &arr).unwrap();
        assert_eq!(nonics.t, EisensteinInt::new(2, -1));
        assert_eq!(nonics.coarse.as_array(), [9, 1, 4, 3, 1]);
        let c2p = HomogPoly::from_terms([
            (2, 0, 0, qt(1, 0)),
            (1, 1, 0, qt(0, -1)),
            (0, 2, 0, qt(1, 0)),
            (1, 0, 1, qt(1, 1)),
            (0, 1, 1, qt(1, 1)),
            (0, 0, 2, qt(-1, -1)),
        ]);
        let c2q = HomogPoly::from_terms([
            (2, 0, 0, qt(1, 0)),
            (1, 1, 0, qt(-1, 0)),
            (0, 2, 0, qt(0, 1)),
            (1, 0, 1, qt(-1, 0)),
            (0, 1, 1, qt(1, 1)),
            (0, 0, 2, qt(0, 1)),
        ]);
        let c2r = HomogPoly::from_terms([
            (2, 0, 0, qt(1, 0)),
            (1, 1, 0, qt(1, 1)),
            (0, 2, 0, qt(-1, -1)),
            (1, 0, 1, qt(0, -1)),
            (0, 1, 1, qt(1, 1)),
            (0, 0, 2, qt(1, 0)),
        ]);
        let got: Vec<HomogPoly> =
            nonics.elements.iter().map(|e| e.component.canonical()).collect();
        assert_eq!(got[0], c2p.canonical());
        assert_eq!(got[1], c2q.canonical());
        assert_eq!(got[2], c2r.canonical());
    }

    #[test]
    fn fifteen_stage() {
        let arr = dual_hesse();
        let fifteen = pencil_at(3, 1, &arr).unwrap();
        assert_eq!(fifteen.coarse.as_array(), [15, 7, 3, 4, 1]);
        assert_eq!(fifteen.t, EisensteinInt::new(-3, 1));
        for e in &fifteen.elements {
            assert_eq!(e.component.degree(), 4);
        }
        // quartic components have three ordinary double points at P3(1)
        let p3_one = arr.group(crate::arrangement::GroupLabel::One);
        for e in &fifteen.elements {
            for p in p3_one {
                assert_eq!(e.component.multiplicity_at(p), 2);
            }
        }
    }

    #[test]
    fn lines_permuted_as_a_set() {
        let arr = dual_hesse();
        let seed = seed_pencil(&arr).unwrap();
        // Q1 contracts the seed components p, q, r (its own fundamental
        // triangle), so only the branching maps apply at row one; from the
        // nonics stage onward all three maps are valid.
        let nonics = transform_pencil(CremonaTag::Qtau, &seed, &arr).unwrap();
        let sorted_lines = |d: &PencilDescriptor| {
            let mut indices: Vec<usize> = d
                .elements
                .iter()
                .flat_map(|e| e.lines.iter())
                .map(|l| arr.line_index(l).unwrap())
                .collect();
            indices.sort_unstable();
            indices
        };
        assert_eq!(
            sorted_lines(&transform_pencil(CremonaTag::Qtau2, &seed, &arr).unwrap()),
            (0..9).collect::<Vec<_>>()
        );
        for tag in CremonaTag::ALL {
            let next = transform_pencil(tag, &nonics, &arr).unwrap();
            assert_eq!(sorted_lines(&next), (0..9).collect::<Vec<_>>());
        }
    }

    #[test]
    fn q1_contracts_the_seed_components() {
        let arr = dual_hesse();
        let seed = seed_pencil(&arr).unwrap();
        assert!(matches!(
            transform_pencil(CremonaTag::Q1, &seed, &arr),
            Err(PencilError::Poly(PolyError::Contracted))
        ));
    }

    #[test]
    fn fibration_checks_pass_for_first_stages() {
        let arr = dual_hesse();
        for (i, j) in [(1, 1), (2, 1), (2, 2), (3, 1), (4, 2)] {
            let desc = pencil_at(i, j, &arr).unwrap();
            let report = fibration_checks(&desc, &arr).unwrap();
            assert_eq!(report.generic_self_intersection, 0);
            for c in &report.components {
                assert_eq!(c.self_intersection, -1);
            }
        }
    }

    #[test]
    fn first_component_tracks_curve_equation() {
        let arr = dual_hesse();
        for (i, j) in [(2, 1), (3, 1), (4, 1), (4, 2)] {
            let desc = pencil_at(i, j, &arr).unwrap();
            let eq = curve_equation(i, j).unwrap();
            assert_eq!(desc.elements[0].component.canonical(), eq);
        }
    }

    #[test]
    fn dependence_solver_on_constructed_case() {
        let f1 = HomogPoly::from_terms([(1, 0, 0, qt(1, 0)), (0, 1, 0, qt(2, 0))]);
        let f2 = HomogPoly::from_terms([(0, 1, 0, qt(1, 0)), (0, 0, 1, qt(1, 0))]);
        let f3 = f1.scale(&qt(3, 1)).add(&f2.scale(&qt(0, -2)));
        let (c1, c2) = dependence_coefficients(&f1, &f2, &f3).unwrap();
        assert_eq!(c1, qt(3, 1));
        assert_eq!(c2, qt(0, -2));
        let not_member = HomogPoly::from_terms([(1, 0, 0, qt(1, 0)), (0, 0, 1, qt(5, 0))]);
        assert!(dependence_coefficients(&f1, &f2, &not_member).is_none());
    }

    #[test]
    fn json_report_shape() {
        let arr = dual_hesse();
        let seed = seed_pencil(&arr).unwrap();
        let report = fibration_checks(&seed, &arr).unwrap();
        let v = pencil_to_json(&seed, &report, &arr);
        assert_eq!(v["t"]["m"], -2);
        assert_eq!(v["elements"][0]["lines"], json!(["l1", "m1", "n1"]));
        assert_eq!(v["elements"][0]["component"], "x+y+z");
        assert_eq!(v["checks"]["generic"]["self_intersection"], 0);
    }
}
