//! The invariant suites behind the `verify` command.
//!
//! Each suite runs a block of exhaustive or enumerated checks and reports
//! how many assertions it evaluated; the first violated identity aborts the
//! suite with a message naming the failing location.

use thiserror::Error;

use crate::arrangement::{dual_hesse, lies_on, GroupLabel, LINE_NAMES};
use crate::cremona::{CremonaMap, CremonaTag};
use crate::diagram;
use crate::eisenstein::EisensteinInt;
use crate::pencil::{self, PencilDescriptor};
use crate::polynomials::{contracted_lines, curve_equation, strict_transform, HomogPoly};
use crate::qtau::QTau;

#[derive(Debug, Error)]
#[error("{suite} suite: {detail}")]
pub struct VerifyFailure {
    pub suite: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: u64,
}

struct Suite {
    name: &'static str,
    checks: u64,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0 }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) -> Result<(), VerifyFailure> {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(VerifyFailure { suite: self.name, detail: detail() })
        }
    }

    fn done(self) -> SuiteReport {
        SuiteReport { name: self.name, checks: self.checks }
    }
}

/// Ring axioms, norm multiplicativity, exact-division round trips (with a
/// brute-force witness search on failures), and the mod-3 homomorphism,
/// exhaustively over small component grids.
pub fn verify_eisenstein() -> Result<SuiteReport, VerifyFailure> {
    let mut s = Suite::new("eisenstein");
    let grid = |r: i64| -> Vec<EisensteinInt> {
        let mut v = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                v.push(EisensteinInt::new(a, b));
            }
        }
        v
    };

    let small = grid(2);
    for x in &small {
        for y in &small {
            for z in &small {
                s.check(&(x + y) + z == x + &(y + z), || {
                    format!("add associativity at ({x}, {y}, {z})")
                })?;
                s.check(&(x * y) * z == x * &(y * z), || {
                    format!("mul associativity at ({x}, {y}, {z})")
                })?;
                s.check(x * &(y + z) == &(x * y) + &(x * z), || {
                    format!("distributivity at ({x}, {y}, {z})")
                })?;
            }
        }
    }

    let pairs = grid(6);
    for x in &pairs {
        for y in &pairs {
            s.check(x + y == y + x, || format!("add commutativity at ({x}, {y})"))?;
            s.check(x * y == y * x, || format!("mul commutativity at ({x}, {y})"))?;
            s.check((x * y).norm() == x.norm() * y.norm(), || {
                format!("norm multiplicativity at ({x}, {y})")
            })?;
            s.check(
                (x + y).mod3_class() == (x.mod3_class() + y.mod3_class()) % 3,
                || format!("mod-3 additivity at ({x}, {y})"),
            )?;
            if y.is_zero() {
                continue;
            }
            match x.exact_div(y) {
                Ok(q) => s.check(&q * y == *x, || format!("division round trip at ({x})/({y})"))?,
                Err(_) => {
                    let (xa, xb) = x.to_i64_pair().unwrap();
                    let (ya, yb) = y.to_i64_pair().unwrap();
                    let mut witness = false;
                    for qa in -12..=12i64 {
                        for qb in -12..=12i64 {
                            let ra = qa * ya - qb * yb;
                            let rb = qa * yb + ya * qb - qb * yb;
                            if ra == xa && rb == xb {
                                witness = true;
                            }
                        }
                    }
                    s.check(!witness, || {
                        format!("exact_div refused ({x})/({y}) but a quotient exists")
                    })?;
                }
            }
        }
    }
    Ok(s.done())
}

/// The (12_3, 9_4) incidence table, pairwise distinctness, meets confined
/// to the twelve points, and the factorization of the arrangement equation
/// into the nine line forms.
pub fn verify_arrangement() -> Result<SuiteReport, VerifyFailure> {
    let mut s = Suite::new("arrangement");
    let arr = dual_hesse();
    for (idx, p) in arr.points().iter().enumerate() {
        let on = arr.lines().iter().filter(|l| lies_on(p, l)).count();
        s.check(on == 3, || format!("point {idx} lies on {on} lines, want 3"))?;
    }
    for (k, l) in arr.lines().iter().enumerate() {
        let through = arr.points().iter().filter(|p| lies_on(p, l)).count();
        s.check(through == 4, || {
            format!("line {} contains {through} points, want 4", LINE_NAMES[k])
        })?;
    }
    for (i, p) in arr.points().iter().enumerate() {
        for (k, q) in arr.points().iter().enumerate().skip(i + 1) {
            s.check(p != q, || format!("points {i} and {k} coincide"))?;
        }
    }
    for (i, l) in arr.lines().iter().enumerate() {
        for (k, m) in arr.lines().iter().enumerate().skip(i + 1) {
            s.check(l != m, || format!("lines {i} and {k} coincide"))?;
            let common = arr
                .points()
                .iter()
                .filter(|p| lies_on(p, l) && lies_on(p, m))
                .count();
            s.check(common == 1, || {
                format!(
                    "lines {} and {} meet in {common} arrangement points",
                    LINE_NAMES[i], LINE_NAMES[k]
                )
            })?;
        }
    }
    // (x^3 - z^3)(y^3 - z^3)(x^3 - y^3) = product of the nine line forms,
    // up to scalar
    let cube_diff = |hi: usize, lo: usize| -> HomogPoly {
        let mut e1 = [0u32; 3];
        e1[hi] = 3;
        let mut e2 = [0u32; 3];
        e2[lo] = 3;
        HomogPoly::from_terms([
            (e1[0], e1[1], e1[2], QTau::one()),
            (e2[0], e2[1], e2[2], -&QTau::one()),
        ])
    };
    let closed = cube_diff(0, 2).mul(&cube_diff(1, 2)).mul(&cube_diff(0, 1));
    let mut product = HomogPoly::one();
    for l in arr.lines() {
        product = product.mul(&HomogPoly::from_line(l));
    }
    s.check(closed.canonical() == product.canonical(), || {
        "product of the nine lines differs from (x^3-z^3)(y^3-z^3)(x^3-y^3)".to_string()
    })?;
    Ok(s.done())
}

/// Closed forms vs the recurrence at every entry, genus and intersection
/// identities, the mod-3 congruence, row symmetry, involutions of the
/// transforms, and the group-image table against point images.
pub fn verify_diagram(depth: u32) -> Result<SuiteReport, VerifyFailure> {
    let mut s = Suite::new("diagram");
    let d = diagram::build(depth)
        .map_err(|e| VerifyFailure { suite: "diagram", detail: e.to_string() })?;
    for (r, row) in d.rows().iter().enumerate() {
        let i = r as u32 + 1;
        s.check(row.len() as u32 == diagram::columns_in_row(i), || {
            format!("row {i} has {} entries, want {}", row.len(), diagram::columns_in_row(i))
        })?;
    }
    for e in d.entries() {
        let at = (e.i, e.j);
        let t = diagram::t_closed(e.i, e.j).unwrap();
        s.check(e.t == t, || {
            format!("t mismatch at {at:?}: recurrence {} vs closed {t}", e.t)
        })?;
        let cd = diagram::cd_closed(e.i, e.j).unwrap();
        s.check((e.c, e.d) == cd, || {
            format!("(c,d) mismatch at {at:?}: recurrence ({},{}) vs closed {cd:?}", e.c, e.d)
        })?;
        let deg = diagram::degree_closed(e.i, e.j).unwrap();
        s.check(e.degree == deg, || {
            format!("degree mismatch at {at:?}: recurrence {} vs closed {deg}", e.degree)
        })?;
        s.check(
            diagram::pencil_generic_degree(e.c, e.d) == e.coarse.d,
            || format!("pencil degree formula fails at {at:?}"),
        )?;
        s.check(e.t.mod3_class() == 1, || {
            format!("mod-3 congruence fails at {at:?}: t = {}", e.t)
        })?;
        s.check(e.fine.genus_double() == 0, || {
            format!("genus-0 identity fails at {at:?}: fine {}", e.fine)
        })?;
        s.check(e.fine.self_intersection() == -1, || {
            format!("(-1)-curve identity fails at {at:?}: fine {}", e.fine)
        })?;
        s.check(e.coarse.genus_double() == 2, || {
            format!("genus-1 identity fails at {at:?}: coarse {}", e.coarse)
        })?;
        s.check(e.coarse.self_intersection() == 0, || {
            format!("fiber self-intersection fails at {at:?}: coarse {}", e.coarse)
        })?;
        // involutions, wherever the transform applies
        for tag in CremonaTag::ALL {
            s.check(
                tag.transform_parameter(&tag.transform_parameter(&e.t)) == e.t,
                || format!("parameter involution fails at {at:?} under {tag}"),
            )?;
            if let Ok(once) = e.coarse.transform(tag) {
                s.check(once.transform(tag) == Ok(e.coarse), || {
                    format!("coarse involution fails at {at:?} under {tag}")
                })?;
            }
            if let Ok(once) = e.fine.transform(tag) {
                s.check(once.transform(tag) == Ok(e.fine), || {
                    format!("fine involution fails at {at:?} under {tag}")
                })?;
            }
        }
        // merged entries were compared field-by-field during the build
        if e.parents.len() == 2 {
            s.checks += 1;
        }
    }
    for i in 1..=depth {
        let n = diagram::columns_in_row(i);
        for j in 1..=n {
            s.check(
                diagram::degree_closed(i, j).unwrap()
                    == diagram::degree_closed(i, n + 1 - j).unwrap(),
                || format!("row symmetry fails at ({i},{j})"),
            )?;
        }
    }
    // group images agree with point images across the arrangement
    let arr = dual_hesse();
    for map in CremonaMap::all() {
        for (idx, p) in arr.points().iter().enumerate() {
            let g = arr.point_group(idx);
            match map.apply_point(p) {
                Err(_) => s.check(g == map.tag().base_group(), || {
                    format!("unexpected base point {p} for {}", map.tag())
                })?,
                Ok(img) => s.check(
                    arr.group_of(&img) == Some(map.tag().group_image(g)),
                    || format!("group image of {p} under {} lands wrong", map.tag()),
                )?,
            }
        }
    }
    Ok(s.done())
}


/// Substitution homomorphism, contracted-line pairings, the per-entry
/// equation audit against fine data, path independence at merged entries,
/// and the double-strict-transform involution.
pub fn verify_polynomials(max_row: u32) -> Result<SuiteReport, VerifyFailure> {
    let mut s = Suite::new("polynomials");
    let arr = dual_hesse();
    let qt = QTau::from_ints;

    // substitution is a ring homomorphism on sample pairs
    let samples = [
        HomogPoly::linear(&[qt(1, 0), qt(2, -1), qt(0, 3)]),
        HomogPoly::linear(&[qt(0, 1), qt(1, 1), qt(-2, 0)]),
        HomogPoly::from_terms([(2, 0, 0, qt(1, 0)), (1, 1, 0, qt(-1, 2)), (0, 0, 2, qt(3, 1))]),
        HomogPoly::from_terms([(0, 2, 0, qt(2, 1)), (1, 0, 1, qt(1, -1))]),
    ];
    for map in CremonaMap::all() {
        for f in &samples {
            for g in &samples {
                let prod = f.mul(g).substitute(&map);
                s.check(prod == f.substitute(&map).mul(&g.substitute(&map)), || {
                    format!("substitute(f*g) != substitute(f)*substitute(g) under {}", map.tag())
                })?;
                if f.degree() == g.degree() {
                    let sum = f.add(g).substitute(&map);
                    s.check(sum == f.substitute(&map).add(&g.substitute(&map)), || {
                        format!("substitute(f+g) mismatch under {}", map.tag())
                    })?;
                }
            }
        }
    }

    // contracted lines: joins of base-point pairs, targets exhaust the base
    // locus, and the full fundamental triangle divides the double substitute
    for map in CremonaMap::all() {
        let lines = contracted_lines(&map);
        let base = map.base_points();
        for (line, target) in &lines {
            let on = base.iter().filter(|p| lies_on(p, line)).count();
            s.check(on == 2, || {
                format!("contracted line of {} passes through {on} base points", map.tag())
            })?;
            s.check(base.iter().any(|p| p == target), || {
                format!("contraction target of {} is not a base point", map.tag())
            })?;
        }
        let mut targets: Vec<_> = lines.iter().map(|(_, t)| t.clone()).collect();
        targets.sort_by_key(|p| p.to_string());
        let mut expected: Vec<_> = base.to_vec();
        expected.sort_by_key(|p| p.to_string());
        s.check(targets == expected, || {
            format!("targets of {} do not exhaust its base points", map.tag())
        })?;
        let f = HomogPoly::from_terms([(1, 1, 0, qt(1, 0)), (0, 0, 2, qt(2, -3))]);
        let twice = f.substitute(&map).substitute(&map);
        let mut quotient = twice;
        for (line, _) in &lines {
            quotient = quotient
                .exact_divide_linear(line, f.degree())
                .map_err(|e| VerifyFailure { suite: "polynomials", detail: e.to_string() })?;
        }
        s.check(quotient.canonical() == f.canonical(), || {
            format!("double substitute of {} does not factor as f * triangle^deg", map.tag())
        })?;
    }

    // per-entry equation audit and involution; equations are carried along
    // the rows (one strict transform per entry) and the carried value is
    // pinned against the from-scratch path fold at the deepest row
    let depth = max_row.min(7);
    let d = diagram::build(depth)
        .map_err(|e| VerifyFailure { suite: "polynomials", detail: e.to_string() })?;
    let transform = |tag: CremonaTag, f: &HomogPoly| -> Result<HomogPoly, VerifyFailure> {
        strict_transform(&CremonaMap::new(tag), f)
            .map_err(|e| VerifyFailure { suite: "polynomials", detail: e.to_string() })
    };
    let mut frontier: Vec<HomogPoly> = vec![crate::polynomials::seed_line().canonical()];
    let mut equations: Vec<Vec<HomogPoly>> = Vec::new();
    for row in d.rows() {
        if !equations.is_empty() {
            let prev = frontier.clone();
            frontier = row
                .iter()
                .map(|e| {
                    let edge = e.parents[0];
                    transform(edge.map, &prev[edge.j as usize - 1])
                })
                .collect::<Result<_, _>>()?;
        }
        equations.push(frontier.clone());
    }
    for e in d.entries() {
        let eq = &equations[e.i as usize - 1][e.j as usize - 1];
        let at = (e.i, e.j);
        s.check(i64::from(eq.degree()) == e.fine.d, || {
            format!("equation degree {} != fine degree {} at {at:?}", eq.degree(), e.fine.d)
        })?;
        for g in GroupLabel::FINITE {
            let mut got: Vec<i64> = arr
                .group(g)
                .iter()
                .map(|p| i64::from(eq.multiplicity_at(p)))
                .collect();
            got.sort_unstable();
            let mut want = e.fine.triple(g).to_vec();
            want.sort_unstable();
            s.check(got == want, || {
                format!("multiplicities at P3({g}) of entry {at:?}: audit {got:?} vs fine {want:?}")
            })?;
        }
        for p in arr.group(GroupLabel::Inf) {
            s.check(eq.multiplicity_at(p) == 0, || {
                format!("curve at {at:?} passes through {p} at infinity")
            })?;
        }
        for tag in CremonaTag::ALL {
            if let Ok(once) = strict_transform(&CremonaMap::new(tag), eq) {
                let back = transform(tag, &once)?;
                s.check(&back == eq, || {
                    format!("double strict transform by {tag} does not return entry {at:?}")
                })?;
            }
        }
        // path independence at merged entries
        if e.parents.len() == 2 {
            let right = e.parents[1];
            let via_right = transform(
                right.map,
                &equations[right.i as usize - 1][right.j as usize - 1],
            )?;
            s.check(&via_right == eq, || format!("path independence fails at {at:?}"))?;
        }
    }
    // the carried equations agree with the from-scratch leftmost-path fold
    if let Some(last) = d.rows().last() {
        for e in last {
            let scratch = curve_equation(e.i, e.j)
                .map_err(|err| VerifyFailure { suite: "polynomials", detail: err.to_string() })?;
            s.check(scratch == equations[e.i as usize - 1][e.j as usize - 1], || {
                format!("carried equation differs from path fold at ({},{})", e.i, e.j)
            })?;
        }
    }
    Ok(s.done())
}

/// Pencils along the diagram up to `max_row`: parameter and coarse data
/// agree with the diagram, the first component tracks the curve equation,
/// and the fibration signature holds at every stage.
pub fn verify_pencil(max_row: u32) -> Result<SuiteReport, VerifyFailure> {
    let mut s = Suite::new("pencil");
    let arr = dual_hesse();
    let depth = max_row.min(7);
    let d = diagram::build(depth)
        .map_err(|e| VerifyFailure { suite: "pencil", detail: e.to_string() })?;
    let fail = |e: pencil::PencilError| VerifyFailure { suite: "pencil", detail: e.to_string() };

    // walk the rows, carrying each entry's pencil from its leftmost parent,
    // with an independently folded equation alongside
    let mut frontier: Vec<PencilDescriptor> = vec![pencil::seed_pencil(&arr).map_err(fail)?];
    let mut eq_frontier: Vec<HomogPoly> = vec![crate::polynomials::seed_line().canonical()];
    for (r, row) in d.rows().iter().enumerate() {
        if r > 0 {
            let prev = std::mem::take(&mut frontier);
            let prev_eq = std::mem::take(&mut eq_frontier);
            for e in row {
                let edge = e.parents[0];
                let parent = &prev[edge.j as usize - 1];
                frontier.push(pencil::transform_pencil(edge.map, parent, &arr).map_err(fail)?);
                let eq = strict_transform(
                    &CremonaMap::new(edge.map),
                    &prev_eq[edge.j as usize - 1],
                )
                .map_err(|e| VerifyFailure { suite: "pencil", detail: e.to_string() })?;
                eq_frontier.push(eq);
            }
        }
        for ((e, desc), eq) in row.iter().zip(&frontier).zip(&eq_frontier) {
            let at = (e.i, e.j);
            s.check(desc.t == e.t, || {
                format!("pencil parameter at {at:?}: {} vs diagram {}", desc.t, e.t)
            })?;
            s.check(desc.coarse == e.coarse, || {
                format!("pencil coarse data at {at:?}: {} vs diagram {}", desc.coarse, e.coarse)
            })?;
            s.check(&desc.elements[0].component.canonical() == eq, || {
                format!("pencil component at {at:?} differs from the curve equation")
            })?;
            s.check(
                desc.coarse.d == 3 * i64::from(desc.elements[0].component.degree()) + 3,
                || format!("degree bookkeeping fails at {at:?}"),
            )?;
            let report = pencil::fibration_checks(desc, &arr).map_err(fail)?;
            s.checks += 1 + report.components.len() as u64 + report.lines.len() as u64;
        }
    }
    Ok(s.done())
}

/// Run every suite; diagram checks to `depth`, equation and pencil audits
/// to row min(depth, 7).
pub fn verify_all(depth: u32) -> Result<Vec<SuiteReport>, VerifyFailure> {
    Ok(vec![
        verify_eisenstein()?,
        verify_arrangement()?,
        verify_diagram(depth)?,
        verify_polynomials(depth)?,
        verify_pencil(depth)?,
    ])
}
