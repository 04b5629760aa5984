//! Homogeneous polynomials in x, y, z over Q(tau), and the strict-transform
//! pipeline that reconstructs explicit curve equations.
//!
//! Polynomials are sparse maps from exponent triples to nonzero coefficients,
//! all terms sharing one total degree. Monomials iterate in the graded
//! reverse-lexicographic order (x > y > z), which is the order the curve
//! equations are conventionally printed in.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arrangement::{Line, ProjPoint};
use crate::cremona::CremonaMap;
use crate::diagram::{self, DiagramError};
use crate::qtau::QTau;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not exactly divisible by the linear form")]
    NotDivisible,
    #[error("strict transform contracts the curve to a point")]
    Contracted,
    #[error("strict transform degree law violated: expected {expected}, got {got}")]
    DegreeLaw { expected: u32, got: u32 },
}

#[derive(Debug, Error)]
pub enum CurveError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Exponent triple of a monomial x^i y^j z^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Monomial {
    pub fn new(x: u32, y: u32, z: u32) -> Self {
        Self { x, y, z }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y + self.z
    }
}

// Iteration order = print order: higher total degree first, then graded
// reverse-lex with x > y > z (so x^d comes first, z^d last).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then(self.z.cmp(&other.z))
            .then(self.y.cmp(&other.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A homogeneous polynomial. The zero polynomial has no terms and degree 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomogPoly {
    degree: u32,
    terms: BTreeMap<Monomial, QTau>,
}

impl HomogPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: QTau) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(0, 0, 0), c);
        }
        Self { degree: 0, terms }
    }

    pub fn one() -> Self {
        Self::constant(QTau::one())
    }

    /// Build from (i, j, k, coefficient) terms; all triples must share one
    /// total degree. Duplicate monomials are summed, zeros dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, u32, QTau)>) -> Self {
        let mut map: BTreeMap<Monomial, QTau> = BTreeMap::new();
        let mut degree: Option<u32> = None;
        for (i, j, k, c) in terms {
            let m = Monomial::new(i, j, k);
            match degree {
                None => degree = Some(m.degree()),
                Some(d) => assert_eq!(d, m.degree(), "terms must be homogeneous"),
            }
            let entry = map.entry(m).or_insert_with(QTau::zero);
            *entry = &*entry + &c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            Self::zero()
        } else {
            Self { degree: degree.unwrap(), terms: map }
        }
    }

    /// The linear form a*x + b*y + c*z.
    pub fn linear(coeffs: &[QTau; 3]) -> Self {
        Self::from_terms([
            (1, 0, 0, coeffs[0].clone()),
            (0, 1, 0, coeffs[1].clone()),
            (0, 0, 1, coeffs[2].clone()),
        ])
    }

    pub fn from_line(line: &Line) -> Self {
        Self::linear(line.coeffs())
    }

    /// Reinterpret a degree-1 polynomial as a [`Line`].
    pub fn as_line(&self) -> Option<Line> {
        if self.is_zero() || self.degree != 1 {
            return None;
        }
        let mut coeffs = [QTau::zero(), QTau::zero(), QTau::zero()];
        for (m, c) in &self.terms {
            let idx = if m.x == 1 { 0 } else if m.y == 1 { 1 } else { 2 };
            coeffs[idx] = c.clone();
        }
        Some(Line::new(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, QTau> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> QTau {
        self.terms.get(m).cloned().unwrap_or_else(QTau::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, rhs.degree, "sum of inhomogeneous degrees");
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(*m).or_insert_with(QTau::zero);
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            Self::zero()
        } else {
            Self { degree: self.degree, terms }
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-&QTau::one())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &QTau) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(m, v)| (*m, v * c)).collect();
        Self { degree: self.degree, terms }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut terms: BTreeMap<Monomial, QTau> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = Monomial::new(m1.x + m2.x, m1.y + m2.y, m1.z + m2.z);
                let entry = terms.entry(m).or_insert_with(QTau::zero);
                *entry = &*entry + &(c1 * c2);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            Self::zero()
        } else {
            Self { degree: self.degree + rhs.degree, terms }
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, at: &[QTau; 3]) -> QTau {
        let mut acc = QTau::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (coord, exp) in at.iter().zip([m.x, m.y, m.z]) {
                for _ in 0..exp {
                    term = &term * coord;
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Substitute the three polynomials of `subs` for x, y, z. All entries
    /// of `subs` must share one degree; the result has degree `deg(self)`
    /// times that.
    pub fn compose(&self, subs: &[Self; 3]) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let sub_deg = subs[0].degree;
        assert!(subs.iter().all(|s| !s.is_zero() && s.degree == sub_deg));
        let max = |f: fn(&Monomial) -> u32| self.terms.keys().map(f).max().unwrap();
        let powers = |p: &Self, top: u32| -> Vec<Self> {
            let mut v = vec![Self::one()];
            for e in 1..=top {
                let next = v[(e - 1) as usize].mul(p);
                v.push(next);
            }
            v
        };
        let xp = powers(&subs[0], max(|m| m.x));
        let yp = powers(&subs[1], max(|m| m.y));
        let zp = powers(&subs[2], max(|m| m.z));
        let mut acc: BTreeMap<Monomial, QTau> = BTreeMap::new();
        for (m, c) in &self.terms {
            let term = xp[m.x as usize]
                .mul(&yp[m.y as usize])
                .mul(&zp[m.z as usize]);
            for (tm, tc) in &term.terms {
                let entry = acc.entry(*tm).or_insert_with(QTau::zero);
                *entry = &*entry + &(tc * c);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        if acc.is_empty() {
            Self::zero()
        } else {
            Self { degree: self.degree * sub_deg, terms: acc }
        }
    }

    /// Total transform under a Cremona map: substitution of the map's
    /// quadratic components. Degree doubles.
    pub fn substitute(&self, map: &CremonaMap) -> Self {
        self.compose(map.components())
    }

    /// Multiplicity of the curve at a point: minimum total degree of the
    /// local expansion after a linear change of coordinates sending the
    /// point to (0:0:1) and dehomogenizing there.
    pub fn multiplicity_at(&self, p: &ProjPoint) -> u32 {
        assert!(!self.is_zero(), "multiplicity of the zero polynomial");
        let c = p.coords();
        let pivot = c.iter().position(|v| !v.is_zero()).expect("nonzero point");
        let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
        // New coordinates (u, v, w): original = u*e_s + v*e_t + w*p, so the
        // substituted polynomial has the point at (0:0:1).
        let mut subs = [Self::zero(), Self::zero(), Self::zero()];
        for (new_var, &orig) in others.iter().enumerate() {
            let mut coeffs = [QTau::zero(), QTau::zero(), QTau::zero()];
            coeffs[new_var] = QTau::one();
            coeffs[2] = c[orig].clone();
            subs[orig] = Self::linear(&coeffs);
        }
        subs[pivot] = Self::linear(&[QTau::zero(), QTau::zero(), c[pivot].clone()]);
        let local = self.compose(&subs);
        local.terms.keys().map(|m| m.x + m.y).min().unwrap()
    }

    /// Exact quotient by the k-th power of a linear form. Every division
    /// step must leave remainder zero.
    pub fn exact_divide_linear(&self, line: &Line, k: u32) -> Result<Self, PolyError> {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = divide_once(&cur, line)?;
        }
        Ok(cur)
    }

    /// Canonical representative of the projective class: divide by the
    /// leading coefficient, clear denominators, divide out the integer
    /// content. The leading coefficient becomes a positive integer; two
    /// polynomials agree up to nonzero scalar iff their canonical forms
    /// are equal.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.terms.values().next().unwrap().clone();
        let monic = self.scale(&lead.inv());
        let mut den = BigInt::one();
        for c in monic.terms.values() {
            den = den.lcm(c.a().denom());
            den = den.lcm(c.b().denom());
        }
        let cleared = monic.scale(&QTau::from_ints(den, 0));
        let mut content = BigInt::zero();
        for c in cleared.terms.values() {
            content = content.gcd(c.a().numer());
            content = content.gcd(c.b().numer());
        }
        let inv = QTau::new(
            BigRational::new(BigInt::one(), content),
            BigRational::zero(),
        );
        cleared.scale(&inv)
    }

    /// Coefficient-wise Galois conjugation (tau -> tau^2).
    pub fn galois(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.conj())).collect();
        Self { degree: self.degree, terms }
    }

    /// Term-list JSON: `[{"e":[i,j,k],"c":{"num_m":..,"num_n":..,"den":..}}]`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let den = c.a().denom().lcm(c.b().denom());
                let num_m = (c.a() * BigRational::from_integer(den.clone())).to_integer();
                let num_n = (c.b() * BigRational::from_integer(den.clone())).to_integer();
                let big = |v: &BigInt| -> Value {
                    Value::from(i64::try_from(v).expect("coefficient fits i64"))
                };
                json!({
                    "e": [m.x, m.y, m.z],
                    "c": { "num_m": big(&num_m), "num_n": big(&num_n), "den": big(&den) },
                })
            })
            .collect();
        Value::Array(terms)
    }
}

fn divide_once(f: &HomogPoly, line: &Line) -> Result<HomogPoly, PolyError> {
    if f.is_zero() {
        return Ok(HomogPoly::zero());
    }
    if f.degree == 0 {
        return Err(PolyError::NotDivisible);
    }
    let coeffs = line.coeffs();
    let lead_var = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let alpha = coeffs[lead_var].clone();
    let exp_of = |m: &Monomial| match lead_var {
        0 => m.x,
        1 => m.y,
        _ => m.z,
    };
    let shift = |m: &Monomial, var: usize, delta: i64| {
        let mut e = [m.x as i64, m.y as i64, m.z as i64];
        e[var] += delta;
        Monomial::new(e[0] as u32, e[1] as u32, e[2] as u32)
    };

    let mut work: BTreeMap<Monomial, QTau> = f.terms.clone();
    let mut quo: BTreeMap<Monomial, QTau> = BTreeMap::new();
    let top = work.keys().map(exp_of).max().unwrap();
    // Peel the quotient off layer by layer in the lead variable's exponent.
    for e in (1..=top).rev() {
        let layer: Vec<Monomial> =
            work.keys().filter(|m| exp_of(m) == e).copied().collect();
        for m in layer {
            let c = work.remove(&m).unwrap();
            let qm = shift(&m, lead_var, -1);
            let qc = &c / &alpha;
            for (var, coef) in coeffs.iter().enumerate() {
                if var == lead_var || coef.is_zero() {
                    continue;
                }
                let target = shift(&qm, var, 1);
                let entry = work.entry(target).or_insert_with(QTau::zero);
                *entry = &*entry - &(&qc * coef);
                if entry.is_zero() {
                    work.remove(&target);
                }
            }
            quo.insert(qm, qc);
        }
    }
    if !work.is_empty() {
        return Err(PolyError::NotDivisible);
    }
    Ok(HomogPoly { degree: f.degree - 1, terms: quo })
}

/// The three lines joining pairs of the map's base points, each paired with
/// the point the map contracts it to. The pairing is established by
/// evaluating the map on generic points of each line and checked against
/// the base-point set.
pub fn contracted_lines(map: &CremonaMap) -> [(Line, ProjPoint); 3] {
    let base = map.base_points();
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let mut out = Vec::with_capacity(3);
    for (a, b) in pairs {
        let line = Line::through(&base[a], &base[b]);
        let mut target: Option<ProjPoint> = None;
        let mut confirmed = 0;
        for s in 1..=4i64 {
            let scale = QTau::from_int(s);
            let coords = [
                &base[a].coords()[0] + &(&scale * &base[b].coords()[0]),
                &base[a].coords()[1] + &(&scale * &base[b].coords()[1]),
                &base[a].coords()[2] + &(&scale * &base[b].coords()[2]),
            ];
            let p = ProjPoint::new(coords);
            let image = map
                .apply_point(&p)
                .expect("generic point of a contracted line is not a base point");
            match &target {
                None => target = Some(image),
                Some(t) => {
                    assert_eq!(t, &image, "contracted line must map to one point");
                    confirmed += 1;
                }
            }
        }
        assert!(confirmed >= 2, "need at least three witnesses per line");
        let target = target.unwrap();
        assert!(
            base.iter().any(|q| q == &target),
            "contraction target must be a base point"
        );
        out.push((line, target));
    }
    out.try_into().unwrap()
}

/// Strict transform: total transform with the contracted-line factors
/// divided out, each to the multiplicity of the curve at that line's
/// contraction target. Result is canonicalized.
pub fn strict_transform(map: &CremonaMap, f: &HomogPoly) -> Result<HomogPoly, PolyError> {
    assert!(!f.is_zero(), "strict transform of the zero polynomial");
    let mut result = f.substitute(map);
    let mut removed = 0u32;
    for (line, target) in contracted_lines(map) {
        let k = f.multiplicity_at(&target);
        result = result.exact_divide_linear(&line, k)?;
        removed += k;
    }
    if result.degree() == 0 {
        return Err(PolyError::Contracted);
    }
    let expected = 2 * f.degree() - removed;
    if result.degree() != expected {
        return Err(PolyError::DegreeLaw { expected, got: result.degree() });
    }
    Ok(result.canonical())
}

/// The seed line x + y + z the whole diagram grows from.
pub fn seed_line() -> HomogPoly {
    HomogPoly::linear(&[QTau::one(), QTau::one(), QTau::one()])
}

/// Equation of the rational curve at diagram entry (i, j): the strict
/// transforms along the entry's leftmost parent path, applied to the seed
/// line. Canonical form.
pub fn curve_equation(i: u32, j: u32) -> Result<HomogPoly, CurveError> {
    let path = diagram::leftmost_path(i, j)?;
    let mut f = seed_line();
    for tag in path {
        f = strict_transform(&CremonaMap::new(tag), &f)?;
    }
    Ok(f.canonical())
}

/// Print order is the conventional one: z-degree ascending, x-degree
/// descending within it; coefficients as `a+b*tau` with minimal parentheses.
impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let monomial = render_monomial(m);
            let (sign, body) = render_coefficient(c, monomial.is_empty());
            if idx == 0 {
                if sign < 0 {
                    write!(f, "-")?;
                }
            } else if sign < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            write!(f, "{body}")?;
            if !body.is_empty() && !monomial.is_empty() {
                write!(f, "*")?;
            }
            write!(f, "{monomial}")?;
        }
        Ok(())
    }
}

fn render_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("x", m.x), ("y", m.y), ("z", m.z)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

// Returns (sign, rendered magnitude); empty magnitude means coefficient 1.
fn render_coefficient(c: &QTau, force_body: bool) -> (i8, String) {
    let a = c.a();
    let b = c.b();
    let ratio = |r: &BigRational| -> String {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    };
    // factor out -1 so the printed combination has a positive first part
    let (sign, a, b) = if a.is_negative() || (a.is_zero() && b.is_negative()) {
        (-1i8, -a, -b)
    } else {
        (1i8, a.clone(), b.clone())
    };
    let body = if b.is_zero() {
        if a.is_one() && !force_body {
            String::new()
        } else {
            ratio(&a)
        }
    } else if a.is_zero() {
        if b.is_one() {
            "tau".to_string()
        } else {
            format!("{}*tau", ratio(&b))
        }
    } else {
        let tau_part = if b.is_one() {
            "tau".to_string()
        } else if (-&b).is_one() {
            "-tau".to_string()
        } else if b.is_negative() {
            format!("-{}*tau", ratio(&-&b))
        } else {
            format!("{}*tau", ratio(&b))
        };
        let joiner = if tau_part.starts_with('-') { "" } else { "+" };
        format!("({}{joiner}{tau_part})", ratio(&a))
    };
    (sign, body)
}
