//! Recognizing S³ and the fibered knot from a genus-1 monodromy.
//!
//! Mapping classes of the once-punctured torus are words in the twists
//! T_a, T_b and the boundary twist T_∂ = (T_aT_b)⁶. The homology action
//! kills exactly the central subgroup generated by T_∂, and the exponent
//! sum (T_∂ counting 12) is a homomorphism to Z, so a word is conjugate
//! to `model · T_∂ⁿ` iff its matrix is SL2(Z)-conjugate to the model's and
//! its exponent sum exceeds the model's by 12n.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::slope_lab::{twist_a, twist_b, Sl2Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistLetter {
    Ta,
    TaInv,
    Tb,
    TbInv,
    Boundary,
    BoundaryInv,
}

impl TwistLetter {
    pub const ALL: [TwistLetter; 6] = [
        TwistLetter::Ta,
        TwistLetter::TaInv,
        TwistLetter::Tb,
        TwistLetter::TbInv,
        TwistLetter::Boundary,
        TwistLetter::BoundaryInv,
    ];

    pub fn to_char(self) -> char {
        match self {
            TwistLetter::Ta => 't',
            TwistLetter::TaInv => 'T',
            TwistLetter::Tb => 'u',
            TwistLetter::TbInv => 'U',
            TwistLetter::Boundary => 'z',
            TwistLetter::BoundaryInv => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<TwistLetter> {
        TwistLetter::ALL.into_iter().find(|l| l.to_char() == c)
    }

    pub fn inverse(self) -> TwistLetter {
        match self {
            TwistLetter::Ta => TwistLetter::TaInv,
            TwistLetter::TaInv => TwistLetter::Ta,
            TwistLetter::Tb => TwistLetter::TbInv,
            TwistLetter::TbInv => TwistLetter::Tb,
            TwistLetter::Boundary => TwistLetter::BoundaryInv,
            TwistLetter::BoundaryInv => TwistLetter::Boundary,
        }
    }

    fn matrix(self) -> Sl2Matrix {
        match self {
            TwistLetter::Ta => twist_a(),
            TwistLetter::TaInv => twist_a().inverse(),
            TwistLetter::Tb => twist_b(),
            TwistLetter::TbInv => twist_b().inverse(),
            TwistLetter::Boundary | TwistLetter::BoundaryInv => Sl2Matrix::identity(),
        }
    }

    fn exponent(self) -> i64 {
        match self {
            TwistLetter::Ta | TwistLetter::Tb => 1,
            TwistLetter::TaInv | TwistLetter::TbInv => -1,
            TwistLetter::Boundary => 12,
            TwistLetter::BoundaryInv => -12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("unknown twist letter {symbol:?} at position {position} (use t T u U z Z)")]
    UnknownLetter { symbol: char, position: usize },
    #[error("exponent difference {difference} is not a multiple of 12")]
    NonIntegral { difference: i64 },
    #[error("homology sphere with matrix {0} matches none of the genus-1 models")]
    OutsideTable(String),
}

/// Word in T_a (`t`), T_b (`u`), T_∂ (`z`) and their inverses (capitals).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonodromyWord(pub Vec<TwistLetter>);

impl MonodromyWord {
    pub fn letters(&self) -> &[TwistLetter] {
        &self.0
    }

    pub fn concat(&self, other: &MonodromyWord) -> MonodromyWord {
        MonodromyWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn inverse(&self) -> MonodromyWord {
        MonodromyWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, n: usize) -> MonodromyWord {
        MonodromyWord(self.0.repeat(n))
    }

    pub fn exponent_sum(&self) -> i64 {
        self.0.iter().map(|l| l.exponent()).sum()
    }
}

impl FromStr for MonodromyWord {
    type Err = RecognizeError;

    fn from_str(s: &str) -> Result<MonodromyWord, RecognizeError> {
        s.chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(position, symbol)| TwistLetter::from_char(symbol).ok_or(RecognizeError::UnknownLetter { symbol, position }))
            .collect::<Result<Vec<_>, _>>()
            .map(MonodromyWord)
    }
}

impl fmt::Display for MonodromyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        self.0.iter().try_for_each(|l| write!(f, "{}", l.to_char()))
    }
}

pub fn mcg_matrix(w: &MonodromyWord) -> Sl2Matrix {
    w.0.iter().fold(Sl2Matrix::identity(), |m, l| m.mul(&l.matrix()))
}

pub fn is_homology_sphere(w: &MonodromyWord) -> bool {
    (2 - mcg_matrix(w).trace()).abs() == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Figure8,
    Trefoil,
    MirrorTrefoil,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Figure8, Model::Trefoil, Model::MirrorTrefoil];

    pub fn word(self) -> MonodromyWord {
        let text = match self {
            Model::Figure8 => "tU",
            Model::Trefoil => "tu",
            Model::MirrorTrefoil => "UT",
        };
        text.parse().expect("model words use the twist alphabet")
    }

    pub fn matrix(self) -> Sl2Matrix {
        mcg_matrix(&self.word())
    }

    pub fn knot(self) -> Knot {
        match self {
            Model::Figure8 => Knot::Figure8,
            Model::Trefoil | Model::MirrorTrefoil => Knot::Trefoil,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Knot {
    Figure8,
    Trefoil,
}

impl Knot {
    /// Δ''(1) for Δ = 3 − x − x⁻¹ and Δ = x + x⁻¹ − 1.
    pub fn alexander_second_derivative(self) -> i64 {
        match self {
            Knot::Figure8 => -2,
            Knot::Trefoil => 2,
        }
    }
}

/// The n with w conjugate to `model · T_∂ⁿ`, assuming the matrices match.
pub fn central_exponent(w: &MonodromyWord, model: Model) -> Result<i64, RecognizeError> {
    let difference = w.exponent_sum() - model.word().exponent_sum();
    if difference % 12 != 0 {
        return Err(RecognizeError::NonIntegral { difference });
    }
    Ok(difference / 12)
}

/// |λ| after n boundary twists; only the magnitude is convention free.
pub fn casson_obstruction(knot: Knot, n: i64) -> i64 {
    n.abs() * knot.alexander_second_derivative().abs() / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotS3Reason {
    Homology { trace: i64 },
    Casson { n: i64, lambda: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recognition {
    Figure8Knot,
    TrefoilClass,
    MirrorTrefoilClass,
    NotS3(NotS3Reason),
}

pub fn recognize(w: &MonodromyWord) -> Result<Recognition, RecognizeError> {
    let m = mcg_matrix(w);
    if !is_homology_sphere(w) {
        return Ok(Recognition::NotS3(NotS3Reason::Homology { trace: m.trace() }));
    }
    let model = Model::ALL
        .into_iter()
        .find(|md| sl2_conjugacy(&md.matrix(), &m).is_some())
        .ok_or_else(|| RecognizeError::OutsideTable(m.to_string()))?;
    let n = central_exponent(w, model)?;
    if n != 0 {
        let lambda = casson_obstruction(model.knot(), n);
        return Ok(Recognition::NotS3(NotS3Reason::Casson { n, lambda }));
    }
    Ok(match model {
        Model::Figure8 => Recognition::Figure8Knot,
        Model::Trefoil => Recognition::TrefoilClass,
        Model::MirrorTrefoil => Recognition::MirrorTrefoilClass,
    })
}

/// Flat JSON shape used by the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionReport {
    pub verdict: String,
    pub trace: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub central_exponent: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub casson: Option<i64>,
}

impl RecognitionReport {
    pub fn new(w: &MonodromyWord, r: &Recognition) -> RecognitionReport {
        let trace = mcg_matrix(w).trace();
        let (verdict, n, casson) = match r {
            Recognition::Figure8Knot => ("figure8", Some(0), None),
            Recognition::TrefoilClass => ("trefoil", Some(0), None),
            Recognition::MirrorTrefoilClass => ("mirror_trefoil", Some(0), None),
            Recognition::NotS3(NotS3Reason::Homology { .. }) => ("not_s3_homology", None, None),
            Recognition::NotS3(NotS3Reason::Casson { n, lambda }) => ("not_s3_casson", Some(*n), Some(*lambda)),
        };
        RecognitionReport { verdict: verdict.to_string(), trace, central_exponent: n, casson }
    }
}

// ---------------------------------------------------------------------------
// SL2(Z) conjugacy

fn r_mat() -> Sl2Matrix {
    twist_a()
}

fn l_mat() -> Sl2Matrix {
    Sl2Matrix { a: 1, b: 0, c: 1, d: 1 }
}

/// Sign of A + B·√D for D > 0 not a perfect square.
fn surd_sign(a: i128, b: i128, d: i128) -> Ordering {
    match (a.cmp(&0), b.cmp(&0)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        (Ordering::Greater, _) => (a * a).cmp(&(b * b * d)),
        _ => (b * b * d).cmp(&(a * a)),
    }
}

/// (P + √D)/Q as a quadratic irrational with Q | D − P².
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Surd {
    p: i128,
    q: i128,
}

impl Surd {
    fn floor(&self, d: i128) -> i128 {
        let s = isqrt(d);
        if self.q > 0 {
            Integer::div_floor(&(self.p + s), &self.q)
        } else {
            Integer::div_floor(&(-self.p - s - 1), &(-self.q))
        }
    }

    /// Value above `k` (as a signed comparison of (P − kQ + √D)/Q).
    fn above(&self, k: i128, d: i128) -> bool {
        surd_sign(self.p - k * self.q, 1, d) == self.q.cmp(&0)
    }

    /// Galois conjugate (P − √D)/Q above `k`.
    fn conjugate_above(&self, k: i128, d: i128) -> bool {
        surd_sign(self.p - k * self.q, -1, d) == self.q.cmp(&0)
    }

    fn is_reduced(&self, d: i128) -> bool {
        self.above(1, d) && !self.conjugate_above(0, d) && self.conjugate_above(-1, d)
    }

    /// z ↦ 1/(z − a).
    fn step(&self, a: i128, d: i128) -> Surd {
        let p = a * self.q - self.p;
        Surd { p, q: (d - p * p) / self.q }
    }
}

fn isqrt(n: i128) -> i128 {
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn least_rotation<T: Ord>(w: &[T]) -> usize {
    (0..w.len())
        .min_by(|&i, &j| w[i..].iter().chain(&w[..i]).cmp(w[j..].iter().chain(&w[..j])))
        .unwrap_or(0)
}

fn word_matrix(w: &[bool]) -> Sl2Matrix {
    w.iter().fold(Sl2Matrix::identity(), |m, &r| m.mul(&if r { r_mat() } else { l_mat() }))
}

/// Hyperbolic with trace > 2: returns (C, Q) with Q·m·Q⁻¹ = C, C the least
/// rotation of the positive R/L word of the class.
fn hyperbolic_form(m: &Sl2Matrix) -> (Sl2Matrix, Sl2Matrix) {
    let t = m.trace() as i128;
    let d = t * t - 4;
    // attracting fixed point ((a − d) + √D)/(2c)
    let mut z = Surd { p: (m.a - m.d) as i128, q: 2 * m.c as i128 };
    let mut h = Sl2Matrix::identity();
    let mut steps = 0usize;
    while !(z.is_reduced(d) && steps.is_multiple_of(2)) {
        let a = z.floor(d);
        h = h.mul(&Sl2Matrix { a: a as i64, b: 1, c: 1, d: 0 });
        z = z.step(a, d);
        steps += 1;
    }
    // n fixes a reduced irrational with eigenvalue above 1, so it is a
    // positive word in R and L
    let mut n = h.inverse().mul(m).mul(&h);
    let mut word = Vec::new();
    while n != Sl2Matrix::identity() {
        debug_assert!(n.a >= 0 && n.b >= 0 && n.c >= 0 && n.d >= 0);
        if n.a >= n.c && n.b >= n.d {
            word.push(true);
            n = r_mat().inverse().mul(&n);
        } else {
            word.push(false);
            n = l_mat().inverse().mul(&n);
        }
    }
    let r = least_rotation(&word);
    let u = word_matrix(&word[..r]);
    let mut rotated = word[r..].to_vec();
    rotated.extend_from_slice(&word[..r]);
    (word_matrix(&rotated), h.mul(&u).inverse())
}

fn bezout(p: i64, q: i64) -> (i64, i64) {
    let e = p.extended_gcd(&q);
    let sign = e.gcd.signum();
    (e.x * sign, e.y * sign)
}

/// Parabolic with trace 2: (±[[1,n],[0,1]], Q).
fn parabolic_form(m: &Sl2Matrix) -> (Sl2Matrix, Sl2Matrix) {
    let (v1, v2) = if m.b != 0 || m.a != 1 { (m.b, 1 - m.a) } else { (m.d - 1, -m.c) };
    let g = v1.gcd(&v2);
    let (v1, v2) = (v1 / g, v2 / g);
    // complete (v1, v2) to a basis: v1·y − v2·x = 1 with u = (x, y)
    let (s, t) = bezout(v1, v2);
    let p = Sl2Matrix { a: v1, b: -t, c: v2, d: s };
    let q = p.inverse();
    (q.mul(m).mul(&p), q)
}

/// Point (A + i·E·√B)/C of the upper half plane, C > 0, E > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct HalfPlanePoint {
    a: i128,
    e: i128,
    c: i128,
}

impl HalfPlanePoint {
    fn normalized(a: i128, e: i128, c: i128) -> HalfPlanePoint {
        let g = a.gcd(&e).gcd(&c);
        HalfPlanePoint { a: a / g, e: e / g, c: c / g }
    }

    fn translate(&self, k: i128) -> HalfPlanePoint {
        HalfPlanePoint::normalized(self.a + k * self.c, self.e, self.c)
    }

    /// z ↦ −1/z.
    fn invert(&self, b: i128) -> HalfPlanePoint {
        HalfPlanePoint::normalized(-self.a * self.c, self.e * self.c, self.a * self.a + self.e * self.e * b)
    }

    fn norm_below_one(&self, b: i128) -> bool {
        self.a * self.a + self.e * self.e * b < self.c * self.c
    }
}

/// Elliptic: (C, Q) with C the unique stabilizer element of i or ρ.
fn elliptic_form(m: &Sl2Matrix) -> (Sl2Matrix, Sl2Matrix) {
    let t = m.trace() as i128;
    let b = 4 - t * t;
    let (a0, c0) = ((m.a - m.d) as i128, 2 * m.c as i128);
    let mut z = if c0 > 0 { HalfPlanePoint::normalized(a0, 1, c0) } else { HalfPlanePoint::normalized(-a0, 1, -c0) };
    let mut q = Sl2Matrix::identity();
    let s_mat = Sl2Matrix { a: 0, b: -1, c: 1, d: 0 };
    loop {
        let k = Integer::div_floor(&(2 * z.a + z.c), &(2 * z.c));
        if k != 0 {
            z = z.translate(-k);
            q = r_mat().pow(-(k as i64)).mul(&q);
        }
        if z.norm_below_one(b) {
            z = z.invert(b);
            q = s_mat.mul(&q);
        } else {
            break;
        }
    }
    // ρ + 1 and ρ are both reduced; prefer ρ
    if 2 * z.a == z.c {
        q = r_mat().inverse().mul(&q);
    }
    (q.mul(m).mul(&q.inverse()), q)
}

/// Canonical representative of the conjugacy class and a Q with Q·m·Q⁻¹ = C.
pub fn sl2_canonical(m: &Sl2Matrix) -> (Sl2Matrix, Sl2Matrix) {
    let t = m.trace();
    let id = Sl2Matrix::identity();
    if *m == id || *m == id.neg() {
        return (*m, id);
    }
    match t {
        t if t > 2 => hyperbolic_form(m),
        t if t < -2 => {
            let (c, q) = hyperbolic_form(&m.neg());
            (c.neg(), q)
        }
        2 => parabolic_form(m),
        -2 => {
            let (c, q) = parabolic_form(&m.neg());
            (c.neg(), q)
        }
        _ => elliptic_form(m),
    }
}

/// P with P·m1·P⁻¹ = m2, if one exists in SL2(Z).
pub fn sl2_conjugacy(m1: &Sl2Matrix, m2: &Sl2Matrix) -> Option<Sl2Matrix> {
    if m1.trace() != m2.trace() {
        return None;
    }
    let (c1, q1) = sl2_canonical(m1);
    let (c2, q2) = sl2_canonical(m2);
    (c1 == c2).then(|| q2.inverse().mul(&q1))
}
