//! Vertical primitive disks in the genus-2 splittings coming from the
//! trefoil and figure-8 fibrations, and Farey graph utilities.
//!
//! # Conventions
//!
//! The fibre is a once-punctured torus F with π1(F) free on x, y, based in
//! the corner sector of the first quadrant. Twists act by
//!
//! ```text
//! T_a: x ↦ x, y ↦ xy        T_b: x ↦ y⁻¹x, y ↦ y
//! ```
//!
//! which fix the boundary loop x⁻¹y⁻¹xy and act on H1 by
//! T_a = [[1,1],[0,1]], T_b = [[1,0],[−1,1]]. A slope p/q names the
//! properly embedded arc of homology class q·x + p·y, so a mapping class
//! with homology matrix M moves slopes by `S·M·S`, S the coordinate swap.
//!
//! The vertical disk over an arc λ has boundary λ·φ(λ)⁻¹. Reading that
//! loop in the meridian basis (r, b) of the complementary handlebody gives
//! the boundary word: the disk is primitive iff the word is.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{PrimInt, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::{Sl2Matrix, Slope};
use crate::word_core::{cyclic_core, is_primitive, reduce, F2Word, Letter};

/// Largest bound accepted by [`vertical_primitive_scan`].
pub const MAX_SCAN_BOUND: i64 = 200;

/// Symbols used to print boundary words: r, r⁻¹, b, b⁻¹.
pub const RB_SYMBOLS: [char; 4] = ['r', 'R', 'b', 'B'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("0/0 is not a slope")]
    Degenerate,
    #[error("cannot parse slope {0:?}")]
    Parse(String),
    #[error("matrix has determinant {0}, expected 1")]
    Determinant(String),
    #[error("slope {slope} is outside the handled range for {mono}")]
    OutsideRange { mono: Monodromy, slope: String },
    #[error("bound {bound} exceeds the cap {cap}")]
    BoundTooLarge { bound: i64, cap: i64 },
}

/// Reduced fraction p/q with q ≥ 0; (1, 0) is ∞. Ordered as extended
/// reals with ∞ last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlopeOf<T> {
    p: T,
    q: T,
}

impl<T: PrimInt + Signed> SlopeOf<T> {
    pub fn new(p: T, q: T) -> Result<SlopeOf<T>, SlopeError> {
        if p.is_zero() && q.is_zero() {
            return Err(SlopeError::Degenerate);
        }
        let g = gcd(p.abs(), q.abs());
        let (mut p, mut q) = (p / g, q / g);
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Ok(SlopeOf { p, q })
    }

    pub fn infinity() -> SlopeOf<T> {
        SlopeOf { p: T::one(), q: T::zero() }
    }

    pub fn integer(n: T) -> SlopeOf<T> {
        SlopeOf { p: n, q: T::one() }
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    /// Farey adjacency: |ps − qr| = 1.
    pub fn adjacent(&self, other: &SlopeOf<T>) -> bool {
        (self.p * other.q - self.q * other.p).abs() == T::one()
    }

    /// `self < other` as extended reals with ∞ largest.
    pub fn less_than(&self, other: &SlopeOf<T>) -> bool {
        match (self.is_infinite(), other.is_infinite()) {
            (_, true) => !self.is_infinite(),
            (true, false) => false,
            _ => self.p * other.q < other.p * self.q,
        }
    }
}

impl<T: PrimInt + Signed> Ord for SlopeOf<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self == other {
            std::cmp::Ordering::Equal
        } else if self.less_than(other) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    }
}

impl<T: PrimInt + Signed> PartialOrd for SlopeOf<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn gcd<T: PrimInt>(mut a: T, mut b: T) -> T {
    while !b.is_zero() {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl<T: PrimInt + Signed + fmt::Display> fmt::Display for SlopeOf<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            f.write_str("inf")
        } else if self.q.is_one() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Slope, SlopeError> {
        let t = s.trim();
        if matches!(t, "inf" | "∞" | "oo") {
            return Ok(Slope::infinity());
        }
        let err = || SlopeError::Parse(s.to_string());
        match t.split_once('/') {
            Some((a, b)) => Slope::new(a.trim().parse().map_err(|_| err())?, b.trim().parse().map_err(|_| err())?),
            None => Ok(Slope::integer(t.parse().map_err(|_| err())?)),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Slope, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer matrix [[a, b], [c, d]] of determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sl2Of<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: PrimInt + Signed + fmt::Display> Sl2Of<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Sl2Of<T>, SlopeError> {
        let det = a * d - b * c;
        if det != T::one() {
            return Err(SlopeError::Determinant(det.to_string()));
        }
        Ok(Sl2Of { a, b, c, d })
    }

    pub fn identity() -> Sl2Of<T> {
        Sl2Of { a: T::one(), b: T::zero(), c: T::zero(), d: T::one() }
    }

    pub fn mul(&self, o: &Sl2Of<T>) -> Sl2Of<T> {
        Sl2Of {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Sl2Of<T> {
        Sl2Of { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> Sl2Of<T> {
        Sl2Of { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn trace(&self) -> T {
        self.a + self.d
    }

    pub fn pow(&self, n: i64) -> Sl2Of<T> {
        let base = if n < 0 { self.inverse() } else { *self };
        (0..n.unsigned_abs()).fold(Sl2Of::identity(), |acc, _| acc.mul(&base))
    }

    /// Column action on (p, q), projectivized.
    pub fn act(&self, s: &SlopeOf<T>) -> SlopeOf<T> {
        SlopeOf::new(self.a * s.p + self.b * s.q, self.c * s.p + self.d * s.q).expect("invertible")
    }

    /// Conjugate by the coordinate swap.
    pub fn swapped(&self) -> Sl2Of<T> {
        Sl2Of { a: self.d, b: self.c, c: self.b, d: self.a }
    }
}

impl fmt::Display for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Monodromy {
    Trefoil,
    Fig8,
}

impl fmt::Display for Monodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monodromy::Trefoil => "trefoil",
            Monodromy::Fig8 => "fig8",
        })
    }
}

impl FromStr for Monodromy {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Monodromy, SlopeError> {
        match s {
            "trefoil" => Ok(Monodromy::Trefoil),
            "fig8" | "figure8" => Ok(Monodromy::Fig8),
            other => Err(SlopeError::Parse(other.to_string())),
        }
    }
}

pub fn twist_a() -> Sl2Matrix {
    Sl2Matrix { a: 1, b: 1, c: 0, d: 1 }
}

pub fn twist_b() -> Sl2Matrix {
    Sl2Matrix { a: 1, b: 0, c: -1, d: 1 }
}

impl Monodromy {
    /// Action on H1(F): T_aT_b or T_aT_b⁻¹.
    pub fn matrix(self) -> Sl2Matrix {
        match self {
            Monodromy::Trefoil => twist_a().mul(&twist_b()),
            Monodromy::Fig8 => twist_a().mul(&twist_b().inverse()),
        }
    }

    /// Action on slopes p/q.
    pub fn slope_action(self) -> Sl2Matrix {
        self.matrix().swapped()
    }

    fn automorphism(self) -> [F2Word; 2] {
        let x = F2Word::letter(Letter::X);
        let y = F2Word::letter(Letter::Y);
        let ta = [x.clone(), x.mul(&y)];
        let (tb, tb_inv) = ([y.inverse().mul(&x), y.clone()], [y.mul(&x), y.clone()]);
        let inner = match self {
            Monodromy::Trefoil => tb,
            Monodromy::Fig8 => tb_inv,
        };
        // T_b (or its inverse) acts first
        [inner[0].substitute(&ta), inner[1].substitute(&ta)]
    }

    /// Meridian basis of the complementary handlebody, written in r = x1 and b = x2.
    fn meridian_basis(self) -> [F2Word; 2] {
        let w = |s: &str| F2Word::parse(s).unwrap();
        match self {
            Monodromy::Trefoil => [w("Xy"), w("x")],
            Monodromy::Fig8 => [w("XY"), w("yxy")],
        }
    }
}

pub fn slope_orbit(m: &Sl2Matrix, s: &Slope, steps: usize) -> Vec<Slope> {
    let mut out = vec![*s];
    for _ in 0..steps {
        out.push(m.act(out.last().unwrap()));
    }
    out
}

fn sector(dx: i64, dy: i64, nx: i64, ny: i64) -> usize {
    let dx = if dx == 0 { nx } else { dx };
    let dy = if dy == 0 { ny } else { dy };
    match (dx > 0, dy > 0) {
        (true, true) => 0,
        (false, true) => 1,
        (false, false) => 2,
        (true, false) => 3,
    }
}

/// Letters crossed when walking counterclockwise around the puncture from
/// corner sector `s` to sector `t`.
fn corner_path(mut s: usize, t: usize) -> Vec<Letter> {
    const CCW: [Letter; 4] = [Letter::XInv, Letter::YInv, Letter::X, Letter::Y];
    let mut out = Vec::new();
    while s != t {
        out.push(CCW[s]);
        s = (s + 1) % 4;
    }
    out
}

/// Loop at the base corner following the straight arc of homology (a, b).
fn arc_loop(a: i64, b: i64) -> F2Word {
    let (nx, ny) = (-b, a);
    let start = sector(a, b, nx, ny);
    let end = sector(-a, -b, nx, ny);
    let xl = if a > 0 { Letter::X } else { Letter::XInv };
    let yl = if b > 0 { Letter::Y } else { Letter::YInv };
    // interior crossings with the lines x ∈ Z and y ∈ Z, ordered along the arc
    let mut events: Vec<(i64, i64, Letter)> = (1..a.abs()).map(|i| (i, a.abs(), xl)).collect();
    events.extend((1..b.abs()).map(|j| (j, b.abs(), yl)));
    events.sort_by(|u, v| (u.0 * v.1).cmp(&(v.0 * u.1)));
    let mut letters = corner_path(0, start);
    letters.extend(events.into_iter().map(|e| e.2));
    letters.extend(corner_path(end, 0));
    reduce(letters)
}

/// Boundary word of the vertical disk over slope `s`, for any slope.
pub fn arc_boundary_word(mono: Monodromy, s: &Slope) -> F2Word {
    let ell = arc_loop(s.q(), s.p());
    let phi = mono.automorphism();
    let loop_word = cyclic_core(&ell.mul(&ell.substitute(&phi).inverse()));
    cyclic_core(&loop_word.substitute(&mono.meridian_basis()))
}

fn in_handled_range(mono: Monodromy, s: &Slope) -> bool {
    let (p, q) = (s.p(), s.q());
    match mono {
        // (0, 1) plus the exceptional slopes 0, 1, ∞
        Monodromy::Trefoil => q == 0 || (0..=q).contains(&p),
        // [1, ∞] and [−1, 0]
        Monodromy::Fig8 => q == 0 || p >= q || (-q..=0).contains(&p),
    }
}

/// Boundary word for slopes in the fundamental ranges: (0,1) and 0, 1, ∞ for
/// the trefoil; [1,∞] and [−1,0] for the figure-8.
pub fn boundary_word(mono: Monodromy, s: &Slope) -> Result<F2Word, SlopeError> {
    if !in_handled_range(mono, s) {
        return Err(SlopeError::OutsideRange { mono, slope: s.to_string() });
    }
    Ok(arc_boundary_word(mono, s))
}

/// Moves `s` into the handled range by the slope action of the monodromy.
pub fn normalize(mono: Monodromy, s: &Slope) -> Slope {
    let m = mono.slope_action();
    let mi = m.inverse();
    let mut s = *s;
    match mono {
        Monodromy::Trefoil => {
            if s.less_than(&Slope::integer(0)) {
                s = mi.act(&s);
            } else if Slope::integer(1).less_than(&s) && !s.is_infinite() {
                s = m.act(&s);
            }
        }
        Monodromy::Fig8 => {
            // the fixed points are the roots of s² + s − 1; positive slopes
            // are pushed away from the attracting one, negative ones toward it
            while !in_handled_range(mono, &s) {
                s = if Slope::integer(0).less_than(&s) { mi.act(&s) } else { m.act(&s) };
            }
        }
    }
    s
}

pub fn is_vertical_primitive(mono: Monodromy, s: &Slope) -> bool {
    let t = normalize(mono, s);
    is_primitive(&boundary_word(mono, &t).expect("normalized")).primitive
}

/// Every slope with |p|, |q| ≤ bound, plus ∞.
pub fn slopes_within(bound: i64) -> Vec<Slope> {
    let mut out = vec![Slope::infinity()];
    for q in 1..=bound {
        for p in -bound..=bound {
            if gcd(p.abs(), q) == 1 {
                out.push(Slope { p, q });
            }
        }
    }
    out
}

pub fn vertical_primitive_scan(mono: Monodromy, bound: i64) -> Result<BTreeSet<Slope>, SlopeError> {
    if bound > MAX_SCAN_BOUND {
        return Err(SlopeError::BoundTooLarge { bound, cap: MAX_SCAN_BOUND });
    }
    Ok(slopes_within(bound.max(0))
        .into_par_iter()
        .filter(|s| is_vertical_primitive(mono, s))
        .collect())
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// Graph distance in the Farey graph. The first slope is moved to ∞; the
/// geodesic then stays in the strip of triangles crossed by the vertical
/// line through the image of the second slope.
pub fn farey_distance(s1: &Slope, s2: &Slope) -> usize {
    if s1 == s2 {
        return 0;
    }
    // P⁻¹ = [[p, u], [q, v]] with pv − qu = 1 sends ∞ to s1
    let (p, q) = (s1.p(), s1.q());
    let (u, v) = bezout(p, q);
    let back = Sl2Matrix { a: p, b: u, c: q, d: v };
    let x = back.inverse().act(s2);
    if x.q() == 1 {
        return 1;
    }
    let n = floor_div(x.p(), x.q());
    let key = |s: &Slope| (s.p(), s.q());
    let mut adj: HashMap<(i64, i64), Vec<(i64, i64)>> = HashMap::new();
    let mut edge = |a: Slope, b: Slope| {
        adj.entry(key(&a)).or_default().push(key(&b));
        adj.entry(key(&b)).or_default().push(key(&a));
    };
    let inf = Slope::infinity();
    let (mut l, mut r) = (Slope::integer(n), Slope::integer(n + 1));
    edge(inf, l);
    edge(inf, r);
    edge(l, r);
    loop {
        let m = Slope { p: l.p() + r.p(), q: l.q() + r.q() };
        edge(l, m);
        edge(m, r);
        if m == x {
            break;
        }
        if x.less_than(&m) {
            r = m;
        } else {
            l = m;
        }
    }
    let mut dist: HashMap<(i64, i64), usize> = HashMap::from([(key(&inf), 0)]);
    let mut queue = VecDeque::from([key(&inf)]);
    while let Some(a) = queue.pop_front() {
        if a == key(&x) {
            return dist[&a];
        }
        for &b in &adj[&a] {
            if !dist.contains_key(&b) {
                dist.insert(b, dist[&a] + 1);
                queue.push_back(b);
            }
        }
    }
    unreachable!("target lies on the ladder")
}

/// (u, v) with p·v − q·u = 1 for coprime p, q.
fn bezout(p: i64, q: i64) -> (i64, i64) {
    // extended Euclid on (p, q): p·s + q·t = 1, so v = s, u = −t
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (p, q, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let k = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if r0 < 0 {
        s0 = -s0;
        t0 = -t0;
    }
    (-t0, s0)
}

/// Farey subgraph spanned by a set of slopes, as Graphviz text.
pub fn farey_dot(name: &str, slopes: &BTreeSet<Slope>) -> String {
    let v: Vec<&Slope> = slopes.iter().collect();
    let mut out = format!("graph {name} {{\n");
    for (i, s) in v.iter().enumerate() {
        out.push_str(&format!("  v{i} [label=\"{s}\"];\n"));
    }
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i].adjacent(v[j]) {
                out.push_str(&format!("  v{i} -- v{j};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}
