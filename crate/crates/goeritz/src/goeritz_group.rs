//! Exact arithmetic in the genus-2 Goeritz group.
//!
//! The group is the amalgam `A *_C B` with
//! `A = ⟨α,γ,β⟩ ≅ (Z2×Z2)⋊Z`, `B = ⟨α,γ,δ⟩ ≅ Z2×S3` and `C = ⟨α,γ⟩`,
//! presented by the relators
//!
//! ```text
//! α², γ², δ³, (γδ)², [α,β], [α,γ], [α,δ], βγβ⁻¹γα
//! ```
//!
//! α is central. Inside `B` the involution γ inverts δ; inside `A`
//! conjugation by β sends γ to αγ. Every element has a unique normal form
//! `α^x γ^y · s1 s2 … sk` whose syllables alternate between `βⁿ` (n ≠ 0)
//! and `δᵈ` (d ∈ {1, 2}). Products are formed by pushing the edge-group
//! head of the right factor leftwards through the syllables of the left
//! factor:
//!
//! ```text
//! βⁿ·α^x γ^y = α^{x+ny} γ^y · βⁿ        δᵈ·α^x γ^y = α^x γ^y · δ^{(-1)^y d}
//! ```
//!
//! followed by merging at the junction.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GLetter {
    Alpha,
    Beta,
    BetaInv,
    Gamma,
    Delta,
    DeltaInv,
}

impl GLetter {
    pub fn to_char(self) -> char {
        match self {
            GLetter::Alpha => 'a',
            GLetter::Beta => 'b',
            GLetter::BetaInv => 'B',
            GLetter::Gamma => 'g',
            GLetter::Delta => 'd',
            GLetter::DeltaInv => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<GLetter> {
        Some(match c {
            'a' => GLetter::Alpha,
            'b' => GLetter::Beta,
            'B' => GLetter::BetaInv,
            'g' => GLetter::Gamma,
            'd' => GLetter::Delta,
            'D' => GLetter::DeltaInv,
            _ => return None,
        })
    }

    pub fn inverse(self) -> GLetter {
        match self {
            GLetter::Beta => GLetter::BetaInv,
            GLetter::BetaInv => GLetter::Beta,
            GLetter::Delta => GLetter::DeltaInv,
            GLetter::DeltaInv => GLetter::Delta,
            other => other,
        }
    }

    pub fn element(self) -> NormalForm {
        match self {
            GLetter::Alpha => NormalForm::head(true, false),
            GLetter::Gamma => NormalForm::head(false, true),
            GLetter::Beta => NormalForm::syllable(Syllable::Beta { exp: 1 }),
            GLetter::BetaInv => NormalForm::syllable(Syllable::Beta { exp: -1 }),
            GLetter::Delta => NormalForm::syllable(Syllable::Delta { exp: 1 }),
            GLetter::DeltaInv => NormalForm::syllable(Syllable::Delta { exp: 2 }),
        }
    }
}

pub const ALL_LETTERS: [GLetter; 6] = [
    GLetter::Alpha,
    GLetter::Beta,
    GLetter::BetaInv,
    GLetter::Gamma,
    GLetter::Delta,
    GLetter::DeltaInv,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown character {symbol:?} at position {position}")]
    UnknownCharacter { symbol: char, position: usize },
}

/// A word over α, β, β⁻¹, γ, δ, δ⁻¹, written `a b B g d D`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoeritzWord(pub Vec<GLetter>);

impl GoeritzWord {
    pub fn parse(text: &str) -> Result<GoeritzWord, ParseError> {
        let mut letters = Vec::new();
        for (position, symbol) in text.chars().enumerate() {
            if symbol.is_whitespace() {
                continue;
            }
            letters.push(GLetter::from_char(symbol).ok_or(ParseError::UnknownCharacter { symbol, position })?);
        }
        Ok(GoeritzWord(letters))
    }

    pub fn inverse(&self) -> GoeritzWord {
        GoeritzWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &GoeritzWord) -> GoeritzWord {
        GoeritzWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GoeritzWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// The edge-group part α^a γ^g.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Head {
    pub a: bool,
    pub g: bool,
}

impl Head {
    pub const ALL: [Head; 4] = [
        Head { a: false, g: false },
        Head { a: true, g: false },
        Head { a: false, g: true },
        Head { a: true, g: true },
    ];

    fn mul(self, other: Head) -> Head {
        Head { a: self.a ^ other.a, g: self.g ^ other.g }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "gen")]
pub enum Syllable {
    #[serde(rename = "b")]
    Beta { exp: i64 },
    #[serde(rename = "d")]
    Delta { exp: u8 },
}

impl Syllable {
    fn is_beta(self) -> bool {
        matches!(self, Syllable::Beta { .. })
    }

    fn inverse(self) -> Syllable {
        match self {
            Syllable::Beta { exp } => Syllable::Beta { exp: -exp },
            Syllable::Delta { exp } => Syllable::Delta { exp: 3 - exp },
        }
    }

    /// Rewrites `self · h` as `h' · self'`.
    fn push_head(self, h: Head) -> (Head, Syllable) {
        match self {
            Syllable::Beta { exp } => {
                let flip = h.g && exp.rem_euclid(2) == 1;
                (Head { a: h.a ^ flip, g: h.g }, self)
            }
            Syllable::Delta { exp } => (h, if h.g { Syllable::Delta { exp: 3 - exp } } else { self }),
        }
    }

    /// Product of two same-type syllables, `None` when it is trivial.
    fn merge(self, other: Syllable) -> Option<Syllable> {
        match (self, other) {
            (Syllable::Beta { exp: a }, Syllable::Beta { exp: b }) => (a + b != 0).then_some(Syllable::Beta { exp: a + b }),
            (Syllable::Delta { exp: a }, Syllable::Delta { exp: b }) => {
                let d = (a + b) % 3;
                (d != 0).then_some(Syllable::Delta { exp: d })
            }
            _ => unreachable!("merge of syllables from different factors"),
        }
    }
}

/// Canonical normal form of a group element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    head: Head,
    syllables: Vec<Syllable>,
}

impl NormalForm {
    pub fn identity() -> NormalForm {
        NormalForm::default()
    }

    pub fn head(a: bool, g: bool) -> NormalForm {
        NormalForm { head: Head { a, g }, syllables: Vec::new() }
    }

    pub fn from_head(h: Head) -> NormalForm {
        NormalForm { head: h, syllables: Vec::new() }
    }

    pub fn syllable(s: Syllable) -> NormalForm {
        NormalForm { head: Head::default(), syllables: vec![s] }
    }

    /// Builds a normal form from raw parts, rejecting anything that is not
    /// already canonical.
    pub fn from_parts(head: Head, syllables: Vec<Syllable>) -> Option<NormalForm> {
        let valid = syllables.iter().all(|s| match *s {
            Syllable::Beta { exp } => exp != 0,
            Syllable::Delta { exp } => exp == 1 || exp == 2,
        }) && syllables.windows(2).all(|w| w[0].is_beta() != w[1].is_beta());
        valid.then_some(NormalForm { head, syllables })
    }

    pub fn get_head(&self) -> Head {
        self.head
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.head == Head::default() && self.syllables.is_empty()
    }

    pub fn beta(n: i64) -> NormalForm {
        if n == 0 {
            NormalForm::identity()
        } else {
            NormalForm::syllable(Syllable::Beta { exp: n })
        }
    }

    pub fn delta(d: i64) -> NormalForm {
        match d.rem_euclid(3) {
            0 => NormalForm::identity(),
            e => NormalForm::syllable(Syllable::Delta { exp: e as u8 }),
        }
    }

    pub fn alpha() -> NormalForm {
        NormalForm::head(true, false)
    }

    pub fn gamma() -> NormalForm {
        NormalForm::head(false, true)
    }

    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        let mut h = other.head;
        let mut left: Vec<Syllable> = Vec::with_capacity(self.syllables.len() + other.syllables.len());
        for s in self.syllables.iter().rev() {
            let (h2, s2) = s.push_head(h);
            h = h2;
            left.push(s2);
        }
        left.reverse();
        for &t in &other.syllables {
            match left.last() {
                Some(&top) if top.is_beta() == t.is_beta() => {
                    left.pop();
                    if let Some(m) = top.merge(t) {
                        left.push(m);
                    }
                }
                _ => left.push(t),
            }
        }
        NormalForm { head: self.head.mul(h), syllables: left }
    }

    pub fn inverse(&self) -> NormalForm {
        let body = NormalForm {
            head: Head::default(),
            syllables: self.syllables.iter().rev().map(|s| s.inverse()).collect(),
        };
        body.mul(&NormalForm::from_head(self.head))
    }

    pub fn pow(&self, n: i64) -> NormalForm {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = NormalForm::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `k · self · k⁻¹`
    pub fn conjugate_by(&self, k: &NormalForm) -> NormalForm {
        k.mul(self).mul(&k.inverse())
    }

    /// A shortest-looking word spelling this element.
    pub fn to_word(&self) -> GoeritzWord {
        let mut out = Vec::new();
        if self.head.a {
            out.push(GLetter::Alpha);
        }
        if self.head.g {
            out.push(GLetter::Gamma);
        }
        for s in &self.syllables {
            match *s {
                Syllable::Beta { exp } => {
                    let l = if exp > 0 { GLetter::Beta } else { GLetter::BetaInv };
                    out.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
                }
                Syllable::Delta { exp: 1 } => out.push(GLetter::Delta),
                Syllable::Delta { .. } => out.push(GLetter::DeltaInv),
            }
        }
        GoeritzWord(out)
    }

    /// Letter length of [`NormalForm::to_word`].
    pub fn word_length(&self) -> usize {
        self.to_word().len()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.to_word())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct HeadJson {
    a: u8,
    g: u8,
}

#[derive(Serialize, Deserialize)]
struct NormalFormJson {
    head: HeadJson,
    syllables: Vec<Syllable>,
}

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        NormalFormJson {
            head: HeadJson { a: self.head.a as u8, g: self.head.g as u8 },
            syllables: self.syllables.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<NormalForm, D::Error> {
        let raw = NormalFormJson::deserialize(deserializer)?;
        if raw.head.a > 1 || raw.head.g > 1 {
            return Err(serde::de::Error::custom("head bits must be 0 or 1"));
        }
        let head = Head { a: raw.head.a == 1, g: raw.head.g == 1 };
        NormalForm::from_parts(head, raw.syllables).ok_or_else(|| serde::de::Error::custom("not a normal form"))
    }
}

pub fn normal_form(w: &GoeritzWord) -> NormalForm {
    w.0.iter().fold(NormalForm::identity(), |acc, l| acc.mul(&l.element()))
}

/// Parses and normalizes in one step.
pub fn element(text: &str) -> Result<NormalForm, ParseError> {
    Ok(normal_form(&GoeritzWord::parse(text)?))
}

pub fn multiply(u: &NormalForm, v: &NormalForm) -> NormalForm {
    u.mul(v)
}

pub fn invert(u: &NormalForm) -> NormalForm {
    u.inverse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

/// Conjugates `g` to a cyclically reduced element. Returns `(k, g')` with
/// `g' = k g k⁻¹`; afterwards the syllable count is 0, 1 or even.
pub fn cyclic_reduction(g: &NormalForm) -> (NormalForm, NormalForm) {
    let mut k = NormalForm::identity();
    let mut cur = g.clone();
    while cur.syllables.len() >= 3 && cur.syllables.len() % 2 == 1 {
        let last = NormalForm::syllable(*cur.syllables.last().unwrap());
        cur = cur.conjugate_by(&last);
        k = last.mul(&k);
    }
    (k, cur)
}

/// Syllable count of the cyclic reduction.
pub fn cyclic_length(g: &NormalForm) -> usize {
    let n = cyclic_reduction(g).1.syllables.len();
    if n >= 2 {
        n
    } else {
        0
    }
}

pub fn is_hyperbolic(g: &NormalForm) -> bool {
    cyclic_reduction(g).1.syllables.len() >= 2
}

pub fn order_of(g: &NormalForm) -> Order {
    let (_, c) = cyclic_reduction(g);
    match c.syllables.as_slice() {
        [] | [Syllable::Delta { .. }] => {
            let mut acc = c.clone();
            let mut n = 1;
            while !acc.is_identity() {
                acc = acc.mul(&c);
                n += 1;
            }
            Order::Finite(n)
        }
        _ => Order::Infinite,
    }
}

/// Canonical conjugacy representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicClass {
    pub representative: NormalForm,
}

impl CyclicClass {
    pub fn is_elliptic(&self) -> bool {
        self.representative.syllables.len() <= 1
    }
}

fn class_key(g: &NormalForm) -> (Vec<(u8, i64)>, Head) {
    let seq = g
        .syllables
        .iter()
        .map(|s| match *s {
            Syllable::Beta { exp } => (0, exp),
            Syllable::Delta { exp } => (1, exp as i64),
        })
        .collect();
    (seq, g.head)
}

/// Conjugation orbit of an elliptic element inside the vertex groups
/// containing it; returns the least element with a conjugator reaching it.
fn elliptic_orbit_min(g: &NormalForm) -> (NormalForm, NormalForm) {
    let (b, gm, d) = (NormalForm::beta(1), NormalForm::gamma(), NormalForm::delta(1));
    let mut seen: HashSet<NormalForm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(g.clone());
    queue.push_back((g.clone(), NormalForm::identity()));
    let mut best = (g.clone(), NormalForm::identity());
    while let Some((x, k)) = queue.pop_front() {
        if class_key(&x) < class_key(&best.0) {
            best = (x.clone(), k.clone());
        }
        // edge-group elements lie in both vertex groups
        let gens: Vec<&NormalForm> = match x.syllables.as_slice() {
            [] => vec![&b, &gm, &d],
            [Syllable::Beta { .. }] => vec![&b, &gm],
            _ => vec![&gm, &d],
        };
        for s in gens {
            let y = x.conjugate_by(s);
            if seen.insert(y.clone()) {
                queue.push_back((y, s.mul(&k)));
            }
        }
    }
    best
}

fn edge_group() -> Vec<NormalForm> {
    Head::ALL.iter().map(|&h| NormalForm::from_head(h)).collect()
}

/// Returns the class together with `k` such that `k g k⁻¹` is the representative.
pub fn canonical_conjugate(g: &NormalForm) -> (CyclicClass, NormalForm) {
    let (k0, c) = cyclic_reduction(g);
    let (rep, k1) = match c.syllables.as_slice() {
        [] | [_] => elliptic_orbit_min(&c),
        syl => {
            let mut best: Option<(NormalForm, NormalForm)> = None;
            // c = head·s1⋯sn; conjugating by (head·s1⋯sj)⁻¹ starts the
            // sequence at syllable j + 1
            let mut prefix = NormalForm::from_head(c.head);
            for j in 0..syl.len() {
                let p_inv = prefix.inverse();
                let rotated = c.conjugate_by(&p_inv);
                for e in edge_group() {
                    let cand = rotated.conjugate_by(&e);
                    let k = e.mul(&p_inv);
                    if best.as_ref().is_none_or(|(b, _)| class_key(&cand) < class_key(b)) {
                        best = Some((cand, k));
                    }
                }
                prefix = prefix.mul(&NormalForm::syllable(syl[j]));
            }
            best.unwrap()
        }
    };
    (CyclicClass { representative: rep }, k1.mul(&k0))
}

pub fn cyclic_class(g: &NormalForm) -> CyclicClass {
    canonical_conjugate(g).0
}

/// `Some(k)` with `k g k⁻¹ = h` when the elements are conjugate.
pub fn is_conjugate(g: &NormalForm, h: &NormalForm) -> Option<NormalForm> {
    let (cg, kg) = canonical_conjugate(g);
    let (ch, kh) = canonical_conjugate(h);
    (cg == ch).then(|| kh.inverse().mul(&kg))
}

/// Element of S3 as the images of 0, 1, 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct S3Element(pub [u8; 3]);

impl S3Element {
    pub const IDENTITY: S3Element = S3Element([0, 1, 2]);
    /// Image of γ.
    pub const S: S3Element = S3Element([1, 0, 2]);
    /// Image of δ.
    pub const R: S3Element = S3Element([1, 2, 0]);

    /// `(self · other)(i) = self(other(i))`
    pub fn compose(self, other: S3Element) -> S3Element {
        S3Element([0, 1, 2].map(|i| self.0[other.0[i] as usize]))
    }

    pub fn is_three_cycle(self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i as u8 != v)
    }

    pub fn is_transposition(self) -> bool {
        self.0.iter().enumerate().filter(|&(i, &v)| i as u8 == v).count() == 1
    }
}

pub fn quotient_s3(g: &NormalForm) -> S3Element {
    let mut acc = if g.head.g { S3Element::S } else { S3Element::IDENTITY };
    for s in &g.syllables {
        if let Syllable::Delta { exp } = *s {
            for _ in 0..exp {
                acc = acc.compose(S3Element::R);
            }
        }
    }
    acc
}

/// Image in G^ab ≅ Z2 × Z: (γ-bit, β exponent sum).
pub fn abelianization(g: &NormalForm) -> (u8, i64) {
    let n = g
        .syllables
        .iter()
        .map(|s| match *s {
            Syllable::Beta { exp } => exp,
            Syllable::Delta { .. } => 0,
        })
        .sum();
    (g.head.g as u8, n)
}

/// The eight defining relators, as words.
pub fn relators() -> Vec<(&'static str, GoeritzWord)> {
    [
        ("α²", "aa"),
        ("γ²", "gg"),
        ("δ³", "ddd"),
        ("(γδ)²", "gdgd"),
        ("[α,β]", "abaB"),
        ("[α,γ]", "agag"),
        ("[α,δ]", "adaD"),
        ("βγβ⁻¹γα", "bgBga"),
    ]
    .into_iter()
    .map(|(name, w)| (name, GoeritzWord::parse(w).unwrap()))
    .collect()
}

/// Outcome of one structural check of the presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
}

/// Runs the presentation validation suite: every relator is trivial, the
/// documented identities hold, and alternating β/δ words stay nontrivial.
pub fn validation_suite() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for (name, w) in relators() {
        out.push(CheckOutcome { name: format!("relator {name}"), passed: normal_form(&w).is_identity() });
    }
    let e = |s: &str| element(s).unwrap();
    out.push(CheckOutcome { name: "γβγ = αβ".into(), passed: e("gbg") == e("ab") });
    let f = e("bdBd");
    out.push(CheckOutcome {
        name: "(γδ) f (γδ)⁻¹ = f⁻¹ for f = βδβ⁻¹δ".into(),
        passed: f.conjugate_by(&e("gd")) == f.inverse(),
    });
    let alpha = NormalForm::alpha();
    out.push(CheckOutcome {
        name: "α is central".into(),
        passed: ALL_LETTERS.iter().all(|l| alpha.mul(&l.element()) == l.element().mul(&alpha)),
    });
    out.push(CheckOutcome {
        name: "⟨α,β⟩ ≅ Z2 × Z".into(),
        passed: (-20..=20i64).all(|n| {
            let b = NormalForm::beta(n);
            b.is_identity() == (n == 0) && alpha.mul(&b) == b.mul(&alpha) && alpha.mul(&b) != b
        }),
    });
    out.push(CheckOutcome { name: "⟨β,δ⟩ free product up to syllable length 8".into(), passed: beta_delta_free(8, 2) });
    out
}

/// Every nonempty alternating product of βⁿ (0 < |n| ≤ max_exp) and δ^{±1}
/// with at most `max_syllables` factors is nontrivial.
pub fn beta_delta_free(max_syllables: usize, max_exp: i64) -> bool {
    let mut betas: Vec<NormalForm> = (-max_exp..=max_exp).filter(|&n| n != 0).map(NormalForm::beta).collect();
    betas.sort();
    let deltas = [NormalForm::delta(1), NormalForm::delta(2)];
    let mut frontier: Vec<(NormalForm, bool)> = Vec::new();
    for b in &betas {
        frontier.push((b.clone(), true));
    }
    for d in &deltas {
        frontier.push((d.clone(), false));
    }
    for len in 1..=max_syllables {
        if frontier.iter().any(|(g, _)| g.is_identity() || g.syllables.len() != len) {
            return false;
        }
        if len == max_syllables {
            break;
        }
        let mut next = Vec::new();
        for (g, last_beta) in &frontier {
            let choices: &[NormalForm] = if *last_beta { &deltas } else { &betas };
            for c in choices {
                next.push((g.mul(c), !last_beta));
            }
        }
        frontier = next;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> NormalForm {
        element(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(GoeritzWord::parse("a").unwrap().0, vec![GLetter::Alpha]);
        assert_eq!(GoeritzWord::parse("bdBd").unwrap().to_string(), "bdBd");
        assert_eq!(GoeritzWord::parse("b q"), Err(ParseError::UnknownCharacter { symbol: 'q', position: 2 }));
    }

    #[test]
    fn normal_form_examples() {
        assert!(e("aa").is_identity());
        assert!(e("gdgd").is_identity());
        let bg = e("bg");
        assert_eq!(bg.get_head(), Head { a: true, g: true });
        assert_eq!(bg.syllables(), &[Syllable::Beta { exp: 1 }]);
        let f = e("bdBd");
        assert_eq!(f.get_head(), Head::default());
        assert_eq!(
            f.syllables(),
            &[Syllable::Beta { exp: 1 }, Syllable::Delta { exp: 1 }, Syllable::Beta { exp: -1 }, Syllable::Delta { exp: 1 }]
        );
    }

    #[test]
    fn multiply_and_invert_examples() {
        assert!(e("b").mul(&e("B")).is_identity());
        assert_eq!(e("bd").inverse(), e("DB"));
        assert_eq!(e("bd").inverse().syllables(), &[Syllable::Delta { exp: 2 }, Syllable::Beta { exp: -1 }]);
        assert!(e("gd").mul(&e("gd")).is_identity());
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_of(&e("a")), Order::Finite(2));
        assert_eq!(order_of(&e("ad")), Order::Finite(6));
        assert_eq!(order_of(&e("b")), Order::Infinite);
        assert_eq!(order_of(&e("bd")), Order::Infinite);
        assert_eq!(order_of(&e("")), Order::Finite(1));
        assert_eq!(order_of(&e("gd")), Order::Finite(2));
    }

    #[test]
    fn cyclic_class_examples() {
        let (k, c) = cyclic_reduction(&e("Dbd"));
        assert_eq!(c, e("b"));
        assert_eq!(k, e("d"));
        assert_eq!(cyclic_class(&e("bd")), cyclic_class(&e("db")));
        assert_ne!(cyclic_class(&e("bd")), cyclic_class(&e("Bd")));
    }

    #[test]
    fn conjugacy_examples() {
        let k = is_conjugate(&e("d"), &e("dd")).unwrap();
        assert_eq!(e("d").conjugate_by(&k), e("dd"));
        let k = is_conjugate(&e("b"), &e("ab")).unwrap();
        assert_eq!(e("b").conjugate_by(&k), e("ab"));
        assert_eq!(is_conjugate(&e("a"), &e("g")), None);
        assert_eq!(e("d").conjugate_by(&e("g")), e("dd"));
        assert_eq!(e("b").conjugate_by(&e("g")), e("ab"));
    }

    #[test]
    fn quotient_examples() {
        assert!(quotient_s3(&e("bd")).is_three_cycle());
        assert_eq!(quotient_s3(&e("gd")), S3Element::S.compose(S3Element::R));
        assert!(quotient_s3(&e("gd")).is_transposition());
        assert_eq!(quotient_s3(&e("a")), S3Element::IDENTITY);
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(abelianization(&e("b")), (0, 1));
        assert_eq!(abelianization(&e("a")), (0, 0));
        assert_eq!(abelianization(&e("gd")), (1, 0));
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&e("bg")).unwrap();
        assert_eq!(j, r#"{"head":{"a":1,"g":1},"syllables":[{"gen":"b","exp":1}]}"#);
        let back: NormalForm = serde_json::from_str(&j).unwrap();
        assert_eq!(back, e("bg"));
        assert!(serde_json::from_str::<NormalForm>(r#"{"head":{"a":0,"g":0},"syllables":[{"gen":"b","exp":0}]}"#).is_err());
    }

    #[test]
    fn validation_suite_passes() {
        for c in validation_suite() {
            assert!(c.passed, "{}", c.name);
        }
    }
}
