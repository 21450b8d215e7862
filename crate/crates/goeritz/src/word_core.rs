//! Rank-2 free group words and the Whitehead primitivity test.
//!
//! Letters are written `x`, `X`, `y`, `Y` for x1, x1⁻¹, x2, x2⁻¹. The derived
//! ordering on [`Letter`] is the canonical letter order used to pick the
//! least rotation of a cyclic word.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `maxlen` accepted by [`primitive_oracle`] unless the caller raises it.
pub const DEFAULT_ORACLE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    X,
    XInv,
    Y,
    YInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::X, Letter::XInv, Letter::Y, Letter::YInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::X => Letter::XInv,
            Letter::XInv => Letter::X,
            Letter::Y => Letter::YInv,
            Letter::YInv => Letter::Y,
        }
    }

    /// 0 for x1, 1 for x2.
    pub fn generator(self) -> usize {
        match self {
            Letter::X | Letter::XInv => 0,
            Letter::Y | Letter::YInv => 1,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Letter::X | Letter::Y)
    }

    pub fn from_parts(generator: usize, positive: bool) -> Letter {
        match (generator, positive) {
            (0, true) => Letter::X,
            (0, false) => Letter::XInv,
            (_, true) => Letter::Y,
            (_, false) => Letter::YInv,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::XInv => 'X',
            Letter::Y => 'y',
            Letter::YInv => 'Y',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'x' => Some(Letter::X),
            'X' => Some(Letter::XInv),
            'y' => Some(Letter::Y),
            'Y' => Some(Letter::YInv),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown letter {symbol:?} at position {position}")]
    UnknownLetter { symbol: char, position: usize },
    #[error("oracle length {requested} exceeds the limit {limit}")]
    LimitExceeded { requested: usize, limit: usize },
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Word {
    letters: Vec<Letter>,
}

/// Free reduction of an arbitrary letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> F2Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    F2Word { letters: out }
}

impl F2Word {
    pub fn identity() -> F2Word {
        F2Word::default()
    }

    pub fn letter(l: Letter) -> F2Word {
        F2Word { letters: vec![l] }
    }

    pub fn parse(text: &str) -> Result<F2Word, WordError> {
        let mut letters = Vec::new();
        for (position, symbol) in text.chars().enumerate() {
            if symbol.is_whitespace() {
                continue;
            }
            letters.push(Letter::from_char(symbol).ok_or(WordError::UnknownLetter { symbol, position })?);
        }
        Ok(reduce(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &F2Word) -> F2Word {
        reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> F2Word {
        F2Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> F2Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = F2Word::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Substitute a word for each generator (a homomorphism F2 → F2).
    pub fn substitute(&self, images: &[F2Word; 2]) -> F2Word {
        let inverses = [images[0].inverse(), images[1].inverse()];
        reduce(self.letters.iter().flat_map(|l| {
            let img = if l.is_positive() { &images[l.generator()] } else { &inverses[l.generator()] };
            img.letters.clone()
        }))
    }

    /// Render with custom symbols for (x1, x1⁻¹, x2, x2⁻¹).
    pub fn display_with(&self, symbols: [char; 4]) -> String {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::X => symbols[0],
                Letter::XInv => symbols[1],
                Letter::Y => symbols[2],
                Letter::YInv => symbols[3],
            })
            .collect()
    }

    /// Number of occurrences of a letter.
    pub fn count(&self, l: Letter) -> usize {
        self.letters.iter().filter(|&&m| m == l).count()
    }
}

impl fmt::Display for F2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// Exponent sums (p, q) of x1 and x2.
pub fn abelianize(w: &F2Word) -> (i64, i64) {
    let mut p = 0;
    let mut q = 0;
    for l in w.letters() {
        let s = if l.is_positive() { 1 } else { -1 };
        if l.generator() == 0 {
            p += s;
        } else {
            q += s;
        }
    }
    (p, q)
}

/// A freely and cyclically reduced word in its least rotation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicF2Word {
    letters: Vec<Letter>,
}

impl CyclicF2Word {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn as_word(&self) -> F2Word {
        F2Word { letters: self.letters.clone() }
    }
}

impl fmt::Display for CyclicF2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_word().fmt(f)
    }
}

fn least_rotation(letters: &[Letter]) -> usize {
    let n = letters.len();
    (0..n)
        .min_by(|&i, &j| {
            let a = letters[i..].iter().chain(&letters[..i]);
            let b = letters[j..].iter().chain(&letters[..j]);
            a.cmp(b)
        })
        .unwrap_or(0)
}

/// Returns `(core, conjugator)` with `w = conjugator · core · conjugator⁻¹`.
pub fn cyclic_reduce(w: &F2Word) -> (CyclicF2Word, F2Word) {
    let l = w.letters();
    let (mut i, mut j) = (0, l.len());
    while j >= i + 2 && l[i] == l[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    let core = &l[i..j];
    let r = least_rotation(core);
    // core = s·t with s = core[..r]; the rotation t·s equals s⁻¹·core·s.
    let mut conj = l[..i].to_vec();
    conj.extend_from_slice(&core[..r]);
    let mut rotated = core[r..].to_vec();
    rotated.extend_from_slice(&core[..r]);
    (CyclicF2Word { letters: rotated }, F2Word { letters: conj })
}

/// Cyclically reduced core of `w` without rotating it.
pub fn cyclic_core(w: &F2Word) -> F2Word {
    let l = w.letters();
    let (mut i, mut j) = (0, l.len());
    while j >= i + 2 && l[i] == l[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    F2Word { letters: l[i..j].to_vec() }
}

fn cyclic_length(w: &F2Word) -> usize {
    cyclic_reduce(w).0.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// target ↦ target · multiplier
    Right,
    /// target ↦ multiplier · target
    Left,
}

/// A Whitehead transvection: one generator is multiplied on one side by a
/// letter of the other generator, the other generator is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WhiteheadMove {
    pub target: usize,
    pub multiplier: Letter,
    pub side: Side,
}

impl WhiteheadMove {
    pub fn all() -> Vec<WhiteheadMove> {
        let mut out = Vec::new();
        for target in 0..2 {
            for &multiplier in Letter::ALL.iter().filter(|m| m.generator() != target) {
                for side in [Side::Right, Side::Left] {
                    out.push(WhiteheadMove { target, multiplier, side });
                }
            }
        }
        out
    }

    pub fn apply(&self, w: &F2Word) -> F2Word {
        let t = F2Word::letter(Letter::from_parts(self.target, true));
        let m = F2Word::letter(self.multiplier);
        let image = match self.side {
            Side::Right => t.mul(&m),
            Side::Left => m.mul(&t),
        };
        let mut images = [F2Word::letter(Letter::X), F2Word::letter(Letter::Y)];
        images[self.target] = image;
        w.substitute(&images)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Obstruction {
    /// Exponent sums are not a coprime pair (includes the identity).
    NonUnimodular,
    /// Some generator occurs with both signs in the cyclic word.
    MixedSign,
    /// Whitehead descent stalled above length 1.
    ReductionStuck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    Moves(Vec<WhiteheadMove>),
    Obstruction(Obstruction),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivityResult {
    pub primitive: bool,
    pub certificate: Certificate,
}

/// Replays Whitehead moves on the cyclic core of `w`, returning the
/// cyclic length after each move.
pub fn replay(w: &F2Word, moves: &[WhiteheadMove]) -> Vec<usize> {
    let mut cur = cyclic_reduce(w).0.as_word();
    let mut lengths = vec![cur.len()];
    for mv in moves {
        cur = cyclic_reduce(&mv.apply(&cur)).0.as_word();
        lengths.push(cur.len());
    }
    lengths
}

fn mixed_sign(w: &CyclicF2Word) -> bool {
    let has = |l: Letter| w.letters().contains(&l);
    (has(Letter::X) && has(Letter::XInv)) || (has(Letter::Y) && has(Letter::YInv))
}

pub fn is_primitive(w: &F2Word) -> PrimitivityResult {
    let obstruction = |o| PrimitivityResult { primitive: false, certificate: Certificate::Obstruction(o) };
    let (p, q) = abelianize(w);
    if p.gcd(&q) != 1 {
        return obstruction(Obstruction::NonUnimodular);
    }
    let core = cyclic_reduce(w).0;
    if mixed_sign(&core) {
        return obstruction(Obstruction::MixedSign);
    }
    let mut cur = core.as_word();
    let mut moves = Vec::new();
    while cur.len() > 1 {
        let step = WhiteheadMove::all().into_iter().find_map(|mv| {
            let next = cyclic_reduce(&mv.apply(&cur)).0.as_word();
            (next.len() < cur.len()).then_some((mv, next))
        });
        match step {
            Some((mv, next)) => {
                moves.push(mv);
                cur = next;
            }
            None => return obstruction(Obstruction::ReductionStuck),
        }
    }
    debug_assert_eq!(cyclic_length(&cur), 1);
    PrimitivityResult { primitive: true, certificate: Certificate::Moves(moves) }
}

/// All primitive cyclic words of length at most `maxlen`, built from
/// Christoffel words by Stern–Brocot mediants and sign changes.
pub fn primitive_oracle(maxlen: usize) -> Result<BTreeSet<CyclicF2Word>, WordError> {
    primitive_oracle_with_limit(maxlen, DEFAULT_ORACLE_LIMIT)
}

pub fn primitive_oracle_with_limit(maxlen: usize, limit: usize) -> Result<BTreeSet<CyclicF2Word>, WordError> {
    if maxlen > limit {
        return Err(WordError::LimitExceeded { requested: maxlen, limit });
    }
    let mut positive = Vec::new();
    if maxlen >= 1 {
        positive.push(vec![Letter::X]);
        positive.push(vec![Letter::Y]);
    }
    // Christoffel word of a mediant is the concatenation of its parents' words.
    let mut stack = vec![(vec![Letter::X], vec![Letter::Y])];
    while let Some((left, right)) = stack.pop() {
        if left.len() + right.len() > maxlen {
            continue;
        }
        let mut mid = left.clone();
        mid.extend_from_slice(&right);
        positive.push(mid.clone());
        stack.push((left, mid.clone()));
        stack.push((mid, right));
    }
    let mut out = BTreeSet::new();
    for word in positive {
        for flip_x in [false, true] {
            for flip_y in [false, true] {
                let signed = word.iter().map(|&l| {
                    let flip = if l.generator() == 0 { flip_x } else { flip_y };
                    if flip {
                        l.inverse()
                    } else {
                        l
                    }
                });
                out.insert(cyclic_reduce(&reduce(signed)).0);
            }
        }
    }
    Ok(out)
}
