//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use goeritz::goeritz_group::{normal_form, GLetter, GoeritzWord, Head, NormalForm, Syllable, ALL_LETTERS};
use goeritz::word_core::{F2Word, Letter};
use goeritz::Slope;
use rand::rngs::StdRng;
use rand::Rng;

pub fn random_goeritz_word(rng: &mut StdRng, max_len: usize) -> GoeritzWord {
    let len = rng.gen_range(0..=max_len);
    GoeritzWord((0..len).map(|_| ALL_LETTERS[rng.gen_range(0..ALL_LETTERS.len())]).collect::<Vec<GLetter>>())
}

pub fn random_element(rng: &mut StdRng, max_len: usize) -> NormalForm {
    normal_form(&random_goeritz_word(rng, max_len))
}

pub fn random_f2(rng: &mut StdRng, max_len: usize) -> F2Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len).map(|_| Letter::ALL[rng.gen_range(0..4)]).collect();
    goeritz::word_core::reduce(letters)
}

/// Every element given by a word of at most `depth` letters.
pub fn word_ball(depth: usize) -> Vec<NormalForm> {
    let letters: Vec<NormalForm> = ALL_LETTERS.iter().map(|l| l.element()).collect();
    let mut seen: HashSet<NormalForm> = HashSet::from([NormalForm::identity()]);
    let mut frontier = vec![NormalForm::identity()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for g in &frontier {
            for l in &letters {
                let h = g.mul(l);
                if seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// All elements with at most `max_syllables` syllables and |β-exponent| ≤ `max_beta`.
pub fn small_elements(max_syllables: usize, max_beta: i64) -> Vec<NormalForm> {
    let betas: Vec<Syllable> = (-max_beta..=max_beta).filter(|&n| n != 0).map(|exp| Syllable::Beta { exp }).collect();
    let deltas = [Syllable::Delta { exp: 1 }, Syllable::Delta { exp: 2 }];
    let mut seqs: Vec<Vec<Syllable>> = vec![vec![]];
    let mut layer: Vec<Vec<Syllable>> = vec![vec![]];
    for _ in 0..max_syllables {
        let mut next = Vec::new();
        for s in &layer {
            let options: Vec<Syllable> = match s.last() {
                None => betas.iter().chain(deltas.iter()).copied().collect(),
                Some(Syllable::Beta { .. }) => deltas.to_vec(),
                Some(Syllable::Delta { .. }) => betas.clone(),
            };
            for o in options {
                let mut t = s.clone();
                t.push(o);
                next.push(t);
            }
        }
        seqs.extend(next.iter().cloned());
        layer = next;
    }
    let mut out = Vec::new();
    for h in Head::ALL {
        for s in &seqs {
            out.push(NormalForm::from_parts(h, s.clone()).expect("alternating"));
        }
    }
    out
}

/// Conjugacy orbit of `g` under the given conjugators.
pub fn conjugacy_orbit(g: &NormalForm, conjugators: &[NormalForm]) -> HashSet<NormalForm> {
    conjugators.iter().map(|k| g.conjugate_by(k)).collect()
}

pub fn trefoil_set() -> BTreeSet<Slope> {
    ["-1", "1", "0", "inf", "1/2", "2"].iter().map(|s| s.parse().unwrap()).collect()
}

/// The vertex labels of the figure-8 Farey picture, written out by hand.
pub fn fig8_set() -> BTreeSet<Slope> {
    [
        "0", "1/2", "3/5", "8/13", "21/34", "-1", "-3/2", "-8/5", "-21/13", "inf", "1", "2/3", "5/8", "13/21", "-2", "-5/3",
        "-13/8", "-34/21",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

/// Farey graph distance by breadth-first search over slopes with
/// denominator ≤ `max_q` and |value| ≤ `max_abs`.
pub fn farey_bfs(s1: &Slope, s2: &Slope, max_q: i64, max_abs: i64) -> Option<usize> {
    let mut verts: Vec<Slope> = vec![Slope::infinity()];
    for q in 1..=max_q {
        for p in -max_abs * q..=max_abs * q {
            let s = Slope::new(p, q).unwrap();
            if s.q() == q {
                verts.push(s);
            }
        }
    }
    let index: HashMap<Slope, usize> = verts.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let (src, dst) = (*index.get(s1)?, *index.get(s2)?);
    let mut dist = vec![usize::MAX; verts.len()];
    dist[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(i) = q.pop_front() {
        if i == dst {
            return Some(dist[i]);
        }
        for (j, v) in verts.iter().enumerate() {
            if dist[j] == usize::MAX && verts[i].adjacent(v) {
                dist[j] = dist[i] + 1;
                q.push_back(j);
            }
        }
    }
    None
}
