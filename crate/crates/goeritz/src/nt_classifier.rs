//! Nielsen–Thurston type of Goeritz elements.
//!
//! An element is pseudo-Anosov exactly when it is not conjugate into one of
//! four subgroups: the disk stabilizer ⟨α,β,γδ⟩, the sphere stabilizer
//! ⟨α,β,γ⟩ = A, the pants stabilizer ⟨α,γ,δ⟩ = B, and the figure-8
//! stabilizer ⟨α, βδβ⁻¹δ, γδ⟩. Every positive answer comes with a
//! conjugator and a word in the subgroup generators so that the claim can be
//! replayed with plain normal-form arithmetic.
//!
//! The two vertex groups and the figure-8 stabilizer are handled exactly.
//! For the disk stabilizer two procedures are available:
//!
//! * [`DiskMethod::Exact`] uses the amalgam structure of the subgroup.
//!   Writing τ = γδ, each element of ⟨α,β,τ⟩ is `α^x` times an alternating
//!   product of nonzero β-powers and τ, and its normal form in G has the
//!   same β-exponents in the same places with one δ-syllable per τ. So a
//!   hyperbolic g is conjugate into the subgroup iff it is conjugate to
//!   `α^x · (β^{n1} τ β^{n2} τ …)` for its own cyclic β-exponent sequence
//!   and some x ∈ {0,1}. Two conjugacy tests settle it.
//! * [`DiskMethod::Search`] only uses the S3 filter and a breadth-first
//!   search over subgroup words, answering `Unknown` when neither succeeds.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::goeritz_group::{
    canonical_conjugate, cyclic_length, cyclic_reduction, is_conjugate, normal_form, order_of, quotient_s3,
    GoeritzWord, NormalForm, Order, ParseError, Syllable,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubgroupId {
    DiskStab,
    SphereStab,
    PantsStab,
    Fig8Stab,
}

impl SubgroupId {
    pub const ALL: [SubgroupId; 4] = [SubgroupId::DiskStab, SubgroupId::SphereStab, SubgroupId::PantsStab, SubgroupId::Fig8Stab];

    /// Generators in the fixed order used by membership witnesses.
    pub fn generators(self) -> Vec<NormalForm> {
        let words: &[&str] = match self {
            SubgroupId::DiskStab => &["a", "b", "gd"],
            SubgroupId::SphereStab => &["a", "b", "g"],
            SubgroupId::PantsStab => &["a", "g", "d"],
            SubgroupId::Fig8Stab => &["a", "bdBd", "gd"],
        };
        words.iter().map(|w| normal_form(&GoeritzWord::parse(w).unwrap())).collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            SubgroupId::DiskStab => "DiskStab",
            SubgroupId::SphereStab => "SphereStab",
            SubgroupId::PantsStab => "PantsStab",
            SubgroupId::Fig8Stab => "Fig8Stab",
        }
    }

    pub fn from_name(s: &str) -> Option<SubgroupId> {
        SubgroupId::ALL.into_iter().find(|g| g.name() == s)
    }

    /// Kind of canonical reduction system carried by infinite-order elements
    /// conjugate into this subgroup.
    pub fn crs_label(self) -> Option<CrsLabel> {
        match self {
            SubgroupId::DiskStab => Some(CrsLabel::WeaklyReducingPair),
            SubgroupId::SphereStab => Some(CrsLabel::ReducingCurve),
            SubgroupId::Fig8Stab => Some(CrsLabel::Figure8Curve),
            SubgroupId::PantsStab => None,
        }
    }
}

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrsLabel {
    WeaklyReducingPair,
    ReducingCurve,
    Figure8Curve,
}

/// A word in a subgroup's generators: pairs (generator index, exponent).
pub type Witness = Vec<(usize, i64)>;

pub fn eval_witness(subgroup: SubgroupId, witness: &[(usize, i64)]) -> NormalForm {
    let gens = subgroup.generators();
    witness.iter().fold(NormalForm::identity(), |acc, &(i, e)| acc.mul(&gens[i].pow(e)))
}

/// Replayable evidence that `k g k⁻¹` equals a word in the subgroup generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub subgroup: SubgroupId,
    pub conjugator: NormalForm,
    pub witness: Witness,
}

impl Certificate {
    pub fn replay(&self, g: &NormalForm) -> bool {
        g.conjugate_by(&self.conjugator) == eval_witness(self.subgroup, &self.witness)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    A,
    B,
}

/// Conjugates an elliptic element into a vertex group. Returns
/// `(k, vertex, k g k⁻¹)`.
pub fn conjugate_into_vertex(g: &NormalForm) -> Option<(NormalForm, Vertex, NormalForm)> {
    let (k, c) = cyclic_reduction(g);
    match c.syllables() {
        [] | [Syllable::Beta { .. }] => Some((k, Vertex::A, c)),
        [Syllable::Delta { .. }] => Some((k, Vertex::B, c)),
        _ => None,
    }
}

fn vertex_witness(vertex: Vertex, c: &NormalForm) -> Witness {
    let h = c.get_head();
    let mut w = Vec::new();
    if h.a {
        w.push((0, 1));
    }
    match vertex {
        Vertex::A => {
            if h.g {
                w.push((2, 1));
            }
            if let [Syllable::Beta { exp }] = c.syllables() {
                w.push((1, *exp));
            }
        }
        Vertex::B => {
            if h.g {
                w.push((1, 1));
            }
            if let [Syllable::Delta { exp }] = c.syllables() {
                w.push((2, *exp as i64));
            }
        }
    }
    w
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("element is elliptic; use the vertex test")]
    Elliptic,
    #[error("generator list is empty")]
    NoGenerators,
    #[error("scan would enumerate {requested} words, above the limit {limit}")]
    TooLarge { requested: u128, limit: u128 },
}

/// Why a hyperbolic element is not conjugate into a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exclusion {
    /// Positive translation length on the Bass–Serre tree; vertex groups
    /// only contain elliptic elements.
    Hyperbolic { translation_length: usize },
    /// Infinite-order elements of the figure-8 stabilizer have translation
    /// length divisible by 4.
    TranslationLength { translation_length: usize },
    /// The forced candidates `α^x f^{±m}` are not conjugate to the element.
    Fig8CandidatesRefuted { m: usize },
    /// The S3 image is a 3-cycle; the disk stabilizer maps into {id, transposition}.
    S3ThreeCycle,
    /// The forced candidates `α^x β^{n1} τ …` are not conjugate to the element.
    DiskCandidatesRefuted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(Certificate),
    No(Exclusion),
    Unknown,
}

/// βδβ⁻¹δ
pub fn fig8_generator() -> NormalForm {
    normal_form(&GoeritzWord::parse("bdBd").unwrap())
}

pub fn conjugate_into_fig8(g: &NormalForm) -> Result<Decision, ClassifyError> {
    let l = cyclic_length(g);
    if l == 0 {
        return Err(ClassifyError::Elliptic);
    }
    if !l.is_multiple_of(4) {
        return Ok(Decision::No(Exclusion::TranslationLength { translation_length: l }));
    }
    let m = (l / 4) as i64;
    let f = fig8_generator();
    for x in [0, 1] {
        for e in [m, -m] {
            let cand = NormalForm::alpha().pow(x).mul(&f.pow(e));
            if let Some(k) = is_conjugate(g, &cand) {
                let mut witness = Vec::new();
                if x == 1 {
                    witness.push((0, 1));
                }
                witness.push((1, e));
                return Ok(Decision::Yes(Certificate { subgroup: SubgroupId::Fig8Stab, conjugator: k, witness }));
            }
        }
    }
    Ok(Decision::No(Exclusion::Fig8CandidatesRefuted { m: m as usize }))
}

/// Membership in ⟨α,β,γδ⟩: the witness spells `g` in the generators.
pub fn disk_stab_member(g: &NormalForm) -> Option<Witness> {
    for x in [0, 1] {
        let mut witness: Witness = Vec::new();
        if x == 1 {
            witness.push((0, 1));
        }
        for s in g.syllables() {
            match *s {
                Syllable::Beta { exp } => witness.push((1, exp)),
                Syllable::Delta { .. } => witness.push((2, 1)),
            }
        }
        if eval_witness(SubgroupId::DiskStab, &witness) == *g {
            return Some(witness);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiskMethod {
    Exact,
    Search,
}

fn disk_yes(g: &NormalForm, h: &NormalForm) -> Option<Certificate> {
    let k = is_conjugate(g, h)?;
    let witness = disk_stab_member(h)?;
    Some(Certificate { subgroup: SubgroupId::DiskStab, conjugator: k, witness })
}

/// Breadth-first enumeration of ⟨α,β,γδ⟩ by word length in α, β^±1, γδ.
pub fn disk_stab_ball(radius: usize) -> Vec<NormalForm> {
    let gens: Vec<NormalForm> = {
        let g = SubgroupId::DiskStab.generators();
        vec![g[0].clone(), g[1].clone(), g[1].inverse(), g[2].clone()]
    };
    let mut seen: HashSet<NormalForm> = HashSet::new();
    let mut out = vec![NormalForm::identity()];
    seen.insert(NormalForm::identity());
    let mut queue = VecDeque::from([(NormalForm::identity(), 0usize)]);
    while let Some((x, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for s in &gens {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back((y, d + 1));
            }
        }
    }
    out
}

pub fn conjugate_into_disk_stab(g: &NormalForm, budget: usize, method: DiskMethod) -> Result<Decision, ClassifyError> {
    let (_, c) = cyclic_reduction(g);
    if c.syllables().len() < 2 {
        return Err(ClassifyError::Elliptic);
    }
    if quotient_s3(g).is_three_cycle() {
        return Ok(Decision::No(Exclusion::S3ThreeCycle));
    }
    match method {
        DiskMethod::Exact => {
            for x in [0, 1] {
                let mut cand = NormalForm::alpha().pow(x);
                let tau = SubgroupId::DiskStab.generators()[2].clone();
                for s in c.syllables() {
                    cand = match *s {
                        Syllable::Beta { exp } => cand.mul(&NormalForm::beta(exp)),
                        Syllable::Delta { .. } => cand.mul(&tau),
                    };
                }
                if let Some(cert) = disk_yes(g, &cand) {
                    return Ok(Decision::Yes(cert));
                }
            }
            Ok(Decision::No(Exclusion::DiskCandidatesRefuted))
        }
        DiskMethod::Search => {
            let target = canonical_conjugate(g).0;
            for h in disk_stab_ball(budget) {
                if cyclic_length(&h) == c.syllables().len() && canonical_conjugate(&h).0 == target {
                    if let Some(cert) = disk_yes(g, &h) {
                        return Ok(Decision::Yes(cert));
                    }
                }
            }
            Ok(Decision::Unknown)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub budget: usize,
    pub method: DiskMethod,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { budget: 8, method: DiskMethod::Exact }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    FiniteOrder { order: u32, vertex: Vertex, certificate: Certificate },
    Reducible { certificate: Certificate, crs: Option<CrsLabel> },
    PseudoAnosov { evidence: Vec<(SubgroupId, Exclusion)> },
    Unknown { budget: usize, inconclusive: Vec<SubgroupId> },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::FiniteOrder { .. } => "FiniteOrder",
            Verdict::Reducible { .. } => "Reducible",
            Verdict::PseudoAnosov { .. } => "PseudoAnosov",
            Verdict::Unknown { .. } => "Unknown",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::FiniteOrder { certificate, .. } | Verdict::Reducible { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn subgroup(&self) -> Option<SubgroupId> {
        self.certificate().map(|c| c.subgroup)
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, Verdict::Unknown { .. })
    }
}

pub fn classify_element(g: &NormalForm, opts: ClassifyOptions) -> Verdict {
    if let Some((k, vertex, c)) = conjugate_into_vertex(g) {
        let subgroup = match vertex {
            Vertex::A => SubgroupId::SphereStab,
            Vertex::B => SubgroupId::PantsStab,
        };
        let certificate = Certificate { subgroup, conjugator: k, witness: vertex_witness(vertex, &c) };
        return match order_of(g) {
            Order::Finite(order) => Verdict::FiniteOrder { order, vertex, certificate },
            Order::Infinite => Verdict::Reducible { certificate, crs: subgroup.crs_label() },
        };
    }
    let l = cyclic_length(g);
    let mut evidence = vec![
        (SubgroupId::SphereStab, Exclusion::Hyperbolic { translation_length: l }),
        (SubgroupId::PantsStab, Exclusion::Hyperbolic { translation_length: l }),
    ];
    match conjugate_into_fig8(g).expect("hyperbolic") {
        Decision::Yes(certificate) => return Verdict::Reducible { certificate, crs: Some(CrsLabel::Figure8Curve) },
        Decision::No(ex) => evidence.push((SubgroupId::Fig8Stab, ex)),
        Decision::Unknown => unreachable!("figure-8 test is exact"),
    }
    match conjugate_into_disk_stab(g, opts.budget, opts.method).expect("hyperbolic") {
        Decision::Yes(certificate) => Verdict::Reducible { certificate, crs: Some(CrsLabel::WeaklyReducingPair) },
        Decision::No(ex) => {
            evidence.push((SubgroupId::DiskStab, ex));
            Verdict::PseudoAnosov { evidence }
        }
        Decision::Unknown => Verdict::Unknown { budget: opts.budget, inconclusive: vec![SubgroupId::DiskStab] },
    }
}

pub fn classify(w: &GoeritzWord, opts: ClassifyOptions) -> Verdict {
    classify_element(&normal_form(w), opts)
}

pub fn classify_str(text: &str, opts: ClassifyOptions) -> Result<Verdict, ClassifyError> {
    Ok(classify(&GoeritzWord::parse(text)?, opts))
}

/// Flat JSON shape of a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vertex: Option<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subgroup: Option<SubgroupId>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub conjugator: Option<NormalForm>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub crs: Option<CrsLabel>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub evidence: Option<Vec<(SubgroupId, Exclusion)>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inconclusive: Option<Vec<SubgroupId>>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> VerdictJson {
        let mut j = VerdictJson {
            kind: v.kind().to_string(),
            order: None,
            vertex: None,
            subgroup: None,
            conjugator: None,
            witness: None,
            crs: None,
            evidence: None,
            budget: None,
            inconclusive: None,
        };
        if let Some(c) = v.certificate() {
            j.subgroup = Some(c.subgroup);
            j.conjugator = Some(c.conjugator.clone());
            j.witness = Some(c.witness.clone());
        }
        match v {
            Verdict::FiniteOrder { order, vertex, .. } => {
                j.order = Some(*order);
                j.vertex = Some(*vertex);
            }
            Verdict::Reducible { crs, .. } => j.crs = *crs,
            Verdict::PseudoAnosov { evidence } => j.evidence = Some(evidence.clone()),
            Verdict::Unknown { budget, inconclusive } => {
                j.budget = Some(*budget);
                j.inconclusive = Some(inconclusive.clone());
            }
        }
        j
    }
}

impl TryFrom<VerdictJson> for Verdict {
    type Error = String;

    fn try_from(j: VerdictJson) -> Result<Verdict, String> {
        let cert = || -> Result<Certificate, String> {
            Ok(Certificate {
                subgroup: j.subgroup.ok_or("missing subgroup")?,
                conjugator: j.conjugator.clone().ok_or("missing conjugator")?,
                witness: j.witness.clone().ok_or("missing witness")?,
            })
        };
        match j.kind.as_str() {
            "FiniteOrder" => Ok(Verdict::FiniteOrder {
                order: j.order.ok_or("missing order")?,
                vertex: j.vertex.ok_or("missing vertex")?,
                certificate: cert()?,
            }),
            "Reducible" => Ok(Verdict::Reducible { certificate: cert()?, crs: j.crs }),
            "PseudoAnosov" => Ok(Verdict::PseudoAnosov { evidence: j.evidence.clone().ok_or("missing evidence")? }),
            "Unknown" => Ok(Verdict::Unknown {
                budget: j.budget.ok_or("missing budget")?,
                inconclusive: j.inconclusive.clone().unwrap_or_default(),
            }),
            other => Err(format!("unknown verdict type {other}")),
        }
    }
}

impl Verdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&VerdictJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Verdict, String> {
        let j: VerdictJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
        Verdict::try_from(j)
    }
}

/// Default cap on the number of words a scan may enumerate.
pub const SCAN_LIMIT: u128 = 2_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub word: String,
    pub verdict: VerdictJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub words: usize,
    pub counts: BTreeMap<String, usize>,
    /// Reducible and finite-order hits with their certificates, sorted by word.
    pub hits: Vec<ScanEntry>,
    /// Words that stayed undecided, sorted.
    pub unknown: Vec<String>,
}

/// All nonempty freely reduced words of length ≤ `maxlen` over `k`
/// generators and their inverses, as (generator, ±1) sequences.
pub fn reduced_words(k: usize, maxlen: usize) -> Vec<Vec<(usize, i8)>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<(usize, i8)>> = vec![Vec::new()];
    for _ in 0..maxlen {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..k {
                for s in [1i8, -1] {
                    if w.last() == Some(&(g, -s)) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push((g, s));
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn count_reduced(k: usize, maxlen: usize) -> u128 {
    let (k, mut total, mut layer) = (k as u128, 0u128, 0u128);
    for len in 1..=maxlen {
        layer = if len == 1 { 2 * k } else { layer * (2 * k - 1) };
        total = total.saturating_add(layer);
    }
    total
}

/// Symbolic spelling of a word in the scan generators, e.g. `g1 G2` for
/// g1·g2⁻¹.
fn spell(w: &[(usize, i8)]) -> String {
    w.iter()
        .map(|&(g, s)| if s > 0 { format!("g{}", g + 1) } else { format!("G{}", g + 1) })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn scan_subgroup(generators: &[GoeritzWord], maxlen: usize, opts: ClassifyOptions) -> Result<ScanReport, ClassifyError> {
    scan_subgroup_with_limit(generators, maxlen, opts, SCAN_LIMIT)
}

pub fn scan_subgroup_with_limit(
    generators: &[GoeritzWord],
    maxlen: usize,
    opts: ClassifyOptions,
    limit: u128,
) -> Result<ScanReport, ClassifyError> {
    if generators.is_empty() {
        return Err(ClassifyError::NoGenerators);
    }
    let requested = count_reduced(generators.len(), maxlen);
    if requested > limit {
        return Err(ClassifyError::TooLarge { requested, limit });
    }
    let elems: Vec<(NormalForm, NormalForm)> = generators
        .iter()
        .map(|w| {
            let g = normal_form(w);
            let gi = g.inverse();
            (g, gi)
        })
        .collect();
    let words = reduced_words(generators.len(), maxlen);
    let mut results: Vec<(String, Verdict)> = words
        .par_iter()
        .map(|w| {
            let g = w.iter().fold(NormalForm::identity(), |acc, &(i, s)| {
                acc.mul(if s > 0 { &elems[i].0 } else { &elems[i].1 })
            });
            (spell(w), classify_element(&g, opts))
        })
        .collect();
    results.sort_by(|a, b| a.0.cmp(&b.0));
    let mut counts = BTreeMap::new();
    let mut hits = Vec::new();
    let mut unknown = Vec::new();
    for (word, v) in &results {
        *counts.entry(v.kind().to_string()).or_insert(0) += 1;
        match v {
            Verdict::FiniteOrder { .. } | Verdict::Reducible { .. } => {
                hits.push(ScanEntry { word: word.clone(), verdict: VerdictJson::from(v) })
            }
            Verdict::Unknown { .. } => unknown.push(word.clone()),
            Verdict::PseudoAnosov { .. } => {}
        }
    }
    Ok(ScanReport { words: results.len(), counts, hits, unknown })
}
