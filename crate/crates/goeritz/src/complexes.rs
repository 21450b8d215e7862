//! Finite views of two complexes on which the Goeritz group acts: the
//! Bass–Serre tree of the amalgam, and the Cayley graph coned off along the
//! cosets of the disk stabilizer ⟨α,β,γδ⟩.
//!
//! Both are locally infinite, so every ball is cut off at a horizon and the
//! returned [`Graph`] says whether anything was left out.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::goeritz_group::{cyclic_length, Head, NormalForm, Syllable, ALL_LETTERS};
use crate::nt_classifier::{disk_stab_ball, disk_stab_member, SubgroupId, Vertex};

/// Depth of the breadth-first search behind [`cone_distance_upper`].
pub const CONE_SEARCH_DEPTH: usize = 5;

/// Largest radius accepted by [`ball`].
pub const MAX_RADIUS: usize = 8;

pub fn translation_length_tree(g: &NormalForm) -> usize {
    cyclic_length(g)
}

fn is_kind(s: &Syllable, kind: Vertex) -> bool {
    matches!((s, kind), (Syllable::Beta { .. }, Vertex::A) | (Syllable::Delta { .. }, Vertex::B))
}

/// A vertex `g·A` or `g·B` of the tree, stored by a canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TreeVertex {
    pub kind: Vertex,
    pub rep: NormalForm,
}

impl TreeVertex {
    pub fn new(kind: Vertex, g: &NormalForm) -> TreeVertex {
        let mut g = g.clone();
        if let Some(last) = g.syllables().last() {
            if is_kind(last, kind) {
                g = g.mul(&NormalForm::syllable(*last).inverse());
            }
        }
        let rep = Head::ALL.iter().map(|&h| g.mul(&NormalForm::from_head(h))).min().unwrap();
        TreeVertex { kind, rep }
    }

    pub fn base(kind: Vertex) -> TreeVertex {
        TreeVertex::new(kind, &NormalForm::identity())
    }

    pub fn translate(&self, g: &NormalForm) -> TreeVertex {
        TreeVertex::new(self.kind, &g.mul(&self.rep))
    }

    /// Neighbours, with the A-side cut off at β-exponent `horizon`.
    pub fn neighbours(&self, horizon: i64) -> Vec<TreeVertex> {
        match self.kind {
            Vertex::A => (-horizon..=horizon)
                .map(|n| TreeVertex::new(Vertex::B, &self.rep.mul(&NormalForm::beta(n))))
                .collect(),
            Vertex::B => (0..3).map(|d| TreeVertex::new(Vertex::A, &self.rep.mul(&NormalForm::delta(d)))).collect(),
        }
    }

    pub fn label(&self) -> String {
        let k = match self.kind {
            Vertex::A => "A",
            Vertex::B => "B",
        };
        format!("{k}:{}", serde_json::to_string(&self.rep).unwrap())
    }
}

pub fn tree_distance(u: &TreeVertex, v: &TreeVertex) -> usize {
    let x = u.rep.inverse().mul(&v.rep);
    let mut syl = x.syllables();
    if let Some(first) = syl.first() {
        if is_kind(first, u.kind) {
            syl = &syl[1..];
        }
    }
    if let Some(last) = syl.last() {
        if is_kind(last, v.kind) {
            syl = &syl[..syl.len() - 1];
        }
    }
    let m = syl.len();
    if m == 0 && u.kind == v.kind {
        0
    } else {
        m + 1
    }
}

/// Finite induced subgraph with an exactness flag.
#[derive(Clone, Debug, Serialize)]
pub struct Graph {
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    /// Distance of each vertex from the centre inside the graph.
    pub depth: Vec<usize>,
    /// False when the view omits neighbours of some expanded vertex.
    pub exact: bool,
}

impl Graph {
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        if !self.exact {
            writeln!(out, "  // truncated view: some neighbours omitted").unwrap();
        }
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(out, "  v{i} [label=\"{}\"];", l.replace('\\', "\\\\").replace('"', "\\\"")).unwrap();
        }
        for (a, b) in &self.edges {
            writeln!(out, "  v{a} -- v{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// All-pairs-free helper: breadth-first distances from vertex `s`.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut dist = vec![None; self.labels.len()];
        dist[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dist[x].unwrap() + 1);
                    q.push_back(y);
                }
            }
        }
        dist
    }
}

fn bfs_ball<V, F>(center: V, radius: usize, mut neighbours: F, label: impl Fn(&V) -> String) -> (Graph, Vec<V>)
where
    V: Clone + Eq + std::hash::Hash,
    F: FnMut(&V) -> (Vec<V>, bool),
{
    let mut index: HashMap<V, usize> = HashMap::new();
    let mut verts = vec![center.clone()];
    let mut depth = vec![0];
    index.insert(center, 0);
    let mut edges = Vec::new();
    let mut edge_set: HashSet<(usize, usize)> = HashSet::new();
    let mut exact = true;
    let mut q = VecDeque::from([0usize]);
    while let Some(i) = q.pop_front() {
        if depth[i] == radius {
            continue;
        }
        let (ns, complete) = neighbours(&verts[i]);
        exact &= complete;
        for n in ns {
            let j = match index.get(&n) {
                Some(&j) => j,
                None => {
                    let j = verts.len();
                    index.insert(n.clone(), j);
                    verts.push(n);
                    depth.push(depth[i] + 1);
                    q.push_back(j);
                    j
                }
            };
            if i != j && edge_set.insert((i.min(j), i.max(j))) {
                edges.push((i, j));
            }
        }
    }
    let labels = verts.iter().map(&label).collect();
    (Graph { labels, edges, depth, exact }, verts)
}

pub fn tree_ball(center: &TreeVertex, radius: usize, horizon: i64) -> (Graph, Vec<TreeVertex>) {
    bfs_ball(
        center.clone(),
        radius,
        |v| (v.neighbours(horizon), v.kind == Vertex::B),
        |v| v.label(),
    )
}

/// Vertex of the coned-off Cayley graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConeVertex {
    Group(NormalForm),
    /// Cone point of `rep·⟨α,β,γδ⟩`, stored by its canonical representative.
    Cone(NormalForm),
}

impl ConeVertex {
    pub fn label(&self) -> String {
        match self {
            ConeVertex::Group(g) => serde_json::to_string(g).unwrap(),
            ConeVertex::Cone(g) => format!("cone:{}", serde_json::to_string(g).unwrap()),
        }
    }
}

fn tau() -> NormalForm {
    SubgroupId::DiskStab.generators()[2].clone()
}

/// Canonical representative of `g·⟨α,β,γδ⟩`: strip trailing β-syllables
/// and δ¹-syllables (δ·γδ = γ), then take the least of the remaining
/// shortest forms `g·h`, h ∈ ⟨α,γδ⟩.
pub fn disk_coset_rep(g: &NormalForm) -> NormalForm {
    let t = tau();
    let mut g = g.clone();
    loop {
        match g.syllables().last() {
            Some(&Syllable::Beta { exp }) => g = g.mul(&NormalForm::beta(-exp)),
            Some(&Syllable::Delta { exp: 1 }) => g = g.mul(&t),
            _ => break,
        }
    }
    let a = NormalForm::alpha();
    let cands = [g.clone(), g.mul(&a), g.mul(&t), g.mul(&a).mul(&t)];
    let shortest = cands.iter().map(|c| c.syllables().len()).min().unwrap();
    cands.into_iter().filter(|c| c.syllables().len() == shortest).min().unwrap()
}

pub fn same_disk_coset(g: &NormalForm, h: &NormalForm) -> bool {
    disk_stab_member(&g.inverse().mul(h)).is_some()
}

fn letter_elements() -> Vec<NormalForm> {
    let mut v: Vec<NormalForm> = ALL_LETTERS.iter().map(|l| l.element()).collect();
    v.dedup();
    v
}

fn cone_neighbours(v: &ConeVertex, subgroup_ball: &[NormalForm], letters: &[NormalForm]) -> Vec<ConeVertex> {
    match v {
        ConeVertex::Group(x) => {
            let mut out: Vec<ConeVertex> = letters.iter().map(|s| ConeVertex::Group(x.mul(s))).collect();
            out.push(ConeVertex::Cone(disk_coset_rep(x)));
            out
        }
        ConeVertex::Cone(c) => subgroup_ball.iter().map(|h| ConeVertex::Group(c.mul(h))).collect(),
    }
}

pub fn cone_ball(center: &ConeVertex, radius: usize, budget: usize) -> (Graph, Vec<ConeVertex>) {
    let subgroup_ball = disk_stab_ball(budget);
    let letters = letter_elements();
    bfs_ball(
        center.clone(),
        radius,
        |v| (cone_neighbours(v, &subgroup_ball, &letters), matches!(v, ConeVertex::Group(_))),
        |v| v.label(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    Tree,
    Cone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center {
    Tree(TreeVertex),
    Cone(ConeVertex),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BallError {
    #[error("radius {radius} exceeds the cap {cap}")]
    RadiusTooLarge { radius: usize, cap: usize },
}

/// Ball of the given radius. `budget` is the β-exponent horizon for the tree
/// and the subgroup word length used to expand cone points.
pub fn ball(center: &Center, radius: usize, budget: usize) -> Result<Graph, BallError> {
    if radius > MAX_RADIUS {
        return Err(BallError::RadiusTooLarge { radius, cap: MAX_RADIUS });
    }
    Ok(match center {
        Center::Tree(v) => tree_ball(v, radius, budget as i64).0,
        Center::Cone(v) => cone_ball(v, radius, budget).0,
    })
}

/// Best path length found between the cone points of `g·H` and `h·H`,
/// H = ⟨α,β,γδ⟩, and whether it is known to be exact.
///
/// Distinct cone points are never adjacent and share no group vertex, so
/// any path between them has length at least 3; a bound of 0 or 3 is
/// therefore exact. Larger values are upper bounds.
pub fn cone_distance_upper(g: &NormalForm, h: &NormalForm, budget: usize) -> (usize, bool) {
    let src = disk_coset_rep(g);
    let dst = disk_coset_rep(h);
    if src == dst {
        return (0, true);
    }
    let fallback = src.inverse().mul(&dst).word_length() + 2;
    let target = ConeVertex::Cone(dst);
    let subgroup_ball = disk_stab_ball(budget);
    let letters = letter_elements();
    let max_depth = CONE_SEARCH_DEPTH.min(fallback.saturating_sub(1));
    let mut seen: HashMap<ConeVertex, usize> = HashMap::new();
    let start = ConeVertex::Cone(src);
    seen.insert(start.clone(), 0);
    let mut q = VecDeque::from([start]);
    let mut found = None;
    'bfs: while let Some(v) = q.pop_front() {
        let d = seen[&v];
        if d >= max_depth {
            continue;
        }
        for n in cone_neighbours(&v, &subgroup_ball, &letters) {
            if seen.contains_key(&n) {
                continue;
            }
            if n == target {
                found = Some(d + 1);
                break 'bfs;
            }
            seen.insert(n.clone(), d + 1);
            q.push_back(n);
        }
    }
    let bound = found.map_or(fallback, |f| f.min(fallback));
    (bound, bound == 3)
}
