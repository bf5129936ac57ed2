//! Realizability of numbered colored graphs and rational Camacho-Sad
//! index certificates.
//!
//! A white vertex `s` with `m_s = s(2) + val_w(s)` marked points carries
//! indices `lambda_1, ..., lambda_{m_s}` summing to `-(s.s)`. One marked
//! point per white neighbor is the intersection with that neighbor, and
//! the two indices at an intersection point multiply to 1. The remaining
//! `s(2)` points are free.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{int, Rational};
use crate::error::{Error, Result};
use crate::saito_min::{Color, NumberedColoredGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// White vertex: `s(2) + val_w(s) >= 0`.
    A,
    /// Black vertex: `s(2) + val_w(s) >= 2`.
    B,
    /// Every white component has a vertex with `s(2) > 0`.
    C,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::A => "a",
            Condition::B => "b",
            Condition::C => "c",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// The offending vertex, or every vertex of the offending component.
    pub vertices: Vec<usize>,
    pub condition: Condition,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizabilityReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

pub fn check_realizability(g: &NumberedColoredGraph) -> RealizabilityReport {
    let mut violations = Vec::new();
    for v in 0..g.len() {
        let m = g.second[v] + g.white_valence(v);
        match g.colors[v] {
            Color::White if m < 0 => violations.push(Violation {
                vertices: vec![v],
                condition: Condition::A,
                detail: format!("E{}: s(2) + val_w = {m} < 0", v + 1),
            }),
            Color::Black if m < 2 => violations.push(Violation {
                vertices: vec![v],
                condition: Condition::B,
                detail: format!("E{}: s(2) + val_w = {m} < 2", v + 1),
            }),
            _ => {}
        }
    }
    for comp in g.white_components() {
        if comp.iter().all(|&v| g.second[v] <= 0) {
            violations.push(Violation {
                detail: format!(
                    "white component {{{}}} has no vertex with s(2) > 0",
                    comp.iter().map(|v| format!("E{}", v + 1)).collect::<Vec<_>>().join(", ")
                ),
                vertices: comp,
                condition: Condition::C,
            });
        }
    }
    RealizabilityReport {
        ok: violations.is_empty(),
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexIndices {
    pub vertex: usize,
    pub lambdas: Vec<Rational>,
}

/// The marked point shared by two white components: slot `slots.0` of
/// `vertices.0` and slot `slots.1` of `vertices.1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSlots {
    pub vertices: (usize, usize),
    pub slots: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSCertificate {
    pub vertices: Vec<VertexIndices>,
    pub edges: Vec<EdgeSlots>,
}

const MAX_RETRIES: usize = 64;

/// Candidate for a free edge value: 1, 1/2, 1/3, ...
fn candidate(idx: usize) -> Rational {
    Rational::new(1.into(), (idx as i64 + 1).into())
}

/// Split `target` over `m >= 1` nonzero values: equal parts, or
/// `1, ..., 1, -(m-1)` when the target is zero.
fn fill(target: &Rational, m: usize) -> Vec<Rational> {
    if !target.is_zero() {
        return vec![target / int(m as i64); m];
    }
    debug_assert!(m >= 2);
    let mut v = vec![Rational::one(); m - 1];
    v.push(int(-(m as i64 - 1)));
    v
}

struct ComponentSolver<'a> {
    g: &'a NumberedColoredGraph,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    choice: Vec<usize>,
    up: Vec<Rational>,
    root: usize,
}

impl<'a> ComponentSolver<'a> {
    fn new(g: &'a NumberedColoredGraph, root: usize) -> Self {
        let n = g.len();
        let mut s = ComponentSolver {
            g,
            parent: vec![None; n],
            children: vec![Vec::new(); n],
            choice: vec![0; n],
            up: vec![Rational::zero(); n],
            root,
        };
        let mut stack = vec![root];
        let mut seen = vec![false; n];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for &w in &g.graph.adj[v] {
                if g.colors[w].is_white() && !seen[w] {
                    seen[w] = true;
                    s.parent[w] = Some(v);
                    s.children[v].push(w);
                    stack.push(w);
                }
            }
        }
        for c in &mut s.children {
            c.sort_unstable();
        }
        s
    }

    fn target(&self, v: usize) -> Rational {
        int(-self.g.graph.self_int[v])
    }

    fn down(&self, v: usize) -> Rational {
        self.children[v]
            .iter()
            .map(|&c| self.up[c].recip())
            .fold(Rational::zero(), |a, b| a + b)
    }

    fn free_slots(&self, v: usize) -> i64 {
        self.g.second[v]
    }

    /// First vertex with free slots in the preorder of `v`'s subtree.
    fn first_free(&self, v: usize) -> Option<usize> {
        if self.free_slots(v) > 0 {
            return Some(v);
        }
        self.children[v].iter().find_map(|&c| self.first_free(c))
    }

    /// Advance the choice of the first free vertex below `v` and re-solve
    /// the child subtree containing it.
    fn perturb_below(&mut self, v: usize) -> Result<()> {
        let hit = self.children[v]
            .iter()
            .find_map(|&c| self.first_free(c).map(|f| (c, f)));
        match hit {
            Some((c, f)) => {
                self.choice[f] += 1;
                self.solve(c)
            }
            None => Err(Error::SolverExhausted { vertex: self.root + 1 }),
        }
    }

    fn solve(&mut self, v: usize) -> Result<()> {
        for c in self.children[v].clone() {
            self.solve(c)?;
        }
        let free = self.free_slots(v);
        for _ in 0..MAX_RETRIES {
            let rest = self.target(v) - self.down(v);
            if v == self.root {
                if free == 1 && rest.is_zero() {
                    self.perturb_below(v)?;
                    continue;
                }
                return Ok(());
            }
            if free == 0 {
                if rest.is_zero() {
                    self.perturb_below(v)?;
                    continue;
                }
                self.up[v] = rest;
                return Ok(());
            }
            loop {
                let x = candidate(self.choice[v]);
                if free == 1 && (&rest - &x).is_zero() {
                    self.choice[v] += 1;
                    continue;
                }
                self.up[v] = x;
                return Ok(());
            }
        }
        Err(Error::SolverExhausted { vertex: self.root + 1 })
    }

    fn lambdas(&self, v: usize) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut used = Rational::zero();
        for &w in &self.g.graph.adj[v] {
            if !self.g.colors[w].is_white() {
                continue;
            }
            let val = if Some(w) == self.parent[v] {
                self.up[v].clone()
            } else {
                self.up[w].recip()
            };
            used += &val;
            out.push(val);
        }
        let free = self.free_slots(v) as usize;
        if free > 0 {
            out.extend(fill(&(self.target(v) - used), free));
        }
        out
    }
}

/// White neighbors of `v`, ascending; the position in this list is the
/// slot of the corresponding intersection point.
fn white_neighbors(g: &NumberedColoredGraph, v: usize) -> Vec<usize> {
    let mut ns: Vec<usize> = g.graph.adj[v]
        .iter()
        .copied()
        .filter(|&w| g.colors[w].is_white())
        .collect();
    ns.sort_unstable();
    ns
}

/// Solve the sum and reciprocity constraints on every white component.
///
/// Each component is rooted at its lowest vertex with `s(2) > 0` and
/// solved leaves-first: a vertex without free slots forwards
/// `-(s.s) - (incoming values)` to its parent, a vertex with free slots
/// sends the next candidate of `1, 1/2, 1/3, ...` and absorbs the rest in
/// its free slots. A forced zero advances the candidate of the nearest
/// free descendant.
pub fn solve_cs_indices(g: &NumberedColoredGraph) -> Result<CSCertificate> {
    let report = check_realizability(g);
    if !report.ok {
        let details: Vec<String> = report.violations.iter().map(|v| v.detail.clone()).collect();
        return Err(Error::NotRealizable(details.join("; ")));
    }
    for v in 0..g.len() {
        if g.colors[v].is_white() && g.second[v] < 0 {
            return Err(Error::Malformed(format!(
                "white vertex E{} has s(2) = {} < 0; its intersection points cannot all be marked",
                v + 1,
                g.second[v]
            )));
        }
    }
    let mut per_vertex: Vec<Option<Vec<Rational>>> = vec![None; g.len()];
    for comp in g.white_components() {
        let root = *comp
            .iter()
            .find(|&&v| g.second[v] > 0)
            .expect("condition (c) checked above");
        let mut solver = ComponentSolver::new(g, root);
        solver.solve(root)?;
        for &v in &comp {
            per_vertex[v] = Some(solver.lambdas(v));
        }
    }
    let vertices = per_vertex
        .into_iter()
        .enumerate()
        .filter_map(|(v, l)| l.map(|lambdas| VertexIndices { vertex: v, lambdas }))
        .collect();
    let mut edges = Vec::new();
    for a in 0..g.len() {
        if !g.colors[a].is_white() {
            continue;
        }
        let na = white_neighbors(g, a);
        for (slot_a, &b) in na.iter().enumerate() {
            if b > a {
                let slot_b = white_neighbors(g, b)
                    .iter()
                    .position(|&w| w == a)
                    .expect("adjacency is symmetric");
                edges.push(EdgeSlots {
                    vertices: (a, b),
                    slots: (slot_a, slot_b),
                });
            }
        }
    }
    Ok(CSCertificate { vertices, edges })
}

/// Independent check of a certificate against the graph: every index is
/// nonzero, every vertex sum is `-(s.s)` and every intersection point has
/// reciprocal indices. Errors on a certificate of the wrong shape.
pub fn verify_certificate(g: &NumberedColoredGraph, cert: &CSCertificate) -> Result<bool> {
    let whites: Vec<usize> = (0..g.len()).filter(|&v| g.colors[v].is_white()).collect();
    let listed: Vec<usize> = cert.vertices.iter().map(|c| c.vertex).collect();
    if listed != whites {
        return Err(Error::ShapeMismatch(format!(
            "certificate lists vertices {listed:?}, white vertices are {whites:?}"
        )));
    }
    let mut lambdas: Vec<Option<&[Rational]>> = vec![None; g.len()];
    for entry in &cert.vertices {
        let v = entry.vertex;
        let m = g.second[v] + g.white_valence(v);
        if entry.lambdas.len() as i64 != m {
            return Err(Error::ShapeMismatch(format!(
                "E{} has {} indices, expected {m}",
                v + 1,
                entry.lambdas.len()
            )));
        }
        lambdas[v] = Some(&entry.lambdas);
    }
    let mut expected_edges = Vec::new();
    for &a in &whites {
        for b in white_neighbors(g, a) {
            if b > a {
                expected_edges.push((a, b));
            }
        }
    }
    let mut given: Vec<(usize, usize)> = cert.edges.iter().map(|e| e.vertices).collect();
    given.sort_unstable();
    if given != expected_edges {
        return Err(Error::ShapeMismatch(format!(
            "certificate edges {given:?}, white edges are {expected_edges:?}"
        )));
    }
    let mut used: Vec<Vec<bool>> = (0..g.len())
        .map(|v| vec![false; lambdas[v].map_or(0, |l| l.len())])
        .collect();
    let mut ok = true;
    for e in &cert.edges {
        let ((a, b), (sa, sb)) = (e.vertices, e.slots);
        let (la, lb) = (lambdas[a].unwrap(), lambdas[b].unwrap());
        if sa >= la.len() || sb >= lb.len() {
            return Err(Error::ShapeMismatch(format!(
                "slot out of range on edge E{}-E{}",
                a + 1,
                b + 1
            )));
        }
        if used[a][sa] || used[b][sb] {
            return Err(Error::ShapeMismatch(format!(
                "slot reused on edge E{}-E{}",
                a + 1,
                b + 1
            )));
        }
        used[a][sa] = true;
        used[b][sb] = true;
        ok &= (&la[sa] * &lb[sb]).is_one();
    }
    for entry in &cert.vertices {
        let sum = entry
            .lambdas
            .iter()
            .fold(Rational::zero(), |acc, l| acc + l);
        ok &= sum == int(-g.graph.self_int[entry.vertex]);
        ok &= entry.lambdas.iter().all(|l| !l.is_zero());
    }
    Ok(ok)
}
