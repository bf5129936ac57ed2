//! Minimal Saito number of an equisingularity class.
//!
//! A coloration of the dual graph (black = dicritical component, white =
//! invariant component) determines a canonical numbering; the multiplicity
//! `-1 + sum s(1) s(2)` of the numbered graph is the order of a foliation
//! realizing it. The minimum over all `2^b` colorations is the minimal
//! Saito number of the class.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use crate::blowup::{penultimate_gcd, CurveAttachment, CurveSpec, DualGraph};
use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn is_white(self) -> bool {
        self == Color::White
    }

    pub fn as_char(self) -> char {
        match self {
            Color::Black => 'B',
            Color::White => 'W',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'B' | 'b' => Some(Color::Black),
            'W' | 'w' => Some(Color::White),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Black => "black",
            Color::White => "white",
        })
    }
}

/// Dual graph with a coloring and the pair `(s(1), s(2))` on each vertex,
/// where `s(1)` is always the multiplicity `rho(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberedColoredGraph {
    pub graph: DualGraph,
    pub colors: Vec<Color>,
    pub second: Vec<i64>,
}

impl NumberedColoredGraph {
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn first(&self, v: usize) -> i64 {
        self.graph.rho[v] as i64
    }

    /// Number of white neighbors of `v`.
    pub fn white_valence(&self, v: usize) -> i64 {
        self.graph.adj[v]
            .iter()
            .filter(|&&w| self.colors[w].is_white())
            .count() as i64
    }

    pub fn white_components(&self) -> Vec<Vec<usize>> {
        white_components(&self.graph, &self.colors)
    }
}

/// `-1 + sum_s s(1) s(2)`.
pub fn graph_multiplicity(g: &NumberedColoredGraph) -> i64 {
    -1 + (0..g.len()).map(|v| g.first(v) * g.second[v]).sum::<i64>()
}

/// Connected components of the subgraph induced on white vertices, each
/// sorted, listed by smallest vertex.
pub fn white_components(graph: &DualGraph, colors: &[Color]) -> Vec<Vec<usize>> {
    let n = graph.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] || !colors[start].is_white() {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &graph.adj[v] {
                if !seen[w] && colors[w].is_white() {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentClass {
    /// No branch of the curve attached anywhere on the component.
    K1,
    K2,
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentClass::K1 => "K1",
            ComponentClass::K2 => "K2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteComponent {
    pub vertices: Vec<usize>,
    pub class: ComponentClass,
    /// Vertex whose `s(2)` was raised to 1 (K1 components only).
    pub patched: Option<usize>,
}

/// Classify the white components of a coloration and pick the patch
/// vertex of each K1 component: minimal `rho`, lowest index on ties.
pub fn classify_components(
    graph: &DualGraph,
    att: &CurveAttachment,
    colors: &[Color],
) -> Vec<WhiteComponent> {
    white_components(graph, colors)
        .into_iter()
        .map(|vertices| {
            if vertices.iter().any(|&v| att.get(v) > 0) {
                WhiteComponent {
                    vertices,
                    class: ComponentClass::K2,
                    patched: None,
                }
            } else {
                let patched = vertices.iter().copied().min_by_key(|&v| (graph.rho[v], v));
                WhiteComponent {
                    vertices,
                    class: ComponentClass::K1,
                    patched,
                }
            }
        })
        .collect()
}

/// Canonical numbering of a coloration: `s(2) = n_s` on white vertices,
/// `s(2) = 2 - val_w(s)` on black ones, then `s(2) = 1` at the minimal-rho
/// vertex of every white component carrying no branch.
pub fn numbering_for_coloration(
    graph: &DualGraph,
    att: &CurveAttachment,
    colors: &[Color],
) -> NumberedColoredGraph {
    assert_eq!(colors.len(), graph.len(), "coloring must cover every vertex");
    let mut g = NumberedColoredGraph {
        graph: graph.clone(),
        colors: colors.to_vec(),
        second: vec![0; graph.len()],
    };
    for v in 0..graph.len() {
        g.second[v] = match colors[v] {
            Color::White => att.get(v) as i64,
            Color::Black => 2 - g.white_valence(v),
        };
    }
    for comp in classify_components(graph, att, colors) {
        if let Some(p) = comp.patched {
            g.second[p] = 1;
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinSaitoResult {
    pub value: i64,
    pub witness: NumberedColoredGraph,
    pub components: Vec<WhiteComponent>,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub parallel: bool,
    pub vertex_limit: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            parallel: false,
            vertex_limit: DEFAULT_VERTEX_LIMIT,
        }
    }
}

/// Bitmask evaluator. Vertex `v` lives at bit `n - 1 - v`, so the integer
/// order of masks is the lexicographic order of color vectors with
/// black < white.
struct Evaluator {
    n: usize,
    bit: Vec<u64>,
    adj: Vec<u64>,
    rho: Vec<i64>,
    att: Vec<i64>,
}

impl Evaluator {
    fn new(graph: &DualGraph, att: &CurveAttachment) -> Self {
        let n = graph.len();
        let bit: Vec<u64> = (0..n).map(|v| 1u64 << (n - 1 - v)).collect();
        let adj = (0..n)
            .map(|v| graph.adj[v].iter().fold(0u64, |m, &w| m | bit[w]))
            .collect();
        Evaluator {
            n,
            bit,
            adj,
            rho: graph.rho.iter().map(|&r| r as i64).collect(),
            att: att.counts().iter().map(|&c| c as i64).collect(),
        }
    }

    fn vertex_of_bit(&self, b: u64) -> usize {
        self.n - 1 - b.trailing_zeros() as usize
    }

    fn eval(&self, white: u64) -> i64 {
        let mut total = -1i64;
        for v in 0..self.n {
            if white & self.bit[v] == 0 {
                total += self.rho[v] * (2 - (self.adj[v] & white).count_ones() as i64);
            } else {
                total += self.rho[v] * self.att[v];
            }
        }
        let mut unseen = white;
        while unseen != 0 {
            let seed = unseen & unseen.wrapping_neg();
            let mut frontier = seed;
            let mut comp = seed;
            while frontier != 0 {
                let b = frontier & frontier.wrapping_neg();
                frontier &= !b;
                let v = self.vertex_of_bit(b);
                let fresh = self.adj[v] & white & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            unseen &= !comp;
            let mut has_branch = false;
            let mut min_rho = i64::MAX;
            let mut m = comp;
            while m != 0 {
                let b = m & m.wrapping_neg();
                m &= !b;
                let v = self.vertex_of_bit(b);
                has_branch |= self.att[v] > 0;
                min_rho = min_rho.min(self.rho[v]);
            }
            if !has_branch {
                total += min_rho;
            }
        }
        total
    }

    fn colors(&self, white: u64) -> Vec<Color> {
        (0..self.n)
            .map(|v| {
                if white & self.bit[v] != 0 {
                    Color::White
                } else {
                    Color::Black
                }
            })
            .collect()
    }
}

/// Exhaustive search over all colorations. The witness is the
/// lexicographically smallest minimizing color vector (vertices in
/// creation order, black before white); the parallel and sequential
/// paths reduce on the same `(value, mask)` key and agree bit for bit.
pub fn min_saito(
    graph: &DualGraph,
    att: &CurveAttachment,
    opts: SearchOptions,
) -> Result<MinSaitoResult> {
    let n = graph.len();
    let limit = opts.vertex_limit.min(63);
    if n > limit {
        return Err(Error::TooLarge { vertices: n, limit });
    }
    if att.len() != n {
        return Err(Error::InvalidSpec(format!(
            "attachment covers {} vertices, graph has {n}",
            att.len()
        )));
    }
    let ev = Evaluator::new(graph, att);
    let count = 1u64 << n;
    let (value, mask) = if opts.parallel {
        (0..count)
            .into_par_iter()
            .map(|m| (ev.eval(m), m))
            .min()
            .expect("at least one coloration")
    } else {
        (0..count)
            .map(|m| (ev.eval(m), m))
            .min()
            .expect("at least one coloration")
    };
    let colors = ev.colors(mask);
    let witness = numbering_for_coloration(graph, att, &colors);
    let components = classify_components(graph, att, &colors);
    debug_assert_eq!(graph_multiplicity(&witness), value);
    Ok(MinSaitoResult {
        value,
        witness,
        components,
    })
}

/// Resolve a curve spec and run the search on it.
pub fn min_saito_for_spec(spec: &CurveSpec, opts: SearchOptions) -> Result<MinSaitoResult> {
    let (process, att) = spec.resolve()?;
    min_saito(&process.dual_graph(), &att, opts)
}

/// Value of the multiplicity for one coloration (after numbering).
pub fn coloration_value(graph: &DualGraph, att: &CurveAttachment, colors: &[Color]) -> i64 {
    graph_multiplicity(&numbering_for_coloration(graph, att, colors))
}

/// Every vertex carries at least `2 + sum_{s' ~ s} rho(s') / rho(s)`
/// branches.
pub fn has_lot_of_components(graph: &DualGraph, att: &CurveAttachment) -> bool {
    (0..graph.len()).all(|v| {
        let neigh: u64 = graph.adj[v].iter().map(|&w| graph.rho[w]).sum();
        // n_s >= 2 + neigh / rho, cleared of the positive denominator
        att.get(v) as u64 * graph.rho[v] >= 2 * graph.rho[v] + neigh
    })
}

/// Family formulas for the minimal Saito number; `None` when no formula
/// applies.
pub fn min_saito_closed_form(spec: &CurveSpec) -> Result<Option<i64>> {
    spec.validate()?;
    Ok(match *spec {
        CurveSpec::CharExponents(ref b) => Some((b[0] / penultimate_gcd(b)) as i64),
        CurveSpec::CNab { n, nu0, .. } => Some(1.min(n as i64 * nu0 as i64 - 1)),
        CurveSpec::TwoComponent { .. } => Some(2),
        CurveSpec::NLines { n } => Some(1.min(n as i64 - 1)),
        CurveSpec::Explicit {
            ref process,
            ref attachment,
        } => {
            let g = process.dual_graph();
            if has_lot_of_components(&g, attachment) {
                Some(-1 + 2 * g.rho.iter().sum::<u64>() as i64)
            } else {
                None
            }
        }
    })
}

fn generic_max(curve_mult: u32, radial: bool) -> i64 {
    let m = curve_mult as i64;
    if radial && m.is_even() {
        m / 2 - 1
    } else {
        m / 2
    }
}

/// Maximal Saito number on the classes whose radiality is known.
pub fn max_saito(spec: &CurveSpec) -> Result<i64> {
    spec.validate()?;
    match *spec {
        CurveSpec::NLines { n } => Ok(generic_max(n, n >= 3)),
        CurveSpec::CNab { n, nu0, nu1 } => Ok(generic_max(n * nu0, nu1 == 1 && n >= 3)),
        CurveSpec::TwoComponent { nu0, .. } => Ok(nu0 as i64),
        CurveSpec::CharExponents(ref b) => {
            if b.len() == 2 {
                Ok(generic_max(b[0], false))
            } else if penultimate_gcd(b) == 2 {
                Ok(b[0] as i64 / 2)
            } else {
                Err(Error::RadialityUndetermined)
            }
        }
        CurveSpec::Explicit { .. } => Err(Error::RadialityUndetermined),
    }
}

/// Indented rendering rooted at the first component:
/// `E<id> (rho=.., s2=.., color)` per line.
pub fn render_tree(g: &NumberedColoredGraph) -> String {
    let mut out = String::new();
    if g.is_empty() {
        return out;
    }
    let mut stack = vec![(0usize, usize::MAX, 0usize)];
    while let Some((v, parent, depth)) = stack.pop() {
        out.push_str(&format!(
            "{}E{} (rho={}, s2={}, {})\n",
            "  ".repeat(depth),
            v + 1,
            g.first(v),
            g.second[v],
            g.colors[v]
        ));
        for &w in g.graph.adj[v].iter().rev() {
            if w != parent {
                stack.push((w, v, depth + 1));
            }
        }
    }
    out
}
