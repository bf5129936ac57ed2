//! Blow-up processes and their dual graphs.
//!
//! Components are identified by their creation index (1-based,
//! [`ComponentId`]); internally vertices are addressed by the 0-based
//! position in creation order.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{int, Rational};
use crate::error::{Error, Result};

/// 1-based creation index of an exceptional component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(pub usize);

impl ComponentId {
    pub fn from_index(i: usize) -> Self {
        ComponentId(i + 1)
    }

    pub fn index(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.0)
    }
}

/// Where a blow-up is centered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Center {
    /// The origin of the plane.
    Initial,
    /// A point lying on exactly one exceptional component.
    Free(ComponentId),
    /// The intersection point of two exceptional components.
    Satellite(ComponentId, ComponentId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlowUpStep {
    pub index: usize,
    pub center: Center,
}

/// A finite sequence of point blow-ups together with its dual graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUpProcess {
    steps: Vec<BlowUpStep>,
    rho: Vec<u64>,
    adj: Vec<BTreeSet<usize>>,
    self_int: Vec<i64>,
}

impl BlowUpProcess {
    pub fn steps(&self) -> &[BlowUpStep] {
        &self.steps
    }

    pub fn num_components(&self) -> usize {
        self.steps.len()
    }

    pub fn rho(&self) -> &[u64] {
        &self.rho
    }

    pub fn self_intersections(&self) -> &[i64] {
        &self.self_int
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, ns) in self.adj.iter().enumerate() {
            for &w in ns {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out
    }

    pub fn dual_graph(&self) -> DualGraph {
        DualGraph {
            rho: self.rho.clone(),
            adj: self.adj.iter().map(|s| s.iter().copied().collect()).collect(),
            self_int: self.self_int.clone(),
        }
    }

    /// The last-created component.
    pub fn last_component(&self) -> ComponentId {
        ComponentId(self.steps.len())
    }
}

/// Build a process from its centers, computing multiplicities `rho`,
/// adjacency and self-intersections.
pub fn build_process(centers: &[Center]) -> Result<BlowUpProcess> {
    let mut p = BlowUpProcess {
        steps: Vec::with_capacity(centers.len()),
        rho: Vec::with_capacity(centers.len()),
        adj: Vec::with_capacity(centers.len()),
        self_int: Vec::with_capacity(centers.len()),
    };
    if centers.is_empty() {
        return Err(Error::InvalidStep {
            index: 1,
            reason: "a process needs at least the initial blow-up".into(),
        });
    }
    for (k, &center) in centers.iter().enumerate() {
        let index = k + 1;
        let bad = |reason: String| Error::InvalidStep { index, reason };
        let exists = |c: ComponentId| c.0 >= 1 && c.0 < index;
        let new = k;
        match center {
            Center::Initial => {
                if index != 1 {
                    return Err(bad("initial blow-up only allowed as step 1".into()));
                }
                p.rho.push(1);
                p.adj.push(BTreeSet::new());
                p.self_int.push(-1);
            }
            _ if index == 1 => {
                return Err(bad("step 1 must be the initial blow-up".into()));
            }
            Center::Free(s) => {
                if !exists(s) {
                    return Err(bad(format!("component {} does not exist yet", s.0)));
                }
                let s = s.index();
                p.rho.push(p.rho[s]);
                p.adj.push(BTreeSet::from([s]));
                p.adj[s].insert(new);
                p.self_int[s] -= 1;
                p.self_int.push(-1);
            }
            Center::Satellite(s, t) => {
                if !exists(s) || !exists(t) {
                    return Err(bad(format!(
                        "satellite center on nonexistent component ({}, {})",
                        s.0, t.0
                    )));
                }
                let (s, t) = (s.index(), t.index());
                if s == t || !p.adj[s].contains(&t) {
                    return Err(bad(format!(
                        "components {} and {} do not meet",
                        s + 1,
                        t + 1
                    )));
                }
                p.rho.push(p.rho[s] + p.rho[t]);
                p.adj[s].remove(&t);
                p.adj[t].remove(&s);
                p.adj[s].insert(new);
                p.adj[t].insert(new);
                p.adj.push(BTreeSet::from([s, t]));
                p.self_int[s] -= 1;
                p.self_int[t] -= 1;
                p.self_int.push(-1);
            }
        }
        p.steps.push(BlowUpStep { index, center });
    }
    Ok(p)
}

/// Number of branches of the strict transform attached to each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveAttachment {
    counts: Vec<u32>,
}

impl CurveAttachment {
    pub fn new(counts: Vec<u32>) -> Self {
        CurveAttachment { counts }
    }

    pub fn empty(num_components: usize) -> Self {
        CurveAttachment { counts: vec![0; num_components] }
    }

    pub fn single(num_components: usize, at: ComponentId, n: u32) -> Self {
        let mut a = Self::empty(num_components);
        a.counts[at.index()] = n;
        a
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, v: usize) -> u32 {
        self.counts[v]
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Tree data the coloration search and the certificate solver work on:
/// vertex multiplicities, adjacency and self-intersections.
///
/// Unlike [`BlowUpProcess`] this carries no creation order, so vertices
/// can be relabeled freely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub rho: Vec<u64>,
    pub adj: Vec<Vec<usize>>,
    pub self_int: Vec<i64>,
}

impl DualGraph {
    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.num_edges() + 1 == self.len()
    }

    /// Intersection matrix: self-intersections on the diagonal, 1 for
    /// meeting components.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut m = vec![vec![0i64; n]; n];
        for v in 0..n {
            m[v][v] = self.self_int[v];
            for &w in &self.adj[v] {
                m[v][w] = 1;
            }
        }
        m
    }

    /// Sylvester test on minus the intersection matrix, by exact
    /// symmetric elimination.
    pub fn is_negative_definite(&self) -> bool {
        let n = self.len();
        let mut a: Vec<Vec<Rational>> = self
            .intersection_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(|x| int(-x)).collect())
            .collect();
        for k in 0..n {
            if !a[k][k].is_positive() {
                return false;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &a[k][k];
                for j in k..n {
                    let d = &f * &a[k][j];
                    a[i][j] -= d;
                }
            }
        }
        true
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> DualGraph {
        let n = self.len();
        let mut rho = vec![0; n];
        let mut self_int = vec![0; n];
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            rho[perm[v]] = self.rho[v];
            self_int[perm[v]] = self.self_int[v];
            let mut ns: Vec<usize> = self.adj[v].iter().map(|&w| perm[w]).collect();
            ns.sort_unstable();
            adj[perm[v]] = ns;
        }
        DualGraph { rho, adj, self_int }
    }
}

/// How a curve class is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSpec {
    Explicit {
        process: BlowUpProcess,
        attachment: CurveAttachment,
    },
    /// Characteristic exponents `beta_0, ..., beta_g` of a branch.
    CharExponents(Vec<u32>),
    /// `y^(N nu0) - x^(N nu1) = 0`.
    CNab { n: u32, nu0: u32, nu1: u32 },
    /// `(y^nu0 - x^nu1)(x^nu0 - y^nu1) = 0`.
    TwoComponent { nu0: u32, nu1: u32 },
    /// `N` smooth pairwise transverse branches.
    NLines { n: u32 },
}

impl CurveSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidSpec(s));
        match *self {
            CurveSpec::Explicit {
                ref process,
                ref attachment,
            } => {
                if attachment.len() != process.num_components() {
                    return bad(format!(
                        "attachment covers {} components, process has {}",
                        attachment.len(),
                        process.num_components()
                    ));
                }
                if attachment.total() == 0 {
                    return bad("no branch attached".into());
                }
                Ok(())
            }
            CurveSpec::CharExponents(ref betas) => validate_char_exponents(betas),
            CurveSpec::CNab { n, nu0, nu1 } => {
                if n < 1 || nu0 < 1 {
                    return bad("N and nu0 must be positive".into());
                }
                if nu0 > nu1 || nu0.gcd(&nu1) != 1 {
                    return bad(format!("need coprime nu0 <= nu1, got ({nu0}, {nu1})"));
                }
                Ok(())
            }
            CurveSpec::TwoComponent { nu0, nu1 } => {
                if nu0 < 2 || nu0 >= nu1 || nu0.gcd(&nu1) != 1 {
                    return bad(format!("need coprime 1 < nu0 < nu1, got ({nu0}, {nu1})"));
                }
                Ok(())
            }
            CurveSpec::NLines { n } => {
                if n < 1 {
                    return bad("N must be positive".into());
                }
                Ok(())
            }
        }
    }

    /// The blow-up process and attachments realizing this class.
    pub fn resolve(&self) -> Result<(BlowUpProcess, CurveAttachment)> {
        self.validate()?;
        match self {
            CurveSpec::Explicit {
                process,
                attachment,
            } => Ok((process.clone(), attachment.clone())),
            CurveSpec::CharExponents(betas) => from_char_exponents(betas),
            _ => family_graph(self),
        }
    }

    /// Multiplicity at the origin of the curve, when known from the spec.
    pub fn curve_multiplicity(&self) -> Option<u32> {
        match *self {
            CurveSpec::CharExponents(ref b) => b.first().copied(),
            CurveSpec::CNab { n, nu0, .. } => Some(n * nu0),
            CurveSpec::TwoComponent { nu0, .. } => Some(2 * nu0),
            CurveSpec::NLines { n } => Some(n),
            CurveSpec::Explicit { .. } => None,
        }
    }
}

fn validate_char_exponents(betas: &[u32]) -> Result<()> {
    let bad = |s: String| Err(Error::InvalidSpec(s));
    if betas.len() < 2 {
        return bad("need at least beta_0 and beta_1".into());
    }
    if betas[0] < 2 {
        return bad("beta_0 must be at least 2".into());
    }
    if betas.windows(2).any(|w| w[0] >= w[1]) {
        return bad("characteristic exponents must increase strictly".into());
    }
    let mut e = betas[0];
    for (i, &b) in betas.iter().enumerate().skip(1) {
        let next = e.gcd(&b);
        if next == e {
            return bad(format!("beta_{i} = {b} is divisible by the previous gcd {e}"));
        }
        e = next;
    }
    if e != 1 {
        return bad(format!("gcd of all exponents is {e}, expected 1"));
    }
    Ok(())
}

/// `gcd(beta_0, ..., beta_{g-1})`.
pub fn penultimate_gcd(betas: &[u32]) -> u32 {
    betas[..betas.len() - 1].iter().fold(0, |acc, &b| acc.gcd(&b))
}

/// Local state of a branch at the point about to be blown up: in
/// coordinates `(u, v)` adapted to the divisor, `u ~ t^a`, `v ~ t^b`, and
/// `{u = 0}` / `{v = 0}` are the listed exceptional components if any.
struct BranchState {
    a: u32,
    b: u32,
    on_u: Option<ComponentId>,
    on_v: Option<ComponentId>,
}

/// Blow up along a branch until it is resolved; returns the component
/// carrying its strict transform. `deltas` are the successive differences
/// `beta_{i+1} - beta_i` still to be processed.
fn follow_branch(centers: &mut Vec<Center>, mut st: BranchState, deltas: &[u32]) -> ComponentId {
    let mut deltas = deltas.iter();
    loop {
        let center = match (st.on_u, st.on_v) {
            (None, None) => Center::Initial,
            (Some(c), None) | (None, Some(c)) => Center::Free(c),
            (Some(c), Some(d)) => Center::Satellite(c, d),
        };
        centers.push(center);
        let new = ComponentId(centers.len());
        match st.a.cmp(&st.b) {
            std::cmp::Ordering::Less => {
                st.b -= st.a;
                st.on_u = Some(new);
            }
            std::cmp::Ordering::Greater => {
                st.a -= st.b;
                st.on_v = Some(new);
            }
            std::cmp::Ordering::Equal => match deltas.next() {
                Some(&d) => {
                    st = BranchState {
                        a: st.a,
                        b: d,
                        on_u: Some(new),
                        on_v: None,
                    }
                }
                None => return new,
            },
        }
    }
}

/// Minimal embedded resolution of a branch with the given characteristic
/// exponents, via the Euclidean algorithm on each characteristic pair.
/// The strict transform is attached once to the last component.
pub fn from_char_exponents(betas: &[u32]) -> Result<(BlowUpProcess, CurveAttachment)> {
    validate_char_exponents(betas)?;
    let deltas: Vec<u32> = betas[1..].windows(2).map(|w| w[1] - w[0]).collect();
    let mut centers = Vec::new();
    let st = BranchState {
        a: betas[0],
        b: betas[1],
        on_u: None,
        on_v: None,
    };
    let central = follow_branch(&mut centers, st, &deltas);
    let process = build_process(&centers)?;
    let att = CurveAttachment::single(process.num_components(), central, 1);
    Ok((process, att))
}

/// Processes and attachments for the named families.
pub fn family_graph(spec: &CurveSpec) -> Result<(BlowUpProcess, CurveAttachment)> {
    spec.validate()?;
    match *spec {
        CurveSpec::CNab { n, nu0: 1, nu1 } => {
            // N smooth branches with pairwise contact nu1: a free chain
            let mut centers = vec![Center::Initial];
            for s in 1..nu1 as usize {
                centers.push(Center::Free(ComponentId(s)));
            }
            let p = build_process(&centers)?;
            let att = CurveAttachment::single(p.num_components(), p.last_component(), n);
            Ok((p, att))
        }
        CurveSpec::CNab { n, nu0, nu1 } => {
            let (p, _) = from_char_exponents(&[nu0, nu1])?;
            let att = CurveAttachment::single(p.num_components(), p.last_component(), n);
            Ok((p, att))
        }
        CurveSpec::TwoComponent { nu0, nu1 } => {
            // tangent cones are distinct lines, so the branches part after
            // the first blow-up and each follows its own cusp chain
            let mut centers = vec![Center::Initial];
            let mut ends = Vec::new();
            for _ in 0..2 {
                let st = BranchState {
                    a: nu0,
                    b: nu1 - nu0,
                    on_u: Some(ComponentId(1)),
                    on_v: None,
                };
                ends.push(follow_branch(&mut centers, st, &[]));
            }
            let p = build_process(&centers)?;
            let mut counts = vec![0; p.num_components()];
            for e in ends {
                counts[e.index()] += 1;
            }
            Ok((p, CurveAttachment::new(counts)))
        }
        CurveSpec::NLines { n } => {
            let p = build_process(&[Center::Initial])?;
            Ok((p, CurveAttachment::new(vec![n])))
        }
        CurveSpec::CharExponents(ref b) => from_char_exponents(b),
        CurveSpec::Explicit {
            ref process,
            ref attachment,
        } => Ok((process.clone(), attachment.clone())),
    }
}
