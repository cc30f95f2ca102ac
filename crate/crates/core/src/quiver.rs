//! Representations of quivers with multiplicities: the data model over the
//! truncated ring, truncation and extension of scalars, the group and
//! grading actions, support quivers, toric stability in the sense of King,
//! nilpotency and the null cone, automorphism reductivity, the stronger and
//! weaker twisted stability notions, and the reduction of the whole package
//! to graded data.
//!
//! The fully decided paths are toric (rank one at every vertex); stability
//! of a general-rank classical representation is accepted from an external
//! decider.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graded::{GradedRep, OrbitOracle, OrbitSet};
use crate::linalg::{QMatrix, QVector};
use crate::rational::Rational;
use crate::truncpoly::{AmMatrix, TruncPoly};

/// Finite directed multigraph; parallel arrows and loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

impl Arrow {
    pub fn new(id: &str, src: &str, tgt: &str) -> Self {
        Arrow {
            id: id.into(),
            src: src.into(),
            tgt: tgt.into(),
        }
    }
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate vertex id `{v}`")));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.id == a.id) {
                return Err(Error::Invalid(format!("duplicate arrow id `{}`", a.id)));
            }
            if !vertices.contains(&a.src) || !vertices.contains(&a.tgt) {
                return Err(Error::Invalid(format!(
                    "arrow `{}` has an endpoint outside the vertex set",
                    a.id
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    /// Undirected connectivity over the full vertex set.
    pub fn is_connected(&self) -> Result<bool> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::Invalid("connectivity of an empty vertex set".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            let s = self.vertex_index(&a.src).expect("validated");
            let t = self.vertex_index(&a.tgt).expect("validated");
            adj[s].push(t);
            adj[t].push(s);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        Ok(seen.into_iter().all(|s| s))
    }

    /// Directed cycle detection by iterated removal of sources.
    pub fn has_directed_cycle(&self) -> bool {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        let mut out = vec![Vec::new(); n];
        for a in &self.arrows {
            let s = self.vertex_index(&a.src).expect("validated");
            let t = self.vertex_index(&a.tgt).expect("validated");
            indegree[t] += 1;
            out[s].push(t);
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for &w in &out[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push(w);
                }
            }
        }
        removed < n
    }
}

/// Rank vector: a strictly positive module rank per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankVector(BTreeMap<String, usize>);

impl RankVector {
    pub fn new(map: BTreeMap<String, usize>) -> Self {
        RankVector(map)
    }

    pub fn toric(quiver: &Quiver) -> Self {
        RankVector(quiver.vertices().iter().map(|v| (v.clone(), 1)).collect())
    }

    pub fn get(&self, v: &str) -> usize {
        *self.0.get(v).unwrap_or(&0)
    }

    pub fn validate_for(&self, quiver: &Quiver) -> Result<()> {
        for v in quiver.vertices() {
            match self.0.get(v) {
                Some(&d) if d >= 1 => {}
                Some(_) => return Err(Error::Invalid(format!("rank 0 at vertex `{v}`"))),
                None => return Err(Error::Invalid(format!("missing rank at vertex `{v}`"))),
            }
        }
        Ok(())
    }

    pub fn is_toric(&self, quiver: &Quiver) -> bool {
        quiver.vertices().iter().all(|v| self.get(v) == 1)
    }

    pub fn total(&self, quiver: &Quiver) -> usize {
        quiver.vertices().iter().map(|v| self.get(v)).sum()
    }
}

/// Integer stability parameter, one weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityParam(BTreeMap<String, i64>);

impl StabilityParam {
    pub fn new(map: BTreeMap<String, i64>) -> Self {
        StabilityParam(map)
    }

    /// Weights listed in the quiver's vertex order.
    pub fn from_slice(quiver: &Quiver, weights: &[i64]) -> Result<Self> {
        if weights.len() != quiver.vertices().len() {
            return Err(Error::Dimension(format!(
                "{} weights for {} vertices",
                weights.len(),
                quiver.vertices().len()
            )));
        }
        Ok(StabilityParam(
            quiver
                .vertices()
                .iter()
                .cloned()
                .zip(weights.iter().copied())
                .collect(),
        ))
    }

    pub fn get(&self, v: &str) -> i64 {
        *self.0.get(v).unwrap_or(&0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(|&w| w == 0)
    }

    /// The pairing condition `sum rho_v d_v = 0`.
    pub fn is_valid_for(&self, quiver: &Quiver, rank: &RankVector) -> bool {
        quiver
            .vertices()
            .iter()
            .map(|v| self.get(v) * rank.get(v) as i64)
            .sum::<i64>()
            == 0
    }
}

/// Genericity for toric rank vectors: the weights sum to zero over the whole
/// vertex set but over no proper non-empty subset. Exponential in the number
/// of vertices, hence guarded.
pub fn is_generic(rho: &StabilityParam, quiver: &Quiver) -> Result<bool> {
    let n = quiver.vertices().len();
    if n > 24 {
        return Err(Error::TooLarge(format!(
            "genericity enumerates 2^{n} vertex subsets"
        )));
    }
    let weights: Vec<i64> = quiver.vertices().iter().map(|v| rho.get(v)).collect();
    if weights.iter().sum::<i64>() != 0 {
        return Ok(false);
    }
    let full = (1u32 << n) - 1;
    for mask in 1..full {
        let sum: i64 = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| weights[i])
            .sum();
        if sum == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Locally free representation of a quiver with multiplicity: one matrix
/// over the truncated ring per arrow, of shape rank(target) x rank(source).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMult {
    quiver: Quiver,
    m: usize,
    rank: RankVector,
    mats: BTreeMap<String, AmMatrix>,
}

impl RepMult {
    pub fn new(
        quiver: Quiver,
        m: usize,
        rank: RankVector,
        mats: BTreeMap<String, AmMatrix>,
    ) -> Result<Self> {
        rank.validate_for(&quiver)?;
        for a in quiver.arrows() {
            let mat = mats
                .get(&a.id)
                .ok_or_else(|| Error::Invalid(format!("missing matrix for arrow `{}`", a.id)))?;
            if mat.multiplicity() != m {
                return Err(Error::Multiplicity {
                    expected: m,
                    found: mat.multiplicity(),
                });
            }
            let (want_r, want_c) = (rank.get(&a.tgt), rank.get(&a.src));
            if mat.rows() != want_r || mat.cols() != want_c {
                return Err(Error::Dimension(format!(
                    "arrow `{}` carries a {}x{} matrix, expected {want_r}x{want_c}",
                    a.id,
                    mat.rows(),
                    mat.cols()
                )));
            }
        }
        if mats.len() != quiver.arrows().len() {
            return Err(Error::Invalid("matrix for an unknown arrow".into()));
        }
        Ok(RepMult {
            quiver,
            m,
            rank,
            mats,
        })
    }

    pub fn zero(quiver: Quiver, m: usize, rank: RankVector) -> Result<Self> {
        let mats = quiver
            .arrows()
            .iter()
            .map(|a| {
                (
                    a.id.clone(),
                    AmMatrix::zero(m, rank.get(&a.tgt), rank.get(&a.src)),
                )
            })
            .collect();
        RepMult::new(quiver, m, rank, mats)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn multiplicity(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> &RankVector {
        &self.rank
    }

    pub fn mat(&self, arrow_id: &str) -> &AmMatrix {
        &self.mats[arrow_id]
    }

    pub fn mats(&self) -> &BTreeMap<String, AmMatrix> {
        &self.mats
    }

    pub fn is_toric(&self) -> bool {
        self.rank.is_toric(&self.quiver)
    }
}

/// One invertible matrix over the truncated ring per vertex.
#[derive(Debug, Clone)]
pub struct GroupElemMult {
    mats: BTreeMap<String, AmMatrix>,
}

impl GroupElemMult {
    pub fn new(mats: BTreeMap<String, AmMatrix>) -> Result<Self> {
        for (v, g) in &mats {
            if !g.is_invertible() {
                return Err(Error::Singular(format!(
                    "group element at vertex `{v}` has a singular layer-0 matrix"
                )));
            }
        }
        Ok(GroupElemMult { mats })
    }

    pub fn identity(quiver: &Quiver, m: usize, rank: &RankVector) -> Self {
        GroupElemMult {
            mats: quiver
                .vertices()
                .iter()
                .map(|v| (v.clone(), AmMatrix::identity(m, rank.get(v))))
                .collect(),
        }
    }

    pub fn mat(&self, vertex: &str) -> &AmMatrix {
        &self.mats[vertex]
    }

    /// Vertexwise product `self * other`.
    pub fn compose(&self, other: &GroupElemMult) -> Result<GroupElemMult> {
        let mut mats = BTreeMap::new();
        for (v, g) in &self.mats {
            let h = other
                .mats
                .get(v)
                .ok_or_else(|| Error::Invalid(format!("missing vertex `{v}` in composition")))?;
            mats.insert(v.clone(), g.mul(h)?);
        }
        Ok(GroupElemMult { mats })
    }
}

/// Keep only layer 0 of every arrow matrix.
pub fn classical_truncation(phi: &RepMult) -> RepMult {
    let mats = phi
        .mats
        .iter()
        .map(|(id, mat)| (id.clone(), mat.truncate_to_classical()))
        .collect();
    RepMult {
        quiver: phi.quiver.clone(),
        m: 0,
        rank: phi.rank.clone(),
        mats,
    }
}

/// View a classical representation at a higher multiplicity, with zero
/// higher layers.
pub fn extend_scalars(phi: &RepMult, m: usize) -> Result<RepMult> {
    if phi.m != 0 {
        return Err(Error::Multiplicity {
            expected: 0,
            found: phi.m,
        });
    }
    let mats = phi
        .mats
        .iter()
        .map(|(id, mat)| Ok((id.clone(), mat.extend_to_multiplicity(m)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(RepMult {
        quiver: phi.quiver.clone(),
        m,
        rank: phi.rank.clone(),
        mats,
    })
}

/// Basis change `g . Phi = (g_tgt Phi_a g_src^-1)`.
pub fn act(g: &GroupElemMult, phi: &RepMult) -> Result<RepMult> {
    let mut inverses: BTreeMap<&str, AmMatrix> = BTreeMap::new();
    for v in phi.quiver.vertices() {
        let gv = g
            .mats
            .get(v)
            .ok_or_else(|| Error::Invalid(format!("group element missing vertex `{v}`")))?;
        inverses.insert(v.as_str(), gv.inverse()?);
    }
    let mut mats = BTreeMap::new();
    for a in phi.quiver.arrows() {
        let gt = &g.mats[&a.tgt];
        let gs_inv = &inverses[a.src.as_str()];
        mats.insert(a.id.clone(), gt.mul(phi.mat(&a.id))?.mul(gs_inv)?);
    }
    Ok(RepMult {
        quiver: phi.quiver.clone(),
        m: phi.m,
        rank: phi.rank.clone(),
        mats,
    })
}

/// Grading action: scale layer `i` of every arrow matrix by `t^i`.
pub fn lambda_act(t: &Rational, phi: &RepMult) -> Result<RepMult> {
    if t.is_zero() {
        return Err(Error::Invalid("grading action of t = 0".into()));
    }
    let mats = phi
        .mats
        .iter()
        .map(|(id, mat)| (id.clone(), mat.scale_layerwise(t)))
        .collect();
    Ok(RepMult {
        quiver: phi.quiver.clone(),
        m: phi.m,
        rank: phi.rank.clone(),
        mats,
    })
}

/// Subquiver of arrows whose classical truncation is non-zero, on the full
/// vertex set.
pub fn support_quiver(phi: &RepMult) -> Quiver {
    let arrows = phi
        .quiver
        .arrows()
        .iter()
        .filter(|a| !phi.mat(&a.id).layer(0).is_zero())
        .cloned()
        .collect();
    Quiver {
        vertices: phi.quiver.vertices.clone(),
        arrows,
    }
}

fn require_toric(phi: &RepMult, what: &str) -> Result<()> {
    if !phi.is_toric() {
        return Err(Error::Unsupported(format!(
            "{what} is only decided for toric rank vectors"
        )));
    }
    Ok(())
}

fn require_sum_zero(phi: &RepMult, rho: &StabilityParam) -> Result<()> {
    if !rho.is_valid_for(&phi.quiver, &phi.rank) {
        return Err(Error::Invalid(
            "stability parameter does not pair to zero with the rank vector".into(),
        ));
    }
    Ok(())
}

/// Vertex subsets closed under the out-arrows of the given arrow list; these
/// are exactly the supports of toric subrepresentations. Exponential in the
/// number of vertices, hence guarded.
fn closed_subset_sums(
    quiver: &Quiver,
    support: &[(usize, usize)],
    rho: &StabilityParam,
) -> Result<Vec<i64>> {
    let n = quiver.vertices().len();
    if n > 24 {
        return Err(Error::TooLarge(format!(
            "subrepresentation enumeration walks 2^{n} vertex subsets"
        )));
    }
    let weights: Vec<i64> = quiver.vertices().iter().map(|v| rho.get(v)).collect();
    let full = (1u32 << n) - 1;
    let mut sums = Vec::new();
    'mask: for mask in 1..full {
        for &(s, t) in support {
            if mask & (1 << s) != 0 && mask & (1 << t) == 0 {
                continue 'mask;
            }
        }
        sums.push(
            (0..n)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| weights[i])
                .sum(),
        );
    }
    Ok(sums)
}

fn king_toric_sums(phi: &RepMult, rho: &StabilityParam) -> Result<Vec<i64>> {
    require_toric(phi, "King stability")?;
    require_sum_zero(phi, rho)?;
    if phi.m != 0 {
        return Err(Error::Multiplicity {
            expected: 0,
            found: phi.m,
        });
    }
    let support: Vec<(usize, usize)> = phi
        .quiver
        .arrows()
        .iter()
        .filter(|a| !phi.mat(&a.id).layer(0).is_zero())
        .map(|a| {
            (
                phi.quiver.vertex_index(&a.src).expect("validated"),
                phi.quiver.vertex_index(&a.tgt).expect("validated"),
            )
        })
        .collect();
    closed_subset_sums(&phi.quiver, &support, rho)
}

/// King semistability for a toric classical representation: every proper
/// non-empty subrepresentation support has non-negative weight sum.
pub fn king_ss_toric(phi: &RepMult, rho: &StabilityParam) -> Result<bool> {
    Ok(king_toric_sums(phi, rho)?.into_iter().all(|s| s >= 0))
}

/// King stability: strict positivity on every proper non-empty
/// subrepresentation support.
pub fn king_stable_toric(phi: &RepMult, rho: &StabilityParam) -> Result<bool> {
    Ok(king_toric_sums(phi, rho)?.into_iter().all(|s| s > 0))
}

/// Nilpotency of a classical representation. Toric representations reduce to
/// the absence of directed cycles in the support quiver; general ranks fall
/// back to cycle-trace enumeration.
pub fn is_nilpotent_rep(phi: &RepMult) -> Result<bool> {
    if phi.m != 0 {
        return Err(Error::Multiplicity {
            expected: 0,
            found: phi.m,
        });
    }
    if phi.is_toric() {
        Ok(!support_quiver(phi).has_directed_cycle())
    } else {
        nilpotent_by_cycle_traces(phi)
    }
}

/// Nilpotency decided through traces along oriented cycles, the generators
/// of the invariant ring. Toric representations only need simple cycles
/// (scalar products commute); general ranks enumerate closed paths up to the
/// square of the total rank, pruning zero products, with a work guard.
pub fn nilpotent_by_cycle_traces(phi: &RepMult) -> Result<bool> {
    if phi.m != 0 {
        return Err(Error::Multiplicity {
            expected: 0,
            found: phi.m,
        });
    }
    let n = phi.quiver.vertices().len();
    let out: Vec<Vec<(usize, &str)>> = {
        let mut out = vec![Vec::new(); n];
        for a in phi.quiver.arrows() {
            let s = phi.quiver.vertex_index(&a.src).expect("validated");
            let t = phi.quiver.vertex_index(&a.tgt).expect("validated");
            out[s].push((t, a.id.as_str()));
        }
        out
    };

    if phi.is_toric() {
        // scalar products commute, so a cycle has non-zero trace exactly
        // when all of its arrows lie in the support; transitive closure of
        // the support relation finds those cycles
        let support: Vec<(usize, usize)> = phi
            .quiver
            .arrows()
            .iter()
            .filter(|a| !phi.mat(&a.id).layer(0).is_zero())
            .map(|a| {
                (
                    phi.quiver.vertex_index(&a.src).expect("validated"),
                    phi.quiver.vertex_index(&a.tgt).expect("validated"),
                )
            })
            .collect();
        let mut reach = vec![vec![false; n]; n];
        for &(s, t) in &support {
            reach[s][t] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        return Ok((0..n).all(|v| !reach[v][v]));
    }

    let bound = phi.rank.total(&phi.quiver).pow(2);
    let mut work: u64 = 0;
    for start in 0..n {
        let d = phi.rank.get(&phi.quiver.vertices()[start]);
        let identity = AmMatrix::identity(0, d);
        if !closed_paths_traceless(phi, &out, start, start, &identity, bound, &mut work)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Depth-first enumeration of closed paths based at `start`, carrying the
/// exact product; returns false as soon as a non-zero trace appears.
fn closed_paths_traceless(
    phi: &RepMult,
    out: &[Vec<(usize, &str)>],
    start: usize,
    v: usize,
    product: &AmMatrix,
    remaining: usize,
    work: &mut u64,
) -> Result<bool> {
    if remaining == 0 {
        return Ok(true);
    }
    *work += 1;
    if *work > 5_000_000 {
        return Err(Error::TooLarge(
            "cycle-trace enumeration exceeded its work budget".into(),
        ));
    }
    for &(w, id) in &out[v] {
        let next = phi.mat(id).mul(product)?;
        if next.is_zero() {
            continue;
        }
        if w == start {
            let layer = next.layer(0);
            let trace: Rational = (0..layer.rows()).map(|i| layer[(i, i)].clone()).sum();
            if !trace.is_zero() {
                return Ok(false);
            }
        }
        if !closed_paths_traceless(phi, out, start, w, &next, remaining - 1, work)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Null-cone membership for any multiplicity: nilpotency of the classical
/// truncation.
pub fn in_null_cone_quiver(phi: &RepMult) -> Result<bool> {
    is_nilpotent_rep(&classical_truncation(phi))
}

/// Basis of the stabilizer Lie algebra of a representation: solutions `g` of
/// `g_tgt Phi_a = Phi_a g_src` over the truncated ring, one matrix per
/// vertex.
#[derive(Debug, Clone)]
pub struct StabilizerLie {
    pub dim: usize,
    pub basis: Vec<BTreeMap<String, AmMatrix>>,
}

struct Unknown {
    vertex: usize,
    layer: usize,
    row: usize,
    col: usize,
}

/// Linear system for the stabilizer Lie algebra, restricted to unknowns with
/// layer at least `min_layer`.
fn stabilizer_system(phi: &RepMult, min_layer: usize) -> Result<(QMatrix, Vec<Unknown>)> {
    let quiver = &phi.quiver;
    let m = phi.m;
    let mut unknowns = Vec::new();
    for (vi, v) in quiver.vertices().iter().enumerate() {
        let d = phi.rank.get(v);
        for layer in min_layer..=m {
            for row in 0..d {
                for col in 0..d {
                    unknowns.push(Unknown {
                        vertex: vi,
                        layer,
                        row,
                        col,
                    });
                }
            }
        }
    }
    let index: BTreeMap<(usize, usize, usize, usize), usize> = unknowns
        .iter()
        .enumerate()
        .map(|(i, u)| ((u.vertex, u.layer, u.row, u.col), i))
        .collect();
    let col_of = |vertex: usize, layer: usize, row: usize, col: usize| -> Option<usize> {
        index.get(&(vertex, layer, row, col)).copied()
    };

    let n_eqs: usize = quiver
        .arrows()
        .iter()
        .map(|a| (m + 1) * phi.rank.get(&a.tgt) * phi.rank.get(&a.src))
        .sum();
    let mut sys = QMatrix::zeros(n_eqs, unknowns.len());
    let mut eq = 0;
    for a in quiver.arrows() {
        let ti = quiver.vertex_index(&a.tgt).expect("validated");
        let si = quiver.vertex_index(&a.src).expect("validated");
        let dt = phi.rank.get(&a.tgt);
        let ds = phi.rank.get(&a.src);
        let mat = phi.mat(&a.id);
        for k in 0..=m {
            for r in 0..dt {
                for c in 0..ds {
                    // layer-k entry (r, c) of g_tgt Phi_a - Phi_a g_src
                    for l in min_layer..=k {
                        let phi_layer = mat.layer(k - l);
                        for p in 0..dt {
                            if let Some(col) = col_of(ti, l, r, p) {
                                sys[(eq, col)] = &sys[(eq, col)] + &phi_layer[(p, c)];
                            }
                        }
                        for q in 0..ds {
                            if let Some(col) = col_of(si, l, q, c) {
                                sys[(eq, col)] = &sys[(eq, col)] - &phi_layer[(r, q)];
                            }
                        }
                    }
                    eq += 1;
                }
            }
        }
    }
    Ok((sys, unknowns))
}

/// Dimension and a basis of the stabilizer Lie algebra of `phi` inside the
/// product of truncated-ring matrix algebras.
pub fn aut_stab_lie(phi: &RepMult) -> Result<StabilizerLie> {
    let (sys, unknowns) = stabilizer_system(phi, 0)?;
    let kernel = sys.kernel_basis();
    let mut basis = Vec::with_capacity(kernel.len());
    for k in &kernel {
        let mut elem: BTreeMap<String, AmMatrix> = phi
            .quiver
            .vertices()
            .iter()
            .map(|v| {
                (
                    v.clone(),
                    AmMatrix::zero(phi.m, phi.rank.get(v), phi.rank.get(v)),
                )
            })
            .collect();
        for (j, u) in unknowns.iter().enumerate() {
            if k[j].is_zero() {
                continue;
            }
            let v = &phi.quiver.vertices()[u.vertex];
            let mut layers: Vec<QMatrix> = elem[v].layers().to_vec();
            layers[u.layer][(u.row, u.col)] = k[j].clone();
            elem.insert(v.clone(), AmMatrix::from_layers(layers)?);
        }
        basis.push(elem);
    }
    Ok(StabilizerLie {
        dim: kernel.len(),
        basis,
    })
}

/// Whether the automorphism group of the extended classical truncation,
/// modulo the diagonal scalars, is reductive: the unipotent part of the
/// stabilizer must be exactly the diagonal one, which pins its Lie dimension
/// to the multiplicity.
pub fn nontrivial_aut_reductive(phi: &RepMult) -> Result<bool> {
    if phi.m == 0 {
        return Ok(true);
    }
    let phi0 = extend_scalars(&classical_truncation(phi), phi.m)?;
    let (sys, _) = stabilizer_system(&phi0, 1)?;
    Ok(sys.kernel_basis().len() == phi.m)
}

/// The stronger twisted stability: the classical truncation is stable and
/// the non-trivial automorphism group of the extended truncation is
/// reductive. Toric representations are decided internally; other ranks
/// need an external decider for classical stability.
pub fn nrgit_stable(
    phi: &RepMult,
    rho: &StabilityParam,
    classical_stable: Option<&dyn Fn(&RepMult) -> bool>,
) -> Result<bool> {
    if rho.is_zero() {
        return Err(Error::Invalid(
            "the zero stability parameter is excluded for positive multiplicity".into(),
        ));
    }
    require_sum_zero(phi, rho)?;
    let truncation = classical_truncation(phi);
    let truncation_stable = if phi.is_toric() {
        king_stable_toric(&truncation, rho)?
    } else {
        match classical_stable {
            Some(decider) => decider(&truncation),
            None => {
                return Err(Error::Unsupported(
                    "general-rank classical stability needs an external decider".into(),
                ))
            }
        }
    };
    Ok(truncation_stable && nontrivial_aut_reductive(phi)?)
}

/// The weaker twisted stability: strict positivity on supports of locally
/// free subrepresentations, which are the vertex subsets closed under
/// out-arrows with non-zero matrix over the full truncated ring.
pub fn rudakov_stable_toric(phi: &RepMult, rho: &StabilityParam) -> Result<bool> {
    require_toric(phi, "this stability notion")?;
    require_sum_zero(phi, rho)?;
    let support: Vec<(usize, usize)> = phi
        .quiver
        .arrows()
        .iter()
        .filter(|a| !phi.mat(&a.id).is_zero())
        .map(|a| {
            (
                phi.quiver.vertex_index(&a.src).expect("validated"),
                phi.quiver.vertex_index(&a.tgt).expect("validated"),
            )
        })
        .collect();
    Ok(closed_subset_sums(&phi.quiver, &support, rho)?
        .into_iter()
        .all(|s| s > 0))
}

/// Membership in the moduli space: for toric ranks this is stability of the
/// classical truncation.
pub fn qss_membership(phi: &RepMult, rho: &StabilityParam) -> Result<bool> {
    if rho.is_zero() {
        return Err(Error::Invalid(
            "the zero stability parameter is excluded for positive multiplicity".into(),
        ));
    }
    require_toric(phi, "moduli membership")?;
    require_sum_zero(phi, rho)?;
    king_stable_toric(&classical_truncation(phi), rho)
}

/// The two-vertex quiver with one arrow in each direction.
pub fn cycle2_quiver() -> Quiver {
    Quiver::new(
        vec!["v1".into(), "v2".into()],
        vec![Arrow::new("a1", "v1", "v2"), Arrow::new("a2", "v2", "v1")],
    )
    .expect("valid quiver")
}

/// Toric multiplicity-one representation of the two-vertex cycle quiver with
/// arrow entries `alpha1 + beta1 e` and `alpha2 + beta2 e`.
pub fn cycle2_rep(alpha1: Rational, beta1: Rational, alpha2: Rational, beta2: Rational) -> RepMult {
    let quiver = cycle2_quiver();
    let rank = RankVector::toric(&quiver);
    let mut mats = BTreeMap::new();
    mats.insert(
        "a1".to_string(),
        AmMatrix::from_entries(1, 1, vec![TruncPoly::new(vec![alpha1, beta1]).unwrap()]).unwrap(),
    );
    mats.insert(
        "a2".to_string(),
        AmMatrix::from_entries(1, 1, vec![TruncPoly::new(vec![alpha2, beta2]).unwrap()]).unwrap(),
    );
    RepMult::new(quiver, 1, rank, mats).expect("valid representation")
}

/// Quotient map for the moduli space of the two-vertex cycle quiver at
/// multiplicity one: `(alpha1 alpha2, alpha2 beta1 + alpha1 beta2)`.
pub fn cycle2_quotient(phi: &RepMult) -> Result<(Rational, Rational)> {
    let expected = cycle2_quiver();
    if phi.quiver != expected || phi.m != 1 || !phi.is_toric() {
        return Err(Error::Invalid(
            "the quotient map is specific to the toric two-vertex cycle at multiplicity one".into(),
        ));
    }
    let rho = StabilityParam::from_slice(&expected, &[1, -1])?;
    if !qss_membership(phi, &rho)? {
        return Err(Error::Invalid(
            "the quotient map is defined on the semistable locus only".into(),
        ));
    }
    let p1 = phi.mat("a1").entry(0, 0);
    let p2 = phi.mat("a2").entry(0, 0);
    let (alpha1, beta1) = (p1.coeff(0), p1.coeff(1));
    let (alpha2, beta2) = (p2.coeff(0), p2.coeff(1));
    Ok((alpha1 * alpha2, &(alpha2 * beta1) + &(alpha1 * beta2)))
}

/// Coordinate chart identifying a representation space with a plain vector
/// space, graded by the layer index. Implements orbit membership for toric
/// ranks (unit rescalings propagate along a spanning forest of the support).
#[derive(Debug, Clone)]
pub struct RepEmbedding {
    quiver: Quiver,
    m: usize,
    rank: RankVector,
    /// (arrow index, layer, row, col) per coordinate
    coords: Vec<(usize, usize, usize, usize)>,
}

impl RepEmbedding {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn to_vector(&self, phi: &RepMult) -> Result<QVector> {
        if phi.quiver != self.quiver || phi.m != self.m || phi.rank != self.rank {
            return Err(Error::Invalid(
                "representation from a different chart".into(),
            ));
        }
        let mut out = QVector::zeros(self.coords.len());
        for (i, &(ai, layer, r, c)) in self.coords.iter().enumerate() {
            let id = &self.quiver.arrows()[ai].id;
            out[i] = phi.mat(id).layer(layer)[(r, c)].clone();
        }
        Ok(out)
    }

    pub fn to_rep(&self, v: &QVector) -> Result<RepMult> {
        if v.len() != self.coords.len() {
            return Err(Error::Dimension(format!(
                "vector of length {}, chart of dimension {}",
                v.len(),
                self.coords.len()
            )));
        }
        let mut layers_by_arrow: Vec<Vec<QMatrix>> = self
            .quiver
            .arrows()
            .iter()
            .map(|a| vec![QMatrix::zeros(self.rank.get(&a.tgt), self.rank.get(&a.src)); self.m + 1])
            .collect();
        for (i, &(ai, layer, r, c)) in self.coords.iter().enumerate() {
            layers_by_arrow[ai][layer][(r, c)] = v[i].clone();
        }
        let mut mats = BTreeMap::new();
        for (ai, a) in self.quiver.arrows().iter().enumerate() {
            mats.insert(
                a.id.clone(),
                AmMatrix::from_layers(layers_by_arrow[ai].clone())?,
            );
        }
        RepMult::new(self.quiver.clone(), self.m, self.rank.clone(), mats)
    }

    /// Membership of `phi` in the unipotent orbit of the layer-0 slice, for
    /// toric ranks: every arrow matrix must be a unit multiple of its
    /// truncation, with unit ratios that are consistent around the support
    /// graph.
    fn in_unipotent_orbit_of_classical(&self, phi: &RepMult) -> Result<bool> {
        let n = self.quiver.vertices().len();
        let mut ratios: Vec<Option<TruncPoly>> = vec![None; self.quiver.arrows().len()];
        for (ai, a) in self.quiver.arrows().iter().enumerate() {
            let mat = phi.mat(&a.id);
            let entry = mat.entry(0, 0);
            if entry.coeff(0).is_zero() {
                if !entry.is_zero() {
                    return Ok(false);
                }
            } else {
                ratios[ai] = Some(entry.scale(&entry.coeff(0).recip()?));
            }
        }
        // propagate unit assignments over a spanning forest of the support
        let mut unit: Vec<Option<TruncPoly>> = vec![None; n];
        for root in 0..n {
            if unit[root].is_some() {
                continue;
            }
            unit[root] = Some(TruncPoly::one(self.m));
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for (ai, a) in self.quiver.arrows().iter().enumerate() {
                    let Some(r) = &ratios[ai] else { continue };
                    let s = self.quiver.vertex_index(&a.src).expect("validated");
                    let t = self.quiver.vertex_index(&a.tgt).expect("validated");
                    // r = u_t / u_s
                    if s == v && unit[t].is_none() {
                        unit[t] = Some(r.mul(unit[s].as_ref().expect("assigned"))?);
                        stack.push(t);
                    } else if t == v && unit[s].is_none() {
                        unit[s] = Some(unit[t].as_ref().expect("assigned").mul(&r.inverse()?)?);
                        stack.push(s);
                    }
                }
            }
        }
        for (ai, a) in self.quiver.arrows().iter().enumerate() {
            let Some(r) = &ratios[ai] else { continue };
            let s = self.quiver.vertex_index(&a.src).expect("validated");
            let t = self.quiver.vertex_index(&a.tgt).expect("validated");
            let expected = unit[t]
                .as_ref()
                .expect("all assigned")
                .mul(&unit[s].as_ref().expect("all assigned").inverse()?)?;
            if *r != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl OrbitOracle for RepEmbedding {
    fn contains(&self, set: OrbitSet, v: &QVector) -> Option<bool> {
        if !self.rank.is_toric(&self.quiver) {
            return None;
        }
        let phi = self.to_rep(v).ok()?;
        match set {
            // the non-positive weight sum is the layer-0 slice itself
            OrbitSet::MinWeightSpace | OrbitSet::NonPositiveWeights => {
                self.in_unipotent_orbit_of_classical(&phi).ok()
            }
            // every weight is non-negative, so this orbit is everything
            OrbitSet::NonNegativeWeights => Some(true),
        }
    }
}

/// Express the representation space as graded data: coordinates carry their
/// layer index as weight, and the Lie algebra of the unipotent part of the
/// basis-change group acts by the commutator expanded across layers.
pub fn quiver_to_graded_rep(
    quiver: &Quiver,
    m: usize,
    rank: &RankVector,
) -> Result<(GradedRep, RepEmbedding)> {
    rank.validate_for(quiver)?;
    let mut coords = Vec::new();
    for (ai, a) in quiver.arrows().iter().enumerate() {
        for layer in 0..=m {
            for r in 0..rank.get(&a.tgt) {
                for c in 0..rank.get(&a.src) {
                    coords.push((ai, layer, r, c));
                }
            }
        }
    }
    if coords.is_empty() {
        return Err(Error::Invalid(
            "a quiver with no arrows has a zero-dimensional representation space".into(),
        ));
    }
    let embedding = RepEmbedding {
        quiver: quiver.clone(),
        m,
        rank: rank.clone(),
        coords,
    };
    let dim = embedding.dim();
    let index_of = |ai: usize, layer: usize, r: usize, c: usize| -> usize {
        embedding
            .coords
            .iter()
            .position(|&x| x == (ai, layer, r, c))
            .expect("coordinate exists")
    };
    let gm_weights: Vec<i64> = embedding
        .coords
        .iter()
        .map(|&(_, layer, _, _)| layer as i64)
        .collect();

    // The acting group is the basis-change group modulo its diagonal
    // scalars, so the Lie algebra of its unipotent part is spanned by a
    // complement of the diagonal: drop one scalar generator per layer,
    // anchored at the first vertex.
    let mut lie = Vec::new();
    for (vi, v) in quiver.vertices().iter().enumerate() {
        let d = rank.get(v);
        for layer in 1..=m {
            for p in 0..d {
                for q in 0..d {
                    if vi == 0 && p == 0 && q == 0 {
                        continue;
                    }
                    let mut n_mat = QMatrix::zeros(dim, dim);
                    for (ai, a) in quiver.arrows().iter().enumerate() {
                        let ti = quiver.vertex_index(&a.tgt).expect("validated");
                        let si = quiver.vertex_index(&a.src).expect("validated");
                        let dt = rank.get(&a.tgt);
                        let ds = rank.get(&a.src);
                        for j in 0..=(m - layer) {
                            if ti == vi {
                                // (E_pq e^layer) Phi_a contributes layer j -> j + layer
                                for c in 0..ds {
                                    let row = index_of(ai, j + layer, p, c);
                                    let col = index_of(ai, j, q, c);
                                    n_mat[(row, col)] = &n_mat[(row, col)] + &Rational::one();
                                }
                            }
                            if si == vi {
                                for r in 0..dt {
                                    let row = index_of(ai, j + layer, r, q);
                                    let col = index_of(ai, j, r, p);
                                    n_mat[(row, col)] = &n_mat[(row, col)] - &Rational::one();
                                }
                            }
                        }
                    }
                    lie.push(n_mat);
                }
            }
        }
    }
    let rep = GradedRep::new(gm_weights, lie)?;
    Ok((rep, embedding))
}
