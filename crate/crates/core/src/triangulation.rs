//! Decorated ideal triangulations: face matchings, transporters between
//! face configurations, edge and path holonomies.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::flags::{is_opposite, CompleteConfig, Configuration, Flag, FlagError};
use crate::invariants::{triple_ratios, InvariantError};
use crate::numeric::{GaussianRational, Matrix, NumericError};
use crate::realforms::{classify_configuration, Classification, RealFormError, RealStructures};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    RealForm(#[from] RealFormError),
    #[error("invalid gluing {index}: {reason}")]
    BadGluing { index: usize, reason: String },
    #[error("face {face} of tetrahedron {tet} is not glued")]
    UngluedFace { tet: usize, face: usize },
    #[error("tetrahedron {0} does not carry four complete flags of the same dimension")]
    BadTetrahedron(usize),
    #[error("no opposite pair among the three flags")]
    NoOppositePair,
    #[error("the third flag's line is not in generic position with the frame")]
    DegenerateFrame,
    #[error("the two face configurations are not projectively equivalent")]
    NotEquivalent,
    #[error("crossing {step} of the path leaves tetrahedron {expected}, not {found}")]
    NotAdjacent { step: usize, expected: usize, found: usize },
    #[error("no path named {0:?}")]
    UnknownPath(String),
    #[error("no edge with id {0}")]
    UnknownEdge(usize),
    #[error("transporter across face {face} of tetrahedron {tet}: {source}")]
    Crossing { tet: usize, face: usize, source: Box<TriangulationError> },
}

/// Identification of face `face_a` of `tet_a` with face `face_b` of `tet_b`;
/// vertex `k` of `tet_a` goes to vertex `bijection[k]` of `tet_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub tet_a: usize,
    pub face_a: usize,
    pub tet_b: usize,
    pub face_b: usize,
    pub bijection: [usize; 4],
}

/// Leaving tetrahedron `tet` through the face opposite vertex `face`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub tet: usize,
    pub face: usize,
}

#[derive(Clone, Copy, Debug)]
struct Neighbor {
    tet: usize,
    face: usize,
    perm: [usize; 4],
}

/// The vertices of a face, in increasing order.
pub fn face_vertices(face: usize) -> [usize; 3] {
    let mut out = [0; 3];
    for (slot, v) in (0..4).filter(|&v| v != face).enumerate() {
        out[slot] = v;
    }
    out
}

fn is_odd(p: &[usize; 4]) -> bool {
    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 1
}

/// Edge equivalence class: the tetrahedron edges it contains and the face
/// crossings of one turn around it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCycle {
    pub id: usize,
    pub members: Vec<(usize, [usize; 2])>,
    pub crossings: Vec<Crossing>,
}

#[derive(Clone, Debug)]
pub struct DecoratedTriangulation {
    n: usize,
    tetrahedra: Vec<[Flag; 4]>,
    gluings: Vec<Gluing>,
    paths: BTreeMap<String, Vec<Crossing>>,
    neighbors: BTreeMap<(usize, usize), Neighbor>,
}

impl DecoratedTriangulation {
    /// Validates that every face is glued exactly once by an odd bijection
    /// carrying `face_a` onto `face_b`.
    pub fn new(tetrahedra: Vec<[Flag; 4]>, gluings: Vec<Gluing>, paths: BTreeMap<String, Vec<Crossing>>) -> Result<Self, TriangulationError> {
        let n = tetrahedra.first().map_or(0, |t| t[0].n());
        for (k, t) in tetrahedra.iter().enumerate() {
            if t.iter().any(|f| f.n() != n || !f.is_complete()) {
                return Err(TriangulationError::BadTetrahedron(k));
            }
        }
        let mut neighbors = BTreeMap::new();
        for (index, g) in gluings.iter().enumerate() {
            let bad = |reason: &str| TriangulationError::BadGluing { index, reason: reason.into() };
            if g.tet_a >= tetrahedra.len() || g.tet_b >= tetrahedra.len() || g.face_a > 3 || g.face_b > 3 {
                return Err(bad("index out of range"));
            }
            let mut seen = [false; 4];
            for &v in &g.bijection {
                if v > 3 || std::mem::replace(&mut seen[v], true) {
                    return Err(bad("bijection is not a permutation"));
                }
            }
            if g.bijection[g.face_a] != g.face_b {
                return Err(bad("bijection does not carry face_a onto face_b"));
            }
            if !is_odd(&g.bijection) {
                return Err(bad("bijection preserves orientation"));
            }
            let mut inverse = [0; 4];
            for (i, &j) in g.bijection.iter().enumerate() {
                inverse[j] = i;
            }
            let a = (g.tet_a, g.face_a);
            let b = (g.tet_b, g.face_b);
            if a == b {
                return Err(bad("a face cannot be glued to itself"));
            }
            if neighbors.contains_key(&a) || neighbors.contains_key(&b) {
                return Err(bad("face glued twice"));
            }
            neighbors.insert(a, Neighbor { tet: g.tet_b, face: g.face_b, perm: g.bijection });
            neighbors.insert(b, Neighbor { tet: g.tet_a, face: g.face_a, perm: inverse });
        }
        for tet in 0..tetrahedra.len() {
            for face in 0..4 {
                if !neighbors.contains_key(&(tet, face)) {
                    return Err(TriangulationError::UngluedFace { tet, face });
                }
            }
        }
        Ok(Self { n, tetrahedra, gluings, paths, neighbors })
    }

    /// Two copies of one tetrahedron glued along all four faces by the
    /// transposition `(0 1)`; the second copy carries `g` applied to the first,
    /// relabeled accordingly.
    pub fn doubled_tetrahedron(flags: [Flag; 4], g: &Matrix) -> Result<Self, TriangulationError> {
        let beta = [1, 0, 2, 3];
        let moved: Vec<Flag> = flags.iter().map(|f| f.transform(g)).collect::<Result<_, _>>()?;
        let second: [Flag; 4] = std::array::from_fn(|k| moved[beta[k]].clone());
        let gluings = (0..4).map(|face| Gluing { tet_a: 0, face_a: face, tet_b: 1, face_b: beta[face], bijection: beta }).collect();
        Self::new(vec![flags, second], gluings, BTreeMap::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tetrahedra(&self) -> &[[Flag; 4]] {
        &self.tetrahedra
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn paths(&self) -> &BTreeMap<String, Vec<Crossing>> {
        &self.paths
    }

    /// Replaces the flag at vertex `vertex` of tetrahedron `tet`.
    pub fn with_flag(&self, tet: usize, vertex: usize, flag: Flag) -> Result<Self, TriangulationError> {
        let mut tets = self.tetrahedra.clone();
        tets[tet][vertex] = flag;
        Self::new(tets, self.gluings.clone(), self.paths.clone())
    }

    /// Applies `g` to every flag.
    pub fn transform(&self, g: &Matrix) -> Result<Self, TriangulationError> {
        let tets = self
            .tetrahedra
            .iter()
            .map(|t| -> Result<[Flag; 4], FlagError> {
                let v: Vec<Flag> = t.iter().map(|f| f.transform(g)).collect::<Result<_, _>>()?;
                Ok(std::array::from_fn(|k| v[k].clone()))
            })
            .collect::<Result<_, _>>()?;
        Self::new(tets, self.gluings.clone(), self.paths.clone())
    }

    /// The flags at the vertices of a face, in increasing vertex order.
    pub fn face_triple(&self, tet: usize, face: usize) -> Result<CompleteConfig, TriangulationError> {
        let t = &self.tetrahedra[tet];
        Ok(CompleteConfig::new(face_vertices(face).iter().map(|&v| t[v].clone()).collect())?)
    }

    /// The matching face configuration on the other side of a crossing,
    /// ordered to correspond vertex by vertex with [`Self::face_triple`].
    pub fn glued_triple(&self, tet: usize, face: usize) -> Result<(Crossing, CompleteConfig), TriangulationError> {
        let nb = self.neighbor(tet, face)?;
        let t = &self.tetrahedra[nb.tet];
        let triple = CompleteConfig::new(face_vertices(face).iter().map(|&v| t[nb.perm[v]].clone()).collect())?;
        Ok((Crossing { tet: nb.tet, face: nb.face }, triple))
    }

    fn neighbor(&self, tet: usize, face: usize) -> Result<Neighbor, TriangulationError> {
        self.neighbors.get(&(tet, face)).copied().ok_or(TriangulationError::UngluedFace { tet, face })
    }

    /// Transporter from the face configuration of a crossing to its image.
    pub fn crossing_transporter(&self, c: Crossing) -> Result<Matrix, TriangulationError> {
        let wrap = |e: TriangulationError| TriangulationError::Crossing { tet: c.tet, face: c.face, source: Box::new(e) };
        let here = self.face_triple(c.tet, c.face).map_err(wrap)?;
        let (_, there) = self.glued_triple(c.tet, c.face).map_err(wrap)?;
        transporter(&here, &there).map_err(wrap)
    }

    /// Edge classes, numbered in order of first appearance among
    /// `(tet, edge)` with edges listed lexicographically.
    pub fn edge_cycles(&self) -> Result<Vec<EdgeCycle>, TriangulationError> {
        let mut assigned: BTreeMap<(usize, [usize; 2]), usize> = BTreeMap::new();
        let mut out = Vec::new();
        for tet in 0..self.tetrahedra.len() {
            for u in 0..4 {
                for v in u + 1..4 {
                    if assigned.contains_key(&(tet, [u, v])) {
                        continue;
                    }
                    let id = out.len();
                    let cycle = self.walk_edge(tet, u, v, id)?;
                    for m in &cycle.members {
                        assigned.insert(*m, id);
                    }
                    out.push(cycle);
                }
            }
        }
        Ok(out)
    }

    fn walk_edge(&self, tet: usize, u: usize, v: usize, id: usize) -> Result<EdgeCycle, TriangulationError> {
        let other = |a: usize, b: usize, not: usize| (0..4).find(|&x| x != a && x != b && x != not).expect("four vertices");
        let start_exit = other(u, v, 4);
        let start = (tet, [u, v], start_exit);
        let (mut cur_tet, mut edge, mut exit) = start;
        let mut members = Vec::new();
        let mut crossings = Vec::new();
        for _ in 0..=12 * self.tetrahedra.len() {
            members.push((cur_tet, [edge[0].min(edge[1]), edge[0].max(edge[1])]));
            crossings.push(Crossing { tet: cur_tet, face: exit });
            let nb = self.neighbor(cur_tet, exit)?;
            let next_edge = [nb.perm[edge[0]], nb.perm[edge[1]]];
            let next_exit = other(next_edge[0], next_edge[1], nb.face);
            (cur_tet, edge, exit) = (nb.tet, next_edge, next_exit);
            let sorted = [edge[0].min(edge[1]), edge[0].max(edge[1])];
            if (cur_tet, sorted, exit) == start {
                members.sort();
                members.dedup();
                return Ok(EdgeCycle { id, members, crossings });
            }
        }
        Err(TriangulationError::BadGluing { index: 0, reason: format!("edge cycle through tetrahedron {tet} does not close") })
    }

    /// Composition of the crossing transporters once around the edge.
    pub fn edge_holonomy(&self, edge_id: usize) -> Result<Matrix, TriangulationError> {
        let cycles = self.edge_cycles()?;
        let cycle = cycles.get(edge_id).ok_or(TriangulationError::UnknownEdge(edge_id))?;
        self.compose(&cycle.crossings)
    }

    /// Composition `g_m ... g_1` of the transporters of consecutive crossings.
    pub fn path_holonomy(&self, path: &[Crossing]) -> Result<Matrix, TriangulationError> {
        for (step, w) in path.windows(2).enumerate() {
            let nb = self.neighbor(w[0].tet, w[0].face)?;
            if nb.tet != w[1].tet {
                return Err(TriangulationError::NotAdjacent { step: step + 1, expected: nb.tet, found: w[1].tet });
            }
        }
        self.compose(path)
    }

    pub fn named_path_holonomy(&self, name: &str) -> Result<Matrix, TriangulationError> {
        let path = self.paths.get(name).ok_or_else(|| TriangulationError::UnknownPath(name.into()))?;
        self.path_holonomy(path)
    }

    fn compose(&self, crossings: &[Crossing]) -> Result<Matrix, TriangulationError> {
        crossings.iter().try_fold(Matrix::identity(self.n), |acc, &c| Ok(self.crossing_transporter(c)?.checked_mul(&acc)?))
    }

    /// For every gluing, whether the two face configurations have the same
    /// triple ratios. A non-generic face on either side does not match.
    pub fn check_face_matchings(&self) -> Result<Vec<FaceCheck>, TriangulationError> {
        let ratios = |c: &CompleteConfig| match triple_ratios(c) {
            Ok(t) => Ok(Some(t)),
            Err(InvariantError::NonGeneric(_)) => Ok(None),
            Err(e) => Err(e),
        };
        self.gluings
            .iter()
            .enumerate()
            .map(|(index, g)| {
                let here = ratios(&self.face_triple(g.tet_a, g.face_a)?)?;
                let (_, there) = self.glued_triple(g.tet_a, g.face_a)?;
                let there = ratios(&there)?;
                Ok(FaceCheck { gluing: index, matches: here.is_some() && here == there })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceCheck {
    pub gluing: usize,
    pub matches: bool,
}

fn frame_vector(f1: &Flag, f2: &Flag, k: usize) -> Result<Vec<GaussianRational>, TriangulationError> {
    let n = f1.n();
    let a = f1.prefix(k).expect("complete flag");
    let b = f2.prefix(n - k + 1).expect("complete flag");
    let ker = a.hcat(&b.scale(&GaussianRational::int(-1)))?.kernel();
    if ker.len() != 1 {
        return Err(TriangulationError::NoOppositePair);
    }
    Ok(a.mul_vec(&ker[0][..k])?)
}

/// Basis `m_1, .., m_n` with `m_k` spanning `F^1_k` meet `F^2_{n-k+1}` and
/// scaled so that `F^3_1` is spanned by `m_1 + .. + m_n`.
fn frame(c: &CompleteConfig, order: [usize; 3]) -> Result<Matrix, TriangulationError> {
    let f = c.flags();
    let n = c.n();
    let cols = (1..=n).map(|k| frame_vector(&f[order[0]], &f[order[1]], k)).collect::<Result<Vec<_>, _>>()?;
    let m = Matrix::from_columns(n, &cols)?;
    let coeffs = m.inverse()?.mul_vec(&f[order[2]].basis_vector(0))?;
    if coeffs.iter().any(Zero::is_zero) {
        return Err(TriangulationError::DegenerateFrame);
    }
    Ok(Matrix::from_fn(n, n, |r, k| m.get(r, k) * &coeffs[k]))
}

/// The projective transformation carrying triple `a` onto triple `b`, built
/// from the frame of the first opposite pair of `a` and checked on every flag.
pub fn transporter(a: &CompleteConfig, b: &CompleteConfig) -> Result<Matrix, TriangulationError> {
    if a.r() != 3 || b.r() != 3 || a.n() != b.n() {
        return Err(TriangulationError::NotEquivalent);
    }
    let orders = [[0, 1, 2], [0, 2, 1], [1, 2, 0]];
    let order = orders
        .into_iter()
        .find(|o| is_opposite(&a.flags()[o[0]], &a.flags()[o[1]]).unwrap_or(false))
        .ok_or(TriangulationError::NoOppositePair)?;
    let fa = frame(a, order)?;
    let fb = frame(b, order).map_err(|_| TriangulationError::NotEquivalent)?;
    let g = fb.checked_mul(&fa.inverse()?)?;
    for (x, y) in a.flags().iter().zip(b.flags()) {
        if !x.transform(&g)?.same_flag(y) {
            return Err(TriangulationError::NotEquivalent);
        }
    }
    Ok(g)
}

/// `(g - (tr g / n) I)^n = 0` with `tr g != 0`.
pub fn is_projectively_unipotent(g: &Matrix) -> Result<bool, NumericError> {
    let n = g.rows();
    let tr = g.trace();
    if !g.is_square() || tr.is_zero() {
        return Ok(false);
    }
    let shift = tr.scale(&crate::numeric::BigRational::new(1.into(), (n as i64).into()));
    let nilpotent = g.checked_sub(&Matrix::scalar(n, &shift))?;
    Ok(nilpotent.pow(n as u32)?.is_zero())
}

/// Real forms preserving every tetrahedron's configuration.
pub fn classify_decoration(t: &DecoratedTriangulation, s: &RealStructures) -> Result<Classification, TriangulationError> {
    let mut acc: Option<Classification> = None;
    for tet in t.tetrahedra() {
        let c = Configuration::Complete(CompleteConfig::new(tet.to_vec())?);
        let here = classify_configuration(&c, s)?;
        acc = Some(match acc {
            None => here,
            Some(prev) => prev.intersect(&here),
        });
    }
    acc.ok_or(TriangulationError::BadTetrahedron(0))
}
