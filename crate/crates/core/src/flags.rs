//! Flags, partial flags and configurations of them, with the genericity
//! predicates that the invariants rely on.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::numeric::{GaussianRational, Matrix, NumericError, Vector};

/// Exhaustive genericity checks are limited to `n, r <= MAX_GENERIC`.
pub const MAX_GENERIC: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("vector has length {found}, ambient dimension is {n}")]
    WrongLength { n: usize, found: usize },
    #[error("subspace {index} is not contained in the next one")]
    NotNested { index: usize },
    #[error("subspace dimensions must increase strictly and stay below {n}: {dims:?}")]
    BadDimensions { n: usize, dims: Vec<usize> },
    #[error("the line is not contained in the hyperplane")]
    LineNotInHyperplane,
    #[error("zero vector or zero linear form")]
    Degenerate,
    #[error("expected a {expected} configuration, got {found}")]
    WrongKind { expected: ConfigKind, found: ConfigKind },
    #[error("flags live in different ambient spaces or have different types")]
    Incompatible,
    #[error("configuration of {r} flags in dimension {n} exceeds the exhaustive limit {MAX_GENERIC}")]
    TooLarge { n: usize, r: usize },
    #[error("configuration must have {expected} members, got {found}")]
    WrongCount { expected: String, found: usize },
    #[error("configuration is not semi-stable")]
    NotSemistable,
}

/// `true` when the two generator matrices span the same subspace.
pub fn same_span(a: &Matrix, b: &Matrix) -> bool {
    let ra = a.rank();
    ra == b.rank() && a.hcat(b).map_or(false, |ab| ab.rank() == ra)
}

/// Dimension of the intersection of two column spans.
pub fn intersection_dim(a: &Matrix, b: &Matrix) -> Result<usize, FlagError> {
    Ok(a.rank() + b.rank() - a.hcat(b)?.rank())
}

/// Evaluates the linear form `phi` (a row vector) on `v`.
pub fn pair(phi: &[GaussianRational], v: &[GaussianRational]) -> GaussianRational {
    phi.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// A flag `F_1 < F_2 < ... < F_m` in `C^n`, stored through an adapted basis:
/// `F_k` is spanned by the first `dims[k]` columns of `basis`.
///
/// Complete flags keep a full basis of `C^n` so that `prefix(n)` is the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    n: usize,
    dims: Vec<usize>,
    basis: Matrix,
}

impl Flag {
    /// Builds a flag from generator matrices of its subspaces (redundant generators allowed).
    pub fn from_chain(n: usize, subspaces: &[Matrix]) -> Result<Self, FlagError> {
        let mut basis = Matrix::zeros(n, 0);
        let mut dims = Vec::with_capacity(subspaces.len());
        for (index, gens) in subspaces.iter().enumerate() {
            if gens.rows() != n {
                return Err(FlagError::WrongLength { n, found: gens.rows() });
            }
            let dim = gens.rank();
            if basis.cols() > 0 && basis.hcat(gens)?.rank() != dim {
                return Err(FlagError::NotNested { index: index - 1 });
            }
            for col in gens.columns() {
                let extended = basis.hcat(&Matrix::from_columns(n, &[col])?)?;
                if extended.rank() > basis.cols() {
                    basis = extended;
                }
            }
            dims.push(dim);
        }
        let increasing = dims.windows(2).all(|w| w[0] < w[1]);
        if dims.is_empty() || dims[0] == 0 || !increasing || dims.last().is_some_and(|&d| d >= n) {
            return Err(FlagError::BadDimensions { n, dims });
        }
        let mut flag = Self { n, dims, basis };
        if flag.is_complete() {
            flag.extend_to_full_basis()?;
        }
        Ok(flag)
    }

    /// The complete flag whose `k`-th subspace is spanned by the first `k` columns.
    pub fn complete(basis: Matrix) -> Result<Self, FlagError> {
        let n = basis.rows();
        if !basis.is_square() || basis.rank() != n || n < 2 {
            return Err(FlagError::Numeric(NumericError::Singular));
        }
        Ok(Self { n, dims: (1..n).collect(), basis })
    }

    /// The complete flag spanned by the given vectors in order.
    pub fn complete_from_vectors(vectors: &[Vector]) -> Result<Self, FlagError> {
        let n = vectors.first().map_or(0, Vec::len);
        Self::complete(Matrix::from_columns(n, vectors)?)
    }

    fn extend_to_full_basis(&mut self) -> Result<(), FlagError> {
        for k in 0..self.n {
            if self.basis.cols() == self.n {
                break;
            }
            let e = Matrix::from_fn(self.n, 1, |r, _| if r == k { GaussianRational::one() } else { GaussianRational::zero() });
            let extended = self.basis.hcat(&e)?;
            if extended.rank() > self.basis.cols() {
                self.basis = extended;
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_complete(&self) -> bool {
        self.dims.iter().copied().eq(1..self.n)
    }

    /// Adapted basis (all of `C^n` for complete flags).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Basis vector `b_k` (0-based), so `F_d = span(b_0, .., b_{d-1})`.
    pub fn basis_vector(&self, k: usize) -> Vector {
        self.basis.column(k)
    }

    /// Generators of the `d`-dimensional member; `d = 0` gives the zero space.
    /// Returns `None` when the flag has no member of that dimension.
    pub fn prefix(&self, d: usize) -> Option<Matrix> {
        (d == 0 || self.dims.contains(&d) || d <= self.basis.cols() && self.is_complete())
            .then(|| self.basis.leading_columns(d))
    }

    pub fn subspaces(&self) -> Vec<Matrix> {
        self.dims.iter().map(|&d| self.basis.leading_columns(d)).collect()
    }

    /// Same chain of subspaces, whatever the adapted bases.
    pub fn same_flag(&self, other: &Flag) -> bool {
        self.n == other.n
            && self.dims == other.dims
            && self.dims.iter().all(|&d| same_span(&self.basis.leading_columns(d), &other.basis.leading_columns(d)))
    }

    pub fn transform(&self, g: &Matrix) -> Result<Flag, FlagError> {
        Ok(Self { n: self.n, dims: self.dims.clone(), basis: g.checked_mul(&self.basis)? })
    }

    /// `(F_1, F_{n-1})` as a line and a hyperplane.
    pub fn to_line_hyperplane(&self) -> Result<LineHyperplaneFlag, FlagError> {
        let hyper = self.prefix(self.n - 1).ok_or(FlagError::Incompatible)?;
        let line = self.prefix(1).ok_or(FlagError::Incompatible)?;
        LineHyperplaneFlag::from_subspaces(&line, &hyper)
    }
}

/// A line `L = <v>` inside a hyperplane `H = ker(phi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineHyperplaneFlag {
    v: Vector,
    phi: Vector,
}

impl LineHyperplaneFlag {
    pub fn new(v: Vector, phi: Vector) -> Result<Self, FlagError> {
        if v.len() != phi.len() {
            return Err(FlagError::WrongLength { n: v.len(), found: phi.len() });
        }
        if v.iter().all(Zero::is_zero) || phi.iter().all(Zero::is_zero) {
            return Err(FlagError::Degenerate);
        }
        if !pair(&phi, &v).is_zero() {
            return Err(FlagError::LineNotInHyperplane);
        }
        Ok(Self { v, phi })
    }

    /// From generators of the line and of the hyperplane.
    pub fn from_subspaces(line: &Matrix, hyperplane: &Matrix) -> Result<Self, FlagError> {
        let n = line.rows();
        if line.rank() != 1 || hyperplane.rank() + 1 != n || hyperplane.rows() != n {
            return Err(FlagError::BadDimensions { n, dims: vec![line.rank(), hyperplane.rank()] });
        }
        let v = line.columns().into_iter().find(|c| c.iter().any(|x| !x.is_zero())).expect("rank one");
        let phi = hyperplane.left_kernel().pop().expect("hyperplane has a one-dimensional annihilator");
        Self::new(v, phi)
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn v(&self) -> &Vector {
        &self.v
    }

    pub fn phi(&self) -> &Vector {
        &self.phi
    }

    pub fn hyperplane_basis(&self) -> Matrix {
        let row = Matrix::from_rows(vec![self.phi.clone()]).expect("single row");
        Matrix::from_columns(self.n(), &row.kernel()).expect("kernel vectors have length n")
    }

    /// `(g v, phi g^-1)`.
    pub fn transform(&self, g: &Matrix) -> Result<Self, FlagError> {
        let v = g.mul_vec(&self.v)?;
        let phi = g.inverse()?.transpose().mul_vec(&self.phi)?;
        Self::new(v, phi)
    }

    pub fn same_flag(&self, other: &Self) -> bool {
        let col = |x: &Vector| Matrix::from_columns(x.len(), std::slice::from_ref(x)).expect("vector");
        self.n() == other.n() && same_span(&col(&self.v), &col(&other.v)) && same_span(&col(&self.phi), &col(&other.phi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConfigKind {
    LineHyperplane,
    PlanesIn4,
    Complete,
    IsotropicLines,
}

impl ConfigKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::LineHyperplane => "line-hyperplane",
            Self::PlanesIn4 => "planes-in-4",
            Self::Complete => "complete",
            Self::IsotropicLines => "isotropic-lines",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::LineHyperplane, Self::PlanesIn4, Self::Complete, Self::IsotropicLines].into_iter().find(|k| k.as_str() == s)
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineHyperplaneConfig {
    n: usize,
    flags: Vec<LineHyperplaneFlag>,
}

impl LineHyperplaneConfig {
    pub fn new(flags: Vec<LineHyperplaneFlag>) -> Result<Self, FlagError> {
        let n = flags.first().map_or(0, LineHyperplaneFlag::n);
        if flags.len() < 2 {
            return Err(FlagError::WrongCount { expected: "at least 2".into(), found: flags.len() });
        }
        if flags.iter().any(|f| f.n() != n) || n < 2 {
            return Err(FlagError::Incompatible);
        }
        Ok(Self { n, flags })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.flags.len()
    }

    pub fn flags(&self) -> &[LineHyperplaneFlag] {
        &self.flags
    }

    /// `phi_i(v_j)`.
    pub fn pairing(&self, i: usize, j: usize) -> GaussianRational {
        pair(&self.flags[i].phi, &self.flags[j].v)
    }

    pub fn lines_matrix(&self) -> Matrix {
        Matrix::from_columns(self.n, &self.flags.iter().map(|f| f.v.clone()).collect::<Vec<_>>()).expect("uniform length")
    }

    pub fn forms_matrix(&self) -> Matrix {
        Matrix::from_rows(self.flags.iter().map(|f| f.phi.clone()).collect()).expect("uniform length")
    }

    pub fn transform(&self, g: &Matrix) -> Result<Self, FlagError> {
        Self::new(self.flags.iter().map(|f| f.transform(g)).collect::<Result<_, _>>()?)
    }

    pub fn subconfig(&self, indices: &[usize]) -> Result<Self, FlagError> {
        Self::new(indices.iter().map(|&i| self.flags[i].clone()).collect())
    }
}

/// Two-dimensional subspaces of `C^4`, each given by a 4x2 basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanesConfig {
    planes: Vec<Matrix>,
}

impl PlanesConfig {
    pub fn new(planes: Vec<Matrix>) -> Result<Self, FlagError> {
        for p in &planes {
            if p.rows() != 4 {
                return Err(FlagError::WrongLength { n: 4, found: p.rows() });
            }
            if p.rank() != 2 {
                return Err(FlagError::BadDimensions { n: 4, dims: vec![p.rank()] });
            }
        }
        let planes = planes.into_iter().map(|p| {
            let e = p.echelon();
            Matrix::from_columns(4, &e.pivots.iter().map(|&c| p.column(c)).collect::<Vec<_>>()).expect("length 4")
        });
        Ok(Self { planes: planes.collect() })
    }

    pub fn planes(&self) -> &[Matrix] {
        &self.planes
    }

    pub fn r(&self) -> usize {
        self.planes.len()
    }

    pub fn transform(&self, g: &Matrix) -> Result<Self, FlagError> {
        Self::new(self.planes.iter().map(|p| g.checked_mul(p)).collect::<Result<_, _>>()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteConfig {
    n: usize,
    flags: Vec<Flag>,
}

impl CompleteConfig {
    pub fn new(flags: Vec<Flag>) -> Result<Self, FlagError> {
        let n = flags.first().map_or(0, Flag::n);
        if flags.iter().any(|f| f.n() != n || !f.is_complete()) || n < 2 {
            return Err(FlagError::Incompatible);
        }
        Ok(Self { n, flags })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.flags.len()
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn transform(&self, g: &Matrix) -> Result<Self, FlagError> {
        Self::new(self.flags.iter().map(|f| f.transform(g)).collect::<Result<_, _>>()?)
    }

    /// Projection `(F_1, F_{n-1})` of every flag.
    pub fn to_line_hyperplane(&self) -> Result<LineHyperplaneConfig, FlagError> {
        LineHyperplaneConfig::new(self.flags.iter().map(Flag::to_line_hyperplane).collect::<Result<_, _>>()?)
    }

    /// Projection to the middle planes when `n = 4`.
    pub fn to_planes(&self) -> Result<PlanesConfig, FlagError> {
        if self.n != 4 {
            return Err(FlagError::Incompatible);
        }
        PlanesConfig::new(self.flags.iter().map(|f| f.basis.leading_columns(2)).collect())
    }

    /// Concatenation `[F^(1)_{a_1} | ... | F^(r)_{a_r}]` of adapted prefixes.
    pub fn concatenated_prefixes(&self, alpha: &[usize]) -> Result<Matrix, FlagError> {
        let blocks: Vec<Matrix> = self
            .flags
            .iter()
            .zip(alpha)
            .map(|(f, &a)| f.prefix(a).ok_or(FlagError::BadDimensions { n: self.n, dims: vec![a] }))
            .collect::<Result<_, _>>()?;
        Ok(Matrix::hcat_all(self.n, &blocks)?)
    }
}

/// Lines in `C^n`, meant to be isotropic for some Hermitian form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicLinesConfig {
    n: usize,
    lines: Vec<Vector>,
}

impl IsotropicLinesConfig {
    pub fn new(lines: Vec<Vector>) -> Result<Self, FlagError> {
        let n = lines.first().map_or(0, Vec::len);
        if lines.iter().any(|v| v.len() != n) || n < 2 {
            return Err(FlagError::Incompatible);
        }
        if lines.iter().any(|v| v.iter().all(Zero::is_zero)) {
            return Err(FlagError::Degenerate);
        }
        Ok(Self { n, lines })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vector] {
        &self.lines
    }

    pub fn transform(&self, g: &Matrix) -> Result<Self, FlagError> {
        Self::new(self.lines.iter().map(|v| g.mul_vec(v)).collect::<Result<_, _>>()?)
    }
}

/// A configuration of any supported kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Configuration {
    LineHyperplane(LineHyperplaneConfig),
    Planes(PlanesConfig),
    Complete(CompleteConfig),
    IsotropicLines(IsotropicLinesConfig),
}

impl Configuration {
    pub fn kind(&self) -> ConfigKind {
        match self {
            Self::LineHyperplane(_) => ConfigKind::LineHyperplane,
            Self::Planes(_) => ConfigKind::PlanesIn4,
            Self::Complete(_) => ConfigKind::Complete,
            Self::IsotropicLines(_) => ConfigKind::IsotropicLines,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Self::LineHyperplane(c) => c.n(),
            Self::Planes(_) => 4,
            Self::Complete(c) => c.n(),
            Self::IsotropicLines(c) => c.n(),
        }
    }

    fn wrong(&self, expected: ConfigKind) -> FlagError {
        FlagError::WrongKind { expected, found: self.kind() }
    }

    pub fn as_line_hyperplane(&self) -> Result<&LineHyperplaneConfig, FlagError> {
        match self {
            Self::LineHyperplane(c) => Ok(c),
            _ => Err(self.wrong(ConfigKind::LineHyperplane)),
        }
    }

    pub fn as_planes(&self) -> Result<&PlanesConfig, FlagError> {
        match self {
            Self::Planes(c) => Ok(c),
            _ => Err(self.wrong(ConfigKind::PlanesIn4)),
        }
    }

    pub fn as_complete(&self) -> Result<&CompleteConfig, FlagError> {
        match self {
            Self::Complete(c) => Ok(c),
            _ => Err(self.wrong(ConfigKind::Complete)),
        }
    }

    pub fn as_isotropic_lines(&self) -> Result<&IsotropicLinesConfig, FlagError> {
        match self {
            Self::IsotropicLines(c) => Ok(c),
            _ => Err(self.wrong(ConfigKind::IsotropicLines)),
        }
    }
}

/// Tuples `alpha` of length `r` with entries in `0..=n` summing to `n`.
pub fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            go(left - a, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        go(n, r, &mut Vec::new(), &mut out);
    }
    out
}

/// Every composition `alpha` of `n` gives `sum_i F^(i)_{alpha_i} = C^n`.
pub fn is_generic(c: &CompleteConfig) -> Result<bool, FlagError> {
    if c.n() > MAX_GENERIC || c.r() > MAX_GENERIC {
        return Err(FlagError::TooLarge { n: c.n(), r: c.r() });
    }
    for alpha in compositions(c.n(), c.r()) {
        if c.concatenated_prefixes(&alpha)?.det()?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn general_position_block(c: &LineHyperplaneConfig, idx: &[usize]) -> Result<bool, FlagError> {
    let n = c.n();
    let k = idx.len();
    let v = Matrix::from_columns(n, &idx.iter().map(|&i| c.flags[i].v.clone()).collect::<Vec<_>>())?;
    let phi = Matrix::from_rows(idx.iter().map(|&i| c.flags[i].phi.clone()).collect())?;
    let cross_terms_nonzero = idx.iter().all(|&i| idx.iter().all(|&j| i == j || !c.pairing(j, i).is_zero()));
    // With rank(v) = k, (sum L) meets (cap H) trivially iff phi v is invertible.
    Ok(v.rank() == k && phi.rank() == k && cross_terms_nonzero && !phi.checked_mul(&v)?.det()?.is_zero())
}

/// General position of a line-hyperplane configuration; for `r > n` every
/// `n`-element subconfiguration must be in general position.
pub fn is_general_position(c: &LineHyperplaneConfig) -> Result<bool, FlagError> {
    let (n, r) = (c.n(), c.r());
    if r <= n {
        return general_position_block(c, &(0..r).collect::<Vec<_>>());
    }
    for subset in subsets(r, n) {
        if !general_position_block(c, &subset)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `k`-element subsets of `0..r` in lexicographic order.
pub fn subsets(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            go(i + 1, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, r, k, &mut Vec::new(), &mut out);
    out
}

/// `F^1_d` meets `F^2_{n-d}` trivially whenever both members exist.
/// Requires the two flags to have the same type; for planes in `C^4` this is `W1 + W2 = C^4`.
pub fn is_opposite(f1: &Flag, f2: &Flag) -> Result<bool, FlagError> {
    if f1.n() != f2.n() || f1.dims() != f2.dims() {
        return Err(FlagError::Incompatible);
    }
    let n = f1.n();
    for &d in f1.dims() {
        if let Some(b) = f2.prefix(n - d) {
            let a = f1.prefix(d).expect("d is a member dimension");
            if intersection_dim(&a, &b)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Opposition of two planes in `C^4`.
pub fn planes_opposite(w1: &Matrix, w2: &Matrix) -> Result<bool, FlagError> {
    Ok(w1.hcat(w2)?.rank() == 4)
}

/// Position of a semi-stable triple with respect to the three maximally
/// degenerate strata of the quotient `P^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegeneracyClass {
    /// `phi_2(v_1) = phi_3(v_2) = phi_1(v_3) = 0`; here `pi = [1 : 0]`.
    FiberZero,
    /// `phi_3(v_1) = phi_1(v_2) = phi_2(v_3) = 0`; here `pi = [0 : 1]`.
    FiberInfinity,
    /// Lines span a plane and hyperplanes meet in codimension two; `pi = [1 : -1]`.
    FiberMinusOne,
    None,
}

impl DegeneracyClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::FiberZero => "fiber-zero",
            Self::FiberInfinity => "fiber-infinity",
            Self::FiberMinusOne => "fiber-minus-one",
            Self::None => "none",
        }
    }
}

/// Classifies a semi-stable triple of line-hyperplane flags. Labels follow the
/// quotient coordinate `[s_(231) : s_(312)]`.
pub fn maximal_degeneracy_class(c: &LineHyperplaneConfig) -> Result<DegeneracyClass, FlagError> {
    if c.r() != 3 {
        return Err(FlagError::WrongCount { expected: "3".into(), found: c.r() });
    }
    if !crate::semistability::line_hyperplane_semistable(c) {
        return Err(FlagError::NotSemistable);
    }
    let vanish = |pairs: [(usize, usize); 3]| pairs.iter().all(|&(i, j)| c.pairing(i, j).is_zero());
    Ok(if vanish([(1, 0), (2, 1), (0, 2)]) {
        DegeneracyClass::FiberZero
    } else if vanish([(2, 0), (0, 1), (1, 2)]) {
        DegeneracyClass::FiberInfinity
    } else if c.lines_matrix().rank() == 2 && c.forms_matrix().rank() == 2 {
        DegeneracyClass::FiberMinusOne
    } else {
        DegeneracyClass::None
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, k: usize) -> Vector {
        (0..n).map(|i| GaussianRational::int((i == k) as i64)).collect()
    }

    fn ints(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| GaussianRational::int(x)).collect()
    }

    pub(crate) fn lh(v: &[i64], phi: &[i64]) -> LineHyperplaneFlag {
        LineHyperplaneFlag::new(ints(v), ints(phi)).unwrap()
    }

    #[test]
    fn chain_validation() {
        let a = Matrix::from_columns(3, &[e(3, 0)]).unwrap();
        let b = Matrix::from_columns(3, &[e(3, 1), e(3, 0), ints(&[1, 1, 0])]).unwrap();
        let f = Flag::from_chain(3, &[a.clone(), b.clone()]).unwrap();
        assert!(f.is_complete());
        assert_eq!(f.dims(), &[1, 2]);
        assert_eq!(f.basis().rank(), 3);
        let bad = Matrix::from_columns(3, &[e(3, 1), e(3, 2)]).unwrap();
        assert_eq!(Flag::from_chain(3, &[a, bad]), Err(FlagError::NotNested { index: 0 }));
        assert!(matches!(Flag::from_chain(3, &[b.clone(), b]), Err(FlagError::BadDimensions { .. })));
    }

    #[test]
    fn line_must_lie_in_hyperplane() {
        assert_eq!(LineHyperplaneFlag::new(ints(&[1, 0, 0]), ints(&[1, 0, 0])), Err(FlagError::LineNotInHyperplane));
        let f = lh(&[1, 0, 0], &[0, 0, 1]);
        let h = f.hyperplane_basis();
        assert_eq!(h.rank(), 2);
        assert!(h.columns().iter().all(|c| pair(f.phi(), c).is_zero()));
    }

    #[test]
    fn generic_vs_general_position() {
        // L3 = L1 + L2 and each L_i lies in H_i only: generic but not in general position.
        let c = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 1, 1]), lh(&[0, 1, 0], &[1, 0, 1]), lh(&[1, 1, 0], &[1, -1, 0])]).unwrap();
        assert!(!is_general_position(&c).unwrap());
        let g = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 1, 1]), lh(&[0, 1, 0], &[1, 0, 1]), lh(&[0, 0, 1], &[1, 1, 0])]).unwrap();
        assert!(is_general_position(&g).unwrap());
    }

    #[test]
    fn coordinate_flags() {
        let std = Flag::complete(Matrix::identity(3)).unwrap();
        let rev = Flag::complete_from_vectors(&[e(3, 2), e(3, 1), e(3, 0)]).unwrap();
        let mid = Flag::complete_from_vectors(&[ints(&[1, 1, 1]), ints(&[0, 1, 2]), e(3, 0)]).unwrap();
        assert!(is_opposite(&std, &rev).unwrap());
        assert!(!is_opposite(&std, &std).unwrap());
        let c = CompleteConfig::new(vec![std.clone(), rev.clone(), mid]).unwrap();
        assert!(is_generic(&c).unwrap());
        let twice = CompleteConfig::new(vec![std.clone(), rev, std]).unwrap();
        assert!(!is_generic(&twice).unwrap());
    }

    #[test]
    fn opposite_planes() {
        let w1 = Matrix::from_columns(4, &[e(4, 0), e(4, 1)]).unwrap();
        let w2 = Matrix::from_columns(4, &[e(4, 2), e(4, 3)]).unwrap();
        let w3 = Matrix::from_columns(4, &[e(4, 1), e(4, 2)]).unwrap();
        assert!(planes_opposite(&w1, &w2).unwrap());
        assert!(!planes_opposite(&w1, &w3).unwrap());
        let f1 = Flag::from_chain(4, &[w1]).unwrap();
        let f2 = Flag::from_chain(4, &[w2]).unwrap();
        assert!(is_opposite(&f1, &f2).unwrap());
    }

    #[test]
    fn degeneracy_classes() {
        let cyclic = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 1, 0]), lh(&[0, 1, 0], &[0, 0, 1]), lh(&[0, 0, 1], &[1, 0, 0])]).unwrap();
        assert_eq!(maximal_degeneracy_class(&cyclic).unwrap(), DegeneracyClass::FiberZero);
        let mirrored = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 0, 1]), lh(&[0, 1, 0], &[1, 0, 0]), lh(&[0, 0, 1], &[0, 1, 0])]).unwrap();
        assert_eq!(maximal_degeneracy_class(&mirrored).unwrap(), DegeneracyClass::FiberInfinity);
        // v3 = v1 + v2, phi3 = phi2(v1) phi1 - phi1(v2) phi2
        let planar = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 1, 0]), lh(&[0, 1, 0], &[1, 0, 0]), lh(&[1, 1, 0], &[-1, 1, 0])]).unwrap();
        assert_eq!(maximal_degeneracy_class(&planar).unwrap(), DegeneracyClass::FiberMinusOne);
        let g = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 1, 1]), lh(&[0, 1, 0], &[1, 0, 1]), lh(&[0, 0, 1], &[1, 1, 0])]).unwrap();
        assert_eq!(maximal_degeneracy_class(&g).unwrap(), DegeneracyClass::None);
        let same = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 1, 0]); 3]).unwrap();
        assert_eq!(maximal_degeneracy_class(&same), Err(FlagError::NotSemistable));
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(6, 4).len(), 84);
        assert_eq!(subsets(5, 3).len(), 10);
    }
}
