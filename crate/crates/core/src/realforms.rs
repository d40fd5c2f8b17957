//! Real forms of `SL_n(C)` and the invariants that survive restriction to
//! them: real flags, isotropic flags for a Hermitian form, quaternionic planes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::derangements::{inverse_pair_representatives, order_two_derangements, Derangement, DerangementError};
use crate::flags::{same_span, Configuration, Flag, FlagError, IsotropicLinesConfig, LineHyperplaneFlag};
use crate::invariants::{InvariantError, QuotientPoint, SpaceTag};
use crate::numeric::{GaussianRational, Matrix, NumericError, RationalQuaternion, Vector};
use crate::semistability::{isotropic_lines_semistable, SemistabilityError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealFormError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Derangement(#[from] DerangementError),
    #[error(transparent)]
    Semistability(#[from] Box<SemistabilityError>),
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("Hermitian form is degenerate")]
    DegenerateForm,
    #[error("form has signature {found:?}, expected {expected}")]
    WrongSignature { found: (usize, usize), expected: String },
    #[error("line {0} is not isotropic")]
    NotIsotropic(usize),
    #[error("configuration is not semi-stable")]
    NotSemistable,
    #[error("the epsilon invariant is defined for odd r only, got {0}")]
    EvenCount(usize),
    #[error("a Hermitian pairing vanishes")]
    VanishingPairing,
    #[error("points of P^1(H) must be distinct and nonzero")]
    DegeneratePoints,
    #[error("coordinates must be real")]
    NotReal,
    #[error("expected {expected}, got {found}")]
    Shape { expected: String, found: String },
}

impl From<SemistabilityError> for RealFormError {
    fn from(e: SemistabilityError) -> Self {
        Self::Semistability(Box::new(e))
    }
}

/// A nondegenerate Hermitian form `h(x, y) = conj(x)^T H y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    matrix: Matrix,
}

impl HermitianForm {
    pub fn new(matrix: Matrix) -> Result<Self, RealFormError> {
        if !matrix.is_square() || matrix.adjoint() != matrix {
            return Err(RealFormError::NotHermitian);
        }
        if matrix.det()?.is_zero() {
            return Err(RealFormError::DegenerateForm);
        }
        Ok(Self { matrix })
    }

    /// `[[0,0,1],[0,I,0],[1,0,0]]`, of signature `(n-1, 1)`.
    pub fn standard_unitary(n: usize) -> Self {
        let m = Matrix::from_fn(n, n, |r, c| {
            let one = (r + c == n - 1 && (r == 0 || c == 0)) || (r == c && r > 0 && r < n - 1);
            GaussianRational::int(one as i64)
        });
        Self { matrix: m }
    }

    /// The anti-diagonal form on `C^4`, of signature `(2, 2)`.
    pub fn split_4() -> Self {
        Self { matrix: Matrix::from_fn(4, 4, |r, c| GaussianRational::int((r + c == 3) as i64)) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eval(&self, x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
        let my = self.matrix.mul_vec(y).expect("vector length matches the form");
        x.iter().zip(&my).map(|(a, b)| &a.conj() * b).sum()
    }

    /// The linear form `h(v, .)` as a row vector.
    pub fn dual(&self, v: &[GaussianRational]) -> Vector {
        let conj: Vector = v.iter().map(GaussianRational::conj).collect();
        self.matrix.transpose().mul_vec(&conj).expect("vector length matches the form")
    }

    /// `(positive, negative)` counts, by diagonalizing with congruences.
    pub fn signature(&self) -> (usize, usize) {
        let n = self.n();
        let mut a = self.matrix.clone();
        let congruence = |a: &Matrix, p: &Matrix| p.adjoint().checked_mul(a).and_then(|x| x.checked_mul(p)).expect("square");
        for k in 0..n {
            if a.get(k, k).is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                    let p = Matrix::from_fn(n, n, |r, c| {
                        let src = if c == k { j } else if c == j { k } else { c };
                        GaussianRational::int((r == src) as i64)
                    });
                    a = congruence(&a, &p);
                } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                    let c = if a.get(k, j).re().is_zero() { GaussianRational::i() } else { GaussianRational::one() };
                    let mut p = Matrix::identity(n);
                    p.set(j, k, c);
                    a = congruence(&a, &p);
                }
            }
            let pivot = a.get(k, k).clone();
            if pivot.is_zero() {
                continue;
            }
            let mut p = Matrix::identity(n);
            for j in k + 1..n {
                p.set(k, j, -(a.get(k, j) / &pivot));
            }
            a = congruence(&a, &p);
        }
        let diag: Vec<&BigRational> = (0..n).map(|k| a.get(k, k).re()).collect();
        (diag.iter().filter(|x| x.is_positive()).count(), diag.iter().filter(|x| x.is_negative()).count())
    }

    fn require_signature(&self, accept: &[(usize, usize)], label: &str) -> Result<(), RealFormError> {
        let s = self.signature();
        if accept.contains(&s) { Ok(()) } else { Err(RealFormError::WrongSignature { found: s, expected: label.into() }) }
    }
}

fn column(v: &[GaussianRational]) -> Matrix {
    Matrix::from_columns(v.len(), &[v.to_vec()]).expect("vector")
}

/// The subspace is stable under complex conjugation.
pub fn is_real_subspace(w: &Matrix) -> bool {
    w.hcat(&w.conj()).map_or(false, |m| m.rank() == w.rank())
}

/// Every member of the flag is defined over the reals.
pub fn is_real_flag(f: &Flag) -> bool {
    f.subspaces().iter().all(is_real_subspace)
}

pub fn is_real_line_hyperplane(f: &LineHyperplaneFlag) -> bool {
    is_real_subspace(&column(f.v())) && is_real_subspace(&column(f.phi()))
}

/// `L` is isotropic and `H` is its orthogonal: `h(v, v) = 0` and `phi` is proportional to `h(v, .)`.
pub fn is_su_flag(f: &LineHyperplaneFlag, h: &HermitianForm) -> Result<bool, RealFormError> {
    let n = f.n();
    h.require_signature(&[(n - 1, 1), (1, n - 1)], "(n-1, 1)")?;
    if !h.eval(f.v(), f.v()).is_zero() {
        return Ok(false);
    }
    Ok(same_span(&column(f.phi()), &column(&h.dual(f.v()))))
}

pub fn is_isotropic_plane(w: &Matrix, h: &HermitianForm) -> bool {
    let cols = w.columns();
    cols.iter().all(|x| cols.iter().all(|y| h.eval(x, y).is_zero()))
}

/// `tau(x) = (-conj x2, conj x1, -conj x4, conj x3)`.
pub fn quaternionic_structure(x: &[GaussianRational]) -> Vector {
    vec![-x[1].conj(), x[0].conj(), -x[3].conj(), x[2].conj()]
}

/// The plane is `tau`-stable, i.e. a quaternionic line of `H^2`.
pub fn is_quaternionic_plane(w: &Matrix) -> bool {
    if w.rows() != 4 {
        return false;
    }
    let images: Vec<Vector> = w.columns().iter().map(|c| quaternionic_structure(c)).collect();
    let tw = Matrix::from_columns(4, &images).expect("length 4");
    same_span(w, &tw)
}

fn require_isotropic(c: &IsotropicLinesConfig, h: &HermitianForm) -> Result<(), RealFormError> {
    if h.n() != c.n() {
        return Err(RealFormError::Shape { expected: format!("form of size {}", c.n()), found: h.n().to_string() });
    }
    match c.lines().iter().position(|v| !h.eval(v, v).is_zero()) {
        Some(i) => Err(RealFormError::NotIsotropic(i)),
        None => Ok(()),
    }
}

/// `epsilon_sigma = prod_i h(v_i, v_sigma(i))`.
pub fn epsilon(c: &IsotropicLinesConfig, h: &HermitianForm, sigma: &Derangement) -> GaussianRational {
    (0..c.r()).map(|i| h.eval(&c.lines()[i], &c.lines()[sigma.image(i)])).product()
}

/// `epsilon_sigma` for each `sigma` of the index set `d` (odd `r`).
pub fn epsilon_invariant(c: &IsotropicLinesConfig, h: &HermitianForm, d: &[Derangement]) -> Result<Vec<GaussianRational>, RealFormError> {
    if c.r() % 2 == 0 {
        return Err(RealFormError::EvenCount(c.r()));
    }
    require_isotropic(c, h)?;
    Ok(d.iter().map(|s| epsilon(c, h, s)).collect())
}

/// A point of `(R^l x C^(m-l)) \ 0` up to positive rational scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentRay {
    /// `epsilon` at fixed-point-free involutions; always real and nonnegative.
    pub real: Vec<BigRational>,
    /// `epsilon` at one representative of each inverse pair.
    pub complex: Vec<GaussianRational>,
}

impl MomentRay {
    /// Equality up to a positive rational factor.
    pub fn same_ray(&self, other: &MomentRay) -> bool {
        if self.real.len() != other.real.len() || self.complex.len() != other.complex.len() {
            return false;
        }
        let mine: Vec<GaussianRational> = self.real.iter().cloned().map(GaussianRational::from).chain(self.complex.iter().cloned()).collect();
        let theirs: Vec<GaussianRational> = other.real.iter().cloned().map(GaussianRational::from).chain(other.complex.iter().cloned()).collect();
        let Some(k) = mine.iter().position(|x| !x.is_zero()) else { return theirs.iter().all(Zero::is_zero) };
        let Ok(ratio) = theirs[k].checked_div(&mine[k]) else { return false };
        ratio.is_real() && ratio.re().is_positive() && mine.iter().zip(&theirs).all(|(a, b)| &(a * &ratio) == b)
    }

    pub fn coords(&self) -> Vec<GaussianRational> {
        self.real.iter().cloned().map(GaussianRational::from).chain(self.complex.iter().cloned()).collect()
    }
}

/// Serialized like a quotient point, `{"space": "moment-ray", "coords": [...]}`,
/// plus `real_entries`, the number of leading real coordinates.
impl Serialize for MomentRay {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            space: SpaceTag,
            coords: Vec<GaussianRational>,
            real_entries: usize,
        }
        Out { space: SpaceTag::MomentRay, coords: self.coords(), real_entries: self.real.len() }.serialize(serializer)
    }
}

/// The `SU`-invariant ray of a semi-stable configuration of isotropic lines.
pub fn moment_ray(c: &IsotropicLinesConfig, h: &HermitianForm) -> Result<MomentRay, RealFormError> {
    require_isotropic(c, h)?;
    if !isotropic_lines_semistable(c) {
        return Err(RealFormError::NotSemistable);
    }
    let real = order_two_derangements(c.r())?.iter().map(|s| epsilon(c, h, s).re().clone()).collect();
    let complex = inverse_pair_representatives(c.r())?.iter().map(|s| epsilon(c, h, s)).collect();
    Ok(MomentRay { real, complex })
}

/// `h(v1, v2) h(v2, v3) h(v3, v1)` for three isotropic lines; its class up
/// to positive scaling is the Cartan invariant of the triple.
pub fn cartan_argument_class(c: &IsotropicLinesConfig, h: &HermitianForm) -> Result<GaussianRational, RealFormError> {
    if c.r() != 3 {
        return Err(RealFormError::Shape { expected: "3 lines".into(), found: c.r().to_string() });
    }
    require_isotropic(c, h)?;
    let v = c.lines();
    let factors = [h.eval(&v[0], &v[1]), h.eval(&v[1], &v[2]), h.eval(&v[2], &v[0])];
    if factors.iter().any(Zero::is_zero) {
        return Err(RealFormError::VanishingPairing);
    }
    Ok(factors.iter().product())
}

/// A point `[a : b]` of the quaternionic projective line (right scalars).
pub type QuaternionPoint = (RationalQuaternion, RationalQuaternion);

type QMat = [[RationalQuaternion; 2]; 2];

fn qmul_vec(m: &QMat, x: &QuaternionPoint) -> QuaternionPoint {
    (&(&m[0][0] * &x.0) + &(&m[0][1] * &x.1), &(&m[1][0] * &x.0) + &(&m[1][1] * &x.1))
}

fn qinverse(m: &QMat) -> Result<QMat, RealFormError> {
    let [[a, b], [c, d]] = m;
    if a.is_zero() {
        let (bi, ci) = (b.inv()?, c.inv()?);
        return Ok([[-&(&(&ci * d) * &bi), ci], [bi, RationalQuaternion::zero()]]);
    }
    let ai = a.inv()?;
    let s = d - &(&(c * &ai) * b);
    let si = s.inv()?;
    let ai_b_si = &(&ai * b) * &si;
    let si_c_ai = &(&si * c) * &ai;
    Ok([[&ai + &(&ai_b_si * &(c * &ai)), -&ai_b_si], [-&si_c_ai, si]])
}

fn same_quaternion_point(x: &QuaternionPoint, y: &QuaternionPoint) -> bool {
    if x.0.is_zero() {
        return y.0.is_zero();
    }
    if y.0.is_zero() {
        return false;
    }
    let lambda = &x.0.inv().expect("nonzero") * &y.0;
    &x.1 * &lambda == y.1
}

/// Cross-ratio of four points of `P^1(H)`: with `g` sending the first three to
/// `[0:1], [1:1], [1:0]` and the fourth to `[q:1]`, returns `(|q|^2, Re q)`.
pub fn quaternionic_cross_ratio(x: &[QuaternionPoint; 4]) -> Result<(BigRational, BigRational), RealFormError> {
    if x.iter().any(|p| p.0.is_zero() && p.1.is_zero()) {
        return Err(RealFormError::DegeneratePoints);
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if same_quaternion_point(&x[i], &x[j]) {
                return Err(RealFormError::DegeneratePoints);
            }
        }
    }
    let frame: QMat = [[x[2].0.clone(), x[0].0.clone()], [x[2].1.clone(), x[0].1.clone()]];
    let g0 = qinverse(&frame)?;
    let (p, q) = qmul_vec(&g0, &x[1]);
    let d: QMat = [[p.inv()?, RationalQuaternion::zero()], [RationalQuaternion::zero(), q.inv()?]];
    let (u, w) = qmul_vec(&d, &qmul_vec(&g0, &x[3]));
    let q = &u * &w.inv()?;
    Ok((q.norm_sq(), q.real_part().clone()))
}

/// `[|q1 q2 - 1|^2 : |q1 q2|^2 : 1]`.
pub fn planes_point_from_quaternions(q1: &RationalQuaternion, q2: &RationalQuaternion) -> Result<QuotientPoint, RealFormError> {
    let p = q1 * q2;
    let shifted = &p - &RationalQuaternion::one();
    Ok(QuotientPoint::new(
        SpaceTag::Planes,
        vec![shifted.norm_sq().into(), p.norm_sq().into(), GaussianRational::one()],
    )?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicPosition {
    Interior,
    Boundary,
    Exterior,
}

/// Sign of `t0^2 + t1^2 + t2^2 - 2(t0 t1 + t0 t2 + t1 t2)` at a real point of `P^2`.
pub fn sl2h_conic_membership(p: &QuotientPoint) -> Result<ConicPosition, RealFormError> {
    if p.coords().len() != 3 {
        return Err(RealFormError::Shape { expected: "a point of P^2".into(), found: p.space().to_string() });
    }
    if p.coords().iter().any(|x| !x.is_real()) {
        return Err(RealFormError::NotReal);
    }
    let [a, b, c] = [0, 1, 2].map(|k| p.coords()[k].re().clone());
    let two = BigRational::from_integer(2.into());
    let q = &a * &a + &b * &b + &c * &c - two * (&a * &b + &a * &c + &b * &c);
    Ok(if q.is_negative() {
        ConicPosition::Interior
    } else if q.is_zero() {
        ConicPosition::Boundary
    } else {
        ConicPosition::Exterior
    })
}

/// Real forms whose flag varieties have a closed orbit we can recognize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RealForm {
    /// `SL_n(R)`: every flag is real.
    SplitReal,
    /// `SU(n-1, 1)`: lines isotropic, hyperplanes their orthogonals.
    Unitary,
    /// `SU(2, 2)`: planes of `C^4` isotropic for a split form.
    SplitUnitary,
    /// `SL_2(H)`: planes of `C^4` that are quaternionic lines.
    Quaternionic,
}

impl RealForm {
    pub const ALL: [RealForm; 4] = [Self::SplitReal, Self::Unitary, Self::SplitUnitary, Self::Quaternionic];

    pub fn label(self, n: usize) -> String {
        match self {
            Self::SplitReal => format!("SL({n},R)"),
            Self::Unitary => format!("SU({},1)", n.saturating_sub(1)),
            Self::SplitUnitary => "SU(2,2)".into(),
            Self::Quaternionic => "SL(2,H)".into(),
        }
    }

    /// Accepts the labels produced by [`RealForm::label`] and the short names
    /// `real`, `unitary`, `su22`, `quaternionic`.
    pub fn parse(s: &str) -> Option<Self> {
        let t = s.trim().to_ascii_lowercase().replace(' ', "");
        match t.as_str() {
            "real" | "sl(n,r)" => Some(Self::SplitReal),
            "unitary" | "su(n-1,1)" => Some(Self::Unitary),
            "su22" | "su(2,2)" => Some(Self::SplitUnitary),
            "quaternionic" | "sl(2,h)" | "sl2h" => Some(Self::Quaternionic),
            _ if t.starts_with("sl(") && t.ends_with(",r)") => Some(Self::SplitReal),
            _ if t.starts_with("su(") && t.ends_with(",1)") => Some(Self::Unitary),
            _ => None,
        }
    }
}

impl fmt::Display for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SplitReal => "SL(n,R)",
            Self::Unitary => "SU(n-1,1)",
            Self::SplitUnitary => "SU(2,2)",
            Self::Quaternionic => "SL(2,H)",
        })
    }
}

/// Which real forms to test and the Hermitian forms to test them with.
#[derive(Clone, Debug)]
pub struct RealStructures {
    pub candidates: BTreeSet<RealForm>,
    /// Signature `(n-1, 1)`; defaults to [`HermitianForm::standard_unitary`].
    pub unitary_form: Option<HermitianForm>,
    /// Signature `(2, 2)`; defaults to [`HermitianForm::split_4`].
    pub split_form: Option<HermitianForm>,
}

impl Default for RealStructures {
    fn default() -> Self {
        Self { candidates: RealForm::ALL.into_iter().collect(), unitary_form: None, split_form: None }
    }
}

impl RealStructures {
    fn unitary(&self, n: usize) -> HermitianForm {
        self.unitary_form.clone().unwrap_or_else(|| HermitianForm::standard_unitary(n))
    }

    fn split(&self) -> HermitianForm {
        self.split_form.clone().unwrap_or_else(HermitianForm::split_4)
    }
}

/// Labels satisfied by every member, with the per-member checks behind them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub n: usize,
    pub labels: BTreeSet<RealForm>,
    pub detail: BTreeMap<RealForm, Vec<bool>>,
}

impl Classification {
    pub fn label_strings(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.label(self.n)).collect()
    }

    fn from_detail(n: usize, detail: BTreeMap<RealForm, Vec<bool>>) -> Self {
        let labels = detail.iter().filter(|(_, v)| v.iter().all(|&b| b)).map(|(k, _)| *k).collect();
        Self { n, labels, detail }
    }

    /// Keeps only labels present in both.
    pub fn intersect(&self, other: &Classification) -> Classification {
        let mut detail = self.detail.clone();
        detail.retain(|k, _| other.detail.contains_key(k));
        for (k, v) in detail.iter_mut() {
            v.extend(other.detail[k].iter().copied());
        }
        Classification::from_detail(self.n, detail)
    }
}

impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            labels: Vec<String>,
            detail: BTreeMap<String, Vec<bool>>,
        }
        let detail = self.detail.iter().map(|(k, v)| (k.label(self.n), v.clone())).collect();
        Out { labels: self.label_strings(), detail }.serialize(serializer)
    }
}

fn check_all<T>(items: &[T], f: impl Fn(&T) -> Result<bool, RealFormError>) -> Result<Vec<bool>, RealFormError> {
    items.iter().map(f).collect()
}

/// Which of the candidate real forms preserve every member of the configuration.
/// Complete flags are tested for realness directly, and through their
/// line-hyperplane and (for `n = 4`) middle-plane projections otherwise.
pub fn classify_configuration(c: &Configuration, s: &RealStructures) -> Result<Classification, RealFormError> {
    let n = c.n();
    let mut detail = BTreeMap::new();
    for &form in &s.candidates {
        let checks = match (form, c) {
            (RealForm::SplitReal, Configuration::LineHyperplane(x)) => check_all(x.flags(), |f| Ok(is_real_line_hyperplane(f)))?,
            (RealForm::SplitReal, Configuration::Planes(x)) => check_all(x.planes(), |w| Ok(is_real_subspace(w)))?,
            (RealForm::SplitReal, Configuration::Complete(x)) => check_all(x.flags(), |f| Ok(is_real_flag(f)))?,
            (RealForm::SplitReal, Configuration::IsotropicLines(x)) => check_all(x.lines(), |v| Ok(is_real_subspace(&column(v))))?,
            (RealForm::Unitary, Configuration::LineHyperplane(x)) => {
                let h = s.unitary(n);
                check_all(x.flags(), |f| is_su_flag(f, &h))?
            }
            (RealForm::Unitary, Configuration::Complete(x)) => {
                let h = s.unitary(n);
                check_all(x.to_line_hyperplane()?.flags(), |f| is_su_flag(f, &h))?
            }
            (RealForm::Unitary, Configuration::IsotropicLines(x)) => {
                let h = s.unitary(n);
                h.require_signature(&[(n - 1, 1), (1, n - 1)], "(n-1, 1)")?;
                check_all(x.lines(), |v| Ok(h.eval(v, v).is_zero()))?
            }
            (RealForm::SplitUnitary, Configuration::Planes(x)) => {
                let h = s.split();
                h.require_signature(&[(2, 2)], "(2, 2)")?;
                check_all(x.planes(), |w| Ok(is_isotropic_plane(w, &h)))?
            }
            (RealForm::SplitUnitary, Configuration::Complete(x)) if n == 4 => {
                let h = s.split();
                h.require_signature(&[(2, 2)], "(2, 2)")?;
                check_all(x.to_planes()?.planes(), |w| Ok(is_isotropic_plane(w, &h)))?
            }
            (RealForm::Quaternionic, Configuration::Planes(x)) => check_all(x.planes(), |w| Ok(is_quaternionic_plane(w)))?,
            (RealForm::Quaternionic, Configuration::Complete(x)) if n == 4 => {
                check_all(x.to_planes()?.planes(), |w| Ok(is_quaternionic_plane(w)))?
            }
            _ => continue,
        };
        detail.insert(form, checks);
    }
    Ok(Classification::from_detail(n, detail))
}
