//! Invariant coordinates of configurations: products `s_sigma`, plane
//! determinants, triple ratios and cross-ratios, and the conversions between them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::derangements::{count_derangements, enumerate_derangements, Derangement, DerangementError};
use crate::flags::{compositions, CompleteConfig, FlagError, LineHyperplaneConfig, PlanesConfig};
use crate::numeric::{det_of_columns, GaussianRational, Matrix, NumericError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Derangement(#[from] DerangementError),
    #[error("configuration is not semi-stable")]
    NotSemistable,
    #[error("configuration is not generic: {0}")]
    NonGeneric(String),
    #[error("{name} is undefined: its denominator vanishes")]
    UndefinedRatio { name: &'static str },
    #[error("expected {expected} flags, got {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("expected a point of {expected}, got {found}")]
    WrongSpace { expected: String, found: String },
    #[error("identity violated: {0}")]
    IdentityViolated(String),
}

fn expect_count(found: usize, expected: usize) -> Result<(), InvariantError> {
    if found == expected { Ok(()) } else { Err(InvariantError::WrongCount { expected, found }) }
}

/// The target space of a quotient map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceTag {
    /// Projective space of dimension `!r - 1` for `r` line-hyperplane flags.
    LineHyperplane { r: usize },
    Planes,
    MomentRay,
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LineHyperplane { r: 3 } => f.write_str("P1-triple"),
            Self::LineHyperplane { r: 4 } => f.write_str("P8-line-hyperplane-r4"),
            Self::LineHyperplane { r } => {
                let dim = count_derangements(*r).map_or(0, |d| d.saturating_sub(1));
                write!(f, "P{dim}-line-hyperplane-r{r}")
            }
            Self::Planes => f.write_str("P2-planes"),
            Self::MomentRay => f.write_str("moment-ray"),
        }
    }
}

impl Serialize for SpaceTag {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A point of projective space over Q(i), normalized so that its first
/// nonzero coordinate is 1. Equality is therefore projective equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuotientPoint {
    space: SpaceTag,
    coords: Vec<GaussianRational>,
}

impl QuotientPoint {
    pub fn new(space: SpaceTag, coords: Vec<GaussianRational>) -> Result<Self, InvariantError> {
        let lead = coords.iter().find(|x| !x.is_zero()).ok_or(InvariantError::NotSemistable)?.inv()?;
        let coords = coords.iter().map(|x| x * &lead).collect();
        Ok(Self { space, coords })
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }

    /// 1-based coordinate `x_k`, matching the usual indexing of the relations.
    pub fn x(&self, k: usize) -> &GaussianRational {
        &self.coords[k - 1]
    }
}

/// `s_sigma = prod_i phi_i(v_sigma(i))`.
pub fn s_sigma(c: &LineHyperplaneConfig, sigma: &Derangement) -> Result<GaussianRational, InvariantError> {
    expect_count(sigma.len(), c.r())?;
    Ok((0..c.r()).map(|i| c.pairing(i, sigma.image(i))).product())
}

/// All `s_sigma` in lexicographic order of `sigma`.
pub fn s_vector(c: &LineHyperplaneConfig) -> Result<Vec<(Derangement, GaussianRational)>, InvariantError> {
    enumerate_derangements(c.r())?
        .into_iter()
        .map(|s| s_sigma(c, &s).map(|v| (s, v)))
        .collect()
}

/// The point `[s_sigma]` of the quotient; fails exactly when every `s_sigma` vanishes.
pub fn quotient_point_line_hyperplane(c: &LineHyperplaneConfig) -> Result<QuotientPoint, InvariantError> {
    let coords = s_vector(c)?.into_iter().map(|(_, v)| v).collect();
    QuotientPoint::new(SpaceTag::LineHyperplane { r: c.r() }, coords)
}

/// Ratios of `P^8` coordinates used for four line-hyperplane flags.
pub type WRatios = BTreeMap<&'static str, GaussianRational>;

const W_TABLE: [(&str, usize, usize); 6] =
    [("w12", 5, 8), ("w13", 9, 2), ("w14", 3, 5), ("w23", 1, 3), ("w24", 2, 1), ("w34", 5, 6)];

pub fn w_ratios(q: &QuotientPoint) -> Result<WRatios, InvariantError> {
    if q.space() != (SpaceTag::LineHyperplane { r: 4 }) {
        return Err(InvariantError::WrongSpace { expected: SpaceTag::LineHyperplane { r: 4 }.to_string(), found: q.space().to_string() });
    }
    W_TABLE
        .iter()
        .map(|&(name, num, den)| {
            let d = q.x(den);
            if d.is_zero() {
                return Err(InvariantError::UndefinedRatio { name });
            }
            Ok((name, q.x(num) / d))
        })
        .collect()
}

fn det2x2_pair(a: &Matrix, b: &Matrix) -> Result<GaussianRational, InvariantError> {
    Ok(a.hcat(b)?.det()?)
}

/// `[s_1234 : s_1324 : s_1423]` with `s_ijkl = det(W_i|W_j) det(W_k|W_l)`.
pub fn planes_invariants(c: &PlanesConfig) -> Result<QuotientPoint, InvariantError> {
    expect_count(c.r(), 4)?;
    let w = c.planes();
    let s = |i: usize, j: usize, k: usize, l: usize| -> Result<GaussianRational, InvariantError> {
        Ok(&det2x2_pair(&w[i], &w[j])? * &det2x2_pair(&w[k], &w[l])?)
    };
    QuotientPoint::new(SpaceTag::Planes, vec![s(0, 1, 2, 3)?, s(0, 2, 1, 3)?, s(0, 3, 1, 2)?])
}

/// The quadruple `(W1, W2, exp(A2) W1, exp(A1) W2)` with `W1 = <e1, e2>`, `W2 = <e3, e4>`.
pub fn affine_chart_planes(a1: &Matrix, a2: &Matrix) -> Result<PlanesConfig, InvariantError> {
    check_2x2(a1)?;
    check_2x2(a2)?;
    let id = Matrix::identity(2);
    let zero = Matrix::zeros(2, 2);
    Ok(PlanesConfig::new(vec![
        id.vcat(&zero)?,
        zero.vcat(&id)?,
        id.vcat(a2)?,
        a1.vcat(&id)?,
    ])?)
}

fn check_2x2(a: &Matrix) -> Result<(), InvariantError> {
    if (a.rows(), a.cols()) == (2, 2) {
        Ok(())
    } else {
        Err(NumericError::DimensionMismatch { expected: 2, found: a.rows().max(a.cols()) }.into())
    }
}

/// `[det(A1 A2 - I) : det(A1 A2) : 1]`.
pub fn planes_affine_chart(a1: &Matrix, a2: &Matrix) -> Result<QuotientPoint, InvariantError> {
    check_2x2(a1)?;
    check_2x2(a2)?;
    let p = a1.checked_mul(a2)?;
    let shifted = p.checked_sub(&Matrix::identity(2))?;
    QuotientPoint::new(SpaceTag::Planes, vec![shifted.det()?, p.det()?, GaussianRational::one()])
}

/// Determinant of the concatenated prefixes of a triple of complete flags.
fn delta(c: &CompleteConfig, beta: [usize; 3]) -> Result<GaussianRational, InvariantError> {
    Ok(c.concatenated_prefixes(&beta)?.det()?)
}

fn shift(alpha: [usize; 3], d: [i64; 3]) -> [usize; 3] {
    [0, 1, 2].map(|k| (alpha[k] as i64 + d[k]) as usize)
}

/// Triple ratios indexed by `alpha` with `alpha_i >= 1`, `sum alpha = n`.
pub type TripleRatios = BTreeMap<[usize; 3], GaussianRational>;

pub fn triple_ratios(c: &CompleteConfig) -> Result<TripleRatios, InvariantError> {
    expect_count(c.r(), 3)?;
    let n = c.n();
    let mut out = TripleRatios::new();
    for alpha in compositions(n, 3).into_iter().filter(|a| a.iter().all(|&x| x >= 1)) {
        let alpha = [alpha[0], alpha[1], alpha[2]];
        let num = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]];
        let den = [[1, -1, 0], [0, 1, -1], [-1, 0, 1]];
        let prod = |ds: [[i64; 3]; 3]| -> Result<GaussianRational, InvariantError> {
            ds.iter().map(|&d| delta(c, shift(alpha, d))).product()
        };
        let d = prod(den)?;
        if d.is_zero() {
            return Err(InvariantError::NonGeneric(format!("a determinant around {alpha:?} vanishes")));
        }
        out.insert(alpha, &prod(num)? / &d);
    }
    Ok(out)
}

/// Product of all triple ratios, checked against the boundary determinant
/// ratio and against `s_(231) / s_(312)` of the projected triple.
///
/// The product equals the boundary ratio on the nose. Converting boundary
/// determinants into pairings `phi_i(v_j)` moves a vector across `n - 1`
/// others, so the product is `(-1)^(n-1) s_(231) / s_(312)`: the two agree
/// for odd `n` and differ by a sign for even `n`.
pub fn triple_ratio_product_check(c: &CompleteConfig) -> Result<GaussianRational, InvariantError> {
    let n = c.n();
    let product: GaussianRational = triple_ratios(c)?.into_values().product();
    let boundary = triple_boundary_ratio(c)?;
    if product != boundary {
        return Err(InvariantError::IdentityViolated(format!("product {product} != boundary ratio {boundary}")));
    }
    let projected = projected_triple_ratio(c)?;
    let signed = if n % 2 == 0 { -projected } else { projected };
    if product != signed {
        return Err(InvariantError::IdentityViolated(format!("product {product} != (-1)^(n-1) s_(231)/s_(312) = {signed}")));
    }
    Ok(product)
}

/// `Delta_(n-1,1,0) Delta_(0,n-1,1) Delta_(1,0,n-1) / (Delta_(n-1,0,1) Delta_(1,n-1,0) Delta_(0,1,n-1))`.
pub fn triple_boundary_ratio(c: &CompleteConfig) -> Result<GaussianRational, InvariantError> {
    expect_count(c.r(), 3)?;
    let m = c.n() - 1;
    let num = [[m, 1, 0], [0, m, 1], [1, 0, m]];
    let den = [[m, 0, 1], [1, m, 0], [0, 1, m]];
    let dprod = |bs: [[usize; 3]; 3]| -> Result<GaussianRational, InvariantError> { bs.iter().map(|&b| delta(c, b)).product() };
    let d = dprod(den)?.inv().map_err(|_| InvariantError::NonGeneric("a boundary determinant vanishes".into()))?;
    Ok(&dprod(num)? * &d)
}

/// `s_(231) / s_(312)` of the (line, hyperplane) projection of a triple.
pub fn projected_triple_ratio(c: &CompleteConfig) -> Result<GaussianRational, InvariantError> {
    expect_count(c.r(), 3)?;
    let lh = c.to_line_hyperplane()?;
    let s231 = s_sigma(&lh, &Derangement::new(vec![1, 2, 0])?)?;
    let s312 = s_sigma(&lh, &Derangement::new(vec![2, 0, 1])?)?;
    s312.inv().map_err(|_| InvariantError::UndefinedRatio { name: "s_(231)/s_(312)" }).map(|d| &s231 * &d)
}

/// Cross-ratio of four lines in a plane given by spanning vectors.
pub fn cross_ratio(u: [&[GaussianRational]; 4]) -> Result<GaussianRational, InvariantError> {
    let d = |a: usize, b: usize| det_of_columns(&[u[a], u[b]]);
    let den = &d(0, 3)? * &d(1, 2)?;
    if den.is_zero() {
        return Err(InvariantError::NonGeneric("coincident lines in a cross-ratio".into()));
    }
    Ok(&(&d(0, 2)? * &d(1, 3)?) / &den)
}

/// Cross-ratios indexed by `alpha` with `sum alpha = n - 2`.
pub type CrossRatios = BTreeMap<[usize; 4], GaussianRational>;

/// For each `alpha`, the cross-ratio of the four lines `F^(i)_{alpha_i + 1}`
/// in `C^n / E_alpha`, `E_alpha = sum_i F^(i)_{alpha_i}`. The quotient is
/// coordinatized by a basis of the annihilator of `E_alpha`.
pub fn cross_ratios(c: &CompleteConfig) -> Result<CrossRatios, InvariantError> {
    expect_count(c.r(), 4)?;
    let n = c.n();
    if n < 2 {
        return Err(InvariantError::NonGeneric("n < 2".into()));
    }
    let mut out = CrossRatios::new();
    for alpha in compositions(n - 2, 4) {
        let e = c.concatenated_prefixes(&alpha)?;
        let annihilator = e.left_kernel();
        if annihilator.len() != 2 {
            return Err(InvariantError::NonGeneric(format!("E_{alpha:?} has dimension {}", n - annihilator.len())));
        }
        let q = Matrix::from_rows(annihilator)?;
        let u: Vec<Vec<GaussianRational>> = c
            .flags()
            .iter()
            .zip(&alpha)
            .map(|(f, &a)| q.mul_vec(&f.basis_vector(a)))
            .collect::<Result<_, _>>()?;
        let key = [alpha[0], alpha[1], alpha[2], alpha[3]];
        out.insert(key, cross_ratio([&u[0], &u[1], &u[2], &u[3]])?);
    }
    Ok(out)
}

fn chi<'a>(v: &'a CrossRatios, key: [usize; 4]) -> Result<&'a GaussianRational, InvariantError> {
    v.get(&key).ok_or_else(|| InvariantError::WrongSpace { expected: format!("cross-ratio {key:?}"), found: "missing entry".into() })
}

fn one_minus_inv(x: &GaussianRational, name: &'static str) -> Result<GaussianRational, InvariantError> {
    Ok(&GaussianRational::one() - &x.inv().map_err(|_| InvariantError::UndefinedRatio { name })?)
}

fn inv_one_minus(x: &GaussianRational, name: &'static str) -> Result<GaussianRational, InvariantError> {
    (&GaussianRational::one() - x).inv().map_err(|_| InvariantError::UndefinedRatio { name })
}

/// The six `w` ratios as telescoping products of cross-ratios.
pub fn convert_chi_to_w(v: &CrossRatios, n: usize) -> Result<WRatios, InvariantError> {
    let m = n.checked_sub(2).ok_or_else(|| InvariantError::NonGeneric("n < 2".into()))?;
    let pairs: Vec<(usize, usize)> = (0..=m).map(|i| (i, m - i)).collect();
    let mut out = WRatios::new();
    let mut put = |name: &'static str, place: fn(usize, usize) -> [usize; 4], f: fn(&GaussianRational, &'static str) -> Result<GaussianRational, InvariantError>| -> Result<(), InvariantError> {
        let value = pairs.iter().map(|&(i, j)| f(chi(v, place(i, j))?, name)).product::<Result<GaussianRational, _>>()?;
        out.insert(name, value);
        Ok(())
    };
    put("w12", |i, j| [i, j, 0, 0], |x, _| Ok(x.clone()))?;
    put("w13", |i, j| [i, 0, j, 0], inv_one_minus)?;
    put("w14", |i, j| [i, 0, 0, j], one_minus_inv)?;
    put("w23", |i, j| [0, i, j, 0], one_minus_inv)?;
    put("w24", |i, j| [0, i, 0, j], inv_one_minus)?;
    put("w34", |i, j| [0, 0, i, j], |x, _| Ok(x.clone()))?;
    Ok(out)
}

/// The two cross-ratio products for four complete flags in `C^4`:
/// `t0 = chi_0110 chi_0101 chi_1010 chi_1001` and
/// `t1 = (1 - 1/chi_0011)(1 - 1/chi_1100)(1 - 1/chi_0101)(1 - 1/chi_1010)`.
pub fn planes_chart_values(v: &CrossRatios) -> Result<(GaussianRational, GaussianRational), InvariantError> {
    let c = |k: [usize; 4]| chi(v, k);
    let t0 = &(&(c([0, 1, 1, 0])? * c([0, 1, 0, 1])?) * c([1, 0, 1, 0])?) * c([1, 0, 0, 1])?;
    let t1 = [[0, 0, 1, 1], [1, 1, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0]]
        .into_iter()
        .map(|k| one_minus_inv(c(k)?, "t1"))
        .product::<Result<GaussianRational, _>>()?;
    Ok((t0, t1))
}

/// The planes point `[s_1234 : s_1324 : s_1423]` of the projected quadruple.
///
/// `t0 = s_1324 / s_1423` and `t1 = s_1234 / s_1324`, so the point is `[t0 t1 : t0 : 1]`.
pub fn convert_chi_to_planes(v: &CrossRatios) -> Result<QuotientPoint, InvariantError> {
    let (t0, t1) = planes_chart_values(v)?;
    QuotientPoint::new(SpaceTag::Planes, vec![&t0 * &t1, t0, GaussianRational::one()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::{Flag, LineHyperplaneFlag};
    use crate::numeric::Vector;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| GaussianRational::int(x)).collect()
    }

    fn lh(v: &[i64], phi: &[i64]) -> LineHyperplaneFlag {
        LineHyperplaneFlag::new(ints(v), ints(phi)).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_int_rows(rows)
    }

    fn point(coords: &[i64]) -> Vec<GaussianRational> {
        ints(coords)
    }

    fn plane_point(coords: &[i64]) -> QuotientPoint {
        QuotientPoint::new(SpaceTag::Planes, ints(coords)).unwrap()
    }

    fn d(s: &str) -> Derangement {
        Derangement::from_one_line(s).unwrap()
    }

    fn cyclic() -> LineHyperplaneConfig {
        LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 1, 0]), lh(&[0, 1, 0], &[0, 0, 1]), lh(&[0, 0, 1], &[1, 0, 0])]).unwrap()
    }

    #[test]
    fn s_sigma_by_hand() {
        let c = cyclic();
        assert_eq!(s_sigma(&c, &d("231")).unwrap(), GaussianRational::int(1));
        assert_eq!(s_sigma(&c, &d("312")).unwrap(), GaussianRational::int(0));
        assert!(s_sigma(&c, &d("2143")).is_err());
    }

    #[test]
    fn triple_quotient_points() {
        assert_eq!(quotient_point_line_hyperplane(&cyclic()).unwrap().coords(), &point(&[1, 0])[..]);
        let planar = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 1, 0]), lh(&[0, 1, 0], &[1, 0, 0]), lh(&[1, 1, 0], &[-1, 1, 0])]).unwrap();
        let q = quotient_point_line_hyperplane(&planar).unwrap();
        assert_eq!(q.coords(), &point(&[1, -1])[..]);
        assert_eq!(q.space().to_string(), "P1-triple");
        let same = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 1, 0]); 3]).unwrap();
        assert_eq!(quotient_point_line_hyperplane(&same), Err(InvariantError::NotSemistable));
    }

    #[test]
    fn w_ratio_table() {
        let q = QuotientPoint::new(SpaceTag::LineHyperplane { r: 4 }, point(&[1, 1, 1, 1, 2, 1, 1, 1, 1])).unwrap();
        assert_eq!(w_ratios(&q).unwrap()["w12"], GaussianRational::int(2));
        let q = QuotientPoint::new(SpaceTag::LineHyperplane { r: 4 }, point(&[1, 1, 1, 1, 2, 1, 1, 0, 1])).unwrap();
        assert_eq!(w_ratios(&q), Err(InvariantError::UndefinedRatio { name: "w12" }));
        let p = QuotientPoint::new(SpaceTag::Planes, point(&[1, 1, 1])).unwrap();
        assert!(matches!(w_ratios(&p), Err(InvariantError::WrongSpace { .. })));
    }

    #[test]
    fn planes_examples() {
        let id = Matrix::identity(2);
        let a2 = mat(&[&[2, 0], &[0, 3]]);
        let chart = planes_invariants(&affine_chart_planes(&id, &a2).unwrap()).unwrap();
        assert_eq!(chart, plane_point(&[2, 6, 1]));
        assert_eq!(planes_affine_chart(&id, &a2).unwrap(), chart);

        let zero = Matrix::zeros(2, 2);
        assert_eq!(planes_affine_chart(&zero, &zero).unwrap(), plane_point(&[1, 0, 1]));
        let nil = mat(&[&[0, 1], &[0, 0]]);
        assert_eq!(planes_affine_chart(&nil, &id).unwrap(), plane_point(&[1, 0, 1]));

        let w1 = mat(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]);
        let w2 = mat(&[&[0, 0], &[0, 0], &[1, 0], &[0, 1]]);
        let w3 = mat(&[&[1, 0], &[0, 1], &[1, 0], &[0, 1]]);
        let w4 = mat(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]);
        let opposite = planes_invariants(&PlanesConfig::new(vec![w1.clone(), w2.clone(), w3, w4]).unwrap()).unwrap();
        assert!(opposite.coords().iter().all(|x| !x.is_zero()));
        let repeated = planes_invariants(&PlanesConfig::new(vec![w1.clone(), w2.clone(), w1, w2]).unwrap()).unwrap();
        assert_eq!(repeated, plane_point(&[1, 0, 1]));
    }

    fn from_line_hyperplane(f: &LineHyperplaneFlag) -> Flag {
        let line = Matrix::from_columns(3, &[f.v().clone()]).unwrap();
        Flag::from_chain(3, &[line, f.hyperplane_basis()]).unwrap()
    }

    #[test]
    fn planar_triple_has_ratio_minus_one() {
        let lhs = [lh(&[1, 0, 0], &[0, 1, 1]), lh(&[0, 1, 0], &[1, 0, 1]), lh(&[1, 1, 0], &[1, -1, 0])];
        let c = CompleteConfig::new(lhs.iter().map(from_line_hyperplane).collect()).unwrap();
        let t = triple_ratios(&c).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[&[1, 1, 1]], GaussianRational::int(-1));
        assert_eq!(triple_ratio_product_check(&c).unwrap(), GaussianRational::int(-1));
    }

    #[test]
    fn triple_ratios_are_invariant_and_basis_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 3..=5 {
            for _ in 0..5 {
                let c = sample::generic_complete_config(&mut rng, n, 3, 3);
                let t = triple_ratios(&c).unwrap();
                assert_eq!(t.len(), (n - 1) * (n - 2) / 2);
                let g = sample::special_linear(&mut rng, n, 2 * n);
                assert_eq!(triple_ratios(&c.transform(&g).unwrap()).unwrap(), t);
                // upper-triangular change of adapted basis
                let u = Matrix::from_fn(n, n, |r, k| match r.cmp(&k) {
                    std::cmp::Ordering::Less => GaussianRational::from_ints((r + k) as i64, 1),
                    std::cmp::Ordering::Equal => GaussianRational::int(r as i64 + 2),
                    std::cmp::Ordering::Greater => GaussianRational::int(0),
                });
                let rebased = CompleteConfig::new(c.flags().iter().map(|f| Flag::complete(f.basis() * &u).unwrap()).collect()).unwrap();
                assert_eq!(triple_ratios(&rebased).unwrap(), t);
                let swapped = CompleteConfig::new(vec![c.flags()[1].clone(), c.flags()[0].clone(), c.flags()[2].clone()]).unwrap();
                let ts = triple_ratios(&swapped).unwrap();
                for (a, v) in &t {
                    assert_eq!(&ts[&[a[1], a[0], a[2]]], &v.inv().unwrap());
                }
                triple_ratio_product_check(&c).unwrap();
            }
        }
    }

    #[test]
    fn cross_ratios_feed_both_conversions() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 3..=5 {
            let c = sample::generic_complete_config(&mut rng, n, 4, 3);
            let chi = cross_ratios(&c).unwrap();
            let g = sample::special_linear(&mut rng, n, 2 * n);
            assert_eq!(cross_ratios(&c.transform(&g).unwrap()).unwrap(), chi);
            let direct = w_ratios(&quotient_point_line_hyperplane(&c.to_line_hyperplane().unwrap()).unwrap()).unwrap();
            assert_eq!(convert_chi_to_w(&chi, n).unwrap(), direct);
            if n == 4 {
                let planes = planes_invariants(&c.to_planes().unwrap()).unwrap();
                assert_eq!(convert_chi_to_planes(&chi).unwrap(), planes);
            }
        }
    }

    #[test]
    fn constant_minus_one_chi() {
        for n in 3..=6 {
            let chi: CrossRatios = compositions(n - 2, 4)
                .into_iter()
                .map(|a| ([a[0], a[1], a[2], a[3]], GaussianRational::int(-1)))
                .collect();
            let w = convert_chi_to_w(&chi, n).unwrap();
            assert_eq!(w["w12"], GaussianRational::int(if n % 2 == 0 { -1 } else { 1 }));
        }
    }

    #[test]
    fn cross_ratio_ignores_quotient_basis() {
        let u = [ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1]), ints(&[1, 3])];
        let m = mat(&[&[2, 1], &[1, 1]]);
        let v: Vec<Vector> = u.iter().map(|x| m.mul_vec(x).unwrap()).collect();
        let a = cross_ratio([&u[0], &u[1], &u[2], &u[3]]).unwrap();
        assert_eq!(a, cross_ratio([&v[0], &v[1], &v[2], &v[3]]).unwrap());
        assert_eq!(a, GaussianRational::frac(1, 3));
    }
}
