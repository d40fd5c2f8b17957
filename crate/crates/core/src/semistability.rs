//! Semi-stability of configurations and the associated witnesses.

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::derangements::{find_witness_matching, order_two_derangements, Derangement, DerangementError};
use crate::flags::{same_span, FlagError, IsotropicLinesConfig, LineHyperplaneConfig, LineHyperplaneFlag, PlanesConfig};
use crate::numeric::{is_semisimple_2x2, Matrix, NumericError};
use crate::realforms::{epsilon, HermitianForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemistabilityError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Derangement(#[from] DerangementError),
    #[error("line {0} is not isotropic")]
    NotIsotropic(usize),
    #[error("expected {expected}, got {found}")]
    Shape { expected: String, found: String },
    #[error("need n >= 3 and r >= 3, got n = {n}, r = {r}")]
    TooSmall { n: usize, r: usize },
    #[error("multiplicity bound and involution search disagree")]
    Inconsistent,
}

/// A pairing `{i, j} | {k, l}` of four planes, stored 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pairing(pub [[usize; 2]; 2]);

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "{}{}|{}{}", a + 1, b + 1, c + 1, d + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Derangement(Derangement),
    Pairing(Pairing),
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Derangement(d) => d.serialize(serializer),
            Self::Pairing(p) => serializer.collect_str(p),
        }
    }
}

/// Outcome of a semi-stability test. A witness is present iff semi-stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub semistable: bool,
    pub witness: Option<Witness>,
    pub reason: String,
}

impl Verdict {
    fn stable(witness: Witness, reason: impl Into<String>) -> Self {
        Self { semistable: true, witness: Some(witness), reason: reason.into() }
    }

    fn unstable(reason: impl Into<String>) -> Self {
        Self { semistable: false, witness: None, reason: reason.into() }
    }
}

/// `adj[i][j]` records that `L_i` is not contained in `H_j` (`i != j`).
pub fn adjacency(c: &LineHyperplaneConfig) -> Vec<Vec<bool>> {
    (0..c.r()).map(|i| (0..c.r()).map(|j| i != j && !c.pairing(j, i).is_zero()).collect()).collect()
}

/// Semi-stable iff some derangement `sigma` has `L_i` outside `H_sigma(i)` for every `i`.
/// The witness is that `sigma`; then `s_{sigma^-1} != 0`.
pub fn semistable_line_hyperplane(c: &LineHyperplaneConfig) -> Result<Verdict, SemistabilityError> {
    Ok(match find_witness_matching(&adjacency(c))? {
        Some(sigma) => Verdict::stable(Witness::Derangement(sigma), "every line avoids the hyperplane it is matched to"),
        None => Verdict::unstable("no derangement matches each line to a hyperplane avoiding it"),
    })
}

pub fn line_hyperplane_semistable(c: &LineHyperplaneConfig) -> bool {
    find_witness_matching(&adjacency(c)).map_or(false, |w| w.is_some())
}

const PAIRINGS: [Pairing; 3] = [Pairing([[0, 1], [2, 3]]), Pairing([[0, 2], [1, 3]]), Pairing([[0, 3], [1, 2]])];

/// Four planes of `C^4` are semi-stable iff they split into two opposite pairs.
pub fn semistable_planes(c: &PlanesConfig) -> Result<Verdict, SemistabilityError> {
    if c.r() != 4 {
        return Err(SemistabilityError::Shape { expected: "4 planes".into(), found: c.r().to_string() });
    }
    let w = c.planes();
    for p in PAIRINGS {
        let opposite = |[a, b]: [usize; 2]| w[a].hcat(&w[b]).map(|m| m.rank() == 4);
        if opposite(p.0[0])? && opposite(p.0[1])? {
            return Ok(Verdict::stable(Witness::Pairing(p), "both pairs are opposite"));
        }
    }
    Ok(Verdict::unstable("no pairing into two opposite pairs"))
}

/// Largest number of lines that coincide.
pub fn max_multiplicity(c: &IsotropicLinesConfig) -> usize {
    let cols: Vec<Matrix> = c.lines().iter().map(|v| Matrix::from_columns(v.len(), &[v.clone()]).expect("vector")).collect();
    cols.iter().map(|a| cols.iter().filter(|b| same_span(a, b)).count()).max().unwrap_or(0)
}

/// No line is repeated more than `r / 2` times.
pub fn isotropic_lines_semistable(c: &IsotropicLinesConfig) -> bool {
    2 * max_multiplicity(c) <= c.r()
}

/// The line-hyperplane configuration `(L_i, L_i^perp)`.
pub fn induced_line_hyperplane(c: &IsotropicLinesConfig, h: &HermitianForm) -> Result<LineHyperplaneConfig, SemistabilityError> {
    let flags = c
        .lines()
        .iter()
        .enumerate()
        .map(|(i, v)| LineHyperplaneFlag::new(v.clone(), h.dual(v)).map_err(|_| SemistabilityError::NotIsotropic(i)))
        .collect::<Result<_, _>>()?;
    Ok(LineHyperplaneConfig::new(flags)?)
}

/// Multiplicity criterion. For even `r` the witness is a fixed-point-free
/// involution with `epsilon_sigma != 0`, found independently and required
/// to agree; for odd `r` it is a matching of the induced configuration.
pub fn semistable_isotropic_lines(c: &IsotropicLinesConfig, h: &HermitianForm) -> Result<Verdict, SemistabilityError> {
    if h.n() != c.n() {
        return Err(SemistabilityError::Shape { expected: format!("form of size {}", c.n()), found: h.n().to_string() });
    }
    if let Some(i) = c.lines().iter().position(|v| !h.eval(v, v).is_zero()) {
        return Err(SemistabilityError::NotIsotropic(i));
    }
    let bound = isotropic_lines_semistable(c);
    let witness = if c.r() % 2 == 0 {
        order_two_derangements(c.r())?.into_iter().find(|s| !epsilon(c, h, s).is_zero())
    } else {
        find_witness_matching(&adjacency(&induced_line_hyperplane(c, h)?))?
    };
    match (bound, witness) {
        (true, Some(w)) => Ok(Verdict::stable(Witness::Derangement(w), "no line occurs more than r/2 times")),
        (false, None) => Ok(Verdict::unstable(format!("a line occurs {} times among {}", max_multiplicity(c), c.r()))),
        _ => Err(SemistabilityError::Inconsistent),
    }
}

/// Closedness of the orbit of `(W1, W2, exp(A2) W1, exp(A1) W2)`: the two blocks
/// have equal rank, `A1 A2` is semisimple, and neither `A1 A2` nor `A2 A1`
/// vanishes unless both blocks do.
pub fn closed_orbit_planes(a1: &Matrix, a2: &Matrix) -> Result<bool, SemistabilityError> {
    for a in [a1, a2] {
        if (a.rows(), a.cols()) != (2, 2) {
            return Err(SemistabilityError::Shape { expected: "2x2".into(), found: format!("{}x{}", a.rows(), a.cols()) });
        }
    }
    let rank = a1.rank();
    if rank != a2.rank() {
        return Ok(false);
    }
    if rank == 0 {
        return Ok(true);
    }
    let p = a1.checked_mul(a2)?;
    if p.is_zero() || a2.checked_mul(a1)?.is_zero() {
        return Ok(false);
    }
    Ok(is_semisimple_2x2(&p)?)
}

/// `(stabilizer dimension, quotient dimension)` at a configuration of `r`
/// line-hyperplane flags in general position in `C^n`.
pub fn stabilizer_dimension_general_position(n: usize, r: usize) -> Result<(usize, i64), SemistabilityError> {
    if n < 3 || r < 3 {
        return Err(SemistabilityError::TooSmall { n, r });
    }
    let d = n as i64 - r as i64;
    let stab = d.max(0).pow(2) as usize;
    let r = r as i64;
    Ok((stab, r * r - 3 * r + 1 - d.min(0).pow(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derangements::enumerate_derangements;
    use crate::invariants::s_sigma;
    use crate::numeric::{GaussianRational, Vector};
    use crate::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| GaussianRational::int(x)).collect()
    }

    fn lh(v: &[i64], phi: &[i64]) -> LineHyperplaneFlag {
        LineHyperplaneFlag::new(ints(v), ints(phi)).unwrap()
    }

    fn witness(v: &Verdict) -> String {
        match &v.witness {
            Some(Witness::Derangement(d)) => d.to_string(),
            Some(Witness::Pairing(p)) => p.to_string(),
            None => "-".into(),
        }
    }

    #[test]
    fn line_hyperplane_examples() {
        let same = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 1, 0]); 4]).unwrap();
        let v = semistable_line_hyperplane(&same).unwrap();
        assert!(!v.semistable && v.witness.is_none());

        let opposite = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 1, 1]), lh(&[0, 1, 0], &[1, 0, 1]), lh(&[0, 0, 1], &[1, 1, 0])]).unwrap();
        let v = semistable_line_hyperplane(&opposite).unwrap();
        assert!(v.semistable);
        assert_eq!(witness(&v), "(231)");

        let mirrored = LineHyperplaneConfig::new(vec![lh(&[1, 0, 0], &[0, 0, 1]), lh(&[0, 1, 0], &[1, 0, 0]), lh(&[0, 0, 1], &[0, 1, 0])]).unwrap();
        assert!(semistable_line_hyperplane(&mirrored).unwrap().semistable);
    }

    #[test]
    fn matching_agrees_with_exhaustive_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..120 {
            let r = rng.gen_range(3..=5);
            let n = rng.gen_range(2..=4);
            let pool: Vec<LineHyperplaneFlag> = (0..2).map(|_| sample::line_hyperplane_flag(&mut rng, n, 1)).collect();
            let flags = (0..r)
                .map(|_| if rng.gen_ratio(1, 3) { pool[rng.gen_range(0..2)].clone() } else { sample::line_hyperplane_flag(&mut rng, n, 1) })
                .collect();
            let c = LineHyperplaneConfig::new(flags).unwrap();
            let v = semistable_line_hyperplane(&c).unwrap();
            let scan = enumerate_derangements(r).unwrap().iter().any(|s| !s_sigma(&c, s).unwrap().is_zero());
            assert_eq!(v.semistable, scan);
            if let Some(Witness::Derangement(w)) = &v.witness {
                assert!(!s_sigma(&c, &w.inverse()).unwrap().is_zero());
            }
        }
    }

    fn plane(cols: &[&[i64]]) -> Matrix {
        Matrix::from_columns(4, &cols.iter().map(|c| ints(c)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn planes_examples() {
        let w = plane(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let w2 = plane(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let v = semistable_planes(&PlanesConfig::new(vec![w.clone(), w.clone(), w2.clone(), w2.clone()]).unwrap()).unwrap();
        assert_eq!(witness(&v), "13|24");
        let v = semistable_planes(&PlanesConfig::new(vec![w.clone(), w.clone(), w.clone(), w2.clone()]).unwrap()).unwrap();
        assert!(!v.semistable);
        let w3 = plane(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let w4 = plane(&[&[1, 0, -1, 0], &[0, 1, 0, -1]]);
        let v = semistable_planes(&PlanesConfig::new(vec![w, w2, w3, w4]).unwrap()).unwrap();
        assert_eq!(witness(&v), "12|34");
    }

    #[test]
    fn isotropic_lines_examples() {
        let h = HermitianForm::standard_unitary(3);
        let l = ints(&[1, 0, 0]);
        let m = ints(&[0, 0, 1]);
        let k = ints(&[-1, 1, 1]);
        let k = vec![GaussianRational::frac(-1, 2), k[1].clone(), k[2].clone()];
        assert!(h.eval(&k, &k).is_zero());
        let three = IsotropicLinesConfig::new(vec![l.clone(), m.clone(), k]).unwrap();
        assert!(semistable_isotropic_lines(&three, &h).unwrap().semistable);
        let thrice = IsotropicLinesConfig::new(vec![l.clone(), l.clone(), l.clone(), m.clone()]).unwrap();
        assert!(!semistable_isotropic_lines(&thrice, &h).unwrap().semistable);
        let pairs = IsotropicLinesConfig::new(vec![l.clone(), l.clone(), m.clone(), m.clone()]).unwrap();
        let v = semistable_isotropic_lines(&pairs, &h).unwrap();
        assert_eq!(witness(&v), "(3412)");
        let bad = IsotropicLinesConfig::new(vec![l, ints(&[0, 1, 0]), m]).unwrap();
        assert_eq!(semistable_isotropic_lines(&bad, &h), Err(SemistabilityError::NotIsotropic(1)));
    }

    #[test]
    fn closed_orbits() {
        let m = |rows: &[&[i64]]| Matrix::from_int_rows(rows);
        let zero = Matrix::zeros(2, 2);
        let id = Matrix::identity(2);
        let nil = m(&[&[0, 1], &[0, 0]]);
        assert!(closed_orbit_planes(&zero, &zero).unwrap());
        assert!(!closed_orbit_planes(&nil, &id).unwrap());
        assert!(closed_orbit_planes(&id, &m(&[&[2, 0], &[0, 3]])).unwrap());
        assert!(!closed_orbit_planes(&m(&[&[1, 0], &[0, 0]]), &m(&[&[0, 0], &[0, 1]])).unwrap());
        assert!(closed_orbit_planes(&m(&[&[1, 0], &[0, 0]]), &m(&[&[1, 2], &[0, 0]])).unwrap());
        // unipotent A1 A2 = [[1,1],[0,1]] is not semisimple
        assert!(!closed_orbit_planes(&id, &m(&[&[1, 1], &[0, 1]])).unwrap());
    }

    #[test]
    fn dimensions() {
        assert_eq!(stabilizer_dimension_general_position(5, 3).unwrap(), (4, 1));
        assert_eq!(stabilizer_dimension_general_position(4, 4).unwrap().0, 0);
        assert_eq!(stabilizer_dimension_general_position(3, 4).unwrap().1, 4);
        assert!(stabilizer_dimension_general_position(2, 4).is_err());
    }
}
