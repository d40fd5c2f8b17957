//! Random exact samples: small Gaussian integers, group elements built from
//! elementary factors, and configurations of the various kinds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::flags::{is_generic, CompleteConfig, Flag, LineHyperplaneFlag};
use crate::numeric::{GaussianRational, Matrix, RationalQuaternion, Vector};

pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    let d = rng.gen_range(1..=3);
    BigRational::new(BigInt::from(rng.gen_range(-bound..=bound)), BigInt::from(d))
}

pub fn gaussian_int<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    GaussianRational::from_ints(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

pub fn nonzero_gaussian<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    loop {
        let z = gaussian_int(rng, bound);
        if !z.is_zero() {
            return z;
        }
    }
}

pub fn vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vector {
    (0..n).map(|_| gaussian_int(rng, bound)).collect()
}

pub fn nonzero_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vector {
    loop {
        let v = vector(rng, n, bound);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| gaussian_int(rng, bound))
}

fn elementary(n: usize, i: usize, j: usize, c: GaussianRational) -> Matrix {
    let mut e = Matrix::identity(n);
    e.set(i, j, c);
    e
}

/// Product of `steps` random transvections `I + c E_ij`: determinant one.
pub fn special_linear<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Matrix {
    (0..steps).fold(Matrix::identity(n), |acc, _| {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        &elementary(n, i, j, nonzero_gaussian(rng, 2)) * &acc
    })
}

/// As [`special_linear`], with rational entries only.
pub fn special_linear_real<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Matrix {
    (0..steps).fold(Matrix::identity(n), |acc, _| {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = loop {
            let c = rng.gen_range(-2i64..=2);
            if c != 0 {
                break c;
            }
        };
        &elementary(n, i, j, GaussianRational::int(c)) * &acc
    })
}

pub fn invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    loop {
        let m = matrix(rng, n, n, bound);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn complete_flag<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Flag {
    Flag::complete(invertible(rng, n, bound)).expect("invertible basis")
}

/// `r` complete flags in `C^n` passing [`is_generic`].
pub fn generic_complete_config<R: Rng>(rng: &mut R, n: usize, r: usize, bound: i64) -> CompleteConfig {
    loop {
        let c = CompleteConfig::new((0..r).map(|_| complete_flag(rng, n, bound)).collect()).expect("same dimension");
        if is_generic(&c).expect("within the exhaustive limit") {
            return c;
        }
    }
}

/// A random linear form vanishing on `v` (and on the extra vectors, when possible).
pub fn form_vanishing_on<R: Rng>(rng: &mut R, vectors: &[Vector], bound: i64) -> Option<Vector> {
    let n = vectors.first()?.len();
    let m = Matrix::from_columns(n, vectors).ok()?;
    let basis = m.left_kernel();
    if basis.is_empty() {
        return None;
    }
    loop {
        let coeffs: Vec<GaussianRational> = (0..basis.len()).map(|_| gaussian_int(rng, bound)).collect();
        let phi: Vector = (0..n).map(|k| basis.iter().zip(&coeffs).map(|(b, c)| &b[k] * c).sum()).collect();
        if phi.iter().any(|x| !x.is_zero()) {
            return Some(phi);
        }
    }
}

pub fn line_hyperplane_flag<R: Rng>(rng: &mut R, n: usize, bound: i64) -> LineHyperplaneFlag {
    let v = nonzero_vector(rng, n, bound);
    let phi = form_vanishing_on(rng, std::slice::from_ref(&v), bound).expect("n >= 2");
    LineHyperplaneFlag::new(v, phi).expect("phi vanishes on v")
}

pub fn quaternion<R: Rng>(rng: &mut R, bound: i64) -> RationalQuaternion {
    RationalQuaternion::new(rational(rng, bound), rational(rng, bound), rational(rng, bound), rational(rng, bound))
}

pub fn nonzero_quaternion<R: Rng>(rng: &mut R, bound: i64) -> RationalQuaternion {
    loop {
        let q = quaternion(rng, bound);
        if !q.is_zero() {
            return q;
        }
    }
}

/// A random vector with `h(v, v) = 0` for the standard form of signature `(n-1, 1)`.
pub fn isotropic_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vector {
    let mut v = vector(rng, n, bound);
    if rng.gen_ratio(1, 8) {
        let mut e = vec![GaussianRational::zero(); n];
        e[if rng.gen() { 0 } else { n - 1 }] = nonzero_gaussian(rng, bound);
        return e;
    }
    let last = nonzero_gaussian(rng, bound);
    v[n - 1] = last.clone();
    // h(v, v) = 2 Re(conj(v_0) v_{n-1}) + sum |middle|^2; solve with v_0 = t v_{n-1}.
    let middle: BigRational = v[1..n - 1].iter().map(GaussianRational::norm_sq).sum();
    let re_t = -middle / (BigRational::from_integer(2.into()) * last.norm_sq());
    let t = GaussianRational::new(re_t, rational(rng, bound));
    v[0] = &t * &last;
    v
}

/// A random isometry of the standard form of signature `(n-1, 1)`: a product of
/// Heisenberg translations, dilations and the swap of the two null axes.
pub fn unitary_isometry<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Matrix {
    let half = BigRational::new(1.into(), 2.into());
    (0..steps).fold(Matrix::identity(n), |acc, _| {
        let g = match rng.gen_range(0..3) {
            0 => {
                // x_{n-1} fixed, y += u x_{n-1}, x_0 -= <u, y> + (|u|^2/2 + i s) x_{n-1}
                let u: Vector = (1..n - 1).map(|_| gaussian_int(rng, 1)).collect();
                let s = rational(rng, 2);
                let unorm: BigRational = u.iter().map(GaussianRational::norm_sq).sum();
                let mut m = Matrix::identity(n);
                for (k, uk) in u.iter().enumerate() {
                    m.set(k + 1, n - 1, uk.clone());
                    m.set(0, k + 1, -uk.conj());
                }
                m.set(0, n - 1, -GaussianRational::new(&unorm * &half, s));
                m
            }
            1 => {
                let lambda = nonzero_gaussian(rng, 2);
                let mut m = Matrix::identity(n);
                m.set(0, 0, lambda.clone());
                m.set(n - 1, n - 1, lambda.conj().inv().expect("nonzero"));
                m
            }
            _ => Matrix::from_fn(n, n, |r, c| {
                let src = if c == 0 { n - 1 } else if c == n - 1 { 0 } else { c };
                GaussianRational::int((r == src) as i64)
            }),
        };
        &g * &acc
    })
}

/// Random element of `SL_2(H)` as a product of unipotent factors.
pub fn sl2h<R: Rng>(rng: &mut R, steps: usize) -> [[RationalQuaternion; 2]; 2] {
    let one = RationalQuaternion::from_ints(1, 0, 0, 0);
    let zero = RationalQuaternion::zero();
    let mut acc = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
    for _ in 0..steps {
        let q = quaternion(rng, 2);
        let f = if rng.gen() { [[one.clone(), q], [zero.clone(), one.clone()]] } else { [[one.clone(), zero.clone()], [q, one.clone()]] };
        acc = std::array::from_fn(|i| std::array::from_fn(|j| &(&f[i][0] * &acc[0][j]) + &(&f[i][1] * &acc[1][j])));
    }
    acc
}
