//! Randomized properties of the library, driven by proptest-chosen seeds.

use std::collections::BTreeSet;

use flagconf::derangements::{enumerate_derangements, inverse_pair_representatives, order_two_derangements, pick_half_set};
use flagconf::flags::{is_generic, maximal_degeneracy_class, Flag, IsotropicLinesConfig, LineHyperplaneConfig, LineHyperplaneFlag};
use flagconf::invariants::quotient_point_line_hyperplane;
use flagconf::numeric::{GaussianRational, Matrix, RationalQuaternion};
use flagconf::realforms::{epsilon, moment_ray, HermitianForm};
use flagconf::sample;
use flagconf::semistability::{isotropic_lines_semistable, line_hyperplane_semistable, semistable_isotropic_lines};
use flagconf::triangulation::is_projectively_unipotent;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_lh(rng: &mut ChaCha8Rng, n: usize, r: usize) -> LineHyperplaneConfig {
    LineHyperplaneConfig::new((0..r).map(|_| sample::line_hyperplane_flag(rng, n, 2)).collect()).unwrap()
}

fn quaternion_matrix_ops(q: &RationalQuaternion, p: &RationalQuaternion) -> bool {
    let (mq, mp) = (q.to_complex_2x2(), p.to_complex_2x2());
    (&(q * p)).to_complex_2x2() == &mq * &mp
        && (&(q + p)).to_complex_2x2() == mq.checked_add(&mp).unwrap()
        && mq.det().unwrap() == GaussianRational::from(q.norm_sq())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn det_is_multiplicative(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (a, b) = (sample::matrix(&mut rng, 4, 4, 3), sample::matrix(&mut rng, 4, 4, 3));
        prop_assert_eq!((&a * &b).det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn quaternion_embedding_is_a_ring_homomorphism(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (q, p) = (sample::quaternion(&mut rng, 4), sample::quaternion(&mut rng, 4));
        prop_assert!(quaternion_matrix_ops(&q, &p));
        prop_assert_eq!(RationalQuaternion::from_ints(1, 0, 0, 0).to_complex_2x2(), Matrix::identity(2));
    }

    #[test]
    fn rank_nullity(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..6) {
        let mut rng = rng(seed);
        let m = sample::matrix(&mut rng, rows, cols, 1);
        prop_assert_eq!(m.rank() + m.kernel().len(), cols);
    }

    #[test]
    fn genericity_and_degeneracy_are_basis_free(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(2..=4);
        let g = sample::invertible(&mut rng, n, 2);
        let c = flagconf::flags::CompleteConfig::new((0..3).map(|_| sample::complete_flag(&mut rng, n, 1)).collect()).unwrap();
        prop_assert_eq!(is_generic(&c).unwrap(), is_generic(&c.transform(&g).unwrap()).unwrap());
        let lh = random_lh(&mut rng, 3, 3);
        let moved = lh.transform(&g_for(&mut rng, 3)).unwrap();
        prop_assert_eq!(maximal_degeneracy_class(&lh).unwrap(), maximal_degeneracy_class(&moved).unwrap());
    }

    #[test]
    fn quotient_points_ignore_representatives(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(3..=5);
        let c = random_lh(&mut rng, n, 4);
        prop_assume!(line_hyperplane_semistable(&c));
        let rescaled = LineHyperplaneConfig::new(
            c.flags()
                .iter()
                .map(|f| {
                    let (a, b) = (sample::nonzero_gaussian(&mut rng, 3), sample::nonzero_gaussian(&mut rng, 3));
                    LineHyperplaneFlag::new(f.v().iter().map(|x| x * &a).collect(), f.phi().iter().map(|x| x * &b).collect()).unwrap()
                })
                .collect(),
        )
        .unwrap();
        prop_assert_eq!(quotient_point_line_hyperplane(&c).unwrap(), quotient_point_line_hyperplane(&rescaled).unwrap());
        let g = g_for(&mut rng, n);
        prop_assert!(line_hyperplane_semistable(&c.transform(&g).unwrap()));
    }

    #[test]
    fn semistability_verdicts_are_basis_free(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(2..=4);
        let r = rng.gen_range(3..=5);
        // draw lines from a small pool so that unstable configurations occur
        let pool: Vec<_> = (0..2).map(|_| sample::line_hyperplane_flag(&mut rng, n, 1)).collect();
        let c = LineHyperplaneConfig::new((0..r).map(|_| if rng.gen() { pool[rng.gen_range(0..2)].clone() } else { sample::line_hyperplane_flag(&mut rng, n, 1) }).collect()).unwrap();
        let g = g_for(&mut rng, n);
        prop_assert_eq!(line_hyperplane_semistable(&c), line_hyperplane_semistable(&c.transform(&g).unwrap()));
    }

    #[test]
    fn isotropic_semistability_matches_multiplicity(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(2..=4);
        let r = 2 * rng.gen_range(1..=3);
        let h = HermitianForm::standard_unitary(n);
        let pool: Vec<_> = (0..2).map(|_| sample::isotropic_vector(&mut rng, n, 2)).collect();
        let lines = (0..r).map(|_| if rng.gen_ratio(2, 3) { pool[rng.gen_range(0..2)].clone() } else { sample::isotropic_vector(&mut rng, n, 2) });
        let c = IsotropicLinesConfig::new(lines.filter(|v| v.iter().any(|x| !num_traits::Zero::is_zero(x))).collect()).unwrap();
        prop_assume!(c.r() % 2 == 0 && c.r() >= 2);
        prop_assert_eq!(semistable_isotropic_lines(&c, &h).unwrap().semistable, isotropic_lines_semistable(&c));
    }

    #[test]
    fn epsilon_of_the_inverse_is_conjugate(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(2..=4);
        let r = rng.gen_range(3..=5);
        let h = HermitianForm::standard_unitary(n);
        let c = IsotropicLinesConfig::new((0..r).map(|_| sample::isotropic_vector(&mut rng, n, 2)).collect()).unwrap();
        for s in enumerate_derangements(r).unwrap() {
            prop_assert_eq!(epsilon(&c, &h, &s.inverse()), epsilon(&c, &h, &s).conj());
        }
        if let Ok(ray) = moment_ray(&c, &h) {
            let k = BigRational::new(rng.gen_range(1i64..5).into(), rng.gen_range(1i64..5).into());
            let phase = sample::nonzero_gaussian(&mut rng, 2);
            let scaled = IsotropicLinesConfig::new(c.lines().iter().enumerate().map(|(i, v)| {
                let f = if i == 0 { phase.clone() } else { GaussianRational::from(k.clone()) };
                v.iter().map(|x| x * &f).collect()
            }).collect()).unwrap();
            prop_assert!(moment_ray(&scaled, &h).unwrap().same_ray(&ray));
        }
    }

    #[test]
    fn unipotent_test_matches_characteristic_polynomial(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(2..=4);
        let p = sample::invertible(&mut rng, n, 2);
        let unit_upper = Matrix::from_fn(n, n, |r, c| if r < c { sample::gaussian_int(&mut rng, 2) } else { GaussianRational::int((r == c) as i64) });
        let scale = sample::nonzero_gaussian(&mut rng, 3);
        let candidates = [
            (&(&p * &unit_upper) * &p.inverse().unwrap()).scale(&scale),
            sample::matrix(&mut rng, n, n, 2),
        ];
        for g in candidates {
            let tr = g.trace();
            prop_assume!(!num_traits::Zero::is_zero(&tr));
            let c = tr.scale(&BigRational::new(1.into(), (n as i64).into()));
            let pure = g.char_poly().unwrap() == Matrix::scalar(n, &c).char_poly().unwrap();
            prop_assert_eq!(is_projectively_unipotent(&g).unwrap(), pure);
        }
    }
}

fn g_for(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    sample::special_linear(rng, n, 2 * n)
}

#[test]
fn derangement_tables() {
    for r in 2..=8 {
        let all: BTreeSet<Vec<usize>> = enumerate_derangements(r).unwrap().iter().map(|d| d.images().to_vec()).collect();
        for s in order_two_derangements(r).unwrap() {
            assert!((0..r).all(|i| s.image(s.image(i)) == i));
        }
        let mut covered: BTreeSet<Vec<usize>> = order_two_derangements(r).unwrap().iter().map(|d| d.images().to_vec()).collect();
        for s in inverse_pair_representatives(r).unwrap() {
            assert!(!s.is_involution());
            assert!(covered.insert(s.images().to_vec()));
            assert!(covered.insert(s.inverse().images().to_vec()));
        }
        assert_eq!(covered, all, "r = {r}");
        if r % 2 == 1 {
            let mut halves = BTreeSet::new();
            for s in pick_half_set(r).unwrap() {
                assert!(halves.insert(s.images().to_vec()));
                assert!(halves.insert(s.inverse().images().to_vec()));
            }
            assert_eq!(halves, all, "r = {r}");
        }
    }
}

#[test]
fn flag_chains_must_be_nested() {
    let col = |xs: &[i64]| Matrix::from_int_rows(&xs.iter().map(std::slice::from_ref).collect::<Vec<_>>());
    let line = col(&[1, 0, 0]);
    let plane = Matrix::from_int_rows(&[&[0, 0], &[1, 0], &[0, 1]]);
    assert!(Flag::from_chain(3, &[line.clone(), plane]).is_err());
    let good = Matrix::from_int_rows(&[&[1, 0], &[0, 1], &[0, 0]]);
    assert!(Flag::from_chain(3, &[line, good]).is_ok());
}
