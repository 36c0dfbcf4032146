use lsi_forge::cascade::{h_z4, h_z6, pair_functions};
use lsi_forge::dft::{
    cooley_tukey_split, dft_forward, dft_real, interleave, FourierMatrix, TwiddleDiagonal,
};
use lsi_forge::hyper::{
    apply_semigroup, estimate_optimal_time_with, MaxRatioOptions, SemigroupOperator,
};
use lsi_forge::induction::{fourier_side_dirichlet_2n, scan_quadratic};
use lsi_forge::spectral::{dirichlet, lsi_objective, numerical_spectrum};
use lsi_forge::weights::{
    check_pair_condition, gamma_even_tower, gamma_odd_base, phi4, phi6, word_length, Weight,
};
use lsi_forge::{build_form, PointVector, Tolerances};
use num_complex::Complex64;
use proptest::prelude::*;

fn positive_vec(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, 2..=max_len)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x > 1e-3))
}

fn builtin(n: usize) -> Vec<Weight> {
    let mut out = vec![word_length(n).unwrap()];
    if n >= 4 && n % 2 == 0 {
        out.push(gamma_odd_base(n).unwrap());
    }
    if n >= 6 && n % 2 == 0 {
        out.push(gamma_even_tower(n).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fourier_matrix_is_unitary_up_to_scale(n in 1usize..=128) {
        prop_assert!(FourierMatrix::new(n).unwrap().unitarity_defect() < 1e-12);
    }

    #[test]
    fn squared_transform_reverses_indices(v in prop::collection::vec(-1.0f64..1.0, 1..40)) {
        let n = v.len();
        let z: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let twice = dft_forward(&dft_forward(&z).unwrap()).unwrap();
        for k in 0..n {
            prop_assert!((twice[k] / n as f64 - z[(n - k) % n]).norm() < 1e-12);
        }
    }

    #[test]
    fn split_matches_direct(ab in (1usize..=32).prop_flat_map(|n| (
        prop::collection::vec(-1.0f64..1.0, n),
        prop::collection::vec(-1.0f64..1.0, n),
    ))) {
        let (a, b) = ab;
        let split = cooley_tukey_split(&a, &b).unwrap();
        let direct = dft_real(&interleave(&a, &b).unwrap()).unwrap();
        for (x, y) in split.iter().zip(&direct) {
            prop_assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn twiddles_have_unit_modulus(n in 1usize..200) {
        for d in TwiddleDiagonal::new(n).unwrap().entries() {
            prop_assert!((d.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn builders_vanish_at_zero_and_are_symmetric(n in 2usize..=64) {
        for w in builtin(n) {
            prop_assert_eq!(w.value_f64(0), 0.0);
            prop_assert!(w.is_symmetric());
        }
    }

    #[test]
    fn modified_weights_lie_below_word_length(half in 3usize..=64) {
        let n = 2 * half;
        let psi = word_length(n).unwrap();
        prop_assert!(gamma_odd_base(n).unwrap().dominated_by(&psi).unwrap());
        prop_assert!(gamma_even_tower(n).unwrap().dominated_by(&psi).unwrap());
    }

    #[test]
    fn spectrum_is_weight_over_n(n in 2usize..=24) {
        for w in builtin(n) {
            let form = build_form(&w).unwrap();
            let mut want: Vec<f64> = w.to_f64_vec().iter().map(|g| g / n as f64).collect();
            want.sort_by(f64::total_cmp);
            for (a, b) in numerical_spectrum(&form).iter().zip(&want) {
                prop_assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn form_is_symmetric_and_circulant(n in 2usize..=24) {
        let form = build_form(&word_length(n).unwrap()).unwrap();
        let m = form.matrix();
        for j in 0..n {
            for k in 0..n {
                prop_assert!((m[(j, k)] - m[(k, j)]).abs() < 1e-12);
                prop_assert!((m[(j, k)] - m[((j + 1) % n, (k + 1) % n)]).abs() < 1e-12);
            }
        }
        prop_assert!(form.max_imaginary() < 1e-12);
    }

    #[test]
    fn dirichlet_is_monotone_in_weight(v in prop::collection::vec(0.0f64..1.0, 6)) {
        let lambda = PointVector::new(v).unwrap();
        let lo = dirichlet(&build_form(&phi6()).unwrap(), &lambda).unwrap();
        let hi = dirichlet(&build_form(&word_length(6).unwrap()).unwrap(), &lambda).unwrap();
        prop_assert!(lo <= hi + 1e-14);
    }

    #[test]
    fn objective_is_two_homogeneous(v in positive_vec(12), alpha in 0.01f64..100.0) {
        let form = build_form(&word_length(v.len()).unwrap()).unwrap();
        let base = lsi_objective(&form, &PointVector::new(v.clone()).unwrap()).unwrap();
        let scaled = PointVector::new(v.iter().map(|x| alpha * x).collect()).unwrap();
        let got = lsi_objective(&form, &scaled).unwrap();
        prop_assert!((got - alpha * alpha * base).abs() <= 1e-10 * (alpha * alpha * base.abs()).max(1e-12));
    }

    #[test]
    fn parseval(v in prop::collection::vec(-1.0f64..1.0, 1..64)) {
        let n = v.len() as f64;
        let hat = dft_real(&v).unwrap();
        let lhs: f64 = v.iter().map(|x| x * x).sum();
        let rhs: f64 = hat.iter().map(|z| z.norm_sqr()).sum::<f64>() / n;
        prop_assert!((lhs - rhs).abs() < 1e-12 * lhs.max(1.0));
    }

    #[test]
    fn euler_identity(v in positive_vec(12)) {
        let form = build_form(&word_length(v.len()).unwrap()).unwrap();
        let f = form.objective(&v);
        let g = form.gradient(&v);
        let inner: f64 = g.iter().zip(&v).map(|(a, b)| a * b).sum();
        prop_assert!((inner - 2.0 * f).abs() <= 1e-8 * f.abs().max(1e-8));
    }

    #[test]
    fn gradient_matches_differences(v in prop::collection::vec(0.05f64..1.0, 6)) {
        let form = build_form(&phi6()).unwrap();
        let g = form.gradient(&v);
        for j in 0..6 {
            let h = 1e-6;
            let mut up = v.clone();
            let mut dn = v.clone();
            up[j] += h;
            dn[j] -= h;
            let fd = (form.objective(&up) - form.objective(&dn)) / (2.0 * h);
            prop_assert!((fd - g[j]).abs() <= 1e-5 * g[j].abs().max(1e-3));
        }
    }

    #[test]
    fn h_is_positive(e in -13.8f64..3.89) {
        let x = 1.0 + e.exp();
        prop_assert!(h_z6(x).unwrap() > 0.0);
        if x < 35.8 {
            prop_assert!(h_z4(x).unwrap() > 0.0);
        }
    }

    #[test]
    fn f_peaks_at_one(x in 0.01f64..1.99) {
        let f = |t: f64| pair_functions(t).unwrap().0;
        let step = 1e-4;
        if x + step < 1.0 {
            prop_assert!(f(x + step) > f(x));
        } else if x > 1.0 {
            prop_assert!(f(x + step.min(1.99 - x)) < f(x) || x + step > 1.99);
        }
    }

    #[test]
    fn block_formula_matches_quadratic(half in prop::sample::select(vec![2usize, 4, 6, 8, 12, 16]), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = word_length(2 * half).unwrap();
        let lambda: Vec<f64> = (0..2 * half).map(|_| rng.random::<f64>()).collect();
        let direct = 2.0 * build_form(&g).unwrap().quadratic(&lambda);
        let block = fourier_side_dirichlet_2n(&g, &lambda).unwrap();
        prop_assert!((direct - block).abs() < 1e-10);
    }

    #[test]
    fn middle_frequency_is_dominated(a in prop::sample::select(vec![2usize, 4, 6, 8, 10, 16])
        .prop_flat_map(|n| prop::collection::vec(0.0f64..1.0, n))) {
        let hat = dft_real(&a).unwrap();
        prop_assert!(hat[a.len() / 2].norm() <= hat[0].re + 1e-12);
    }

    #[test]
    fn semigroup_law(n in 2usize..=16, t in 0.0f64..2.0, s in 0.0f64..2.0, f in prop::collection::vec(-1.0f64..1.0, 16)) {
        let w = word_length(n).unwrap();
        let f = &f[..n];
        let pt = SemigroupOperator::new(&w, t).unwrap();
        let ps = SemigroupOperator::new(&w, s).unwrap();
        let pts = SemigroupOperator::new(&w, t + s).unwrap();
        let two = apply_semigroup(&pt, &apply_semigroup(&ps, f).unwrap()).unwrap();
        let one = apply_semigroup(&pts, f).unwrap();
        for (a, b) in two.iter().zip(&one) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn time_estimate_respects_lower_bound(n in 2usize..=6, p in 1.5f64..3.0, extra in 0.5f64..3.0) {
        let q = p + extra;
        let opts = MaxRatioOptions { starts: 24, ..MaxRatioOptions::default() };
        let e = estimate_optimal_time_with(&word_length(n).unwrap(), p, q, &opts, &Tolerances::default()).unwrap();
        prop_assert!(e.t_star >= e.lower_bound - 1e-3, "{} < {}", e.t_star, e.lower_bound);
    }
}

#[test]
fn phi6_is_the_odd_base_weight() {
    assert_eq!(phi6().values(), gamma_odd_base(6).unwrap().values());
    assert!(phi4().is_symmetric());
}

#[test]
fn tower_pairs_close_under_doubling() {
    for base in [6usize, 8] {
        let mut n = base;
        while n <= 128 {
            let (a, b) = (
                gamma_even_tower(n).unwrap(),
                gamma_even_tower(2 * n).unwrap(),
            );
            assert!(check_pair_condition(&a, &b).unwrap().holds, "n = {n}");
            assert!(scan_quadratic((&a, &b), 101).unwrap().verdict, "n = {n}");
            n *= 2;
        }
    }
}
