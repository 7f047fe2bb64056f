use groupsamp::dual::{left_inverse_family, moore_penrose, verify_left_inverse};
use groupsamp::frame::diagnostics;
use groupsamp::group::{GroupSequence, GroupSpec, ProductSubgroup};
use groupsamp::model::TranslationModel;
use groupsamp::sampling::{DualChoice, SamplingProcedure};
use groupsamp::semidirect::{RotationGroup, SemidirectModel};
use groupsamp::system::{SequenceMatrix, TransferMatrix, VectorSequence};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn moduli() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=5, 1..=3)
}

fn sequence(g: &GroupSpec, rng: &mut ChaCha8Rng) -> GroupSequence {
    GroupSequence::from_fn(g.clone(), |_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn real_sequence(g: &GroupSpec, rng: &mut ChaCha8Rng) -> GroupSequence {
    GroupSequence::from_fn(g.clone(), |_| Complex64::new(rng.random_range(-1.0..1.0), 0.0))
}

fn vector(g: &GroupSpec, n: usize, rng: &mut ChaCha8Rng) -> VectorSequence {
    VectorSequence::new((0..n).map(|_| sequence(g, rng)).collect()).unwrap()
}

fn system(g: &GroupSpec, m: usize, n: usize, rng: &mut ChaCha8Rng) -> SequenceMatrix {
    SequenceMatrix::from_fn(g.clone(), m, n, |_, _| real_sequence(g, rng)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dft_round_trip_and_plancherel(m in moduli(), seed in any::<u64>()) {
        let g = GroupSpec::new(m).unwrap();
        let x = sequence(&g, &mut ChaCha8Rng::seed_from_u64(seed));
        let xh = x.dft();
        prop_assert!(xh.idft().max_abs_diff(&x).unwrap() < 1e-12);
        let lhs = x.norm_sqr();
        prop_assert!((lhs - xh.norm_sqr() / g.order() as f64).abs() <= 1e-10 * lhs.max(1e-300));
    }

    #[test]
    fn convolution_theorem(m in moduli(), seed in any::<u64>()) {
        let g = GroupSpec::new(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, x) = (sequence(&g, &mut rng), sequence(&g, &mut rng));
        let lhs = a.convolve(&x).unwrap().dft();
        let (ah, xh) = (a.dft(), x.dft());
        for i in 0..g.order() {
            prop_assert!((lhs.at(i) - ah.at(i) * xh.at(i)).norm() <= 1e-10 * (1.0 + (ah.at(i) * xh.at(i)).norm()));
        }
    }

    #[test]
    fn involution_is_an_exact_involution(m in moduli(), seed in any::<u64>()) {
        let g = GroupSpec::new(m).unwrap();
        let a = sequence(&g, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(a.involution().involution(), a);
    }

    #[test]
    fn cosets_partition_the_group(pairs in prop::collection::vec((1usize..=3, 1usize..=3), 1..=3)) {
        let parent: Vec<usize> = pairs.iter().map(|(s, q)| s * q).collect();
        let strides: Vec<usize> = pairs.iter().map(|(s, _)| *s).collect();
        let g = GroupSpec::new(parent).unwrap();
        let sub = ProductSubgroup::new(g.clone(), strides).unwrap();
        let reps = sub.coset_representatives();
        prop_assert_eq!(reps.len(), sub.index());
        let mut hits = vec![0usize; g.order()];
        for h in &reps {
            for r in 0..sub.abstract_group().order() {
                hits[g.add_indices(h.index(), sub.embed_index(r))] += 1;
            }
        }
        prop_assert!(hits.iter().all(|&c| c == 1));
    }

    #[test]
    fn adjoint_identity(m in moduli(), rows in 1usize..=3, cols in 1usize..=3, seed in any::<u64>()) {
        let g = GroupSpec::new(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = system(&g, rows, cols, &mut rng);
        let (x, y) = (vector(&g, cols, &mut rng), vector(&g, rows, &mut rng));
        let lhs = a.apply(&x).unwrap().inner(&y).unwrap();
        let rhs = x.inner(&a.adjoint().apply(&y).unwrap()).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn determinant_bounds(m in moduli(), n in 1usize..=3, extra in 0usize..=2, seed in any::<u64>()) {
        let g = GroupSpec::new(m).unwrap();
        let a = system(&g, n + extra, n, &mut ChaCha8Rng::seed_from_u64(seed));
        let d = diagnostics(&a, None);
        prop_assert!(d.determinant_bounds_hold());
        if n == 1 {
            prop_assert_eq!(d.alpha, d.delta);
        }
    }

    #[test]
    fn moore_penrose_has_least_norm(m in moduli(), seed in any::<u64>()) {
        let g = GroupSpec::new(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = system(&g, 3, 2, &mut rng);
        prop_assume!(diagnostics(&a, None).relative_delta() > 1e-6);
        let mp = moore_penrose(&a).unwrap();
        let c = system(&g, 2, 3, &mut rng).transfer();
        let other = left_inverse_family(&a, &c).unwrap();
        prop_assert!(verify_left_inverse(&a, other.coefficients()).unwrap() < 1e-9);
        for xi in 0..g.order() {
            prop_assert!(mp.transfer().at(xi).norm() <= other.transfer().at(xi).norm() + 1e-12);
        }
    }

    #[test]
    fn reconstruction_paths_and_duals_agree(l in 2usize..=4, stride in 1usize..=2, seed in any::<u64>()) {
        let g = GroupSpec::cyclic(l * stride).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = vec![real_sequence(&g, &mut rng)];
        let Ok(model) = TranslationModel::new(GroupSequence::delta(g.clone(), 0), ProductSubgroup::new(g.clone(), vec![stride]).unwrap(), gens) else {
            return Ok(());
        };
        let a = system(model.coefficient_group(), 2, 1, &mut rng);
        prop_assume!(diagnostics(&a, None).relative_delta() > 1e-6);
        let mp = SamplingProcedure::new(model.clone(), a.clone(), &DualChoice::MoorePenrose, None).unwrap();
        let c: TransferMatrix = system(model.coefficient_group(), 1, 2, &mut rng).transfer();
        let fam = SamplingProcedure::new(model.clone(), a, &DualChoice::Family(c), None).unwrap();
        let x = vector(model.coefficient_group(), 1, &mut rng);
        let samples = mp.take_samples(&x).unwrap();
        let direct = mp.reconstruct_function(&samples).unwrap();
        let via = mp.reconstruct_function_via_coefficients(&samples).unwrap();
        let other = fam.reconstruct_function(&samples).unwrap();
        let scale = 1.0 + via.max_abs();
        prop_assert!(direct.max_abs_diff(&via).unwrap() <= 1e-9 * scale);
        prop_assert!(direct.max_abs_diff(&other).unwrap() <= 1e-9 * scale);

        let d = mp.diagnostics();
        let ratio = samples.norm_sqr() / x.norm_sqr();
        prop_assert!(ratio >= d.alpha * (1.0 - 1e-9) && ratio <= d.beta * (1.0 + 1e-9));
    }

    #[test]
    fn samples_commute_with_lattice_shifts(shift in 0usize..4, seed in any::<u64>()) {
        let g = GroupSpec::cyclic(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = TranslationModel::new(
            GroupSequence::delta(g.clone(), 0),
            ProductSubgroup::new(g.clone(), vec![2]).unwrap(),
            vec![GroupSequence::from_real(g.clone(), &[1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap()],
        ).unwrap();
        let probes = vec![GroupSequence::delta(g.clone(), 0), real_sequence(&g, &mut rng)];
        let proc = SamplingProcedure::from_probes(model.clone(), probes, &DualChoice::MoorePenrose, None);
        prop_assume!(proc.is_ok());
        let proc = proc.unwrap();
        let f = sequence(&g, &mut rng);
        let moved = proc.samples_of(&f.translate(2 * shift)).unwrap();
        let expected = proc.samples_of(&f).unwrap().translate(shift);
        prop_assert!(moved.max_abs_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn quasi_regular_action_is_a_homomorphism(l in 2usize..=5, a in 0usize..25, b in 0usize..25, ga in 0usize..4, gb in 0usize..4, seed in any::<u64>()) {
        let t = GroupSpec::new(vec![l, l]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = SemidirectModel::new(
            GroupSequence::delta(t.clone(), 0),
            sequence(&t, &mut rng),
            RotationGroup::C4,
            ProductSubgroup::whole(t.clone()),
        ).unwrap();
        let rot = RotationGroup::C4.elements();
        let (ea, eb) = ((a % t.order(), rot[ga]), (b % t.order(), rot[gb]));
        let f = sequence(&t, &mut rng);
        let lhs = model.quasi_regular_apply(ea.0, ea.1, &model.quasi_regular_apply(eb.0, eb.1, &f).unwrap()).unwrap();
        let (s, g) = model.compose(ea, eb);
        prop_assert_eq!(lhs, model.quasi_regular_apply(s, g, &f).unwrap());
    }
}
