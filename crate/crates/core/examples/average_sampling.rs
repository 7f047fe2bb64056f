// Three local averages per lattice point for a two-generator model,
// with two different duals giving the same reconstruction.

use groupsamp::error::Result;
use groupsamp::group::{GroupSequence, GroupSpec, ProductSubgroup};
use groupsamp::model::TranslationModel;
use groupsamp::sampling::{DualChoice, SamplingProcedure};
use groupsamp::system::{CMatrix, TransferMatrix};
use num_complex::Complex64;

pub fn run_example() -> Result<f64> {
    let g = GroupSpec::cyclic(12)?;
    let r = |v: &[f64]| {
        let mut full = v.to_vec();
        full.resize(12, 0.0);
        GroupSequence::from_real(g.clone(), &full)
    };
    let model = TranslationModel::new(
        GroupSequence::delta(g.clone(), 0),
        ProductSubgroup::new(g.clone(), vec![2])?,
        vec![r(&[1.0, 0.5])?, r(&[0.0, 0.5, 1.0, 0.5])?],
    )?;
    let probes = vec![r(&[1.0])?, r(&[0.5, 0.5])?, r(&[0.25, 0.5, 0.25])?];
    let mp = SamplingProcedure::from_probes(model.clone(), probes.clone(), &DualChoice::MoorePenrose, None)?;
    let h = model.coefficient_group().clone();
    let c = TransferMatrix::from_fn(h, 2, 3, |xi| CMatrix::from_fn(2, 3, |i, j| Complex64::new((i + j + xi) as f64 * 0.1, 0.0)))?;
    let other = SamplingProcedure::from_probes(model.clone(), probes, &DualChoice::Family(c), None)?;
    let d = mp.diagnostics();
    println!("alpha {:.4} beta {:.4} delta {:.4}", d.alpha, d.beta, d.delta);

    let f = GroupSequence::from_fn(g, |t| Complex64::new((t as f64).sin(), (t as f64 * 0.3).cos()));
    let f = model.synthesize(&model.coefficients_of(&f)?)?;
    let samples = mp.samples_of(&f)?;
    let a = mp.reconstruct_function(&samples)?;
    let b = other.reconstruct_function(&samples)?;
    let truth = model.analysis_transform(&f)?;
    println!(
        "reconstruction error {:.2e}, duals agree to {:.2e}",
        a.max_abs_diff(&truth)?,
        a.max_abs_diff(&b)?
    );
    Ok(a.max_abs_diff(&truth)?.max(a.max_abs_diff(&b)?))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
