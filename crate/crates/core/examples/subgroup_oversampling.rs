// Sampling at 4Z_8, a subgroup of index 2 in the model lattice 2Z_8,
// using two probes per sample point.

use groupsamp::error::Result;
use groupsamp::group::{GroupSequence, GroupSpec, ProductSubgroup};
use groupsamp::model::TranslationModel;
use groupsamp::sampling::{DualChoice, FiniteIndexProcedure};
use groupsamp::system::VectorSequence;

pub fn run_example() -> Result<f64> {
    let g = GroupSpec::cyclic(8)?;
    let model = TranslationModel::new(
        GroupSequence::delta(g.clone(), 0),
        ProductSubgroup::new(g.clone(), vec![2])?,
        vec![GroupSequence::from_real(g.clone(), &[1.0, 0.5, 0.25, 0.0, 0.0, 0.0, 0.0, 0.5])?],
    )?;
    let probes = vec![
        GroupSequence::delta(g.clone(), 0),
        GroupSequence::from_real(g, &[0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])?,
    ];
    let fi = FiniteIndexProcedure::from_probes(&model, vec![2], probes, &DualChoice::MoorePenrose, None)?;
    println!("index L = {}, regrouped generators = {}", fi.index(), fi.procedure().model().generator_count());

    let x = VectorSequence::new(vec![GroupSequence::from_real(model.coefficient_group().clone(), &[1.0, -2.0, 0.5, 3.0])?])?;
    let samples = fi.take_samples(&x)?;
    let truth = model.analysis_transform(&model.synthesize(&x)?)?;
    let err = fi.reconstruct_function(&samples)?.max_abs_diff(&truth)?;
    println!("samples at 2 of 8 points, reconstruction error {err:.2e}");
    Ok(err)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
