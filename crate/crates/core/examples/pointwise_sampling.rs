// Samples F(h) on the subgroup only, one generator: the Shannon-type case.

use groupsamp::error::{Error, Result};
use groupsamp::group::{GroupSequence, GroupSpec, ProductSubgroup};
use groupsamp::model::TranslationModel;
use groupsamp::sampling::shannon_procedure;

pub fn run_example() -> Result<f64> {
    let g = GroupSpec::cyclic(16)?;
    let window = GroupSequence::delta(g.clone(), 0);
    let bump = GroupSequence::from_fn(g.clone(), |t| {
        let d = t.min(16 - t) as f64;
        (-d * d / 2.0).exp().into()
    });
    let model = TranslationModel::new(window, ProductSubgroup::new(g.clone(), vec![4])?, vec![bump.clone()])?;
    let proc = shannon_procedure(model, None)?;

    let f = proc.model().synthesize(&groupsamp::system::VectorSequence::new(vec![
        GroupSequence::from_real(proc.model().coefficient_group().clone(), &[1.0, -0.5, 2.0, 0.25])?,
    ])?)?;
    let samples = proc.samples_of(&f)?;
    let rebuilt = proc.reconstruct_function(&samples)?;
    let err = rebuilt.max_abs_diff(&proc.model().analysis_transform(&f)?)?;
    println!("4 samples rebuild all 16 values of F to {err:.2e}");
    println!("interpolation defect {:.2e}", proc.interpolation_check()?);

    // A generator whose symbol vanishes cannot be sampled this way.
    let flat = GroupSequence::from_fn(g.clone(), |t| if t < 3 { 1.0.into() } else { 0.0.into() });
    let model = TranslationModel::new(GroupSequence::delta(g.clone(), 0), ProductSubgroup::new(g, vec![2])?, vec![flat])?;
    match shannon_procedure(model, None) {
        Err(Error::SingularCharacters { characters }) => println!("rejected: a_hat vanishes at {characters:?}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(err)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
