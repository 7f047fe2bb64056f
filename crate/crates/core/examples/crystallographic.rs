// Sampling for the rotation-translation group (Z_6)^2 x| C2 on the
// lattice 3(Z_6)^2: F(s, g) everywhere from samples at the lattice.

use groupsamp::error::Result;
use groupsamp::group::{GroupSequence, GroupSpec, ProductSubgroup};
use groupsamp::sampling::{DualChoice, SemidirectProcedure};
use groupsamp::semidirect::{RotationGroup, SemidirectModel};
use num_complex::Complex64;

pub fn run_example() -> Result<f64> {
    let torus = GroupSpec::new(vec![6, 6])?;
    let varphi = GroupSequence::from_fn(torus.clone(), |i| Complex64::new((i as f64 * 1.7).sin(), (i as f64 * 0.9).cos()));
    let model = SemidirectModel::new(
        GroupSequence::delta(torus.clone(), 0),
        varphi,
        RotationGroup::C2,
        ProductSubgroup::new(torus.clone(), vec![3, 3])?,
    )?;
    let probes: Vec<GroupSequence> = (0..3).map(|k| GroupSequence::delta(torus.clone(), k * 7)).collect();
    let proc = SemidirectProcedure::from_probes(model.clone(), probes, &DualChoice::MoorePenrose, None)?;

    let x: Vec<Complex64> = (0..8).map(|i| Complex64::new(1.0 - i as f64 * 0.25, 0.5)).collect();
    let f = model.synthesize_direct(&x)?;
    let samples = proc.samples_of(&f)?;
    let rebuilt = proc.reconstruct(&samples)?;
    let err = rebuilt.max_abs_diff(&model.analysis_transform(&f)?)?;
    println!(
        "{} samples rebuild F on all {} group elements to {err:.2e}",
        samples.len() * samples.group().order(),
        rebuilt.values().len()
    );
    Ok(err)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
