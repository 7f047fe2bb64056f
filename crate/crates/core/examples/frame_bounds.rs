// Frame bounds of a 3x2 convolution system from its transfer matrix,
// checked against the explicit translate Gram matrix.

use groupsamp::error::Result;
use groupsamp::frame::{diagnostics, null_direction, oracle_frame_bounds, DEFAULT_ORACLE_CAP};
use groupsamp::group::{GroupSequence, GroupSpec};
use groupsamp::system::SequenceMatrix;

pub fn run_example() -> Result<(f64, f64)> {
    let h = GroupSpec::new(vec![2, 3])?;
    let a = SequenceMatrix::from_fn(h.clone(), 3, 2, |m, n| {
        GroupSequence::from_fn(h.clone(), |t| (((m + 2 * n + t) % 5) as f64 - 1.5).into())
    })?;
    let d = diagnostics(&a, None);
    let (lo, hi) = oracle_frame_bounds(&a, DEFAULT_ORACLE_CAP)?;
    println!("alpha {:.6} beta {:.6} delta {:.6} frame {}", d.alpha, d.beta, d.delta, d.is_frame);
    println!("oracle        ({lo:.6}, {hi:.6})");
    println!("determinant bounds hold: {}", d.determinant_bounds_hold());

    // a = [1, 1] on Z_2 loses the alternating sequence.
    let z2 = GroupSpec::cyclic(2)?;
    let bad = SequenceMatrix::new(z2.clone(), 1, 1, vec![GroupSequence::from_real(z2, &[1.0, 1.0])?])?;
    let bd = diagnostics(&bad, None);
    let witness = null_direction(&bad, &bd);
    println!(
        "degenerate characters {:?}, |A x| = {:.1e} for |x| = 1",
        bd.degenerate_characters(),
        bad.apply(&witness)?.norm()
    );
    Ok(((lo - d.alpha).abs(), (hi - d.beta).abs()))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
