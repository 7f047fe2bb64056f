// Left inverses of a tall system: Moore-Penrose, other family members,
// and the square case where the family collapses.

use groupsamp::dual::{left_inverse_family, moore_penrose, square_inverse, verify_left_inverse};
use groupsamp::error::Result;
use groupsamp::group::{GroupSequence, GroupSpec};
use groupsamp::system::{CMatrix, SequenceMatrix, TransferMatrix};
use num_complex::Complex64;

pub fn run_example() -> Result<f64> {
    let h = GroupSpec::cyclic(4)?;
    let a = SequenceMatrix::new(
        h.clone(),
        2,
        1,
        vec![
            GroupSequence::from_real(h.clone(), &[1.0, 0.5, 0.0, 0.0])?,
            GroupSequence::from_real(h.clone(), &[0.0, 1.0, -0.25, 0.0])?,
        ],
    )?;
    let mp = moore_penrose(&a)?;
    let c = TransferMatrix::from_fn(h.clone(), 1, 2, |xi| {
        CMatrix::from_row_slice(1, 2, &[Complex64::new(xi as f64, 0.0), Complex64::new(0.0, 1.0)])
    })?;
    let other = left_inverse_family(&a, &c)?;
    let r1 = verify_left_inverse(&a, mp.coefficients())?;
    let r2 = verify_left_inverse(&a, other.coefficients())?;
    println!("moore-penrose residual {r1:.2e}, family member residual {r2:.2e}");
    println!(
        "the two duals differ by {:.3}",
        mp.coefficients().max_abs_diff(other.coefficients())?
    );

    let sq = SequenceMatrix::new(h.clone(), 1, 1, vec![GroupSequence::from_real(h, &[2.0, 1.0, 0.0, 0.0])?])?;
    let inv = square_inverse(&sq)?;
    println!("square inverse residual {:.2e}", verify_left_inverse(&sq, inv.coefficients())?);
    Ok(r1.max(r2))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
