// Characters, the DFT and convolution on Z_4 x Z_3, and a coset split.

use groupsamp::error::Result;
use groupsamp::group::{Character, GroupSequence, GroupSpec, ProductSubgroup};
use num_complex::Complex64;

pub fn run_example() -> Result<f64> {
    let g = GroupSpec::new(vec![4, 3])?;
    let xi = Character::new(g.element(&[1, 0])?);
    println!("xi(1,0) at (1,0) = {}", xi.value(&g.element(&[1, 0])?)?);

    let x = GroupSequence::from_fn(g.clone(), |i| Complex64::new(i as f64, 1.0 - i as f64 * 0.5));
    let a = GroupSequence::from_fn(g.clone(), |i| Complex64::new(1.0 / (1.0 + i as f64), 0.0));

    let roundtrip = x.dft().idft().max_abs_diff(&x)?;
    let plancherel = (x.norm_sqr() - x.dft().norm_sqr() / g.order() as f64).abs();
    let conv = a.convolve(&x)?.dft();
    let product = GroupSequence::new(
        g.clone(),
        a.dft().values().iter().zip(x.dft().values()).map(|(p, q)| p * q).collect(),
    )?;
    let theorem = conv.max_abs_diff(&product)?;
    println!("dft round trip {roundtrip:.2e}, plancherel {plancherel:.2e}, convolution theorem {theorem:.2e}");

    let sub = ProductSubgroup::new(g, vec![2, 3])?;
    let reps: Vec<Vec<usize>> = sub.coset_representatives().iter().map(|e| e.coords().to_vec()).collect();
    println!("2Z_4 x 3Z_3 has index {} with representatives {reps:?}", sub.index());
    Ok(roundtrip.max(theorem))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
