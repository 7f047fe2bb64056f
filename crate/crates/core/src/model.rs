//! The translation representation `U(t) f = f(. - t)` on `l2(G)`: the
//! Riesz generators spanning `H_Phi`, the window `phi` whose translates
//! define `F(t) = <f, U(t) phi>`, and every inner product the sampling
//! pipeline needs.

use nalgebra::{Cholesky, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{GroupSequence, GroupSpec, ProductSubgroup};
use crate::semidirect::RotationGroup;
use crate::system::{CMatrix, SequenceMatrix, VectorSequence};

/// Largest Gram or frame-operator dimension assembled explicitly.
pub const DEFAULT_GRAM_CAP: usize = 4096;

/// Riesz and window-frame verdicts require `lower > tol * upper`.
pub const MODEL_RELATIVE_TOL: f64 = 1e-10;

/// Where a [`FunctionOnG`] lives.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Group(GroupSpec),
    /// `torus x Gamma`, stored rotation-major: index `gamma * |torus| + s`.
    Motion {
        torus: GroupSpec,
        rotations: RotationGroup,
    },
}

impl Domain {
    pub fn size(&self) -> usize {
        match self {
            Domain::Group(g) => g.order(),
            Domain::Motion { torus, rotations } => torus.order() * rotations.order(),
        }
    }
}

/// A function `F` on the whole finite domain, e.g. `F(t) = <f, U(t) phi>`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionOnG {
    domain: Domain,
    values: Vec<Complex64>,
}

impl FunctionOnG {
    pub fn new(domain: Domain, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != domain.size() {
            return Err(Error::Dimension(format!(
                "{} values for a domain of size {}",
                values.len(),
                domain.size()
            )));
        }
        Ok(Self { domain, values })
    }

    pub fn on_group(sequence: GroupSequence) -> Self {
        let domain = Domain::Group(sequence.group().clone());
        Self {
            domain,
            values: sequence.into_values(),
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, index: usize) -> Complex64 {
        self.values[index]
    }

    /// The values as a sequence when the domain is a group.
    pub fn as_sequence(&self) -> Option<GroupSequence> {
        match &self.domain {
            Domain::Group(g) => GroupSequence::new(g.clone(), self.values.clone()).ok(),
            Domain::Motion { .. } => None,
        }
    }

    pub fn max_abs_diff(&self, other: &FunctionOnG) -> Result<f64> {
        if self.domain != other.domain {
            return Err(Error::Dimension("functions live on different domains".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// `F(t) = <f, T_t phi> = sum_s f(s) conj(phi(s - t))` for every `t` in `G`.
pub fn correlate(f: &GroupSequence, window: &GroupSequence) -> Result<GroupSequence> {
    f.group().ensure_same(window.group())?;
    let g = f.group();
    Ok(GroupSequence::from_fn(g.clone(), |t| {
        f.values()
            .iter()
            .enumerate()
            .map(|(s, fv)| fv * window.at(g.sub_indices(s, t)).conj())
            .sum()
    }))
}

/// Frame bounds of `{T_t phi}_{t in G}`: the frame operator is a circulant
/// with eigenvalues `|phi_hat(xi)|^2`.
pub fn window_frame_bounds(window: &GroupSequence) -> (f64, f64) {
    window
        .dft()
        .values()
        .iter()
        .map(|v| v.norm_sqr())
        .fold((f64::INFINITY, 0.0), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// `S = sum_t psi(t) psi(t)^*` with `psi(t) = T_t phi`, assembled explicitly.
pub fn translate_frame_operator(window: &GroupSequence) -> CMatrix {
    let n = window.len();
    let mut s = CMatrix::zeros(n, n);
    for t in 0..n {
        let psi = DVector::from_column_slice(window.translate(t).values());
        s += &psi * psi.adjoint();
    }
    s
}

fn hermitian_extremes(m: CMatrix) -> (f64, f64) {
    let eigs = SymmetricEigen::new(m).eigenvalues;
    let lo = eigs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eigs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo.max(0.0), hi.max(0.0))
}

/// The family `{U(embed(h)) phi_n}` in `n`-major, `h`-minor order.
fn translate_family(subgroup: &ProductSubgroup, generators: &[GroupSequence]) -> Vec<GroupSequence> {
    let order = subgroup.abstract_group().order();
    generators
        .iter()
        .flat_map(|g| (0..order).map(move |h| g.translate(subgroup.embed_index(h))))
        .collect()
}

/// `gram[(i, j)] = <v_j, v_i>`.
fn gram_matrix(family: &[GroupSequence]) -> CMatrix {
    let n = family.len();
    let mut gram = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = family[j].inner(&family[i]).expect("common group");
            gram[(i, j)] = v;
            gram[(j, i)] = v.conj();
        }
    }
    gram
}

/// Extreme eigenvalues of the Gram matrix of `{U(embed(h)) phi_n}`.
pub fn riesz_bounds(subgroup: &ProductSubgroup, generators: &[GroupSequence], cap: usize) -> Result<(f64, f64)> {
    let needed = subgroup.abstract_group().order() * generators.len();
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    for g in generators {
        subgroup.parent().ensure_same(g.group())?;
    }
    Ok(hermitian_extremes(gram_matrix(&translate_family(subgroup, generators))))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranslationModel {
    window: GroupSequence,
    subgroup: ProductSubgroup,
    generators: Vec<GroupSequence>,
    window_bounds: (f64, f64),
    riesz_bounds: (f64, f64),
}

impl TranslationModel {
    /// Validates that `{U(embed(h)) phi_n}` is a Riesz sequence and records
    /// the frame bounds of the window translates.
    pub fn new(window: GroupSequence, subgroup: ProductSubgroup, generators: Vec<GroupSequence>) -> Result<Self> {
        subgroup.parent().ensure_same(window.group())?;
        if generators.is_empty() {
            return Err(Error::Dimension("at least one generator is required".into()));
        }
        let riesz = riesz_bounds(&subgroup, &generators, DEFAULT_GRAM_CAP)?;
        if riesz.0 <= MODEL_RELATIVE_TOL * riesz.1 {
            return Err(Error::NotRiesz { lambda_min: riesz.0 });
        }
        let window_bounds = window_frame_bounds(&window);
        Ok(Self {
            window,
            subgroup,
            generators,
            window_bounds,
            riesz_bounds: riesz,
        })
    }

    pub fn ambient(&self) -> &GroupSpec {
        self.subgroup.parent()
    }

    pub fn window(&self) -> &GroupSequence {
        &self.window
    }

    pub fn subgroup(&self) -> &ProductSubgroup {
        &self.subgroup
    }

    /// The abstract group indexing coefficient sequences.
    pub fn coefficient_group(&self) -> &GroupSpec {
        self.subgroup.abstract_group()
    }

    pub fn generators(&self) -> &[GroupSequence] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// `(min, max) |phi_hat|^2`, the frame bounds of `{T_t phi}_{t in G}`.
    pub fn window_bounds(&self) -> (f64, f64) {
        self.window_bounds
    }

    /// Whether the window translates form a frame for all of `l2(G)`.
    pub fn window_spans_ambient(&self) -> bool {
        self.window_bounds.0 > MODEL_RELATIVE_TOL * self.window_bounds.1
    }

    /// `(lambda_min, lambda_max)` of the generator Gram matrix.
    pub fn riesz_sequence_check(&self) -> (f64, f64) {
        self.riesz_bounds
    }

    pub fn analysis_transform(&self, f: &GroupSequence) -> Result<FunctionOnG> {
        Ok(FunctionOnG::on_group(correlate(f, &self.window)?))
    }

    /// `f = sum_n sum_h x_n(h) U(embed(h)) phi_n`.
    pub fn synthesize(&self, x: &VectorSequence) -> Result<GroupSequence> {
        self.coefficient_group().ensure_same(x.group())?;
        if x.len() != self.generator_count() {
            return Err(Error::Dimension(format!(
                "{} coefficient sequences for {} generators",
                x.len(),
                self.generator_count()
            )));
        }
        let g = self.ambient();
        let mut f = GroupSequence::zeros(g.clone());
        for (phi, xn) in self.generators.iter().zip(x.components()) {
            for (h, &c) in xn.values().iter().enumerate() {
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let shift = self.subgroup.embed_index(h);
                for (s, out) in f.values_mut().iter_mut().enumerate() {
                    *out += c * phi.at(g.sub_indices(s, shift));
                }
            }
        }
        Ok(f)
    }

    /// `a_{m,n}(h) = <phi_n, U(embed(h)) psi_m>` over the abstract subgroup.
    pub fn sample_matrix(&self, probes: &[GroupSequence]) -> Result<SequenceMatrix> {
        if probes.is_empty() {
            return Err(Error::Dimension("at least one probe is required".into()));
        }
        for p in probes {
            self.ambient().ensure_same(p.group())?;
        }
        let h = self.coefficient_group().clone();
        let entries = probes
            .iter()
            .flat_map(|psi| self.generators.iter().map(move |phi| (psi, phi)))
            .map(|(psi, phi)| {
                let corr = correlate(phi, psi)?;
                Ok(GroupSequence::from_fn(h.clone(), |k| corr.at(self.subgroup.embed_index(k))))
            })
            .collect::<Result<Vec<_>>>()?;
        SequenceMatrix::new(h, probes.len(), self.generator_count(), entries)
    }

    /// Expansion coefficients of the orthogonal projection of `f` onto
    /// `H_Phi`, via the Gram system of the Riesz generators.
    pub fn coefficients_of(&self, f: &GroupSequence) -> Result<VectorSequence> {
        self.ambient().ensure_same(f.group())?;
        let family = translate_family(&self.subgroup, &self.generators);
        let gram = gram_matrix(&family);
        let rhs = DVector::from_iterator(
            family.len(),
            family.iter().map(|v| f.inner(v).expect("common group")),
        );
        let solved = Cholesky::new(gram)
            .ok_or(Error::NotRiesz {
                lambda_min: self.riesz_bounds.0,
            })?
            .solve(&rhs);
        let order = self.coefficient_group().order();
        let components = (0..self.generator_count())
            .map(|n| GroupSequence::new(self.coefficient_group().clone(), solved.as_slice()[n * order..(n + 1) * order].to_vec()))
            .collect::<Result<Vec<_>>>()?;
        VectorSequence::new(components)
    }

    /// The kernel `k(u, v) = <psi(v), S^{-1} psi(u)>` of the range of the
    /// analysis transform, from the explicit frame operator `S`.
    pub fn reproducing_kernel(&self) -> Result<ReproducingKernel> {
        if !self.window_spans_ambient() {
            return Err(Error::WindowNotFrame {
                lower: self.window_bounds.0,
            });
        }
        let n = self.ambient().order();
        if n > DEFAULT_GRAM_CAP {
            return Err(Error::CapExceeded {
                needed: n,
                cap: DEFAULT_GRAM_CAP,
            });
        }
        let s_inv = translate_frame_operator(&self.window)
            .try_inverse()
            .ok_or(Error::WindowNotFrame {
                lower: self.window_bounds.0,
            })?;
        let psi: Vec<DVector<Complex64>> = (0..n)
            .map(|t| DVector::from_column_slice(self.window.translate(t).values()))
            .collect();
        let dual: Vec<DVector<Complex64>> = psi.iter().map(|p| &s_inv * p).collect();
        // <x, y> = y^* x
        let table = CMatrix::from_fn(n, n, |u, v| dual[u].dotc(&psi[v]));
        Ok(ReproducingKernel {
            group: self.ambient().clone(),
            table,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReproducingKernel {
    group: GroupSpec,
    table: CMatrix,
}

impl ReproducingKernel {
    /// `k(u, v)`.
    pub fn value(&self, u: usize, v: usize) -> Complex64 {
        self.table[(u, v)]
    }

    pub fn table(&self) -> &CMatrix {
        &self.table
    }

    /// `u -> sum_v F(v) k(u, v)`.
    pub fn reproduce(&self, f: &FunctionOnG) -> Result<FunctionOnG> {
        if f.domain() != &Domain::Group(self.group.clone()) {
            return Err(Error::Dimension("function is not defined on the kernel's group".into()));
        }
        let values = DVector::from_column_slice(f.values());
        let out = &self.table * values;
        FunctionOnG::new(f.domain().clone(), out.as_slice().to_vec())
    }

    /// `max |k(u, v) - conj(k(v, u))|`.
    pub fn hermitian_defect(&self) -> f64 {
        (&self.table - self.table.adjoint()).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(g: &GroupSpec, v: &[f64]) -> GroupSequence {
        GroupSequence::from_real(g.clone(), v).unwrap()
    }

    fn z4_model() -> TranslationModel {
        let z4 = GroupSpec::cyclic(4).unwrap();
        TranslationModel::new(
            GroupSequence::delta(z4.clone(), 0),
            ProductSubgroup::new(z4.clone(), vec![2]).unwrap(),
            vec![seq(&z4, &[1.0, 0.5, 0.0, 0.0])],
        )
        .unwrap()
    }

    #[test]
    fn delta_window_is_identity() {
        let g = GroupSpec::new(vec![2, 3]).unwrap();
        let model = TranslationModel::new(
            GroupSequence::delta(g.clone(), 0),
            ProductSubgroup::whole(g.clone()),
            vec![GroupSequence::delta(g.clone(), 0)],
        )
        .unwrap();
        let f = seq(&g, &[1.0, -2.0, 0.5, 3.0, 0.0, 1.5]);
        assert_eq!(model.analysis_transform(&f).unwrap().as_sequence().unwrap(), f);
        let zero = GroupSequence::zeros(g);
        assert_eq!(model.analysis_transform(&zero).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn correlation_with_box_window() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let phi = seq(&z4, &[1.0, 1.0, 0.0, 0.0]);
        let f = GroupSequence::delta(z4.clone(), 0);
        assert_eq!(correlate(&f, &phi).unwrap(), seq(&z4, &[1.0, 0.0, 0.0, 1.0]));
    }

    #[test]
    fn synthesis_examples() {
        let model = z4_model();
        let h = model.coefficient_group().clone();
        let x = VectorSequence::new(vec![seq(&h, &[1.0, 1.0])]).unwrap();
        let z4 = model.ambient().clone();
        assert_eq!(model.synthesize(&x).unwrap(), seq(&z4, &[1.0, 0.5, 1.0, 0.5]));

        let impulse = VectorSequence::new(vec![GroupSequence::delta(h.clone(), 0)]).unwrap();
        assert_eq!(model.synthesize(&impulse).unwrap(), model.generators()[0]);

        let y = VectorSequence::new(vec![seq(&h, &[-0.5, 2.0])]).unwrap();
        let lhs = model.synthesize(&x.add(&y).unwrap()).unwrap();
        let rhs = &model.synthesize(&x).unwrap() + &model.synthesize(&y).unwrap();
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-15);

        let wide = VectorSequence::zeros(h, 2);
        assert!(model.synthesize(&wide).is_err());
    }

    #[test]
    fn sample_matrix_examples() {
        let model = z4_model();
        let z4 = model.ambient().clone();
        let a = model.sample_matrix(&[GroupSequence::delta(z4.clone(), 0)]).unwrap();
        assert_eq!(a.entry(0, 0), &seq(model.coefficient_group(), &[1.0, 0.0]));

        let zero_row = model.sample_matrix(&[GroupSequence::zeros(z4)]).unwrap();
        assert_eq!(zero_row.entry(0, 0).max_abs(), 0.0);

        let g = GroupSpec::cyclic(3).unwrap();
        let id_model = TranslationModel::new(
            GroupSequence::delta(g.clone(), 0),
            ProductSubgroup::whole(g.clone()),
            vec![GroupSequence::delta(g.clone(), 0)],
        )
        .unwrap();
        let a = id_model.sample_matrix(&[GroupSequence::delta(g.clone(), 0)]).unwrap();
        assert_eq!(a, SequenceMatrix::identity(g, 1).unwrap());
    }

    #[test]
    fn riesz_examples() {
        let (lo, hi) = z4_model().riesz_sequence_check();
        assert!((lo - 1.25).abs() < 1e-12 && (hi - 1.25).abs() < 1e-12);

        let g = GroupSpec::cyclic(5).unwrap();
        let d = GroupSequence::delta(g.clone(), 0);
        let whole = ProductSubgroup::whole(g.clone());
        assert_eq!(riesz_bounds(&whole, std::slice::from_ref(&d), DEFAULT_GRAM_CAP).unwrap(), (1.0, 1.0));

        let phi = seq(&g, &[1.0, 0.5, 0.0, 0.0, 0.25]);
        let (lo, _) = riesz_bounds(&whole, &[phi.clone(), phi.clone()], DEFAULT_GRAM_CAP).unwrap();
        assert!(lo.abs() < 1e-12);
        assert!(matches!(
            TranslationModel::new(d, whole.clone(), vec![phi.clone(), phi.clone()]),
            Err(Error::NotRiesz { .. })
        ));
        assert!(matches!(
            riesz_bounds(&whole, &[phi], 3),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn kernel_of_delta_window_is_identity() {
        let g = GroupSpec::cyclic(5).unwrap();
        let model = TranslationModel::new(
            GroupSequence::delta(g.clone(), 0),
            ProductSubgroup::whole(g.clone()),
            vec![GroupSequence::delta(g, 0)],
        )
        .unwrap();
        let k = model.reproducing_kernel().unwrap();
        assert!((k.table() - CMatrix::identity(5, 5)).iter().all(|v| v.norm() < 1e-14));
    }

    #[test]
    fn kernel_requires_window_frame() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let model = TranslationModel::new(
            seq(&z2, &[1.0, 1.0]),
            ProductSubgroup::whole(z2.clone()),
            vec![GroupSequence::delta(z2, 0)],
        )
        .unwrap();
        assert!(!model.window_spans_ambient());
        assert!(matches!(model.reproducing_kernel(), Err(Error::WindowNotFrame { .. })));
    }

    #[test]
    fn projection_recovers_coefficients() {
        let model = z4_model();
        let h = model.coefficient_group().clone();
        let x = VectorSequence::new(vec![seq(&h, &[0.75, -1.5])]).unwrap();
        let f = model.synthesize(&x).unwrap();
        let back = model.coefficients_of(&f).unwrap();
        assert!(back.max_abs_diff(&x).unwrap() < 1e-14);
    }
}
